//! The feature catalog and the per-message featurizer.
//!
//! A feature name reads `{graph}.{scale}.{measure}.{w}{d}` where `w` is `U`,
//! `W` or `-` and `d` is `U`, `D`, `I`, `O` or `-`, e.g.
//! `after.vertex.closeness.WI`.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::hash::Hash;
use std::rc::Rc;
use std::str::FromStr;

use rayon::prelude::*;

use crate::community::{self, Partition, Roles};
use crate::corpus::{Corpus, Label};
use crate::error::{Error, Result};
use crate::extraction::{extract, ExtractionParams, GraphKind};
use crate::graph::{ConversationalGraph, DirectionMode, GraphView, VertexId};
use crate::learning::Dataset;
use crate::measures::paths::{self, DistanceMatrix, DistanceStats};
use crate::measures::spectral::{self, Centrality};
use crate::measures::{cliques, flow, graph, vertex, MeasureConfig, Stat};

/// Per-graph size of the reference roster the default catalog is reconciled
/// against.
pub const REFERENCE_PER_GRAPH: usize = 153;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scale {
    /// Value at the targeted vertex.
    Vertex,
    /// Vertex measure averaged over the vertex set.
    GraphAvg,
    /// Whole-graph measure.
    Graph,
}

impl Scale {
    pub fn code(self) -> &'static str {
        match self {
            Scale::Vertex => "vertex",
            Scale::GraphAvg => "avg",
            Scale::Graph => "graph",
        }
    }

    fn from_code(s: &str) -> Option<Scale> {
        [Scale::Vertex, Scale::GraphAvg, Scale::Graph].into_iter().find(|x| x.code() == s)
    }
}

macro_rules! measures {
    ($($var:ident $name:literal $family:literal $graph:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Measure { $($var),* }

        impl Measure {
            /// Every measure, graph-scale ones first, in catalog order.
            pub const ALL: &'static [Measure] = &[$(Measure::$var),*];

            pub fn name(self) -> &'static str {
                match self { $(Measure::$var => $name),* }
            }

            /// Conventional family name, used in the manifest.
            pub fn family(self) -> &'static str {
                match self { $(Measure::$var => $family),* }
            }

            pub fn is_graph_scale(self) -> bool {
                match self { $(Measure::$var => $graph),* }
            }
        }
    };
}

measures! {
    WeakComponents "weak_components" "Weak components" true;
    StrongComponents "strong_components" "Strong components" true;
    Adhesion "adhesion" "Adhesion (edge connectivity)" true;
    Cohesion "cohesion" "Cohesion (vertex connectivity)" true;
    ArticulationPoints "articulation_points" "Articulation points" true;
    Diameter "diameter" "Diameter" true;
    Radius "radius" "Radius" true;
    AverageDistance "average_distance" "Average distance" true;
    CliqueCount "clique_count" "Clique count" true;
    Communities "communities" "Community count" true;
    Modularity "modularity" "Modularity" true;
    EdgeCount "edges" "Edge count" true;
    VertexCount "vertices" "Vertex count" true;
    Density "density" "Density" true;
    GlobalTransitivity "global_transitivity" "Transitivity (global)" true;
    Reciprocity "reciprocity" "Reciprocity" true;
    Assortativity "assortativity" "Degree assortativity" true;
    Eigenvector "eigenvector" "Eigenvector centrality" false;
    Hub "hub" "Hub/authority scores" false;
    Authority "authority" "Hub/authority scores" false;
    Alpha "alpha" "Alpha centrality" false;
    Power "power" "Power centrality" false;
    PageRank "pagerank" "PageRank" false;
    Subgraph "subgraph" "Subgraph centrality" false;
    Betweenness "betweenness" "Betweenness" false;
    Closeness "closeness" "Closeness" false;
    Eccentricity "eccentricity" "Eccentricity" false;
    ArticulationPoint "articulation_point" "Articulation point flag" false;
    Coreness "coreness" "Coreness" false;
    Participation "participation" "Participation coefficient" false;
    WithinModuleDegree "within_module_degree" "Internal intensity (within-module degree)" false;
    ExternalIntensity "external_intensity" "External intensity" false;
    Diversity "diversity" "Diversity" false;
    Heterogeneity "heterogeneity" "Heterogeneity" false;
    Degree "degree" "Degree" false;
    Strength "strength" "Strength" false;
    LocalTransitivity "local_transitivity" "Transitivity (local)" false;
    BurtConstraint "burt_constraint" "Burt's constraint" false;
}

const U: DirectionMode = DirectionMode::Undirected;
const D: DirectionMode = DirectionMode::Directed;
const I: DirectionMode = DirectionMode::In;
const O: DirectionMode = DirectionMode::Out;

impl Measure {
    /// Permitted weightings (`None`: not applicable) and directions.
    pub fn axes(self) -> (&'static [Option<bool>], &'static [Option<DirectionMode>]) {
        use Measure::*;
        const NA_W: &[Option<bool>] = &[None];
        const UW: &[Option<bool>] = &[Some(false), Some(true)];
        const UO: &[Option<bool>] = &[Some(false)];
        const WO: &[Option<bool>] = &[Some(true)];
        const NA_D: &[Option<DirectionMode>] = &[None];
        const DU: &[Option<DirectionMode>] = &[Some(U)];
        const DD: &[Option<DirectionMode>] = &[Some(D)];
        const DUD: &[Option<DirectionMode>] = &[Some(U), Some(D)];
        const DUIO: &[Option<DirectionMode>] = &[Some(U), Some(I), Some(O)];
        match self {
            WeakComponents | ArticulationPoints | ArticulationPoint => (NA_W, DU),
            StrongComponents | Adhesion | Cohesion | Reciprocity => (NA_W, DD),
            Diameter | Eigenvector | PageRank | Betweenness => (UW, DUD),
            Radius | Eccentricity | Participation | WithinModuleDegree | ExternalIntensity | Diversity
            | Heterogeneity | Degree => (UO, DUIO),
            AverageDistance => (UO, DUD),
            CliqueCount | EdgeCount | VertexCount | Density => (NA_W, NA_D),
            Communities | Power => (UO, DD),
            Modularity | LocalTransitivity => (UW, DU),
            GlobalTransitivity | Subgraph => (UO, DU),
            Assortativity => (NA_W, DUD),
            Hub | Authority | Alpha => (UW, DD),
            Closeness => (UW, DUIO),
            Coreness => (NA_W, DUIO),
            Strength => (WO, DUIO),
            BurtConstraint => (UW, NA_D),
        }
    }

    fn from_name(s: &str) -> Option<Measure> {
        Measure::ALL.iter().copied().find(|m| m.name() == s)
    }
}

fn weight_code(w: Option<bool>) -> char {
    match w {
        None => '-',
        Some(false) => 'U',
        Some(true) => 'W',
    }
}

fn direction_code(d: Option<DirectionMode>) -> char {
    d.map_or('-', DirectionMode::code)
}

fn graph_from_name(s: &str) -> Option<GraphKind> {
    GraphKind::ALL.into_iter().find(|g| g.name() == s)
}

/// One catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FeatureSpec {
    pub graph: GraphKind,
    pub measure: Measure,
    pub weighted: Option<bool>,
    pub direction: Option<DirectionMode>,
    pub scale: Scale,
}

impl fmt::Display for FeatureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}.{}.{}.{}{}",
            self.graph.name(),
            self.scale.code(),
            self.measure.name(),
            weight_code(self.weighted),
            direction_code(self.direction)
        )
    }
}

impl FromStr for FeatureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FeatureSpec> {
        let bad = || Error::InvalidArgument(format!("not a feature name: {s}"));
        let parts: Vec<&str> = s.split('.').collect();
        let [g, sc, m, v] = parts[..] else { return Err(bad()) };
        let graph = graph_from_name(g).ok_or_else(bad)?;
        let scale = Scale::from_code(sc).ok_or_else(bad)?;
        let measure = Measure::from_name(m).ok_or_else(bad)?;
        let mut chars = v.chars();
        let (Some(wc), Some(dc), None) = (chars.next(), chars.next(), chars.next()) else { return Err(bad()) };
        let (ws, ds) = measure.axes();
        let weighted = ws.iter().copied().find(|&w| weight_code(w) == wc).ok_or_else(bad)?;
        let direction = ds.iter().copied().find(|&d| direction_code(d) == dc).ok_or_else(bad)?;
        if measure.is_graph_scale() != (scale == Scale::Graph) {
            return Err(bad());
        }
        Ok(FeatureSpec { graph, measure, weighted, direction, scale })
    }
}

/// Which axis values a catalog may use. Entries whose axis is not
/// applicable are always kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantMatrix {
    pub graphs: Vec<GraphKind>,
    pub weights: Vec<bool>,
    pub directions: Vec<DirectionMode>,
}

impl Default for VariantMatrix {
    fn default() -> Self {
        VariantMatrix { graphs: GraphKind::ALL.to_vec(), weights: vec![false, true], directions: vec![U, D, I, O] }
    }
}

impl VariantMatrix {
    /// The default matrix restricted to undirected variants, for graphs
    /// extracted without orientation.
    pub fn undirected() -> Self {
        VariantMatrix { directions: vec![U], ..Default::default() }
    }

    fn admits(&self, w: Option<bool>, d: Option<DirectionMode>) -> bool {
        w.is_none_or(|w| self.weights.contains(&w)) && d.is_none_or(|d| self.directions.contains(&d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureCatalog {
    entries: Vec<FeatureSpec>,
}

impl FeatureCatalog {
    /// Enumerates, per graph, the graph-scale measures, then the vertex
    /// measures at the targeted vertex, then their vertex-set averages.
    pub fn build(matrix: &VariantMatrix) -> FeatureCatalog {
        let mut entries = Vec::new();
        for graph in GraphKind::ALL.into_iter().filter(|g| matrix.graphs.contains(g)) {
            for scale in [Scale::Graph, Scale::Vertex, Scale::GraphAvg] {
                for &measure in Measure::ALL.iter().filter(|m| m.is_graph_scale() == (scale == Scale::Graph)) {
                    let (ws, ds) = measure.axes();
                    for &weighted in ws {
                        for &direction in ds {
                            if matrix.admits(weighted, direction) {
                                entries.push(FeatureSpec { graph, measure, weighted, direction, scale });
                            }
                        }
                    }
                }
            }
        }
        FeatureCatalog { entries }
    }

    pub fn from_specs(entries: Vec<FeatureSpec>) -> Result<FeatureCatalog> {
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(*e) {
                return Err(Error::InvalidArgument(format!("duplicate feature {e}")));
            }
        }
        Ok(FeatureCatalog { entries })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<FeatureCatalog> {
        FeatureCatalog::from_specs(names.iter().map(|n| n.as_ref().parse()).collect::<Result<_>>()?)
    }

    pub fn entries(&self) -> &[FeatureSpec] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(ToString::to_string).collect()
    }

    pub fn per_graph_count(&self, graph: GraphKind) -> usize {
        self.entries.iter().filter(|e| e.graph == graph).count()
    }

    /// Plain-text listing of every entry with its measure family and the
    /// measure parameters in force.
    pub fn manifest(&self, cfg: &MeasureConfig) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# feature manifest");
        let _ = writeln!(out, "# entries: {}", self.len());
        for g in GraphKind::ALL {
            let _ = writeln!(out, "# {}: {}", g.name(), self.per_graph_count(g));
        }
        let per = self.per_graph_count(GraphKind::Full);
        let _ = writeln!(
            out,
            "# reconciliation: {} per graph against a reference roster of {} ({:+}); {} for all three against {}",
            per,
            REFERENCE_PER_GRAPH,
            per as i64 - REFERENCE_PER_GRAPH as i64,
            3 * per,
            3 * REFERENCE_PER_GRAPH
        );
        let _ = writeln!(out, "# pagerank damping: {}", cfg.pagerank_damping);
        let _ = writeln!(out, "# alpha attenuation: {:?}", cfg.alpha_attenuation);
        let _ = writeln!(out, "# power exponent: {:?}", cfg.power_exponent);
        let _ = writeln!(out, "# iteration tolerance: {}, max iterations: {}", cfg.iteration_tolerance, cfg.max_iterations);
        let _ = writeln!(out, "# distance cost: {:?}", cfg.distance_cost);
        let _ = writeln!(out, "# clique vertex bound: {}", cfg.clique_vertex_bound);
        let _ = writeln!(
            out,
            "# communities: Louvain on the undirected unweighted view, seed {}; shared by every community-based entry",
            cfg.community_seed
        );
        let _ = writeln!(out, "# degenerate or non-converged values are emitted as 0");
        let _ = writeln!(out, "index\tname\tgraph\tscale\tmeasure\tweights\tdirection\tfamily\tnote");
        for (i, e) in self.entries.iter().enumerate() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                i,
                e,
                e.graph.name(),
                e.scale.code(),
                e.measure.name(),
                weight_code(e.weighted),
                direction_code(e.direction),
                e.measure.family(),
                note(e.measure)
            );
        }
        out
    }
}

fn note(m: Measure) -> &'static str {
    use Measure::*;
    match m {
        Communities | Modularity | Participation | WithinModuleDegree | ExternalIntensity | Diversity
        | Heterogeneity => "Louvain partition substituted for the unspecified community detector",
        Adhesion | Cohesion => "strong connectivity on directed views",
        Alpha => "attenuation 0.5 / spectral radius",
        Power => "exponent 0.25 / spectral radius",
        Closeness | Eccentricity | Diameter | Radius | AverageDistance | Betweenness => {
            "reachable pairs only; weighted cost 1/weight"
        }
        _ => "",
    }
}

/// Catalog subsets addressed by graph-name prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureSet {
    Before,
    After,
    Full,
    BeforeAfter,
    All,
}

impl FeatureSet {
    pub const ALL: [FeatureSet; 5] =
        [FeatureSet::Before, FeatureSet::After, FeatureSet::Full, FeatureSet::BeforeAfter, FeatureSet::All];

    pub fn name(self) -> &'static str {
        match self {
            FeatureSet::Before => "before",
            FeatureSet::After => "after",
            FeatureSet::Full => "full",
            FeatureSet::BeforeAfter => "before+after",
            FeatureSet::All => "all",
        }
    }

    pub fn prefixes(self) -> &'static [&'static str] {
        match self {
            FeatureSet::Before => &["before."],
            FeatureSet::After => &["after."],
            FeatureSet::Full => &["full."],
            FeatureSet::BeforeAfter => &["before.", "after."],
            FeatureSet::All => &["before.", "after.", "full."],
        }
    }

    pub fn contains(self, feature_name: &str) -> bool {
        self.prefixes().iter().any(|p| feature_name.starts_with(p))
    }
}

impl FromStr for FeatureSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<FeatureSet> {
        FeatureSet::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown feature set {s}")))
    }
}

/// Everything besides the catalog that a feature vector depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureParams {
    pub context_size: usize,
    pub extraction: ExtractionParams,
    pub measures: MeasureConfig,
}

impl Default for FeatureParams {
    fn default() -> Self {
        FeatureParams { context_size: 200, extraction: ExtractionParams::default(), measures: MeasureConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub message_id: String,
    pub label: Label,
    pub values: Vec<f64>,
    pub past_len: usize,
    pub future_len: usize,
}

/// Per-vertex values; undefined ones are already 0.
struct Values {
    values: Vec<f64>,
}

impl Values {
    fn plain(values: Vec<f64>) -> Values {
        Values { values }
    }

    fn centrality(c: Centrality) -> Values {
        Values { values: c.values }
    }
}

type Key = (Measure, Option<bool>, Option<DirectionMode>);

fn memo<K: Hash + Eq, T>(cache: &RefCell<HashMap<K, Rc<T>>>, key: K, f: impl FnOnce() -> Result<T>) -> Result<Rc<T>> {
    if let Some(v) = cache.borrow().get(&key) {
        return Ok(v.clone());
    }
    let v = Rc::new(f()?);
    cache.borrow_mut().insert(key, v.clone());
    Ok(v)
}

/// Lazily computed, memoised measures of one graph.
struct Evaluator<'a> {
    g: &'a ConversationalGraph,
    cfg: &'a MeasureConfig,
    views: RefCell<HashMap<(bool, DirectionMode), Rc<GraphView>>>,
    distances: RefCell<HashMap<(bool, bool), Rc<DistanceMatrix>>>,
    hits: RefCell<HashMap<bool, Rc<(Centrality, Centrality)>>>,
    partition: RefCell<HashMap<(), Rc<Partition>>>,
    roles: RefCell<HashMap<DirectionMode, Rc<Roles>>>,
    connectivity: RefCell<HashMap<(), Rc<graph::Connectivity>>>,
    vertex_values: RefCell<HashMap<Key, Rc<Values>>>,
}

fn spectral_or_zero(n: usize, r: Result<Centrality>) -> Result<Values> {
    match r {
        Ok(c) => Ok(Values::centrality(c)),
        Err(Error::NonConvergence { .. }) => Ok(Values::plain(vec![0.0; n])),
        Err(e) => Err(e),
    }
}

impl<'a> Evaluator<'a> {
    fn new(g: &'a ConversationalGraph, cfg: &'a MeasureConfig) -> Self {
        Evaluator {
            g,
            cfg,
            views: Default::default(),
            distances: Default::default(),
            hits: Default::default(),
            partition: Default::default(),
            roles: Default::default(),
            connectivity: Default::default(),
            vertex_values: Default::default(),
        }
    }

    fn natural(&self) -> DirectionMode {
        if self.g.is_directed() {
            D
        } else {
            U
        }
    }

    fn view(&self, w: bool, mode: DirectionMode) -> Result<Rc<GraphView>> {
        memo(&self.views, (w, mode), || self.g.view(w, mode))
    }

    fn view_of(&self, w: Option<bool>, d: Option<DirectionMode>) -> Result<Rc<GraphView>> {
        self.view(w.unwrap_or(false), d.unwrap_or_else(|| self.natural()))
    }

    /// Distances on the directed (forward) or undirected view.
    fn distances(&self, w: bool, d: DirectionMode) -> Result<(Rc<DistanceMatrix>, DirectionMode)> {
        let directed = d != U;
        let dm = memo(&self.distances, (w, directed), || {
            Ok(DistanceMatrix::new(&*self.view(w, if directed { D } else { U })?, self.cfg.distance_cost))
        })?;
        Ok((dm, if d == D { O } else { d }))
    }

    fn distance_stats(&self, w: bool, d: DirectionMode) -> Result<DistanceStats> {
        let (dm, mode) = self.distances(w, d)?;
        Ok(paths::distance_stats_from(&dm, mode))
    }

    fn partition(&self) -> Result<Rc<Partition>> {
        memo(&self.partition, (), || Ok(community::detect_communities(&*self.view(false, U)?, self.cfg.community_seed)))
    }

    fn roles(&self, d: DirectionMode) -> Result<Rc<Roles>> {
        memo(&self.roles, d, || community::vertex_roles_all(&*self.view(false, d)?, &*self.partition()?))
    }

    fn graph_value(&self, m: Measure, w: Option<bool>, d: Option<DirectionMode>) -> Result<Stat> {
        use Measure::*;
        let ok = |x: usize| Ok(Stat::ok(x as f64));
        let connectivity = || memo(&self.connectivity, (), || Ok(graph::connectivity(&*self.view(false, D)?)));
        let wt = w.unwrap_or(false);
        match m {
            WeakComponents => ok(flow::weak_component_count(&*self.view_of(w, d)?)),
            StrongComponents => ok(flow::strong_component_count(&*self.view_of(w, d)?)),
            Adhesion => ok(connectivity()?.adhesion),
            Cohesion => ok(connectivity()?.cohesion),
            ArticulationPoints => ok(flow::articulation_point_count(&*self.view_of(w, d)?)),
            Diameter => Ok(self.distance_stats(wt, d.unwrap_or(U))?.diameter_stat()),
            Radius => {
                let s = self.distance_stats(wt, d.unwrap_or(U))?;
                Ok(Stat { value: s.radius, degenerate: s.degenerate })
            }
            AverageDistance => {
                let s = self.distance_stats(wt, d.unwrap_or(U))?;
                Ok(Stat { value: s.average_distance, degenerate: s.degenerate })
            }
            CliqueCount => ok(cliques::maximal_clique_count(&*self.view_of(w, d)?, self.cfg.clique_vertex_bound)?),
            Communities => ok(self.partition()?.community_count()),
            Modularity => Ok(Stat::ok(community::modularity(&*self.view(wt, U)?, &*self.partition()?)?)),
            EdgeCount => ok(self.view_of(w, d)?.edge_count()),
            VertexCount => ok(self.g.vertex_count()),
            Density => Ok(Stat::ok(graph::basic_stats(&*self.view_of(w, d)?).density)),
            GlobalTransitivity => Ok(Stat::ok(graph::global_transitivity(&*self.view_of(w, d)?))),
            Reciprocity => graph::reciprocity(&*self.view_of(w, d)?),
            Assortativity => Ok(graph::assortativity(&*self.view_of(w, d)?)),
            _ => unreachable!("{m:?} is a vertex measure"),
        }
    }

    fn vertex_values(&self, m: Measure, w: Option<bool>, d: Option<DirectionMode>) -> Result<Rc<Values>> {
        memo(&self.vertex_values, (m, w, d), || self.compute_vertex(m, w, d))
    }

    fn compute_vertex(&self, m: Measure, w: Option<bool>, d: Option<DirectionMode>) -> Result<Values> {
        use Measure::*;
        let n = self.g.vertex_count();
        let cfg = self.cfg;
        let wt = w.unwrap_or(false);
        let view = || self.view_of(w, d);
        let role = |i: usize| -> Result<Values> {
            let r = self.roles(d.unwrap_or(U))?;
            let v = match i {
                0 => &r.participation,
                1 => &r.within_module_degree,
                2 => &r.external_intensity,
                3 => &r.diversity,
                _ => &r.heterogeneity,
            };
            Ok(Values::plain(v.clone()))
        };
        Ok(match m {
            Eigenvector => spectral_or_zero(n, spectral::eigenvector(&*view()?, cfg))?,
            Hub | Authority => {
                let h = memo(&self.hits, wt, || spectral::hits(&*view()?, cfg));
                let h = match h {
                    Err(Error::NonConvergence { .. }) => return spectral_or_zero(n, h.map(|x| x.0.clone())),
                    r => r?,
                };
                Values::centrality(if m == Hub { h.0.clone() } else { h.1.clone() })
            }
            Alpha => spectral_or_zero(n, spectral::alpha(&*view()?, cfg))?,
            Power => spectral_or_zero(n, spectral::power(&*view()?, cfg))?,
            PageRank => spectral_or_zero(n, spectral::pagerank(&*view()?, cfg))?,
            Subgraph => Values::centrality(spectral::subgraph(&*view()?)?),
            Betweenness => Values::plain(paths::betweenness_all(&*view()?, cfg.distance_cost)?),
            Closeness | Eccentricity => {
                let (dm, mode) = self.distances(wt, d.unwrap_or(U))?;
                Values::plain(
                    (0..n)
                        .map(|v| if m == Closeness { dm.closeness(v, mode) } else { dm.eccentricity(v, mode) })
                        .collect(),
                )
            }
            ArticulationPoint => Values::plain(vertex::articulation_flag_all(&*view()?)),
            Coreness => Values::plain(vertex::coreness_all(&*view()?)?.into_iter().map(|c| c as f64).collect()),
            Participation => role(0)?,
            WithinModuleDegree => role(1)?,
            ExternalIntensity => role(2)?,
            Diversity => role(3)?,
            Heterogeneity => role(4)?,
            Degree => Values::plain(vertex::degree_centrality_all(&*view()?)),
            Strength => Values::plain(vertex::strength_all(&*view()?)),
            LocalTransitivity => Values::plain(vertex::local_transitivity_all(&*view()?)?),
            BurtConstraint => {
                let s = vertex::burt_constraint_all(&*self.view(wt, U)?)?;
                Values::plain(s.iter().map(|x| x.value).collect())
            }
            _ => unreachable!("{m:?} is a graph measure"),
        })
    }

    fn evaluate(&self, e: &FeatureSpec, target: VertexId) -> Result<f64> {
        let value = match e.scale {
            Scale::Graph => self.graph_value(e.measure, e.weighted, e.direction)?.value,
            Scale::Vertex => self.vertex_values(e.measure, e.weighted, e.direction)?.values[target],
            Scale::GraphAvg => crate::measures::mean(&self.vertex_values(e.measure, e.weighted, e.direction)?.values),
        };
        Ok(if value.is_finite() { value } else { 0.0 })
    }
}

/// Extracts the graphs around `target_id` and evaluates every catalog entry;
/// Vertex-scale entries are read at the target's author.
pub fn featurize(
    corpus: &Corpus,
    target_id: &str,
    params: &FeatureParams,
    catalog: &FeatureCatalog,
) -> Result<FeatureVector> {
    params.measures.validate()?;
    let ctx = corpus.context_period(target_id, params.context_size)?;
    let triple = extract(corpus, &ctx, &params.extraction)?;
    let author = corpus.user_name(ctx.target.author);
    let evaluators: Vec<(GraphKind, Evaluator<'_>, VertexId)> = GraphKind::ALL
        .into_iter()
        .filter(|&k| catalog.entries.iter().any(|e| e.graph == k))
        .map(|k| {
            let g = triple.get(k);
            let v = g.vertex(author).ok_or_else(|| Error::UnknownVertex(author.to_string()))?;
            Ok((k, Evaluator::new(g, &params.measures), v))
        })
        .collect::<Result<_>>()?;
    let values = catalog
        .entries
        .iter()
        .map(|e| {
            let (_, ev, v) = evaluators.iter().find(|(k, _, _)| *k == e.graph).expect("graph evaluated");
            ev.evaluate(e, *v)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(FeatureVector {
        message_id: ctx.target.id.clone(),
        label: ctx.target.label,
        values,
        past_len: ctx.past.len(),
        future_len: ctx.future.len(),
    })
}

/// Featurizes `targets` on a pool of `workers` threads. Rows keep the input
/// order; every failing target is reported.
pub fn featurize_corpus<S: AsRef<str> + Sync>(
    corpus: &Corpus,
    targets: &[S],
    params: &FeatureParams,
    catalog: &FeatureCatalog,
    workers: usize,
) -> Result<Dataset> {
    let vectors = featurize_all(corpus, targets, params, catalog, workers)?;
    let mut ids = Vec::with_capacity(vectors.len());
    let mut labels = Vec::with_capacity(vectors.len());
    let mut rows = Vec::with_capacity(vectors.len());
    for fv in vectors {
        labels.push(match fv.label {
            Label::Abuse => 1,
            Label::NonAbuse => 0,
            Label::Unlabeled => {
                return Err(Error::Dataset(format!("target {} is unlabeled", fv.message_id)));
            }
        });
        ids.push(fv.message_id);
        rows.push(fv.values);
    }
    Dataset::new(catalog.names(), ids, labels, rows)
}

/// Like [`featurize_corpus`] but keeps the full vectors, metadata included.
pub fn featurize_all<S: AsRef<str> + Sync>(
    corpus: &Corpus,
    targets: &[S],
    params: &FeatureParams,
    catalog: &FeatureCatalog,
    workers: usize,
) -> Result<Vec<FeatureVector>> {
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be at least 1".into()));
    }
    let run = || -> Vec<Result<FeatureVector>> {
        targets.par_iter().map(|t| featurize(corpus, t.as_ref(), params, catalog)).collect()
    };
    let results = if workers == 1 {
        targets.iter().map(|t| featurize(corpus, t.as_ref(), params, catalog)).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run)
    };
    let mut out = Vec::with_capacity(results.len());
    let mut errors = Vec::new();
    for (t, r) in targets.iter().zip(results) {
        match r {
            Ok(v) => out.push(v),
            Err(e) => errors.push((t.as_ref().to_string(), Box::new(e))),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(Error::Featurize(errors))
    }
}
