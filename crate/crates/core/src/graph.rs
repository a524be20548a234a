//! Weighted conversational graph and its direction/weight views.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Index of a vertex inside one graph.
pub type VertexId = usize;

/// Weighted graph over users, without self-loops or parallel edges.
///
/// Undirected graphs store each edge once under `(min, max)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversationalGraph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: BTreeMap<(VertexId, VertexId), f64>,
    directed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DirectionMode {
    Undirected,
    Directed,
    In,
    Out,
}

impl DirectionMode {
    pub fn code(self) -> char {
        match self {
            DirectionMode::Undirected => 'U',
            DirectionMode::Directed => 'D',
            DirectionMode::In => 'I',
            DirectionMode::Out => 'O',
        }
    }
}

impl ConversationalGraph {
    pub fn new(directed: bool) -> Self {
        ConversationalGraph { labels: Vec::new(), index: HashMap::new(), edges: BTreeMap::new(), directed }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Returns the vertex for `label`, inserting it if needed.
    pub fn add_vertex(&mut self, label: &str) -> VertexId {
        if let Some(&v) = self.index.get(label) {
            return v;
        }
        let v = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), v);
        v
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in key order; undirected graphs report `(min, max)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    fn key(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        if self.directed || u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        self.edges.get(&self.key(u, v)).copied()
    }

    /// Adds `w` to the weight of edge `(u, v)`, creating it if absent.
    pub fn add_weight(&mut self, u: VertexId, v: VertexId, w: f64) -> Result<()> {
        let n = self.labels.len();
        if u >= n {
            return Err(Error::UnknownVertex(u.to_string()));
        }
        if v >= n {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        if u == v {
            return Err(Error::SelfLoop(self.labels[u].clone()));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidWeight(w));
        }
        *self.edges.entry(self.key(u, v)).or_insert(0.0) += w;
        Ok(())
    }

    /// Label-based convenience wrapper around [`Self::add_weight`].
    pub fn add_weight_by_label(&mut self, u: &str, v: &str, w: f64) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u.to_string()));
        }
        let a = self.add_vertex(u);
        let b = self.add_vertex(v);
        self.add_weight(a, b, w)
    }

    /// Builds a read-only view. `In`/`Out`/`Directed` need a directed graph.
    pub fn view(&self, use_weights: bool, mode: DirectionMode) -> Result<GraphView> {
        GraphView::new(self, use_weights, mode)
    }

    /// Edge list dump: `u<TAB>v<TAB>weight`, then edgeless vertices alone.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let mut touched = vec![false; self.labels.len()];
        for (u, v, w) in self.edges() {
            touched[u] = true;
            touched[v] = true;
            let _ = writeln!(out, "{}\t{}\t{}", self.labels[u], self.labels[v], w);
        }
        for (v, t) in touched.iter().enumerate() {
            if !t {
                let _ = writeln!(out, "{}", self.labels[v]);
            }
        }
        out
    }
}

/// Adjacency snapshot of a graph under one weighting and direction mode.
///
/// `out` and `inc` hold `(neighbour, weight)` pairs sorted by neighbour.
/// For the undirected mode both lists are the same symmetric neighbourhood,
/// with antiparallel arcs merged by summing.
#[derive(Debug, Clone)]
pub struct GraphView {
    n: usize,
    weighted: bool,
    mode: DirectionMode,
    out: Vec<Vec<(VertexId, f64)>>,
    inc: Vec<Vec<(VertexId, f64)>>,
}

impl GraphView {
    fn new(g: &ConversationalGraph, use_weights: bool, mode: DirectionMode) -> Result<Self> {
        if mode != DirectionMode::Undirected && !g.directed {
            return Err(Error::UnsupportedVariant {
                measure: "view".into(),
                variant: format!("direction {:?} of an undirected graph", mode),
            });
        }
        let n = g.vertex_count();
        let mut out: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); n];
        let mut inc: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); n];
        if mode == DirectionMode::Undirected {
            let mut merged: BTreeMap<(VertexId, VertexId), f64> = BTreeMap::new();
            for (u, v, w) in g.edges() {
                let k = if u < v { (u, v) } else { (v, u) };
                *merged.entry(k).or_insert(0.0) += w;
            }
            for ((u, v), w) in merged {
                let w = if use_weights { w } else { 1.0 };
                out[u].push((v, w));
                out[v].push((u, w));
            }
            for list in &mut out {
                list.sort_by_key(|&(v, _)| v);
            }
            inc = out.clone();
        } else {
            for (u, v, w) in g.edges() {
                let w = if use_weights { w } else { 1.0 };
                out[u].push((v, w));
                inc[v].push((u, w));
            }
            for list in out.iter_mut().chain(inc.iter_mut()) {
                list.sort_by_key(|&(v, _)| v);
            }
        }
        Ok(GraphView { n, weighted: use_weights, mode, out, inc })
    }

    /// View built directly from an arc list, mainly for tests and oracles.
    pub fn from_arcs(n: usize, arcs: &[(VertexId, VertexId, f64)], directed: bool, use_weights: bool) -> Result<Self> {
        let mut g = ConversationalGraph::new(directed);
        for i in 0..n {
            g.add_vertex(&i.to_string());
        }
        for &(u, v, w) in arcs {
            g.add_weight(u, v, w)?;
        }
        let mode = if directed { DirectionMode::Directed } else { DirectionMode::Undirected };
        g.view(use_weights, mode)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn mode(&self) -> DirectionMode {
        self.mode
    }

    /// True when arcs are oriented (every mode except `Undirected`).
    pub fn is_directed(&self) -> bool {
        self.mode != DirectionMode::Undirected
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.inc[v]
    }

    /// Neighbours selected by the view's mode: in-neighbours for `In`,
    /// out-neighbours for `Out` and `Directed`, all for `Undirected`.
    pub fn mode_neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        match self.mode {
            DirectionMode::In => &self.inc[v],
            _ => &self.out[v],
        }
    }

    /// Number of arcs (or undirected edges).
    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.out.iter().map(Vec::len).sum();
        if self.is_directed() {
            arcs
        } else {
            arcs / 2
        }
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        self.out[u].binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| self.out[u][i].1)
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.out[u].binary_search_by_key(&v, |&(x, _)| x).is_ok()
    }

    /// Same arcs with every orientation flipped; `In` and `Out` swap.
    pub fn reversed(&self) -> GraphView {
        let mode = match self.mode {
            DirectionMode::In => DirectionMode::Out,
            DirectionMode::Out => DirectionMode::In,
            m => m,
        };
        GraphView { n: self.n, weighted: self.weighted, mode, out: self.inc.clone(), inc: self.out.clone() }
    }

    /// Same arcs with a different mode tag.
    pub fn with_mode(&self, mode: DirectionMode) -> GraphView {
        assert!(self.is_directed() == (mode != DirectionMode::Undirected), "mode change must keep arc semantics");
        GraphView { mode, ..self.clone() }
    }

    /// Dense adjacency matrix, `a[u][v]` = weight of arc `u -> v`.
    pub fn dense(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.n]; self.n];
        for (u, row) in self.out.iter().enumerate() {
            for &(v, w) in row {
                a[u][v] = w;
            }
        }
        a
    }
}
