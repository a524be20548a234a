//! Randomised comparisons of the library against the brute-force oracles.
//! Each suite returns one message per mismatch.
#![allow(dead_code)]

use std::collections::BTreeMap;

use convgraph::graph::DirectionMode::{In, Out, Undirected};
use convgraph::measures::{cliques, flow, graph, paths, spectral, vertex, DistanceCost, MeasureConfig};

use super::oracle::{self, Dense};

const C: DistanceCost = DistanceCost::Reciprocal;

/// Comparison counts per measure and the mismatches found.
#[derive(Debug, Default)]
pub struct Tally {
    pub counts: BTreeMap<&'static str, usize>,
    pub errors: Vec<String>,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

fn close(what: &'static str, id: usize, got: &[f64], want: &[f64], tol: f64, t: &mut Tally) {
    *t.counts.entry(what).or_default() += 1;
    let ok = got.len() == want.len()
        && got.iter().zip(want).all(|(a, b)| (a - b).abs() <= tol * b.abs().max(1.0));
    if !ok {
        t.errors.push(format!("graph {id}: {what}: got {got:?}, want {want:?}"));
    }
}

fn same<T: PartialEq + std::fmt::Debug>(what: &'static str, id: usize, got: T, want: T, t: &mut Tally) {
    *t.counts.entry(what).or_default() += 1;
    if got != want {
        t.errors.push(format!("graph {id}: {what}: got {got:?}, want {want:?}"));
    }
}

fn as_f64(v: Vec<usize>) -> Vec<f64> {
    v.into_iter().map(|x| x as f64).collect()
}

fn min_of(v: Vec<f64>) -> f64 {
    v.into_iter().fold(f64::INFINITY, f64::min)
}

/// Compares every combinatorial and path-based measure on `count` random
/// graphs with up to seven vertices, half directed, half weighted.
pub fn measure_suite(seed: u64, count: usize) -> Tally {
    let mut rng = Dense::seeded(seed);
    let mut t = Tally::default();
    for id in 0..count {
        let directed = id % 2 == 0;
        let g = Dense::random(&mut rng, 7, directed, id % 4 < 2);
        let m = oracle::merged(&g);
        for w in [false, true] {
            let whole = g.view(w);
            let und = g.view_as(w, Undirected);
            close("betweenness", id, &paths::betweenness_all(&whole, C).unwrap(), &oracle::betweenness(&g, w), 1e-9, &mut t);
            close("betweenness U", id, &paths::betweenness_all(&und, C).unwrap(), &oracle::betweenness(&m, w), 1e-9, &mut t);
            close("closeness U", id, &paths::closeness_all(&und, C), &oracle::closeness(&m, w, false), 1e-9, &mut t);
            close("eccentricity U", id, &paths::eccentricity_all(&und, C), &oracle::eccentricity(&m, w, false), 1e-9, &mut t);
            let ds = paths::distance_stats(&whole, C);
            let (d, r, a) = oracle::distance_stats(&g, w);
            close("distance stats", id, &[ds.diameter, ds.radius, ds.average_distance], &[d, r, a], 1e-9, &mut t);
            let du = paths::distance_stats(&und, C);
            let (d, r, a) = oracle::distance_stats(&m, w);
            close("distance stats U", id, &[du.diameter, du.radius, du.average_distance], &[d, r, a], 1e-9, &mut t);
            close("local transitivity", id, &vertex::local_transitivity_all(&und).unwrap(), &oracle::local_transitivity(&g, w), 1e-9, &mut t);
            if directed {
                for (mode, incoming) in [(In, true), (Out, false)] {
                    let v = g.view_as(w, mode);
                    close("closeness I/O", id, &paths::closeness_all(&v, C), &oracle::closeness(&g, w, incoming), 1e-9, &mut t);
                    let ecc = oracle::eccentricity(&g, w, incoming);
                    close("eccentricity I/O", id, &paths::eccentricity_all(&v, C), &ecc, 1e-9, &mut t);
                    let radius = if oracle::distance_stats(&g, w).0 == 0.0 { 0.0 } else { min_of(ecc) };
                    close("radius I/O", id, &[paths::distance_stats(&v, C).radius], &[radius], 1e-9, &mut t);
                }
            }
        }
        let und = g.view_as(false, Undirected);
        same("coreness U", id, as_f64(vertex::coreness_all(&und).unwrap()), as_f64(oracle::coreness(&g, 'U')), &mut t);
        if directed {
            for (mode, c) in [(In, 'I'), (Out, 'O')] {
                let got = vertex::coreness_all(&g.view_as(false, mode)).unwrap();
                same("coreness I/O", id, got, oracle::coreness(&g, c), &mut t);
            }
            let r = graph::reciprocity(&g.view(false)).unwrap().value;
            close("reciprocity", id, &[r], &[oracle::reciprocity(&g)], 1e-12, &mut t);
        }
        let whole = g.view(false);
        let comps = graph::components(&whole);
        let all = vec![true; g.n];
        same("weak components", id, comps.weak, oracle::weak_components(&g, &all), &mut t);
        same("strong components", id, comps.strong, oracle::strong_components(&g), &mut t);
        let conn = graph::connectivity(&whole);
        same("adhesion", id, conn.adhesion, oracle::adhesion(&g), &mut t);
        same("cohesion", id, conn.cohesion, oracle::cohesion(&g), &mut t);
        let conn_u = graph::connectivity(&und);
        same("adhesion U", id, conn_u.adhesion, oracle::adhesion(&m), &mut t);
        same("cohesion U", id, conn_u.cohesion, oracle::cohesion(&m), &mut t);
        same("articulation points", id, flow::articulation_points(&whole), oracle::articulation_points(&g), &mut t);
        same("articulation count", id, graph::articulation_point_count(&whole), oracle::articulation_points(&g).iter().filter(|&&a| a).count(), &mut t);
        same("maximal cliques", id, cliques::maximal_clique_count(&whole, 512).unwrap(), oracle::maximal_cliques(&g), &mut t);
        close("global transitivity", id, &[graph::global_transitivity(&whole)], &[oracle::global_transitivity(&g)], 1e-12, &mut t);
        close("assortativity", id, &[graph::assortativity(&whole).value], &[oracle::assortativity(&g)], 1e-9, &mut t);
        let mu = Dense { w: m.w.iter().map(|r| r.iter().map(|&x| if x > 0.0 { 1.0 } else { 0.0 }).collect()).collect(), ..m.clone() };
        close("assortativity U", id, &[graph::assortativity(&und).value], &[oracle::assortativity(&mu)], 1e-9, &mut t);
    }
    t
}

/// Compares the iterative spectral centralities against dense solutions on
/// `count` random graphs with up to twenty vertices.
pub fn spectral_suite(seed: u64, count: usize) -> Tally {
    let mut rng = Dense::seeded(seed);
    let cfg = MeasureConfig::default();
    let mut t = Tally::default();
    let mut id = 0;
    let mut graphs = 0;
    while graphs < count {
        id += 1;
        let directed = id % 2 == 0;
        let weighted = id % 3 != 0;
        let g = Dense::random(&mut rng, 20, directed, weighted);
        if g.n < 2 {
            continue;
        }
        let v = g.view(weighted);
        let pr = spectral::pagerank(&v, &cfg).unwrap().values;
        close("pagerank", id, &pr, &oracle::pagerank(&g, weighted, cfg.pagerank_damping), 1e-8, &mut t);

        let a = oracle::matrix(&g, weighted);
        // acyclic graphs are nilpotent; dense eigensolvers only return noise there
        let acyclic = oracle::strong_components(&g) == g.n;
        let rho = if acyclic { 0.0 } else { oracle::spectral_radius(&a) };
        close("spectral radius", id, &[spectral::spectral_radius(&v, &cfg)], &[rho], 1e-8, &mut t);
        let (fa, fb) = if acyclic { (0.5, 0.25) } else { (0.5 / rho, 0.25 / rho) };
        let al = spectral::alpha(&v, &cfg).unwrap().values;
        close("alpha", id, &al, &oracle::alpha(&g, weighted, fa), 1e-8, &mut t);
        if v.edge_count() > 0 {
            let pw = spectral::power(&v, &cfg).unwrap().values;
            close("power", id, &pw, &oracle::power(&g, weighted, fb), 1e-8, &mut t);
        }
        if oracle::strongly_connected(&g) {
            let ev = spectral::eigenvector(&v, &cfg).unwrap().values;
            close("eigenvector", id, &ev, &oracle::eigenvector(&g, weighted), 1e-8, &mut t);
        }
        if let Some((hub, auth)) = oracle::hits(&g, weighted) {
            let (h, au) = spectral::hits(&v, &cfg).unwrap();
            close("hub", id, &h.values, &hub, 1e-8, &mut t);
            close("authority", id, &au.values, &auth, 1e-8, &mut t);
        }
        if !directed && !weighted {
            close("subgraph", id, &spectral::subgraph(&v).unwrap().values, &oracle::subgraph(&g), 1e-9, &mut t);
        }
        graphs += 1;
    }
    t
}
