//! Graph-scale measures.

use super::{flow, unsupported, Stat};
use crate::error::Result;
use crate::graph::GraphView;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasicStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub density: f64,
}

/// Vertex and edge counts and density (`m / (n(n-1))` directed,
/// `m / (n(n-1)/2)` undirected).
pub fn basic_stats(view: &GraphView) -> BasicStats {
    let n = view.vertex_count();
    let m = view.edge_count();
    let pairs = if n <= 1 {
        0.0
    } else if view.is_directed() {
        (n * (n - 1)) as f64
    } else {
        (n * (n - 1) / 2) as f64
    };
    BasicStats { vertex_count: n, edge_count: m, density: if pairs > 0.0 { m as f64 / pairs } else { 0.0 } }
}

/// `3 × triangles / connected triples` with orientation and weights ignored.
pub fn global_transitivity(view: &GraphView) -> f64 {
    let n = view.vertex_count();
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let mut a: Vec<usize> =
                view.out_neighbors(u).iter().chain(view.in_neighbors(u)).map(|&(v, _)| v).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let mut closed = 0usize;
    let mut triples = 0usize;
    for nb in &nbrs {
        let k = nb.len();
        triples += k * k.saturating_sub(1) / 2;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if nbrs[a].binary_search(&b).is_ok() {
                    closed += 1;
                }
            }
        }
    }
    if triples == 0 {
        0.0
    } else {
        closed as f64 / triples as f64
    }
}

/// Share of arcs whose reverse arc exists.
pub fn reciprocity(view: &GraphView) -> Result<Stat> {
    if !view.is_directed() {
        return Err(unsupported("reciprocity", view));
    }
    let mut arcs = 0usize;
    let mut mutual = 0usize;
    for u in 0..view.vertex_count() {
        for &(v, _) in view.out_neighbors(u) {
            arcs += 1;
            if view.has_arc(v, u) {
                mutual += 1;
            }
        }
    }
    Ok(if arcs == 0 { Stat::undefined() } else { Stat::ok(mutual as f64 / arcs as f64) })
}

/// Degree assortativity: Pearson correlation of endpoint degrees over edges.
/// Directed views pair the source's out-degree with the target's in-degree;
/// undirected views count each edge in both orientations.
pub fn assortativity(view: &GraphView) -> Stat {
    let n = view.vertex_count();
    let outd: Vec<f64> = (0..n).map(|v| view.out_neighbors(v).len() as f64).collect();
    let ind: Vec<f64> = (0..n).map(|v| view.in_neighbors(v).len() as f64).collect();
    let mut pairs = Vec::new();
    for u in 0..n {
        for &(v, _) in view.out_neighbors(u) {
            if view.is_directed() {
                pairs.push((outd[u], ind[v]));
            } else {
                pairs.push((outd[u], outd[v]));
            }
        }
    }
    pearson(&pairs)
}

fn pearson(pairs: &[(f64, f64)]) -> Stat {
    if pairs.is_empty() {
        return Stat::undefined();
    }
    let k = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / k;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx <= 1e-12 * k || syy <= 1e-12 * k {
        return Stat::undefined();
    }
    Stat::ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Components {
    pub weak: usize,
    pub strong: usize,
}

pub fn components(view: &GraphView) -> Components {
    Components { weak: flow::weak_component_count(view), strong: flow::strong_component_count(view) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connectivity {
    pub adhesion: usize,
    pub cohesion: usize,
}

pub fn connectivity(view: &GraphView) -> Connectivity {
    Connectivity { adhesion: flow::adhesion(view), cohesion: flow::cohesion(view) }
}

pub fn articulation_point_count(view: &GraphView) -> usize {
    flow::articulation_point_count(view)
}

/// Mean of a per-vertex measure over the whole vertex set.
pub fn average_over_vertices<F>(view: &GraphView, measure: F) -> Result<f64>
where
    F: Fn(&GraphView) -> Result<Vec<f64>>,
{
    Ok(super::mean(&measure(view)?))
}
