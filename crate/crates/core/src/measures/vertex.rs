//! Microscopic vertex measures and coreness.

use super::{check_vertex, unsupported, Stat};
use crate::error::Result;
use crate::graph::{DirectionMode, GraphView, VertexId};

/// Neighbour count under the view's mode (distinct neighbours in either
/// direction for `Directed`).
fn degree(view: &GraphView, v: VertexId) -> usize {
    match view.mode() {
        DirectionMode::Directed => {
            let (o, i) = (view.out_neighbors(v), view.in_neighbors(v));
            o.len() + i.iter().filter(|&&(u, _)| !view.has_arc(v, u)).count()
        }
        _ => view.mode_neighbors(v).len(),
    }
}

/// `degree / (n - 1)`; 0 on a single vertex.
pub fn degree_centrality_all(view: &GraphView) -> Vec<f64> {
    let n = view.vertex_count();
    (0..n).map(|v| if n <= 1 { 0.0 } else { degree(view, v) as f64 / (n - 1) as f64 }).collect()
}

pub fn degree_centrality(view: &GraphView, v: VertexId) -> Result<f64> {
    check_vertex(view, v)?;
    Ok(degree_centrality_all(view)[v])
}

/// Sum of incident weights under the view's mode (`Directed` counts both
/// directions).
pub fn strength_all(view: &GraphView) -> Vec<f64> {
    (0..view.vertex_count())
        .map(|v| match view.mode() {
            DirectionMode::Directed => {
                view.out_neighbors(v).iter().chain(view.in_neighbors(v)).map(|&(_, w)| w).sum()
            }
            _ => view.mode_neighbors(v).iter().map(|&(_, w)| w).sum(),
        })
        .collect()
}

pub fn strength(view: &GraphView, v: VertexId) -> Result<f64> {
    check_vertex(view, v)?;
    Ok(strength_all(view)[v])
}

/// Local clustering coefficient on an undirected view; the weighted form is
/// Barrat's. Vertices of degree below 2 get 0.
pub fn local_transitivity_all(view: &GraphView) -> Result<Vec<f64>> {
    if view.is_directed() {
        return Err(unsupported("local transitivity", view));
    }
    let n = view.vertex_count();
    let mut out = vec![0.0; n];
    for (v, slot) in out.iter_mut().enumerate() {
        let nb = view.out_neighbors(v);
        let k = nb.len();
        if k < 2 {
            continue;
        }
        let s: f64 = nb.iter().map(|&(_, w)| w).sum();
        let mut closed = 0usize;
        let mut weighted = 0.0;
        for (a, &(j, wj)) in nb.iter().enumerate() {
            for &(h, wh) in &nb[a + 1..] {
                if view.has_arc(j, h) {
                    closed += 1;
                    weighted += wj + wh;
                }
            }
        }
        *slot = if view.is_weighted() {
            weighted / (s * (k - 1) as f64)
        } else {
            closed as f64 / (k * (k - 1) / 2) as f64
        };
    }
    Ok(out)
}

pub fn local_transitivity(view: &GraphView, v: VertexId) -> Result<f64> {
    check_vertex(view, v)?;
    Ok(local_transitivity_all(view)?[v])
}

/// Burt's constraint on an undirected view, with proportional tie strengths
/// `p_ij = w_ij / s_i`. Isolates are degenerate.
pub fn burt_constraint_all(view: &GraphView) -> Result<Vec<Stat>> {
    if view.is_directed() {
        return Err(unsupported("burt constraint", view));
    }
    let n = view.vertex_count();
    let s = strength_all(view);
    let p = |i: VertexId, j: VertexId| view.weight(i, j).map_or(0.0, |w| w / s[i]);
    Ok((0..n)
        .map(|i| {
            let nb = view.out_neighbors(i);
            if nb.is_empty() {
                return Stat::undefined();
            }
            let c = nb
                .iter()
                .map(|&(j, _)| {
                    let indirect: f64 = nb.iter().filter(|&&(q, _)| q != j).map(|&(q, _)| p(i, q) * p(q, j)).sum();
                    (p(i, j) + indirect).powi(2)
                })
                .sum();
            Stat::ok(c)
        })
        .collect())
}

pub fn burt_constraint(view: &GraphView, v: VertexId) -> Result<Stat> {
    check_vertex(view, v)?;
    Ok(burt_constraint_all(view)?[v])
}

/// k-core index by iterative peeling. `In`/`Out` views peel on in/out
/// degree; `Directed` views are rejected.
pub fn coreness_all(view: &GraphView) -> Result<Vec<usize>> {
    if view.mode() == DirectionMode::Directed {
        return Err(unsupported("coreness", view));
    }
    let n = view.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| view.mode_neighbors(v).len()).collect();
    let mut removed = vec![false; n];
    let mut core = vec![0; n];
    let mut k = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        k = k.max(deg[v]);
        core[v] = k;
        removed[v] = true;
        // vertices whose counted degree included v
        let affected = match view.mode() {
            DirectionMode::In => view.out_neighbors(v),
            DirectionMode::Out => view.in_neighbors(v),
            _ => view.out_neighbors(v),
        };
        for &(w, _) in affected {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    Ok(core)
}

pub fn coreness(view: &GraphView, v: VertexId) -> Result<usize> {
    check_vertex(view, v)?;
    Ok(coreness_all(view)?[v])
}

/// 1 when the vertex is an articulation point of the graph with orientation
/// ignored, else 0.
pub fn articulation_flag_all(view: &GraphView) -> Vec<f64> {
    super::flow::articulation_points(view).into_iter().map(|a| if a { 1.0 } else { 0.0 }).collect()
}

pub fn is_articulation_point(view: &GraphView, v: VertexId) -> Result<bool> {
    check_vertex(view, v)?;
    Ok(articulation_flag_all(view)[v] == 1.0)
}
