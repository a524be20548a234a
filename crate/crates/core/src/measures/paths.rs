//! Shortest-path measures: betweenness, closeness, eccentricity and the
//! graph-level distance statistics.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use super::{check_vertex, unsupported, DistanceCost, Stat};
use crate::error::Result;
use crate::graph::{DirectionMode, GraphView, VertexId};

/// Relative tolerance under which two weighted path lengths are equal.
const TIE_EPS: f64 = 1e-12;

fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_EPS * a.abs().max(b.abs()).max(1.0)
}

pub(crate) fn arc_cost(view: &GraphView, w: f64, cost: DistanceCost) -> f64 {
    if !view.is_weighted() {
        return 1.0;
    }
    match cost {
        DistanceCost::Reciprocal => 1.0 / w,
        DistanceCost::Raw => w,
    }
}

#[derive(PartialEq)]
struct Entry(f64, VertexId);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then vertex id
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Single-source shortest paths following out-arcs, with the order in which
/// vertices were settled, the number of shortest paths and the predecessor
/// lists.
struct Sssp {
    sigma: Vec<f64>,
    preds: Vec<Vec<VertexId>>,
    order: Vec<VertexId>,
}

fn sssp(view: &GraphView, s: VertexId, cost: DistanceCost) -> Sssp {
    let n = view.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0; n];
    let mut preds: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    dist[s] = 0.0;
    sigma[s] = 1.0;
    if !view.is_weighted() {
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &(v, _) in view.out_neighbors(u) {
                if dist[v].is_infinite() {
                    dist[v] = dist[u] + 1.0;
                    queue.push_back(v);
                }
                if dist[v] == dist[u] + 1.0 {
                    sigma[v] += sigma[u];
                    preds[v].push(u);
                }
            }
        }
    } else {
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::from([Entry(0.0, s)]);
        while let Some(Entry(d, u)) = heap.pop() {
            if settled[u] || d > dist[u] {
                continue;
            }
            settled[u] = true;
            order.push(u);
            for &(v, w) in view.out_neighbors(u) {
                if settled[v] {
                    continue;
                }
                let nd = dist[u] + arc_cost(view, w, cost);
                if dist[v].is_finite() && same_length(nd, dist[v]) {
                    sigma[v] += sigma[u];
                    preds[v].push(u);
                } else if nd < dist[v] {
                    dist[v] = nd;
                    sigma[v] = sigma[u];
                    preds[v].clear();
                    preds[v].push(u);
                    heap.push(Entry(nd, v));
                }
            }
        }
    }
    Sssp { sigma, preds, order }
}

/// Unnormalised betweenness of every vertex (Brandes). Undirected views
/// count each unordered pair once.
pub fn betweenness_all(view: &GraphView, cost: DistanceCost) -> Result<Vec<f64>> {
    if matches!(view.mode(), DirectionMode::In | DirectionMode::Out) {
        return Err(unsupported("betweenness", view));
    }
    let n = view.vertex_count();
    let mut bc = vec![0.0; n];
    let mut delta = vec![0.0; n];
    for s in 0..n {
        let sp = sssp(view, s, cost);
        delta.iter_mut().for_each(|d| *d = 0.0);
        for &w in sp.order.iter().rev() {
            for &v in &sp.preds[w] {
                delta[v] += sp.sigma[v] / sp.sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    if !view.is_directed() {
        bc.iter_mut().for_each(|b| *b /= 2.0);
    }
    Ok(bc)
}

pub fn betweenness(view: &GraphView, v: VertexId, cost: DistanceCost) -> Result<f64> {
    check_vertex(view, v)?;
    Ok(betweenness_all(view, cost)?[v])
}

/// Forward shortest-path lengths between all ordered pairs; unreachable
/// pairs are infinite.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(view: &GraphView, cost: DistanceCost) -> DistanceMatrix {
        let n = view.vertex_count();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(single_source(view, s, cost));
        }
        DistanceMatrix { n, d }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> f64 {
        self.d[u * self.n + v]
    }

    /// Reachable distances from (`In`: towards) `v`, excluding `v` itself.
    fn reach(&self, v: VertexId, mode: DirectionMode) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).filter(move |&u| u != v).filter_map(move |u| {
            let d = if mode == DirectionMode::In { self.get(u, v) } else { self.get(v, u) };
            d.is_finite().then_some(d)
        })
    }

    /// `(r - 1) / sum of distances` over the `r - 1` reachable vertices.
    pub fn closeness(&self, v: VertexId, mode: DirectionMode) -> f64 {
        let (count, total) = self.reach(v, mode).fold((0usize, 0.0), |(c, t), d| (c + 1, t + d));
        if count == 0 || total <= 0.0 {
            0.0
        } else {
            count as f64 / total
        }
    }

    pub fn eccentricity(&self, v: VertexId, mode: DirectionMode) -> f64 {
        self.reach(v, mode).fold(0.0, f64::max)
    }
}

fn single_source(view: &GraphView, s: VertexId, cost: DistanceCost) -> Vec<f64> {
    let n = view.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    dist[s] = 0.0;
    if !view.is_weighted() {
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in view.out_neighbors(u) {
                if dist[v].is_infinite() {
                    dist[v] = dist[u] + 1.0;
                    queue.push_back(v);
                }
            }
        }
    } else {
        let mut heap = BinaryHeap::from([Entry(0.0, s)]);
        while let Some(Entry(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in view.out_neighbors(u) {
                let nd = d + arc_cost(view, w, cost);
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Entry(nd, v));
                }
            }
        }
    }
    dist
}

fn direction_for(view: &GraphView) -> DirectionMode {
    match view.mode() {
        DirectionMode::Directed => DirectionMode::Out,
        m => m,
    }
}

/// Closeness of every vertex under the view's mode (`In` uses distances
/// towards the vertex). Isolates get 0.
pub fn closeness_all(view: &GraphView, cost: DistanceCost) -> Vec<f64> {
    let dm = DistanceMatrix::new(view, cost);
    let mode = direction_for(view);
    (0..dm.n).map(|v| dm.closeness(v, mode)).collect()
}

pub fn closeness(view: &GraphView, v: VertexId, cost: DistanceCost) -> Result<f64> {
    check_vertex(view, v)?;
    Ok(closeness_all(view, cost)[v])
}

pub fn eccentricity_all(view: &GraphView, cost: DistanceCost) -> Vec<f64> {
    let dm = DistanceMatrix::new(view, cost);
    let mode = direction_for(view);
    (0..dm.n).map(|v| dm.eccentricity(v, mode)).collect()
}

pub fn eccentricity(view: &GraphView, v: VertexId, cost: DistanceCost) -> Result<f64> {
    check_vertex(view, v)?;
    Ok(eccentricity_all(view, cost)[v])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceStats {
    pub diameter: f64,
    /// Smallest eccentricity under the view's mode; isolates count as 0.
    pub radius: f64,
    pub average_distance: f64,
    /// No pair of distinct vertices is connected.
    pub degenerate: bool,
}

pub fn distance_stats(view: &GraphView, cost: DistanceCost) -> DistanceStats {
    let dm = DistanceMatrix::new(view, cost);
    distance_stats_from(&dm, direction_for(view))
}

pub fn distance_stats_from(dm: &DistanceMatrix, mode: DirectionMode) -> DistanceStats {
    let n = dm.n;
    let mut diameter: f64 = 0.0;
    let mut total = 0.0;
    let mut pairs = 0usize;
    for u in 0..n {
        for v in 0..n {
            let d = dm.get(u, v);
            if u != v && d.is_finite() {
                diameter = diameter.max(d);
                total += d;
                pairs += 1;
            }
        }
    }
    if pairs == 0 {
        return DistanceStats { diameter: 0.0, radius: 0.0, average_distance: 0.0, degenerate: true };
    }
    let radius = (0..n).map(|v| dm.eccentricity(v, mode)).fold(f64::INFINITY, f64::min);
    DistanceStats { diameter, radius, average_distance: total / pairs as f64, degenerate: false }
}

impl DistanceStats {
    pub fn diameter_stat(&self) -> Stat {
        Stat { value: self.diameter, degenerate: self.degenerate }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undirected(n: usize, edges: &[(usize, usize)]) -> GraphView {
        let arcs: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        GraphView::from_arcs(n, &arcs, false, false).unwrap()
    }

    fn k(n: usize) -> GraphView {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        undirected(n, &e)
    }

    const C: DistanceCost = DistanceCost::Reciprocal;

    #[test]
    fn path_betweenness() {
        let p3 = undirected(3, &[(0, 1), (1, 2)]);
        assert_eq!(betweenness_all(&p3, C).unwrap(), vec![0.0, 1.0, 0.0]);
        assert!(betweenness_all(&k(4), C).unwrap().iter().all(|&b| b == 0.0));
    }

    #[test]
    fn tied_paths_share_credit() {
        // C4: each vertex sits on one of two shortest paths between its neighbours
        let c4 = undirected(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(betweenness_all(&c4, C).unwrap(), vec![0.5; 4]);
        let wc4 = GraphView::from_arcs(4, &[(0, 1, 2.0), (1, 2, 2.0), (2, 3, 2.0), (3, 0, 2.0)], false, true).unwrap();
        assert_eq!(betweenness_all(&wc4, C).unwrap(), vec![0.5; 4]);
    }

    #[test]
    fn path_closeness_and_eccentricity() {
        let p3 = undirected(3, &[(0, 1), (1, 2)]);
        let c = closeness_all(&p3, C);
        assert_eq!(c[1], 1.0);
        assert!((c[0] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(eccentricity_all(&p3, C), vec![2.0, 1.0, 2.0]);
        assert_eq!(eccentricity_all(&k(4), C), vec![1.0; 4]);
        let with_isolate = undirected(4, &[(0, 1), (1, 2)]);
        assert_eq!(closeness(&with_isolate, 3, C).unwrap(), 0.0);
        assert_eq!(eccentricity(&with_isolate, 3, C).unwrap(), 0.0);
        assert!(closeness(&with_isolate, 9, C).is_err());
    }

    #[test]
    fn directed_chain_in_out() {
        let chain = GraphView::from_arcs(3, &[(0, 1, 1.0), (1, 2, 1.0)], true, false).unwrap();
        assert_eq!(eccentricity(&chain.with_mode(DirectionMode::Out), 0, C).unwrap(), 2.0);
        assert_eq!(eccentricity(&chain.with_mode(DirectionMode::In), 0, C).unwrap(), 0.0);
        assert_eq!(eccentricity(&chain.with_mode(DirectionMode::In), 2, C).unwrap(), 2.0);
    }

    #[test]
    fn distance_summary() {
        let p3 = undirected(3, &[(0, 1), (1, 2)]);
        let s = distance_stats(&p3, C);
        assert_eq!((s.diameter, s.radius), (2.0, 1.0));
        assert!((s.average_distance - 4.0 / 3.0).abs() < 1e-15);
        let s = distance_stats(&k(4), C);
        assert_eq!((s.diameter, s.radius, s.average_distance), (1.0, 1.0, 1.0));
        let dyad = GraphView::from_arcs(2, &[(0, 1, 4.0)], false, true).unwrap();
        assert_eq!(distance_stats(&dyad, C).diameter, 0.25);
        assert_eq!(distance_stats(&dyad, DistanceCost::Raw).diameter, 4.0);
        let empty = undirected(3, &[]);
        assert!(distance_stats(&empty, C).degenerate);
    }

    #[test]
    fn betweenness_rejects_in_out() {
        let chain = GraphView::from_arcs(3, &[(0, 1, 1.0), (1, 2, 1.0)], true, false).unwrap();
        assert!(betweenness_all(&chain.with_mode(DirectionMode::In), C).is_err());
        assert_eq!(betweenness_all(&chain, C).unwrap(), vec![0.0, 1.0, 0.0]);
    }
}
