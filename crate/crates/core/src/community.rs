//! Community detection (seeded Louvain modularity maximisation), modularity
//! and community-role measures of vertices.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectionMode, GraphView, VertexId};
use crate::measures::{check_vertex, unsupported};

/// Community of every vertex; ids are contiguous from 0 and numbered by
/// the first vertex of each community.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Builds a partition from arbitrary labels, renumbering them.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut map = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition { assignment, count: map.len() }
    }

    pub fn community(&self, v: VertexId) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    fn check(&self, view: &GraphView) -> Result<()> {
        if self.assignment.len() != view.vertex_count() {
            return Err(Error::PartitionMismatch { partition: self.assignment.len(), graph: view.vertex_count() });
        }
        Ok(())
    }
}

/// Symmetrised weighted adjacency (antiparallel arcs summed).
fn symmetric(view: &GraphView) -> Vec<Vec<(usize, f64)>> {
    let n = view.vertex_count();
    if !view.is_directed() {
        return (0..n).map(|u| view.out_neighbors(u).to_vec()).collect();
    }
    (0..n)
        .map(|u| {
            let mut row: Vec<(usize, f64)> = Vec::new();
            for &(v, w) in view.out_neighbors(u).iter().chain(view.in_neighbors(u)) {
                match row.iter_mut().find(|(x, _)| *x == v) {
                    Some(e) => e.1 += w,
                    None => row.push((v, w)),
                }
            }
            row.sort_by_key(|&(v, _)| v);
            row
        })
        .collect()
}

/// Louvain level graph: symmetric adjacency plus self-loop weight per node
/// (counted once in `loops`, twice in the degree).
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
}

impl Level {
    fn degree(&self, u: usize) -> f64 {
        self.adj[u].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.loops[u]
    }
}

/// Greedy modularity maximisation. Nodes are visited in a seeded random
/// order; a node moves only for a strictly positive gain, and ties between
/// target communities go to the smallest id. Orientation is ignored.
pub fn detect_communities(view: &GraphView, seed: u64) -> Partition {
    let n = view.vertex_count();
    let mut level = Level { adj: symmetric(view), loops: vec![0.0; n] };
    let two_m: f64 = (0..n).map(|u| level.degree(u)).sum();
    let mut membership: Vec<usize> = (0..n).collect();
    if two_m == 0.0 {
        return Partition::from_labels(&membership);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = level.adj.len();
        let deg: Vec<f64> = (0..k).map(|u| level.degree(u)).collect();
        let mut comm: Vec<usize> = (0..k).collect();
        let mut tot = deg.clone();
        let mut order: Vec<usize> = (0..k).collect();
        order.shuffle(&mut rng);
        let mut moved_any = false;
        let mut links = vec![0.0; k];
        let mut touched: Vec<usize> = Vec::new();
        loop {
            let mut moved = false;
            for &u in &order {
                let own = comm[u];
                for &(v, w) in &level.adj[u] {
                    if links[comm[v]] == 0.0 {
                        touched.push(comm[v]);
                    }
                    links[comm[v]] += w;
                }
                tot[own] -= deg[u];
                let gain = |c: usize, l: f64| l - tot[c] * deg[u] / two_m;
                let stay = gain(own, links[own]);
                let mut best = (own, stay);
                for &c in &touched {
                    let g = gain(c, links[c]);
                    if g > best.1 + 1e-12 || (c < best.0 && (g - best.1).abs() <= 1e-12 && g > stay + 1e-12) {
                        best = (c, g);
                    }
                }
                for &c in &touched {
                    links[c] = 0.0;
                }
                touched.clear();
                comm[u] = best.0;
                tot[best.0] += deg[u];
                if best.0 != own {
                    moved = true;
                    moved_any = true;
                }
            }
            if !moved {
                break;
            }
        }
        if !moved_any {
            break;
        }
        let relabel = Partition::from_labels(&comm);
        for m in membership.iter_mut() {
            *m = relabel.community(*m);
        }
        let c = relabel.community_count();
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); c];
        let mut loops = vec![0.0; c];
        for u in 0..k {
            let cu = relabel.community(u);
            loops[cu] += level.loops[u];
            for &(v, w) in &level.adj[u] {
                let cv = relabel.community(v);
                if cu == cv {
                    // each internal edge is seen from both ends
                    loops[cu] += w / 2.0;
                } else {
                    match adj[cu].iter_mut().find(|(x, _)| *x == cv) {
                        Some(e) => e.1 += w,
                        None => adj[cu].push((cv, w)),
                    }
                }
            }
        }
        for row in &mut adj {
            row.sort_by_key(|&(v, _)| v);
        }
        level = Level { adj, loops };
        if c == 1 {
            break;
        }
    }
    Partition::from_labels(&membership)
}

/// Newman modularity with orientation ignored; 0 when there are no edges.
pub fn modularity(view: &GraphView, partition: &Partition) -> Result<f64> {
    partition.check(view)?;
    let adj = symmetric(view);
    let two_m: f64 = adj.iter().flatten().map(|&(_, w)| w).sum();
    if two_m == 0.0 {
        return Ok(0.0);
    }
    let c = partition.community_count();
    let mut internal = vec![0.0; c];
    let mut degree = vec![0.0; c];
    for (u, row) in adj.iter().enumerate() {
        let cu = partition.community(u);
        for &(v, w) in row {
            degree[cu] += w;
            if partition.community(v) == cu {
                internal[cu] += w;
            }
        }
    }
    Ok((0..c).map(|k| internal[k] / two_m - (degree[k] / two_m).powi(2)).sum())
}

/// Community-role measures of every vertex.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Roles {
    pub within_module_degree: Vec<f64>,
    pub participation: Vec<f64>,
    pub external_intensity: Vec<f64>,
    pub diversity: Vec<f64>,
    pub heterogeneity: Vec<f64>,
}

fn zscores(values: &[f64], partition: &Partition) -> Vec<f64> {
    let c = partition.community_count();
    let mut sum = vec![0.0; c];
    let mut size = vec![0usize; c];
    for (v, x) in values.iter().enumerate() {
        sum[partition.community(v)] += x;
        size[partition.community(v)] += 1;
    }
    let mean: Vec<f64> = (0..c).map(|k| sum[k] / size[k] as f64).collect();
    let mut var = vec![0.0; c];
    for (v, x) in values.iter().enumerate() {
        let k = partition.community(v);
        var[k] += (x - mean[k]).powi(2);
    }
    values
        .iter()
        .enumerate()
        .map(|(v, x)| {
            let k = partition.community(v);
            let sd = (var[k] / size[k] as f64).sqrt();
            if size[k] < 2 || sd <= 1e-12 {
                0.0
            } else {
                (x - mean[k]) / sd
            }
        })
        .collect()
}

/// Unweighted links of each vertex per community: out-links for `Out`,
/// in-links for `In`, all neighbours for `Undirected`.
pub fn vertex_roles_all(view: &GraphView, partition: &Partition) -> Result<Roles> {
    partition.check(view)?;
    if view.mode() == DirectionMode::Directed {
        return Err(unsupported("community roles", view));
    }
    let n = view.vertex_count();
    let c = partition.community_count();
    let mut internal = vec![0.0; n];
    let mut external = vec![0.0; n];
    let mut participation = vec![0.0; n];
    let mut diversity = vec![0.0; n];
    let mut spread = vec![0.0; n];
    let mut per = vec![0.0; c];
    for v in 0..n {
        per.iter_mut().for_each(|x| *x = 0.0);
        let nb = view.mode_neighbors(v);
        for &(u, _) in nb {
            per[partition.community(u)] += 1.0;
        }
        let own = partition.community(v);
        let k = nb.len() as f64;
        internal[v] = per[own];
        external[v] = k - per[own];
        if k > 0.0 {
            participation[v] = 1.0 - per.iter().map(|x| (x / k).powi(2)).sum::<f64>();
        }
        if c > 1 {
            let others: Vec<f64> = (0..c).filter(|&s| s != own).map(|s| per[s]).collect();
            diversity[v] = others.iter().filter(|&&x| x > 0.0).count() as f64 / (c - 1) as f64;
            let m = others.iter().sum::<f64>() / others.len() as f64;
            spread[v] = (others.iter().map(|x| (x - m).powi(2)).sum::<f64>() / others.len() as f64).sqrt();
        }
    }
    Ok(Roles {
        within_module_degree: zscores(&internal, partition),
        participation,
        external_intensity: zscores(&external, partition),
        diversity,
        heterogeneity: zscores(&spread, partition),
    })
}

/// Roles of a single vertex, in the order within-module degree,
/// participation, external intensity, diversity, heterogeneity.
pub fn vertex_roles(view: &GraphView, partition: &Partition, v: VertexId) -> Result<[f64; 5]> {
    check_vertex(view, v)?;
    let r = vertex_roles_all(view, partition)?;
    Ok([r.within_module_degree[v], r.participation[v], r.external_intensity[v], r.diversity[v], r.heterogeneity[v]])
}
