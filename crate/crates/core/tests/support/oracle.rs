//! Brute-force reference implementations working on dense adjacency
//! matrices. Deliberately naive: exhaustive enumeration and direct linear
//! algebra, sharing no code with the library's algorithms.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use convgraph::graph::{ConversationalGraph, DirectionMode, GraphView};

/// Dense test graph: `w[u][v] > 0` is the weight of arc `u -> v`
/// (symmetric when undirected).
#[derive(Debug, Clone)]
pub struct Dense {
    pub n: usize,
    pub directed: bool,
    pub w: Vec<Vec<f64>>,
}

impl Dense {
    pub fn random(rng: &mut ChaCha8Rng, max_n: usize, directed: bool, weighted: bool) -> Dense {
        let n = rng.random_range(1..=max_n);
        let p: f64 = rng.random_range(0.15..0.85);
        let mut w = vec![vec![0.0; n]; n];
        for u in 0..n {
            for v in 0..n {
                if u == v || (!directed && v < u) {
                    continue;
                }
                if rng.random_bool(p) {
                    let x = if weighted { rng.random_range(1..=16) as f64 / 4.0 } else { 1.0 };
                    w[u][v] = x;
                    if !directed {
                        w[v][u] = x;
                    }
                }
            }
        }
        Dense { n, directed, w }
    }

    pub fn seeded(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn graph(&self) -> ConversationalGraph {
        let mut g = ConversationalGraph::new(self.directed);
        for v in 0..self.n {
            g.add_vertex(&format!("v{v}"));
        }
        for u in 0..self.n {
            for v in 0..self.n {
                if self.w[u][v] > 0.0 && (self.directed || u < v) {
                    g.add_weight(u, v, self.w[u][v]).unwrap();
                }
            }
        }
        g
    }

    /// View in the graph's natural mode (directed or undirected).
    pub fn view(&self, weighted: bool) -> GraphView {
        let mode = if self.directed { DirectionMode::Directed } else { DirectionMode::Undirected };
        self.graph().view(weighted, mode).unwrap()
    }

    pub fn view_as(&self, weighted: bool, mode: DirectionMode) -> GraphView {
        self.graph().view(weighted, mode).unwrap()
    }

    pub fn adj(&self, u: usize, v: usize) -> bool {
        self.w[u][v] > 0.0
    }

    pub fn linked(&self, u: usize, v: usize) -> bool {
        self.adj(u, v) || self.adj(v, u)
    }

    pub fn cost(&self, u: usize, v: usize, weighted: bool) -> f64 {
        if weighted {
            1.0 / self.w[u][v]
        } else {
            1.0
        }
    }

    /// Same graph with every vertex index mapped through `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Dense {
        let mut w = vec![vec![0.0; self.n]; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                w[perm[u]][perm[v]] = self.w[u][v];
            }
        }
        Dense { n: self.n, directed: self.directed, w }
    }
}

/// Floyd–Warshall distances along arcs.
pub fn floyd(g: &Dense, weighted: bool) -> Vec<Vec<f64>> {
    let n = g.n;
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for u in 0..n {
        d[u][u] = 0.0;
        for v in 0..n {
            if g.adj(u, v) {
                d[u][v] = g.cost(u, v, weighted);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Betweenness by enumerating every simple path between every pair.
pub fn betweenness(g: &Dense, weighted: bool) -> Vec<f64> {
    let n = g.n;
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || (!g.directed && t < s) {
                continue;
            }
            let mut paths: Vec<(f64, Vec<usize>)> = Vec::new();
            let mut stack = vec![s];
            simple_paths(g, weighted, t, &mut stack, 0.0, &mut paths);
            if paths.is_empty() {
                continue;
            }
            let best = paths.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let shortest: Vec<&Vec<usize>> =
                paths.iter().filter(|p| (p.0 - best).abs() <= 1e-9 * best.max(1.0)).map(|p| &p.1).collect();
            let total = shortest.len() as f64;
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = shortest.iter().filter(|p| p.contains(&v)).count() as f64;
                bc[v] += through / total;
            }
        }
    }
    bc
}

fn simple_paths(g: &Dense, weighted: bool, t: usize, stack: &mut Vec<usize>, len: f64, out: &mut Vec<(f64, Vec<usize>)>) {
    let u = *stack.last().unwrap();
    if u == t {
        out.push((len, stack.clone()));
        return;
    }
    for v in 0..g.n {
        if g.adj(u, v) && !stack.contains(&v) {
            stack.push(v);
            simple_paths(g, weighted, t, stack, len + g.cost(u, v, weighted), out);
            stack.pop();
        }
    }
}

/// Closeness towards (`incoming`) or from each vertex over reachable ones.
pub fn closeness(g: &Dense, weighted: bool, incoming: bool) -> Vec<f64> {
    let d = floyd(g, weighted);
    (0..g.n)
        .map(|v| {
            let ds: Vec<f64> = (0..g.n)
                .filter(|&u| u != v)
                .map(|u| if incoming { d[u][v] } else { d[v][u] })
                .filter(|x| x.is_finite())
                .collect();
            if ds.is_empty() {
                0.0
            } else {
                ds.len() as f64 / ds.iter().sum::<f64>()
            }
        })
        .collect()
}

pub fn eccentricity(g: &Dense, weighted: bool, incoming: bool) -> Vec<f64> {
    let d = floyd(g, weighted);
    (0..g.n)
        .map(|v| {
            (0..g.n)
                .filter(|&u| u != v)
                .map(|u| if incoming { d[u][v] } else { d[v][u] })
                .filter(|x| x.is_finite())
                .fold(0.0, f64::max)
        })
        .collect()
}

/// (diameter, radius, average distance) over reachable ordered pairs.
pub fn distance_stats(g: &Dense, weighted: bool) -> (f64, f64, f64) {
    let d = floyd(g, weighted);
    let mut finite = Vec::new();
    for u in 0..g.n {
        for v in 0..g.n {
            if u != v && d[u][v].is_finite() {
                finite.push(d[u][v]);
            }
        }
    }
    if finite.is_empty() {
        return (0.0, 0.0, 0.0);
    }
    let diameter = finite.iter().cloned().fold(0.0, f64::max);
    let radius = eccentricity(g, weighted, false).into_iter().fold(f64::INFINITY, f64::min);
    (diameter, radius, finite.iter().sum::<f64>() / finite.len() as f64)
}

/// Coreness straight from the k-core definition: for each k, repeatedly
/// delete vertices whose degree (counted by `deg`) is below k.
pub fn coreness(g: &Dense, mode: char) -> Vec<usize> {
    let n = g.n;
    let counts = |alive: &[bool], v: usize| -> usize {
        (0..n)
            .filter(|&u| alive[u] && u != v)
            .filter(|&u| match mode {
                'I' => g.adj(u, v),
                'O' => g.adj(v, u),
                _ => g.linked(u, v),
            })
            .count()
    };
    let mut core = vec![0; n];
    for k in 1..n {
        let mut alive = vec![true; n];
        loop {
            let drop: Vec<usize> = (0..n).filter(|&v| alive[v] && counts(&alive, v) < k).collect();
            if drop.is_empty() {
                break;
            }
            for v in drop {
                alive[v] = false;
            }
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
    }
    core
}

fn reach(g: &Dense, alive: &[bool], s: usize, undirected: bool) -> Vec<bool> {
    let mut seen = vec![false; g.n];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        for v in 0..g.n {
            let edge = if undirected { g.linked(u, v) } else { g.adj(u, v) };
            if alive[v] && edge && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

pub fn weak_components(g: &Dense, alive: &[bool]) -> usize {
    let mut seen = vec![false; g.n];
    let mut count = 0;
    for s in 0..g.n {
        if alive[s] && !seen[s] {
            count += 1;
            for (v, r) in reach(g, alive, s, true).into_iter().enumerate() {
                seen[v] |= r;
            }
        }
    }
    count
}

pub fn strong_components(g: &Dense) -> usize {
    let alive = vec![true; g.n];
    let r: Vec<Vec<bool>> = (0..g.n).map(|s| reach(g, &alive, s, !g.directed)).collect();
    let mut assigned = vec![false; g.n];
    let mut count = 0;
    for u in 0..g.n {
        if assigned[u] {
            continue;
        }
        count += 1;
        for v in 0..g.n {
            if r[u][v] && r[v][u] {
                assigned[v] = true;
            }
        }
    }
    count
}

fn connected(g: &Dense, alive: &[bool]) -> bool {
    let Some(s) = (0..g.n).find(|&v| alive[v]) else { return true };
    if g.directed {
        (0..g.n).filter(|&v| alive[v]).all(|s| reach(g, alive, s, false).iter().zip(alive).all(|(r, a)| *r || !a))
    } else {
        reach(g, alive, s, true).iter().zip(alive).all(|(r, a)| *r || !a)
    }
}

/// Vertex connectivity: smallest removal set leaving ≥ 2 vertices that are
/// not (strongly) connected; `n - 1` when no such set exists.
pub fn cohesion(g: &Dense) -> usize {
    let n = g.n;
    if n <= 1 {
        return 0;
    }
    let mut best = n - 1;
    for mask in 0u32..(1 << n) {
        let removed = mask.count_ones() as usize;
        if removed >= best || n - removed < 2 {
            continue;
        }
        let alive: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 0).collect();
        if !connected(g, &alive) {
            best = removed;
        }
    }
    best
}

/// Edge connectivity: the smallest number of arcs leaving a nonempty proper
/// vertex subset (edges crossing it when undirected).
pub fn adhesion(g: &Dense) -> usize {
    let n = g.n;
    if n <= 1 {
        return 0;
    }
    let mut best = usize::MAX;
    for mask in 1u32..(1 << n) - 1 {
        let inside = |v: usize| mask >> v & 1 == 1;
        let mut cut = 0;
        for u in 0..n {
            for v in 0..n {
                if inside(u) && !inside(v) && g.adj(u, v) {
                    cut += 1;
                }
            }
        }
        best = best.min(cut);
    }
    best
}

pub fn articulation_points(g: &Dense) -> Vec<bool> {
    let all = vec![true; g.n];
    let base = weak_components(g, &all);
    (0..g.n)
        .map(|v| {
            let mut alive = all.clone();
            alive[v] = false;
            weak_components(g, &alive) > base
        })
        .collect()
}

/// Maximal cliques of size ≥ 2 by subset enumeration.
pub fn maximal_cliques(g: &Dense) -> usize {
    let n = g.n;
    let is_clique = |mask: u32| {
        (0..n).all(|u| (0..n).all(|v| u == v || mask >> u & 1 == 0 || mask >> v & 1 == 0 || g.linked(u, v)))
    };
    (1u32..(1 << n))
        .filter(|&m| m.count_ones() >= 2 && is_clique(m))
        .filter(|&m| (0..n).all(|x| m >> x & 1 == 1 || !is_clique(m | 1 << x)))
        .count()
}

pub fn local_transitivity(g: &Dense, weighted: bool) -> Vec<f64> {
    let n = g.n;
    let sym = |u: usize, v: usize| g.w[u][v] + if g.directed { g.w[v][u] } else { 0.0 };
    (0..n)
        .map(|i| {
            let k = (0..n).filter(|&j| j != i && g.linked(i, j)).count();
            if k < 2 {
                return 0.0;
            }
            let s: f64 = (0..n).filter(|&j| g.linked(i, j)).map(|j| if weighted { sym(i, j) } else { 1.0 }).sum();
            let mut num = 0.0;
            // Barrat: ordered pairs (j, h) of neighbours that are linked
            for j in 0..n {
                for h in 0..n {
                    if j != h && j != i && h != i && g.linked(i, j) && g.linked(i, h) && g.linked(j, h) {
                        num += if weighted { (sym(i, j) + sym(i, h)) / 2.0 } else { 1.0 };
                    }
                }
            }
            if weighted {
                num / (s * (k - 1) as f64)
            } else {
                num / (k * (k - 1)) as f64
            }
        })
        .collect()
}

pub fn global_transitivity(g: &Dense) -> f64 {
    let n = g.n;
    let mut closed = 0;
    let mut triples = 0;
    for c in 0..n {
        for a in 0..n {
            for b in 0..n {
                if a != b && a != c && b != c && g.linked(a, c) && g.linked(b, c) {
                    triples += 1;
                    if g.linked(a, b) {
                        closed += 1;
                    }
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

pub fn reciprocity(g: &Dense) -> f64 {
    let mut arcs = 0;
    let mut mutual = 0;
    for u in 0..g.n {
        for v in 0..g.n {
            if g.adj(u, v) {
                arcs += 1;
                if g.adj(v, u) {
                    mutual += 1;
                }
            }
        }
    }
    if arcs == 0 {
        0.0
    } else {
        mutual as f64 / arcs as f64
    }
}

/// Newman's degree correlation written with sums of products.
pub fn assortativity(g: &Dense) -> f64 {
    let n = g.n;
    let outd = |v: usize| (0..n).filter(|&u| g.adj(v, u)).count() as f64;
    let ind = |v: usize| (0..n).filter(|&u| g.adj(u, v)).count() as f64;
    let (mut m, mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for u in 0..n {
        for v in 0..n {
            if g.adj(u, v) {
                let (x, y) = if g.directed { (outd(u), ind(v)) } else { (outd(u), outd(v)) };
                m += 1.0;
                sx += x;
                sy += y;
                sxx += x * x;
                syy += y * y;
                sxy += x * y;
            }
        }
    }
    if m == 0.0 {
        return 0.0;
    }
    let vx = sxx / m - (sx / m).powi(2);
    let vy = syy / m - (sy / m).powi(2);
    if vx <= 1e-12 || vy <= 1e-12 {
        return 0.0;
    }
    (sxy / m - sx * sy / (m * m)) / (vx * vy).sqrt()
}

pub fn matrix(g: &Dense, weighted: bool) -> DMatrix<f64> {
    DMatrix::from_fn(g.n, g.n, |i, j| if g.adj(i, j) { if weighted { g.w[i][j] } else { 1.0 } } else { 0.0 })
}

pub fn spectral_radius(a: &DMatrix<f64>) -> f64 {
    Schur::new(a.clone()).complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn pagerank(g: &Dense, weighted: bool, d: f64) -> Vec<f64> {
    let n = g.n;
    let a = matrix(g, weighted);
    let mut m = DMatrix::zeros(n, n);
    for u in 0..n {
        let s: f64 = a.row(u).sum();
        for v in 0..n {
            m[(v, u)] = if s > 0.0 { a[(u, v)] / s } else { 1.0 / n as f64 };
        }
    }
    let lhs = DMatrix::identity(n, n) - m * d;
    let rhs = DVector::from_element(n, (1.0 - d) / n as f64);
    let p = lhs.lu().solve(&rhs).unwrap();
    let s = p.sum();
    p.iter().map(|x| x / s).collect()
}

/// Perron vector of `Aᵀ` for strongly connected graphs, max-normalized.
pub fn eigenvector(g: &Dense, weighted: bool) -> Vec<f64> {
    let at = matrix(g, weighted).transpose();
    let rho = spectral_radius(&at);
    let shifted = at - DMatrix::identity(g.n, g.n) * rho;
    let svd = shifted.svd(false, true);
    let vt = svd.v_t.unwrap();
    let (k, _) = svd.singular_values.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &s)| if s < b.1 { (i, s) } else { b });
    let x: Vec<f64> = vt.row(k).iter().map(|v| v.abs()).collect();
    let m = x.iter().cloned().fold(0.0, f64::max);
    x.into_iter().map(|v| v / m).collect()
}

/// (hub, authority) from the top eigenvector of `AᵀA`; `None` when the top
/// eigenvalue is not simple.
pub fn hits(g: &Dense, weighted: bool) -> Option<(Vec<f64>, Vec<f64>)> {
    let a = matrix(g, weighted);
    let ata = a.transpose() * &a;
    let eig = SymmetricEigen::new(ata);
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let top = eig.eigenvalues[order[0]];
    if top <= 0.0 || (g.n > 1 && top - eig.eigenvalues[order[1]] < 1e-3 * top) {
        return None;
    }
    let auth: DVector<f64> = eig.eigenvectors.column(order[0]).map(|v| v.abs());
    let hub = &a * &auth;
    let norm = |v: &DVector<f64>| {
        let m = v.amax();
        v.iter().map(|x| x / m).collect::<Vec<f64>>()
    };
    Some((norm(&hub), norm(&auth)))
}

/// Solution of `x = α Aᵀ x + 1`.
pub fn alpha(g: &Dense, weighted: bool, alpha: f64) -> Vec<f64> {
    let n = g.n;
    let lhs = DMatrix::identity(n, n) - matrix(g, weighted).transpose() * alpha;
    lhs.lu().solve(&DVector::from_element(n, 1.0)).unwrap().iter().cloned().collect()
}

/// `(I - βA)⁻¹ A 1` rescaled to squared norm n.
pub fn power(g: &Dense, weighted: bool, beta: f64) -> Vec<f64> {
    let n = g.n;
    let a = matrix(g, weighted);
    let rhs = &a * DVector::from_element(n, 1.0);
    let c = (DMatrix::identity(n, n) - &a * beta).lu().solve(&rhs).unwrap();
    let s = (n as f64).sqrt() / c.norm();
    c.iter().map(|x| x * s).collect()
}

/// Diagonal of `exp(A)` by Taylor series.
pub fn subgraph(g: &Dense) -> Vec<f64> {
    let a = matrix(g, false);
    let mut term = DMatrix::identity(g.n, g.n);
    let mut sum = term.clone();
    for k in 1..80 {
        term = &term * &a / k as f64;
        sum += &term;
    }
    (0..g.n).map(|i| sum[(i, i)]).collect()
}

/// Undirected counterpart with antiparallel weights summed.
pub fn merged(g: &Dense) -> Dense {
    if !g.directed {
        return g.clone();
    }
    let mut w = g.w.clone();
    for u in 0..g.n {
        for v in 0..g.n {
            w[u][v] = g.w[u][v] + g.w[v][u];
        }
    }
    Dense { n: g.n, directed: false, w }
}

pub fn random_seed_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn strongly_connected(g: &Dense) -> bool {
    strong_components(g) == 1
}

/// Newman modularity from its pairwise definition.
pub fn modularity(g: &Dense, weighted: bool, labels: &[usize]) -> f64 {
    let m = merged(g);
    let a = |i: usize, j: usize| if m.w[i][j] > 0.0 { if weighted { m.w[i][j] } else { 1.0 } } else { 0.0 };
    let k: Vec<f64> = (0..m.n).map(|i| (0..m.n).map(|j| a(i, j)).sum()).collect();
    let two_m: f64 = k.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..m.n {
        for j in 0..m.n {
            if labels[i] == labels[j] {
                q += a(i, j) - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}
