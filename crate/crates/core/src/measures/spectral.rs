//! Spectral centralities: eigenvector, HITS, alpha, power, PageRank and
//! subgraph centrality, plus the adjacency spectral radius.

use nalgebra::{DMatrix, Schur, SymmetricEigen};

use super::flow::strong_component_ids;
use super::{unsupported, MeasureConfig};
use crate::error::{Error, Result};
use crate::graph::{DirectionMode, GraphView};

/// Per-vertex values of one centrality; `degenerate` marks graphs where the
/// measure is undefined and every value was set to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Centrality {
    pub values: Vec<f64>,
    pub degenerate: bool,
}

impl Centrality {
    fn zeros(n: usize) -> Centrality {
        Centrality { values: vec![0.0; n], degenerate: true }
    }

    fn of(values: Vec<f64>) -> Centrality {
        Centrality { values, degenerate: false }
    }
}

fn require_whole(measure: &str, view: &GraphView) -> Result<()> {
    match view.mode() {
        DirectionMode::In | DirectionMode::Out => Err(unsupported(measure, view)),
        _ => Ok(()),
    }
}

/// `y = Aᵀ x`: every vertex collects from its in-neighbours.
fn collect_in(view: &GraphView, x: &[f64], y: &mut [f64]) {
    for (v, yv) in y.iter_mut().enumerate() {
        *yv = view.in_neighbors(v).iter().map(|&(u, w)| w * x[u]).sum();
    }
}

/// `y = A x`: every vertex collects from its out-neighbours.
fn collect_out(view: &GraphView, x: &[f64], y: &mut [f64]) {
    for (u, yu) in y.iter_mut().enumerate() {
        *yu = view.out_neighbors(u).iter().map(|&(v, w)| w * x[v]).sum();
    }
}

fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Stopping rule for linearly converging iterations: the remaining error is
/// estimated from the last step size and the observed contraction rate.
struct Convergence {
    tol: f64,
    prev: Option<f64>,
    hits: u32,
}

impl Convergence {
    fn new(tol: f64) -> Self {
        Convergence { tol, prev: None, hits: 0 }
    }

    fn done(&mut self, diff: f64, scale: f64) -> bool {
        let diff = diff / scale.max(1.0);
        if diff == 0.0 {
            return true;
        }
        let ok = match self.prev {
            Some(p) if p > 0.0 => {
                let r = diff / p;
                r < 1.0 && diff * r / (1.0 - r) <= self.tol && diff <= self.tol.sqrt()
            }
            _ => false,
        };
        self.prev = Some(diff);
        self.hits = if ok { self.hits + 1 } else { 0 };
        self.hits >= 2 || diff <= self.tol * 1e-3
    }
}

/// Largest eigenvalue modulus of the weighted adjacency matrix.
pub fn spectral_radius(view: &GraphView, cfg: &MeasureConfig) -> f64 {
    let n = view.vertex_count();
    let (count, comp) = strong_component_ids(view);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        members[comp[v]].push(v);
    }
    let mut rho: f64 = 0.0;
    for group in members.iter().filter(|g| g.len() >= 2) {
        rho = rho.max(component_radius(view, group, &comp, cfg));
    }
    rho
}

/// Perron root of one strongly connected block via power iteration on
/// `A/s + I` bracketed by Collatz–Wielandt bounds, with a dense fallback.
fn component_radius(view: &GraphView, group: &[usize], comp: &[usize], cfg: &MeasureConfig) -> f64 {
    let c = comp[group[0]];
    let local: std::collections::HashMap<usize, usize> = group.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rows: Vec<Vec<(usize, f64)>> = group
        .iter()
        .map(|&u| view.out_neighbors(u).iter().filter(|&&(v, _)| comp[v] == c).map(|&(v, w)| (local[&v], w)).collect())
        .collect();
    let scale = rows.iter().map(|r| r.iter().map(|&(_, w)| w).sum::<f64>()).fold(0.0, f64::max);
    let k = group.len();
    let mut x = vec![1.0; k];
    let mut y = vec![0.0; k];
    for _ in 0..cfg.max_iterations {
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..k {
            y[i] = x[i] + rows[i].iter().map(|&(j, w)| w * x[j]).sum::<f64>() / scale;
            let q = y[i] / x[i];
            lo = lo.min(q);
            hi = hi.max(q);
        }
        if hi - lo <= cfg.iteration_tolerance * lo {
            return (0.5 * (lo + hi) - 1.0) * scale;
        }
        let m = max_abs(&y);
        for i in 0..k {
            x[i] = y[i] / m;
        }
    }
    let mut dense = DMatrix::zeros(k, k);
    for (i, r) in rows.iter().enumerate() {
        for &(j, w) in r {
            dense[(i, j)] = w;
        }
    }
    match Schur::try_new(dense, 1e-14, 100_000) {
        Some(s) => s.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max),
        None => f64::NAN,
    }
}

/// Eigenvector centrality `λ x = Aᵀ x`, scaled so the largest entry is 1.
/// Graphs without cycles have spectral radius 0 and yield a degenerate
/// all-zero result.
pub fn eigenvector(view: &GraphView, cfg: &MeasureConfig) -> Result<Centrality> {
    require_whole("eigenvector", view)?;
    let n = view.vertex_count();
    let rho = spectral_radius(view, cfg);
    if !(rho > 1e-12) {
        return Ok(Centrality::zeros(n));
    }
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut conv = Convergence::new(cfg.iteration_tolerance);
    for _ in 0..cfg.max_iterations {
        collect_in(view, &x, &mut y);
        for v in 0..n {
            y[v] = y[v] / rho + x[v];
        }
        let m = max_abs(&y);
        let mut diff: f64 = 0.0;
        for v in 0..n {
            let nv = y[v] / m;
            diff = diff.max((nv - x[v]).abs());
            x[v] = nv;
        }
        if conv.done(diff, 1.0) {
            return Ok(Centrality::of(x));
        }
    }
    Err(Error::NonConvergence { measure: "eigenvector".into(), iterations: cfg.max_iterations })
}

/// HITS hub and authority scores, each scaled to a maximum of 1. Graphs
/// without arcs are degenerate.
pub fn hits(view: &GraphView, cfg: &MeasureConfig) -> Result<(Centrality, Centrality)> {
    require_whole("hits", view)?;
    let n = view.vertex_count();
    if view.edge_count() == 0 {
        return Ok((Centrality::zeros(n), Centrality::zeros(n)));
    }
    let mut a = vec![1.0; n];
    let mut h = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut conv = Convergence::new(cfg.iteration_tolerance);
    for _ in 0..cfg.max_iterations {
        collect_out(view, &a, &mut h);
        collect_in(view, &h, &mut next);
        let m = max_abs(&next);
        let mut diff: f64 = 0.0;
        for v in 0..n {
            let nv = next[v] / m;
            diff = diff.max((nv - a[v]).abs());
            a[v] = nv;
        }
        if conv.done(diff, 1.0) {
            collect_out(view, &a, &mut h);
            let m = max_abs(&h);
            h.iter_mut().for_each(|x| *x /= m);
            return Ok((Centrality::of(h), Centrality::of(a)));
        }
    }
    Err(Error::NonConvergence { measure: "hits".into(), iterations: cfg.max_iterations })
}

/// Alpha centrality: the solution of `x = α Aᵀ x + 1`.
pub fn alpha(view: &GraphView, cfg: &MeasureConfig) -> Result<Centrality> {
    require_whole("alpha", view)?;
    let rho = spectral_radius(view, cfg);
    let a = cfg.alpha_attenuation.resolve(rho);
    let n = view.vertex_count();
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut conv = Convergence::new(cfg.iteration_tolerance);
    for _ in 0..cfg.max_iterations {
        collect_in(view, &x, &mut y);
        let mut diff: f64 = 0.0;
        for v in 0..n {
            let nv = a * y[v] + 1.0;
            diff = diff.max((nv - x[v]).abs());
            x[v] = nv;
        }
        if !diff.is_finite() {
            break;
        }
        if conv.done(diff, max_abs(&x)) {
            return Ok(Centrality::of(x));
        }
    }
    Err(Error::NonConvergence { measure: "alpha".into(), iterations: cfg.max_iterations })
}

/// Bonacich power centrality `c = a (I - βA)⁻¹ A 1`, with `a` chosen so
/// that `Σ c² = n`. Graphs without arcs are degenerate.
pub fn power(view: &GraphView, cfg: &MeasureConfig) -> Result<Centrality> {
    require_whole("power", view)?;
    let n = view.vertex_count();
    if view.edge_count() == 0 {
        return Ok(Centrality::zeros(n));
    }
    let rho = spectral_radius(view, cfg);
    let beta = cfg.power_exponent.resolve(rho);
    let ones = vec![1.0; n];
    let mut base = vec![0.0; n];
    collect_out(view, &ones, &mut base);
    let mut x = base.clone();
    let mut y = vec![0.0; n];
    let mut conv = Convergence::new(cfg.iteration_tolerance);
    for _ in 0..cfg.max_iterations {
        collect_out(view, &x, &mut y);
        let mut diff: f64 = 0.0;
        for v in 0..n {
            let nv = base[v] + beta * y[v];
            diff = diff.max((nv - x[v]).abs());
            x[v] = nv;
        }
        if !diff.is_finite() {
            break;
        }
        if conv.done(diff, max_abs(&x)) {
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !(norm > 0.0) {
                return Ok(Centrality::zeros(n));
            }
            let s = (n as f64).sqrt() / norm;
            return Ok(Centrality::of(x.into_iter().map(|v| v * s).collect()));
        }
    }
    Err(Error::NonConvergence { measure: "power".into(), iterations: cfg.max_iterations })
}

/// PageRank with uniform teleportation; dangling vertices spread their mass
/// uniformly. Values sum to 1.
pub fn pagerank(view: &GraphView, cfg: &MeasureConfig) -> Result<Centrality> {
    require_whole("pagerank", view)?;
    let n = view.vertex_count();
    if n == 0 {
        return Ok(Centrality::of(Vec::new()));
    }
    let d = cfg.pagerank_damping;
    let strength: Vec<f64> = (0..n).map(|u| view.out_neighbors(u).iter().map(|&(_, w)| w).sum()).collect();
    let mut p = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut conv = Convergence::new(cfg.iteration_tolerance);
    for _ in 0..cfg.max_iterations {
        let dangling: f64 = (0..n).filter(|&u| strength[u] == 0.0).map(|u| p[u]).sum();
        let base = (1.0 - d) / n as f64 + d * dangling / n as f64;
        for v in 0..n {
            next[v] = base + d * view.in_neighbors(v).iter().map(|&(u, w)| p[u] * w / strength[u]).sum::<f64>();
        }
        let total: f64 = next.iter().sum();
        let mut diff = 0.0;
        for v in 0..n {
            let nv = next[v] / total;
            diff += (nv - p[v]).abs();
            p[v] = nv;
        }
        if conv.done(diff, 1.0) {
            return Ok(Centrality::of(p));
        }
    }
    Err(Error::NonConvergence { measure: "pagerank".into(), iterations: cfg.max_iterations })
}

/// Subgraph centrality: diagonal of `exp(A)`; undirected unweighted only.
pub fn subgraph(view: &GraphView) -> Result<Centrality> {
    if view.is_directed() || view.is_weighted() {
        return Err(unsupported("subgraph", view));
    }
    let n = view.vertex_count();
    if n == 0 {
        return Ok(Centrality::of(Vec::new()));
    }
    let a = DMatrix::from_fn(n, n, |i, j| if view.has_arc(i, j) { 1.0f64 } else { 0.0 });
    let eig = SymmetricEigen::new(a);
    let values = (0..n)
        .map(|v| (0..n).map(|k| eig.eigenvectors[(v, k)].powi(2) * eig.eigenvalues[k].exp()).sum())
        .collect();
    Ok(Centrality::of(values))
}
