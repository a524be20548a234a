//! Maximal clique enumeration (Bron–Kerbosch with pivoting over bitsets).

use crate::error::{Error, Result};
use crate::graph::GraphView;

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn and_count(&self, o: &Bits) -> u32 {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// Number of maximal cliques with at least two vertices in the view with
/// orientation ignored.
pub fn maximal_clique_count(view: &GraphView, vertex_bound: usize) -> Result<usize> {
    let n = view.vertex_count();
    if n > vertex_bound {
        return Err(Error::TooLarge { vertices: n, bound: vertex_bound });
    }
    let mut adj = vec![Bits::empty(n); n];
    for u in 0..n {
        for &(v, _) in view.out_neighbors(u).iter().chain(view.in_neighbors(u)) {
            adj[u].set(v);
        }
    }
    let mut p = Bits::empty(n);
    for v in 0..n {
        if !adj[v].is_empty() {
            p.set(v);
        }
    }
    let mut count = 0;
    expand(&adj, 0, p, Bits::empty(n), &mut count);
    Ok(count)
}

fn expand(adj: &[Bits], depth: usize, mut p: Bits, mut x: Bits, count: &mut usize) {
    if p.is_empty() {
        if x.is_empty() && depth >= 2 {
            *count += 1;
        }
        return;
    }
    let pivot = p.ones().chain(x.ones()).max_by_key(|&u| (p.and_count(&adj[u]), std::cmp::Reverse(u))).unwrap();
    let candidates: Vec<usize> = p.ones().filter(|&v| !adj[pivot].has(v)).collect();
    for v in candidates {
        expand(adj, depth + 1, p.and(&adj[v]), x.and(&adj[v]), count);
        p.clear(v);
        x.set(v);
    }
}
