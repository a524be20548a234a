//! Components, articulation points and flow-based connectivity.
//!
//! Directed views use strong-connectivity semantics: a digraph that is not
//! strongly connected has adhesion and cohesion 0.

use std::collections::VecDeque;

use crate::graph::{GraphView, VertexId};

/// Component id of every vertex, ignoring arc orientation. Ids follow the
/// smallest vertex of each component.
pub fn weak_component_ids(view: &GraphView) -> (usize, Vec<usize>) {
    let n = view.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &(v, _) in view.out_neighbors(u).iter().chain(view.in_neighbors(u)) {
                if comp[v] == usize::MAX {
                    comp[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    (count, comp)
}

pub fn weak_component_count(view: &GraphView) -> usize {
    weak_component_ids(view).0
}

/// Strongly connected components (iterative Tarjan). Undirected views give
/// the connected components.
pub fn strong_component_ids(view: &GraphView) -> (usize, Vec<usize>) {
    let n = view.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    // (vertex, position in its out-list)
    let mut call: Vec<(VertexId, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            let nbrs = view.out_neighbors(u);
            if *pos < nbrs.len() {
                let v = nbrs[*pos].0;
                *pos += 1;
                if index[v] == usize::MAX {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == u {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (count, comp)
}

pub fn strong_component_count(view: &GraphView) -> usize {
    strong_component_ids(view).0
}

/// Articulation points of the view with orientation ignored.
pub fn articulation_points(view: &GraphView) -> Vec<bool> {
    let n = view.vertex_count();
    let adj: Vec<Vec<VertexId>> = (0..n)
        .map(|u| {
            let mut a: Vec<VertexId> =
                view.out_neighbors(u).iter().chain(view.in_neighbors(u)).map(|&(v, _)| v).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_ap = vec![false; n];
    let mut time = 0;
    let mut call: Vec<(VertexId, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        call.push((root, 0));
        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            if *pos < adj[u].len() {
                let v = adj[u][*pos];
                *pos += 1;
                if disc[v] == usize::MAX {
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    call.push((v, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[u]);
                    if p != root && low[u] >= disc[p] {
                        is_ap[p] = true;
                    }
                }
            }
        }
        is_ap[root] = root_children >= 2;
    }
    is_ap
}

pub fn articulation_point_count(view: &GraphView) -> usize {
    articulation_points(view).iter().filter(|&&a| a).count()
}

/// Residual network with unit-style integer capacities.
struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
    init: Vec<u32>,
}

impl FlowNet {
    fn new(n: usize) -> FlowNet {
        FlowNet { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new(), init: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: u32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.init.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.init.push(0);
    }

    /// Max flow from `s` to `t`, stopping once `limit` is reached.
    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        self.cap.clone_from(&self.init);
        let n = self.head.len();
        let mut flow = 0;
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            queue.push_back(s);
            let mut found = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && v != s && parent[v] == usize::MAX {
                        parent[v] = e;
                        if v == t {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !found {
                break;
            }
            let mut bottleneck = u32::MAX;
            let mut v = t;
            while v != s {
                let e = parent[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let push = bottleneck.min(limit - flow);
            let mut v = t;
            while v != s {
                let e = parent[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            flow += push;
        }
        flow
    }
}

fn simple_arcs(view: &GraphView) -> Vec<(VertexId, VertexId)> {
    let mut arcs = Vec::new();
    for u in 0..view.vertex_count() {
        for &(v, _) in view.out_neighbors(u) {
            arcs.push((u, v));
        }
    }
    arcs
}

/// Edge connectivity: the fewest edges (arcs) whose removal disconnects
/// the graph (breaks strong connectivity). 0 for `n <= 1`.
pub fn adhesion(view: &GraphView) -> usize {
    let n = view.vertex_count();
    if n <= 1 {
        return 0;
    }
    let mut net = FlowNet::new(n);
    for (u, v) in simple_arcs(view) {
        net.add(u, v, 1);
    }
    let mut best = u32::MAX;
    for v in 1..n {
        best = best.min(net.max_flow(0, v, best));
        if view.is_directed() && best > 0 {
            best = best.min(net.max_flow(v, 0, best));
        }
        if best == 0 {
            break;
        }
    }
    best as usize
}

/// Vertex connectivity: the fewest vertices whose removal disconnects the
/// graph (breaks strong connectivity); `n - 1` for complete graphs and 0
/// for `n <= 1`.
pub fn cohesion(view: &GraphView) -> usize {
    let n = view.vertex_count();
    if n <= 1 {
        return 0;
    }
    // vertex x splits into 2x (in) -> 2x+1 (out)
    let mut net = FlowNet::new(2 * n);
    for x in 0..n {
        net.add(2 * x, 2 * x + 1, 1);
    }
    for (u, v) in simple_arcs(view) {
        net.add(2 * u + 1, 2 * v, n as u32);
    }
    let directed = view.is_directed();
    let mut best = (n - 1) as u32;
    let mut i = 0;
    while i < n && i as u32 <= best {
        for j in i + 1..n {
            if best == 0 {
                return 0;
            }
            if !view.has_arc(i, j) {
                best = best.min(net.max_flow(2 * i + 1, 2 * j, best));
            }
            if directed && !view.has_arc(j, i) {
                best = best.min(net.max_flow(2 * j + 1, 2 * i, best));
            }
        }
        i += 1;
    }
    best as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn und(n: usize, e: &[(usize, usize)]) -> GraphView {
        let arcs: Vec<_> = e.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        GraphView::from_arcs(n, &arcs, false, false).unwrap()
    }

    fn dir(n: usize, e: &[(usize, usize)]) -> GraphView {
        let arcs: Vec<_> = e.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        GraphView::from_arcs(n, &arcs, true, false).unwrap()
    }

    fn complete(n: usize) -> GraphView {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        und(n, &e)
    }

    #[test]
    fn component_counts() {
        assert_eq!(weak_component_count(&und(4, &[(0, 1), (2, 3)])), 2);
        assert_eq!(strong_component_count(&dir(3, &[(0, 1), (1, 2), (2, 0)])), 1);
        let chain = dir(3, &[(0, 1), (1, 2)]);
        assert_eq!(strong_component_count(&chain), 3);
        assert_eq!(weak_component_count(&chain), 1);
    }

    #[test]
    fn articulation() {
        assert_eq!(articulation_points(&und(3, &[(0, 1), (1, 2)])), vec![false, true, false]);
        assert_eq!(articulation_point_count(&und(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])), 0);
        let bowtie = und(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(articulation_point_count(&bowtie), 1);
        assert_eq!(articulation_point_count(&complete(3)), 0);
    }

    #[test]
    fn connectivity_small_cases() {
        let k4 = complete(4);
        assert_eq!((cohesion(&k4), adhesion(&k4)), (3, 3));
        let p3 = und(3, &[(0, 1), (1, 2)]);
        assert_eq!((cohesion(&p3), adhesion(&p3)), (1, 1));
        assert_eq!(cohesion(&und(4, &[(0, 1), (2, 3)])), 0);
        assert_eq!(adhesion(&und(1, &[])), 0);
        let cycle = dir(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!((cohesion(&cycle), adhesion(&cycle)), (1, 1));
        let chain = dir(2, &[(0, 1)]);
        assert_eq!((cohesion(&chain), adhesion(&chain)), (0, 0));
        let dyad = dir(2, &[(0, 1), (1, 0)]);
        assert_eq!((cohesion(&dyad), adhesion(&dyad)), (1, 1));
    }
}
