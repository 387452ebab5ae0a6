//! Internally disjoint path computation and k-connectivity validation.
//!
//! `menger_paths` runs unit-capacity max-flow on the vertex-split digraph:
//! every vertex other than the terminals becomes an `in -> out` arc of
//! capacity one, so each augmenting path claims its interior vertices
//! exclusively. With the path count capped at a constant the whole routine is
//! `O(n + m)`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("source and sink must differ")]
    SameVertex,
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
}

/// A maximum collection of internally disjoint s-t paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathBundle {
    pub source: Vertex,
    pub sink: Vertex,
    pub paths: Vec<Vec<Vertex>>,
}

impl PathBundle {
    pub fn count(&self) -> usize {
        self.paths.len()
    }
}

struct FlowNet {
    first: Vec<i32>,
    next_edge: Vec<i32>,
    to: Vec<u32>,
    cap: Vec<u8>,
}

impl FlowNet {
    fn new(nodes: usize, edge_hint: usize) -> Self {
        FlowNet {
            first: vec![-1; nodes],
            next_edge: Vec::with_capacity(edge_hint * 2),
            to: Vec::with_capacity(edge_hint * 2),
            cap: Vec::with_capacity(edge_hint * 2),
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u8) {
        for (f, t, c) in [(from, to, cap), (to, from, 0)] {
            self.next_edge.push(self.first[f]);
            self.first[f] = self.to.len() as i32;
            self.to.push(t as u32);
            self.cap.push(c);
        }
    }
}

/// Finds `min(cap, kappa(s, t))` internally disjoint s-t paths.
///
/// With `cap = Some(c)` at most `c` augmentations run, each a single BFS.
pub fn menger_paths(
    g: &Graph,
    s: Vertex,
    t: Vertex,
    cap: Option<usize>,
) -> Result<PathBundle, ConnectivityError> {
    let n = g.n();
    for v in [s, t] {
        if v == 0 || v > n {
            return Err(ConnectivityError::OutOfRange(v));
        }
    }
    if s == t {
        return Err(ConnectivityError::SameVertex);
    }

    // node ids: in(v) = 2v, out(v) = 2v + 1
    let node_in = |v: Vertex| 2 * v;
    let node_out = |v: Vertex| 2 * v + 1;
    let source = node_out(s);
    let sink = node_in(t);

    let mut net = FlowNet::new(2 * n + 2, 3 * g.m() + n);
    for v in g.vertices() {
        if v != s && v != t {
            net.add(node_in(v), node_out(v), 1);
        }
    }
    for (u, v) in g.edges() {
        if u != t && v != s {
            net.add(node_out(u), node_in(v), 1);
        }
        if v != t && u != s {
            net.add(node_out(v), node_in(u), 1);
        }
    }

    let limit = cap
        .unwrap_or(usize::MAX)
        .min(g.degree(s))
        .min(g.degree(t));
    let mut flow = 0usize;
    let mut parent: Vec<i32> = vec![-1; 2 * n + 2];
    let mut queue = VecDeque::new();
    while flow < limit {
        parent.iter_mut().for_each(|p| *p = -1);
        queue.clear();
        queue.push_back(source);
        parent[source] = i32::MAX;
        let mut reached = false;
        'bfs: while let Some(u) = queue.pop_front() {
            let mut e = net.first[u];
            while e >= 0 {
                let v = net.to[e as usize] as usize;
                if net.cap[e as usize] > 0 && parent[v] < 0 {
                    parent[v] = e;
                    if v == sink {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
                e = net.next_edge[e as usize];
            }
        }
        if !reached {
            break;
        }
        let mut v = sink;
        while v != source {
            let e = parent[v] as usize;
            net.cap[e] -= 1;
            net.cap[e ^ 1] += 1;
            v = net.to[e ^ 1] as usize;
        }
        flow += 1;
    }

    // decompose: saturated forward arcs have cap 0 and odd-index twins with cap 1
    let mut used = vec![false; net.to.len()];
    let mut paths = Vec::with_capacity(flow);
    for _ in 0..flow {
        let mut path = vec![s];
        let mut u = source;
        while u != sink {
            let mut e = net.first[u];
            let mut step = None;
            while e >= 0 {
                let idx = e as usize;
                // forward arcs sit at even indices; flow used iff residual is 0
                if idx.is_multiple_of(2) && net.cap[idx] == 0 && !used[idx] {
                    step = Some(idx);
                    break;
                }
                e = net.next_edge[idx];
            }
            let idx = step.expect("flow conservation yields an unused out-arc");
            used[idx] = true;
            u = net.to[idx] as usize;
            let v = u / 2;
            if u == node_in(v) && *path.last().unwrap() != v {
                path.push(v);
            }
        }
        paths.push(path);
    }

    let bundle = PathBundle {
        source: s,
        sink: t,
        paths,
    };
    debug_assert!(verify_bundle(g, &bundle), "menger bundle invariant broken");
    Ok(bundle)
}

/// Checks the bundle invariants: simple paths from s to t, consecutive
/// adjacency, pairwise internally disjoint.
pub fn verify_bundle(g: &Graph, b: &PathBundle) -> bool {
    let mut interior_seen = vec![false; g.n() + 1];
    for p in &b.paths {
        if p.first() != Some(&b.source) || p.last() != Some(&b.sink) {
            return false;
        }
        let mut on_path = vec![false; g.n() + 1];
        for w in p.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return false;
            }
        }
        for &v in p {
            if on_path[v] {
                return false;
            }
            on_path[v] = true;
        }
        for &v in &p[1..p.len() - 1] {
            if interior_seen[v] {
                return false;
            }
            interior_seen[v] = true;
        }
    }
    true
}

/// True iff `n >= k + 1` and no vertex set of size `< k` disconnects the
/// graph. Flow-based, `O(k^2 n m)`; a validator, never on the fast path.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return g.n() > 0;
    }
    if !g.is_connected() || g.n() < k + 1 || g.min_degree() < k {
        return false;
    }
    // A separator of size < k misses one of the first k vertices; it then
    // separates that vertex from some non-neighbor, which the scan covers.
    for anchor in 1..=k {
        for other in g.vertices() {
            if other == anchor || g.has_edge(anchor, other) {
                continue;
            }
            let bundle = menger_paths(g, anchor, other, Some(k))
                .expect("anchor and other are distinct, in-range");
            if bundle.count() < k {
                return false;
            }
        }
    }
    true
}
