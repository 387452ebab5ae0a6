//! Undirected simple graphs on the vertex set `[1, 2, ..., n]`, plus the
//! index-array utilities (`SubsetArray`, `LookupArray`) that the path
//! algorithms use to stay linear.

use std::fmt;

use thiserror::Error;

/// Vertices are 1-based; index 0 is a padding slot in every per-vertex array.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("list contains repeated vertex {0}")]
    RepeatedEntry(Vertex),
}

/// An immutable undirected simple graph with sorted adjacency lists, stored
/// as one flat slab (offsets + targets) so clones are two memcpys and
/// traversals stay cache-friendly.
///
/// Directed shortcut arcs (used by the skipper construction) live in a
/// separate [`ArcHost`] overlay so the base graph is never mutated.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m)
    }
}

impl Graph {
    /// Builds a graph from an edge list. Rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut degree = vec![0usize; n + 2];
        for &(u, v) in edges {
            check_range(u, n)?;
            check_range(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0usize; n + 2];
        for v in 1..=n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0usize; 2 * edges.len()];
        for &(u, v) in edges {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        for v in 1..=n {
            let slice = &mut targets[offsets[v]..offsets[v + 1]];
            slice.sort_unstable();
            if let Some(w) = slice.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v, w[0]));
            }
        }
        Ok(Graph {
            n,
            m: edges.len(),
            offsets,
            targets,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn min_degree(&self) -> usize {
        (1..=self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as ordered pairs `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (1..=self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Connected components of `G - removed`, each sorted, ordered by their
    /// smallest vertex. BFS, `O(n + m)`.
    pub fn components(&self, removed: &[Vertex]) -> Result<Vec<Vec<Vertex>>, GraphError> {
        let gone = SubsetArray::from_list(removed, self.n)?;
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for start in 1..=self.n {
            if seen[start] || gone.contains(start) {
                continue;
            }
            let mut comp = Vec::new();
            seen[start] = true;
            queue.push(start);
            while let Some(u) = queue.pop() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w] && !gone.contains(w) {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.components(&[]).map(|c| c.len() == 1).unwrap_or(false)
    }

    /// The graph plus two fresh vertices `n+1` and `n+2`, attached to `xs`
    /// and `ys` respectively. The new ids exceed every old one, so the
    /// sorted adjacency lists extend in place without re-sorting.
    pub fn with_terminals(&self, xs: &[Vertex], ys: &[Vertex]) -> Result<Graph, GraphError> {
        let s = self.n + 1;
        let t = self.n + 2;
        for ends in [xs, ys] {
            for (i, &v) in ends.iter().enumerate() {
                check_range(v, self.n)?;
                if ends[..i].contains(&v) {
                    return Err(GraphError::DuplicateEdge(s, v));
                }
            }
        }
        let mut extra = vec![0u8; self.n + 1];
        for &v in xs {
            extra[v] |= 1;
        }
        for &v in ys {
            extra[v] |= 2;
        }
        let mut offsets = vec![0usize; self.n + 4];
        let mut targets =
            Vec::with_capacity(self.targets.len() + 2 * (xs.len() + ys.len()));
        for v in 1..=self.n {
            offsets[v] = targets.len();
            targets.extend_from_slice(self.neighbors(v));
            // the terminals carry the largest ids, so appending keeps order
            if extra[v] & 1 != 0 {
                targets.push(s);
            }
            if extra[v] & 2 != 0 {
                targets.push(t);
            }
        }
        offsets[s] = targets.len();
        let mut xs_sorted = xs.to_vec();
        xs_sorted.sort_unstable();
        targets.extend_from_slice(&xs_sorted);
        offsets[t] = targets.len();
        let mut ys_sorted = ys.to_vec();
        ys_sorted.sort_unstable();
        targets.extend_from_slice(&ys_sorted);
        offsets[t + 1] = targets.len();
        Ok(Graph {
            n: self.n + 2,
            m: self.m + xs.len() + ys.len(),
            offsets,
            targets,
        })
    }

    /// Subgraph induced by `s`, relabeled `1..=|s|`. Returns the graph and the
    /// map from new ids to original ids.
    pub fn induced(&self, s: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let inside = SubsetArray::from_list(s, self.n)?;
        let mut order: Vec<Vertex> = s.to_vec();
        order.sort_unstable();
        let mut new_id = vec![0usize; self.n + 1];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i + 1;
        }
        let mut edges = Vec::new();
        for &v in &order {
            for &w in self.neighbors(v) {
                if v < w && inside.contains(w) {
                    edges.push((new_id[v], new_id[w]));
                }
            }
        }
        let g = Graph::from_edges(order.len(), &edges)?;
        let mut back = vec![0; order.len() + 1];
        for (i, &v) in order.iter().enumerate() {
            back[i + 1] = v;
        }
        Ok((g, back))
    }
}

fn check_range(v: Vertex, n: usize) -> Result<(), GraphError> {
    if v == 0 || v > n {
        Err(GraphError::VertexOutOfRange(v, n))
    } else {
        Ok(())
    }
}

/// `Subset(A)`: the n-entry 0/1 membership array of a vertex list.
#[derive(Debug, Clone)]
pub struct SubsetArray {
    bits: Vec<bool>,
}

impl SubsetArray {
    pub fn empty(n: usize) -> Self {
        SubsetArray {
            bits: vec![false; n + 1],
        }
    }

    pub fn from_list(a: &[Vertex], n: usize) -> Result<Self, GraphError> {
        let mut s = SubsetArray::empty(n);
        for &v in a {
            check_range(v, n)?;
            s.bits[v] = true;
        }
        Ok(s)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits[v]
    }

    pub fn insert(&mut self, v: Vertex) {
        self.bits[v] = true;
    }

    /// The raw 0/1 entries for vertices `1..=n`.
    pub fn entries(&self) -> Vec<u8> {
        self.bits[1..].iter().map(|&b| b as u8).collect()
    }
}

/// `Lookup(A)`: entry `i` holds the 1-based position of vertex `i` in the
/// list `A`, or 0 when absent.
#[derive(Debug, Clone)]
pub struct LookupArray {
    pos: Vec<usize>,
}

impl LookupArray {
    pub fn from_list(a: &[Vertex], n: usize) -> Result<Self, GraphError> {
        let mut pos = vec![0usize; n + 1];
        for (j, &v) in a.iter().enumerate() {
            check_range(v, n)?;
            if pos[v] != 0 {
                return Err(GraphError::RepeatedEntry(v));
            }
            pos[v] = j + 1;
        }
        Ok(LookupArray { pos })
    }

    /// 1-based position of `v` in the list, 0 if absent.
    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.pos[v] != 0
    }

    /// The raw entries for vertices `1..=n`.
    pub fn entries(&self) -> Vec<usize> {
        self.pos[1..].to_vec()
    }
}

/// Appends a single vertex to a list.
///
/// Callers that build simple paths must not append a vertex already present;
/// this is only asserted in debug builds.
pub fn append(a: &mut Vec<Vertex>, v: Vertex) {
    debug_assert!(!a.contains(&v), "append would repeat vertex {v}");
    a.push(v);
}

/// Read access shared by [`Graph`] and [`ArcHost`]: the undirected neighbors
/// plus any directed out-arcs.
pub trait AdjacencyHost {
    fn host_n(&self) -> usize;
    /// `(undirected neighbors, directed out-arcs)` of `v`.
    fn out_neighbors(&self, v: Vertex) -> (&[Vertex], &[Vertex]);
}

impl AdjacencyHost for Graph {
    fn host_n(&self) -> usize {
        self.n()
    }

    fn out_neighbors(&self, v: Vertex) -> (&[Vertex], &[Vertex]) {
        (self.neighbors(v), &[])
    }
}

/// A graph extended with directed shortcut arcs, without touching the base.
pub struct ArcHost<'g> {
    graph: &'g Graph,
    arcs: Vec<Vec<Vertex>>,
}

impl<'g> ArcHost<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        ArcHost {
            arcs: vec![Vec::new(); graph.n() + 1],
            graph,
        }
    }

    pub fn add_arc(&mut self, from: Vertex, to: Vertex) {
        self.arcs[from].push(to);
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }
}

impl AdjacencyHost for ArcHost<'_> {
    fn host_n(&self) -> usize {
        self.graph.n()
    }

    fn out_neighbors(&self, v: Vertex) -> (&[Vertex], &[Vertex]) {
        (self.graph.neighbors(v), &self.arcs[v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn antiprism4() -> Graph {
        // t1..t4 = 1..4, b1..b4 = 5..8
        crate::generate::antiprism(4).unwrap().0
    }

    #[test]
    fn subset_array_paper_example() {
        let s = SubsetArray::from_list(&[3, 1, 8, 5], 8).unwrap();
        assert_eq!(s.entries(), vec![1, 0, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn subset_array_empty_and_full() {
        assert_eq!(
            SubsetArray::from_list(&[], 4).unwrap().entries(),
            vec![0, 0, 0, 0]
        );
        assert_eq!(
            SubsetArray::from_list(&[1, 2, 3], 3).unwrap().entries(),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn lookup_array_paper_example() {
        let l = LookupArray::from_list(&[3, 1, 8, 5], 8).unwrap();
        assert_eq!(l.entries(), vec![2, 0, 1, 0, 4, 0, 0, 3]);
    }

    #[test]
    fn lookup_array_identity_and_empty() {
        let l = LookupArray::from_list(&[1, 2, 3, 4, 5], 5).unwrap();
        assert_eq!(l.entries(), vec![1, 2, 3, 4, 5]);
        let e = LookupArray::from_list(&[], 3).unwrap();
        assert_eq!(e.entries(), vec![0, 0, 0]);
    }

    #[test]
    fn lookup_rejects_repeats_and_range() {
        assert!(LookupArray::from_list(&[1, 1], 3).is_err());
        assert!(SubsetArray::from_list(&[4], 3).is_err());
        assert!(SubsetArray::from_list(&[0], 3).is_err());
    }

    #[test]
    fn append_extends_list() {
        let mut a = vec![1, 2];
        append(&mut a, 3);
        assert_eq!(a, vec![1, 2, 3]);
        let mut b = Vec::new();
        append(&mut b, 7);
        assert_eq!(b, vec![7]);
        let mut c = vec![5, 2];
        append(&mut c, 9);
        assert_eq!(c, vec![5, 2, 9]);
    }

    #[test]
    fn graph_rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 2), (2, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 4)]).is_err());
    }

    #[test]
    fn components_octahedron_neighborhood() {
        let (g, _) = crate::generate::antiprism(3).unwrap();
        for v in g.vertices() {
            let comps = g.components(g.neighbors(v)).unwrap();
            assert_eq!(comps.len(), 2, "octahedron minus N({v})");
            assert!(comps.iter().any(|c| c == &vec![v]));
        }
    }

    #[test]
    fn components_connected_graph_no_removal() {
        let g = antiprism4();
        assert_eq!(g.components(&[]).unwrap().len(), 1);
    }

    #[test]
    fn components_antiprism_classic_cut() {
        let g = antiprism4();
        // {t1, b1, t3, b3} leaves {t2,b2} and {t4,b4}
        let comps = g.components(&[1, 5, 3, 7]).unwrap();
        assert_eq!(comps, vec![vec![2, 6], vec![4, 8]]);
    }

    #[test]
    fn with_terminals_extends_in_order() {
        let g = antiprism4();
        let ext = g.with_terminals(&[1, 2, 3, 4], &[5, 6, 7, 8]).unwrap();
        assert_eq!((ext.n(), ext.m()), (10, g.m() + 8));
        assert!(ext.has_edge(9, 1) && ext.has_edge(10, 8));
        assert!(!ext.has_edge(9, 10));
        for v in ext.vertices() {
            assert!(ext.neighbors(v).windows(2).all(|w| w[0] < w[1]));
        }
        // equivalent to the edge-list construction
        let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
        edges.extend((1..=4).map(|x| (9, x)));
        edges.extend((5..=8).map(|y| (10, y)));
        assert_eq!(ext, Graph::from_edges(10, &edges).unwrap());
        assert!(g.with_terminals(&[1, 1], &[5]).is_err());
    }

    #[test]
    fn induced_identity_and_single() {
        let tri = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let (h, back) = tri.induced(&[1, 2, 3]).unwrap();
        assert_eq!(h.m(), 3);
        assert_eq!(back, vec![0, 1, 2, 3]);
        let (k1, _) = tri.induced(&[2]).unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));
    }

    #[test]
    fn induced_antiprism_cut_set() {
        let g = antiprism4();
        let (h, back) = g.induced(&[1, 5, 3, 7]).unwrap();
        assert_eq!(h.m(), 2);
        assert_eq!(h.components(&[]).unwrap().len(), 2);
        // the two edges are t1-b1 and t3-b3
        let mut edges: Vec<(Vertex, Vertex)> = h
            .edges()
            .map(|(u, v)| {
                let (a, b) = (back[u], back[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        assert_eq!(edges, vec![(1, 5), (3, 7)]);
    }

    /// Reference union-find connectivity used to cross-check `components`.
    fn connected_by_union_find(g: &Graph) -> bool {
        let mut parent: Vec<usize> = (0..=g.n()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (u, v) in g.edges() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let root = find(&mut parent, 1);
        (2..=g.n()).all(|v| find(&mut parent, v) == root)
    }

    proptest! {
        #[test]
        fn subset_and_lookup_agree(n in 1usize..40, picks in proptest::collection::vec(0usize..1000, 0..30)) {
            let mut list: Vec<Vertex> = Vec::new();
            for p in picks {
                let v = p % n + 1;
                if !list.contains(&v) {
                    list.push(v);
                }
            }
            let s = SubsetArray::from_list(&list, n).unwrap();
            let l = LookupArray::from_list(&list, n).unwrap();
            for v in 1..=n {
                prop_assert_eq!(s.contains(v), l.position(v) > 0);
            }
        }

        #[test]
        fn components_form_partition(n in 1usize..25, seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in (u + 1)..=n {
                    if rng.gen_bool(0.25) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let comps = g.components(&[]).unwrap();
            let mut all: Vec<Vertex> = comps.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (1..=n).collect::<Vec<_>>());
            // no edge joins two distinct classes
            let mut class = vec![usize::MAX; n + 1];
            for (i, c) in comps.iter().enumerate() {
                for &v in c {
                    class[v] = i;
                }
            }
            for (u, v) in g.edges() {
                prop_assert_eq!(class[u], class[v]);
            }
            prop_assert_eq!(comps.len() == 1, connected_by_union_find(&g));
        }
    }
}
