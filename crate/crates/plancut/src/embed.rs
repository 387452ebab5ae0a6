//! Combinatorial planar embeddings.
//!
//! A [`RotationSystem`] stores the cyclic neighbor order around every vertex.
//! Faces are traced with the convention `next(u -> v) = (v -> w)` where `w`
//! follows `u` in the rotation at `v`; for a connected plane graph the trace
//! yields `2 - n + m` closed walks (Euler).
//!
//! [`embed`] produces a rotation system for any connected planar graph, or a
//! `NotPlanar` verdict. It uses the Demoucron-Malgrange-Pertuiset path
//! addition method per biconnected block. That is quadratic, not the cited
//! linear-time embedder, which is fine here: the linear pipeline downstream
//! accepts precomputed rotations, so embedding cost never sits on the
//! benchmarked path.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{Graph, SubsetArray, Vertex};

/// Per-vertex clockwise cyclic neighbor order, flattened into one slab.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    offsets: Vec<usize>,
    data: Vec<Vertex>,
}

impl RotationSystem {
    pub fn new(order: Vec<Vec<Vertex>>) -> Self {
        let n = order.len().saturating_sub(1);
        let mut offsets = Vec::with_capacity(n + 2);
        let mut data = Vec::with_capacity(order.iter().map(Vec::len).sum());
        offsets.push(0);
        offsets.push(0); // index 0 is the usual padding slot
        for cycle in order.into_iter().skip(1) {
            data.extend_from_slice(&cycle);
            offsets.push(data.len());
        }
        RotationSystem { offsets, data }
    }

    pub fn order(&self, v: Vertex) -> &[Vertex] {
        &self.data[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn into_orders(self) -> Vec<Vec<Vertex>> {
        (0..self.offsets.len() - 1)
            .map(|v| self.data[self.offsets[v]..self.offsets[v + 1]].to_vec())
            .collect()
    }

    /// Verifies every rotation is a permutation of the adjacency list.
    /// Returns the first offending vertex.
    pub fn check_permutations(&self, g: &Graph) -> Result<(), Vertex> {
        if self.offsets.len() != g.n() + 2 {
            return Err(0);
        }
        for v in g.vertices() {
            let mut sorted = self.order(v).to_vec();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(v);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("input graph is not connected")]
    Disconnected,
    #[error("input graph is empty")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    #[error("graph is not connected")]
    NotConnected,
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    NotPermutation(Vertex),
    #[error("face trace found {found} faces, Euler requires {expected}")]
    Euler { found: usize, expected: usize },
}

/// Walks every face of the embedding. Each directed edge lies on exactly one
/// returned walk; walk entries are the origin vertices in trace order.
pub fn face_walks(g: &Graph, rot: &RotationSystem) -> Vec<Vec<Vertex>> {
    // half-edge id = dart_base[u] + index of v in rot(u)
    let mut dart_base = vec![0usize; g.n() + 2];
    for v in g.vertices() {
        dart_base[v + 1] = dart_base[v] + g.degree(v);
    }
    let total = dart_base[g.n() + 1];
    // position of u within rot(v), for twin lookup
    let mut pos_in = vec![usize::MAX; total];
    let index_of = |v: Vertex, target: Vertex| -> usize {
        rot.order(v)
            .iter()
            .position(|&w| w == target)
            .expect("rotation validated")
    };
    for u in g.vertices() {
        for (i, &v) in rot.order(u).iter().enumerate() {
            pos_in[dart_base[u] + i] = index_of(v, u);
        }
    }

    let mut seen = vec![false; total];
    let mut walks = Vec::new();
    for u in g.vertices() {
        for i in 0..g.degree(u) {
            let start = dart_base[u] + i;
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut cu, mut ci) = (u, i);
            loop {
                let dart = dart_base[cu] + ci;
                debug_assert!(!seen[dart], "face trace revisited a half-edge");
                seen[dart] = true;
                walk.push(cu);
                let v = rot.order(cu)[ci];
                // next = twin, then rotate one step at v
                let j = (pos_in[dart] + 1) % g.degree(v);
                cu = v;
                ci = j;
                if cu == u && ci == i {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    walks
}

/// Checks rotation-permutation, face-trace closure and Euler's formula.
pub fn validate_embedding(g: &Graph, rot: &RotationSystem) -> Result<(), EmbeddingViolation> {
    if !g.is_connected() {
        return Err(EmbeddingViolation::NotConnected);
    }
    if let Err(v) = rot.check_permutations(g) {
        return Err(EmbeddingViolation::NotPermutation(v));
    }
    let found = face_walks(g, rot).len().max(if g.m() == 0 { 1 } else { 0 });
    let expected = 2 + g.m() - g.n();
    if found != expected {
        return Err(EmbeddingViolation::Euler { found, expected });
    }
    Ok(())
}

/// Rebuilds per-vertex rotations from a full set of face walks of one
/// biconnected piece. Inverse of `face_walks` for a single block.
pub(crate) fn rotation_from_faces(
    n: usize,
    faces: &[Vec<Vertex>],
) -> Result<Vec<Vec<Vertex>>, String> {
    // corner (a, v, b) on a face walk means: b follows a in rot(v)
    let mut succ: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n + 1];
    for f in faces {
        let len = f.len();
        for i in 0..len {
            let a = f[(i + len - 1) % len];
            let v = f[i];
            let b = f[(i + 1) % len];
            succ[v].push((a, b));
        }
    }
    let mut rot = vec![Vec::new(); n + 1];
    for v in 1..=n {
        if succ[v].is_empty() {
            continue;
        }
        let mut map = succ[v].clone();
        map.sort_unstable();
        if map.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(format!("vertex {v}: conflicting face corners"));
        }
        let lookup = |a: Vertex| -> Option<Vertex> {
            map.binary_search_by_key(&a, |e| e.0).ok().map(|i| map[i].1)
        };
        let first = map[0].0;
        let mut cycle = vec![first];
        let mut cur = lookup(first).unwrap();
        while cur != first {
            if cycle.len() > map.len() {
                return Err(format!("vertex {v}: corner successors do not close"));
            }
            cycle.push(cur);
            cur = lookup(cur).ok_or_else(|| format!("vertex {v}: missing corner"))?;
        }
        if cycle.len() != map.len() {
            return Err(format!("vertex {v}: corners split into several cycles"));
        }
        rot[v] = cycle;
    }
    Ok(rot)
}

/// Computes a planar rotation system for a connected graph, or reports
/// `NotPlanar`.
pub fn embed(g: &Graph) -> Result<RotationSystem, EmbedError> {
    if g.n() == 0 {
        return Err(EmbedError::Empty);
    }
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    // Quick rejection; also bounds the work below.
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return Err(EmbedError::NotPlanar);
    }

    let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); g.n() + 1];
    for block in biconnected_blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rot[u].push(v);
            rot[v].push(u);
            continue;
        }
        let faces = dmp_block(g, &block)?;
        let block_rot = rotation_from_faces(g.n(), &faces)
            .expect("DMP face set must stitch into rotations");
        for (v, cycle) in block_rot.into_iter().enumerate() {
            if !cycle.is_empty() {
                rot[v].extend(cycle);
            }
        }
    }
    let system = RotationSystem::new(rot);
    debug_assert_eq!(validate_embedding(g, &system), Ok(()));
    Ok(system)
}

/// Biconnected components as edge lists, via iterative DFS with an edge stack.
fn biconnected_blocks(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    let n = g.n();
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks = Vec::new();

    // frame: (vertex, parent, next neighbor index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in g.vertices() {
        if disc[root] != 0 {
            continue;
        }
        timer += 1;
        disc[root] = timer;
        low[root] = timer;
        stack.push((root, 0, 0));
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(u) {
                let v = g.neighbors(u)[*idx];
                *idx += 1;
                if disc[v] == 0 {
                    edge_stack.push((u, v));
                    timer += 1;
                    disc[v] = timer;
                    low[v] = timer;
                    stack.push((v, u, 0));
                } else if v != parent && disc[v] < disc[u] {
                    edge_stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(&(a, b)) = edge_stack.last() {
                            if disc[a] >= disc[u] || (a == p && b == u) {
                                block.push((a, b));
                                edge_stack.pop();
                                if a == p && b == u {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        if !block.is_empty() {
                            blocks.push(block);
                        }
                    }
                }
            }
        }
    }
    blocks
}

/// One fragment of `G` relative to the embedded subgraph `H`: either a single
/// chord or a connected component of `G - V(H)` plus its attachment edges.
struct Fragment {
    attachments: Vec<Vertex>,
    /// Interior vertices (empty for a chord fragment).
    interior: Vec<Vertex>,
    chord: Option<(Vertex, Vertex)>,
}

/// Embeds one 2-connected block, returning all of its face walks.
fn dmp_block(g: &Graph, block: &[(Vertex, Vertex)]) -> Result<Vec<Vec<Vertex>>, EmbedError> {
    let n = g.n();
    let mut in_block = SubsetArray::empty(n);
    let mut block_adj: Vec<Vec<Vertex>> = vec![Vec::new(); n + 1];
    let mut block_vertices = Vec::new();
    for &(u, v) in block {
        for w in [u, v] {
            if !in_block.contains(w) {
                in_block.insert(w);
                block_vertices.push(w);
            }
        }
        block_adj[u].push(v);
        block_adj[v].push(u);
    }

    // Initial cycle: walk never turning back until a vertex repeats.
    let start = block_vertices[0];
    let mut pos_on_path = vec![usize::MAX; n + 1];
    let mut path = vec![start];
    pos_on_path[start] = 0;
    let cycle: Vec<Vertex> = 'walk: loop {
        let u = *path.last().unwrap();
        let prev = if path.len() >= 2 {
            path[path.len() - 2]
        } else {
            0
        };
        for &v in &block_adj[u] {
            if v == prev {
                continue;
            }
            if pos_on_path[v] != usize::MAX {
                break 'walk path[pos_on_path[v]..].to_vec();
            }
            pos_on_path[v] = path.len();
            path.push(v);
            continue 'walk;
        }
        unreachable!("2-connected block must contain a cycle");
    };

    let mut in_h = SubsetArray::empty(n);
    let mut embedded: HashSet<(Vertex, Vertex)> = HashSet::new();
    for i in 0..cycle.len() {
        in_h.insert(cycle[i]);
        embedded.insert(edge_key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<Vertex>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    let mut remaining = block.len() - cycle.len();
    while remaining > 0 {
        let fragments = compute_fragments(&block_adj, &block_vertices, &in_h, &embedded);
        debug_assert!(!fragments.is_empty());

        // Admissible faces per fragment; a fragment with none makes the
        // block non-planar, one with exactly a single face is forced.
        let mut chosen: Option<(usize, usize)> = None; // (fragment, face)
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let mut admissible = Vec::new();
            for (id, face) in faces.iter().enumerate() {
                let boundary = SubsetArray::from_list(face, n).expect("face vertices in range");
                if frag.attachments.iter().all(|&a| boundary.contains(a)) {
                    admissible.push(id);
                }
            }
            match admissible.len() {
                0 => return Err(EmbedError::NotPlanar),
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if fallback.is_none() {
                        fallback = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_id) = chosen.or(fallback).expect("nonempty fragment list");
        let frag = &fragments[fi];

        let alpha = fragment_path(&block_adj, frag, &in_h);
        let face = faces.swap_remove(face_id);
        let (f1, f2) = split_face(&face, &alpha);
        faces.push(f1);
        faces.push(f2);

        for w in alpha.windows(2) {
            embedded.insert(edge_key(w[0], w[1]));
            remaining -= 1;
        }
        for &v in &alpha[1..alpha.len() - 1] {
            in_h.insert(v);
        }
    }
    Ok(faces)
}

fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

fn compute_fragments(
    block_adj: &[Vec<Vertex>],
    block_vertices: &[Vertex],
    in_h: &SubsetArray,
    embedded: &HashSet<(Vertex, Vertex)>,
) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    // chords: unembedded edges with both ends in H
    for &u in block_vertices {
        if !in_h.contains(u) {
            continue;
        }
        for &v in &block_adj[u] {
            if u < v && in_h.contains(v) && !embedded.contains(&edge_key(u, v)) {
                fragments.push(Fragment {
                    attachments: vec![u, v],
                    interior: Vec::new(),
                    chord: Some((u, v)),
                });
            }
        }
    }
    // components of block - H
    let mut seen: Vec<bool> = vec![false; block_adj.len()];
    for &s in block_vertices {
        if in_h.contains(s) || seen[s] {
            continue;
        }
        let mut interior = Vec::new();
        let mut attach = Vec::new();
        let mut queue = vec![s];
        seen[s] = true;
        while let Some(u) = queue.pop() {
            interior.push(u);
            for &v in &block_adj[u] {
                if in_h.contains(v) {
                    attach.push(v);
                } else if !seen[v] {
                    seen[v] = true;
                    queue.push(v);
                }
            }
        }
        attach.sort_unstable();
        attach.dedup();
        fragments.push(Fragment {
            attachments: attach,
            interior,
            chord: None,
        });
    }
    fragments
}

/// A path through the fragment joining two distinct attachment vertices,
/// with every interior vertex inside the fragment.
fn fragment_path(block_adj: &[Vec<Vertex>], frag: &Fragment, in_h: &SubsetArray) -> Vec<Vertex> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attachments[0];
    let in_frag = {
        let mut s = SubsetArray::empty(block_adj.len() - 1);
        for &v in &frag.interior {
            s.insert(v);
        }
        s
    };
    // BFS from a through fragment interior until another attachment appears
    let mut parent: Vec<Vertex> = vec![0; block_adj.len()];
    let mut queue = std::collections::VecDeque::new();
    for &x in &block_adj[a] {
        if in_frag.contains(x) && parent[x] == 0 {
            parent[x] = a;
            queue.push_back(x);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &block_adj[u] {
            if in_frag.contains(v) {
                if parent[v] == 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            } else if in_h.contains(v) && v != a {
                // reached attachment v through u
                let mut path = vec![v, u];
                let mut cur = u;
                while cur != a {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
        }
    }
    unreachable!("fragment of a 2-connected block has two attachments");
}

/// Splits a directed face boundary along the path `alpha` (first and last
/// entries lie on the face).
fn split_face(face: &[Vertex], alpha: &[Vertex]) -> (Vec<Vertex>, Vec<Vertex>) {
    let len = face.len();
    let a = alpha[0];
    let b = *alpha.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let interior = &alpha[1..alpha.len() - 1];

    // forward segment a..b plus reversed interior
    let mut f1 = Vec::new();
    let mut k = i;
    loop {
        f1.push(face[k]);
        if k == j {
            break;
        }
        k = (k + 1) % len;
    }
    f1.extend(interior.iter().rev());

    // forward segment b..a plus interior
    let mut f2 = Vec::new();
    let mut k = j;
    loop {
        f2.push(face[k]);
        if k == i {
            break;
        }
        k = (k + 1) % len;
    }
    f2.extend(interior.iter());

    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in (u + 1)..=n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn octahedron_embeds_with_eight_faces() {
        let (g, _) = generate::antiprism(3).unwrap();
        let rot = embed(&g).unwrap();
        assert_eq!(face_walks(&g, &rot).len(), 8);
    }

    #[test]
    fn k5_is_not_planar() {
        assert_eq!(embed(&complete(5)), Err(EmbedError::NotPlanar));
    }

    #[test]
    fn k33_is_not_planar() {
        let g = Graph::from_edges(
            6,
            &[
                (1, 4),
                (1, 5),
                (1, 6),
                (2, 4),
                (2, 5),
                (2, 6),
                (3, 4),
                (3, 5),
                (3, 6),
            ],
        )
        .unwrap();
        assert_eq!(embed(&g), Err(EmbedError::NotPlanar));
    }

    #[test]
    fn square_antiprism_has_ten_faces() {
        let (g, _) = generate::antiprism(4).unwrap();
        let rot = embed(&g).unwrap();
        let walks = face_walks(&g, &rot);
        assert_eq!(walks.len(), 10);
        let mut lens: Vec<usize> = walks.iter().map(|w| w.len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![3, 3, 3, 3, 3, 3, 3, 3, 4, 4]);
    }

    #[test]
    fn validate_accepts_generated_rotations() {
        for k in 3..=7 {
            let (g, rot) = generate::antiprism(k).unwrap();
            assert_eq!(validate_embedding(&g, &rot), Ok(()));
        }
    }

    #[test]
    fn validate_rejects_broken_permutation() {
        let (g, rot) = generate::antiprism(3).unwrap();
        let mut orders = rot.into_orders();
        orders[1].pop();
        let bad = RotationSystem::new(orders);
        assert_eq!(
            validate_embedding(&g, &bad),
            Err(EmbeddingViolation::NotPermutation(1))
        );
    }

    #[test]
    fn validate_rejects_nonplanar_rotation_order() {
        // a valid permutation that is not a plane embedding fails Euler
        let (g, rot) = generate::antiprism(4).unwrap();
        let mut orders = rot.into_orders();
        orders[1].swap(0, 2);
        let twisted = RotationSystem::new(orders);
        assert!(matches!(
            validate_embedding(&g, &twisted),
            Err(EmbeddingViolation::Euler { .. })
        ));
    }

    #[test]
    fn embeds_graphs_with_cut_vertices() {
        // two triangles sharing vertex 3 plus a pendant edge
        let g = Graph::from_edges(
            6,
            &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5), (5, 6)],
        )
        .unwrap();
        let rot = embed(&g).unwrap();
        assert_eq!(validate_embedding(&g, &rot), Ok(()));
    }

    #[test]
    fn embeds_trees_and_single_vertices() {
        let path = Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let rot = embed(&path).unwrap();
        assert_eq!(validate_embedding(&path, &rot), Ok(()));
        let k1 = Graph::from_edges(1, &[]).unwrap();
        assert!(embed(&k1).is_ok());
    }

    #[test]
    fn embed_round_trips_on_random_planar_graphs() {
        for seed in 0..30 {
            let (g, _) = generate::random_triangulation(4 + (seed as usize % 9), seed).unwrap();
            let rot = embed(&g).unwrap();
            assert_eq!(validate_embedding(&g, &rot), Ok(()), "seed {seed}");
        }
        for seed in 0..6 {
            let (g, _) = generate::four_connected_triangulation(30, seed).unwrap();
            let rot = embed(&g).unwrap();
            assert_eq!(validate_embedding(&g, &rot), Ok(()), "4conn seed {seed}");
        }
        let (g, _) = generate::carved_tower(5, 8, 3, 1).unwrap();
        let rot = embed(&g).unwrap();
        assert_eq!(validate_embedding(&g, &rot), Ok(()));
    }

    #[test]
    fn petersen_is_not_planar() {
        let g = Graph::from_edges(
            10,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 1),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 10),
                (6, 8),
                (8, 10),
                (10, 7),
                (7, 9),
                (9, 6),
            ],
        )
        .unwrap();
        assert_eq!(embed(&g), Err(EmbedError::NotPlanar));
    }

    #[test]
    fn rejects_disconnected_input() {
        let g = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(embed(&g), Err(EmbedError::Disconnected));
    }
}
