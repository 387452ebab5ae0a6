//! Deterministic, seeded test-instance construction.
//!
//! Everything returns the graph together with a valid rotation system, so
//! downstream stages never pay for an embedding run. The same
//! `(family, parameters, seed)` always yields the same graph, byte for byte.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::auxiliary::{build_auxiliary, insert_apex};
use crate::dcel::{list_large_faces, Dcel};
use crate::embed::{rotation_from_faces, validate_embedding, RotationSystem};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown named graph `{0}`")]
    UnknownName(String),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("generation failed: {0}")]
    Failed(String),
    #[error("graph: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

/// Mutable triangulation under construction: the rotation lists are the one
/// source of truth, adjacency included.
struct Builder {
    rot: Vec<Vec<Vertex>>,
}

impl Builder {
    fn n(&self) -> usize {
        self.rot.len() - 1
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rot[u].contains(&v)
    }

    fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    /// Neighbor following `u` in the cyclic order at `v`.
    fn after(&self, v: Vertex, u: Vertex) -> Vertex {
        let order = &self.rot[v];
        let i = order
            .iter()
            .position(|&w| w == u)
            .expect("after() needs an existing neighbor");
        order[(i + 1) % order.len()]
    }

    /// Apex of the face left of the dart `u -> v`, when that face is a
    /// triangle.
    fn left_apex(&self, u: Vertex, v: Vertex) -> Option<Vertex> {
        let x = self.after(v, u);
        if self.after(x, v) == u {
            Some(x)
        } else {
            None
        }
    }

    fn replace(&mut self, v: Vertex, old: Vertex, new: Vertex) {
        let i = self.rot[v].iter().position(|&w| w == old).unwrap();
        self.rot[v][i] = new;
    }

    fn insert_after(&mut self, v: Vertex, pivot: Vertex, new: Vertex) {
        let i = self.rot[v].iter().position(|&w| w == pivot).unwrap();
        self.rot[v].insert(i + 1, new);
    }

    fn remove(&mut self, v: Vertex, gone: Vertex) {
        let i = self.rot[v].iter().position(|&w| w == gone).unwrap();
        self.rot[v].remove(i);
    }

    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 1..=self.n() {
            for &v in &self.rot[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn finish(self) -> Result<(Graph, RotationSystem), GenError> {
        let g = Graph::from_edges(self.n(), &self.edges())?;
        let rot = RotationSystem::new(self.rot);
        debug_assert_eq!(validate_embedding(&g, &rot), Ok(()));
        Ok((g, rot))
    }

    /// Splits the edge `uv` with a new degree-4 vertex adjacent to `u`, `v`
    /// and the two face apexes. Preserves "triangulation without separating
    /// triangles" exactly when the apexes are non-adjacent.
    fn grow(&mut self, u: Vertex, v: Vertex) {
        let x = self.after(v, u);
        let y = self.after(u, v);
        let w = self.n() + 1;
        self.rot.push(vec![u, x, v, y]);
        self.replace(u, v, w);
        self.replace(v, u, w);
        self.insert_after(x, v, w);
        self.insert_after(y, u, w);
    }

    /// Flips `uv` to the opposite diagonal `xy` of its two triangles.
    fn flip(&mut self, u: Vertex, v: Vertex) {
        let x = self.after(v, u);
        let y = self.after(u, v);
        self.remove(u, v);
        self.remove(v, u);
        self.insert_after(x, v, y);
        self.insert_after(y, u, x);
    }

    /// Deletes `uv`, merging its two triangles into a quadrilateral face.
    fn carve(&mut self, u: Vertex, v: Vertex) {
        self.remove(u, v);
        self.remove(v, u);
    }

    /// True when no triangle is separating, i.e. every edge lies in exactly
    /// two triangles. Valid for triangulations only.
    fn separating_triangle_free(&self) -> bool {
        let mut sorted: Vec<Vec<Vertex>> = self.rot.clone();
        for l in sorted.iter_mut() {
            l.sort_unstable();
        }
        for u in 1..=self.n() {
            for &v in &self.rot[u] {
                if u < v {
                    let common = intersect_count(&sorted[u], &sorted[v]);
                    if common != 2 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn intersect_count(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// The k-gonal antiprism: rings `t1..tk = 1..k` and `b1..bk = k+1..2k`,
/// with `ti ~ bi` and `ti ~ b(i+1)`. Two k-gon faces, 2k triangles;
/// 4-regular and, for k >= 3, 4-connected. `antiprism(3)` is the octahedron.
pub fn antiprism(k: usize) -> Result<(Graph, RotationSystem), GenError> {
    if k < 3 {
        return Err(GenError::BadParameter(format!("antiprism needs k >= 3, got {k}")));
    }
    let t = |i: usize| (i % k) + 1;
    let b = |i: usize| k + (i % k) + 1;
    let mut edges = Vec::with_capacity(4 * k);
    let mut rot = vec![Vec::new(); 2 * k + 1];
    for i in 0..k {
        edges.push((t(i), t(i + 1)));
        edges.push((b(i), b(i + 1)));
        edges.push((t(i), b(i)));
        edges.push((t(i), b(i + 1)));
        rot[t(i)] = vec![t(i + k - 1), t(i + 1), b(i + 1), b(i)];
        rot[b(i)] = vec![b(i + k - 1), t(i + k - 1), t(i), b(i + 1)];
    }
    let g = Graph::from_edges(2 * k, &edges)?;
    let rot = RotationSystem::new(rot);
    debug_assert_eq!(validate_embedding(&g, &rot), Ok(()));
    Ok((g, rot))
}

pub fn octahedron() -> Result<(Graph, RotationSystem), GenError> {
    antiprism(3)
}

/// The icosahedron: pentagonal antiprism with both large faces capped.
pub fn icosahedron() -> Result<(Graph, RotationSystem), GenError> {
    let (g, rot) = antiprism(5)?;
    let dcel = Dcel::build(&g, &rot).map_err(|e| GenError::Failed(e.to_string()))?;
    let catalog = list_large_faces(&dcel).map_err(|e| GenError::Failed(e.to_string()))?;
    let aux = build_auxiliary(&g, &rot, &catalog).map_err(|e| GenError::Failed(e.to_string()))?;
    Ok((aux.graph, aux.rotation))
}

/// Antiprism with a single capped ring: a 4-connected near-triangulation
/// whose one large face is the other ring.
pub fn capped_antiprism(k: usize) -> Result<(Graph, RotationSystem), GenError> {
    let (g, rot) = antiprism(k)?;
    let dcel = Dcel::build(&g, &rot).map_err(|e| GenError::Failed(e.to_string()))?;
    let catalog = list_large_faces(&dcel).map_err(|e| GenError::Failed(e.to_string()))?;
    // cap the ring containing b1 = k + 1
    let bottom = (0..catalog.len())
        .find(|&i| catalog.face(i).vertices().contains(&(k + 1)))
        .ok_or_else(|| GenError::Failed("no bottom ring face".into()))?;
    let boundary = catalog.face(bottom).vertices().to_vec();
    let apex = g.n() + 1;
    let mut orders: Vec<Vec<Vertex>> = (0..=g.n()).map(|v| rot.order(v).to_vec()).collect();
    insert_apex(&mut orders, apex, &boundary);
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    edges.extend(boundary.iter().map(|&w| (apex, w)));
    let g2 = Graph::from_edges(g.n() + 1, &edges)?;
    let rot2 = RotationSystem::new(orders);
    debug_assert_eq!(validate_embedding(&g2, &rot2), Ok(()));
    Ok((g2, rot2))
}

/// The 8-vertex, 3-connected, cleavable graph with two disjoint
/// quadrilateral faces; hardcoded face set, stitched into rotations.
pub fn three_connected_counterexample() -> Result<(Graph, RotationSystem), GenError> {
    let faces: Vec<Vec<Vertex>> = vec![
        vec![1, 4, 3, 2],
        vec![1, 2, 8],
        vec![2, 3, 8],
        vec![3, 4, 8],
        vec![1, 8, 5],
        vec![8, 4, 7],
        vec![1, 5, 6],
        vec![6, 7, 4],
        vec![5, 8, 7, 6],
        vec![1, 6, 4],
    ];
    let rot = rotation_from_faces(8, &faces).map_err(GenError::Failed)?;
    let mut edges = Vec::new();
    for f in &faces {
        for i in 0..f.len() {
            let (u, v) = (f[i], f[(i + 1) % f.len()]);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(8, &edges)?;
    let rot = RotationSystem::new(rot);
    debug_assert_eq!(validate_embedding(&g, &rot), Ok(()));
    Ok((g, rot))
}

/// Stacked random triangulation: K4 plus repeated vertex insertion into a
/// uniformly chosen face. Always 3-connected, never 4-connected past n = 4.
pub fn random_triangulation(n: usize, seed: u64) -> Result<(Graph, RotationSystem), GenError> {
    if n < 4 {
        return Err(GenError::BadParameter(format!("triangulation needs n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k4: Vec<Vec<Vertex>> = vec![
        vec![1, 2, 3],
        vec![1, 3, 4],
        vec![1, 4, 2],
        vec![2, 4, 3],
    ];
    let mut rot = rotation_from_faces(4, &k4).map_err(GenError::Failed)?;
    let mut faces: Vec<[Vertex; 3]> = vec![[1, 2, 3], [1, 3, 4], [1, 4, 2], [2, 4, 3]];
    let mut builder = Builder { rot: std::mem::take(&mut rot) };
    for v in 5..=n {
        let at = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[at];
        builder.rot.push(vec![a, c, b]);
        builder.insert_after(a, c, v);
        builder.insert_after(b, a, v);
        builder.insert_after(c, b, v);
        faces[at] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    builder.finish()
}

/// Random 4-connected triangulation: octahedron grown by degree-4 vertex
/// insertions (each provably preserves the no-separating-triangle
/// invariant), then shuffled by safe diagonal flips.
pub fn four_connected_triangulation(
    n: usize,
    seed: u64,
) -> Result<(Graph, RotationSystem), GenError> {
    if n < 6 {
        return Err(GenError::BadParameter(format!(
            "4-connected triangulations need n >= 6, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, rot) = antiprism(3)?;
    let mut builder = Builder {
        rot: rot.into_orders(),
    };

    while builder.n() < n {
        let candidates: Vec<(Vertex, Vertex)> = builder
            .edges()
            .into_iter()
            .filter(|&(u, v)| {
                let x = builder.after(v, u);
                let y = builder.after(u, v);
                !builder.has_edge(x, y)
            })
            .collect();
        if candidates.is_empty() {
            return Err(GenError::Failed("no growable edge".into()));
        }
        let (u, v) = candidates[rng.gen_range(0..candidates.len())];
        builder.grow(u, v);
    }

    // diagonal flips for variety; accept only flips that keep the
    // no-separating-triangle invariant locally
    let attempts = 3 * n;
    for _ in 0..attempts {
        let edges = builder.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        if builder.degree(u) < 5 || builder.degree(v) < 5 {
            continue;
        }
        let x = builder.after(v, u);
        let y = builder.after(u, v);
        if builder.has_edge(x, y) {
            continue;
        }
        let common = builder.rot[x]
            .iter()
            .filter(|&&w| builder.has_edge(y, w))
            .count();
        // after the flip the new edge xy must lie in exactly the two new
        // triangles through u and v
        if common != 2 {
            continue;
        }
        builder.flip(u, v);
    }

    debug_assert!(builder.separating_triangle_free());
    builder.finish()
}

/// Carves up to `target` quadrilateral large faces into a 4-connected
/// triangulation by deleting edges whose faces are still triangles. Each
/// accepted deletion keeps minimum degree 4 and 4-connectivity (checked by
/// flow); faces stay pairwise disjoint unless `allow_touching`. Returns the
/// achieved face count, which may fall short of `target`.
pub fn carve_large_faces(
    g: &Graph,
    rot: &RotationSystem,
    target: usize,
    seed: u64,
    allow_touching: bool,
) -> Result<(Graph, RotationSystem, usize), GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut builder = Builder {
        rot: (0..=g.n()).map(|v| rot.order(v).to_vec()).collect(),
    };
    let mut in_quad = vec![false; g.n() + 1];
    let mut achieved = 0usize;
    let mut attempts = 0usize;
    while achieved < target && attempts < 50 * target.max(1) {
        attempts += 1;
        let edges = builder.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        if builder.degree(u) < 5 || builder.degree(v) < 5 {
            continue;
        }
        let (Some(x), Some(y)) = (builder.left_apex(u, v), builder.left_apex(v, u)) else {
            continue; // an incident face is already carved
        };
        if builder.has_edge(x, y) {
            continue;
        }
        if !allow_touching && [u, v, x, y].iter().any(|&w| in_quad[w]) {
            continue;
        }
        let mut candidate = Builder {
            rot: builder.rot.clone(),
        };
        candidate.carve(u, v);
        let (cg, _) = Builder {
            rot: candidate.rot.clone(),
        }
        .finish()?;
        if !crate::connectivity::is_k_connected(&cg, 4) {
            continue;
        }
        builder = candidate;
        for w in [u, v, x, y] {
            in_quad[w] = true;
        }
        achieved += 1;
    }
    let (cg, crot) = builder.finish()?;
    Ok((cg, crot, achieved))
}

/// Random 4-connected graph with `k` disjoint quadrilateral faces.
pub fn carved_four_connected(
    n: usize,
    k: usize,
    seed: u64,
) -> Result<(Graph, RotationSystem), GenError> {
    let (g, rot) = four_connected_triangulation(n, seed)?;
    let (cg, crot, achieved) = carve_large_faces(&g, &rot, k, seed ^ 0x9e3779b97f4a7c15, false)?;
    if achieved < k {
        return Err(GenError::Failed(format!(
            "carved only {achieved} of {k} requested faces at n = {n}"
        )));
    }
    Ok((cg, crot))
}

fn tower_ids(c: usize, rows: usize) -> (impl Fn(usize, usize) -> Vertex, Vertex, Vertex) {
    let ring = move |i: usize, j: usize| i * c + (j % c) + 1;
    let hub_bottom = rows * c + 1;
    let hub_top = rows * c + 2;
    (ring, hub_bottom, hub_top)
}

/// Antiprism-style tower: `rows` rings of `c` vertices, triangulated bands,
/// both ends capped by hubs. A 4-connected triangulation with bounded
/// degrees, built in linear time with its embedding.
pub fn tower(c: usize, rows: usize) -> Result<(Graph, RotationSystem), GenError> {
    if c < 4 || rows < 2 {
        return Err(GenError::BadParameter(format!(
            "tower needs c >= 4 and rows >= 2, got c = {c}, rows = {rows}"
        )));
    }
    let (ring, hub_b, hub_t) = tower_ids(c, rows);
    let n = rows * c + 2;
    let mut faces: Vec<Vec<Vertex>> = Vec::with_capacity(2 * rows * c);
    for i in 0..rows - 1 {
        for j in 0..c {
            faces.push(vec![ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)]);
            faces.push(vec![ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)]);
        }
    }
    for j in 0..c {
        faces.push(vec![ring(0, j + 1), hub_b, ring(0, j)]);
        faces.push(vec![ring(rows - 1, j), hub_t, ring(rows - 1, j + 1)]);
    }
    let rot = rotation_from_faces(n, &faces).map_err(GenError::Failed)?;
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..rows {
        for j in 0..c {
            edges.push((ring(i, j), ring(i, j + 1)));
            if i + 1 < rows {
                edges.push((ring(i, j), ring(i + 1, j)));
                edges.push((ring(i, j), ring(i + 1, j + 1)));
            }
        }
    }
    for j in 0..c {
        edges.push((hub_b, ring(0, j)));
        edges.push((hub_t, ring(rows - 1, j)));
    }
    let g = Graph::from_edges(n, &edges)?;
    let rot = RotationSystem::new(rot);
    debug_assert_eq!(validate_embedding(&g, &rot), Ok(()));
    Ok((g, rot))
}

/// Tower with `k` band diagonals deleted in rows spaced at least two apart:
/// `k` pairwise disjoint quadrilateral faces, still 4-connected. Linear time.
pub fn carved_tower(
    c: usize,
    rows: usize,
    k: usize,
    seed: u64,
) -> Result<(Graph, RotationSystem), GenError> {
    if k > 0 && rows < 2 * k {
        return Err(GenError::BadParameter(format!(
            "carving {k} disjoint bands needs rows >= {}, got {rows}",
            2 * k
        )));
    }
    let (g, rot) = tower(c, rows)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ring, _, _) = tower_ids(c, rows);
    let mut builder = Builder {
        rot: (0..=g.n()).map(|v| rot.order(v).to_vec()).collect(),
    };
    // bands 0, 2, 4, ... shifted by a random offset keep quads disjoint
    let max_shift = (rows - 1).saturating_sub(2 * (k.max(1) - 1) + 1);
    let shift = if max_shift > 0 {
        rng.gen_range(0..=max_shift)
    } else {
        0
    };
    for t in 0..k {
        let i = shift + 2 * t;
        let j = rng.gen_range(0..c);
        builder.carve(ring(i, j), ring(i + 1, j + 1));
    }
    builder.finish()
}

/// Tower with two carved quadrilaterals sharing one vertex: the shared
/// vertex lies on two large faces.
pub fn touching_carved_tower(
    c: usize,
    rows: usize,
    seed: u64,
) -> Result<(Graph, RotationSystem), GenError> {
    if rows < 3 {
        return Err(GenError::BadParameter(format!(
            "touching carve needs rows >= 3, got {rows}"
        )));
    }
    let (g, rot) = tower(c, rows)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ring, _, _) = tower_ids(c, rows);
    let i = rng.gen_range(0..rows - 2);
    let j = rng.gen_range(0..c);
    let mut builder = Builder {
        rot: (0..=g.n()).map(|v| rot.order(v).to_vec()).collect(),
    };
    builder.carve(ring(i, j), ring(i + 1, j + 1));
    builder.carve(ring(i + 1, j + 1), ring(i + 2, j + 2));
    builder.finish()
}

/// Named instance dispatch used by the CLI; `param` feeds the families that
/// take a size.
pub fn named(name: &str, param: Option<usize>) -> Result<(Graph, RotationSystem), GenError> {
    match name {
        "octahedron" => octahedron(),
        "icosahedron" => icosahedron(),
        "antiprism" => antiprism(param.unwrap_or(4)),
        "capped-antiprism" => capped_antiprism(param.unwrap_or(5)),
        "paper-fig-3conn-counter" => three_connected_counterexample(),
        other => Err(GenError::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_k_connected;
    use crate::graph::SubsetArray;

    #[test]
    fn octahedron_shape() {
        let (g, rot) = octahedron().unwrap();
        assert_eq!((g.n(), g.m()), (6, 12));
        assert!(g.vertices().all(|v| g.degree(v) == 4));
        assert_eq!(validate_embedding(&g, &rot), Ok(()));
        assert!(is_k_connected(&g, 4));
    }

    #[test]
    fn icosahedron_shape() {
        let (g, rot) = icosahedron().unwrap();
        assert_eq!((g.n(), g.m()), (12, 30));
        assert!(g.vertices().all(|v| g.degree(v) == 5));
        assert_eq!(validate_embedding(&g, &rot), Ok(()));
        let dcel = Dcel::build(&g, &rot).unwrap();
        assert_eq!(dcel.face_count(), 20);
        assert!(is_k_connected(&g, 4));
    }

    #[test]
    fn antiprisms_are_four_connected() {
        for k in 4..=6 {
            let (g, _) = antiprism(k).unwrap();
            assert_eq!((g.n(), g.m()), (2 * k, 4 * k));
            assert!(is_k_connected(&g, 4), "antiprism({k})");
        }
    }

    #[test]
    fn counterexample_graph_matches_description() {
        let (g, rot) = three_connected_counterexample().unwrap();
        assert_eq!((g.n(), g.m()), (8, 16));
        assert_eq!(validate_embedding(&g, &rot), Ok(()));
        assert!(is_k_connected(&g, 3));
        assert!(!is_k_connected(&g, 4));
        let dcel = Dcel::build(&g, &rot).unwrap();
        let catalog = list_large_faces(&dcel).unwrap();
        assert_eq!(catalog.len(), 2);
        // the two quadrilaterals are disjoint
        assert_eq!(crate::cut::face_intersection(g.n(), &catalog), None);
    }

    #[test]
    fn stacked_triangulations_have_triangulation_counts() {
        for (n, seed) in [(4usize, 0u64), (9, 1), (20, 2), (50, 3)] {
            let (g, rot) = random_triangulation(n, seed).unwrap();
            assert_eq!(g.m(), 3 * n - 6);
            assert_eq!(validate_embedding(&g, &rot), Ok(()));
            let dcel = Dcel::build(&g, &rot).unwrap();
            assert!((0..dcel.face_count()).all(|f| dcel.face_len(f) == 3));
        }
    }

    #[test]
    fn stacked_triangulation_is_deterministic() {
        let (a, ra) = random_triangulation(50, 42).unwrap();
        let (b, rb) = random_triangulation(50, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            crate::io::write_graph(&a, Some(&ra)),
            crate::io::write_graph(&b, Some(&rb))
        );
    }

    #[test]
    fn four_connected_generator_is_four_connected() {
        for (n, seed) in [(6usize, 0u64), (8, 1), (11, 2), (14, 3), (14, 4), (24, 5)] {
            let (g, rot) = four_connected_triangulation(n, seed).unwrap();
            assert_eq!(g.n(), n);
            assert_eq!(g.m(), 3 * n - 6);
            assert_eq!(validate_embedding(&g, &rot), Ok(()), "n={n} seed={seed}");
            assert!(is_k_connected(&g, 4), "n={n} seed={seed}");
        }
    }

    #[test]
    fn carving_produces_disjoint_quadrilaterals() {
        for seed in [5u64, 9, 31] {
            let (g, rot) = four_connected_triangulation(12, seed).unwrap();
            let (cg, crot, k) = carve_large_faces(&g, &rot, 2, seed, false).unwrap();
            assert_eq!(validate_embedding(&cg, &crot), Ok(()));
            assert!(is_k_connected(&cg, 4));
            assert!(cg.min_degree() >= 4);
            let dcel = Dcel::build(&cg, &crot).unwrap();
            let catalog = list_large_faces(&dcel).unwrap();
            assert_eq!(catalog.len(), k);
            assert!(catalog.iter().all(|f| f.len() == 4));
            if k == 2 {
                assert_eq!(crate::cut::face_intersection(cg.n(), &catalog), None);
            }
        }
    }

    #[test]
    fn towers_are_four_connected_triangulations() {
        for (c, rows) in [(4usize, 2usize), (4, 3), (5, 4), (8, 3)] {
            let (g, rot) = tower(c, rows).unwrap();
            assert_eq!(g.n(), c * rows + 2);
            assert_eq!(g.m(), 3 * g.n() - 6);
            assert_eq!(validate_embedding(&g, &rot), Ok(()), "tower({c},{rows})");
            assert!(is_k_connected(&g, 4), "tower({c},{rows})");
        }
    }

    #[test]
    fn carved_towers_keep_connectivity_and_faces() {
        for (c, rows, k, seed) in [(4usize, 4usize, 2usize, 0u64), (5, 6, 3, 1), (4, 2, 1, 2)] {
            let (g, rot) = carved_tower(c, rows, k, seed).unwrap();
            assert_eq!(validate_embedding(&g, &rot), Ok(()));
            assert!(is_k_connected(&g, 4), "carved_tower({c},{rows},{k})");
            let dcel = Dcel::build(&g, &rot).unwrap();
            let catalog = list_large_faces(&dcel).unwrap();
            assert_eq!(catalog.len(), k);
            // pairwise disjoint
            let mut seen = SubsetArray::empty(g.n());
            for f in catalog.iter() {
                for &v in f.vertices() {
                    assert!(!seen.contains(v));
                    seen.insert(v);
                }
            }
        }
    }

    #[test]
    fn carving_zero_faces_is_identity() {
        let (g, rot) = four_connected_triangulation(10, 1).unwrap();
        let (cg, crot, k) = carve_large_faces(&g, &rot, 0, 1, false).unwrap();
        assert_eq!(k, 0);
        assert_eq!(cg, g);
        for v in g.vertices() {
            assert_eq!(crot.order(v), rot.order(v));
        }
    }

    #[test]
    fn touching_tower_shares_exactly_one_vertex() {
        let (g, rot) = touching_carved_tower(4, 4, 7).unwrap();
        assert!(is_k_connected(&g, 4));
        let dcel = Dcel::build(&g, &rot).unwrap();
        let catalog = list_large_faces(&dcel).unwrap();
        assert_eq!(catalog.len(), 2);
        let shared = crate::cut::face_intersection(g.n(), &catalog);
        assert!(shared.is_some());
    }

    #[test]
    fn generators_are_byte_deterministic() {
        let a = carved_tower(4, 6, 2, 9).unwrap();
        let b = carved_tower(4, 6, 2, 9).unwrap();
        assert_eq!(
            crate::io::write_graph(&a.0, Some(&a.1)),
            crate::io::write_graph(&b.0, Some(&b.1))
        );
        let c = four_connected_triangulation(15, 4).unwrap();
        let d = four_connected_triangulation(15, 4).unwrap();
        assert_eq!(
            crate::io::write_graph(&c.0, Some(&c.1)),
            crate::io::write_graph(&d.0, Some(&d.1))
        );
    }

    #[test]
    fn capped_antiprism_is_four_connected_near_triangulation() {
        for k in [4usize, 5, 6] {
            let (g, rot) = capped_antiprism(k).unwrap();
            assert_eq!(g.n(), 2 * k + 1);
            assert!(is_k_connected(&g, 4), "capped_antiprism({k})");
            let dcel = Dcel::build(&g, &rot).unwrap();
            let catalog = list_large_faces(&dcel).unwrap();
            assert_eq!(catalog.len(), 1);
            assert_eq!(catalog.face(0).len(), k);
        }
    }
}
