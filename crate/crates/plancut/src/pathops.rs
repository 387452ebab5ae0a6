//! Path surgery: truncation against terminal sets, greedy chord removal, and
//! skipper construction over large-face shortcuts.

use thiserror::Error;

use crate::dcel::FaceCatalog;
use crate::graph::{append, AdjacencyHost, ArcHost, Graph, LookupArray, SubsetArray, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathOpsError {
    #[error("terminal sets overlap at vertex {0}")]
    SetsOverlap(Vertex),
    #[error("path does not start inside the first terminal set")]
    StartOutsideA,
    #[error("path never reaches the second terminal set")]
    NeverReachesB,
    #[error("chord removal stalled at vertex {0}: no forward neighbor on the path")]
    NoForwardProgress(Vertex),
    #[error("face sets overlap at vertex {0}")]
    FacesOverlap(Vertex),
    #[error("sequence is not a path in the host: {0}")]
    NotAPath(String),
    #[error("graph: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

/// A simple path; consecutive vertices are adjacent in whatever host the
/// constructor checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    /// Wraps a vertex sequence after validating simplicity and consecutive
    /// adjacency in `host`.
    pub fn new_in<H: AdjacencyHost>(host: &H, vertices: Vec<Vertex>) -> Result<Self, PathOpsError> {
        if vertices.is_empty() {
            return Err(PathOpsError::NotAPath("empty sequence".into()));
        }
        let mut seen = SubsetArray::empty(host.host_n());
        for &v in &vertices {
            if v == 0 || v > host.host_n() {
                return Err(PathOpsError::NotAPath(format!("vertex {v} out of range")));
            }
            if seen.contains(v) {
                return Err(PathOpsError::NotAPath(format!("vertex {v} repeats")));
            }
            seen.insert(v);
        }
        for w in vertices.windows(2) {
            let (nbrs, arcs) = host.out_neighbors(w[0]);
            if !nbrs.contains(&w[1]) && !arcs.contains(&w[1]) {
                return Err(PathOpsError::NotAPath(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { vertices })
    }

    /// Wraps without adjacency validation; for sequences produced by the
    /// algorithms themselves.
    pub fn from_vertices_unchecked(vertices: Vec<Vertex>) -> Self {
        Path { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }
}

/// Finds the subpath that starts at the last `A`-vertex seen before the first
/// `B`-vertex, and ends there: the result starts in `A`, ends in `B`, and is
/// internally disjoint from both.
pub fn truncate_path(
    a: &[Vertex],
    b: &[Vertex],
    p: &Path,
    n: usize,
) -> Result<Path, PathOpsError> {
    let in_a = SubsetArray::from_list(a, n)?;
    let in_b = SubsetArray::from_list(b, n)?;
    for &v in a {
        if in_b.contains(v) {
            return Err(PathOpsError::SetsOverlap(v));
        }
    }
    if !in_a.contains(p.first()) {
        return Err(PathOpsError::StartOutsideA);
    }
    let mut start = 0usize;
    let mut end = None;
    for (i, &v) in p.vertices().iter().enumerate() {
        if in_a.contains(v) {
            start = i;
        }
        if in_b.contains(v) {
            end = Some(i);
            break;
        }
    }
    let end = end.ok_or(PathOpsError::NeverReachesB)?;
    Ok(Path {
        vertices: p.vertices()[start..=end].to_vec(),
    })
}

/// Greedy chord removal: from each vertex jump to its neighbor furthest along
/// the path. Directed arcs in the host are usable forward only. Returns a
/// chordless path with the same endpoints, a subsequence of the input.
pub fn remove_chords<H: AdjacencyHost>(host: &H, p: &Path) -> Result<Path, PathOpsError> {
    let lookup = LookupArray::from_list(p.vertices(), host.host_n())?;
    let k = p.len();
    let mut out = vec![p.first()];
    let mut i = 1usize; // 1-based position on p
    while i < k {
        let current = p.vertices()[i - 1];
        let mut j = 0usize;
        let (nbrs, arcs) = host.out_neighbors(current);
        for &v in nbrs.iter().chain(arcs.iter()) {
            j = j.max(lookup.position(v));
        }
        if j <= i {
            return Err(PathOpsError::NoForwardProgress(current));
        }
        append(&mut out, p.vertices()[j - 1]);
        i = j;
    }
    Ok(Path { vertices: out })
}

/// A subsequence of a host path; `shortcut_faces[i]` names the large face
/// whose first-to-last shortcut arc realizes the step from `vertices[i]` to
/// `vertices[i + 1]` (or `None` for an ordinary edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipper {
    pub vertices: Vec<Vertex>,
    pub shortcut_faces: Vec<Option<usize>>,
}

/// One pass of skipper construction: add, per face, an arc from the first to
/// the last path vertex on that face, then remove chords in the extended
/// host.
pub fn path_skipper(
    g: &Graph,
    p: &Path,
    catalog: &FaceCatalog,
) -> Result<Skipper, PathOpsError> {
    // faces must be pairwise disjoint
    let mut stamp = SubsetArray::empty(g.n());
    for face in catalog.iter() {
        for &v in face.vertices() {
            if stamp.contains(v) {
                return Err(PathOpsError::FacesOverlap(v));
            }
            stamp.insert(v);
        }
    }
    skipper_pass(g, p, catalog)
}

/// Iterated skipper: reruns the single pass until it fixes, so the final
/// path meets every face in at most two (consecutive) vertices. A shortcut
/// arc can hop over another face's arc source, leaving that face with three
/// path vertices after one pass; iterating settles it. Each pass is
/// `O(n + m)` and strictly shortens the path, so this terminates.
pub fn path_skipper_stable(
    g: &Graph,
    p: &Path,
    catalog: &FaceCatalog,
) -> Result<Skipper, PathOpsError> {
    let mut skipper = path_skipper(g, p, catalog)?;
    loop {
        let current = Path::from_vertices_unchecked(skipper.vertices.clone());
        let next = skipper_pass(g, &current, catalog)?;
        if next.vertices.len() == skipper.vertices.len() {
            return Ok(next);
        }
        skipper = next;
    }
}

fn skipper_pass(g: &Graph, p: &Path, catalog: &FaceCatalog) -> Result<Skipper, PathOpsError> {
    let lookup = LookupArray::from_list(p.vertices(), g.n())?;
    let mut host = ArcHost::new(g);
    let mut arc_face: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for (idx, face) in catalog.iter().enumerate() {
        let mut first = usize::MAX;
        let mut last = 0usize;
        for &v in face.vertices() {
            let pos = lookup.position(v);
            if pos > 0 && pos < first {
                first = pos;
            }
            if pos > last {
                last = pos;
            }
        }
        // single-vertex intersections would make the arc a self-loop
        if last != 0 && first != last {
            let from = p.vertices()[first - 1];
            let to = p.vertices()[last - 1];
            host.add_arc(from, to);
            arc_face.push((from, to, idx));
        }
    }
    let out = remove_chords(&host, p)?;
    let shortcut_faces = out
        .vertices()
        .windows(2)
        .map(|w| {
            if g.has_edge(w[0], w[1]) {
                None
            } else {
                arc_face
                    .iter()
                    .find(|&&(f, t, _)| f == w[0] && t == w[1])
                    .map(|&(_, _, idx)| idx)
            }
        })
        .collect();
    Ok(Skipper {
        vertices: out.vertices().to_vec(),
        shortcut_faces,
    })
}
