//! Brute-force ground truth on small instances: exhaustive minimal-cut
//! enumeration over bitmask subsets, plus the structural checks the rest of
//! the crate is validated against.

use thiserror::Error;

use crate::cut::{verify_cut, CutReport};
use crate::dcel::FaceCatalog;
use crate::graph::{Graph, Vertex};

/// Instances above this vertex count are refused; the subset scan is
/// exponential by design.
pub const DEFAULT_ORACLE_BOUND: usize = 14;

const HARD_LIMIT: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} vertices, above the oracle bound {1}")]
    TooLarge(usize, usize),
    #[error("vertices {0} and {1} are adjacent; no separator exists")]
    AdjacentPair(Vertex, Vertex),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("graph: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

/// Every minimal cut of the graph, canonically ordered, with full reports.
#[derive(Debug, Clone)]
pub struct MinimalCutInventory {
    pub cuts: Vec<Vec<Vertex>>,
    pub reports: Vec<CutReport>,
}

impl MinimalCutInventory {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Vertex>, &CutReport)> {
        self.cuts.iter().zip(self.reports.iter())
    }

    pub fn contains(&self, cut: &[Vertex]) -> bool {
        let mut sorted = cut.to_vec();
        sorted.sort_unstable();
        self.cuts.binary_search(&sorted).is_ok()
    }

    pub fn any_disconnected(&self) -> bool {
        self.reports.iter().any(|r| r.disconnected)
    }
}

struct MaskGraph {
    n: usize,
    adj: Vec<u32>,
    full: u32,
}

impl MaskGraph {
    fn new(g: &Graph, bound: usize) -> Result<Self, OracleError> {
        let n = g.n();
        if n > bound.min(HARD_LIMIT) {
            return Err(OracleError::TooLarge(n, bound.min(HARD_LIMIT)));
        }
        let mut adj = vec![0u32; n + 1];
        for (u, v) in g.edges() {
            adj[u] |= 1 << (v - 1);
            adj[v] |= 1 << (u - 1);
        }
        Ok(MaskGraph {
            n,
            adj,
            full: if n == 32 { u32::MAX } else { (1u32 << n) - 1 },
        })
    }

    fn bit(v: Vertex) -> u32 {
        1 << (v - 1)
    }

    /// Vertices reachable from the lowest bit of `inside`, staying inside.
    fn reach(&self, inside: u32) -> u32 {
        if inside == 0 {
            return 0;
        }
        let mut seen = inside & inside.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize + 1;
                f &= f - 1;
                next |= self.adj[v] & inside;
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Component masks of the induced subgraph on `inside`.
    fn components(&self, mut inside: u32) -> Vec<u32> {
        let mut out = Vec::new();
        while inside != 0 {
            let c = self.reach(inside);
            out.push(c);
            inside &= !c;
        }
        out
    }
}

/// Exhaustively enumerates the minimal cuts: subsets `S` with `G - S`
/// disconnected and every vertex of `S` adjacent to every component of
/// `G - S`.
pub fn enumerate_minimal_cuts(g: &Graph) -> Result<MinimalCutInventory, OracleError> {
    enumerate_minimal_cuts_bounded(g, DEFAULT_ORACLE_BOUND)
}

pub fn enumerate_minimal_cuts_bounded(
    g: &Graph,
    bound: usize,
) -> Result<MinimalCutInventory, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Precondition(
            "cuts are defined for connected graphs".into(),
        ));
    }
    let mg = MaskGraph::new(g, bound)?;
    let n = mg.n;
    let mut cuts: Vec<Vec<Vertex>> = Vec::new();
    'subsets: for mask in 1..mg.full {
        let rest = mg.full & !mask;
        if rest == 0 {
            continue;
        }
        let comps = mg.components(rest);
        if comps.len() < 2 {
            continue;
        }
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize + 1;
            m &= m - 1;
            for &c in &comps {
                if mg.adj[v] & c == 0 {
                    continue 'subsets;
                }
            }
        }
        let mut cut = Vec::with_capacity(mask.count_ones() as usize);
        for v in 1..=n {
            if mask & MaskGraph::bit(v) != 0 {
                cut.push(v);
            }
        }
        cuts.push(cut);
    }
    cuts.sort();
    let reports = cuts
        .iter()
        .map(|c| verify_cut(g, c))
        .collect::<Result<Vec<_>, _>>()?;
    debug_assert!(reports.iter().all(|r| r.minimal));
    Ok(MinimalCutInventory { cuts, reports })
}

/// True iff every minimal cut induces a connected subgraph.
pub fn is_cleavable(g: &Graph) -> Result<bool, OracleError> {
    Ok(!enumerate_minimal_cuts(g)?.any_disconnected())
}

/// Smallest s-t vertex separator size by exhaustive subset scan.
pub fn min_vertex_separator_size(g: &Graph, s: Vertex, t: Vertex) -> Result<usize, OracleError> {
    if g.has_edge(s, t) {
        return Err(OracleError::AdjacentPair(s, t));
    }
    let mg = MaskGraph::new(g, DEFAULT_ORACLE_BOUND)?;
    let (bs, bt) = (MaskGraph::bit(s), MaskGraph::bit(t));
    let mut best = usize::MAX;
    for mask in 0..=mg.full {
        if mask & (bs | bt) != 0 || (mask.count_ones() as usize) >= best {
            continue;
        }
        let rest = mg.full & !mask;
        let side = mg.reach_from(s, rest);
        if side & bt == 0 {
            best = mask.count_ones() as usize;
        }
    }
    Ok(best)
}

impl MaskGraph {
    fn reach_from(&self, v: Vertex, inside: u32) -> u32 {
        let start = MaskGraph::bit(v) & inside;
        if start == 0 {
            return 0;
        }
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize + 1;
                f &= f - 1;
                next |= self.adj[u] & inside;
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }
}

/// How a minimal cut of a near-triangulation may look: a chordless cycle
/// whose face contact is at most an edge, or a path with exactly its two
/// endpoints on the large face.
#[derive(Debug, Clone)]
pub struct ShapeReport {
    pub cuts_checked: usize,
    pub violations: Vec<(Vec<Vertex>, String)>,
}

impl ShapeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every minimal cut of a near-triangulation against the two legal
/// shapes. `catalog` must hold at most one face.
pub fn check_near_triangulation_cut_shapes(
    g: &Graph,
    catalog: &FaceCatalog,
) -> Result<ShapeReport, OracleError> {
    check_near_triangulation_cut_shapes_bounded(g, catalog, DEFAULT_ORACLE_BOUND)
}

pub fn check_near_triangulation_cut_shapes_bounded(
    g: &Graph,
    catalog: &FaceCatalog,
    bound: usize,
) -> Result<ShapeReport, OracleError> {
    if catalog.len() > 1 {
        return Err(OracleError::Precondition(format!(
            "near-triangulation expected, found {} large faces",
            catalog.len()
        )));
    }
    let face: Option<&crate::dcel::Face> = if catalog.len() == 1 {
        Some(catalog.face(0))
    } else {
        None
    };
    let inventory = enumerate_minimal_cuts_bounded(g, bound)?;
    let mut violations = Vec::new();
    for (cut, _) in inventory.iter() {
        if let Err(reason) = near_triangulation_shape(g, face, cut) {
            violations.push((cut.clone(), reason));
        }
    }
    Ok(ShapeReport {
        cuts_checked: inventory.len(),
        violations,
    })
}

fn near_triangulation_shape(
    g: &Graph,
    face: Option<&crate::dcel::Face>,
    cut: &[Vertex],
) -> Result<(), String> {
    let degrees: Vec<usize> = cut
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|w| cut.binary_search(w).is_ok())
                .count()
        })
        .collect();
    let (sub, _) = g.induced(cut).map_err(|e| e.to_string())?;
    let connected = sub.is_connected();
    let on_face: Vec<Vertex> = cut
        .iter()
        .copied()
        .filter(|&v| face.map(|f| f.vertices().contains(&v)).unwrap_or(false))
        .collect();

    let is_cycle = connected && cut.len() >= 3 && degrees.iter().all(|&d| d == 2);
    if is_cycle {
        // face contact must induce nothing, a vertex, or a single edge
        return match on_face.len() {
            0 | 1 => Ok(()),
            2 if g.has_edge(on_face[0], on_face[1]) => Ok(()),
            k => Err(format!("cycle cut meets the large face in {k} vertices")),
        };
    }
    let ends = degrees.iter().filter(|&&d| d == 1).count();
    let is_path = connected
        && ((cut.len() == 1 && degrees[0] == 0)
            || (degrees.iter().all(|&d| d <= 2) && ends == 2));
    if is_path {
        let Some(f) = face else {
            return Err("path-shaped cut in a triangulation".into());
        };
        let endpoints: Vec<Vertex> = cut
            .iter()
            .copied()
            .filter(|v| {
                degrees[cut.binary_search(v).unwrap()] <= 1
            })
            .collect();
        let endpoints_on_face = endpoints
            .iter()
            .all(|v| f.vertices().contains(v));
        if endpoints_on_face && on_face.len() == endpoints.len() {
            return Ok(());
        }
        return Err(format!(
            "path cut touches the face at {:?}, endpoints {:?}",
            on_face, endpoints
        ));
    }
    Err("cut is neither a chordless cycle nor a path".into())
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub cuts_checked: usize,
    pub large_faces: usize,
    pub max_components: usize,
}

impl BoundReport {
    /// A minimal cut always has at least one component, so the face-count
    /// bound is read as `max(k, 1)`.
    pub fn ok(&self) -> bool {
        self.max_components <= self.large_faces.max(1)
    }
}

/// Largest number of components over all minimal cuts, to compare against
/// the large-face count.
pub fn check_component_bound(
    g: &Graph,
    catalog: &FaceCatalog,
) -> Result<BoundReport, OracleError> {
    check_component_bound_bounded(g, catalog, DEFAULT_ORACLE_BOUND)
}

pub fn check_component_bound_bounded(
    g: &Graph,
    catalog: &FaceCatalog,
    bound: usize,
) -> Result<BoundReport, OracleError> {
    let inventory = enumerate_minimal_cuts_bounded(g, bound)?;
    let max_components = inventory
        .reports
        .iter()
        .map(|r| r.cut_components.len())
        .max()
        .unwrap_or(0);
    Ok(BoundReport {
        cuts_checked: inventory.len(),
        large_faces: catalog.len(),
        max_components,
    })
}

#[derive(Debug, Clone)]
pub enum StableReport {
    Checked {
        cuts_checked: usize,
        stable_cuts: Vec<Vec<Vertex>>,
    },
    SkippedPrecondition(String),
}

impl StableReport {
    pub fn ok(&self) -> bool {
        match self {
            StableReport::Checked { stable_cuts, .. } => stable_cuts.is_empty(),
            StableReport::SkippedPrecondition(_) => true,
        }
    }
}

/// Looks for edgeless minimal cuts. Only meaningful for 3-connected plane
/// graphs whose large faces are pairwise disjoint; other inputs are skipped
/// with a notice.
pub fn check_no_stable_cut(
    g: &Graph,
    catalog: &FaceCatalog,
) -> Result<StableReport, OracleError> {
    check_no_stable_cut_bounded(g, catalog, DEFAULT_ORACLE_BOUND)
}

pub fn check_no_stable_cut_bounded(
    g: &Graph,
    catalog: &FaceCatalog,
    bound: usize,
) -> Result<StableReport, OracleError> {
    if !crate::connectivity::is_k_connected(g, 3) {
        return Ok(StableReport::SkippedPrecondition(
            "graph is not 3-connected".into(),
        ));
    }
    if crate::cut::face_intersection(g.n(), catalog).is_some() {
        return Ok(StableReport::SkippedPrecondition(
            "large faces intersect".into(),
        ));
    }
    let inventory = enumerate_minimal_cuts_bounded(g, bound)?;
    let stable_cuts: Vec<Vec<Vertex>> = inventory
        .iter()
        .filter(|(cut, _)| {
            cut.iter()
                .all(|&v| {
                    g.neighbors(v)
                        .iter()
                        .all(|w| cut.binary_search(w).is_err())
                })
        })
        .map(|(cut, _)| cut.clone())
        .collect();
    Ok(StableReport::Checked {
        cuts_checked: inventory.len(),
        stable_cuts,
    })
}
