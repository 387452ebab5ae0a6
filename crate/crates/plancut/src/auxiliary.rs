//! The auxiliary triangulation: one apex vertex inside every large face,
//! adjacent to the whole face boundary. Also the face-versus-cycle relations
//! (touches / inside / outside / covers / crosses), the split predicate, and
//! the unique extension of a minimal cut into the auxiliary graph.

use thiserror::Error;

use crate::dcel::{Face, FaceCatalog};
use crate::embed::{validate_embedding, RotationSystem};
use crate::graph::{Graph, SubsetArray, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuxError {
    #[error("face list inconsistent with the graph: {0}")]
    BadCatalog(String),
    #[error("sequence is not a cycle of the auxiliary graph: {0}")]
    NotACycle(String),
    #[error("cycle has a chord between {0} and {1}")]
    NotChordless(Vertex, Vertex),
    #[error("cycle vertices {0} and {1} are adjacent on it")]
    AdjacentOnCycle(Vertex, Vertex),
    #[error("vertex {0} is not on the cycle")]
    NotOnCycle(Vertex),
    #[error("input set is not a minimal cut: {0}")]
    NotMinimalCut(String),
    #[error("graph: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

/// `G` plus one apex per large face. Apex ids follow the base vertices:
/// catalog face `i` gets vertex `base_n + i + 1`.
pub struct AuxiliaryGraph {
    pub graph: Graph,
    pub rotation: RotationSystem,
    base_n: usize,
}

impl AuxiliaryGraph {
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn apex(&self, face_idx: usize) -> Vertex {
        self.base_n + face_idx + 1
    }

    pub fn is_apex(&self, v: Vertex) -> bool {
        v > self.base_n
    }

    pub fn face_of_apex(&self, v: Vertex) -> usize {
        debug_assert!(self.is_apex(v));
        v - self.base_n - 1
    }

    /// Restricts a vertex set of the auxiliary graph to base vertices.
    pub fn restrict<'a>(&self, s: impl IntoIterator<Item = &'a Vertex>) -> Vec<Vertex> {
        s.into_iter()
            .copied()
            .filter(|&v| !self.is_apex(v))
            .collect()
    }
}

/// Inserts one apex into the rotation system for the face traced as
/// `boundary` (in face-walk order). Shared by the auxiliary construction and
/// the generators that cap a face.
pub(crate) fn insert_apex(
    rot: &mut Vec<Vec<Vertex>>,
    apex: Vertex,
    boundary: &[Vertex],
) {
    let len = boundary.len();
    // apex rotation is the reversed walk, so every new corner closes a triangle
    let mut apex_order = vec![boundary[0]];
    apex_order.extend(boundary[1..].iter().rev());
    while rot.len() <= apex {
        rot.push(Vec::new());
    }
    rot[apex] = apex_order;
    for i in 0..len {
        let prev = boundary[(i + len - 1) % len];
        let v = boundary[i];
        let at = rot[v]
            .iter()
            .position(|&w| w == prev)
            .expect("face predecessor must be a neighbor");
        rot[v].insert(at + 1, apex);
    }
}

/// Builds the auxiliary triangulation of a 2-connected plane graph.
pub fn build_auxiliary(
    g: &Graph,
    rot: &RotationSystem,
    catalog: &FaceCatalog,
) -> Result<AuxiliaryGraph, AuxError> {
    let n = g.n();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut orders: Vec<Vec<Vertex>> = (0..=n).map(|v| rot.order(v).to_vec()).collect();
    for (i, face) in catalog.iter().enumerate() {
        let apex = n + i + 1;
        for &w in face.vertices() {
            if w == 0 || w > n {
                return Err(AuxError::BadCatalog(format!("face vertex {w} out of range")));
            }
            edges.push((apex, w));
        }
        insert_apex(&mut orders, apex, face.vertices());
    }
    let graph = Graph::from_edges(n + catalog.len(), &edges)
        .map_err(|e| AuxError::BadCatalog(e.to_string()))?;
    let rotation = RotationSystem::new(orders);
    debug_assert_eq!(validate_embedding(&graph, &rotation), Ok(()));
    Ok(AuxiliaryGraph {
        graph,
        rotation,
        base_n: n,
    })
}

/// The five possible relations between a large face and a chordless cycle of
/// the auxiliary graph; exhaustive and mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceCycleKind {
    Touches,
    Inside,
    Outside,
    Covers,
    Crosses,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCycleRelation {
    pub kind: FaceCycleKind,
}

/// Validates that `cycle` is a simple cycle of `aux.graph` and returns a
/// membership array over the auxiliary vertex set.
fn check_cycle(aux: &AuxiliaryGraph, cycle: &[Vertex]) -> Result<SubsetArray, AuxError> {
    if cycle.len() < 3 {
        return Err(AuxError::NotACycle("fewer than three vertices".into()));
    }
    let mut on = SubsetArray::empty(aux.graph.n());
    for &v in cycle {
        if v == 0 || v > aux.graph.n() {
            return Err(AuxError::NotACycle(format!("vertex {v} out of range")));
        }
        if on.contains(v) {
            return Err(AuxError::NotACycle(format!("vertex {v} repeats")));
        }
        on.insert(v);
    }
    for i in 0..cycle.len() {
        let u = cycle[i];
        let v = cycle[(i + 1) % cycle.len()];
        if !aux.graph.has_edge(u, v) {
            return Err(AuxError::NotACycle(format!("{u} and {v} are not adjacent")));
        }
    }
    Ok(on)
}

/// Classifies the relation between large face `face_idx` and a chordless
/// cycle of the auxiliary graph.
pub fn classify_face_vs_cycle(
    aux: &AuxiliaryGraph,
    catalog: &FaceCatalog,
    face_idx: usize,
    cycle: &[Vertex],
) -> Result<FaceCycleRelation, AuxError> {
    let on_cycle = check_cycle(aux, cycle)?;
    let face = catalog.face(face_idx);
    let apex = aux.apex(face_idx);
    let hits: Vec<Vertex> = face
        .vertices()
        .iter()
        .copied()
        .filter(|&v| on_cycle.contains(v))
        .collect();

    if on_cycle.contains(apex) {
        // the apex's cycle neighbors are face vertices; covering means the
        // face contributes nothing else
        let pos = cycle.iter().position(|&v| v == apex).unwrap();
        let len = cycle.len();
        let x = cycle[(pos + len - 1) % len];
        let y = cycle[(pos + 1) % len];
        let covered = hits.iter().all(|&v| v == x || v == y);
        return Ok(FaceCycleRelation {
            kind: if covered {
                FaceCycleKind::Covers
            } else {
                FaceCycleKind::Crosses
            },
        });
    }

    match hits.len() {
        0 => {
            // whole face in one region of the cycle
            let comps = aux.graph.components(cycle)?;
            let anchor = face.vertices()[0];
            let inside = comps
                .first()
                .map(|c| c.binary_search(&anchor).is_ok())
                .unwrap_or(false);
            Ok(FaceCycleRelation {
                kind: if inside {
                    FaceCycleKind::Inside
                } else {
                    FaceCycleKind::Outside
                },
            })
        }
        1 => Ok(FaceCycleRelation {
            kind: FaceCycleKind::Touches,
        }),
        2 => {
            let (u, v) = (hits[0], hits[1]);
            if face.adjacent_on_face(u, v) {
                if adjacent_on_cycle(cycle, u, v) {
                    Ok(FaceCycleRelation {
                        kind: FaceCycleKind::Touches,
                    })
                } else {
                    // a face edge joining non-consecutive cycle vertices
                    Err(AuxError::NotChordless(u, v))
                }
            } else {
                Ok(FaceCycleRelation {
                    kind: FaceCycleKind::Crosses,
                })
            }
        }
        _ => Ok(FaceCycleRelation {
            kind: FaceCycleKind::Crosses,
        }),
    }
}

fn adjacent_on_cycle(cycle: &[Vertex], u: Vertex, v: Vertex) -> bool {
    let len = cycle.len();
    (0..len).any(|i| {
        let (a, b) = (cycle[i], cycle[(i + 1) % len]);
        (a, b) == (u, v) || (a, b) == (v, u)
    })
}

/// Number of large faces crossing the cycle.
pub fn zeta(
    aux: &AuxiliaryGraph,
    catalog: &FaceCatalog,
    cycle: &[Vertex],
) -> Result<usize, AuxError> {
    let mut count = 0;
    for i in 0..catalog.len() {
        if classify_face_vs_cycle(aux, catalog, i, cycle)?.kind == FaceCycleKind::Crosses {
            count += 1;
        }
    }
    Ok(count)
}

/// Whether the face meets the interiors of both s-t arcs of the cycle.
pub fn splits(
    face: &Face,
    cycle: &[Vertex],
    s: Vertex,
    t: Vertex,
) -> Result<bool, AuxError> {
    let pos_s = cycle
        .iter()
        .position(|&v| v == s)
        .ok_or(AuxError::NotOnCycle(s))?;
    let pos_t = cycle
        .iter()
        .position(|&v| v == t)
        .ok_or(AuxError::NotOnCycle(t))?;
    if adjacent_on_cycle(cycle, s, t) {
        return Err(AuxError::AdjacentOnCycle(s, t));
    }
    let len = cycle.len();
    let mut hit = [false, false];
    // walk arc 0: s -> t forward; arc 1: t -> s forward
    let mut i = (pos_s + 1) % len;
    while i != pos_t {
        if face.vertices().contains(&cycle[i]) {
            hit[0] = true;
        }
        i = (i + 1) % len;
    }
    let mut i = (pos_t + 1) % len;
    while i != pos_s {
        if face.vertices().contains(&cycle[i]) {
            hit[1] = true;
        }
        i = (i + 1) % len;
    }
    Ok(hit[0] && hit[1])
}

/// Extends a minimal cut `r` of `g` to the unique minimal cut of the
/// auxiliary graph restricting to it: the apex of face `W` joins exactly when
/// `W` meets `r` in two non-adjacent vertices. The result is verified to
/// induce a chordless cycle.
pub fn extend_min_cut_to_auxiliary(
    g: &Graph,
    aux: &AuxiliaryGraph,
    catalog: &FaceCatalog,
    r: &[Vertex],
) -> Result<Vec<Vertex>, AuxError> {
    let report = crate::cut::verify_cut(g, r)?;
    if !report.is_cut || !report.minimal {
        return Err(AuxError::NotMinimalCut(format!(
            "{:?} (cut: {}, minimal: {})",
            r, report.is_cut, report.minimal
        )));
    }
    let in_r = SubsetArray::from_list(r, g.n())?;
    let mut s: Vec<Vertex> = r.to_vec();
    for (i, face) in catalog.iter().enumerate() {
        let hits: Vec<Vertex> = face
            .vertices()
            .iter()
            .copied()
            .filter(|&v| in_r.contains(v))
            .collect();
        if hits.len() == 2 && !g.has_edge(hits[0], hits[1]) {
            s.push(aux.apex(i));
        }
    }
    s.sort_unstable();

    // the extension must induce a chordless cycle in the auxiliary graph
    let in_s = SubsetArray::from_list(&s, aux.graph.n())?;
    for &v in &s {
        let inside = aux
            .graph
            .neighbors(v)
            .iter()
            .filter(|&&w| in_s.contains(w))
            .count();
        if inside != 2 {
            return Err(AuxError::NotMinimalCut(format!(
                "extension is not a chordless cycle at vertex {v}"
            )));
        }
    }
    let (induced, _) = aux.graph.induced(&s)?;
    if !induced.is_connected() {
        return Err(AuxError::NotMinimalCut(
            "extension induces a disconnected graph".into(),
        ));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcel::{list_large_faces, Dcel};
    use crate::generate;

    fn aux_of(g: &Graph, rot: &RotationSystem) -> (AuxiliaryGraph, FaceCatalog) {
        let dcel = Dcel::build(g, rot).unwrap();
        let catalog = list_large_faces(&dcel).unwrap();
        let aux = build_auxiliary(g, rot, &catalog).unwrap();
        (aux, catalog)
    }

    #[test]
    fn octahedron_auxiliary_is_identity() {
        let (g, rot) = generate::antiprism(3).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        assert_eq!(catalog.len(), 0);
        assert_eq!(aux.graph.n(), g.n());
        assert_eq!(aux.graph.m(), g.m());
    }

    #[test]
    fn antiprism_auxiliary_is_a_triangulation() {
        let (g, rot) = generate::antiprism(4).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        assert_eq!(catalog.len(), 2);
        assert_eq!(aux.graph.n(), 10);
        assert_eq!(aux.graph.m(), 24); // 3 * 10 - 6
        let dcel = Dcel::build(&aux.graph, &aux.rotation).unwrap();
        assert!((0..dcel.face_count()).all(|f| dcel.face_len(f) == 3));
    }

    #[test]
    fn cycle_auxiliary_is_octahedron_like() {
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let rot = crate::embed::embed(&g).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        assert_eq!(catalog.len(), 2);
        assert_eq!(aux.graph.n(), 6);
        assert_eq!(aux.graph.m(), 12);
        let dcel = Dcel::build(&aux.graph, &aux.rotation).unwrap();
        assert!((0..dcel.face_count()).all(|f| dcel.face_len(f) == 3));
        // added vertices form an independent set
        assert!(!aux.graph.has_edge(aux.apex(0), aux.apex(1)));
    }

    #[test]
    fn classify_touches_inside_covers() {
        let (g, rot) = generate::antiprism(4).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        let top = (0..2)
            .find(|&i| catalog.face(i).vertices().contains(&1))
            .unwrap();
        let bottom = 1 - top;
        let (a_top, a_bot) = (aux.apex(top), aux.apex(bottom));

        // bottom square as a cycle: top face entirely in the other region
        let c1 = [5, 6, 7, 8];
        assert_eq!(
            classify_face_vs_cycle(&aux, &catalog, top, &c1).unwrap().kind,
            FaceCycleKind::Inside
        );

        // covers: t1, b1, a_bot, b3, t3, a_top
        let c2 = [1, 5, a_bot, 7, 3, a_top];
        assert_eq!(
            classify_face_vs_cycle(&aux, &catalog, top, &c2).unwrap().kind,
            FaceCycleKind::Covers
        );
        assert_eq!(
            classify_face_vs_cycle(&aux, &catalog, bottom, &c2)
                .unwrap()
                .kind,
            FaceCycleKind::Covers
        );

        // touches: a face triangle meeting the top square at one vertex
        let c3 = [1, 5, 6];
        assert!(g.has_edge(1, 5) && g.has_edge(5, 6) && g.has_edge(6, 1));
        assert_eq!(
            classify_face_vs_cycle(&aux, &catalog, top, &c3).unwrap().kind,
            FaceCycleKind::Touches
        );
    }

    #[test]
    fn classify_crossing_face() {
        let (g, rot) = generate::capped_antiprism(5).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        assert_eq!(catalog.len(), 1);
        // t1, t2, t3, b4, z, b1 hits the pentagon at t1, t2, t3
        let z = 11;
        let cycle = [1, 2, 3, 9, z, 6];
        for w in [(1, 2), (2, 3), (3, 9), (9, z), (z, 6), (6, 1)] {
            assert!(g.has_edge(w.0, w.1), "{w:?}");
        }
        let rel = classify_face_vs_cycle(&aux, &catalog, 0, &cycle).unwrap();
        assert_eq!(rel.kind, FaceCycleKind::Crosses);
        assert_eq!(zeta(&aux, &catalog, &cycle).unwrap(), 1);
    }

    #[test]
    fn zeta_zero_without_large_faces() {
        let (g, rot) = generate::antiprism(3).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        assert_eq!(zeta(&aux, &catalog, &[1, 2, 3]).unwrap(), 0);
    }

    #[test]
    fn splits_examples() {
        let face_far = Face::new(vec![21, 22, 23, 24]);
        let cycle = [1, 2, 3, 4, 5, 6];
        assert!(!splits(&face_far, &cycle, 1, 4).unwrap());
        let face_one_side = Face::new(vec![2, 3, 21, 22]);
        assert!(!splits(&face_one_side, &cycle, 1, 4).unwrap());
        let face_both = Face::new(vec![2, 5, 21, 22]);
        assert!(splits(&face_both, &cycle, 1, 4).unwrap());
        assert_eq!(
            splits(&face_both, &cycle, 1, 2),
            Err(AuxError::AdjacentOnCycle(1, 2))
        );
    }

    #[test]
    fn extension_without_face_contact_is_identity() {
        let (g, rot) = generate::capped_antiprism(5).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        // N(b1): meets the pentagon in the adjacent pair {t1, t5}
        let r = g.neighbors(6).to_vec();
        let s = extend_min_cut_to_auxiliary(&g, &aux, &catalog, &r).unwrap();
        let mut expected = r.clone();
        expected.sort_unstable();
        assert_eq!(s, expected);
    }

    #[test]
    fn extension_adds_apex_for_nonadjacent_pair() {
        let (g, rot) = generate::capped_antiprism(5).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        // N(t1) = {t2, t5, b1, b2} meets the pentagon in non-adjacent {t2, t5}
        let r = g.neighbors(1).to_vec();
        let s = extend_min_cut_to_auxiliary(&g, &aux, &catalog, &r).unwrap();
        let mut expected = r.clone();
        expected.push(aux.apex(0));
        expected.sort_unstable();
        assert_eq!(s, expected);
    }

    #[test]
    fn antiprism_cut_extends_with_both_apexes() {
        let (g, rot) = generate::antiprism(4).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        let r = vec![1, 3, 5, 7];
        let s = extend_min_cut_to_auxiliary(&g, &aux, &catalog, &r).unwrap();
        assert_eq!(s, vec![1, 3, 5, 7, aux.apex(0), aux.apex(1)]);
    }

    #[test]
    fn extension_rejects_non_minimal_input() {
        let (g, rot) = generate::antiprism(4).unwrap();
        let (aux, catalog) = aux_of(&g, &rot);
        assert!(matches!(
            extend_min_cut_to_auxiliary(&g, &aux, &catalog, &[1, 2, 3, 5, 7]),
            Err(AuxError::NotMinimalCut(_))
        ));
    }
}
