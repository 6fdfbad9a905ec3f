//! Face tracing for signed rotation systems.
//!
//! The tracer walks states `(arc, s)` where `s` is the local orientation
//! carried along the walk. Arriving at the head `v` of an arc on edge `e`,
//! the next edge is the rotation successor of `e` at `v` when `s` is
//! positive and the predecessor when `s` is negative; traversing the next
//! edge `f` multiplies `s` by the signature of `f`.
//!
//! Worked example: the 2-vertex triple edge with rotations
//! `u: (e1 e2 e3)`, `v: (e1 e3 e2)` and all signs positive. Starting at
//! `(e1: u->v, +)` the successor of `e1` at `v` is `e3`, giving
//! `(e3: v->u, +)`; at `u` the successor of `e3` is `e1`, closing the digon
//! face `(e1, e3)`. The other faces are `(e3, e2)` and `(e2, e1)`, so the
//! scheme is a sphere: chi = 2 - 3 + 3 = 2.
//!
//! Each state is used exactly once across all orbits, and orbits come in
//! mirror pairs `(a, s) <-> (reversed a, -s)` describing the two traversal
//! directions of one face; one representative per pair is kept.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Arc, Graph, VertexId};

use super::{EmbeddingScheme, Sign, SurfaceId};

/// A closed walk bounding a face, stored in canonical rotation
/// (lexicographically least arc sequence among all rotations).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FacialWalk {
    pub arcs: Vec<Arc>,
}

impl FacialWalk {
    pub fn new(arcs: Vec<Arc>) -> FacialWalk {
        FacialWalk {
            arcs: canonical_rotation(&arcs),
        }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Induced cyclic vertex sequence; `vertices()[i]` is the source of
    /// `arcs[i]`.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.arcs.iter().map(|&a| g.arc_source(a)).collect()
    }

    pub fn edge_ids(&self) -> Vec<crate::graph::EdgeId> {
        self.arcs.iter().map(|a| a.edge).collect()
    }

    pub fn vertex_set(&self, g: &Graph) -> BTreeSet<VertexId> {
        self.vertices(g).into_iter().collect()
    }

    pub fn edge_set(&self) -> BTreeSet<crate::graph::EdgeId> {
        self.edge_ids().into_iter().collect()
    }

    /// True when the walk is a cycle: no repeated vertex.
    pub fn is_cycle(&self, g: &Graph) -> bool {
        let vs = self.vertices(g);
        let set: BTreeSet<VertexId> = vs.iter().copied().collect();
        set.len() == vs.len()
    }

    /// The same face traversed in the opposite direction.
    pub fn mirrored(&self) -> FacialWalk {
        let arcs: Vec<Arc> = self.arcs.iter().rev().map(|a| a.reversed()).collect();
        FacialWalk::new(arcs)
    }

    /// Direction-independent key: the smaller of the walk and its mirror.
    pub fn undirected_key(&self) -> FacialWalk {
        let m = self.mirrored();
        if m.arcs < self.arcs {
            m
        } else {
            self.clone()
        }
    }
}

fn canonical_rotation(arcs: &[Arc]) -> Vec<Arc> {
    if arcs.is_empty() {
        return Vec::new();
    }
    let n = arcs.len();
    let mut best: Option<Vec<Arc>> = None;
    let min_arc = arcs.iter().min().copied().unwrap();
    for start in 0..n {
        if arcs[start] != min_arc {
            continue;
        }
        let rotated: Vec<Arc> = (0..n).map(|i| arcs[(start + i) % n]).collect();
        if best.as_ref().map_or(true, |b| rotated < *b) {
            best = Some(rotated);
        }
    }
    best.unwrap()
}

/// Trace state: an arc together with the carried orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct State {
    arc: Arc,
    sign: Sign,
}

fn state_index(s: State) -> usize {
    s.arc.edge.0 * 4 + (!s.arc.forward as usize) * 2 + s.sign.is_negative() as usize
}

fn step(scheme: &EmbeddingScheme, s: State) -> State {
    let g = scheme.graph();
    let v = g.arc_target(s.arc);
    let next_edge = match s.sign {
        Sign::Plus => scheme.rotation_successor(v, s.arc.edge),
        Sign::Minus => scheme.rotation_predecessor(v, s.arc.edge),
    };
    let arc = g.arc_from(next_edge, v);
    State {
        arc,
        sign: s.sign * scheme.sign(next_edge),
    }
}

// The same edge-side traversed the other way. The carried orientation is
// measured at the arc head, so reversing also picks up the edge's twist:
// M(a, s) = (reversed a, -s * sign(a)).  M conjugates the step map to its
// inverse, which is what pairs the two traversal directions of a face.
fn mirror(scheme: &EmbeddingScheme, s: State) -> State {
    State {
        arc: s.arc.reversed(),
        sign: (s.sign * scheme.sign(s.arc.edge)).flipped(),
    }
}

/// Traces all facial walks. Deterministic canonical order; every directed
/// edge-side used exactly once across the walks, so the walk lengths sum
/// to `2 |E|`.
pub fn trace_faces(scheme: &EmbeddingScheme) -> Result<Vec<FacialWalk>> {
    Ok(trace_internal(scheme)?.faces)
}

struct Traced {
    faces: Vec<FacialWalk>,
    orbits: Vec<Vec<State>>,
    /// Face index (into `faces`) of each orbit.
    orbit_face: Vec<usize>,
}

fn trace_internal(scheme: &EmbeddingScheme) -> Result<Traced> {
    if !scheme.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let orbits = trace_orbits(scheme)?;
    // Pair each orbit with its mirror orbit and keep one face per pair.
    let m = scheme.graph().edge_count();
    let mut orbit_of = vec![usize::MAX; 4 * m];
    for (oi, orbit) in orbits.iter().enumerate() {
        for &st in orbit {
            orbit_of[state_index(st)] = oi;
        }
    }
    let mut keyed: Vec<(FacialWalk, usize, usize)> = Vec::new();
    for (oi, orbit) in orbits.iter().enumerate() {
        let partner = orbit_of[state_index(mirror(scheme, orbit[0]))];
        if partner == oi {
            return Err(Error::Internal(
                "face orbit is its own mirror; invalid scheme state".into(),
            ));
        }
        debug_assert!(orbit
            .iter()
            .all(|&st| orbit_of[state_index(mirror(scheme, st))] == partner));
        if oi < partner {
            let walk = FacialWalk::new(orbit.iter().map(|s| s.arc).collect());
            keyed.push((walk.undirected_key(), oi, partner));
        }
    }
    keyed.sort();
    let mut faces = Vec::with_capacity(keyed.len());
    let mut orbit_face = vec![usize::MAX; orbits.len()];
    for (fi, (walk, oi, partner)) in keyed.into_iter().enumerate() {
        orbit_face[oi] = fi;
        orbit_face[partner] = fi;
        faces.push(walk);
    }
    let total: usize = faces.iter().map(|f| f.len()).sum();
    if total != 2 * m {
        return Err(Error::Internal(format!(
            "face walk lengths sum to {total}, expected {}",
            2 * m
        )));
    }
    Ok(Traced {
        faces,
        orbits,
        orbit_face,
    })
}

/// Maps each rotation gap to the face occupying that corner. Gap `i` at a
/// vertex lies between `rotation[i]` and `rotation[i+1]` (cyclically);
/// faces are indexed as in [`trace_faces`].
pub fn face_gap_map(
    scheme: &EmbeddingScheme,
) -> Result<BTreeMap<(VertexId, usize), usize>> {
    let traced = trace_internal(scheme)?;
    let mut map = BTreeMap::new();
    for (oi, orbit) in traced.orbits.iter().enumerate() {
        let n = orbit.len();
        for i in 0..n {
            let cur = orbit[i];
            let next = orbit[(i + 1) % n];
            let v = scheme.graph().arc_target(cur.arc);
            let rot = scheme.rotation(v);
            let gap = match cur.sign {
                Sign::Plus => rot.iter().position(|&e| e == cur.arc.edge).unwrap(),
                Sign::Minus => rot.iter().position(|&e| e == next.arc.edge).unwrap(),
            };
            let face = traced.orbit_face[oi];
            if let Some(&prev) = map.get(&(v, gap)) {
                if prev != face {
                    return Err(Error::Internal(
                        "rotation gap claimed by two different faces".into(),
                    ));
                }
            } else {
                map.insert((v, gap), face);
            }
        }
    }
    Ok(map)
}

fn trace_orbits(scheme: &EmbeddingScheme) -> Result<Vec<Vec<State>>> {
    let m = scheme.graph().edge_count();
    let mut seen = vec![false; 4 * m];
    let mut orbits = Vec::new();
    for e in scheme.graph().edges() {
        for forward in [true, false] {
            for sign in [Sign::Plus, Sign::Minus] {
                let start = State {
                    arc: Arc::new(e, forward),
                    sign,
                };
                if seen[state_index(start)] {
                    continue;
                }
                let mut orbit = Vec::new();
                let mut cur = start;
                loop {
                    let idx = state_index(cur);
                    if seen[idx] {
                        return Err(Error::Internal(
                            "face tracing revisited a state mid-orbit".into(),
                        ));
                    }
                    seen[idx] = true;
                    orbit.push(cur);
                    cur = step(scheme, cur);
                    if cur == start {
                        break;
                    }
                }
                orbits.push(orbit);
            }
        }
    }
    Ok(orbits)
}

/// Directed facial walks of an orientable scheme under a single global
/// orientation: each arc of the graph is used exactly once across all
/// returned walks. The scheme is switching-normalized internally.
pub fn trace_faces_oriented(scheme: &EmbeddingScheme) -> Result<Vec<FacialWalk>> {
    if !scheme.graph().is_connected() {
        return Err(Error::Disconnected);
    }
    let normalized = scheme.oriented_form()?;
    let g = normalized.graph();
    let m = g.edge_count();
    let mut seen = vec![false; 2 * m];
    let arc_idx = |a: Arc| a.edge.0 * 2 + (!a.forward as usize);
    let mut faces = Vec::new();
    for e in g.edges() {
        for forward in [true, false] {
            let start = Arc::new(e, forward);
            if seen[arc_idx(start)] {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                seen[arc_idx(cur)] = true;
                walk.push(cur);
                let v = g.arc_target(cur);
                let next_edge = normalized.rotation_successor(v, cur.edge);
                cur = g.arc_from(next_edge, v);
                if cur == start {
                    break;
                }
            }
            faces.push(FacialWalk::new(walk));
        }
    }
    faces.sort();
    debug_assert_eq!(faces.iter().map(|f| f.len()).sum::<usize>(), 2 * m);
    Ok(faces)
}

/// Euler characteristic and orientability of the embedded surface.
pub fn surface_id(scheme: &EmbeddingScheme) -> Result<SurfaceId> {
    let faces = trace_faces(scheme)?;
    let g = scheme.graph();
    let euler_characteristic =
        g.vertex_count() as i64 - g.edge_count() as i64 + faces.len() as i64;
    Ok(SurfaceId {
        euler_characteristic,
        orientable: scheme.is_orientable(),
    })
}

/// True iff every facial walk is a cycle (no repeated vertex).
pub fn is_closed_2cell(scheme: &EmbeddingScheme) -> Result<bool> {
    let faces = trace_faces(scheme)?;
    Ok(faces.iter().all(|f| f.is_cycle(scheme.graph())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::EmbeddingScheme;
    use crate::graph::{test_graphs, EdgeId, Graph};
    use std::collections::BTreeMap;

    fn planar_k4() -> EmbeddingScheme {
        let g = test_graphs::k4();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0), EdgeId(1), EdgeId(2)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(4), EdgeId(3)]),
            (VertexId(2), vec![EdgeId(1), EdgeId(3), EdgeId(5)]),
            (VertexId(3), vec![EdgeId(2), EdgeId(5), EdgeId(4)]),
        ]
        .into_iter()
        .collect();
        EmbeddingScheme::positive(g, rotation).unwrap()
    }

    pub(crate) fn theta_scheme() -> EmbeddingScheme {
        let g = test_graphs::triple_edge();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0), EdgeId(1), EdgeId(2)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(2), EdgeId(1)]),
        ]
        .into_iter()
        .collect();
        EmbeddingScheme::positive(g, rotation).unwrap()
    }

    /// Digon on the projective plane: two parallel edges, one negative.
    pub(crate) fn projective_digon() -> EmbeddingScheme {
        let g = Graph::build(&[(0, 1), (0, 1)]).unwrap();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0), EdgeId(1)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(1)]),
        ]
        .into_iter()
        .collect();
        let sig = vec![super::Sign::Plus, super::Sign::Minus];
        EmbeddingScheme::new(g, rotation, sig).unwrap()
    }

    #[test]
    fn k4_planar_has_four_triangles() {
        let s = planar_k4();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert!(is_closed_2cell(&s).unwrap());
        let id = surface_id(&s).unwrap();
        assert_eq!(id.euler_characteristic, 2);
        assert!(id.orientable);
    }

    #[test]
    fn theta_has_three_digons_on_sphere() {
        let s = theta_scheme();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.len() == 2));
        assert_eq!(surface_id(&s).unwrap().euler_characteristic, 2);
    }

    #[test]
    fn projective_digon_single_face() {
        let s = projective_digon();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 4);
        let id = surface_id(&s).unwrap();
        assert_eq!(id.euler_characteristic, 1);
        assert!(!id.orientable);
        assert!(id.is_projective_plane());
        assert!(!is_closed_2cell(&s).unwrap());
    }

    #[test]
    fn double_edge_sphere_has_two_distinct_digons() {
        // Two parallel positive edges on the sphere: two faces with the
        // same undirected edge set; mirror pairing must keep them apart.
        let g = Graph::build(&[(0, 1), (0, 1)]).unwrap();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0), EdgeId(1)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(1)]),
        ]
        .into_iter()
        .collect();
        let s = EmbeddingScheme::positive(g, rotation).unwrap();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 2);
        assert_eq!(surface_id(&s).unwrap().euler_characteristic, 2);
    }

    #[test]
    fn path_with_cut_vertex_is_not_closed_2cell() {
        let g = Graph::build(&[(0, 1), (1, 2)]).unwrap();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(1)]),
            (VertexId(2), vec![EdgeId(1)]),
        ]
        .into_iter()
        .collect();
        let s = EmbeddingScheme::positive(g, rotation).unwrap();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 4);
        assert!(!is_closed_2cell(&s).unwrap());
        assert_eq!(surface_id(&s).unwrap().euler_characteristic, 2);
    }

    #[test]
    fn switching_preserves_faces_and_surface() {
        let s = projective_digon();
        let faces = trace_faces(&s).unwrap();
        let switched = s.switched(&[VertexId(1)].into_iter().collect());
        let faces2 = trace_faces(&switched).unwrap();
        assert_eq!(faces, faces2);
        assert_eq!(
            surface_id(&s).unwrap(),
            surface_id(&switched).unwrap()
        );
    }

    #[test]
    fn oriented_trace_uses_each_arc_once() {
        let s = planar_k4();
        let faces = trace_faces_oriented(&s).unwrap();
        let mut arcs: Vec<Arc> = faces.iter().flat_map(|f| f.arcs.clone()).collect();
        arcs.sort();
        arcs.dedup();
        assert_eq!(arcs.len(), 2 * s.graph().edge_count());
        // Undirected face sets agree with the general tracer.
        let undirected: std::collections::BTreeSet<FacialWalk> =
            faces.iter().map(|f| f.undirected_key()).collect();
        let general: std::collections::BTreeSet<FacialWalk> =
            trace_faces(&s).unwrap().into_iter().collect();
        assert_eq!(undirected, general);
    }

    #[test]
    fn mirror_conjugates_step_to_inverse() {
        // M . T . M == T^{-1}, verified by running T forward on the mirror.
        for s in [planar_k4(), theta_scheme(), projective_digon()] {
            for e in s.graph().edges() {
                for forward in [true, false] {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let x = State {
                            arc: Arc::new(e, forward),
                            sign,
                        };
                        let lhs = mirror(&s, step(&s, mirror(&s, x)));
                        // lhs should be T^{-1}(x): check T(lhs) == x.
                        assert_eq!(step(&s, lhs), x);
                    }
                }
            }
        }
    }
}
