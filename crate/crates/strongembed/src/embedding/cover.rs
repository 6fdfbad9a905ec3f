//! Orientable double cover and representativity.
//!
//! The cover of a nonorientable scheme has one vertex per (vertex, sheet)
//! pair; positive edges stay within a sheet, negative edges cross sheets,
//! and sheet-1 rotations are reversed. Representativity is measured in the
//! radial (vertex-face incidence) graph of the cover: a noncontractible
//! curve through the base lifts to a path joining the two lifts of a
//! vertex, so the shortest such path gives the shortest noncontractible
//! radial cycle downstairs.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

use super::{trace_faces, EmbeddingScheme};

/// Orientable double cover of a nonorientable scheme, with the deck
/// involution and projection maps.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub scheme: EmbeddingScheme,
    base_vertex_count_hint: usize,
}

impl DoubleCover {
    /// Builds the cover. Errors if the input is orientable (the cover
    /// would be disconnected).
    pub fn new(base: &EmbeddingScheme) -> Result<DoubleCover> {
        if base.is_orientable() {
            return Err(Error::AlreadyOrientable);
        }
        let g = base.graph();
        // Lift ids: vertex v -> 2v, 2v+1; edge e -> 2e, 2e+1.
        // Lift k of edge (a, b) joins a^k to b^(k xor neg).
        let mut pairs: Vec<(usize, usize)> = vec![(0, 0); 2 * g.edge_count()];
        for e in g.edges() {
            let (a, b) = g.ends(e);
            let neg = base.sign(e).is_negative() as usize;
            for k in 0..2 {
                pairs[2 * e.0 + k] = (2 * a.0 + k, 2 * b.0 + (k ^ neg));
            }
        }
        let cover_graph = Graph::build(&pairs)?;
        let lift_at = |e: EdgeId, v: VertexId, sheet: usize| -> EdgeId {
            let (a, _) = g.ends(e);
            let neg = base.sign(e).is_negative() as usize;
            let k = if v == a { sheet } else { sheet ^ neg };
            EdgeId(2 * e.0 + k)
        };
        let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for v in g.vertices() {
            let rot0: Vec<EdgeId> = base
                .rotation(v)
                .iter()
                .map(|&e| lift_at(e, v, 0))
                .collect();
            let mut rot1: Vec<EdgeId> = base
                .rotation(v)
                .iter()
                .map(|&e| lift_at(e, v, 1))
                .collect();
            rot1.reverse();
            rotation.insert(VertexId(2 * v.0), rot0);
            rotation.insert(VertexId(2 * v.0 + 1), rot1);
        }
        let scheme = EmbeddingScheme::positive(cover_graph, rotation)?;
        debug_assert!(scheme.graph().is_connected());
        debug_assert!(scheme.is_orientable());
        Ok(DoubleCover {
            scheme,
            base_vertex_count_hint: g.vertex_count(),
        })
    }

    /// Deck involution on cover vertices: swaps the sheets.
    pub fn deck_vertex(&self, v: VertexId) -> VertexId {
        VertexId(v.0 ^ 1)
    }

    /// Deck involution on cover edges.
    pub fn deck_edge(&self, e: EdgeId) -> EdgeId {
        EdgeId(e.0 ^ 1)
    }

    /// Projection of a cover vertex to the base.
    pub fn base_vertex(&self, v: VertexId) -> VertexId {
        VertexId(v.0 / 2)
    }

    /// Projection of a cover edge to the base.
    pub fn base_edge(&self, e: EdgeId) -> EdgeId {
        EdgeId(e.0 / 2)
    }

    /// The two lifts of a base vertex.
    pub fn vertex_lifts(&self, v: VertexId) -> [VertexId; 2] {
        [VertexId(2 * v.0), VertexId(2 * v.0 + 1)]
    }

    /// The two lifts of a base edge.
    pub fn edge_lifts(&self, e: EdgeId) -> [EdgeId; 2] {
        [EdgeId(2 * e.0), EdgeId(2 * e.0 + 1)]
    }

    pub fn base_vertex_count(&self) -> usize {
        self.base_vertex_count_hint
    }
}

/// Representativity of a projective-planar scheme: the minimum number of
/// points of the graph met by a noncontractible simple closed curve.
///
/// Computed as half the length of a shortest noncontractible cycle in the
/// radial graph, found by BFS between the two lifts of each vertex in the
/// radial graph of the orientable double cover.
pub fn representativity(scheme: &EmbeddingScheme) -> Result<usize> {
    let id = super::surface_id(scheme)?;
    if id.is_sphere() {
        return Err(Error::SphereRepresentativity);
    }
    if !id.is_projective_plane() {
        return Err(Error::UnsupportedSurface {
            chi: id.euler_characteristic,
        });
    }
    let cover = DoubleCover::new(scheme)?;
    let g = cover.scheme.graph();
    let faces = trace_faces(&cover.scheme)?;

    // Radial graph: nodes 0..n are cover vertices (by dense index),
    // n..n+F are cover faces; one radial edge per vertex visit.
    let verts: Vec<VertexId> = g.vertices().collect();
    let vindex: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + faces.len()];
    for (fi, walk) in faces.iter().enumerate() {
        for v in walk.vertices(g) {
            let vi = vindex[&v];
            adj[vi].push(n + fi);
            adj[n + fi].push(vi);
        }
    }

    let bfs = |from: usize, to: usize| -> Option<usize> {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut queue = VecDeque::new();
        dist[from] = 0;
        queue.push_back(from);
        while let Some(x) = queue.pop_front() {
            if x == to {
                return Some(dist[x]);
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    };

    let mut best = usize::MAX;
    for base_v in scheme.graph().vertices() {
        let [a, b] = cover.vertex_lifts(base_v);
        if let Some(d) = bfs(vindex[&a], vindex[&b]) {
            best = best.min(d);
        }
    }
    if best == usize::MAX {
        return Err(Error::Internal(
            "no noncontractible radial cycle found on a nonorientable scheme".into(),
        ));
    }
    // Radial cycles alternate vertices and faces, so the distance is even.
    debug_assert_eq!(best % 2, 0);
    Ok(best / 2)
}

impl DoubleCover {
    /// Lifts a closed base walk through the cover by following actual
    /// cover edges, reporting whether it returns to the starting sheet.
    /// `false` means the walk is orientation-reversing (Z2 class -1).
    /// Independent of sign-product computations.
    pub fn lift_walk_stays_on_sheet(
        &self,
        base: &EmbeddingScheme,
        walk: &[crate::graph::Arc],
    ) -> Result<bool> {
        base.walk_sign(walk)?; // validates closedness
        let cg = self.scheme.graph();
        let start = self.vertex_lifts(base.graph().arc_source(walk[0]))[0];
        let mut at = start;
        for a in walk {
            let [l0, l1] = self.edge_lifts(a.edge);
            let lift = [l0, l1]
                .into_iter()
                .find(|&l| {
                    let (x, y) = cg.ends(l);
                    x == at || y == at
                })
                .ok_or_else(|| Error::Internal("walk lift left the cover".into()))?;
            at = cg.other_end(lift, at);
        }
        Ok(at == start)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{surface_id, Sign};
    use crate::graph::Graph;
    use std::collections::BTreeMap;

    fn projective_digon() -> EmbeddingScheme {
        let g = Graph::build(&[(0, 1), (0, 1)]).unwrap();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0), EdgeId(1)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(1)]),
        ]
        .into_iter()
        .collect();
        let sig = vec![Sign::Plus, Sign::Minus];
        EmbeddingScheme::new(g, rotation, sig).unwrap()
    }

    #[test]
    fn digon_cover_is_a_spherical_four_cycle() {
        let base = projective_digon();
        let cover = DoubleCover::new(&base).unwrap();
        let s = &cover.scheme;
        assert_eq!(s.graph().vertex_count(), 4);
        assert_eq!(s.graph().edge_count(), 4);
        assert!(s.is_all_positive());
        let id = surface_id(s).unwrap();
        assert_eq!(id.euler_characteristic, 2);
        assert!(id.orientable);
    }

    #[test]
    fn deck_map_is_a_fixed_point_free_involution() {
        let base = projective_digon();
        let cover = DoubleCover::new(&base).unwrap();
        for v in cover.scheme.graph().vertices() {
            assert_ne!(cover.deck_vertex(v), v);
            assert_eq!(cover.deck_vertex(cover.deck_vertex(v)), v);
        }
        for e in cover.scheme.graph().edges() {
            assert_ne!(cover.deck_edge(e), e);
            assert_eq!(cover.deck_edge(cover.deck_edge(e)), e);
        }
    }

    #[test]
    fn cover_of_orientable_scheme_is_rejected() {
        let g = Graph::build(&[(0, 1), (0, 1)]).unwrap();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0), EdgeId(1)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(1)]),
        ]
        .into_iter()
        .collect();
        let s = EmbeddingScheme::positive(g, rotation).unwrap();
        assert!(matches!(
            DoubleCover::new(&s),
            Err(Error::AlreadyOrientable)
        ));
    }

    #[test]
    fn digon_representativity_is_one() {
        assert_eq!(representativity(&projective_digon()).unwrap(), 1);
    }

    #[test]
    fn sphere_representativity_rejected() {
        let g = Graph::build(&[(0, 1), (0, 1)]).unwrap();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0), EdgeId(1)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(1)]),
        ]
        .into_iter()
        .collect();
        let s = EmbeddingScheme::positive(g, rotation).unwrap();
        assert!(matches!(
            representativity(&s),
            Err(Error::SphereRepresentativity)
        ));
    }
}
