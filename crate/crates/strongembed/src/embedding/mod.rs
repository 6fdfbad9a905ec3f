//! Signed rotation systems as the combinatorial surface model.
//!
//! An [`EmbeddingScheme`] is a graph together with a cyclic order of
//! incident edges at every vertex (the rotation) and a sign per edge (the
//! signature). This is the sole surface representation in the crate: the
//! surface itself is never stored, only its Euler characteristic and
//! orientability as derived quantities. A crosscap is not an object either;
//! inserting one on an edge is exactly a signature flip.

mod cover;
mod planar;
mod trace;

pub use cover::{representativity, DoubleCover};
pub use planar::planar_embed;
pub(crate) use planar::rotations_from_faces;
pub use trace::{
    face_gap_map, is_closed_2cell, surface_id, trace_faces, trace_faces_oriented, FacialWalk,
};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Arc, EdgeId, Graph, VertexId};

/// Edge signature value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Surface identity derived from a scheme: Euler characteristic plus
/// orientability. Genus is derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceId {
    pub euler_characteristic: i64,
    pub orientable: bool,
}

impl SurfaceId {
    pub fn genus(&self) -> i64 {
        if self.orientable {
            (2 - self.euler_characteristic) / 2
        } else {
            2 - self.euler_characteristic
        }
    }

    pub fn is_sphere(&self) -> bool {
        self.euler_characteristic == 2
    }

    pub fn is_projective_plane(&self) -> bool {
        self.euler_characteristic == 1 && !self.orientable
    }
}

impl std::fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match (self.orientable, self.euler_characteristic) {
            (true, 2) => "sphere".to_string(),
            (true, 0) => "torus".to_string(),
            (false, 1) => "projective plane".to_string(),
            (false, 0) => "Klein bottle".to_string(),
            (true, _) => format!("orientable genus {}", self.genus()),
            (false, _) => format!("nonorientable genus {}", self.genus()),
        };
        write!(f, "{} (chi = {})", name, self.euler_characteristic)
    }
}

/// Result of the orientability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orientability {
    /// Switching at this vertex set makes every signature positive.
    Orientable { switch_set: BTreeSet<VertexId> },
    /// Some cycle has negative sign product; this cotree edge witnesses it.
    Nonorientable { witness_edge: EdgeId },
}

/// A graph embedded in a surface: rotation plus signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingScheme {
    graph: Graph,
    rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    signature: Vec<Sign>,
}

impl EmbeddingScheme {
    /// Validates that the rotation lists every incident edge-end exactly
    /// once and that a sign is supplied per edge.
    pub fn new(
        graph: Graph,
        rotation: BTreeMap<VertexId, Vec<EdgeId>>,
        signature: Vec<Sign>,
    ) -> Result<EmbeddingScheme> {
        if signature.len() != graph.edge_count() {
            return Err(Error::Precondition(format!(
                "signature has {} entries for {} edges",
                signature.len(),
                graph.edge_count()
            )));
        }
        for v in graph.vertices() {
            let rot = rotation.get(&v).ok_or(Error::InvalidRotation {
                vertex: v,
                reason: "missing rotation".into(),
            })?;
            let mut expected: Vec<EdgeId> = graph.incident_edges(v).to_vec();
            let mut got: Vec<EdgeId> = rot.clone();
            expected.sort();
            got.sort();
            if expected != got {
                return Err(Error::InvalidRotation {
                    vertex: v,
                    reason: "rotation does not list the incident edges exactly once".into(),
                });
            }
        }
        if rotation.len() != graph.vertex_count() {
            let extra = rotation
                .keys()
                .find(|v| !graph.has_vertex(**v))
                .copied()
                .unwrap();
            return Err(Error::UnknownVertex(extra));
        }
        Ok(EmbeddingScheme {
            graph,
            rotation,
            signature,
        })
    }

    /// All-positive scheme with the given rotation.
    pub fn positive(graph: Graph, rotation: BTreeMap<VertexId, Vec<EdgeId>>) -> Result<Self> {
        let signature = vec![Sign::Plus; graph.edge_count()];
        EmbeddingScheme::new(graph, rotation, signature)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[&v]
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<EdgeId>> {
        &self.rotation
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signature[e.0]
    }

    pub fn signature(&self) -> &[Sign] {
        &self.signature
    }

    pub fn negative_edges(&self) -> Vec<EdgeId> {
        self.graph
            .edges()
            .filter(|&e| self.sign(e).is_negative())
            .collect()
    }

    pub fn is_all_positive(&self) -> bool {
        self.signature.iter().all(|s| *s == Sign::Plus)
    }

    /// Successor of `e` in the rotation at `v`.
    pub fn rotation_successor(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let rot = self.rotation(v);
        let i = rot
            .iter()
            .position(|&x| x == e)
            .expect("edge must be incident");
        rot[(i + 1) % rot.len()]
    }

    /// Predecessor of `e` in the rotation at `v`.
    pub fn rotation_predecessor(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let rot = self.rotation(v);
        let i = rot
            .iter()
            .position(|&x| x == e)
            .expect("edge must be incident");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// Negates the sign of one edge in place.
    pub(crate) fn flip_sign(&mut self, e: EdgeId) {
        self.signature[e.0] = self.signature[e.0].flipped();
    }

    /// Switching at a vertex negates all its incident edges. Switching
    /// never changes the embedded surface.
    pub fn switched(&self, set: &BTreeSet<VertexId>) -> EmbeddingScheme {
        let mut out = self.clone();
        for e in self.graph.edges() {
            let (u, v) = self.graph.ends(e);
            let flips = set.contains(&u) as usize + set.contains(&v) as usize;
            if flips == 1 {
                out.signature[e.0] = out.signature[e.0].flipped();
            }
        }
        out
    }

    /// Reverses every rotation; a reflection of the embedding.
    pub fn reflected(&self) -> EmbeddingScheme {
        let mut out = self.clone();
        for rot in out.rotation.values_mut() {
            rot.reverse();
        }
        out
    }

    /// Decides orientability by spanning-tree potentials: root potential
    /// `+`, propagate along tree edges, then check every cotree edge.
    pub fn orientability(&self) -> Orientability {
        let mut potential: BTreeMap<VertexId, Sign> = BTreeMap::new();
        let mut tree_edges: BTreeSet<EdgeId> = BTreeSet::new();
        let Some(root) = self.graph.vertices().next() else {
            return Orientability::Orientable {
                switch_set: BTreeSet::new(),
            };
        };
        potential.insert(root, Sign::Plus);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &e in self.graph.incident_edges(v) {
                let w = self.graph.other_end(e, v);
                if !potential.contains_key(&w) {
                    potential.insert(w, potential[&v] * self.sign(e));
                    tree_edges.insert(e);
                    queue.push_back(w);
                }
            }
        }
        for e in self.graph.edges() {
            if tree_edges.contains(&e) {
                continue;
            }
            let (u, v) = self.graph.ends(e);
            if potential[&u] * self.sign(e) * potential[&v] == Sign::Minus {
                return Orientability::Nonorientable { witness_edge: e };
            }
        }
        let switch_set = potential
            .into_iter()
            .filter(|(_, s)| s.is_negative())
            .map(|(v, _)| v)
            .collect();
        Orientability::Orientable { switch_set }
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self.orientability(), Orientability::Orientable { .. })
    }

    /// Switching-normalizes an orientable scheme to all-positive signs.
    pub fn oriented_form(&self) -> Result<EmbeddingScheme> {
        match self.orientability() {
            Orientability::Orientable { switch_set } => {
                let out = self.switched(&switch_set);
                debug_assert!(out.is_all_positive());
                Ok(out)
            }
            Orientability::Nonorientable { .. } => Err(Error::Precondition(
                "scheme is nonorientable; cannot normalize to all-positive".into(),
            )),
        }
    }

    /// Sign product along a closed walk of arcs. After switching
    /// normalization this is the Z2-homology class of the walk; on the
    /// projective plane, `Minus` means noncontractible.
    pub fn walk_sign(&self, walk: &[Arc]) -> Result<Sign> {
        if walk.is_empty() {
            return Err(Error::WalkNotClosed(0));
        }
        for (i, pair) in walk.windows(2).enumerate() {
            if self.graph.arc_target(pair[0]) != self.graph.arc_source(pair[1]) {
                return Err(Error::WalkNotClosed(i + 1));
            }
        }
        if self.graph.arc_target(*walk.last().unwrap()) != self.graph.arc_source(walk[0]) {
            return Err(Error::WalkNotClosed(walk.len()));
        }
        Ok(walk
            .iter()
            .fold(Sign::Plus, |acc, a| acc * self.sign(a.edge)))
    }
}

/// Mutable scheme with sparse ids, used to build minors. Freeze back into
/// an [`EmbeddingScheme`] (dense edge ids) with [`LooseScheme::freeze`].
#[derive(Clone, Debug)]
pub(crate) struct LooseScheme {
    pub ends: BTreeMap<EdgeId, (VertexId, VertexId)>,
    pub rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    pub signature: BTreeMap<EdgeId, Sign>,
}

impl LooseScheme {
    pub fn from_scheme(s: &EmbeddingScheme) -> LooseScheme {
        let ends: BTreeMap<EdgeId, (VertexId, VertexId)> =
            s.graph.edges().map(|e| (e, s.graph.ends(e))).collect();
        let signature = s.graph.edges().map(|e| (e, s.sign(e))).collect();
        LooseScheme {
            ends,
            rotation: s.rotation.clone(),
            signature,
        }
    }

    pub fn delete_edge(&mut self, e: EdgeId) {
        let (u, v) = self.ends.remove(&e).expect("edge exists");
        self.signature.remove(&e);
        for w in [u, v] {
            if let Some(rot) = self.rotation.get_mut(&w) {
                rot.retain(|&x| x != e);
            }
        }
    }

    pub fn delete_vertex(&mut self, v: VertexId) {
        let edges: Vec<EdgeId> = self.rotation.get(&v).cloned().unwrap_or_default();
        for e in edges {
            self.delete_edge(e);
        }
        self.rotation.remove(&v);
    }

    /// Switching at one vertex (negate all incident signs).
    pub fn switch_at(&mut self, v: VertexId) {
        let edges = self.rotation[&v].clone();
        for e in edges {
            let s = self.signature.get_mut(&e).unwrap();
            *s = s.flipped();
        }
    }

    /// Contracts a non-loop edge, absorbing the far endpoint into `keep`.
    ///
    /// If the sign is negative the far endpoint is switched first; the
    /// merged rotation splices the far vertex's rotation into `keep`'s at
    /// the position of the contracted edge. The Euler characteristic of
    /// the underlying surface is unchanged.
    pub fn contract_edge(&mut self, e: EdgeId, keep: VertexId) {
        let (a, b) = self.ends[&e];
        let gone = if a == keep {
            b
        } else {
            assert_eq!(b, keep, "keep must be an endpoint");
            a
        };
        assert_ne!(gone, keep, "cannot contract a loop");
        if self.signature[&e] == Sign::Minus {
            self.switch_at(gone);
        }
        // Parallel copies of (keep, gone) would become loops; the caller
        // must have removed them already.
        for (&f, &(x, y)) in &self.ends {
            if f != e {
                assert!(
                    !((x == keep && y == gone) || (x == gone && y == keep)),
                    "contracting {e:?} would create a loop from parallel edge {f:?}"
                );
            }
        }
        let keep_rot = self.rotation[&keep].clone();
        let gone_rot = self.rotation[&gone].clone();
        let ki = keep_rot.iter().position(|&x| x == e).unwrap();
        let gi = gone_rot.iter().position(|&x| x == e).unwrap();
        // keep's rotation after e, then gone's rotation after e.
        let mut merged = Vec::with_capacity(keep_rot.len() + gone_rot.len() - 2);
        for t in 1..keep_rot.len() {
            merged.push(keep_rot[(ki + t) % keep_rot.len()]);
        }
        for t in 1..gone_rot.len() {
            merged.push(gone_rot[(gi + t) % gone_rot.len()]);
        }
        self.rotation.insert(keep, merged);
        self.rotation.remove(&gone);
        self.ends.remove(&e);
        self.signature.remove(&e);
        // Reattach gone's remaining edges to keep.
        let mut updates = Vec::new();
        for (&f, &(x, y)) in &self.ends {
            if x == gone || y == gone {
                let nx = if x == gone { keep } else { x };
                let ny = if y == gone { keep } else { y };
                updates.push((f, (nx, ny)));
            }
        }
        for (f, ends) in updates {
            self.ends.insert(f, ends);
        }
    }

    /// Densifies edge ids; returns the scheme and `old id -> new id`.
    pub fn freeze(&self) -> Result<(EmbeddingScheme, BTreeMap<EdgeId, EdgeId>)> {
        let mut map = BTreeMap::new();
        let mut pairs = Vec::new();
        let mut signature = Vec::new();
        for (i, (&old, &(u, v))) in self.ends.iter().enumerate() {
            map.insert(old, EdgeId(i));
            pairs.push((u.0, v.0));
            signature.push(self.signature[&old]);
        }
        let vertex_ids: Vec<usize> = self.rotation.keys().map(|v| v.0).collect();
        let graph = Graph::build_with_vertices(&vertex_ids, &pairs)?;
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = self
            .rotation
            .iter()
            .map(|(&v, rot)| (v, rot.iter().map(|e| map[e]).collect()))
            .collect();
        let scheme = EmbeddingScheme::new(graph, rotation, signature)?;
        Ok((scheme, map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs;

    pub(crate) fn planar_k4_scheme() -> EmbeddingScheme {
        // Outer face (1,2,3); vertex 0 in the center.
        // Edges: 0: {0,1}, 1: {0,2}, 2: {0,3}, 3: {1,2}, 4: {1,3}, 5: {2,3}
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

    #[test]
    fn all_positive_is_orientable_with_empty_switch_set() {
        let s = planar_k4_scheme();
        match s.orientability() {
            Orientability::Orientable { switch_set } => assert!(switch_set.is_empty()),
            _ => panic!("expected orientable"),
        }
    }

    #[test]
    fn single_negative_triangle_edge_is_nonorientable() {
        let g = test_graphs::triangle();
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
            (VertexId(0), vec![EdgeId(0), EdgeId(2)]),
            (VertexId(1), vec![EdgeId(0), EdgeId(1)]),
            (VertexId(2), vec![EdgeId(1), EdgeId(2)]),
        ]
        .into_iter()
        .collect();
        let mut s = EmbeddingScheme::positive(g, rotation).unwrap();
        s.flip_sign(EdgeId(1));
        assert!(!s.is_orientable());
        // Cycle sign product is switching-invariant, so any switch keeps it
        // nonorientable.
        let switched = s.switched(&[VertexId(1)].into_iter().collect());
        assert!(!switched.is_orientable());
    }

    #[test]
    fn switched_twice_is_identity() {
        let s = planar_k4_scheme();
        let set: BTreeSet<VertexId> = [VertexId(0), VertexId(2)].into_iter().collect();
        assert_eq!(s.switched(&set).switched(&set), s);
    }

    #[test]
    fn walk_sign_closed_check() {
        let s = planar_k4_scheme();
        let g = s.graph();
        // Triangle 0-1-2 via edges 0, 3, 1.
        let walk = vec![
            g.arc_from(EdgeId(0), VertexId(0)),
            g.arc_from(EdgeId(3), VertexId(1)),
            g.arc_from(EdgeId(1), VertexId(2)),
        ];
        assert_eq!(s.walk_sign(&walk).unwrap(), Sign::Plus);
        let open = &walk[..2];
        assert!(s.walk_sign(open).is_err());
    }

    #[test]
    fn contract_edge_keeps_surface() {
        use crate::embedding::trace::surface_id;
        let s = planar_k4_scheme();
        let mut loose = LooseScheme::from_scheme(&s);
        loose.contract_edge(EdgeId(0), VertexId(0));
        let (t, _) = loose.freeze().unwrap();
        let id = surface_id(&t).unwrap();
        assert_eq!(id.euler_characteristic, 2);
        assert!(id.orientable);
        assert_eq!(t.graph().vertex_count(), 3);
        assert_eq!(t.graph().edge_count(), 5);
    }
}
