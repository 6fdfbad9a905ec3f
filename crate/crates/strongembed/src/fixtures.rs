//! Reference graphs and embedding schemes used by tests, the acceptance
//! suite and the shipped example files.
//!
//! The projective-plane schemes are built constructively rather than
//! hardcoded: the icosahedron is specified by its face triangles, the
//! dodecahedron is its dual, and the antipodal quotient of each yields the
//! K6 projective triangulation and the Petersen hemi-dodecahedron. Every
//! property a fixture is trusted for is re-checked by the test suite.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::embedding::{trace_faces_oriented, EmbeddingScheme, Sign};
use crate::error::{Error, Result};
use crate::graph::{Arc, EdgeId, Graph, VertexId};

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

pub fn triangle_graph() -> Graph {
    Graph::build(&[(0, 1), (1, 2), (2, 0)]).unwrap()
}

pub fn k4_graph() -> Graph {
    Graph::build(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn k5_graph() -> Graph {
    complete_graph(5)
}

pub fn k6_graph() -> Graph {
    complete_graph(6)
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Graph::build(&edges).unwrap()
}

/// Parts {0,1,2} and {3,4,5}.
pub fn k33_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 3..6 {
            edges.push((i, j));
        }
    }
    Graph::build(&edges).unwrap()
}

/// Outer 5-cycle 0..4, spokes i-(i+5), inner pentagram.
pub fn petersen_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::build(&edges).unwrap()
}

pub fn triple_edge_graph() -> Graph {
    Graph::build(&[(0, 1), (0, 1), (0, 1)]).unwrap()
}

/// Cube: top square 0..3, bottom square 4..7, verticals.
pub fn cube_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..4 {
        edges.push((i, (i + 1) % 4));
    }
    for i in 0..4 {
        edges.push((4 + i, 4 + (i + 1) % 4));
    }
    for i in 0..4 {
        edges.push((i, 4 + i));
    }
    Graph::build(&edges).unwrap()
}

/// Triangular prism; its matching is a nontrivial 3-edge-cut.
pub fn prism_graph() -> Graph {
    Graph::build(&[
        (0, 1),
        (1, 2),
        (2, 0),
        (3, 4),
        (4, 5),
        (5, 3),
        (0, 3),
        (1, 4),
        (2, 5),
    ])
    .unwrap()
}

/// Moebius ladder on 2k vertices: cycle 0..2k-1 plus diameters.
pub fn mobius_ladder_graph(k: usize) -> Graph {
    let n = 2 * k;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
    }
    for i in 0..k {
        edges.push((i, i + k));
    }
    Graph::build(&edges).unwrap()
}

/// Two K4-minus-an-edge blocks joined by two edges; the joiners form the
/// unique 2-edge-cut of a cubic 2-connected graph.
pub fn two_block_two_cut_graph() -> Graph {
    Graph::build(&[
        // K4 on 0..3 without 2-3
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        // K4 on 4..7 without 6-7
        (4, 5),
        (4, 6),
        (4, 7),
        (5, 6),
        (5, 7),
        // joiners
        (2, 6),
        (3, 7),
    ])
    .unwrap()
}

/// K3,3 with two edges subdivided and two chords closing a 4-cycle on the
/// subdivision vertices, so that deleting the 4-cycle recovers K3,3.
/// `variant` chooses the attachment of the second chain: `false` gives
/// chains 0-6-7-3 and 1-8-9-4, `true` gives 0-6-7-3 and 4-8-9-1. Both
/// are cubic, simple and projective-planar; against the toroidal
/// hamilton-face child they drive the two chord-based lift cases.
pub fn k33_expansion_parent_graph(variant: bool) -> Graph {
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 3..6 {
            if (i, j) == (0, 3) || (i, j) == (1, 4) {
                continue;
            }
            edges.push((i, j));
        }
    }
    edges.extend([(0, 6), (6, 7), (7, 3)]);
    if variant {
        edges.extend([(4, 8), (8, 9), (9, 1)]);
    } else {
        edges.extend([(1, 8), (8, 9), (9, 4)]);
    }
    edges.extend([(6, 9), (7, 8)]);
    Graph::build(&edges).unwrap()
}

// ---------------------------------------------------------------------------
// Schemes from oriented face sets
// ---------------------------------------------------------------------------

/// Builds an all-positive scheme from faces given as vertex cycles, for a
/// simple graph. Face orientations are aligned by BFS so that every edge
/// is used once in each direction; rotations are then read off the face
/// corners.
pub fn scheme_from_face_cycles(g: &Graph, face_cycles: &[Vec<usize>]) -> Result<EmbeddingScheme> {
    if !g.is_simple() {
        return Err(Error::Precondition(
            "scheme_from_face_cycles requires a simple graph".into(),
        ));
    }
    let edge_between = |u: VertexId, v: VertexId| -> Result<EdgeId> {
        g.edges_between(u, v)
            .first()
            .copied()
            .ok_or_else(|| Error::Precondition(format!("no edge {u}-{v} for face cycle")))
    };
    // Faces as arc walks under their given orientation.
    let mut walks: Vec<Vec<Arc>> = Vec::new();
    for cycle in face_cycles {
        let mut walk = Vec::new();
        for i in 0..cycle.len() {
            let u = VertexId(cycle[i]);
            let v = VertexId(cycle[(i + 1) % cycle.len()]);
            let e = edge_between(u, v)?;
            walk.push(g.arc_from(e, u));
        }
        walks.push(walk);
    }
    // Align orientations: faces sharing an edge must traverse it oppositely.
    let mut users: BTreeMap<EdgeId, Vec<(usize, bool)>> = BTreeMap::new();
    for (fi, walk) in walks.iter().enumerate() {
        for a in walk {
            users.entry(a.edge).or_default().push((fi, a.forward));
        }
    }
    for (e, u) in &users {
        if u.len() != 2 {
            return Err(Error::NotDoubleCover(*e, u.len()));
        }
    }
    let mut flip: Vec<Option<bool>> = vec![None; walks.len()];
    for start in 0..walks.len() {
        if flip[start].is_some() {
            continue;
        }
        flip[start] = Some(false);
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(f) = queue.pop_front() {
            for a in &walks[f] {
                let u = &users[&a.edge];
                let (of, odir) = if u[0] == (f, a.forward) { u[1] } else { u[0] };
                if of == f {
                    // Both usages inside one face must already be opposite.
                    if odir == a.forward {
                        return Err(Error::Precondition(
                            "face uses an edge twice in the same direction".into(),
                        ));
                    }
                    continue;
                }
                // Actual directions are stored direction xor flip; the two
                // traversals of an edge must be opposite.
                let want = flip[f].unwrap() ^ (a.forward == odir);
                match flip[of] {
                    None => {
                        flip[of] = Some(want);
                        queue.push_back(of);
                    }
                    Some(have) => {
                        if have != want {
                            return Err(Error::Precondition(
                                "face set is not compatibly orientable".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    let oriented: Vec<Vec<Arc>> = walks
        .iter()
        .zip(flip.iter())
        .map(|(w, f)| {
            if f.unwrap() {
                w.iter().rev().map(|a| a.reversed()).collect()
            } else {
                w.clone()
            }
        })
        .collect();
    let vertices: BTreeSet<VertexId> = g.vertices().collect();
    let rotation = crate::embedding::rotations_from_faces(g, &vertices, &oriented)?;
    EmbeddingScheme::positive(g.clone(), rotation)
}

// ---------------------------------------------------------------------------
// Platonic schemes and antipodal quotients
// ---------------------------------------------------------------------------

/// Icosahedron: poles 0 (north) and 1 (south), upper pentagon 2..6,
/// lower pentagon 7..11, specified by its twenty triangles.
pub fn icosahedron() -> EmbeddingScheme {
    let a = |i: usize| 2 + i % 5;
    let b = |i: usize| 7 + i % 5;
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((0, a(i)));
    }
    for i in 0..5 {
        edges.push((1, b(i)));
    }
    for i in 0..5 {
        edges.push((a(i), a(i + 1)));
    }
    for i in 0..5 {
        edges.push((b(i), b(i + 1)));
    }
    for i in 0..5 {
        edges.push((a(i), b(i)));
    }
    for i in 0..5 {
        edges.push((a(i + 1), b(i)));
    }
    let g = Graph::build(&edges).unwrap();
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, a(i), a(i + 1)]);
        faces.push(vec![a(i), b(i), a(i + 1)]);
        faces.push(vec![b(i), a(i + 1), b(i + 1)]);
        faces.push(vec![1, b(i), b(i + 1)]);
    }
    scheme_from_face_cycles(&g, &faces).expect("icosahedron face set is consistent")
}

/// Antipodal automorphism of [`icosahedron`]: swaps the poles and maps
/// each upper vertex to the opposite lower vertex.
pub fn icosahedron_antipode() -> BTreeMap<VertexId, VertexId> {
    let mut sigma = BTreeMap::new();
    sigma.insert(VertexId(0), VertexId(1));
    sigma.insert(VertexId(1), VertexId(0));
    for i in 0..5 {
        let ai = VertexId(2 + i);
        let bi2 = VertexId(7 + (i + 2) % 5);
        sigma.insert(ai, bi2);
        sigma.insert(bi2, ai);
    }
    sigma
}

/// Dual scheme of an orientable scheme without degree-1 faces. Dual
/// vertex `i` is primal face `i` (in the canonical oriented order); dual
/// edge ids equal primal edge ids.
pub fn dual_scheme(s: &EmbeddingScheme) -> Result<(EmbeddingScheme, Vec<BTreeSet<VertexId>>)> {
    let faces = trace_faces_oriented(s)?;
    let g = s.graph();
    // Which directed face uses each arc.
    let mut face_of_arc: BTreeMap<Arc, usize> = BTreeMap::new();
    for (fi, walk) in faces.iter().enumerate() {
        for &a in &walk.arcs {
            face_of_arc.insert(a, fi);
        }
    }
    let mut pairs = Vec::new();
    for e in g.edges() {
        let f1 = face_of_arc[&Arc::new(e, true)];
        let f2 = face_of_arc[&Arc::new(e, false)];
        if f1 == f2 {
            return Err(Error::Precondition(
                "dual would have a loop (an edge with the same face on both sides)".into(),
            ));
        }
        pairs.push((f1, f2));
    }
    let dual_graph = Graph::build(&pairs)?;
    let rotation: BTreeMap<VertexId, Vec<EdgeId>> = faces
        .iter()
        .enumerate()
        .map(|(fi, walk)| (VertexId(fi), walk.arcs.iter().map(|a| a.edge).collect()))
        .collect();
    let dual = EmbeddingScheme::positive(dual_graph, rotation)?;
    let vertex_sets = faces.iter().map(|w| w.vertex_set(g)).collect();
    Ok((dual, vertex_sets))
}

/// Dodecahedron as the dual of the icosahedron, together with its
/// antipodal automorphism.
pub fn dodecahedron_with_antipode() -> (EmbeddingScheme, BTreeMap<VertexId, VertexId>) {
    let ico = icosahedron();
    let sigma = icosahedron_antipode();
    let (dual, face_vertex_sets) = dual_scheme(&ico).expect("icosahedron dual");
    // The antipode permutes faces by acting on their vertex sets.
    let index_of: BTreeMap<&BTreeSet<VertexId>, usize> = face_vertex_sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut dual_sigma = BTreeMap::new();
    for (fi, vs) in face_vertex_sets.iter().enumerate() {
        let image: BTreeSet<VertexId> = vs.iter().map(|v| sigma[v]).collect();
        let fj = *index_of
            .get(&image)
            .expect("antipode permutes icosahedron faces");
        dual_sigma.insert(VertexId(fi), VertexId(fj));
    }
    (dual, dual_sigma)
}

/// Quotient of an all-positive simple scheme by a fixed-point-free,
/// orientation-reversing involutive automorphism. Vertices keep the
/// smaller id of their orbit; an edge is negative exactly when it joins a
/// kept representative to a non-representative, which makes the input the
/// orientable double cover of the output.
pub fn antipodal_quotient(
    s: &EmbeddingScheme,
    sigma: &BTreeMap<VertexId, VertexId>,
) -> Result<EmbeddingScheme> {
    let g = s.graph();
    if !s.is_all_positive() {
        return Err(Error::Precondition("quotient input must be all-positive".into()));
    }
    if !g.is_simple() {
        return Err(Error::Precondition("quotient input must be simple".into()));
    }
    for v in g.vertices() {
        let w = *sigma
            .get(&v)
            .ok_or_else(|| Error::Precondition(format!("sigma undefined at {v}")))?;
        if w == v {
            return Err(Error::Precondition(format!("sigma fixes vertex {v}")));
        }
        if sigma[&w] != v {
            return Err(Error::Precondition("sigma is not an involution".into()));
        }
    }
    let edge_image = |e: EdgeId| -> Result<EdgeId> {
        let (u, v) = g.ends(e);
        g.edges_between(sigma[&u], sigma[&v])
            .first()
            .copied()
            .ok_or_else(|| Error::Precondition("sigma is not an automorphism".into()))
    };
    // Orbit representatives.
    let vrep = |v: VertexId| -> VertexId { v.min(sigma[&v]) };
    let mut erep: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for e in g.edges() {
        let img = edge_image(e)?;
        if img == e {
            return Err(Error::Precondition(format!("sigma fixes edge {e}")));
        }
        erep.insert(e, e.min(img));
    }
    let mut rep_edges: Vec<EdgeId> = erep.values().copied().collect();
    rep_edges.sort();
    rep_edges.dedup();
    let new_id: BTreeMap<EdgeId, EdgeId> = rep_edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, EdgeId(i)))
        .collect();

    let mut pairs = Vec::new();
    let mut signature = Vec::new();
    for &e in &rep_edges {
        let (u, v) = g.ends(e);
        pairs.push((vrep(u).0, vrep(v).0));
        // Sheet of an endpoint: representative = sheet 0.
        let same_sheet = (vrep(u) == u) == (vrep(v) == v);
        signature.push(if same_sheet { Sign::Plus } else { Sign::Minus });
    }
    let qg = Graph::build(&pairs)?;
    let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for v in g.vertices() {
        if vrep(v) != v {
            continue;
        }
        let rot: Vec<EdgeId> = s.rotation(v).iter().map(|e| new_id[&erep[e]]).collect();
        rotation.insert(v, rot);
    }
    EmbeddingScheme::new(qg, rotation, signature)
}

/// Renumbers vertices to 0..n-1 (sorted order of old ids).
pub fn renumber_vertices(s: &EmbeddingScheme) -> EmbeddingScheme {
    let g = s.graph();
    let map: BTreeMap<VertexId, usize> = g
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let pairs: Vec<(usize, usize)> = g
        .edges()
        .map(|e| {
            let (u, v) = g.ends(e);
            (map[&u], map[&v])
        })
        .collect();
    let ng = Graph::build(&pairs).unwrap();
    let rotation: BTreeMap<VertexId, Vec<EdgeId>> = s
        .rotations()
        .iter()
        .map(|(v, rot)| (VertexId(map[v]), rot.clone()))
        .collect();
    EmbeddingScheme::new(ng, rotation, s.signature().to_vec()).unwrap()
}

/// Petersen hemi-dodecahedron: the projective-plane embedding with six
/// pentagonal faces, as the antipodal quotient of the dodecahedron.
pub fn petersen_projective() -> EmbeddingScheme {
    let (dodeca, sigma) = dodecahedron_with_antipode();
    let q = antipodal_quotient(&dodeca, &sigma).expect("dodecahedron quotient");
    renumber_vertices(&q)
}

/// K6 triangulation of the projective plane (ten triangular faces), as
/// the antipodal quotient of the icosahedron.
pub fn k6_projective() -> EmbeddingScheme {
    let q = antipodal_quotient(&icosahedron(), &icosahedron_antipode())
        .expect("icosahedron quotient");
    renumber_vertices(&q)
}

/// K5 on the projective plane: K6 with one vertex deleted (five triangles
/// plus one pentagonal face).
pub fn k5_projective() -> EmbeddingScheme {
    let k6 = k6_projective();
    let last = k6.graph().vertices().last().unwrap();
    let mut loose = crate::embedding::LooseScheme::from_scheme(&k6);
    loose.delete_vertex(last);
    let (s, _) = loose.freeze().expect("K6 minus a vertex");
    renumber_vertices(&s)
}

// ---------------------------------------------------------------------------
// Searched schemes
// ---------------------------------------------------------------------------

/// Exhaustive search for a projective-planar closed 2-cell scheme of a
/// cubic graph: two rotations per vertex, signs over the cotree of a BFS
/// spanning tree. Deterministic (first hit in lexicographic order).
pub fn search_cubic_projective(g: &Graph) -> Option<EmbeddingScheme> {
    g.require_cubic().ok()?;
    if !g.is_connected() {
        return None;
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    // BFS spanning tree from the smallest vertex.
    let mut tree: BTreeSet<EdgeId> = BTreeSet::new();
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(verts[0]);
    queue.push_back(verts[0]);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident_edges(v) {
            let w = g.other_end(e, v);
            if seen.insert(w) {
                tree.insert(e);
                queue.push_back(w);
            }
        }
    }
    let cotree: Vec<EdgeId> = g.edges().filter(|e| !tree.contains(e)).collect();
    let rot_options: Vec<[Vec<EdgeId>; 2]> = verts
        .iter()
        .map(|&v| {
            let inc = g.incident_edges(v);
            let fwd = vec![inc[0], inc[1], inc[2]];
            let rev = vec![inc[0], inc[2], inc[1]];
            [fwd, rev]
        })
        .collect();

    for rot_bits in 0..(1u64 << verts.len()) {
        let rotation: BTreeMap<VertexId, Vec<EdgeId>> = verts
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, rot_options[i][(rot_bits >> i & 1) as usize].clone()))
            .collect();
        for sign_bits in 0..(1u64 << cotree.len()) {
            let mut signature = vec![Sign::Plus; g.edge_count()];
            for (i, &e) in cotree.iter().enumerate() {
                if sign_bits >> i & 1 == 1 {
                    signature[e.0] = Sign::Minus;
                }
            }
            let s = EmbeddingScheme::new(g.clone(), rotation.clone(), signature).ok()?;
            if let Ok(id) = crate::embedding::surface_id(&s) {
                if id.is_projective_plane()
                    && crate::embedding::is_closed_2cell(&s).unwrap_or(false)
                {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// K3,3 in the projective plane (closed 2-cell, four faces).
pub fn k33_projective() -> EmbeddingScheme {
    search_cubic_projective(&k33_graph()).expect("K3,3 is projective-planar")
}

/// The toroidal closed 2-cell embedding of K3,3 whose three faces are all
/// hamilton cycles.
pub fn k33_toroidal() -> EmbeddingScheme {
    let g = k33_graph();
    let faces = vec![
        vec![0, 3, 1, 4, 2, 5],
        vec![0, 4, 1, 5, 2, 3],
        vec![0, 5, 1, 3, 2, 4],
    ];
    scheme_from_face_cycles(&g, &faces).expect("hamilton cycle double cover of K3,3")
}

// ---------------------------------------------------------------------------
// Small schemes
// ---------------------------------------------------------------------------

/// 2-vertex triple edge on the sphere: three digon faces.
pub fn theta_sphere() -> EmbeddingScheme {
    let g = triple_edge_graph();
    let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
        (VertexId(0), vec![EdgeId(0), EdgeId(1), EdgeId(2)]),
        (VertexId(1), vec![EdgeId(0), EdgeId(2), EdgeId(1)]),
    ]
    .into_iter()
    .collect();
    EmbeddingScheme::positive(g, rotation).unwrap()
}

/// Digon on the projective plane: two parallel edges, one negative,
/// a single face of length four.
pub fn projective_digon() -> EmbeddingScheme {
    let g = Graph::build(&[(0, 1), (0, 1)]).unwrap();
    let rotation: BTreeMap<VertexId, Vec<EdgeId>> = [
        (VertexId(0), vec![EdgeId(0), EdgeId(1)]),
        (VertexId(1), vec![EdgeId(0), EdgeId(1)]),
    ]
    .into_iter()
    .collect();
    EmbeddingScheme::new(g, rotation, vec![Sign::Plus, Sign::Minus]).unwrap()
}

/// Planar K4 with the rotation used throughout the tests.
pub fn planar_k4() -> EmbeddingScheme {
    crate::embedding::planar_embed(&k4_graph()).unwrap()
}

/// Flips the smallest edge flanked by two distinct faces, turning a
/// spherical scheme into a projective-planar one.
pub fn with_crosscap(s: &EmbeddingScheme) -> Result<EmbeddingScheme> {
    let faces = crate::embedding::trace_faces(s)?;
    for e in s.graph().edges() {
        let bordering: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, w)| w.edge_set().contains(&e))
            .map(|(i, _)| i)
            .collect();
        if bordering.len() == 2 {
            return Ok(crate::surgery::insert_crosscap_on_edge(s, e)?);
        }
    }
    Err(Error::Precondition(
        "no edge with two distinct flanking faces".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{is_closed_2cell, representativity, surface_id, trace_faces};

    #[test]
    fn icosahedron_is_a_spherical_triangulation() {
        let s = icosahedron();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 20);
        assert!(faces.iter().all(|f| f.len() == 3));
        let id = surface_id(&s).unwrap();
        assert_eq!(id.euler_characteristic, 2);
        assert!(id.orientable);
        assert!(is_closed_2cell(&s).unwrap());
    }

    #[test]
    fn dodecahedron_is_a_spherical_pentagonal_map() {
        let (d, sigma) = dodecahedron_with_antipode();
        let faces = trace_faces(&d).unwrap();
        assert_eq!(d.graph().vertex_count(), 20);
        assert_eq!(d.graph().edge_count(), 30);
        assert_eq!(faces.len(), 12);
        assert!(faces.iter().all(|f| f.len() == 5));
        assert_eq!(surface_id(&d).unwrap().euler_characteristic, 2);
        // Fixed-point-free involution.
        for (v, w) in &sigma {
            assert_ne!(v, w);
            assert_eq!(sigma[w], *v);
        }
    }

    #[test]
    fn petersen_fixture_is_the_hemi_dodecahedron() {
        let s = petersen_projective();
        assert_eq!(s.graph().vertex_count(), 10);
        assert_eq!(s.graph().edge_count(), 15);
        assert!(s.graph().is_cubic());
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 5));
        let id = surface_id(&s).unwrap();
        assert!(id.is_projective_plane());
        assert!(is_closed_2cell(&s).unwrap());
        assert_eq!(representativity(&s).unwrap(), 3);
    }

    #[test]
    fn petersen_fixture_graph_is_petersen() {
        // 3-regular, girth 5, 10 vertices, 15 edges: that is Petersen.
        let s = petersen_projective();
        let g = s.graph();
        assert!(g.is_cubic());
        assert!(crate::graph::find_short_cycles(g, 4).is_empty());
        assert_eq!(g.vertex_count(), 10);
    }

    #[test]
    fn k6_fixture_is_a_projective_triangulation() {
        let s = k6_projective();
        assert_eq!(s.graph().vertex_count(), 6);
        assert_eq!(s.graph().edge_count(), 15);
        assert!(s.graph().is_simple());
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 10);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert!(surface_id(&s).unwrap().is_projective_plane());
        assert!(is_closed_2cell(&s).unwrap());
        assert_eq!(representativity(&s).unwrap(), 3);
    }

    #[test]
    fn k5_fixture_is_projective() {
        let s = k5_projective();
        assert_eq!(s.graph().vertex_count(), 5);
        assert_eq!(s.graph().edge_count(), 10);
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 6);
        assert!(surface_id(&s).unwrap().is_projective_plane());
        assert!(is_closed_2cell(&s).unwrap());
        let mut lens: Vec<usize> = faces.iter().map(|f| f.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![3, 3, 3, 3, 3, 5]);
    }

    #[test]
    fn k33_projective_fixture() {
        let s = k33_projective();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 4);
        assert!(surface_id(&s).unwrap().is_projective_plane());
        assert!(is_closed_2cell(&s).unwrap());
        let mut lens: Vec<usize> = faces.iter().map(|f| f.len()).collect();
        lens.sort();
        assert_eq!(lens.iter().sum::<usize>(), 18);
    }

    #[test]
    fn k33_toroidal_fixture_has_three_hamilton_faces() {
        let s = k33_toroidal();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.len() == 6));
        let id = surface_id(&s).unwrap();
        assert_eq!(id.euler_characteristic, 0);
        assert!(id.orientable);
        assert!(is_closed_2cell(&s).unwrap());
    }

    #[test]
    fn crosscap_helper_drops_chi_by_one() {
        let s = planar_k4();
        let t = with_crosscap(&s).unwrap();
        let id = surface_id(&t).unwrap();
        assert_eq!(id.euler_characteristic, 1);
        assert!(!id.orientable);
    }
}
