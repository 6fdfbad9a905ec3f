//! Reductions for embedded cubic graphs and the lifts that carry
//! orientable closed 2-cell embeddings back through them.
//!
//! Detection priority: parallel edges / 2-edge-cuts first, then
//! nontrivial 3-edge-cuts (which also absorb triangles in anything but
//! K4), then 4-cycles. K4 and the 2-vertex triple edge are terminal base
//! cases. Child schemes are derived from the parent scheme by deleting
//! and contracting inside the rotation system, so a projective-planar or
//! planar parent yields projective-planar or planar children.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::embedding::{
    is_closed_2cell, surface_id, trace_faces, trace_faces_oriented, EmbeddingScheme, LooseScheme,
};
use crate::error::{Error, Result};
use crate::graph::{connectivity_report, find_short_cycles, EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ReductionKind {
    TwoEdgeCut,
    ThreeEdgeCut,
    FourCycle,
}

/// Which construction of the 4-cycle lift applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FourCycleCase {
    /// Both chords inside one face (`f1 = g2` or `f2 = g1`).
    ChordsInOneFace,
    /// A handle between two distinct faces carries both chords.
    Handle,
    /// One chord in each of the two coinciding face pairs.
    ChordInEachFace,
}

/// Witness found by [`detect_reduction`].
#[derive(Clone, Debug, Serialize)]
pub enum ReductionWitness {
    TwoEdgeCut {
        cut: [EdgeId; 2],
    },
    ThreeEdgeCut {
        cut: [EdgeId; 3],
    },
    FourCycle {
        cycle: [VertexId; 4],
    },
}

impl ReductionWitness {
    pub fn kind(&self) -> ReductionKind {
        match self {
            ReductionWitness::TwoEdgeCut { .. } => ReductionKind::TwoEdgeCut,
            ReductionWitness::ThreeEdgeCut { .. } => ReductionKind::ThreeEdgeCut,
            ReductionWitness::FourCycle { .. } => ReductionKind::FourCycle,
        }
    }
}

/// A child embedded graph plus the correspondence back to the parent.
#[derive(Clone, Debug)]
pub struct ChildScheme {
    pub scheme: EmbeddingScheme,
    /// Child edge id -> parent edge id, for edges surviving the minor
    /// operations. New edges introduced by the reduction are absent.
    pub edge_to_parent: BTreeMap<EdgeId, EdgeId>,
}

/// The applied reduction: children plus everything the lift needs.
#[derive(Clone, Debug)]
pub struct AppliedReduction {
    pub kind: ReductionKind,
    pub children: Vec<ChildScheme>,
    pub detail: ReductionDetail,
    parent_edge_count: usize,
}

#[derive(Clone, Debug)]
pub enum ReductionDetail {
    TwoEdgeCut {
        /// Cut edges in the parent; `endpoints[i] = (u_i, v_i)` with
        /// `u_i` on side 0 and `v_i` on side 1.
        cut: [EdgeId; 2],
        endpoints: [(VertexId, VertexId); 2],
        /// The connector edge of each child (child ids).
        connector: [EdgeId; 2],
    },
    ThreeEdgeCut {
        cut: [EdgeId; 3],
        endpoints: [(VertexId, VertexId); 3],
        /// Contracted hub vertex of each child.
        hub: [VertexId; 2],
        /// Child ids of the three cut edges, per child, aligned with `cut`.
        cut_in_child: [[EdgeId; 3]; 2],
    },
    FourCycle {
        cycle: [VertexId; 4],
        outside: [VertexId; 4],
        /// Parent edge ids: spokes[i] joins cycle[i] to outside[i].
        spokes: [EdgeId; 4],
        /// Parent cycle edges: v1v2, v2v3, v3v4, v4v1.
        cycle_edges: [EdgeId; 4],
        /// Child edges u1u2 and u3u4.
        new_edges: [EdgeId; 2],
    },
}

/// Is this one of the hardcoded recursion floors?
pub fn is_base_case(g: &Graph) -> bool {
    let k4 = g.vertex_count() == 4 && g.edge_count() == 6 && g.is_simple() && g.is_cubic();
    let triple = g.vertex_count() == 2 && g.edge_count() == 3;
    k4 || triple
}

/// Returns the first applicable reduction in fixed priority order, or
/// `None` when the graph is simple, cyclically 4-edge-connected and free
/// of 3- and 4-cycles, or is a base case.
pub fn detect_reduction(s: &EmbeddingScheme) -> Result<Option<ReductionWitness>> {
    let g = s.graph();
    g.require_cubic()?;
    if !g.is_two_connected() {
        return Err(Error::NotTwoConnected);
    }
    if is_base_case(g) {
        return Ok(None);
    }
    let report = connectivity_report(g)?;
    if let Some(cut) = report.two_edge_cuts.first() {
        return Ok(Some(ReductionWitness::TwoEdgeCut {
            cut: [cut.edges[0], cut.edges[1]],
        }));
    }
    if let Some(cut) = report.nontrivial_three_edge_cuts.first() {
        return Ok(Some(ReductionWitness::ThreeEdgeCut {
            cut: [cut.edges[0], cut.edges[1], cut.edges[2]],
        }));
    }
    // Triangles other than K4's are covered by nontrivial 3-edge-cuts,
    // so only 4-cycles remain.
    debug_assert!(find_short_cycles(g, 3).is_empty());
    let quads = find_short_cycles(g, 4);
    if let Some(c) = quads.first() {
        return Ok(Some(ReductionWitness::FourCycle {
            cycle: [c[0], c[1], c[2], c[3]],
        }));
    }
    Ok(None)
}

/// Splits the parent scheme at the witness, producing child embedded
/// graphs with strictly fewer edges. Children are verified cubic,
/// 2-connected and embedded with Euler characteristic 1 or 2.
pub fn apply_reduction(
    s: &EmbeddingScheme,
    witness: &ReductionWitness,
) -> Result<AppliedReduction> {
    let g = s.graph();
    let applied = match witness {
        ReductionWitness::TwoEdgeCut { cut } => apply_two_cut(s, *cut)?,
        ReductionWitness::ThreeEdgeCut { cut } => apply_three_cut(s, *cut)?,
        ReductionWitness::FourCycle { cycle } => apply_four_cycle(s, *cycle)?,
    };
    for child in &applied.children {
        let cg = child.scheme.graph();
        cg.require_cubic()
            .map_err(|e| Error::Internal(format!("child not cubic: {e}")))?;
        if !cg.is_two_connected() {
            return Err(Error::Internal("child not 2-connected".into()));
        }
        if cg.edge_count() >= g.edge_count() {
            return Err(Error::Internal("child does not shrink".into()));
        }
        let id = surface_id(&child.scheme)?;
        if !(id.euler_characteristic == 2 || id.is_projective_plane()) {
            return Err(Error::Internal(format!(
                "child scheme on unexpected surface {id}"
            )));
        }
    }
    Ok(applied)
}

fn side_sets(g: &Graph, cut: &[EdgeId]) -> Result<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
    let removed: BTreeSet<EdgeId> = cut.iter().copied().collect();
    let comps = g.components_without(&removed);
    if comps.len() != 2 {
        return Err(Error::StaleStep(format!(
            "cut no longer separates into two sides ({} components)",
            comps.len()
        )));
    }
    let mut it = comps.into_iter();
    Ok((it.next().unwrap(), it.next().unwrap()))
}

/// Contracts everything of `side` onto the smallest vertex of the given
/// spanning path/tree, deleting the other internal edges first.
fn collapse_side(
    loose: &mut LooseScheme,
    g: &Graph,
    side: &BTreeSet<VertexId>,
    keep_path: &[VertexId],
    path_edges: &[EdgeId],
) {
    let keep: BTreeSet<VertexId> = keep_path.iter().copied().collect();
    let path_set: BTreeSet<EdgeId> = path_edges.iter().copied().collect();
    // Vertices off the path go first (their edges go with them).
    for &v in side {
        if !keep.contains(&v) {
            loose.delete_vertex(v);
        }
    }
    // Internal chords between path vertices.
    let chords: Vec<EdgeId> = loose
        .ends
        .iter()
        .filter(|(e, (a, b))| {
            !path_set.contains(e) && keep.contains(a) && keep.contains(b)
        })
        .map(|(&e, _)| e)
        .collect();
    for e in chords {
        loose.delete_edge(e);
    }
    // Contract the path into its first vertex.
    let root = keep_path[0];
    for &e in path_edges {
        let _ = g;
        loose.contract_edge(e, root);
    }
}

fn bfs_path_in_side(
    g: &Graph,
    side: &BTreeSet<VertexId>,
    from: VertexId,
    to: VertexId,
) -> Result<(Vec<VertexId>, Vec<EdgeId>)> {
    let mut parent: BTreeMap<VertexId, (EdgeId, VertexId)> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &e in g.incident_edges(v) {
            let w = g.other_end(e, v);
            if !side.contains(&w) || w == from || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, (e, v));
            queue.push_back(w);
        }
    }
    if from == to {
        return Ok((vec![from], Vec::new()));
    }
    if !parent.contains_key(&to) {
        return Err(Error::Internal("cut side is not connected".into()));
    }
    let mut vs = vec![to];
    let mut es = Vec::new();
    let mut at = to;
    while at != from {
        let (e, p) = parent[&at];
        es.push(e);
        vs.push(p);
        at = p;
    }
    vs.reverse();
    es.reverse();
    Ok((vs, es))
}

fn apply_two_cut(s: &EmbeddingScheme, cut: [EdgeId; 2]) -> Result<AppliedReduction> {
    let g = s.graph();
    for e in cut {
        if !g.has_edge(e) {
            return Err(Error::StaleStep(format!("cut edge {e} missing")));
        }
    }
    let (side0, side1) = side_sets(g, &cut)?;
    let pick = |e: EdgeId| -> (VertexId, VertexId) {
        let (a, b) = g.ends(e);
        if side0.contains(&a) {
            (a, b)
        } else {
            (b, a)
        }
    };
    let (u1, v1) = pick(cut[0]);
    let (u2, v2) = pick(cut[1]);
    if u1 == u2 || v1 == v2 {
        return Err(Error::Internal(
            "2-edge-cut endpoints coincide; parent not 2-connected".into(),
        ));
    }

    // Child 0 keeps side0: collapse side1 onto a v1-v2 path, then merge
    // the path into u1 so the connector lands in cut[0]'s rotation slot.
    let build = |own: &BTreeSet<VertexId>,
                 other: &BTreeSet<VertexId>,
                 a1: VertexId,
                 b1: VertexId,
                 b2: VertexId|
     -> Result<(ChildScheme, EdgeId)> {
        let mut loose = LooseScheme::from_scheme(s);
        let _ = own;
        let (pvs, pes) = bfs_path_in_side(g, other, b1, b2)?;
        collapse_side(&mut loose, g, other, &pvs, &pes);
        // The collapsed vertex b1 now has degree 2: cut[0] and cut[1].
        loose.contract_edge(cut[0], a1);
        let (scheme, map) = loose.freeze()?;
        let connector = map[&cut[1]];
        let edge_to_parent: BTreeMap<EdgeId, EdgeId> = map
            .iter()
            .filter(|(&old, _)| old != cut[1])
            .map(|(&old, &new)| (new, old))
            .collect();
        Ok((
            ChildScheme {
                scheme,
                edge_to_parent,
            },
            connector,
        ))
    };
    let (child0, conn0) = build(&side0, &side1, u1, v1, v2)?;
    let (child1, conn1) = build(&side1, &side0, v1, u1, u2)?;
    Ok(AppliedReduction {
        kind: ReductionKind::TwoEdgeCut,
        children: vec![child0, child1],
        detail: ReductionDetail::TwoEdgeCut {
            cut,
            endpoints: [(u1, v1), (u2, v2)],
            connector: [conn0, conn1],
        },
        parent_edge_count: g.edge_count(),
    })
}

fn apply_three_cut(s: &EmbeddingScheme, cut: [EdgeId; 3]) -> Result<AppliedReduction> {
    let g = s.graph();
    for e in cut {
        if !g.has_edge(e) {
            return Err(Error::StaleStep(format!("cut edge {e} missing")));
        }
    }
    let (side0, side1) = side_sets(g, &cut)?;
    let pick = |e: EdgeId| -> (VertexId, VertexId) {
        let (a, b) = g.ends(e);
        if side0.contains(&a) {
            (a, b)
        } else {
            (b, a)
        }
    };
    let endpoints = [pick(cut[0]), pick(cut[1]), pick(cut[2])];
    let us: BTreeSet<VertexId> = endpoints.iter().map(|p| p.0).collect();
    let vs: BTreeSet<VertexId> = endpoints.iter().map(|p| p.1).collect();
    if us.len() != 3 || vs.len() != 3 {
        return Err(Error::Internal(
            "nontrivial 3-edge-cut with coinciding endpoints; a 2-cut was missed".into(),
        ));
    }

    // Contract the far side onto its smallest vertex.
    let build = |other: &BTreeSet<VertexId>| -> Result<(ChildScheme, VertexId, [EdgeId; 3])> {
        let mut loose = LooseScheme::from_scheme(s);
        let root = *other.iter().min().unwrap();
        // Spanning tree of `other` by BFS.
        let mut tree_edges: Vec<EdgeId> = Vec::new();
        let mut seen: BTreeSet<VertexId> = [root].into_iter().collect();
        let mut order: Vec<VertexId> = vec![root];
        let mut queue = VecDeque::new();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident_edges(v) {
                let w = g.other_end(e, v);
                if other.contains(&w) && other.contains(&g.other_end(e, w)) && seen.insert(w) {
                    tree_edges.push(e);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        // Delete non-tree internal edges of `other`.
        let tree_set: BTreeSet<EdgeId> = tree_edges.iter().copied().collect();
        let internal: Vec<EdgeId> = loose
            .ends
            .iter()
            .filter(|(e, (a, b))| {
                !tree_set.contains(e) && other.contains(a) && other.contains(b)
            })
            .map(|(&e, _)| e)
            .collect();
        for e in internal {
            loose.delete_edge(e);
        }
        // Contract tree edges; each is incident to the growing blob in
        // BFS order.
        for &e in &tree_edges {
            loose.contract_edge(e, root);
        }
        let (scheme, map) = loose.freeze()?;
        let cut_children = [map[&cut[0]], map[&cut[1]], map[&cut[2]]];
        let edge_to_parent: BTreeMap<EdgeId, EdgeId> =
            map.iter().map(|(&old, &new)| (new, old)).collect();
        Ok((
            ChildScheme {
                scheme,
                edge_to_parent,
            },
            root,
            cut_children,
        ))
    };
    let (child0, hub0, cic0) = build(&side1)?; // keeps side0
    let (child1, hub1, cic1) = build(&side0)?; // keeps side1
    Ok(AppliedReduction {
        kind: ReductionKind::ThreeEdgeCut,
        children: vec![child0, child1],
        detail: ReductionDetail::ThreeEdgeCut {
            cut,
            endpoints,
            hub: [hub0, hub1],
            cut_in_child: [cic0, cic1],
        },
        parent_edge_count: g.edge_count(),
    })
}

fn apply_four_cycle(s: &EmbeddingScheme, cycle: [VertexId; 4]) -> Result<AppliedReduction> {
    let g = s.graph();
    for i in 0..4 {
        if !g.adjacent(cycle[i], cycle[(i + 1) % 4]) {
            return Err(Error::StaleStep("4-cycle no longer present".into()));
        }
    }
    let unique_edge = |a: VertexId, b: VertexId| -> Result<EdgeId> {
        let es = g.edges_between(a, b);
        if es.len() != 1 {
            return Err(Error::Internal(
                "4-cycle reduction requires a simple graph".into(),
            ));
        }
        Ok(es[0])
    };
    let cycle_edges = [
        unique_edge(cycle[0], cycle[1])?,
        unique_edge(cycle[1], cycle[2])?,
        unique_edge(cycle[2], cycle[3])?,
        unique_edge(cycle[3], cycle[0])?,
    ];
    let mut outside = [VertexId(0); 4];
    let mut spokes = [EdgeId(0); 4];
    let cyc_set: BTreeSet<VertexId> = cycle.iter().copied().collect();
    for i in 0..4 {
        let v = cycle[i];
        let spoke = g
            .incident_edges(v)
            .iter()
            .copied()
            .find(|&e| !cyc_set.contains(&g.other_end(e, v)))
            .ok_or_else(|| {
                Error::Precondition("4-cycle vertex has all neighbors on the cycle".into())
            })?;
        spokes[i] = spoke;
        outside[i] = g.other_end(spoke, v);
    }

    let mut loose = LooseScheme::from_scheme(s);
    // Remove the two opposite cycle edges, then smooth the paths
    // u1-v1-v2-u2 and u3-v3-v4-u4 into single edges.
    loose.delete_edge(cycle_edges[1]); // v2-v3
    loose.delete_edge(cycle_edges[3]); // v4-v1
    loose.contract_edge(spokes[0], outside[0]); // absorb v1 into u1
    loose.contract_edge(cycle_edges[0], outside[0]); // absorb v2 into u1
    loose.contract_edge(spokes[2], outside[2]); // absorb v3 into u3
    loose.contract_edge(cycle_edges[2], outside[2]); // absorb v4 into u3
    let (scheme, map) = loose.freeze()?;
    let new_edges = [map[&spokes[1]], map[&spokes[3]]];
    let edge_to_parent: BTreeMap<EdgeId, EdgeId> = map
        .iter()
        .filter(|(&old, _)| old != spokes[1] && old != spokes[3])
        .map(|(&old, &new)| (new, old))
        .collect();
    Ok(AppliedReduction {
        kind: ReductionKind::FourCycle,
        children: vec![ChildScheme {
            scheme,
            edge_to_parent,
        }],
        detail: ReductionDetail::FourCycle {
            cycle,
            outside,
            spokes,
            cycle_edges,
            new_edges,
        },
        parent_edge_count: g.edge_count(),
    })
}

// ---------------------------------------------------------------------------
// Lifts
// ---------------------------------------------------------------------------

/// Verifies an orientable closed 2-cell embedding of the expected graph.
pub fn verify_ocze(scheme: &EmbeddingScheme, expected: &Graph) -> Result<()> {
    if scheme.graph() != expected {
        return Err(Error::Internal(
            "lift produced a scheme of the wrong graph".into(),
        ));
    }
    if !scheme.is_orientable() {
        return Err(Error::Internal("lift output is nonorientable".into()));
    }
    if !is_closed_2cell(scheme)? {
        return Err(Error::Internal("lift output is not closed 2-cell".into()));
    }
    let faces = trace_faces(scheme)?;
    let total: usize = faces.iter().map(|f| f.len()).sum();
    if total != 2 * expected.edge_count() {
        return Err(Error::Internal("face walks do not double-cover edges".into()));
    }
    Ok(())
}

/// Result of a lift, recording whether a child was reflected and which
/// 4-cycle case applied.
#[derive(Clone, Debug)]
pub struct LiftOutcome {
    pub scheme: EmbeddingScheme,
    pub reflected_child: bool,
    pub four_cycle_case: Option<FourCycleCase>,
}

fn check_children(step: &AppliedReduction, children_ocze: &[EmbeddingScheme]) -> Result<()> {
    if children_ocze.len() != step.children.len() {
        return Err(Error::StaleStep("wrong number of child embeddings".into()));
    }
    for (child, ocze) in step.children.iter().zip(children_ocze) {
        if ocze.graph() != child.scheme.graph() {
            return Err(Error::StaleStep(
                "child embedding is not on the child graph".into(),
            ));
        }
        verify_ocze(ocze, child.scheme.graph())
            .map_err(|e| Error::Precondition(format!("child is not a verified OCZE: {e}")))?;
    }
    Ok(())
}

/// Splices two child embeddings along a 2-edge-cut: the connector slots
/// are replaced by the original cut edges.
pub fn lift_two_edge_cut(
    parent: &EmbeddingScheme,
    step: &AppliedReduction,
    children_ocze: &[EmbeddingScheme],
) -> Result<LiftOutcome> {
    let ReductionDetail::TwoEdgeCut {
        cut,
        endpoints,
        connector,
    } = &step.detail
    else {
        return Err(Error::StaleStep("not a 2-edge-cut step".into()));
    };
    check_children(step, children_ocze)?;
    let g = parent.graph();
    if g.edge_count() != step.parent_edge_count {
        return Err(Error::StaleStep("parent changed since detection".into()));
    }
    let [(u1, v1), (u2, v2)] = *endpoints;
    for reflect in [false, true] {
        let c0 = children_ocze[0].oriented_form()?;
        let c1 = if reflect {
            children_ocze[1].oriented_form()?.reflected()
        } else {
            children_ocze[1].oriented_form()?
        };
        let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        let mut install =
            |child: &EmbeddingScheme, map: &BTreeMap<EdgeId, EdgeId>, conn: EdgeId,
             conn_slots: [(VertexId, EdgeId); 2]| {
                for v in child.graph().vertices() {
                    let rot: Vec<EdgeId> = child
                        .rotation(v)
                        .iter()
                        .map(|&e| {
                            if e == conn {
                                conn_slots
                                    .iter()
                                    .find(|&&(w, _)| w == v)
                                    .map(|&(_, pe)| pe)
                                    .expect("connector only at its endpoints")
                            } else {
                                map[&e]
                            }
                        })
                        .collect();
                    rotation.insert(v, rot);
                }
            };
        install(
            &c0,
            &step.children[0].edge_to_parent,
            connector[0],
            [(u1, cut[0]), (u2, cut[1])],
        );
        install(
            &c1,
            &step.children[1].edge_to_parent,
            connector[1],
            [(v1, cut[0]), (v2, cut[1])],
        );
        let lifted = EmbeddingScheme::positive(g.clone(), rotation)?;
        if verify_ocze(&lifted, g).is_ok() {
            return Ok(LiftOutcome {
                scheme: lifted,
                reflected_child: reflect,
                four_cycle_case: None,
            });
        }
    }
    Err(Error::Internal(
        "2-edge-cut lift failed with and without reflection".into(),
    ))
}

/// Splices two child embeddings along a 3-edge-cut: the hubs are removed
/// and the cut-edge slots re-join the sides, reflecting one child when
/// the hub rotations disagree.
pub fn lift_three_edge_cut(
    parent: &EmbeddingScheme,
    step: &AppliedReduction,
    children_ocze: &[EmbeddingScheme],
) -> Result<LiftOutcome> {
    let ReductionDetail::ThreeEdgeCut {
        cut,
        endpoints,
        hub,
        cut_in_child,
    } = &step.detail
    else {
        return Err(Error::StaleStep("not a 3-edge-cut step".into()));
    };
    check_children(step, children_ocze)?;
    let g = parent.graph();
    if g.edge_count() != step.parent_edge_count {
        return Err(Error::StaleStep("parent changed since detection".into()));
    }
    for reflect in [false, true] {
        let c0 = children_ocze[0].oriented_form()?;
        let c1 = if reflect {
            children_ocze[1].oriented_form()?.reflected()
        } else {
            children_ocze[1].oriented_form()?
        };
        let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        let mut install = |child: &EmbeddingScheme,
                           map: &BTreeMap<EdgeId, EdgeId>,
                           hub: VertexId,
                           cut_ids: &[EdgeId; 3]| {
            for v in child.graph().vertices() {
                if v == hub {
                    continue;
                }
                let rot: Vec<EdgeId> = child
                    .rotation(v)
                    .iter()
                    .map(|&e| {
                        if let Some(k) = cut_ids.iter().position(|&c| c == e) {
                            cut[k]
                        } else {
                            map[&e]
                        }
                    })
                    .collect();
                rotation.insert(v, rot);
            }
        };
        install(
            &c0,
            &step.children[0].edge_to_parent,
            hub[0],
            &cut_in_child[0],
        );
        install(
            &c1,
            &step.children[1].edge_to_parent,
            hub[1],
            &cut_in_child[1],
        );
        let _ = endpoints;
        let lifted = EmbeddingScheme::positive(g.clone(), rotation)?;
        if verify_ocze(&lifted, g).is_ok() {
            return Ok(LiftOutcome {
                scheme: lifted,
                reflected_child: reflect,
                four_cycle_case: None,
            });
        }
    }
    Err(Error::Internal(
        "3-edge-cut lift failed with and without reflection".into(),
    ))
}

/// Rebuilds the parent from a child embedding through the 4-cycle
/// reduction: subdivide the two new edges, then either add the two chords
/// inside one face, add a handle carrying both chords, or add one chord
/// in each of two faces, following the flanking-face case analysis.
pub fn lift_four_cycle(
    parent: &EmbeddingScheme,
    step: &AppliedReduction,
    children_ocze: &[EmbeddingScheme],
) -> Result<LiftOutcome> {
    let ReductionDetail::FourCycle {
        cycle,
        outside,
        spokes,
        cycle_edges,
        new_edges,
    } = &step.detail
    else {
        return Err(Error::StaleStep("not a 4-cycle step".into()));
    };
    check_children(step, children_ocze)?;
    let g = parent.graph();
    if g.edge_count() != step.parent_edge_count {
        return Err(Error::StaleStep("parent changed since detection".into()));
    }
    let child = children_ocze[0].oriented_form()?;
    let cg = child.graph();
    let [v1, v2, v3, v4] = *cycle;
    let [u1, u2, u3, u4] = *outside;
    let [s1, s2, s3, s4] = *spokes;
    let [c12, c23, c34, c41] = *cycle_edges;
    let [a, b] = *new_edges; // child edges u1u2, u3u4

    // Directed faces flanking the two child edges. f1 uses arc u2->u1,
    // f2 uses u1->u2; g1 uses u3->u4, g2 uses u4->u3.
    let faces = trace_faces_oriented(&child)?;
    let face_with_arc = |arc: crate::graph::Arc| -> Result<usize> {
        faces
            .iter()
            .position(|w| w.arcs.contains(&arc))
            .ok_or_else(|| Error::Internal("arc not on any oriented face".into()))
    };
    let f1 = face_with_arc(cg.arc_from(a, u2))?;
    let f2 = face_with_arc(cg.arc_from(a, u1))?;
    let g1 = face_with_arc(cg.arc_from(b, u3))?;
    let g2 = face_with_arc(cg.arc_from(b, u4))?;
    if f1 == f2 || g1 == g2 {
        return Err(Error::Internal(
            "closed 2-cell child has an edge flanked by one face".into(),
        ));
    }

    // Decide the construction case.
    let (case, rot_v): (FourCycleCase, [[EdgeId; 3]; 4]) = if f1 == g2 {
        // Chords v1v4 and v2v3 inside f1.
        (
            FourCycleCase::ChordsInOneFace,
            [
                [c12, c41, s1], // v1: in c12, chord, out spoke1
                [s2, c23, c12], // v2: in spoke2, chord, out c12
                [c34, c23, s3], // v3: in c34, chord, out spoke3
                [s4, c41, c34], // v4: in spoke4, chord, out c34
            ],
        )
    } else if f2 == g1 {
        (
            FourCycleCase::ChordsInOneFace,
            [
                [s1, c41, c12],
                [c12, c23, s2],
                [s3, c23, c34],
                [c34, c41, s4],
            ],
        )
    } else if f1 != g1 {
        // Handle between f1 and g1 carrying both chords.
        (
            FourCycleCase::Handle,
            [
                [c12, c41, s1],
                [s2, c23, c12],
                [s3, c23, c34],
                [c34, c41, s4],
            ],
        )
    } else if f2 != g2 {
        // Handle between f2 and g2.
        (
            FourCycleCase::Handle,
            [
                [s1, c41, c12],
                [c12, c23, s2],
                [c34, c23, s3],
                [s4, c41, c34],
            ],
        )
    } else {
        // f1 == g1 and f2 == g2: one chord in each face.
        (
            FourCycleCase::ChordInEachFace,
            [
                [c12, c41, s1],
                [c12, c23, s2],
                [c34, c23, s3],
                [c34, c41, s4],
            ],
        )
    };

    let map = &step.children[0].edge_to_parent;
    let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for v in cg.vertices() {
        let rot: Vec<EdgeId> = child
            .rotation(v)
            .iter()
            .map(|&e| {
                if e == a {
                    if v == u1 {
                        s1
                    } else {
                        s2
                    }
                } else if e == b {
                    if v == u3 {
                        s3
                    } else {
                        s4
                    }
                } else {
                    map[&e]
                }
            })
            .collect();
        rotation.insert(v, rot);
    }
    rotation.insert(v1, rot_v[0].to_vec());
    rotation.insert(v2, rot_v[1].to_vec());
    rotation.insert(v3, rot_v[2].to_vec());
    rotation.insert(v4, rot_v[3].to_vec());
    let lifted = EmbeddingScheme::positive(g.clone(), rotation)?;
    verify_ocze(&lifted, g)?;
    // Euler bookkeeping per case.
    let child_chi = surface_id(&child)?.euler_characteristic;
    let lifted_chi = surface_id(&lifted)?.euler_characteristic;
    let expected = match case {
        FourCycleCase::Handle => child_chi - 2,
        _ => child_chi,
    };
    if lifted_chi != expected {
        return Err(Error::Internal(format!(
            "4-cycle lift chi {lifted_chi}, expected {expected} for {case:?}"
        )));
    }
    Ok(LiftOutcome {
        scheme: lifted,
        reflected_child: false,
        four_cycle_case: Some(case),
    })
}

/// Dispatches to the lift matching the step kind.
pub fn lift(
    parent: &EmbeddingScheme,
    step: &AppliedReduction,
    children_ocze: &[EmbeddingScheme],
) -> Result<LiftOutcome> {
    match step.kind {
        ReductionKind::TwoEdgeCut => lift_two_edge_cut(parent, step, children_ocze),
        ReductionKind::ThreeEdgeCut => lift_three_edge_cut(parent, step, children_ocze),
        ReductionKind::FourCycle => lift_four_cycle(parent, step, children_ocze),
    }
}
