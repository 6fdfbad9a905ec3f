//! Planar embedding via face expansion (Demoucron-Malgrange-Pertuiset).
//!
//! Quadratic time, which is fine at this scale. Blocks are embedded
//! separately and merged at cut vertices; each 2-connected block starts
//! from a cycle and repeatedly embeds a path of an unembedded fragment
//! into an admissible face. A fragment with no admissible face certifies
//! nonplanarity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Arc, EdgeId, Graph, VertexId};

use super::EmbeddingScheme;

/// Embeds a connected planar graph in the sphere: all signs positive,
/// Euler characteristic 2. Nonplanar input yields [`Error::NonPlanar`].
pub fn planar_embed(g: &Graph) -> Result<EmbeddingScheme> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.vertex_count() == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }

    // Split into blocks (biconnected components as edge sets).
    let blocks = edge_blocks(g);
    let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> =
        g.vertices().map(|v| (v, Vec::new())).collect();
    for block in blocks {
        let block_rot = if block.len() == 1 {
            // A bridge: one edge, trivial rotation at both ends.
            let e = block[0];
            let (u, v) = g.ends(e);
            BTreeMap::from([(u, vec![e]), (v, vec![e])])
        } else {
            embed_block(g, &block)?
        };
        for (v, mut rot) in block_rot {
            rotation.get_mut(&v).unwrap().append(&mut rot);
        }
    }
    let scheme = EmbeddingScheme::positive(g.clone(), rotation)?;
    if g.edge_count() > 0 {
        let id = super::surface_id(&scheme)?;
        if id.euler_characteristic != 2 {
            return Err(Error::Internal(format!(
                "planar embedding produced chi = {}",
                id.euler_characteristic
            )));
        }
    }
    Ok(scheme)
}

/// Biconnected components as edge sets, via the classic DFS edge stack.
fn edge_blocks(g: &Graph) -> Vec<Vec<EdgeId>> {
    let mut disc: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut timer = 0usize;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks: Vec<Vec<EdgeId>> = Vec::new();
    let mut seen_edges: BTreeSet<EdgeId> = BTreeSet::new();

    for root in g.vertices() {
        if disc.contains_key(&root) {
            continue;
        }
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc.insert(root, timer);
        low.insert(root, timer);
        timer += 1;
        while let Some(&(v, parent_edge, idx)) = stack.last() {
            let edges = g.incident_edges(v);
            if idx < edges.len() {
                stack.last_mut().unwrap().2 += 1;
                let e = edges[idx];
                if Some(e) == parent_edge || seen_edges.contains(&e) {
                    continue;
                }
                let w = g.other_end(e, v);
                seen_edges.insert(e);
                edge_stack.push(e);
                if let Some(&dw) = disc.get(&w) {
                    let lv = low.get_mut(&v).unwrap();
                    *lv = (*lv).min(dw);
                } else {
                    disc.insert(w, timer);
                    low.insert(w, timer);
                    timer += 1;
                    stack.push((w, Some(e), 0));
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    let lv = low[&v];
                    {
                        let lp = low.get_mut(&p).unwrap();
                        *lp = (*lp).min(lv);
                    }
                    if lv >= disc[&p] {
                        // v's subtree closes a block; pop up to and
                        // including v's own tree edge.
                        let tree_edge =
                            parent_edge.expect("non-root frame has a parent edge");
                        let mut block = Vec::new();
                        loop {
                            let top = edge_stack
                                .pop()
                                .expect("tree edge must be on the edge stack");
                            block.push(top);
                            if top == tree_edge {
                                break;
                            }
                        }
                        block.sort();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks.sort();
    blocks
}

/// Embeds one 2-connected block. Returns per-vertex rotations restricted
/// to the block's edges.
fn embed_block(g: &Graph, block: &[EdgeId]) -> Result<BTreeMap<VertexId, Vec<EdgeId>>> {
    let block_edges: BTreeSet<EdgeId> = block.iter().copied().collect();
    let block_vertices: BTreeSet<VertexId> = block
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.ends(e);
            [u, v]
        })
        .collect();
    let incident = |v: VertexId| -> Vec<EdgeId> {
        g.incident_edges(v)
            .iter()
            .copied()
            .filter(|e| block_edges.contains(e))
            .collect()
    };

    // Initial cycle by DFS.
    let cycle = find_cycle(g, &block_edges, *block_vertices.iter().next().unwrap())
        .ok_or_else(|| Error::Internal("2-connected block without a cycle".into()))?;

    let mut faces: Vec<Vec<Arc>> = Vec::new();
    let rev_walk = |w: &[Arc]| -> Vec<Arc> { w.iter().rev().map(|a| a.reversed()).collect() };
    faces.push(cycle.clone());
    faces.push(rev_walk(&cycle));

    let mut embedded_edges: BTreeSet<EdgeId> = cycle.iter().map(|a| a.edge).collect();
    let mut embedded_vertices: BTreeSet<VertexId> =
        cycle.iter().map(|&a| g.arc_source(a)).collect();

    while embedded_edges.len() < block_edges.len() {
        // Fragments: chords and components of the unembedded part.
        struct Fragment {
            edges: Vec<EdgeId>,
            attachments: Vec<VertexId>,
            interior: BTreeSet<VertexId>,
        }
        let mut fragments: Vec<Fragment> = Vec::new();
        for &e in block {
            if embedded_edges.contains(&e) {
                continue;
            }
            let (u, v) = g.ends(e);
            if embedded_vertices.contains(&u) && embedded_vertices.contains(&v) {
                let mut att = vec![u, v];
                att.sort();
                fragments.push(Fragment {
                    edges: vec![e],
                    attachments: att,
                    interior: BTreeSet::new(),
                });
            }
        }
        let mut comp_seen: BTreeSet<VertexId> = BTreeSet::new();
        for &start in &block_vertices {
            if embedded_vertices.contains(&start) || comp_seen.contains(&start) {
                continue;
            }
            let mut interior = BTreeSet::new();
            let mut attachments = BTreeSet::new();
            let mut edges = BTreeSet::new();
            let mut queue = VecDeque::new();
            queue.push_back(start);
            interior.insert(start);
            comp_seen.insert(start);
            while let Some(v) = queue.pop_front() {
                for e in incident(v) {
                    if embedded_edges.contains(&e) {
                        continue;
                    }
                    edges.insert(e);
                    let w = g.other_end(e, v);
                    if embedded_vertices.contains(&w) {
                        attachments.insert(w);
                    } else if interior.insert(w) {
                        comp_seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            fragments.push(Fragment {
                edges: edges.into_iter().collect(),
                attachments: attachments.into_iter().collect(),
                interior,
            });
        }
        fragments.sort_by_key(|f| f.edges[0]);

        // Admissible faces per fragment.
        let face_vsets: Vec<BTreeSet<VertexId>> = faces
            .iter()
            .map(|w| w.iter().map(|&a| g.arc_source(a)).collect())
            .collect();
        let mut choice: Option<(usize, usize)> = None; // (fragment, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = face_vsets
                .iter()
                .enumerate()
                .filter(|(_, vs)| frag.attachments.iter().all(|a| vs.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return Err(Error::NonPlanar),
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("unembedded edges imply a fragment");
        let frag = &fragments[fi];

        // A path between two attachments through the fragment.
        let x = frag.attachments[0];
        let path: Vec<Arc> = if frag.interior.is_empty() {
            let e = frag.edges[0];
            vec![g.arc_from(e, x)]
        } else {
            let y_target: BTreeSet<VertexId> =
                frag.attachments.iter().skip(1).copied().collect();
            if y_target.is_empty() {
                return Err(Error::Internal(
                    "fragment with a single attachment in a 2-connected block".into(),
                ));
            }
            bfs_path_through(g, &frag.edges, &frag.interior, x, &y_target)?
        };
        let y = g.arc_target(*path.last().unwrap());

        // Split the chosen face along the path.
        let walk = faces[face_idx].clone();
        let verts: Vec<VertexId> = walk.iter().map(|&a| g.arc_source(a)).collect();
        let xi = verts
            .iter()
            .position(|&v| v == x)
            .ok_or_else(|| Error::Internal("attachment not on chosen face".into()))?;
        let yi = verts
            .iter()
            .position(|&v| v == y)
            .ok_or_else(|| Error::Internal("attachment not on chosen face".into()))?;
        let n = walk.len();
        let seg = |from: usize, to: usize| -> Vec<Arc> {
            let mut out = Vec::new();
            let mut i = from;
            while i != to {
                out.push(walk[i]);
                i = (i + 1) % n;
            }
            out
        };
        let f1: Vec<Arc> = seg(xi, yi)
            .into_iter()
            .chain(rev_walk(&path))
            .collect();
        let f2: Vec<Arc> = seg(yi, xi).into_iter().chain(path.iter().copied()).collect();
        faces[face_idx] = f1;
        faces.push(f2);

        for &a in &path {
            embedded_edges.insert(a.edge);
            embedded_vertices.insert(g.arc_source(a));
            embedded_vertices.insert(g.arc_target(a));
        }
    }

    rotations_from_faces(g, &block_vertices, &faces)
}

/// BFS path from `x` to any vertex of `targets`, using only fragment
/// edges, with interior vertices inside the fragment.
fn bfs_path_through(
    g: &Graph,
    frag_edges: &[EdgeId],
    interior: &BTreeSet<VertexId>,
    x: VertexId,
    targets: &BTreeSet<VertexId>,
) -> Result<Vec<Arc>> {
    let edge_set: BTreeSet<EdgeId> = frag_edges.iter().copied().collect();
    let mut parent: BTreeMap<VertexId, Arc> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(x);
    let mut found: Option<VertexId> = None;
    'outer: while let Some(v) = queue.pop_front() {
        if v != x && !interior.contains(&v) {
            continue; // attachments other than targets are dead ends
        }
        for &e in g.incident_edges(v) {
            if !edge_set.contains(&e) {
                continue;
            }
            let w = g.other_end(e, v);
            if w == x || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, g.arc_from(e, v));
            if targets.contains(&w) {
                found = Some(w);
                break 'outer;
            }
            if interior.contains(&w) {
                queue.push_back(w);
            }
        }
    }
    let mut at = found.ok_or_else(|| Error::Internal("fragment path not found".into()))?;
    let mut path = Vec::new();
    while at != x {
        let a = parent[&at];
        path.push(a);
        at = g.arc_source(a);
    }
    path.reverse();
    Ok(path)
}

/// A cycle (as a directed arc walk) inside the given edge set.
fn find_cycle(g: &Graph, edges: &BTreeSet<EdgeId>, start: VertexId) -> Option<Vec<Arc>> {
    let mut parent: BTreeMap<VertexId, Arc> = BTreeMap::new();
    let mut order: Vec<VertexId> = Vec::new();
    let mut on_path: BTreeSet<VertexId> = BTreeSet::new();
    // DFS, tracking the tree path to find a back edge.
    fn dfs(
        g: &Graph,
        edges: &BTreeSet<EdgeId>,
        v: VertexId,
        parent_edge: Option<EdgeId>,
        parent: &mut BTreeMap<VertexId, Arc>,
        order: &mut Vec<VertexId>,
        on_path: &mut BTreeSet<VertexId>,
    ) -> Option<(Arc, VertexId)> {
        on_path.insert(v);
        order.push(v);
        for &e in g.incident_edges(v) {
            if !edges.contains(&e) || Some(e) == parent_edge {
                continue;
            }
            let w = g.other_end(e, v);
            if on_path.contains(&w) {
                return Some((g.arc_from(e, v), w));
            }
            if !parent.contains_key(&w) {
                parent.insert(w, g.arc_from(e, v));
                if let Some(hit) = dfs(g, edges, w, Some(e), parent, order, on_path) {
                    return Some(hit);
                }
            }
        }
        on_path.remove(&v);
        None
    }
    let (back, w) = dfs(
        g,
        edges,
        start,
        None,
        &mut parent,
        &mut order,
        &mut on_path,
    )?;
    // Cycle: tree path w -> source(back), then the back arc.
    let mut rev = vec![back];
    let mut at = g.arc_source(back);
    while at != w {
        let a = parent[&at];
        rev.push(a);
        at = g.arc_source(a);
    }
    rev.reverse();
    Some(rev)
}

/// Recovers rotations from a set of consistently oriented faces: the face
/// successor of the arc entering `v` on edge `e` leaves `v` on the next
/// edge of the rotation.
pub(crate) fn rotations_from_faces(
    g: &Graph,
    vertices: &BTreeSet<VertexId>,
    faces: &[Vec<Arc>],
) -> Result<BTreeMap<VertexId, Vec<EdgeId>>> {
    let mut succ: BTreeMap<(VertexId, EdgeId), EdgeId> = BTreeMap::new();
    for walk in faces {
        let n = walk.len();
        for i in 0..n {
            let a = walk[i];
            let b = walk[(i + 1) % n];
            let v = g.arc_target(a);
            if succ.insert((v, a.edge), b.edge).is_some() {
                return Err(Error::Internal(
                    "face set uses an arc more than once".into(),
                ));
            }
        }
    }
    let mut rotation = BTreeMap::new();
    for &v in vertices {
        let incident: Vec<EdgeId> = succ
            .range((v, EdgeId(0))..=(v, EdgeId(usize::MAX)))
            .map(|((_, e), _)| *e)
            .collect();
        if incident.is_empty() {
            continue;
        }
        let first = incident[0];
        let mut rot = vec![first];
        let mut cur = succ[&(v, first)];
        while cur != first {
            rot.push(cur);
            cur = *succ
                .get(&(v, cur))
                .ok_or_else(|| Error::Internal("rotation walk left the vertex".into()))?;
            if rot.len() > incident.len() {
                return Err(Error::Internal(
                    "face successors do not close a single rotation".into(),
                ));
            }
        }
        if rot.len() != incident.len() {
            return Err(Error::Internal(
                "face successors split into multiple rotations".into(),
            ));
        }
        rotation.insert(v, rot);
    }
    Ok(rotation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{is_closed_2cell, surface_id, trace_faces};
    use crate::graph::test_graphs;

    #[test]
    fn k4_embeds_with_four_triangles() {
        let s = planar_embed(&test_graphs::k4()).unwrap();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(surface_id(&s).unwrap().euler_characteristic, 2);
        assert!(is_closed_2cell(&s).unwrap());
    }

    #[test]
    fn triple_edge_embeds_with_three_digons() {
        let s = planar_embed(&test_graphs::triple_edge()).unwrap();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.len() == 2));
    }

    #[test]
    fn cube_embeds_with_six_quadrilaterals() {
        let s = planar_embed(&test_graphs::cube()).unwrap();
        let faces = trace_faces(&s).unwrap();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 4));
        assert!(is_closed_2cell(&s).unwrap());
    }

    #[test]
    fn prism_embeds() {
        let s = planar_embed(&test_graphs::prism()).unwrap();
        assert_eq!(surface_id(&s).unwrap().euler_characteristic, 2);
        assert!(is_closed_2cell(&s).unwrap());
    }

    #[test]
    fn nonplanar_graphs_are_rejected() {
        for g in [
            test_graphs::k5(),
            test_graphs::k33(),
            test_graphs::petersen(),
        ] {
            assert!(matches!(planar_embed(&g), Err(Error::NonPlanar)));
        }
    }

    #[test]
    fn cut_vertex_graph_embeds() {
        // Two triangles sharing vertex 0.
        let g = Graph::build(&[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let s = planar_embed(&g).unwrap();
        assert_eq!(surface_id(&s).unwrap().euler_characteristic, 2);
        assert!(!is_closed_2cell(&s).unwrap());
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::build(&[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(planar_embed(&g), Err(Error::Disconnected)));
    }
}
