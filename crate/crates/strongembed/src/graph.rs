//! Multigraph representation with stable vertex/edge identifiers,
//! cut analysis, short-cycle detection and eulerian decomposition.
//!
//! Loops are rejected; parallel edges are allowed. Edge ids are dense
//! integers assigned in input order, so everything downstream is
//! deterministic given the input order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub usize);

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for EdgeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A directed edge: `edge` traversed forward (endpoint 0 to endpoint 1)
/// or backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Arc {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Arc {
    pub fn new(edge: EdgeId, forward: bool) -> Self {
        Arc { edge, forward }
    }

    pub fn reversed(self) -> Self {
        Arc {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// Finite multigraph without loops. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    ends: Vec<(VertexId, VertexId)>,
    adjacency: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph from endpoint pairs. Edge `i` gets id `i`.
    pub fn build(edge_list: &[(usize, usize)]) -> Result<Graph> {
        let mut vertices = BTreeSet::new();
        let mut ends = Vec::with_capacity(edge_list.len());
        for (index, &(u, v)) in edge_list.iter().enumerate() {
            if u == v {
                return Err(Error::LoopEdge { index, vertex: u });
            }
            vertices.insert(VertexId(u));
            vertices.insert(VertexId(v));
            ends.push((VertexId(u), VertexId(v)));
        }
        let mut adjacency: BTreeMap<VertexId, Vec<EdgeId>> =
            vertices.iter().map(|&v| (v, Vec::new())).collect();
        for (i, &(u, v)) in ends.iter().enumerate() {
            adjacency.get_mut(&u).unwrap().push(EdgeId(i));
            adjacency.get_mut(&v).unwrap().push(EdgeId(i));
        }
        Ok(Graph {
            vertices: vertices.into_iter().collect(),
            ends,
            adjacency,
        })
    }

    /// Builds a graph whose vertex set may include isolated vertices.
    pub fn build_with_vertices(
        vertex_ids: &[usize],
        edge_list: &[(usize, usize)],
    ) -> Result<Graph> {
        let mut g = Graph::build(edge_list)?;
        for &v in vertex_ids {
            g.adjacency.entry(VertexId(v)).or_default();
        }
        g.vertices = g.adjacency.keys().copied().collect();
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.ends.len()).map(EdgeId)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        e.0 < self.ends.len()
    }

    pub fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.ends[e.0]
    }

    /// Other endpoint of `e` as seen from `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.ends(e);
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn arc_source(&self, a: Arc) -> VertexId {
        let (u, v) = self.ends(a.edge);
        if a.forward {
            u
        } else {
            v
        }
    }

    pub fn arc_target(&self, a: Arc) -> VertexId {
        let (u, v) = self.ends(a.edge);
        if a.forward {
            v
        } else {
            u
        }
    }

    /// Arc on `e` leaving `from`.
    pub fn arc_from(&self, e: EdgeId, from: VertexId) -> Arc {
        let (u, _) = self.ends(e);
        Arc::new(e, u == from)
    }

    /// Incident edge ids in increasing order.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        self.adjacency
            .get(&v)
            .map(|es| es.as_slice())
            .unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_edges(v).len()
    }

    pub fn is_cubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v) == 3)
    }

    /// Reports the first non-cubic vertex as an error.
    pub fn require_cubic(&self) -> Result<()> {
        for v in self.vertices() {
            if self.degree(v) != 3 {
                return Err(Error::NotCubic {
                    vertex: v,
                    degree: self.degree(v),
                });
            }
        }
        Ok(())
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.ends {
            let key = if u <= v { (u, v) } else { (v, u) };
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.incident_edges(u)
            .iter()
            .any(|&e| self.other_end(e, u) == v)
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.incident_edges(u)
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, u) == v)
            .collect()
    }

    /// Connected components as sorted vertex sets, skipping `removed` edges.
    pub fn components_without(&self, removed: &BTreeSet<EdgeId>) -> Vec<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut components = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::new();
            queue.push_back(start);
            comp.insert(start);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                for &e in self.incident_edges(v) {
                    if removed.contains(&e) {
                        continue;
                    }
                    let w = self.other_end(e, v);
                    if comp.insert(w) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.components_without(&BTreeSet::new()).len() == 1
    }

    /// Cut vertices via DFS low-points.
    pub fn cut_vertices(&self) -> BTreeSet<VertexId> {
        let mut cuts = BTreeSet::new();
        let mut disc: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut timer = 0usize;
        // Iterative DFS; stack entries are (vertex, parent edge, next incident index).
        for root in self.vertices() {
            if disc.contains_key(&root) {
                continue;
            }
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc.insert(root, timer);
            low.insert(root, timer);
            timer += 1;
            let mut root_children = 0usize;
            while let Some(&(v, parent_edge, idx)) = stack.last() {
                let edges = self.incident_edges(v);
                if idx < edges.len() {
                    stack.last_mut().unwrap().2 += 1;
                    let e = edges[idx];
                    if Some(e) == parent_edge {
                        continue;
                    }
                    let w = self.other_end(e, v);
                    if let Some(&dw) = disc.get(&w) {
                        let lv = low.get_mut(&v).unwrap();
                        *lv = (*lv).min(dw);
                    } else {
                        disc.insert(w, timer);
                        low.insert(w, timer);
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(e), 0));
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        let lv = low[&v];
                        let lp = low.get_mut(&p).unwrap();
                        *lp = (*lp).min(lv);
                        if p != root && lv >= disc[&p] {
                            cuts.insert(p);
                        }
                    }
                }
            }
            if root_children >= 2 {
                cuts.insert(root);
            }
        }
        cuts
    }

    pub fn is_two_connected(&self) -> bool {
        self.vertex_count() >= 3 && self.is_connected() && self.cut_vertices().is_empty()
            || (self.vertex_count() == 2 && self.edge_count() >= 2)
    }
}

/// An edge cut together with the two vertex sides it separates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCut {
    pub edges: Vec<EdgeId>,
    pub sides: (Vec<VertexId>, Vec<VertexId>),
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityReport {
    pub is_2_connected: bool,
    pub is_2_edge_connected: bool,
    pub two_edge_cuts: Vec<EdgeCut>,
    pub nontrivial_three_edge_cuts: Vec<EdgeCut>,
    pub is_cyclically_4_edge_connected: bool,
}

/// Exhaustive cut analysis by brute force over edge subsets of size <= 3.
/// Intended for desk-scale instances (up to roughly sixty edges).
pub fn connectivity_report(g: &Graph) -> Result<ConnectivityReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g.edge_count();
    let disconnects = |edges: &[EdgeId]| -> Option<(Vec<VertexId>, Vec<VertexId>)> {
        let removed: BTreeSet<EdgeId> = edges.iter().copied().collect();
        let comps = g.components_without(&removed);
        if comps.len() == 2 {
            let a: Vec<VertexId> = comps[0].iter().copied().collect();
            let b: Vec<VertexId> = comps[1].iter().copied().collect();
            Some((a, b))
        } else if comps.len() > 2 {
            // Non-minimal for its size; a smaller subset already disconnects.
            None
        } else {
            None
        }
    };

    let mut bridges: BTreeSet<EdgeId> = BTreeSet::new();
    for i in 0..m {
        if disconnects(&[EdgeId(i)]).is_some() {
            bridges.insert(EdgeId(i));
        }
    }

    let mut two_edge_cuts = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let pair = [EdgeId(i), EdgeId(j)];
            if pair.iter().any(|e| bridges.contains(e)) {
                continue;
            }
            if let Some(sides) = disconnects(&pair) {
                two_edge_cuts.push(EdgeCut {
                    edges: pair.to_vec(),
                    sides,
                });
            }
        }
    }

    let in_some_two_cut = |e: EdgeId, f: EdgeId| {
        two_edge_cuts
            .iter()
            .any(|c| c.edges.contains(&e) && c.edges.contains(&f))
    };

    let mut nontrivial_three_edge_cuts = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let triple = [EdgeId(i), EdgeId(j), EdgeId(k)];
                if triple.iter().any(|e| bridges.contains(e)) {
                    continue;
                }
                if in_some_two_cut(triple[0], triple[1])
                    || in_some_two_cut(triple[0], triple[2])
                    || in_some_two_cut(triple[1], triple[2])
                {
                    continue;
                }
                if let Some(sides) = disconnects(&triple) {
                    // Trivial iff both sides have a singleton whose incident
                    // edges are exactly the cut; equivalently one side is a
                    // single vertex.
                    let trivial = sides.0.len() == 1 || sides.1.len() == 1;
                    if !trivial {
                        nontrivial_three_edge_cuts.push(EdgeCut {
                            edges: triple.to_vec(),
                            sides,
                        });
                    }
                }
            }
        }
    }

    let is_2_edge_connected = bridges.is_empty() && g.vertex_count() >= 2;
    let is_cyclically_4_edge_connected = g.is_cubic()
        && is_2_edge_connected
        && two_edge_cuts.is_empty()
        && nontrivial_three_edge_cuts.is_empty();

    Ok(ConnectivityReport {
        is_2_connected: g.is_two_connected(),
        is_2_edge_connected,
        two_edge_cuts,
        nontrivial_three_edge_cuts,
        is_cyclically_4_edge_connected,
    })
}

/// All distinct 3- and 4-cycles (as vertex cycles) up to rotation and
/// reflection, by brute force over vertex tuples.
pub fn find_short_cycles(g: &Graph, max_len: usize) -> Vec<Vec<VertexId>> {
    assert!(max_len <= 4, "find_short_cycles supports max_len <= 4");
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut cycles = Vec::new();
    if max_len >= 3 {
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                if !g.adjacent(vs[i], vs[j]) {
                    continue;
                }
                for k in (j + 1)..vs.len() {
                    if g.adjacent(vs[j], vs[k]) && g.adjacent(vs[k], vs[i]) {
                        cycles.push(vec![vs[i], vs[j], vs[k]]);
                    }
                }
            }
        }
    }
    if max_len >= 4 {
        // Canonical form: smallest vertex first, smaller neighbor second.
        let mut seen = BTreeSet::new();
        for a in 0..vs.len() {
            for b in 0..vs.len() {
                if b == a || !g.adjacent(vs[a], vs[b]) {
                    continue;
                }
                for c in 0..vs.len() {
                    if c == a || c == b || !g.adjacent(vs[b], vs[c]) {
                        continue;
                    }
                    for d in 0..vs.len() {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        if g.adjacent(vs[c], vs[d]) && g.adjacent(vs[d], vs[a]) {
                            let quad = [vs[a], vs[b], vs[c], vs[d]];
                            let min_pos = (0..4).min_by_key(|&p| quad[p]).unwrap();
                            let fwd: Vec<VertexId> =
                                (0..4).map(|t| quad[(min_pos + t) % 4]).collect();
                            let bwd: Vec<VertexId> =
                                (0..4).map(|t| quad[(min_pos + 4 - t) % 4]).collect();
                            let canon = fwd.min(bwd);
                            if seen.insert(canon.clone()) {
                                cycles.push(canon);
                            }
                        }
                    }
                }
            }
        }
    }
    cycles
}

/// Decomposes a balanced multiset of directed edges into directed cycles.
///
/// At a vertex visited more than once, in-arcs are paired to out-arcs in
/// ascending edge id; walks are then split at repeated vertices so every
/// returned cycle has distinct vertices.
pub fn decompose_eulerian(g: &Graph, arcs: &[Arc]) -> Result<Vec<Vec<Arc>>> {
    // successor pairing per vertex
    let mut outgoing: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    let mut incoming: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, &a) in arcs.iter().enumerate() {
        if !g.has_edge(a.edge) {
            return Err(Error::UnknownEdge(a.edge));
        }
        outgoing.entry(g.arc_source(a)).or_default().push(i);
        incoming.entry(g.arc_target(a)).or_default().push(i);
    }
    for (v, outs) in &outgoing {
        let ins = incoming.get(v).map(|x| x.len()).unwrap_or(0);
        if outs.len() != ins {
            return Err(Error::UnbalancedVertex(*v));
        }
    }
    for (v, ins) in &incoming {
        if !outgoing.contains_key(v) && !ins.is_empty() {
            return Err(Error::UnbalancedVertex(*v));
        }
    }
    // Pair in-arc k to out-arc k, both sorted by (edge id, index).
    let mut successor: Vec<Option<usize>> = vec![None; arcs.len()];
    for (v, outs) in &mut outgoing {
        let mut ins = incoming.remove(v).unwrap_or_default();
        ins.sort_by_key(|&i| (arcs[i].edge, i));
        outs.sort_by_key(|&i| (arcs[i].edge, i));
        for (inc, out) in ins.iter().zip(outs.iter()) {
            successor[*inc] = Some(*out);
        }
    }

    let mut used = vec![false; arcs.len()];
    let mut cycles = Vec::new();
    for start in 0..arcs.len() {
        if used[start] {
            continue;
        }
        // Follow the pairing to get a closed walk, splitting at repeats.
        let mut walk_stack: Vec<Arc> = Vec::new();
        let mut on_stack: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut cur = start;
        loop {
            let a = arcs[cur];
            used[cur] = true;
            let src = g.arc_source(a);
            let dst = g.arc_target(a);
            on_stack.entry(src).or_insert(walk_stack.len());
            walk_stack.push(a);
            if let Some(&pos) = on_stack.get(&dst) {
                // Closing a cycle back to dst: pop it off.
                let cycle: Vec<Arc> = walk_stack.drain(pos..).collect();
                for c in &cycle {
                    on_stack.remove(&g.arc_source(*c));
                }
                cycles.push(cycle);
                if walk_stack.is_empty() {
                    break;
                }
            }
            cur = match successor[cur] {
                Some(next) if !used[next] => next,
                _ => {
                    // All continuations used; walk must be closed by now.
                    if walk_stack.is_empty() {
                        break;
                    }
                    return Err(Error::Internal(
                        "eulerian walk ended with open stack".into(),
                    ));
                }
            };
        }
    }
    Ok(cycles)
}

#[cfg(test)]
pub(crate) mod test_graphs {
    use super::*;

    pub fn triangle() -> Graph {
        Graph::build(&[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    pub fn k4() -> Graph {
        Graph::build(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn k5() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                edges.push((i, j));
            }
        }
        Graph::build(&edges).unwrap()
    }

    pub fn k33() -> Graph {
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                edges.push((i, j));
            }
        }
        Graph::build(&edges).unwrap()
    }

    /// Outer 5-cycle 0..4, spokes to 5..9, inner pentagram.
    pub fn petersen() -> Graph {
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

    pub fn triple_edge() -> Graph {
        Graph::build(&[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    /// Cube graph: top square 0..3, bottom square 4..7.
    pub fn cube() -> Graph {
        let mut edges = Vec::new();
        for i in 0..4 {
            edges.push((i, (i + 1) % 4));
            edges.push((4 + i, 4 + (i + 1) % 4));
            edges.push((i, 4 + i));
        }
        Graph::build(&edges).unwrap()
    }

    /// Triangular prism: two triangles joined by a perfect matching.
    pub fn prism() -> Graph {
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
}
