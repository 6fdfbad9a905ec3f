//! End-to-end drivers: the reduction/surgery recursion producing an
//! orientable closed 2-cell embedding of a cubic projective-planar or
//! planar input, and the vertex-expansion route to an orientable cycle
//! double cover of a general 2-edge-connected input.
//!
//! Every stage's output is verified before the next stage consumes it; a
//! guarantee failure surfaces as an internal error rather than a wrong
//! answer.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::embedding::{
    is_closed_2cell, planar_embed, representativity, surface_id, trace_faces,
    trace_faces_oriented, EmbeddingScheme, SurfaceId,
};
use crate::error::{Error, Result};
use crate::graph::{decompose_eulerian, Arc, EdgeId, Graph, VertexId};
use crate::reductions::{
    apply_reduction, detect_reduction, is_base_case, lift, verify_ocze, FourCycleCase,
    ReductionKind,
};
use crate::rings::find_odd_ring;
use crate::surgery::{orient_via_odd_ring, OrientedCDC};

/// One step of the recursion, with nested child reports.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub action: StepAction,
    pub vertices: usize,
    pub edges: usize,
    pub surface: String,
    pub euler_characteristic: i64,
    pub faces: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub enum StepAction {
    /// Base case or low representativity: embed the abstract graph in
    /// the sphere.
    PlanarBase,
    Reduction {
        kind: ReductionKind,
        four_cycle_case: Option<FourCycleCase>,
        reflected_child: bool,
        children: Vec<PipelineReport>,
    },
    OddRingSurgery {
        ring_length: usize,
        flipped_edges: Vec<EdgeId>,
        boundary_cycle_lengths: Vec<usize>,
    },
}

/// Result of the orientable closed 2-cell embedding pipeline.
#[derive(Clone, Debug)]
pub struct OczeResult {
    pub scheme: EmbeddingScheme,
    pub report: PipelineReport,
}

fn report_for(scheme: &EmbeddingScheme, action: StepAction) -> Result<PipelineReport> {
    let id = surface_id(scheme)?;
    Ok(PipelineReport {
        action,
        vertices: scheme.graph().vertex_count(),
        edges: scheme.graph().edge_count(),
        surface: id.to_string(),
        euler_characteristic: id.euler_characteristic,
        faces: trace_faces(scheme)?.len(),
        verified: true,
    })
}

/// Orientable closed 2-cell embedding of a 2-connected cubic graph given
/// with a projective-planar or spherical scheme.
///
/// Recursion: reductions first; then the planar base case (spherical
/// scheme, or representativity at most 1); otherwise the structure
/// guarantee supplies an odd noncontractible elementary face ring and the
/// crosscap surgery finishes. The output is a verified orientable closed
/// 2-cell scheme of the same graph.
pub fn ocze(s: &EmbeddingScheme) -> Result<OczeResult> {
    let g = s.graph();
    g.require_cubic()?;
    if !g.is_two_connected() {
        return Err(Error::NotTwoConnected);
    }
    let id = surface_id(s)?;
    if !(id.euler_characteristic == 2 || id.is_projective_plane()) {
        return Err(Error::Precondition(format!(
            "input scheme must be spherical or projective-planar, got {id}"
        )));
    }

    if is_base_case(g) {
        let out = planar_embed(g)?;
        verify_ocze(&out, g)?;
        return Ok(OczeResult {
            report: report_for(&out, StepAction::PlanarBase)?,
            scheme: out,
        });
    }

    if let Some(witness) = detect_reduction(s)? {
        let applied = apply_reduction(s, &witness)?;
        let mut child_results = Vec::new();
        for child in &applied.children {
            child_results.push(ocze(&child.scheme)?);
        }
        let child_schemes: Vec<EmbeddingScheme> =
            child_results.iter().map(|r| r.scheme.clone()).collect();
        let lifted = lift(s, &applied, &child_schemes)?;
        verify_ocze(&lifted.scheme, g)?;
        let action = StepAction::Reduction {
            kind: applied.kind,
            four_cycle_case: lifted.four_cycle_case,
            reflected_child: lifted.reflected_child,
            children: child_results.into_iter().map(|r| r.report).collect(),
        };
        return Ok(OczeResult {
            report: report_for(&lifted.scheme, action)?,
            scheme: lifted.scheme,
        });
    }

    if id.euler_characteristic == 2 {
        let out = planar_embed(g)?;
        verify_ocze(&out, g)?;
        return Ok(OczeResult {
            report: report_for(&out, StepAction::PlanarBase)?,
            scheme: out,
        });
    }

    let rho = representativity(s)?;
    if rho <= 1 {
        // A projective-planar embedding of representativity at most 1
        // forces the graph planar.
        let out = planar_embed(g).map_err(|e| match e {
            Error::NonPlanar => Error::Internal(
                "representativity <= 1 but the graph is not planar".into(),
            ),
            other => other,
        })?;
        verify_ocze(&out, g)?;
        return Ok(OczeResult {
            report: report_for(&out, StepAction::PlanarBase)?,
            scheme: out,
        });
    }

    // No reduction, representativity >= 2: the structure guarantee
    // yields an odd ring (there are no 4-cycle faces at this point).
    let ring = find_odd_ring(s)?.ok_or_else(|| {
        Error::Internal("odd-ring guarantee failed on an irreducible scheme".into())
    })?;
    let surgery = orient_via_odd_ring(s, &ring)?;
    verify_ocze(&surgery.scheme, g)?;
    let action = StepAction::OddRingSurgery {
        ring_length: ring.len(),
        flipped_edges: surgery.cut_system.curve.iter().map(|&(_, e)| e).collect(),
        boundary_cycle_lengths: surgery.boundary_cycles.iter().map(|w| w.len()).collect(),
    };
    Ok(OczeResult {
        report: report_for(&surgery.scheme, action)?,
        scheme: surgery.scheme,
    })
}

// ---------------------------------------------------------------------------
// Vertex expansion
// ---------------------------------------------------------------------------

/// Records how vertices were expanded into cycles.
#[derive(Clone, Debug, Serialize)]
pub struct ExpansionMap {
    /// Original vertex -> its cycle of new vertices (in rotation order).
    pub cycles: BTreeMap<VertexId, Vec<VertexId>>,
    /// Edge ids of the new cycle edges.
    pub cycle_edges: BTreeSet<EdgeId>,
    /// Number of original edges (original ids are preserved below this).
    pub original_edges: usize,
}

/// Expands every vertex of degree at least 4 into a contractible cycle in
/// rotation order, producing a cubic scheme on the same surface. Original
/// edge ids are preserved; cycle edges get fresh ids.
pub fn expand_vertices(s: &EmbeddingScheme) -> Result<(EmbeddingScheme, ExpansionMap)> {
    let g = s.graph();
    for v in g.vertices() {
        if g.degree(v) < 3 {
            return Err(Error::Precondition(format!(
                "vertex {v} has degree {} < 3; suppress it first",
                g.degree(v)
            )));
        }
    }
    let mut next_vertex = g.vertices().map(|v| v.0 + 1).max().unwrap_or(0);
    let mut cycles: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for v in g.vertices() {
        if g.degree(v) >= 4 {
            let ws: Vec<VertexId> = (0..g.degree(v))
                .map(|_| {
                    let w = VertexId(next_vertex);
                    next_vertex += 1;
                    w
                })
                .collect();
            cycles.insert(v, ws);
        }
    }
    // Anchor of (vertex, edge): the new endpoint carrying that edge end.
    let anchor = |v: VertexId, e: EdgeId| -> VertexId {
        match cycles.get(&v) {
            None => v,
            Some(ws) => {
                let i = s
                    .rotation(v)
                    .iter()
                    .position(|&x| x == e)
                    .expect("edge in rotation");
                ws[i]
            }
        }
    };
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for e in g.edges() {
        let (u, v) = g.ends(e);
        pairs.push((anchor(u, e).0, anchor(v, e).0));
    }
    let original_edges = pairs.len();
    let mut cycle_edge_of: BTreeMap<(VertexId, usize), EdgeId> = BTreeMap::new();
    for (v, ws) in &cycles {
        for i in 0..ws.len() {
            let eid = EdgeId(pairs.len());
            pairs.push((ws[i].0, ws[(i + 1) % ws.len()].0));
            cycle_edge_of.insert((*v, i), eid);
        }
    }
    let new_graph = Graph::build(&pairs)?;
    let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    let mut signature = vec![crate::embedding::Sign::Plus; pairs.len()];
    for e in g.edges() {
        signature[e.0] = s.sign(e);
    }
    for v in g.vertices() {
        match cycles.get(&v) {
            None => {
                rotation.insert(v, s.rotation(v).to_vec());
            }
            Some(ws) => {
                let d = ws.len();
                for (i, &w) in ws.iter().enumerate() {
                    let e = s.rotation(v)[i];
                    let c_prev = cycle_edge_of[&(v, (i + d - 1) % d)];
                    let c_next = cycle_edge_of[&(v, i)];
                    rotation.insert(w, vec![c_prev, c_next, e]);
                }
            }
        }
    }
    let expanded = EmbeddingScheme::new(new_graph, rotation, signature)?;
    // Same surface; each new cycle bounds a face.
    let before = surface_id(s)?;
    let after = surface_id(&expanded)?;
    if before != after {
        return Err(Error::Internal(format!(
            "expansion changed the surface: {before} -> {after}"
        )));
    }
    if !expanded.graph().is_cubic() {
        return Err(Error::Internal("expansion did not produce a cubic graph".into()));
    }
    let map = ExpansionMap {
        cycles,
        cycle_edges: (original_edges..pairs.len()).map(EdgeId).collect(),
        original_edges,
    };
    Ok((expanded, map))
}

// ---------------------------------------------------------------------------
// Oriented cycle double covers of general graphs
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct OcdcResult {
    pub cdc: OrientedCDC,
    pub ocze_report: PipelineReport,
    pub verification: OcdcReport,
}

/// Compatibly oriented cycle double cover of a 2-edge-connected graph
/// given with a projective-planar or spherical scheme: expand vertices,
/// run the embedding pipeline, read off the oriented faces, contract the
/// expansion cycles back and decompose any eulerian walks into cycles.
pub fn ocdc(s: &EmbeddingScheme) -> Result<OcdcResult> {
    let g = s.graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    // 2-edge-connected: no bridges.
    for e in g.edges() {
        let removed: BTreeSet<EdgeId> = [e].into_iter().collect();
        if g.components_without(&removed).len() != 1 {
            return Err(Error::Precondition(format!(
                "graph has a bridge ({e}); no cycle double cover exists"
            )));
        }
    }
    let (expanded, map) = expand_vertices(s)?;
    let result = ocze(&expanded)?;
    let faces = trace_faces_oriented(&result.scheme)?;
    let mut cycles: Vec<Vec<Arc>> = Vec::new();
    for walk in &faces {
        let contracted: Vec<Arc> = walk
            .arcs
            .iter()
            .copied()
            .filter(|a| !map.cycle_edges.contains(&a.edge))
            .collect();
        if contracted.is_empty() {
            continue; // a face bounded by one expansion cycle
        }
        // Contraction may leave an eulerian walk; split it into cycles,
        // preserving the orientation.
        cycles.extend(decompose_eulerian(g, &contracted)?);
    }
    let cdc = OrientedCDC { cycles };
    let verification = verify_ocdc(g, &cdc);
    if !verification.all_ok() {
        return Err(Error::Internal(format!(
            "constructed CDC failed verification: {verification:?}"
        )));
    }
    Ok(OcdcResult {
        cdc,
        ocze_report: result.report,
        verification,
    })
}

/// Independent verification report for an oriented CDC.
#[derive(Clone, Debug, Serialize)]
pub struct OcdcReport {
    pub cycle_count: usize,
    pub arc_count: usize,
    pub cycles_are_cycles: bool,
    pub edges_covered_twice: bool,
    pub directions_compatible: bool,
    pub failures: Vec<String>,
}

impl OcdcReport {
    pub fn all_ok(&self) -> bool {
        self.cycles_are_cycles && self.edges_covered_twice && self.directions_compatible
    }
}

/// Checks cycle validity (closed, no repeated vertices), the edge double
/// cover, and direction compatibility, reporting failures as entries
/// rather than errors.
pub fn verify_ocdc(g: &Graph, cdc: &OrientedCDC) -> OcdcReport {
    let mut failures = Vec::new();
    let mut cycles_are_cycles = true;
    for (ci, cycle) in cdc.cycles.iter().enumerate() {
        if cycle.is_empty() {
            cycles_are_cycles = false;
            failures.push(format!("cycle {ci} is empty"));
            continue;
        }
        let mut closed = true;
        for (i, &a) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            if !g.has_edge(a.edge) {
                closed = false;
                failures.push(format!("cycle {ci} uses unknown edge {}", a.edge));
                break;
            }
            if g.arc_target(a) != g.arc_source(next) {
                closed = false;
                failures.push(format!("cycle {ci} breaks at position {i}"));
                break;
            }
        }
        if !closed {
            cycles_are_cycles = false;
            continue;
        }
        let vs: Vec<VertexId> = cycle.iter().map(|&a| g.arc_source(a)).collect();
        let set: BTreeSet<VertexId> = vs.iter().copied().collect();
        if set.len() != vs.len() {
            cycles_are_cycles = false;
            failures.push(format!("cycle {ci} repeats a vertex"));
        }
    }
    let mut fwd: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut bwd: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for cycle in &cdc.cycles {
        for &a in cycle {
            if a.forward {
                *fwd.entry(a.edge).or_default() += 1;
            } else {
                *bwd.entry(a.edge).or_default() += 1;
            }
        }
    }
    let mut edges_covered_twice = true;
    let mut directions_compatible = true;
    for e in g.edges() {
        let f = fwd.get(&e).copied().unwrap_or(0);
        let b = bwd.get(&e).copied().unwrap_or(0);
        if f + b != 2 {
            edges_covered_twice = false;
            failures.push(format!("edge {e} covered {} times", f + b));
        }
        if f != 1 || b != 1 {
            directions_compatible = false;
            if f + b == 2 {
                failures.push(format!(
                    "edge {e} traversed twice in the same direction"
                ));
            }
        }
    }
    OcdcReport {
        cycle_count: cdc.cycles.len(),
        arc_count: cdc.arc_count(),
        cycles_are_cycles,
        edges_covered_twice,
        directions_compatible,
        failures,
    }
}

/// Convenience: surface identity of a pipeline output.
pub fn output_surface(result: &OczeResult) -> Result<SurfaceId> {
    surface_id(&result.scheme)
}

/// Checks closed 2-cell explicitly (used by callers printing reports).
pub fn output_is_closed_2cell(result: &OczeResult) -> Result<bool> {
    is_closed_2cell(&result.scheme)
}
