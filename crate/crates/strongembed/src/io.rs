//! Text format for graphs and embedding schemes, and JSON documents.
//!
//! ```text
//! # comment
//! e <id> <u> <v>          one line per edge
//! v <id> : <eid> ...      clockwise rotation, one line per vertex
//! sig <eid> -1            negative edges (default +1)
//! outer <vid> ...         optional outer cycle (near-triangulations)
//! ```
//!
//! Edge ids in a file may be arbitrary distinct integers; they are
//! remapped to dense ids in file order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::embedding::{EmbeddingScheme, Sign};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

/// Parsed file: always a graph, optionally rotations, signs, outer cycle.
#[derive(Clone, Debug)]
pub struct Document {
    pub graph: Graph,
    pub rotations: BTreeMap<VertexId, Vec<EdgeId>>,
    pub signature: Vec<Sign>,
    pub outer: Option<Vec<VertexId>>,
}

impl Document {
    pub fn has_rotations(&self) -> bool {
        !self.rotations.is_empty()
    }

    /// Builds the embedding scheme; every vertex needs a rotation.
    pub fn scheme(&self) -> Result<EmbeddingScheme> {
        if self.rotations.is_empty() {
            return Err(Error::Precondition(
                "file has no rotation lines (`v <id> : ...`)".into(),
            ));
        }
        EmbeddingScheme::new(
            self.graph.clone(),
            self.rotations.clone(),
            self.signature.clone(),
        )
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_ids: BTreeMap<usize, EdgeId> = BTreeMap::new();
    let mut raw_rotations: Vec<(usize, usize, Vec<usize>)> = Vec::new(); // line, vertex, file ids
    let mut raw_signs: Vec<(usize, usize, i64)> = Vec::new();
    let mut outer: Option<Vec<VertexId>> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        let head = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        let parse_num = |tok: &str| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a nonnegative integer, got `{tok}`"),
            })
        };
        match head {
            "e" => {
                if rest.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        msg: "edge line must be `e <id> <u> <v>`".into(),
                    });
                }
                let id = parse_num(rest[0])?;
                let u = parse_num(rest[1])?;
                let v = parse_num(rest[2])?;
                if u == v {
                    return Err(Error::Parse {
                        line,
                        msg: format!("loop edge at vertex {u}"),
                    });
                }
                if edge_ids.contains_key(&id) {
                    return Err(Error::Parse {
                        line,
                        msg: format!("duplicate edge id {id}"),
                    });
                }
                edge_ids.insert(id, EdgeId(edges.len()));
                edges.push((u, v));
            }
            "v" => {
                if rest.len() < 2 || rest[1] != ":" {
                    return Err(Error::Parse {
                        line,
                        msg: "rotation line must be `v <id> : <eid> ...`".into(),
                    });
                }
                let v = parse_num(rest[0])?;
                let ids: Result<Vec<usize>> = rest[2..].iter().map(|t| parse_num(t)).collect();
                raw_rotations.push((line, v, ids?));
            }
            "sig" => {
                if rest.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        msg: "signature line must be `sig <eid> -1`".into(),
                    });
                }
                let id = parse_num(rest[0])?;
                let sign: i64 = rest[1].parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("expected 1 or -1, got `{}`", rest[1]),
                })?;
                if sign != 1 && sign != -1 {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected 1 or -1, got {sign}"),
                    });
                }
                raw_signs.push((line, id, sign));
            }
            "outer" => {
                let ids: Result<Vec<usize>> = rest.iter().map(|t| parse_num(t)).collect();
                outer = Some(ids?.into_iter().map(VertexId).collect());
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown directive `{other}`"),
                });
            }
        }
    }

    let graph = Graph::build(&edges)?;
    let mut rotations = BTreeMap::new();
    for (line, v, file_ids) in raw_rotations {
        let mapped: Result<Vec<EdgeId>> = file_ids
            .iter()
            .map(|id| {
                edge_ids.get(id).copied().ok_or(Error::Parse {
                    line,
                    msg: format!("rotation references unknown edge id {id}"),
                })
            })
            .collect();
        rotations.insert(VertexId(v), mapped?);
    }
    let mut signature = vec![Sign::Plus; edges.len()];
    for (line, id, sign) in raw_signs {
        let e = edge_ids.get(&id).copied().ok_or(Error::Parse {
            line,
            msg: format!("signature references unknown edge id {id}"),
        })?;
        if sign == -1 {
            signature[e.0] = Sign::Minus;
        }
    }
    Ok(Document {
        graph,
        rotations,
        signature,
        outer,
    })
}

pub fn parse_scheme(text: &str) -> Result<EmbeddingScheme> {
    parse_document(text)?.scheme()
}

/// Writes a scheme in the input format (dense edge ids).
pub fn write_scheme(s: &EmbeddingScheme) -> String {
    let g = s.graph();
    let mut out = String::new();
    for e in g.edges() {
        let (u, v) = g.ends(e);
        out.push_str(&format!("e {} {} {}\n", e, u, v));
    }
    for v in g.vertices() {
        let rot: Vec<String> = s.rotation(v).iter().map(|e| e.to_string()).collect();
        out.push_str(&format!("v {} : {}\n", v, rot.join(" ")));
    }
    for e in g.edges() {
        if s.sign(e).is_negative() {
            out.push_str(&format!("sig {} -1\n", e));
        }
    }
    out
}

/// JSON form of a scheme.
#[derive(Clone, Debug, Serialize)]
pub struct SchemeDoc {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeDoc>,
    pub rotations: Vec<RotationDoc>,
    pub negative_edges: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeDoc {
    pub id: usize,
    pub endpoints: [usize; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct RotationDoc {
    pub vertex: usize,
    pub edges: Vec<usize>,
}

impl From<&EmbeddingScheme> for SchemeDoc {
    fn from(s: &EmbeddingScheme) -> SchemeDoc {
        let g = s.graph();
        SchemeDoc {
            vertices: g.vertices().map(|v| v.0).collect(),
            edges: g
                .edges()
                .map(|e| {
                    let (u, v) = g.ends(e);
                    EdgeDoc {
                        id: e.0,
                        endpoints: [u.0, v.0],
                    }
                })
                .collect(),
            rotations: g
                .vertices()
                .map(|v| RotationDoc {
                    vertex: v.0,
                    edges: s.rotation(v).iter().map(|e| e.0).collect(),
                })
                .collect(),
            negative_edges: s.negative_edges().iter().map(|e| e.0).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_petersen() {
        let s = fixtures::petersen_projective();
        let text = write_scheme(&s);
        let parsed = parse_scheme(&text).unwrap();
        assert_eq!(parsed, s);
    }

    #[test]
    fn round_trip_projective_digon() {
        let s = fixtures::projective_digon();
        let text = write_scheme(&s);
        assert!(text.contains("sig 1 -1"));
        let parsed = parse_scheme(&text).unwrap();
        assert_eq!(parsed, s);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "\n# a triangle\ne 0 0 1\ne 1 1 2 # third vertex\ne 2 2 0\n\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.graph.edge_count(), 3);
        assert!(!doc.has_rotations());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "e 0 0 1\ne 0 1 2\n";
        match parse_document(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let text = "e 0 0 0\n";
        assert!(matches!(
            parse_document(text),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn sparse_edge_ids_are_remapped_in_file_order() {
        let text = "e 10 0 1\ne 5 1 2\ne 7 2 0\nv 0 : 10 7\nv 1 : 10 5\nv 2 : 5 7\n";
        let s = parse_scheme(text).unwrap();
        // File order: edge 10 -> 0, edge 5 -> 1, edge 7 -> 2.
        assert_eq!(s.graph().ends(EdgeId(0)), (VertexId(0), VertexId(1)));
        assert_eq!(s.graph().ends(EdgeId(1)), (VertexId(1), VertexId(2)));
    }

    #[test]
    fn missing_rotation_is_rejected() {
        let text = "e 0 0 1\ne 1 1 2\ne 2 2 0\nv 0 : 0 2\n";
        assert!(parse_scheme(text).is_err());
    }
}
