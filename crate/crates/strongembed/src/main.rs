//! Command-line interface: face tracing, representativity, verification,
//! face rings, the crosscap surgery, reductions, the near-triangulation
//! oracle and the end-to-end pipelines.
//!
//! Exit codes: 0 on success, 1 on malformed input or usage errors, 2 when
//! a checked property fails (nonorientable, no ring, nonplanar, ...).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use strongembed::embedding::{
    is_closed_2cell, representativity, surface_id, trace_faces, EmbeddingScheme,
};
use strongembed::error::Error;
use strongembed::io::{parse_document, write_scheme, SchemeDoc};
use strongembed::neartri;
use strongembed::pipeline;
use strongembed::reductions::{apply_reduction, detect_reduction};
use strongembed::rings;
use strongembed::surgery;

#[derive(Parser)]
#[command(
    name = "strongembed",
    about = "Orientable closed 2-cell embeddings and oriented cycle double covers \
             of projective-planar graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArg {
    /// Input file (`e`/`v`/`sig` lines).
    file: PathBuf,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the facial walks of an embedding scheme.
    Faces(FileArg),
    /// Representativity of a projective-planar scheme.
    Rep(FileArg),
    /// Verify scheme properties; failures exit with code 2.
    Verify {
        #[command(flatten)]
        file: FileArg,
        /// Require every facial walk to be a cycle.
        #[arg(long)]
        closed2cell: bool,
        /// Require the embedding to be orientable.
        #[arg(long)]
        orientable: bool,
    },
    /// List face rings, with optional filters.
    Rings {
        #[command(flatten)]
        file: FileArg,
        /// Only rings of odd length.
        #[arg(long)]
        odd: bool,
        /// Only elementary rings.
        #[arg(long)]
        elementary: bool,
        /// Only noncontractible rings.
        #[arg(long)]
        noncontractible: bool,
    },
    /// Convert to an orientable closed 2-cell embedding via the odd-ring
    /// surgery.
    Orient {
        #[command(flatten)]
        file: FileArg,
        /// Force a ring by its face indices, comma separated.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Show the reduction tree.
    Reduce {
        #[command(flatten)]
        file: FileArg,
        /// Print witnesses for each step.
        #[arg(long)]
        trace: bool,
    },
    /// Near-triangulation checks and the exhaustive parity sweep.
    Neartri {
        /// Exhaustive sweep over near-triangulations with at most N
        /// vertices.
        #[arg(long, value_name = "N")]
        sweep: Option<usize>,
        /// Check one near-triangulation file (needs an `outer` line).
        #[arg(long, value_name = "FILE")]
        check: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Orientable closed 2-cell embedding pipeline for cubic inputs.
    Ocze {
        #[command(flatten)]
        file: FileArg,
        /// Print the recursion tree.
        #[arg(long)]
        trace: bool,
    },
    /// Orientable cycle double cover for 2-edge-connected inputs.
    Ocdc(FileArg),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_scheme(path: &PathBuf) -> Result<EmbeddingScheme, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_document(&text)?.scheme()
}

fn emit<T: Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Internal(format!("json: {e}")))?;
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Faces(arg) => {
            let s = load_scheme(&arg.file)?;
            let faces = trace_faces(&s)?;
            let id = surface_id(&s)?;
            if arg.json {
                #[derive(Serialize)]
                struct FaceReport {
                    face_count: usize,
                    euler_characteristic: i64,
                    orientable: bool,
                    closed_2_cell: bool,
                    faces: Vec<Vec<usize>>,
                }
                emit(&FaceReport {
                    face_count: faces.len(),
                    euler_characteristic: id.euler_characteristic,
                    orientable: id.orientable,
                    closed_2_cell: is_closed_2cell(&s)?,
                    faces: faces
                        .iter()
                        .map(|f| f.vertices(s.graph()).iter().map(|v| v.0).collect())
                        .collect(),
                })?;
            } else {
                println!("surface: {id}");
                println!("faces: {}", faces.len());
                for (i, f) in faces.iter().enumerate() {
                    let vs: Vec<String> =
                        f.vertices(s.graph()).iter().map(|v| v.to_string()).collect();
                    println!("  face {i}: ({})", vs.join(" "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rep(arg) => {
            let s = load_scheme(&arg.file)?;
            let rho = representativity(&s)?;
            if arg.json {
                #[derive(Serialize)]
                struct RepReport {
                    representativity: usize,
                }
                emit(&RepReport {
                    representativity: rho,
                })?;
            } else {
                println!("representativity: {rho}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file,
            closed2cell,
            orientable,
        } => {
            let s = load_scheme(&file.file)?;
            let id = surface_id(&s)?;
            let is_c2c = is_closed_2cell(&s)?;
            let mut pass = true;
            if closed2cell && !is_c2c {
                pass = false;
            }
            if orientable && !id.orientable {
                pass = false;
            }
            if file.json {
                #[derive(Serialize)]
                struct VerifyReport {
                    euler_characteristic: i64,
                    orientable: bool,
                    closed_2_cell: bool,
                    pass: bool,
                }
                emit(&VerifyReport {
                    euler_characteristic: id.euler_characteristic,
                    orientable: id.orientable,
                    closed_2_cell: is_c2c,
                    pass,
                })?;
            } else {
                println!("surface: {id}");
                println!("closed 2-cell: {is_c2c}");
                println!("orientable: {}", id.orientable);
                println!("{}", if pass { "PASS" } else { "FAIL" });
            }
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Rings {
            file,
            odd,
            elementary,
            noncontractible,
        } => {
            let s = load_scheme(&file.file)?;
            let ctx = rings::FaceAnalysis::new(&s)?;
            let found = rings::all_rings(&s, &|ring| {
                if odd && ring.len() % 2 == 0 {
                    return Ok(false);
                }
                if elementary && !rings::is_elementary(&ctx, ring)? {
                    return Ok(false);
                }
                if noncontractible && !rings::is_noncontractible_ring(&s, ring)? {
                    return Ok(false);
                }
                Ok(true)
            })?;
            if file.json {
                emit(&found)?;
            } else {
                println!("rings: {}", found.len());
                for r in &found {
                    let faces: Vec<String> = r.faces.iter().map(|f| f.to_string()).collect();
                    let touches: Vec<String> = r
                        .touch_points
                        .iter()
                        .map(|tp| {
                            let es: Vec<String> =
                                tp.edges.iter().map(|e| e.to_string()).collect();
                            if es.is_empty() {
                                format!("v{}", tp.vertices[0])
                            } else {
                                format!("e{}", es.join(",e"))
                            }
                        })
                        .collect();
                    println!("  ({}) touching [{}]", faces.join(" "), touches.join(" "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orient { file, ring } => {
            let s = load_scheme(&file.file)?;
            let chosen = match ring {
                Some(spec) => {
                    let faces: Result<Vec<usize>, _> =
                        spec.split(',').map(|t| t.trim().parse::<usize>()).collect();
                    let faces = faces.map_err(|_| Error::Precondition(
                        "--ring expects comma-separated face indices".into(),
                    ))?;
                    let ctx = rings::FaceAnalysis::new(&s)?;
                    rings::assemble_ring(&ctx, &faces)?
                        .ok_or_else(|| Error::InvalidRing("faces do not form a ring".into()))?
                }
                None => rings::find_odd_ring(&s)?.ok_or_else(|| {
                    Error::Precondition("no odd noncontractible elementary face ring".into())
                })?,
            };
            let out = surgery::orient_via_odd_ring(&s, &chosen)?;
            let id = surface_id(&out.scheme)?;
            if file.json {
                #[derive(Serialize)]
                struct OrientReport {
                    ring_faces: Vec<usize>,
                    flipped_edges: Vec<usize>,
                    euler_characteristic: i64,
                    orientable: bool,
                    closed_2_cell: bool,
                    boundary_cycle_lengths: Vec<usize>,
                    scheme: SchemeDoc,
                }
                emit(&OrientReport {
                    ring_faces: chosen.faces.clone(),
                    flipped_edges: out.cut_system.curve.iter().map(|&(_, e)| e.0).collect(),
                    euler_characteristic: id.euler_characteristic,
                    orientable: id.orientable,
                    closed_2_cell: is_closed_2cell(&out.scheme)?,
                    boundary_cycle_lengths: out
                        .boundary_cycles
                        .iter()
                        .map(|w| w.len())
                        .collect(),
                    scheme: SchemeDoc::from(&out.scheme),
                })?;
            } else {
                println!("# ring faces: {:?}", chosen.faces);
                println!("# output surface: {id}");
                print!("{}", write_scheme(&out.scheme));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { file, trace } => {
            let s = load_scheme(&file.file)?;
            #[derive(Serialize)]
            struct ReduceNode {
                vertices: usize,
                edges: usize,
                status: String,
                witness: Option<String>,
                children: Vec<ReduceNode>,
            }
            fn walk(s: &EmbeddingScheme, trace: bool) -> Result<ReduceNode, Error> {
                let g = s.graph();
                let (status, witness, children) = match detect_reduction(s)? {
                    None => {
                        let status = if strongembed::reductions::is_base_case(g) {
                            "base case".to_string()
                        } else {
                            "irreducible".to_string()
                        };
                        (status, None, Vec::new())
                    }
                    Some(w) => {
                        let applied = apply_reduction(s, &w)?;
                        let mut children = Vec::new();
                        for child in &applied.children {
                            children.push(walk(&child.scheme, trace)?);
                        }
                        (
                            format!("{:?}", w.kind()),
                            trace.then(|| format!("{w:?}")),
                            children,
                        )
                    }
                };
                Ok(ReduceNode {
                    vertices: g.vertex_count(),
                    edges: g.edge_count(),
                    status,
                    witness,
                    children,
                })
            }
            let tree = walk(&s, trace)?;
            if file.json {
                emit(&tree)?;
            } else {
                fn print_node(node: &ReduceNode, depth: usize) {
                    let indent = "  ".repeat(depth);
                    println!(
                        "{indent}{} (V={}, E={})",
                        node.status, node.vertices, node.edges
                    );
                    if let Some(w) = &node.witness {
                        println!("{indent}  witness: {w}");
                    }
                    for c in &node.children {
                        print_node(c, depth + 1);
                    }
                }
                print_node(&tree, 0);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Neartri { sweep, check, json } => match (sweep, check) {
            (Some(n), None) => {
                let report = neartri::prop45_sweep(n)?;
                if json {
                    emit(&report)?;
                } else {
                    println!(
                        "sweep to {} vertices: {} generated, {} qualifying, \
                         {} mixed parity, {} uniform with a degree-4 vertex, \
                         {} counterexamples",
                        report.max_vertices,
                        report.generated,
                        report.qualifying,
                        report.mixed,
                        report.uniform_with_degree_four,
                        report.counterexamples
                    );
                }
                Ok(if report.counterexamples == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(2)
                })
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(&path)?;
                let doc = parse_document(&text)?;
                let outer = doc.outer.clone().ok_or_else(|| Error::Precondition(
                    "near-triangulation file needs an `outer` line".into(),
                ))?;
                let tri = neartri::NearTriangulation::new(doc.scheme()?, outer)?;
                let verdict = neartri::check_prop45(&tri)?;
                if json {
                    emit(&verdict)?;
                } else {
                    println!("{verdict:?}");
                }
                let ok = matches!(
                    verdict,
                    neartri::Prop45Verdict::MixedParity { .. }
                        | neartri::Prop45Verdict::UniformParity { .. }
                );
                Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
            }
            _ => Err(Error::Precondition(
                "use exactly one of --sweep N or --check FILE".into(),
            )),
        },
        Command::Ocze { file, trace } => {
            let s = load_scheme(&file.file)?;
            let result = pipeline::ocze(&s)?;
            let id = surface_id(&result.scheme)?;
            if file.json {
                #[derive(Serialize)]
                struct OczeDoc {
                    report: pipeline::PipelineReport,
                    scheme: SchemeDoc,
                }
                emit(&OczeDoc {
                    report: result.report,
                    scheme: SchemeDoc::from(&result.scheme),
                })?;
            } else {
                println!("# output surface: {id}");
                if trace {
                    fn print_report(r: &pipeline::PipelineReport, depth: usize) {
                        let indent = "  ".repeat(depth);
                        match &r.action {
                            pipeline::StepAction::PlanarBase => {
                                println!("{indent}# planar base (V={}, E={})", r.vertices, r.edges);
                            }
                            pipeline::StepAction::Reduction {
                                kind,
                                four_cycle_case,
                                children,
                                ..
                            } => {
                                println!(
                                    "{indent}# reduction {:?}{} (V={}, E={})",
                                    kind,
                                    four_cycle_case
                                        .map(|c| format!(" [{c:?}]"))
                                        .unwrap_or_default(),
                                    r.vertices,
                                    r.edges
                                );
                                for c in children {
                                    print_report(c, depth + 1);
                                }
                            }
                            pipeline::StepAction::OddRingSurgery {
                                ring_length,
                                boundary_cycle_lengths,
                                ..
                            } => {
                                println!(
                                    "{indent}# odd-ring surgery (ring length {}, boundary \
                                     cycles {:?})",
                                    ring_length, boundary_cycle_lengths
                                );
                            }
                        }
                    }
                    print_report(&result.report, 0);
                }
                print!("{}", write_scheme(&result.scheme));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ocdc(arg) => {
            let s = load_scheme(&arg.file)?;
            let result = pipeline::ocdc(&s)?;
            if arg.json {
                #[derive(Serialize)]
                struct OcdcDoc {
                    verification: pipeline::OcdcReport,
                    cycles: Vec<Vec<usize>>,
                    ocze_report: pipeline::PipelineReport,
                }
                emit(&OcdcDoc {
                    verification: result.verification,
                    cycles: result
                        .cdc
                        .cycles
                        .iter()
                        .map(|c| {
                            c.iter()
                                .map(|&a| s.graph().arc_source(a).0)
                                .collect()
                        })
                        .collect(),
                    ocze_report: result.ocze_report,
                })?;
            } else {
                println!("oriented cycle double cover: {} cycles", result.cdc.cycles.len());
                for (i, c) in result.cdc.cycles.iter().enumerate() {
                    let vs: Vec<String> = c
                        .iter()
                        .map(|&a| s.graph().arc_source(a).to_string())
                        .collect();
                    println!("  cycle {i}: ({})", vs.join(" "));
                }
                println!(
                    "verified: each of {} edges once per direction",
                    s.graph().edge_count()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
