//! Command-line front end for Enriques diagram adjacency queries.
//!
//! Exit codes are machine-parsable: 0 for success or a positive answer,
//! 1 for a negative mathematical answer (NOT_LINEAR, NOT_ADJACENT, a failed
//! verification), 2 for input errors, 3 for budget exhaustion or an
//! indeterminate verdict.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use enriques::{
    adjacency_verdict_with, dominates_with, linear_adjacent_with, validate_diagram,
    verify_certificate, CertificateFile, Error, LinearVerdict, NotLinearReason, OrderedDiagram,
    RenderFormat, SearchCaps, VerdictKind, VertexId, WeightedDiagram,
};

#[derive(Parser)]
#[command(name = "enriques", version, about = "Weighted Enriques diagrams and adjacency of plane curve singularity types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram file against the five axioms and report violations.
    Validate { file: PathBuf },
    /// Degree, delta, branches, Milnor number, consistency, tameness, type.
    Info { file: PathBuf },
    /// Print the value system of a weighted diagram.
    Values {
        file: PathBuf,
        /// Comma-separated vertex ids giving an admissible ordering to use
        /// instead of file order.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Unload to a consistent diagram; prints the step log, the tame flag
    /// and the canonical serialization of the result.
    Unload { file: PathBuf },
    /// Does the left weighted diagram dominate the right one?
    Dominates {
        left: PathBuf,
        right: PathBuf,
        /// Write the certificate as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Node cap for the domination search.
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Is the first type linearly adjacent to the second?
    LinearAdj {
        tilde: PathBuf,
        target: PathBuf,
        /// Number of free multiplicity-1 vertices the augmentation may add
        /// (default: the target's vertex count).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Full adjacency verdict cascade.
    Adj {
        tilde: PathBuf,
        target: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        node_cap: Option<u64>,
        /// Cap on (ordering, candidate, ordering) triples in the positional
        /// searches.
        #[arg(long)]
        pair_cap: Option<u64>,
        /// Vertex-count cap for candidate diagram enumeration.
        #[arg(long)]
        diagram_cap: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List diagram classes by vertex count, or types by degree bound.
    Enumerate {
        #[arg(long, conflicts_with = "max_degree")]
        vertices: Option<usize>,
        #[arg(long)]
        max_degree: Option<i64>,
        /// With --max-degree: list weighted types (implied).
        #[arg(long)]
        types: bool,
        /// Raise the safety cap of the chosen enumeration.
        #[arg(long)]
        cap: Option<i64>,
    },
    /// Emit the diagram file of a named type (A:k, D:k, E:k, Om:m, T:m:k, B:n:m).
    Make { spec: String },
    /// Render a diagram as DOT or SVG.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: FormatArg,
    },
    /// Independently re-check a certificate produced by --json.
    Verify { certificate: PathBuf },
}

/// What the command concluded, mapped onto the exit code.
enum Outcome {
    Success,
    Negative,
    Indeterminate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::from(0),
        Ok(Outcome::Negative) => ExitCode::from(1),
        Ok(Outcome::Indeterminate) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::BadParameter(format!("cannot read {}: {e}", path.display())))
}

fn read_weighted(path: &Path) -> Result<WeightedDiagram, Error> {
    enriques::parse_weighted(&read_file(path)?)
}

fn write_json(path: &Option<PathBuf>, cert: &CertificateFile) -> Result<(), Error> {
    if let Some(path) = path {
        fs::write(path, cert.to_json())
            .map_err(|e| Error::BadParameter(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn caps_with(node_cap: Option<u64>, pair_cap: Option<u64>, diagram_cap: Option<usize>) -> SearchCaps {
    let mut caps = SearchCaps::default();
    if let Some(n) = node_cap {
        caps.domination_nodes = n;
    }
    if let Some(p) = pair_cap {
        caps.pair_cap = p;
    }
    if let Some(d) = diagram_cap {
        caps.diagram_cap = d;
    }
    caps
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Validate { file } => {
            let (raw, _) = enriques::parse_raw(&read_file(&file)?)?;
            let defects = validate_diagram(&raw);
            if defects.is_empty() {
                println!("ok: {} vertices, all axioms satisfied", raw.vertices.len());
                Ok(Outcome::Success)
            } else {
                for d in &defects {
                    println!("violation: {}", d.describe(&raw));
                }
                Ok(Outcome::Negative)
            }
        }
        Command::Info { file } => {
            let w = read_weighted(&file)?;
            let report = w.unload()?;
            println!("vertices:   {}", w.vertex_count());
            println!("degree:     {}", w.degree());
            println!("consistent: {}", w.is_consistent());
            println!("tame:       {}", report.tame);
            println!("type:       {}", w.is_type());
            if w.is_consistent() {
                let inv = w.invariants()?;
                println!("delta:      {}", inv.delta);
                println!("branches:   {}", inv.branches);
                println!("milnor:     {}", inv.milnor);
            } else {
                println!("(delta, branches and milnor require a consistent diagram)");
            }
            Ok(Outcome::Success)
        }
        Command::Values { file, ordering } => {
            let w = read_weighted(&file)?;
            let order: Vec<VertexId> = match ordering {
                None => w.diagram().vertices().collect(),
                Some(spec) => {
                    let mut order = Vec::new();
                    for label in spec.split(',') {
                        let label = label.trim();
                        order.push(w.diagram().find_label(label).ok_or_else(|| {
                            Error::BadParameter(format!("unknown vertex id '{label}' in --ordering"))
                        })?);
                    }
                    OrderedDiagram::new(w.diagram(), order.clone())?;
                    order
                }
            };
            let values = w.values();
            println!("{:<12} {:>6} {:>6}", "vertex", "mult", "value");
            for v in order {
                println!(
                    "{:<12} {:>6} {:>6}",
                    w.diagram().label(v),
                    w.mult(v),
                    values.get(v)
                );
            }
            Ok(Outcome::Success)
        }
        Command::Unload { file } => {
            let w = read_weighted(&file)?;
            let report = w.unload()?;
            for (i, step) in report.steps.iter().enumerate() {
                println!(
                    "step {}: vertex '{}' excess {} increment {}",
                    i + 1,
                    w.diagram().label(step.vertex),
                    step.excess,
                    step.increment
                );
            }
            println!("tame: {}", report.tame);
            print!("{}", enriques::serialize_weighted(&report.result));
            Ok(Outcome::Success)
        }
        Command::Dominates { left, right, json, node_cap } => {
            let l = read_weighted(&left)?;
            let r = read_weighted(&right)?;
            let caps = caps_with(node_cap, None, None);
            let outcome = dominates_with(&l, &r, &caps)?;
            let cert = enriques::domination_certificate(&l, &r, outcome.as_ref());
            write_json(&json, &cert)?;
            match outcome {
                Some(dom) => {
                    println!("DOMINATES ({} vertices embedded)", dom.embedding.len());
                    Ok(Outcome::Success)
                }
                None => {
                    println!("NOT_DOMINATED");
                    Ok(Outcome::Negative)
                }
            }
        }
        Command::LinearAdj { tilde, target, budget, json, node_cap } => {
            let t = read_weighted(&tilde)?;
            let g = read_weighted(&target)?;
            let caps = caps_with(node_cap, None, None);
            let verdict = linear_adjacent_with(&t, &g, &caps, budget)?;
            let cert = enriques::linear_certificate(&t, &g, &verdict);
            write_json(&json, &cert)?;
            match verdict {
                LinearVerdict::Linear(lin) => {
                    println!(
                        "LINEAR ({} added vertices, {} embedded)",
                        lin.augmentation.added.len(),
                        lin.domination.embedding.len()
                    );
                    Ok(Outcome::Success)
                }
                LinearVerdict::NotLinear(why) => {
                    let tag = match why {
                        NotLinearReason::Semicontinuity => "semicontinuity",
                        NotLinearReason::SearchExhausted => "search-exhausted",
                    };
                    println!("NOT_LINEAR ({tag})");
                    Ok(Outcome::Negative)
                }
            }
        }
        Command::Adj { tilde, target, budget, node_cap, pair_cap, diagram_cap, json } => {
            let t = read_weighted(&tilde)?;
            let g = read_weighted(&target)?;
            let caps = caps_with(node_cap, pair_cap, diagram_cap);
            let verdict = adjacency_verdict_with(&t, &g, &caps, budget)?;
            let cert = enriques::verdict_certificate(&t, &g, &verdict);
            write_json(&json, &cert)?;
            let kind = match verdict.kind {
                VerdictKind::Linear => "LINEAR",
                VerdictKind::Adjacent => "ADJACENT",
                VerdictKind::NotAdjacent => "NOT_ADJACENT",
                VerdictKind::Unknown => "UNKNOWN",
            };
            println!("{kind} ({})", verdict.reason.tag());
            Ok(match verdict.kind {
                VerdictKind::Linear | VerdictKind::Adjacent => Outcome::Success,
                VerdictKind::NotAdjacent => Outcome::Negative,
                VerdictKind::Unknown => Outcome::Indeterminate,
            })
        }
        Command::Enumerate { vertices, max_degree, types, cap } => {
            match (vertices, max_degree) {
                (Some(n), None) => {
                    if types {
                        return Err(Error::BadParameter(
                            "--types requires --max-degree".into(),
                        ));
                    }
                    let cap = cap.map(|c| c as usize).unwrap_or(enriques::DEFAULT_DIAGRAM_CAP);
                    let all = enriques::enumerate_diagrams_capped(n, cap)?;
                    eprintln!("{} diagram classes with {} vertices", all.len(), n);
                    for (i, d) in all.iter().enumerate() {
                        if i > 0 {
                            println!();
                        }
                        print!("{}", enriques::serialize_unweighted(d));
                    }
                    Ok(Outcome::Success)
                }
                (None, Some(d)) => {
                    let cap = cap.unwrap_or(enriques::DEFAULT_TYPE_DEGREE_CAP);
                    let all = enriques::enumerate_types_capped(d, cap)?;
                    eprintln!("{} types of degree <= {}", all.len(), d);
                    for (i, w) in all.iter().enumerate() {
                        if i > 0 {
                            println!();
                        }
                        print!("{}", enriques::serialize_weighted(w));
                    }
                    Ok(Outcome::Success)
                }
                _ => Err(Error::BadParameter(
                    "exactly one of --vertices or --max-degree is required".into(),
                )),
            }
        }
        Command::Make { spec } => {
            let t = enriques::named_type(&spec)?;
            print!("{}", enriques::serialize_weighted(&t.diagram));
            Ok(Outcome::Success)
        }
        Command::Render { file, format } => {
            let (diagram, mults) = enriques::parse_diagram(&read_file(&file)?)?;
            let fmt = match format {
                FormatArg::Dot => RenderFormat::Dot,
                FormatArg::Svg => RenderFormat::Svg,
            };
            print!("{}", enriques::render(&diagram, mults.as_deref(), fmt));
            Ok(Outcome::Success)
        }
        Command::Verify { certificate } => {
            let cert = CertificateFile::from_json(&read_file(&certificate)?)?;
            let report = verify_certificate(&cert)?;
            for (name, ok) in &report.checks {
                println!("{} {}", if *ok { "ok  " } else { "FAIL" }, name);
            }
            for note in &report.notes {
                println!("note: {note}");
            }
            if report.ok() {
                println!("certificate verifies");
                Ok(Outcome::Success)
            } else {
                println!("certificate REJECTED");
                Ok(Outcome::Negative)
            }
        }
    }
}
