//! Command-line dispatch. Every subcommand produces a [`Report`]; output is
//! human-readable text, or JSON with `--json`.
//!
//! Exit codes: 0 when no check failed, 1 when some check failed (or, with
//! `--strict`, was skipped), 2 for usage errors and unreadable input.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::homo::{self, Dimension, DEFAULT_CAP};
use crate::io::{load_quiver, load_rep, write_quiver};
use crate::kron::{example2_checks, verify_example2, ProjPoint};
use crate::nodesplit::{
    brick_census, split_at_node, verify_example1, CensusOptions, CensusScope, Example1Options,
    DEFAULT_BUDGET,
};
use crate::par::Execution;
use crate::quiver::{classify_underlying_graph, example_two, BoundQuiverAlgebra};
use crate::rep::{hom_basis, Representation};
use crate::report::{Check, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "quiverlab", version, about = "Exact computations with bound quiver algebras")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Treat skipped checks as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Record wall-clock time in the report (makes output non-deterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Run sequentially instead of on the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a quiver file and any number of representation files.
    Check { quiver: PathBuf, reps: Vec<PathBuf> },
    /// Global dimension of the algebra.
    Gldim {
        quiver: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Minimal projective resolution of a simple module.
    Resolve {
        quiver: PathBuf,
        #[arg(long, value_name = "VERTEX")]
        simple: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Dimension of Hom(A, B).
    Hom { quiver: PathBuf, rep_a: PathBuf, rep_b: PathBuf },
    /// Dimensions of Ext^1(A, B) and Ext^2(A, B).
    Ext { quiver: PathBuf, rep_a: PathBuf, rep_b: PathBuf },
    /// Split the quiver at a node.
    NodeSplit {
        quiver: PathBuf,
        #[arg(long, value_name = "VERTEX")]
        vertex: String,
    },
    /// Exhaustive census of indecomposables or bricks over a prime field.
    Bricks {
        quiver: PathBuf,
        #[arg(long, value_name = "CSV")]
        max_dim: String,
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value_t = ScopeArg::Indecomposables)]
        scope: ScopeArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Run a verification suite for one of the example algebras.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScopeArg {
    Bricks,
    Indecomposables,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// The family Λ_n with a node at vertex 2.
    Example1(Example1Args),
    /// The Kronecker algebra with a returning arrow and its Ext_D table.
    Example2(Example2Args),
}

#[derive(Args, Debug)]
pub struct Example1Args {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub field: String,
    #[arg(long, value_name = "CSV")]
    pub max_dim: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Args, Debug)]
pub struct Example2Args {
    #[arg(long)]
    pub field: String,
    /// Comma-separated points; `inf` is the point at infinity.
    #[arg(long, value_name = "CSV")]
    pub sample: String,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: msg.into() }
}

fn parse_field(s: &str) -> Result<Field> {
    Field::from_str(s)
}

fn parse_csv(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad bound {x:?} in {s:?}"))))
        .collect()
}

fn algebra(path: &PathBuf) -> Result<Arc<BoundQuiverAlgebra>> {
    Ok(Arc::new(load_quiver(path)?.algebra))
}

fn info<A: serde::Serialize>(name: &str, actual: A, details: impl Into<String>) -> Check {
    Check::with_status(name, Status::Pass, serde_json::Value::Null, actual, details)
}

fn dimension_check(name: &str, d: Dimension, what: &str) -> Check {
    match d {
        Dimension::Exact(x) => info(name, x, what.to_string()),
        Dimension::AtLeast(x) => Check::skipped(name, serde_json::Value::Null, format!("{what}: cap reached, at least {x}")),
    }
}

/// Parse arguments and run; never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => usage(text),
            };
        }
    };
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let started = Instant::now();
    let mut report = match dispatch(&cli.command, exec) {
        Ok(r) => r,
        Err(e) => return usage(format!("error: {e}\n")),
    };
    if cli.timing {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    let code = report.exit_code(cli.strict);
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn command_line(cmd: &Command) -> String {
    match cmd {
        Command::Check { .. } => "check",
        Command::Gldim { .. } => "gldim",
        Command::Resolve { .. } => "resolve",
        Command::Hom { .. } => "hom",
        Command::Ext { .. } => "ext",
        Command::NodeSplit { .. } => "node-split",
        Command::Bricks { .. } => "bricks",
        Command::Verify(Verify::Example1(_)) => "verify example1",
        Command::Verify(Verify::Example2(_)) => "verify example2",
    }
    .to_string()
}

fn dispatch(cmd: &Command, exec: Execution) -> Result<Report> {
    let mut report = Report::new(command_line(cmd));
    match cmd {
        Command::Check { quiver, reps } => {
            let file = load_quiver(quiver)?;
            let alg = Arc::new(file.algebra);
            let class = classify_underlying_graph(alg.quiver())
                .map(|c| c.to_string())
                .unwrap_or_else(|e| e.to_string());
            report.push(info(
                "quiver",
                json!({
                    "name": file.name,
                    "vertices": alg.num_vertices(),
                    "arrows": alg.quiver().num_arrows(),
                    "relations": alg.relations().len(),
                    "dimension": alg.dim(),
                    "cartan": alg.cartan(),
                }),
                format!("admissible bound quiver; underlying graph {class}"),
            ));
            for path in reps {
                let name = format!("rep {}", path.display());
                report.push(match load_rep(&alg, path) {
                    Ok(m) => info(&name, json!({ "field": m.field().to_string(), "dims": m.dims() }), "relations hold"),
                    Err(e) => Check::with_status(&name, Status::Fail, "valid", serde_json::Value::Null, e.to_string()),
                });
            }
        }
        Command::Gldim { quiver, field, cap } => {
            let alg = algebra(quiver)?;
            let field = parse_field(field)?;
            let d = homo::global_dimension(&alg, field, *cap, exec)?;
            report.push(dimension_check("global_dimension", d, &format!("over {field}")));
        }
        Command::Resolve { quiver, simple, field, cap } => {
            let alg = algebra(quiver)?;
            let field = parse_field(field)?;
            let v = alg.quiver().vertex_index(simple)?;
            let s = Representation::simple(&alg, field, v)?;
            let res = homo::min_resolution(&s, *cap)?;
            let names = alg.quiver().vertices();
            let terms: Vec<String> = res
                .multiplicities
                .iter()
                .map(|mult| {
                    let parts: Vec<String> = mult
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(u, &k)| if k == 1 { format!("P({})", names[u]) } else { format!("P({})^{k}", names[u]) })
                        .collect();
                    if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }
                })
                .collect();
            let d = res.length;
            report.push(
                dimension_check("projective_dimension", d, &format!("S({simple}) over {field}"))
                    .witness(json!({ "terms": terms, "multiplicities": res.multiplicities })),
            );
        }
        Command::Hom { quiver, rep_a, rep_b } => {
            let alg = algebra(quiver)?;
            let (a, b) = (load_rep(&alg, rep_a)?, load_rep(&alg, rep_b)?);
            let h = hom_basis(&a, &b)?;
            report.push(info("hom_dimension", h.dim(), format!("over {}", a.field())));
        }
        Command::Ext { quiver, rep_a, rep_b } => {
            let alg = algebra(quiver)?;
            let (a, b) = (load_rep(&alg, rep_a)?, load_rep(&alg, rep_b)?);
            let e1 = homo::ext1(&a, &b)?;
            report.push(info("ext1_dimension", e1.dim(), format!("over {}", a.field())));
            let e2 = homo::ext2_dim(&a, &b)?;
            report.push(info("ext2_dimension", e2, format!("over {}", a.field())));
        }
        Command::NodeSplit { quiver, vertex } => {
            let file = load_quiver(quiver)?;
            let alg = Arc::new(file.algebra.clone());
            let v = alg.quiver().vertex_index(vertex)?;
            match split_at_node(&alg, v) {
                Err(e @ Error::NotANode(_)) => report.push(Check::with_status(
                    "is_node",
                    Status::Fail,
                    true,
                    false,
                    e.to_string(),
                )),
                Err(e) => return Err(e),
                Ok(split) => {
                    report.push(info("is_node", true, format!("vertex {vertex}")));
                    let class = classify_underlying_graph(split.split.quiver())?;
                    let text = write_quiver(&crate::io::QuiverFile {
                        name: format!("{}_split", file.name),
                        algebra: (*split.split).clone(),
                    });
                    report.push(
                        info("split_quiver", class.to_string(), format!("underlying graph {class}"))
                            .witness(json!({ "quiver": text, "dropped_relations": split.data.dropped_relations })),
                    );
                }
            }
        }
        Command::Bricks { quiver, max_dim, field, scope, budget } => {
            let alg = algebra(quiver)?;
            let bounds = parse_csv(max_dim)?;
            let p = match parse_field(field)? {
                Field::Prime(p) => p,
                Field::Rationals => return Err(Error::BadParameter("a census needs a prime field".into())),
            };
            let scope = match scope {
                ScopeArg::Bricks => CensusScope::Bricks,
                ScopeArg::Indecomposables => CensusScope::Indecomposables,
            };
            let opts = CensusOptions { scope, budget: *budget, exec };
            match brick_census(&alg, &bounds, p, &opts) {
                Err(e @ Error::BudgetExceeded { .. }) => {
                    report.push(Check::skipped("census", serde_json::Value::Null, e.to_string()))
                }
                Err(e) => return Err(e),
                Ok(c) => {
                    let q = alg.quiver();
                    let classes: Vec<_> = c
                        .classes
                        .iter()
                        .map(|k| {
                            let mats: Vec<Vec<Vec<String>>> = k
                                .module
                                .mats()
                                .iter()
                                .map(|m| {
                                    (0..m.rows())
                                        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                                        .collect()
                                })
                                .collect();
                            json!({
                                "dims": k.module.dims(),
                                "matrices": q.arrows().iter().map(|a| a.name.clone()).zip(mats).collect::<Vec<_>>(),
                                "analysis": k.analysis,
                                "zero_arrows": k.zero_arrows,
                                "members": k.members.to_string(),
                            })
                        })
                        .collect();
                    report.push(Check::compare(
                        "census_consistency",
                        true,
                        c.consistent,
                        format!("{} assignments, {} candidates", c.assignments, c.candidates),
                    ));
                    let status = if c.counts.undecided > 0 { Status::Skipped } else { Status::Pass };
                    report.push(
                        Check::with_status(
                            "census",
                            status,
                            serde_json::Value::Null,
                            c.counts,
                            format!("{} classes over F_{p}, bounds {max_dim}", c.classes.len()),
                        )
                        .witness(classes),
                    );
                }
            }
        }
        Command::Verify(Verify::Example1(args)) => {
            let field = parse_field(&args.field)?;
            let mut opts = Example1Options::new(args.n, field);
            opts.exec = exec;
            opts.budget = args.budget;
            if let Some(csv) = &args.max_dim {
                opts.bounds = Some(parse_csv(csv)?);
            }
            report.command = format!("verify example1 --n {} --field {field}", args.n);
            if let Some(csv) = &args.max_dim {
                report.command.push_str(&format!(" --max-dim {csv}"));
            }
            report.extend(verify_example1(&opts)?);
        }
        Command::Verify(Verify::Example2(args)) => {
            let field = parse_field(&args.field)?;
            let sample = ProjPoint::parse_list(field, &args.sample)?;
            let alg = Arc::new(example_two()?);
            report.command = format!("verify example2 --field {field} --sample {}", args.sample);
            let table = verify_example2(&alg, field, &sample, exec)?;
            report.extend(example2_checks(&alg, &table)?);
        }
    }
    Ok(report)
}
