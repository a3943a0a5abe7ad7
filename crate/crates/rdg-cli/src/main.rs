//! `rdg` — rectangular diagrams on the cylinder from the command line.
//!
//! Exit codes: 0 success, 2 invalid input or usage, 3 equivalence search
//! exhausted its bounds without finding a certificate.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use rdg_core::diagram::RectDiagram;
use rdg_core::generators;
use rdg_core::geometry;
use rdg_core::invariants::InvariantReport;
use rdg_core::moves::Move;
use rdg_core::render;
use rdg_core::search::{self, MoveSet, NotFoundReason, SearchConfig, Verdict};
use serde_json::json;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "rdg", version, about = "Rectangular diagram toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArg {
    /// Write the result to a file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the arc-presentation axioms of a diagram file
    Validate { file: PathBuf },
    /// Compute writhe, winding, corner census, tb, rot and self-linking
    Inv { file: PathBuf },
    /// Flip every backward arc, producing a braided diagram
    Braid {
        file: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Flip one row
    Flip {
        file: PathBuf,
        row: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Apply a sequence of move literals
    /// (flip:R | hc:R | vc:C | stab:R,C,Q | destab:R,C | rot:K)
    Move {
        file: PathBuf,
        #[arg(required = true)]
        moves: Vec<String>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Search for a move sequence connecting two diagrams
    Equiv {
        file1: PathBuf,
        file2: PathBuf,
        /// Admitted move family
        #[arg(long, default_value = "legendrian")]
        moves: String,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        max_grid: Option<usize>,
        /// Node budget; the RDG_BUDGET environment variable overrides the
        /// default when this flag is absent
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Generate reference diagrams and cable arithmetic
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Render a diagram as SVG (default) or ASCII art
    Render {
        file: PathBuf,
        #[arg(long)]
        ascii: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Realize a diagram as a sampled curve tangent to ker(dz + r^2 dθ)
    Embed {
        file: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        r1: f64,
        #[arg(long, default_value_t = 10.0)]
        r2: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Also apply the half-space shift with this K before exporting
        #[arg(long)]
        shift: Option<f64>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Export the front projection of a non-wrapping diagram as SVG
    Front {
        file: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Rectangular unknot (tb = -1, rot = 0)
    Unknot,
    /// Braided unknot (tb = -1, rot = 0, sl+ = -1)
    UnknotBraided,
    /// Closure of a braid word, e.g. "1 1 1" or "1,-2" on k strands
    Braid { word: String, strands: usize },
    /// (p, q) torus link as a braid closure
    Torus { p: usize, q: usize },
    /// Exact ruling-curve slope -(2r+s)/(11r+5s) for train-track weights
    CableSlope { r: u64, s: u64 },
}

fn load(path: &PathBuf) -> Result<RectDiagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    rdg_core::io::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn emit(out: &OutputArg, content: &str) -> Result<()> {
    match &out.output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn report_json(r: &InvariantReport) -> serde_json::Value {
    json!({
        "omega": r.omega,
        "winding": r.winding,
        "up": r.up,
        "down": r.down,
        "tb": r.tb,
        "rot": r.rot,
        "sl_plus": r.sl_plus,
        "sl_minus": r.sl_minus,
    })
}

fn parse_word(word: &str) -> Result<Vec<i64>> {
    word.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| anyhow!("bad braid letter {t:?} (want signed integers)"))
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { file } => {
            let text =
                fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            match rdg_core::io::parse(&text) {
                Ok(_) => {
                    if cli.json {
                        println!("{}", json!({ "ok": true }));
                    } else {
                        println!("ok");
                    }
                    Ok(0)
                }
                Err(rdg_core::io::ParseError::Invalid(report)) => {
                    if cli.json {
                        let violations: Vec<_> = report
                            .violations
                            .iter()
                            .map(|v| json!({ "axiom": v.axiom, "message": v.message }))
                            .collect();
                        println!("{}", json!({ "ok": false, "violations": violations }));
                    } else {
                        for v in &report.violations {
                            println!("violation of {v}");
                        }
                    }
                    Ok(2)
                }
                Err(e) => Err(anyhow!("{}: {e}", file.display())),
            }
        }
        Command::Inv { file } => {
            let d = load(&file)?;
            let r = InvariantReport::compute(&d);
            if cli.json {
                println!("{}", report_json(&r));
            } else {
                println!("omega    {:>4}", r.omega);
                println!("winding  {:>4}", r.winding);
                println!("up       {:>4}", r.up);
                println!("down     {:>4}", r.down);
                println!("tb       {:>4}", r.tb);
                println!("rot      {:>4}", r.rot);
                println!("sl_plus  {:>4}", r.sl_plus);
                println!("sl_minus {:>4}", r.sl_minus);
            }
            Ok(0)
        }
        Command::Braid { file, out } => {
            let d = load(&file)?;
            emit(&out, &rdg_core::io::serialize(&search::braid(&d)))?;
            Ok(0)
        }
        Command::Flip { file, row, out } => {
            let d = load(&file)?;
            let flipped = rdg_core::moves::flip(&d, row).map_err(|e| anyhow!("{e}"))?;
            emit(&out, &rdg_core::io::serialize(&flipped))?;
            Ok(0)
        }
        Command::Move { file, moves, out } => {
            let mut d = load(&file)?;
            for literal in &moves {
                let m = Move::from_str(literal).map_err(|e| anyhow!(e))?;
                d = rdg_core::moves::apply(&d, &m).map_err(|e| anyhow!("move {literal}: {e}"))?;
            }
            emit(&out, &rdg_core::io::serialize(&d))?;
            Ok(0)
        }
        Command::Equiv {
            file1,
            file2,
            moves,
            max_depth,
            max_grid,
            budget,
        } => {
            let d1 = load(&file1)?;
            let d2 = load(&file2)?;
            let move_set = MoveSet::from_str(&moves).map_err(|e| anyhow!(e))?;
            let mut cfg = SearchConfig::defaults_for(&d1, &d2, move_set);
            if let Some(k) = max_depth {
                cfg.max_depth = k;
            }
            if let Some(g) = max_grid {
                cfg.max_grid = g;
            }
            if let Some(b) = budget {
                cfg.node_budget = b;
            } else if let Ok(env_budget) = std::env::var("RDG_BUDGET") {
                cfg.node_budget = env_budget
                    .parse()
                    .map_err(|_| anyhow!("RDG_BUDGET must be an integer, got {env_budget:?}"))?;
            }
            let cert = search::equivalent(&d1, &d2, &cfg).map_err(|e| anyhow!("{e}"))?;
            match &cert.verdict {
                Verdict::Equivalent(path) => {
                    if cli.json {
                        let steps: Vec<String> = path.iter().map(|(m, _)| m.to_string()).collect();
                        println!(
                            "{}",
                            json!({
                                "equivalent": true,
                                "moves": steps,
                                "nodes_visited": cert.nodes_visited,
                            })
                        );
                    } else {
                        println!("equivalent in {} move(s)", path.len());
                        for (m, _) in path {
                            println!("  {m}");
                        }
                    }
                    Ok(0)
                }
                Verdict::NotFoundWithinBounds(reason) => {
                    let reason_text = match reason {
                        NotFoundReason::Obstruction(o) => format!("invariant obstruction: {o}"),
                        NotFoundReason::BoundsExhausted => "bounds exhausted".to_string(),
                    };
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "equivalent": false,
                                "reason": reason_text,
                                "nodes_visited": cert.nodes_visited,
                            })
                        );
                    } else {
                        println!("not found within bounds ({reason_text})");
                    }
                    Ok(3)
                }
            }
        }
        Command::Gen { what } => {
            let text = match what {
                GenCommand::Unknot => rdg_core::io::serialize(&generators::gen_unknot_rect()),
                GenCommand::UnknotBraided => {
                    rdg_core::io::serialize(&generators::gen_unknot_braided())
                }
                GenCommand::Braid { word, strands } => {
                    let letters = parse_word(&word)?;
                    let d = generators::gen_braid_closure(&letters, strands)
                        .map_err(|e| anyhow!("{e}"))?;
                    rdg_core::io::serialize(&d)
                }
                GenCommand::Torus { p, q } => {
                    let d = generators::gen_torus_knot(p, q).map_err(|e| anyhow!("{e}"))?;
                    rdg_core::io::serialize(&d)
                }
                GenCommand::CableSlope { r, s } => {
                    let spec = generators::CableSpec::new(r, s).map_err(|e| anyhow!("{e}"))?;
                    if cli.json {
                        let slope = spec.slope();
                        let (p, q) = spec.cable_type();
                        format!(
                            "{}\n",
                            json!({
                                "slope": slope.to_string(),
                                "numer": *slope.numer(),
                                "denom": *slope.denom(),
                                "cable": [p, q],
                            })
                        )
                    } else {
                        format!("{}\n", spec.slope())
                    }
                }
            };
            print!("{text}");
            Ok(0)
        }
        Command::Render { file, ascii, out } => {
            let d = load(&file)?;
            let content = if ascii {
                render::render_ascii(&d)
            } else {
                render::render_svg(&d, &render::RenderOptions::default())
            };
            emit(&out, &content)?;
            Ok(0)
        }
        Command::Embed {
            file,
            r1,
            r2,
            samples,
            shift,
            out,
        } => {
            let d = load(&file)?;
            let mut curve = geometry::embed(&d, r1, r2, samples).map_err(|e| anyhow!("{e}"))?;
            if let Some(k) = shift {
                curve = geometry::half_space_shift(&curve, k);
            }
            emit(&out, &geometry::curve_to_csv(&curve))?;
            Ok(0)
        }
        Command::Front { file, out } => {
            let d = load(&file)?;
            let front = geometry::front_from_diagram(&d).map_err(|e| anyhow!("{e}"))?;
            emit(&out, &render::render_front_svg(&front))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
