mod input;
mod output;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;
use toricnef::catalog::{self, EntryKind, Params};
use toricnef::divisor::{has_no_nontrivial_nef, is_nef, is_projective, nef_cone, polytope};
use toricnef::fan::{validate, Fan, FanFile};
use toricnef::fanmap::{is_fan_map, is_refinement, pullback, FanMap};
use toricnef::report;

use input::{
    parse_divisor, parse_matrix, parse_params, parse_sweeps, parse_vector, sweep_points, FanSource,
    LoadedFile,
};
use output::Outcome;
use output::{envelope, int, ints, join, params_json, params_text, rats, render_json, tuple};

/// Exact nef and projectivity checks for complete simplicial toric fans.
#[derive(Parser)]
#[command(name = "toricnef", version)]
struct Cli {
    /// Emit machine-readable JSON with a schema version.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FanArgs {
    /// Fan file path or catalog:NAME.
    fan: String,
    /// Catalog parameter, NAME=VALUE.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Catalog parameter range, NAME=LO..HI (inclusive); repeatable.
    #[arg(long = "sweep", value_name = "NAME=LO..HI")]
    sweeps: Vec<String>,
}

#[derive(Args, Clone)]
struct PairArgs {
    /// Source fan file path or catalog:NAME.
    source: String,
    /// Target fan file path or catalog:NAME.
    target: String,
    /// Source catalog parameter, NAME=VALUE.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Target catalog parameter, NAME=VALUE.
    #[arg(long = "dst-param", value_name = "NAME=VALUE")]
    dst_params: Vec<String>,
}

#[derive(Args, Clone, Copy)]
struct AssertFlag {
    /// Exit with status 2 when the answer is false.
    #[arg(long)]
    assert: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a fan file describes a valid simplicial fan.
    Validate {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        flag: AssertFlag,
    },
    /// Is every maximal cone unimodular?
    Smooth {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        flag: AssertFlag,
    },
    /// Do the cones cover the whole space?
    Complete {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        flag: AssertFlag,
    },
    /// Picard rank of a smooth complete fan.
    Picard {
        #[command(flatten)]
        fan: FanArgs,
    },
    /// Walls with their ray relations.
    Walls {
        #[command(flatten)]
        fan: FanArgs,
    },
    /// Is the divisor nef?
    NefCheck {
        #[command(flatten)]
        fan: FanArgs,
        /// Divisor: comma-separated coefficients or -K.
        #[arg(short = 'd', long = "divisor", allow_hyphen_values = true)]
        divisor: String,
        #[command(flatten)]
        flag: AssertFlag,
    },
    /// Nef cone in Picard coordinates.
    NefCone {
        #[command(flatten)]
        fan: FanArgs,
    },
    /// Is every nef divisor principal?
    NefTrivial {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        flag: AssertFlag,
    },
    /// Is there an ample divisor?
    Projective {
        #[command(flatten)]
        fan: FanArgs,
        #[command(flatten)]
        flag: AssertFlag,
    },
    /// Vertices and recession cone of the divisor's polyhedron.
    Polytope {
        #[command(flatten)]
        fan: FanArgs,
        /// Divisor: comma-separated coefficients or -K.
        #[arg(short = 'd', long = "divisor", allow_hyphen_values = true)]
        divisor: String,
    },
    /// Star subdivision at a primitive vector; prints the new fan file.
    Subdivide {
        #[command(flatten)]
        fan: FanArgs,
        /// Comma-separated integer vector.
        #[arg(short = 'w', long = "vector", allow_hyphen_values = true)]
        vector: String,
    },
    /// Does the matrix carry every source cone into a target cone?
    MapCheck {
        /// Matrix as a JSON array of integer rows.
        #[arg(short = 'm', long = "matrix", allow_hyphen_values = true)]
        matrix: String,
        #[command(flatten)]
        fans: PairArgs,
        #[command(flatten)]
        flag: AssertFlag,
    },
    /// Does the source fan refine the target fan?
    Refines {
        #[command(flatten)]
        fans: PairArgs,
        #[command(flatten)]
        flag: AssertFlag,
    },
    /// Pull a target divisor back along a fan map.
    Pullback {
        /// Matrix as a JSON array of integer rows.
        #[arg(short = 'm', long = "matrix", allow_hyphen_values = true)]
        matrix: String,
        #[command(flatten)]
        fans: PairArgs,
        /// Target divisor: comma-separated coefficients or -K.
        #[arg(short = 'd', long = "divisor", allow_hyphen_values = true)]
        divisor: String,
    },
    /// Built-in fans.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Reproduce the reference results.
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entries and their parameters.
    List,
    /// Print an entry as a fan file.
    Get {
        name: String,
        /// Parameter, NAME=VALUE.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ReportAction {
    /// Run every acceptance check and print a pass/fail table.
    Paper,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { fan, flag } => {
            per_fan("validate", fan, flag.assert, json, validate_source)
        }
        Command::Smooth { fan, flag } => on_fan("smooth", fan, flag.assert, json, |f| {
            Ok(Outcome::predicate(f.is_smooth()))
        }),
        Command::Complete { fan, flag } => on_fan("complete", fan, flag.assert, json, |f| {
            Ok(Outcome::predicate(f.is_complete()))
        }),
        Command::Picard { fan } => on_fan("picard", fan, false, json, picard),
        Command::Walls { fan } => on_fan("walls", fan, false, json, walls),
        Command::NefCheck { fan, divisor, flag } => {
            on_fan("nef-check", fan, flag.assert, json, |f| {
                let d = parse_divisor(divisor, f)?;
                Ok(Outcome::predicate(is_nef(f, &d)?))
            })
        }
        Command::NefCone { fan } => on_fan("nef-cone", fan, false, json, nef_cone_outcome),
        Command::NefTrivial { fan, flag } => on_fan("nef-trivial", fan, flag.assert, json, |f| {
            Ok(Outcome::predicate(has_no_nontrivial_nef(f)?))
        }),
        Command::Projective { fan, flag } => on_fan("projective", fan, flag.assert, json, |f| {
            Ok(Outcome::predicate(is_projective(f)?))
        }),
        Command::Polytope { fan, divisor } => on_fan("polytope", fan, false, json, |f| {
            polytope_outcome(f, &parse_divisor(divisor, f)?)
        }),
        Command::Subdivide { fan, vector } => {
            let w = parse_vector(vector)?;
            on_fan("subdivide", fan, false, json, |f| {
                let file = FanFile::from_fan(&f.star_subdivision(&w)?, None, Params::new());
                Ok(Outcome::value(file.to_json_string(), file.to_value()))
            })
        }
        Command::MapCheck { matrix, fans, flag } => {
            let m = parse_matrix(matrix)?;
            on_pair("map-check", fans, flag.assert, json, |src, dst| {
                Ok(Outcome::predicate(is_fan_map(&m, src, dst)?))
            })
        }
        Command::Refines { fans, flag } => {
            on_pair("refines", fans, flag.assert, json, |src, dst| {
                Ok(Outcome::predicate(is_refinement(src, dst)?))
            })
        }
        Command::Pullback {
            matrix,
            fans,
            divisor,
        } => {
            let m = parse_matrix(matrix)?;
            on_pair("pullback", fans, false, json, |src, dst| {
                let d = parse_divisor(divisor, dst)?;
                let map = FanMap::new(m.clone(), src.clone(), dst.clone())?;
                let pb = pullback(&map, &d)?;
                Ok(Outcome::value(
                    format!("multiple {}\ndivisor {}", pb.multiple, pb.divisor),
                    serde_json::json!({
                        "multiple": int(&pb.multiple),
                        "divisor": pb.divisor.to_json(),
                    }),
                ))
            })
        }
        Command::Catalog { action } => catalog_command(action, json),
        Command::Report {
            action: ReportAction::Paper,
        } => run_report(json),
    }
}

/// Runs `f` on the fan, or on every sweep point in parallel, and prints
/// the results in sweep order.
fn per_fan<F>(command: &str, args: &FanArgs, assert: bool, json: bool, f: F) -> Result<u8>
where
    F: Fn(&FanSource, &Params) -> Result<Outcome> + Sync,
{
    let source = FanSource::parse(&args.fan);
    let fixed = parse_params("--param", &args.params)?;
    let sweeps = parse_sweeps(&args.sweeps)?;
    let label = Value::String(source.label());

    if sweeps.is_empty() {
        let out = f(&source, &fixed)?;
        if json {
            let v = envelope(
                command,
                vec![
                    ("source", label),
                    ("params", params_json(&fixed)),
                    ("result", out.json.clone()),
                ],
            );
            println!("{}", render_json(&v));
        } else {
            println!("{}", out.text);
        }
        return Ok(exit_status(assert, [&out]));
    }

    if !matches!(source, FanSource::Catalog(_)) {
        bail!("--sweep: sweeps are only valid with catalog:NAME sources");
    }
    let points = sweep_points(&fixed, &sweeps)?;
    let results = points
        .par_iter()
        .map(|p| f(&source, p).map_err(|e| anyhow!("{}: {e:#}", params_text(p))))
        .collect::<Result<Vec<_>>>()?;

    if json {
        let rows = points
            .iter()
            .zip(&results)
            .map(|(p, out)| serde_json::json!({ "params": params_json(p), "result": out.json }))
            .collect();
        let v = envelope(
            command,
            vec![("source", label), ("sweep", Value::Array(rows))],
        );
        println!("{}", render_json(&v));
    } else {
        for (p, out) in points.iter().zip(&results) {
            if out.text.contains('\n') {
                println!("[{}]\n{}", params_text(p), out.text);
            } else {
                println!("{}: {}", params_text(p), out.text);
            }
        }
    }
    Ok(exit_status(assert, &results))
}

fn on_fan<F>(command: &str, args: &FanArgs, assert: bool, json: bool, f: F) -> Result<u8>
where
    F: Fn(&Fan) -> Result<Outcome> + Sync,
{
    per_fan(command, args, assert, json, |source, p| f(&source.load(p)?))
}

fn on_pair<F>(command: &str, args: &PairArgs, assert: bool, json: bool, f: F) -> Result<u8>
where
    F: Fn(&Fan, &Fan) -> Result<Outcome>,
{
    let (src, dst) = (
        FanSource::parse(&args.source),
        FanSource::parse(&args.target),
    );
    let src_params = parse_params("--param", &args.params)?;
    let dst_params = parse_params("--dst-param", &args.dst_params)?;
    let src_fan = src.load(&src_params)?;
    let dst_fan = dst
        .load(&dst_params)
        .map_err(|e| anyhow!("{}", e.to_string().replace("--param", "--dst-param")))?;
    let out = f(&src_fan, &dst_fan)?;
    if json {
        let v = envelope(
            command,
            vec![
                ("source", Value::String(src.label())),
                ("params", params_json(&src_params)),
                ("target", Value::String(dst.label())),
                ("target_params", params_json(&dst_params)),
                ("result", out.json.clone()),
            ],
        );
        println!("{}", render_json(&v));
    } else {
        println!("{}", out.text);
    }
    Ok(exit_status(assert, [&out]))
}

fn exit_status<'a>(assert: bool, outs: impl IntoIterator<Item = &'a Outcome>) -> u8 {
    let failed = outs.into_iter().any(|o| o.truth == Some(false));
    if assert && failed {
        2
    } else {
        0
    }
}

fn validate_source(source: &FanSource, p: &Params) -> Result<Outcome> {
    let problem = match source.load_file(p)? {
        LoadedFile::Built(_) => None,
        LoadedFile::Raw(file) => validate(file.fan).err().map(|e| e.to_string()),
    };
    let valid = problem.is_none();
    let text = match &problem {
        None => "true".to_string(),
        Some(reason) => format!("false\n{reason}"),
    };
    let json = serde_json::json!({ "valid": valid, "reason": problem });
    Ok(Outcome {
        text,
        json,
        truth: Some(valid),
    })
}

fn picard(f: &Fan) -> Result<Outcome> {
    let r = f.picard_rank()?;
    Ok(Outcome::value(r.to_string(), Value::from(r)))
}

fn walls(f: &Fan) -> Result<Outcome> {
    let ws = f.walls()?;
    let text = ws
        .iter()
        .map(|w| {
            format!(
                "shared {} cones {}|{} opposite {}|{} relation {}",
                tuple(&w.shared),
                w.left_cone,
                w.right_cone,
                w.left_opposite,
                w.right_opposite,
                join(&w.relation, " ")
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let json = ws
        .iter()
        .map(|w| {
            serde_json::json!({
                "shared": w.shared,
                "cones": [w.left_cone, w.right_cone],
                "opposite": [w.left_opposite, w.right_opposite],
                "relation": ints(&w.relation),
            })
        })
        .collect();
    Ok(Outcome::value(text, Value::Array(json)))
}

fn nef_cone_outcome(f: &Fan) -> Result<Outcome> {
    let c = nef_cone(f)?;
    let mut lines = vec![
        format!("picard rank {}", c.dim()),
        format!("extreme rays {}", c.extreme_rays().len()),
    ];
    lines.extend(c.extreme_rays().iter().map(|r| tuple(r)));
    lines.push(format!("lineality {}", c.lineality().len()));
    lines.extend(c.lineality().iter().map(|r| tuple(r)));
    let json = serde_json::json!({
        "picard_rank": c.dim(),
        "extreme_rays": c.extreme_rays().iter().map(|r| ints(r)).collect::<Vec<_>>(),
        "lineality": c.lineality().iter().map(|r| ints(r)).collect::<Vec<_>>(),
        "trivial": c.is_zero(),
    });
    Ok(Outcome::value(lines.join("\n"), json))
}

fn polytope_outcome(f: &Fan, d: &toricnef::divisor::Divisor) -> Result<Outcome> {
    let g = polytope(f, d)?.generators();
    let mut lines = vec![format!("vertices {}", g.vertices.len())];
    lines.extend(g.vertices.iter().map(|v| tuple(v)));
    lines.push(format!("recession rays {}", g.recession_rays.len()));
    lines.extend(g.recession_rays.iter().map(|r| tuple(r)));
    lines.push(format!("lineality {}", g.lineality.len()));
    lines.extend(g.lineality.iter().map(|r| tuple(r)));
    let json = serde_json::json!({
        "vertices": g.vertices.iter().map(|v| rats(v)).collect::<Vec<_>>(),
        "recession_rays": g.recession_rays.iter().map(|r| ints(r)).collect::<Vec<_>>(),
        "lineality": g.lineality.iter().map(|r| ints(r)).collect::<Vec<_>>(),
        "bounded": g.is_bounded(),
    });
    Ok(Outcome::value(lines.join("\n"), json))
}

fn catalog_command(action: &CatalogAction, json: bool) -> Result<u8> {
    match action {
        CatalogAction::List => {
            let es = catalog::entries();
            if json {
                let rows = es
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "name": e.name,
                            "kind": kind_name(e.kind),
                            "params": e.params,
                            "summary": e.summary,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    render_json(&envelope(
                        "catalog list",
                        vec![("result", Value::Array(rows))]
                    ))
                );
            } else {
                for e in es {
                    let params = if e.params.is_empty() {
                        String::new()
                    } else {
                        format!(" [{}]", e.params.join(","))
                    };
                    println!("{}{params} ({}): {}", e.name, kind_name(e.kind), e.summary);
                }
            }
            Ok(0)
        }
        CatalogAction::Get { name, params } => {
            let p = parse_params("--param", params)?;
            let fan = catalog::get(name, &p).map_err(|e| anyhow!("catalog:{name}: {e}"))?;
            let file = FanFile::from_fan(&fan, Some(name.clone()), p);
            if json {
                let v = envelope("catalog get", vec![("result", file.to_value())]);
                println!("{}", render_json(&v));
            } else {
                println!("{}", file.to_json_string());
            }
            Ok(0)
        }
    }
}

fn kind_name(k: EntryKind) -> &'static str {
    match k {
        EntryKind::Threefold => "threefold",
        EntryKind::Target => "target",
    }
}

fn run_report(json: bool) -> Result<u8> {
    let results: Vec<_> = (1..=9u8).into_par_iter().map(report::criterion).collect();
    let passed = results.iter().filter(|r| r.passed).count();
    let failed = results.len() - passed;
    if json {
        let rows = results
            .iter()
            .map(|r| {
                serde_json::json!({
                    "id": r.id,
                    "title": r.title,
                    "passed": r.passed,
                    "detail": r.detail,
                })
            })
            .collect();
        let v = envelope(
            "report paper",
            vec![
                ("result", Value::Array(rows)),
                ("passed", Value::from(passed)),
                ("failed", Value::from(failed)),
            ],
        );
        println!("{}", render_json(&v));
    } else {
        for r in &results {
            println!("{r}");
        }
        println!("report: {passed} passed, {failed} failed");
    }
    Ok(if failed == 0 { 0 } else { 2 })
}
