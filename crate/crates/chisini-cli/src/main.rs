//! Command-line front end: every invocation emits exactly one JSON
//! document (or a plain-text rendering of it with `--plain`). Identical
//! inputs produce byte-identical output. Exit codes: 0 ok, 1 computation
//! error, 2 usage error.

use anyhow::Result;
use chisini_core::dual::{self, ParamCurve};
use chisini_core::germ::CurveGerm;
use chisini_core::mono::{
    self, enumerate_homs, load_data_pack, EnumerationOptions, FinitePresentation, PresentationFile,
};
use chisini_core::passport::{self, Passport};
use chisini_core::perm::CyclicalType;
use chisini_core::rat::rat_to_string;
use chisini_core::{model, MultiPoly};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const SCHEMA_PRESENTATION: &str = "presentation/1";

#[derive(Parser)]
#[command(
    name = "chisini",
    version,
    about = "Exact invariants of branch curves, local cover models, monodromy enumeration and cover-uniqueness verdicts"
)]
struct Cli {
    /// Render the result as indented plain text instead of JSON.
    #[arg(long, global = true)]
    plain: bool,

    /// Cap the number of parallel workers.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plane curve germ computations.
    Germ {
        #[command(subcommand)]
        sub: GermCommand,
    },
    /// Branch curve and type of the local model u = z, v = w^n - n w z^m.
    Localmodel(LocalModelArgs),
    /// Enumerate monodromy representations of a presentation.
    Enumerate(EnumerateArgs),
    /// Equivalence classes of an enumeration, in detail.
    Classes(ClassesArgs),
    /// Apply the uniqueness rules to a pair of passports.
    Verdict(VerdictArgs),
    /// The degree bound 4(3d+g-1)/(2(3d+g-1)-c), exactly.
    Bound(BoundArgs),
    /// Virtual Pluecker transform of (degree, virtual nodes, virtual cusps).
    Pluecker(PlueckerArgs),
    /// Dual curve of a parametrized curve and its dualizing-cover passport.
    Dual(DualArgs),
    /// Validate every presentation in the data pack.
    ValidateData(ValidateArgs),
}

#[derive(Subcommand)]
enum GermCommand {
    /// All singularity invariants of a germ at the origin.
    Invariants(GermArgs),
}

#[derive(Args)]
struct GermArgs {
    /// Defining polynomial in z, v (square-free, vanishing at the origin).
    #[arg(long)]
    poly: String,
    /// Include the Puiseux branch classes in the payload.
    #[arg(long)]
    branches: bool,
}

#[derive(Args)]
struct LocalModelArgs {
    /// Degree of the model in w.
    #[arg(long, required_unless_present = "family")]
    n: Option<u64>,
    /// Twist exponent of z.
    #[arg(long, default_value_t = 1)]
    m: u64,
    /// Report the T_{n,1} family for n = 2..N instead of a single model.
    #[arg(long, value_name = "N", conflicts_with = "n")]
    family: Option<u64>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Presentation file (a path, or a name resolved in the data dir).
    #[arg(long)]
    presentation: String,
    #[arg(long)]
    degree: usize,
    /// Cyclical type constraint for geometric generators, e.g. "2" or "3,2".
    #[arg(long, value_name = "TYPE", default_value = "2")]
    r#type: String,
    /// Also list the canonical class representatives.
    #[arg(long)]
    reps: bool,
    /// Component decomposition for these local generators (1-based, comma-separated).
    #[arg(long, value_name = "GENS")]
    components: Option<String>,
    /// Reference multiplicity for the per-component non-degeneracy flag.
    #[arg(long, value_name = "MU")]
    mu: Option<u64>,
    /// Raise the enumeration degree cap (default 8).
    #[arg(long, value_name = "CAP")]
    degree_cap: Option<usize>,
}

#[derive(Args)]
struct ClassesArgs {
    #[arg(long)]
    presentation: String,
    #[arg(long)]
    degree: usize,
    #[arg(long, value_name = "TYPE", default_value = "2")]
    r#type: String,
    #[arg(long, value_name = "CAP")]
    degree_cap: Option<usize>,
}

#[derive(Args)]
struct VerdictArgs {
    /// Exactly two passport files.
    #[arg(long = "passport", num_args = 1, action = clap::ArgAction::Append)]
    passports: Vec<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    g: u64,
    #[arg(long)]
    c: u64,
}

#[derive(Args)]
struct PlueckerArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    nv: u64,
    #[arg(long)]
    cv: u64,
}

#[derive(Args)]
struct DualArgs {
    /// Parametrization "x(t); y(t); z(t)".
    #[arg(long)]
    param: String,
    /// Stop after the dual parametrization and implicit equation
    /// (skip the passport assembly and singular scan).
    #[arg(long)]
    no_passport: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Directory of presentation files (default: CHISINI_DATA_DIR or data/presentations).
    #[arg(long)]
    dir: Option<PathBuf>,
}

fn data_dir(explicit: Option<PathBuf>) -> PathBuf {
    explicit
        .or_else(|| std::env::var_os("CHISINI_DATA_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("data/presentations"))
}

fn emit(plain: bool, input_echo: Value, result: Result<Value, String>) -> ExitCode {
    let (status, body, code) = match result {
        Ok(payload) => ("ok", json!({ "payload": payload }), ExitCode::SUCCESS),
        Err(message) => (
            "error",
            json!({ "error": { "message": message } }),
            ExitCode::from(1),
        ),
    };
    let mut doc = json!({
        "status": status,
        "toolVersion": env!("CARGO_PKG_VERSION"),
        "inputEcho": input_echo,
    });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        for (k, v) in b {
            d.insert(k, v);
        }
    }
    if plain {
        let mut out = String::new();
        render_plain(&doc, 0, &mut out);
        print!("{out}");
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    }
    code
}

fn render_plain(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_plain(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_plain(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn parse_type(s: &str) -> Result<CyclicalType, String> {
    let lengths: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
    let lengths = lengths.map_err(|_| format!("invalid cyclical type `{s}`"))?;
    CyclicalType::new(lengths).ok_or_else(|| format!("cyclical type entries must be >= 2: `{s}`"))
}

fn load_presentation(spec: &str) -> Result<(String, FinitePresentation), String> {
    let direct = PathBuf::from(spec);
    let path = if direct.exists() {
        direct
    } else {
        let fallback = data_dir(None).join(spec);
        if fallback.exists() {
            fallback
        } else {
            return Err(format!("presentation file not found: {spec}"));
        }
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: PresentationFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if file.schema != SCHEMA_PRESENTATION {
        return Err(format!(
            "{}: schema: expected \"{SCHEMA_PRESENTATION}\", got \"{}\"",
            path.display(),
            file.schema
        ));
    }
    let pres = file
        .into_presentation()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((spec.to_string(), pres))
}

fn load_passport(path: &PathBuf) -> Result<Passport, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let p: Passport =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    p.validate()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(p)
}

fn rep_value(rep: &mono::PermRepresentation) -> Value {
    json!({
        "images": rep.images.iter().map(|p| {
            p.images().iter().map(|&i| i + 1).collect::<Vec<usize>>()
        }).collect::<Vec<_>>(),
        "cycles": rep.images.iter().map(|p| p.to_string()).collect::<Vec<String>>(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    let plain = cli.plain;
    match cli.command {
        Command::Germ {
            sub: GermCommand::Invariants(args),
        } => {
            let parsed: Result<MultiPoly, _> = args.poly.parse();
            match parsed {
                Err(e) => emit(plain, json!({"poly": args.poly}), Err(e.to_string())),
                Ok(p) => {
                    let echo = json!({"poly": p.to_string(), "branches": args.branches});
                    let result = (|| -> Result<Value, String> {
                        let germ = CurveGerm::new(p).map_err(|e| e.to_string())?;
                        let inv = germ.invariants().map_err(|e| e.to_string())?;
                        let mut payload = serde_json::to_value(inv).unwrap();
                        if args.branches {
                            let branches = germ.branches().map_err(|e| e.to_string())?;
                            payload["branches"] = serde_json::to_value(branches).unwrap();
                        }
                        Ok(payload)
                    })();
                    emit(plain, echo, result)
                }
            }
        }
        Command::Localmodel(args) => {
            if let Some(n_max) = args.family {
                let echo = json!({"family": n_max});
                let result = model::tch12_model_family(n_max)
                    .map(|rows| {
                        json!({
                            "family": rows.iter().map(|(n, tag, in_set)| json!({
                                "n": n,
                                "type": tag.to_string(),
                                "inChisini12Set": in_set,
                            })).collect::<Vec<_>>()
                        })
                    })
                    .map_err(|e| e.to_string());
                emit(plain, echo, result)
            } else {
                let n = args.n.expect("clap enforces n without --family");
                let echo = json!({"n": n, "m": args.m});
                let result = model::model_report(n, args.m)
                    .map(|r| serde_json::to_value(r).unwrap())
                    .map_err(|e| e.to_string());
                emit(plain, echo, result)
            }
        }
        Command::Enumerate(args) => {
            let echo = json!({
                "presentation": args.presentation,
                "degree": args.degree,
                "type": args.r#type,
                "reps": args.reps,
                "components": args.components,
                "mu": args.mu,
                "degreeCap": args.degree_cap,
            });
            let result = (|| -> Result<Value, String> {
                let (_, pres) = load_presentation(&args.presentation)?;
                let constraint = parse_type(&args.r#type)?;
                let opts = EnumerationOptions {
                    degree_cap: args.degree_cap.unwrap_or(8),
                    parallel: true,
                };
                let homs = enumerate_homs(&pres, args.degree, &constraint, &opts)
                    .map_err(|e| e.to_string())?;
                let summary = mono::summarize(&homs).map_err(|e| e.to_string())?;
                let mut payload = serde_json::to_value(&summary).unwrap();
                if args.reps {
                    let classes = mono::equivalence_classes(&homs).map_err(|e| e.to_string())?;
                    payload["representatives"] = Value::Array(
                        classes
                            .iter()
                            .map(|c| rep_value(&c.representative))
                            .collect(),
                    );
                }
                if let Some(gens) = &args.components {
                    let gens: Result<Vec<usize>, _> =
                        gens.split(',').map(|x| x.trim().parse::<usize>()).collect();
                    let gens = gens.map_err(|_| "invalid --components list".to_string())?;
                    let classes = mono::equivalence_classes(&homs).map_err(|e| e.to_string())?;
                    let decomps: Result<Vec<Value>, String> = classes
                        .iter()
                        .map(|c| {
                            mono::components(&c.representative, &gens, args.mu)
                                .map(|d| serde_json::to_value(d).unwrap())
                                .map_err(|e| e.to_string())
                        })
                        .collect();
                    payload["components"] = Value::Array(decomps?);
                }
                Ok(payload)
            })();
            emit(plain, echo, result)
        }
        Command::Classes(args) => {
            let echo = json!({
                "presentation": args.presentation,
                "degree": args.degree,
                "type": args.r#type,
                "degreeCap": args.degree_cap,
            });
            let result = (|| -> Result<Value, String> {
                let (_, pres) = load_presentation(&args.presentation)?;
                let constraint = parse_type(&args.r#type)?;
                let opts = EnumerationOptions {
                    degree_cap: args.degree_cap.unwrap_or(8),
                    parallel: true,
                };
                let homs = enumerate_homs(&pres, args.degree, &constraint, &opts)
                    .map_err(|e| e.to_string())?;
                let classes = mono::equivalence_classes(&homs).map_err(|e| e.to_string())?;
                Ok(json!({
                    "total": homs.len(),
                    "classes": classes.iter().map(|c| {
                        let mut v = rep_value(&c.representative);
                        v["size"] = json!(c.size);
                        v["transitive"] = json!(c.transitive);
                        v
                    }).collect::<Vec<_>>(),
                }))
            })();
            emit(plain, echo, result)
        }
        Command::Verdict(args) => {
            let echo = json!({
                "passports": args.passports.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            });
            let result = (|| -> Result<Value, String> {
                if args.passports.len() != 2 {
                    return Err(format!(
                        "verdict needs exactly two --passport files (got {})",
                        args.passports.len()
                    ));
                }
                let a = load_passport(&args.passports[0])?;
                let b = load_passport(&args.passports[1])?;
                let v = passport::verdict(&a, &b).map_err(|e| e.to_string())?;
                Ok(serde_json::to_value(v).unwrap())
            })();
            emit(plain, echo, result)
        }
        Command::Bound(args) => {
            let echo = json!({"d": args.d, "g": args.g, "c": args.c});
            let result = passport::thm2_bound(args.d, args.g, args.c)
                .map(|b| json!({ "bound": rat_to_string(&b) }))
                .map_err(|e| e.to_string());
            emit(plain, echo, result)
        }
        Command::Pluecker(args) => {
            let echo = json!({"n": args.n, "nv": args.nv, "cv": args.cv});
            let result = passport::pluecker_dual(args.n, args.nv, args.cv)
                .map(|(m, nv_dual, cv_dual)| {
                    let genus = (args.n - 1) * (args.n - 2) / 2 - args.nv - args.cv;
                    json!({
                        "m": m,
                        "nvDual": nv_dual,
                        "cvDual": cv_dual,
                        "genus": genus,
                    })
                })
                .map_err(|e| e.to_string());
            emit(plain, echo, result)
        }
        Command::Dual(args) => {
            let parts: Vec<&str> = args.param.split(';').collect();
            if parts.len() != 3 {
                return emit(
                    plain,
                    json!({"param": args.param}),
                    Err("expected three coordinates \"x(t); y(t); z(t)\"".into()),
                );
            }
            let parsed: Result<Vec<MultiPoly>, String> = parts
                .iter()
                .map(|s| s.parse::<MultiPoly>().map_err(|e| e.to_string()))
                .collect();
            match parsed {
                Err(e) => emit(plain, json!({"param": args.param}), Err(e)),
                Ok(coords) => {
                    let echo = json!({
                        "param": coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "),
                        "noPassport": args.no_passport,
                    });
                    let result = (|| -> Result<Value, String> {
                        let [x, y, z]: [MultiPoly; 3] =
                            coords.try_into().expect("three coordinates");
                        let curve = ParamCurve::new(x, y, z).map_err(|e| e.to_string())?;
                        let d = dual::dual_param(&curve).map_err(|e| e.to_string())?;
                        let implicit = dual::implicitize(&d).map_err(|e| e.to_string())?;
                        let mut payload = json!({
                            "sourceDegree": curve.degree(),
                            "dualParam": d.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                            "dualImplicit": implicit.to_string(),
                        });
                        if !args.no_passport {
                            let dp = dual::dualizing_passport(&curve).map_err(|e| e.to_string())?;
                            payload["dualizingPassport"] = serde_json::to_value(&dp).unwrap();
                            payload["thm8"] =
                                serde_json::to_value(dual::thm8_verdict(&dp)).unwrap();
                        }
                        Ok(payload)
                    })();
                    emit(plain, echo, result)
                }
            }
        }
        Command::ValidateData(args) => {
            let dir = data_dir(args.dir);
            let echo = json!({"dir": dir.display().to_string()});
            let result = (|| -> Result<Value, String> {
                let pack = load_data_pack(&dir).map_err(|e| e.to_string())?;
                if pack.is_empty() {
                    return Err(format!("no presentation files in {}", dir.display()));
                }
                let mut files = Vec::new();
                let mut all_passed = true;
                for (file, pres) in &pack {
                    let report = mono::validate_presentation(pres);
                    all_passed &= report.passed;
                    let mut v = serde_json::to_value(&report).unwrap();
                    v["file"] = json!(file);
                    files.push(v);
                }
                if !all_passed {
                    let failing: Vec<String> = files
                        .iter()
                        .filter(|f| f["passed"] == json!(false))
                        .map(|f| f["file"].as_str().unwrap_or("?").to_string())
                        .collect();
                    return Err(format!("validation failed for: {}", failing.join(", ")));
                }
                Ok(json!({"files": files, "passed": all_passed}))
            })();
            emit(plain, echo, result)
        }
    }
}
