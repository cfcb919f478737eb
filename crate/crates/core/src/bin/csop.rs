//! Command-line front end: evaluate operators on JSON problem files,
//! run the law suites against a manifest of expected verdicts, and list
//! the operator catalog.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use csop::csop::{BinaryOp, Dissimilarity};
use csop::json::{
    catalog, evaluate, parse_delta, parse_fca, parse_l, parse_op, parse_problem, parse_relation,
    parse_system, problem_to_json,
};
use csop::laws::{
    check_condition, check_operator_property, find_counterexample, verify_equivalence,
    ConditionKind, CounterexampleTarget, EquivalenceLaw, LawReport, OperatorProperty, SweepConfig,
    Verdict,
};
use csop::setfn::{random_measure, GroundSet, RandomClass};
use csop::{csop::CsConfig, integrals::FPair, Error, Result};

const DEFAULT_MANIFEST: &str = include_str!("../../manifests/default.json");

#[derive(Parser)]
#[command(name = "csop", about = "Choquet-Sugeno-like operators on finite ground sets")]
struct Cli {
    /// emit JSON instead of human-readable output
    #[arg(long, global = true)]
    json: bool,
    /// thread count for internal parallelism (default: CSOP_THREADS or all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one problem file
    Eval(EvalArgs),
    /// Run the law suite against a manifest of expected verdicts
    Verify(VerifyArgs),
    /// List operator ids with their formula anchors
    Catalog,
}

#[derive(Args)]
struct EvalArgs {
    /// problem file (JSON)
    path: PathBuf,
    /// print the normalized problem file instead of just the report
    #[arg(long)]
    dump_normalized: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// manifest path; the embedded default manifest when omitted
    manifest: Option<PathBuf>,
    /// only run entries whose law id starts with this prefix
    #[arg(long)]
    law: Option<String>,
    /// override the manifest seed
    #[arg(long)]
    seed: Option<u64>,
    /// only run entries with this ground-set size
    #[arg(long)]
    n: Option<usize>,
    /// override the binary operation of the selected entries
    /// (expectation checking is skipped for overridden runs)
    #[arg(long)]
    op: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| std::env::var("CSOP_THREADS").ok().and_then(|v| v.parse().ok()));
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args, cli.json),
        Command::Verify(args) => cmd_verify(args, cli.json),
        Command::Catalog => cmd_catalog(cli.json),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// 12 significant digits: below the tolerance, above float noise.
fn fmt_num(v: f64) -> String {
    format!("{v:.12e}")
        .parse::<f64>()
        .map(|x| {
            let s = format!("{x}");
            if s.len() > 14 { format!("{x:.12}") } else { s }
        })
        .unwrap_or_else(|_| v.to_string())
}

fn cmd_eval(args: &EvalArgs, as_json: bool) -> Result<ExitCode> {
    let raw = std::fs::read_to_string(&args.path)?;
    let value: Value = serde_json::from_str(&raw)?;
    let problem = parse_problem(&value)?;
    let report = evaluate(&problem)?;
    if args.dump_normalized {
        println!("{}", serde_json::to_string_pretty(&problem_to_json(&problem)?)?);
        return Ok(ExitCode::SUCCESS);
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("value: {}", fmt_num(report.value));
        if let Some(coll) = &report.argmax_collection {
            println!("argmax collection: {}", coll.join(" "));
        }
        for t in &report.terms {
            println!(
                "  term C={} D={}: {}",
                t["C"].as_str().unwrap_or("?"),
                t["D"].as_str().unwrap_or("?"),
                fmt_num(t["value"].as_f64().unwrap_or(f64::NAN))
            );
        }
        if let Some(wd) = report.well_defined {
            println!(
                "permutation sweep: min {} max {} well-defined: {wd}",
                fmt_num(report.min.unwrap_or(f64::NAN)),
                fmt_num(report.max.unwrap_or(f64::NAN)),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(as_json: bool) -> Result<ExitCode> {
    if as_json {
        let items: Vec<Value> = catalog()
            .iter()
            .map(|(id, anchor)| json!({"id": id, "anchor": anchor}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&items)?);
    } else {
        for (id, anchor) in catalog() {
            println!("{id} ({anchor})");
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify

struct ManifestEntry {
    raw: Value,
    expect: Option<Verdict>,
}

fn parse_verdict(s: &str) -> Result<Verdict> {
    Ok(match s {
        "holds-on-sample" => Verdict::HoldsOnSample,
        "refuted-with-witness" => Verdict::RefutedWithWitness,
        "precondition-unmet" => Verdict::PreconditionUnmet,
        other => return Err(Error::Malformed(format!("unknown verdict \"{other}\""))),
    })
}

fn get_str<'a>(m: &'a Value, key: &str) -> Result<&'a str> {
    m.get(key)
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::Malformed(format!("manifest entry: missing string \"{key}\"")))
}

fn get_op(m: &Value, key: &str) -> Result<BinaryOp> {
    parse_op(
        m.get(key)
            .ok_or_else(|| Error::Malformed(format!("manifest entry: missing \"{key}\"")))?,
    )
}

fn get_delta(m: &Value) -> Result<Dissimilarity> {
    parse_delta(
        m.get("delta")
            .ok_or_else(|| Error::Malformed("manifest entry: missing \"delta\"".into()))?,
    )
}

fn get_pair(m: &Value) -> Result<FPair> {
    FPair::new(get_op(m, "F1")?, get_op(m, "F2")?)
}

fn sweep_of(m: &Value, default_seed: u64, seed_override: Option<u64>) -> SweepConfig {
    let n = m.get("n").and_then(|v| v.as_u64()).unwrap_or(3) as usize;
    let trials = m.get("trials").and_then(|v| v.as_u64()).unwrap_or(300) as usize;
    let seed = seed_override.unwrap_or(default_seed);
    SweepConfig::new(n, trials, seed)
}

fn run_entry(entry: &Value, default_seed: u64, seed_override: Option<u64>) -> Result<LawReport> {
    let law = get_str(entry, "law")?;
    let cfg = sweep_of(entry, default_seed, seed_override);
    Ok(match law {
        "condition" => {
            let kind = match get_str(entry, "kind")? {
                "section-subadditive" => ConditionKind::SectionSubadditive(get_op(entry, "op")?),
                "triangle" => ConditionKind::Triangle(get_delta(entry)?, get_op(entry, "op")?),
                "n3h" => ConditionKind::N3h(get_delta(entry)?, get_op(entry, "op")?),
                "pairwise-2-increasing" => ConditionKind::Pairwise2Increasing(get_pair(entry)?),
                "zero-section" => ConditionKind::ZeroSection(get_op(entry, "op")?),
                other => {
                    return Err(Error::Malformed(format!("unknown condition kind \"{other}\"")))
                }
            };
            check_condition(&kind, cfg.trials, cfg.seed)
        }
        "thm4_3" => verify_equivalence(&EquivalenceLaw::Thm4_3 { op: get_op(entry, "op")? }, &cfg),
        "thm_n2" => verify_equivalence(
            &EquivalenceLaw::ThmN2 {
                delta: get_delta(entry)?,
                op: get_op(entry, "op")?,
            },
            &cfg,
        ),
        "thm4_13" => verify_equivalence(
            &EquivalenceLaw::Thm4_13 {
                delta: get_delta(entry)?,
                op: get_op(entry, "op")?,
            },
            &cfg,
        ),
        "thm4_11" => {
            verify_equivalence(&EquivalenceLaw::Thm4_11 { pair: get_pair(entry)? }, &cfg)
        }
        "cc_case" => verify_equivalence(
            &EquivalenceLaw::CcCase {
                copula: get_op(entry, "copula")?,
            },
            &cfg,
        ),
        "prop4_6" => {
            verify_equivalence(&EquivalenceLaw::Prop4_6 { op: get_op(entry, "op")? }, &cfg)
        }
        "prop_n3f" => verify_equivalence(
            &EquivalenceLaw::PropN3f {
                delta: get_delta(entry)?,
                op: get_op(entry, "op")?,
            },
            &cfg,
        ),
        "prop_n4c" => {
            verify_equivalence(&EquivalenceLaw::PropN4c { pair: get_pair(entry)? }, &cfg)
        }
        "duality_c5b" => verify_equivalence(
            &EquivalenceLaw::DualityC5b { op: get_op(entry, "op")? },
            &cfg,
        ),
        "ex3_5" => verify_equivalence(&EquivalenceLaw::Ex3_5, &cfg),
        "ie_equals_cs" => {
            let ground = GroundSet::new(cfg.n)?;
            let agg = parse_fca(&json!({"kind": get_str(entry, "fca")?}), ground)?;
            verify_equivalence(&EquivalenceLaw::IeEqualsCs { agg }, &cfg)
        }
        "sug_levelset" => verify_equivalence(
            &EquivalenceLaw::SugLevelset { op: get_op(entry, "op")? },
            &cfg,
        ),
        "cx-thm4_3-asymmetric" => find_counterexample(
            &CounterexampleTarget::Thm4_3Asymmetric { op: get_op(entry, "op")? },
            &cfg,
        ),
        "cx-thm4_3-op" => find_counterexample(
            &CounterexampleTarget::Thm4_3ViolatingOp { op: get_op(entry, "op")? },
            &cfg,
        ),
        "cx-thm4_13" => find_counterexample(
            &CounterexampleTarget::Thm4_13ViolatingDelta {
                delta: get_delta(entry)?,
                op: get_op(entry, "op")?,
            },
            &cfg,
        ),
        "cx-prop4_6" => find_counterexample(
            &CounterexampleTarget::Prop4_6NonSection { op: get_op(entry, "op")? },
            &cfg,
        ),
        "property" => {
            let prop = match get_str(entry, "property")? {
                "zero" => OperatorProperty::Zero,
                "monotone" => OperatorProperty::Monotone,
                "homogeneous" => OperatorProperty::Homogeneous,
                "subadditive" => OperatorProperty::Subadditive,
                "convex" => OperatorProperty::Convex,
                "idempotent" => OperatorProperty::Idempotent,
                other => {
                    return Err(Error::Malformed(format!("unknown property \"{other}\"")))
                }
            };
            let ground = GroundSet::new(cfg.n)?;
            let l = parse_l(
                entry
                    .get("l")
                    .ok_or_else(|| Error::Malformed("property entry: missing \"l\"".into()))?,
            )?;
            let system = parse_system(&json!({"system": get_str(entry, "system")?}), ground)?;
            let relation = parse_relation(
                entry
                    .get("relation")
                    .ok_or_else(|| Error::Malformed("property entry: missing \"relation\"".into()))?,
            )?;
            let fca = match entry.get("fca") {
                Some(v) => parse_fca(&json!({"kind": v}), ground)?,
                None => csop::condagg::Fca::inf(ground),
            };
            let cs = CsConfig::new(system, relation, l, fca.clone(), fca)?;
            let mu = random_measure(ground, RandomClass::Capacity, cfg.seed ^ 0xCAFE);
            check_operator_property(prop, &cs, &mu, &mu.as_signed(), cfg.trials, cfg.seed)
        }
        other => return Err(Error::Malformed(format!("unknown law \"{other}\""))),
    })
}

fn cmd_verify(args: &VerifyArgs, as_json: bool) -> Result<ExitCode> {
    let raw = match &args.manifest {
        Some(p) => std::fs::read_to_string(p)?,
        None => DEFAULT_MANIFEST.to_string(),
    };
    let manifest: Value = serde_json::from_str(&raw)?;
    let default_seed = manifest.get("seed").and_then(|v| v.as_u64()).unwrap_or(0);
    let entries = manifest
        .get("entries")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Malformed("manifest: missing \"entries\" array".into()))?;

    let mut selected: Vec<ManifestEntry> = Vec::new();
    for e in entries {
        let law = get_str(e, "law")?;
        if let Some(filter) = &args.law {
            let effective = if law == "condition" || law == "property" {
                format!("{law}:{}", e.get("kind").or_else(|| e.get("property")).and_then(|v| v.as_str()).unwrap_or(""))
            } else {
                law.to_string()
            };
            if !effective.starts_with(filter.as_str()) {
                continue;
            }
        }
        if let Some(n) = args.n {
            if e.get("n").and_then(|v| v.as_u64()).map(|v| v as usize) != Some(n) {
                continue;
            }
        }
        let mut raw = e.clone();
        if let Some(op) = &args.op {
            if raw.get("op").is_some() {
                raw["op"] = json!(op);
            }
        }
        // expectation checking is skipped for overridden runs
        let expect = if args.op.is_some() {
            None
        } else {
            Some(parse_verdict(get_str(e, "expect")?)?)
        };
        selected.push(ManifestEntry { raw, expect });
    }
    if selected.is_empty() {
        return Err(Error::Malformed("no manifest entries match the filters".into()));
    }

    let mut mismatches = 0usize;
    let mut reports: Vec<Value> = Vec::new();
    for entry in &selected {
        let report = run_entry(&entry.raw, default_seed, args.seed)?;
        let matched = entry.expect.map(|e| e == report.verdict);
        let mut rep_json = serde_json::to_value(&report)?;
        if let Some(expected) = entry.expect {
            rep_json["expected"] = serde_json::to_value(expected)?;
            rep_json["matched"] = json!(matched.unwrap());
        }
        if matched == Some(false) {
            mismatches += 1;
        }
        if as_json {
            reports.push(rep_json);
        } else {
            let tag = match matched {
                Some(true) => "ok",
                Some(false) => "MISMATCH",
                None => "ran",
            };
            println!("[{tag}] {} -> {:?}", report.law, report.verdict);
            if matched == Some(false) || entry.expect.is_none() {
                if let Some(w) = &report.witness {
                    println!("    witness: {w}");
                }
            }
        }
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    }
    if mismatches > 0 {
        eprintln!("{mismatches} law(s) diverged from their expected verdict");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
