use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use sextic_core::fpgroup::{EnumOptions, Presentation, DEFAULT_MAX_COSETS};
use sextic_core::map::{parse_skeleton, validate_skeleton};
use sextic_core::sextic::{self, Variant};
use sextic_core::{braid, model, perturb, split, FreeWord, GroupError, PipelineError};

#[derive(Parser, Debug)]
#[command(name = "sextic", version, about = "Maximal plane sextics with an E7 point: models, braid monodromy and groups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Coset limit for every enumeration.
    #[arg(long, env = "SEXTIC_MAX_COSETS", default_value_t = DEFAULT_MAX_COSETS, global = true)]
    max_cosets: usize,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Primary,
    Alternate,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the models (all E7 models, or those on one skeleton file).
    Enumerate {
        /// Skeleton in text format; models on its two-cornered regions.
        #[arg(long)]
        skeleton: Option<PathBuf>,
        /// Keep models whose points fail the irreducibility filter.
        #[arg(long)]
        unfiltered: bool,
    },
    /// Classify maximal sets of singularities with the given point.
    Classify {
        #[arg(long, default_value = "E7")]
        point: String,
    },
    /// Group of a table row, or of a presentation file.
    Group {
        #[arg(long, conflicts_with = "presentation")]
        row: Option<usize>,
        /// Presentation file (`gens n` / `rel ...` lines).
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Hand-derived relations of this variant only.
        #[arg(long, value_enum, requires = "row")]
        variant: Option<VariantArg>,
        /// Certify the structural facts of the first row.
        #[arg(long, requires = "row")]
        verify_facts: bool,
    },
    /// Groups of all perturbations of the first row.
    Perturb,
    /// Reducible models and their class-2 quotients.
    Split,
    /// Compare against golden data and run randomized identity checks.
    Verify {
        /// Golden classification table (JSON).
        #[arg(long)]
        table_e7: Option<PathBuf>,
        /// Number of random braid identity cases.
        #[arg(long)]
        braid_identities: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Mismatch(String),
    Input(String),
    Inconclusive(String),
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Group(g) => g.into(),
            PipelineError::UnknownRow(_) => Failure::Input(e.to_string()),
            other => Failure::Mismatch(other.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::Inconclusive(e.to_string())
    }
}

struct Report {
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = EnumOptions::with_max(cli.max_cosets);
    let result = run(&cli.command, opts);
    let (report, failure) = match result {
        Ok(r) => (Some(r), None),
        Err((r, f)) => (r, Some(f)),
    };
    if let Some(r) = report {
        let out = match cli.format {
            Format::Json => serde_json::to_string_pretty(&r.json).expect("values serialize") + "\n",
            Format::Text => r.text,
        };
        let written = match &cli.output {
            Some(p) => std::fs::write(p, out).map_err(|e| format!("{}: {e}", p.display())),
            None => {
                print!("{out}");
                Ok(())
            }
        };
        if let Err(e) = written {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Some(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Some(Failure::Inconclusive(m)) => {
            eprintln!("inconclusive: {m}");
            ExitCode::from(2)
        }
    }
}

type Outcome = Result<Report, (Option<Report>, Failure)>;

fn fail(f: impl Into<Failure>) -> (Option<Report>, Failure) {
    (None, f.into())
}

fn read(path: &Path) -> Result<String, (Option<Report>, Failure)> {
    std::fs::read_to_string(path).map_err(|e| fail(Failure::Input(format!("{}: {e}", path.display()))))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn run(cmd: &Command, opts: EnumOptions) -> Outcome {
    match cmd {
        Command::Enumerate { skeleton, unfiltered } => enumerate(skeleton.as_deref(), *unfiltered),
        Command::Classify { point } => classify(point, opts),
        Command::Group { row, presentation, variant, verify_facts } => match (row, presentation) {
            (Some(r), _) => group_row(*r, *variant, *verify_facts, opts),
            (None, Some(p)) => group_file(p, opts),
            (None, None) => Err(fail(Failure::Input("group needs --row or --presentation".into()))),
        },
        Command::Perturb => perturbations(opts),
        Command::Split => split_report(),
        Command::Verify { table_e7, braid_identities, seed } => verify(table_e7.as_deref(), *braid_identities, *seed, opts),
    }
}

fn enumerate(skeleton: Option<&Path>, unfiltered: bool) -> Outcome {
    let models = match skeleton {
        Some(p) => {
            let text = read(p)?;
            let sk = parse_skeleton(&text).map_err(|e| fail(Failure::Input(format!("{}:{e}", p.display()))))?;
            let report = validate_skeleton(&sk);
            if !report.is_valid {
                return Err(fail(Failure::Input(format!("{}: not a skeleton: {:?}", p.display(), report.reasons))));
            }
            model::models_on(&sk)
        }
        None if unfiltered => model::enumerate_e7_models_unfiltered(),
        None => model::enumerate_e7_models(),
    };
    let mut text = String::new();
    for (i, m) in models.iter().enumerate() {
        let budget = match sextic::check_budgets(m) {
            Ok(_) => "ok".to_string(),
            Err(e) => e.to_string(),
        };
        let _ = writeln!(text, "{i:>3}  {:<16} real={:<5} budgets: {budget}", m.singularity_set().to_string(), m.is_real());
    }
    let _ = writeln!(text, "{} models", models.len());
    Ok(Report { json: serde_json::json!({ "count": models.len(), "models": to_json(&models) }), text })
}

fn classify(point: &str, opts: EnumOptions) -> Outcome {
    if !point.eq_ignore_ascii_case("E7") {
        return Err(fail(Failure::Input(format!("--point {point}: only E7 is supported"))));
    }
    let c = sextic::classify_e7(opts).map_err(fail)?;
    let mut text = String::new();
    let _ = writeln!(text, "{:>3}  {:<14} {:<7} {:>5} {:>5}  {:>6}", "#", "set", "fig", "real", "pairs", "|G|");
    for r in &c.rows {
        let star = if r.starred { "*" } else { "" };
        let _ = writeln!(
            text,
            "{:>3}  {:<14} {:<7} {:>5} {:>5}  {:>6}",
            format!("{}{star}", r.row),
            r.set.to_string(),
            r.figure,
            r.real,
            r.complex_pairs,
            r.group_order
        );
    }
    let _ = writeln!(text, "{} sets, {} classes", c.rows.len(), c.total_classes);
    Ok(Report { json: to_json(&c), text })
}

fn group_row(row: usize, variant: Option<VariantArg>, verify_facts: bool, opts: EnumOptions) -> Outcome {
    if verify_facts {
        if row != 1 {
            return Err(fail(Failure::Input(format!("--verify-facts applies to row 1, not row {row}"))));
        }
        let f = sextic::row1_facts(opts).map_err(fail)?;
        let text = format!(
            "order {}\nabelianization {}\n|[G,G]| {}\nperfect={}\nord(g1)={}\nindex <g1,g2> {}\nindex <g1,g3> {}\norder without cusp relation {}\n",
            f.order,
            f.abelianization,
            f.derived_order,
            f.derived_perfect,
            f.alpha1_order,
            f.index_alpha1_alpha2,
            f.index_alpha1_alpha3,
            f.order_without_cusp
        );
        return Ok(Report { json: to_json(&f), text });
    }
    if let Some(v) = variant {
        let v = match v {
            VariantArg::Primary => Variant::Primary,
            VariantArg::Alternate => Variant::Alternate,
        };
        let p = sextic::paper_relations(row, v).map_err(fail)?;
        let order = p.order(opts).map_err(fail)?;
        let json = serde_json::json!({ "row": row, "variant": to_json(&v), "order": order, "presentation": p.to_string() });
        return Ok(Report { json, text: format!("{p}order {order}\n") });
    }
    let g = sextic::row_groups(row, opts).map_err(fail)?;
    let mut text = format!("row {} {}\n", g.row, g.set);
    for a in &g.assembled {
        let _ = writeln!(text, "  model {} reference {} ({:?}): order {}", a.model, a.reference, a.branch, a.order);
    }
    for h in &g.hand {
        let _ = writeln!(text, "  hand-derived {:?}: order {}", h.variant, h.order);
    }
    let report = Report { json: to_json(&g), text };
    if g.consistent() {
        Ok(report)
    } else {
        Err((Some(report), Failure::Mismatch(format!("row {row}: orders differ from {}", g.expected_order))))
    }
}

fn group_file(path: &Path, opts: EnumOptions) -> Outcome {
    let text = read(path)?;
    let p = Presentation::parse(&text).map_err(|e| fail(Failure::Input(format!("{}:{e}", path.display()))))?;
    let ab = p.abelianization();
    let order = p.order(opts).map_err(fail)?;
    let json = serde_json::json!({ "order": order, "abelianization": to_json(&ab) });
    Ok(Report { json, text: format!("order {order}\nabelianization {ab}\n") })
}

fn perturbations(opts: EnumOptions) -> Outcome {
    let outcomes = perturb::perturbation_outcomes(opts).map_err(fail)?;
    let local = perturb::enumerate_e7_perturbations();
    let mut text = String::new();
    for o in &outcomes {
        let _ = writeln!(text, "{:<40} order {}", o.perturbation, o.order);
    }
    let _ = writeln!(text, "nonabelian local groups:");
    for p in local.iter().filter(|p| p.local_relators.is_some()) {
        let rels: Vec<String> = p.local_relators.as_ref().unwrap().iter().map(|r| r.display_with('b')).collect();
        let _ = writeln!(text, "  {}: {}", p.set, rels.join(", "));
    }
    let json = serde_json::json!({ "perturbations": to_json(&outcomes), "e7_classes": to_json(&local) });
    let report = Report { json, text };
    match outcomes.iter().find(|o| o.order != 6) {
        None => Ok(report),
        Some(o) => Err((Some(report), Failure::Mismatch(format!("{}: order {}", o.perturbation, o.order)))),
    }
}

fn split_report() -> Outcome {
    let found = split::split_analysis();
    let mut text = String::new();
    for c in &found {
        let _ = writeln!(
            text,
            "{:<14} {}{:?}  abelianization {}  class-2 commutant {} (other reference {})",
            c.set.to_string(),
            if c.stem { "loop " } else { "" },
            c.splitting,
            c.abelianization,
            c.commutant,
            c.commutant_other_reference
        );
    }
    Ok(Report { json: to_json(&found), text })
}

fn verify(table: Option<&Path>, cases: Option<usize>, seed: u64, opts: EnumOptions) -> Outcome {
    if table.is_none() && cases.is_none() {
        return Err(fail(Failure::Input("verify needs --table-e7 or --braid-identities".into())));
    }
    let mut diffs = Vec::new();
    let mut json = serde_json::Map::new();
    if let Some(path) = table {
        let text = read(path)?;
        let golden: Value =
            serde_json::from_str(&text).map_err(|e| fail(Failure::Input(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))))?;
        let actual = to_json(&sextic::classify_e7(opts).map_err(fail)?);
        let mut d = Vec::new();
        diff("", &golden, &actual, &mut d);
        json.insert("table_e7".into(), serde_json::json!({ "golden": path.display().to_string(), "differences": d }));
        diffs.extend(d);
    }
    if let Some(n) = cases {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = Vec::new();
        for i in 0..n {
            let u = random_word(&mut rng, 2, 12);
            let v = random_word(&mut rng, 2, 12);
            let x = random_word(&mut rng, 3, 8);
            if let Some(what) = braid::identity_violation(&u, &v, &x) {
                failures.push(format!("case {i}: {what} (u = {}, v = {}, x = {x})", braid::format_braid(&u), braid::format_braid(&v)));
            }
        }
        json.insert("braid_identities".into(), serde_json::json!({ "cases": n, "seed": seed, "failures": failures }));
        diffs.extend(failures);
    }
    let mut text: String = diffs.iter().map(|d| format!("{d}\n")).collect();
    if diffs.is_empty() {
        text.push_str("all checks passed\n");
    }
    let report = Report { json: Value::Object(json), text };
    if diffs.is_empty() {
        Ok(report)
    } else {
        let n = diffs.len();
        Err((Some(report), Failure::Mismatch(format!("{n} difference(s)"))))
    }
}

fn random_word(rng: &mut ChaCha8Rng, gens: i32, max_len: usize) -> FreeWord {
    let n = rng.gen_range(0..=max_len);
    FreeWord::from_letters((0..n).map(|_| rng.gen_range(1..=gens) * if rng.gen_bool(0.5) { 1 } else { -1 }))
}

/// Field-level differences of `actual` from `golden`; fields absent from
/// the golden data are not compared.
fn diff(path: &str, golden: &Value, actual: &Value, out: &mut Vec<String>) {
    match (golden, actual) {
        (Value::Object(g), Value::Object(a)) => {
            for (k, gv) in g {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match a.get(k) {
                    Some(av) => diff(&p, gv, av, out),
                    None => out.push(format!("{p}: expected {gv}, missing")),
                }
            }
        }
        (Value::Array(g), Value::Array(a)) => {
            if g.len() != a.len() {
                out.push(format!("{path}: expected {} entries, got {}", g.len(), a.len()));
            }
            for (i, (gv, av)) in g.iter().zip(a).enumerate() {
                diff(&format!("{path}[{i}]"), gv, av, out);
            }
        }
        _ if golden != actual => out.push(format!("{path}: expected {golden}, got {actual}")),
        _ => {}
    }
}
