//! `wzproof` command-line frontend.
//!
//! Exit status: 0 when every check passes, 1 on a mathematical failure,
//! 2 on a usage or lookup error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wzproof::arith::binom;
use wzproof::catalog::{self, catalan_triangle_t, Grid, VerificationReport};
use wzproof::conjecture::{default_degree_bound, fit_g, iterate_l, render_table, table1_row, verify_conjecture, GForm, TableRow};
use wzproof::paths::{decompose, enumerate_x, enumerate_y, is_x_path, is_y_pair, phi, phi_inverse, count_ne_below_diagonal};
use wzproof::poly::parse_ratfn;
use wzproof::wz::{
    builtin_certificates, check_certificate, lookup_certificate, q_telescope_check, spot_checks, CertificateKind,
    HyperTerm, WZCertificate,
};
use wzproof::Error;

const BIJECTION_CAP: usize = 4;
const COUNT_CAP: usize = 6;
const CONJECTURE_CAP: usize = 6;
const Q_TELESCOPE_ID: &str = "L3.1";

#[derive(Parser)]
#[command(name = "wzproof", version, about = "Exact verification of WZ certificates, binomial identities and lattice-path bijections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timings (makes machine output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a registered identity on a grid.
    Verify {
        id: String,
        /// Ranges such as `a=0..4,b=0..4`; missing parameters keep their defaults.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Check a WZ certificate symbolically and by exact spot sums.
    Certify(CertifyArgs),
    /// Enumerate X_n and Y_n, test the bijection, or count NE paths.
    Paths(PathsArgs),
    /// Iterate L, reproduce the table and verify the conjectured closed form.
    Conjecture(ConjectureArgs),
    /// List registered identities and certificates.
    List,
}

#[derive(clap::Args)]
struct CertifyArgs {
    /// Registered certificate id, or `L3.1` for the per-n q-telescoping check.
    id: Option<String>,
    /// Multiply the multiplier by 2 before checking.
    #[arg(long)]
    perturb: bool,
    #[arg(long, default_value_t = 20)]
    spots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest n for the `L3.1` check.
    #[arg(long, default_value_t = 8)]
    n_max: i64,
    #[arg(long, requires_all = ["inner", "ratio_outer", "ratio_inner", "multiplier"])]
    outer: Option<String>,
    #[arg(long)]
    inner: Option<String>,
    /// F(o+1,i)/F(o,i) for an ad hoc certificate.
    #[arg(long, allow_hyphen_values = true)]
    ratio_outer: Option<String>,
    /// F(o,i+1)/F(o,i) for an ad hoc certificate.
    #[arg(long, allow_hyphen_values = true)]
    ratio_inner: Option<String>,
    /// The rational function R with G = R F.
    #[arg(long, allow_hyphen_values = true)]
    multiplier: Option<String>,
    #[arg(long, value_enum, default_value_t = Kind::Wz)]
    kind: Kind,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Wz,
    Telescoping,
}

#[derive(clap::Args)]
struct PathsArgs {
    #[arg(long)]
    n: usize,
    /// Run phi and its inverse over all of X_n and Y_n.
    #[arg(long)]
    check_bijection: bool,
    /// Print every path of X_n, one per line.
    #[arg(long)]
    dump: bool,
    /// Compare NE-path counts with C(2m,k) - C(2m,k-1) for k <= m <= n.
    #[arg(long)]
    triangle: bool,
}

#[derive(clap::Args)]
struct ConjectureArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    grid: Option<String>,
    /// Fit every g_r instead of reading rows r <= 3 from the table.
    #[arg(long)]
    fit: bool,
    /// Weighted degree bound for fitting g_r (default max(2r, 3r-3)).
    #[arg(long)]
    degree: Option<u32>,
}

struct Outcome {
    passed: bool,
    human: String,
    summary: Value,
    config: Value,
    cases: Option<Value>,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PoleEncountered { .. } | Error::DenominatorVanished { .. } | Error::NotSymmetric => {
                Failure::Math(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = match &cli.command {
        Command::Verify { id, grid } => ("verify", cmd_verify(id, grid.as_deref(), cli.timing)),
        Command::Certify(args) => ("certify", cmd_certify(args)),
        Command::Paths(args) => ("paths", cmd_paths(args)),
        Command::Conjecture(args) => ("conjecture", cmd_conjecture(args, cli.timing)),
        Command::List => ("list", Ok(cmd_list())),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Math(msg)) => Outcome {
            passed: false,
            human: format!("FAIL: {msg}\n"),
            summary: json!({ "passed": false, "error": msg }),
            config: json!({}),
            cases: None,
        },
    };
    let text = match cli.format {
        Format::Human => outcome.human.clone(),
        Format::Machine => {
            let mut doc = json!({ "command": name, "config": outcome.config, "summary": outcome.summary });
            if let Some(cases) = outcome.cases {
                doc["cases"] = cases;
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize"))
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn report_json(report: &VerificationReport, timing: bool) -> Value {
    let report = if timing { report.clone() } else { report.clone().without_timing() };
    serde_json::to_value(report).expect("reports serialize")
}

fn cmd_verify(id: &str, grid: Option<&str>, timing: bool) -> Result<Outcome, Failure> {
    let grid = grid.map(Grid::parse).transpose()?;
    let report = catalog::verify(id, grid.as_ref())?;
    let mut human = report.to_text();
    if timing {
        human.push_str(&format!("elapsed: {} ms\n", report.elapsed_ms.unwrap_or(0)));
    }
    Ok(Outcome {
        passed: report.passed(),
        config: json!({ "id": id, "grid": report.grid }),
        summary: json!({
            "passed": report.passed(),
            "cases_checked": report.cases_checked,
            "skipped": report.skipped,
            "failures": report.failures.len(),
        }),
        cases: Some(report_json(&report, timing)),
        human,
    })
}

fn ad_hoc_certificate(args: &CertifyArgs) -> Result<WZCertificate, Failure> {
    let need = |v: &Option<String>, flag: &str| v.clone().ok_or_else(|| Failure::Usage(format!("missing --{flag}")));
    let outer = need(&args.outer, "outer")?;
    let inner = need(&args.inner, "inner")?;
    let ratio_outer = parse_ratfn(&need(&args.ratio_outer, "ratio-outer")?)?;
    let ratio_inner = parse_ratfn(&need(&args.ratio_inner, "ratio-inner")?)?;
    let multiplier = parse_ratfn(&need(&args.multiplier, "multiplier")?)?;
    let kind = match args.kind {
        Kind::Wz => CertificateKind::WzPair,
        Kind::Telescoping => CertificateKind::Telescoping,
    };
    Ok(WZCertificate::new(kind, HyperTerm::from_ratios(&outer, &inner, ratio_outer, ratio_inner), multiplier))
}

fn cmd_certify(args: &CertifyArgs) -> Result<Outcome, Failure> {
    if args.id.as_deref() == Some(Q_TELESCOPE_ID) {
        return Ok(certify_q_telescope(args.n_max));
    }
    let mut cert = match (&args.id, &args.outer) {
        (Some(id), None) => lookup_certificate(id)?,
        (None, Some(_)) => ad_hoc_certificate(args)?,
        _ => return Err(Failure::Usage("give either a certificate id or an ad hoc certificate".into())),
    };
    if args.perturb {
        cert = cert.scaled(2);
    }
    let symbolic = check_certificate(&cert);
    let commute = cert.term.ratios_commute();
    let mut human = format!(
        "{}: symbolic check {}, shift ratios {}\n",
        cert.id,
        if symbolic { "passed" } else { "FAILED" },
        if commute { "compatible" } else { "INCOMPATIBLE" }
    );
    let mut spots = Vec::new();
    if cert.spot_plan.is_some() && args.spots > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for (point, report) in spot_checks(&cert, args.spots, &mut rng)? {
            if !report.matched {
                human.push_str(&format!(
                    "  FAIL {}: sum = {}, boundary = {}\n",
                    wzproof::fmt_point(&point),
                    report.lhs_difference,
                    report.boundary_value
                ));
            }
            spots.push(json!({ "point": wzproof::fmt_point(&point), "report": report }));
        }
    }
    let spot_failures = spots.iter().filter(|s| s["report"]["matched"] == json!(false)).count();
    if !spots.is_empty() {
        human.push_str(&format!("  {} spot checks, {} failures\n", spots.len(), spot_failures));
    }
    let passed = symbolic && commute && spot_failures == 0;
    Ok(Outcome {
        passed,
        config: json!({
            "id": cert.id,
            "perturb": args.perturb,
            "spots": args.spots,
            "seed": args.seed,
            "multiplier": cert.multiplier.to_string(),
        }),
        summary: json!({
            "passed": passed,
            "symbolic": symbolic,
            "ratios_commute": commute,
            "spot_checks": spots.len(),
            "spot_failures": spot_failures,
        }),
        cases: Some(Value::Array(spots)),
        human,
    })
}

fn certify_q_telescope(n_max: i64) -> Outcome {
    let reports: Vec<_> = (0..=n_max).map(q_telescope_check).collect();
    let failed: Vec<i64> = reports.iter().filter(|r| !r.passed()).map(|r| r.n).collect();
    let mut human = format!("{Q_TELESCOPE_ID}: q-telescoping for n = 0..{n_max}, {} failures\n", failed.len());
    for n in &failed {
        human.push_str(&format!("  FAIL n={n}\n"));
    }
    Outcome {
        passed: failed.is_empty(),
        config: json!({ "id": Q_TELESCOPE_ID, "n_max": n_max }),
        summary: json!({ "passed": failed.is_empty(), "checked": reports.len(), "failures": failed.len() }),
        cases: Some(serde_json::to_value(&reports).expect("reports serialize")),
        human,
    }
}

fn cmd_paths(args: &PathsArgs) -> Result<Outcome, Failure> {
    let n = args.n;
    let cap = if args.check_bijection || args.dump { BIJECTION_CAP } else { COUNT_CAP };
    if n > cap {
        return Err(Failure::Usage(format!("n={n} exceeds the cap of {cap} for this mode")));
    }
    let mut human = String::new();
    let mut summary = serde_json::Map::new();
    let mut cases = Vec::new();
    let mut passed = true;

    let xs = enumerate_x(n);
    let expected = binom(2 * n as i64, n as i64).pow(2u32);
    human.push_str(&format!("|X_{n}| = {}, C(2n,n)^2 = {expected}\n", xs.len()));
    summary.insert("x_count".into(), json!(xs.len()));
    summary.insert("expected".into(), json!(expected.to_string()));
    passed &= expected == xs.len().into();

    if args.dump {
        for x in &xs {
            human.push_str(&format!("{x}\n"));
        }
        cases.extend(xs.iter().map(|x| json!(x.to_string())));
    }

    if args.check_bijection {
        let ys = enumerate_y(n);
        let y_count = ys.len();
        let mut errors = Vec::new();
        for x in &xs {
            let ok = decompose(x, n).is_some_and(|d| d.violations(n).is_empty())
                && phi(x, n).is_some_and(|y| is_y_pair(&y, n) && phi_inverse(&y).as_ref() == Some(x));
            if !ok {
                errors.push(format!("X-path {x}"));
            }
        }
        for y in &ys {
            let ok = phi_inverse(y).is_some_and(|x| is_x_path(&x, n) && phi(&x, n).as_ref() == Some(y));
            if !ok {
                errors.push(format!("Y-pair {y}"));
            }
        }
        human.push_str(&format!("|Y_{n}| = {y_count}; {} = {}\n", xs.len(), y_count));
        human.push_str(&format!("phi round trips: {} failures\n", errors.len()));
        for e in &errors {
            human.push_str(&format!("  FAIL {e}\n"));
        }
        summary.insert("y_count".into(), json!(y_count));
        summary.insert("bijection_failures".into(), json!(errors.len()));
        passed &= errors.is_empty() && xs.len() == y_count;
        cases.extend(errors.into_iter().map(Value::String));
    }

    if args.triangle {
        human.push_str("m k count C(2m,k)-C(2m,k-1)\n");
        let mut mismatches = 0;
        for m in 0..=n as i64 {
            for k in 0..=m {
                let count = count_ne_below_diagonal(m, k)?;
                let formula = catalan_triangle_t(m, k);
                let ok = formula == count.clone().into();
                mismatches += usize::from(!ok);
                human.push_str(&format!("{m} {k} {count} {formula}{}\n", if ok { "" } else { "  MISMATCH" }));
                cases.push(json!({ "m": m, "k": k, "count": count.to_string(), "formula": formula.to_string() }));
            }
        }
        summary.insert("triangle_mismatches".into(), json!(mismatches));
        passed &= mismatches == 0;
    }

    summary.insert("passed".into(), json!(passed));
    Ok(Outcome {
        passed,
        config: json!({ "n": n, "check_bijection": args.check_bijection, "dump": args.dump, "triangle": args.triangle }),
        summary: Value::Object(summary),
        cases: (!cases.is_empty()).then_some(Value::Array(cases)),
        human,
    })
}

fn cmd_conjecture(args: &ConjectureArgs, timing: bool) -> Result<Outcome, Failure> {
    let r_max = args.r;
    if r_max > CONJECTURE_CAP {
        return Err(Failure::Usage(format!("r={r_max} exceeds the cap of {CONJECTURE_CAP}")));
    }
    let grid = match &args.grid {
        Some(g) => Grid::parse(g)?,
        None => Grid::uniform(&["a", "b", "c"], 1, 4),
    };
    let mut human = String::new();
    let mut rows = Vec::new();
    let mut table = Vec::new();
    let mut passed = true;

    for it in iterate_l(r_max) {
        let r = it.r;
        let mut row = serde_json::Map::new();
        row.insert("r".into(), json!(r));
        row.insert("symmetric".into(), json!(it.symmetric));
        let Some(f) = it.f_in_e.clone() else {
            passed = false;
            human.push_str(&format!("r={r}: f_r is not symmetric\n"));
            row.insert("f".into(), json!(it.f.to_string()));
            rows.push(Value::Object(row));
            continue;
        };
        row.insert("f".into(), json!(f.to_string()));
        let table_row = table1_row(r).ok();
        if let Some((tf, _)) = &table_row {
            let matches = *tf == f;
            passed &= matches;
            row.insert("f_matches_table".into(), json!(matches));
            if !matches {
                human.push_str(&format!("r={r}: f_r differs from the table entry {tf}\n"));
            }
        }
        let degree = args.degree.filter(|_| r == r_max).unwrap_or_else(|| default_degree_bound(r));
        let g = match (&table_row, args.fit, r) {
            (_, _, 0) => Ok((GForm::InvE3, "table")),
            (Some((_, g)), false, _) => Ok((g.clone(), "table")),
            _ => fit_g(r, &f, degree).map(|g| (GForm::Poly(g), "fitted")),
        };
        let (g, source) = match g {
            Ok(x) => x,
            Err(e) => {
                passed = false;
                human.push_str(&format!("r={r}: no g_r found ({e})\n"));
                row.insert("g".into(), Value::Null);
                row.insert("error".into(), json!(e.to_string()));
                table.push(TableRow { r, f: f.to_string(), g: format!("({e})") });
                rows.push(Value::Object(row));
                continue;
            }
        };
        if source == "fitted" {
            row.insert("degree_bound".into(), json!(degree));
            if let Some((_, tg)) = &table_row {
                let matches = *tg == g;
                passed &= matches;
                row.insert("g_matches_table".into(), json!(matches));
                if !matches {
                    human.push_str(&format!("r={r}: fitted g_r differs from the table entry {tg}\n"));
                }
            }
        }
        row.insert("g".into(), json!(g.to_string()));
        row.insert("g_source".into(), json!(source));
        let report = verify_conjecture(r, Some(&g), &grid)?;
        passed &= report.passed();
        human.push_str(&report.to_text());
        row.insert("report".into(), report_json(&report, timing));
        table.push(TableRow { r, f: f.to_string(), g: g.to_string() });
        rows.push(Value::Object(row));
    }
    human.push_str(&render_table(&table));
    Ok(Outcome {
        passed,
        config: json!({ "r": r_max, "grid": args.grid, "fit": args.fit, "degree": args.degree }),
        summary: json!({ "passed": passed, "rows": rows.len() }),
        cases: Some(Value::Array(rows)),
        human,
    })
}

fn cmd_list() -> Outcome {
    let mut human = String::from("identities:\n");
    let mut identities = Vec::new();
    for rec in catalog::registry() {
        human.push_str(&format!(
            "  {:<8} {}{}  [{}]  {}\n",
            rec.id,
            rec.default_grid,
            if rec.is_q { " (q)" } else { "" },
            rec.constraint_text,
            rec.notes
        ));
        identities.push(json!({
            "id": rec.id,
            "params": rec.params,
            "constraint": rec.constraint_text,
            "default_grid": rec.default_grid.to_string(),
            "q": rec.is_q,
            "notes": rec.notes,
        }));
    }
    human.push_str("certificates:\n");
    let mut certificates = Vec::new();
    for cert in builtin_certificates() {
        human.push_str(&format!("  {:<8} {:?} in ({}, {})  R = {}\n", cert.id, cert.kind, cert.term.outer, cert.term.inner, cert.multiplier));
        certificates.push(json!({
            "id": cert.id,
            "kind": cert.kind,
            "outer": cert.term.outer,
            "inner": cert.term.inner,
            "multiplier": cert.multiplier.to_string(),
            "notes": cert.notes,
        }));
    }
    human.push_str(&format!("  {Q_TELESCOPE_ID:<8} q-telescoping, checked per n\n"));
    Outcome {
        passed: true,
        config: json!({}),
        summary: json!({ "identities": identities.len(), "certificates": certificates.len() + 1 }),
        cases: Some(json!({ "identities": identities, "certificates": certificates })),
        human,
    }
}
