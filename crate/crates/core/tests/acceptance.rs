//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wzproof::arith::{binom, QPoly};
use wzproof::catalog::{self, catalan_triangle_t, lookup, registry, verify_record, Grid, Value};
use wzproof::conjecture::{
    default_degree_bound, fit_g, iterate_l, recurrence_holds, table1_row, verify_conjecture, GForm,
};
use wzproof::paths::{count_ne_below_diagonal, decompose, enumerate_x, enumerate_y, is_x_path, is_y_pair, phi, phi_inverse};
use wzproof::wz::{builtin_certificates, check_certificate, q_telescope_check, random_offset, spot_checks, CERTIFICATE_IDS};
use wzproof::point;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn certificates() -> Outcome {
    let certs = builtin_certificates();
    let ids: Vec<&str> = certs.iter().map(|c| c.id.as_str()).collect();
    ensure(ids == CERTIFICATE_IDS, || format!("registered ids {ids:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut spots = 0;
    for cert in &certs {
        ensure(check_certificate(cert), || format!("{} fails the symbolic check", cert.id))?;
        for (p, report) in spot_checks(cert, 20, &mut rng).map_err(|e| format!("{}: {e}", cert.id))? {
            ensure(report.matched, || {
                format!("{} spot at {}: {} vs {}", cert.id, wzproof::fmt_point(&p), report.lhs_difference, report.boundary_value)
            })?;
            spots += 1;
        }
    }
    Ok(format!("{} certificates symbolic, {spots} spot sums exact", certs.len()))
}

fn identities() -> Outcome {
    let mut cases = 0;
    let mut ids = 0;
    for rec in registry().iter().filter(|r| !r.is_q) {
        let report = verify_record(rec, &rec.default_grid);
        ensure(report.passed(), || report.to_text())?;
        ensure(report.cases_checked > 0, || format!("{}: no admitted cases", rec.id))?;
        cases += report.cases_checked;
        ids += 1;
    }
    Ok(format!("{ids} identities, {cases} grid cases"))
}

fn q_suite() -> Outcome {
    let mut cases = 0;
    for id in ["QL3.1", "QT4.2", "SYM-Uq"] {
        let report = catalog::verify_q(id, None).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.to_text())?;
        cases += report.cases_checked;
    }
    let rec = lookup("QL3.1").map_err(|e| e.to_string())?;
    let at = point(&[("n", 1)]);
    let expected = Value::Q(QPoly::from_i64s(&[0, 1, 2, 1]));
    let (lhs, rhs) = ((rec.lhs)(&at).map_err(|e| e.to_string())?, (rec.rhs)(&at).map_err(|e| e.to_string())?);
    ensure(lhs == expected && rhs == expected, || format!("n=1 gives {lhs} and {rhs}"))?;
    for n in 0..=8 {
        ensure(q_telescope_check(n).passed(), || format!("q-telescoping fails at n={n}"))?;
    }
    Ok(format!("{cases} q-polynomial cases, n=1 value q + 2q^2 + q^3, telescoping n <= 8"))
}

fn bijection() -> Outcome {
    let mut counts = Vec::new();
    for n in 0..=4usize {
        let xs = enumerate_x(n);
        let ys = enumerate_y(n);
        let c = binom(2 * n as i64, n as i64);
        ensure(xs.len() == ys.len() && c.pow(2u32) == xs.len().into(), || {
            format!("n={n}: |X|={}, |Y|={}", xs.len(), ys.len())
        })?;
        let mut images = HashSet::new();
        for x in &xs {
            let dec = decompose(x, n).ok_or_else(|| format!("{x} has no decomposition"))?;
            ensure(dec.violations(n).is_empty(), || format!("{x}: {:?}", dec.violations(n)))?;
            let y = phi(x, n).ok_or_else(|| format!("phi undefined at {x}"))?;
            ensure(is_y_pair(&y, n) && phi_inverse(&y).as_ref() == Some(x), || format!("{x} -> {y}"))?;
            images.insert(y);
        }
        ensure(images.len() == ys.len(), || format!("n={n}: phi is not onto"))?;
        for y in &ys {
            let x = phi_inverse(y).ok_or_else(|| format!("phi inverse undefined at {y}"))?;
            ensure(is_x_path(&x, n) && phi(&x, n).as_ref() == Some(y), || format!("{y} -> {x}"))?;
        }
        counts.push(xs.len().to_string());
    }
    Ok(format!("|X_n| = |Y_n| = {} for n = 0..4, round trips exact", counts.join(", ")))
}

fn catalan_triangle() -> Outcome {
    let mut checked = 0;
    for n in 0..=6i64 {
        for k in 0..=n {
            let count = count_ne_below_diagonal(n, k).map_err(|e| e.to_string())?;
            let formula = catalan_triangle_t(n, k);
            ensure(formula == count.clone().into(), || format!("n={n}, k={k}: {count} vs {formula}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} entries for k <= n <= 6"))
}

fn conjecture() -> Outcome {
    let its = iterate_l(6);
    for it in &its {
        ensure(it.symmetric, || format!("f_{} is not symmetric", it.r))?;
        let degree = it.f.total_degree().unwrap_or(0);
        ensure(degree == 2 * it.r as u32, || format!("f_{} has degree {degree}", it.r))?;
    }
    let grid = Grid::uniform(&["a", "b", "c"], 1, 4);
    for (r, it) in its.iter().enumerate().take(4) {
        let (f, g) = table1_row(r).map_err(|e| e.to_string())?;
        let got = it.f_in_e.as_ref().expect("symmetric iterate");
        ensure(*got == f, || format!("f_{r} = {got}, table has {f}"))?;
        let report = verify_conjecture(r, None, &grid).map_err(|e| e.to_string())?;
        ensure(report.passed() && report.cases_checked == 64, || report.to_text())?;
        if r > 0 {
            let fitted = fit_g(r, got, default_degree_bound(r)).map_err(|e| e.to_string())?;
            ensure(GForm::Poly(fitted.clone()) == g, || format!("fitted g_{r} = {fitted}, table has {g}"))?;
        }
    }
    for r in 1..=4 {
        for a in 0..=5 {
            for b in 0..=5 {
                for c in 0..=5 {
                    ensure(recurrence_holds(r, a, b, c), || format!("recurrence fails at r={r}, ({a},{b},{c})"))?;
                }
            }
        }
    }
    Ok("f_1..f_3 match, rows 0..3 verified on 1..4, g_1..g_3 refitted, f_r symmetric for r <= 6, recurrence holds".into())
}

fn mutations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let certs = builtin_certificates();
    for cert in &certs {
        let vars: Vec<&str> = std::iter::once(cert.term.outer.as_str())
            .chain(std::iter::once(cert.term.inner.as_str()))
            .chain(cert.params.iter().map(String::as_str))
            .collect();
        let perturbed = cert.perturbed(&random_offset(&vars, &mut rng));
        ensure(!check_certificate(&perturbed), || format!("{} accepts a perturbed multiplier", cert.id))?;
        ensure(!check_certificate(&cert.scaled(2)), || format!("{} accepts a doubled multiplier", cert.id))?;
    }
    let mutants = [("GE3", "n"), ("GE0", "c"), ("QL3.1", "n")];
    for (id, param) in mutants {
        let rec = lookup(id).map_err(|e| e.to_string())?;
        let report = verify_record(&rec.with_shifted_rhs(param, 1), &rec.default_grid);
        ensure(!report.passed(), || format!("{id} with {param} shifted on the right still passes"))?;
    }
    Ok(format!("{} perturbed certificates rejected, {} mutated identities caught", certs.len(), mutants.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("certificate suite", certificates),
        ("identity suite", identities),
        ("q-suite", q_suite),
        ("bijection suite", bijection),
        ("catalan triangle", catalan_triangle),
        ("conjecture and table", conjecture),
        ("mutation negativity", mutations),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{}] {name}: {reason} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
