//! The registry of certificates with their spot-check plans.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::{CertificateKind, HyperTerm, SpotPlan, TermSpec, WZCertificate};
use crate::arith::binom;
use crate::error::{Error, Result};
use crate::poly::parse_ratfn;
use crate::{point, Point};

pub const CERTIFICATE_IDS: [&str; 7] = ["L2.1-LHS", "L2.1-RHS", "T2.2-r", "T2.2-s", "T2.2-RHS", "T2.6", "C3.4"];

fn int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn get(p: &Point, v: &str) -> i64 {
    p[v]
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 { BigInt::from(1) } else { BigInt::from(-1) }
}

struct Entry {
    id: &'static str,
    notes: &'static str,
    kind: CertificateKind,
    outer: &'static str,
    inner: &'static str,
    params: &'static [&'static str],
    spec: fn() -> Result<TermSpec>,
    multiplier: &'static str,
    plan: SpotPlan,
}

// (-1)^m (m-2k) C(m,k)^3
fn l21_lhs_spec() -> Result<TermSpec> {
    TermSpec::new("m - 2*k")?.with_sign("m")?.with_binom("m", "k", 3)
}

fn l21_closed(p: &Point) -> BigRational {
    let (m, n) = (get(p, "m"), get(p, "n"));
    int(sign(m + 1) * binom(m, n).pow(3) * BigInt::from(2 * m - n + 1))
}

fn l21_lhs_sample(rng: &mut dyn rand::RngCore) -> (Point, RangeInclusive<i64>) {
    let n = rng.gen_range(0..=6);
    let m = rng.gen_range(n..=n + 6);
    (point(&[("m", m), ("n", n)]), 0..=n)
}

fn l21_lhs_boundary(_: &HyperTerm, p: &Point) -> Result<BigRational> {
    Ok(l21_closed(p))
}

// (-1)^m (m-n) C(m,n) C(n+j,n) C(n+j,m-n-1)
fn l21_rhs_spec() -> Result<TermSpec> {
    TermSpec::new("m - n")?
        .with_sign("m")?
        .with_binom("m", "n", 1)?
        .with_binom("n + j", "n", 1)?
        .with_binom("n + j", "m - n - 1", 1)
}

fn l21_rhs_sample(rng: &mut dyn rand::RngCore) -> (Point, RangeInclusive<i64>) {
    let n = rng.gen_range(0..=5);
    let m = rng.gen_range(n + 1..=n + 7);
    (point(&[("m", m), ("n", n)]), 0..=m - n)
}

// Summing j over 0..=m-n leaves G(m, m-n+1) = closed - F(m, m-n).
fn l21_rhs_boundary(term: &HyperTerm, p: &Point) -> Result<BigRational> {
    let (m, n) = (get(p, "m"), get(p, "n"));
    let last = term.base_eval(&point(&[("m", m), ("n", n), ("j", m - n)]))?;
    Ok(l21_closed(p) - last)
}

// (m-2k) multinom(m,r,s) C(m,k) C(m+2r,k+r) C(m+2s,k+s) / (C(m+2r,m+r) C(m+2s,m+s))
fn t22_r_spec() -> Result<TermSpec> {
    TermSpec::new("m - 2*k")?
        .with_multinom(&["m", "r", "s"], 1)?
        .with_binom("m", "k", 1)?
        .with_binom("m + 2*r", "k + r", 1)?
        .with_binom("m + 2*s", "k + s", 1)?
        .with_binom("m + 2*r", "m + r", -1)?
        .with_binom("m + 2*s", "m + s", -1)
}

fn t22_r_sample(rng: &mut dyn rand::RngCore) -> (Point, RangeInclusive<i64>) {
    let n = rng.gen_range(0..=4);
    let m = rng.gen_range(n..=n + 4);
    let r = rng.gen_range(0..=3);
    let s = rng.gen_range(0..=3);
    (point(&[("m", m), ("n", n), ("r", r), ("s", s)]), 0..=n)
}

fn t22_r_boundary(_: &HyperTerm, p: &Point) -> Result<BigRational> {
    let (m, n, r, s) = (get(p, "m"), get(p, "n"), get(p, "r"), get(p, "s"));
    Ok(int(BigInt::from(m - n) * binom(m + s, n + s) * binom(m + r, n) * binom(m + r + s, m - n + s - 1)))
}

// (m-2k) C(m+s,m) C(m,k)^2 C(m+2s,k+s) / C(m+2s,m+s)
fn t22_s_spec() -> Result<TermSpec> {
    TermSpec::new("m - 2*k")?
        .with_binom("m + s", "m", 1)?
        .with_binom("m", "k", 2)?
        .with_binom("m + 2*s", "k + s", 1)?
        .with_binom("m + 2*s", "m + s", -1)
}

fn t22_s_sample(rng: &mut dyn rand::RngCore) -> (Point, RangeInclusive<i64>) {
    let n = rng.gen_range(0..=5);
    let m = rng.gen_range(n..=n + 5);
    let s = rng.gen_range(0..=4);
    (point(&[("m", m), ("n", n), ("s", s)]), 0..=n)
}

fn t22_s_boundary(_: &HyperTerm, p: &Point) -> Result<BigRational> {
    let (m, n, s) = (get(p, "m"), get(p, "n"), get(p, "s"));
    Ok(int(BigInt::from(m - n) * binom(m + s, n + s + 1) * binom(m + s, n) * binom(m, n)))
}

// (m-n) C(m+s,n+s) C(n+j,n) C(n+j+s,m-n+s-1)
fn t22_rhs_spec() -> Result<TermSpec> {
    TermSpec::new("m - n")?
        .with_binom("m + s", "n + s", 1)?
        .with_binom("n + j", "n", 1)?
        .with_binom("n + j + s", "m - n + s - 1", 1)
}

fn t22_rhs_sample(rng: &mut dyn rand::RngCore) -> (Point, RangeInclusive<i64>) {
    let n = rng.gen_range(0..=4);
    let m = rng.gen_range(n..=n + 5);
    let s = rng.gen_range(0..=4);
    (point(&[("m", m), ("n", n), ("s", s)]), 0..=m - n - 1)
}

// k^3 C(a+b,a+k) C(b+c,b+k) C(c+a,c+k) / e2(a,b,c)
fn t26_spec() -> Result<TermSpec> {
    TermSpec::new("k^3/(a*b + b*c + c*a)")?
        .with_binom("a + b", "a + k", 1)?
        .with_binom("b + c", "b + k", 1)?
        .with_binom("c + a", "c + k", 1)
}

fn t26_sample(rng: &mut dyn rand::RngCore) -> (Point, RangeInclusive<i64>) {
    let a = rng.gen_range(0..=5);
    let b = rng.gen_range(1..=5);
    let c = rng.gen_range(1..=5);
    (point(&[("a", a), ("b", b), ("c", c)]), 0..=a + 1)
}

// -G(a,0) = b^2 c^2 Q_{a,b} Q_{b,c} Q_{c,a} / (2 e2 (e2 + b + c))
fn t26_boundary(_: &HyperTerm, p: &Point) -> Result<BigRational> {
    let (a, b, c) = (get(p, "a"), get(p, "b"), get(p, "c"));
    let e2 = a * b + b * c + c * a;
    let num = BigInt::from(b * b * c * c) * binom(a + b, a) * binom(b + c, b) * binom(c + a, c);
    let den = BigInt::from(2 * e2 * (e2 + b + c));
    if den == BigInt::from(0) {
        return Err(Error::PoleEncountered { at: crate::fmt_point(p) });
    }
    Ok(BigRational::new(num, den))
}

// C(2n+1,n-k)^2 (2k+1)/(2n+1), equal to C(2n+1,n-k) t_{n+k,k}
fn c34_spec() -> Result<TermSpec> {
    TermSpec::new("(2*k + 1)/(2*n + 1)")?.with_binom("2*n + 1", "n - k", 2)
}

fn c34_sample(rng: &mut dyn rand::RngCore) -> (Point, RangeInclusive<i64>) {
    let n = rng.gen_range(0..=8);
    (point(&[("n", n)]), 0..=n)
}

// G(n,0) - G(n,n+1) = C(2n,n)^2
fn c34_boundary(_: &HyperTerm, p: &Point) -> Result<BigRational> {
    let n = get(p, "n");
    Ok(int(binom(2 * n, n).pow(2) - binom(2 * n, 2 * n + 1).pow(2)))
}

fn entries() -> Vec<Entry> {
    vec![
        Entry {
            id: "L2.1-LHS",
            notes: "F = (-1)^m (m-2k) C(m,k)^3, G = -F (2m-k+2) k^3 / ((m-2k)(m-k+1)^3)",
            kind: CertificateKind::WzPair,
            outer: "m",
            inner: "k",
            params: &[],
            spec: l21_lhs_spec,
            multiplier: "-(2*m - k + 2)*k^3/((m - 2*k)*(m - k + 1)^3)",
            plan: SpotPlan { sample: l21_lhs_sample, boundary: l21_lhs_boundary },
        },
        Entry {
            id: "L2.1-RHS",
            notes: "F = (-1)^m (m-n) C(m,n) C(n+j,n) C(n+j,m-n-1), G = F j (m-2n-j-1)/(m-n)^2",
            kind: CertificateKind::WzPair,
            outer: "m",
            inner: "j",
            params: &["n"],
            spec: l21_rhs_spec,
            multiplier: "j*(m - 2*n - j - 1)/(m - n)^2",
            plan: SpotPlan { sample: l21_rhs_sample, boundary: l21_rhs_boundary },
        },
        Entry {
            id: "T2.2-r",
            notes: "F = (m-2k) multinom(m,r,s) C(m,k) C(m+2r,k+r) C(m+2s,k+s) / (C(m+2r,m+r) C(m+2s,m+s)), G = F k(s+k)/((m-2k)(m+r-k+1))",
            kind: CertificateKind::WzPair,
            outer: "r",
            inner: "k",
            params: &["m", "s"],
            spec: t22_r_spec,
            multiplier: "k*(s + k)/((m - 2*k)*(m + r - k + 1))",
            plan: SpotPlan { sample: t22_r_sample, boundary: t22_r_boundary },
        },
        Entry {
            id: "T2.2-s",
            notes: "F = (m-2k) C(m+s,m) C(m,k)^2 C(m+2s,k+s) / C(m+2s,m+s), G = F k^2/((m-2k)(m+s-k+1))",
            kind: CertificateKind::WzPair,
            outer: "s",
            inner: "k",
            params: &["m"],
            spec: t22_s_spec,
            multiplier: "k^2/((m - 2*k)*(m + s - k + 1))",
            plan: SpotPlan { sample: t22_s_sample, boundary: t22_s_boundary },
        },
        Entry {
            id: "T2.2-RHS",
            notes: "F = (m-n) C(m+s,n+s) C(n+j,n) C(n+j+s,m-n+s-1), G = F j(2n-m+j+1)/((n+s+1)(m-n+s))",
            kind: CertificateKind::WzPair,
            outer: "s",
            inner: "j",
            params: &["m", "n"],
            spec: t22_rhs_spec,
            multiplier: "j*(2*n - m + j + 1)/((n + s + 1)*(m - n + s))",
            // G3(s, m-n) has the same closed form as G2(s, n+1)
            plan: SpotPlan { sample: t22_rhs_sample, boundary: t22_s_boundary },
        },
        Entry {
            id: "T2.6",
            notes: "F = k^3 C(a+b,a+k) C(b+c,b+k) C(c+a,c+k) / e2, G = -F ((e2+b+c)k^2 - (e2+b+c)k + abc + bc)(b+k)(c+k) / (2k^3(a+1-k)(e2+b+c))",
            kind: CertificateKind::WzPair,
            outer: "a",
            inner: "k",
            params: &["b", "c"],
            spec: t26_spec,
            multiplier: "-(((a*b + b*c + c*a) + b + c)*k^2 - ((a*b + b*c + c*a) + b + c)*k + a*b*c + b*c)*(b + k)*(c + k)/(2*k^3*(a + 1 - k)*((a*b + b*c + c*a) + b + c))",
            plan: SpotPlan { sample: t26_sample, boundary: t26_boundary },
        },
        Entry {
            id: "C3.4",
            notes: "F = C(2n+1,n-k)^2 (2k+1)/(2n+1) = G(n,k) - G(n,k+1) with G = C(2n,n+k)^2",
            kind: CertificateKind::Telescoping,
            outer: "n",
            inner: "k",
            params: &[],
            spec: c34_spec,
            multiplier: "(n + k + 1)^2/((2*n + 1)*(2*k + 1))",
            plan: SpotPlan { sample: c34_sample, boundary: c34_boundary },
        },
    ]
}

fn build(e: &Entry) -> WZCertificate {
    let spec = (e.spec)().expect("built-in term specs are well-formed");
    WZCertificate {
        id: e.id.to_string(),
        notes: e.notes.to_string(),
        kind: e.kind,
        term: HyperTerm::from_spec(e.outer, e.inner, spec),
        multiplier: parse_ratfn(e.multiplier).expect("built-in multipliers are well-formed"),
        params: e.params.iter().map(|s| s.to_string()).collect(),
        spot_plan: Some(e.plan),
    }
}

pub fn builtin_certificates() -> Vec<WZCertificate> {
    entries().iter().map(build).collect()
}

pub fn lookup_certificate(id: &str) -> Result<WZCertificate> {
    entries()
        .iter()
        .find(|e| e.id == id)
        .map(build)
        .ok_or_else(|| Error::NotFound(format!("certificate `{id}`")))
}
