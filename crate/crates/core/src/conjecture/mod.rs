//! The operator `L f = (a+b)(a+c) f(a-1,b,c) - a^2 f(a,b,c)`, its iterates
//! `f_r = L^r 1`, the odd-power sums `S_r`, and the conjectured
//! representation of `S_r` through a pair `(f_r, g_r)` of symmetric
//! polynomials.

mod fit;
mod limit;

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binom, binom_q};
use crate::catalog::{Failure, Grid, VerificationReport};
use crate::error::{Error, Result};
use crate::poly::{is_symmetric_abc, to_elementary, EPoly, MultiPoly};
use crate::fmt_point;

pub use fit::{fit_g, sample_points};

/// `f_r` as printed in the table, in the elementary basis.
pub const TABLE1_F: [&str; 4] = [
    "1",
    "e2",
    "e2^2 - e1*e2 + e3",
    "e2^3 + 3*e3*e2 - 3*e2^2*e1 - 2*e3*e1 + 2*e2*e1^2 + e3 - e2*e1",
];

/// `g_r` as printed in the table; row 0 is `1/e3`.
pub const TABLE1_G: [&str; 4] = ["1/e3", "1", "2*e3 - e2", "6*e3^2 - 8*e3*e2 + 3*e2^2 + e3 - e2*e1"];

/// The `g` column: a polynomial in the elementary basis, or `1/e3` for `r = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GForm {
    InvE3,
    Poly(EPoly),
}

impl GForm {
    pub fn parse(src: &str) -> Result<GForm> {
        if src.replace(' ', "") == "1/e3" {
            Ok(GForm::InvE3)
        } else {
            Ok(GForm::Poly(EPoly::parse(src)?))
        }
    }

    pub fn eval_at_i64(&self, a: i64, b: i64, c: i64) -> Result<BigRational> {
        match self {
            GForm::Poly(g) => Ok(g.eval_at_i64(a, b, c)),
            GForm::InvE3 => {
                let e3 = a * b * c;
                if e3 == 0 {
                    return Err(Error::DenominatorVanished { at: format!("a={a},b={b},c={c}") });
                }
                Ok(BigRational::new(BigInt::one(), BigInt::from(e3)))
            }
        }
    }
}

impl fmt::Display for GForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GForm::InvE3 => f.write_str("1/e3"),
            GForm::Poly(g) => write!(f, "{g}"),
        }
    }
}

/// Table row `r` in the elementary basis.
pub fn table1_row(r: usize) -> Result<(EPoly, GForm)> {
    if r >= TABLE1_F.len() {
        return Err(Error::NotFound(format!("table row r={r}")));
    }
    Ok((EPoly::parse(TABLE1_F[r])?, GForm::parse(TABLE1_G[r])?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LIterate {
    pub r: usize,
    pub f: MultiPoly,
    pub symmetric: bool,
    /// Present exactly when `symmetric` holds.
    pub f_in_e: Option<EPoly>,
}

pub fn apply_l(f: &MultiPoly) -> MultiPoly {
    let a = MultiPoly::var("a");
    let front = &(&a + &MultiPoly::var("b")) * &(&a + &MultiPoly::var("c"));
    &(&front * &f.shift("a", -1)) - &(&a.pow(2) * f)
}

/// `f_0 = 1, ..., f_{r_max}`. Asymmetric iterates are flagged rather than
/// treated as errors.
pub fn iterate_l(r_max: usize) -> Vec<LIterate> {
    let mut out = Vec::with_capacity(r_max + 1);
    let mut f = MultiPoly::one();
    for r in 0..=r_max {
        if r > 0 {
            f = apply_l(&f);
        }
        let symmetric = is_symmetric_abc(&f);
        let f_in_e = if symmetric { to_elementary(&f).ok() } else { None };
        out.push(LIterate { r, f: f.clone(), symmetric, f_in_e });
    }
    out
}

/// `S_r(a,b,c) = sum_{k=0}^{a} k^(2r+1) C(a+b,a+k) C(b+c,b+k) C(c+a,c+k)`.
pub fn s_r(r: u32, a: i64, b: i64, c: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for k in 0..=a {
        acc += BigInt::from(k).pow(2 * r + 1) * binom(a + b, a + k) * binom(b + c, b + k) * binom(c + a, c + k);
    }
    acc
}

/// The conjectured closed form
/// `b^2 c^2 f(a,b,c) C(b+c,b)/2 * sum_{j<a} C(b+j,b) C(c+j,c) g(j+1,b,c) / (f(j,b,c) f(j+1,b,c))`.
///
/// Where a denominator vanishes the value is taken as the continuous
/// extension, provided the restrictions to the `b`- and `c`-lines through the
/// point both have a removable singularity there with the same value.
/// Otherwise the result is `DenominatorVanished`.
pub fn conjecture_rhs(f: &EPoly, g: &GForm, a: i64, b: i64, c: i64) -> Result<BigRational> {
    match closed_form_direct(f, g, a, b, c) {
        Some(v) => Ok(v),
        None => limit::closed_form_limit(f, g, a, b, c),
    }
}

fn closed_form_direct(f: &EPoly, g: &GForm, a: i64, b: i64, c: i64) -> Option<BigRational> {
    let fj: Vec<BigRational> = (0..=a.max(0)).map(|j| f.eval_at_i64(j, b, c)).collect();
    let mut acc = BigRational::zero();
    for j in 0..a {
        let den = &fj[j as usize] * &fj[j as usize + 1];
        if den.is_zero() {
            return None;
        }
        acc += binom_q(b + j, b) * binom_q(c + j, c) * g.eval_at_i64(j + 1, b, c).ok()? / den;
    }
    let front = BigRational::from_integer(BigInt::from(b * b * c * c)) * f.eval_at_i64(a.max(0), b, c) * binom_q(b + c, b)
        / BigRational::from_integer(2.into());
    Some(front * acc)
}

/// Compares `S_r` with the closed form for `(f_r, g)` over `grid` (parameters
/// `a, b, c`). `g = None` takes the table's `g_r`.
pub fn verify_conjecture(r: usize, g: Option<&GForm>, grid: &Grid) -> Result<VerificationReport> {
    let start = Instant::now();
    let grid = grid.aligned(&["a", "b", "c"], &Grid::uniform(&["a", "b", "c"], 1, 4))?;
    let f = iterate_l(r)
        .pop()
        .and_then(|it| it.f_in_e)
        .ok_or(Error::NotSymmetric)?;
    let g = match g {
        Some(g) => g.clone(),
        None => table1_row(r)?.1,
    };
    let points = grid.points();
    let outcomes: Vec<Result<Option<Failure>>> = points
        .par_iter()
        .map(|p| {
            let (a, b, c) = (p["a"], p["b"], p["c"]);
            let lhs = BigRational::from_integer(s_r(r as u32, a, b, c));
            let rhs = conjecture_rhs(&f, &g, a, b, c)?;
            Ok((lhs != rhs).then(|| Failure {
                assignment: fmt_point(p),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for o in outcomes {
        failures.extend(o?);
    }
    Ok(VerificationReport {
        id: format!("CONJ-r{r}"),
        grid: grid.to_string(),
        cases_checked: points.len(),
        skipped: 0,
        failures,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Default weighted degree bound for fitting `g_r`. The table rows have
/// weighted degree `3(r-1)`, which exceeds `2r` from `r = 4` on.
pub fn default_degree_bound(r: usize) -> u32 {
    (2 * r).max(3 * r.saturating_sub(1)) as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub r: usize,
    pub f: String,
    pub g: String,
}

/// Rows `0..=r_max` with `f_r` from the iteration and `g_r` fitted (row 0
/// uses `1/e3`). A row whose fit fails shows the error in the `g` column.
pub fn table_rows(r_max: usize) -> Vec<TableRow> {
    iterate_l(r_max)
        .into_iter()
        .map(|it| {
            let f = it.f_in_e.as_ref().map_or_else(|| "not symmetric".to_string(), ToString::to_string);
            let g = match (&it.f_in_e, it.r) {
                (_, 0) => GForm::InvE3.to_string(),
                (Some(fe), r) => match fit_g(r, fe, default_degree_bound(r)) {
                    Ok(g) => g.to_string(),
                    Err(e) => format!("({e})"),
                },
                (None, _) => "-".to_string(),
            };
            TableRow { r: it.r, f, g }
        })
        .collect()
}

pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::from("r | f_r | g_r\n");
    for row in rows {
        out.push_str(&format!("{} | {} | {}\n", row.r, row.f, row.g));
    }
    out
}

/// Checks `S_r = a^2 S_{r-1}(a,b,c) - (a+b)(a+c) S_{r-1}(a-1,b,c)` at one point.
pub fn recurrence_holds(r: u32, a: i64, b: i64, c: i64) -> bool {
    assert!(r >= 1);
    s_r(r, a, b, c) == BigInt::from(a * a) * s_r(r - 1, a, b, c) - BigInt::from((a + b) * (a + c)) * s_r(r - 1, a - 1, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn apply_l_examples() {
        assert_eq!(apply_l(&MultiPoly::one()), parse_poly("a*b + a*c + b*c").unwrap());
        let f2 = EPoly::parse("e2^2 - e1*e2 + e3").unwrap().expand();
        assert_eq!(apply_l(&crate::poly::EPoly::parse("e2").unwrap().expand()), f2);
        let expected = parse_poly("(a+b)*(a+c)*(a-1) - a^3").unwrap();
        assert_eq!(apply_l(&MultiPoly::var("a")), expected);
    }

    #[test]
    fn iterates_match_table() {
        let its = iterate_l(3);
        for (r, it) in its.iter().enumerate() {
            assert!(it.symmetric);
            assert_eq!(it.f_in_e.as_ref().unwrap(), &table1_row(r).unwrap().0, "r={r}");
        }
    }

    #[test]
    fn iterates_symmetric_with_degree_2r() {
        for it in iterate_l(6) {
            assert!(it.symmetric, "r={}", it.r);
            assert_eq!(it.f.total_degree(), Some(2 * it.r as u32));
            assert_eq!(it.f_in_e.unwrap().expand(), it.f);
        }
    }

    #[test]
    fn s_r_examples() {
        assert_eq!(s_r(0, 1, 1, 1), BigInt::from(1));
        assert_eq!(s_r(1, 2, 1, 1), BigInt::from(3));
        assert_eq!(s_r(1, 0, 3, 4), BigInt::zero());
        assert!(recurrence_holds(1, 2, 1, 1));
    }

    #[test]
    fn conjecture_spot_value() {
        let (f, g) = table1_row(1).unwrap();
        assert_eq!(conjecture_rhs(&f, &g, 2, 1, 1).unwrap(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn table_rows_verify() {
        let grid = Grid::uniform(&["a", "b", "c"], 1, 4);
        for r in 0..=3 {
            let rep = verify_conjecture(r, None, &grid).unwrap();
            assert_eq!(rep.cases_checked, 64);
            assert!(rep.passed(), "{}", rep.to_text());
        }
        let r1 = verify_conjecture(1, None, &Grid::uniform(&["a", "b", "c"], 1, 5)).unwrap();
        assert!(r1.passed());
    }

    #[test]
    fn wrong_g_fails() {
        let grid = Grid::uniform(&["a", "b", "c"], 1, 3);
        let g = GForm::parse("6*e3^2 - 8*e3*e2 + 3*e2^2 + e3").unwrap();
        assert!(!verify_conjecture(3, Some(&g), &grid).unwrap().passed());
    }

    #[test]
    fn removable_singularity() {
        // f_2(0,2,2) = 0 and g_2(1,2,2) = 0: the j = 0 term is 0/0 and
        // cancels to 1/(bc) along both lines
        let (f, g) = table1_row(2).unwrap();
        for a in 1..=4 {
            assert_eq!(conjecture_rhs(&f, &g, a, 2, 2).unwrap(), BigRational::from_integer(s_r(2, a, 2, 2)));
        }
    }

    #[test]
    fn vanishing_denominator() {
        let grid = Grid::parse("a=1..2,b=0..0,c=0..1").unwrap();
        assert!(matches!(verify_conjecture(1, None, &grid), Err(Error::DenominatorVanished { .. })));
    }

    #[test]
    fn recurrence_on_grid() {
        for r in 1..=4 {
            for a in 1..=5 {
                for b in 1..=5 {
                    for c in 1..=5 {
                        assert!(recurrence_holds(r, a, b, c));
                    }
                }
            }
        }
    }
}
