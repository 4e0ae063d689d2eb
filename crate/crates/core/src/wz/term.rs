//! Hypergeometric terms given as products of binomials, multinomials, a sign
//! and a rational prefactor, with their shift quotients derived symbolically.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binom, multinom};
use crate::error::{Error, Result};
use crate::poly::{parse_poly, parse_ratfn, MultiPoly, RationalFn};
use crate::{fmt_point, Point};

/// Integer affine form `c0 + sum c_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    coeffs: BTreeMap<String, i64>,
    constant: i64,
}

impl Affine {
    pub fn parse(src: &str) -> Result<Self> {
        let p = parse_poly(src)?;
        let bad = || Error::Parse { pos: 0, msg: format!("`{src}` is not an integer affine form") };
        let mut coeffs = BTreeMap::new();
        let mut constant = 0;
        for (k, c) in p.terms() {
            if !c.is_integer() {
                return Err(bad());
            }
            let c: i64 = c.to_integer().try_into().map_err(|_| bad())?;
            let deg: u32 = k.iter().sum();
            match deg {
                0 => constant = c,
                1 => {
                    let i = k.iter().position(|&e| e == 1).unwrap();
                    coeffs.insert(p.vars()[i].clone(), c);
                }
                _ => return Err(bad()),
            }
        }
        Ok(Affine { coeffs, constant })
    }

    pub fn coeff(&self, var: &str) -> i64 {
        self.coeffs.get(var).copied().unwrap_or(0)
    }

    pub fn eval(&self, point: &Point) -> Result<i64> {
        let mut acc = self.constant;
        for (v, c) in &self.coeffs {
            let x = point.get(v).ok_or_else(|| Error::MissingVariable(v.clone()))?;
            acc += c * x;
        }
        Ok(acc)
    }

    pub fn to_poly(&self) -> MultiPoly {
        self.coeffs
            .iter()
            .fold(MultiPoly::int(self.constant), |acc, (v, c)| &acc + &MultiPoly::var(v).scale(&rat(*c)))
    }

    fn minus(&self, other: &Affine) -> Affine {
        let mut coeffs = self.coeffs.clone();
        for (v, c) in &other.coeffs {
            *coeffs.entry(v.clone()).or_insert(0) -= c;
        }
        coeffs.retain(|_, c| *c != 0);
        Affine { coeffs, constant: self.constant - other.constant }
    }

    fn sum(parts: &[Affine]) -> Affine {
        let mut coeffs = BTreeMap::new();
        let mut constant = 0;
        for p in parts {
            constant += p.constant;
            for (v, c) in &p.coeffs {
                *coeffs.entry(v.clone()).or_insert(0) += c;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Affine { coeffs, constant }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[derive(Clone, Debug)]
pub enum Factor {
    Binom { top: Affine, bottom: Affine },
    Multinom(Vec<Affine>),
}

impl Factor {
    pub fn binom(top: &str, bottom: &str) -> Result<Factor> {
        Ok(Factor::Binom { top: Affine::parse(top)?, bottom: Affine::parse(bottom)? })
    }

    pub fn multinom(parts: &[&str]) -> Result<Factor> {
        Ok(Factor::Multinom(parts.iter().map(|p| Affine::parse(p)).collect::<Result<_>>()?))
    }

    fn eval(&self, point: &Point) -> Result<BigInt> {
        Ok(match self {
            Factor::Binom { top, bottom } => binom(top.eval(point)?, bottom.eval(point)?),
            Factor::Multinom(parts) => {
                let xs = parts.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
                multinom(&xs)
            }
        })
    }

    /// Factorials `X!` making up this factor, as `(argument, exponent)`.
    fn factorials(&self) -> Vec<(Affine, i32)> {
        match self {
            Factor::Binom { top, bottom } => {
                vec![(top.clone(), 1), (bottom.clone(), -1), (top.minus(bottom), -1)]
            }
            Factor::Multinom(parts) => {
                let mut out = vec![(Affine::sum(parts), 1)];
                out.extend(parts.iter().map(|p| (p.clone(), -1)));
                out
            }
        }
    }
}

/// Description of a term `F = (-1)^sign * prefactor * prod factor_i^power_i`.
#[derive(Clone, Debug)]
pub struct TermSpec {
    pub sign: Option<Affine>,
    pub prefactor: RationalFn,
    pub factors: Vec<(Factor, i32)>,
}

impl TermSpec {
    pub fn new(prefactor: &str) -> Result<Self> {
        Ok(TermSpec { sign: None, prefactor: parse_ratfn(prefactor)?, factors: Vec::new() })
    }

    pub fn with_sign(mut self, exponent: &str) -> Result<Self> {
        self.sign = Some(Affine::parse(exponent)?);
        Ok(self)
    }

    pub fn with_binom(mut self, top: &str, bottom: &str, power: i32) -> Result<Self> {
        self.factors.push((Factor::binom(top, bottom)?, power));
        Ok(self)
    }

    pub fn with_multinom(mut self, parts: &[&str], power: i32) -> Result<Self> {
        self.factors.push((Factor::multinom(parts)?, power));
        Ok(self)
    }

    /// Exact value at an integer point, with binomials zero outside their range.
    pub fn eval(&self, point: &Point) -> Result<BigRational> {
        let mut acc = self
            .prefactor
            .eval_with(|v| point.get(v).map(|&x| rat(x)))
            .map_err(|e| match e {
                Error::PoleEncountered { .. } => Error::PoleEncountered { at: fmt_point(point) },
                other => other,
            })?;
        if let Some(s) = &self.sign {
            if s.eval(point)?.rem_euclid(2) == 1 {
                acc = -acc;
            }
        }
        for (factor, power) in &self.factors {
            let v = BigRational::from_integer(factor.eval(point)?);
            if *power >= 0 {
                acc *= num_traits::pow(v, *power as usize);
            } else {
                if v.is_zero() {
                    return Err(Error::PoleEncountered { at: fmt_point(point) });
                }
                acc /= num_traits::pow(v, power.unsigned_abs() as usize);
            }
        }
        Ok(acc)
    }

    /// `F(var + 1) / F` as a rational function, assembled from linear factors
    /// `(X+1)...(X+c)` for every factorial `X!` whose argument moves with `var`.
    pub fn shift_quotient(&self, var: &str) -> RationalFn {
        let mut num: Vec<MultiPoly> = Vec::new();
        let mut den: Vec<MultiPoly> = Vec::new();
        let mut negate = false;
        if let Some(s) = &self.sign {
            negate = s.coeff(var).rem_euclid(2) == 1;
        }
        let pn = self.prefactor.numer();
        let pd = self.prefactor.denom();
        num.push(pn.shift(var, 1));
        num.push(pd.clone());
        den.push(pn.clone());
        den.push(pd.shift(var, 1));
        for (factor, power) in &self.factors {
            for (arg, exp) in factor.factorials() {
                let c = arg.coeff(var);
                if c == 0 {
                    continue;
                }
                let x = arg.to_poly();
                // (X+c)!/X! for c > 0, 1/(X(X-1)...(X+c+1)) for c < 0
                let (rising, into_num) = if c > 0 {
                    ((1..=c).map(|i| &x + &MultiPoly::int(i)).collect::<Vec<_>>(), true)
                } else {
                    ((0..-c).map(|i| &x - &MultiPoly::int(i)).collect::<Vec<_>>(), false)
                };
                let total = exp * power;
                let goes_num = into_num == (total > 0);
                for _ in 0..total.unsigned_abs() {
                    for f in &rising {
                        if goes_num {
                            num.push(f.clone());
                        } else {
                            den.push(f.clone());
                        }
                    }
                }
            }
        }
        cancel_common(&mut num, &mut den, &mut negate);
        let n = num.iter().fold(MultiPoly::one(), |acc, f| &acc * f);
        let d = den.iter().fold(MultiPoly::one(), |acc, f| &acc * f);
        let n = if negate { -n } else { n };
        RationalFn::new(n, d).expect("shift quotient denominator is a product of nonzero polynomials")
    }
}

fn cancel_common(num: &mut Vec<MultiPoly>, den: &mut Vec<MultiPoly>, negate: &mut bool) {
    num.retain(|f| f.as_constant().is_none_or(|c| !c.is_one()));
    den.retain(|f| f.as_constant().is_none_or(|c| !c.is_one()));
    let mut i = 0;
    while i < num.len() {
        if let Some(j) = den.iter().position(|d| *d == num[i]) {
            den.remove(j);
            num.remove(i);
        } else if let Some(j) = den.iter().position(|d| *d == -&num[i]) {
            den.remove(j);
            num.remove(i);
            *negate = !*negate;
        } else {
            i += 1;
        }
    }
}

/// A term `F(outer, inner)` (possibly with further free parameters) given by
/// its two shift quotients together with an exact evaluator.
#[derive(Clone, Debug)]
pub struct HyperTerm {
    pub outer: String,
    pub inner: String,
    pub ratio_outer: RationalFn,
    pub ratio_inner: RationalFn,
    spec: Option<TermSpec>,
}

impl HyperTerm {
    pub fn from_spec(outer: &str, inner: &str, spec: TermSpec) -> Self {
        HyperTerm {
            outer: outer.to_string(),
            inner: inner.to_string(),
            ratio_outer: spec.shift_quotient(outer),
            ratio_inner: spec.shift_quotient(inner),
            spec: Some(spec),
        }
    }

    /// A term known only through its quotients (no evaluator).
    pub fn from_ratios(outer: &str, inner: &str, ratio_outer: RationalFn, ratio_inner: RationalFn) -> Self {
        HyperTerm { outer: outer.to_string(), inner: inner.to_string(), ratio_outer, ratio_inner, spec: None }
    }

    pub fn spec(&self) -> Option<&TermSpec> {
        self.spec.as_ref()
    }

    pub fn base_eval(&self, point: &Point) -> Result<BigRational> {
        match &self.spec {
            Some(s) => s.eval(point),
            None => Err(Error::NotFound(format!("evaluator for term in ({}, {})", self.outer, self.inner))),
        }
    }

    /// `ratio_outer(inner+1) * ratio_inner == ratio_inner(outer+1) * ratio_outer`
    pub fn ratios_commute(&self) -> bool {
        let lhs = &self.ratio_outer.shift(&self.inner, 1) * &self.ratio_inner;
        let rhs = &self.ratio_inner.shift(&self.outer, 1) * &self.ratio_outer;
        lhs.equals(&rhs)
    }

    /// Points of the grid (with `base` supplying the other parameters) where
    /// a quotient disagrees with the evaluator. Points where the term or a
    /// quotient denominator vanishes are skipped. Returns `(checked, mismatches)`.
    pub fn consistency_mismatches(
        &self,
        base: &Point,
        outer_range: std::ops::RangeInclusive<i64>,
        inner_range: std::ops::RangeInclusive<i64>,
    ) -> Result<(usize, Vec<Point>)> {
        let mut checked = 0;
        let mut bad = Vec::new();
        for o in outer_range {
            for i in inner_range.clone() {
                let mut p = base.clone();
                p.insert(self.outer.clone(), o);
                p.insert(self.inner.clone(), i);
                let f = match self.base_eval(&p) {
                    Ok(f) if !f.is_zero() => f,
                    Ok(_) | Err(Error::PoleEncountered { .. }) => continue,
                    Err(e) => return Err(e),
                };
                for (var, ratio) in [(&self.outer, &self.ratio_outer), (&self.inner, &self.ratio_inner)] {
                    let Ok(r) = ratio.eval_with(|v| p.get(v).map(|&x| rat(x))) else {
                        continue;
                    };
                    let mut next = p.clone();
                    *next.get_mut(var).unwrap() += 1;
                    let g = match self.base_eval(&next) {
                        Ok(g) => g,
                        Err(Error::PoleEncountered { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    checked += 1;
                    if g != &f * &r {
                        bad.push(p.clone());
                    }
                }
            }
        }
        Ok((checked, bad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point;

    #[test]
    fn affine_parse() {
        let a = Affine::parse("m + 2*r - 1").unwrap();
        assert_eq!(a.coeff("r"), 2);
        assert_eq!(a.eval(&point(&[("m", 3), ("r", 1)])).unwrap(), 4);
        assert!(Affine::parse("m*r").is_err());
        assert!(Affine::parse("m/2").is_err());
    }

    #[test]
    fn quotient_of_cubed_binomial_matches_hand_derivation() {
        // F = (-1)^m (m-2k) C(m,k)^3
        let spec = TermSpec::new("m - 2*k").unwrap().with_sign("m").unwrap().with_binom("m", "k", 3).unwrap();
        let by_hand_m = parse_ratfn("-(m + 1 - 2*k)*(m+1)^3/((m - 2*k)*(m + 1 - k)^3)").unwrap();
        let by_hand_k = parse_ratfn("(m - 2*k - 2)*(m - k)^3/((m - 2*k)*(k + 1)^3)").unwrap();
        assert!(spec.shift_quotient("m").equals(&by_hand_m));
        assert!(spec.shift_quotient("k").equals(&by_hand_k));
    }

    #[test]
    fn multinomial_quotient() {
        let spec = TermSpec::new("1").unwrap().with_multinom(&["m", "r", "s"], 1).unwrap();
        assert!(spec.shift_quotient("r").equals(&parse_ratfn("(m + r + s + 1)/(r + 1)").unwrap()));
    }

    #[test]
    fn negative_power_and_pole() {
        let spec = TermSpec::new("1").unwrap().with_binom("n", "k", -1).unwrap();
        assert_eq!(spec.eval(&point(&[("n", 4), ("k", 2)])).unwrap(), BigRational::new(1.into(), 6.into()));
        assert!(matches!(spec.eval(&point(&[("n", 4), ("k", 5)])), Err(Error::PoleEncountered { .. })));
    }

    #[test]
    fn consistency_and_commutation() {
        let spec = TermSpec::new("m - 2*k").unwrap().with_sign("m").unwrap().with_binom("m", "k", 3).unwrap();
        let t = HyperTerm::from_spec("m", "k", spec);
        assert!(t.ratios_commute());
        let (checked, bad) = t.consistency_mismatches(&Point::new(), 0..=9, 0..=9).unwrap();
        assert!(checked > 50);
        assert!(bad.is_empty(), "{bad:?}");
    }
}
