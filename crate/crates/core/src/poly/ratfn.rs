use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Assignment, MultiPoly};
use crate::error::{Error, Result};

/// Quotient of two polynomials. No GCD normal form is kept: equality is
/// decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFn { num, den }.normalized())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFn { num: p, den: MultiPoly::one() }
    }

    pub fn int(c: i64) -> Self {
        RationalFn::from_poly(MultiPoly::int(c))
    }

    pub fn one() -> Self {
        RationalFn::int(1)
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    /// Folds a constant denominator into the numerator.
    fn normalized(self) -> Self {
        if let Some(c) = self.den.as_constant() {
            if !c.is_one() {
                let inv = BigRational::one() / c;
                return RationalFn { num: self.num.scale(&inv), den: MultiPoly::one() };
            }
        }
        self
    }

    pub fn to_poly(&self) -> Option<MultiPoly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&(BigRational::one() / c)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `p/q = r/s` iff `p*s - r*q` is the zero polynomial.
    pub fn equals(&self, other: &RationalFn) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn recip(&self) -> Result<RationalFn> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RationalFn) -> Result<RationalFn> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> RationalFn {
        RationalFn { num: self.num.pow(e), den: self.den.pow(e) }.normalized()
    }

    pub fn substitute(&self, var: &str, value: &MultiPoly) -> RationalFn {
        RationalFn {
            num: self.num.substitute(var, value),
            den: self.den.substitute(var, value),
        }
        .normalized()
    }

    pub fn shift(&self, var: &str, delta: i64) -> RationalFn {
        RationalFn { num: self.num.shift(var, delta), den: self.den.shift(var, delta) }
    }

    pub fn scale(&self, c: &BigRational) -> RationalFn {
        RationalFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<BigRational> {
        self.eval_with(|v| assignment.get(v).cloned())
    }

    pub fn eval_with<F>(&self, lookup: F) -> Result<BigRational>
    where
        F: Fn(&str) -> Option<BigRational>,
    {
        let d = self.den.eval_with(&lookup)?;
        if d.is_zero() {
            return Err(Error::PoleEncountered { at: format!("denominator {}", self.den) });
        }
        Ok(self.num.eval_with(&lookup)? / d)
    }
}

pub fn ratfn_equal(x: &RationalFn, y: &RationalFn) -> bool {
    x.equals(y)
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RationalFn {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        // Cheap cancellation when one factor's denominator equals the other's numerator.
        if self.den == rhs.num {
            return RationalFn { num: self.num.clone(), den: rhs.den.clone() }.normalized();
        }
        if rhs.den == self.num {
            return RationalFn { num: rhs.num.clone(), den: self.den.clone() }.normalized();
        }
        RationalFn { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.normalized()
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_ratfn;

    fn r(s: &str) -> RationalFn {
        parse_ratfn(s).unwrap()
    }

    #[test]
    fn equality_examples() {
        assert!(ratfn_equal(&r("(m^2 - k^2)/(m - k)"), &r("m + k")));
        assert!(!ratfn_equal(&r("k"), &r("k + 1")));
        assert!(ratfn_equal(&r("1/(a+1) - 1/(a+2)"), &r("1/((a+1)*(a+2))")));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFn::new(MultiPoly::one(), MultiPoly::zero()).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn eval_detects_pole() {
        let f = r("1/(m - 2*k)");
        let mut point = Assignment::new();
        point.insert("m".into(), BigRational::from_integer(4.into()));
        point.insert("k".into(), BigRational::from_integer(2.into()));
        assert!(matches!(f.eval(&point), Err(Error::PoleEncountered { .. })));
    }

    #[test]
    fn display_round_trips() {
        let f = r("(a^2 + 1)/(b - 3)");
        assert!(r(&f.to_string()).equals(&f));
    }
}
