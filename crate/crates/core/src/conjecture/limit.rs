//! Evaluation of the closed form at points where one of its denominators
//! vanishes. The expression is restricted to the line through the point in
//! which only `b` (or only `c`) varies, common factors `t - t0` are cancelled
//! from each term, and the two restrictions must agree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::GForm;
use crate::arith::{binom_q, factorial};
use crate::error::{Error, Result};
use crate::poly::{EPoly, MultiPoly};

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, Debug)]
struct UPoly(Vec<BigRational>);

impl UPoly {
    fn constant(c: BigRational) -> Self {
        UPoly(vec![c])
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn mul(&self, other: &UPoly) -> UPoly {
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in other.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UPoly(out)
    }

    /// Quotient by `t - x`, assuming `x` is a root.
    fn deflate(&self, x: &BigRational) -> UPoly {
        let n = self.0.len();
        if n <= 1 {
            return UPoly::constant(BigRational::zero());
        }
        let mut out = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (1..n).rev() {
            carry = &self.0[i] + carry * x;
            out[i - 1] = carry.clone();
        }
        UPoly(out)
    }

    /// `C(t + m, m) = (t+1)...(t+m)/m!` for a fixed `m >= 0`.
    fn rising_binom(m: i64) -> UPoly {
        let mut out = UPoly::constant(BigRational::one());
        for i in 1..=m {
            out = out.mul(&UPoly(vec![BigRational::from_integer(i.into()), BigRational::one()]));
        }
        let inv = BigRational::new(BigInt::one(), factorial(m as u64));
        UPoly(out.0.into_iter().map(|c| c * &inv).collect())
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Which of `b, c` varies along the line; the other keeps its value.
#[derive(Clone, Copy)]
enum Line {
    B,
    C,
}

struct Restriction {
    line: Line,
    fixed: i64,
    t0: BigRational,
}

impl Restriction {
    /// `p(a, b, c)` with `a = a0` and the fixed coordinate substituted.
    fn restrict(&self, p: &MultiPoly, a0: i64) -> UPoly {
        let (free, other) = match self.line {
            Line::B => ("b", "c"),
            Line::C => ("c", "b"),
        };
        let q = p
            .substitute("a", &MultiPoly::int(a0))
            .substitute(other, &MultiPoly::int(self.fixed))
            .over_vars(&[free])
            .expect("only the free variable remains");
        let deg = q.degree_in(free) as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (k, c) in q.terms() {
            coeffs[k[0] as usize] = c.clone();
        }
        UPoly(coeffs)
    }

    fn var(&self) -> UPoly {
        UPoly(vec![BigRational::zero(), BigRational::one()])
    }

    /// `g(j+1, b, c)` as a numerator and denominator.
    fn g_parts(&self, g: &GForm, j: i64) -> (UPoly, UPoly) {
        match g {
            GForm::Poly(g) => (self.restrict(&g.expand(), j + 1), UPoly::constant(BigRational::one())),
            GForm::InvE3 => (
                UPoly::constant(BigRational::one()),
                self.var().mul(&UPoly::constant(rat((j + 1) * self.fixed))),
            ),
        }
    }

    /// Value of `num/den` at `t0` after cancelling common roots there.
    fn limit(&self, mut num: UPoly, mut den: UPoly) -> Option<BigRational> {
        if den.is_zero() {
            return None;
        }
        loop {
            let d = den.eval(&self.t0);
            if !d.is_zero() {
                return Some(num.eval(&self.t0) / d);
            }
            if !num.eval(&self.t0).is_zero() {
                return None;
            }
            num = num.deflate(&self.t0);
            den = den.deflate(&self.t0);
        }
    }

    fn closed_form(&self, f: &EPoly, g: &GForm, a: i64) -> Option<BigRational> {
        let fx = f.expand();
        let t = self.var();
        // b^2 c^2 C(b+c, b) / 2 with one of b, c replaced by t
        let mut front = t.mul(&t).mul(&UPoly::constant(rat(self.fixed * self.fixed) / rat(2)));
        front = front.mul(&UPoly::rising_binom(self.fixed)).mul(&self.restrict(&fx, a));
        let mut total = BigRational::zero();
        for j in 0..a {
            // C(t+j, j) for the free coordinate and C(x+j, j) for the fixed one
            let binoms = UPoly::rising_binom(j).mul(&UPoly::constant(binom_q(self.fixed + j, j)));
            let (gn, gd) = self.g_parts(g, j);
            let num = front.mul(&binoms).mul(&gn);
            let den = self.restrict(&fx, j).mul(&self.restrict(&fx, j + 1)).mul(&gd);
            total += self.limit(num, den)?;
        }
        Some(total)
    }
}

/// The closed form at `(a, b, c)` read as the continuous extension along the
/// `b`- and `c`-lines through the point. Fails unless both lines give the
/// same finite value.
pub(super) fn closed_form_limit(f: &EPoly, g: &GForm, a: i64, b: i64, c: i64) -> Result<BigRational> {
    let along_b = Restriction { line: Line::B, fixed: c, t0: rat(b) }.closed_form(f, g, a);
    let along_c = Restriction { line: Line::C, fixed: b, t0: rat(c) }.closed_form(f, g, a);
    match (along_b, along_c) {
        (Some(x), Some(y)) if x == y => Ok(x),
        _ => Err(Error::DenominatorVanished { at: format!("a={a},b={b},c={c}") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deflate_and_limit() {
        // (t^2 - 4)/(t - 2) at t = 2 is 4
        let r = Restriction { line: Line::B, fixed: 0, t0: rat(2) };
        let num = UPoly(vec![rat(-4), rat(0), rat(1)]);
        let den = UPoly(vec![rat(-2), rat(1)]);
        assert_eq!(r.limit(num, den), Some(rat(4)));
        // 1/(t - 2) has a pole
        assert_eq!(r.limit(UPoly::constant(rat(1)), UPoly(vec![rat(-2), rat(1)])), None);
    }

    #[test]
    fn rising_binom_values() {
        let p = UPoly::rising_binom(3);
        for t in 0..6 {
            assert_eq!(p.eval(&rat(t)), binom_q(t + 3, 3));
        }
    }
}
