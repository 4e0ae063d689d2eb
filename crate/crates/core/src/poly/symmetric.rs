//! Symmetric polynomials in `a, b, c` and their representation in the
//! elementary basis `e1 = a+b+c`, `e2 = ab+bc+ca`, `e3 = abc`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{fmt_terms, parse_poly, MultiPoly};
use crate::error::{Error, Result};

const ABC: [&str; 3] = ["a", "b", "c"];

pub fn e1() -> MultiPoly {
    parse_poly("a + b + c").expect("static")
}

pub fn e2() -> MultiPoly {
    parse_poly("a*b + b*c + c*a").expect("static")
}

pub fn e3() -> MultiPoly {
    parse_poly("a*b*c").expect("static")
}

/// A polynomial in `e1, e2, e3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPoly(MultiPoly);

impl EPoly {
    /// Fails if `p` uses any variable other than `e1, e2, e3`.
    pub fn new(p: MultiPoly) -> Result<Self> {
        if let Some(v) = p.used_vars().into_iter().find(|v| !["e1", "e2", "e3"].contains(&v.as_str())) {
            return Err(Error::OutOfRange(format!("EPoly may only use e1, e2, e3; found `{v}`")));
        }
        Ok(EPoly(p.over_vars(&["e1", "e2", "e3"]).expect("checked above")))
    }

    pub fn parse(src: &str) -> Result<Self> {
        EPoly::new(parse_poly(src)?)
    }

    pub fn as_poly(&self) -> &MultiPoly {
        &self.0
    }

    /// Substitutes the elementary polynomials, giving a polynomial in `a, b, c`.
    pub fn expand(&self) -> MultiPoly {
        self.0
            .substitute("e1", &e1())
            .substitute("e2", &e2())
            .substitute("e3", &e3())
    }

    /// Value at `(a, b, c)` computed through the elementary symmetric values.
    pub fn eval_at(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        let v1 = a + b + c;
        let v2 = a * b + b * c + c * a;
        let v3 = a * b * c;
        self.0
            .eval_with(|v| match v {
                "e1" => Some(v1.clone()),
                "e2" => Some(v2.clone()),
                "e3" => Some(v3.clone()),
                _ => None,
            })
            .expect("EPoly only uses e1, e2, e3")
    }

    pub fn eval_at_i64(&self, a: i64, b: i64, c: i64) -> BigRational {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        self.eval_at(&q(a), &q(b), &q(c))
    }

    /// Degree in `a, b, c` (`e_i` has weight `i`).
    pub fn weighted_degree(&self) -> Option<u32> {
        self.0
            .terms()
            .map(|(k, _)| k[0] + 2 * k[1] + 3 * k[2])
            .max()
    }
}

/// Printed by descending weight; within a weight, higher powers of `e3`
/// then `e2` come first.
impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.0.terms().collect();
        terms.sort_by(|(ka, _), (kb, _)| {
            let wa = ka[0] + 2 * ka[1] + 3 * ka[2];
            let wb = kb[0] + 2 * kb[1] + 3 * kb[2];
            wb.cmp(&wa)
                .then_with(|| kb[2].cmp(&ka[2]))
                .then_with(|| kb[1].cmp(&ka[1]))
        });
        fmt_terms(f, self.0.vars(), terms)
    }
}

pub fn is_symmetric_abc(p: &MultiPoly) -> bool {
    *p == p.rename(&[("a", "b"), ("b", "a")]) && *p == p.rename(&[("b", "c"), ("c", "b")])
}

/// Rewrites a symmetric polynomial in `a, b, c` in the elementary basis by
/// repeatedly cancelling the lexicographically leading term
/// `a^x b^y c^z` (where `x >= y >= z`) with `e1^(x-y) e2^(y-z) e3^z`.
pub fn to_elementary(p: &MultiPoly) -> Result<EPoly> {
    if let Some(v) = p.used_vars().into_iter().find(|v| !ABC.contains(&v.as_str())) {
        return Err(Error::OutOfRange(format!("expected a polynomial in a, b, c; found `{v}`")));
    }
    if !is_symmetric_abc(p) {
        return Err(Error::NotSymmetric);
    }
    let (pe1, pe2, pe3) = (e1(), e2(), e3());
    let mut rest = p.over_vars(&ABC).expect("used variables checked above");
    let mut out: Vec<(Vec<u32>, BigRational)> = Vec::new();
    while let Some((k, c)) = rest.leading_term() {
        let (x, y, z) = (k[0], k[1], k[2]);
        debug_assert!(x >= y && y >= z, "leading term of a symmetric polynomial");
        let c = c.clone();
        let basis = &(&pe1.pow(x - y) * &pe2.pow(y - z)) * &pe3.pow(z);
        rest = &rest - &basis.scale(&c);
        out.push((vec![x - y, y - z, z], c));
    }
    let result = MultiPoly::from_terms(&["e1", "e2", "e3"], out);
    debug_assert!(rest.is_zero());
    Ok(EPoly(result))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_decompositions() {
        assert_eq!(to_elementary(&parse_poly("a + b + c").unwrap()).unwrap(), EPoly::parse("e1").unwrap());
        assert_eq!(to_elementary(&parse_poly("a*b + a*c + b*c").unwrap()).unwrap(), EPoly::parse("e2").unwrap());
        let target = EPoly::parse("e2^2 - e1*e2 + e3").unwrap();
        assert_eq!(to_elementary(&target.expand()).unwrap(), target);
    }

    #[test]
    fn not_symmetric() {
        assert_eq!(to_elementary(&parse_poly("a^2 + b").unwrap()).unwrap_err(), Error::NotSymmetric);
        assert_eq!(to_elementary(&parse_poly("a*b").unwrap()).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(to_elementary(&MultiPoly::int(5)).unwrap(), EPoly::parse("5").unwrap());
        assert!(to_elementary(&MultiPoly::zero()).unwrap().as_poly().is_zero());
    }

    #[test]
    fn eval_matches_expansion() {
        let g = EPoly::parse("6*e3^2 - 8*e3*e2 + 3*e2^2 + e3 - e2*e1").unwrap();
        let expanded = g.expand();
        let mut pt = std::collections::BTreeMap::new();
        pt.insert("a".to_string(), 2);
        pt.insert("b".to_string(), 3);
        pt.insert("c".to_string(), 5);
        assert_eq!(g.eval_at_i64(2, 3, 5), expanded.eval_i64(&pt).unwrap());
        assert_eq!(g.weighted_degree(), Some(6));
    }

    #[test]
    fn display_orders_by_weight() {
        assert_eq!(EPoly::parse("e3 - e1*e2 + e2^2").unwrap().to_string(), "e2^2 + e3 - e1*e2");
    }
}
