//! Exact integer primitives: factorials, binomials, multinomials and Gaussian
//! (q-) binomials as dense integer polynomials in `q`.
//!
//! Binomials follow the zero-outside-range convention: `binom(n, k) = 0`
//! whenever `k < 0` or `k > n`. This makes the function total on all integer
//! pairs (a negative top always yields zero).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const DEFAULT_FACTORIAL_CAP: usize = 256;

/// Memoized factorials `0!..=cap!`; larger arguments are computed on demand
/// starting from `cap!`.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    table: Vec<BigInt>,
}

impl FactorialTable {
    pub fn new(cap: usize) -> Self {
        let mut table = Vec::with_capacity(cap + 1);
        table.push(BigInt::one());
        for i in 1..=cap {
            let next = &table[i - 1] * BigInt::from(i);
            table.push(next);
        }
        FactorialTable { table }
    }

    pub fn cap(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, n: usize) -> BigInt {
        if n <= self.cap() {
            return self.table[n].clone();
        }
        let mut acc = self.table[self.cap()].clone();
        for i in self.cap() + 1..=n {
            acc *= BigInt::from(i);
        }
        acc
    }
}

fn factorials() -> &'static FactorialTable {
    static TABLE: OnceLock<FactorialTable> = OnceLock::new();
    TABLE.get_or_init(|| FactorialTable::new(DEFAULT_FACTORIAL_CAP))
}

pub fn factorial(n: u64) -> BigInt {
    factorials().get(n as usize)
}

pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    if (n as usize) <= factorials().cap() {
        let t = factorials();
        return t.get(n as usize) / (t.get(k as usize) * t.get((n - k) as usize));
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `binom` lifted into the rationals.
pub fn binom_q(n: i64, k: i64) -> BigRational {
    BigRational::from_integer(binom(n, k))
}

/// `(m+r+s)! / (m! r! s!)`. Any negative part yields zero.
pub fn multinom(parts: &[i64]) -> BigInt {
    if parts.iter().any(|&p| p < 0) {
        return BigInt::zero();
    }
    let total: i64 = parts.iter().sum();
    let mut acc = factorial(total as u64);
    for &p in parts {
        acc /= factorial(p as u64);
    }
    acc
}

pub fn multinom3(m: i64, r: i64, s: i64) -> BigInt {
    multinom(&[m, r, s])
}

/// Dense polynomial in `q` with integer coefficients; `coeffs[i]` multiplies
/// `q^i`. The highest stored coefficient is always nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::monomial(BigInt::one(), 0)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monomial(c: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        QPoly::from_coeffs(coeffs)
    }

    /// `q^exp`
    pub fn q_pow(exp: usize) -> Self {
        QPoly::monomial(BigInt::one(), exp)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    pub fn shift_up(&self, exp: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * q + BigRational::from_integer(c.clone())
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Exact long division; `None` if `divisor` is zero or does not divide.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(QPoly::zero()) } else { None };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPoly::from_coeffs(quot))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; zero for `n <= 0`.
pub fn q_int(n: i64) -> QPoly {
    if n <= 0 {
        return QPoly::zero();
    }
    QPoly::from_coeffs(vec![BigInt::one(); n as usize])
}

pub fn q_factorial(n: u64) -> QPoly {
    (1..=n as i64).fold(QPoly::one(), |acc, i| &acc * &q_int(i))
}

fn q_pascal_rows() -> &'static RwLock<Vec<Vec<QPoly>>> {
    static ROWS: OnceLock<RwLock<Vec<Vec<QPoly>>>> = OnceLock::new();
    ROWS.get_or_init(|| RwLock::new(vec![vec![QPoly::one()]]))
}

/// Gaussian binomial; the zero polynomial when `k < 0` or `k > n`.
pub fn q_binom(n: i64, k: i64) -> QPoly {
    if k < 0 || k > n {
        return QPoly::zero();
    }
    let (n, k) = (n as usize, k as usize);
    {
        let rows = q_pascal_rows().read().expect("q-binomial cache poisoned");
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = q_pascal_rows().write().expect("q-binomial cache poisoned");
    while rows.len() <= n {
        let prev = rows.last().expect("row 0 always present");
        let m = prev.len();
        // [m,j] = [m-1,j-1] + q^j [m-1,j]
        let row: Vec<QPoly> = (0..=m)
            .map(|j| {
                let left = if j == 0 { QPoly::zero() } else { prev[j - 1].clone() };
                let right = if j < m { prev[j].shift_up(j) } else { QPoly::zero() };
                &left + &right
            })
            .collect();
        rows.push(row);
    }
    rows[n][k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(5, 7), BigInt::zero());
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(-3, 1), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn binom_beyond_factorial_cap() {
        let via_product = binom(300, 3);
        assert_eq!(via_product, BigInt::from(300 * 299 * 298 / 6));
        let small = FactorialTable::new(4);
        assert_eq!(small.get(6), BigInt::from(720));
    }

    #[test]
    fn multinom_examples() {
        assert_eq!(multinom3(2, 1, 0), BigInt::from(3));
        assert_eq!(multinom3(0, 0, 0), BigInt::one());
        assert_eq!(multinom3(1, 1, 1), BigInt::from(6));
        assert_eq!(multinom3(1, -1, 1), BigInt::zero());
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=30 {
            for k in 0..=n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
    }

    #[test]
    fn q_binom_examples() {
        assert_eq!(q_binom(2, 1), QPoly::from_i64s(&[1, 1]));
        assert_eq!(q_binom(4, 2), QPoly::from_i64s(&[1, 1, 2, 1, 1]));
        assert!(q_binom(2, -1).is_zero());
        assert!(q_binom(2, 3).is_zero());
    }

    #[test]
    fn q_binom_properties() {
        for n in 0..=20 {
            for k in 0..=n {
                let p = q_binom(n, k);
                assert_eq!(p.eval(&BigInt::one()), binom(n, k), "({n},{k}) at q=1");
                assert_eq!(p, q_binom(n, n - k));
                assert!(p.is_nonnegative());
            }
        }
    }

    #[test]
    fn q_binom_matches_factorial_quotient() {
        for n in 0..=12u64 {
            for k in 0..=n {
                let den = &q_factorial(k) * &q_factorial(n - k);
                let quot = q_factorial(n).div_exact(&den).expect("exact division");
                assert_eq!(quot, q_binom(n as i64, k as i64));
            }
        }
    }

    #[test]
    fn ballot_numbers_nonnegative() {
        for n in 0..=20 {
            for k in 0..=n {
                assert!(binom(2 * n, n - k) >= binom(2 * n, n - k - 1));
            }
        }
    }

    #[test]
    fn qpoly_display() {
        assert_eq!(QPoly::from_i64s(&[0, 1, 2, 1]).to_string(), "q + 2*q^2 + q^3");
        assert_eq!(QPoly::from_i64s(&[1, -1]).to_string(), "1 - q");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn div_exact_rejects_remainder() {
        let p = QPoly::from_i64s(&[1, 0, 1]);
        assert!(p.div_exact(&QPoly::from_i64s(&[1, 1])).is_none());
        let d = QPoly::from_i64s(&[1, 1]);
        assert_eq!((&d * &d).div_exact(&d), Some(d));
    }
}
