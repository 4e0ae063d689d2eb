//! Up/down lattice paths, the sets `X_n` and `Y_n`, the bijection `phi`
//! between them, and NE-lattice-path counts below the diagonal.
//!
//! `X_n` consists of paths with `2n+1` up-steps and `2n` down-steps whose
//! height is nonzero at every even position `i` with `2n < i <= 4n`. `Y_n`
//! consists of ordered pairs of nonnegative paths of length `2n`.

mod bijection;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

pub use bijection::{beta, beta_inverse, decompose, phi, phi_inverse, Color, Decomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
        }
    }

    pub fn flipped(self) -> Step {
        match self {
            Step::U => Step::D,
            Step::D => Step::U,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `h(0) = 0, ..., h(len)`.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.len() + 1);
        h.push(0);
        let mut cur = 0;
        for s in &self.steps {
            cur += s.delta();
            h.push(cur);
        }
        h
    }

    pub fn end_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.end_height() == 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.heights().iter().all(|&h| h >= 0)
    }

    /// Strictly above the axis after the start.
    pub fn is_positive(&self) -> bool {
        self.heights()[1..].iter().all(|&h| h > 0)
    }

    pub fn is_dyck(&self) -> bool {
        self.is_nonnegative() && self.is_balanced()
    }

    pub fn slice(&self, from: usize, to: usize) -> LatticePath {
        LatticePath::new(self.steps[from..to].to_vec())
    }

    pub fn concat(&self, other: &LatticePath) -> LatticePath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        LatticePath::new(steps)
    }

    /// Steps read right to left, each negated.
    pub fn reversed(&self) -> LatticePath {
        LatticePath::new(self.steps.iter().rev().map(|s| s.flipped()).collect())
    }

    /// Every step negated.
    pub fn negated(&self) -> LatticePath {
        LatticePath::new(self.steps.iter().map(|s| s.flipped()).collect())
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::U => "U",
                Step::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                _ => Err(Error::Parse { pos, msg: format!("expected U or D, found `{ch}`") }),
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePath::new)
    }
}

impl Serialize for LatticePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PathPair {
    pub first: LatticePath,
    pub second: LatticePath,
}

impl fmt::Display for PathPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

pub fn is_x_path(p: &LatticePath, n: usize) -> bool {
    let ups = p.steps.iter().filter(|&&s| s == Step::U).count();
    if p.len() != 4 * n + 1 || ups != 2 * n + 1 {
        return false;
    }
    let h = p.heights();
    (2 * n + 1..=4 * n).filter(|i| i % 2 == 0).all(|i| h[i] != 0)
}

pub fn is_y_pair(pair: &PathPair, n: usize) -> bool {
    [&pair.first, &pair.second].iter().all(|p| p.len() == 2 * n && p.is_nonnegative())
}

/// Depth-first generation in lexicographic order (`U < D`). `keep(i, h)` is
/// asked after each step whether height `h` at position `i` is allowed.
fn generate<F>(len: usize, ups: Option<usize>, keep: F) -> Vec<LatticePath>
where
    F: Fn(usize, i64) -> bool,
{
    fn go<F: Fn(usize, i64) -> bool>(
        len: usize,
        ups: Option<usize>,
        keep: &F,
        cur: &mut Vec<Step>,
        h: i64,
        used_up: usize,
        out: &mut Vec<LatticePath>,
    ) {
        if cur.len() == len {
            out.push(LatticePath::new(cur.clone()));
            return;
        }
        for step in [Step::U, Step::D] {
            let next_up = used_up + usize::from(step == Step::U);
            if let Some(total) = ups {
                let downs_used = cur.len() + 1 - next_up;
                if next_up > total || downs_used > len - total {
                    continue;
                }
            }
            let nh = h + step.delta();
            if !keep(cur.len() + 1, nh) {
                continue;
            }
            cur.push(step);
            go(len, ups, keep, cur, nh, next_up, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, ups, &keep, &mut Vec::with_capacity(len), 0, 0, &mut out);
    out
}

pub fn enumerate_x(n: usize) -> Vec<LatticePath> {
    generate(4 * n + 1, Some(2 * n + 1), |i, h| !(i > 2 * n && i % 2 == 0 && h == 0))
}

/// Nonnegative paths of length `len`, any end height.
pub fn enumerate_nonnegative(len: usize) -> Vec<LatticePath> {
    generate(len, None, |_, h| h >= 0)
}

/// Balanced paths of length `len`.
pub fn enumerate_balanced(len: usize) -> Vec<LatticePath> {
    if len % 2 == 1 {
        return Vec::new();
    }
    generate(len, Some(len / 2), |_, _| true)
}

/// Positive paths of length `len`, any end height.
pub fn enumerate_positive(len: usize) -> Vec<LatticePath> {
    generate(len, None, |_, h| h > 0)
}

pub fn enumerate_y(n: usize) -> Vec<PathPair> {
    let half = enumerate_nonnegative(2 * n);
    let mut out = Vec::with_capacity(half.len() * half.len());
    for first in &half {
        for second in &half {
            out.push(PathPair { first: first.clone(), second: second.clone() });
        }
    }
    out
}

/// Counts N/E lattice paths from `(0,0)` to `(2n-k, k)` with `y <= x`
/// throughout, by walking every such path.
pub fn count_ne_below_diagonal(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::OutOfRange(format!("need 0 <= k <= n, got n={n}, k={k}")));
    }
    fn walk(x: i64, y: i64, tx: i64, ty: i64) -> u64 {
        if (x, y) == (tx, ty) {
            return 1;
        }
        let mut total = 0;
        if x < tx {
            total += walk(x + 1, y, tx, ty);
        }
        if y < ty && y < x {
            total += walk(x, y + 1, tx, ty);
        }
        total
    }
    Ok(BigInt::from(walk(0, 0, 2 * n - k, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binom;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("UUDUD").to_string(), "UUDUD");
        assert_eq!(p("").len(), 0);
        assert!(matches!("UXD".parse::<LatticePath>(), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn predicates() {
        let path = p("UUDUD");
        assert_eq!(path.heights(), vec![0, 1, 2, 1, 2, 1]);
        assert!(path.is_nonnegative() && path.is_positive() && !path.is_balanced());
        assert!(p("UD").is_dyck());
        assert!(!p("DU").is_nonnegative());
        assert_eq!(p("UUD").reversed(), p("UDD"));
    }

    #[test]
    fn x_counts() {
        assert_eq!(enumerate_x(0), vec![p("U")]);
        let x1 = enumerate_x(1);
        assert_eq!(x1.len(), 4);
        assert!(x1.windows(2).all(|w| w[0] < w[1]));
        for n in 0..=4 {
            let c = binom(2 * n as i64, n as i64);
            assert_eq!(BigInt::from(enumerate_x(n).len()), &c * &c);
            assert_eq!(BigInt::from(enumerate_y(n).len()), &c * &c);
            assert!(enumerate_x(n).iter().all(|x| is_x_path(x, n)));
        }
    }

    #[test]
    fn x_matches_brute_filter() {
        let n = 2;
        let all = generate(4 * n + 1, Some(2 * n + 1), |_, _| true);
        let filtered: Vec<_> = all.into_iter().filter(|x| is_x_path(x, n)).collect();
        assert_eq!(filtered, enumerate_x(n));
    }

    #[test]
    fn y_small() {
        assert_eq!(enumerate_y(0).len(), 1);
        let y1: Vec<String> = enumerate_y(1).iter().map(ToString::to_string).collect();
        assert_eq!(y1, ["(UU, UU)", "(UU, UD)", "(UD, UU)", "(UD, UD)"]);
    }

    #[test]
    fn ne_counts() {
        assert_eq!(count_ne_below_diagonal(1, 1).unwrap(), BigInt::from(1));
        assert_eq!(count_ne_below_diagonal(2, 2).unwrap(), BigInt::from(2));
        for n in 0..=6i64 {
            assert_eq!(count_ne_below_diagonal(n, 0).unwrap(), BigInt::from(1));
            for k in 0..=n {
                assert_eq!(count_ne_below_diagonal(n, k).unwrap(), binom(2 * n, k) - binom(2 * n, k - 1));
            }
        }
        assert!(count_ne_below_diagonal(2, 3).is_err());
    }
}
