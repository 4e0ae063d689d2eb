//! Per-n q-telescoping for
//! `sum_k [2n+1, n-k]_q ([2n, n-k]_q - [2n, n-k-1]_q) q^(k(k+1)) = q^n [2n, n]_q^2`
//! via `G(n,k) = [2n, n+k]_q^2 q^(n+k^2)`.

use serde::Serialize;

use crate::arith::{q_binom, QPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QTelescopeReport {
    pub n: i64,
    /// `k` values where the summand differs from `G(n,k) - G(n,k+1)`.
    pub term_mismatches: Vec<i64>,
    /// `k` values where `summand * (1 - q^(2n+1))` differs from
    /// `[2n+1, n-k]_q^2 (1 - q^(2k+1)) q^(n+k^2)`.
    pub rewrite_mismatches: Vec<i64>,
    pub sum_matches: bool,
}

impl QTelescopeReport {
    pub fn passed(&self) -> bool {
        self.term_mismatches.is_empty() && self.rewrite_mismatches.is_empty() && self.sum_matches
    }
}

pub fn q_summand(n: i64, k: i64) -> QPoly {
    let bracket = &q_binom(2 * n, n - k) - &q_binom(2 * n, n - k - 1);
    (&q_binom(2 * n + 1, n - k) * &bracket).shift_up((k * (k + 1)) as usize)
}

fn g(n: i64, k: i64) -> QPoly {
    let b = q_binom(2 * n, n + k);
    (&b * &b).shift_up((n + k * k) as usize)
}

fn one_minus_q_pow(e: usize) -> QPoly {
    &QPoly::one() - &QPoly::q_pow(e)
}

pub fn q_telescope_check(n: i64) -> QTelescopeReport {
    let mut term_mismatches = Vec::new();
    let mut rewrite_mismatches = Vec::new();
    let mut sum = QPoly::zero();
    for k in 0..=n {
        let s = q_summand(n, k);
        if s != &g(n, k) - &g(n, k + 1) {
            term_mismatches.push(k);
        }
        let b = q_binom(2 * n + 1, n - k);
        let rewritten = (&(&b * &b) * &one_minus_q_pow((2 * k + 1) as usize)).shift_up((n + k * k) as usize);
        if &s * &one_minus_q_pow((2 * n + 1) as usize) != rewritten {
            rewrite_mismatches.push(k);
        }
        sum = &sum + &s;
    }
    let closed = {
        let b = q_binom(2 * n, n);
        (&b * &b).shift_up(n as usize)
    };
    QTelescopeReport { n, term_mismatches, rewrite_mismatches, sum_matches: sum == closed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_n() {
        for n in 0..=8 {
            let rep = q_telescope_check(n);
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn n1_summand_total() {
        let total = &q_summand(1, 0) + &q_summand(1, 1);
        assert_eq!(total, QPoly::from_i64s(&[0, 1, 2, 1]));
    }
}
