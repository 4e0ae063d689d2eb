use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{conjecture_rhs, s_r, GForm};
use crate::arith::binom_q;
use crate::error::{Error, Result};
use crate::poly::{EPoly, MultiPoly};

const HELD_OUT: usize = 10;
const MAX_COORD: i64 = 60;

/// Points `(a,b,c)` with distinct, pairwise coprime, positive coordinates,
/// ordered by coordinate sum and then lexicographically.
pub fn sample_points() -> impl Iterator<Item = (i64, i64, i64)> {
    (3..=3 * MAX_COORD).flat_map(|total| {
        (1..total).flat_map(move |a| {
            (1..total - a).filter_map(move |b| {
                let c = total - a - b;
                let ok = a != b
                    && b != c
                    && a != c
                    && a.gcd(&b) == 1
                    && b.gcd(&c) == 1
                    && a.gcd(&c) == 1
                    && a.max(b).max(c) <= MAX_COORD;
                ok.then_some((a, b, c))
            })
        })
    })
}

/// Exponents `(i, j, k)` of `e1^i e2^j e3^k` with `i + 2j + 3k <= bound`.
fn basis(bound: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for k in 0..=bound / 3 {
        for j in 0..=(bound - 3 * k) / 2 {
            for i in 0..=bound - 3 * k - 2 * j {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn monomial_values(x: i64, y: i64, z: i64, basis: &[[u32; 3]]) -> Vec<BigRational> {
    let q = |v: i64| BigRational::from_integer(v.into());
    let (v1, v2, v3) = (q(x + y + z), q(x * y + y * z + z * x), q(x * y * z));
    basis
        .iter()
        .map(|[i, j, k]| v1.pow(*i as i32) * v2.pow(*j as i32) * v3.pow(*k as i32))
        .collect()
}

/// One linear equation in the unknown coefficients of `g`, or `None` when
/// `f` vanishes somewhere on the path `j = 0..=a`.
fn equation(r: usize, f: &EPoly, (a, b, c): (i64, i64, i64), basis: &[[u32; 3]]) -> Option<(Vec<BigRational>, BigRational)> {
    let fj: Vec<BigRational> = (0..=a).map(|j| f.eval_at_i64(j, b, c)).collect();
    if fj.iter().any(Zero::is_zero) {
        return None;
    }
    let mut row = vec![BigRational::zero(); basis.len()];
    for j in 0..a {
        let w = binom_q(b + j, b) * binom_q(c + j, c) / (&fj[j as usize] * &fj[j as usize + 1]);
        for (slot, m) in row.iter_mut().zip(monomial_values(j + 1, b, c, basis)) {
            *slot += &w * m;
        }
    }
    let front = BigRational::from_integer((b * b * c * c).into()) * &fj[a as usize] * binom_q(b + c, b)
        / BigRational::from_integer(2.into());
    for slot in row.iter_mut() {
        *slot *= &front;
    }
    Some((row, BigRational::from_integer(s_r(r as u32, a, b, c))))
}

enum Solution {
    Unique(Vec<BigRational>),
    Underdetermined,
    Inconsistent,
}

/// Gauss-Jordan elimination on the augmented system.
fn solve(mut rows: Vec<(Vec<BigRational>, BigRational)>, n: usize) -> Solution {
    let mut pivot_row = 0;
    for col in 0..n {
        let Some(p) = (pivot_row..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = BigRational::one() / &rows[pivot_row].0[col];
        let (pr, pb) = {
            let (r, b) = &rows[pivot_row];
            (r.iter().map(|x| x * &inv).collect::<Vec<_>>(), b * &inv)
        };
        for (i, (row, rhs)) in rows.iter_mut().enumerate() {
            if i == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                *x -= &factor * y;
            }
            *rhs -= &factor * &pb;
        }
        rows[pivot_row] = (pr, pb);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|(_, b)| !b.is_zero()) {
        return Solution::Inconsistent;
    }
    if pivot_row < n {
        return Solution::Underdetermined;
    }
    Solution::Unique(rows.into_iter().take(n).map(|(_, b)| b).collect())
}

/// Finds `g_r` of weighted degree at most `degree_bound` making the
/// conjectured closed form agree with `S_r`, solving exactly at sample
/// points and then checking on held-out points.
pub fn fit_g(r: usize, f: &EPoly, degree_bound: u32) -> Result<EPoly> {
    let basis = basis(degree_bound);
    let n = basis.len();
    let mut points = sample_points().filter_map(|p| equation(r, f, p, &basis).map(|eq| (p, eq)));
    let mut rows = Vec::new();
    let mut batch = n + 4;
    let coeffs = loop {
        rows.extend(points.by_ref().take(batch).map(|(_, eq)| eq));
        match solve(rows.clone(), n) {
            Solution::Unique(x) => break x,
            Solution::Inconsistent => {
                return Err(Error::NotFound(format!("g_{r} of weighted degree <= {degree_bound}")));
            }
            Solution::Underdetermined if rows.len() < 4 * n + 8 => batch = n,
            Solution::Underdetermined => {
                return Err(Error::NotFound(format!("g_{r}: sample system stays underdetermined")));
            }
        }
    };
    let terms = basis.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.to_vec(), c));
    let g = EPoly::new(MultiPoly::from_terms(&["e1", "e2", "e3"], terms))?;
    let gf = GForm::Poly(g.clone());
    for ((a, b, c), _) in points.take(HELD_OUT) {
        let lhs = BigRational::from_integer(s_r(r as u32, a, b, c));
        if conjecture_rhs(f, &gf, a, b, c)? != lhs {
            return Err(Error::NotFound(format!("g_{r}: fitted form fails at held-out point ({a},{b},{c})")));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::{iterate_l, table1_row, verify_conjecture};
    use crate::catalog::Grid;

    #[test]
    fn sample_points_are_coprime_and_distinct() {
        let pts: Vec<_> = sample_points().take(50).collect();
        assert_eq!(pts[0], (1, 2, 3));
        for &(a, b, c) in &pts {
            assert!(a != b && b != c && a != c);
            assert_eq!((a.gcd(&b), b.gcd(&c), a.gcd(&c)), (1, 1, 1));
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis(0).len(), 1);
        assert_eq!(basis(2).len(), 4);
        assert_eq!(basis(6).len(), 23);
    }

    #[test]
    fn recovers_table_g() {
        let its = iterate_l(3);
        for (r, it) in its.iter().enumerate().skip(1) {
            let f = it.f_in_e.as_ref().unwrap();
            let g = fit_g(r, f, 2 * r as u32).unwrap();
            assert_eq!(GForm::Poly(g.clone()), table1_row(r).unwrap().1, "r={r}");
            let disjoint = Grid::uniform(&["a", "b", "c"], 5, 7);
            assert!(verify_conjecture(r, Some(&GForm::Poly(g)), &disjoint).unwrap().passed());
        }
    }

    #[test]
    fn too_small_degree_is_not_found() {
        let its = iterate_l(3);
        let f = its[3].f_in_e.as_ref().unwrap();
        assert!(matches!(fit_g(3, f, 2), Err(Error::NotFound(_))));
    }
}
