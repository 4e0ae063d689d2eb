use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Grid, IdentityRecord, Value};
use crate::arith::{binom_q, multinom3, q_binom, q_int, QPoly};
use crate::conjecture::s_r;
use crate::error::{Error, Result};
use crate::{fmt_point, Point};

/// The six orderings of a triple, identity first.
fn permutations3(x: (i64, i64, i64)) -> [(i64, i64, i64); 6] {
    let (a, b, c) = x;
    [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn c(n: i64, k: i64) -> BigRational {
    binom_q(n, k)
}

/// `Q_{a,b} = C(a+b, a)`.
pub fn q_ab(a: i64, b: i64) -> BigRational {
    c(a + b, a)
}

/// `B_{n,k} = (k/n) C(2n, n-k)` for `1 <= k <= n`.
pub fn catalan_triangle_b(n: i64, k: i64) -> Result<BigRational> {
    if n < 1 || k < 1 || k > n {
        return Err(Error::OutOfRange(format!("B_{{{n},{k}}} needs 1 <= k <= n")));
    }
    Ok(rat(k) / rat(n) * c(2 * n, n - k))
}

/// `C_n = C(2n, n)/(n+1)`.
pub fn catalan(n: i64) -> BigRational {
    c(2 * n, n) / rat(n + 1)
}

/// `t_{2n-k,k} = C(2n, k) - C(2n, k-1)`.
pub fn catalan_triangle_t(n: i64, k: i64) -> BigRational {
    c(2 * n, k) - c(2 * n, k - 1)
}

fn sum(lo: i64, hi: i64, f: impl Fn(i64) -> BigRational) -> BigRational {
    (lo..=hi).map(f).fold(BigRational::zero(), |acc, x| acc + x)
}

fn try_sum(lo: i64, hi: i64, f: impl Fn(i64) -> Result<BigRational>) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for k in lo..=hi {
        acc += f(k)?;
    }
    Ok(acc)
}

fn qsum(lo: i64, hi: i64, f: impl Fn(i64) -> QPoly) -> QPoly {
    (lo..=hi).map(f).fold(QPoly::zero(), |acc, x| &acc + &x)
}

fn div(num: BigRational, den: BigRational, p: &Point) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::PoleEncountered { at: fmt_point(p) });
    }
    Ok(num / den)
}

fn qpow(e: i64) -> QPoly {
    QPoly::q_pow(e as usize)
}

fn one_minus_q(e: i64) -> QPoly {
    &QPoly::one() - &qpow(e)
}

fn get(p: &Point, name: &str) -> Result<i64> {
    p.get(name).copied().ok_or_else(|| Error::MissingVariable(name.to_string()))
}

fn vals<const N: usize>(p: &Point, names: [&str; N]) -> Result<[i64; N]> {
    let mut out = [0; N];
    for (slot, name) in out.iter_mut().zip(names) {
        *slot = get(p, name)?;
    }
    Ok(out)
}

fn e2(x: i64, y: i64, z: i64) -> BigRational {
    rat(x * y + y * z + z * x)
}

/// `U(a,b,c) = a C(a+b,a) sum_{j<c} C(a+j,a) C(b+j,b-1)`.
fn u(a: i64, b: i64, c_: i64) -> BigRational {
    rat(a) * q_ab(a, b) * sum(0, c_ - 1, |j| c(a + j, a) * c(b + j, b - 1))
}

/// `U_q` with the weight `q^j` inside the sum, the form that follows from the
/// q-analogue of the one-parameter sum and is symmetric.
fn u_q(a: i64, b: i64, c_: i64) -> QPoly {
    let inner = qsum(0, c_ - 1, |j| &(&q_binom(a + j, a) * &q_binom(b + j, b - 1)) * &qpow(j));
    &(&q_int(a) * &q_binom(a + b, a)) * &inner
}

/// `U_q` exactly as displayed, without the `q^j` weight. Not symmetric.
pub fn u_q_printed(a: i64, b: i64, c_: i64) -> QPoly {
    let inner = qsum(0, c_ - 1, |j| &q_binom(a + j, a) * &q_binom(b + j, b - 1));
    &(&q_int(a) * &q_binom(a + b, a)) * &inner
}

fn triple(a: i64, b: i64, c_: i64, k: i64) -> BigRational {
    c(a + b, a + k) * c(b + c_, b + k) * c(c_ + a, c_ + k)
}

fn central_triple(a: i64, b: i64, c_: i64, k: i64) -> BigRational {
    c(2 * a, a + k) * c(2 * b, b + k) * c(2 * c_, c_ + k)
}

fn q_quotient(a: i64, b: i64, c_: i64) -> BigRational {
    q_ab(a, b) * q_ab(b, c_) * q_ab(c_, a) / (q_ab(a, a) * q_ab(b, b) * q_ab(c_, c_))
}

type Side = fn(&Point) -> Result<Value>;

struct Spec {
    id: &'static str,
    params: &'static [&'static str],
    constraint_text: &'static str,
    constraint: fn(&Point) -> bool,
    lhs: Side,
    rhs: Side,
    is_q: bool,
    notes: &'static str,
    grid: &'static [(&'static str, i64, i64)],
}

fn nonneg(p: &Point) -> bool {
    p.values().all(|&v| v >= 0)
}

fn build(s: Spec) -> IdentityRecord {
    IdentityRecord {
        id: s.id.to_string(),
        params: s.params.iter().map(|p| p.to_string()).collect(),
        constraint_text: s.constraint_text.to_string(),
        constraint: Arc::new(s.constraint),
        lhs: Arc::new(s.lhs),
        rhs: Arc::new(s.rhs),
        is_q: s.is_q,
        notes: s.notes.to_string(),
        default_grid: Grid::new(s.grid),
    }
}

pub(super) fn all() -> Vec<IdentityRecord> {
    specs().into_iter().map(build).collect()
}

fn specs() -> Vec<Spec> {
    vec![
        Spec {
            id: "GE-1",
            params: &["a", "b", "c", "k"],
            constraint_text: "1 <= k <= min(a,b,c)",
            constraint: |p| nonneg(p) && p["k"] >= 1 && p["k"] <= p["a"].min(p["b"]).min(p["c"]),
            lhs: |p| {
                let [a, b, c_, k] = vals(p, ["a", "b", "c", "k"])?;
                let front = rat(a * b * c_) * q_quotient(a, b, c_);
                Ok(Value::Rational(
                    front * catalan_triangle_b(a, k)? * catalan_triangle_b(b, k)? * catalan_triangle_b(c_, k)?,
                ))
            },
            rhs: |p| {
                let [a, b, c_, k] = vals(p, ["a", "b", "c", "k"])?;
                Ok(Value::Rational(rat(k * k * k) * triple(a, b, c_, k)))
            },
            is_q: false,
            notes: "abc Q_ab Q_bc Q_ca/(Q_aa Q_bb Q_cc) B_ak B_bk B_ck = k^3 C(a+b,a+k) C(b+c,b+k) C(c+a,c+k)",
            grid: &[("a", 0, 5), ("b", 0, 5), ("c", 0, 5), ("k", 0, 5)],
        },
        Spec {
            id: "AMM1",
            params: &["n", "m"],
            constraint_text: "0 <= n <= m",
            constraint: |p| nonneg(p) && p["n"] <= p["m"],
            lhs: |p| {
                let [n, m] = vals(p, ["n", "m"])?;
                let s = sum(0, n, |k| rat(k) * c(2 * n, n + k).pow(2) * c(2 * m, m + k));
                Ok(Value::Rational(c(n + m, 2 * n) * s))
            },
            rhs: |p| {
                let [n, m] = vals(p, ["n", "m"])?;
                let s = sum(0, m - 1, |j| c(n + j, n) * c(n + j, n - 1));
                Ok(Value::Rational(rat(n) / rat(2) * c(2 * m, m + n) * c(2 * n, n) * s))
            },
            is_q: false,
            notes: "C(n+m,2n) sum_k k C(2n,n+k)^2 C(2m,m+k) = (n/2) C(2m,m+n) C(2n,n) sum_{j<m} C(n+j,n) C(n+j,n-1)",
            grid: &[("n", 0, 6), ("m", 0, 6)],
        },
        Spec {
            id: "AMM2",
            params: &["n", "m"],
            constraint_text: "0 <= n <= m",
            constraint: |p| nonneg(p) && p["n"] <= p["m"],
            lhs: |p| {
                let [n, m] = vals(p, ["n", "m"])?;
                let s = sum(0, n, |k| rat(k) * c(2 * n, n + k) * c(2 * m, m + k).pow(2));
                Ok(Value::Rational(c(n + m, m) * s))
            },
            rhs: |p| {
                let [n, m] = vals(p, ["n", "m"])?;
                let s = sum(0, m - 1, |j| c(n + j, n) * c(m + j, m - 1));
                Ok(Value::Rational(rat(n) / rat(2) * c(2 * n, n) * c(2 * m, m) * s))
            },
            is_q: false,
            notes: "C(n+m,m) sum_k k C(2n,n+k) C(2m,m+k)^2 = (n/2) C(2n,n) C(2m,m) sum_{j<m} C(n+j,n) C(m+j,m-1)",
            grid: &[("n", 0, 6), ("m", 0, 6)],
        },
        Spec {
            id: "GE3",
            params: &["m", "n"],
            constraint_text: "m >= n >= 0",
            constraint: |p| nonneg(p) && p["m"] >= p["n"],
            lhs: |p| {
                let [m, n] = vals(p, ["m", "n"])?;
                Ok(Value::Rational(sum(0, n, |k| rat(m - 2 * k) * c(m, k).pow(3))))
            },
            rhs: |p| {
                let [m, n] = vals(p, ["m", "n"])?;
                let s = sum(0, m - n - 1, |j| c(n + j, n) * c(n + j, m - n - 1));
                Ok(Value::Rational(rat(m - n) * c(m, n) * s))
            },
            is_q: false,
            notes: "sum_{k<=n} (m-2k) C(m,k)^3 = (m-n) C(m,n) sum_{j<m-n} C(n+j,n) C(n+j,m-n-1)",
            grid: &[("m", 0, 8), ("n", 0, 8)],
        },
        Spec {
            id: "GE4",
            params: &["m", "n", "r", "s"],
            constraint_text: "m >= n >= 0, r >= 0, s >= 0",
            constraint: |p| nonneg(p) && p["m"] >= p["n"],
            lhs: |p| {
                let [m, n, r, s] = vals(p, ["m", "n", "r", "s"])?;
                let multi = BigRational::from_integer(multinom3(m, r, s));
                let den = c(m + 2 * r, m + r) * c(m + 2 * s, m + s) * c(m + s, n + s);
                let total = sum(0, n, |k| rat(m - 2 * k) * c(m, k) * c(m + 2 * r, k + r) * c(m + 2 * s, k + s));
                Ok(Value::Rational(div(multi * total, den, p)?))
            },
            rhs: |p| {
                let [m, n, r, s] = vals(p, ["m", "n", "r", "s"])?;
                let total = sum(0, m - n + r - 1, |j| c(n + j, n) * c(n + j + s, m - n + s - 1));
                Ok(Value::Rational(rat(m - n) * total))
            },
            is_q: false,
            notes: "sum_{k<=n} (m-2k) M(m,r,s) C(m,k) C(m+2r,k+r) C(m+2s,k+s) / (C(m+2r,m+r) C(m+2s,m+s) C(m+s,n+s)) \
                    = (m-n) sum_{j<m-n+r} C(n+j,n) C(n+j+s,m-n+s-1), M the multinomial (m+r+s)!/(m! r! s!)",
            grid: &[("m", 0, 5), ("n", 0, 5), ("r", 0, 3), ("s", 0, 3)],
        },
        Spec {
            id: "GE5",
            params: &["m", "n", "s"],
            constraint_text: "m >= n >= 0, s >= 0",
            constraint: |p| nonneg(p) && p["m"] >= p["n"],
            lhs: |p| {
                let [m, n, s] = vals(p, ["m", "n", "s"])?;
                let total = sum(0, n, |k| rat(m - 2 * k) * c(m, k).pow(2) * c(m + 2 * s, k + s));
                Ok(Value::Rational(div(c(m + s, m) * total, c(m + 2 * s, m + s), p)?))
            },
            rhs: |p| {
                let [m, n, s] = vals(p, ["m", "n", "s"])?;
                let total = sum(0, m - n - 1, |j| c(n + j, n) * c(n + j + s, m - n + s - 1));
                Ok(Value::Rational(rat(m - n) * c(m + s, n + s) * total))
            },
            is_q: false,
            notes: "sum_{k<=n} (m-2k) C(m+s,m) C(m,k)^2 C(m+2s,k+s) / C(m+2s,m+s) \
                    = (m-n) C(m+s,n+s) sum_{j<m-n} C(n+j,n) C(n+j+s,m-n+s-1)",
            grid: &[("m", 0, 6), ("n", 0, 6), ("s", 0, 3)],
        },
        Spec {
            id: "GE0",
            params: &["a", "b", "c"],
            constraint_text: "a, b, c >= 0",
            constraint: nonneg,
            lhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let s = sum(0, a, |k| rat(k) * central_triple(a, b, c_, k));
                Ok(Value::Rational(q_quotient(a, b, c_) * s))
            },
            rhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let s = sum(0, b - 1, |j| c(a + j, a) * c(c_ + j, c_ - 1));
                Ok(Value::Rational(rat(a) * q_ab(c_, a) / rat(2) * s))
            },
            is_q: false,
            notes: "Q_ab Q_bc Q_ca/(Q_aa Q_bb Q_cc) sum_{k<=a} k C(2a,a+k) C(2b,b+k) C(2c,c+k) \
                    = (a Q_ca/2) sum_{j<b} C(a+j,a) C(c+j,c-1)",
            grid: &[("a", 0, 6), ("b", 0, 6), ("c", 0, 6)],
        },
        Spec {
            id: "SYM-U",
            params: &["a", "b", "c"],
            constraint_text: "a, b, c >= 0",
            constraint: nonneg,
            lhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let v = Value::Rational(u(a, b, c_));
                Ok(Value::Tuple(vec![v; 5]))
            },
            rhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let perms = permutations3((a, b, c_));
                Ok(Value::Tuple(perms[1..].iter().map(|&(x, y, z)| Value::Rational(u(x, y, z))).collect()))
            },
            is_q: false,
            notes: "U(a,b,c) = a C(a+b,a) sum_{j<c} C(a+j,a) C(b+j,b-1) equals U at each of the five \
                    nontrivial permutations of (a,b,c)",
            grid: &[("a", 0, 6), ("b", 0, 6), ("c", 0, 6)],
        },
        Spec {
            id: "GE1",
            params: &["a", "b", "c"],
            constraint_text: "a, b, c >= 0",
            constraint: nonneg,
            lhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let v = Value::Rational(sum(0, a, |k| rat(k) * triple(a, b, c_, k)));
                Ok(Value::Tuple(vec![v; 6]))
            },
            rhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let side = |(x, y, z): (i64, i64, i64)| {
                    let s = sum(0, z - 1, |j| c(x + j, x) * c(y + j, y - 1));
                    Value::Rational(rat(x) * q_ab(x, y) / rat(2) * s)
                };
                Ok(Value::Tuple(permutations3((a, b, c_)).into_iter().map(side).collect()))
            },
            is_q: false,
            notes: "sum_{k<=a} k C(a+b,a+k) C(b+c,b+k) C(c+a,c+k) = (x Q_xy/2) sum_{j<z} C(x+j,x) C(y+j,y-1) \
                    for every ordering (x,y,z) of (a,b,c)",
            grid: &[("a", 0, 6), ("b", 0, 6), ("c", 0, 6)],
        },
        Spec {
            id: "GE2",
            params: &["a", "b", "c"],
            constraint_text: "a = 0, or b >= 1 and c >= 1",
            constraint: |p| nonneg(p) && (p["a"] == 0 || (p["b"] >= 1 && p["c"] >= 1)),
            lhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                Ok(Value::Rational(sum(0, a, |k| rat(k * k * k) * triple(a, b, c_, k))))
            },
            rhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let s = try_sum(0, a - 1, |j| {
                    div(e2(a, b, c_) * c(b + j, b) * c(c_ + j, c_), e2(j, b, c_) * e2(j + 1, b, c_), p)
                })?;
                Ok(Value::Rational(rat(b * b * c_ * c_) * q_ab(b, c_) / rat(2) * s))
            },
            is_q: false,
            notes: "sum_{k<=a} k^3 C(a+b,a+k) C(b+c,b+k) C(c+a,c+k) \
                    = (b^2 c^2 Q_bc/2) sum_{j<a} e2(a,b,c) C(b+j,b) C(c+j,c) / (e2(j,b,c) e2(j+1,b,c))",
            grid: &[("a", 1, 5), ("b", 1, 5), ("c", 1, 5)],
        },
        Spec {
            id: "T2.9",
            params: &["a", "b", "c", "d"],
            constraint_text: "a, b, c, d >= 0",
            constraint: nonneg,
            lhs: |p| {
                let [a, b, c_, d] = vals(p, ["a", "b", "c", "d"])?;
                Ok(Value::Rational(sum(0, a, |k| {
                    rat(k) * c(a + b, a + k) * c(b + c_, b + k) * c(c_ + d, c_ + k) * c(d + a, d + k)
                })))
            },
            rhs: |p| {
                let [a, b, c_, d] = vals(p, ["a", "b", "c", "d"])?;
                let t = b + c_ + d;
                let front = rat(b) * q_ab(b, c_) * q_ab(c_, d) * q_ab(t, a) / (rat(2) * q_ab(a, c_));
                let s = sum(0, a - 1, |j| q_ab(b, j) * q_ab(c_ - 1, j + 1) * q_ab(d - 1, j + 1) / q_ab(t, j + 1));
                Ok(Value::Rational(front * s))
            },
            is_q: false,
            notes: "sum_{k<=a} k C(a+b,a+k) C(b+c,b+k) C(c+d,c+k) C(d+a,d+k) \
                    = (b Q_bc Q_cd Q_{b+c+d,a} / (2 Q_ac)) sum_{j<a} Q_bj Q_{c-1,j+1} Q_{d-1,j+1} / Q_{b+c+d,j+1}",
            grid: &[("a", 0, 4), ("b", 0, 4), ("c", 0, 4), ("d", 0, 4)],
        },
        Spec {
            id: "EX2.10",
            params: &["n"],
            constraint_text: "n >= 0",
            constraint: nonneg,
            lhs: |p| {
                let n = get(p, "n")?;
                Ok(Value::Rational(sum(0, n, |k| rat(k) * c(2 * n, n + k).pow(3))))
            },
            rhs: |p| {
                let n = get(p, "n")?;
                let s = sum(0, n, |j| rat(j) * c(n + j - 1, n - 1).pow(2));
                Ok(Value::Rational(c(2 * n, n) / rat(2) * s))
            },
            is_q: false,
            notes: "sum_k k C(2n,n+k)^3 = (1/2) C(2n,n) sum_{j<=n} j C(n+j-1,n-1)^2",
            grid: &[("n", 0, 8)],
        },
        Spec {
            id: "EX2.11",
            params: &["n"],
            constraint_text: "n >= 0",
            constraint: nonneg,
            lhs: |p| {
                let n = get(p, "n")?;
                Ok(Value::Rational(sum(0, n, |k| rat(k * k * k) * c(2 * n, n + k).pow(3))))
            },
            rhs: |p| {
                let n = get(p, "n")?;
                let s = try_sum(0, n - 1, |j| {
                    div(rat(3 * n.pow(4)) * c(2 * n, n) * c(n + j, n).pow(2), rat((n + 2 * j) * (n + 2 * j + 2)), p)
                })?;
                Ok(Value::Rational(s / rat(2)))
            },
            is_q: false,
            notes: "sum_k k^3 C(2n,n+k)^3 = (1/2) sum_{j<n} 3n^4 C(2n,n) C(n+j,n)^2 / ((n+2j)(n+2j+2))",
            grid: &[("n", 0, 8)],
        },
        Spec {
            id: "EX2.12",
            params: &["n"],
            constraint_text: "n >= 0",
            constraint: nonneg,
            lhs: |p| {
                let n = get(p, "n")?;
                Ok(Value::Rational(sum(0, n, |k| rat(k) * c(2 * n, n + k).pow(4))))
            },
            rhs: |p| {
                let n = get(p, "n")?;
                let s = sum(0, n, |j| rat(j) * c(n + j - 1, n - 1).pow(3) / c(3 * n + j, 3 * n));
                Ok(Value::Rational(c(4 * n, n) * c(2 * n, n) / rat(2) * s))
            },
            is_q: false,
            notes: "sum_k k C(2n,n+k)^4 = (1/2) C(4n,n) C(2n,n) sum_{j<=n} j C(n+j-1,n-1)^3 / C(3n+j,3n)",
            grid: &[("n", 0, 8)],
        },
        Spec {
            id: "QL3.1",
            params: &["n"],
            constraint_text: "n >= 0",
            constraint: nonneg,
            lhs: |p| {
                let n = get(p, "n")?;
                Ok(Value::Q(qsum(0, n, |k| crate::wz::q_summand(n, k))))
            },
            rhs: |p| {
                let n = get(p, "n")?;
                let b = q_binom(2 * n, n);
                Ok(Value::Q(&(&b * &b) * &qpow(n)))
            },
            is_q: true,
            notes: "sum_{k<=n} [2n+1,n-k]_q ([2n,n-k]_q - [2n,n-k-1]_q) q^(k(k+1)) = q^n [2n,n]_q^2",
            grid: &[("n", 0, 8)],
        },
        Spec {
            id: "GE6",
            params: &["n"],
            constraint_text: "n >= 0",
            constraint: nonneg,
            lhs: |p| {
                let n = get(p, "n")?;
                Ok(Value::Rational(sum(0, n, |k| {
                    c(2 * n + 1, n - k) * (c(2 * n, n - k) - c(2 * n, n - k - 1))
                })))
            },
            rhs: |p| {
                let n = get(p, "n")?;
                Ok(Value::Rational(c(2 * n, n).pow(2)))
            },
            is_q: false,
            notes: "sum_{k<=n} C(2n+1,n-k) (C(2n,n-k) - C(2n,n-k-1)) = C(2n,n)^2",
            grid: &[("n", 0, 10)],
        },
        Spec {
            id: "P11899",
            params: &["n"],
            constraint_text: "n >= 0",
            constraint: nonneg,
            lhs: |p| {
                let n = get(p, "n")?;
                let first = sum(0, n, |k| c(2 * n, k) * c(2 * n + 1, k));
                let second = sum(n + 1, 2 * n + 1, |k| c(2 * n, k - 1) * c(2 * n + 1, k));
                Ok(Value::Rational(first + second))
            },
            rhs: |p| {
                let n = get(p, "n")?;
                Ok(Value::Rational(c(4 * n + 1, 2 * n) + c(2 * n, n).pow(2)))
            },
            is_q: false,
            notes: "sum_{k<=n} C(2n,k) C(2n+1,k) + sum_{n<k<=2n+1} C(2n,k-1) C(2n+1,k) = C(4n+1,2n) + C(2n,n)^2; \
                    n = 0 is included",
            grid: &[("n", 0, 10)],
        },
        Spec {
            id: "P4.1",
            params: &["a", "b", "c", "r"],
            constraint_text: "a, b, c >= 0 and a+r, b+r, c+r >= 0",
            constraint: |p| {
                let r = p["r"];
                ["a", "b", "c"].iter().all(|v| p[*v] >= 0 && p[*v] + r >= 0)
            },
            lhs: |p| {
                let [a, b, c_, r] = vals(p, ["a", "b", "c", "r"])?;
                Ok(Value::Rational(sum(1, a + r, |k| {
                    rat(2 * k - r) * c(a + b + r, a + k) * c(b + c_ + r, b + k) * c(c_ + a + r, c_ + k)
                })))
            },
            rhs: |p| {
                let [a, b, c_, r] = vals(p, ["a", "b", "c", "r"])?;
                let s = sum(0, c_ + r - 1, |j| c(a + j, a) * c(b + j, b + r - 1));
                Ok(Value::Rational(rat(a + r) * q_ab(a + r, b) * s))
            },
            is_q: false,
            notes: "sum_{1<=k<=a+r} (2k-r) C(a+b+r,a+k) C(b+c+r,b+k) C(c+a+r,c+k) \
                    = (a+r) Q_{a+r,b} sum_{j<c+r} C(a+j,a) C(b+j,b+r-1)",
            grid: &[("a", 0, 4), ("b", 0, 4), ("c", 0, 4), ("r", -1, 3)],
        },
        Spec {
            id: "QT4.2",
            params: &["a", "b", "c"],
            constraint_text: "a >= 1, b, c >= 0",
            constraint: |p| nonneg(p) && p["a"] >= 1,
            lhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                Ok(Value::Q(qsum(1, a, |k| {
                    let bin = &(&q_binom(a + b, a + k) * &q_binom(b + c_, b + k)) * &q_binom(c_ + a, c_ + k);
                    &(&one_minus_q(2 * k) * &qpow(2 * k * k - k - 1)) * &bin
                })))
            },
            rhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let s = qsum(0, c_ - 1, |j| &(&qpow(j) * &q_binom(a + j, a)) * &q_binom(b + j, b - 1));
                Ok(Value::Q(&(&one_minus_q(a) * &q_binom(a + b, a)) * &s))
            },
            is_q: true,
            notes: "both sides multiplied by (1-q^a): sum_{1<=k<=a} (1-q^(2k)) q^(2k^2-k-1) [a+b,a+k]_q [b+c,b+k]_q [c+a,c+k]_q \
                    = (1-q^a) [a+b,a]_q sum_{j<c} q^j [a+j,a]_q [b+j,b-1]_q; the k=0 term vanishes",
            grid: &[("a", 0, 5), ("b", 0, 5), ("c", 0, 5)],
        },
        Spec {
            id: "SYM-Uq",
            params: &["a", "b", "c"],
            constraint_text: "a, b, c >= 0",
            constraint: nonneg,
            lhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                Ok(Value::Tuple(vec![Value::Q(u_q(a, b, c_)); 5]))
            },
            rhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                let perms = permutations3((a, b, c_));
                Ok(Value::Tuple(perms[1..].iter().map(|&(x, y, z)| Value::Q(u_q(x, y, z))).collect()))
            },
            is_q: true,
            notes: "U_q(a,b,c) = [a]_q [a+b,a]_q sum_{j<c} q^j [a+j,a]_q [b+j,b-1]_q equals U_q at each of the five \
                    nontrivial permutations; the weight q^j is the one carried by the right side of QT4.2 (the \
                    displayed definition omits it and is then not symmetric, see u_q_printed)",
            grid: &[("a", 0, 5), ("b", 0, 5), ("c", 0, 5)],
        },
        Spec {
            id: "TRUNC",
            params: &["a", "b", "c"],
            constraint_text: "a, b, c >= 0",
            constraint: nonneg,
            lhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                Ok(Value::Rational(sum(0, a, |k| rat(k) * central_triple(a, b, c_, k))))
            },
            rhs: |p| {
                let [a, b, c_] = vals(p, ["a", "b", "c"])?;
                Ok(Value::Rational(sum(0, a.min(b).min(c_), |k| rat(k) * central_triple(a, b, c_, k))))
            },
            is_q: false,
            notes: "sum_{k<=a} k C(2a,a+k) C(2b,b+k) C(2c,c+k) = the same sum over k <= min(a,b,c)",
            grid: &[("a", 0, 6), ("b", 0, 6), ("c", 0, 6)],
        },
        Spec {
            id: "SREC",
            params: &["r", "a", "b", "c"],
            constraint_text: "r >= 1, a, b, c >= 0",
            constraint: |p| nonneg(p) && p["r"] >= 1,
            lhs: |p| {
                let [r, a, b, c_] = vals(p, ["r", "a", "b", "c"])?;
                Ok(Value::Rational(BigRational::from_integer(s_r(r as u32, a, b, c_))))
            },
            rhs: |p| {
                let [r, a, b, c_] = vals(p, ["r", "a", "b", "c"])?;
                let prev = |x: i64| BigRational::from_integer(s_r(r as u32 - 1, x, b, c_));
                Ok(Value::Rational(rat(a * a) * prev(a) - rat((a + b) * (a + c_)) * prev(a - 1)))
            },
            is_q: false,
            notes: "S_r(a,b,c) = a^2 S_{r-1}(a,b,c) - (a+b)(a+c) S_{r-1}(a-1,b,c), \
                    S_r = sum_{k<=a} k^(2r+1) C(a+b,a+k) C(b+c,b+k) C(c+a,c+k)",
            grid: &[("r", 1, 4), ("a", 1, 5), ("b", 1, 5), ("c", 1, 5)],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(catalan_triangle_b(3, 1).unwrap(), catalan(3));
        assert_eq!(catalan(3), rat(5));
        assert!(catalan_triangle_b(0, 0).is_err());
        assert_eq!(catalan_triangle_t(2, 2), rat(2));
        assert_eq!(q_ab(2, 1), rat(3));
        assert_eq!(catalan(0), rat(1));
    }

    #[test]
    fn spot_values() {
        let p11899 = specs().into_iter().find(|s| s.id == "P11899").unwrap();
        let p = crate::point(&[("n", 1)]);
        assert_eq!((p11899.lhs)(&p).unwrap(), Value::int(14));
        assert_eq!((p11899.rhs)(&p).unwrap(), Value::int(14));
        let srec = specs().into_iter().find(|s| s.id == "SREC").unwrap();
        let p = crate::point(&[("r", 1), ("a", 2), ("b", 1), ("c", 1)]);
        assert_eq!((srec.rhs)(&p).unwrap(), Value::int(3));
    }

    #[test]
    fn p41_holds_without_the_recorded_constraint() {
        let spec = specs().into_iter().find(|s| s.id == "P4.1").unwrap();
        for pt in Grid::new(spec.grid).points() {
            assert_eq!((spec.lhs)(&pt).unwrap(), (spec.rhs)(&pt).unwrap(), "{pt:?}");
        }
    }

    #[test]
    fn ge2_pole_is_reported() {
        let spec = specs().into_iter().find(|s| s.id == "GE2").unwrap();
        let p = crate::point(&[("a", 2), ("b", 0), ("c", 0)]);
        assert!(matches!((spec.rhs)(&p), Err(Error::PoleEncountered { .. })));
    }
}
