//! Registry of binomial and q-binomial identities with exact evaluators for
//! both sides, and a grid verifier.

mod grid;
mod identities;

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::QPoly;
use crate::error::{Error, Result};
use crate::{fmt_point, Point};

pub use grid::Grid;
pub use identities::{catalan, catalan_triangle_b, catalan_triangle_t, q_ab, u_q_printed};

/// The value of one side of an identity at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(BigRational),
    Q(QPoly),
    /// Several values compared componentwise, used for symmetry claims.
    Tuple(Vec<Value>),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Rational(BigRational::from_integer(n.into()))
    }

    /// Adds the integer `delta` to every scalar component.
    pub fn offset(&self, delta: i64) -> Value {
        match self {
            Value::Rational(x) => Value::Rational(x + BigRational::from_integer(delta.into())),
            Value::Q(p) => Value::Q(p + &QPoly::monomial(BigInt::from(delta), 0)),
            Value::Tuple(vs) => Value::Tuple(vs.iter().map(|v| v.offset(delta)).collect()),
        }
    }
}

impl From<BigRational> for Value {
    fn from(x: BigRational) -> Self {
        Value::Rational(x)
    }
}

impl From<QPoly> for Value {
    fn from(p: QPoly) -> Self {
        Value::Q(p)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(x) => write!(f, "{x}"),
            Value::Q(p) => write!(f, "{p}"),
            Value::Tuple(vs) => {
                let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

pub type Evaluator = Arc<dyn Fn(&Point) -> Result<Value> + Send + Sync>;
pub type Constraint = Arc<dyn Fn(&Point) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: String,
    pub params: Vec<String>,
    /// Human-readable form of `constraint`.
    pub constraint_text: String,
    pub constraint: Constraint,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    pub is_q: bool,
    /// The display being checked, with any reading choices spelled out.
    pub notes: String,
    pub default_grid: Grid,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("params", &self.params)
            .field("constraint", &self.constraint_text)
            .field("is_q", &self.is_q)
            .field("default_grid", &self.default_grid.to_string())
            .finish()
    }
}

impl IdentityRecord {
    pub fn param_names(&self) -> Vec<&str> {
        self.params.iter().map(String::as_str).collect()
    }

    pub fn admits(&self, p: &Point) -> bool {
        self.params.iter().all(|n| p.contains_key(n)) && (self.constraint)(p)
    }

    /// A copy whose right-hand side is off by `delta`.
    pub fn with_rhs_offset(&self, delta: i64) -> IdentityRecord {
        let mut out = self.clone();
        let rhs = self.rhs.clone();
        out.rhs = Arc::new(move |p| Ok(rhs(p)?.offset(delta)));
        out.id = format!("{}~rhs{delta:+}", self.id);
        out
    }

    /// A copy whose right-hand side is evaluated with `param` shifted by
    /// `delta`.
    pub fn with_shifted_rhs(&self, param: &str, delta: i64) -> IdentityRecord {
        let mut out = self.clone();
        let rhs = self.rhs.clone();
        let name = param.to_string();
        out.rhs = Arc::new(move |p| {
            let mut q = p.clone();
            *q.get_mut(&name).ok_or_else(|| Error::MissingVariable(name.clone()))? += delta;
            rhs(&q)
        });
        out.id = format!("{}~{param}{delta:+}", self.id);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub assignment: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub grid: String,
    pub cases_checked: usize,
    /// Grid points excluded by the record's constraint.
    pub skipped: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Drops the timing so that serialized reports are reproducible.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} on {}: {} cases, {} skipped, {} failures\n",
            self.id,
            self.grid,
            self.cases_checked,
            self.skipped,
            self.failures.len()
        );
        for f in &self.failures {
            out.push_str(&format!("  FAIL {}: lhs = {}, rhs = {}\n", f.assignment, f.lhs, f.rhs));
        }
        out
    }
}

pub fn registry() -> &'static [IdentityRecord] {
    static REGISTRY: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    REGISTRY.get_or_init(identities::all)
}

pub fn lookup(id: &str) -> Result<&'static IdentityRecord> {
    registry()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::NotFound(format!("identity `{id}`")))
}

/// Verifies a registered identity. Parameters missing from `grid` take their
/// default ranges; `None` uses the default grid outright.
pub fn verify(id: &str, grid: Option<&Grid>) -> Result<VerificationReport> {
    let rec = lookup(id)?;
    let grid = match grid {
        Some(g) => g.aligned(&rec.param_names(), &rec.default_grid)?,
        None => rec.default_grid.clone(),
    };
    Ok(verify_record(rec, &grid))
}

/// Like [`verify`], restricted to q-identities.
pub fn verify_q(id: &str, grid: Option<&Grid>) -> Result<VerificationReport> {
    if !lookup(id)?.is_q {
        return Err(Error::NotQIdentity(id.to_string()));
    }
    verify(id, grid)
}

fn show(v: &Result<Value>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Evaluates both sides at every admitted grid point. Points are evaluated in
/// parallel and reported in lexicographic grid order.
pub fn verify_record(rec: &IdentityRecord, grid: &Grid) -> VerificationReport {
    let start = Instant::now();
    let points = grid.points();
    let admitted: Vec<&Point> = points.iter().filter(|p| rec.admits(p)).collect();
    let failures: Vec<Failure> = admitted
        .par_iter()
        .filter_map(|p| {
            let lhs = (rec.lhs)(p);
            let rhs = (rec.rhs)(p);
            match (&lhs, &rhs) {
                (Ok(l), Ok(r)) if l == r => None,
                _ => Some(Failure { assignment: fmt_point(p), lhs: show(&lhs), rhs: show(&rhs) }),
            }
        })
        .collect();
    VerificationReport {
        id: rec.id.clone(),
        grid: grid.to_string(),
        cases_checked: admitted.len(),
        skipped: points.len() - admitted.len(),
        failures,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    }
}

/// Exact sum of `summand` over `range`; an empty range sums to zero.
pub fn brute_sum<F>(summand: F, range: RangeInclusive<i64>) -> Result<BigRational>
where
    F: Fn(i64) -> Result<BigRational>,
{
    let mut acc = BigRational::zero();
    for k in range {
        acc += summand(k)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binom_q;
    use crate::point;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn registry_ids_are_unique_and_complete() {
        let ids: Vec<&str> = registry().iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids.len(), 22);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        for id in ["GE-1", "AMM1", "QT4.2", "SYM-Uq", "SREC", "P11899"] {
            assert!(lookup(id).is_ok(), "{id}");
        }
        assert!(matches!(lookup("NOPE"), Err(Error::NotFound(_))));
    }

    #[test]
    fn record_signatures() {
        let ge3 = lookup("GE3").unwrap();
        assert_eq!(ge3.params, ["m", "n"]);
        assert!(ge3.admits(&point(&[("m", 3), ("n", 2)])));
        assert!(!ge3.admits(&point(&[("m", 2), ("n", 3)])));
        let t29 = lookup("T2.9").unwrap();
        assert_eq!(t29.params, ["a", "b", "c", "d"]);
        let ge2 = lookup("GE2").unwrap();
        assert!(!ge2.admits(&point(&[("a", 2), ("b", 0), ("c", 1)])));
        assert!(!ge2.admits(&point(&[("a", 2), ("b", 1), ("c", 0)])));
        assert!(ge2.admits(&point(&[("a", 0), ("b", 0), ("c", 0)])));
    }

    #[test]
    fn every_identity_holds_on_its_default_grid() {
        for rec in registry() {
            let rep = verify(&rec.id, None).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
            assert!(rep.cases_checked > 0, "{}", rec.id);
        }
    }

    #[test]
    fn ge0_grid_and_spot_value() {
        let g = Grid::parse("a=0..4,b=0..4,c=0..4").unwrap();
        let rep = verify("GE0", Some(&g)).unwrap();
        assert_eq!((rep.cases_checked, rep.failures.len()), (125, 0));
        let rec = lookup("GE0").unwrap();
        let p = point(&[("a", 1), ("b", 1), ("c", 1)]);
        assert_eq!((rec.lhs)(&p).unwrap(), Value::int(1));
        assert_eq!((rec.rhs)(&p).unwrap(), Value::int(1));
    }

    #[test]
    fn ge3_grid_and_spot_value() {
        let g = Grid::parse("m=0..8,n=0..8").unwrap();
        let rep = verify("GE3", Some(&g)).unwrap();
        assert_eq!((rep.cases_checked, rep.skipped, rep.failures.len()), (45, 36, 0));
        let rec = lookup("GE3").unwrap();
        let p = point(&[("m", 2), ("n", 1)]);
        assert_eq!((rec.lhs)(&p).unwrap(), Value::int(2));
        assert_eq!((rec.rhs)(&p).unwrap(), Value::int(2));
    }

    #[test]
    fn ge4_spot_value() {
        let rec = lookup("GE4").unwrap();
        let p = point(&[("m", 2), ("n", 1), ("r", 1), ("s", 0)]);
        assert_eq!((rec.lhs)(&p).unwrap(), Value::int(3));
        assert_eq!((rec.rhs)(&p).unwrap(), Value::int(3));
    }

    #[test]
    fn partial_grid_uses_defaults() {
        let g = Grid::parse("n=2..3").unwrap();
        let rep = verify("GE3", Some(&g)).unwrap();
        assert_eq!(rep.grid, "m=0..8,n=2..3");
        assert!(verify("GE3", Some(&Grid::parse("z=0..1").unwrap())).is_err());
    }

    #[test]
    fn q_identities() {
        let rec = lookup("QL3.1").unwrap();
        let expected = Value::Q(QPoly::from_i64s(&[0, 1, 2, 1]));
        let p = point(&[("n", 1)]);
        assert_eq!((rec.lhs)(&p).unwrap(), expected);
        assert_eq!((rec.rhs)(&p).unwrap(), expected);
        let rep = verify_q("QL3.1", Some(&Grid::parse("n=0..8").unwrap())).unwrap();
        assert_eq!((rep.cases_checked, rep.failures.len()), (9, 0));
        let rep = verify_q("QT4.2", Some(&Grid::parse("a=1..1,b=1..1,c=1..1").unwrap())).unwrap();
        assert_eq!((rep.cases_checked, rep.failures.len()), (1, 0));
        assert_eq!(verify_q("GE0", None).unwrap_err(), Error::NotQIdentity("GE0".into()));
        assert!(matches!(verify_q("NOPE", None), Err(Error::NotFound(_))));
    }

    #[test]
    fn printed_u_q_is_not_symmetric() {
        // Without the q^j weight inside the sum the symmetry already fails
        // at (1,1,2) versus (1,2,1).
        assert_eq!(u_q_printed(1, 1, 2), QPoly::from_i64s(&[2, 3, 1]));
        assert_eq!(u_q_printed(1, 2, 1), QPoly::from_i64s(&[1, 2, 2, 1]));
    }

    #[test]
    fn amm_follows_from_ge0() {
        // a=n, b=c=m turns GE0 into AMM2 and a=b=n, c=m into AMM1, once the
        // Q-quotient in front of the sum is traded for the AMM prefactor.
        let ge0 = lookup("GE0").unwrap();
        let scalar = |v: Value| match v {
            Value::Rational(x) => x,
            other => panic!("{other}"),
        };
        let q = |x: i64, y: i64| binom_q(x + y, x);
        let quotient = |a, b, c| q(a, b) * q(b, c) * q(c, a) / (q(a, a) * q(b, b) * q(c, c));
        for m in 0..=6i64 {
            for n in 0..=m {
                let target = point(&[("n", n), ("m", m)]);
                for (id, (a, b, c), prefactor) in [
                    ("AMM1", (n, n, m), binom_q(n + m, 2 * n)),
                    ("AMM2", (n, m, m), binom_q(n + m, m)),
                ] {
                    let amm = lookup(id).unwrap();
                    let src = point(&[("a", a), ("b", b), ("c", c)]);
                    let factor = &prefactor / quotient(a, b, c);
                    let lhs = scalar((ge0.lhs)(&src).unwrap()) * &factor;
                    let rhs = scalar((ge0.rhs)(&src).unwrap()) * &factor;
                    assert_eq!(Value::Rational(lhs), (amm.lhs)(&target).unwrap(), "{id} n={n} m={m}");
                    assert_eq!(Value::Rational(rhs), (amm.rhs)(&target).unwrap(), "{id} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn mutated_records_fail() {
        let ge3 = lookup("GE3").unwrap();
        assert!(!verify_record(&ge3.with_rhs_offset(1), &ge3.default_grid).passed());
        assert!(!verify_record(&ge3.with_shifted_rhs("n", 1), &ge3.default_grid).passed());
        let ql = lookup("QL3.1").unwrap();
        assert!(!verify_record(&ql.with_shifted_rhs("n", 1), &ql.default_grid).passed());
    }

    #[test]
    fn report_is_deterministic() {
        let ge0 = lookup("GE0").unwrap();
        let bad = ge0.with_rhs_offset(1);
        let a = verify_record(&bad, &ge0.default_grid).without_timing();
        let b = verify_record(&bad, &ge0.default_grid).without_timing();
        assert_eq!(a, b);
        assert_eq!(a.failures[0].assignment, "a=0,b=0,c=0");
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn brute_sum_examples() {
        let s = brute_sum(|k| Ok(rat(k) * binom_q(2, 1 + k).pow(3)), 0..=1).unwrap();
        assert_eq!(s, rat(1));
        #[allow(clippy::reversed_empty_ranges)]
        let empty = brute_sum(|_| Ok(rat(1)), 1..=0).unwrap();
        assert!(empty.is_zero());
        let s = brute_sum(|k| Ok(binom_q(3, 1 - k) * (binom_q(2, 1 - k) - binom_q(2, -k))), 0..=1).unwrap();
        assert_eq!(s, rat(4));
    }
}
