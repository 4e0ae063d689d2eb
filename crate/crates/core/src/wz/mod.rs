//! Wilf-Zeilberger certificates: symbolic checking of the certificate
//! equation as a rational-function identity, and numeric telescoping checks
//! against closed-form boundary terms.
//!
//! For a WZ pair `F(m+1,k) - F(m,k) = G(m,k+1) - G(m,k)` with `G = R F`, the
//! equation divided through by `F(m,k)` reads
//!
//! ```text
//! F(m+1,k)/F(m,k) - 1 = R(m,k+1) F(m,k+1)/F(m,k) - R(m,k)
//! ```
//!
//! which only involves the two shift quotients of `F` and the multiplier `R`.
//! Pure telescoping certificates `F(k) = G(k) - G(k+1)` reduce the same way to
//! `1 = R(k) - R(k+1) F(k+1)/F(k)`.

mod builtin;
mod qtelescope;
mod term;

use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{ratfn_equal, MultiPoly, RationalFn};
use crate::Point;

pub use builtin::{builtin_certificates, lookup_certificate, CERTIFICATE_IDS};
pub use qtelescope::{q_summand, q_telescope_check, QTelescopeReport};
pub use term::{Affine, Factor, HyperTerm, TermSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    /// `F(o+1,i) - F(o,i) = G(o,i+1) - G(o,i)`
    WzPair,
    /// `F(o,i) = G(o,i) - G(o,i+1)`, the outer variable held fixed.
    Telescoping,
}

/// Samples a valid `(point, inner range)` configuration for a spot check.
pub type SpotSampler = fn(&mut dyn rand::RngCore) -> (Point, RangeInclusive<i64>);
/// Closed-form value of the telescoped sum at a configuration.
pub type BoundaryFn = fn(&HyperTerm, &Point) -> Result<BigRational>;

#[derive(Clone, Copy)]
pub struct SpotPlan {
    pub sample: SpotSampler,
    pub boundary: BoundaryFn,
}

impl std::fmt::Debug for SpotPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SpotPlan")
    }
}

#[derive(Clone, Debug)]
pub struct WZCertificate {
    pub id: String,
    pub notes: String,
    pub kind: CertificateKind,
    pub term: HyperTerm,
    pub multiplier: RationalFn,
    /// Free symbolic parameters besides the outer and inner variables.
    pub params: Vec<String>,
    pub spot_plan: Option<SpotPlan>,
}

impl WZCertificate {
    pub fn new(kind: CertificateKind, term: HyperTerm, multiplier: RationalFn) -> Self {
        WZCertificate {
            id: "ad-hoc".into(),
            notes: String::new(),
            kind,
            term,
            multiplier,
            params: Vec::new(),
            spot_plan: None,
        }
    }

    /// The same certificate with `multiplier + offset`.
    pub fn perturbed(&self, offset: &MultiPoly) -> WZCertificate {
        let mut out = self.clone();
        out.multiplier = &self.multiplier + &RationalFn::from_poly(offset.clone());
        out.id = format!("{}+perturbed", self.id);
        out
    }

    /// The same certificate with the multiplier scaled by `factor`.
    pub fn scaled(&self, factor: i64) -> WZCertificate {
        let mut out = self.clone();
        out.multiplier = &self.multiplier * &RationalFn::int(factor);
        out.id = format!("{}*{factor}", self.id);
        out
    }

    /// Both sides of the certificate equation after dividing by `F`.
    pub fn equation(&self) -> (RationalFn, RationalFn) {
        let inner = &self.term.inner;
        let r_next = &self.multiplier.shift(inner, 1) * &self.term.ratio_inner;
        match self.kind {
            CertificateKind::WzPair => (&self.term.ratio_outer - &RationalFn::one(), &r_next - &self.multiplier),
            CertificateKind::Telescoping => (RationalFn::one(), &self.multiplier - &r_next),
        }
    }

    /// `G = R F` at a point. Where `F` vanishes (outside its support) the
    /// companion is taken to be zero even if `R` has a pole there.
    pub fn companion_eval(&self, point: &Point) -> Result<BigRational> {
        let f = self.term.base_eval(point)?;
        if f.is_zero() {
            return Ok(f);
        }
        let r = self
            .multiplier
            .eval_with(|v| point.get(v).map(|&x| BigRational::from_integer(x.into())))
            .map_err(|e| match e {
                Error::PoleEncountered { .. } => Error::PoleEncountered { at: crate::fmt_point(point) },
                other => other,
            })?;
        Ok(r * f)
    }
}

pub fn check_certificate(cert: &WZCertificate) -> bool {
    let (lhs, rhs) = cert.equation();
    ratfn_equal(&lhs, &rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TelescopeReport {
    pub outer_value: i64,
    /// `sum_i [F(o+1,i) - F(o,i)]` for WZ pairs, `sum_i F(o,i)` for telescoping.
    pub lhs_difference: String,
    pub boundary_value: String,
    pub matched: bool,
}

/// Sums the telescoping side exactly over `inner_range` at the point `fixed`
/// (which supplies the outer variable and all free parameters) and compares
/// with `expected_boundary`.
pub fn telescope_check<B>(
    cert: &WZCertificate,
    fixed: &Point,
    inner_range: RangeInclusive<i64>,
    expected_boundary: B,
) -> Result<TelescopeReport>
where
    B: Fn(&Point) -> Result<BigRational>,
{
    let term = &cert.term;
    let outer_value = *fixed
        .get(&term.outer)
        .ok_or_else(|| Error::MissingVariable(term.outer.clone()))?;
    let mut next = fixed.clone();
    next.insert(term.outer.clone(), outer_value + 1);
    let mut acc = BigRational::zero();
    for i in inner_range {
        let mut p = fixed.clone();
        p.insert(term.inner.clone(), i);
        match cert.kind {
            CertificateKind::WzPair => {
                let mut q = next.clone();
                q.insert(term.inner.clone(), i);
                acc += term.base_eval(&q)? - term.base_eval(&p)?;
            }
            CertificateKind::Telescoping => acc += term.base_eval(&p)?,
        }
    }
    let boundary = expected_boundary(fixed)?;
    Ok(TelescopeReport {
        outer_value,
        matched: acc == boundary,
        lhs_difference: acc.to_string(),
        boundary_value: boundary.to_string(),
    })
}

/// Runs `count` randomly sampled telescoping checks using the certificate's
/// built-in spot plan.
pub fn spot_checks(cert: &WZCertificate, count: usize, rng: &mut dyn rand::RngCore) -> Result<Vec<(Point, TelescopeReport)>> {
    let plan = cert
        .spot_plan
        .ok_or_else(|| Error::NotFound(format!("spot plan for `{}`", cert.id)))?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let (point, range) = (plan.sample)(rng);
        let report = telescope_check(cert, &point, range, |p| (plan.boundary)(&cert.term, p))?;
        out.push((point, report));
    }
    Ok(out)
}

/// Random nonzero polynomial of degree at most 2 in the given variables.
pub fn random_offset(vars: &[&str], rng: &mut dyn rand::RngCore) -> MultiPoly {
    loop {
        let mut p = MultiPoly::int(rng.gen_range(-3..=3));
        for v in vars {
            let c = rng.gen_range(-3..=3i64);
            p = &p + &MultiPoly::var(v).scale(&BigRational::from_integer(c.into()));
            if rng.gen_bool(0.3) {
                let c2 = rng.gen_range(-2..=2i64);
                p = &p + &MultiPoly::var(v).pow(2).scale(&BigRational::from_integer(c2.into()));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}
