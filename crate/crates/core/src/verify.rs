//! Exact and numeric verification that a representation's cubes sum to its
//! target.
//!
//! The primary check is symbolic: expand every cube exactly and subtract the
//! target; the representation holds iff the residual is the zero polynomial.
//! No tolerance is involved anywhere. Numeric spot checks evaluate both
//! sides at integer points with exact arithmetic, as an independent oracle
//! against expansion bugs.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::poly::{Monomial, PolyError, Polynomial};
use crate::representation::Representation;

/// One numeric spot check: a point binding the free variables, and the two
/// sides evaluated there.
#[derive(Debug, Clone, Serialize)]
pub struct SpotCheck {
    pub point: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

/// Outcome of verifying a representation.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub ok: bool,
    /// Expanded `sum of cubes - target`; `None` when only numeric spot
    /// checks ran.
    pub residual: Option<Polynomial>,
    /// Graded-lex-least offending term when the residual is nonzero.
    pub first_bad_term: Option<(Monomial, BigInt)>,
    pub spot_checks: Vec<SpotCheck>,
}

impl VerificationReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(if self.ok { "ok: true\n" } else { "ok: false\n" });
        if let Some(residual) = &self.residual {
            out.push_str(&format!("residual: {residual}\n"));
        }
        if let Some((mono, coeff)) = &self.first_bad_term {
            let vars = self.residual.as_ref().map(|r| r.vars()).unwrap_or(&[]);
            out.push_str(&format!(
                "first bad term: {}\n",
                crate::poly::render_term_in(vars, mono, coeff)
            ));
        }
        for check in &self.spot_checks {
            let point: Vec<String> =
                check.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(
                "spot check [{}]: lhs = {}, rhs = {} ({})\n",
                point.join(", "),
                check.lhs,
                check.rhs,
                if check.ok { "match" } else { "MISMATCH" }
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ok": self.ok,
            "residual": self.residual.as_ref().map(|r| r.to_json()),
            "first_bad_term": self.first_bad_term.as_ref().map(|(m, c)| {
                crate::poly::term_to_json(m, c)
            }),
            "spot_checks": self.spot_checks,
        })
    }
}

/// Residual via the power operation: `sum(cube^3) - target`.
pub fn residual_via_pow(r: &Representation) -> Polynomial {
    let mut sum = Polynomial::zero();
    for cube in r.cubes() {
        sum = &sum + &cube.pow(3);
    }
    &sum - r.target()
}

/// Residual via repeated multiplication, a deliberately separate expansion
/// path used to cross-check `residual_via_pow`.
pub fn residual_via_mul(r: &Representation) -> Polynomial {
    let mut sum = Polynomial::zero();
    for cube in r.cubes() {
        let squared = cube * cube;
        sum = &sum + &(&squared * cube);
    }
    &sum - r.target()
}

/// Symbolic verification by exact expansion.
pub fn verifier_check(r: &Representation) -> VerificationReport {
    let residual = residual_via_pow(r);
    let ok = residual.is_zero();
    let first_bad_term = residual.trailing_term().map(|(m, c)| (m.clone(), c.clone()));
    VerificationReport { ok, residual: Some(residual), first_bad_term, spot_checks: Vec::new() }
}

/// Numeric verification at integer points. Every free variable of the
/// representation must be bound by each point.
pub fn verifier_spot_check(
    r: &Representation,
    points: &[BTreeMap<String, BigInt>],
) -> Result<VerificationReport, PolyError> {
    let mut checks = Vec::with_capacity(points.len());
    let mut all_ok = true;
    for point in points {
        let mut lhs = BigInt::zero();
        for cube in r.cubes() {
            lhs += cube.eval(point)?.pow(3);
        }
        let rhs = r.target().eval(point)?;
        let ok = lhs == rhs;
        all_ok &= ok;
        checks.push(SpotCheck {
            point: point.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            ok,
        });
    }
    Ok(VerificationReport {
        ok: all_ok,
        residual: None,
        first_bad_term: None,
        spot_checks: checks,
    })
}
