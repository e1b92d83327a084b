//! Canonical text and LaTeX rendering.
//!
//! The text form is the stable external format: terms in descending
//! graded-lex order, explicit `*` and `^`, e.g.
//! `36*t^3 - 54*t^2 + 27*t + m - 3`. It parses back via
//! [`Polynomial::parse`](super::Polynomial::parse).

use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::fmt;

use super::{Monomial, Polynomial};

/// Render one term, sign included, e.g. `-54*t^2`.
pub(crate) fn render_term(vars: &[String], mono: &Monomial, coeff: &BigInt) -> String {
    let mut out = String::new();
    if coeff.is_negative() {
        out.push('-');
    }
    out.push_str(&unsigned_term(vars, mono, coeff));
    out
}

fn unsigned_term(vars: &[String], mono: &Monomial, coeff: &BigInt) -> String {
    let mag = coeff.abs();
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || mono.is_constant() {
        parts.push(mag.to_string());
    }
    for (i, var) in vars.iter().enumerate() {
        match mono.exponent(i) {
            0 => {}
            1 => parts.push(var.clone()),
            e => parts.push(format!("{var}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, coeff)) in self.terms_desc().enumerate() {
            if i == 0 {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else if coeff.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            f.write_str(&unsigned_term(&self.vars, mono, coeff))?;
        }
        Ok(())
    }
}

/// LaTeX form of a variable name: trailing digits become a subscript, so
/// `m1` renders as `m_1` and `m12` as `m_{12}`.
fn latex_var(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit());
    match split {
        Some(i) if i > 0 && name[i..].chars().all(|c| c.is_ascii_digit()) => {
            let (stem, digits) = name.split_at(i);
            if digits.len() == 1 {
                format!("{stem}_{digits}")
            } else {
                format!("{stem}_{{{digits}}}")
            }
        }
        _ => name.to_string(),
    }
}

impl Polynomial {
    /// LaTeX rendering in the same canonical term order as `Display`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, coeff)) in self.terms_desc().enumerate() {
            if i == 0 {
                if coeff.is_negative() {
                    out.push('-');
                }
            } else if coeff.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = coeff.abs();
            if !mag.is_one() || mono.is_constant() {
                out.push_str(&mag.to_string());
            }
            for (j, var) in self.vars.iter().enumerate() {
                match mono.exponent(j) {
                    0 => {}
                    1 => out.push_str(&latex_var(var)),
                    e if e < 10 => out.push_str(&format!("{}^{}", latex_var(var), e)),
                    e => out.push_str(&format!("{}^{{{}}}", latex_var(var), e)),
                }
            }
        }
        out
    }
}
