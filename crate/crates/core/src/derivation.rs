//! Symbolic re-derivation of each identity family from its ansatz.
//!
//! Every derivation follows the same pattern: a cube ansatz whose expanded
//! sum is linear in one unknown after the cubic terms cancel, a
//! parametrization that makes the linear solution an exact polynomial
//! division, and a replayable record of every substitution along the way.

use num_bigint::BigInt;
use serde::Serialize;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::catalog::DEFAULT_SHIFTS;
use crate::poly::{PolyError, Polynomial};
use crate::representation::Representation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    /// A divisibility step failed; the ansatz precondition was violated.
    #[error("derivation step failed: {0}")]
    Inexact(#[from] PolyError),
    /// The added cube's shift is in the wrong residue class mod 6, so the
    /// division by 6 would be inexact.
    #[error("shift {shift} is not congruent to {j} mod 6")]
    ResidueMismatch { j: u8, shift: i64 },
}

/// A snapshot attached to a derivation step: either a single polynomial or
/// an equation between two.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Snapshot {
    Poly(Polynomial),
    Equation { lhs: Polynomial, rhs: Polynomial },
}

impl Snapshot {
    pub fn render_text(&self) -> String {
        match self {
            Snapshot::Poly(p) => p.to_string(),
            Snapshot::Equation { lhs, rhs } => format!("{lhs} = {rhs}"),
        }
    }

    pub fn render_latex(&self) -> String {
        match self {
            Snapshot::Poly(p) => p.to_latex(),
            Snapshot::Equation { lhs, rhs } => format!("{} = {}", lhs.to_latex(), rhs.to_latex()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub description: String,
    pub snapshot: Snapshot,
}

/// How a variable got its value during the derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BindingKind {
    /// A parametrization chosen up front (e.g. a change of variables).
    Substitution,
    /// A value obtained by solving a linear equation or by a recorded choice.
    Solved,
}

#[derive(Debug, Clone, Serialize)]
pub struct Binding {
    pub var: String,
    pub value: Polynomial,
    pub kind: BindingKind,
}

/// What the ansatz sum is equated to.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetSpec {
    /// A fixed right-hand side, e.g. `p^3 + q^3`.
    Fixed(Polynomial),
    /// The target is whatever the finished cubes sum to.
    SumOfCubes,
}

/// Replayable record of a derivation: the initial ansatz cubes, the ordered
/// bindings applied to them, and human-readable steps with snapshots.
#[derive(Debug, Clone, Serialize)]
pub struct DerivationTrace {
    pub initial_cubes: Vec<Polynomial>,
    pub target: TargetSpec,
    pub steps: Vec<TraceStep>,
    pub bindings: Vec<Binding>,
}

impl DerivationTrace {
    fn new(initial_cubes: Vec<Polynomial>, target: TargetSpec) -> Self {
        DerivationTrace { initial_cubes, target, steps: Vec::new(), bindings: Vec::new() }
    }

    fn step(&mut self, description: &str, snapshot: Snapshot) {
        self.steps.push(TraceStep { description: description.to_string(), snapshot });
    }

    fn bind(&mut self, var: &str, value: Polynomial, kind: BindingKind) {
        self.bindings.push(Binding { var: var.to_string(), value, kind });
    }

    /// The parametrization substitutions, in application order.
    pub fn substitutions(&self) -> Vec<(&str, &Polynomial)> {
        self.bindings
            .iter()
            .filter(|b| b.kind == BindingKind::Substitution)
            .map(|b| (b.var.as_str(), &b.value))
            .collect()
    }

    /// The solved values, in application order.
    pub fn solved(&self) -> Vec<(&str, &Polynomial)> {
        self.bindings
            .iter()
            .filter(|b| b.kind == BindingKind::Solved)
            .map(|b| (b.var.as_str(), &b.value))
            .collect()
    }

    /// Re-apply the recorded bindings to the initial ansatz. The result must
    /// equal the derivation's output exactly; tests rely on byte-identical
    /// serialization.
    pub fn replay(&self) -> Representation {
        let mut cubes = self.initial_cubes.clone();
        let mut target = match &self.target {
            TargetSpec::Fixed(poly) => Some(poly.clone()),
            TargetSpec::SumOfCubes => None,
        };
        for binding in &self.bindings {
            let map = BTreeMap::from([(binding.var.clone(), binding.value.clone())]);
            for cube in &mut cubes {
                *cube = cube.substitute(&map);
            }
            if let Some(t) = &mut target {
                *t = t.substitute(&map);
            }
        }
        let target = target.unwrap_or_else(|| {
            cubes.iter().fold(Polynomial::zero(), |acc, c| &acc + &c.pow(3))
        });
        Representation::new(target, cubes)
    }

    /// Numbered, human-readable rendering for `--explain`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!("{}. {}\n   {}\n", i + 1, step.description, step.snapshot.render_text()));
        }
        out
    }
}

/// Split an equation that is linear in `var` into `(coefficient, constant)`
/// with `coefficient * var + constant = 0`.
fn linear_parts(eq: &Polynomial, var: &str) -> (Polynomial, Polynomial) {
    assert!(eq.degree_in(var) <= 1, "equation is not linear in {var}");
    (eq.coefficient_of(var, 1), eq.coefficient_of(var, 0))
}

/// Solve `coefficient * var + constant = 0` by exact division.
fn solve_linear(eq: &Polynomial, var: &str) -> Result<Polynomial, PolyError> {
    let (coefficient, constant) = linear_parts(eq, var);
    (-&constant).divide_exact(&coefficient)
}

fn sum_of_cubes(cubes: &[Polynomial]) -> Polynomial {
    cubes.iter().fold(Polynomial::zero(), |acc, c| &acc + &c.pow(3))
}

fn parse(text: &str) -> Polynomial {
    Polynomial::parse(text).expect("ansatz literals parse")
}

/// Parse the ansatz cubes onto one explicit ambient list: the output
/// variables first, then the parameters, then the symbols the derivation
/// will solve away. Keeping the order fixed up front makes the final
/// representation's ambient (and therefore its serialization) match the
/// catalog constructors exactly.
fn ansatz(ambient: &[&str], texts: &[&str]) -> Vec<Polynomial> {
    texts
        .iter()
        .map(|text| parse(text).reambient(ambient).expect("ambient covers the ansatz"))
        .collect()
}

/// Derive the four-cube identity for `p^3 + q^3`.
///
/// Ansatz `x1 = -y + p, x2 = -y + q, x3 = y + m, x4 = y - m`: the cubic
/// terms in `y` cancel, the equation factors through `3y`, and after the
/// parametrization `m = (p+q)t + q` the linear solution for `y` is an exact
/// division by `p + q`.
pub fn derive_four_pq() -> Result<(Representation, DerivationTrace), DerivationError> {
    let cubes = ansatz(&["t", "p", "q", "y", "m"], &["-y + p", "-y + q", "y + m", "y - m"]);
    let target = parse("p^3 + q^3").reambient(&["t", "p", "q"]).expect("ambient covers support");
    let mut trace = DerivationTrace::new(cubes.clone(), TargetSpec::Fixed(target.clone()));

    let expanded = sum_of_cubes(&cubes);
    trace.step(
        "expand the ansatz sum (-y+p)^3 + (-y+q)^3 + (y+m)^3 + (y-m)^3; the y^3 terms cancel",
        Snapshot::Equation { lhs: expanded.clone(), rhs: target.clone() },
    );

    let equation = (&expanded - &target).divide_exact(&parse("3*y"))?;
    trace.step(
        "discard the trivial root y = 0 and keep the factor that is linear in y",
        Snapshot::Poly(equation.clone()),
    );

    let m_sub = parse("(p + q)*t + q");
    let equation = equation.bind("m", &m_sub);
    trace.step(
        "substitute m = (p + q)*t + q, making the constant side divisible by p + q",
        Snapshot::Poly(equation.clone()),
    );
    trace.bind("m", m_sub, BindingKind::Substitution);

    let y = solve_linear(&equation, "y")?;
    trace.step("solve for y by exact division by p + q", Snapshot::Poly(y.clone()));
    trace.bind("y", y, BindingKind::Solved);

    let rep = trace.replay();
    Ok((rep, trace))
}

/// Derive the four-cube identity for `2(p^6 - q^6)`.
///
/// The sum `(pt+u)^3 + (-pt+u)^3 + (qt+v)^3 + (-qt+v)^3` has vanishing `t^3`
/// and `t` coefficients identically; choosing `u = -q^2, v = p^2` kills the
/// `t^2` coefficient and leaves the constant `2(p^6 - q^6)`.
pub fn derive_four_even() -> (Representation, DerivationTrace) {
    let cubes = ansatz(
        &["t", "p", "q", "u", "v"],
        &["p*t + u", "-p*t + u", "q*t + v", "-q*t + v"],
    );
    let mut trace = DerivationTrace::new(cubes.clone(), TargetSpec::SumOfCubes);

    let expanded = sum_of_cubes(&cubes);
    trace.step(
        "expand the sum as a cubic polynomial in t",
        Snapshot::Poly(expanded.clone()),
    );

    let coeff_t3 = expanded.coefficient_of("t", 3);
    assert!(coeff_t3.is_zero(), "odd powers of t must cancel in pairs");
    trace.step("the coefficient of t^3 vanishes identically", Snapshot::Poly(coeff_t3));

    let coeff_t1 = expanded.coefficient_of("t", 1);
    assert!(coeff_t1.is_zero(), "odd powers of t must cancel in pairs");
    trace.step("the coefficient of t vanishes identically", Snapshot::Poly(coeff_t1));

    let coeff_t2 = expanded.coefficient_of("t", 2);
    trace.step(
        "the coefficient of t^2 is 6*(p^2*u + q^2*v); choose u = -q^2 and v = p^2 to make it vanish",
        Snapshot::Poly(coeff_t2),
    );
    trace.bind("u", parse("-q^2"), BindingKind::Solved);
    trace.bind("v", parse("p^2"), BindingKind::Solved);

    let rep = trace.replay();
    trace.step(
        "with u and v substituted the sum collapses to a constant in t",
        Snapshot::Equation {
            lhs: sum_of_cubes(rep.cubes()),
            rhs: rep.target().clone(),
        },
    );
    (rep, trace)
}

/// Derive the bivariate four-cube identity for 1.
///
/// Ansatz `x1 = py + 1, x2 = -py + m, x3 = -py - m, x4 = py`; solving for
/// `y` needs `p | 2m^2 - 1`, which the substitutions `m = p*m1 + m2` and
/// `p = 2*m2^2 - 1` arrange.
pub fn derive_one_bivariate() -> Result<(Representation, DerivationTrace), DerivationError> {
    let cubes = ansatz(
        &["m1", "m2", "p", "y", "m"],
        &["p*y + 1", "-p*y + m", "-p*y - m", "p*y"],
    );
    let target = Polynomial::one();
    let mut trace = DerivationTrace::new(cubes.clone(), TargetSpec::Fixed(target.clone()));

    let expanded = sum_of_cubes(&cubes);
    trace.step(
        "expand the ansatz sum; the y^3 and y^2 terms cancel",
        Snapshot::Equation { lhs: expanded.clone(), rhs: target.clone() },
    );

    let equation = (&expanded - &target).divide_exact(&parse("3*p*y"))?;
    trace.step(
        "discard the trivial root and keep the factor linear in y: p*y + 1 - 2*m^2",
        Snapshot::Poly(equation.clone()),
    );

    let m_sub = parse("p*m1 + m2");
    let equation = equation.bind("m", &m_sub);
    trace.step(
        "substitute m = p*m1 + m2; the constant side is now 2*m2^2 - 1 plus multiples of p",
        Snapshot::Poly(equation.clone()),
    );
    trace.bind("m", m_sub, BindingKind::Substitution);

    let p_sub = parse("2*m2^2 - 1");
    let equation = equation.bind("p", &p_sub);
    trace.step(
        "take p = 2*m2^2 - 1, eliminating the fractional part of y",
        Snapshot::Poly(equation.clone()),
    );
    trace.bind("p", p_sub, BindingKind::Substitution);

    let y = solve_linear(&equation, "y")?;
    trace.step("solve for y by exact division", Snapshot::Poly(y.clone()));
    trace.bind("y", y, BindingKind::Solved);

    let rep = trace.replay();
    Ok((rep, trace))
}

/// Derive the trivariate four-cube identity for 2.
///
/// `(p+1)^3 + (-p+1)^3 + q^3 + r^3 = 2` reduces to `6p^2 + q^3 + r^3 = 0`;
/// the parametrization `p = f*m, q = g*m, r = h*m` makes it linear in `m`
/// after dividing by `m^2`, and `f = t*(g^3 + h^3)` makes the solution for
/// `m` an exact division by `g^3 + h^3`.
pub fn derive_two_trivariate() -> Result<(Representation, DerivationTrace), DerivationError> {
    let cubes = ansatz(&["t", "g", "h", "p", "q", "r", "f", "m"], &["p + 1", "-p + 1", "q", "r"]);
    let target = parse("2");
    let mut trace = DerivationTrace::new(cubes.clone(), TargetSpec::Fixed(target.clone()));

    let expanded = sum_of_cubes(&cubes);
    let reduced = &expanded - &target;
    trace.step(
        "expand and subtract 2: the equation reduces to 6*p^2 + q^3 + r^3 = 0",
        Snapshot::Poly(reduced.clone()),
    );

    let (f_sub, g_sub, h_sub) = (parse("f*m"), parse("g*m"), parse("h*m"));
    let substituted = reduced
        .bind("p", &f_sub)
        .bind("q", &g_sub)
        .bind("r", &h_sub);
    trace.step(
        "parametrize p = f*m, q = g*m, r = h*m",
        Snapshot::Poly(substituted.clone()),
    );
    trace.bind("p", f_sub, BindingKind::Substitution);
    trace.bind("q", g_sub, BindingKind::Substitution);
    trace.bind("r", h_sub, BindingKind::Substitution);

    let equation = substituted.divide_exact(&parse("m^2"))?;
    trace.step(
        "divide out m^2, leaving an equation linear in m",
        Snapshot::Poly(equation.clone()),
    );

    let f_value = parse("t*(g^3 + h^3)");
    let equation = equation.bind("f", &f_value);
    trace.step(
        "substitute f = t*(g^3 + h^3) so the solution for m has integer coefficients",
        Snapshot::Poly(equation.clone()),
    );
    trace.bind("f", f_value, BindingKind::Substitution);

    let m_value = solve_linear(&equation, "m")?;
    trace.step(
        "solve for m by exact division by g^3 + h^3",
        Snapshot::Poly(m_value.clone()),
    );
    trace.bind("m", m_value, BindingKind::Solved);

    let rep = trace.replay();
    Ok((rep, trace))
}

/// Derive the five-cube identity for `6m + j` by adding `(-6t + shift)^3`
/// to the base identity `6r = (r+1)^3 + (r-1)^3 - 2r^3` and solving for `r`.
/// Any `shift` congruent to `j` mod 6 yields integer coefficients, because
/// cubing preserves residues mod 6.
pub fn derive_five_residue(
    j: u8,
    shift: i64,
) -> Result<(Representation, DerivationTrace), DerivationError> {
    assert!(j <= 5, "residue j must lie in 0..=5");
    if (shift - j as i64).rem_euclid(6) != 0 {
        return Err(DerivationError::ResidueMismatch { j, shift });
    }
    let added = Polynomial::from_terms(
        &["t"],
        [(vec![1], BigInt::from(-6)), (vec![0], BigInt::from(shift))],
    );
    let mut cubes = ansatz(&["t", "m", "r"], &["r + 1", "r - 1", "-r", "-r"]);
    cubes.push(added.reambient(&["t", "m", "r"]).expect("ambient covers the added cube"));
    let target = Polynomial::from_terms(
        &["t", "m"],
        [(vec![0, 1], BigInt::from(6)), (vec![0, 0], BigInt::from(j))],
    );
    let mut trace = DerivationTrace::new(cubes.clone(), TargetSpec::Fixed(target.clone()));

    let base = sum_of_cubes(&[parse("r + 1"), parse("r - 1"), parse("-r"), parse("-r")]);
    assert_eq!(base, parse("6*r"), "base identity: (r+1)^3 + (r-1)^3 - 2*r^3 = 6*r");
    trace.step(
        "start from the base identity (r+1)^3 + (r-1)^3 - 2*r^3 = 6*r",
        Snapshot::Equation { lhs: base.clone(), rhs: parse("6*r") },
    );

    let added_cube = added.pow(3);
    trace.step(
        "add the cube of the low-degree polynomial to both sides",
        Snapshot::Equation { lhs: &base + &added_cube, rhs: &parse("6*r") + &added_cube },
    );

    // 6r + added^3 = 6m + j  =>  r = (6m + j - added^3) / 6
    let numerator = &target - &added_cube;
    trace.step(
        "equate the left side to the target and isolate 6*r",
        Snapshot::Equation { lhs: parse("6*r"), rhs: numerator.clone() },
    );

    let r0 = numerator.divide_exact(&parse("6"))?;
    trace.step(
        "divide by 6; cubing preserves residues mod 6, so the shift's residue class makes this exact",
        Snapshot::Poly(r0.clone()),
    );
    trace.bind("r", r0, BindingKind::Solved);

    let rep = trace.replay();
    Ok((rep, trace))
}

/// The default shift representative for each residue class, the same one
/// the catalog constructors use.
pub fn default_shift(j: u8) -> i64 {
    assert!(j <= 5, "residue j must lie in 0..=5");
    DEFAULT_SHIFTS[j as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::representation::ParamValue;
    use crate::verify::verifier_check;

    #[test]
    fn four_pq_matches_catalog_and_records_y() {
        let (rep, trace) = derive_four_pq().unwrap();
        let expected = catalog::four_cubes_sum_pq(ParamValue::Symbolic, ParamValue::Symbolic);
        assert_eq!(rep, expected);
        assert!(verifier_check(&rep).ok);

        let solved = trace.solved();
        let (var, y) = solved.last().unwrap();
        assert_eq!(*var, "y");
        assert_eq!(**y, parse("-2*(p + q)*t^2 - 4*q*t + p - q"));
    }

    #[test]
    fn four_pq_binding_after_derivation_gives_seven() {
        let (rep, _) = derive_four_pq().unwrap();
        let bound = rep.substitute(&BTreeMap::from([
            ("p".to_string(), Polynomial::constant(2)),
            ("q".to_string(), Polynomial::constant(-1)),
        ]));
        assert_eq!(bound, catalog::four_cubes_sum_pq(ParamValue::int(2), ParamValue::int(-1)));
    }

    #[test]
    fn four_even_matches_catalog_and_kills_odd_powers() {
        let (rep, trace) = derive_four_even();
        let expected = catalog::four_cubes_two_diff(ParamValue::Symbolic, ParamValue::Symbolic);
        assert_eq!(rep, expected);

        // the recorded t^3 and t coefficient snapshots are zero
        let zeros: Vec<&TraceStep> =
            trace.steps.iter().filter(|s| s.description.contains("vanishes")).collect();
        assert_eq!(zeros.len(), 2);
        for step in zeros {
            match &step.snapshot {
                Snapshot::Poly(p) => assert!(p.is_zero()),
                _ => panic!("expected a polynomial snapshot"),
            }
        }
        let solved = trace.solved();
        assert_eq!(solved[0], ("u", &parse("-q^2")));
        assert_eq!(solved[1], ("v", &parse("p^2")));
    }

    #[test]
    fn four_even_t2_coefficient_vanishes_after_choice() {
        let (rep, _) = derive_four_even();
        let sum = sum_of_cubes(rep.cubes());
        assert!(sum.coefficient_of("t", 2).is_zero());
        assert_eq!(&sum, rep.target());
    }

    #[test]
    fn one_bivariate_matches_catalog() {
        let (rep, trace) = derive_one_bivariate().unwrap();
        let expected = catalog::one_bivariate(ParamValue::Symbolic, ParamValue::Symbolic);
        assert_eq!(rep, expected);

        let solved = trace.solved();
        let (_, y) = solved.last().unwrap();
        assert_eq!(**y, parse("4*m1^2*m2^2 - 2*m1^2 + 4*m1*m2 + 1"));
    }

    #[test]
    fn two_trivariate_matches_catalog_and_solves_m() {
        let (rep, trace) = derive_two_trivariate().unwrap();
        let expected = catalog::two_trivariate(ParamValue::Symbolic, ParamValue::Symbolic);
        assert_eq!(rep, expected);

        let solved = trace.solved();
        let (var, m) = solved.last().unwrap();
        assert_eq!(*var, "m");
        assert_eq!(**m, parse("-6*t^2*(g^3 + h^3)"));
    }

    #[test]
    fn two_trivariate_reduction_step() {
        let lhs = &(&parse("p + 1").pow(3) + &parse("-p + 1").pow(3)) - &parse("2");
        assert_eq!(lhs, parse("6*p^2"));
    }

    #[test]
    fn five_residue_default_shifts_match_catalog() {
        for j in 0..=5u8 {
            let shift = default_shift(j);
            let (rep, _) = derive_five_residue(j, shift).unwrap();
            let expected = catalog::five_cubes_residue(j, ParamValue::Symbolic);
            assert_eq!(rep, expected, "residue class {j}");
        }
    }

    #[test]
    fn five_residue_reports_r0_for_class_three() {
        let (_, trace) = derive_five_residue(3, 3).unwrap();
        let solved = trace.solved();
        let (var, r0) = solved.last().unwrap();
        assert_eq!(*var, "r");
        assert_eq!(**r0, parse("36*t^3 - 54*t^2 + 27*t + m - 4"));
    }

    #[test]
    fn five_residue_alternate_shifts() {
        let (rep4, _) = derive_five_residue(4, -2).unwrap();
        assert_eq!(rep4, catalog::five_cubes_residue(4, ParamValue::Symbolic));
        let (rep5, _) = derive_five_residue(5, -1).unwrap();
        assert_eq!(rep5, catalog::five_cubes_residue(5, ParamValue::Symbolic));
    }

    #[test]
    fn five_residue_rejects_wrong_class() {
        assert_eq!(
            derive_five_residue(1, 2).unwrap_err(),
            DerivationError::ResidueMismatch { j: 1, shift: 2 }
        );
    }

    #[test]
    fn replay_is_byte_deterministic() {
        let (rep, trace) = derive_four_pq().unwrap();
        let replayed = trace.replay();
        assert_eq!(
            serde_json::to_string(&replayed).unwrap(),
            serde_json::to_string(&rep).unwrap()
        );

        let (rep, trace) = derive_two_trivariate().unwrap();
        assert_eq!(
            serde_json::to_string(&trace.replay()).unwrap(),
            serde_json::to_string(&rep).unwrap()
        );
    }

    #[test]
    fn all_derivations_verify_symbolically() {
        let reps = vec![
            derive_four_pq().unwrap().0,
            derive_four_even().0,
            derive_one_bivariate().unwrap().0,
            derive_two_trivariate().unwrap().0,
            derive_five_residue(0, 0).unwrap().0,
        ];
        for rep in reps {
            assert!(verifier_check(&rep).ok);
        }
    }
}
