//! Constructors for the catalog of cube identities.
//!
//! The catalog has two kinds of entries. *Fixed* entries are specific
//! identities stored verbatim (`werebrusow`, `mahler`, the univariate
//! identities for 1 and 2, and the bivariate system for 1). *Families* are
//! parametrized constructors: parameters may stay symbolic, in which case
//! the output polynomials keep them as variables, or be bound to integers,
//! which is plain substitution into the symbolic form.

use num_bigint::BigInt;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::poly::Polynomial;
use crate::representation::{ParamValue, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown identity `{id}`")]
    UnknownIdentity { id: String },
}

/// Descriptor for a parametrized identity schema.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IdentityFamily {
    pub id: &'static str,
    pub arity: usize,
    pub symbolic_params: &'static [&'static str],
    pub free_vars: &'static [&'static str],
    pub description: &'static str,
}

/// The five parametrized families, ordered by id.
pub fn families() -> Vec<IdentityFamily> {
    vec![
        IdentityFamily {
            id: "five_residue",
            arity: 5,
            symbolic_params: &["m"],
            free_vars: &["t"],
            description: "five cubes for 6m+j, one family per residue j mod 6",
        },
        IdentityFamily {
            id: "four_even",
            arity: 4,
            symbolic_params: &["p", "q"],
            free_vars: &["t"],
            description: "four cubes for 2(p^6-q^6) from even-power cancellation",
        },
        IdentityFamily {
            id: "four_pq",
            arity: 4,
            symbolic_params: &["p", "q"],
            free_vars: &["t"],
            description: "four cubes for p^3+q^3 from the linear ansatz",
        },
        IdentityFamily {
            id: "one_bivariate",
            arity: 4,
            symbolic_params: &["m1", "m2"],
            free_vars: &[],
            description: "four cubes for 1 in two parameters",
        },
        IdentityFamily {
            id: "two_trivariate",
            arity: 4,
            symbolic_params: &["g", "h"],
            free_vars: &["t"],
            description: "four cubes for 2 in three variables",
        },
    ]
}

/// Ids of the fixed catalog entries, ordered.
pub const FIXED_IDS: [&str; 9] = [
    "mahler",
    "one_bivariate",
    "one_cubic",
    "one_deg6",
    "one_quadratic",
    "two_cubic_18",
    "two_cubic_3",
    "two_quadratic",
    "werebrusow",
];

fn p(text: &str) -> Polynomial {
    Polynomial::parse(text).expect("catalog literals parse")
}

fn build(
    id: &str,
    params: Vec<(String, ParamValue)>,
    ambient: &[&str],
    target: &str,
    cubes: &[&str],
) -> Representation {
    let bindings: BTreeMap<String, Polynomial> = params
        .iter()
        .filter_map(|(name, value)| match value {
            ParamValue::Int(n) => Some((name.clone(), Polynomial::constant(n.clone()))),
            ParamValue::Symbolic => None,
        })
        .collect();
    let polys: Vec<Polynomial> = std::iter::once(target)
        .chain(cubes.iter().copied())
        .map(|text| p(text).substitute(&bindings))
        .collect();
    // Shared ambient in the declared order, restricted to what survives the
    // parameter bindings.
    let keep: Vec<&str> = ambient
        .iter()
        .copied()
        .filter(|v| polys.iter().any(|poly| poly.support_vars().contains(v)))
        .collect();
    let mut polys = polys
        .into_iter()
        .map(|poly| poly.reambient(&keep).expect("catalog ambient covers the support"));
    let target = polys.next().expect("target present");
    Representation::with_metadata(Some(id.to_string()), params, target, polys.collect())
}

/// Four cubes in `t` summing to `p^3 + q^3`.
pub fn four_cubes_sum_pq(p_val: ParamValue, q_val: ParamValue) -> Representation {
    build(
        "four_pq",
        vec![("p".to_string(), p_val), ("q".to_string(), q_val)],
        &["t", "p", "q"],
        "p^3 + q^3",
        &[
            "2*(p + q)*t^2 + 4*q*t + q",
            "2*(p + q)*t^2 + 4*q*t - p + 2*q",
            "-2*(p + q)*t^2 + (p - 3*q)*t + p",
            "-2*(p + q)*t^2 - (p + 5*q)*t + p - 2*q",
        ],
    )
}

/// Four cubes in `t` summing to `2(p^6 - q^6)`.
pub fn four_cubes_two_diff(p_val: ParamValue, q_val: ParamValue) -> Representation {
    build(
        "four_even",
        vec![("p".to_string(), p_val), ("q".to_string(), q_val)],
        &["t", "p", "q"],
        "2*(p^6 - q^6)",
        &["p*t - q^2", "-p*t - q^2", "q*t + p^2", "-q*t + p^2"],
    )
}

/// Four cubes in the parameters `m1`, `m2` summing to 1.
pub fn one_bivariate(m1: ParamValue, m2: ParamValue) -> Representation {
    build(
        "one_bivariate",
        vec![("m1".to_string(), m1), ("m2".to_string(), m2)],
        &["m1", "m2"],
        "1",
        &[
            "2*(2*m2^2 - 1)^2*m1^2 + 4*m2*(2*m2^2 - 1)*m1 + 2*m2^2",
            "-2*(2*m2^2 - 1)^2*m1^2 - (4*m2 - 1)*(2*m2^2 - 1)*m1 - (2*m2 + 1)*(m2 - 1)",
            "-2*(2*m2^2 - 1)^2*m1^2 - (4*m2 + 1)*(2*m2^2 - 1)*m1 - (m2 + 1)*(2*m2 - 1)",
            "2*(2*m2^2 - 1)^2*m1^2 + 4*m2*(2*m2^2 - 1)*m1 + 2*m2^2 - 1",
        ],
    )
}

/// Four cubes in `t`, `g`, `h` summing to 2.
pub fn two_trivariate(g: ParamValue, h: ParamValue) -> Representation {
    build(
        "two_trivariate",
        vec![("g".to_string(), g), ("h".to_string(), h)],
        &["t", "g", "h"],
        "2",
        &[
            "6*t^3*(g^3 + h^3)^2 + 1",
            "-6*t^3*(g^3 + h^3)^2 + 1",
            "-6*g*t^2*(g^3 + h^3)",
            "-6*h*t^2*(g^3 + h^3)",
        ],
    )
}

/// The shift added per residue class `j` that keeps the five-cube identity's
/// coefficients smallest (classes 4 and 5 use a negative representative).
pub const DEFAULT_SHIFTS: [i64; 6] = [0, 1, 2, 3, -2, -1];

/// Five cubes in `t` summing to `6m + j`, for a residue `j` in `0..=5`.
/// The doubled cube appears twice in the list.
pub fn five_cubes_residue(j: u8, m: ParamValue) -> Representation {
    assert!(j <= 5, "residue j must lie in 0..=5");
    let shift = DEFAULT_SHIFTS[j as usize];
    five_cubes_with_shift(j, shift, m).expect("default shift matches its residue class")
}

/// Generalized five-cube construction: any `shift` congruent to `j` mod 6
/// works, because `shift^3 - shift` is always divisible by 6. Returns `None`
/// when the congruence fails.
pub fn five_cubes_with_shift(j: u8, shift: i64, m: ParamValue) -> Option<Representation> {
    assert!(j <= 5, "residue j must lie in 0..=5");
    if (shift - j as i64).rem_euclid(6) != 0 {
        return None;
    }
    // r0 = 36 t^3 - 18 s t^2 + 3 s^2 t + m + (j - s^3)/6
    let s = BigInt::from(shift);
    let constant = (BigInt::from(j) - s.pow(3)) / BigInt::from(6);
    let r0 = Polynomial::from_terms(
        &["t", "m"],
        [
            (vec![3, 0], BigInt::from(36)),
            (vec![2, 0], BigInt::from(-18) * &s),
            (vec![1, 0], BigInt::from(3) * s.pow(2)),
            (vec![0, 1], BigInt::from(1)),
            (vec![0, 0], constant),
        ],
    );
    let one = Polynomial::one();
    let trailing = Polynomial::from_terms(
        &["t", "m"],
        [(vec![1, 0], BigInt::from(-6)), (vec![0, 0], s)],
    );
    let target = Polynomial::from_terms(
        &["t", "m"],
        [(vec![0, 1], BigInt::from(6)), (vec![0, 0], BigInt::from(j))],
    );
    let cubes = vec![&r0 + &one, &r0 - &one, -&r0, -&r0, trailing];
    let bindings: BTreeMap<String, Polynomial> = match &m {
        ParamValue::Int(n) => {
            BTreeMap::from([("m".to_string(), Polynomial::constant(n.clone()))])
        }
        ParamValue::Symbolic => BTreeMap::new(),
    };
    let rep = Representation::with_metadata(
        Some("five_residue".to_string()),
        vec![("j".to_string(), ParamValue::int(j)), ("m".to_string(), m)],
        target.substitute(&bindings),
        cubes.into_iter().map(|c| c.substitute(&bindings)).collect(),
    );
    Some(rep)
}

/// Look up one of the nine fixed catalog entries by id.
pub fn catalog_fixed(id: &str) -> Result<Representation, CatalogError> {
    let entry = |target: &str, cubes: &[&str]| {
        Representation::with_metadata(
            Some(id.to_string()),
            Vec::new(),
            p(target),
            cubes.iter().map(|c| p(c)).collect(),
        )
    };
    match id {
        "werebrusow" => Ok(entry("2", &["1 + 6*t^3", "1 - 6*t^3", "-6*t^2"])),
        "mahler" => Ok(entry("1", &["9*t^4", "3*t - 9*t^4", "1 - 9*t^3"])),
        "one_quadratic" => {
            Ok(entry("1", &["2*t^2", "2*t^2 - 1", "-2*t^2 - t + 1", "-2*t^2 + t + 1"]))
        }
        "one_cubic" => Ok(entry(
            "1",
            &[
                "8*t^3 - 2*t^2 - 4*t + 1",
                "8*t^3 - 6*t^2 - 3*t + 2",
                "-8*t^3 + 2*t^2 + 3*t",
                "-8*t^3 + 6*t^2 + 4*t - 2",
            ],
        )),
        "one_deg6" => Ok(entry(
            "1",
            &["3*t^6 + 3*t^3 + 1", "-3*t^3*(t^3 + 1)", "-3*t^4 - 2*t", "-t"],
        )),
        "two_quadratic" => {
            Ok(entry("2", &["t^2", "t^2", "-t^2 + t + 1", "-t^2 - t + 1"]))
        }
        "two_cubic_3" => Ok(entry("2", &["3*t^3 + 1", "-3*t^3 + 1", "-3*t^2", "-3*t^2"])),
        "two_cubic_18" => {
            Ok(entry("2", &["18*t^3 + 1", "-18*t^3 + 1", "-6*t^2", "-12*t^2"]))
        }
        "one_bivariate" => Ok(one_bivariate(ParamValue::Symbolic, ParamValue::Symbolic)),
        _ => Err(CatalogError::UnknownIdentity { id: id.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verifier_check;
    use num_bigint::BigInt;
    use std::collections::BTreeMap;

    fn assert_cubes(r: &Representation, expected: &[&str]) {
        let got: Vec<String> = r.cubes().iter().map(|c| c.to_string()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn four_pq_reproduces_seven() {
        let r = four_cubes_sum_pq(ParamValue::int(2), ParamValue::int(-1));
        assert_eq!(r.target().to_string(), "7");
        assert_cubes(&r, &["2*t^2 - 4*t - 1", "2*t^2 - 4*t - 4", "-2*t^2 + 5*t + 2", "-2*t^2 + 3*t + 4"]);
        assert!(verifier_check(&r).ok);
    }

    #[test]
    fn four_pq_reproduces_nine() {
        let r = four_cubes_sum_pq(ParamValue::int(2), ParamValue::int(1));
        assert_eq!(r.target().to_string(), "9");
        assert_cubes(&r, &["6*t^2 + 4*t + 1", "6*t^2 + 4*t", "-6*t^2 - t + 2", "-6*t^2 - 7*t"]);
    }

    #[test]
    fn four_pq_fully_degenerate_at_zero() {
        let r = four_cubes_sum_pq(ParamValue::int(0), ParamValue::int(0));
        assert!(r.target().is_zero());
        assert!(r.cubes().iter().all(|c| c.is_zero()));
        assert!(verifier_check(&r).ok);
    }

    #[test]
    fn four_pq_symbolic_verifies_in_three_variables() {
        let r = four_cubes_sum_pq(ParamValue::Symbolic, ParamValue::Symbolic);
        assert_eq!(r.target().to_string(), "p^3 + q^3");
        assert!(verifier_check(&r).ok);
    }

    #[test]
    fn four_even_reproduces_126() {
        let r = four_cubes_two_diff(ParamValue::int(2), ParamValue::int(1));
        assert_eq!(r.target().to_string(), "126");
        assert_cubes(&r, &["2*t - 1", "-2*t - 1", "t + 4", "-t + 4"]);
    }

    #[test]
    fn four_even_equal_parameters_give_zero_target() {
        let r = four_cubes_two_diff(ParamValue::Symbolic, ParamValue::Symbolic);
        let bound = r.substitute(&BTreeMap::from([("q".to_string(), Polynomial::var("p"))]));
        assert!(bound.target().is_zero());
        assert!(verifier_check(&bound).ok);
    }

    #[test]
    fn four_even_unit_parameters() {
        let r = four_cubes_two_diff(ParamValue::int(1), ParamValue::int(0));
        assert_eq!(r.target().to_string(), "2");
        assert_cubes(&r, &["t", "-t", "1", "1"]);
        assert!(verifier_check(&r).ok);
    }

    #[test]
    fn one_bivariate_symbolic_verifies() {
        let r = one_bivariate(ParamValue::Symbolic, ParamValue::Symbolic);
        assert_eq!(r.target().to_string(), "1");
        assert!(verifier_check(&r).ok);
        assert_eq!(r.cubes()[0].to_string(), "8*m1^2*m2^4 - 8*m1^2*m2^2 + 8*m1*m2^3 + 2*m1^2 - 4*m1*m2 + 2*m2^2");
    }

    #[test]
    fn one_bivariate_degenerate_tuples() {
        // (0,0) evaluates to the integer tuple (0, 1, 1, -1): 0+1+1-1 = 1.
        let r = one_bivariate(ParamValue::int(0), ParamValue::int(0));
        let got: Vec<String> = r.cubes().iter().map(|c| c.to_string()).collect();
        assert_eq!(got, ["1", "1", "-1", "0"]);
        assert!(verifier_check(&r).ok);

        // (1,1) gives (8, -5, -9, 7): 512 - 125 - 729 + 343 = 1.
        let r = one_bivariate(ParamValue::int(1), ParamValue::int(1));
        let got: Vec<String> = r.cubes().iter().map(|c| c.to_string()).collect();
        assert_eq!(got, ["-9", "8", "7", "-5"]);
        assert!(verifier_check(&r).ok);
    }

    #[test]
    fn two_trivariate_symbolic_and_bound() {
        let r = two_trivariate(ParamValue::Symbolic, ParamValue::Symbolic);
        assert_eq!(r.target().to_string(), "2");
        assert!(verifier_check(&r).ok);

        let r = two_trivariate(ParamValue::int(1), ParamValue::int(1));
        assert_cubes(&r, &["24*t^3 + 1", "-24*t^3 + 1", "-12*t^2", "-12*t^2"]);

        // g^3 + h^3 = 0 collapses every t-term.
        let r = two_trivariate(ParamValue::int(1), ParamValue::int(-1));
        assert_cubes(&r, &["1", "1", "0", "0"]);
        assert!(verifier_check(&r).ok);
    }

    #[test]
    fn five_cubes_three_and_four() {
        let r = five_cubes_residue(3, ParamValue::int(0));
        assert_eq!(r.target().to_string(), "3");
        assert_cubes(&r, &[
            "36*t^3 - 54*t^2 + 27*t - 3",
            "36*t^3 - 54*t^2 + 27*t - 5",
            "-36*t^3 + 54*t^2 - 27*t + 4",
            "-36*t^3 + 54*t^2 - 27*t + 4",
            "-6*t + 3",
        ]);

        let r = five_cubes_residue(4, ParamValue::int(0));
        assert_eq!(r.target().to_string(), "4");
        assert_cubes(&r, &[
            "36*t^3 + 36*t^2 + 12*t + 3",
            "36*t^3 + 36*t^2 + 12*t + 1",
            "-36*t^3 - 36*t^2 - 12*t - 2",
            "-36*t^3 - 36*t^2 - 12*t - 2",
            "-6*t - 2",
        ]);
    }

    #[test]
    fn five_cubes_symbolic_residue_zero() {
        let r = five_cubes_residue(0, ParamValue::Symbolic);
        assert_eq!(r.target().to_string(), "6*m");
        assert_cubes(&r, &["36*t^3 + m + 1", "36*t^3 + m - 1", "-36*t^3 - m", "-36*t^3 - m", "-6*t"]);
        assert!(verifier_check(&r).ok);
    }

    #[test]
    fn five_cubes_with_mismatched_shift_is_rejected() {
        assert!(five_cubes_with_shift(1, 2, ParamValue::Symbolic).is_none());
        assert!(five_cubes_with_shift(4, -2, ParamValue::Symbolic).is_some());
    }

    #[test]
    fn fixed_entries_all_resolve() {
        for id in FIXED_IDS {
            let r = catalog_fixed(id).unwrap();
            assert_eq!(r.id(), Some(id));
            assert!(verifier_check(&r).ok, "{id} fails verification");
        }
        assert_eq!(
            catalog_fixed("nope"),
            Err(CatalogError::UnknownIdentity { id: "nope".to_string() })
        );
    }

    #[test]
    fn fixed_werebrusow_and_mahler_and_deg6() {
        let r = catalog_fixed("werebrusow").unwrap();
        assert_eq!(r.target().to_string(), "2");
        assert_cubes(&r, &["6*t^3 + 1", "-6*t^3 + 1", "-6*t^2"]);

        let r = catalog_fixed("mahler").unwrap();
        assert_eq!(r.target().to_string(), "1");
        assert_cubes(&r, &["9*t^4", "-9*t^4 + 3*t", "-9*t^3 + 1"]);

        let r = catalog_fixed("one_deg6").unwrap();
        assert_cubes(&r, &["3*t^6 + 3*t^3 + 1", "-3*t^6 - 3*t^3", "-3*t^4 - 2*t", "-t"]);
    }

    #[test]
    fn scaling_werebrusow_and_mahler() {
        let werebrusow = catalog_fixed("werebrusow").unwrap();
        let scaled = werebrusow.scale(&BigInt::from(5));
        assert_eq!(scaled.target().to_string(), "250");
        assert!(verifier_check(&scaled).ok);

        let mahler = catalog_fixed("mahler").unwrap();
        let doubled = mahler.scale(&BigInt::from(2));
        assert_eq!(doubled.target().to_string(), "8");
        assert_cubes(&doubled, &["18*t^4", "-18*t^4 + 6*t", "-18*t^3 + 2"]);
        assert!(verifier_check(&doubled).ok);
    }

    #[test]
    fn parametrized_sweep_verifies() {
        // Every family instance over a small parameter box passes the
        // verifier exactly.
        for p in -5i64..=5 {
            for q in -5i64..=5 {
                assert!(
                    verifier_check(&four_cubes_sum_pq(ParamValue::int(p), ParamValue::int(q))).ok,
                    "four_pq({p},{q})"
                );
                assert!(
                    verifier_check(&four_cubes_two_diff(ParamValue::int(p), ParamValue::int(q))).ok,
                    "four_even({p},{q})"
                );
                assert!(
                    verifier_check(&one_bivariate(ParamValue::int(p), ParamValue::int(q))).ok,
                    "one_bivariate({p},{q})"
                );
                assert!(
                    verifier_check(&two_trivariate(ParamValue::int(p), ParamValue::int(q))).ok,
                    "two_trivariate({p},{q})"
                );
            }
        }
        for j in 0..=5u8 {
            for m in (-50i64..=50).step_by(10) {
                let rep = five_cubes_residue(j, ParamValue::int(m));
                assert!(verifier_check(&rep).ok, "five_cubes({j},{m})");
            }
        }
    }

    #[test]
    fn five_cubes_shape_invariants() {
        use num_integer::Integer;
        for j in 0..=5u8 {
            let rep = five_cubes_residue(j, ParamValue::Symbolic);
            let constant = rep.target().constant_term();
            assert_eq!(constant.mod_floor(&BigInt::from(6)), BigInt::from(j));
            let degree = rep.cubes().iter().map(|c| c.degree_in("t")).max().unwrap();
            assert_eq!(degree, 3);
        }
    }

    #[test]
    fn four_pq_antisymmetric_parameters_still_verify() {
        // The derivation divides by p + q, yet the finished identity remains
        // well-defined (and true) at q = -p: the cubes collapse to two
        // cancelling linear pairs.
        let symbolic = four_cubes_sum_pq(ParamValue::Symbolic, ParamValue::Symbolic);
        let pinned = symbolic
            .substitute(&BTreeMap::from([("q".to_string(), -&Polynomial::var("p"))]));
        assert!(pinned.target().is_zero());
        assert!(verifier_check(&pinned).ok);

        let concrete = four_cubes_sum_pq(ParamValue::int(2), ParamValue::int(-2));
        assert!(verifier_check(&concrete).ok);
        assert_eq!(concrete.cubes()[0].to_string(), "8*t + 6");
    }

    #[test]
    fn fixed_entries_roundtrip_their_formats() {
        // Text, JSON, and LaTeX renderings denote the same polynomials; the
        // JSON round trip is the oracle, and each cube's text form parses
        // back to the cube itself.
        for id in FIXED_IDS {
            let rep = catalog_fixed(id).unwrap();
            let back: Representation =
                serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
            assert_eq!(back, rep, "{id} JSON roundtrip");
            for cube in rep.cubes() {
                assert_eq!(&Polynomial::parse(&cube.to_string()).unwrap(), cube, "{id} text");
                assert!(!cube.to_latex().is_empty());
            }
        }
    }

    #[test]
    fn family_descriptors_are_unique_and_sorted() {
        let fams = families();
        let ids: Vec<&str> = fams.iter().map(|f| f.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }
}
