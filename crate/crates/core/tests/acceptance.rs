//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured numbers (run with `--nocapture` to see them). Every bound is
//! pinned here, in code.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubesum_core::search::orbit_key;
use cubesum_core::{
    catalog_fixed, derive_five_residue, derive_four_even, derive_four_pq, derive_one_bivariate,
    derive_two_trivariate, five_cubes_residue, five_cubes_with_shift, four_cubes_sum_pq,
    four_cubes_two_diff, merge_results, one_bivariate, represent_five, search, search_shard,
    two_trivariate, verifier_check, ParamValue, Polynomial, Representation, SearchSpace,
    FIXED_IDS,
};

fn assert_verifies(rep: &Representation, what: &str) {
    let report = verifier_check(rep);
    assert!(
        report.ok,
        "{what} failed: residual {}",
        report.residual.expect("symbolic check computes a residual")
    );
}

/// Criterion 1: the nine fixed catalog identities verify symbolically with
/// zero residual, in under a second total.
#[test]
fn acceptance_1_catalog_exactness() {
    let start = Instant::now();
    for id in FIXED_IDS {
        let rep = catalog_fixed(id).unwrap();
        assert_verifies(&rep, id);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("ACCEPTANCE 1 PASS: 9 fixed identities, zero residual, {elapsed:?}");
}

/// Criterion 2: the parametrized families verify with every parameter left
/// symbolic — the residual is the zero polynomial in three (or two)
/// variables. Zero tolerance, under a second.
#[test]
fn acceptance_2_family_exactness_symbolic() {
    let start = Instant::now();
    let sym = || ParamValue::Symbolic;
    assert_verifies(&four_cubes_sum_pq(sym(), sym()), "p^3+q^3 family (t, p, q symbolic)");
    assert_verifies(&four_cubes_two_diff(sym(), sym()), "2(p^6-q^6) family (t, p, q symbolic)");
    assert_verifies(&two_trivariate(sym(), sym()), "trivariate family for 2 (t, g, h symbolic)");
    assert_verifies(&one_bivariate(sym(), sym()), "bivariate family for 1 (m1, m2 symbolic)");
    for j in 0..=5u8 {
        assert_verifies(&five_cubes_residue(j, sym()), "five-cube residue family (t, m symbolic)");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("ACCEPTANCE 2 PASS: all families verify symbolically, {elapsed:?}");
}

/// Criterion 3: the documented numeric instances come out byte-exact after
/// canonical ordering.
#[test]
fn acceptance_3_numeric_examples_byte_exact() {
    let cases: [(Representation, &str); 5] = [
        (
            four_cubes_sum_pq(ParamValue::int(2), ParamValue::int(-1)),
            "(2*t^2 - 4*t - 1)^3 + (2*t^2 - 4*t - 4)^3 + (-2*t^2 + 5*t + 2)^3 + (-2*t^2 + 3*t + 4)^3 = 7",
        ),
        (
            four_cubes_sum_pq(ParamValue::int(2), ParamValue::int(1)),
            "(6*t^2 + 4*t + 1)^3 + (6*t^2 + 4*t)^3 + (-6*t^2 - t + 2)^3 + (-6*t^2 - 7*t)^3 = 9",
        ),
        (
            four_cubes_two_diff(ParamValue::int(2), ParamValue::int(1)),
            "(2*t - 1)^3 + (-2*t - 1)^3 + (t + 4)^3 + (-t + 4)^3 = 126",
        ),
        (
            five_cubes_residue(3, ParamValue::int(0)),
            "(36*t^3 - 54*t^2 + 27*t - 3)^3 + (36*t^3 - 54*t^2 + 27*t - 5)^3 + \
             (-36*t^3 + 54*t^2 - 27*t + 4)^3 + (-36*t^3 + 54*t^2 - 27*t + 4)^3 + (-6*t + 3)^3 = 3",
        ),
        (
            five_cubes_residue(4, ParamValue::int(0)),
            "(36*t^3 + 36*t^2 + 12*t + 3)^3 + (36*t^3 + 36*t^2 + 12*t + 1)^3 + \
             (-36*t^3 - 36*t^2 - 12*t - 2)^3 + (-36*t^3 - 36*t^2 - 12*t - 2)^3 + (-6*t - 2)^3 = 4",
        ),
    ];
    for (rep, expected) in &cases {
        assert_eq!(&rep.to_text(), expected);
        assert_verifies(rep, expected);
    }
    println!("ACCEPTANCE 3 PASS: 7, 9, 126, 3, 4 reproduced byte-exactly");
}

/// Criterion 4: every n in [-10000, 10000] gets a verifying five-cube
/// representation, all inside a minute.
#[test]
fn acceptance_4_five_cubes_for_every_small_integer() {
    let start = Instant::now();
    for n in -10_000i64..=10_000 {
        let rep = represent_five(n);
        assert_eq!(rep.target(), &Polynomial::constant(n));
        let report = verifier_check(&rep);
        assert!(report.ok, "five-cube representation of {n} does not verify");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("ACCEPTANCE 4 PASS: 20001 integers represented and verified in {elapsed:?}");
}

/// Criterion 5: each derivation reproduces its catalog constructor exactly
/// (byte-identical target and cube serialization after canonical ordering),
/// and the five-cube derivation generalizes to every shift in the right
/// residue class with |shift| <= 25.
#[test]
fn acceptance_5_derivation_equivalence() {
    let sym = || ParamValue::Symbolic;
    let pairs: Vec<(&str, Representation, Representation)> = vec![
        ("four_pq", derive_four_pq().unwrap().0, four_cubes_sum_pq(sym(), sym())),
        ("four_even", derive_four_even().0, four_cubes_two_diff(sym(), sym())),
        ("one_bivariate", derive_one_bivariate().unwrap().0, one_bivariate(sym(), sym())),
        ("two_trivariate", derive_two_trivariate().unwrap().0, two_trivariate(sym(), sym())),
    ];
    for (name, derived, constructed) in &pairs {
        assert_eq!(derived, constructed, "{name} derivation diverges from the catalog");
        let derived_wire =
            serde_json::to_string(&(derived.target(), derived.cubes())).unwrap();
        let constructed_wire =
            serde_json::to_string(&(constructed.target(), constructed.cubes())).unwrap();
        assert_eq!(derived_wire, constructed_wire, "{name} serialization differs");
    }
    for j in 0..=5u8 {
        let (derived, _) = derive_five_residue(j, [0, 1, 2, 3, -2, -1][j as usize]).unwrap();
        let constructed = five_cubes_residue(j, sym());
        assert_eq!(derived, constructed, "five-cube residue {j}");
    }

    let mut generalized = 0usize;
    for j in 0..=5u8 {
        for shift in -25i64..=25 {
            if (shift - j as i64).rem_euclid(6) != 0 {
                assert!(five_cubes_with_shift(j, shift, ParamValue::Symbolic).is_none());
                continue;
            }
            let (rep, _) = derive_five_residue(j, shift).unwrap();
            assert_verifies(&rep, &format!("five cubes j={j} shift={shift}"));
            assert_eq!(rep, five_cubes_with_shift(j, shift, ParamValue::Symbolic).unwrap());
            generalized += 1;
        }
    }
    assert_eq!(generalized, 51, "expected the full shift sweep");
    println!(
        "ACCEPTANCE 5 PASS: derivations match the catalog; {generalized} shifted five-cube identities verify"
    );
}

/// Criterion 6: the searcher rediscovers the quadratic identities for 1 and
/// 2 at max_degree 2, coeff_bound 2, and sharded runs merge to the unsharded
/// result. Well under the five-minute budget.
#[test]
fn acceptance_6_searcher_rediscovery() {
    let start = Instant::now();
    for (target, id) in [(1i64, "one_quadratic"), (2, "two_quadratic")] {
        let space = SearchSpace::new(target, 4, 2, 2);
        let full = search(&space).unwrap();
        let wanted = orbit_key(&catalog_fixed(id).unwrap());
        assert!(
            full.found.iter().any(|r| orbit_key(r) == wanted),
            "search for {target} does not rediscover {id}"
        );
        for rep in &full.found {
            assert!(verifier_check(rep).ok);
        }

        let shards: Vec<_> = (0..4).map(|i| search_shard(&space, i, 4).unwrap()).collect();
        assert_eq!(
            shards.iter().map(|s| s.states_examined).sum::<u64>(),
            full.states_examined,
            "shards do not partition the search"
        );
        let merged = merge_results(shards);
        let full_keys: Vec<String> = full.found.iter().map(|r| r.to_text()).collect();
        let merged_keys: Vec<String> = merged.found.iter().map(|r| r.to_text()).collect();
        assert_eq!(full_keys, merged_keys, "sharded and unsharded found sets differ");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!("ACCEPTANCE 6 PASS: known identities rediscovered, shards merge exactly, {elapsed:?}");
}

/// Criterion 7: 1000 randomly perturbed catalog identities all fail
/// verification. Zero false accepts.
#[test]
fn acceptance_7_planted_fault_detection() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let pool: Vec<Representation> = FIXED_IDS
        .iter()
        .map(|id| catalog_fixed(id).unwrap())
        .chain((0..=5u8).map(|j| five_cubes_residue(j, ParamValue::int(7))))
        .chain([
            four_cubes_sum_pq(ParamValue::int(3), ParamValue::int(2)),
            four_cubes_two_diff(ParamValue::int(3), ParamValue::int(1)),
            two_trivariate(ParamValue::int(2), ParamValue::int(1)),
            one_bivariate(ParamValue::int(2), ParamValue::int(3)),
        ])
        .collect();

    let mut false_accepts = 0usize;
    for _ in 0..1000 {
        let base = &pool[rng.gen_range(0..pool.len())];
        let cube_index = rng.gen_range(0..base.arity());
        let vars: Vec<String> = if base.cubes()[cube_index].vars().is_empty() {
            vec!["t".to_string()]
        } else {
            base.cubes()[cube_index].vars().to_vec()
        };
        let var = &vars[rng.gen_range(0..vars.len())];
        let exponent = rng.gen_range(0..=3u32);
        let coeff = loop {
            let c = rng.gen_range(-9i64..=9);
            if c != 0 {
                break c;
            }
        };
        let noise = Polynomial::from_terms(&[var.as_str()], [(vec![exponent], coeff)]);
        let mut cubes = base.cubes().to_vec();
        cubes[cube_index] = &cubes[cube_index] + &noise;
        let broken = Representation::new(base.target().clone(), cubes);
        if verifier_check(&broken).ok {
            false_accepts += 1;
        }
    }
    assert_eq!(false_accepts, 0, "{false_accepts} perturbed identities passed verification");
    println!("ACCEPTANCE 7 PASS: 1000 planted faults, 0 false accepts");
}

/// Criterion 8: scaling the three-cube identities by a^3 works for every
/// a in [-20, 20].
#[test]
fn acceptance_8_scaling_law() {
    let werebrusow = catalog_fixed("werebrusow").unwrap();
    let mahler = catalog_fixed("mahler").unwrap();
    for a in -20i64..=20 {
        let a_big = BigInt::from(a);
        let scaled2 = werebrusow.scale(&a_big);
        assert_eq!(scaled2.target(), &Polynomial::constant(2 * a * a * a));
        assert_verifies(&scaled2, &format!("werebrusow scaled by {a}"));

        let scaled1 = mahler.scale(&a_big);
        assert_eq!(scaled1.target(), &Polynomial::constant(a * a * a));
        assert_verifies(&scaled1, &format!("mahler scaled by {a}"));
    }
    println!("ACCEPTANCE 8 PASS: scaling by every a in [-20, 20] verifies");
}

/// The spot-check oracle agrees with the symbolic verdict on the cataloged
/// identities at integer points (supporting check for the report format).
#[test]
fn acceptance_supporting_spot_checks() {
    let rep = five_cubes_residue(3, ParamValue::int(0));
    let points: Vec<BTreeMap<String, BigInt>> = (-2..=2)
        .map(|t| BTreeMap::from([("t".to_string(), BigInt::from(t))]))
        .collect();
    let report = cubesum_core::verifier_spot_check(&rep, &points).unwrap();
    assert!(report.ok);
    println!("ACCEPTANCE SUPPORT PASS: numeric spot checks agree with the symbolic verdict");
}
