//! Concrete cube representations of a given integer.
//!
//! Five cubes always work: split `n` as `6m + j` and instantiate the
//! matching residue-class identity. Four cubes work when `n` is of the form
//! `p^3 + q^3` or `2(p^6 - q^6)` for small `p`, `q`, found by bounded trial.

use thiserror::Error;

use crate::catalog::{five_cubes_residue, four_cubes_sum_pq, four_cubes_two_diff};
use crate::representation::{ParamValue, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentError {
    /// Neither family matched within the trial bounds; a bounded search is
    /// the next tool to reach for.
    #[error(
        "{n} matches neither p^3 + q^3 with |p|,|q| <= {sum_bound} nor \
         2*(p^6 - q^6) with |p|,|q| <= {sixth_bound}; try `search`"
    )]
    NoFourCubeFamilyMatch { n: i64, sum_bound: i64, sixth_bound: i64 },
}

/// Five cubes for any integer: `n = 6m + j` with `j = n mod 6`.
pub fn represent_five(n: i64) -> Representation {
    let j = n.rem_euclid(6) as u8;
    let m = (n as i128 - j as i128) / 6;
    five_cubes_residue(j, ParamValue::int(m))
}

/// Largest `r >= 0` with `r^k <= x`, for `x >= 0`.
fn floor_root(x: i128, k: u32) -> i128 {
    debug_assert!(x >= 0);
    if x == 0 {
        return 0;
    }
    let mut r = (x as f64).powf(1.0 / k as f64).round() as i128;
    while r > 0 && r.pow(k) > x {
        r -= 1;
    }
    while (r + 1).pow(k) <= x {
        r += 1;
    }
    r
}

fn ceil_root(x: i128, k: u32) -> i128 {
    let floor = floor_root(x, k);
    if floor.pow(k) == x {
        floor
    } else {
        floor + 1
    }
}

/// `r` with `r^k == x` exactly, if one exists. Negative `x` is allowed for
/// odd `k`.
fn exact_root(x: i128, k: u32) -> Option<i128> {
    if x < 0 {
        if k % 2 == 1 {
            return exact_root(-x, k).map(|r| -r);
        }
        return None;
    }
    let r = floor_root(x, k);
    (r.pow(k) == x).then_some(r)
}

/// Smallest `|p| + |q|` wins; ties go to the lexicographically greatest
/// pair, the convention that reproduces the catalog's documented instances.
fn pick_best(candidates: impl IntoIterator<Item = (i64, i64)>) -> Option<(i64, i64)> {
    candidates
        .into_iter()
        .min_by_key(|&(p, q)| (p.abs() + q.abs(), std::cmp::Reverse((p, q))))
}

/// Four cubes for `n` when a family instance exists within the trial
/// bounds. Tries `p^3 + q^3` first, then `2(p^6 - q^6)`.
pub fn represent_four(n: i64) -> Result<Representation, RepresentError> {
    let n_wide = n as i128;
    let sum_bound = (ceil_root(n_wide.abs(), 3) + 1) as i64;
    let sum_candidates = (-sum_bound..=sum_bound).flat_map(move |p| {
        exact_root(n_wide - (p as i128).pow(3), 3)
            .filter(|q| q.abs() <= sum_bound as i128)
            .map(move |q| (p, q as i64))
    });
    if let Some((p, q)) = pick_best(sum_candidates) {
        return Ok(four_cubes_sum_pq(ParamValue::int(p), ParamValue::int(q)));
    }

    let sixth_bound = (ceil_root(n_wide.abs() / 2, 6) + 1) as i64;
    if n % 2 == 0 {
        let half = n_wide / 2;
        let sixth_candidates = (-sixth_bound..=sixth_bound).flat_map(move |p| {
            exact_root((p as i128).pow(6) - half, 6)
                .filter(|q| q.abs() <= sixth_bound as i128)
                .into_iter()
                .flat_map(move |q| [(p, q as i64), (p, -q as i64)])
        });
        if let Some((p, q)) = pick_best(sixth_candidates) {
            return Ok(four_cubes_two_diff(ParamValue::int(p), ParamValue::int(q)));
        }
    }
    Err(RepresentError::NoFourCubeFamilyMatch { n, sum_bound, sixth_bound })
}
