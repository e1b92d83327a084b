//! Bounded exhaustive search for cube representations of small integers.
//!
//! Candidate cubes are univariate polynomials in `t` with degree at most
//! `max_degree` and coefficients in `[-coeff_bound, coeff_bound]`. The
//! searcher enumerates unordered multisets of candidates, so permutations of
//! the cube list are never visited twice, and prunes on a necessary
//! condition: the top coefficient of the expanded sum (of `t^(3*max_degree)`)
//! is the sum of the cubed leading coefficients, which must match the
//! target's. The last cube is resolved by hash lookup against the required
//! residual vector instead of being enumerated.
//!
//! `states_examined` counts the complete prefix tuples (all cubes but the
//! last) whose final lookup ran. Shards partition the admissible leading
//! tuples round-robin, so the examined counts of the shards of a run always
//! sum to the unsharded count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::poly::Polynomial;
use crate::representation::Representation;
use crate::verify::verifier_check;

/// Default cap on the predicted number of states for one run.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    /// The predicted enumeration exceeds the budget; shrink the bounds or
    /// shard the run.
    #[error("predicted {predicted} states exceed the budget of {budget}")]
    BudgetExceeded { predicted: u128, budget: u64 },
    #[error("shard index {index} out of range for {total} shards")]
    InvalidShard { index: u32, total: u32 },
    #[error("invalid search space: {reason}")]
    InvalidSpace { reason: String },
}

/// Pruning mode for the leading-coefficient tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryMode {
    /// Exhaustive over all admissible leading tuples.
    None,
    /// Restrict to tuples whose nonzero leading coefficients cancel in
    /// `(a, -a)` pairs, the shape every cataloged identity has. This mode
    /// can miss representations outside that shape.
    PairCancellation,
}

/// Bounds and shape of one search run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub target: i64,
    pub num_cubes: u8,
    pub max_degree: u32,
    pub coeff_bound: u32,
    pub symmetry: SymmetryMode,
    pub budget: u64,
}

impl SearchSpace {
    pub fn new(target: i64, num_cubes: u8, max_degree: u32, coeff_bound: u32) -> Self {
        SearchSpace {
            target,
            num_cubes,
            max_degree,
            coeff_bound,
            symmetry: SymmetryMode::None,
            budget: DEFAULT_BUDGET,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if !(3..=5).contains(&self.num_cubes) {
            return Err(SearchError::InvalidSpace {
                reason: format!("num_cubes must be 3, 4, or 5, got {}", self.num_cubes),
            });
        }
        if self.coeff_bound < 1 {
            return Err(SearchError::InvalidSpace {
                reason: "coeff_bound must be at least 1".to_string(),
            });
        }
        Ok(())
    }
}

/// Outcome of a (possibly sharded) search run.
#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    /// Verified representations in canonical orbit form, deduplicated under
    /// cube permutations, `t -> -t`, and integer shifts of `t`, sorted by
    /// their canonical serialization.
    pub found: Vec<Representation>,
    pub states_examined: u64,
    /// Last admissible leading tuple this run enumerated (checkpoint field).
    pub last_leading_tuple: Option<Vec<i64>>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Checkpoint/result file schema written by `search --out`.
#[derive(Debug, Clone, Serialize)]
pub struct SearchCheckpoint<'a> {
    pub space: &'a SearchSpace,
    pub shard: (u32, u32),
    pub last_leading_tuple: &'a Option<Vec<i64>>,
    pub states_examined: u64,
    pub found: Vec<FoundEntry<'a>>,
}

/// One found representation plus its degeneracy flag (a zero cube means the
/// representation collapses to fewer cubes).
#[derive(Debug, Clone, Serialize)]
pub struct FoundEntry<'a> {
    pub representation: &'a Representation,
    pub degenerate: bool,
}

impl SearchResult {
    pub fn checkpoint<'a>(
        &'a self,
        space: &'a SearchSpace,
        shard: (u32, u32),
    ) -> SearchCheckpoint<'a> {
        SearchCheckpoint {
            space,
            shard,
            last_leading_tuple: &self.last_leading_tuple,
            states_examined: self.states_examined,
            found: self
                .found
                .iter()
                .map(|r| FoundEntry { representation: r, degenerate: r.has_zero_cube() })
                .collect(),
        }
    }
}

/// Exhaustive search over the full space.
pub fn search(space: &SearchSpace) -> Result<SearchResult, SearchError> {
    search_shard(space, 0, 1)
}

/// One shard of the search. Shard `index` of `total` processes every
/// admissible leading tuple whose enumeration index is congruent to `index`
/// mod `total`; the union of all shards equals the unsharded run.
pub fn search_shard(
    space: &SearchSpace,
    index: u32,
    total: u32,
) -> Result<SearchResult, SearchError> {
    space.validate()?;
    if total == 0 || index >= total {
        return Err(SearchError::InvalidShard { index, total });
    }
    let start = Instant::now();
    // Cheap lower bound before any allocation: the candidate grid itself,
    // the leading-tuple enumeration, and the work of a single leading tuple
    // must all fit the budget.
    let width = (2 * space.coeff_bound as u128) + 1;
    let block = width.saturating_pow(space.max_degree);
    let grid_cost = block.saturating_mul(width);
    let floor_estimate = grid_cost
        .max(multichoose(width, space.num_cubes as u128))
        .max(multichoose(block, space.num_cubes as u128 - 1));
    if floor_estimate > space.budget as u128 {
        return Err(SearchError::BudgetExceeded { predicted: floor_estimate, budget: space.budget });
    }
    if grid_cost > u32::MAX as u128 {
        return Err(SearchError::InvalidSpace {
            reason: format!("candidate grid of {grid_cost} polynomials is not addressable"),
        });
    }

    let grid = Grid::new(space);
    let leading = grid.admissible_leading_tuples(space);
    let mine: Vec<&Vec<i64>> = leading
        .iter()
        .enumerate()
        .filter(|(i, _)| (*i as u32) % total == index)
        .map(|(_, t)| t)
        .collect();

    let predicted = predicted_states(&grid, mine.iter().copied());
    if predicted > space.budget as u128 {
        return Err(SearchError::BudgetExceeded { predicted, budget: space.budget });
    }

    let mut states: u64 = 0;
    let mut found: BTreeMap<String, Representation> = BTreeMap::new();
    let mut last_tuple = None;
    for tuple in &mine {
        grid.enumerate_tuple(space, tuple, &mut states, &mut found);
        last_tuple = Some((*tuple).clone());
    }

    Ok(SearchResult {
        found: found.into_values().collect(),
        states_examined: states,
        last_leading_tuple: last_tuple,
        elapsed: start.elapsed(),
    })
}

/// Deterministic ordered union of shard results.
pub fn merge_results(parts: Vec<SearchResult>) -> SearchResult {
    let mut found: BTreeMap<String, Representation> = BTreeMap::new();
    let mut states = 0u64;
    let mut elapsed = Duration::ZERO;
    let mut last_tuple = None;
    for part in parts {
        states += part.states_examined;
        elapsed += part.elapsed;
        for rep in part.found {
            found.insert(orbit_key(&rep), rep);
        }
        if part.last_leading_tuple > last_tuple {
            last_tuple = part.last_leading_tuple;
        }
    }
    SearchResult {
        found: found.into_values().collect(),
        states_examined: states,
        last_leading_tuple: last_tuple,
        elapsed,
    }
}

/// Precomputed candidate cubes and their expansions.
struct Grid {
    degree: u32,
    bound: i64,
    /// Coefficient vectors `(c_D, ..., c_0)` in lexicographic order.
    candidates: Vec<Vec<i64>>,
    /// `candidates[i]` cubed, as dense coefficient vectors over `t^0..t^3D`.
    expansions: Vec<Vec<i128>>,
    /// Per leading coefficient: expansion vector -> sorted candidate indices.
    block_lookup: HashMap<i64, HashMap<Vec<i128>, Vec<u32>>>,
    /// Candidates per leading coefficient (`(2C+1)^D`).
    block_size: u64,
}

impl Grid {
    fn new(space: &SearchSpace) -> Grid {
        let bound = space.coeff_bound as i64;
        let degree = space.max_degree;
        let width = (2 * bound + 1) as u64;
        let slots = degree as usize + 1;

        let mut candidates = Vec::new();
        let mut vector = vec![-bound; slots];
        'gen: loop {
            candidates.push(vector.clone());
            let mut i = slots;
            while i > 0 {
                i -= 1;
                if vector[i] < bound {
                    vector[i] += 1;
                    for v in vector[i + 1..].iter_mut() {
                        *v = -bound;
                    }
                    continue 'gen;
                }
            }
            break;
        }
        debug_assert_eq!(candidates.len() as u64, width.pow(slots as u32));

        let expansions: Vec<Vec<i128>> = candidates.iter().map(|c| cube_coeffs(c)).collect();
        let mut block_lookup: HashMap<i64, HashMap<Vec<i128>, Vec<u32>>> = HashMap::new();
        for (i, cand) in candidates.iter().enumerate() {
            block_lookup
                .entry(cand[0])
                .or_default()
                .entry(expansions[i].clone())
                .or_default()
                .push(i as u32);
        }
        Grid { degree, bound, candidates, expansions, block_lookup, block_size: width.pow(degree) }
    }

    /// Non-decreasing leading tuples whose cubes sum to the required top
    /// coefficient of the expansion, in lexicographic order, with the
    /// symmetry filter applied. For `max_degree` 0 the required value is the
    /// target itself; otherwise the target is constant and the top
    /// coefficient must vanish.
    fn admissible_leading_tuples(&self, space: &SearchSpace) -> Vec<Vec<i64>> {
        let required: i128 = if self.degree == 0 { space.target as i128 } else { 0 };
        let k = space.num_cubes as usize;
        let mut tuples = Vec::new();
        let mut current = Vec::with_capacity(k);
        collect_tuples(self.bound, k, required, -self.bound, &mut current, &mut tuples);
        if space.symmetry == SymmetryMode::PairCancellation {
            tuples.retain(|t| pair_cancels(t));
        }
        tuples
    }

    fn block_range(&self, lead: i64) -> std::ops::Range<u32> {
        let start = ((lead + self.bound) as u64 * self.block_size) as u32;
        start..start + self.block_size as u32
    }

    /// Enumerate every multiset consistent with one leading tuple. The first
    /// `k-1` cubes are enumerated depth-first with shared partial sums; the
    /// final cube is resolved by lookup.
    fn enumerate_tuple(
        &self,
        space: &SearchSpace,
        tuple: &[i64],
        states: &mut u64,
        found: &mut BTreeMap<String, Representation>,
    ) {
        let len = 3 * self.degree as usize + 1;
        let mut target_vec = vec![0i128; len];
        target_vec[0] = space.target as i128;
        let Some(last_block) = self.block_lookup.get(&tuple[tuple.len() - 1]) else {
            return;
        };
        let mut prefix: Vec<u32> = Vec::new();
        let zero = vec![0i128; len];
        self.recurse(space, tuple, &target_vec, last_block, &zero, &mut prefix, states, found);
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &self,
        space: &SearchSpace,
        tuple: &[i64],
        target_vec: &[i128],
        last_block: &HashMap<Vec<i128>, Vec<u32>>,
        sum: &[i128],
        prefix: &mut Vec<u32>,
        states: &mut u64,
        found: &mut BTreeMap<String, Representation>,
    ) {
        let k = tuple.len();
        let depth = prefix.len();
        if depth == k - 1 {
            *states += 1;
            let required: Vec<i128> =
                target_vec.iter().zip(sum).map(|(t, s)| t - s).collect();
            if let Some(matches) = last_block.get(&required) {
                let last_lead = tuple[k - 1];
                let min_index = if tuple[k - 2] == last_lead {
                    *prefix.last().expect("prefix has k-1 >= 2 entries")
                } else {
                    self.block_range(last_lead).start
                };
                for &idx in matches {
                    if idx >= min_index {
                        self.record_hit(space, prefix, idx, found);
                    }
                }
            }
            return;
        }
        let lead = tuple[depth];
        let range = self.block_range(lead);
        let start =
            if depth > 0 && tuple[depth - 1] == lead { prefix[depth - 1] } else { range.start };
        for idx in start..range.end {
            let expansion = &self.expansions[idx as usize];
            let next: Vec<i128> = sum.iter().zip(expansion).map(|(s, e)| s + e).collect();
            prefix.push(idx);
            self.recurse(space, tuple, target_vec, last_block, &next, prefix, states, found);
            prefix.pop();
        }
    }

    fn record_hit(
        &self,
        space: &SearchSpace,
        prefix: &[u32],
        last: u32,
        found: &mut BTreeMap<String, Representation>,
    ) {
        let cubes: Vec<Polynomial> = prefix
            .iter()
            .chain(std::iter::once(&last))
            .map(|&i| vector_to_poly(&self.candidates[i as usize]))
            .collect();
        let rep = Representation::new(Polynomial::constant(space.target), cubes);
        let canonical = canonical_orbit_rep(&rep);
        assert!(
            verifier_check(&canonical).ok,
            "searcher emitted a non-verifying representation"
        );
        found.entry(canonical.to_text()).or_insert(canonical);
    }
}

/// Predicted number of prefix states for the given leading tuples.
fn predicted_states<'a>(grid: &Grid, tuples: impl Iterator<Item = &'a Vec<i64>>) -> u128 {
    let block = grid.block_size as u128;
    let mut total: u128 = 0;
    for tuple in tuples {
        let prefix = &tuple[..tuple.len() - 1];
        let mut per_tuple: u128 = 1;
        let mut run = 0u128;
        let mut prev: Option<i64> = None;
        for &lead in prefix {
            if Some(lead) == prev {
                run += 1;
            } else {
                per_tuple = per_tuple.saturating_mul(multichoose(block, run));
                prev = Some(lead);
                run = 1;
            }
        }
        per_tuple = per_tuple.saturating_mul(multichoose(block, run));
        total = total.saturating_add(per_tuple);
    }
    total
}

/// Number of non-decreasing `k`-tuples over a block of `n` candidates:
/// `C(n + k - 1, k)`.
fn multichoose(n: u128, k: u128) -> u128 {
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul(n + k - 1 - i) / (i + 1);
    }
    result
}

fn collect_tuples(
    bound: i64,
    remaining: usize,
    required: i128,
    min: i64,
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if remaining == 0 {
        if required == 0 {
            out.push(current.clone());
        }
        return;
    }
    let max_reach = (remaining as i128) * (bound as i128).pow(3);
    if required.abs() > max_reach {
        return;
    }
    for v in min..=bound {
        current.push(v);
        collect_tuples(bound, remaining - 1, required - (v as i128).pow(3), v, current, out);
        current.pop();
    }
}

/// Nonzero entries must pair off as `(a, -a)`.
fn pair_cancels(tuple: &[i64]) -> bool {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for &v in tuple {
        if v != 0 {
            *counts.entry(v).or_default() += 1;
        }
    }
    counts.iter().all(|(&v, &n)| counts.get(&-v).copied().unwrap_or(0) == n)
}

/// Dense coefficients of `p(t)^3` for `p` given as `(c_D, ..., c_0)`.
fn cube_coeffs(cand: &[i64]) -> Vec<i128> {
    let d = cand.len() - 1;
    let p: Vec<i128> = (0..=d).map(|i| cand[d - i] as i128).collect();
    let mut sq = vec![0i128; 2 * d + 1];
    for (i, &a) in p.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in p.iter().enumerate() {
            sq[i + j] += a * b;
        }
    }
    let mut cube = vec![0i128; 3 * d + 1];
    for (i, &a) in sq.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in p.iter().enumerate() {
            cube[i + j] += a * b;
        }
    }
    cube
}

fn vector_to_poly(cand: &[i64]) -> Polynomial {
    let d = cand.len() - 1;
    Polynomial::from_terms(
        &["t"],
        cand.iter().enumerate().map(|(i, &c)| (vec![(d - i) as u32], BigInt::from(c))),
    )
}

/// Canonical representative of a representation's orbit under cube
/// permutations, `t -> -t`, and `t -> t + c`: depress via the
/// sum-of-squares anchor for both signs of `t` and keep the
/// lexicographically smaller serialization.
pub fn canonical_orbit_rep(rep: &Representation) -> Representation {
    let direct = canonical_shift(rep);
    let mirrored = canonical_shift(&flip_t(rep));
    if direct.to_text() <= mirrored.to_text() {
        direct
    } else {
        mirrored
    }
}

/// Deduplication key: the canonical orbit representative's text form.
pub fn orbit_key(rep: &Representation) -> String {
    canonical_orbit_rep(rep).to_text()
}

fn flip_t(rep: &Representation) -> Representation {
    let minus_t = -&Polynomial::var("t");
    let map = BTreeMap::from([("t".to_string(), minus_t)]);
    rep.substitute(&map)
}

/// Shift `t -> t + c` with `c` chosen intrinsically: minimize the absolute
/// second-highest coefficient of the sum of squares of the cubes, ties
/// toward the smaller shift. The choice is shift-equivariant, so equivalent
/// representations in different positions land on the same form.
fn canonical_shift(rep: &Representation) -> Representation {
    let sum_sq =
        rep.cubes().iter().fold(Polynomial::zero(), |acc, c| &acc + &(c * c));
    let Some(degree) = sum_sq.total_degree().filter(|&d| d > 0) else {
        return rep.clone();
    };
    let lead = sum_sq.coefficient_of("t", degree).constant_term();
    let sub = sum_sq.coefficient_of("t", degree - 1).constant_term();
    // minimize |sub + degree * lead * c| over integer c; lead > 0 because it
    // is a sum of squares
    let den = BigInt::from(degree) * lead;
    let num = -sub;
    let floor = num.div_floor(&den);
    let c = [floor.clone(), floor + 1]
        .into_iter()
        .min_by_key(|c| ((&num - c * &den).abs(), c.clone()))
        .expect("two candidates");
    if c.is_zero() {
        return rep.clone();
    }
    let t_plus_c = &Polynomial::var("t") + &Polynomial::constant(c);
    let map = BTreeMap::from([("t".to_string(), t_plus_c)]);
    rep.substitute(&map)
}
