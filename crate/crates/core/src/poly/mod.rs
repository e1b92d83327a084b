//! Exact sparse multivariate polynomial arithmetic over arbitrary-precision
//! integers.
//!
//! Polynomials are stored in canonical sparse form: a finite map from
//! exponent vectors to nonzero `BigInt` coefficients, ordered graded
//! lexicographically. The empty map is the zero polynomial. Each polynomial
//! carries its own ordered list of ambient variable names; binary operations
//! unify the ambient lists by name.

mod display;
mod json;
mod parse;

pub use json::term_to_json;
pub use parse::parse_polynomial;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Render a single term (sign included) against an explicit variable list,
/// e.g. `-54*t^2`.
pub fn render_term_in(vars: &[String], mono: &Monomial, coeff: &BigInt) -> String {
    display::render_term(vars, mono, coeff)
}

/// Errors from polynomial construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Evaluation point does not bind a variable that occurs in the polynomial.
    #[error("unbound variable `{var}`")]
    UnboundVariable { var: String },
    /// Exact division failed; carries the remainder term that could not be
    /// reduced by the divisor.
    #[error("inexact division: remainder term `{term}` is not divisible by the divisor")]
    InexactDivision { term: String },
    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Requested ambient variable list is missing a variable the polynomial uses.
    #[error("ambient variable list is missing `{var}`")]
    MissingVariable { var: String },
    /// Text-format parse error with a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An exponent vector relative to an ambient variable list.
///
/// Trailing zeros are insignificant: two monomials compare equal iff their
/// exponent vectors agree after zero-padding. Ordering is graded
/// lexicographic: total degree first, then lexicographic on the padded
/// exponents.
#[derive(Debug, Clone)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The constant monomial (all exponents zero).
    pub fn constant() -> Self {
        Monomial(Vec::new())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    /// Sum of all exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum, zero-padding the shorter vector.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    /// Componentwise difference, or `None` if some exponent would go negative.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.exponent(i), other.exponent(i));
            if b > a {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    fn padded(&self, len: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(len.max(v.len()), 0);
        Monomial(v)
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Monomial {}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl std::hash::Hash for Monomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Hash the exponents with trailing zeros stripped, so Eq and Hash agree.
        let trimmed = self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        self.0[..trimmed].hash(state);
    }
}

/// Exact sparse multivariate polynomial over the integers.
///
/// Mathematical equality is what `PartialEq` means here: two polynomials
/// compare equal iff they have the same coefficient on every monomial once
/// exponents are matched up by variable *name*, regardless of how the
/// ambient lists are ordered.
#[derive(Debug, Clone)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    /// The zero polynomial with an empty ambient list.
    pub fn zero() -> Self {
        Polynomial { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::constant(), c);
        }
        Polynomial { vars: Vec::new(), terms }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::new(vec![1]), BigInt::one());
        Polynomial { vars: vec![name.to_string()], terms }
    }

    /// Build a polynomial from raw terms. Duplicate monomials are summed and
    /// zero coefficients dropped. Exponent vectors shorter than the variable
    /// list are zero-padded; longer ones are a construction bug.
    pub fn from_terms<I, C>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (exps, coeff) in terms {
            assert!(exps.len() <= vars.len(), "exponent vector longer than variable list");
            let mono = Monomial::new(exps).padded(vars.len());
            let entry = map.entry(mono).or_insert_with(BigInt::zero);
            *entry += coeff.into();
        }
        map.retain(|_, c| !c.is_zero());
        Polynomial { vars, terms: map }
    }

    /// Parse the canonical text format, e.g. `36*t^3 - 54*t^2 + 27*t + m - 3`.
    pub fn parse(input: &str) -> Result<Self, PolyError> {
        parse_polynomial(input)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in one variable (0 if the variable is absent).
    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.exponent(i)).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lexicographic order (display order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    /// Greatest term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Least term under graded-lex order.
    pub fn trailing_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::constant())
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Variables that actually occur with a nonzero exponent.
    pub fn support_vars(&self) -> Vec<&str> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.exponent(*i) > 0))
            .map(|(_, v)| v.as_str())
            .collect()
    }

    /// Re-key the polynomial onto a new ambient variable list, which must
    /// contain every variable in the support.
    pub fn reambient(&self, vars: &[&str]) -> Result<Polynomial, PolyError> {
        for v in self.support_vars() {
            if !vars.contains(&v) {
                return Err(PolyError::MissingVariable { var: v.to_string() });
            }
        }
        let new_vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut map = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            let mut exps = vec![0u32; new_vars.len()];
            for (i, old) in self.vars.iter().enumerate() {
                let e = mono.exponent(i);
                if e > 0 {
                    let j = new_vars.iter().position(|v| v == old).expect("support checked");
                    exps[j] = e;
                }
            }
            map.insert(Monomial::new(exps), coeff.clone());
        }
        Ok(Polynomial { vars: new_vars, terms: map })
    }

    /// Drop ambient variables that never occur, preserving relative order.
    pub fn prune_vars(&self) -> Polynomial {
        let support = self.support_vars();
        let keep: Vec<&str> =
            self.vars.iter().filter(|v| support.contains(&v.as_str())).map(|v| v.as_str()).collect();
        self.reambient(&keep).expect("support is a subset of itself")
    }

    /// Shared ambient for two polynomials: the left list followed by any new
    /// variables from the right, in the right's order.
    pub fn unified_vars(a: &Polynomial, b: &Polynomial) -> Vec<String> {
        let mut vars = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn unify(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let vars = Self::unified_vars(a, b);
        let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        (
            a.reambient(&refs).expect("union contains all variables"),
            b.reambient(&refs).expect("union contains all variables"),
        )
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono.padded(self.vars.len())) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Exact power; `a^0 = 1`.
    pub fn pow(&self, k: u32) -> Polynomial {
        if k == 0 {
            let mut one = Polynomial::one();
            one.vars = self.vars.clone();
            one.terms = one
                .terms
                .into_iter()
                .map(|(m, c)| (m.padded(self.vars.len()), c))
                .collect();
            return one;
        }
        let mut result = self.clone();
        let mut base = self.clone();
        let mut exp = k - 1;
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Compose: replace each bound variable by its binding polynomial.
    /// Variables without a binding pass through unchanged; bindings for
    /// variables absent from the ambient list are no-ops.
    pub fn substitute(&self, bindings: &BTreeMap<String, Polynomial>) -> Polynomial {
        let live: Vec<&String> =
            self.vars.iter().filter(|v| bindings.contains_key(*v)).collect();
        if live.is_empty() {
            return self.clone();
        }
        // Ambient for the result: unbound variables keep their order, then
        // binding variables join as multiplication unifies them in.
        let kept: Vec<&str> = self
            .vars
            .iter()
            .filter(|v| !bindings.contains_key(*v))
            .map(|v| v.as_str())
            .collect();
        let mut result = Polynomial {
            vars: kept.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        };
        // Cache powers of each replacement factor.
        let mut pow_cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        for (mono, coeff) in &self.terms {
            let mut acc = Polynomial::constant(coeff.clone());
            for (i, var) in self.vars.iter().enumerate() {
                let e = mono.exponent(i);
                if e == 0 {
                    continue;
                }
                let factor = pow_cache.entry((i, e)).or_insert_with(|| match bindings.get(var) {
                    Some(replacement) => replacement.pow(e),
                    None => Polynomial::from_terms(&[var.as_str()], [(vec![e], 1)]),
                });
                acc = &acc * factor;
            }
            result = &result + &acc;
        }
        result
    }

    /// Substitute a single variable.
    pub fn bind(&self, var: &str, value: &Polynomial) -> Polynomial {
        let mut map = BTreeMap::new();
        map.insert(var.to_string(), value.clone());
        self.substitute(&map)
    }

    /// Exact integer evaluation. Every variable in the support must be bound.
    pub fn eval(&self, point: &BTreeMap<String, BigInt>) -> Result<BigInt, PolyError> {
        for v in self.support_vars() {
            if !point.contains_key(v) {
                return Err(PolyError::UnboundVariable { var: v.to_string() });
            }
        }
        let mut total = BigInt::zero();
        for (mono, coeff) in &self.terms {
            let mut value = coeff.clone();
            for (i, var) in self.vars.iter().enumerate() {
                let e = mono.exponent(i);
                if e > 0 {
                    value *= point[var].pow(e);
                }
            }
            total += value;
        }
        Ok(total)
    }

    /// Exact division: returns `q` with `q * divisor == self`, or
    /// `InexactDivision` carrying the first remainder term that the divisor's
    /// leading term cannot reduce.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (mut remainder, divisor) = Self::unify(self, divisor);
        let vars = remainder.vars.clone();
        let (div_mono, div_coeff) = {
            let (m, c) = divisor.leading_term().expect("divisor is nonzero");
            (m.clone(), c.clone())
        };
        let mut quotient =
            Polynomial { vars: vars.clone(), terms: BTreeMap::new() };
        while !remainder.is_zero() {
            let (lead_mono, lead_coeff) = {
                let (m, c) = remainder.leading_term().expect("remainder is nonzero");
                (m.clone(), c.clone())
            };
            let inexact = || PolyError::InexactDivision {
                term: display::render_term(&vars, &lead_mono, &lead_coeff),
            };
            let q_mono = lead_mono.checked_div(&div_mono).ok_or_else(inexact)?;
            if !(&lead_coeff % &div_coeff).is_zero() {
                return Err(inexact());
            }
            let q_coeff = &lead_coeff / &div_coeff;
            // remainder -= (q_coeff * q_mono) * divisor
            for (m, c) in &divisor.terms {
                remainder.add_term(q_mono.mul(m), -(&q_coeff * c));
            }
            quotient.add_term(q_mono, q_coeff);
        }
        Ok(quotient)
    }

    /// The coefficient of `var^k`, as a polynomial in the remaining variables
    /// (the ambient list is preserved; `var`'s exponent is zeroed).
    pub fn coefficient_of(&self, var: &str, k: u32) -> Polynomial {
        let Some(i) = self.var_index(var) else {
            return if k == 0 { self.clone() } else { Polynomial { vars: self.vars.clone(), terms: BTreeMap::new() } };
        };
        let mut out = Polynomial { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (mono, coeff) in &self.terms {
            if mono.exponent(i) == k {
                let mut exps = mono.padded(self.vars.len()).0;
                exps[i] = 0;
                out.add_term(Monomial::new(exps), coeff.clone());
            }
        }
        out
    }

    /// Coefficient map keyed by variable name, erasing the ambient order.
    /// This is the canonical object `PartialEq` compares.
    pub fn named_terms(&self) -> BTreeMap<BTreeMap<&str, u32>, &BigInt> {
        self.terms
            .iter()
            .map(|(mono, coeff)| {
                let key: BTreeMap<&str, u32> = self
                    .vars
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| {
                        let e = mono.exponent(i);
                        (e > 0).then_some((v.as_str(), e))
                    })
                    .collect();
                (key, coeff)
            })
            .collect()
    }

    /// Total order used to canonically sort the cube list of a
    /// representation: by descending degree, then descending graded-lex
    /// leading monomial, then larger absolute leading coefficient, positive
    /// sign first, and finally a descending comparison of the full
    /// coefficient sequence. `Equal` iff the polynomials are equal.
    ///
    /// Graded-lex order is relative to the ambient variable order, so the
    /// operands are expected to share an ambient list, as the cubes of a
    /// canonicalized representation do.
    pub fn canonical_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
        let (a, b) = Self::unify(a, b);
        match (a.leading_term(), b.leading_term()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Greater, // zero sorts last
            (Some(_), None) => return Ordering::Less,
            (Some((ma, ca)), Some((mb, cb))) => {
                let ord = mb
                    .degree()
                    .cmp(&ma.degree())
                    .then_with(|| mb.cmp(ma))
                    .then_with(|| cb.abs().cmp(&ca.abs()))
                    .then_with(|| cb.sign().cmp(&ca.sign()));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
        // Walk the union of monomials from greatest to least; the polynomial
        // with the larger coefficient at the first difference sorts first.
        let mut monos: Vec<&Monomial> = a.terms.keys().chain(b.terms.keys()).collect();
        monos.sort();
        monos.dedup();
        for mono in monos.into_iter().rev() {
            match b.coefficient(mono).cmp(&a.coefficient(mono)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        self.named_terms() == other.named_terms()
    }
}

impl Eq for Polynomial {}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut a, b) = Polynomial::unify(self, rhs);
        for (mono, coeff) in b.terms {
            a.add_term(mono, coeff);
        }
        a
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (a, b) = Polynomial::unify(self, rhs);
        let mut out = Polynomial { vars: a.vars.clone(), terms: BTreeMap::new() };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
