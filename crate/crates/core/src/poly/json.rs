//! JSON wire format for polynomials.
//!
//! ```json
//! {"vars": ["t", "m"], "terms": [{"e": [3, 0], "c": "36"}, ...]}
//! ```
//!
//! Coefficients travel as decimal strings so arbitrary precision survives
//! JSON; small integer literals are also accepted on input. Terms are
//! emitted in descending graded-lex order and re-canonicalized on load.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Polynomial};

#[derive(Serialize)]
struct TermOut<'a> {
    e: &'a [u32],
    c: String,
}

#[derive(Serialize)]
struct PolyOut<'a> {
    vars: &'a [String],
    terms: Vec<TermOut<'a>>,
}

#[derive(Deserialize)]
struct TermIn {
    e: Vec<u32>,
    c: CoeffIn,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffIn {
    Text(String),
    Small(i64),
}

#[derive(Deserialize)]
struct PolyIn {
    vars: Vec<String>,
    terms: Vec<TermIn>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let out = PolyOut {
            vars: self.vars(),
            terms: self
                .terms_desc()
                .map(|(mono, coeff)| TermOut { e: mono.exponents(), c: coeff.to_string() })
                .collect(),
        };
        out.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyIn::deserialize(deserializer)?;
        let mut terms: Vec<(Vec<u32>, BigInt)> = Vec::with_capacity(raw.terms.len());
        for term in raw.terms {
            if term.e.len() > raw.vars.len() {
                return Err(D::Error::custom(format!(
                    "exponent vector of length {} exceeds {} variables",
                    term.e.len(),
                    raw.vars.len()
                )));
            }
            let coeff = match term.c {
                CoeffIn::Text(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("invalid coefficient `{s}`")))?,
                CoeffIn::Small(n) => BigInt::from(n),
            };
            terms.push((term.e, coeff));
        }
        let vars: Vec<&str> = raw.vars.iter().map(|s| s.as_str()).collect();
        Ok(Polynomial::from_terms(&vars, terms))
    }
}

/// A term rendered for reports: monomial exponents plus coefficient string.
pub fn term_to_json(mono: &Monomial, coeff: &BigInt) -> serde_json::Value {
    serde_json::json!({"e": mono.exponents(), "c": coeff.to_string()})
}

impl Polynomial {
    /// Convenience JSON encoding of the wire format.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serialization is infallible")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, serde_json::Error> {
        serde_json::from_value(value.clone())
    }

    /// True when every coefficient is zero after canonicalization; used by
    /// loaders to double-check invariants.
    pub fn canonical_invariants_hold(&self) -> bool {
        self.terms().all(|(_, c)| !c.is_zero())
    }
}
