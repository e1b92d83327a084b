//! A target polynomial together with the cubes that sum to it.

use num_bigint::BigInt;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

use crate::poly::Polynomial;

/// A parameter slot of an identity: either left symbolic or bound to an
/// integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Symbolic,
    Int(BigInt),
}

impl ParamValue {
    pub fn int<C: Into<BigInt>>(c: C) -> Self {
        ParamValue::Int(c.into())
    }

    /// The polynomial this parameter stands for: the named variable when
    /// symbolic, a constant when bound.
    pub fn as_polynomial(&self, name: &str) -> Polynomial {
        match self {
            ParamValue::Symbolic => Polynomial::var(name),
            ParamValue::Int(n) => Polynomial::constant(n.clone()),
        }
    }
}

/// An ordered multiset of polynomials whose cubes sum to a target.
///
/// The cube list is kept in a canonical order (see
/// [`Polynomial::canonical_cmp`]) and all member polynomials share one
/// ambient variable list, so equal representations serialize identically.
/// Whether the cubes actually sum to the target is the verifier's call, not
/// an assumption of this type.
#[derive(Debug, Clone)]
pub struct Representation {
    id: Option<String>,
    params: Vec<(String, ParamValue)>,
    target: Polynomial,
    cubes: Vec<Polynomial>,
}

impl Representation {
    /// Canonicalize: unify every polynomial onto one ambient list (variables
    /// in order of first appearance scanning target then cubes, dropping
    /// variables nothing uses) and sort the cubes.
    pub fn new(target: Polynomial, cubes: Vec<Polynomial>) -> Self {
        Self::with_metadata(None, Vec::new(), target, cubes)
    }

    pub fn with_metadata(
        id: Option<String>,
        params: Vec<(String, ParamValue)>,
        target: Polynomial,
        cubes: Vec<Polynomial>,
    ) -> Self {
        let mut ambient: Vec<String> = Vec::new();
        let mut used: Vec<String> = Vec::new();
        for poly in std::iter::once(&target).chain(cubes.iter()) {
            for v in poly.vars() {
                if !ambient.contains(v) {
                    ambient.push(v.clone());
                }
            }
            for v in poly.support_vars() {
                if !used.iter().any(|u| u == v) {
                    used.push(v.to_string());
                }
            }
        }
        let ambient: Vec<&str> =
            ambient.iter().filter(|v| used.iter().any(|u| u == *v)).map(|v| v.as_str()).collect();
        let target = target.reambient(&ambient).expect("ambient covers all support");
        let mut cubes: Vec<Polynomial> = cubes
            .into_iter()
            .map(|c| c.reambient(&ambient).expect("ambient covers all support"))
            .collect();
        cubes.sort_by(Polynomial::canonical_cmp);
        Representation { id, params, target, cubes }
    }

    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }

    pub fn params(&self) -> &[(String, ParamValue)] {
        &self.params
    }

    pub fn target(&self) -> &Polynomial {
        &self.target
    }

    pub fn cubes(&self) -> &[Polynomial] {
        &self.cubes
    }

    pub fn arity(&self) -> usize {
        self.cubes.len()
    }

    /// True when some cube is the zero polynomial (the representation then
    /// degenerates to one with fewer cubes).
    pub fn has_zero_cube(&self) -> bool {
        self.cubes.iter().any(|c| c.is_zero())
    }

    /// Multiply every cube by `a` and the target by `a^3`.
    pub fn scale(&self, a: &BigInt) -> Representation {
        let factor = Polynomial::constant(a.clone());
        let cube_factor = Polynomial::constant(a.pow(3));
        Representation::with_metadata(
            self.id.clone(),
            self.params.clone(),
            &self.target * &cube_factor,
            self.cubes.iter().map(|c| c * &factor).collect(),
        )
    }

    /// Substitute into every polynomial (target and cubes alike).
    pub fn substitute(&self, bindings: &BTreeMap<String, Polynomial>) -> Representation {
        Representation::with_metadata(
            self.id.clone(),
            self.params.clone(),
            self.target.substitute(bindings),
            self.cubes.iter().map(|c| c.substitute(bindings)).collect(),
        )
    }

    /// Same mathematical identity: equal target and equal cube multisets,
    /// metadata ignored. Multiset matching keeps the comparison independent
    /// of ambient variable order, which the canonical sort is sensitive to.
    pub fn same_identity(&self, other: &Representation) -> bool {
        if self.target != other.target || self.cubes.len() != other.cubes.len() {
            return false;
        }
        let mut used = vec![false; other.cubes.len()];
        'outer: for cube in &self.cubes {
            for (i, candidate) in other.cubes.iter().enumerate() {
                if !used[i] && cube == candidate {
                    used[i] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Canonical one-line text form: `(c1)^3 + (c2)^3 + ... = target`.
    pub fn to_text(&self) -> String {
        let lhs: Vec<String> = self.cubes.iter().map(|c| format!("({c})^3")).collect();
        format!("{} = {}", lhs.join(" + "), self.target)
    }

    pub fn to_latex(&self) -> String {
        let lhs: Vec<String> =
            self.cubes.iter().map(|c| format!("\\left({}\\right)^3", c.to_latex())).collect();
        format!("{} = {}", lhs.join(" + "), self.target.to_latex())
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.same_identity(other)
    }
}

impl Eq for Representation {}

#[derive(Serialize, Deserialize)]
struct RepresentationWire {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<String, Option<String>>,
    target: Polynomial,
    cubes: Vec<Polynomial>,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let params = self
            .params
            .iter()
            .map(|(name, value)| {
                let encoded = match value {
                    ParamValue::Symbolic => None,
                    ParamValue::Int(n) => Some(n.to_string()),
                };
                (name.clone(), encoded)
            })
            .collect();
        RepresentationWire {
            id: self.id.clone(),
            params,
            target: self.target.clone(),
            cubes: self.cubes.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = RepresentationWire::deserialize(deserializer)?;
        let mut params = Vec::new();
        for (name, value) in wire.params {
            let value = match value {
                None => ParamValue::Symbolic,
                Some(s) => ParamValue::Int(
                    s.parse().map_err(|_| D::Error::custom(format!("invalid parameter `{s}`")))?,
                ),
            };
            params.push((name, value));
        }
        Ok(Representation::with_metadata(wire.id, params, wire.target, wire.cubes))
    }
}

impl Representation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("representation serialization is infallible")
    }
}

/// Scale every cube by `a` and the target by `a^3`; the free-standing form
/// of [`Representation::scale`].
pub fn scale_representation(r: &Representation, a: &BigInt) -> Representation {
    r.scale(a)
}
