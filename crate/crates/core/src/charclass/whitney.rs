//! Tables of characteristic classes, Whitney-sum division and relations
//! forced by vanishing classes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::CharClassError;
use crate::exactpoly::{Polynomial, Rational, VariableContext};
use crate::gring::GradedRingPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassKind {
    /// `c_k` in degree `2k`.
    Chern,
    /// `p_k` in degree `4k`.
    Pontryagin,
    /// `w_k` in degree `k`.
    StiefelWhitney,
    /// A single class in its own degree, keyed by that degree.
    Euler,
}

impl ClassKind {
    pub fn degree_step(self) -> u32 {
        match self {
            ClassKind::Chern => 2,
            ClassKind::Pontryagin => 4,
            ClassKind::StiefelWhitney | ClassKind::Euler => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ClassKind::Chern => "c",
            ClassKind::Pontryagin => "p",
            ClassKind::StiefelWhitney => "w",
            ClassKind::Euler => "e",
        }
    }
}

/// Index `k` to the class of degree `k * step`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharClassTable {
    pub kind: ClassKind,
    pub classes: BTreeMap<u32, Polynomial>,
}

impl CharClassTable {
    pub fn new(kind: ClassKind, classes: BTreeMap<u32, Polynomial>) -> Result<Self, CharClassError> {
        for (k, c) in &classes {
            if !c.is_zero() && c.homogeneous_degree() != Some(k * kind.degree_step()) {
                return Err(CharClassError::Internal(format!(
                    "{}_{k} = {c} is not homogeneous of degree {}",
                    kind.symbol(),
                    k * kind.degree_step()
                )));
            }
        }
        Ok(CharClassTable { kind, classes })
    }

    /// Splits a total class into its homogeneous components.
    pub fn from_total(kind: ClassKind, total: &Polynomial) -> Result<Self, CharClassError> {
        let step = kind.degree_step();
        let mut classes = BTreeMap::new();
        for (d, part) in total.components() {
            if d == 0 {
                continue;
            }
            if d % step != 0 {
                return Err(CharClassError::Internal(format!("component in degree {d} for step {step}")));
            }
            classes.insert(d / step, part);
        }
        Ok(CharClassTable { kind, classes })
    }

    pub fn class(&self, k: u32) -> Option<&Polynomial> {
        self.classes.get(&k)
    }

    /// The class of cohomological degree `d`, zero if absent.
    pub fn in_degree(&self, ctx: &Arc<VariableContext>, d: u32) -> Polynomial {
        let step = self.kind.degree_step();
        if d % step != 0 {
            return Polynomial::zero(ctx);
        }
        self.classes.get(&(d / step)).cloned().unwrap_or_else(|| Polynomial::zero(ctx))
    }

    pub fn total(&self, ctx: &Arc<VariableContext>) -> Polynomial {
        self.classes.values().fold(Polynomial::one(ctx), |acc, c| &acc + c)
    }

    /// `{"c1": "12*t", ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .classes
            .iter()
            .map(|(k, c)| (format!("{}{k}", self.kind.symbol()), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    /// Integers reduced modulo a prime.
    ModP(u64),
}

/// `total / factor` up to degree `maxdeg`, reduced in `ring` when given and
/// then in the coefficient ring.
pub fn whitney_quotient(
    total: &Polynomial,
    factor: &Polynomial,
    ring: Option<&GradedRingPresentation>,
    maxdeg: u32,
    coefficients: Coefficients,
    kind: ClassKind,
) -> Result<CharClassTable, CharClassError> {
    let inverse = match coefficients {
        Coefficients::Rational => factor.truncated_inverse(maxdeg)?,
        Coefficients::ModP(p) => factor.truncated_inverse_mod(maxdeg, p)?,
    };
    let mut q = total.mul_truncated(&inverse, maxdeg)?;
    if let Some(ring) = ring {
        q = ring.reduce(&q)?;
    }
    if let Coefficients::ModP(p) = coefficients {
        q = q.reduce_mod(p)?;
    }
    CharClassTable::from_total(kind, &q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vanishing {
    /// The class is zero with coefficients modulo `p`, so its integral lift
    /// is divisible by `p`.
    ModP(u64),
    /// The class is zero; the relation is its primitive part.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedRelation {
    /// The class after substitution (and reduction, if a ring was given).
    pub substituted: Polynomial,
    /// `substituted = divisor * quotient`.
    pub divisor: BigInt,
    pub quotient: Polynomial,
}

/// Substitutes into a class known to vanish and extracts the relation this
/// forces: for [`Vanishing::ModP`] the quotient by `p` (which names a new
/// class), for [`Vanishing::Exact`] the primitive part.
pub fn vanishing_to_relation(
    class: &Polynomial,
    target: &Arc<VariableContext>,
    substitutions: &[(&str, Polynomial)],
    vanishing: Vanishing,
    ring: Option<&GradedRingPresentation>,
) -> Result<InducedRelation, CharClassError> {
    let mut substituted = class.substitute(target, substitutions, false)?;
    if let Some(ring) = ring {
        substituted = ring.reduce(&substituted)?;
    }
    if substituted.is_zero() {
        return Ok(InducedRelation {
            quotient: substituted.clone(),
            substituted,
            divisor: BigInt::one(),
        });
    }
    if !substituted.is_integral() {
        return Err(CharClassError::NotDivisible {
            class: substituted.to_string(),
            divisor: "an integer".into(),
        });
    }
    let content = substituted.content();
    let divisor = match vanishing {
        Vanishing::ModP(p) => {
            let p = BigInt::from(p);
            if !content.is_multiple_of(&p) {
                return Err(CharClassError::NotDivisible { class: substituted.to_string(), divisor: p.to_string() });
            }
            p
        }
        Vanishing::Exact => content,
    };
    let quotient = substituted.scale(&Rational::new(BigInt::one(), divisor.clone()));
    Ok(InducedRelation { substituted, divisor, quotient })
}
