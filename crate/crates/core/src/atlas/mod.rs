//! The spaces, their stored constants, and the named checks that recompute
//! each constant from the presentations.

mod checks;
mod constants;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::charclass::{CharClassTable, Chirality, ClassKind, PhiSolution};
use crate::dsl::{parse_rings, DslError};
use crate::exactpoly::{Polynomial, Rational, VariableContext};
use crate::gring::GradedRingPresentation;
use crate::zlinalg::FgAbelianGroup;
use checks::CHECKS;

pub use constants::{default_constants, ConstValue, Constant, BUILTIN_RINGS};

#[derive(Debug, thiserror::Error)]
pub enum AtlasError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("constant `{id}`: {message}")]
    BadConstant { id: String, message: String },
    #[error("built-in ring text: {0}")]
    Dsl(#[from] DslError),
}

/// Rings parsed once from [`BUILTIN_RINGS`]. Their graded pieces are cached
/// inside, so every atlas shares the work.
pub fn builtin_rings() -> &'static BTreeMap<String, Arc<GradedRingPresentation>> {
    static RINGS: OnceLock<BTreeMap<String, Arc<GradedRingPresentation>>> = OnceLock::new();
    RINGS.get_or_init(|| {
        parse_rings(BUILTIN_RINGS)
            .expect("built-in ring text parses")
            .into_iter()
            .map(|r| (r.name().to_string(), Arc::new(r)))
            .collect()
    })
}

pub fn builtin_ring(name: &str) -> Result<Arc<GradedRingPresentation>, AtlasError> {
    builtin_rings().get(name).cloned().ok_or_else(|| AtlasError::UnknownSpace(name.into()))
}

/// A variable list `x:2,y:8` or the name of a built-in ring.
fn context_for(space: &str) -> Result<Arc<VariableContext>, String> {
    if let Some(r) = builtin_rings().get(space) {
        return Ok(r.context().clone());
    }
    let mut vars = Vec::new();
    for part in space.split(',') {
        let (name, deg) = part.split_once(':').ok_or_else(|| format!("bad variable list `{space}`"))?;
        let deg: u32 = deg.trim().parse().map_err(|_| format!("bad degree in `{part}`"))?;
        vars.push((name.trim().to_string(), deg));
    }
    VariableContext::new(vars).map_err(|e| e.to_string())
}

/// One entry of one constant, for fault injection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Site {
    pub constant: String,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub citation: String,
    pub millis: u64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("check results serialize")
    }
}

/// What a check function reports back.
pub(crate) struct Outcome {
    pub passed: bool,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Serialize)]
pub enum SpaceData {
    Ring(#[serde(serialize_with = "ser_ring")] Arc<GradedRingPresentation>),
    /// Graded groups without products.
    Groups(Vec<(u32, FgAbelianGroup)>),
}

fn ser_ring<S: serde::Serializer>(r: &Arc<GradedRingPresentation>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone)]
pub struct SpaceEntry {
    pub name: String,
    pub description: String,
    pub data: SpaceData,
    /// How `[X]` is fixed: a monomial that evaluates positively, or the
    /// constant holding a table of top-degree values.
    pub fundamental_class: Option<String>,
    pub classes: Vec<(String, CharClassTable)>,
    /// Constants bearing on this space.
    pub constants: Vec<Constant>,
}

#[derive(Debug)]
pub struct Atlas {
    constants: Vec<Constant>,
    chirality: Chirality,
    phi: [OnceLock<Result<PhiSolution, String>>; 2],
}

impl Clone for Atlas {
    fn clone(&self) -> Self {
        Atlas::from_constants(self.constants.clone(), self.chirality)
    }
}

impl Default for Atlas {
    fn default() -> Self {
        Atlas::new()
    }
}

impl Atlas {
    pub fn new() -> Atlas {
        Atlas::from_constants(default_constants(), Chirality::Even)
    }

    pub fn from_constants(constants: Vec<Constant>, chirality: Chirality) -> Atlas {
        Atlas { constants, chirality, phi: [OnceLock::new(), OnceLock::new()] }
    }

    /// The half-spin representation tried first by the Chern checks.
    pub fn with_chirality(&self, chirality: Chirality) -> Atlas {
        Atlas::from_constants(self.constants.clone(), chirality)
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn constants(&self) -> &[Constant] {
        &self.constants
    }

    pub fn constant(&self, id: &str) -> Result<&Constant, AtlasError> {
        self.constants.iter().find(|c| c.id == id).ok_or_else(|| AtlasError::UnknownConstant(id.into()))
    }

    fn bad(id: &str, message: impl Into<String>) -> AtlasError {
        AtlasError::BadConstant { id: id.into(), message: message.into() }
    }

    pub fn integers(&self, id: &str) -> Result<Vec<i64>, AtlasError> {
        match &self.constant(id)?.value {
            ConstValue::Integers { values } => Ok(values.clone()),
            _ => Err(Self::bad(id, "not an integer list")),
        }
    }

    pub fn rationals(&self, id: &str) -> Result<Vec<Rational>, AtlasError> {
        match &self.constant(id)?.value {
            ConstValue::Rationals { values } => values
                .iter()
                .map(|v| v.parse::<Rational>().map_err(|e| Self::bad(id, format!("`{v}`: {e}"))))
                .collect(),
            _ => Err(Self::bad(id, "not a rational list")),
        }
    }

    pub fn polynomials(&self, id: &str) -> Result<Vec<Polynomial>, AtlasError> {
        match &self.constant(id)?.value {
            ConstValue::Polynomials { space, values } => {
                let ctx = context_for(space).map_err(|e| Self::bad(id, e))?;
                values
                    .iter()
                    .map(|v| Polynomial::parse(&ctx, v).map_err(|e| Self::bad(id, format!("`{v}`: {e}"))))
                    .collect()
            }
            _ => Err(Self::bad(id, "not a polynomial list")),
        }
    }

    pub fn polynomial(&self, id: &str) -> Result<Polynomial, AtlasError> {
        self.polynomials(id)?.into_iter().next().ok_or_else(|| Self::bad(id, "empty"))
    }

    /// Every perturbable entry.
    pub fn sites(&self) -> Vec<Site> {
        self.constants
            .iter()
            .flat_map(|c| (0..c.value.len()).map(move |i| Site { constant: c.id.clone(), index: i }))
            .collect()
    }

    /// A copy with one entry moved by `delta`: integers and rationals are
    /// shifted, polynomials have `delta` added to their leading coefficient.
    pub fn perturbed(&self, site: &Site, delta: i64) -> Result<Atlas, AtlasError> {
        let mut constants = self.constants.clone();
        let c = constants
            .iter_mut()
            .find(|c| c.id == site.constant)
            .ok_or_else(|| AtlasError::UnknownConstant(site.constant.clone()))?;
        let out_of_range = || Self::bad(&site.constant, format!("no entry {}", site.index));
        match &mut c.value {
            ConstValue::Integers { values } => {
                let v = values.get_mut(site.index).ok_or_else(out_of_range)?;
                *v += delta;
            }
            ConstValue::Rationals { values } => {
                let v = values.get_mut(site.index).ok_or_else(out_of_range)?;
                let r: Rational = v.parse().map_err(|e| Self::bad(&site.constant, format!("{e}")))?;
                *v = (r + Rational::from_integer(delta.into())).to_string();
            }
            ConstValue::Polynomials { space, values } => {
                let ctx = context_for(space).map_err(|e| Self::bad(&site.constant, e))?;
                let v = values.get_mut(site.index).ok_or_else(out_of_range)?;
                let p = Polynomial::parse(&ctx, v).map_err(|e| Self::bad(&site.constant, e.to_string()))?;
                let shift = Rational::from_integer(delta.into());
                let lead = p.sorted_terms().first().map(|(m, _)| (*m).clone());
                let q = match lead {
                    Some(m) => &p + &Polynomial::monomial(&ctx, m, shift),
                    None => Polynomial::constant(&ctx, shift),
                };
                *v = q.to_string();
            }
        }
        Ok(Atlas::from_constants(constants, self.chirality))
    }

    pub fn space_names() -> &'static [&'static str] {
        &["P", "Q", "R", "S", "Gr2R9"]
    }

    pub fn get_space(&self, name: &str) -> Result<SpaceEntry, AtlasError> {
        let related = |ids: &[&str]| -> Result<Vec<Constant>, AtlasError> {
            ids.iter().map(|id| self.constant(id).cloned()).collect()
        };
        let entry = match name {
            "P" => {
                let ring = builtin_ring("P")?;
                let pont = CharClassTable::from_total(ClassKind::Pontryagin, &self.polynomial("pontryagin_TP")?)
                    .map_err(|e| Self::bad("pontryagin_TP", e.to_string()))?;
                let euler = self.polynomial("euler_TP")?;
                let euler = CharClassTable::new(ClassKind::Euler, [(16, euler)].into())
                    .map_err(|e| Self::bad("euler_TP", e.to_string()))?;
                SpaceEntry {
                    name: "P".into(),
                    description: "F4/Spin(9), the octonionic projective plane; dimension 16".into(),
                    data: SpaceData::Ring(ring),
                    fundamental_class: Some("a^2".into()),
                    classes: vec![("p(TP)".into(), pont), ("e(TP)".into(), euler)],
                    constants: related(&["betti_P", "pontryagin_TP", "euler_TP", "pontryagin_U9", "sw_U9"])?,
                }
            }
            "Q" => SpaceEntry {
                name: "Q".into(),
                description: "the complex quadric of complex dimension 15; dimension 30".into(),
                data: SpaceData::Ring(builtin_ring("Q")?),
                fundamental_class: Some("s^3*v^3".into()),
                classes: Vec::new(),
                constants: related(&[
                    "poincare_Q_base",
                    "poincare_Q_fibre",
                    "pairing_Q30_monomials",
                    "pairing_Q30_values",
                    "a_in_Q",
                    "relation_Q16",
                    "leray_hirsch_basis",
                ])?,
            },
            "R" => {
                let chern = self.polynomials("chern_TcR")?;
                let classes: BTreeMap<u32, Polynomial> =
                    chern.into_iter().enumerate().map(|(i, p)| (i as u32 + 1, p)).collect();
                let table = CharClassTable::new(ClassKind::Chern, classes)
                    .map_err(|e| Self::bad("chern_TcR", e.to_string()))?;
                SpaceEntry {
                    name: "R".into(),
                    description: "dimension 32; contains P and Q with complementary pieces".into(),
                    data: SpaceData::Ring(builtin_ring("R")?),
                    fundamental_class: Some("table pairing_R32_values".into()),
                    classes: vec![("c(T_cR)".into(), table)],
                    constants: related(&["betti_R", "pairing_R32_monomials", "pairing_R32_values", "relations_R", "chern_TcR"])?,
                }
            }
            "S" => {
                let mut groups: Vec<(u32, FgAbelianGroup)> = self
                    .integers("gysin_S_free")?
                    .into_iter()
                    .map(|d| (d as u32, FgAbelianGroup::free(1)))
                    .collect();
                let tors = self.integers("gysin_S_torsion")?;
                if let [d, order] = tors[..] {
                    let g = FgAbelianGroup::new(0, vec![BigInt::from(order)])
                        .map_err(|e| Self::bad("gysin_S_torsion", e))?;
                    groups.push((d as u32, g));
                }
                groups.sort_by_key(|(d, _)| *d);
                SpaceEntry {
                    name: "S".into(),
                    description: "an S^15-bundle over P with Euler class e(TP); dimension 31".into(),
                    data: SpaceData::Groups(groups),
                    fundamental_class: None,
                    classes: Vec::new(),
                    constants: related(&["sphere_dim_S", "gysin_S_free", "gysin_S_torsion", "euler_TP"])?,
                }
            }
            "Gr2R9" => SpaceEntry {
                name: "Gr2R9".into(),
                description: "oriented 2-planes in R^9; dimension 14".into(),
                data: SpaceData::Ring(builtin_ring("Gr2R9")?),
                fundamental_class: Some("e^3*b".into()),
                classes: Vec::new(),
                constants: related(&["poincare_Q_base"])?,
            },
            other => return Err(AtlasError::UnknownSpace(other.into())),
        };
        Ok(entry)
    }

    /// Solution of the Chern equations with the given chirality, computed once.
    pub fn phi(&self, chirality: Chirality) -> Result<&PhiSolution, String> {
        let slot = match chirality {
            Chirality::Even => &self.phi[0],
            Chirality::Odd => &self.phi[1],
        };
        slot.get_or_init(|| checks::solve_phi_for(self, chirality)).as_ref().map_err(Clone::clone)
    }

    pub fn check_names() -> Vec<&'static str> {
        CHECKS.iter().map(|c| c.0).collect()
    }

    /// `(name, citation)` for every check, in run order.
    pub fn check_catalog() -> Vec<(&'static str, &'static str)> {
        CHECKS.iter().map(|c| (c.0, c.1)).collect()
    }

    pub fn run_check(&self, name: &str) -> Result<CheckResult, AtlasError> {
        let (check, citation, f) =
            CHECKS.iter().find(|c| c.0 == name).ok_or_else(|| AtlasError::UnknownCheck(name.into()))?;
        let start = Instant::now();
        let outcome = f(self).unwrap_or_else(|e| Outcome {
            passed: false,
            expected: String::new(),
            computed: format!("error: {e}"),
        });
        Ok(CheckResult {
            check: check.to_string(),
            status: if outcome.passed { Status::Pass } else { Status::Fail },
            expected: outcome.expected,
            computed: outcome.computed,
            citation: citation.to_string(),
            millis: start.elapsed().as_millis() as u64,
        })
    }

    /// The named checks, run concurrently, returned in the order of [`CHECKS`].
    pub fn run_checks(&self, names: &[&str]) -> Result<Vec<CheckResult>, AtlasError> {
        for n in names {
            if !CHECKS.iter().any(|c| c.0 == *n) {
                return Err(AtlasError::UnknownCheck(n.to_string()));
            }
        }
        let mut results: HashMap<&str, CheckResult> = std::thread::scope(|scope| {
            let handles: Vec<_> = names
                .iter()
                .map(|n| (*n, scope.spawn(move || self.run_check(n))))
                .collect();
            handles
                .into_iter()
                .map(|(n, h)| (n, h.join().expect("check thread panicked").expect("known check")))
                .collect()
        });
        Ok(CHECKS.iter().filter_map(|c| results.remove(c.0)).collect())
    }

    pub fn run_all(&self) -> Vec<CheckResult> {
        self.run_checks(&Atlas::check_names()).expect("all names known")
    }
}

#[cfg(test)]
mod tests;
