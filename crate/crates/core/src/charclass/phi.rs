//! Solving for the map from the invariant generators `q1..q4, e, y` to
//! rational cohomology classes, given the Chern classes on both sides.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::invariants::invariant_reduce;
use super::weights::{spin_weights, vector_weights, Chirality, WeightSystem};
use super::{g_context, CharClassError};
use crate::exactpoly::{Polynomial, Rational, VariableContext};
use crate::gring::{FundamentalClass, GradedRingPresentation};
use crate::polysys::{propagate, SystemError};

/// Coordinates of `phi(c_k) - target_k` in the degree-`2k` piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub index: usize,
    pub degree: u32,
    pub coordinates: Vec<Rational>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone)]
pub struct PhiSolution {
    ring: Arc<GradedRingPresentation>,
    /// Image of each generator of the invariant ring.
    pub images: BTreeMap<String, Polynomial>,
    /// Degree of the equation at which each generator's image was fixed.
    pub solved_at: BTreeMap<String, u32>,
    pub residuals: Vec<Residual>,
}

impl PhiSolution {
    pub fn ring(&self) -> &Arc<GradedRingPresentation> {
        &self.ring
    }

    /// Number of scalar equations checked.
    pub fn scalar_equations(&self) -> usize {
        self.residuals.iter().map(|r| r.coordinates.len()).sum()
    }

    /// Number of rational unknowns solved for.
    pub fn unknowns(&self) -> usize {
        g_context()
            .weights()
            .iter()
            .map(|w| self.ring.rank(*w))
            .sum()
    }

    pub fn all_residuals_zero(&self) -> bool {
        self.residuals.iter().all(Residual::is_zero)
    }

    /// `phi(p)` for `p` in the invariant ring, reduced.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, CharClassError> {
        let subs: Vec<(&str, Polynomial)> = self.images.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        let image = p.substitute(self.ring.context(), &subs, false)?;
        Ok(self.ring.reduce(&image)?)
    }
}

/// Degree by degree, the images of the generators first met in that degree
/// are determined from `phi(c_k) = targets[k-1]`; afterwards every equation
/// is checked.
pub fn solve_phi(
    ring: Arc<GradedRingPresentation>,
    chern: &[Polynomial],
    targets: &[Polynomial],
) -> Result<PhiSolution, CharClassError> {
    if chern.len() != targets.len() {
        return Err(CharClassError::Internal(format!(
            "{} Chern classes against {} targets",
            chern.len(),
            targets.len()
        )));
    }
    let gctx = g_context();
    let rctx = ring.context().clone();

    // One unknown per basis element of the piece each generator lands in.
    let mut params: Vec<(String, usize, usize)> = Vec::new(); // (name, generator, basis index)
    for (gi, w) in gctx.weights().iter().enumerate() {
        for bi in 0..ring.rank(*w) {
            params.push((format!("{}_{bi}", gctx.names()[gi]), gi, bi));
        }
    }
    let pctx = VariableContext::new(params.iter().map(|(n, _, _)| (n.clone(), 1u32)))?;
    let full = rctx.extended(params.iter().map(|(n, _, _)| (n.clone(), 1u32)))?;
    let mut known: Vec<Option<Rational>> = vec![None; params.len()];
    let mut solved_at = BTreeMap::new();

    let image_in = |known: &[Option<Rational>], gi: usize| -> Result<Polynomial, CharClassError> {
        let basis = ring.graded_basis(gctx.weights()[gi]);
        let mut img = Polynomial::zero(&full);
        for (pi, (name, g, bi)) in params.iter().enumerate() {
            if *g != gi {
                continue;
            }
            let b = basis.basis[*bi].embed(&full)?;
            let coeff = match &known[pi] {
                Some(v) => Polynomial::constant(&full, v.clone()),
                None => Polynomial::var(&full, name)?,
            };
            img = &img + &(&coeff * &b);
        }
        Ok(img)
    };

    for (k, (c, target)) in chern.iter().zip(targets).enumerate() {
        let degree = 2 * (k as u32 + 1);
        let images = (0..gctx.len())
            .map(|gi| Ok((gctx.names()[gi].as_str(), image_in(&known, gi)?)))
            .collect::<Result<Vec<_>, CharClassError>>()?;
        let lhs = c.substitute(&full, &images, false)?;
        let eq = &lhs - &target.embed(&full)?;
        let coords = ring.coordinates_with_parameters(&eq, degree, &pctx)?;
        let eqs: Vec<Polynomial> = coords.into_iter().filter(|p| !p.is_zero()).collect();
        propagate(&eqs, &mut known, &[]).map_err(|e| match e {
            SystemError::Inconsistent(r) => CharClassError::Inconsistent { degree, residual: r },
            other => other.into(),
        })?;
        for (gi, name) in gctx.names().iter().enumerate() {
            let done = params.iter().zip(&known).all(|((_, g, _), v)| *g != gi || v.is_some());
            if done && gctx.weights()[gi] <= degree && !solved_at.contains_key(name) {
                solved_at.insert(name.clone(), degree);
            }
        }
    }

    let open: Vec<String> = params
        .iter()
        .zip(&known)
        .filter(|(_, v)| v.is_none())
        .map(|((n, _, _), _)| n.clone())
        .collect();
    if !open.is_empty() {
        return Err(CharClassError::Underdetermined(open));
    }

    let mut images = BTreeMap::new();
    for (gi, name) in gctx.names().iter().enumerate() {
        let basis = ring.graded_basis(gctx.weights()[gi]);
        let mut img = Polynomial::zero(&rctx);
        for ((_, g, bi), v) in params.iter().zip(&known) {
            if *g == gi {
                img = &img + &basis.basis[*bi].scale(v.as_ref().unwrap());
            }
        }
        images.insert(name.clone(), img);
    }
    let mut solution = PhiSolution { ring: ring.clone(), images, solved_at, residuals: Vec::new() };
    for (k, (c, target)) in chern.iter().zip(targets).enumerate() {
        let degree = 2 * (k as u32 + 1);
        let diff = &solution.apply(c)? - target;
        let coordinates = ring.coordinates_in_degree(&diff.homogeneous_component(degree), degree)?.free;
        let r = Residual { index: k + 1, degree, coordinates };
        if !r.is_zero() {
            return Err(CharClassError::Inconsistent { degree, residual: ring.reduce(&diff)?.to_string() });
        }
        solution.residuals.push(r);
    }
    Ok(solution)
}

/// Chern classes `c_1 .. c_n` of a weight system, rewritten in the invariant
/// generators.
pub fn reduced_chern_classes(ws: &WeightSystem) -> Result<Vec<Polynomial>, CharClassError> {
    ws.chern_classes(ws.dimension())?.iter().map(invariant_reduce).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleReport {
    /// Reduced component of the product in each degree `0..=top`.
    pub components: Vec<(u32, String)>,
    pub holds: bool,
}

/// `c(L^-1) c(V) c(D (x) L^-1)` after `phi`, where `L^-1` has weight `-4y`,
/// `V` the weights `+-x_i + 2y` and `D (x) L^-1` the half-spin weights
/// shifted by `-y`. The product should be `1`.
pub fn bundle_relation_check(phi: &PhiSolution, chirality: Chirality) -> Result<BundleReport, CharClassError> {
    let ring = phi.ring();
    let top = ring
        .top_degree()
        .ok_or_else(|| CharClassError::Internal("ring without top degree".into()))?;
    let systems = [
        WeightSystem::line(-4),
        vector_weights(10)?.twist(2),
        spin_weights(10, chirality)?.twist(-1),
    ];
    let mut product = Polynomial::one(ring.context());
    for ws in &systems {
        let total = invariant_reduce(&ws.total_chern_class()?)?;
        let image = phi.apply(&total)?;
        product = ring.reduce(&product.mul_truncated(&image, top)?)?;
    }
    let mut components = Vec::new();
    let mut holds = true;
    for d in (0..=top).step_by(2) {
        let part = product.homogeneous_component(d);
        let expected = if d == 0 { Polynomial::one(ring.context()) } else { Polynomial::zero(ring.context()) };
        let diff = &part - &expected.homogeneous_component(d);
        if !ring.is_zero_class(&diff)? {
            holds = false;
        }
        components.push((d, ring.reduce(&part)?.to_string()));
    }
    Ok(BundleReport { components, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub space: String,
    pub evaluated: String,
    pub betti_sum: usize,
    pub holds: bool,
}

/// `<c, [X]>` for the top Chern (or Euler) class `c`, compared with the sum
/// of the Betti numbers.
pub fn euler_characteristic_check(fclass: &FundamentalClass, top_class: &Polynomial) -> Result<EulerCheck, CharClassError> {
    let ring = fclass.ring();
    let value = fclass.evaluate(top_class)?;
    let betti_sum: usize = ring.poincare_series(fclass.top_degree()).iter().sum();
    let holds = value == Rational::from_integer(betti_sum.into());
    Ok(EulerCheck { space: ring.name().into(), evaluated: value.to_string(), betti_sum, holds })
}
