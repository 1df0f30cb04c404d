//! Cohomology of a sphere bundle from the Gysin sequence.

use serde::Serialize;

use super::CharClassError;
use crate::exactpoly::Polynomial;
use crate::gring::{GradedRingPresentation, RingError};
use crate::zlinalg::{cokernel, FgAbelianGroup, IntMatrix};

/// `H^i` of the total space, assembled from
/// `0 -> coker(e: H^{i-n-1} -> H^i) -> H^i(E) -> ker(e: H^{i-n} -> H^{i+1}) -> 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GysinDegree {
    pub degree: u32,
    pub cokernel: FgAbelianGroup,
    pub kernel: FgAbelianGroup,
    /// Set when at most one of the two pieces is nonzero.
    pub group: Option<FgAbelianGroup>,
}

impl GysinDegree {
    pub fn is_ambiguous(&self) -> bool {
        self.group.is_none()
    }
}

/// Matrix of multiplication by `euler` from degree `d` to `d + |euler|`.
fn multiplication_matrix(
    base: &GradedRingPresentation,
    euler: &Polynomial,
    from: u32,
    shift: u32,
) -> Result<IntMatrix, CharClassError> {
    let src = base.graded_basis(from);
    let dst = base.graded_basis(from + shift);
    let mut cols = Vec::with_capacity(src.rank());
    for b in &src.basis {
        let prod = b * euler;
        let c = base.coordinates_in_degree(&prod.homogeneous_component(from + shift), from + shift)?;
        cols.push(
            c.integral()
                .ok_or_else(|| CharClassError::Internal(format!("non-integral product {prod}")))?,
        );
    }
    Ok(IntMatrix::from_columns(dst.rank(), &cols))
}

/// Graded groups of the total space of an `S^n` bundle with Euler class
/// `euler` over a torsion-free base, degrees `0..=top + n`.
pub fn gysin_sphere_bundle(
    base: &GradedRingPresentation,
    euler: &Polynomial,
    fibre_dim: u32,
) -> Result<Vec<GysinDegree>, CharClassError> {
    let top = base
        .top_degree()
        .ok_or_else(|| CharClassError::Ring(RingError::NoTopDegree(base.name().into())))?;
    if euler.context() != base.context() {
        return Err(CharClassError::WrongContext(euler.to_string()));
    }
    let shift = fibre_dim + 1;
    if !euler.is_zero() && euler.homogeneous_degree() != Some(shift) {
        return Err(CharClassError::Internal(format!(
            "Euler class {euler} must be homogeneous of degree {shift}"
        )));
    }
    let torsion = base.check_torsion_free(top);
    if let Some((d, _)) = torsion.first() {
        return Err(CharClassError::Ring(RingError::Torsion(*d)));
    }
    let mut out = Vec::new();
    for i in 0..=top + fibre_dim {
        // coker(e: H^{i-n-1} -> H^i)
        let cokernel_group = if i >= shift {
            cokernel(&multiplication_matrix(base, euler, i - shift, shift)?)
        } else {
            FgAbelianGroup::free(base.rank(i))
        };
        // ker(e: H^{i-n} -> H^{i+1})
        let kernel_group = if i >= fibre_dim {
            let m = multiplication_matrix(base, euler, i - fibre_dim, shift)?;
            FgAbelianGroup::free(m.cols() - m.rank())
        } else {
            FgAbelianGroup::trivial()
        };
        let group = match (cokernel_group.is_trivial(), kernel_group.is_trivial()) {
            (true, _) => Some(kernel_group.clone()),
            (false, true) => Some(cokernel_group.clone()),
            (false, false) => None,
        };
        out.push(GysinDegree { degree: i, cokernel: cokernel_group, kernel: kernel_group, group });
    }
    Ok(out)
}

/// `[(degree, group)]` for the nonzero, unambiguous degrees.
pub fn nonzero_groups(table: &[GysinDegree]) -> Vec<(u32, FgAbelianGroup)> {
    table
        .iter()
        .filter_map(|g| g.group.as_ref().filter(|x| !x.is_trivial()).map(|x| (g.degree, x.clone())))
        .collect()
}
