//! Characteristic classes: splitting-principle Chern classes of Spin(10) x U(1)
//! representations, reduction to invariant generators, Whitney-sum division,
//! Gysin sequences, and the map from invariant generators to a target ring
//! recovered from Chern class data.
//!
//! Representation weights live in the context `x1..x5, y` (all of degree 2);
//! invariants in `q1:4, q2:8, q3:12, q4:16, e:10, y:2`, where `q_i` is the
//! `i`-th elementary symmetric polynomial in the `x_j^2` and `e = x1..x5`.

mod gysin;
mod invariants;
mod phi;
mod weights;
mod whitney;

use std::sync::{Arc, OnceLock};

use crate::exactpoly::{PolyError, VariableContext};
use crate::gring::RingError;
use crate::polysys::SystemError;

pub use gysin::{gysin_sphere_bundle, nonzero_groups, GysinDegree};
pub use invariants::{expand_invariant, invariant_reduce};
pub use phi::{
    bundle_relation_check, euler_characteristic_check, reduced_chern_classes, solve_phi, BundleReport,
    EulerCheck, PhiSolution, Residual,
};
pub use weights::{
    apply_signed_permutation, chern_from_roots, spin_weights, vector_weights, weyl_generator_images, Chirality,
    WeightSystem,
};
pub use whitney::{
    vanishing_to_relation, whitney_quotient, CharClassTable, ClassKind, Coefficients, InducedRelation, Vanishing,
};

/// Number of weight coordinates: `x1..x5` and `y`.
pub const NX: usize = 6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CharClassError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not invariant under W(D5): {0}")]
    NotInvariant(String),
    #[error("polynomial is not in the expected context: {0}")]
    WrongContext(String),
    #[error("equations in degree {degree} are inconsistent; residual {residual}")]
    Inconsistent { degree: u32, residual: String },
    #[error("unknowns left undetermined: {0:?}")]
    Underdetermined(Vec<String>),
    #[error("{class} is not divisible by {divisor}")]
    NotDivisible { class: String, divisor: String },
    #[error("integer overflow in root expansion")]
    Overflow,
    #[error("internal error: {0}")]
    Internal(String),
}

/// `x1, .., x5, y`, all of degree 2.
pub fn x_context() -> Arc<VariableContext> {
    static CTX: OnceLock<Arc<VariableContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        VariableContext::new([("x1", 2), ("x2", 2), ("x3", 2), ("x4", 2), ("x5", 2), ("y", 2)]).unwrap()
    })
    .clone()
}

/// `q1:4, q2:8, q3:12, q4:16, e:10, y:2`.
pub fn g_context() -> Arc<VariableContext> {
    static CTX: OnceLock<Arc<VariableContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        VariableContext::new([("q1", 4), ("q2", 8), ("q3", 12), ("q4", 16), ("e", 10), ("y", 2)]).unwrap()
    })
    .clone()
}
