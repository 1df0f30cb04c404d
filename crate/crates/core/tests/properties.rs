mod common;

use common::CASES;

#[test]
fn polynomial_ring_laws() {
    common::polynomial_ring_laws(CASES).unwrap();
}

#[test]
fn hermite_reconstruction() {
    common::hermite_reconstruction(CASES).unwrap();
}

#[test]
fn smith_reconstruction() {
    common::smith_reconstruction(CASES).unwrap();
}

#[test]
fn presentation_invariance() {
    common::presentation_invariance(CASES).unwrap();
}

#[test]
fn invariant_round_trip() {
    common::invariant_round_trip(CASES).unwrap();
}

#[test]
fn quotient_well_defined() {
    common::quotient_well_defined(CASES).unwrap();
}
