//! Randomized invariants, shared by the property tests and the acceptance
//! run. Each property takes a case count and reports the first
//! counterexample (after shrinking) as text.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use cohring::atlas::builtin_ring;
use cohring::charclass::{expand_invariant, g_context, invariant_reduce, weyl_generator_images, x_context};
use cohring::exactpoly::{integer, rational, Monomial, Polynomial, VariableContext};
use cohring::gring::GradedRingPresentation;
use cohring::zlinalg::{cokernel, determinant, hermite_normal_form, smith_normal_form, IntMatrix};

pub const CASES: u32 = 256;

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let count = std::sync::atomic::AtomicU32::new(0);
    runner
        .run(&strategy, |v| {
            count.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            test(v)
        })
        .map_err(|e| e.to_string())?;
    let ran = count.into_inner();
    if ran < cases {
        return Err(format!("only {ran} of {cases} cases ran"));
    }
    Ok(())
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)*)));
        }
    };
}

// ---- polynomials -----------------------------------------------------------

fn xyz() -> Arc<VariableContext> {
    VariableContext::new([("x", 2u32), ("y", 2), ("z", 4)]).unwrap()
}

/// Up to five terms in `x, y, z` with exponents below four and small
/// rational coefficients.
fn poly(ctx: Arc<VariableContext>) -> impl Strategy<Value = Polynomial> {
    let term = (prop::array::uniform3(0u32..4), -9i64..10, 1i64..4);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        terms.into_iter().fold(Polynomial::zero(&ctx), |acc, (e, n, d)| {
            &acc + &Polynomial::monomial(&ctx, Monomial(e.to_vec()), rational(n, d))
        })
    })
}

pub fn polynomial_ring_laws(cases: u32) -> Result<(), String> {
    let ctx = xyz();
    let three = (poly(ctx.clone()), poly(ctx.clone()), poly(ctx.clone()));
    run(cases, three, |(a, b, c)| {
        let zero = Polynomial::zero(a.context());
        let one = Polynomial::one(a.context());
        ensure!(&a + &b == &b + &a, "addition not commutative");
        ensure!(&a * &b == &b * &a, "multiplication not commutative");
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "addition not associative");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "multiplication not associative");
        ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "not distributive");
        ensure!(&a + &zero == a && &a * &one == a, "identities fail");
        ensure!((&a - &a.clone()).is_zero() && &a + &(-&a) == zero, "no additive inverse");
        ensure!(&a * &zero == zero, "zero does not absorb");
        ensure!(a.pow(3) == &(&a * &a) * &a, "pow disagrees with products");
        let back = Polynomial::parse(a.context(), &a.to_string()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure!(back == a, "`{a}` reparses as `{back}`");
        if !a.is_zero() && !b.is_zero() {
            let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
            ensure!((&a * &b).degree() == Some(da + db), "degree of product");
        }
        let comps = a.components();
        let sum = comps.values().fold(zero.clone(), |s, p| &s + p);
        ensure!(sum == a, "homogeneous components do not sum back");
        Ok(())
    })
}

// ---- integer matrices ------------------------------------------------------

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-12i64..13, r * c).prop_map(move |v| {
            IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

/// A product of elementary operations applied to the identity.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            if k % 2 == 0 {
                u.negate_row(i);
            }
        } else if k == 0 {
            u.swap_rows(i, j);
        } else {
            u.add_row_multiple(i, j, &BigInt::from(k));
        }
    }
    u
}

fn unit_det(m: &IntMatrix) -> bool {
    determinant(m).map(|d| d.abs().is_one()).unwrap_or(false)
}

pub fn hermite_reconstruction(cases: u32) -> Result<(), String> {
    run(cases, matrix(), |m| {
        let hnf = hermite_normal_form(&m);
        ensure!(hnf.u.mul(&m).unwrap() == hnf.h, "U M != H for {:?}", m.to_string_rows());
        ensure!(unit_det(&hnf.u), "U not unimodular");
        let h = &hnf.h;
        ensure!(hnf.pivots.len() == m.rank(), "pivot count differs from rank");
        for (r, &c) in hnf.pivots.iter().enumerate() {
            let p = h.get(r, c);
            ensure!(p.is_positive(), "pivot not positive");
            for i in 0..h.rows() {
                let x = h.get(i, c);
                if i < r {
                    ensure!(!x.is_negative() && x < p, "entry above pivot not reduced");
                } else if i > r {
                    ensure!(x.is_zero(), "entry below pivot");
                }
            }
            ensure!((0..c).all(|j| h.get(r, j).is_zero()), "entries left of pivot");
            if r > 0 {
                ensure!(hnf.pivots[r - 1] < c, "pivots not increasing");
            }
        }
        ensure!((hnf.pivots.len()..h.rows()).all(|i| h.row(i).iter().all(Zero::is_zero)), "nonzero row after pivots");
        Ok(())
    })
}

pub fn smith_reconstruction(cases: u32) -> Result<(), String> {
    run(cases, matrix(), |m| {
        let snf = smith_normal_form(&m);
        let d = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        ensure!(d == snf.d, "U M V != D for {:?}", m.to_string_rows());
        ensure!(snf.d.is_diagonal(), "D not diagonal");
        ensure!(unit_det(&snf.u) && unit_det(&snf.v), "U or V not unimodular");
        let diag = snf.diagonal();
        ensure!(diag.iter().all(|x| !x.is_negative()), "negative invariant factor");
        for w in diag.windows(2) {
            ensure!(
                (w[0].is_zero() && w[1].is_zero()) || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()),
                "divisibility chain broken: {:?}",
                diag
            );
        }
        ensure!(snf.rank() == m.rank(), "rank differs");
        Ok(())
    })
}

pub fn presentation_invariance(cases: u32) -> Result<(), String> {
    let ops = prop::collection::vec((0usize..6, 0usize..6, -3i64..4), 0..12);
    run(cases, (matrix(), ops.clone(), ops), |(m, left, right)| {
        let a = unimodular(m.rows(), &left);
        let b = unimodular(m.cols(), &right);
        let moved = a.mul(&m).unwrap().mul(&b).unwrap();
        ensure!(cokernel(&moved) == cokernel(&m), "cokernel changed under a change of basis");
        let order: BigInt = cokernel(&m).torsion().iter().product();
        if m.is_square() && m.rank() == m.rows() {
            ensure!(determinant(&m).unwrap().abs() == order, "|det| is not the order of the cokernel");
        }
        Ok(())
    })
}

// ---- invariant polynomials -------------------------------------------------

/// Sums of up to four monomials in `q1..q4, e, y` of weighted degree at
/// most 24.
fn invariant_poly() -> impl Strategy<Value = Polynomial> {
    let g = g_context();
    let monomials: Vec<Monomial> = (0..=24).step_by(2).flat_map(|d| g.monomials_of_degree(d)).collect();
    let term = (prop::sample::select(monomials), -5i64..6, 1i64..3);
    prop::collection::vec(term, 1..5).prop_map(move |terms| {
        terms.into_iter().fold(Polynomial::zero(&g), |acc, (m, n, d)| &acc + &Polynomial::monomial(&g, m, rational(n, d)))
    })
}

pub fn invariant_round_trip(cases: u32) -> Result<(), String> {
    run(cases, invariant_poly(), |g| {
        let x = expand_invariant(&g).map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure!(weyl_generator_images(&x).iter().all(|w| w == &x), "expansion of `{g}` is not invariant");
        let back = invariant_reduce(&x).map_err(|e| TestCaseError::fail(format!("{g}: {e}")))?;
        ensure!(back == g, "`{g}` came back as `{back}`");
        if !x.is_zero() {
            let x1 = Polynomial::var(&x_context(), "x1").unwrap();
            ensure!(invariant_reduce(&(&x + &x1)).is_err(), "accepted a non-invariant polynomial");
        }
        Ok(())
    })
}

// ---- quotient rings --------------------------------------------------------

/// A homogeneous class of the given degree with small integer coefficients.
fn homogeneous(ring: &Arc<GradedRingPresentation>, degree: u32, coeffs: &[i64]) -> Polynomial {
    let ctx = ring.context();
    ctx.monomials_of_degree(degree)
        .into_iter()
        .zip(coeffs.iter().cycle())
        .fold(Polynomial::zero(ctx), |acc, (m, &c)| &acc + &Polynomial::monomial(ctx, m, integer(c)))
}

pub fn quotient_well_defined(cases: u32) -> Result<(), String> {
    let rings: Vec<Arc<GradedRingPresentation>> =
        ["R", "Q", "P", "Gr2R9"].iter().map(|n| builtin_ring(n).unwrap()).collect();
    let strategy = (
        0usize..4,
        0u32..17,
        0u32..17,
        prop::collection::vec(-4i64..5, 1..8),
        prop::collection::vec(-4i64..5, 1..8),
        prop::collection::vec(-4i64..5, 1..8),
    );
    run(cases, strategy, |(which, d1, d2, c1, c2, c3)| {
        let ring = &rings[which];
        let top = ring.top_degree().unwrap();
        let (d1, d2) = ((2 * d1).min(top), (2 * d2).min(top));
        let p = homogeneous(ring, d1, &c1);
        let q = homogeneous(ring, d2, &c2);
        let err = |e: cohring::gring::RingError| TestCaseError::fail(e.to_string());
        let rp = ring.reduce(&p).map_err(err)?;
        ensure!(ring.reduce(&rp).map_err(err)? == rp, "reduce is not idempotent on `{p}`");
        ensure!(ring.is_zero_class(&(&p - &rp)).map_err(err)?, "`{p}` differs from its normal form");

        // Adding any multiple of a relation does not move the class.
        for rel in ring.relations() {
            let rd = rel.homogeneous_degree().unwrap();
            if rd > d1 {
                continue;
            }
            let h = homogeneous(ring, d1 - rd, &c3);
            let moved = &p + &(&h * rel);
            ensure!(ring.reduce(&moved).map_err(err)? == rp, "`{p}` + ({h})({rel}) reduces differently");
        }

        // Products of representatives depend only on the classes.
        let full = ring.multiply(&p, &q).map_err(err)?;
        let via = ring.multiply(&rp, &ring.reduce(&q).map_err(err)?).map_err(err)?;
        ensure!(full == via, "product depends on representatives");
        ensure!(full == ring.reduce(&(&p * &q)).map_err(err)?, "multiply disagrees with reducing the product");
        if d1 + d2 > top {
            ensure!(full.is_zero(), "nonzero class above the top degree");
        }
        Ok(())
    })
}

pub const PROPERTIES: &[(&str, fn(u32) -> Result<(), String>)] = &[
    ("polynomial ring laws", polynomial_ring_laws),
    ("Hermite reconstruction", hermite_reconstruction),
    ("Smith reconstruction", smith_reconstruction),
    ("presentation invariance", presentation_invariance),
    ("invariant round trip", invariant_round_trip),
    ("quotient well-definedness", quotient_well_defined),
];
