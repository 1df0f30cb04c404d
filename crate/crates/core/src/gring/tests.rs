use std::sync::Arc;

use num_bigint::BigInt;

use super::*;
use crate::exactpoly::rational;

fn ring(name: &str, gens: &[(&str, u32)], rels: &[&str], top: Option<u32>) -> Arc<GradedRingPresentation> {
    let ctx = VariableContext::new(gens.iter().copied()).unwrap();
    let rels = rels.iter().map(|r| Polynomial::parse(&ctx, r).unwrap()).collect();
    Arc::new(GradedRingPresentation::new(name, ctx, rels, top).unwrap())
}

fn r() -> Arc<GradedRingPresentation> {
    ring("R", &[("t", 2), ("w", 8)], &["t^9 - 3*t*w^2", "w^3 - 9*w*t^8 + 15*w^2*t^4"], Some(32))
}

fn q() -> Arc<GradedRingPresentation> {
    ring("Q", &[("s", 2), ("v", 8)], &["s^8 - 3*v^2", "(2*v - s^4)^3"], Some(30))
}

fn p() -> Arc<GradedRingPresentation> {
    ring("P", &[("a", 8)], &["a^3"], Some(16))
}

fn names(b: &GradedPieceBasis, ring: &GradedRingPresentation) -> Vec<String> {
    b.basis_monomials
        .as_ref()
        .unwrap()
        .iter()
        .map(|m| m.display(ring.context()))
        .collect()
}

#[test]
fn graded_pieces() {
    let r = r();
    let b16 = r.graded_basis(16);
    assert_eq!(names(&b16, &r), ["t^8", "t^4*w", "w^2"]);
    assert!(b16.torsion.is_empty());
    let b0 = r.graded_basis(0);
    assert_eq!(b0.rank(), 1);
    assert_eq!(b0.basis[0], Polynomial::one(r.context()));
    assert_eq!(names(&r.graded_basis(18), &r), ["t^5*w", "t*w^2"]);
    assert_eq!(r.graded_basis(3).rank(), 0);
    let q30 = q().graded_basis(30);
    assert_eq!(q30.group(), FgAbelianGroup::free(1));
    assert!(q30.basis_monomials.is_none());
}

#[test]
fn basis_coordinates_are_the_identity() {
    for ring in [r(), q(), p()] {
        for d in (0..=ring.top_degree().unwrap()).step_by(2) {
            let b = ring.graded_basis(d);
            for (i, e) in b.basis.iter().enumerate() {
                let c = ring.coordinates_in_degree(e, d).unwrap();
                for (j, x) in c.free.iter().enumerate() {
                    assert_eq!(*x, Rational::from_integer(BigInt::from((i == j) as i32)));
                }
            }
        }
    }
}

#[test]
fn normal_forms() {
    let r = r();
    let t9 = r.parse("t^9").unwrap();
    assert_eq!(r.reduce(&t9).unwrap().to_string(), "3*t*w^2");
    let q = q();
    assert!(q.is_zero_class(&q.parse("s^15 - 3*s^7*v^2").unwrap()).unwrap());
    assert!(!q.is_zero_class(&q.parse("s^15 - s^7*v^2").unwrap()).unwrap());
    let zero = Polynomial::zero(r.context());
    assert!(r.normal_form(&zero).unwrap().is_zero());
    assert!(matches!(r.normal_form(&r.parse("t + w").unwrap()), Err(RingError::NotHomogeneous(_))));
}

#[test]
fn poincare_series_and_torsion() {
    let r = r();
    let even: Vec<usize> = r.poincare_series(32).into_iter().step_by(2).collect();
    assert_eq!(even, [1, 1, 1, 1, 2, 2, 2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1]);
    let p = p().poincare_series(16);
    assert_eq!((p[0], p[8], p[16], p.iter().sum::<usize>()), (1, 1, 1, 3));

    // (1 + x^2 + ... + x^14)(1 + x^8 + x^16)
    let mut expected = vec![0usize; 31];
    for i in (0..=14).step_by(2) {
        for j in [0, 8, 16] {
            expected[i + j] += 1;
        }
    }
    assert_eq!(q().poincare_series(30), expected);

    assert!(r.check_torsion_free(32).is_empty());
    assert!(q().check_torsion_free(30).is_empty());
    let bad = ring("T", &[("a", 8)], &["3*a^2"], None);
    assert_eq!(bad.check_torsion_free(16), vec![(16, vec![BigInt::from(3)])]);
    let b = bad.graded_basis(16);
    assert_eq!(b.group().to_string(), "Z/3");
    let c = bad.normal_form(&bad.parse("4*a^2").unwrap()).unwrap();
    assert_eq!(c.torsion, vec![BigInt::from(1)]);
    assert!(bad.is_zero_class(&bad.parse("6*a^2").unwrap()).unwrap());
}

#[test]
fn rejects_bad_presentations() {
    let ctx = VariableContext::new([("t", 2), ("w", 8)]).unwrap();
    let inhom = Polynomial::parse(&ctx, "t + w").unwrap();
    assert!(matches!(
        GradedRingPresentation::new("X", ctx.clone(), vec![inhom], None),
        Err(RingError::InhomogeneousRelation(_))
    ));
    let frac = Polynomial::parse(&ctx, "t/2").unwrap();
    assert!(GradedRingPresentation::new("X", ctx, vec![frac], None).is_err());
    let odd = VariableContext::new([("x", 3)]).unwrap();
    assert!(matches!(
        GradedRingPresentation::new("X", odd, vec![], None),
        Err(RingError::OddGenerator { .. })
    ));
}

#[test]
fn homomorphisms() {
    let (r, q, p) = (r(), q(), p());
    let s = q.parse("s").unwrap();
    let v = q.parse("v").unwrap();
    let j = RingHom::define(r.clone(), q.clone(), &[("t", s.clone()), ("w", v)]).unwrap();
    let img = j.apply(&r.parse("t^8 - 3*w^2").unwrap()).unwrap();
    assert_eq!(img, q.parse("s^8 - 3*v^2").unwrap());
    assert!(q.is_zero_class(&img).unwrap());

    let a = p.parse("a").unwrap();
    let zero = Polynomial::zero(p.context());
    let i = RingHom::define(r.clone(), p.clone(), &[("t", zero.clone()), ("w", a.clone())]).unwrap();
    assert_eq!(i.apply(&r.parse("w^2").unwrap()).unwrap(), p.parse("a^2").unwrap());
    assert!(RingHom::define(r.clone(), p.clone(), &[("t", zero), ("w", -a)]).is_ok());

    let bad = RingHom::define(r.clone(), q.clone(), &[("t", s.clone()), ("w", s.pow(4))]);
    assert!(matches!(bad, Err(RingError::RelationNotPreserved { .. })));

    let id = RingHom::identity(r.clone());
    let x = r.parse("t^3*w - 2*t^7").unwrap();
    assert_eq!(id.apply(&x).unwrap(), x);
    assert!(RingHom::define(r.clone(), q.clone(), &[("t", s)]).is_err());
}

#[test]
fn jstar_isomorphism_below_sixteen() {
    let (r, q) = (r(), q());
    let j = RingHom::define(r.clone(), q.clone(), &[("t", q.parse("s").unwrap()), ("w", q.parse("v").unwrap())])
        .unwrap();
    for d in (0..=14).step_by(2) {
        let m = j.coordinate_matrix(d).unwrap();
        assert!(zlinalg::is_unimodular(&m), "degree {d}");
    }
    assert_eq!(j.coordinate_matrix(16).unwrap().cols(), 3);
}

#[test]
fn umkehr_formulas() {
    let (r, q) = (r(), q());
    let j = RingHom::define(r.clone(), q.clone(), &[("t", q.parse("s").unwrap()), ("w", q.parse("v").unwrap())])
        .unwrap();
    let t = r.parse("t").unwrap();
    for (y, expected) in [("s^7", "t^8"), ("s^3*v", "t^4*w"), ("1", "t"), ("s^8", "t^9")] {
        let got = j.umkehr(&q.parse(y).unwrap(), &t).unwrap();
        assert_eq!(got, r.reduce(&r.parse(expected).unwrap()).unwrap(), "{y}");
    }
    // Multiplying by 1 is not well defined where j* has a kernel.
    let one = Polynomial::one(r.context());
    assert!(matches!(
        j.umkehr(&q.parse("s^8").unwrap(), &one),
        Err(RingError::AmbiguousResult { .. })
    ));
}

#[test]
fn pairing_values() {
    let q = q();
    let fq = FundamentalClass::new(q.clone(), &q.parse("s^3*v^3").unwrap()).unwrap();
    let vals: Vec<i64> = fq
        .monomial_values()
        .unwrap()
        .into_iter()
        .map(|(_, v)| v.to_integer().try_into().unwrap())
        .collect();
    assert_eq!(vals, [78, 45, 26, 15]);

    let r = r();
    let fr = FundamentalClass::new(r.clone(), &r.parse("t^4*w^3").unwrap()).unwrap();
    let vals: Vec<i64> = fr
        .monomial_values()
        .unwrap()
        .into_iter()
        .map(|(_, v)| v.to_integer().try_into().unwrap())
        .collect();
    assert_eq!(vals, [78, 45, 26, 15, 9]);

    let p = p();
    let fp = FundamentalClass::new(p.clone(), &p.parse("a^2").unwrap()).unwrap();
    assert_eq!(fp.pairing_matrix(8).unwrap(), IntMatrix::from_rows(&[vec![1]]));
}

#[test]
fn duality_is_unimodular() {
    let r = r();
    let fr = FundamentalClass::new(r.clone(), &r.parse("t^4*w^3").unwrap()).unwrap();
    let rep = fr.check_unimodular_duality().unwrap();
    assert!(rep.all_unimodular, "{rep:?}");
    assert_eq!(rep.pairs.len(), 9);
    for d in (0..=32).step_by(2) {
        assert_eq!(fr.pairing_matrix(d).unwrap().transpose(), fr.pairing_matrix(32 - d).unwrap());
    }
    let m16 = fr.pairing_matrix(16).unwrap();
    assert_eq!(m16, m16.transpose());

    let q = q();
    let fq = FundamentalClass::new(q.clone(), &q.parse("s^3*v^3").unwrap()).unwrap();
    assert!(fq.check_unimodular_duality().unwrap().all_unimodular);

    // Top piece Z, but H^2 has rank 1 and H^4 rank 2.
    let lopsided = ring("X", &[("x", 2), ("y", 4)], &["x*y", "y^2", "x^4"], Some(6));
    let fx = FundamentalClass::new(lopsided.clone(), &lopsided.parse("x^3").unwrap()).unwrap();
    let rep = fx.check_unimodular_duality().unwrap();
    assert!(!rep.all_unimodular);
    assert!(rep.failures().any(|p| p.problem.as_deref().unwrap().contains("differ")));
}

#[test]
fn pairing_kernel() {
    let r = r();
    let fr = FundamentalClass::new(r.clone(), &r.parse("t^4*w^3").unwrap()).unwrap();
    assert!(fr.kernel_of_pairing(&r.parse("w^3 + 15*w^2*t^4 - 9*w*t^8").unwrap()).unwrap());
    assert!(!fr.kernel_of_pairing(&r.parse("w^2").unwrap()).unwrap());
    assert!(fr.kernel_of_pairing(&Polynomial::zero(r.context())).unwrap());
    assert!(fr.pairing_kernel_basis(16).unwrap().is_empty());
}

#[test]
fn top_piece_must_be_z() {
    let r = r();
    let wrong = r.with_top_degree(Some(16));
    assert!(matches!(
        FundamentalClass::new(Arc::new(wrong), &r.parse("w^2").unwrap()),
        Err(RingError::TopNotRankOne { .. })
    ));
}

#[test]
fn presentation_change() {
    let r = r();
    let both = solve_presentation_change(&r, &rational(27, 4), &rational(39, 64), None).unwrap();
    let pairs: Vec<(Rational, Rational)> = both.iter().map(|c| (c.lambda.clone(), c.mu.clone())).collect();
    assert_eq!(pairs, [(rational(-27, 8), rational(-6, 1)), (rational(-27, 8), rational(6, 1))]);

    let ctx = r.context().extended([("a8", 8)]).unwrap();
    let rel2 = Polynomial::parse(&ctx, "a8^3 + 369/8*t^4*a8^2 - 2997/64*t^8*a8 + 1539/512*t^12").unwrap();
    let unique = solve_presentation_change(&r, &rational(27, 4), &rational(39, 64), Some((&rel2, "a8"))).unwrap();
    assert_eq!(unique.len(), 1);
    assert_eq!(unique[0].generator, r.parse("6*w - 27/8*t^4").unwrap());

    let simple = solve_presentation_change(&r, &rational(0, 1), &rational(1, 3), None).unwrap();
    let mus: Vec<Rational> = simple.iter().map(|c| c.mu.clone()).collect();
    assert_eq!(mus, [rational(-1, 1), rational(1, 1)]);
    assert!(simple.iter().all(|c| c.lambda == rational(0, 1)));

    assert!(solve_presentation_change(&r, &rational(0, 1), &rational(1, 2), None).is_err());
}
