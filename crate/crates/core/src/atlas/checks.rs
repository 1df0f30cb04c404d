use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{builtin_ring, Atlas, Outcome};
use crate::charclass::{
    bundle_relation_check, euler_characteristic_check, gysin_sphere_bundle, nonzero_groups, reduced_chern_classes,
    solve_phi, spin_weights, vanishing_to_relation, whitney_quotient, CharClassTable, Chirality, ClassKind,
    Coefficients, PhiSolution, Vanishing,
};
use crate::exactpoly::{Monomial, Polynomial, Rational};
use crate::gring::{
    solve_presentation_change, solve_unknown_pairing_entry, FundamentalClass, GradedRingPresentation, RingHom,
};
use crate::zlinalg::{cokernel, determinant, is_unimodular, FgAbelianGroup, IntMatrix};

type CheckFn = fn(&Atlas) -> Result<Outcome, String>;

/// `(name, citation, check)` in run order.
pub(crate) static CHECKS: &[(&str, &str, CheckFn)] = &[
    ("betti_R_Q", "b_2k(R) table; Poincare polynomial of Q", betti_r_q),
    ("poincare_Q", "P_Q(x) = (1 + x^2 + ... + x^14)(1 + x^8 + x^16)", poincare_q),
    ("torsion_free", "H*(R) and H*(Q) are torsion free", torsion_free),
    ("relations_R", "r18 = t^9 - 3w^2t, r24 = w^3 + 15w^2t^4 - 9wt^8; a counting argument", relations_r),
    ("pairing_Q30", "the products to H^30(Q)", pairing_q30),
    ("pairing_R32", "the products to H^32(R)", pairing_r32),
    ("duality_R_Q", "Poincare duality for R and Q", duality_r_q),
    ("gysin_S", "H^i(S) = Z for i = 0, 8, 23, 31 and Z/3 for i = 16", gysin_s),
    ("sw_lemma", "2v = s^4 + a", sw_lemma),
    ("pontryagin_lemma", "s^8 = 3v^2", pontryagin_lemma),
    ("leray_hirsch_basis", "1, s, s^2, s^3, v, sv, s^2v, s^3v over 1, a, a^2", leray_hirsch_basis),
    ("jstar_hom", "j^*: H*(R) -> H*(Q) is an isomorphism below degree 15", jstar_hom),
    ("rank_additivity", "0 -> H^{2k-2}(Q) -> H^{2k}(R) -> H^{2k}(P) -> 0", rank_additivity),
    ("umkehr_formulas", "j_!(j^*(b)) = bt", umkehr_formulas),
    ("deg18_24_relations", "relations in degrees 18 and 24 by Poincare duality", deg18_24_relations),
    ("presentation_change", "the unique indecomposable element a_8 = 6w - 27/8 t^4", presentation_change),
    ("chern_consistency", "Chern classes of T_cR, c_16 = 3w^4", chern_consistency),
    ("bundle_relation", "L^-1 + V + D (x) L^-1 = R x C^27", bundle_relation),
    ("euler_chars", "<c_16, [R]> = 27 and <e(TP), [P]> = 3", euler_chars),
    ("tangent_P", "p(TP) = 1 + 6a + 39a^2, p(U_9) = 1 - 6a - 3a^2", tangent_p),
];

trait Msg<T> {
    fn msg(self) -> Result<T, String>;
}

impl<T, E: Display> Msg<T> for Result<T, E> {
    fn msg(self) -> Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn outcome(passed: bool, expected: impl Into<String>, computed: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome { passed, expected: expected.into(), computed: computed.into() })
}

fn ring(name: &str) -> Result<Arc<GradedRingPresentation>, String> {
    builtin_ring(name).msg()
}

fn list<T: Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn even_entries(series: &[i64]) -> Vec<i64> {
    series.iter().step_by(2).copied().collect()
}

fn series(r: &GradedRingPresentation, maxdeg: u32) -> Vec<i64> {
    r.poincare_series(maxdeg).into_iter().map(|x| x as i64).collect()
}

/// Coefficients up to `maxdeg` of the product of `sum x^e` over each list.
fn product_series(factors: &[Vec<i64>], maxdeg: u32) -> Result<Vec<i64>, String> {
    let mut acc = vec![0i64; maxdeg as usize + 1];
    acc[0] = 1;
    for f in factors {
        let mut next = vec![0i64; acc.len()];
        for (d, c) in acc.iter().enumerate() {
            for &e in f {
                if e < 0 {
                    return Err(format!("negative exponent {e}"));
                }
                if let Some(slot) = next.get_mut(d + e as usize) {
                    *slot += c;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn single_monomial(p: &Polynomial) -> Result<Monomial, String> {
    let terms: Vec<_> = p.terms().collect();
    match terms.as_slice() {
        [(m, c)] if c.is_one() => Ok((*m).clone()),
        _ => Err(format!("`{p}` is not a monomial")),
    }
}

/// `[R]` given by the stored values of the top-degree monomials.
fn table_fundamental_class(a: &Atlas) -> Result<FundamentalClass, String> {
    let monomials = a.polynomials("pairing_R32_monomials").msg()?;
    let values = a.integers("pairing_R32_values").msg()?;
    if monomials.len() != values.len() {
        return Err(format!("{} monomials against {} values", monomials.len(), values.len()));
    }
    let table = monomials
        .iter()
        .zip(&values)
        .map(|(m, v)| Ok((single_monomial(m)?, BigInt::from(*v))))
        .collect::<Result<Vec<_>, String>>()?;
    FundamentalClass::from_table(ring("R")?, table).msg()
}

fn coordinate_fundamental_class(name: &str, distinguished: &str) -> Result<FundamentalClass, String> {
    let r = ring(name)?;
    let m = r.parse(distinguished).msg()?;
    FundamentalClass::new(r, &m).msg()
}

fn betti_r_q(a: &Atlas) -> Result<Outcome, String> {
    let r = series(&*ring("R")?, 32);
    let q = series(&*ring("Q")?, 30);
    let expected_r = a.integers("betti_R").msg()?;
    let factors = [a.integers("poincare_Q_base").msg()?, a.integers("poincare_Q_fibre").msg()?];
    let expected_q = product_series(&factors, 30)?;
    let odd_r_zero = r.iter().skip(1).step_by(2).all(|&x| x == 0);
    let passed = odd_r_zero && even_entries(&r) == expected_r && q == expected_q;
    outcome(
        passed,
        format!("R: {}; Q: {}", list(&expected_r), list(&even_entries(&expected_q))),
        format!("R: {}; Q: {}", list(&even_entries(&r)), list(&even_entries(&q))),
    )
}

fn poincare_q(a: &Atlas) -> Result<Outcome, String> {
    let base = a.integers("poincare_Q_base").msg()?;
    let fibre = a.integers("poincare_Q_fibre").msg()?;
    let gr = series(&*ring("Gr2R9")?, 14);
    let q = series(&*ring("Q")?, 30);
    let expected_gr = product_series(&[base.clone()], 14)?;
    let expected_q = product_series(&[base, fibre], 30)?;
    let euler: i64 = q.iter().sum();
    let expected_euler: i64 = expected_q.iter().sum();
    let passed = gr == expected_gr && q == expected_q && euler == expected_euler;
    outcome(
        passed,
        format!(
            "Gr2R9: {}; Q: {}; P_Q(1) = {expected_euler}",
            list(&even_entries(&expected_gr)),
            list(&even_entries(&expected_q))
        ),
        format!("Gr2R9: {}; Q: {}; P_Q(1) = {euler}", list(&even_entries(&gr)), list(&even_entries(&q))),
    )
}

fn torsion_free(_: &Atlas) -> Result<Outcome, String> {
    let mut found = Vec::new();
    for name in ["R", "Q", "P", "Gr2R9"] {
        let r = ring(name)?;
        let top = r.top_degree().ok_or("no top degree")?;
        for (d, t) in r.check_torsion_free(top) {
            found.push(format!("{name} degree {d}: {}", list(&t)));
        }
    }
    let computed = if found.is_empty() { "no torsion in R, Q, P, Gr2R9".to_string() } else { found.join("; ") };
    outcome(found.is_empty(), "no torsion in R, Q, P, Gr2R9", computed)
}

fn relations_r(a: &Atlas) -> Result<Outcome, String> {
    let r = ring("R")?;
    let rels = a.polynomials("relations_R").msg()?;
    let mut vanish = Vec::new();
    for rel in &rels {
        vanish.push(r.is_zero_class(rel).msg()?);
    }
    let counted = GradedRingPresentation::new("R", r.context().clone(), rels.clone(), Some(32)).msg()?;
    let ranks = even_entries(&series(&counted, 32));
    let expected = a.integers("betti_R").msg()?;
    let passed = vanish.iter().all(|&v| v) && ranks == expected;
    outcome(
        passed,
        format!("relations vanish; ranks {}", list(&expected)),
        format!("relations vanish: {}; ranks {}", list(&vanish), list(&ranks)),
    )
}

fn pairing_q30(a: &Atlas) -> Result<Outcome, String> {
    let fc = coordinate_fundamental_class("Q", "s^3*v^3")?;
    let monomials = a.polynomials("pairing_Q30_monomials").msg()?;
    let expected = a.integers("pairing_Q30_values").msg()?;
    let values = monomials.iter().map(|m| fc.evaluate(m)).collect::<Result<Vec<_>, _>>().msg()?;
    let expected_r: Vec<Rational> = expected.iter().map(|&v| Rational::from_integer(v.into())).collect();
    outcome(values == expected_r, list(&expected), list(&values))
}

fn pairing_r32(a: &Atlas) -> Result<Outcome, String> {
    let fc = coordinate_fundamental_class("R", "t^4*w^3")?;
    let monomials = a.polynomials("pairing_R32_monomials").msg()?;
    let stored = a.integers("pairing_R32_values").msg()?;
    let det_poly = a.integers("pairing_R16_determinant").msg()?;
    let values = monomials.iter().map(|m| fc.evaluate(m)).collect::<Result<Vec<_>, _>>().msg()?;
    let stored_r: Vec<Rational> = stored.iter().map(|&v| Rational::from_integer(v.into())).collect();
    let mut problems = Vec::new();
    if values != stored_r {
        problems.push(format!("evaluated {} against stored {}", list(&values), list(&stored)));
    }
    let [v0, v1, v2, v3, v4] = stored[..] else {
        return Err(format!("expected 5 values, found {}", stored.len()));
    };
    let known = |x: i64| Some(BigInt::from(x));
    let pattern = vec![
        vec![known(v0), known(v1), known(v2)],
        vec![known(v1), known(v2), known(v3)],
        vec![known(v2), known(v3), None],
    ];
    let recovered = match solve_unknown_pairing_entry(&pattern) {
        Ok(sol) => {
            let poly: Vec<i64> = det_poly.iter().rev().copied().collect();
            let got: Vec<BigInt> = sol.determinant_polynomial.clone();
            if got != poly.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>() {
                problems.push(format!("det(x) = {}", sol.polynomial_string()));
            }
            if sol.value != BigInt::from(v4) {
                problems.push(format!("w^4 recovered as {} but stored as {v4}", sol.value));
            }
            format!("w^4 = {} from det(x) = {}", sol.value, sol.polynomial_string())
        }
        Err(e) => {
            problems.push(e.to_string());
            format!("w^4 not recovered: {e}")
        }
    };
    let m = IntMatrix::from_rows(&[vec![v0, v1, v2], vec![v1, v2, v3], vec![v2, v3, v4]]);
    let det = determinant(&m).msg()?;
    if !det.abs().is_one() {
        problems.push(format!("H^16 pairing det {det} is not +-1"));
    }
    let computed = format!("{}; {recovered}; H^16 det {det}", list(&values));
    let computed = if problems.is_empty() { computed } else { format!("{computed}; {}", problems.join("; ")) };
    outcome(
        problems.is_empty(),
        format!("{}; det(x) = {}; H^16 det +-1", list(&stored), linear(&det_poly)),
        computed,
    )
}

/// `[a, b]` as `ax + b`.
fn linear(coeffs: &[i64]) -> String {
    match coeffs {
        [a, b] if *b < 0 => format!("{a}x - {}", -b),
        [a, b] => format!("{a}x + {b}"),
        other => list(other),
    }
}

fn duality_r_q(_: &Atlas) -> Result<Outcome, String> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (name, m) in [("R", "t^4*w^3"), ("Q", "s^3*v^3")] {
        let report = coordinate_fundamental_class(name, m)?.check_unimodular_duality().msg()?;
        passed &= report.all_unimodular;
        let bad: Vec<String> = report
            .failures()
            .map(|p| format!("{}x{}: {}", p.degree, p.complementary, p.problem.clone().unwrap_or_default()))
            .collect();
        parts.push(if bad.is_empty() {
            format!("{name}: {} pairings unimodular", report.pairs.len())
        } else {
            format!("{name}: {}", bad.join(", "))
        });
    }
    outcome(passed, "every complementary pairing has det +-1", parts.join("; "))
}

fn show_groups(groups: &[(u32, FgAbelianGroup)]) -> String {
    let parts: Vec<String> = groups.iter().map(|(d, g)| format!("{d}: {g}")).collect();
    parts.join(", ")
}

fn gysin_s(a: &Atlas) -> Result<Outcome, String> {
    let p = ring("P")?;
    let euler = a.polynomial("euler_TP").msg()?;
    let dim = a.integers("sphere_dim_S").msg()?[0];
    let dim = u32::try_from(dim).map_err(|_| format!("sphere dimension {dim}"))?;
    let table = gysin_sphere_bundle(&p, &euler, dim).msg()?;
    let ambiguous: Vec<u32> = table.iter().filter(|g| g.is_ambiguous()).map(|g| g.degree).collect();
    let computed = nonzero_groups(&table);

    let mut expected: Vec<(u32, FgAbelianGroup)> = a
        .integers("gysin_S_free")
        .msg()?
        .into_iter()
        .map(|d| (d as u32, FgAbelianGroup::free(1)))
        .collect();
    let torsion = a.integers("gysin_S_torsion").msg()?;
    let [d, order] = torsion[..] else { return Err("torsion entry needs a degree and an order".into()) };
    expected.push((d as u32, FgAbelianGroup::from_cyclic(0, &[BigInt::from(order)])));
    expected.sort_by_key(|(d, _)| *d);

    let mut shown = show_groups(&computed);
    if !ambiguous.is_empty() {
        shown.push_str(&format!("; extension undetermined in degrees {}", list(&ambiguous)));
    }
    outcome(ambiguous.is_empty() && computed == expected, show_groups(&expected), shown)
}

fn sw_lemma(a: &Atlas) -> Result<Outcome, String> {
    let stored = a.polynomial("w8_U7").msg()?;
    let sa = stored.context().clone();
    let w9 = a.polynomial("sw_U9").msg()?.substitute(&sa, &[], false).msg()?;
    let w2 = a.polynomial("sw_U2").msg()?;
    let table = whitney_quotient(&w9, &w2, None, 8, Coefficients::ModP(2), ClassKind::StiefelWhitney).msg()?;
    let w8 = table.in_degree(&sa, 8);
    let matches = (&w8 - &stored).reduce_mod(2).msg()?.is_zero();

    let q = ring("Q")?;
    let a_sub = a.polynomial("a_in_Q").msg()?;
    let (halved, v_found) = match vanishing_to_relation(&stored, q.context(), &[("a", a_sub)], Vanishing::ModP(2), Some(&q)) {
        Ok(rel) => {
            let v = q.generator("v").msg()?;
            let is_v = q.is_zero_class(&(&rel.quotient - &v)).msg()?;
            (format!("(s^4 + a)/2 = {}", rel.quotient), is_v)
        }
        Err(e) => (e.to_string(), false),
    };
    outcome(
        matches && v_found,
        format!("w8(U_7) = {stored} mod 2; (s^4 + a)/2 = v"),
        format!("w8(U_7) = {w8} mod 2; {halved}"),
    )
}

fn pontryagin_lemma(a: &Atlas) -> Result<Outcome, String> {
    let stored = a.polynomial("p4_U7").msg()?;
    let sa = stored.context().clone();
    let p9 = a.polynomial("pontryagin_U9").msg()?.substitute(&sa, &[], false).msg()?;
    let p2 = a.polynomial("pontryagin_U2").msg()?;
    let table = whitney_quotient(&p9, &p2, None, 16, Coefficients::Rational, ClassKind::Pontryagin).msg()?;
    let p4 = table.in_degree(&sa, 16);

    let q = ring("Q")?;
    let a_sub = a.polynomial("a_in_Q").msg()?;
    let rel = vanishing_to_relation(&stored, q.context(), &[("a", a_sub)], Vanishing::Exact, None).msg()?;
    let in_q = a.polynomial("p4_U7_in_Q").msg()?;
    let relation = a.polynomial("relation_Q16").msg()?;
    let holds = q.is_zero_class(&rel.quotient).msg()?;
    let s8 = q.normal_form(&q.parse("s^8").msg()?).msg()?;
    let three_v2 = q.normal_form(&q.parse("3*v^2").msg()?).msg()?;
    let passed = p4 == stored && rel.substituted == in_q && rel.quotient == relation && holds && s8 == three_v2;
    outcome(
        passed,
        format!("p4(U_7) = {stored}; {in_q} = 0; {relation} = 0 in H*(Q)"),
        format!(
            "p4(U_7) = {p4}; {} = 0; {} = 0, {} in H*(Q)",
            rel.substituted,
            rel.quotient,
            if holds { "holds" } else { "fails" }
        ),
    )
}

fn leray_hirsch_basis(a: &Atlas) -> Result<Outcome, String> {
    let q = ring("Q")?;
    let basis = a.polynomials("leray_hirsch_basis").msg()?;
    let av = a.polynomial("a_in_Q").msg()?;
    let powers = [Polynomial::one(q.context()), av.clone(), av.pow(2)];
    let mut by_degree: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    for b in &basis {
        for p in &powers {
            let prod = b * p;
            let d = prod.homogeneous_degree().ok_or_else(|| format!("{prod} is not homogeneous"))?;
            by_degree.entry(d).or_default().push(prod);
        }
    }
    let mut problems = Vec::new();
    for d in (0..=30).step_by(2) {
        let products = by_degree.remove(&d).unwrap_or_default();
        let rank = q.rank(d);
        if products.len() != rank {
            problems.push(format!("degree {d}: {} products for rank {rank}", products.len()));
            continue;
        }
        let mut cols = Vec::new();
        for p in &products {
            let c = q.coordinates_in_degree(p, d).msg()?;
            cols.push(c.integral().ok_or_else(|| format!("non-integral coordinates of {p}"))?);
        }
        let m = IntMatrix::from_columns(rank, &cols);
        if !is_unimodular(&m) {
            problems.push(format!("degree {d}: det {}", determinant(&m).msg()?));
        }
    }
    for (d, extra) in by_degree {
        problems.push(format!("{} products in degree {d}", extra.len()));
    }
    let computed = if problems.is_empty() {
        format!("{} products, unimodular in every degree", basis.len() * 3)
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), "24 products forming a Z-basis degreewise", computed)
}

fn jstar(a: &Atlas) -> Result<RingHom, String> {
    let images = a.polynomials("jstar_images").msg()?;
    let [s, v] = &images[..] else { return Err("expected two images".into()) };
    RingHom::define(ring("R")?, ring("Q")?, &[("t", s.clone()), ("w", v.clone())]).msg()
}

fn jstar_hom(a: &Atlas) -> Result<Outcome, String> {
    let hom = jstar(a)?;
    let mut problems = Vec::new();
    for d in (0..=14).step_by(2) {
        let m = hom.coordinate_matrix(d).msg()?;
        if !m.is_square() || !is_unimodular(&m) {
            problems.push(format!("degree {d}: matrix {:?}", m.to_string_rows()));
        }
    }
    let computed = if problems.is_empty() {
        "ring map; isomorphism in degrees 0..14".to_string()
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), "ring map; isomorphism in degrees 0..14", computed)
}

fn rank_additivity(a: &Atlas) -> Result<Outcome, String> {
    let betti_r = a.integers("betti_R").msg()?;
    let betti_p = a.integers("betti_P").msg()?;
    let q = ring("Q")?;
    let p = ring("P")?;
    let mut problems = Vec::new();
    for k in 0..=16usize {
        let r = betti_r.get(k).copied().unwrap_or(0);
        let qk = if k == 0 { 0 } else { q.rank(2 * k as u32 - 2) as i64 };
        let pk = betti_p.get(k).copied().unwrap_or(0);
        if r != qk + pk {
            problems.push(format!("k = {k}: {r} != {qk} + {pk}"));
        }
        if p.rank(2 * k as u32) as i64 != pk {
            problems.push(format!("b_{}(P) = {} but stored {pk}", 2 * k, p.rank(2 * k as u32)));
        }
    }
    let images = a.polynomials("istar_images").msg()?;
    let [i0, i1] = &images[..] else { return Err("expected two images".into()) };
    match RingHom::define(ring("R")?, p.clone(), &[("t", i0.clone()), ("w", i1.clone())]) {
        Ok(istar) => {
            for d in (0..=16).step_by(2) {
                let g = cokernel(&istar.coordinate_matrix(d).msg()?);
                if !g.is_trivial() {
                    problems.push(format!("i^* not onto in degree {d}: cokernel {g}"));
                }
            }
        }
        Err(e) => problems.push(format!("i^*: {e}")),
    }
    let computed = if problems.is_empty() {
        "b_2k(R) = b_2k-2(Q) + b_2k(P) for k = 0..16; i^* onto".to_string()
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), "b_2k(R) = b_2k-2(Q) + b_2k(P) for k = 0..16; i^* onto", computed)
}

fn umkehr_formulas(a: &Atlas) -> Result<Outcome, String> {
    let hom = jstar(a)?;
    let r = ring("R")?;
    let sources = a.polynomials("umkehr_sources").msg()?;
    let images = a.polynomials("umkehr_images").msg()?;
    let multiplier = a.polynomial("umkehr_multiplier").msg()?;
    let mut passed = sources.len() == images.len();
    let mut shown = Vec::new();
    for (y, expected) in sources.iter().zip(&images) {
        match hom.umkehr(y, &multiplier) {
            Ok(x) => {
                passed &= r.is_zero_class(&(&x - expected)).msg()?;
                shown.push(format!("j_!({y}) = {}", r.reduce(&x).msg()?));
            }
            Err(e) => {
                passed = false;
                shown.push(format!("j_!({y}): {e}"));
            }
        }
    }
    let expected: Vec<String> = sources.iter().zip(&images).map(|(y, x)| format!("j_!({y}) = {x}")).collect();
    outcome(passed, expected.join(", "), shown.join(", "))
}

fn deg18_24_relations(a: &Atlas) -> Result<Outcome, String> {
    let fc = table_fundamental_class(a)?;
    let rels = a.polynomials("relations_R").msg()?;
    let mut passed = true;
    let mut shown = Vec::new();
    for rel in &rels {
        let d = rel.homogeneous_degree().ok_or_else(|| format!("{rel} is not homogeneous"))?;
        let killed = fc.kernel_of_pairing(rel).msg()?;
        let det = determinant(&fc.pairing_matrix(d).msg()?).msg()?;
        let perfect = det.abs().is_one();
        passed &= killed && perfect;
        shown.push(format!(
            "{rel}: {} (H^{d} pairing det {det})",
            if killed { "pairs to zero" } else { "pairs nontrivially" }
        ));
    }
    outcome(passed, "both pair to zero against a perfect pairing", shown.join("; "))
}

fn presentation_change(a: &Atlas) -> Result<Outcome, String> {
    let r = ring("R")?;
    let ab = a.rationals("presentation_alpha_beta").msg()?;
    let [alpha, beta] = &ab[..] else { return Err("expected alpha and beta".into()) };
    let cubic = a.polynomial("presentation_relation").msg()?;
    let expected = a.polynomial("presentation_generator").msg()?;
    let all = solve_presentation_change(&r, alpha, beta, None).msg()?;
    let kept = solve_presentation_change(&r, alpha, beta, Some((&cubic, "a8"))).msg()?;
    let pairs: Vec<String> = all.iter().map(|s| format!("({}, {})", s.lambda, s.mu)).collect();
    let passed = kept.len() == 1 && r.is_zero_class(&(&kept[0].generator - &expected)).msg()?;
    let kept_shown: Vec<String> = kept.iter().map(|s| s.generator.to_string()).collect();
    outcome(
        passed,
        format!("a8 = {expected}, unique"),
        format!("(lambda, mu) in {}; cubic keeps {}", pairs.join(", "), list(&kept_shown)),
    )
}

fn spin_chern(chirality: Chirality) -> Result<Arc<Vec<Polynomial>>, String> {
    static CACHE: [OnceLock<Result<Arc<Vec<Polynomial>>, String>>; 2] = [OnceLock::new(), OnceLock::new()];
    let slot = match chirality {
        Chirality::Even => &CACHE[0],
        Chirality::Odd => &CACHE[1],
    };
    slot.get_or_init(|| {
        let ws = spin_weights(10, chirality).msg()?.twist(3);
        reduced_chern_classes(&ws).map(Arc::new).msg()
    })
    .clone()
}

pub(super) fn solve_phi_for(a: &Atlas, chirality: Chirality) -> Result<PhiSolution, String> {
    let chern = spin_chern(chirality)?;
    let targets = a.polynomials("chern_TcR").msg()?;
    solve_phi(ring("R")?, &chern, &targets).msg()
}

/// The atlas's chirality if it works, else the other one.
fn working_phi(a: &Atlas) -> Result<(Chirality, &PhiSolution), String> {
    let first = a.chirality();
    match a.phi(first) {
        Ok(phi) => Ok((first, phi)),
        Err(e) => a.phi(first.other()).map(|phi| (first.other(), phi)).map_err(|_| e),
    }
}

fn chern_consistency(a: &Atlas) -> Result<Outcome, String> {
    let expected = a.polynomials("phi_expected").msg()?;
    let [ey, eq1] = &expected[..] else { return Err("expected images of y and q1".into()) };
    let betti_r = a.integers("betti_R").msg()?;
    let equations: i64 = betti_r.iter().skip(1).sum();

    let first = a.chirality();
    let mut status = Vec::new();
    for ch in [first, first.other()] {
        status.push(match a.phi(ch) {
            Ok(_) => format!("{ch}: consistent"),
            Err(e) => format!("{ch}: {e}"),
        });
    }
    let Ok((ch, phi)) = working_phi(a) else {
        return outcome(false, "a consistent solution", status.join("; "));
    };
    let y = &phi.images["y"];
    let q1 = &phi.images["q1"];
    let passed = phi.all_residuals_zero()
        && phi.scalar_equations() as i64 == equations
        && y == ey
        && q1 == eq1;
    outcome(
        passed,
        format!("{equations} equations with zero residual; phi(y) = {ey}, phi(q1) = {eq1}"),
        format!(
            "{}; using {ch}: {} equations, {} unknowns; phi(y) = {y}, phi(q1) = {q1}",
            status.join("; "),
            phi.scalar_equations(),
            phi.unknowns()
        ),
    )
}

fn bundle_relation(a: &Atlas) -> Result<Outcome, String> {
    let (ch, phi) = working_phi(a)?;
    let report = bundle_relation_check(phi, ch).msg()?;
    let nonzero: Vec<String> = report
        .components
        .iter()
        .filter(|(d, c)| *d > 0 && c != "0")
        .map(|(d, c)| format!("degree {d}: {c}"))
        .collect();
    let computed = if nonzero.is_empty() {
        format!("product = 1 through degree 32 ({ch})")
    } else {
        nonzero.join("; ")
    };
    outcome(report.holds, "product = 1 through degree 32", computed)
}

fn euler_chars(a: &Atlas) -> Result<Outcome, String> {
    let fc_r = table_fundamental_class(a)?;
    let chern = a.polynomials("chern_TcR").msg()?;
    let c16 = chern.last().ok_or("no Chern classes")?;
    let r = euler_characteristic_check(&fc_r, c16).msg()?;
    let fc_p = coordinate_fundamental_class("P", "a^2")?;
    let e = a.polynomial("euler_TP").msg()?;
    let p = euler_characteristic_check(&fc_p, &e).msg()?;
    outcome(
        r.holds && p.holds,
        format!("R: {}; P: {}", r.betti_sum, p.betti_sum),
        format!("R: {}; P: {}", r.evaluated, p.evaluated),
    )
}

/// Signature of a symmetric integer matrix by congruence diagonalisation.
fn signature(m: &IntMatrix) -> i64 {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| Rational::from_integer(m.get(i, j).clone())).collect()).collect();
    let mut sig = 0;
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                Some(j) => {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                }
                None => match (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    Some(j) => {
                        // row_k += row_j, col_k += col_j
                        for c in 0..n {
                            let v = a[j][c].clone();
                            a[k][c] += v;
                        }
                        for row in a.iter_mut() {
                            let v = row[j].clone();
                            row[k] += v;
                        }
                        if a[k][k].is_zero() {
                            k += 1;
                            continue;
                        }
                    }
                    None => {
                        k += 1;
                        continue;
                    }
                },
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            let f = &a[i][k] / &pivot;
            for c in 0..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for row in a.iter_mut() {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
        k += 1;
    }
    sig
}

fn tangent_p(a: &Atlas) -> Result<Outcome, String> {
    let p = ring("P")?;
    let ctx = p.context().clone();
    let tp = a.polynomial("pontryagin_TP").msg()?;
    let u9 = a.polynomial("pontryagin_U9").msg()?;
    let product = p.reduce(&(&tp * &u9)).msg()?;
    let trivial = p.is_zero_class(&(&product - &Polynomial::one(&ctx))).msg()?;

    let table = CharClassTable::from_total(ClassKind::Pontryagin, &tp).msg()?;
    let pk = |k: u32| table.in_degree(&ctx, 4 * k);
    let (p1, p2, p3, p4) = (pk(1), pk(2), pk(3), pk(4));
    let l4 = &(&(&(&p4.scale(&Rational::from_integer(381.into())) - &(&p3 * &p1).scale(&Rational::from_integer(71.into())))
        - &p2.pow(2).scale(&Rational::from_integer(19.into())))
        + &(&p2 * &p1.pow(2)).scale(&Rational::from_integer(22.into())))
        - &p1.pow(4).scale(&Rational::from_integer(3.into()));
    let l4 = l4.scale(&Rational::new(BigInt::one(), BigInt::from(14175)));
    let fc = coordinate_fundamental_class("P", "a^2")?;
    let l_value = fc.evaluate(&l4).msg()?;
    let sig = signature(&fc.pairing_matrix(8).msg()?);
    let passed = trivial && l_value == Rational::from_integer(sig.into());
    outcome(
        passed,
        format!("p(TP) p(U_9) = 1; L_4[P] = signature = {sig}"),
        format!("p(TP) p(U_9) = {product}; L_4[P] = {l_value}"),
    )
}
