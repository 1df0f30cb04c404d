//! Rewriting W(D5)-invariant polynomials in `x1..x5, y` in terms of
//! `q1..q4` (elementary symmetric in the `x_i^2`), `e = x1*x2*x3*x4*x5`
//! and `y`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::weights::weyl_generator_images;
use super::{g_context, x_context, CharClassError, NX};
use crate::exactpoly::{Monomial, Polynomial, Rational};
use crate::zlinalg::rational::{solve, LinearSolution};

type XExps = [u8; 5];

/// Monomials `q1^a q2^b q3^c q4^d e^f` of a given x-degree together with
/// their expansions.
struct ReductionTable {
    /// Exponents `(a, b, c, d, f)`.
    generators: Vec<[u32; 5]>,
    expansions: Vec<HashMap<XExps, i128>>,
    /// Non-increasing exponent vectors of this degree.
    dominant: Vec<XExps>,
}

fn tables() -> &'static Mutex<HashMap<u32, Arc<ReductionTable>>> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<ReductionTable>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

fn table(xdeg: u32) -> Arc<ReductionTable> {
    if let Some(t) = tables().lock().unwrap().get(&xdeg) {
        return t.clone();
    }
    let t = Arc::new(build_table(xdeg));
    tables().lock().unwrap().entry(xdeg).or_insert(t).clone()
}

fn elementary_in_squares(i: usize) -> HashMap<XExps, i128> {
    let mut out = HashMap::new();
    for mask in 0u32..32 {
        if mask.count_ones() as usize == i {
            let mut m = [0u8; 5];
            for (j, mj) in m.iter_mut().enumerate() {
                if mask & (1 << j) != 0 {
                    *mj = 2;
                }
            }
            out.insert(m, 1);
        }
    }
    out
}

fn multiply(a: &HashMap<XExps, i128>, b: &HashMap<XExps, i128>) -> HashMap<XExps, i128> {
    let mut out: HashMap<XExps, i128> = HashMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = *ma;
            for j in 0..5 {
                m[j] += mb[j];
            }
            *out.entry(m).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn build_table(xdeg: u32) -> ReductionTable {
    let mut generators = Vec::new();
    for f in 0..=xdeg / 5 {
        let rest = xdeg - 5 * f;
        if rest % 2 != 0 {
            continue;
        }
        let half = rest / 2;
        for d in 0..=half / 4 {
            for c in 0..=(half - 4 * d) / 3 {
                for b in 0..=(half - 4 * d - 3 * c) / 2 {
                    let a = half - 4 * d - 3 * c - 2 * b;
                    generators.push([a, b, c, d, f]);
                }
            }
        }
    }
    let elementary: Vec<HashMap<XExps, i128>> = (1..=4).map(elementary_in_squares).collect();
    let mut e_poly = HashMap::new();
    e_poly.insert([1u8; 5], 1i128);
    let mut factors = elementary;
    factors.push(e_poly);

    let expansions = generators
        .iter()
        .map(|g| {
            let mut acc: HashMap<XExps, i128> = HashMap::from([([0u8; 5], 1)]);
            for (factor, &exp) in factors.iter().zip(g) {
                for _ in 0..exp {
                    acc = multiply(&acc, factor);
                }
            }
            acc
        })
        .collect();

    let mut dominant = Vec::new();
    let mut cur = [0u8; 5];
    fn rec(pos: usize, left: u32, max: u32, cur: &mut XExps, out: &mut Vec<XExps>) {
        if pos == 5 {
            if left == 0 {
                out.push(*cur);
            }
            return;
        }
        for v in (0..=left.min(max)).rev() {
            cur[pos] = v as u8;
            rec(pos + 1, left - v, v, cur, out);
        }
    }
    rec(0, xdeg, xdeg, &mut cur, &mut dominant);
    ReductionTable { generators, expansions, dominant }
}

fn is_invariant(p: &Polynomial) -> bool {
    weyl_generator_images(p).iter().all(|q| q == p)
}

/// The unique polynomial in `q1..q4, e, y` whose expansion is `p`.
pub fn invariant_reduce(p: &Polynomial) -> Result<Polynomial, CharClassError> {
    let xctx = x_context();
    if p.context() != &xctx {
        return Err(CharClassError::WrongContext(p.to_string()));
    }
    if !is_invariant(p) {
        return Err(CharClassError::NotInvariant(p.to_string()));
    }
    let gctx = g_context();
    // Split by the power of y and by x-degree.
    let mut parts: BTreeMap<(u32, u32), HashMap<XExps, Rational>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exponents();
        let mut x = [0u8; 5];
        for i in 0..5 {
            x[i] = u8::try_from(e[i]).map_err(|_| CharClassError::Overflow)?;
        }
        let xdeg: u32 = e[..5].iter().sum();
        parts.entry((e[NX - 1], xdeg)).or_default().insert(x, c.clone());
    }
    let mut out = Polynomial::zero(&gctx);
    for ((ypow, xdeg), part) in parts {
        let t = table(xdeg);
        let rows: Vec<Vec<Rational>> = t
            .dominant
            .iter()
            .map(|m| {
                t.expansions
                    .iter()
                    .map(|ex| Rational::from_integer(BigInt::from(*ex.get(m).unwrap_or(&0))))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = t.dominant.iter().map(|m| part.get(m).cloned().unwrap_or_else(Rational::zero)).collect();
        let coeffs = match solve(&rows, &rhs) {
            LinearSolution::Unique(c) => c,
            LinearSolution::Underdetermined { .. } => {
                return Err(CharClassError::Internal(format!("generators dependent in x-degree {xdeg}")))
            }
            LinearSolution::Inconsistent => return Err(CharClassError::NotInvariant(p.to_string())),
        };
        // Full check of the expansion, not only the dominant monomials.
        let mut expanded: HashMap<XExps, Rational> = HashMap::new();
        for (c, ex) in coeffs.iter().zip(&t.expansions) {
            if c.is_zero() {
                continue;
            }
            for (m, v) in ex {
                *expanded.entry(*m).or_insert_with(Rational::zero) += c * Rational::from_integer(BigInt::from(*v));
            }
        }
        expanded.retain(|_, v| !v.is_zero());
        if expanded != part {
            return Err(CharClassError::NotInvariant(p.to_string()));
        }
        for (c, g) in coeffs.into_iter().zip(&t.generators) {
            if c.is_zero() {
                continue;
            }
            let m = Monomial(vec![g[0], g[1], g[2], g[3], g[4], ypow]);
            out = &out + &Polynomial::monomial(&gctx, m, c);
        }
    }
    Ok(out)
}

/// Expansion of a polynomial in `q1..q4, e, y` back into `x1..x5, y`.
pub fn expand_invariant(p: &Polynomial) -> Result<Polynomial, CharClassError> {
    let xctx = x_context();
    let x = |i: usize| Polynomial::var(&xctx, &format!("x{i}")).unwrap();
    let squares: Vec<Polynomial> = (1..=5).map(|i| x(i).pow(2)).collect();
    let mut elementary = vec![Polynomial::one(&xctx)];
    for sq in &squares {
        let mut next = elementary.clone();
        next.push(Polynomial::zero(&xctx));
        for k in 1..next.len() {
            next[k] = &next[k] + &(&elementary[k - 1] * sq);
        }
        elementary = next;
    }
    let e = (1..=5).fold(Polynomial::one(&xctx), |acc, i| &acc * &x(i));
    let subs = [
        ("q1", elementary[1].clone()),
        ("q2", elementary[2].clone()),
        ("q3", elementary[3].clone()),
        ("q4", elementary[4].clone()),
        ("e", e),
    ];
    Ok(p.substitute(&xctx, &subs, true)?)
}
