//! Rational solutions of small polynomial systems by elimination.
//!
//! The systems met here are triangular in practice: at every stage some
//! equation is linear in the remaining unknowns, or involves a single unknown,
//! once factors of unknowns known to be nonzero are stripped.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactpoly::{Monomial, Polynomial, Rational, VariableContext};
use crate::zlinalg::rational::rref;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("equation reduces to the nonzero constant {0}")]
    Inconsistent(String),
    #[error("unknowns left undetermined: {0:?}")]
    Underdetermined(Vec<String>),
    #[error("no linear or univariate equation left among: {0:?}")]
    Stuck(Vec<String>),
    #[error("coefficients too large for rational root search: {0}")]
    TooLarge(String),
}

pub type Assignment = BTreeMap<String, Rational>;

/// All rational solutions of `equations = 0`, with the variables named in
/// `nonzero` required to be nonzero.
pub fn solve_system(equations: &[Polynomial], nonzero: &[&str]) -> Result<Vec<Assignment>, SystemError> {
    let Some(ctx) = equations.first().map(|e| e.context().clone()) else {
        return Ok(vec![Assignment::new()]);
    };
    let nz: Vec<usize> = nonzero.iter().filter_map(|n| ctx.index_of(n)).collect();
    let mut known = vec![None; ctx.len()];
    let mut out = Vec::new();
    branch(&ctx, equations, &mut known, &nz, &mut out)?;
    Ok(out
        .into_iter()
        .map(|vals| {
            ctx.names()
                .iter()
                .cloned()
                .zip(vals.into_iter().map(Option::unwrap))
                .collect()
        })
        .collect())
}

/// Determines every unknown that is forced without branching: single-unknown
/// rows of the linear part, and univariate equations with exactly one
/// admissible root. Unknowns that stay open are left as `None`.
pub fn propagate(
    equations: &[Polynomial],
    known: &mut [Option<Rational>],
    nonzero: &[usize],
) -> Result<(), SystemError> {
    let Some(ctx) = equations.first().map(|e| e.context().clone()) else {
        return Ok(());
    };
    loop {
        let eqs = simplify_all(&ctx, equations, known, nonzero)?;
        if eqs.is_empty() {
            return Ok(());
        }
        if linear_step(&ctx, &eqs, known)? {
            continue;
        }
        let mut progressed = false;
        for eq in &eqs {
            if let Some(var) = single_variable(eq) {
                let roots = admissible_roots(eq, var, nonzero)?;
                match roots.len() {
                    0 => return Err(SystemError::Inconsistent(eq.to_string())),
                    1 => {
                        known[var] = Some(roots.into_iter().next().unwrap());
                        progressed = true;
                        break;
                    }
                    _ => {}
                }
            }
        }
        if !progressed {
            return Ok(());
        }
    }
}

fn branch(
    ctx: &Arc<VariableContext>,
    equations: &[Polynomial],
    known: &mut Vec<Option<Rational>>,
    nonzero: &[usize],
    out: &mut Vec<Vec<Option<Rational>>>,
) -> Result<(), SystemError> {
    let eqs = match simplify_all(ctx, equations, known, nonzero) {
        Ok(e) => e,
        Err(SystemError::Inconsistent(_)) => return Ok(()),
        Err(e) => return Err(e),
    };
    if known.iter().all(Option::is_some) {
        out.push(known.clone());
        return Ok(());
    }
    if eqs.is_empty() {
        let open = open_names(ctx, known);
        return Err(SystemError::Underdetermined(open));
    }
    let saved = known.clone();
    match linear_step(ctx, &eqs, known) {
        Ok(true) => {
            branch(ctx, equations, known, nonzero, out)?;
            *known = saved;
            return Ok(());
        }
        Ok(false) => {}
        Err(SystemError::Inconsistent(_)) => {
            *known = saved;
            return Ok(());
        }
        Err(e) => return Err(e),
    }
    let candidate = eqs
        .iter()
        .filter_map(|e| single_variable(e).map(|v| (e, v)))
        .min_by_key(|(e, _)| e.len());
    let Some((eq, var)) = candidate else {
        return Err(SystemError::Stuck(open_names(ctx, known)));
    };
    for root in admissible_roots(eq, var, nonzero)? {
        known[var] = Some(root);
        branch(ctx, equations, known, nonzero, out)?;
        known[var] = None;
    }
    Ok(())
}

fn open_names(ctx: &VariableContext, known: &[Option<Rational>]) -> Vec<String> {
    ctx.names()
        .iter()
        .zip(known)
        .filter(|(_, k)| k.is_none())
        .map(|(n, _)| n.clone())
        .collect()
}

/// Substitutes known values, strips powers of nonzero unknowns shared by all
/// terms, and drops equations that vanish.
fn simplify_all(
    ctx: &Arc<VariableContext>,
    equations: &[Polynomial],
    known: &[Option<Rational>],
    nonzero: &[usize],
) -> Result<Vec<Polynomial>, SystemError> {
    let mut out = Vec::new();
    for eq in equations {
        let e = evaluate_known(ctx, eq, known);
        if e.is_zero() {
            continue;
        }
        let e = strip_nonzero_factors(ctx, &e, nonzero);
        if e.degree() == Some(0) {
            return Err(SystemError::Inconsistent(e.to_string()));
        }
        out.push(e);
    }
    Ok(out)
}

pub(crate) fn evaluate_known(ctx: &Arc<VariableContext>, p: &Polynomial, known: &[Option<Rational>]) -> Polynomial {
    if known.iter().all(Option::is_none) {
        return p.clone();
    }
    let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut coeff = c.clone();
        let mut rest = m.0.clone();
        for (i, e) in m.0.iter().enumerate() {
            if *e > 0 {
                if let Some(v) = &known[i] {
                    coeff *= num_traits::pow(v.clone(), *e as usize);
                    rest[i] = 0;
                }
            }
        }
        if coeff.is_zero() {
            continue;
        }
        *acc.entry(Monomial(rest)).or_insert_with(Rational::zero) += coeff;
    }
    Polynomial::from_terms(ctx, acc)
}

fn strip_nonzero_factors(ctx: &Arc<VariableContext>, p: &Polynomial, nonzero: &[usize]) -> Polynomial {
    let mut common = vec![0u32; ctx.len()];
    for &i in nonzero {
        common[i] = p.terms().map(|(m, _)| m.0[i]).min().unwrap_or(0);
    }
    if common.iter().all(|&e| e == 0) {
        return p.clone();
    }
    let divisor = Monomial(common);
    Polynomial::from_terms(
        ctx,
        p.terms().map(|(m, c)| (m.div(&divisor).unwrap(), c.clone())),
    )
}

/// Row-reduces the equations of total degree one and assigns every unknown
/// isolated in its own row. Returns whether anything was assigned.
fn linear_step(
    ctx: &Arc<VariableContext>,
    eqs: &[Polynomial],
    known: &mut [Option<Rational>],
) -> Result<bool, SystemError> {
    let n = ctx.len();
    let linear: Vec<&Polynomial> = eqs
        .iter()
        .filter(|e| e.terms().all(|(m, _)| m.0.iter().sum::<u32>() <= 1))
        .collect();
    if linear.is_empty() {
        return Ok(false);
    }
    let mut rows: Vec<Vec<Rational>> = linear
        .iter()
        .map(|e| {
            let mut row = vec![Rational::zero(); n + 1];
            for (m, c) in e.terms() {
                match m.0.iter().position(|&x| x == 1) {
                    Some(i) => row[i] = c.clone(),
                    None => row[n] = -c.clone(),
                }
            }
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&n) {
        return Err(SystemError::Inconsistent("linear part".into()));
    }
    let mut assigned = false;
    for (r, &c) in pivots.iter().enumerate() {
        let others = (0..n).filter(|&j| j != c && !rows[r][j].is_zero()).count();
        if others == 0 && known[c].is_none() {
            known[c] = Some(rows[r][n].clone());
            assigned = true;
        }
    }
    Ok(assigned)
}

fn single_variable(p: &Polynomial) -> Option<usize> {
    let mut var = None;
    for (m, _) in p.terms() {
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                match var {
                    None => var = Some(i),
                    Some(v) if v != i => return None,
                    _ => {}
                }
            }
        }
    }
    var
}

fn admissible_roots(p: &Polynomial, var: usize, nonzero: &[usize]) -> Result<Vec<Rational>, SystemError> {
    let mut coeffs: BTreeMap<u32, Rational> = BTreeMap::new();
    for (m, c) in p.terms() {
        coeffs.insert(m.0[var], c.clone());
    }
    let mut roots = univariate_rational_roots(&coeffs)?;
    if nonzero.contains(&var) {
        roots.retain(|r| !r.is_zero());
    }
    Ok(roots)
}

/// Distinct rational roots of `sum c_k x^k`, ascending.
pub fn univariate_rational_roots(coeffs: &BTreeMap<u32, Rational>) -> Result<Vec<Rational>, SystemError> {
    let coeffs: BTreeMap<u32, Rational> = coeffs
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (*k, c.clone()))
        .collect();
    let Some(&low) = coeffs.keys().next() else {
        return Ok(Vec::new());
    };
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let den = coeffs.values().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let ints: BTreeMap<u32, BigInt> = coeffs
        .iter()
        .map(|(k, c)| (k - low, (c * Rational::from_integer(den.clone())).to_integer()))
        .collect();
    let deg = *ints.keys().next_back().unwrap();
    let lead = ints[&deg].clone();
    let constant = ints[&0].clone();
    match deg {
        0 => {}
        1 => roots.push(Rational::new(-constant, lead)),
        2 => {
            let b = ints.get(&1).cloned().unwrap_or_default();
            let disc = &b * &b - BigInt::from(4) * &lead * &constant;
            if !disc.is_negative() {
                let s = disc.sqrt();
                if &s * &s == disc {
                    let two_a = BigInt::from(2) * &lead;
                    roots.push(Rational::new(-&b - &s, two_a.clone()));
                    roots.push(Rational::new(-&b + &s, two_a));
                }
            }
        }
        _ => {
            for num in divisors(&constant)? {
                for den in divisors(&lead)? {
                    for sign in [1, -1] {
                        let cand = Rational::new(BigInt::from(sign) * &num, den.clone());
                        if eval(&ints, &cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn eval(coeffs: &BTreeMap<u32, BigInt>, x: &Rational) -> Rational {
    coeffs
        .iter()
        .map(|(k, c)| Rational::from_integer(c.clone()) * num_traits::pow(x.clone(), *k as usize))
        .sum()
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, SystemError> {
    let n = n.abs();
    let small = n.to_u64().filter(|v| *v < 1_000_000_000_000).ok_or_else(|| SystemError::TooLarge(n.to_string()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d != small / d {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Ok(out)
}
