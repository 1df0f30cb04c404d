//! Sparse multivariate polynomials with exact rational coefficients and a
//! weighted grading.
//!
//! Every polynomial carries a shared [`VariableContext`] naming its variables
//! and assigning each one a positive cohomological degree. Coefficients are
//! arbitrary-precision rationals kept in lowest terms; integer inputs are just
//! rationals with denominator one.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use parse::parse_polynomial;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable contexts differ: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("constant term {0} is not invertible")]
    NotInvertible(String),
    #[error("image of `{var}` has degree {found}, expected {expected}")]
    DegreeMismatch { var: String, expected: u32, found: String },
    #[error("coefficient {coeff} has a denominator divisible by {modulus}")]
    DenominatorDivisible { coeff: String, modulus: u64 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("polynomial `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Ordered variable names with their cohomological degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VariableContext {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Arc<Self>, PolyError> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (name, weight) in vars {
            let name = name.into();
            if weight == 0 {
                return Err(PolyError::InvalidContext(format!(
                    "variable `{name}` has weight 0"
                )));
            }
            if names.contains(&name) {
                return Err(PolyError::InvalidContext(format!(
                    "variable `{name}` declared twice"
                )));
            }
            names.push(name);
            weights.push(weight);
        }
        Ok(Arc::new(VariableContext { names, weights }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight_of(&self, name: &str) -> Option<u32> {
        self.index_of(name).map(|i| self.weights[i])
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    /// This context followed by `more`.
    pub fn extended<S: Into<String>>(
        &self,
        more: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Arc<Self>, PolyError> {
        let existing = self
            .names
            .iter()
            .cloned()
            .zip(self.weights.iter().copied());
        let extra: Vec<(String, u32)> = more.into_iter().map(|(n, w)| (n.into(), w)).collect();
        VariableContext::new(existing.chain(extra))
    }

    fn describe(&self) -> String {
        self.names
            .iter()
            .zip(&self.weights)
            .map(|(n, w)| format!("{n}:{w}"))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Every monomial of weighted degree exactly `degree`, in descending
    /// graded-lex order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.len()];
        self.fill_monomials(0, degree, &mut current, &mut out);
        out
    }

    fn fill_monomials(&self, idx: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == self.len() {
            if remaining == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = self.weights[idx];
        let mut e = remaining / w;
        loop {
            cur[idx] = e;
            self.fill_monomials(idx + 1, remaining - e * w, cur, out);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        cur[idx] = 0;
    }
}

/// Exponent vector, one entry per context variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, index: usize, exponent: u32) -> Self {
        let mut e = vec![0; arity];
        e[index] = exponent;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn display(&self, ctx: &VariableContext) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(ctx.names())
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Graded-lex comparison: higher weighted degree first, then lexicographic in
/// declared variable order.
fn grlex_desc(ctx: &VariableContext, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    ctx.degree(b)
        .cmp(&ctx.degree(a))
        .then_with(|| b.0.cmp(&a.0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedTerm {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ctx: Arc<VariableContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: Rational) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn monomial(ctx: &Arc<VariableContext>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ctx.len(), "monomial arity does not match context");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn var(ctx: &Arc<VariableContext>, name: &str) -> Result<Self, PolyError> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(ctx, Monomial::var(ctx.len(), i, 1), Rational::one()))
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(
        ctx: &Arc<VariableContext>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut out = Polynomial::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ctx.len(), "monomial arity does not match context");
            out.add_term(m, c);
        }
        out
    }

    pub fn parse(ctx: &Arc<VariableContext>, text: &str) -> Result<Self, PolyError> {
        parse_polynomial(ctx, text).map_err(|e| PolyError::Parse {
            column: e.offset + 1,
            message: e.message,
        })
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(&self.ctx, a.0, b.0));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ctx.len()))
    }

    /// Maximum weighted degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ctx.degree(m)).max()
    }

    /// The common degree of all terms, if there is one. The zero polynomial
    /// has no degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| self.ctx.degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ctx.degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(self.ctx.degree(m))
                .or_insert_with(|| Polynomial::zero(&self.ctx))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Drops every term of degree above `maxdeg`.
    pub fn truncate(&self, maxdeg: u32) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ctx.degree(m) <= maxdeg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch {
                left: self.ctx.describe(),
                right: other.ctx.describe(),
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ctx(other)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Product with every term of degree above `maxdeg` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, maxdeg: u32) -> Result<Polynomial, PolyError> {
        self.check_ctx(other)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            let da = self.ctx.degree(ma);
            if da > maxdeg {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + self.ctx.degree(mb) <= maxdeg {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The series `q` with `self * q = 1` through degree `maxdeg`.
    pub fn truncated_inverse(&self, maxdeg: u32) -> Result<Polynomial, PolyError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(PolyError::NotInvertible(c0.to_string()));
        }
        let inv0 = c0.recip();
        let parts = self.components();
        let mut pieces: Vec<Polynomial> = vec![Polynomial::constant(&self.ctx, inv0.clone())];
        for d in 1..=maxdeg {
            let mut acc = Polynomial::zero(&self.ctx);
            for (j, pj) in parts.range(1..=d) {
                let q = &pieces[(d - j) as usize];
                if !q.is_zero() {
                    acc = &acc + &(pj * q);
                }
            }
            pieces.push(acc.scale(&-inv0.clone()));
        }
        Ok(pieces
            .into_iter()
            .fold(Polynomial::zero(&self.ctx), |a, b| &a + &b))
    }

    /// Truncated inverse with coefficients in `Z/m`.
    pub fn truncated_inverse_mod(&self, maxdeg: u32, modulus: u64) -> Result<Polynomial, PolyError> {
        let p = self.reduce_mod(modulus)?;
        let m = BigInt::from(modulus);
        let c0 = p.constant_term().to_integer();
        let g = c0.extended_gcd(&m);
        if !g.gcd.is_one() {
            return Err(PolyError::NotInvertible(format!("{c0} mod {modulus}")));
        }
        let inv0 = Rational::from_integer(g.x.mod_floor(&m));
        let parts = p.components();
        let mut pieces: Vec<Polynomial> = vec![Polynomial::constant(&p.ctx, inv0.clone())];
        for d in 1..=maxdeg {
            let mut acc = Polynomial::zero(&p.ctx);
            for (j, pj) in parts.range(1..=d) {
                acc = &acc + &(pj * &pieces[(d - j) as usize]);
            }
            pieces.push(acc.scale(&-inv0.clone()).reduce_mod(modulus)?);
        }
        pieces
            .into_iter()
            .fold(Polynomial::zero(&p.ctx), |a, b| &a + &b)
            .reduce_mod(modulus)
    }

    /// Evaluation homomorphism into `target`. Variables without an explicit
    /// assignment map to the same-named variable of `target`. In strict mode
    /// every image must be homogeneous of the variable's weight.
    pub fn substitute(
        &self,
        target: &Arc<VariableContext>,
        assignments: &[(&str, Polynomial)],
        strict: bool,
    ) -> Result<Polynomial, PolyError> {
        let mut images = Vec::with_capacity(self.ctx.len());
        for (i, name) in self.ctx.names().iter().enumerate() {
            let image = match assignments.iter().find(|(n, _)| n == name) {
                Some((_, p)) => {
                    if p.ctx != *target {
                        return Err(PolyError::ContextMismatch {
                            left: target.describe(),
                            right: p.ctx.describe(),
                        });
                    }
                    p.clone()
                }
                None => Polynomial::var(target, name)?,
            };
            if strict && !image.is_zero() && image.homogeneous_degree() != Some(self.ctx.weights[i]) {
                return Err(PolyError::DegreeMismatch {
                    var: name.clone(),
                    expected: self.ctx.weights[i],
                    found: image
                        .homogeneous_degree()
                        .map_or("inhomogeneous".to_string(), |d| d.to_string()),
                });
            }
            images.push(image);
        }
        for (name, _) in assignments {
            if self.ctx.index_of(name).is_none() {
                return Err(PolyError::UnknownVariable(name.to_string()));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators of an integral polynomial, zero for zero.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    /// Coefficients reduced into `{0, .., m-1}`.
    pub fn reduce_mod(&self, modulus: u64) -> Result<Polynomial, PolyError> {
        let m = BigInt::from(modulus);
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            let den = c.denom().mod_floor(&m);
            let g = den.extended_gcd(&m);
            if !g.gcd.is_one() {
                return Err(PolyError::DenominatorDivisible {
                    coeff: c.to_string(),
                    modulus,
                });
            }
            let r = (c.numer() * g.x).mod_floor(&m);
            if !r.is_zero() {
                terms.insert(mono.clone(), Rational::from_integer(r));
            }
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn with_coefficient(&self, m: &Monomial, c: Rational) -> Polynomial {
        let mut out = self.clone();
        out.terms.remove(m);
        out.add_term(m.clone(), c);
        out
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Rational) -> Rational) -> Polynomial {
        Polynomial::from_terms(
            &self.ctx,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Same terms, viewed in a context whose variables are a superset of ours
    /// (matched by name).
    pub fn embed(&self, target: &Arc<VariableContext>) -> Result<Polynomial, PolyError> {
        let map: Vec<usize> = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| PolyError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sorted term list with decimal-string coefficients.
    pub fn to_term_list(&self) -> Vec<SerializedTerm> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| SerializedTerm {
                exponents: m.0.clone(),
                coefficient: c.to_string(),
            })
            .collect()
    }

    pub fn from_term_list(ctx: &Arc<VariableContext>, list: &[SerializedTerm]) -> Result<Polynomial, PolyError> {
        let mut terms = Vec::new();
        for t in list {
            if t.exponents.len() != ctx.len() {
                return Err(PolyError::InvalidContext(format!(
                    "term has {} exponents, context has {} variables",
                    t.exponents.len(),
                    ctx.len()
                )));
            }
            let c: Rational = t.coefficient.parse().map_err(|_| PolyError::Parse {
                column: 1,
                message: format!("bad coefficient `{}`", t.coefficient),
            })?;
            terms.push((Monomial(t.exponents.clone()), c));
        }
        Ok(Polynomial::from_terms(ctx, terms))
    }

    /// Exact conversion of an integral coefficient to `i64` when it fits.
    pub fn coefficient_i64(&self, m: &Monomial) -> Option<i64> {
        let c = self.coefficient(m);
        if c.is_integer() {
            c.to_integer().to_i64()
        } else {
            None
        }
    }
}

fn fmt_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_coefficient(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.ctx))?;
            } else {
                write!(f, "{}*{}", fmt_coefficient(&abs), m.display(&self.ctx))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition across contexts")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction across contexts")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication across contexts")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(vars: &[(&str, u32)]) -> Arc<VariableContext> {
        VariableContext::new(vars.iter().map(|(n, w)| (*n, *w))).unwrap()
    }

    fn p(c: &Arc<VariableContext>, s: &str) -> Polynomial {
        Polynomial::parse(c, s).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let c = ctx(&[("t", 2), ("w", 8)]);
        assert!((&p(&c, "t^9") + &p(&c, "-t^9")).is_zero());
    }

    #[test]
    fn add_placeholder_variable() {
        let c = ctx(&[("s", 2), ("a", 8)]);
        assert_eq!((&p(&c, "s^4") + &p(&c, "a")).to_string(), "s^4 + a");
    }

    #[test]
    fn combine_top_degree_relations() {
        let c = ctx(&[("s", 2), ("v", 8)]);
        let sum = p(&c, "8*v^3*s^3") + p(&c, "-12*v^2*s^7") + p(&c, "18*s^3*v^3") + p(&c, "-3*s^7*v^2");
        assert_eq!(sum, p(&c, "26*s^3*v^3 - 15*s^7*v^2"));
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let a = ctx(&[("t", 2)]);
        let b = ctx(&[("s", 2)]);
        assert!(matches!(
            p(&a, "t").checked_add(&p(&b, "s")),
            Err(PolyError::ContextMismatch { .. })
        ));
        assert!(p(&a, "t").checked_mul(&p(&b, "s")).is_err());
    }

    #[test]
    fn binomial_cube() {
        let c = ctx(&[("s", 2), ("v", 8)]);
        assert_eq!(
            p(&c, "(2*v - s^4)^3"),
            p(&c, "8*v^3 - 12*v^2*s^4 + 6*v*s^8 - s^12")
        );
        let q = p(&c, "3*s^2*v - 1/2");
        assert_eq!(&Polynomial::one(&c) * &q, q);
    }

    #[test]
    fn whitney_product_component() {
        let c = ctx(&[("s", 2), ("a", 8)]);
        let prod = &p(&c, "1 + a") * &p(&c, "1 + s + s^2 + s^3 + s^4");
        assert_eq!(prod.homogeneous_component(8), p(&c, "s^4 + a"));
    }

    #[test]
    fn homogeneous_components() {
        let c = ctx(&[("s", 2), ("a", 8)]);
        assert_eq!(p(&c, "1 + s + s^2").homogeneous_component(4), p(&c, "s^2"));
        let prod = &p(&c, "1 - 6*a - 3*a^2") * &p(&c, "1 + s^2 + s^4 + s^6 + s^8");
        assert_eq!(prod.homogeneous_component(16), p(&c, "s^8 - 6*a*s^4 - 3*a^2"));
        assert!(Polynomial::zero(&c).homogeneous_component(6).is_zero());
    }

    #[test]
    fn truncated_inverses() {
        let c = ctx(&[("s", 2), ("a", 8)]);
        assert_eq!(
            p(&c, "1 + s").truncated_inverse_mod(8, 2).unwrap(),
            p(&c, "1 + s + s^2 + s^3 + s^4")
        );
        // s has weight 2, so s^16 sits in degree 32.
        assert_eq!(
            p(&c, "1 - s^2").truncated_inverse(32).unwrap(),
            p(&c, "1 + s^2 + s^4 + s^6 + s^8 + s^10 + s^12 + s^14 + s^16")
        );
        assert_eq!(
            p(&c, "1 - s^2").truncated_inverse(16).unwrap(),
            p(&c, "1 + s^2 + s^4 + s^6 + s^8")
        );
        // p(TP) = 1 + 6a + 39a^2 inverts to p(U9) = 1 - 6a - 3a^2 modulo a^3.
        assert_eq!(
            p(&c, "1 + 6*a + 39*a^2").truncated_inverse(16).unwrap(),
            p(&c, "1 - 6*a - 3*a^2")
        );
        assert!(matches!(
            p(&c, "s + a").truncated_inverse(4),
            Err(PolyError::NotInvertible(_))
        ));
        assert!(p(&c, "2 + s").truncated_inverse_mod(4, 2).is_err());
    }

    #[test]
    fn substitution() {
        let sa = ctx(&[("s", 2), ("a", 8)]);
        let sv = ctx(&[("s", 2), ("v", 8)]);
        let got = p(&sa, "s^8 - 6*a*s^4 - 3*a^2")
            .substitute(&sv, &[("a", p(&sv, "2*v - s^4"))], true)
            .unwrap();
        assert_eq!(got, p(&sv, "4*s^8 - 12*v^2"));
        let q = p(&sa, "s^3*a - 7");
        assert_eq!(q.substitute(&sa, &[], true).unwrap(), q);
        let err = q.substitute(&sv, &[("a", p(&sv, "s^3"))], true);
        assert!(matches!(err, Err(PolyError::DegreeMismatch { .. })));
        assert!(q.substitute(&sv, &[("a", p(&sv, "s^3"))], false).is_ok());
    }

    #[test]
    fn reduction_mod_prime() {
        let c = ctx(&[("s", 2), ("v", 8), ("a", 8)]);
        assert_eq!(p(&c, "2*v - s^4 - a").reduce_mod(2).unwrap(), p(&c, "s^4 + a"));
        assert!(p(&c, "4*s^8 - 12*v^2").reduce_mod(2).unwrap().is_zero());
        let tw = ctx(&[("t", 2), ("w", 8)]);
        assert!(p(&tw, "3*w^2*t").reduce_mod(3).unwrap().is_zero());
        assert_eq!(p(&tw, "1/3*t").reduce_mod(2).unwrap(), p(&tw, "t"));
        assert!(matches!(
            p(&tw, "1/2*t").reduce_mod(2),
            Err(PolyError::DenominatorDivisible { .. })
        ));
    }

    #[test]
    fn display_is_graded_lex() {
        let c = ctx(&[("t", 2), ("w", 8)]);
        assert_eq!(p(&c, "w^2*t + 3 - 27/8*t^9").to_string(), "-27/8*t^9 + t*w^2 + 3");
        assert_eq!(Polynomial::zero(&c).to_string(), "0");
    }

    #[test]
    fn monomial_enumeration() {
        let c = ctx(&[("t", 2), ("w", 8)]);
        let ms: Vec<String> = c.monomials_of_degree(16).iter().map(|m| m.display(&c)).collect();
        assert_eq!(ms, ["t^8", "t^4*w", "w^2"]);
        assert!(c.monomials_of_degree(3).is_empty());
    }

    #[test]
    fn term_list_round_trip() {
        let c = ctx(&[("t", 2), ("w", 8)]);
        let q = p(&c, "1539/512*t^12 - 6*w^3 + 1");
        let json = serde_json::to_string(&q.to_term_list()).unwrap();
        let back: Vec<SerializedTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(Polynomial::from_term_list(&c, &back).unwrap(), q);
    }
}
