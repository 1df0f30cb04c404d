//! Finitely presented, evenly graded commutative rings over the integers.
//!
//! Each graded piece is computed by integer linear algebra: list the
//! monomials of that degree, collect every monomial multiple of every relation
//! that lands there, and take the cokernel. The Smith form gives rank and
//! torsion; the free part is then given canonical coordinates, preferring a
//! basis of monomials early in graded-lex order and falling back to the
//! Hermite form of the coordinate map when no monomial basis exists.

mod duality;
mod hom;
mod presentation_change;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactpoly::{Monomial, PolyError, Polynomial, Rational, VariableContext};
use crate::polysys::SystemError;
use crate::zlinalg::{
    self, determinant, hermite_normal_form, smith_normal_form, solve_integer, FgAbelianGroup,
    IntMatrix, LinalgError,
};

pub use duality::{
    solve_unknown_pairing_entry, DualityPair, DualityReport, FundamentalClass, UnknownEntrySolution,
};
pub use hom::RingHom;
pub use presentation_change::{solve_presentation_change, PresentationChange};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RingError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),
    #[error("relation `{0}` has non-integer coefficients")]
    NonIntegralRelation(String),
    #[error("generator `{name}` has odd degree {degree}")]
    OddGenerator { name: String, degree: u32 },
    #[error("class `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("class lives in a different ring: {0}")]
    WrongRing(String),
    #[error("ring `{0}` has no top degree")]
    NoTopDegree(String),
    #[error("top piece H^{degree} is {group}, not Z")]
    TopNotRankOne { degree: u32, group: FgAbelianGroup },
    #[error("top degree evaluation of `{0}` is zero; cannot fix a sign")]
    ZeroDistinguished(String),
    #[error("monomial `{0}` has no value in the evaluation table")]
    MissingTableEntry(String),
    #[error("relation `{relation}` maps to `{residual}`, which is nonzero in the target")]
    RelationNotPreserved { relation: String, residual: String },
    #[error("image of generator `{0}` is missing")]
    MissingImage(String),
    #[error("`{0}` has no integral preimage")]
    NoPreimage(String),
    #[error("preimages of `{class}` differ by `{kernel}`, whose product with the multiplier is `{product}`")]
    AmbiguousResult { class: String, kernel: String, product: String },
    #[error("H^{0} has torsion; this operation needs a torsion-free piece")]
    Torsion(u32),
    #[error("ranks of H^{0} and H^{1} differ")]
    RankMismatch(u32, u32),
    #[error("unknown entry pattern: {0}")]
    UnknownPattern(String),
    #[error("no integer value makes the determinant +-1 (det(x) = {0})")]
    NoIntegerSolution(String),
    #[error("several values make the determinant +-1: {0:?}")]
    MultipleSolutions(Vec<String>),
    #[error("{0}")]
    PresentationChange(String),
}

/// Generators with even degrees, homogeneous integral relations, and an
/// optional formal dimension.
pub struct GradedRingPresentation {
    name: String,
    ctx: Arc<VariableContext>,
    relations: Vec<Polynomial>,
    top_degree: Option<u32>,
    cache: RwLock<HashMap<u32, Arc<GradedPieceBasis>>>,
}

impl fmt::Debug for GradedRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedRingPresentation")
            .field("name", &self.name)
            .field("ctx", &self.ctx)
            .field("relations", &self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .field("top_degree", &self.top_degree)
            .finish()
    }
}

impl Clone for GradedRingPresentation {
    fn clone(&self) -> Self {
        GradedRingPresentation {
            name: self.name.clone(),
            ctx: self.ctx.clone(),
            relations: self.relations.clone(),
            top_degree: self.top_degree,
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl PartialEq for GradedRingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.ctx == other.ctx
            && self.relations == other.relations
            && self.top_degree == other.top_degree
    }
}

impl GradedRingPresentation {
    pub fn new(
        name: impl Into<String>,
        ctx: Arc<VariableContext>,
        relations: Vec<Polynomial>,
        top_degree: Option<u32>,
    ) -> Result<Self, RingError> {
        for (n, w) in ctx.names().iter().zip(ctx.weights()) {
            if w % 2 != 0 {
                return Err(RingError::OddGenerator { name: n.clone(), degree: *w });
            }
        }
        let mut kept = Vec::new();
        for r in relations {
            if r.context() != &ctx {
                return Err(RingError::WrongRing(r.to_string()));
            }
            if r.is_zero() {
                continue;
            }
            if r.homogeneous_degree().is_none() {
                return Err(RingError::InhomogeneousRelation(r.to_string()));
            }
            if !r.is_integral() {
                return Err(RingError::NonIntegralRelation(r.to_string()));
            }
            kept.push(r);
        }
        Ok(GradedRingPresentation {
            name: name.into(),
            ctx,
            relations: kept,
            top_degree,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.top_degree
    }

    pub fn generator(&self, name: &str) -> Result<Polynomial, RingError> {
        Ok(Polynomial::var(&self.ctx, name)?)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, RingError> {
        Ok(Polynomial::parse(&self.ctx, text)?)
    }

    /// The degree-`d` piece, computed once and then shared.
    pub fn graded_basis(&self, degree: u32) -> Arc<GradedPieceBasis> {
        if let Some(b) = self.cache.read().unwrap().get(&degree) {
            return b.clone();
        }
        let basis = Arc::new(GradedPieceBasis::compute(self, degree));
        self.cache.write().unwrap().entry(degree).or_insert(basis).clone()
    }

    pub fn rank(&self, degree: u32) -> usize {
        self.graded_basis(degree).rank()
    }

    /// Ranks of the graded pieces in degrees `0..=maxdeg`.
    pub fn poincare_series(&self, maxdeg: u32) -> Vec<usize> {
        (0..=maxdeg).map(|d| self.rank(d)).collect()
    }

    /// Degrees up to `maxdeg` whose piece has torsion, with the invariant factors.
    pub fn check_torsion_free(&self, maxdeg: u32) -> Vec<(u32, Vec<BigInt>)> {
        (0..=maxdeg)
            .filter_map(|d| {
                let b = self.graded_basis(d);
                (!b.torsion.is_empty()).then(|| (d, b.torsion.clone()))
            })
            .collect()
    }

    fn check_class(&self, p: &Polynomial) -> Result<(), RingError> {
        if p.context() != &self.ctx {
            return Err(RingError::WrongRing(format!("{p} is not in ring {}", self.name)));
        }
        Ok(())
    }

    /// Coordinates of a homogeneous class in its graded piece.
    pub fn normal_form(&self, p: &Polynomial) -> Result<ClassCoordinates, RingError> {
        self.check_class(p)?;
        let degree = if p.is_zero() {
            0
        } else {
            p.homogeneous_degree()
                .ok_or_else(|| RingError::NotHomogeneous(p.to_string()))?
        };
        self.coordinates_in_degree(p, degree)
    }

    /// As [`normal_form`](Self::normal_form), with the degree given explicitly
    /// so that zero can be placed in any piece.
    pub fn coordinates_in_degree(&self, p: &Polynomial, degree: u32) -> Result<ClassCoordinates, RingError> {
        self.check_class(p)?;
        if p.terms().any(|(m, _)| self.ctx.degree(m) != degree) {
            return Err(RingError::NotHomogeneous(p.to_string()));
        }
        let basis = self.graded_basis(degree);
        Ok(basis.coordinates(p))
    }

    /// Rational coordinates for a polynomial whose context is this ring's
    /// variables followed by `params`; each coordinate is a polynomial in the
    /// parameters. Every term must have ring degree `degree`.
    pub fn coordinates_with_parameters(
        &self,
        p: &Polynomial,
        degree: u32,
        params: &Arc<VariableContext>,
    ) -> Result<Vec<Polynomial>, RingError> {
        let n = self.ctx.len();
        let pc = p.context();
        let layout_ok = pc.len() == n + params.len()
            && pc.names()[..n] == *self.ctx.names()
            && pc.weights()[..n] == *self.ctx.weights()
            && pc.names()[n..] == *params.names();
        if !layout_ok {
            return Err(RingError::WrongRing(format!(
                "parametric class must use the variables of {} followed by the parameters",
                self.name
            )));
        }
        let basis = self.graded_basis(degree);
        let mut grouped: HashMap<Monomial, Vec<(Monomial, Rational)>> = HashMap::new();
        for (m, c) in p.terms() {
            let ring_part = Monomial(m.0[..n].to_vec());
            if self.ctx.degree(&ring_part) != degree {
                return Err(RingError::NotHomogeneous(p.to_string()));
            }
            grouped
                .entry(ring_part)
                .or_default()
                .push((Monomial(m.0[n..].to_vec()), c.clone()));
        }
        let mut coords = vec![Polynomial::zero(params); basis.rank()];
        for (ring_part, param_terms) in grouped {
            let idx = basis.monomial_index(&ring_part).expect("monomial of the right degree");
            let coeff = Polynomial::from_terms(params, param_terms);
            for (j, coord) in coords.iter_mut().enumerate() {
                let f = basis.free_coords.get(j, idx);
                if !f.is_zero() {
                    *coord = &*coord + &coeff.scale(&Rational::from_integer(f.clone()));
                }
            }
        }
        Ok(coords)
    }

    /// Whether `p` is zero in the ring (all homogeneous components).
    pub fn is_zero_class(&self, p: &Polynomial) -> Result<bool, RingError> {
        self.check_class(p)?;
        for (d, part) in p.components() {
            if !self.coordinates_in_degree(&part, d)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical representative: every homogeneous component rewritten in the
    /// chosen basis of its piece.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_class(p)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (d, part) in p.components() {
            let basis = self.graded_basis(d);
            let coords = basis.coordinates(&part);
            out = &out + &basis.representative(&coords);
        }
        Ok(out)
    }

    /// `reduce(p * q)`.
    pub fn multiply(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_class(p)?;
        self.check_class(q)?;
        self.reduce(&(p * q))
    }

    /// Same generators and relations over a different formal dimension.
    pub fn with_top_degree(&self, top: Option<u32>) -> GradedRingPresentation {
        GradedRingPresentation {
            name: self.name.clone(),
            ctx: self.ctx.clone(),
            relations: self.relations.clone(),
            top_degree: top,
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl fmt::Display for GradedRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .ctx
            .names()
            .iter()
            .zip(self.ctx.weights())
            .map(|(n, w)| format!("{n}:{w}"))
            .collect();
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        write!(f, "{} = Z[{}]/({})", self.name, gens.join(", "), rels.join(", "))?;
        if let Some(t) = self.top_degree {
            write!(f, ", top degree {t}")?;
        }
        Ok(())
    }
}

/// Coordinates of a class: free part (rational, so that classes with
/// rational coefficients can be expressed) and torsion part (integers
/// reduced modulo the invariant factors; empty when the class has
/// non-integer coefficients or the piece is torsion-free).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCoordinates {
    pub degree: u32,
    pub free: Vec<Rational>,
    pub torsion: Vec<BigInt>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    /// Free coordinates as integers, if they all are.
    pub fn integral(&self) -> Option<Vec<BigInt>> {
        self.free
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// One graded piece of a presented ring.
#[derive(Debug, Clone)]
pub struct GradedPieceBasis {
    pub degree: u32,
    /// All monomials of this degree, in descending graded-lex order.
    pub monomials: Vec<Monomial>,
    /// Representatives of the free basis.
    pub basis: Vec<Polynomial>,
    /// Set when the free basis consists of monomials.
    pub basis_monomials: Option<Vec<Monomial>>,
    pub torsion: Vec<BigInt>,
    pub torsion_generators: Vec<Polynomial>,
    /// `rank x monomials`: free coordinates of each monomial.
    free_coords: IntMatrix,
    /// `torsion x monomials`, entries reduced modulo the invariant factor.
    torsion_coords: IntMatrix,
    monomial_lookup: HashMap<Monomial, usize>,
    ctx: Arc<VariableContext>,
}

const MONOMIAL_BASIS_SEARCH_LIMIT: usize = 20_000;

impl GradedPieceBasis {
    fn compute(ring: &GradedRingPresentation, degree: u32) -> GradedPieceBasis {
        let ctx = &ring.ctx;
        let monomials = ctx.monomials_of_degree(degree);
        let n = monomials.len();
        let lookup: HashMap<Monomial, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        for rel in &ring.relations {
            let rd = rel.homogeneous_degree().unwrap();
            if rd > degree {
                continue;
            }
            for m in ctx.monomials_of_degree(degree - rd) {
                let mut col = vec![BigInt::zero(); n];
                for (rm, c) in rel.terms() {
                    col[lookup[&rm.mul(&m)]] = c.to_integer();
                }
                columns.push(col);
            }
        }
        let relmat = IntMatrix::from_columns(n, &columns);
        let snf = smith_normal_form(&relmat);
        let diag = snf.diagonal();
        let rank_rel = diag.iter().filter(|d| !d.is_zero()).count();

        let free_rows: Vec<usize> = (rank_rel..n).collect();
        let torsion_rows: Vec<usize> = (0..rank_rel).filter(|&i| diag[i] > BigInt::one()).collect();
        let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| diag[i].clone()).collect();
        let pi = snf.u.select_rows(&free_rows);
        let r = pi.rows();
        let u_inv = unimodular_inverse(&snf.u);
        let torsion_generators_vec: Vec<Vec<BigInt>> =
            torsion_rows.iter().map(|&i| u_inv.column(i)).collect();

        let (free_coords, basis_vecs, basis_monomials) = match find_monomial_basis(&pi) {
            Some(cols) => {
                let inv = unimodular_inverse(&pi.select_columns(&cols));
                let f = inv.mul(&pi).unwrap();
                let vecs: Vec<Vec<BigInt>> = cols
                    .iter()
                    .map(|&c| {
                        let mut v = vec![BigInt::zero(); n];
                        v[c] = BigInt::one();
                        v
                    })
                    .collect();
                (f, vecs, Some(cols.iter().map(|&c| monomials[c].clone()).collect()))
            }
            None => {
                let h = hermite_normal_form(&pi).h;
                let vecs = (0..r)
                    .map(|j| {
                        let mut e = vec![BigInt::zero(); r];
                        e[j] = BigInt::one();
                        solve_integer(&h, &e).unwrap().expect("coordinate map is surjective")
                    })
                    .collect();
                (h, vecs, None)
            }
        };

        // Torsion coordinates relative to the chosen free basis.
        let raw_t = snf.u.select_rows(&torsion_rows);
        let mut torsion_coords = IntMatrix::zeros(torsion_rows.len(), n);
        for (ti, modulus) in torsion.iter().enumerate() {
            let tb: Vec<BigInt> = basis_vecs
                .iter()
                .map(|b| raw_t.row(ti).iter().zip(b).map(|(x, y)| x * y).sum())
                .collect();
            for col in 0..n {
                let mut v = raw_t.get(ti, col).clone();
                for (j, tbj) in tb.iter().enumerate() {
                    v -= tbj * free_coords.get(j, col);
                }
                torsion_coords.set(ti, col, v.mod_floor(modulus));
            }
        }

        let to_poly = |v: &Vec<BigInt>| {
            Polynomial::from_terms(
                ctx,
                v.iter()
                    .enumerate()
                    .map(|(i, c)| (monomials[i].clone(), Rational::from_integer(c.clone()))),
            )
        };
        GradedPieceBasis {
            degree,
            basis: basis_vecs.iter().map(to_poly).collect(),
            basis_monomials,
            torsion_generators: torsion_generators_vec.iter().map(to_poly).collect(),
            torsion,
            free_coords,
            torsion_coords,
            monomial_lookup: lookup,
            monomials,
            ctx: ctx.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::new(self.rank(), self.torsion.clone()).expect("Smith invariant factors")
    }

    pub fn monomial_index(&self, m: &Monomial) -> Option<usize> {
        self.monomial_lookup.get(m).copied()
    }

    /// Free coordinate map, `rank x monomials`.
    pub fn coordinate_matrix(&self) -> &IntMatrix {
        &self.free_coords
    }

    /// Coordinates of a polynomial all of whose terms have this degree.
    pub fn coordinates(&self, p: &Polynomial) -> ClassCoordinates {
        let mut free = vec![Rational::zero(); self.rank()];
        let integral = p.is_integral();
        let mut torsion = vec![BigInt::zero(); if integral { self.torsion.len() } else { 0 }];
        for (m, c) in p.terms() {
            let idx = self.monomial_lookup[m];
            for (j, f) in free.iter_mut().enumerate() {
                let k = self.free_coords.get(j, idx);
                if !k.is_zero() {
                    *f += c * Rational::from_integer(k.clone());
                }
            }
            if integral {
                for (t, tv) in torsion.iter_mut().enumerate() {
                    *tv += c.to_integer() * self.torsion_coords.get(t, idx);
                }
            }
        }
        for (tv, m) in torsion.iter_mut().zip(&self.torsion) {
            *tv = tv.mod_floor(m);
        }
        ClassCoordinates { degree: self.degree, free, torsion }
    }

    /// `sum free_j * basis_j + sum torsion_i * torsion_generator_i`.
    pub fn representative(&self, c: &ClassCoordinates) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (b, x) in self.basis.iter().zip(&c.free) {
            out = &out + &b.scale(x);
        }
        for (g, x) in self.torsion_generators.iter().zip(&c.torsion) {
            out = &out + &g.scale(&Rational::from_integer(x.clone()));
        }
        out
    }
}

/// First subset of columns (in lexicographic order of index tuples) on which
/// the `r x n` matrix restricts to a unimodular block.
fn find_monomial_basis(pi: &IntMatrix) -> Option<Vec<usize>> {
    let (r, n) = (pi.rows(), pi.cols());
    if r == 0 {
        return Some(Vec::new());
    }
    let mut combo: Vec<usize> = (0..r).collect();
    let mut tried = 0;
    loop {
        tried += 1;
        if tried > MONOMIAL_BASIS_SEARCH_LIMIT {
            return None;
        }
        let det = determinant(&pi.select_columns(&combo)).unwrap();
        if det.abs().is_one() {
            return Some(combo);
        }
        // next combination
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if combo[i] < n - r + i {
                combo[i] += 1;
                for j in i + 1..r {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Inverse of a unimodular matrix via its Hermite form.
fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let h = zlinalg::hermite_normal_form(m);
    debug_assert_eq!(h.h, IntMatrix::identity(m.rows()));
    h.u
}

#[cfg(test)]
mod tests;
