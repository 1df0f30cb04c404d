//! Fundamental classes, pairing matrices and the duality checks built on them.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{GradedRingPresentation, RingError};
use crate::exactpoly::{Monomial, Polynomial, Rational};
use crate::polysys::univariate_rational_roots;
use crate::zlinalg::{determinant, integer_kernel, IntMatrix};

#[derive(Debug, Clone)]
enum Evaluation {
    /// Top piece coordinate times a sign.
    Coordinate { sign: BigInt },
    /// Stored values of each top-degree monomial.
    Table(HashMap<Monomial, BigInt>),
}

/// An isomorphism from the top graded piece to the integers.
#[derive(Debug, Clone)]
pub struct FundamentalClass {
    ring: Arc<GradedRingPresentation>,
    top_degree: u32,
    evaluation: Evaluation,
}

impl FundamentalClass {
    /// Generator of the top piece with the sign fixed so that `distinguished`
    /// evaluates positively.
    pub fn new(ring: Arc<GradedRingPresentation>, distinguished: &Polynomial) -> Result<Self, RingError> {
        let top = ring.top_degree().ok_or_else(|| RingError::NoTopDegree(ring.name().into()))?;
        let basis = ring.graded_basis(top);
        if basis.rank() != 1 || !basis.torsion.is_empty() {
            return Err(RingError::TopNotRankOne { degree: top, group: basis.group() });
        }
        let coords = ring.coordinates_in_degree(distinguished, top)?;
        let c = &coords.free[0];
        if c.is_zero() {
            return Err(RingError::ZeroDistinguished(distinguished.to_string()));
        }
        let sign = if c.is_positive() { BigInt::one() } else { -BigInt::one() };
        Ok(FundamentalClass { ring, top_degree: top, evaluation: Evaluation::Coordinate { sign } })
    }

    /// Evaluation given directly by a value for every top-degree monomial.
    /// Nothing is derived from the ring's relations.
    pub fn from_table(
        ring: Arc<GradedRingPresentation>,
        table: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self, RingError> {
        let top = ring.top_degree().ok_or_else(|| RingError::NoTopDegree(ring.name().into()))?;
        let table: HashMap<Monomial, BigInt> = table.into_iter().collect();
        for m in table.keys() {
            if ring.context().degree(m) != top {
                return Err(RingError::NotHomogeneous(m.display(ring.context())));
            }
        }
        Ok(FundamentalClass { ring, top_degree: top, evaluation: Evaluation::Table(table) })
    }

    pub fn ring(&self) -> &Arc<GradedRingPresentation> {
        &self.ring
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    /// `+1` or `-1` for a coordinate evaluation, `None` for a table.
    pub fn sign(&self) -> Option<&BigInt> {
        match &self.evaluation {
            Evaluation::Coordinate { sign } => Some(sign),
            Evaluation::Table(_) => None,
        }
    }

    /// `<p, [X]>`: the top-degree component of `p` evaluated.
    pub fn evaluate(&self, p: &Polynomial) -> Result<Rational, RingError> {
        if p.context() != self.ring.context() {
            return Err(RingError::WrongRing(p.to_string()));
        }
        let top = p.homogeneous_component(self.top_degree);
        match &self.evaluation {
            Evaluation::Coordinate { sign } => {
                let c = self.ring.coordinates_in_degree(&top, self.top_degree)?;
                Ok(&c.free[0] * Rational::from_integer(sign.clone()))
            }
            Evaluation::Table(table) => {
                let mut acc = Rational::zero();
                for (m, c) in top.terms() {
                    let v = table
                        .get(m)
                        .ok_or_else(|| RingError::MissingTableEntry(m.display(self.ring.context())))?;
                    acc += c * Rational::from_integer(v.clone());
                }
                Ok(acc)
            }
        }
    }

    /// Values of every top-degree monomial, in descending graded-lex order.
    pub fn monomial_values(&self) -> Result<Vec<(Monomial, Rational)>, RingError> {
        let ctx = self.ring.context();
        ctx.monomials_of_degree(self.top_degree)
            .into_iter()
            .map(|m| {
                let p = Polynomial::monomial(ctx, m.clone(), Rational::one());
                Ok((m, self.evaluate(&p)?))
            })
            .collect()
    }

    /// `M[i][j] = <b_i c_j, [X]>` over the bases of degrees `d` and `top - d`.
    pub fn pairing_matrix(&self, degree: u32) -> Result<IntMatrix, RingError> {
        let top = self.top_degree;
        if degree > top {
            return Ok(IntMatrix::zeros(self.ring.rank(degree), 0));
        }
        let left = self.ring.graded_basis(degree);
        let right = self.ring.graded_basis(top - degree);
        for b in [&left, &right] {
            if !b.torsion.is_empty() {
                return Err(RingError::Torsion(b.degree));
            }
        }
        let mut m = IntMatrix::zeros(left.rank(), right.rank());
        for (i, b) in left.basis.iter().enumerate() {
            for (j, c) in right.basis.iter().enumerate() {
                let v = self.evaluate(&(b * c))?;
                if !v.is_integer() {
                    return Err(RingError::NoPreimage(format!("non-integral pairing value {v}")));
                }
                m.set(i, j, v.to_integer());
            }
        }
        Ok(m)
    }

    /// Determinant of every complementary pairing, `0 <= d <= top/2`.
    pub fn check_unimodular_duality(&self) -> Result<DualityReport, RingError> {
        let top = self.top_degree;
        let mut pairs = Vec::new();
        for d in 0..=top / 2 {
            let (left, right) = (self.ring.graded_basis(d), self.ring.graded_basis(top - d));
            if left.rank() == 0 && right.rank() == 0 && left.torsion.is_empty() && right.torsion.is_empty() {
                continue;
            }
            let mut pair = DualityPair {
                degree: d,
                complementary: top - d,
                rank: left.rank(),
                complementary_rank: right.rank(),
                matrix: Vec::new(),
                determinant: None,
                unimodular: false,
                problem: None,
            };
            if left.rank() != right.rank() {
                pair.problem = Some(format!("ranks {} and {} differ", left.rank(), right.rank()));
            } else if !left.torsion.is_empty() || !right.torsion.is_empty() {
                pair.problem = Some("torsion present".into());
            } else {
                let m = self.pairing_matrix(d)?;
                let det = determinant(&m)?;
                pair.unimodular = det.abs().is_one();
                if !pair.unimodular {
                    pair.problem = Some(format!("determinant {det}"));
                }
                pair.matrix = m.to_string_rows();
                pair.determinant = Some(det.to_string());
            }
            pairs.push(pair);
        }
        let all_unimodular = pairs.iter().all(|p| p.unimodular);
        Ok(DualityReport { ring: self.ring.name().into(), top_degree: top, pairs, all_unimodular })
    }

    /// Whether the class pairs to zero with every class of complementary
    /// degree. Under unimodular duality this certifies that the class vanishes.
    pub fn kernel_of_pairing(&self, candidate: &Polynomial) -> Result<bool, RingError> {
        if candidate.is_zero() {
            return Ok(true);
        }
        let d = candidate
            .homogeneous_degree()
            .ok_or_else(|| RingError::NotHomogeneous(candidate.to_string()))?;
        if d > self.top_degree {
            return Ok(true);
        }
        let partner = self.ring.graded_basis(self.top_degree - d);
        for c in &partner.basis {
            if !self.evaluate(&(candidate * c))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Integral classes of degree `d` pairing to zero with everything.
    pub fn pairing_kernel_basis(&self, degree: u32) -> Result<Vec<Polynomial>, RingError> {
        let m = self.pairing_matrix(degree)?;
        let k = integer_kernel(&m.transpose());
        let basis = self.ring.graded_basis(degree);
        Ok((0..k.cols())
            .map(|j| {
                let coeffs = k.column(j);
                basis
                    .basis
                    .iter()
                    .zip(&coeffs)
                    .fold(Polynomial::zero(self.ring.context()), |acc, (b, c)| {
                        &acc + &b.scale(&Rational::from_integer(c.clone()))
                    })
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityPair {
    pub degree: u32,
    pub complementary: u32,
    pub rank: usize,
    pub complementary_rank: usize,
    pub matrix: Vec<Vec<String>>,
    pub determinant: Option<String>,
    pub unimodular: bool,
    pub problem: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub ring: String,
    pub top_degree: u32,
    pub pairs: Vec<DualityPair>,
    pub all_unimodular: bool,
}

impl DualityReport {
    pub fn failures(&self) -> impl Iterator<Item = &DualityPair> {
        self.pairs.iter().filter(|p| !p.unimodular)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownEntrySolution {
    pub value: BigInt,
    /// Coefficients of `det(x)`, lowest degree first.
    pub determinant_polynomial: Vec<BigInt>,
    pub determinant: BigInt,
}

impl UnknownEntrySolution {
    /// `det(x)` written out, e.g. `3x - 26`.
    pub fn polynomial_string(&self) -> String {
        format_univariate(&self.determinant_polynomial, "x")
    }
}

/// Integer value of the unknown entries (`None`, all the same unknown) that
/// makes the determinant `+-1`. The unknown must occupy a diagonal cell or a
/// symmetric pair of cells.
pub fn solve_unknown_pairing_entry(entries: &[Vec<Option<BigInt>>]) -> Result<UnknownEntrySolution, RingError> {
    let n = entries.len();
    if entries.iter().any(|r| r.len() != n) {
        return Err(RingError::UnknownPattern("matrix is not square".into()));
    }
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| entries[i][j].is_none())
        .collect();
    let valid = match cells.as_slice() {
        [(i, j)] => i == j,
        [(i, j), (k, l)] => i == l && j == k,
        _ => false,
    };
    if !valid {
        return Err(RingError::UnknownPattern(format!(
            "expected one diagonal unknown or one symmetric pair, found {} unknown cells",
            cells.len()
        )));
    }
    let degree = cells.len();
    let eval = |x: i64| -> BigInt {
        let rows: Vec<Vec<BigInt>> = entries
            .iter()
            .map(|r| r.iter().map(|e| e.clone().unwrap_or_else(|| BigInt::from(x))).collect())
            .collect();
        determinant(&IntMatrix::from_rows(&rows)).unwrap()
    };
    let samples: Vec<(i64, BigInt)> = (0..=degree as i64).map(|x| (x, eval(x))).collect();
    let coeffs = interpolate(&samples);
    let mut solutions = Vec::new();
    for target in [1i64, -1] {
        let mut shifted: BTreeMap<u32, Rational> = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            let mut v = c.clone();
            if k == 0 {
                v -= Rational::from_integer(target.into());
            }
            if !v.is_zero() {
                shifted.insert(k as u32, v);
            }
        }
        if shifted.is_empty() {
            return Err(RingError::MultipleSolutions(vec!["every integer".into()]));
        }
        for root in univariate_rational_roots(&shifted)? {
            if root.is_integer() && !solutions.iter().any(|(r, _)| r == &root.to_integer()) {
                solutions.push((root.to_integer(), BigInt::from(target)));
            }
        }
    }
    let det_poly: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
    match solutions.len() {
        0 => Err(RingError::NoIntegerSolution(format_univariate(&det_poly, "x"))),
        1 => {
            let (value, determinant) = solutions.pop().unwrap();
            Ok(UnknownEntrySolution { value, determinant_polynomial: det_poly, determinant })
        }
        _ => {
            solutions.sort();
            Err(RingError::MultipleSolutions(solutions.iter().map(|(v, _)| v.to_string()).collect()))
        }
    }
}

/// Lagrange interpolation through integer sample points; coefficients
/// lowest degree first.
fn interpolate(samples: &[(i64, BigInt)]) -> Vec<Rational> {
    let n = samples.len();
    let mut result = vec![Rational::zero(); n];
    for (i, (xi, yi)) in samples.iter().enumerate() {
        // Lagrange basis polynomial for point i.
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * Rational::from_integer((*xj).into());
            }
            basis = next;
            denom *= Rational::from_integer((xi - xj).into());
        }
        let scale = Rational::from_integer(yi.clone()) / denom;
        for (k, b) in basis.iter().enumerate() {
            result[k] += b * &scale;
        }
    }
    while result.len() > 1 && result.last().unwrap().is_zero() {
        result.pop();
    }
    result
}

fn format_univariate(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let body = match k {
            0 => mag.to_string(),
            _ => {
                let v = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if mag.is_one() {
                    v
                } else {
                    format!("{mag}{v}")
                }
            }
        };
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
