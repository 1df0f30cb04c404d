//! Ring maps given by generator images, and the umkehr construction.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{GradedRingPresentation, RingError};
use crate::exactpoly::{PolyError, Polynomial, Rational};
use crate::zlinalg::{integer_kernel, solve_integer, IntMatrix};

#[derive(Debug, Clone)]
pub struct RingHom {
    source: Arc<GradedRingPresentation>,
    target: Arc<GradedRingPresentation>,
    /// Image of each source generator, in generator order.
    images: Vec<Polynomial>,
}

impl RingHom {
    /// Validated map: every source relation must become zero in the target.
    pub fn define(
        source: Arc<GradedRingPresentation>,
        target: Arc<GradedRingPresentation>,
        images: &[(&str, Polynomial)],
    ) -> Result<RingHom, RingError> {
        let sctx = source.context();
        let mut ordered = Vec::with_capacity(sctx.len());
        for (name, weight) in sctx.names().iter().zip(sctx.weights()) {
            let (_, img) = images
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| RingError::MissingImage(name.clone()))?;
            if img.context() != target.context() {
                return Err(RingError::WrongRing(img.to_string()));
            }
            if !img.is_zero() && img.homogeneous_degree() != Some(*weight) {
                return Err(RingError::Poly(PolyError::DegreeMismatch {
                    var: name.clone(),
                    expected: *weight,
                    found: img.homogeneous_degree().map_or("inhomogeneous".into(), |d| d.to_string()),
                }));
            }
            ordered.push(img.clone());
        }
        for (name, _) in images {
            if sctx.index_of(name).is_none() {
                return Err(RingError::Poly(PolyError::UnknownVariable(name.to_string())));
            }
        }
        let hom = RingHom { source, target, images: ordered };
        for rel in hom.source.relations() {
            let image = hom.apply(rel)?;
            if !hom.target.is_zero_class(&image)? {
                return Err(RingError::RelationNotPreserved {
                    relation: rel.to_string(),
                    residual: hom.target.reduce(&image)?.to_string(),
                });
            }
        }
        Ok(hom)
    }

    /// The identity map of a ring.
    pub fn identity(ring: Arc<GradedRingPresentation>) -> RingHom {
        let images = ring
            .context()
            .names()
            .iter()
            .map(|n| Polynomial::var(ring.context(), n).unwrap())
            .collect();
        RingHom { source: ring.clone(), target: ring, images }
    }

    pub fn source(&self) -> &Arc<GradedRingPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRingPresentation> {
        &self.target
    }

    pub fn image_of(&self, generator: &str) -> Option<&Polynomial> {
        self.source.context().index_of(generator).map(|i| &self.images[i])
    }

    /// Substitute generator images; the result is not reduced.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, RingError> {
        if p.context() != self.source.context() {
            return Err(RingError::WrongRing(p.to_string()));
        }
        let names = self.source.context().names();
        let assignments: Vec<(&str, Polynomial)> =
            names.iter().map(|n| n.as_str()).zip(self.images.iter().cloned()).collect();
        Ok(p.substitute(self.target.context(), &assignments, false)?)
    }

    /// `target rank x source rank`: column `j` holds the coordinates of the
    /// image of the `j`-th source basis element.
    pub fn coordinate_matrix(&self, degree: u32) -> Result<IntMatrix, RingError> {
        let src = self.source.graded_basis(degree);
        let tgt = self.target.graded_basis(degree);
        let mut columns = Vec::with_capacity(src.rank());
        for b in &src.basis {
            let c = self.target.coordinates_in_degree(&self.apply(b)?, degree)?;
            columns.push(c.integral().expect("integral image of an integral class"));
        }
        Ok(IntMatrix::from_columns(tgt.rank(), &columns))
    }

    /// `x * multiplier` for any `x` with `h(x) = y`. The result is accepted
    /// only after checking that every kernel element of `h` in that degree is
    /// killed by the multiplier.
    pub fn umkehr(&self, y: &Polynomial, multiplier: &Polynomial) -> Result<Polynomial, RingError> {
        let degree = if y.is_zero() {
            0
        } else {
            y.homogeneous_degree().ok_or_else(|| RingError::NotHomogeneous(y.to_string()))?
        };
        let src = self.source.graded_basis(degree);
        let tgt = self.target.graded_basis(degree);
        if !src.torsion.is_empty() {
            return Err(RingError::Torsion(degree));
        }
        if !tgt.torsion.is_empty() {
            return Err(RingError::Torsion(degree));
        }
        let m = self.coordinate_matrix(degree)?;
        let b = self
            .target
            .coordinates_in_degree(y, degree)?
            .integral()
            .ok_or_else(|| RingError::NoPreimage(y.to_string()))?;
        let sol = solve_integer(&m, &b)?.ok_or_else(|| RingError::NoPreimage(y.to_string()))?;
        let combine = |coeffs: &[BigInt]| {
            src.basis.iter().zip(coeffs).fold(Polynomial::zero(self.source.context()), |acc, (p, c)| {
                &acc + &p.scale(&Rational::from_integer(c.clone()))
            })
        };
        let kernel = integer_kernel(&m);
        for j in 0..kernel.cols() {
            let k = combine(&kernel.column(j));
            let product = &k * multiplier;
            if !self.source.is_zero_class(&product)? {
                return Err(RingError::AmbiguousResult {
                    class: y.to_string(),
                    kernel: k.to_string(),
                    product: self.source.reduce(&product)?.to_string(),
                });
            }
        }
        let x = combine(&sol);
        self.source.reduce(&(&x * multiplier))
    }
}
