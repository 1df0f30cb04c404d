//! Weight systems of Spin(10) x U(1) representations and their Chern classes
//! by the splitting principle.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{x_context, CharClassError, NX};
use crate::exactpoly::{Monomial, Polynomial, Rational};

/// Which half-spin representation: an even or odd number of minus signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    Even,
    Odd,
}

impl Chirality {
    pub fn other(self) -> Chirality {
        match self {
            Chirality::Even => Chirality::Odd,
            Chirality::Odd => Chirality::Even,
        }
    }
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Even => "even",
            Chirality::Odd => "odd",
        })
    }
}

/// A multiset of weights in coordinates `(x1, .., x5 | y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    pub label: String,
    pub weights: Vec<[Rational; NX]>,
}

fn zero_weight() -> [Rational; NX] {
    std::array::from_fn(|_| Rational::zero())
}

impl WeightSystem {
    pub fn new(label: impl Into<String>, weights: Vec<[Rational; NX]>) -> Self {
        WeightSystem { label: label.into(), weights }
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    /// The one-dimensional representation `xi^k`: weight `k*y`.
    pub fn line(k: i64) -> WeightSystem {
        let mut w = zero_weight();
        w[NX - 1] = Rational::from_integer(k.into());
        WeightSystem::new(format!("xi^{k}"), vec![w])
    }

    /// Adds `k*y` to every weight.
    pub fn twist(&self, k: i64) -> WeightSystem {
        let shift = Rational::from_integer(k.into());
        let weights = self
            .weights
            .iter()
            .map(|w| {
                let mut w = w.clone();
                w[NX - 1] += &shift;
                w
            })
            .collect();
        let label = if k == 0 { self.label.clone() } else { format!("{} (x) xi^{k}", self.label) };
        WeightSystem { label, weights }
    }

    /// Sum of all weights as a linear form.
    pub fn weight_sum(&self) -> [Rational; NX] {
        let mut s = zero_weight();
        for w in &self.weights {
            for (a, b) in s.iter_mut().zip(w) {
                *a += b;
            }
        }
        s
    }

    /// A weight as a degree-2 polynomial in the `x, y` context.
    pub fn weight_polynomial(w: &[Rational; NX]) -> Polynomial {
        let ctx = x_context();
        Polynomial::from_terms(
            &ctx,
            w.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::var(NX, i, 1), c.clone())),
        )
    }

    /// Elementary symmetric polynomials `e_1 .. e_upto` of the weights.
    pub fn chern_classes(&self, upto: usize) -> Result<Vec<Polynomial>, CharClassError> {
        chern_from_roots(self, upto)
    }

    /// `1 + e_1 + .. + e_n`.
    pub fn total_chern_class(&self) -> Result<Polynomial, CharClassError> {
        let classes = chern_from_roots(self, self.dimension())?;
        let ctx = x_context();
        Ok(classes.iter().fold(Polynomial::one(&ctx), |acc, c| &acc + c))
    }
}

/// Half-spin weights `(+-1/2, .., +-1/2)` of Spin(n); only n = 10 is supported.
pub fn spin_weights(n: u32, chirality: Chirality) -> Result<WeightSystem, CharClassError> {
    if n != 10 {
        return Err(CharClassError::Unsupported(format!("spin weights of Spin({n})")));
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut weights = Vec::new();
    for mask in 0u32..32 {
        let minus = mask.count_ones();
        let keep = match chirality {
            Chirality::Even => minus % 2 == 0,
            Chirality::Odd => minus % 2 == 1,
        };
        if !keep {
            continue;
        }
        let mut w = zero_weight();
        for (i, wi) in w.iter_mut().take(5).enumerate() {
            *wi = if mask & (1 << (4 - i)) != 0 { -half.clone() } else { half.clone() };
        }
        weights.push(w);
    }
    let label = match chirality {
        Chirality::Even => "delta+",
        Chirality::Odd => "delta-",
    };
    Ok(WeightSystem::new(label, weights))
}

/// Vector representation weights `+-x_i` of SO(n); only n = 10 is supported.
pub fn vector_weights(n: u32) -> Result<WeightSystem, CharClassError> {
    if n != 10 {
        return Err(CharClassError::Unsupported(format!("vector weights of SO({n})")));
    }
    let mut weights = Vec::new();
    for i in 0..5 {
        for sign in [1, -1] {
            let mut w = zero_weight();
            w[i] = Rational::from_integer(sign.into());
            weights.push(w);
        }
    }
    Ok(WeightSystem::new("rho", weights))
}

type Exps = [u8; NX];

/// Elementary symmetric polynomials of the weights, `e_1 .. e_upto`, in the
/// `x, y` context. Works on integer multiples of the weights in `i128`.
pub fn chern_from_roots(ws: &WeightSystem, upto: usize) -> Result<Vec<Polynomial>, CharClassError> {
    if upto > ws.dimension() {
        return Err(CharClassError::Unsupported(format!(
            "c_{upto} of a {}-dimensional representation",
            ws.dimension()
        )));
    }
    let scale = ws
        .weights
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let roots: Vec<[i128; NX]> = ws
        .weights
        .iter()
        .map(|w| {
            let mut r = [0i128; NX];
            for (ri, c) in r.iter_mut().zip(w) {
                *ri = (c * Rational::from_integer(scale.clone())).to_integer().to_i128().ok_or(CharClassError::Overflow)?;
            }
            Ok(r)
        })
        .collect::<Result<_, CharClassError>>()?;

    let mut layers: Vec<HashMap<Exps, i128>> = vec![HashMap::new(); upto + 1];
    layers[0].insert([0; NX], 1);
    for (i, root) in roots.iter().enumerate() {
        for k in (1..=upto.min(i + 1)).rev() {
            let (lower, upper) = layers.split_at_mut(k);
            let src = &lower[k - 1];
            let dst = &mut upper[0];
            for (m, c) in src {
                for (j, &rj) in root.iter().enumerate() {
                    if rj == 0 {
                        continue;
                    }
                    let mut m2 = *m;
                    m2[j] += 1;
                    let add = c.checked_mul(rj).ok_or(CharClassError::Overflow)?;
                    let slot = dst.entry(m2).or_insert(0);
                    *slot = slot.checked_add(add).ok_or(CharClassError::Overflow)?;
                }
            }
        }
    }

    let ctx = x_context();
    let mut out = Vec::with_capacity(upto);
    let mut denom = BigInt::one();
    for layer in layers.into_iter().skip(1) {
        denom *= &scale;
        let terms = layer.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| {
            let exps = Monomial(m.iter().map(|&e| e as u32).collect());
            (exps, Rational::new(BigInt::from(c), denom.clone()))
        });
        out.push(Polynomial::from_terms(&ctx, terms));
    }
    Ok(out)
}

/// Images of `p` under the generators of W(D5): the transposition
/// `x1 <-> x2`, the cycle `x1 -> x2 -> .. -> x5 -> x1`, and the sign
/// change of `x1, x2`.
pub fn weyl_generator_images(p: &Polynomial) -> Vec<Polynomial> {
    let ctx = p.context().clone();
    let act = |f: &dyn Fn(&[u32]) -> (Vec<u32>, bool)| {
        Polynomial::from_terms(
            &ctx,
            p.terms().map(|(m, c)| {
                let (e, negate) = f(m.exponents());
                (Monomial(e), if negate { -c.clone() } else { c.clone() })
            }),
        )
    };
    vec![
        act(&|e| {
            let mut e = e.to_vec();
            e.swap(0, 1);
            (e, false)
        }),
        act(&|e| {
            let mut e = e.to_vec();
            e[..5].rotate_right(1);
            (e, false)
        }),
        act(&|e| (e.to_vec(), (e[0] + e[1]) % 2 == 1)),
    ]
}

/// Apply a signed permutation of `x1..x5` (sign flips given per variable).
pub fn apply_signed_permutation(p: &Polynomial, perm: &[usize; 5], flips: &[bool; 5]) -> Polynomial {
    let ctx = p.context().clone();
    Polynomial::from_terms(
        &ctx,
        p.terms().map(|(m, c)| {
            let e = m.exponents();
            let mut out = e.to_vec();
            let mut negate = false;
            for i in 0..5 {
                out[perm[i]] = e[i];
                if flips[i] && e[i] % 2 == 1 {
                    negate = !negate;
                }
            }
            (Monomial(out), if negate { -c.clone() } else { c.clone() })
        }),
    )
}
