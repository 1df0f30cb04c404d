//! Rewriting a rational presentation in terms of a new degree-8 generator
//! `x = lambda*t^4 + mu*w` subject to `t*x^2 + alpha*t^5*x - beta*t^9 = 0`.

use num_traits::Zero;

use super::{GradedRingPresentation, RingError};
use crate::exactpoly::{Polynomial, Rational};
use crate::polysys::{solve_system, SystemError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationChange {
    pub lambda: Rational,
    pub mu: Rational,
    /// `lambda*t^4 + mu*w` in the ring.
    pub generator: Polynomial,
}

/// Every `(lambda, mu)` with `mu != 0` satisfying the degree-18 equation in
/// the ring tensored with the rationals, restricted to those for which
/// `filter = (relation, variable)` vanishes after substituting the new
/// generator for `variable`.
pub fn solve_presentation_change(
    ring: &GradedRingPresentation,
    alpha: &Rational,
    beta: &Rational,
    filter: Option<(&Polynomial, &str)>,
) -> Result<Vec<PresentationChange>, RingError> {
    let ctx = ring.context();
    let (t_name, w_name) = match (ctx.names(), ctx.weights()) {
        (names, weights) if weights == [2, 8] => (names[0].clone(), names[1].clone()),
        _ => {
            return Err(RingError::PresentationChange(
                "expected generators of degrees 2 and 8".into(),
            ))
        }
    };
    let params = crate::exactpoly::VariableContext::new([("lambda", 1u32), ("mu", 1)])?;
    let full = ctx.extended([("lambda", 1u32), ("mu", 1)])?;
    let var = |n: &str| Polynomial::var(&full, n).unwrap();
    let (t, w) = (var(&t_name), var(&w_name));
    let x = &(&var("lambda") * &t.pow(4)) + &(&var("mu") * &w);
    let expr = &(&(&t * &x.pow(2)) + &(&t.pow(5) * &x).scale(alpha)) - &t.pow(9).scale(beta);
    let equations = ring.coordinates_with_parameters(&expr, 18, &params)?;
    let equations: Vec<Polynomial> = equations.into_iter().filter(|e| !e.is_zero()).collect();

    let solutions = match solve_system(&equations, &["mu"]) {
        Ok(s) => s,
        Err(SystemError::Inconsistent(_)) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    if solutions.is_empty() {
        return Err(RingError::PresentationChange(format!(
            "no rational solution with mu != 0 for alpha = {alpha}, beta = {beta}"
        )));
    }
    let mut out = Vec::new();
    for s in solutions {
        let (lambda, mu) = (s["lambda"].clone(), s["mu"].clone());
        if mu.is_zero() {
            continue;
        }
        let t = Polynomial::var(ctx, &t_name)?;
        let w = Polynomial::var(ctx, &w_name)?;
        let generator = &t.pow(4).scale(&lambda) + &w.scale(&mu);
        if let Some((rel, name)) = filter {
            let image = rel.substitute(ctx, &[(name, generator.clone())], false)?;
            if !ring.is_zero_class(&image)? {
                continue;
            }
        }
        out.push(PresentationChange { lambda, mu, generator });
    }
    if out.is_empty() {
        return Err(RingError::PresentationChange("no candidate satisfies the extra relation".into()));
    }
    out.sort_by(|a, b| (&a.lambda, &a.mu).cmp(&(&b.lambda, &b.mu)));
    Ok(out)
}
