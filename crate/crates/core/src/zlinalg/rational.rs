//! Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced row echelon form of a dense rational matrix, in place. Returns the
/// pivot column of each nonzero row.
pub fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                let sub = &f * &rows[r][j];
                rows[i][j] -= sub;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<BigRational>),
    /// Consistent, with the listed unknowns left free; the particular
    /// solution sets them to zero.
    Underdetermined { particular: Vec<BigRational>, free: Vec<usize> },
    Inconsistent,
}

/// Solves `A x = b` exactly.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> LinearSolution {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return LinearSolution::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::Underdetermined { particular: x, free }
    }
}

pub fn identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::integer;

    #[test]
    fn solves_small_systems() {
        let a = vec![vec![integer(2), integer(1)], vec![integer(1), integer(-1)]];
        let b = vec![integer(3), integer(0)];
        assert_eq!(solve(&a, &b), LinearSolution::Unique(vec![integer(1), integer(1)]));
        let a = vec![vec![integer(1), integer(1)], vec![integer(2), integer(2)]];
        assert_eq!(solve(&a, &[integer(1), integer(3)]), LinearSolution::Inconsistent);
        assert!(matches!(
            solve(&a, &[integer(1), integer(2)]),
            LinearSolution::Underdetermined { .. }
        ));
    }
}
