use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix};

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    /// Rejects torsion lists that are not a divisibility chain of factors > 1.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, String> {
        for (i, d) in torsion.iter().enumerate() {
            if d <= &BigInt::one() {
                return Err(format!("invariant factor {d} is not > 1"));
            }
            if i > 0 && !(d % &torsion[i - 1]).is_zero() {
                return Err(format!("{} does not divide {d}", torsion[i - 1]));
            }
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form of `Z^free + Z/o_1 + ... ` for arbitrary cyclic orders.
    pub fn from_cyclic(free: usize, orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            m.set(i, i, o.clone());
        }
        let snf = smith_normal_form(&m);
        let diag = snf.diagonal();
        let extra_free = diag.iter().filter(|d| d.is_zero()).count();
        let torsion = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
        FgAbelianGroup { free_rank: free + extra_free, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let g = FgAbelianGroup::from_cyclic(1, &[BigInt::from(2), BigInt::from(3)]);
        assert_eq!(g, FgAbelianGroup::new(1, vec![BigInt::from(6)]).unwrap());
        assert_eq!(g.to_string(), "Z + Z/6");
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(1)]).is_err());
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FgAbelianGroup::free(2).to_string(), "Z^2");
    }
}
