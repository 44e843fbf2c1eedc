use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Highest simplex dimension the bit-packed words can describe.
pub const MAX_DIM: usize = 30;

/// A degeneracy operator `s_{j1} s_{j2} ... s_{jk}` with `j1 > j2 > ... > jk`.
///
/// Seen as a surjection `[n] -> [n-k]`, the indices are exactly the domain
/// positions `j` with `s(j) = s(j+1)`, so the word is stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DegeneracyWord(u32);

impl DegeneracyWord {
    pub const IDENTITY: DegeneracyWord = DegeneracyWord(0);

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for (pos, &j) in indices.iter().enumerate() {
            if j >= MAX_DIM {
                return Err(Error::OutOfRange(alloc::format!("degeneracy index {j}")));
            }
            if pos > 0 && indices[pos - 1] <= j {
                return Err(Error::InvalidData(alloc::format!(
                    "degeneracy word {indices:?} is not strictly decreasing"
                )));
            }
            mask |= 1 << j;
        }
        Ok(DegeneracyWord(mask))
    }

    pub fn sigma(i: usize) -> Self {
        assert!(i < MAX_DIM, "degeneracy index out of range");
        DegeneracyWord(1 << i)
    }

    pub fn from_mask(mask: u32) -> Self {
        DegeneracyWord(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// Strictly decreasing index list.
    pub fn indices(self) -> Vec<usize> {
        (0..32).rev().filter(|j| self.0 & (1 << j) != 0).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Value of the underlying surjection at `j`.
    pub fn eval(self, j: usize) -> usize {
        let below = if j >= 32 { self.0 } else { self.0 & ((1u32 << j) - 1) };
        j - below.count_ones() as usize
    }

    /// The composite surjection `self ∘ inner`; acting on simplices this is
    /// "apply `self`, then `inner`".
    pub fn after(self, inner: DegeneracyWord) -> DegeneracyWord {
        let mut mask = inner.0;
        let mut j = 0;
        let mut rest = self.0;
        // positions of the inner domain that are not collapsed map onto
        // consecutive codomain positions; collapse those hit by `self`
        while rest != 0 && j < 32 {
            if inner.0 & (1 << j) == 0 {
                let v = inner.eval(j);
                if v < 32 && self.0 & (1 << v) != 0 {
                    mask |= 1 << j;
                    rest &= !(1 << v);
                }
            }
            j += 1;
        }
        DegeneracyWord(mask)
    }

    /// The same surjection read backwards on an `n`-dimensional domain.
    pub fn reversed(self, n: usize) -> DegeneracyWord {
        let mut mask = 0;
        for j in 0..n {
            if self.0 & (1 << j) != 0 {
                mask |= 1 << (n - 1 - j);
            }
        }
        DegeneracyWord(mask)
    }

    /// For `common ⊆ self`, the word `q` with `q.after(common) == self`.
    pub fn quotient(self, common: DegeneracyWord) -> DegeneracyWord {
        debug_assert_eq!(self.0 & common.0, common.0);
        let mut mask = 0;
        for j in 0..32 {
            if self.0 & (1 << j) != 0 && common.0 & (1 << j) == 0 {
                mask |= 1 << common.eval(j);
            }
        }
        DegeneracyWord(mask)
    }
}
