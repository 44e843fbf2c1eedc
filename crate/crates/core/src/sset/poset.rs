use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite poset with its order relation stored as a Boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    le: Vec<bool>,
}

impl Poset {
    pub fn from_matrix(names: Vec<String>, le: Vec<Vec<bool>>) -> Result<Poset> {
        let n = names.len();
        if le.len() != n || le.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidData("order matrix has the wrong shape".into()));
        }
        let p = Poset {
            names,
            le: le.into_iter().flatten().collect(),
        };
        p.check()?;
        Ok(p)
    }

    pub fn from_fn(names: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let n = names.len();
        let mut m = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                m.push(le(a, b));
            }
        }
        let p = Poset { names, le: m };
        p.check()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of the given pairs `a ≤ b`.
    pub fn from_relations(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        let mut m = alloc::vec![false; n * n];
        for a in 0..n {
            m[a * n + a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::OutOfRange(format!("relation ({a}, {b})")));
            }
            m[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if m[a * n + k] {
                    for b in 0..n {
                        if m[k * n + b] {
                            m[a * n + b] = true;
                        }
                    }
                }
            }
        }
        let p = Poset { names, le: m };
        p.check()?;
        Ok(p)
    }

    /// The linear order `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> Poset {
        Poset::from_fn((0..=n).map(|i| i.to_string()).collect(), |a, b| a <= b).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn opposite(&self) -> Poset {
        Poset::from_fn(self.names.clone(), |a, b| self.le(b, a)).unwrap()
    }

    pub fn check(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.le(a, a) {
                return Err(Error::InvalidData(format!("{} ≤ itself fails", self.names[a])));
            }
            for b in 0..n {
                if a != b && self.le(a, b) && self.le(b, a) {
                    return Err(Error::InvalidData(format!(
                        "antisymmetry fails for {} and {}",
                        self.names[a], self.names[b]
                    )));
                }
                for c in 0..n {
                    if self.le(a, b) && self.le(b, c) && !self.le(a, c) {
                        return Err(Error::InvalidData(format!(
                            "transitivity fails at {} ≤ {} ≤ {}",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        let mut sorted = self.names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::InvalidData("duplicate element names".into()));
        }
        Ok(())
    }

    /// Whether `f` (given on indices) is order preserving from `self` to `other`.
    pub fn is_monotone(&self, other: &Poset, f: &[usize]) -> bool {
        f.len() == self.len()
            && (0..self.len()).all(|a| {
                (0..self.len()).all(|b| !self.le(a, b) || other.le(f[a], f[b]))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_builds_a_poset() {
        let names = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let p = Poset::from_relations(names, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2));
        assert!(!p.le(2, 0));
    }

    #[test]
    fn cycles_are_rejected() {
        let names = ["a", "b"].iter().map(|s| s.to_string()).collect();
        assert!(Poset::from_relations(names, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn non_transitive_matrix_is_rejected() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let m = alloc::vec![
            alloc::vec![true, true, false],
            alloc::vec![false, true, true],
            alloc::vec![false, false, true],
        ];
        assert!(Poset::from_matrix(names, m).is_err());
    }
}
