//! Calculus-of-fractions machinery for finite categories and finite
//! simplicial sets, together with discrete homotopy theory of graphs.

#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod error;
pub mod dht;
pub mod exfunctor;
pub mod fractions;
pub mod localize;
pub mod marked;
pub mod sset;
pub mod util;

pub use error::{Error, Result};

/// Outcome of a check: either it holds, or it fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}
