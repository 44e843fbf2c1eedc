use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::marked::MarkedSSet;
use crate::sset::{Cell, PosetNerve, Poset, SMap, SSet, Simplex};

/// Which calculus a shape belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

/// `I` shapes contain the top subset `[n]`; `J` shapes omit it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    I,
    J,
}

pub fn subset_name(mask: u32) -> String {
    let elems: Vec<String> = (0..32).filter(|i| mask & (1 << i) != 0).map(|i| format!("{i}")).collect();
    format!("{{{}}}", elems.join(","))
}

fn max_of(mask: u32) -> u32 {
    31 - mask.leading_zeros()
}

fn min_of(mask: u32) -> u32 {
    mask.trailing_zeros()
}

/// The full mask of `[n]`.
pub fn full(n: usize) -> u32 {
    (1u32 << (n + 1)) - 1
}

/// A marked simplicial subset of the nerve of a family of subsets. On side
/// `L` the order is inclusion and an edge is marked when the maxima agree; on
/// side `R` the order is reverse inclusion and the minima must agree.
#[derive(Clone, Debug)]
pub struct SubsetNerve {
    pub nerve: PosetNerve,
    pub sets: Vec<u32>,
    pub marked: MarkedSSet,
    pub side: Side,
}

impl SubsetNerve {
    /// Nerve of the non-empty subsets in `sets` restricted to the chains
    /// accepted by `keep` (chains are listed in increasing order for `side`).
    pub fn new(mut sets: Vec<u32>, side: Side, dim_bound: usize, keep: impl Fn(&[u32]) -> bool) -> Result<SubsetNerve> {
        sets.sort_by_key(|&m| (m.count_ones(), m));
        sets.dedup();
        if sets.contains(&0) {
            return Err(Error::InvalidData("subset families exclude the empty set".into()));
        }
        let names = sets.iter().map(|&m| subset_name(m)).collect();
        let p = Poset::from_fn(names, |a, b| match side {
            Side::L => sets[a] & !sets[b] == 0,
            Side::R => sets[b] & !sets[a] == 0,
        })?;
        let nerve = PosetNerve::restricted(&p, dim_bound, |ch| {
            let masks: Vec<u32> = ch.iter().map(|&a| sets[a]).collect();
            keep(&masks)
        })?;
        let marked = MarkedSSet::from_fn(nerve.sset.clone(), |c| {
            let ch = &nerve.chains[1][c.index];
            let (a, b) = (sets[ch[0]], sets[ch[1]]);
            match side {
                Side::L => max_of(a) == max_of(b),
                Side::R => min_of(a) == min_of(b),
            }
        });
        Ok(SubsetNerve { nerve, sets, marked, side })
    }

    pub fn sset(&self) -> &SSet {
        &self.nerve.sset
    }

    pub fn element(&self, mask: u32) -> Option<usize> {
        self.sets.iter().position(|&m| m == mask)
    }

    pub fn vertex(&self, mask: u32) -> Option<Cell> {
        self.nerve.cell_of_chain(&[self.element(mask)?])
    }

    /// The simplex spanned by a weakly increasing chain of subsets.
    pub fn simplex_of(&self, masks: &[u32]) -> Option<Simplex> {
        let elems: Option<Vec<usize>> = masks.iter().map(|&m| self.element(m)).collect();
        self.nerve.simplex(&elems?)
    }

    /// The subsets along a simplex.
    pub fn chain_sets(&self, s: Simplex) -> Vec<u32> {
        self.nerve.chain(s).into_iter().map(|a| self.sets[a]).collect()
    }

    /// The map to `target` induced by a map of subsets.
    pub fn map_to(&self, target: &SubsetNerve, f: impl Fn(u32) -> u32) -> Result<SMap> {
        self.nerve.map_by(&target.nerve, |a| {
            target.element(f(self.sets[a])).unwrap_or(usize::MAX)
        })
    }

    /// The inclusion of a sub-family with the same side.
    pub fn inclusion_into(&self, target: &SubsetNerve) -> Result<SMap> {
        self.map_to(target, |m| m)
    }
}

pub(crate) fn subsets_containing(n: usize, k: usize) -> Vec<u32> {
    (1..=full(n)).filter(|m| m & (1 << k) != 0).collect()
}

/// A fraction shape `L-Iⁿ_k`, `L-Jⁿ_k`, `R-Iⁿ_k` or `R-Jⁿ_k`.
#[derive(Clone, Debug)]
pub struct FractionShape {
    pub n: usize,
    pub k: usize,
    pub side: Side,
    pub variant: Variant,
    pub nerve: SubsetNerve,
}

impl FractionShape {
    pub fn marked(&self) -> &MarkedSSet {
        &self.nerve.marked
    }

    pub fn sset(&self) -> &SSet {
        self.nerve.sset()
    }

    pub fn label(&self) -> String {
        let side = match self.side {
            Side::L => "L",
            Side::R => "R",
        };
        let var = match self.variant {
            Variant::I => "I",
            Variant::J => "J",
        };
        format!("{side}-{var}^{}_{}", self.n, self.k)
    }
}

/// Largest `n` for which shapes are built.
pub const SHAPE_MAX_N: usize = 5;

pub fn shape(n: usize, k: usize, side: Side, variant: Variant) -> Result<FractionShape> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    if n > SHAPE_MAX_N {
        return Err(Error::SizeGuard(format!("shapes are limited to n <= {SHAPE_MAX_N}")));
    }
    let mut sets = subsets_containing(n, k);
    if variant == Variant::J {
        sets.retain(|&m| m != full(n));
    }
    let nerve = SubsetNerve::new(sets, side, n, |_| true)?;
    Ok(FractionShape { n, k, side, variant, nerve })
}

/// The inclusion `J ⊆ I` for the given parameters.
#[derive(Clone, Debug)]
pub struct ShapePair {
    pub j: FractionShape,
    pub i: FractionShape,
    pub inclusion: SMap,
}

pub fn shape_pair(n: usize, k: usize, side: Side) -> Result<ShapePair> {
    let j = shape(n, k, side, Variant::J)?;
    let i = shape(n, k, side, Variant::I)?;
    let inclusion = j.nerve.inclusion_into(&i.nerve)?;
    Ok(ShapePair { j, i, inclusion })
}

/// `F(A) = {n - a : a ∈ A}`.
pub fn flip_set(n: usize, mask: u32) -> u32 {
    (0..=n).filter(|&a| mask & (1 << a) != 0).fold(0, |acc, a| acc | (1 << (n - a)))
}

/// The isomorphism `(L-?ⁿ_k)^op → R-?ⁿ_{n-k}` sending a subset to its image
/// under `i ↦ n - i`.
#[derive(Clone, Debug)]
pub struct FlipIso {
    /// The opposite of the `L` shape.
    pub source: MarkedSSet,
    pub target: FractionShape,
    pub map: SMap,
}

pub fn flip_iso(n: usize, k: usize, variant: Variant) -> Result<FlipIso> {
    let l = shape(n, k, Side::L, variant)?;
    let r = shape(n, n - k, Side::R, variant)?;
    let source = l.marked().opposite();
    let src = source.base();
    let images = (0..=src.dim_bound())
        .map(|d| {
            src.cells(d)
                .map(|c| {
                    // the opposite cell lists the L-chain backwards
                    let mut ch = l.nerve.chain_sets(Simplex::from(c));
                    ch.reverse();
                    let flipped: Vec<u32> = ch.iter().map(|&m| flip_set(n, m)).collect();
                    r.nerve.simplex_of(&flipped).expect("flip of a chain is a chain")
                })
                .collect()
        })
        .collect();
    let map = SMap::new(images);
    map.validate(src, r.sset())?;
    Ok(FlipIso { source, target: r, map })
}
