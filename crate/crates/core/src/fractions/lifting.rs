use alloc::vec::Vec;

use super::shape::{shape_pair, ShapePair, Side};
use crate::error::{Error, Result};
use crate::marked::{enumerate_marked_maps, is_weakly_closed, marked_filter, HornPair, MarkedCategory, MarkedSSet};
use crate::sset::{extend_along, is_quasicategory_upto, SMap};
use crate::Verdict;

/// Every marked map `J → X` extends along `J ⊆ I`; the witness is the first
/// map (in enumeration order) that does not.
pub fn has_rlp(x: &MarkedSSet, pair: &ShapePair) -> Result<Verdict<SMap>> {
    let top = pair.i.n;
    x.base().ensure_known(top)?;
    let filter = marked_filter(pair.i.marked(), x);
    for f in enumerate_marked_maps(pair.j.marked(), x)? {
        let ext = extend_along(&pair.inclusion, pair.j.sset(), pair.i.sset(), &f, x.base(), Some(&filter))?;
        if ext.is_none() {
            return Ok(Verdict::Fails(f));
        }
    }
    Ok(Verdict::Holds)
}

/// Shapes `(n, k)` in the lifting condition for `n ≤ 3`.
pub fn infty_shapes(side: Side) -> Vec<(usize, usize)> {
    match side {
        Side::L => alloc::vec![(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)],
        Side::R => alloc::vec![(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)],
    }
}

/// Shapes that decide the condition on nerves of categories.
pub fn deciding_shapes(side: Side) -> Vec<(usize, usize)> {
    match side {
        Side::L => alloc::vec![(2, 1), (2, 2), (3, 1)],
        Side::R => alloc::vec![(2, 1), (2, 0), (3, 2)],
    }
}

#[derive(Clone, Debug)]
pub struct ShapeOutcome {
    pub n: usize,
    pub k: usize,
    pub verdict: Verdict<SMap>,
}

/// Outcome of an ∞-categorical fraction check.
#[derive(Clone, Debug)]
pub struct InftyReport {
    pub side: Side,
    pub weakly_closed: Verdict<HornPair>,
    pub shapes: Vec<ShapeOutcome>,
    /// True unless the shapes checked are known to decide the condition.
    pub partial: bool,
}

impl InftyReport {
    pub fn holds(&self) -> bool {
        self.weakly_closed.holds() && self.shapes.iter().all(|s| s.verdict.holds())
    }
}

fn run_shapes(x: &MarkedSSet, side: Side, shapes: &[(usize, usize)]) -> Result<Vec<ShapeOutcome>> {
    let mut out = Vec::new();
    for &(n, k) in shapes {
        let pair = shape_pair(n, k, side)?;
        out.push(ShapeOutcome {
            n,
            k,
            verdict: has_rlp(x, &pair)?,
        });
    }
    Ok(out)
}

/// Weak closure plus lifting against the given shapes (all `n ≤ 3` shapes
/// when `shapes` is `None`). The verdict is partial: a truncation cannot
/// certify the condition in all dimensions.
pub fn check_infty(x: &MarkedSSet, side: Side, shapes: Option<&[(usize, usize)]>) -> Result<InftyReport> {
    x.base().ensure_known(3)?;
    if let Some(w) = is_quasicategory_upto(x.base(), 3)?.witness() {
        return Err(Error::NotQuasicategory(alloc::format!(
            "inner horn ({}, {}) has no filler",
            w.n,
            w.k
        )));
    }
    let all = infty_shapes(side);
    let shapes = shapes.unwrap_or(&all);
    Ok(InftyReport {
        side,
        weakly_closed: is_weakly_closed(x)?,
        shapes: run_shapes(x, side, shapes)?,
        partial: true,
    })
}

pub fn check_clf_infty(x: &MarkedSSet) -> Result<InftyReport> {
    check_infty(x, Side::L, None)
}

pub fn check_crf_infty(x: &MarkedSSet) -> Result<InftyReport> {
    check_infty(x, Side::R, None)
}

/// The ∞-categorical check on the marked nerve of a category. Nerves are
/// quasicategories, and the verdict is complete once the deciding shapes
/// are among those checked.
pub fn check_infty_nerve(c: &MarkedCategory, side: Side, shapes: Option<&[(usize, usize)]>) -> Result<InftyReport> {
    let x = c.nerve(3).marked;
    let all = infty_shapes(side);
    let shapes = shapes.unwrap_or(&all);
    let partial = !deciding_shapes(side).iter().all(|s| shapes.contains(s));
    Ok(InftyReport {
        side,
        weakly_closed: is_weakly_closed(&x)?,
        shapes: run_shapes(&x, side, shapes)?,
        partial,
    })
}
