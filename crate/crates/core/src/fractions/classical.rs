use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::marked::MarkedCategory;
use crate::Verdict;

/// Why a classical fraction condition fails. Morphism indices refer to the
/// category checked (for right fractions: the same indices in the opposite).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicalWitness {
    /// `g ∘ f` with `f, g ∈ W` is not marked.
    NotClosed { g: usize, f: usize },
    /// The span `(f, w)` has no completing square.
    Span { f: usize, w: usize },
    /// The span `(f, w)` with `f ∈ W` only completes with unmarked `f'`.
    ImproperSpan { f: usize, w: usize },
    /// `f w = g w` but no marked `v` has `v f = v g`.
    Coequalize { f: usize, g: usize, w: usize },
}

/// A completion `(f', w')` of the span `(f, w)`, i.e. `f' w = w' f` with
/// `w' ∈ W`, and `f' ∈ W` as well when `proper` and `f ∈ W`.
pub fn complete_span(c: &MarkedCategory, f: usize, w: usize, proper: bool) -> Option<(usize, usize)> {
    let cat = c.base();
    let need_marked = proper && c.is_marked(f);
    for w2 in c.marked_out_of(cat.cod(f)) {
        for f2 in cat.out_of(cat.cod(w)) {
            if cat.cod(f2) != cat.cod(w2) || (need_marked && !c.is_marked(f2)) {
                continue;
            }
            if cat.compose(f2, w) == cat.compose(w2, f) {
                return Some((f2, w2));
            }
        }
    }
    None
}

/// A marked `v` with `v f = v g`.
pub fn coequalizing(c: &MarkedCategory, f: usize, g: usize) -> Option<usize> {
    let cat = c.base();
    c.marked_out_of(cat.cod(f))
        .into_iter()
        .find(|&v| cat.compose(v, f) == cat.compose(v, g))
}

/// Checks the three conditions in order and returns the first failure.
pub fn check_clf(c: &MarkedCategory, proper: bool) -> Verdict<ClassicalWitness> {
    if let Verdict::Fails((g, f)) = c.is_closed_under_composition() {
        return Verdict::Fails(ClassicalWitness::NotClosed { g, f });
    }
    let cat = c.base();
    for w in c.marked() {
        for f in cat.out_of(cat.dom(w)) {
            if complete_span(c, f, w, false).is_none() {
                return Verdict::Fails(ClassicalWitness::Span { f, w });
            }
            if proper && complete_span(c, f, w, true).is_none() {
                return Verdict::Fails(ClassicalWitness::ImproperSpan { f, w });
            }
        }
    }
    for w in c.marked() {
        let x = cat.cod(w);
        let outs = cat.out_of(x);
        for &f in &outs {
            for &g in &outs {
                if f < g && cat.cod(f) == cat.cod(g) && cat.compose(f, w) == cat.compose(g, w) && coequalizing(c, f, g).is_none() {
                    return Verdict::Fails(ClassicalWitness::Coequalize { f, g, w });
                }
            }
        }
    }
    Verdict::Holds
}

pub fn check_clf_classical(c: &MarkedCategory) -> Verdict<ClassicalWitness> {
    check_clf(c, false)
}

pub fn check_proper_clf(c: &MarkedCategory) -> Verdict<ClassicalWitness> {
    check_clf(c, true)
}

pub fn check_crf_classical(c: &MarkedCategory) -> Verdict<ClassicalWitness> {
    check_clf(&c.opposite(), false)
}

pub fn check_proper_crf(c: &MarkedCategory) -> Verdict<ClassicalWitness> {
    check_clf(&c.opposite(), true)
}

/// Outcome of [`coequalize_many`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coequalized {
    /// A marked `u` with `u fᵢ = u gᵢ` for every pair.
    Found(usize),
    /// No marked arrow coequalizes `u fᵢ` and `u gᵢ` for this pair index.
    Stuck { pair: usize, u: usize },
}

/// A single marked `u` coequalizing every pair, built one pair at a time by
/// composing coequalizers of the pairs not yet equal.
pub fn coequalize_many(c: &MarkedCategory, pairs: &[(usize, usize)]) -> Result<Coequalized> {
    let cat = c.base();
    let Some(&(f0, _)) = pairs.first() else {
        return Err(Error::Precondition("no pairs given".into()));
    };
    let y = cat.cod(f0);
    for (i, &(f, g)) in pairs.iter().enumerate() {
        if cat.cod(f) != y || cat.cod(g) != y || cat.dom(f) != cat.dom(g) {
            return Err(Error::Precondition(alloc::format!("pair {i} is not parallel into a common codomain")));
        }
        let has_w = c
            .marked_into(cat.dom(f))
            .into_iter()
            .any(|w| cat.compose(f, w) == cat.compose(g, w));
        if !has_w {
            return Err(Error::Precondition(alloc::format!("pair {i} is not equalized by a marked arrow")));
        }
    }
    let mut u = cat.identity(y);
    for (i, &(f, g)) in pairs.iter().enumerate() {
        let uf = cat.compose(u, f).unwrap();
        let ug = cat.compose(u, g).unwrap();
        if uf == ug {
            continue;
        }
        match coequalizing(c, uf, ug) {
            Some(v) => u = cat.compose(v, u).unwrap(),
            None => return Ok(Coequalized::Stuck { pair: i, u }),
        }
    }
    Ok(Coequalized::Found(u))
}

/// All marked `u` out of `y` coequalizing every pair; the brute-force
/// counterpart of [`coequalize_many`].
pub fn all_coequalizers(c: &MarkedCategory, y: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let cat = c.base();
    c.marked_out_of(y)
        .into_iter()
        .filter(|&u| pairs.iter().all(|&(f, g)| cat.compose(u, f) == cat.compose(u, g)))
        .collect()
}
