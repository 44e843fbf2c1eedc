use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::shape::{full, shape_pair, SubsetNerve, Side};
use crate::error::{Error, Result};
use crate::marked::MarkedSSet;
use crate::sset::SMap;
use crate::Verdict;

/// The three retract diagrams relating the lifting shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RetractKind {
    /// `L-Jⁿ_k ⊆ L-Iⁿ_k` as a retract of `Sd₊Λⁿ_k ⊆ Sd₊Δⁿ`.
    JInSdHorn,
    /// `Kⁿ_k ⊆ Sd₊Δⁿ` as a retract, collapsing `[n] - {k}` onto `[n]`.
    KnkInSd,
    /// `L-Jⁿₙ ⊆ L-Iⁿₙ` as a retract of `L-J^{n+1}_n ⊆ L-I^{n+1}_n`.
    KEqNRedundant,
}

/// A marked inclusion `small → big`.
#[derive(Clone, Debug)]
pub struct Inclusion {
    pub small: MarkedSSet,
    pub big: MarkedSSet,
    pub map: SMap,
}

/// `a ⊆ b` exhibited as a retract of `c ⊆ d`: `s` maps `a → c` and `b → d`,
/// `r` maps `c → a` and `d → b`.
#[derive(Clone, Debug)]
pub struct RetractSquare {
    pub inner: Inclusion,
    pub outer: Inclusion,
    pub s_small: SMap,
    pub s_big: SMap,
    pub r_small: SMap,
    pub r_big: SMap,
}

fn check_marked(name: &str, f: &SMap, a: &MarkedSSet, b: &MarkedSSet) -> Result<Option<String>> {
    f.validate(a.base(), b.base())?;
    Ok((!a.is_marked_map(f, b)).then(|| format!("{name} is not a marked map")))
}

/// Verifies a retraction `r ∘ s = id` of marked simplicial sets.
pub fn verify_retraction(s: &SMap, r: &SMap, a: &MarkedSSet, b: &MarkedSSet) -> Result<Verdict<String>> {
    for (name, f, x, y) in [("s", s, a, b), ("r", r, b, a)] {
        if let Some(w) = check_marked(name, f, x, y)? {
            return Ok(Verdict::Fails(w));
        }
    }
    if r.compose(s) != SMap::identity(a.base()) {
        return Ok(Verdict::Fails("r s is not the identity".into()));
    }
    Ok(Verdict::Holds)
}

/// Verifies that every map is marked, both retractions hold and both squares
/// commute.
pub fn verify_retract_square(sq: &RetractSquare) -> Result<Verdict<String>> {
    let (i, o) = (&sq.inner, &sq.outer);
    for (name, inc) in [("inner inclusion", i), ("outer inclusion", o)] {
        if let Some(w) = check_marked(name, &inc.map, &inc.small, &inc.big)? {
            return Ok(Verdict::Fails(w));
        }
        if !inc.map.is_injective() {
            return Ok(Verdict::Fails(format!("{name} is not injective")));
        }
    }
    for (what, v) in [
        ("small", verify_retraction(&sq.s_small, &sq.r_small, &i.small, &o.small)?),
        ("big", verify_retraction(&sq.s_big, &sq.r_big, &i.big, &o.big)?),
    ] {
        if let Verdict::Fails(w) = v {
            return Ok(Verdict::Fails(format!("{what}: {w}")));
        }
    }
    if sq.s_big.compose(&i.map) != o.map.compose(&sq.s_small) {
        return Ok(Verdict::Fails("the section square does not commute".into()));
    }
    if sq.r_big.compose(&o.map) != i.map.compose(&sq.r_small) {
        return Ok(Verdict::Fails("the retraction square does not commute".into()));
    }
    Ok(Verdict::Holds)
}

fn inclusion(small: &SubsetNerve, big: &SubsetNerve) -> Result<Inclusion> {
    Ok(Inclusion {
        map: small.inclusion_into(big)?,
        small: small.marked.clone(),
        big: big.marked.clone(),
    })
}

fn all_subsets(n: usize) -> Vec<u32> {
    (1..=full(n)).collect()
}

/// `Sd₊Δⁿ` and `Sd₊Λⁿ_k`.
pub fn sd_horn_pair(n: usize, k: usize) -> Result<(SubsetNerve, SubsetNerve)> {
    let (top, face) = (full(n), full(n) & !(1 << k));
    let big = SubsetNerve::new(all_subsets(n), Side::L, n, |_| true)?;
    let sets = all_subsets(n).into_iter().filter(|&m| m != top && m != face).collect();
    let small = SubsetNerve::new(sets, Side::L, n, |_| true)?;
    Ok((small, big))
}

fn guard(kind: RetractKind, n: usize, k: usize) -> Result<()> {
    let ok = match kind {
        RetractKind::JInSdHorn => n >= 1 && k <= n,
        RetractKind::KnkInSd => n >= 2 && k < n,
        RetractKind::KEqNRedundant => n >= 1 && k == n,
    };
    if !ok {
        return Err(Error::OutOfRange(format!("({n}, {k}) is outside the range of {kind:?}")));
    }
    if n > 3 {
        return Err(Error::SizeGuard("retract checks are limited to n <= 3".into()));
    }
    Ok(())
}

/// Builds the diagram for `kind` at `(n, k)` and verifies it.
pub fn retract_check(kind: RetractKind, n: usize, k: usize) -> Result<Verdict<String>> {
    guard(kind, n, k)?;
    let bit = 1u32 << k;
    match kind {
        RetractKind::JInSdHorn => {
            let pair = shape_pair(n, k, Side::L)?;
            let (horn, sd) = sd_horn_pair(n, k)?;
            let (j, i) = (&pair.j.nerve, &pair.i.nerve);
            let sq = RetractSquare {
                inner: Inclusion {
                    small: j.marked.clone(),
                    big: i.marked.clone(),
                    map: pair.inclusion.clone(),
                },
                outer: inclusion(&horn, &sd)?,
                s_small: j.inclusion_into(&horn)?,
                s_big: i.inclusion_into(&sd)?,
                r_small: horn.map_to(j, |m| m | bit)?,
                r_big: sd.map_to(i, |m| m | bit)?,
            };
            verify_retract_square(&sq)
        }
        RetractKind::KnkInSd => {
            let (top, face) = (full(n), full(n) & !bit);
            let sd = SubsetNerve::new(all_subsets(n), Side::L, n, |_| true)?;
            let sets = all_subsets(n).into_iter().filter(|&m| m != face).collect();
            let knk = SubsetNerve::new(sets, Side::L, n, |_| true)?;
            let s = knk.inclusion_into(&sd)?;
            let r = sd.map_to(&knk, |m| if m == face { top } else { m })?;
            verify_retraction(&s, &r, &knk.marked, &sd.marked)
        }
        RetractKind::KEqNRedundant => {
            let low = shape_pair(n, n, Side::L)?;
            let high = shape_pair(n + 1, n, Side::L)?;
            let up = 1u32 << (n + 1);
            let i = |m: u32| m | up;
            let r = |m: u32| if m & up != 0 { (m & !up) | (1 << n) } else { 1 << n };
            let sq = RetractSquare {
                inner: Inclusion {
                    small: low.j.marked().clone(),
                    big: low.i.marked().clone(),
                    map: low.inclusion.clone(),
                },
                outer: Inclusion {
                    small: high.j.marked().clone(),
                    big: high.i.marked().clone(),
                    map: high.inclusion.clone(),
                },
                s_small: low.j.nerve.map_to(&high.j.nerve, i)?,
                s_big: low.i.nerve.map_to(&high.i.nerve, i)?,
                r_small: high.j.nerve.map_to(&low.j.nerve, r)?,
                r_big: high.i.nerve.map_to(&low.i.nerve, r)?,
            };
            verify_retract_square(&sq)
        }
    }
}

/// Every `(kind, n, k)` with `n ≤ 3` in range.
pub fn all_retract_cases() -> Vec<(RetractKind, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for k in 0..=n {
            out.push((RetractKind::JInSdHorn, n, k));
            if n >= 2 && k < n {
                out.push((RetractKind::KnkInSd, n, k));
            }
        }
        out.push((RetractKind::KEqNRedundant, n, n));
    }
    out
}
