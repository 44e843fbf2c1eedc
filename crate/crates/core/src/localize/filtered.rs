use alloc::format;
use alloc::vec::Vec;

use super::gz::{gz_left_fractions, GzFractions};
use crate::error::{Error, Result};
use crate::fractions::check_proper_clf;
use crate::marked::MarkedCategory;
use crate::sset::{FinCategory, Morphism};

/// Non-empty, every pair of objects has a cocone and every parallel pair is
/// coequalized by some arrow.
pub fn is_filtered_category(c: &FinCategory) -> bool {
    let n = c.object_count();
    if n == 0 {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            let cocone = (0..n).any(|z| !c.hom(a, z).is_empty() && !c.hom(b, z).is_empty());
            if !cocone {
                return false;
            }
            let hom = c.hom(a, b);
            for &f in &hom {
                for &g in &hom {
                    if f < g && !c.out_of(b).into_iter().any(|h| c.compose(h, f) == c.compose(h, g)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The coslice `x ↓ W`: objects are marked `w : x → x'`, morphisms `u` with
/// `u w = w'`. Morphism `k` of the result is listed in `arrows[k]` as
/// `(w, u, w')`.
pub fn marked_coslice(c: &MarkedCategory, x: usize) -> Result<(FinCategory, Vec<(usize, usize, usize)>)> {
    let cat = c.base();
    let objs = c.marked_out_of(x);
    let mut arrows = Vec::new();
    let mut morphisms = Vec::new();
    for (i, &w) in objs.iter().enumerate() {
        for (j, &w2) in objs.iter().enumerate() {
            for u in cat.hom(cat.cod(w), cat.cod(w2)) {
                if cat.compose(u, w) == Some(w2) {
                    arrows.push((w, u, w2));
                    morphisms.push(Morphism {
                        name: format!("{}:{}->{}", cat.name(u), cat.name(w), cat.name(w2)),
                        dom: i,
                        cod: j,
                    });
                }
            }
        }
    }
    let find = |t: (usize, usize, usize)| arrows.iter().position(|&a| a == t);
    let identities: Vec<usize> = objs
        .iter()
        .map(|&w| find((w, cat.identity(cat.cod(w)), w)).expect("identity"))
        .collect();
    let mut comp = Vec::new();
    for (a, &(w, u, w2)) in arrows.iter().enumerate() {
        for (b, &(v, t, v2)) in arrows.iter().enumerate() {
            if v == w2 {
                let tu = cat.compose(t, u).unwrap();
                comp.push((b, a, find((w, tu, v2)).expect("closed")));
            }
        }
    }
    let names = objs.iter().map(|&w| alloc::string::String::from(cat.name(w))).collect();
    let category = FinCategory::new(names, morphisms, identities, &comp)?;
    Ok((category, arrows))
}

pub fn slice_filtered_check(c: &MarkedCategory, x: usize) -> Result<bool> {
    Ok(is_filtered_category(&marked_coslice(c, x)?.0))
}

/// Finite colimit shapes for the preservation probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColimitDiagram {
    /// `f, g : a ⇉ b`.
    Coequalizer { f: usize, g: usize },
    /// `f : a → b`, `g : a → c`.
    Pushout { f: usize, g: usize },
}

/// Cocone legs for the diagram in `cat`: `q : b → z` (coequalizer) or
/// `(p, q) : b, c → z` (pushout), given as a list of leg tuples.
fn cocones(cat: &FinCategory, d: ColimitDiagram, f: usize, g: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    match d {
        ColimitDiagram::Coequalizer { .. } => {
            for q in cat.out_of(cat.cod(f)) {
                if cat.compose(q, f) == cat.compose(q, g) {
                    out.push((q, q));
                }
            }
        }
        ColimitDiagram::Pushout { .. } => {
            for p in cat.out_of(cat.cod(f)) {
                for q in cat.out_of(cat.cod(g)) {
                    if cat.cod(p) == cat.cod(q) && cat.compose(p, f) == cat.compose(q, g) {
                        out.push((p, q));
                    }
                }
            }
        }
    }
    out
}

/// The first cocone through which every cocone factors uniquely.
fn colimit(cat: &FinCategory, d: ColimitDiagram, f: usize, g: usize) -> Option<(usize, usize)> {
    let all = cocones(cat, d, f, g);
    all.iter().copied().find(|&(p, q)| {
        all.iter().all(|&(p2, q2)| {
            let n = cat
                .hom(cat.cod(p), cat.cod(p2))
                .into_iter()
                .filter(|&h| cat.compose(h, p) == Some(p2) && cat.compose(h, q) == Some(q2))
                .count();
            n == 1
        })
    })
}

fn legs(d: ColimitDiagram) -> (usize, usize) {
    match d {
        ColimitDiagram::Coequalizer { f, g } | ColimitDiagram::Pushout { f, g } => (f, g),
    }
}

/// Whether `C → C W⁻¹` sends the colimit of the diagram to a colimit.
/// Errors if the diagram has no colimit in `C`.
pub fn colimit_preservation_probe(c: &MarkedCategory, d: ColimitDiagram) -> Result<bool> {
    if let Some(w) = check_proper_clf(c).witness() {
        return Err(Error::Precondition(format!("proper calculus of left fractions fails: {w:?}")));
    }
    let cat = c.base();
    let (f, g) = legs(d);
    let ok = match d {
        ColimitDiagram::Coequalizer { .. } => cat.dom(f) == cat.dom(g) && cat.cod(f) == cat.cod(g),
        ColimitDiagram::Pushout { .. } => cat.dom(f) == cat.dom(g),
    };
    if !ok {
        return Err(Error::InvalidData("the diagram is malformed".into()));
    }
    let (p, q) = colimit(cat, d, f, g).ok_or_else(|| Error::Precondition("the diagram has no colimit".into()))?;
    let gz: GzFractions = gz_left_fractions(c)?;
    let l = &gz.category;
    let (lf, lg, lp, lq) = (gz.functor[f], gz.functor[g], gz.functor[p], gz.functor[q]);
    let image_is_colimit = colimit(l, d, lf, lg).is_some_and(|_| {
        let all = cocones(l, d, lf, lg);
        all.iter().all(|&(p2, q2)| {
            l.hom(l.cod(lp), l.cod(p2))
                .into_iter()
                .filter(|&h| l.compose(h, lp) == Some(p2) && l.compose(h, lq) == Some(q2))
                .count()
                == 1
        })
    });
    Ok(image_is_colimit)
}
