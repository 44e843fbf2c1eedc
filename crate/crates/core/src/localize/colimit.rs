use alloc::vec::Vec;

use super::gz::{Cospan, GzFractions};
use crate::error::{Error, Result};
use crate::fractions::check_clf_classical;
use crate::marked::MarkedCategory;
use crate::util::UnionFind;

/// `colim_{w : y → y'} C(x, y')` over the marked arrows out of `y`.
#[derive(Clone, Debug)]
pub struct ColimitHom {
    /// Elements of the disjoint union: `(w, f)` with `f : x → cod w`.
    pub elements: Vec<(usize, usize)>,
    /// Class of each element.
    pub class: Vec<usize>,
    pub count: usize,
}

impl ColimitHom {
    pub fn class_of(&self, w: usize, f: usize) -> Option<usize> {
        let i = self.elements.binary_search(&(w, f)).ok()?;
        Some(self.class[i])
    }

    /// For each class, the category-of-fractions morphism of a member.
    pub fn to_gz(&self, gz: &GzFractions) -> Vec<usize> {
        let mut out = alloc::vec![usize::MAX; self.count];
        for (i, &(w, f)) in self.elements.iter().enumerate() {
            out[self.class[i]] = gz.class_of(Cospan { f, w }).expect("every cospan has a class");
        }
        out
    }
}

/// The colimit as a quotient: `(w, f) ~ (u w, u f)` for every `u` out of
/// the codomain of `w` with `u w` marked.
pub fn hom_via_colimit(c: &MarkedCategory, x: usize, y: usize) -> Result<ColimitHom> {
    if let Some(w) = check_clf_classical(c).witness() {
        return Err(Error::Precondition(alloc::format!("calculus of left fractions fails: {w:?}")));
    }
    let cat = c.base();
    let mut elements = Vec::new();
    for w in c.marked_out_of(y) {
        for f in cat.hom(x, cat.cod(w)) {
            elements.push((w, f));
        }
    }
    elements.sort();
    let mut uf = UnionFind::new(elements.len());
    for (i, &(w, f)) in elements.iter().enumerate() {
        for u in cat.out_of(cat.cod(w)) {
            let uw = cat.compose(u, w).unwrap();
            if !c.is_marked(uw) {
                continue;
            }
            let uf_ = cat.compose(u, f).unwrap();
            let j = elements.binary_search(&(uw, uf_)).expect("element present");
            uf.union(i, j);
        }
    }
    let (class, count) = uf.labels();
    Ok(ColimitHom { elements, class, count })
}

/// Whether the colimit classes biject with the fraction classes from `x` to
/// `y`, compatibly with `f ↦ (f, id)`.
pub fn colimit_matches_gz(c: &MarkedCategory, gz: &GzFractions, x: usize, y: usize) -> Result<bool> {
    let col = hom_via_colimit(c, x, y)?;
    let map = col.to_gz(gz);
    let mut hit = map.clone();
    hit.sort();
    hit.dedup();
    if hit.len() != col.count || hit != gz.category.hom(x, y) {
        return Ok(false);
    }
    // consistency on every member of a class
    for (i, &(w, f)) in col.elements.iter().enumerate() {
        if gz.class_of(Cospan { f, w }) != Some(map[col.class[i]]) {
            return Ok(false);
        }
    }
    let cat = c.base();
    let idy = cat.identity(y);
    Ok(cat.hom(x, y).into_iter().all(|f| col.class_of(idy, f).map(|k| map[k]) == Some(gz.functor[f])))
}
