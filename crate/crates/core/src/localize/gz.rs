use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fractions::{check_clf_classical, complete_span};
use crate::marked::MarkedCategory;
use crate::sset::{FinCategory, Morphism};
use crate::util::UnionFind;

/// A cospan `x → y' ← y` given by `f : x → y'` and a marked `w : y → y'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cospan {
    pub f: usize,
    pub w: usize,
}

/// Which completing square to pick when composing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionOrder {
    First,
    Last,
}

/// The category of left fractions `C W⁻¹` with its canonical functor.
#[derive(Clone, Debug)]
pub struct GzFractions {
    pub category: FinCategory,
    /// Image of each morphism of `C`.
    pub functor: Vec<usize>,
    /// Cospans in each class, sorted; the first is the representative.
    pub classes: Vec<Vec<Cospan>>,
    class_of: BTreeMap<Cospan, usize>,
}

impl GzFractions {
    pub fn class_of(&self, c: Cospan) -> Option<usize> {
        self.class_of.get(&c).copied()
    }

    pub fn representative(&self, m: usize) -> Cospan {
        self.classes[m][0]
    }

    /// Number of classes from `x` to `y`.
    pub fn hom_size(&self, x: usize, y: usize) -> usize {
        self.category.hom(x, y).len()
    }
}

/// All cospans from `x` to `y`.
pub fn cospans(c: &MarkedCategory, x: usize, y: usize) -> Vec<Cospan> {
    let cat = c.base();
    let mut out = Vec::new();
    for w in c.marked_out_of(y) {
        for f in cat.hom(x, cat.cod(w)) {
            out.push(Cospan { f, w });
        }
    }
    out.sort();
    out
}

/// `(f, w) ~ (g, v)` through a single diagram: some `a`, `b` with `a f = b g`,
/// `a w = b v` and `a w` marked.
pub fn bridged(c: &MarkedCategory, p: Cospan, q: Cospan) -> bool {
    let cat = c.base();
    for a in cat.out_of(cat.cod(p.f)) {
        let aw = cat.compose(a, p.w).unwrap();
        if !c.is_marked(aw) {
            continue;
        }
        let af = cat.compose(a, p.f).unwrap();
        for b in cat.hom(cat.cod(q.f), cat.cod(a)) {
            if cat.compose(b, q.f) == Some(af) && cat.compose(b, q.w) == Some(aw) {
                return true;
            }
        }
    }
    false
}

fn complete(c: &MarkedCategory, g: usize, w: usize, order: CompletionOrder) -> Option<(usize, usize)> {
    match order {
        CompletionOrder::First => complete_span(c, g, w, false),
        CompletionOrder::Last => {
            let cat = c.base();
            let mut found = None;
            for w2 in c.marked_out_of(cat.cod(g)) {
                for f2 in cat.out_of(cat.cod(w)) {
                    if cat.cod(f2) == cat.cod(w2) && cat.compose(f2, w) == cat.compose(w2, g) {
                        found = Some((f2, w2));
                    }
                }
            }
            found
        }
    }
}

/// `(g, v) ∘ (f, w)`: complete the span `(g, w)` to `(g', w')`, giving
/// `(g' f, w' v)`.
pub fn compose_cospans(c: &MarkedCategory, second: Cospan, first: Cospan, order: CompletionOrder) -> Option<Cospan> {
    let cat = c.base();
    let (g2, w2) = complete(c, second.f, first.w, order)?;
    Some(Cospan {
        f: cat.compose(g2, first.f)?,
        w: cat.compose(w2, second.w)?,
    })
}

fn cospan_name(cat: &FinCategory, p: Cospan) -> String {
    if cat.is_identity(p.w) {
        String::from(cat.name(p.f))
    } else {
        format!("{}/{}", cat.name(p.f), cat.name(p.w))
    }
}

pub fn gz_left_fractions(c: &MarkedCategory) -> Result<GzFractions> {
    gz_left_with(c, CompletionOrder::First)
}

/// The category of fractions built with the given completion order.
pub fn gz_left_with(c: &MarkedCategory, order: CompletionOrder) -> Result<GzFractions> {
    if let Some(w) = check_clf_classical(c).witness() {
        return Err(Error::Precondition(format!("calculus of left fractions fails: {w:?}")));
    }
    let cat = c.base();
    let n = cat.object_count();
    let mut classes: Vec<Vec<Cospan>> = Vec::new();
    let mut class_of = BTreeMap::new();
    let mut morphisms = Vec::new();
    let mut identities = alloc::vec![0; n];
    for x in 0..n {
        for y in 0..n {
            let all = cospans(c, x, y);
            let mut uf = UnionFind::new(all.len());
            for i in 0..all.len() {
                for j in 0..all.len() {
                    if i != j && !uf.same(i, j) && bridged(c, all[i], all[j]) {
                        uf.union(i, j);
                    }
                }
            }
            let (labels, count) = uf.labels();
            let base = classes.len();
            let mut groups: Vec<Vec<Cospan>> = alloc::vec![Vec::new(); count];
            for (i, &l) in labels.iter().enumerate() {
                groups[l].push(all[i]);
            }
            groups.sort();
            for (k, g) in groups.into_iter().enumerate() {
                for &p in &g {
                    class_of.insert(p, base + k);
                }
                if x == y && g.contains(&Cospan { f: cat.identity(x), w: cat.identity(x) }) {
                    identities[x] = base + k;
                }
                morphisms.push(Morphism {
                    name: cospan_name(cat, g[0]),
                    dom: x,
                    cod: y,
                });
                classes.push(g);
            }
        }
    }
    let mut comp = Vec::new();
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            if morphisms[a].cod != morphisms[b].dom {
                continue;
            }
            let r = compose_cospans(c, cb[0], ca[0], order)
                .ok_or_else(|| Error::InvalidData("a span has no completion".into()))?;
            comp.push((b, a, class_of[&r]));
        }
    }
    let category = FinCategory::new(cat.objects().to_vec(), morphisms, identities.clone(), &comp)?;
    let functor = (0..cat.morphism_count())
        .map(|f| class_of[&Cospan { f, w: cat.identity(cat.cod(f)) }])
        .collect();
    Ok(GzFractions {
        category,
        functor,
        classes,
        class_of,
    })
}

/// Composition does not depend on representatives: every pair of members
/// composes into the class of the representatives' composite.
pub fn composition_is_well_defined(c: &MarkedCategory, gz: &GzFractions) -> bool {
    let cat = &gz.category;
    for a in 0..cat.morphism_count() {
        for b in cat.out_of(cat.cod(a)) {
            let Some(target) = cat.compose(b, a) else {
                return false;
            };
            for &p in &gz.classes[a] {
                for &q in &gz.classes[b] {
                    for order in [CompletionOrder::First, CompletionOrder::Last] {
                        match compose_cospans(c, q, p, order) {
                            Some(r) if gz.class_of(r) == Some(target) => {}
                            _ => return false,
                        }
                    }
                }
            }
        }
    }
    true
}

/// Every marked morphism becomes invertible.
pub fn inverts_marked(c: &MarkedCategory, gz: &GzFractions) -> bool {
    c.marked().all(|w| gz.category.is_iso(gz.functor[w]))
}

/// Right fractions `W⁻¹C` as the opposite of left fractions on `C^op`.
pub fn gz_right_fractions(c: &MarkedCategory) -> Result<GzFractions> {
    let op = gz_left_fractions(&c.opposite())?;
    Ok(GzFractions {
        category: op.category.opposite(),
        ..op
    })
}
