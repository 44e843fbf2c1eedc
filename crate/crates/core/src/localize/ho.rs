use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sset::{is_quasicategory_upto, FinCategory, Morphism, SSet, Simplex};
use crate::util::UnionFind;

/// The homotopy category of a quasicategory, with the class of every edge.
#[derive(Clone, Debug)]
pub struct HoCategory {
    pub category: FinCategory,
    /// Every 1-simplex (degenerate ones included), sorted.
    pub edges: Vec<Simplex>,
    /// Morphism of `category` represented by `edges[i]`.
    pub class_of: Vec<usize>,
}

impl HoCategory {
    pub fn morphism_of(&self, e: Simplex) -> usize {
        let i = self.edges.binary_search(&e).expect("not an edge of the quasicategory");
        self.class_of[i]
    }

    /// Objects are the 0-cells, in cell order.
    pub fn object_of(&self, v: crate::sset::Cell) -> usize {
        v.index
    }
}

/// `f ≃ g` iff some 2-simplex has boundary `(id, g, f)`. Raw relation, no closure.
pub fn homotopic_raw(x: &SSet, f: Simplex, g: Simplex) -> Result<bool> {
    for s in x.simplices(2)? {
        if x.face(s, 2) == f && x.face(s, 1) == g && !x.face(s, 0).word.is_identity() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Checks on all edges that the raw homotopy relation is already an
/// equivalence relation.
pub fn homotopy_is_equivalence(x: &SSet) -> Result<bool> {
    let edges = x.simplices(1)?;
    let mut rel = BTreeMap::new();
    for s in x.simplices(2)? {
        if !x.face(s, 0).word.is_identity() {
            rel.insert((x.face(s, 2), x.face(s, 1)), ());
        }
    }
    let r = |a: Simplex, b: Simplex| rel.contains_key(&(a, b));
    for &f in &edges {
        if !r(f, f) {
            return Ok(false);
        }
    }
    for (&(a, b), _) in &rel {
        if !r(b, a) {
            return Ok(false);
        }
        for &c in &edges {
            if r(b, c) && !r(a, c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The homotopy category of a simplicial set that is a quasicategory up to
/// dimension 3 (or exhaustively 2-dimensional with fillers).
pub fn ho_of_qcat(x: &SSet) -> Result<HoCategory> {
    x.ensure_known(2)?;
    let bound = if x.knows(3) { 3 } else { 2 };
    if let Some(w) = is_quasicategory_upto(x, bound)?.witness() {
        return Err(Error::NotQuasicategory(format!(
            "inner horn ({}, {}) has no filler",
            w.n, w.k
        )));
    }
    build(x)
}

/// Homotopy category from the 2-skeleton, assuming inner 2-horns fill.
pub(crate) fn build(x: &SSet) -> Result<HoCategory> {
    let edges = x.simplices(1)?;
    let idx = |e: Simplex| edges.binary_search(&e).unwrap();
    let tris = x.simplices(2)?;
    let mut uf = UnionFind::new(edges.len());
    for &s in &tris {
        if !x.face(s, 0).word.is_identity() {
            uf.union(idx(x.face(s, 2)), idx(x.face(s, 1)));
        }
    }
    let (labels, count) = uf.labels();
    let mut rep = alloc::vec![usize::MAX; count];
    for (i, &l) in labels.iter().enumerate() {
        if rep[l] == usize::MAX {
            rep[l] = i;
        }
    }
    let morphisms: Vec<Morphism> = rep
        .iter()
        .map(|&i| {
            let e = edges[i];
            Morphism {
                name: x.simplex_name(e),
                dom: x.vertex(e, 0).index,
                cod: x.vertex(e, 1).index,
            }
        })
        .collect();
    let identities: Vec<usize> = x
        .cells(0)
        .map(|v| labels[idx(Simplex::from(v).degenerate(0))])
        .collect();
    let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &s in &tris {
        let g = labels[idx(x.face(s, 0))];
        let f = labels[idx(x.face(s, 2))];
        let h = labels[idx(x.face(s, 1))];
        if let Some(prev) = table.insert((g, f), h) {
            if prev != h {
                return Err(Error::NotQuasicategory(format!(
                    "composite of {} and {} is not well defined",
                    morphisms[g].name, morphisms[f].name
                )));
            }
        }
    }
    for g in 0..count {
        for f in 0..count {
            if morphisms[f].cod == morphisms[g].dom && !table.contains_key(&(g, f)) {
                return Err(Error::NotQuasicategory(format!(
                    "{} and {} have no composite",
                    morphisms[g].name, morphisms[f].name
                )));
            }
        }
    }
    let comp: Vec<(usize, usize, usize)> = table.into_iter().map(|((g, f), h)| (g, f, h)).collect();
    let objects = x.cells(0).map(|v| x.name(v).to_string()).collect();
    let category = FinCategory::new(objects, morphisms, identities, &comp)?;
    Ok(HoCategory {
        category,
        edges,
        class_of: labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{
        find_isomorphism, horn, nerve_category, standard_simplex, CategoryNerve, Poset,
    };

    #[test]
    fn simplex_gives_its_poset() {
        let ho = ho_of_qcat(&standard_simplex(2)).unwrap();
        let p = FinCategory::from_poset(&Poset::chain(2));
        assert_eq!(ho.category.morphism_count(), p.morphism_count());
        assert!(crate::localize::iso_over_objects(&ho.category, &p, &[0, 1, 2]).is_some());
    }

    #[test]
    fn nerve_round_trip() {
        let c = FinCategory::walking_isomorphism();
        let n = CategoryNerve::new(&c, 3);
        let ho = ho_of_qcat(&n.sset).unwrap();
        assert_eq!(ho.category.morphism_count(), 4);
        for f in 0..c.morphism_count() {
            let m = ho.morphism_of(n.edge_of(f));
            assert_eq!(ho.category.name(m), n.sset.simplex_name(n.edge_of(f)));
        }
        assert!(homotopy_is_equivalence(&n.sset).unwrap());
        let _ = find_isomorphism;
    }

    #[test]
    fn refuses_non_quasicategories() {
        assert!(ho_of_qcat(&horn(2, 1).unwrap()).is_err());
        let x = nerve_category(&FinCategory::cyclic_group(3), 1);
        assert!(matches!(ho_of_qcat(&x), Err(Error::DimensionBound { .. })));
    }
}
