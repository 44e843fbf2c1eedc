//! Marked simplicial sets and marked categories.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::localize::ho_of_qcat;
use crate::sset::{
    enumerate_maps_with, product, standard_simplex, CategoryNerve, Cell, FinCategory, MapConstraints,
    Poset, PosetNerve, Product, SMap, SSet, Simplex,
};
use crate::Verdict;

/// A simplicial set with a set of marked non-degenerate 1-cells. Degenerate
/// edges count as marked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSSet {
    base: SSet,
    marked: BTreeSet<usize>,
}

impl MarkedSSet {
    pub fn new(base: SSet, marked: impl IntoIterator<Item = usize>) -> Result<MarkedSSet> {
        let marked: BTreeSet<usize> = marked.into_iter().collect();
        if let Some(&e) = marked.iter().find(|&&e| e >= base.cell_count(1)) {
            return Err(Error::InvalidData(format!("marked edge index {e} is not a 1-cell")));
        }
        Ok(MarkedSSet { base, marked })
    }

    /// Marks the 1-cells accepted by `f`.
    pub fn from_fn(base: SSet, f: impl Fn(Cell) -> bool) -> MarkedSSet {
        let marked = base.cells(1).filter(|&c| f(c)).map(|c| c.index).collect();
        MarkedSSet { base, marked }
    }

    pub fn base(&self) -> &SSet {
        &self.base
    }

    pub fn marked_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.marked.iter().map(|&i| Cell::new(1, i))
    }

    pub fn marked_count(&self) -> usize {
        self.marked.len()
    }

    pub fn is_marked_cell(&self, c: Cell) -> bool {
        c.dim == 1 && self.marked.contains(&c.index)
    }

    /// Whether a 1-simplex is marked.
    pub fn is_marked(&self, e: Simplex) -> bool {
        debug_assert_eq!(e.dim(), 1);
        e.is_degenerate() || self.marked.contains(&e.cell.index)
    }

    pub fn opposite(&self) -> MarkedSSet {
        MarkedSSet {
            base: self.base.opposite(),
            marked: self.marked.clone(),
        }
    }

    pub fn with_bound(&self, bound: usize) -> Result<MarkedSSet> {
        Ok(MarkedSSet {
            base: self.base.with_bound(bound)?,
            marked: self.marked.clone(),
        })
    }

    /// Whether `f` sends marked edges to marked edges.
    pub fn is_marked_map(&self, f: &SMap, target: &MarkedSSet) -> bool {
        self.marked_cells().all(|c| target.is_marked(f.cell_image(c)))
    }
}

pub fn minimal_marking(x: &SSet) -> MarkedSSet {
    MarkedSSet::from_fn(x.clone(), |_| false)
}

pub fn maximal_marking(x: &SSet) -> MarkedSSet {
    MarkedSSet::from_fn(x.clone(), |_| true)
}

/// Marks the edges that become isomorphisms in the homotopy category.
pub fn natural_marking(x: &SSet) -> Result<MarkedSSet> {
    let ho = ho_of_qcat(x)?;
    Ok(MarkedSSet::from_fn(x.clone(), |c| ho.category.is_iso(ho.morphism_of(Simplex::from(c)))))
}

/// The largest simplicial subset all of whose edges are marked.
pub fn marked_core(x: &MarkedSSet) -> Result<(SSet, SMap)> {
    let b = &x.base;
    b.sub_complex(|c| {
        let s = Simplex::from(c);
        (0..=c.dim).all(|i| (i + 1..=c.dim).all(|j| x.is_marked(b.edge(s, i, j))))
    })
}

/// A fully marked `Λ²₁` with no fully marked filler: edges `f`, `g` with
/// `∂₀ = g`, `∂₂ = f` wanted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornPair {
    pub f: Simplex,
    pub g: Simplex,
}

/// Every composable pair of marked edges is the spine of a 2-simplex with
/// marked long edge.
pub fn is_weakly_closed(x: &MarkedSSet) -> Result<Verdict<HornPair>> {
    let b = &x.base;
    let tris = b.simplices(2)?;
    let mut filled = BTreeSet::new();
    for &s in &tris {
        if x.is_marked(b.face(s, 1)) {
            filled.insert((b.face(s, 2), b.face(s, 0)));
        }
    }
    let edges: Vec<Simplex> = b.simplices(1)?.into_iter().filter(|&e| x.is_marked(e)).collect();
    for &f in &edges {
        for &g in &edges {
            if b.vertex(f, 1) == b.vertex(g, 0) && !filled.contains(&(f, g)) {
                return Ok(Verdict::Fails(HornPair { f, g }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Every 2-simplex with `∂₀` and `∂₂` marked has `∂₁` marked.
pub fn is_strongly_closed(x: &MarkedSSet) -> Result<Verdict<Simplex>> {
    let b = &x.base;
    for s in b.simplices(2)? {
        let [d0, d1, d2] = [0, 1, 2].map(|i| x.is_marked(b.face(s, i)));
        if d0 && d2 && !d1 {
            return Ok(Verdict::Fails(s));
        }
    }
    Ok(Verdict::Holds)
}

/// Any two marked faces of a 2-simplex force the third.
pub fn is_two_out_of_three(x: &MarkedSSet) -> Result<Verdict<Simplex>> {
    let b = &x.base;
    for s in b.simplices(2)? {
        let m = [0, 1, 2].map(|i| x.is_marked(b.face(s, i)));
        if m.iter().filter(|&&v| v).count() == 2 {
            return Ok(Verdict::Fails(s));
        }
    }
    Ok(Verdict::Holds)
}

/// Search constraints restricting to marked maps `A → X`.
pub fn marked_filter<'a>(a: &'a MarkedSSet, x: &'a MarkedSSet) -> impl Fn(Cell, Simplex) -> bool + 'a {
    move |c, img| !a.is_marked_cell(c) || x.is_marked(img)
}

pub fn enumerate_marked_maps(a: &MarkedSSet, x: &MarkedSSet) -> Result<Vec<SMap>> {
    let filter = marked_filter(a, x);
    let cons = MapConstraints {
        edge_filter: Some(&filter),
        ..MapConstraints::default()
    };
    enumerate_maps_with(&a.base, &x.base, &cons)
}

/// `X × (Δ¹)♯` with the product marking.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub product: Product,
    pub marked: MarkedSSet,
}

impl Cylinder {
    /// The inclusion `X × {e} → X × Δ¹` as a map from the base of `X`.
    pub fn end(&self, x: &SSet, e: usize) -> SMap {
        let v = Simplex::from(Cell::new(0, e));
        let images = (0..=x.dim_bound())
            .map(|n| {
                x.cells(n)
                    .map(|c| {
                        let w = Simplex::constant(v.cell, n);
                        self.product.pair(Simplex::from(c), w)
                    })
                    .collect()
            })
            .collect();
        SMap::new(images)
    }
}

pub fn cylinder(x: &MarkedSSet, dim_bound: usize) -> Result<Cylinder> {
    let interval = standard_simplex(1);
    let p = product(&x.base, &interval, dim_bound)?;
    let marked = MarkedSSet::from_fn(p.sset.clone(), |c| x.is_marked(p.pairs[1][c.index].0));
    Ok(Cylinder { product: p, marked })
}

/// Whether `h : X × Δ¹ → Y` is a marked homotopy. Errors if `h` is not a
/// simplicial map on the cylinder.
pub fn is_marked_homotopy(h: &SMap, cyl: &Cylinder, y: &MarkedSSet) -> Result<bool> {
    let src = cyl.marked.base();
    if h.images().len() != src.dim_bound() + 1
        || (0..=src.dim_bound()).any(|n| h.images()[n].len() != src.cell_count(n))
    {
        return Err(Error::Precondition("homotopy is not defined on the cylinder".into()));
    }
    h.validate(src, y.base())?;
    Ok(cyl.marked.is_marked_map(h, y))
}

/// A finite category with a set of marked morphisms containing the identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedCategory {
    base: FinCategory,
    marked: BTreeSet<usize>,
}

impl MarkedCategory {
    /// Identities are added to `marked`.
    pub fn new(base: FinCategory, marked: impl IntoIterator<Item = usize>) -> Result<MarkedCategory> {
        let mut set: BTreeSet<usize> = marked.into_iter().collect();
        if let Some(&f) = set.iter().find(|&&f| f >= base.morphism_count()) {
            return Err(Error::InvalidCategory(format!("marked morphism {f} does not exist")));
        }
        set.extend(base.identities().iter().copied());
        Ok(MarkedCategory { base, marked: set })
    }

    pub fn from_fn(base: FinCategory, f: impl Fn(usize) -> bool) -> MarkedCategory {
        let marked = (0..base.morphism_count()).filter(|&m| f(m) || base.is_identity(m)).collect();
        MarkedCategory { base, marked }
    }

    pub fn identities_only(base: FinCategory) -> MarkedCategory {
        MarkedCategory::from_fn(base, |_| false)
    }

    pub fn everything(base: FinCategory) -> MarkedCategory {
        MarkedCategory::from_fn(base, |_| true)
    }

    pub fn at_isomorphisms(base: FinCategory) -> MarkedCategory {
        let isos: BTreeSet<usize> = base.isomorphisms().into_iter().collect();
        MarkedCategory::from_fn(base, |f| isos.contains(&f))
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn is_marked(&self, f: usize) -> bool {
        self.marked.contains(&f)
    }

    pub fn marked(&self) -> impl Iterator<Item = usize> + '_ {
        self.marked.iter().copied()
    }

    /// Marked morphisms out of `x`.
    pub fn marked_out_of(&self, x: usize) -> Vec<usize> {
        self.base.out_of(x).into_iter().filter(|&f| self.is_marked(f)).collect()
    }

    pub fn marked_into(&self, y: usize) -> Vec<usize> {
        self.base.into_obj(y).into_iter().filter(|&f| self.is_marked(f)).collect()
    }

    pub fn opposite(&self) -> MarkedCategory {
        MarkedCategory {
            base: self.base.opposite(),
            marked: self.marked.clone(),
        }
    }

    /// The nerve with the induced marking.
    pub fn nerve(&self, dim_bound: usize) -> MarkedNerve {
        let nerve = CategoryNerve::new(&self.base, dim_bound);
        let marked = MarkedSSet::from_fn(nerve.sset.clone(), |c| {
            self.is_marked(nerve.morphism_of(Simplex::from(c)))
        });
        MarkedNerve { nerve, marked }
    }

    /// `W` is closed under composition.
    pub fn is_closed_under_composition(&self) -> Verdict<(usize, usize)> {
        for &f in &self.marked {
            for &g in &self.marked {
                if let Some(h) = self.base.compose(g, f) {
                    if !self.is_marked(h) {
                        return Verdict::Fails((g, f));
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// 2-out-of-3 on composable pairs; the witness is `(g, f)`.
    pub fn is_two_out_of_three(&self) -> Verdict<(usize, usize)> {
        let c = &self.base;
        for (g, f, h) in c.composition_triples() {
            let n = [g, f, h].iter().filter(|&&m| self.is_marked(m)).count();
            if n == 2 {
                return Verdict::Fails((g, f));
            }
        }
        Verdict::Holds
    }
}

/// A finite poset with a set of marked strict relations `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoset {
    pub poset: Poset,
    marked: BTreeSet<(usize, usize)>,
}

impl MarkedPoset {
    pub fn new(poset: Poset, marked: impl IntoIterator<Item = (usize, usize)>) -> Result<MarkedPoset> {
        let marked: BTreeSet<(usize, usize)> = marked.into_iter().collect();
        if let Some(&(a, b)) = marked.iter().find(|&&(a, b)| a >= poset.len() || b >= poset.len() || !poset.lt(a, b)) {
            return Err(Error::InvalidData(format!("marked pair ({a}, {b}) is not a strict relation")));
        }
        Ok(MarkedPoset { poset, marked })
    }

    /// Reads the marking off a marked poset nerve.
    pub fn from_nerve(nerve: &PosetNerve, marked: &MarkedSSet) -> MarkedPoset {
        let pairs = marked.marked_cells().map(|c| {
            let ch = &nerve.chains[1][c.index];
            (ch[0], ch[1])
        });
        MarkedPoset {
            poset: nerve.poset().clone(),
            marked: pairs.collect(),
        }
    }

    /// Whether `a ≤ b` is marked; identities always are.
    pub fn is_marked(&self, a: usize, b: usize) -> bool {
        a == b || self.marked.contains(&(a, b))
    }
}

/// The nerve of a marked category, keeping the chain bookkeeping.
#[derive(Clone, Debug)]
pub struct MarkedNerve {
    pub nerve: CategoryNerve,
    pub marked: MarkedSSet,
}
