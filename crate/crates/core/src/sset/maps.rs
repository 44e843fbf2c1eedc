use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::{Cell, SSet, Simplex};
use crate::error::{Error, Result};

/// A simplicial map, recorded by the image of every non-degenerate source cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SMap {
    images: Vec<Vec<Simplex>>,
}

impl SMap {
    pub fn new(images: Vec<Vec<Simplex>>) -> SMap {
        SMap { images }
    }

    pub fn identity(x: &SSet) -> SMap {
        SMap::new(
            (0..=x.dim_bound())
                .map(|n| x.cells(n).map(Simplex::from).collect())
                .collect(),
        )
    }

    pub fn images(&self) -> &[Vec<Simplex>] {
        &self.images
    }

    pub fn cell_image(&self, c: Cell) -> Simplex {
        self.images[c.dim][c.index]
    }

    pub fn image(&self, s: Simplex) -> Simplex {
        self.cell_image(s.cell).apply(s.word)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &SMap) -> SMap {
        SMap::new(
            f.images
                .iter()
                .map(|v| v.iter().map(|&s| self.image(s)).collect())
                .collect(),
        )
    }

    /// Checks shapes, dimensions and commutation with every face operator.
    pub fn validate(&self, src: &SSet, tgt: &SSet) -> Result<()> {
        for c in src.all_cells() {
            let Some(im) = self.images.get(c.dim).and_then(|v| v.get(c.index)) else {
                return Err(Error::InvalidData(format!("no image for {}", src.name(c))));
            };
            if im.dim() != c.dim || im.cell.index >= tgt.cell_count(im.cell.dim) {
                return Err(Error::InvalidData(format!("bad image for {}", src.name(c))));
            }
            if c.dim > 0 {
                for i in 0..=c.dim {
                    let lhs = self.image(src.cell_face(c, i));
                    let rhs = tgt.face(*im, i);
                    if lhs != rhs {
                        return Err(Error::InvalidData(format!(
                            "map does not commute with d{i} on {}",
                            src.name(c)
                        )));
                    }
                }
            }
        }
        for (n, v) in self.images.iter().enumerate() {
            if v.len() != src.cell_count(n) {
                return Err(Error::InvalidData(format!("wrong number of images in dimension {n}")));
            }
        }
        Ok(())
    }

    /// Injective on non-degenerate cells with non-degenerate images.
    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.images
            .iter()
            .flatten()
            .all(|s| !s.is_degenerate() && seen.insert(s.cell))
    }

    pub fn is_isomorphism(&self, src: &SSet, tgt: &SSet) -> bool {
        self.is_injective() && src.total_cells() == tgt.total_cells()
    }
}

/// Restrictions on a map search.
pub struct MapConstraints<'a> {
    /// Prescribed images of some source cells.
    pub fixed: BTreeMap<Cell, Simplex>,
    /// Extra admissibility test on the images of non-degenerate 1-cells.
    pub edge_filter: Option<&'a dyn Fn(Cell, Simplex) -> bool>,
    /// Only non-degenerate, pairwise distinct images.
    pub injective: bool,
    /// Stop after this many maps.
    pub limit: Option<usize>,
}

impl Default for MapConstraints<'_> {
    fn default() -> Self {
        MapConstraints {
            fixed: BTreeMap::new(),
            edge_filter: None,
            injective: false,
            limit: None,
        }
    }
}

pub fn enumerate_maps(a: &SSet, x: &SSet) -> Result<Vec<SMap>> {
    enumerate_maps_with(a, x, &MapConstraints::default())
}

struct Plan {
    order: Vec<Cell>,
    // for a vertex: an already placed neighbour and whether it is the source
    hint: Vec<Option<(Cell, bool)>>,
}

fn plan(a: &SSet) -> Plan {
    let top = a.top_dim().unwrap_or(0);
    let mut verts_of: Vec<(Cell, BTreeSet<usize>)> = Vec::new();
    for n in 1..=top {
        for c in a.cells(n) {
            let vs = a.vertices(Simplex::from(c)).into_iter().map(|v| v.index).collect();
            verts_of.push((c, vs));
        }
    }
    let edges: Vec<(usize, usize)> = a
        .cells(1)
        .map(|e| (a.cell_face(e, 1).cell.index, a.cell_face(e, 0).cell.index))
        .collect();
    let nv = a.cell_count(0);
    let mut placed = alloc::vec![false; nv];
    let mut done = alloc::vec![false; verts_of.len()];
    let mut order = Vec::new();
    let mut hint = Vec::new();
    for _ in 0..nv {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..nv {
            if placed[v] {
                continue;
            }
            let score = edges
                .iter()
                .filter(|&&(s, t)| (s == v && placed[t]) || (t == v && placed[s]))
                .count();
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((v, score));
            }
        }
        let (v, _) = best.unwrap();
        placed[v] = true;
        let h = edges.iter().find_map(|&(s, t)| {
            if s == v && t != v && placed[t] {
                Some((Cell::new(0, t), false))
            } else if t == v && s != v && placed[s] {
                Some((Cell::new(0, s), true))
            } else {
                None
            }
        });
        order.push(Cell::new(0, v));
        hint.push(h);
        for (i, (c, vs)) in verts_of.iter().enumerate() {
            if !done[i] && vs.iter().all(|&w| placed[w]) {
                done[i] = true;
                order.push(*c);
                hint.push(None);
            }
        }
    }
    Plan { order, hint }
}

struct Target {
    index: Vec<BTreeMap<Vec<Simplex>, Vec<Simplex>>>,
    vertices: Vec<Simplex>,
    out_nbrs: Vec<Vec<Simplex>>,
    in_nbrs: Vec<Vec<Simplex>>,
}

fn target_index(x: &SSet, top: usize) -> Result<Target> {
    let mut index = alloc::vec![BTreeMap::new(); top + 1];
    for d in 1..=top {
        for s in x.simplices(d)? {
            index[d].entry(x.faces_of(s)).or_insert_with(Vec::new).push(s);
        }
    }
    let nv = x.cell_count(0);
    let mut out_nbrs: Vec<BTreeSet<Simplex>> = alloc::vec![BTreeSet::new(); nv];
    let mut in_nbrs: Vec<BTreeSet<Simplex>> = alloc::vec![BTreeSet::new(); nv];
    if top >= 1 {
        for key in index[1].keys() {
            let (t, s) = (key[0], key[1]);
            out_nbrs[s.cell.index].insert(t);
            in_nbrs[t.cell.index].insert(s);
        }
    }
    Ok(Target {
        index,
        vertices: x.cells(0).map(Simplex::from).collect(),
        out_nbrs: out_nbrs.into_iter().map(|s| s.into_iter().collect()).collect(),
        in_nbrs: in_nbrs.into_iter().map(|s| s.into_iter().collect()).collect(),
    })
}

struct Search<'s, 'c> {
    a: &'s SSet,
    plan: &'s Plan,
    target: &'s Target,
    cons: &'s MapConstraints<'c>,
    assign: Vec<Vec<Option<Simplex>>>,
    used: BTreeSet<Cell>,
    results: Vec<SMap>,
}

impl Search<'_, '_> {
    fn image(&self, s: Simplex) -> Simplex {
        self.assign[s.cell.dim][s.cell.index].unwrap().apply(s.word)
    }

    fn run(&mut self, pos: usize) -> bool {
        if pos == self.plan.order.len() {
            let images = self
                .assign
                .iter()
                .map(|v| v.iter().map(|s| s.unwrap()).collect())
                .collect();
            self.results.push(SMap::new(images));
            return self.cons.limit.is_some_and(|l| self.results.len() >= l);
        }
        let c = self.plan.order[pos];
        let candidates: Vec<Simplex> = if c.dim == 0 {
            match self.plan.hint[pos] {
                Some((u, u_is_source)) => {
                    let iu = self.assign[0][u.index].unwrap().cell.index;
                    if u_is_source {
                        self.target.out_nbrs[iu].clone()
                    } else {
                        self.target.in_nbrs[iu].clone()
                    }
                }
                None => self.target.vertices.clone(),
            }
        } else {
            let key: Vec<Simplex> = self.a.cell_faces(c).iter().map(|&f| self.image(f)).collect();
            match self.target.index[c.dim].get(&key) {
                Some(v) => v.clone(),
                None => return false,
            }
        };
        let fixed = self.cons.fixed.get(&c).copied();
        for t in candidates {
            if fixed.is_some_and(|f| f != t) {
                continue;
            }
            if c.dim == 1 {
                if let Some(filter) = self.cons.edge_filter {
                    if !filter(c, t) {
                        continue;
                    }
                }
            }
            if self.cons.injective && (t.is_degenerate() || self.used.contains(&t.cell)) {
                continue;
            }
            self.assign[c.dim][c.index] = Some(t);
            if self.cons.injective {
                self.used.insert(t.cell);
            }
            let stop = self.run(pos + 1);
            if self.cons.injective {
                self.used.remove(&t.cell);
            }
            self.assign[c.dim][c.index] = None;
            if stop {
                return true;
            }
        }
        false
    }
}

/// All maps `A → X` meeting the constraints, sorted by the images of the
/// source cells taken in dimension-then-index order.
pub fn enumerate_maps_with(a: &SSet, x: &SSet, cons: &MapConstraints) -> Result<Vec<SMap>> {
    let top = a.top_dim().unwrap_or(0);
    for d in 0..=top {
        x.ensure_known(d)?;
    }
    let dims = a.dim_bound() + 1;
    if a.total_cells() == 0 {
        return Ok(alloc::vec![SMap::new(alloc::vec![Vec::new(); dims])]);
    }
    let target = target_index(x, top)?;
    let plan = plan(a);
    let mut s = Search {
        a,
        plan: &plan,
        target: &target,
        cons,
        assign: (0..dims).map(|n| alloc::vec![None; a.cell_count(n)]).collect(),
        used: BTreeSet::new(),
        results: Vec::new(),
    };
    s.run(0);
    let mut out = s.results;
    out.sort();
    Ok(out)
}

/// An extension of `f : A → X` along an inclusion `i : A → B`, if one exists.
pub fn extend_along(
    i: &SMap,
    a: &SSet,
    b: &SSet,
    f: &SMap,
    x: &SSet,
    edge_filter: Option<&dyn Fn(Cell, Simplex) -> bool>,
) -> Result<Option<SMap>> {
    let mut fixed = BTreeMap::new();
    for c in a.all_cells() {
        let ic = i.cell_image(c);
        if ic.is_degenerate() {
            return Err(Error::Precondition("extension needs an inclusion".into()));
        }
        fixed.insert(ic.cell, f.cell_image(c));
    }
    let cons = MapConstraints {
        fixed,
        edge_filter,
        injective: false,
        limit: Some(1),
    };
    Ok(enumerate_maps_with(b, x, &cons)?.into_iter().next())
}

/// An isomorphism `X → Y`, if one exists.
pub fn find_isomorphism(x: &SSet, y: &SSet) -> Result<Option<SMap>> {
    let top = x.top_dim().unwrap_or(0).max(y.top_dim().unwrap_or(0));
    for n in 0..=top {
        if x.cell_count(n) != y.cell_count(n) {
            return Ok(None);
        }
    }
    let cons = MapConstraints {
        injective: true,
        limit: Some(1),
        ..MapConstraints::default()
    };
    Ok(enumerate_maps_with(x, y, &cons)?.into_iter().next())
}
