use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::marked::MarkedSSet;
use crate::sset::{
    enumerate_maps_with, from_levels, product, standard_simplex, standard_simplex_nerve, Cell, MapConstraints,
    Product, SMap, SSet, Simplex,
};
use crate::util::UnionFind;

/// Largest level computed for slices.
pub const SLICE_MAX_LEVEL: usize = 2;

/// A slice of `X` at a vertex in the cylinder form: level `n` holds the maps
/// `Δⁿ × Δ¹ → X` that are constant at the vertex on one end.
#[derive(Clone, Debug)]
pub struct Slice {
    pub prisms: Vec<Product>,
    pub elements: Vec<Vec<SMap>>,
    /// Restriction of each element to the free end.
    pub ends: Vec<Vec<Simplex>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
    pub marked: MarkedSSet,
    pub decomposition: Vec<Vec<Simplex>>,
    pub element_of_cell: Vec<Vec<usize>>,
}

impl Slice {
    pub fn sset(&self) -> &SSet {
        self.marked.base()
    }
}

fn vertical_edges(p: &Product) -> BTreeSet<Cell> {
    p.sset
        .cells(1)
        .filter(|&c| {
            let (a, b) = p.components(c.into());
            a.is_degenerate() && !b.is_degenerate()
        })
        .collect()
}

fn end_cells(p: &Product, e: usize) -> Vec<Cell> {
    p.sset
        .all_cells()
        .filter(|&c| {
            let (_, b) = p.components(c.into());
            b.cell == Cell::new(0, e)
        })
        .collect()
}

/// `φ × id : Δᵐ × Δ¹ → Δⁿ × Δ¹`.
fn prism_operator(src: &Product, tgt: &Product, m: usize, n: usize, phi: &[usize]) -> SMap {
    let (dm, dn) = (standard_simplex_nerve(m), standard_simplex_nerve(n));
    let images = (0..=src.sset.dim_bound())
        .map(|d| {
            src.sset
                .cells(d)
                .map(|c| {
                    let (a, b) = src.components(c.into());
                    let chain: Vec<usize> = dm.chain(a).into_iter().map(|v| phi[v]).collect();
                    tgt.pair(dn.simplex(&chain).expect("monotone image"), b)
                })
                .collect()
        })
        .collect();
    SMap::new(images)
}

/// The restriction of a prism map to the end `Δⁿ × {e}`.
fn end_of(p: &Product, f: &SMap, n: usize, e: usize) -> Simplex {
    let top = Simplex::from(Cell::new(n, 0));
    let s = p.pair(top, Simplex::constant(Cell::new(0, e), n));
    f.image(s)
}

/// The slice with the vertex at end `fixed` (0 for under, 1 for over); when
/// `marked_vertical` the edges `(i,0) ≤ (i,1)` must go to marked edges. An
/// edge of the slice is marked when its free end is.
pub fn slice(x: &MarkedSSet, v: Cell, fixed: usize, marked_vertical: bool, levels: usize) -> Result<Slice> {
    if levels > SLICE_MAX_LEVEL {
        return Err(Error::SizeGuard(format!("slices are limited to level {SLICE_MAX_LEVEL}")));
    }
    if v.dim != 0 || v.index >= x.base().cell_count(0) {
        return Err(Error::OutOfRange("the slice point is not a vertex".into()));
    }
    x.base().ensure_known(levels + 1)?;
    let free = 1 - fixed;
    let mut prisms = Vec::new();
    for n in 0..=levels {
        prisms.push(product(&standard_simplex(n), &standard_simplex(1), n + 1)?);
    }
    let mut elements = Vec::new();
    let mut ends: Vec<Vec<Simplex>> = Vec::new();
    let mut index: Vec<BTreeMap<SMap, usize>> = Vec::new();
    for (n, p) in prisms.iter().enumerate() {
        let vert = vertical_edges(p);
        let filter = |c: Cell, s: Simplex| !vert.contains(&c) || !marked_vertical || x.is_marked(s);
        let fixed_cells: BTreeMap<Cell, Simplex> =
            end_cells(p, fixed).into_iter().map(|c| (c, Simplex::constant(v, c.dim))).collect();
        let cons = MapConstraints {
            fixed: fixed_cells,
            edge_filter: Some(&filter),
            ..MapConstraints::default()
        };
        let maps = enumerate_maps_with(&p.sset, x.base(), &cons)?;
        ends.push(maps.iter().map(|f| end_of(p, f, n, free)).collect());
        index.push(maps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect());
        elements.push(maps);
    }
    let mut faces: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); levels + 1];
    let mut degeneracies: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); levels + 1];
    for n in 0..=levels {
        if n > 0 {
            let ops: Vec<SMap> = (0..=n)
                .map(|i| {
                    let phi: Vec<usize> = (0..=n).filter(|&a| a != i).collect();
                    prism_operator(&prisms[n - 1], &prisms[n], n - 1, n, &phi)
                })
                .collect();
            for f in &elements[n] {
                faces[n].push(ops.iter().map(|d| index[n - 1][&f.compose(d)]).collect());
            }
        }
        if n < levels {
            let ops: Vec<SMap> = (0..=n)
                .map(|i| {
                    let phi: Vec<usize> = (0..=n + 1).map(|a| if a <= i { a } else { a - 1 }).collect();
                    prism_operator(&prisms[n + 1], &prisms[n], n + 1, n, &phi)
                })
                .collect();
            for f in &elements[n] {
                degeneracies[n].push(ops.iter().map(|s| index[n + 1][&f.compose(s)]).collect());
            }
        }
    }
    let xb = x.base();
    let sizes: Vec<usize> = elements.iter().map(|l| l.len()).collect();
    let lv = from_levels(
        &sizes,
        false,
        |n, e, i| faces[n][e][i],
        |n, e, i| degeneracies[n][e][i],
        |n, e| element_name(xb, &prisms[n], &elements[n][e], n, e),
    )?;
    let marked = MarkedSSet::from_fn(lv.sset.clone(), |c| x.is_marked(ends[1][lv.element_of_cell[1][c.index]]));
    Ok(Slice {
        prisms,
        elements,
        ends,
        faces,
        degeneracies,
        marked,
        decomposition: lv.decomposition,
        element_of_cell: lv.element_of_cell,
    })
}

fn element_name(x: &SSet, p: &Product, f: &SMap, n: usize, e: usize) -> String {
    if n == 0 {
        let edge = f.image(Simplex::from(Cell::new(1, 0)));
        let _ = p;
        return x.simplex_name(edge);
    }
    format!("c{n}_{e}")
}

/// `x ↓ (X, W)`: vertical edges marked.
pub fn marked_slice_under(x: &MarkedSSet, v: Cell, levels: usize) -> Result<Slice> {
    slice(x, v, 0, true, levels)
}

pub fn marked_slice_over(x: &MarkedSSet, v: Cell, levels: usize) -> Result<Slice> {
    slice(x, v, 1, true, levels)
}

/// The pullback of two slices over their free ends.
#[derive(Clone, Debug)]
pub struct FractionSpace {
    /// Level `n` elements as pairs of slice elements.
    pub elements: Vec<Vec<(usize, usize)>>,
    pub first: Slice,
    pub second: Slice,
    pub marked: MarkedSSet,
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl FractionSpace {
    pub fn sset(&self) -> &SSet {
        self.marked.base()
    }

    /// The vertex `(f, w)` as the pair of edges of `X`.
    pub fn vertex_edges(&self, i: usize) -> (Simplex, Simplex) {
        let (a, b) = self.elements[0][i];
        let edge = |s: &Slice, k: usize| s.elements[0][k].image(Simplex::from(Cell::new(1, 0)));
        (edge(&self.first, a), edge(&self.second, b))
    }

    /// Connected components of vertices through edges.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.elements[0].len());
        if self.faces.len() > 1 {
            for row in &self.faces[1] {
                uf.union(row[0], row[1]);
            }
        }
        uf.labels()
    }
}

fn pullback(first: Slice, second: Slice, x: &MarkedSSet, levels: usize) -> Result<FractionSpace> {
    let mut elements = Vec::new();
    let mut index: Vec<BTreeMap<(usize, usize), usize>> = Vec::new();
    for n in 0..=levels {
        let mut by_end: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
        for (j, &e) in second.ends[n].iter().enumerate() {
            by_end.entry(e).or_default().push(j);
        }
        let mut lvl = Vec::new();
        for (i, e) in first.ends[n].iter().enumerate() {
            for &j in by_end.get(e).into_iter().flatten() {
                lvl.push((i, j));
            }
        }
        index.push(lvl.iter().enumerate().map(|(k, &p)| (p, k)).collect());
        elements.push(lvl);
    }
    let op = |n: usize, e: usize, i: usize, up: bool| -> usize {
        let (a, b) = elements[n][e];
        let (m, pa, pb) = if up {
            (n + 1, first.degeneracies[n][a][i], second.degeneracies[n][b][i])
        } else {
            (n - 1, first.faces[n][a][i], second.faces[n][b][i])
        };
        index[m][&(pa, pb)]
    };
    let faces: Vec<Vec<Vec<usize>>> = (0..=levels)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                (0..elements[n].len()).map(|e| (0..=n).map(|i| op(n, e, i, false)).collect()).collect()
            }
        })
        .collect();
    let sizes: Vec<usize> = elements.iter().map(|l| l.len()).collect();
    let xb = x.base();
    let lv = from_levels(
        &sizes,
        false,
        |n, e, i| faces[n][e][i],
        |n, e, i| op(n, e, i, true),
        |n, e| {
            if n == 0 {
                let (a, b) = elements[0][e];
                let edge = |s: &Slice, k: usize| s.elements[0][k].image(Simplex::from(Cell::new(1, 0)));
                format!("({},{})", xb.simplex_name(edge(&first, a)), xb.simplex_name(edge(&second, b)))
            } else {
                format!("p{n}_{e}")
            }
        },
    )?;
    let marked = MarkedSSet::from_fn(lv.sset.clone(), |c| {
        let (a, _) = elements[1][lv.element_of_cell[1][c.index]];
        x.is_marked(first.ends[1][a])
    });
    Ok(FractionSpace {
        elements,
        first,
        second,
        marked,
        faces,
    })
}

/// `LF(x, y)`: cospans `x → z ← y` with the right leg marked, as the
/// pullback of `x ↓ X` and the marked slice under `y`.
pub fn fraction_space_lf(x: &MarkedSSet, a: Cell, b: Cell, levels: usize) -> Result<FractionSpace> {
    let first = slice(x, a, 0, false, levels)?;
    let second = slice(x, b, 0, true, levels)?;
    pullback(first, second, x, levels)
}

/// `RF(x, y)`: spans `x ← z → y` with the left leg marked.
pub fn fraction_space_rf(x: &MarkedSSet, a: Cell, b: Cell, levels: usize) -> Result<FractionSpace> {
    let first = slice(x, a, 1, true, levels)?;
    let second = slice(x, b, 1, false, levels)?;
    pullback(first, second, x, levels)
}
