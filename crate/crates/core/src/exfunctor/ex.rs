use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::sd::{codegeneracy, coface, sd_operator, sd_shape};
use crate::error::{Error, Result};
use crate::fractions::{Side, SubsetNerve};
use crate::marked::{enumerate_marked_maps, MarkedSSet};
use crate::sset::{from_levels, Cell, SMap, SSet, Simplex};

/// The levels `m ≤ bound` of `Ex₊(X)` (side `L`) or of its dual built from
/// the min-marked subdivisions (side `R`): element `e` of level `m` is a
/// marked map `sd[m] → X`, with faces and degeneracies by precomposition.
#[derive(Clone, Debug)]
pub struct ExLevels {
    pub side: Side,
    pub input: MarkedSSet,
    pub shapes: Vec<SubsetNerve>,
    pub elements: Vec<Vec<SMap>>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<SMap, usize>>,
    /// The truncated simplicial set, its cells being the non-degenerate elements.
    pub sset: SSet,
    pub decomposition: Vec<Vec<Simplex>>,
    pub element_of_cell: Vec<Vec<usize>>,
}

impl ExLevels {
    pub fn bound(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn level(&self, m: usize) -> &[SMap] {
        &self.elements[m]
    }

    pub fn find(&self, m: usize, map: &SMap) -> Option<usize> {
        self.index.get(m)?.get(map).copied()
    }

    /// The simplex of the truncated set for an element.
    pub fn simplex(&self, m: usize, e: usize) -> Simplex {
        self.decomposition[m][e]
    }

    /// The vertex images of an element, in the vertex order of `sd[m]`.
    pub fn vertex_images(&self, m: usize, e: usize) -> Vec<Cell> {
        let shape = &self.shapes[m];
        shape.sset().cells(0).map(|v| self.elements[m][e].cell_image(v).cell).collect()
    }

    /// For side `L` at level 1: the cospan `x → z ← y` as `(x, z, y)`;
    /// for side `R`: the span `x ← z → y` as `(x, z, y)`.
    pub fn endpoints(&self, e: usize) -> (Cell, Cell, Cell) {
        let s = &self.shapes[1];
        let v = |m: u32| self.elements[1][e].cell_image(s.vertex(m).unwrap()).cell;
        (v(0b01), v(0b11), v(0b10))
    }
}

const DEFAULT_LEVELS: usize = 2;

pub fn ex_plus(x: &MarkedSSet, levels: usize) -> Result<ExLevels> {
    ex_levels(x, levels, Side::L)
}

/// The dual functor computed directly from the dual subdivisions.
pub fn ex_op_direct(x: &MarkedSSet, levels: usize) -> Result<ExLevels> {
    ex_levels(x, levels, Side::R)
}

/// The dual functor as the opposite of `Ex₊` of the opposite.
pub fn ex_op(x: &MarkedSSet, levels: usize) -> Result<SSet> {
    Ok(ex_plus(&x.opposite(), levels)?.sset.opposite())
}

pub fn ex_plus_default(x: &MarkedSSet) -> Result<ExLevels> {
    ex_plus(x, DEFAULT_LEVELS)
}

pub fn ex_levels(x: &MarkedSSet, levels: usize, side: Side) -> Result<ExLevels> {
    for m in 0..=levels {
        x.base().ensure_known(m)?;
    }
    let shapes: Vec<SubsetNerve> = (0..=levels).map(|m| sd_shape(m, side)).collect::<Result<_>>()?;
    let mut elements = Vec::new();
    let mut index = Vec::new();
    for shape in &shapes {
        let maps = enumerate_marked_maps(&shape.marked, x)?;
        index.push(maps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect::<BTreeMap<_, _>>());
        elements.push(maps);
    }
    let lookup = |m: usize, f: &SMap| -> Result<usize> {
        index[m]
            .get(f)
            .copied()
            .ok_or_else(|| Error::InvalidData(format!("level {m} is not closed under the operators")))
    };
    let mut faces = alloc::vec![Vec::new(); levels + 1];
    let mut degeneracies = alloc::vec![Vec::new(); levels + 1];
    for m in 0..=levels {
        if m > 0 {
            let ops: Vec<SMap> = (0..=m)
                .map(|i| sd_operator(&coface(m, i), &shapes[m - 1], &shapes[m]))
                .collect::<Result<_>>()?;
            for e in &elements[m] {
                let row = ops.iter().map(|d| lookup(m - 1, &e.compose(d))).collect::<Result<Vec<_>>>()?;
                faces[m].push(row);
            }
        }
        if m < levels {
            let ops: Vec<SMap> = (0..=m)
                .map(|i| sd_operator(&codegeneracy(m, i), &shapes[m + 1], &shapes[m]))
                .collect::<Result<_>>()?;
            for e in &elements[m] {
                let row = ops.iter().map(|s| lookup(m + 1, &e.compose(s))).collect::<Result<Vec<_>>>()?;
                degeneracies[m].push(row);
            }
        }
    }
    let names = element_names(x.base(), &shapes, &elements);
    let sizes: Vec<usize> = elements.iter().map(|l| l.len()).collect();
    let lv = from_levels(
        &sizes,
        false,
        |m, e, i| faces[m][e][i],
        |m, e, i| degeneracies[m][e][i],
        |m, e| names[m][e].clone(),
    )?;
    Ok(ExLevels {
        side,
        input: x.clone(),
        shapes,
        elements,
        faces,
        degeneracies,
        index,
        sset: lv.sset,
        decomposition: lv.decomposition,
        element_of_cell: lv.element_of_cell,
    })
}

/// Vertex images joined by commas; repeated names get a `#k` suffix.
fn element_names(x: &SSet, shapes: &[SubsetNerve], elements: &[Vec<SMap>]) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for (m, level) in elements.iter().enumerate() {
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        let mut names = Vec::new();
        for f in level {
            let base = if m == 0 {
                String::from(x.name(f.cell_image(Cell::new(0, 0)).cell))
            } else {
                let vs: Vec<&str> = shapes[m].sset().cells(0).map(|v| x.name(f.cell_image(v).cell)).collect();
                format!("[{}]", vs.join(","))
            };
            let k = seen.entry(base.clone()).or_insert(0);
            names.push(if *k == 0 { base.clone() } else { format!("{base}#{k}") });
            *k += 1;
        }
        out.push(names);
    }
    out
}

/// `Ex₊(f)` on the cached levels, as a map of the truncated sets.
pub fn ex_map(f: &SMap, a: &ExLevels, b: &ExLevels) -> Result<SMap> {
    if a.bound() != b.bound() || a.side != b.side {
        return Err(Error::Precondition("level caches do not match".into()));
    }
    f.validate(a.input.base(), b.input.base())?;
    let mut images = Vec::new();
    for m in 0..=a.bound() {
        let mut row = Vec::new();
        for &e in &a.element_of_cell[m] {
            let g = f.compose(&a.elements[m][e]);
            let t = b
                .find(m, &g)
                .ok_or_else(|| Error::Precondition("the map is not marked".into()))?;
            row.push(b.decomposition[m][t]);
        }
        images.push(row);
    }
    let out = SMap::new(images);
    out.validate(&a.sset, &b.sset)?;
    Ok(out)
}

/// `max* : X → Ex₊(X)` (side `L`) or `min*` (side `R`) on the cached levels,
/// from the truncation of `X`. An `m`-cell `u` goes to `u ∘ max`.
pub fn unit_map(ex: &ExLevels) -> Result<(SSet, SMap)> {
    let x = ex.input.base();
    let xt = x.truncate(ex.bound());
    let mut images = Vec::new();
    for m in 0..=ex.bound() {
        let shape = &ex.shapes[m];
        let mut row = Vec::new();
        for u in x.cells(m) {
            let f = composite_with_extremum(x, Simplex::from(u), shape, ex.side);
            let e = ex
                .find(m, &f)
                .ok_or_else(|| Error::Precondition("the unit lands outside the marked maps".into()))?;
            row.push(ex.decomposition[m][e]);
        }
        images.push(row);
    }
    let map = SMap::new(images);
    map.validate(&xt, &ex.sset)?;
    Ok((xt, map))
}

pub fn max_star(ex: &ExLevels) -> Result<(SSet, SMap)> {
    if ex.side != Side::L {
        return Err(Error::Precondition("max* needs the left subdivision".into()));
    }
    unit_map(ex)
}

pub fn min_star(ex: &ExLevels) -> Result<(SSet, SMap)> {
    if ex.side != Side::R {
        return Err(Error::Precondition("min* needs the right subdivision".into()));
    }
    unit_map(ex)
}

/// `u ∘ max : sd[m] → X`, or `u ∘ min` on the dual side.
pub fn composite_with_extremum(x: &SSet, u: Simplex, shape: &SubsetNerve, side: Side) -> SMap {
    let ext = |m: u32| match side {
        Side::L => (31 - m.leading_zeros()) as usize,
        Side::R => m.trailing_zeros() as usize,
    };
    let s = shape.sset();
    let images = (0..=s.dim_bound())
        .map(|d| {
            s.cells(d)
                .map(|c| {
                    let phi: Vec<usize> = shape.chain_sets(Simplex::from(c)).into_iter().map(ext).collect();
                    x.act(u, &phi)
                })
                .collect()
        })
        .collect();
    SMap::new(images)
}
