//! Finite simplicial sets stored by non-degenerate cells with
//! Eilenberg–Zilber normal faces.

mod build;
mod category;
mod maps;
mod poset;
mod qcat;
mod word;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use build::{
    boundary, boundary_inclusion, horn, horn_inclusion, join, nerve_category, nerve_poset,
    poset_chain_simplex, product, standard_simplex, standard_simplex_nerve, CategoryNerve,
    PosetNerve, Product,
};
pub use category::{FinCategory, Morphism};
pub use maps::{enumerate_maps, enumerate_maps_with, extend_along, find_isomorphism, MapConstraints, SMap};
pub use poset::Poset;
pub use qcat::{inner_horn_witness, is_quasicategory_upto, HornWitness};
pub use word::{DegeneracyWord, MAX_DIM};

/// A non-degenerate cell: its dimension and its index within that dimension.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub dim: usize,
    pub index: usize,
}

impl Cell {
    pub fn new(dim: usize, index: usize) -> Self {
        Cell { dim, index }
    }
}

/// A simplex in EZ form: a degeneracy word applied to a non-degenerate cell.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex {
    pub cell: Cell,
    pub word: DegeneracyWord,
}

impl Simplex {
    pub fn new(cell: Cell, word: DegeneracyWord) -> Self {
        Simplex { cell, word }
    }

    pub fn dim(&self) -> usize {
        self.cell.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_identity()
    }

    /// `self · w`, i.e. precomposition of the simplex with the surjection `w`.
    pub fn apply(self, w: DegeneracyWord) -> Simplex {
        Simplex {
            cell: self.cell,
            word: self.word.after(w),
        }
    }

    /// The degenerate simplex `s_i(self)`.
    pub fn degenerate(self, i: usize) -> Simplex {
        self.apply(DegeneracyWord::sigma(i))
    }

    /// The vertex repeated to dimension `n`.
    pub fn constant(vertex: Cell, n: usize) -> Simplex {
        Simplex {
            cell: vertex,
            word: DegeneracyWord::from_mask(if n == 0 { 0 } else { (1u32 << n) - 1 }),
        }
    }
}

impl From<Cell> for Simplex {
    fn from(cell: Cell) -> Self {
        Simplex {
            cell,
            word: DegeneracyWord::IDENTITY,
        }
    }
}

/// A finite simplicial set known up to `dim_bound`.
///
/// If `exhaustive` is set there are no non-degenerate cells above the bound,
/// so questions in any dimension can be answered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSet {
    dim_bound: usize,
    exhaustive: bool,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    lookup: BTreeMap<(usize, String), usize>,
}

impl SSet {
    pub fn empty(dim_bound: usize) -> SSet {
        SSetBuilder::new(dim_bound, true).build().expect("empty set is valid")
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// Whether simplices of dimension `n` are fully known.
    pub fn knows(&self, n: usize) -> bool {
        n <= self.dim_bound || self.exhaustive
    }

    pub fn ensure_known(&self, n: usize) -> Result<()> {
        if self.knows(n) {
            Ok(())
        } else {
            Err(Error::DimensionBound {
                requested: n,
                bound: self.dim_bound,
            })
        }
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, |v| v.len())
    }

    /// Non-degenerate cell counts in dimensions `0..=dim_bound`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dim_bound).map(|n| self.cell_count(n)).collect()
    }

    /// Largest dimension holding a non-degenerate cell.
    pub fn top_dim(&self) -> Option<usize> {
        (0..self.names.len()).rev().find(|&n| !self.names[n].is_empty())
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|v| v.len()).sum()
    }

    pub fn cells(&self, n: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_count(n)).map(move |i| Cell::new(n, i))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.names.len()).flat_map(move |n| self.cells(n))
    }

    pub fn name(&self, c: Cell) -> &str {
        &self.names[c.dim][c.index]
    }

    pub fn find(&self, dim: usize, name: &str) -> Option<Cell> {
        self.lookup
            .get(&(dim, name.to_string()))
            .map(|&i| Cell::new(dim, i))
    }

    pub fn simplex_name(&self, s: Simplex) -> String {
        if s.word.is_identity() {
            self.name(s.cell).to_string()
        } else {
            let idx: Vec<String> = s.word.indices().iter().map(|j| format!("{j}")).collect();
            format!("s[{}]{}", idx.join(","), self.name(s.cell))
        }
    }

    /// The stored EZ face `∂_i` of a non-degenerate cell of dimension ≥ 1.
    pub fn cell_face(&self, c: Cell, i: usize) -> Simplex {
        self.faces[c.dim][c.index][i]
    }

    pub fn cell_faces(&self, c: Cell) -> &[Simplex] {
        &self.faces[c.dim][c.index]
    }

    /// `s · φ` for a monotone `φ : [p] → [dim s]` given by its values.
    pub fn act(&self, s: Simplex, phi: &[usize]) -> Simplex {
        let m = s.cell.dim;
        let mut image = 0u32;
        let mut mask = 0u32;
        let mut prev = usize::MAX;
        for (t, &v) in phi.iter().enumerate() {
            debug_assert!(v <= s.dim(), "operator leaves the simplex");
            let g = s.word.eval(v);
            debug_assert!(g <= m);
            if t > 0 && g == prev {
                mask |= 1 << (t - 1);
            }
            image |= 1 << g;
            prev = g;
        }
        let r = self.restrict(s.cell, image);
        r.apply(DegeneracyWord::from_mask(mask))
    }

    /// The face of a non-degenerate cell spanned by the vertex set `keep`.
    fn restrict(&self, c: Cell, keep: u32) -> Simplex {
        let m = c.dim;
        let full = if m + 1 >= 32 { u32::MAX } else { (1u32 << (m + 1)) - 1 };
        if keep == full {
            return Simplex::from(c);
        }
        let q = (0..=m).rev().find(|&v| keep & (1 << v) == 0).unwrap();
        let f = self.faces[m][c.index][q];
        let low = keep & ((1u32 << q) - 1);
        let high = (keep >> (q + 1)) << q;
        let kept = low | high;
        let mut phi = [0usize; 32];
        let mut len = 0;
        for v in 0..m {
            if kept & (1 << v) != 0 {
                phi[len] = v;
                len += 1;
            }
        }
        self.act(f, &phi[..len])
    }

    pub fn face(&self, s: Simplex, i: usize) -> Simplex {
        let n = s.dim();
        assert!(n >= 1 && i <= n, "face index out of range");
        let mut phi = [0usize; 32];
        let mut len = 0;
        for v in 0..=n {
            if v != i {
                phi[len] = v;
                len += 1;
            }
        }
        self.act(s, &phi[..len])
    }

    pub fn faces_of(&self, s: Simplex) -> Vec<Simplex> {
        (0..=s.dim()).map(|i| self.face(s, i)).collect()
    }

    pub fn vertex(&self, s: Simplex, j: usize) -> Cell {
        self.act(s, &[j]).cell
    }

    pub fn vertices(&self, s: Simplex) -> Vec<Cell> {
        (0..=s.dim()).map(|j| self.vertex(s, j)).collect()
    }

    /// The 1-simplex from vertex `a` to vertex `b` of `s` (`a ≤ b`).
    pub fn edge(&self, s: Simplex, a: usize, b: usize) -> Simplex {
        self.act(s, &[a, b])
    }

    /// Every `n`-simplex, degenerate ones included, ordered by cell then word.
    pub fn simplices(&self, n: usize) -> Result<Vec<Simplex>> {
        self.ensure_known(n)?;
        let mut out = Vec::new();
        for m in 0..=n.min(self.names.len().saturating_sub(1)) {
            let k = n - m;
            let words: Vec<DegeneracyWord> = crate::util::subsets_of_size(n, k)
                .into_iter()
                .map(|pos| {
                    let mut mask = 0u32;
                    for p in pos {
                        mask |= 1 << p;
                    }
                    DegeneracyWord::from_mask(mask)
                })
                .collect();
            for c in self.cells(m) {
                for &w in &words {
                    out.push(Simplex::new(c, w));
                }
            }
        }
        Ok(out)
    }

    /// The simplicial subset on the cells accepted by `keep`, with its inclusion.
    pub fn sub_complex(&self, keep: impl Fn(Cell) -> bool) -> Result<(SSet, SMap)> {
        let mut new_index: Vec<Vec<Option<usize>>> =
            self.names.iter().map(|v| alloc::vec![None; v.len()]).collect();
        let mut b = SSetBuilder::new(self.dim_bound, self.exhaustive);
        for c in self.all_cells() {
            if !keep(c) {
                continue;
            }
            let mut faces = Vec::new();
            if c.dim > 0 {
                for &f in self.cell_faces(c) {
                    let Some(idx) = new_index[f.cell.dim][f.cell.index] else {
                        return Err(Error::InvalidData(format!(
                            "cell {} keeps a face outside the subset",
                            self.name(c)
                        )));
                    };
                    faces.push(Simplex::new(Cell::new(f.cell.dim, idx), f.word));
                }
            }
            let nc = b.add_cell(c.dim, self.name(c), faces)?;
            new_index[c.dim][c.index] = Some(nc.index);
        }
        let sub = b.build()?;
        let mut images: Vec<Vec<Simplex>> = Vec::new();
        for n in 0..=sub.dim_bound {
            images.push(Vec::new());
            for (old, slot) in new_index.get(n).into_iter().flatten().enumerate() {
                if slot.is_some() {
                    images[n].push(Simplex::from(Cell::new(n, old)));
                }
            }
        }
        Ok((sub, SMap::new(images)))
    }

    /// The opposite simplicial set: vertex order reversed in every simplex.
    pub fn opposite(&self) -> SSet {
        let mut b = SSetBuilder::new(self.dim_bound, self.exhaustive);
        for c in self.all_cells() {
            let n = c.dim;
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let f = self.cell_face(c, n - i);
                        Simplex::new(f.cell, f.word.reversed(n - 1))
                    })
                    .collect()
            };
            b.add_cell(n, self.name(c), faces).expect("opposite keeps names unique");
        }
        b.build().expect("opposite of a valid simplicial set is valid")
    }

    /// The opposite of a simplex of this set, as a simplex of `opposite()`.
    pub fn opposite_simplex(s: Simplex) -> Simplex {
        Simplex::new(s.cell, s.word.reversed(s.dim()))
    }

    /// Forget cells above `bound`.
    pub fn truncate(&self, bound: usize) -> SSet {
        let mut b = SSetBuilder::new(bound, self.exhaustive && self.top_dim().unwrap_or(0) <= bound);
        for c in self.all_cells().filter(|c| c.dim <= bound) {
            let faces = if c.dim == 0 { Vec::new() } else { self.cell_faces(c).to_vec() };
            b.add_cell(c.dim, self.name(c), faces).expect("truncation keeps names");
        }
        b.build().expect("truncation is valid")
    }

    /// Raise the bound of an exhaustive set.
    pub fn with_bound(&self, bound: usize) -> Result<SSet> {
        if bound < self.top_dim().unwrap_or(0) || (!self.exhaustive && bound > self.dim_bound) {
            return Err(Error::DimensionBound {
                requested: bound,
                bound: self.dim_bound,
            });
        }
        let mut out = self.clone();
        out.dim_bound = bound;
        out.names.resize(bound + 1, Vec::new());
        out.faces.resize(bound + 1, Vec::new());
        out.names.truncate(bound + 1);
        out.faces.truncate(bound + 1);
        Ok(out)
    }

    /// Checks `∂_i ∂_j = ∂_{j-1} ∂_i` for `i < j` on every cell.
    pub fn check_identities(&self) -> Result<()> {
        for c in self.all_cells().filter(|c| c.dim >= 2) {
            let s = Simplex::from(c);
            for j in 0..=c.dim {
                for i in 0..j {
                    let lhs = self.face(self.face(s, j), i);
                    let rhs = self.face(self.face(s, i), j - 1);
                    if lhs != rhs {
                        return Err(Error::InvalidData(format!(
                            "simplicial identity d{i} d{j} = d{} d{i} fails on {}",
                            j - 1,
                            self.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental construction of an [`SSet`], validated on `build`.
#[derive(Clone, Debug)]
pub struct SSetBuilder {
    dim_bound: usize,
    exhaustive: bool,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    lookup: BTreeMap<(usize, String), usize>,
}

impl SSetBuilder {
    pub fn new(dim_bound: usize, exhaustive: bool) -> Self {
        SSetBuilder {
            dim_bound,
            exhaustive,
            names: alloc::vec![Vec::new(); dim_bound + 1],
            faces: alloc::vec![Vec::new(); dim_bound + 1],
            lookup: BTreeMap::new(),
        }
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, |v| v.len())
    }

    pub fn add_cell(&mut self, dim: usize, name: &str, faces: Vec<Simplex>) -> Result<Cell> {
        if dim > self.dim_bound {
            return Err(Error::DimensionBound {
                requested: dim,
                bound: self.dim_bound,
            });
        }
        if dim >= MAX_DIM {
            return Err(Error::SizeGuard(format!("dimension {dim}")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::InvalidData(format!(
                "cell {name} of dimension {dim} has {} faces, expected {expected}",
                faces.len()
            )));
        }
        for f in &faces {
            if f.dim() + 1 != dim {
                return Err(Error::InvalidData(format!(
                    "cell {name}: a face has dimension {} instead of {}",
                    f.dim(),
                    dim - 1
                )));
            }
            if f.cell.index >= self.cell_count(f.cell.dim) {
                return Err(Error::InvalidData(format!(
                    "cell {name}: face refers to a missing cell"
                )));
            }
            if f.cell.dim > 0 && (f.word.mask() >> (dim - 1)) != 0 {
                return Err(Error::InvalidData(format!("cell {name}: malformed word")));
            }
        }
        if self.lookup.contains_key(&(dim, name.to_string())) {
            return Err(Error::InvalidData(format!(
                "duplicate cell name {name} in dimension {dim}"
            )));
        }
        let index = self.names[dim].len();
        self.names[dim].push(name.to_string());
        self.faces[dim].push(faces);
        self.lookup.insert((dim, name.to_string()), index);
        Ok(Cell::new(dim, index))
    }

    pub fn build(self) -> Result<SSet> {
        let s = SSet {
            dim_bound: self.dim_bound,
            exhaustive: self.exhaustive,
            names: self.names,
            faces: self.faces,
            lookup: self.lookup,
        };
        for c in s.all_cells().filter(|c| c.dim >= 1) {
            for f in s.cell_faces(c) {
                if f.word.mask() >> (c.dim - 1) != 0 {
                    return Err(Error::InvalidData(format!(
                        "cell {}: word outside its domain",
                        s.name(c)
                    )));
                }
            }
        }
        s.check_identities()?;
        Ok(s)
    }
}

/// Levelwise data of a simplicial set given by face and degeneracy actions on
/// indices, turned into EZ form. Element `x` of level `n` is decomposed as
/// `decomposition[n][x]`.
pub struct Levels {
    pub sset: SSet,
    pub decomposition: Vec<Vec<Simplex>>,
    pub element_of_cell: Vec<Vec<usize>>,
}

/// Build an [`SSet`] from level sizes and operator tables.
///
/// `face(n, x, i)` is the index of `∂_i x` in level `n-1`; `degen(n, x, i)` is the
/// index of `s_i x` in level `n+1`, needed for `n < dim_bound`.
pub fn from_levels(
    sizes: &[usize],
    exhaustive: bool,
    face: impl Fn(usize, usize, usize) -> usize,
    degen: impl Fn(usize, usize, usize) -> usize,
    name: impl Fn(usize, usize) -> String,
) -> Result<Levels> {
    if sizes.is_empty() {
        return Err(Error::InvalidData("no levels".into()));
    }
    let bound = sizes.len() - 1;
    let mut decomposition: Vec<Vec<Option<Simplex>>> =
        sizes.iter().map(|&s| alloc::vec![None; s]).collect();
    let mut element_of_cell: Vec<Vec<usize>> = alloc::vec![Vec::new(); bound + 1];
    let mut b = SSetBuilder::new(bound, exhaustive);
    for n in 0..=bound {
        if n > 0 {
            for y in 0..sizes[n - 1] {
                let dy = decomposition[n - 1][y].expect("lower level decomposed");
                for i in 0..n {
                    let z = degen(n - 1, y, i);
                    let dz = dy.degenerate(i);
                    match decomposition[n][z] {
                        None => decomposition[n][z] = Some(dz),
                        Some(prev) if prev != dz => {
                            return Err(Error::InvalidData(format!(
                                "level {n} element {z} has two EZ decompositions"
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        for x in 0..sizes[n] {
            if decomposition[n][x].is_some() {
                continue;
            }
            let mut faces = Vec::new();
            if n > 0 {
                for i in 0..=n {
                    let f = face(n, x, i);
                    faces.push(decomposition[n - 1][f].expect("lower level decomposed"));
                }
            }
            let c = b.add_cell(n, &name(n, x), faces)?;
            element_of_cell[n].push(x);
            decomposition[n][x] = Some(Simplex::from(c));
        }
    }
    let sset = b.build()?;
    let decomposition = decomposition
        .into_iter()
        .map(|v| v.into_iter().map(|s| s.unwrap()).collect())
        .collect();
    Ok(Levels {
        sset,
        decomposition,
        element_of_cell,
    })
}

#[cfg(test)]
mod tests;
