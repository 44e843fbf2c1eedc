use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Cell, DegeneracyWord, FinCategory, Poset, SMap, SSet, SSetBuilder, Simplex};
use crate::error::{Error, Result};

/// Nerve of a finite poset together with the chain of every cell.
#[derive(Clone, Debug)]
pub struct PosetNerve {
    pub sset: SSet,
    poset: Poset,
    pub chains: Vec<Vec<Vec<usize>>>,
    index: BTreeMap<Vec<usize>, Cell>,
}

impl PosetNerve {
    pub fn new(p: &Poset, dim_bound: usize) -> PosetNerve {
        Self::with_separator(p, dim_bound, "<")
    }

    /// The simplicial subset on the chains accepted by `keep`, which must be
    /// closed under taking sub-chains.
    pub fn restricted(p: &Poset, dim_bound: usize, keep: impl Fn(&[usize]) -> bool) -> Result<PosetNerve> {
        Self::build(p, dim_bound, "<", keep)
    }

    pub(crate) fn with_separator(p: &Poset, dim_bound: usize, sep: &str) -> PosetNerve {
        Self::build(p, dim_bound, sep, |_| true).expect("poset nerve is valid")
    }

    fn build(p: &Poset, dim_bound: usize, sep: &str, keep: impl Fn(&[usize]) -> bool) -> Result<PosetNerve> {
        let mut chains: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); dim_bound + 1];
        chains[0] = (0..p.len()).map(|a| alloc::vec![a]).filter(|c| keep(c)).collect();
        let mut longer_exists = false;
        for n in 1..=dim_bound + 1 {
            let mut next = Vec::new();
            for ch in &chains[n - 1] {
                let last = *ch.last().unwrap();
                for b in 0..p.len() {
                    if p.lt(last, b) {
                        let mut c = ch.clone();
                        c.push(b);
                        if keep(&c) {
                            next.push(c);
                        }
                    }
                }
            }
            if n == dim_bound + 1 {
                longer_exists = !next.is_empty();
            } else {
                chains[n] = next;
            }
        }
        let mut b = SSetBuilder::new(dim_bound, !longer_exists);
        let mut index = BTreeMap::new();
        for (n, level) in chains.iter().enumerate() {
            for ch in level {
                let name: Vec<&str> = ch.iter().map(|&a| p.name(a)).collect();
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| {
                            let mut f = ch.clone();
                            f.remove(i);
                            index.get(&f).map(|&c| Simplex::from(c)).ok_or_else(|| {
                                Error::InvalidData("chain family is not closed under faces".into())
                            })
                        })
                        .collect::<Result<Vec<_>>>()?
                };
                let c = b.add_cell(n, &name.join(sep), faces)?;
                index.insert(ch.clone(), c);
            }
        }
        Ok(PosetNerve {
            sset: b.build()?,
            poset: p.clone(),
            chains,
            index,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// The simplicial map to `target` induced by a map of underlying sets;
    /// errors if some chain does not land in `target`.
    pub fn map_by(&self, target: &PosetNerve, f: impl Fn(usize) -> usize) -> Result<SMap> {
        let mut images = Vec::new();
        for level in &self.chains {
            let mut im = Vec::new();
            for ch in level {
                let mapped: Vec<usize> = ch.iter().map(|&a| f(a)).collect();
                let s = target.simplex(&mapped).ok_or_else(|| {
                    let names: Vec<&str> = mapped.iter().map(|&a| target.poset.name(a)).collect();
                    Error::Precondition(format!("chain {} is not in the target", names.join("<")))
                })?;
                im.push(s);
            }
            images.push(im);
        }
        Ok(SMap::new(images))
    }

    pub fn cell_of_chain(&self, chain: &[usize]) -> Option<Cell> {
        self.index.get(chain).copied()
    }

    /// The simplex of a weakly increasing chain.
    pub fn simplex(&self, chain: &[usize]) -> Option<Simplex> {
        let mut strict = Vec::with_capacity(chain.len());
        let mut mask = 0u32;
        for (j, &a) in chain.iter().enumerate() {
            if j > 0 && chain[j - 1] == a {
                mask |= 1 << (j - 1);
            } else {
                strict.push(a);
            }
        }
        let c = self.index.get(&strict)?;
        Some(Simplex::new(*c, DegeneracyWord::from_mask(mask)))
    }

    /// The weakly increasing chain of any simplex.
    pub fn chain(&self, s: Simplex) -> Vec<usize> {
        let base = &self.chains[s.cell.dim][s.cell.index];
        (0..=s.dim()).map(|j| base[s.word.eval(j)]).collect()
    }

    /// The simplicial map induced by a monotone map of posets.
    pub fn induced_map(&self, target: &PosetNerve, f: &[usize]) -> Option<SMap> {
        let mut images = Vec::new();
        for level in &self.chains {
            let mut im = Vec::new();
            for ch in level {
                let mapped: Vec<usize> = ch.iter().map(|&a| f[a]).collect();
                im.push(target.simplex(&mapped)?);
            }
            images.push(im);
        }
        Some(SMap::new(images))
    }
}

pub fn nerve_poset(p: &Poset, dim_bound: usize) -> SSet {
    PosetNerve::new(p, dim_bound).sset
}

/// The simplex of `x = nerve_poset(p, _)` spanned by a weakly increasing chain.
pub fn poset_chain_simplex(x: &SSet, p: &Poset, chain: &[usize]) -> Option<Simplex> {
    let mut strict: Vec<usize> = Vec::new();
    let mut mask = 0u32;
    for (j, &a) in chain.iter().enumerate() {
        if j > 0 && chain[j - 1] == a {
            mask |= 1 << (j - 1);
        } else {
            strict.push(a);
        }
    }
    let name: Vec<&str> = strict.iter().map(|&a| p.name(a)).collect();
    let c = x.find(strict.len() - 1, &name.join("<"))?;
    Some(Simplex::new(c, DegeneracyWord::from_mask(mask)))
}

fn simplex_separator(n: usize) -> &'static str {
    if n <= 9 {
        ""
    } else {
        ","
    }
}

/// `Δⁿ` as a poset nerve; cells are named by their vertex digits.
pub fn standard_simplex_nerve(n: usize) -> PosetNerve {
    PosetNerve::with_separator(&Poset::chain(n), n, simplex_separator(n))
}

pub fn standard_simplex(n: usize) -> SSet {
    standard_simplex_nerve(n).sset
}

fn subset_name(set: &[usize], n: usize) -> String {
    let parts: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    parts.join(simplex_separator(n))
}

/// `∂Δⁿ` with its inclusion into `Δⁿ`.
pub fn boundary_inclusion(n: usize) -> Result<(SSet, SMap)> {
    if n == 0 {
        return Err(Error::OutOfRange("the boundary needs n ≥ 1".into()));
    }
    let d = standard_simplex(n);
    d.sub_complex(|c| c.dim < n)
}

pub fn boundary(n: usize) -> Result<SSet> {
    Ok(boundary_inclusion(n)?.0)
}

/// `Λⁿ_k` with its inclusion into `Δⁿ`.
pub fn horn_inclusion(n: usize, k: usize) -> Result<(SSet, SMap)> {
    if n == 0 || k > n {
        return Err(Error::OutOfRange(format!("horn ({n}, {k})")));
    }
    let nerve = standard_simplex_nerve(n);
    let d = &nerve.sset;
    d.sub_complex(|c| {
        let ch = &nerve.chains[c.dim][c.index];
        !(c.dim == n || (c.dim + 1 == n && !ch.contains(&k)))
    })
}

pub fn horn(n: usize, k: usize) -> Result<SSet> {
    Ok(horn_inclusion(n, k)?.0)
}

/// Name of the face of `Δⁿ` opposite vertex `i`.
pub(crate) fn simplex_face_name(n: usize, i: usize) -> String {
    let set: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
    subset_name(&set, n)
}

/// Nerve of a finite category with translation between morphisms and edges.
#[derive(Clone, Debug)]
pub struct CategoryNerve {
    pub sset: SSet,
    pub category: FinCategory,
    pub chains: Vec<Vec<Vec<usize>>>,
    index: BTreeMap<Vec<usize>, Cell>,
}

impl CategoryNerve {
    pub fn new(c: &FinCategory, dim_bound: usize) -> CategoryNerve {
        let nonid: Vec<usize> = (0..c.morphism_count()).filter(|&f| !c.is_identity(f)).collect();
        let mut chains: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); dim_bound + 1];
        let mut longer_exists = false;
        if dim_bound >= 1 {
            chains[1] = nonid.iter().map(|&f| alloc::vec![f]).collect();
        } else {
            longer_exists = !nonid.is_empty();
        }
        for n in 2..=dim_bound + 1 {
            let mut next = Vec::new();
            for ch in &chains[n - 1] {
                let last = *ch.last().unwrap();
                for &g in &nonid {
                    if c.dom(g) == c.cod(last) {
                        let mut x = ch.clone();
                        x.push(g);
                        next.push(x);
                    }
                }
            }
            if n == dim_bound + 1 {
                longer_exists = !next.is_empty();
            } else {
                chains[n] = next;
            }
        }
        let mut b = SSetBuilder::new(dim_bound, !longer_exists);
        for x in 0..c.object_count() {
            b.add_cell(0, c.object_name(x), Vec::new()).expect("object names are unique");
        }
        let mut nerve = CategoryNerve {
            sset: SSet::empty(0),
            category: c.clone(),
            chains,
            index: BTreeMap::new(),
        };
        for n in 1..=dim_bound {
            for i in 0..nerve.chains[n].len() {
                let ch = nerve.chains[n][i].clone();
                let names: Vec<&str> = ch.iter().map(|&f| c.name(f)).collect();
                let faces = (0..=n)
                    .map(|k| {
                        let start = if k == 0 { c.cod(ch[0]) } else { c.dom(ch[0]) };
                        nerve.simplex_of_chain_from(&face_chain(c, &ch, k), start)
                    })
                    .collect();
                let cell = b.add_cell(n, &names.join(";"), faces).expect("chain names are unique");
                nerve.index.insert(ch, cell);
            }
        }
        nerve.sset = b.build().expect("category nerve is valid");
        nerve
    }

    /// Simplex of a composable chain (identities allowed) starting at `start`.
    pub fn simplex_of_chain_from(&self, chain: &[usize], start: usize) -> Simplex {
        let c = &self.category;
        let mut strict = Vec::new();
        let mut mask = 0u32;
        for (j, &f) in chain.iter().enumerate() {
            if c.is_identity(f) {
                mask |= 1 << j;
            } else {
                strict.push(f);
            }
        }
        let cell = if strict.is_empty() {
            let obj = chain.first().map_or(start, |&f| c.dom(f));
            Cell::new(0, obj)
        } else {
            self.index[&strict]
        };
        Simplex::new(cell, DegeneracyWord::from_mask(mask))
    }

    /// Simplex of a non-empty composable chain.
    pub fn simplex_of_chain(&self, chain: &[usize]) -> Simplex {
        self.simplex_of_chain_from(chain, chain.first().map_or(0, |&f| self.category.dom(f)))
    }

    pub fn edge_of(&self, f: usize) -> Simplex {
        self.simplex_of_chain(&[f])
    }

    pub fn vertex_of(&self, x: usize) -> Cell {
        Cell::new(0, x)
    }

    /// The morphism of a 1-simplex.
    pub fn morphism_of(&self, s: Simplex) -> usize {
        debug_assert_eq!(s.dim(), 1);
        if s.is_degenerate() {
            self.category.identity(s.cell.index)
        } else {
            self.chains[1][s.cell.index][0]
        }
    }

    /// The chain of morphisms along the spine of a simplex.
    pub fn chain_of(&self, s: Simplex) -> Vec<usize> {
        (0..s.dim()).map(|j| self.morphism_of(self.sset.edge(s, j, j + 1))).collect()
    }
}

fn face_chain(c: &FinCategory, ch: &[usize], k: usize) -> Vec<usize> {
    let n = ch.len();
    if k == 0 {
        ch[1..].to_vec()
    } else if k == n {
        ch[..n - 1].to_vec()
    } else {
        let mut out = ch[..k - 1].to_vec();
        out.push(c.compose(ch[k], ch[k - 1]).expect("composable chain"));
        out.extend_from_slice(&ch[k + 1..]);
        out
    }
}

pub fn nerve_category(c: &FinCategory, dim_bound: usize) -> SSet {
    CategoryNerve::new(c, dim_bound).sset
}

fn check_known(x: &SSet, bound: usize) -> Result<()> {
    for n in 0..=bound {
        x.ensure_known(n)?;
    }
    Ok(())
}

/// The join `X ⋆ Y` up to `dim_bound`.
pub fn join(x: &SSet, y: &SSet, dim_bound: usize) -> Result<SSet> {
    check_known(x, dim_bound)?;
    check_known(y, dim_bound)?;
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    enum Key {
        L(Cell),
        R(Cell),
        P(Cell, Cell),
    }
    let mut index: BTreeMap<Key, Cell> = BTreeMap::new();
    let mut b = SSetBuilder::new(dim_bound, false);
    let lift = |index: &BTreeMap<Key, Cell>, k: Key, w: DegeneracyWord| Simplex::new(index[&k], w);
    for n in 0..=dim_bound {
        for a in x.cells(n) {
            let faces = if n == 0 {
                Vec::new()
            } else {
                x.cell_faces(a).iter().map(|f| lift(&index, Key::L(f.cell), f.word)).collect()
            };
            let c = b.add_cell(n, &format!("l:{}", x.name(a)), faces)?;
            index.insert(Key::L(a), c);
        }
        for a in y.cells(n) {
            let faces = if n == 0 {
                Vec::new()
            } else {
                y.cell_faces(a).iter().map(|f| lift(&index, Key::R(f.cell), f.word)).collect()
            };
            let c = b.add_cell(n, &format!("r:{}", y.name(a)), faces)?;
            index.insert(Key::R(a), c);
        }
        for i in 0..n {
            let j = n - 1 - i;
            for a in x.cells(i) {
                for bb in y.cells(j) {
                    let mut faces = Vec::new();
                    for k in 0..=n {
                        let f = if k <= i {
                            if i == 0 {
                                lift(&index, Key::R(bb), DegeneracyWord::IDENTITY)
                            } else {
                                let fa = x.cell_face(a, k);
                                lift(&index, Key::P(fa.cell, bb), fa.word)
                            }
                        } else if j == 0 {
                            lift(&index, Key::L(a), DegeneracyWord::IDENTITY)
                        } else {
                            let fb = y.cell_face(bb, k - i - 1);
                            lift(&index, Key::P(a, fb.cell), DegeneracyWord::from_mask(fb.word.mask() << (i + 1)))
                        };
                        faces.push(f);
                    }
                    let c = b.add_cell(n, &format!("l:{}*r:{}", x.name(a), y.name(bb)), faces)?;
                    index.insert(Key::P(a, bb), c);
                }
            }
        }
    }
    let exhaustive = match (x.top_dim(), y.top_dim()) {
        (None, None) => true,
        (Some(p), None) => x.is_exhaustive() && p <= dim_bound,
        (None, Some(q)) => y.is_exhaustive() && q <= dim_bound,
        (Some(p), Some(q)) => x.is_exhaustive() && y.is_exhaustive() && p + q + 1 <= dim_bound,
    };
    let mut s = b.build()?;
    s.exhaustive = exhaustive;
    Ok(s)
}

/// The product `X × Y` with its projections and pair lookup.
#[derive(Clone, Debug)]
pub struct Product {
    pub sset: SSet,
    pub pairs: Vec<Vec<(Simplex, Simplex)>>,
    index: BTreeMap<(Simplex, Simplex), Cell>,
}

impl Product {
    /// The simplex of the product with the given components.
    pub fn pair(&self, a: Simplex, b: Simplex) -> Simplex {
        assert_eq!(a.dim(), b.dim(), "components must have equal dimension");
        let common = DegeneracyWord::from_mask(a.word.mask() & b.word.mask());
        let qa = Simplex::new(a.cell, a.word.quotient(common));
        let qb = Simplex::new(b.cell, b.word.quotient(common));
        Simplex::new(self.index[&(qa, qb)], common)
    }

    /// Components of any simplex of the product.
    pub fn components(&self, s: Simplex) -> (Simplex, Simplex) {
        let (a, b) = self.pairs[s.cell.dim][s.cell.index];
        (a.apply(s.word), b.apply(s.word))
    }

    pub fn first_projection(&self) -> SMap {
        SMap::new(self.pairs.iter().map(|v| v.iter().map(|p| p.0).collect()).collect())
    }

    pub fn second_projection(&self) -> SMap {
        SMap::new(self.pairs.iter().map(|v| v.iter().map(|p| p.1).collect()).collect())
    }
}

pub fn product(x: &SSet, y: &SSet, dim_bound: usize) -> Result<Product> {
    check_known(x, dim_bound)?;
    check_known(y, dim_bound)?;
    let mut b = SSetBuilder::new(dim_bound, false);
    let mut index = BTreeMap::new();
    let mut pairs: Vec<Vec<(Simplex, Simplex)>> = alloc::vec![Vec::new(); dim_bound + 1];
    for n in 0..=dim_bound {
        let xs = x.simplices(n)?;
        let ys = y.simplices(n)?;
        let mut level = Vec::new();
        for &a in &xs {
            for &bb in &ys {
                if a.word.mask() & bb.word.mask() == 0 {
                    level.push((a, bb));
                }
            }
        }
        level.sort();
        for (a, bb) in level {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let fa = x.face(a, i);
                        let fb = y.face(bb, i);
                        let common = DegeneracyWord::from_mask(fa.word.mask() & fb.word.mask());
                        let qa = Simplex::new(fa.cell, fa.word.quotient(common));
                        let qb = Simplex::new(fb.cell, fb.word.quotient(common));
                        Simplex::new(index[&(qa, qb)], common)
                    })
                    .collect()
            };
            let name = format!("({},{})", x.simplex_name(a), y.simplex_name(bb));
            let c = b.add_cell(n, &name, faces)?;
            index.insert((a, bb), c);
            pairs[n].push((a, bb));
        }
    }
    let exhaustive = match (x.top_dim(), y.top_dim()) {
        (Some(p), Some(q)) => x.is_exhaustive() && y.is_exhaustive() && p + q <= dim_bound,
        _ => true,
    };
    let mut s = b.build()?;
    s.exhaustive = exhaustive;
    Ok(Product { sset: s, pairs, index })
}
