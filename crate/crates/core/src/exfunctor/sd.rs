use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fractions::{full, subset_name, Side, SubsetNerve};
use crate::marked::MarkedSSet;
use crate::sset::{Cell, DegeneracyWord, SMap, SSet, SSetBuilder, Simplex};

/// Largest `n` for which `sd₊[n]` is built.
pub const SD_MAX_N: usize = 3;

/// `sd₊[n]` (side `L`) or its dual (side `R`).
pub fn sd_shape(n: usize, side: Side) -> Result<SubsetNerve> {
    if n > SD_MAX_N {
        return Err(Error::SizeGuard(format!("subdivisions are limited to n <= {SD_MAX_N}")));
    }
    SubsetNerve::new((1..=full(n)).collect(), side, n, |_| true)
}

pub fn sd_plus(n: usize) -> Result<SubsetNerve> {
    sd_shape(n, Side::L)
}

pub fn sd_op(n: usize) -> Result<SubsetNerve> {
    sd_shape(n, Side::R)
}

/// Image of a subset under a monotone map given by its values.
pub fn push_subset(mask: u32, phi: &[usize]) -> u32 {
    phi.iter().enumerate().filter(|&(a, _)| mask & (1 << a) != 0).fold(0, |acc, (_, &b)| acc | (1 << b))
}

/// `sd(φ) : sd[m] → sd[n]` for monotone `φ : [m] → [n]`.
pub fn sd_operator(phi: &[usize], src: &SubsetNerve, tgt: &SubsetNerve) -> Result<SMap> {
    src.map_to(tgt, |m| push_subset(m, phi))
}

/// The coface `δ_i : [m-1] → [m]` as a list of values.
pub fn coface(m: usize, i: usize) -> Vec<usize> {
    (0..=m).filter(|&v| v != i).collect()
}

/// The codegeneracy `σ_i : [m+1] → [m]`.
pub fn codegeneracy(m: usize, i: usize) -> Vec<usize> {
    (0..=m + 1).map(|v| if v <= i { v } else { v - 1 }).collect()
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&b| mask & (1 << b) != 0).collect()
}

/// `Sd₊X` (or its dual) as a marked simplicial set. A `p`-cell is a
/// non-degenerate cell `u` of `X` with a strict chain of `p + 1` subsets of
/// its vertices whose largest member is all of them.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub side: Side,
    pub marked: MarkedSSet,
    pub cells: Vec<Vec<(Cell, Vec<u32>)>>,
    index: BTreeMap<(Cell, Vec<u32>), usize>,
}

impl Subdivision {
    pub fn sset(&self) -> &SSet {
        self.marked.base()
    }

    /// The simplex represented by `u` and a weak chain of subsets of its
    /// vertices, after moving to normal form.
    pub fn simplex_of(&self, x: &SSet, u: Simplex, chain: &[u32]) -> Option<Simplex> {
        let (w, chain) = normalize(x, u, chain);
        let (strict, word) = strip(&chain);
        let idx = self.index.get(&(w, strict))?;
        Some(Simplex::new(Cell::new(chain.len() - 1 - word.len(), *idx), word))
    }

    pub fn vertex_of(&self, u: Cell) -> Option<Cell> {
        let top = full(u.dim);
        self.index.get(&(u, alloc::vec![top])).map(|&i| Cell::new(0, i))
    }
}

/// Pushes `(u, chain)` to a non-degenerate cell and a chain whose union is
/// all of its vertices.
fn normalize(x: &SSet, u: Simplex, chain: &[u32]) -> (Cell, Vec<u32>) {
    let union = chain.iter().fold(0, |a, &m| a | m);
    let support = bits(union);
    let v = x.act(u, &support);
    // reindex onto the support, then push through the degeneracy of v
    let chain = chain
        .iter()
        .map(|&m| {
            support
                .iter()
                .enumerate()
                .filter(|&(_, &s)| m & (1 << s) != 0)
                .fold(0u32, |acc, (j, _)| acc | (1 << v.word.eval(j)))
        })
        .collect();
    (v.cell, chain)
}

fn strip(chain: &[u32]) -> (Vec<u32>, DegeneracyWord) {
    let mut strict = Vec::new();
    let mut mask = 0u32;
    for (j, &a) in chain.iter().enumerate() {
        if j > 0 && chain[j - 1] == a {
            mask |= 1 << (j - 1);
        } else {
            strict.push(a);
        }
    }
    (strict, DegeneracyWord::from_mask(mask))
}

/// Strict chains of non-empty subsets of `[m]` with `p + 1` members ending
/// (side `L`) or starting (side `R`) at `[m]`.
fn top_chains(m: usize, p: usize, side: Side) -> Vec<Vec<u32>> {
    let top = full(m);
    let mut out = Vec::new();
    let mut cur = alloc::vec![top];
    fn rec(cur: &mut Vec<u32>, p: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == p + 1 {
            let mut c = cur.clone();
            c.reverse();
            out.push(c);
            return;
        }
        let last = *cur.last().unwrap();
        let mut sub = (last - 1) & last;
        while sub != 0 {
            cur.push(sub);
            rec(cur, p, out);
            cur.pop();
            sub = (sub - 1) & last;
        }
    }
    rec(&mut cur, p, &mut out);
    out.sort_by(|a, b| {
        let ka: Vec<(u32, u32)> = a.iter().map(|&m| (m.count_ones(), m)).collect();
        let kb: Vec<(u32, u32)> = b.iter().map(|&m| (m.count_ones(), m)).collect();
        ka.cmp(&kb)
    });
    if side == Side::R {
        for c in &mut out {
            c.reverse();
        }
    }
    out
}

fn chain_name(x: &SSet, u: Cell, chain: &[u32], side: Side) -> String {
    let sep = if side == Side::L { "<" } else { ">" };
    let parts: Vec<String> = chain.iter().map(|&m| subset_name(m)).collect();
    format!("{}|{}", x.name(u), parts.join(sep))
}

/// `Sd₊X` up to `dim_bound`; `X` must be exhaustive since every cell of `X`
/// contributes to all lower dimensions.
pub fn subdivide(x: &SSet, dim_bound: usize, side: Side) -> Result<Subdivision> {
    if !x.is_exhaustive() {
        return Err(Error::Precondition("subdivision needs an exhaustive simplicial set".into()));
    }
    let top = x.top_dim().unwrap_or(0);
    if top > SD_MAX_N + 1 {
        return Err(Error::SizeGuard(format!("subdivision of a {top}-dimensional set")));
    }
    let mut b = SSetBuilder::new(dim_bound, true);
    let mut cells: Vec<Vec<(Cell, Vec<u32>)>> = alloc::vec![Vec::new(); dim_bound + 1];
    let mut index = BTreeMap::new();
    for p in 0..=dim_bound.min(top) {
        for m in p..=top {
            for u in x.cells(m) {
                for chain in top_chains(m, p, side) {
                    let mut faces = Vec::new();
                    if p > 0 {
                        for i in 0..=p {
                            let mut f = chain.clone();
                            f.remove(i);
                            let (w, fc) = normalize(x, Simplex::from(u), &f);
                            let (strict, word) = strip(&fc);
                            let idx = index[&(w, strict.clone())];
                            faces.push(Simplex::new(Cell::new(strict.len() - 1, idx), word));
                        }
                    }
                    let c = b.add_cell(p, &chain_name(x, u, &chain, side), faces)?;
                    index.insert((u, chain.clone()), c.index);
                    cells[p].push((u, chain));
                }
            }
        }
    }
    let sset = b.build()?;
    let marked = MarkedSSet::from_fn(sset.clone(), |e| {
        let (_, ch) = &cells[1][e.index];
        let (a, b) = (ch[0], ch[1]);
        match side {
            Side::L => 31 - a.leading_zeros() == 31 - b.leading_zeros(),
            Side::R => a.trailing_zeros() == b.trailing_zeros(),
        }
    });
    Ok(Subdivision { side, marked, cells, index })
}
