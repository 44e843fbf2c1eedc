use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ex::ExLevels;
use crate::error::Result;
use crate::marked::maximal_marking;
use crate::sset::{enumerate_maps, DegeneracyWord, Poset, PosetNerve, SSet, Simplex};
use crate::Verdict;

/// A map out of `sd[m]` recorded as the image of every strict chain of
/// subsets.
pub type ChainTable = BTreeMap<Vec<u32>, Simplex>;

/// Kan's `Ex` on levels `m ≤ bound`, computed from unmarked maps out of the
/// nerves of the subset posets.
#[derive(Clone, Debug)]
pub struct KanEx {
    pub levels: Vec<Vec<ChainTable>>,
}

fn subset_nerve(m: usize) -> Result<(PosetNerve, Vec<u32>)> {
    let sets: Vec<u32> = (1..(1u32 << (m + 1))).collect();
    let names = sets.iter().map(|s| format!("{s:b}")).collect();
    let p = Poset::from_fn(names, |a, b| sets[a] & !sets[b] == 0)?;
    Ok((PosetNerve::new(&p, m), sets))
}

fn lookup(t: &ChainTable, chain: &[u32]) -> Simplex {
    let mut strict = Vec::new();
    let mut mask = 0u32;
    for (j, &a) in chain.iter().enumerate() {
        if j > 0 && chain[j - 1] == a {
            mask |= 1 << (j - 1);
        } else {
            strict.push(a);
        }
    }
    t[&strict].apply(DegeneracyWord::from_mask(mask))
}

fn image(mask: u32, phi: impl Fn(usize) -> usize) -> u32 {
    (0..32).filter(|&a| mask & (1 << a) != 0).fold(0, |acc, a| acc | (1 << phi(a)))
}

impl KanEx {
    pub fn new(x: &SSet, bound: usize) -> Result<KanEx> {
        let mut levels = Vec::new();
        for m in 0..=bound {
            let (nerve, sets) = subset_nerve(m)?;
            let mut tables = Vec::new();
            for f in enumerate_maps(&nerve.sset, x)? {
                let mut t = ChainTable::new();
                for (d, level) in nerve.chains.iter().enumerate() {
                    for (i, ch) in level.iter().enumerate() {
                        let key: Vec<u32> = ch.iter().map(|&a| sets[a]).collect();
                        t.insert(key, f.cell_image(crate::sset::Cell::new(d, i)));
                    }
                }
                tables.push(t);
            }
            tables.sort();
            levels.push(tables);
        }
        Ok(KanEx { levels })
    }

    /// `∂_i t`: restrict along the coface `δ_i`.
    pub fn face(&self, m: usize, t: &ChainTable, i: usize) -> ChainTable {
        let (nerve, sets) = subset_nerve(m - 1).expect("subset nerve");
        let delta = |a: usize| if a < i { a } else { a + 1 };
        let mut out = ChainTable::new();
        for level in &nerve.chains {
            for ch in level {
                let key: Vec<u32> = ch.iter().map(|&a| sets[a]).collect();
                let pushed: Vec<u32> = key.iter().map(|&s| image(s, delta)).collect();
                out.insert(key, lookup(t, &pushed));
            }
        }
        out
    }

    /// `s_i t`: restrict along the codegeneracy `σ_i`.
    pub fn degeneracy(&self, m: usize, t: &ChainTable, i: usize) -> ChainTable {
        let (nerve, sets) = subset_nerve(m + 1).expect("subset nerve");
        let sigma = |a: usize| if a <= i { a } else { a - 1 };
        let mut out = ChainTable::new();
        for level in &nerve.chains {
            for ch in level {
                let key: Vec<u32> = ch.iter().map(|&a| sets[a]).collect();
                let pushed: Vec<u32> = key.iter().map(|&s| image(s, sigma)).collect();
                out.insert(key, lookup(t, &pushed));
            }
        }
        out
    }
}

/// The chain table of an element of a level cache.
pub fn table_of(ex: &ExLevels, m: usize, e: usize) -> ChainTable {
    let shape = &ex.shapes[m];
    let f = &ex.elements[m][e];
    let s = shape.sset();
    let mut t = ChainTable::new();
    for c in s.all_cells() {
        t.insert(shape.chain_sets(c.into()), f.cell_image(c));
    }
    t
}

/// Compares `Ex₊` of the maximal marking with Kan's `Ex`, level by level
/// and operator by operator.
pub fn compare_with_kan_ex(x: &SSet, levels: usize) -> Result<Verdict<String>> {
    let ex = super::ex::ex_plus(&maximal_marking(x), levels)?;
    let kan = KanEx::new(x, levels)?;
    compare_levels(&ex, &kan)
}

pub fn compare_levels(ex: &ExLevels, kan: &KanEx) -> Result<Verdict<String>> {
    for m in 0..=ex.bound() {
        let mut ours: Vec<ChainTable> = (0..ex.level(m).len()).map(|e| table_of(ex, m, e)).collect();
        ours.sort();
        if ours != kan.levels[m] {
            return Ok(Verdict::Fails(format!(
                "level {m}: {} marked maps against {} maps",
                ours.len(),
                kan.levels[m].len()
            )));
        }
        for e in 0..ex.level(m).len() {
            let t = table_of(ex, m, e);
            if m > 0 {
                for i in 0..=m {
                    if kan.face(m, &t, i) != table_of(ex, m - 1, ex.faces[m][e][i]) {
                        return Ok(Verdict::Fails(format!("level {m}: face {i} of element {e} differs")));
                    }
                }
            }
            if m < ex.bound() {
                for i in 0..=m {
                    if kan.degeneracy(m, &t, i) != table_of(ex, m + 1, ex.degeneracies[m][e][i]) {
                        return Ok(Verdict::Fails(format!("level {m}: degeneracy {i} of element {e} differs")));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}
