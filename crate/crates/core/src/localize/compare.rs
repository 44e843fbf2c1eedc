use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::colimit::hom_via_colimit;
use super::gz::{gz_left_fractions, Cospan, GzFractions};
use super::ho::{ho_of_qcat, HoCategory};
use super::slice::fraction_space_lf;
use crate::error::{Error, Result};
use crate::exfunctor::{ex_plus, ExLevels};
use crate::fractions::check_proper_clf;
use crate::marked::{MarkedCategory, MarkedNerve};

fn require_proper(c: &MarkedCategory) -> Result<()> {
    match check_proper_clf(c).witness() {
        Some(w) => Err(Error::Precondition(format!("proper calculus of left fractions fails: {w:?}"))),
        None => Ok(()),
    }
}

/// Class of each vertex of `LF(x, y)` in `π₀` and in the gz hom, or `None`
/// when the two partitions differ.
fn pi0_assignment(c: &MarkedCategory, n: &MarkedNerve, gz: &GzFractions, x: usize, y: usize) -> Result<Option<usize>> {
    let lf = fraction_space_lf(&n.marked, n.nerve.vertex_of(x), n.nerve.vertex_of(y), 1)?;
    let (labels, count) = lf.components();
    let mut to_gz: Vec<Option<usize>> = alloc::vec![None; count];
    let mut from_gz: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        let (f, w) = lf.vertex_edges(i);
        let cs = Cospan {
            f: n.nerve.morphism_of(f),
            w: n.nerve.morphism_of(w),
        };
        debug_assert!(c.is_marked(cs.w));
        let m = gz.class_of(cs).ok_or_else(|| Error::InvalidData("cospan without a class".into()))?;
        match to_gz[l] {
            Some(k) if k != m => return Ok(None),
            _ => to_gz[l] = Some(m),
        }
        if *from_gz.entry(m).or_insert(l) != l {
            return Ok(None);
        }
    }
    let onto = from_gz.len() == gz.hom_size(x, y);
    Ok(if onto { Some(count) } else { None })
}

/// `π₀ LF(x, y)` of the marked nerve is in bijection with the gz hom
/// `x → y`, through the class of each vertex `(f, w)`.
pub fn pi0_mapping_check(c: &MarkedCategory, x: usize, y: usize) -> Result<bool> {
    require_proper(c)?;
    let n = c.nerve(2);
    let gz = gz_left_fractions(c)?;
    Ok(pi0_assignment(c, &n, &gz, x, y)?.is_some())
}

/// Hom sizes for one ordered pair of objects. Sizes that were not computed
/// (after an earlier failure) are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomRow {
    pub source: String,
    pub target: String,
    pub gz: usize,
    pub colimit: usize,
    pub pi0: Option<usize>,
    pub ho: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub iso: bool,
    pub hom_table: Vec<HomRow>,
    pub witnesses: Vec<String>,
}

/// The cospan of a level-1 element of `Ex₊` of a nerve.
fn cospan_of(ex: &ExLevels, n: &MarkedNerve, e: usize) -> Cospan {
    let s = &ex.shapes[1];
    let edge = |a: u32, b: u32| -> usize {
        let inner = s.simplex_of(&[a, b]).expect("edge of sd[1]");
        n.nerve.morphism_of(ex.elements[1][e].image(inner))
    };
    Cospan {
        f: edge(0b01, 0b11),
        w: edge(0b10, 0b11),
    }
}

/// Identifies `Ho(Ex₊(N C, W))` with the gz localization. Returns the
/// morphism map `Ho → gz` if it is a well-defined isomorphism commuting
/// with both functors out of `C`, else a witness.
fn ho_to_gz(
    c: &MarkedCategory,
    n: &MarkedNerve,
    ex: &ExLevels,
    ho: &HoCategory,
    gz: &GzFractions,
) -> core::result::Result<Vec<usize>, String> {
    let cat = c.base();
    let object = |v: crate::sset::Cell| ex.vertex_images(0, ex.element_of_cell[0][v.index])[0].index;
    for v in ex.sset.cells(0) {
        if object(v) != v.index {
            return Err(format!("Ex vertex {} is not object {}", v.index, v.index));
        }
    }
    let mut map = alloc::vec![usize::MAX; ho.category.morphism_count()];
    let mut by_cospan = BTreeMap::new();
    for e in 0..ex.level(1).len() {
        let cs = cospan_of(ex, n, e);
        let m = ho.morphism_of(ex.simplex(1, e));
        let g = gz.class_of(cs).ok_or_else(|| format!("cospan ({}, {}) has no class", cat.name(cs.f), cat.name(cs.w)))?;
        by_cospan.insert(cs, m);
        if map[m] == usize::MAX {
            map[m] = g;
        } else if map[m] != g {
            return Err(format!(
                "Ho morphism {} meets gz classes {} and {}",
                ho.category.name(m),
                gz.category.name(map[m]),
                gz.category.name(g)
            ));
        }
    }
    let mut seen = alloc::vec![false; gz.category.morphism_count()];
    for (m, &g) in map.iter().enumerate() {
        if g == usize::MAX {
            return Err(format!("Ho morphism {} has no level-1 representative", ho.category.name(m)));
        }
        if seen[g] {
            return Err(format!("gz class {} is hit twice", gz.category.name(g)));
        }
        seen[g] = true;
    }
    if let Some(g) = seen.iter().position(|&s| !s) {
        return Err(format!("gz class {} is not hit", gz.category.name(g)));
    }
    let h = &ho.category;
    for a in 0..h.morphism_count() {
        for b in 0..h.morphism_count() {
            if let Some(ba) = h.compose(b, a) {
                if gz.category.compose(map[b], map[a]) != Some(map[ba]) {
                    return Err(format!("composite {} after {} is not preserved", h.name(b), h.name(a)));
                }
            }
        }
    }
    for f in 0..cat.morphism_count() {
        let cs = Cospan {
            f,
            w: cat.identity(cat.cod(f)),
        };
        let m = by_cospan.get(&cs).ok_or_else(|| format!("max* image of {} is missing", cat.name(f)))?;
        if map[*m] != gz.functor[f] {
            return Err(format!("functors out of C disagree on {}", cat.name(f)));
        }
    }
    Ok(map)
}

/// Compares the gz localization with the filtered colimit homs, `π₀` of the
/// fraction spaces and `Ho(Ex₊(N C, W))` at levels ≤ 2.
pub fn compare_localizations(c: &MarkedCategory) -> Result<CompareReport> {
    require_proper(c)?;
    let cat = c.base();
    let gz = gz_left_fractions(c)?;
    let n = c.nerve(2);
    let mut witnesses = Vec::new();
    let (ho_table, ho_ok) = match ex_plus(&n.marked, 2).and_then(|ex| {
        let ho = ho_of_qcat(&ex.sset)?;
        Ok((ex, ho))
    }) {
        Ok((ex, ho)) => {
            let ok = match ho_to_gz(c, &n, &ex, &ho, &gz) {
                Ok(_) => true,
                Err(w) => {
                    witnesses.push(w);
                    false
                }
            };
            (Some(ho), ok)
        }
        Err(Error::NotQuasicategory(w)) => {
            witnesses.push(format!("Ex₊ is not a quasicategory: {w}"));
            (None, false)
        }
        Err(e) => return Err(e),
    };
    let mut iso = ho_ok;
    let mut hom_table = Vec::new();
    for x in 0..cat.object_count() {
        for y in 0..cat.object_count() {
            let colim = hom_via_colimit(c, x, y)?;
            let bij = colim.to_gz(&gz);
            let mut hit = alloc::vec![false; gz.category.morphism_count()];
            for &g in &bij {
                hit[g] = true;
            }
            let colimit_ok = colim.count == gz.hom_size(x, y) && gz.category.hom(x, y).iter().all(|&g| hit[g]);
            if !colimit_ok {
                witnesses.push(format!(
                    "colimit hom {} -> {} is not in bijection with gz",
                    cat.object_name(x),
                    cat.object_name(y)
                ));
            }
            let pi0 = pi0_assignment(c, &n, &gz, x, y)?;
            if pi0.is_none() {
                witnesses.push(format!(
                    "π₀ LF({}, {}) is not in bijection with gz",
                    cat.object_name(x),
                    cat.object_name(y)
                ));
            }
            iso &= colimit_ok && pi0.is_some();
            hom_table.push(HomRow {
                source: cat.object_name(x).into(),
                target: cat.object_name(y).into(),
                gz: gz.hom_size(x, y),
                colimit: colim.count,
                pi0,
                ho: ho_table.as_ref().map(|h| h.category.hom(x, y).len()),
            });
        }
    }
    Ok(CompareReport {
        iso,
        hom_table,
        witnesses,
    })
}
