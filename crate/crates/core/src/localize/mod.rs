//! Localizations of marked categories and marked simplicial sets.

mod colimit;
mod compare;
mod filtered;
mod gz;
mod ho;
mod slice;

pub use colimit::{colimit_matches_gz, hom_via_colimit, ColimitHom};
pub use compare::{compare_localizations, pi0_mapping_check, CompareReport, HomRow};
pub use filtered::{
    colimit_preservation_probe, is_filtered_category, marked_coslice, slice_filtered_check, ColimitDiagram,
};
pub use gz::{
    bridged, compose_cospans, composition_is_well_defined, cospans, gz_left_fractions, gz_left_with,
    gz_right_fractions, inverts_marked, CompletionOrder, Cospan, GzFractions,
};
pub use ho::{ho_of_qcat, homotopic_raw, homotopy_is_equivalence, HoCategory};
pub use slice::{
    fraction_space_lf, fraction_space_rf, marked_slice_over, marked_slice_under, slice, FractionSpace, Slice,
    SLICE_MAX_LEVEL,
};

use alloc::vec::Vec;

use crate::sset::FinCategory;

/// An isomorphism `A → B` acting on objects by `obj`, as a morphism map.
pub fn iso_over_objects(a: &FinCategory, b: &FinCategory, obj: &[usize]) -> Option<Vec<usize>> {
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return None;
    }
    let n = a.object_count();
    for x in 0..n {
        for y in 0..n {
            if a.hom(x, y).len() != b.hom(obj[x], obj[y]).len() {
                return None;
            }
        }
    }
    let mut map = alloc::vec![usize::MAX; a.morphism_count()];
    for x in 0..n {
        map[a.identity(x)] = b.identity(obj[x]);
    }
    let order: Vec<usize> = (0..a.morphism_count()).filter(|&f| !a.is_identity(f)).collect();
    let mut used = alloc::vec![false; b.morphism_count()];
    for &i in a.identities() {
        used[map[i]] = true;
    }
    if search_iso(a, b, obj, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn consistent(a: &FinCategory, b: &FinCategory, map: &[usize], f: usize) -> bool {
    let m = a.morphism_count();
    for g in 0..m {
        if map[g] == usize::MAX {
            continue;
        }
        for (p, q) in [(g, f), (f, g)] {
            if let Some(h) = a.compose(p, q) {
                if map[h] != usize::MAX && b.compose(map[p], map[q]) != Some(map[h]) {
                    return false;
                }
            }
        }
    }
    for p in 0..m {
        if map[p] == usize::MAX {
            continue;
        }
        for q in 0..m {
            if map[q] != usize::MAX && a.compose(p, q) == Some(f) && b.compose(map[p], map[q]) != Some(map[f]) {
                return false;
            }
        }
    }
    true
}

fn search_iso(
    a: &FinCategory,
    b: &FinCategory,
    obj: &[usize],
    order: &[usize],
    pos: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(&f) = order.get(pos) else {
        return true;
    };
    for g in b.hom(obj[a.dom(f)], obj[a.cod(f)]) {
        if used[g] {
            continue;
        }
        map[f] = g;
        used[g] = true;
        if consistent(a, b, map, f) && search_iso(a, b, obj, order, pos + 1, map, used) {
            return true;
        }
        used[g] = false;
        map[f] = usize::MAX;
    }
    false
}

/// An isomorphism of categories, trying every object bijection; returns the
/// object map and the morphism map.
pub fn find_category_isomorphism(a: &FinCategory, b: &FinCategory) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = a.object_count();
    if n != b.object_count() {
        return None;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if let Some(m) = iso_over_objects(a, b, &perm) {
            return Some((perm, m));
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
