use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::fractions::{full, Side};
use crate::localize::ho_of_qcat;
use crate::marked::{cylinder, is_marked_homotopy, maximal_marking, minimal_marking, MarkedCategory, MarkedSSet};
use crate::sset::{
    boundary, find_isomorphism, horn, inner_horn_witness, is_quasicategory_upto, standard_simplex, FinCategory, Poset,
    SMap, SSet, Simplex,
};
use crate::util::UnionFind;
use crate::Verdict;

fn walking_marked_arrow() -> MarkedSSet {
    MarkedCategory::everything(FinCategory::from_poset(&Poset::chain(1))).nerve(3).marked
}

#[test]
fn sd_small_cases() {
    assert_eq!(sd_plus(0).unwrap().sset().counts(), vec![1]);
    let s1 = sd_plus(1).unwrap();
    assert_eq!(s1.sset().counts(), vec![3, 2]);
    let marked: Vec<&str> = s1.marked.marked_cells().map(|c| s1.sset().name(c)).collect();
    assert_eq!(marked, ["{1}<{0,1}"]);
    assert!(sd_plus(4).is_err());
}

#[test]
fn sd_marking_census() {
    for n in 0..=3 {
        let s = sd_plus(n).unwrap();
        assert_eq!(s.sset().cell_count(0), (1 << (n + 1)) - 1);
        // oracle: strict inclusions A ⊊ B of non-empty subsets with equal maxima
        let mut pairs = 0;
        let mut dual = 0;
        for a in 1..=full(n) {
            for b in 1..=full(n) {
                if a != b && a & !b == 0 {
                    if 31 - a.leading_zeros() == 31 - b.leading_zeros() {
                        pairs += 1;
                    }
                    if a.trailing_zeros() == b.trailing_zeros() {
                        dual += 1;
                    }
                }
            }
        }
        assert_eq!(s.marked.marked_count(), pairs);
        assert_eq!(sd_op(n).unwrap().marked.marked_count(), dual);
    }
    assert_eq!(sd_plus(2).unwrap().marked.marked_count(), 6);
}

#[test]
fn cosimplicial_identities() {
    // δ_j δ_i = δ_i δ_{j-1} for i < j, checked on the subdivisions
    let s: Vec<_> = (0..=3).map(|m| sd_plus(m).unwrap()).collect();
    for m in 2..=3 {
        for j in 0..=m {
            for i in 0..j {
                let a = sd_operator(&coface(m, j), &s[m - 1], &s[m])
                    .unwrap()
                    .compose(&sd_operator(&coface(m - 1, i), &s[m - 2], &s[m - 1]).unwrap());
                let b = sd_operator(&coface(m, i), &s[m - 1], &s[m])
                    .unwrap()
                    .compose(&sd_operator(&coface(m - 1, j - 1), &s[m - 2], &s[m - 1]).unwrap());
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn subdivision_of_simplices() {
    for n in 0..=3 {
        let sd = subdivide(&standard_simplex(n), n, Side::L).unwrap();
        let shape = sd_plus(n).unwrap();
        let iso = find_isomorphism(sd.sset(), shape.sset()).unwrap().expect("Yoneda");
        // some isomorphism matches the markings; the poset has no automorphisms
        assert!(sd.marked.is_marked_map(&iso, &shape.marked));
    }
}

#[test]
fn subdivision_of_boundary_and_horn() {
    let sd = subdivide(&boundary(2).unwrap(), 1, Side::L).unwrap();
    assert_eq!(sd.sset().counts(), vec![6, 6]);
    let h = horn(2, 1).unwrap();
    let sd = subdivide(&h, 1, Side::L).unwrap();
    assert_eq!(sd.sset().cell_count(0), 5);
    let tops: BTreeSet<usize> = sd.cells[0].iter().map(|(u, _)| u.dim).collect();
    // no vertex comes from the missing 2-cell or the missing edge 02
    assert_eq!(tops, BTreeSet::from([0, 1]));
    assert!(sd.cells[0].iter().all(|(u, _)| h.name(*u) != "02"));
}

/// Union-find over generators `(s, c)` with `s` any simplex of `X` and `c`
/// a weak chain in `sd[m]`, glued along `(s·φ, c) ~ (s, φ(c))`. Returns the
/// number of classes in dimension `p`.
fn coend_classes(x: &SSet, p: usize, side: Side) -> usize {
    let top = x.top_dim().unwrap();
    let chains: Vec<Vec<Vec<u32>>> = (0..=top)
        .map(|m| {
            let shape = sd_shape(m, side).unwrap();
            shape.sset().simplices(p).unwrap().into_iter().map(|s| shape.chain_sets(s)).collect()
        })
        .collect();
    let mut gens: Vec<(Simplex, Vec<u32>)> = Vec::new();
    for m in 0..=top {
        for s in x.simplices(m).unwrap() {
            for c in &chains[m] {
                gens.push((s, c.clone()));
            }
        }
    }
    let pos: alloc::collections::BTreeMap<(Simplex, Vec<u32>), usize> =
        gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let mut uf = UnionFind::new(gens.len());
    for m in 0..=top {
        for s in x.simplices(m).unwrap() {
            for k in 0..=top {
                for phi in monotone(k, m) {
                    let t = x.act(s, &phi);
                    for c in &chains[k] {
                        let pushed: Vec<u32> = c.iter().map(|&a| push_subset(a, &phi)).collect();
                        uf.union(pos[&(t, c.clone())], pos[&(s, pushed)]);
                    }
                }
            }
        }
    }
    uf.labels().1
}

/// Every monotone map `[k] → [m]`.
fn monotone(k: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: usize, m: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=m {
            cur.push(v);
            rec(k, m, v, cur, out);
            cur.pop();
        }
    }
    rec(k, m, 0, &mut cur, &mut out);
    out
}

#[test]
fn coend_matches_union_find() {
    let spaces = [
        standard_simplex(1),
        standard_simplex(2),
        boundary(2).unwrap(),
        horn(2, 1).unwrap(),
        horn(3, 1).unwrap(),
    ];
    for (i, x) in spaces.iter().enumerate() {
        for side in [Side::L, Side::R] {
            let sd = subdivide(x, 2, side).unwrap();
            for p in 0..=2 {
                assert_eq!(sd.sset().simplices(p).unwrap().len(), coend_classes(x, p, side), "space {i} p {p}");
            }
        }
    }
}

#[test]
fn subdivision_of_a_loop() {
    // one vertex, one edge from it to itself
    let mut b = crate::sset::SSetBuilder::new(1, true);
    let v = b.add_cell(0, "v", vec![]).unwrap();
    b.add_cell(1, "e", vec![v.into(), v.into()]).unwrap();
    let x = b.build().unwrap();
    let sd = subdivide(&x, 1, Side::L).unwrap();
    assert_eq!(sd.sset().counts(), vec![2, 2]);
    assert_eq!(sd.marked.marked_count(), 1);
    assert_eq!(coend_classes(&x, 1, Side::L), sd.sset().simplices(1).unwrap().len());
}

#[test]
fn ex_levels_of_walking_arrow() {
    let x = walking_marked_arrow();
    let ex = ex_plus(&x, 2).unwrap();
    assert_eq!(ex.level(0).len(), 2);
    assert_eq!(ex.level(1).len(), 5);
    // oracle: cospans x → z ← y with the right leg marked
    let b = x.base();
    let mut cospans = 0;
    for e1 in b.simplices(1).unwrap() {
        for e2 in b.simplices(1).unwrap() {
            if b.vertex(e1, 1) == b.vertex(e2, 1) && x.is_marked(e2) {
                cospans += 1;
            }
        }
    }
    assert_eq!(cospans, 5);
    let over_x = (0..5).filter(|&e| ex.endpoints(e).1 == b.find(0, "x").or(b.find(0, "0")).unwrap()).count();
    assert_eq!(over_x, 1);
}

#[test]
fn level_zero_is_vertices() {
    let x = maximal_marking(&boundary(2).unwrap());
    let ex = ex_plus(&x, 1).unwrap();
    assert_eq!(ex.level(0).len(), 3);
    for (e, f) in ex.level(0).iter().enumerate() {
        assert_eq!(f.cell_image(crate::sset::Cell::new(0, 0)).cell.index, e);
    }
}

#[test]
fn kan_ex_agreement() {
    assert_eq!(compare_with_kan_ex(&standard_simplex(0), 2).unwrap(), Verdict::Holds);
    assert_eq!(compare_with_kan_ex(&standard_simplex(1), 2).unwrap(), Verdict::Holds);
    assert_eq!(KanEx::new(&standard_simplex(1), 1).unwrap().levels[1].len(), 5);
    assert_eq!(compare_with_kan_ex(&boundary(2).unwrap(), 2).unwrap(), Verdict::Holds);
    assert_eq!(compare_with_kan_ex(&horn(2, 1).unwrap(), 2).unwrap(), Verdict::Holds);
    let c = crate::sset::nerve_category(&FinCategory::walking_isomorphism(), 3);
    assert_eq!(compare_with_kan_ex(&c, 2).unwrap(), Verdict::Holds);
}

#[test]
fn kan_ex_detects_a_marking_difference() {
    let x = minimal_marking(&standard_simplex(1));
    let ex = ex_plus(&x, 1).unwrap();
    let kan = KanEx::new(&standard_simplex(1), 1).unwrap();
    assert!(!compare_levels(&ex, &kan).unwrap().holds());
}

#[test]
fn dual_functor_two_ways() {
    for x in [walking_marked_arrow(), maximal_marking(&boundary(2).unwrap())] {
        let direct = ex_op_direct(&x, 2).unwrap();
        let conj = ex_op(&x, 2).unwrap();
        assert_eq!(direct.sset.counts(), conj.counts());
        assert!(find_isomorphism(&direct.sset, &conj).unwrap().is_some());
    }
}

#[test]
fn max_star_basics() {
    let x = walking_marked_arrow();
    let ex = ex_plus(&x, 2).unwrap();
    let (xt, m) = max_star(&ex).unwrap();
    // vertices go to the constant maps
    for v in xt.cells(0) {
        assert_eq!(m.cell_image(v), ex.simplex(0, v.index));
    }
    // the edge w becomes the cospan (w, id)
    let w = xt.cells(1).next().unwrap();
    let img = m.cell_image(w);
    let e = ex.element_of_cell[1][img.cell.index];
    let (a, z, b) = ex.endpoints(e);
    assert_eq!((a, z, b), (xt.vertex(w.into(), 0), xt.vertex(w.into(), 1), xt.vertex(w.into(), 1)));
    assert!(min_star(&ex).is_err());
    let exr = ex_op_direct(&x, 2).unwrap();
    assert!(min_star(&exr).is_ok());
}

#[test]
fn max_star_sends_marked_edges_to_isomorphisms() {
    let x = walking_marked_arrow();
    let ex = ex_plus(&x, 2).unwrap();
    assert!(is_quasicategory_upto(&ex.sset, 2).unwrap().holds());
    let ho = ho_of_qcat(&ex.sset).unwrap();
    let (xt, m) = max_star(&ex).unwrap();
    for e in xt.cells(1) {
        if x.is_marked(e.into()) {
            let f = ho.morphism_of(m.cell_image(e));
            assert!(ho.category.is_iso(f));
        }
    }
}

#[test]
fn max_star_is_natural() {
    let src = walking_marked_arrow();
    let c = FinCategory::from_poset(&Poset::chain(2));
    let tgt = MarkedCategory::everything(c).nerve(3).marked;
    let a = ex_plus(&src, 2).unwrap();
    let b = ex_plus(&tgt, 2).unwrap();
    let maps = crate::marked::enumerate_marked_maps(&src, &tgt).unwrap();
    assert!(!maps.is_empty());
    for f in maps {
        let ef = ex_map(&f, &a, &b).unwrap();
        let (xa, ua) = max_star(&a).unwrap();
        let (_, ub) = max_star(&b).unwrap();
        let ft = SMap::new(f.images()[..=2].to_vec());
        ft.validate(&xa, &tgt.base().truncate(2)).unwrap();
        assert_eq!(ef.compose(&ua), ub.compose(&ft));
    }
}

#[test]
fn ex_of_nerves_is_a_quasicategory() {
    let good = MarkedCategory::everything(FinCategory::from_poset(&Poset::chain(1)));
    let ex = ex_plus(&good.nerve(3).marked, 2).unwrap();
    assert!(is_quasicategory_upto(&ex.sset, 2).unwrap().holds());
    // a ⇉ b with one arrow marked
    let c = FinCategory::free_on_dag(&["a", "b"], &[("f", 0, 1), ("g", 0, 1)], &[]).unwrap();
    let f = c.find_morphism("f").unwrap();
    let bad = MarkedCategory::from_fn(c, |m| m == f);
    let ex = ex_plus(&bad.nerve(3).marked, 2).unwrap();
    assert!(!is_quasicategory_upto(&ex.sset, 2).unwrap().holds());
}

#[test]
fn outer_horns_for_a_groupoid_like_localization() {
    // a poset with binary joins, fully marked: its localization is a groupoid
    let p = Poset::from_relations(
        ["a", "b", "c", "d"].map(alloc::string::String::from).to_vec(),
        &[(0, 1), (0, 2), (1, 3), (2, 3)],
    )
    .unwrap();
    let m = MarkedCategory::everything(FinCategory::from_poset(&p));
    let ex = ex_plus(&m.nerve(3).marked, 2).unwrap();
    for k in 0..=2 {
        assert!(inner_horn_witness(&ex.sset, 2, k).unwrap().is_none(), "k = {k}");
    }
}

#[test]
fn max_is_a_marked_homotopy_equivalence() {
    for n in 0..=3 {
        let sd = sd_plus(n).unwrap();
        let target = minimal_marking(&standard_simplex(n));
        // max : Sd₊Δⁿ → Δⁿ
        let maxmap = composite_with_extremum(target.base(), Simplex::from(crate::sset::Cell::new(n, 0)), &sd, Side::L);
        maxmap.validate(sd.sset(), target.base()).unwrap();
        assert!(sd.marked.is_marked_map(&maxmap, &target));
        // section i ↦ {0..i}
        let dn = crate::sset::standard_simplex_nerve(n);
        let sec = dn.map_by(&sd.nerve, |i| sd.element(full(i)).unwrap()).unwrap();
        assert!(target.is_marked_map(&sec, &sd.marked));
        assert_eq!(maxmap.compose(&sec), SMap::identity(target.base()));
        // containment homotopy A ⊆ {0..max A}
        let cyl = cylinder(&sd.marked, n + 1).unwrap();
        let cs = cyl.marked.base();
        let images = (0..=cs.dim_bound())
            .map(|d| {
                cs.cells(d)
                    .map(|c| {
                        let (a, e) = cyl.product.components(c.into());
                        let av = sd.chain_sets(a);
                        let ev = crate::sset::standard_simplex_nerve(1).chain(e);
                        let masks: Vec<u32> = av
                            .iter()
                            .zip(ev)
                            .map(|(&m, t)| if t == 0 { m } else { full((31 - m.leading_zeros()) as usize) })
                            .collect();
                        sd.simplex_of(&masks).unwrap()
                    })
                    .collect()
            })
            .collect();
        let h = SMap::new(images);
        assert!(is_marked_homotopy(&h, &cyl, &sd.marked).unwrap());
        let s = sd.sset();
        assert_eq!(h.compose(&cyl.end(s, 0)), SMap::identity(s));
        assert_eq!(h.compose(&cyl.end(s, 1)), sec.compose(&maxmap));
    }
}
