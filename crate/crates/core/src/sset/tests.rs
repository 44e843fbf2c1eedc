use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn walking_arrow() -> FinCategory {
    FinCategory::from_poset(&Poset::chain(1))
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Counts maps A → X by trying every assignment of same-dimensional simplices
/// to non-degenerate cells and keeping the face-compatible ones.
fn brute_force_map_count(a: &SSet, x: &SSet) -> usize {
    let cells: Vec<Cell> = a.all_cells().collect();
    let options: Vec<Vec<Simplex>> = cells.iter().map(|c| x.simplices(c.dim).unwrap()).collect();
    let mut count = 0;
    let mut idx = vec![0usize; cells.len()];
    if options.iter().any(|o| o.is_empty()) {
        return 0;
    }
    loop {
        let mut images: Vec<Vec<Simplex>> = (0..=a.dim_bound()).map(|_| Vec::new()).collect();
        for (i, c) in cells.iter().enumerate() {
            images[c.dim].push(options[i][idx[i]]);
        }
        if SMap::new(images).validate(a, x).is_ok() {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == cells.len() {
                return count;
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn standard_simplex_counts_are_binomial() {
    for n in 0..5 {
        let d = standard_simplex(n);
        let expected: Vec<usize> = (0..=n).map(|k| binomial(n + 1, k + 1)).collect();
        assert_eq!(d.counts(), expected);
    }
    assert_eq!(standard_simplex(0).counts(), vec![1]);
    assert_eq!(standard_simplex(1).counts(), vec![2, 1]);
    assert_eq!(standard_simplex(2).counts(), vec![3, 3, 1]);
}

#[test]
fn boundaries_and_horns() {
    assert_eq!(boundary(1).unwrap().counts(), vec![2, 0]);
    assert_eq!(horn(2, 1).unwrap().counts(), vec![3, 2, 0]);
    assert_eq!(horn(3, 1).unwrap().counts(), vec![4, 6, 3, 0]);
    assert!(horn(2, 3).is_err());
    let (h, inc) = horn_inclusion(3, 2).unwrap();
    inc.validate(&h, &standard_simplex(3)).unwrap();
    assert!(inc.is_injective());
}

#[test]
fn poset_nerves() {
    let two = Poset::chain(1);
    let x = nerve_poset(&two, 3);
    assert!(find_isomorphism(&x, &standard_simplex(1)).unwrap().is_some());

    // non-empty subsets of {0,1} under inclusion: {0} < {0,1} > {1}
    let p = Poset::from_fn(names(&["0", "1", "01"]), |a, b| {
        let sets = [0b01u32, 0b10, 0b11];
        sets[a] & !sets[b] == 0
    })
    .unwrap();
    let x = nerve_poset(&p, 2);
    assert_eq!(x.counts(), vec![3, 2, 0]);
    assert!(x.is_exhaustive());

    let anti = Poset::from_fn(names(&["a", "b", "c"]), |a, b| a == b).unwrap();
    assert_eq!(nerve_poset(&anti, 2).counts(), vec![3, 0, 0]);
}

/// Chains of composable non-identity morphisms, counted directly.
fn chain_count(c: &FinCategory, len: usize) -> usize {
    if len == 0 {
        return c.object_count();
    }
    let nonid: Vec<usize> = (0..c.morphism_count()).filter(|&f| !c.is_identity(f)).collect();
    let mut ends: Vec<usize> = nonid.iter().map(|&f| c.cod(f)).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for &e in &ends {
            for &g in &nonid {
                if c.dom(g) == e {
                    next.push(c.cod(g));
                }
            }
        }
        ends = next;
    }
    ends.len()
}

#[test]
fn category_nerves() {
    let point = FinCategory::from_poset(&Poset::chain(0));
    assert_eq!(nerve_category(&point, 3).counts(), vec![1, 0, 0, 0]);
    let arrow = nerve_category(&walking_arrow(), 3);
    assert!(find_isomorphism(&arrow, &standard_simplex(1).with_bound(3).unwrap()).unwrap().is_some());
    let iso = FinCategory::walking_isomorphism();
    let x = nerve_category(&iso, 3);
    let expected: Vec<usize> = (0..=3).map(|k| chain_count(&iso, k)).collect();
    assert_eq!(expected, vec![2, 2, 2, 2]);
    assert_eq!(x.counts(), expected);
    assert!(!x.is_exhaustive());
}

#[test]
fn category_nerve_translates_chains() {
    let c = FinCategory::free_on_dag(&["a", "b", "c"], &[("f", 0, 1), ("g", 1, 2)], &[]).unwrap();
    let n = CategoryNerve::new(&c, 3);
    let f = c.find_morphism("f").unwrap();
    let g = c.find_morphism("g").unwrap();
    let s = n.simplex_of_chain(&[f, g]);
    assert_eq!(s.dim(), 2);
    assert_eq!(n.morphism_of(n.sset.face(s, 1)), c.compose(g, f).unwrap());
    let id_b = c.identity(1);
    let d = n.simplex_of_chain(&[f, id_b, g]);
    assert!(d.is_degenerate());
    assert_eq!(n.chain_of(d), vec![f, id_b, g]);
    assert!(n.sset.is_exhaustive());
}

#[test]
fn joins() {
    let pt = standard_simplex(0).with_bound(3).unwrap();
    let j = join(&pt, &pt, 3).unwrap();
    assert!(find_isomorphism(&j, &standard_simplex(1).with_bound(3).unwrap()).unwrap().is_some());
    let d1 = standard_simplex(1).with_bound(3).unwrap();
    let j = join(&d1, &pt, 3).unwrap();
    let iso = find_isomorphism(&j, &standard_simplex(2).with_bound(3).unwrap()).unwrap();
    assert!(iso.is_some());
    let empty = SSet::empty(3);
    let y = horn(2, 1).unwrap().with_bound(3).unwrap();
    let j = join(&empty, &y, 3).unwrap();
    assert!(find_isomorphism(&j, &y).unwrap().is_some());
}

#[test]
fn join_counts_follow_the_formula() {
    let cases = [
        (horn(2, 0).unwrap(), boundary(2).unwrap()),
        (standard_simplex(1), horn(2, 1).unwrap()),
        (boundary(1).unwrap(), standard_simplex(2)),
    ];
    for (x, y) in cases {
        let bound = 4;
        let (x, y) = (x.with_bound(bound).unwrap(), y.with_bound(bound).unwrap());
        let j = join(&x, &y, bound).unwrap();
        // all simplices, degenerate included, per level
        for n in 0..=bound {
            let lhs = j.simplices(n).unwrap().len();
            let mut rhs = x.simplices(n).unwrap().len() + y.simplices(n).unwrap().len();
            for i in 0..n {
                rhs += x.simplices(i).unwrap().len() * y.simplices(n - 1 - i).unwrap().len();
            }
            assert_eq!(lhs, rhs, "level {n}");
        }
    }
}

/// Non-degenerate pairs of monotone surjection data, counted by brute force over
/// pairs of monotone maps `[n] → [p]`, `[n] → [q]` that are jointly injective.
fn product_cell_count(p: usize, q: usize, n: usize) -> usize {
    let mut count = 0;
    fn monotone(n: usize, max: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..=n {
            let mut next = Vec::new();
            for v in &out {
                let lo = v.last().copied().unwrap_or(0);
                for x in lo..=max {
                    let mut w = v.clone();
                    w.push(x);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
    for a in monotone(n, p) {
        for b in monotone(n, q) {
            let pts: Vec<(usize, usize)> = a.iter().copied().zip(b.iter().copied()).collect();
            if pts.windows(2).all(|w| w[0] != w[1]) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn products() {
    let d1 = standard_simplex(1);
    let sq = product(&d1, &d1, 2).unwrap();
    assert_eq!(sq.sset.counts(), vec![4, 5, 2]);
    let expected: Vec<usize> = (0..=2).map(|n| product_cell_count(1, 1, n)).collect();
    assert_eq!(sq.sset.counts(), expected);

    let d2 = standard_simplex(2);
    let prism = product(&d2, &d1, 3).unwrap();
    let expected: Vec<usize> = (0..=3).map(|n| product_cell_count(2, 1, n)).collect();
    assert_eq!(prism.sset.counts(), expected);
    assert_eq!(prism.sset.cell_count(3), binomial(3, 1));

    let x = horn(2, 1).unwrap();
    let pt = standard_simplex(0).with_bound(2).unwrap();
    let px = product(&x, &pt, 2).unwrap();
    assert!(find_isomorphism(&px.sset, &x).unwrap().is_some());
    px.first_projection().validate(&px.sset, &x).unwrap();
    px.second_projection().validate(&px.sset, &pt).unwrap();
}

#[test]
fn product_components_round_trip() {
    let d2 = standard_simplex(2);
    let d1 = standard_simplex(1);
    let pr = product(&d2, &d1, 3).unwrap();
    for n in 0..=3 {
        for s in pr.sset.simplices(n).unwrap() {
            let (a, b) = pr.components(s);
            assert_eq!(pr.pair(a, b), s);
        }
    }
}

#[test]
fn map_enumeration_examples() {
    let x = nerve_category(&FinCategory::walking_isomorphism(), 2);
    let pt = standard_simplex(0);
    assert_eq!(enumerate_maps(&pt, &x).unwrap().len(), x.cell_count(0));

    let p = Poset::from_fn(names(&["0", "1", "01"]), |a, b| {
        let sets = [0b01u32, 0b10, 0b11];
        sets[a] & !sets[b] == 0
    })
    .unwrap();
    let sd1 = nerve_poset(&p, 2);
    let d1 = standard_simplex(1);
    let maps = enumerate_maps(&sd1, &d1).unwrap();
    // monotone maps from the three-element poset to {0 < 1}
    let monotone = (0..8u32)
        .filter(|bits| {
            let f = |i: usize| (bits >> i) & 1;
            f(0) <= f(2) && f(1) <= f(2)
        })
        .count();
    assert_eq!(maps.len(), monotone);
    assert_eq!(maps.len(), 5);
    for m in &maps {
        m.validate(&sd1, &d1).unwrap();
    }
    assert_eq!(enumerate_maps(&boundary(1).unwrap(), &d1).unwrap().len(), 4);
}

#[test]
fn map_enumeration_matches_brute_force() {
    let iso = nerve_category(&FinCategory::walking_isomorphism(), 3);
    let cases: Vec<(SSet, SSet)> = vec![
        (horn(2, 1).unwrap(), standard_simplex(2)),
        (standard_simplex(1), boundary(2).unwrap()),
        (horn(2, 0).unwrap(), iso.clone()),
        (boundary(2).unwrap(), iso.clone()),
        (standard_simplex(2), standard_simplex(1)),
        (boundary(1).unwrap(), horn(2, 1).unwrap()),
    ];
    for (a, x) in cases {
        let fast = enumerate_maps(&a, &x).unwrap();
        let mut dedup = fast.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), fast.len());
        assert_eq!(fast.len(), brute_force_map_count(&a, &x));
    }
}

#[test]
fn map_enumeration_refuses_unknown_dimensions() {
    let x = nerve_category(&FinCategory::walking_isomorphism(), 1);
    assert!(matches!(
        enumerate_maps(&standard_simplex(2), &x),
        Err(crate::Error::DimensionBound { .. })
    ));
}

#[test]
fn quasicategory_checks() {
    let iso = nerve_category(&FinCategory::walking_isomorphism(), 3);
    assert!(is_quasicategory_upto(&iso, 3).unwrap().holds());
    let h = horn(2, 1).unwrap();
    let v = is_quasicategory_upto(&h, 2).unwrap();
    let w = v.witness().expect("the horn itself has no filler");
    assert_eq!((w.n, w.k), (2, 1));
    assert!(is_quasicategory_upto(&standard_simplex(3), 3).unwrap().holds());
    assert!(!is_quasicategory_upto(&boundary(2).unwrap(), 2).unwrap().holds());
}

#[test]
fn opposite_is_an_involution() {
    let x = nerve_category(&FinCategory::walking_isomorphism(), 3);
    assert_eq!(x.opposite().opposite(), x);
    let h = horn(3, 1).unwrap();
    assert_eq!(h.opposite().opposite(), h);
    let op = h.opposite();
    op.check_identities().unwrap();
    // the opposite of Λ³_1 is Λ³_2
    assert!(find_isomorphism(&op, &horn(3, 2).unwrap()).unwrap().is_some());
}

#[test]
fn degeneracy_then_face_is_identity() {
    let pr = product(&standard_simplex(2), &standard_simplex(1), 3).unwrap();
    for n in 0..=2 {
        for s in pr.sset.simplices(n).unwrap() {
            for i in 0..=n {
                let d = s.degenerate(i);
                assert_eq!(pr.sset.face(d, i), s);
                assert_eq!(pr.sset.face(d, i + 1), s);
            }
        }
    }
}

fn arb_monotone(len: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..=max, len).prop_map(|mut v| {
        v.sort();
        v
    })
}

proptest! {
    #[test]
    fn action_is_functorial(
        cell in 0usize..3,
        word in 0u32..4,
        phi in (1usize..5).prop_flat_map(|p| arb_monotone(p, 4)),
        psi_seed in proptest::collection::vec(0usize..8, 1..5),
    ) {
        let pr = product(&standard_simplex(2), &standard_simplex(1), 3).unwrap();
        let x = &pr.sset;
        let c = Cell::new(3, cell % x.cell_count(3));
        let s = Simplex::new(c, DegeneracyWord::from_mask(word)).apply(DegeneracyWord::IDENTITY);
        let n = s.dim();
        let phi: Vec<usize> = phi.iter().map(|&v| v.min(n)).collect();
        let p = phi.len() - 1;
        let mut psi: Vec<usize> = psi_seed.iter().map(|&v| v % (p + 1)).collect();
        psi.sort();
        let lhs = x.act(x.act(s, &phi), &psi);
        let comp: Vec<usize> = psi.iter().map(|&j| phi[j]).collect();
        let rhs = x.act(s, &comp);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ez_decomposition_is_unique(cell in 0usize..6, i in 0usize..3, j in 0usize..4) {
        // two ways of producing the same degenerate simplex agree
        let x = nerve_category(&FinCategory::walking_isomorphism(), 3);
        let c = Cell::new(1, cell % x.cell_count(1));
        let s = Simplex::from(c);
        let j = j % 3;
        let i = i % 2;
        if j <= i {
            let lhs = s.degenerate(i).degenerate(j);
            let rhs = s.degenerate(j).degenerate(i + 1);
            prop_assert_eq!(lhs, rhs);
        }
        let d = s.degenerate(i);
        prop_assert_eq!(x.act(d, &[0, 1, 2]), d);
    }
}
