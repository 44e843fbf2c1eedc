use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::shape::{full, SubsetNerve, Side};
use crate::error::{Error, Result};
use crate::marked::{MarkedPoset, MarkedSSet};
use crate::sset::{Cell, Poset, PosetNerve, SMap};
use crate::Verdict;

/// Partition data for a simple inner horn decomposition. `a[n][j]` and
/// `b[n][j]` hold the part numbered `j + 1` in dimension `n`, and `d[n][j]`
/// is the face index used on `a[n][j]`. Missing levels have no parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub a: Vec<Vec<Vec<Cell>>>,
    pub b: Vec<Vec<Vec<Cell>>>,
    pub d: Vec<Vec<usize>>,
}

impl Decomposition {
    fn a_parts(&self, n: usize) -> &[Vec<Cell>] {
        self.a.get(n).map_or(&[], |v| v.as_slice())
    }

    fn b_parts(&self, n: usize) -> &[Vec<Cell>] {
        self.b.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn is_empty(&self) -> bool {
        self.a.iter().chain(self.b.iter()).all(|lvl| lvl.iter().all(|p| p.is_empty()))
    }

    /// Number of cells in every part, `(A sizes, B sizes)` per dimension.
    pub fn sizes(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let f = |v: &Vec<Vec<Vec<Cell>>>| v.iter().map(|l| l.iter().map(|p| p.len()).collect()).collect();
        (f(&self.a), f(&self.b))
    }
}

/// The first clause of the definition found violated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SihdViolation {
    /// `A⁰`, `A¹` or `B⁰` is non-empty.
    LowDimension { part: String },
    /// `b(1) ≠ 1`.
    FirstLevel { parts: usize },
    /// `a(n+1) ≠ b(n)`.
    PartCounts { n: usize, a_next: usize, b: usize },
    /// `d(k)` is not an inner index, or missing.
    FaceIndex { n: usize, k: usize },
    /// `∂_{d(k)}` is not a bijection `Aⁿ_k → Bⁿ⁻¹_k`.
    Bijection { n: usize, k: usize },
    /// A cell of `A²₁` with marked `∂₁` and an unmarked face.
    Marking { cell: Cell },
    /// A face of a cell of `Aⁿ_k` appears too late.
    FaceMembership { n: usize, k: usize, cell: Cell, face: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Image,
    A(usize),
    B(usize),
}

/// Validates a decomposition for the injective marked map `f : X → Y`.
/// Errors when the parts do not partition the cells outside the image.
pub fn validate_sihd(f: &SMap, x: &MarkedSSet, y: &MarkedSSet, dec: &Decomposition) -> Result<Verdict<SihdViolation>> {
    let yb = y.base();
    f.validate(x.base(), yb)?;
    if !f.is_injective() {
        return Err(Error::Precondition("the map is not injective".into()));
    }
    let top = yb.dim_bound();
    let mut slot: BTreeMap<Cell, Slot> = BTreeMap::new();
    for c in x.base().all_cells() {
        slot.insert(f.cell_image(c).cell, Slot::Image);
    }
    for (which, parts) in [("A", &dec.a), ("B", &dec.b)] {
        for (n, lvl) in parts.iter().enumerate() {
            for (j, part) in lvl.iter().enumerate() {
                for &c in part {
                    if c.dim != n || c.index >= yb.cell_count(n) {
                        return Err(Error::MalformedPartition(format!("{which}^{n}_{} lists a foreign cell", j + 1)));
                    }
                    let s = if which == "A" { Slot::A(j) } else { Slot::B(j) };
                    if let Some(prev) = slot.insert(c, s) {
                        let what = if prev == Slot::Image { "the image" } else { "another part" };
                        return Err(Error::MalformedPartition(format!(
                            "{} in {which}^{n}_{} is also in {what}",
                            yb.name(c),
                            j + 1
                        )));
                    }
                }
            }
        }
    }
    if let Some(c) = yb.all_cells().find(|c| !slot.contains_key(c)) {
        return Err(Error::MalformedPartition(format!("{} is not covered", yb.name(c))));
    }

    for (part, cells) in [("A^0", dec.a_parts(0)), ("A^1", dec.a_parts(1)), ("B^0", dec.b_parts(0))] {
        if cells.iter().any(|p| !p.is_empty()) {
            return Ok(Verdict::Fails(SihdViolation::LowDimension { part: part.into() }));
        }
    }
    if dec.is_empty() {
        return Ok(Verdict::Holds);
    }
    if dec.b_parts(1).len() != 1 {
        return Ok(Verdict::Fails(SihdViolation::FirstLevel { parts: dec.b_parts(1).len() }));
    }
    for n in 1..top {
        let (a_next, b) = (dec.a_parts(n + 1).len(), dec.b_parts(n).len());
        if a_next != b {
            return Ok(Verdict::Fails(SihdViolation::PartCounts { n, a_next, b }));
        }
    }
    for n in 2..=top {
        for (j, part) in dec.a_parts(n).iter().enumerate() {
            let k = j + 1;
            let d = match dec.d.get(n).and_then(|v| v.get(j)) {
                Some(&d) if (1..n).contains(&d) => d,
                _ => return Ok(Verdict::Fails(SihdViolation::FaceIndex { n, k })),
            };
            // clause 1
            let target: BTreeSet<Cell> = dec.b_parts(n - 1).get(j).into_iter().flatten().copied().collect();
            let mut seen = BTreeSet::new();
            for &u in part {
                let face = yb.cell_face(u, d);
                if face.is_degenerate() || !target.contains(&face.cell) || !seen.insert(face.cell) {
                    return Ok(Verdict::Fails(SihdViolation::Bijection { n, k }));
                }
            }
            if seen.len() != target.len() {
                return Ok(Verdict::Fails(SihdViolation::Bijection { n, k }));
            }
            // clause 2
            if n == 2 && k == 1 {
                for &u in part {
                    let faces = yb.cell_faces(u);
                    if y.is_marked(faces[1]) && !faces.iter().all(|&e| y.is_marked(e)) {
                        return Ok(Verdict::Fails(SihdViolation::Marking { cell: u }));
                    }
                }
            }
            // clause 3
            for &u in part {
                for (i, &v) in yb.cell_faces(u).iter().enumerate() {
                    if i == d {
                        continue;
                    }
                    let p = v.cell.dim;
                    let ok = match slot[&v.cell] {
                        Slot::Image | Slot::A(_) => true,
                        Slot::B(l) => p < n - 1 || l + 1 < k,
                    };
                    if !ok {
                        return Ok(Verdict::Fails(SihdViolation::FaceMembership { n, k, cell: u, face: i }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// An inclusion of marked simplicial sets with a proposed decomposition.
#[derive(Clone, Debug)]
pub struct SihdInstance {
    pub x: MarkedSSet,
    pub y: MarkedSSet,
    pub inclusion: SMap,
    pub decomposition: Decomposition,
}

impl SihdInstance {
    pub fn validate(&self) -> Result<Verdict<SihdViolation>> {
        validate_sihd(&self.inclusion, &self.x, &self.y, &self.decomposition)
    }

    /// Cells of `Y` outside the image of `X`.
    pub fn missing_count(&self) -> usize {
        self.y.base().total_cells() - self.x.base().total_cells()
    }
}

/// Largest `n` accepted by [`build_sihd_jk`].
pub const SIHD_MAX_N: usize = 4;

/// `J ⊆ K` inside `Sd₊Δⁿ`: `K` omits `[n] - {k}`; `J` holds the chains of
/// `Sd₊Λⁿ_k` and those whose least subset contains `k`.
pub fn jk_pair(n: usize, k: usize) -> Result<(SubsetNerve, SubsetNerve)> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    if n > SIHD_MAX_N {
        return Err(Error::SizeGuard(format!("n is limited to {SIHD_MAX_N}")));
    }
    let top = full(n);
    let face = top & !(1 << k);
    let sets: Vec<u32> = (1..=top).filter(|&m| m != face).collect();
    let kk = sets.clone();
    let big = SubsetNerve::new(kk, Side::L, n, |_| true)?;
    let small = SubsetNerve::new(sets, Side::L, n, |ch| ch[0] & (1 << k) != 0 || !ch.contains(&top))?;
    Ok((small, big))
}

pub fn build_sihd_jk(n: usize, k: usize) -> Result<SihdInstance> {
    let (j, kn) = jk_pair(n, k)?;
    let inclusion = j.inclusion_into(&kn)?;
    let top = full(n);
    let bit = 1u32 << k;
    let y = kn.sset();
    let mut dec = Decomposition {
        a: alloc::vec![Vec::new(); n + 1],
        b: alloc::vec![Vec::new(); n + 1],
        d: alloc::vec![Vec::new(); n + 1],
    };
    let outside: BTreeSet<Cell> = {
        let image: BTreeSet<Cell> = j.sset().all_cells().map(|c| inclusion.cell_image(c).cell).collect();
        y.all_cells().filter(|c| !image.contains(c)).collect()
    };
    if outside.is_empty() {
        return Ok(SihdInstance {
            x: j.marked.clone(),
            y: kn.marked.clone(),
            inclusion,
            decomposition: Decomposition::default(),
        });
    }
    for m in 1..=n {
        dec.b[m] = alloc::vec![Vec::new(); m];
        if m >= 2 {
            dec.a[m] = alloc::vec![Vec::new(); m - 1];
            dec.d[m] = (1..m).collect();
        }
    }
    for &c in &outside {
        let ch = kn.chain_sets(c.into());
        let m = c.dim;
        debug_assert_eq!(ch[m], top);
        let Some(j) = (1..=m).find(|&j| ch[j] & bit != 0) else {
            return Err(Error::Precondition("chain outside J without k".into()));
        };
        if ch[j] == ch[j - 1] | bit {
            if j >= m {
                return Err(Error::Precondition("chain through the omitted face".into()));
            }
            dec.a[m][j - 1].push(c);
        } else {
            dec.b[m][j - 1].push(c);
        }
    }
    Ok(SihdInstance {
        x: j.marked.clone(),
        y: kn.marked.clone(),
        inclusion,
        decomposition: dec,
    })
}

/// `(P × Δ¹) ⋆ Δ⁰` for a marked poset `P` and a discrete `Q ⊆ P`, with the
/// sub-object glued from `P × Δ¹` and `P ⋆ Δ⁰`.
pub fn build_sihd_prodjoin(p: &MarkedPoset, q: &[usize]) -> Result<SihdInstance> {
    let np = p.poset.len();
    if np > 8 {
        return Err(Error::SizeGuard("marked posets are limited to 8 elements".into()));
    }
    let top = 2 * np;
    let mut names: Vec<String> = Vec::new();
    for x in 0..np {
        for e in 0..2 {
            names.push(format!("({},{e})", p.poset.name(x)));
        }
    }
    names.push("T".into());
    let le = |a: usize, b: usize| {
        if b == top {
            return true;
        }
        if a == top {
            return false;
        }
        p.poset.le(a / 2, b / 2) && a % 2 <= b % 2
    };
    let yp = Poset::from_fn(names, le)?;
    let height = longest_chain(&yp);
    let qset: BTreeSet<usize> = q.iter().copied().collect();
    let mark = |a: usize, b: usize| {
        if b == top {
            qset.contains(&(a / 2))
        } else {
            p.is_marked(a / 2, b / 2)
        }
    };
    let yn = PosetNerve::restricted(&yp, height, |_| true)?;
    let outside = |ch: &[usize]| ch[0] % 2 == 0 && ch[0] != top && *ch.last().unwrap() == top && ch.len() > 1;
    let xn = PosetNerve::restricted(&yp, height, |ch| !outside(ch))?;
    let marking = |nerve: &PosetNerve| {
        MarkedSSet::from_fn(nerve.sset.clone(), |c| {
            let ch = &nerve.chains[1][c.index];
            mark(ch[0], ch[1])
        })
    };
    let y = marking(&yn);
    let x = marking(&xn);
    let inclusion = xn.map_by(&yn, |a| a)?;
    let mut dec = Decomposition {
        a: alloc::vec![Vec::new(); height + 1],
        b: alloc::vec![Vec::new(); height + 1],
        d: alloc::vec![Vec::new(); height + 1],
    };
    for m in 1..=height {
        dec.b[m] = alloc::vec![Vec::new(); m];
        if m >= 2 {
            dec.a[m] = alloc::vec![Vec::new(); m - 1];
            dec.d[m] = (1..m).collect();
        }
    }
    for (m, level) in yn.chains.iter().enumerate() {
        for (idx, ch) in level.iter().enumerate() {
            if !outside(ch) {
                continue;
            }
            let c = Cell::new(m, idx);
            // ch = (x₀,0) ≤ … ≤ (x_{m-1}, ε_{m-1}) ≤ T
            match (1..m).find(|&j| ch[j] % 2 == 1) {
                Some(j) if ch[j] / 2 == ch[j - 1] / 2 => dec.a[m][j - 1].push(c),
                Some(j) => dec.b[m][j - 1].push(c),
                None => dec.b[m][m - 1].push(c),
            }
        }
    }
    Ok(SihdInstance {
        x,
        y,
        inclusion,
        decomposition: dec,
    })
}

fn longest_chain(p: &Poset) -> usize {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (0..n).filter(|&b| p.lt(b, a)).count());
    let mut best = alloc::vec![0usize; n];
    for &a in &order {
        for b in 0..n {
            if p.lt(b, a) {
                best[a] = best[a].max(best[b] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}
