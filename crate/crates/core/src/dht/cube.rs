use alloc::format;
use alloc::vec::Vec;

use super::graph::Graph;
use crate::error::{Error, Result};

/// A cube of the graph nerve: a map `I_∞^n → G` stable in every direction,
/// stored as its values on a window `∏ [0, m_i]` and extended constantly
/// beyond it. Cubes are kept in trimmed form, so translates are identified.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableCube {
    extents: Vec<usize>,
    values: Vec<usize>,
}

fn strides(extents: &[usize]) -> Vec<usize> {
    let mut s = alloc::vec![1; extents.len()];
    for i in (0..extents.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * (extents[i + 1] + 1);
    }
    s
}

fn grid_len(extents: &[usize]) -> usize {
    extents.iter().map(|m| m + 1).product()
}

impl StableCube {
    /// A cube from row-major values over `∏ [0, m_i]`; trimmed on return.
    pub fn new(g: &Graph, extents: Vec<usize>, values: Vec<usize>) -> Result<StableCube> {
        if values.len() != grid_len(&extents) {
            return Err(Error::InvalidData(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid_len(&extents)
            )));
        }
        if values.iter().any(|&v| v >= g.len()) {
            return Err(Error::OutOfRange("a cube value is not a vertex".into()));
        }
        let c = StableCube { extents, values };
        if !c.is_graph_map(g) {
            return Err(Error::InvalidData("adjacent grid points map to non-adjacent vertices".into()));
        }
        Ok(c.trim())
    }

    pub fn vertex(v: usize) -> StableCube {
        StableCube {
            extents: Vec::new(),
            values: alloc::vec![v],
        }
    }

    /// The 1-cube of a walk.
    pub fn walk(g: &Graph, walk: &[usize]) -> Result<StableCube> {
        if walk.is_empty() {
            return Err(Error::InvalidData("empty walk".into()));
        }
        StableCube::new(g, alloc::vec![walk.len() - 1], walk.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at integer coordinates, clamped into the window.
    pub fn at(&self, x: &[i64]) -> usize {
        let s = strides(&self.extents);
        let mut k = 0;
        for (i, &xi) in x.iter().enumerate() {
            let c = xi.clamp(0, self.extents[i] as i64) as usize;
            k += c * s[i];
        }
        self.values[k]
    }

    fn at_grid(&self, x: &[usize]) -> usize {
        let s = strides(&self.extents);
        self.values[x.iter().zip(&s).map(|(a, b)| a * b).sum::<usize>()]
    }

    fn points(extents: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
        let total = grid_len(extents);
        (0..total).map(move |mut k| {
            let mut x = alloc::vec![0; extents.len()];
            for i in (0..extents.len()).rev() {
                x[i] = k % (extents[i] + 1);
                k /= extents[i] + 1;
            }
            x
        })
    }

    pub fn is_graph_map(&self, g: &Graph) -> bool {
        for x in Self::points(&self.extents) {
            let v = self.at_grid(&x);
            for i in 0..self.dim() {
                if x[i] < self.extents[i] {
                    let mut y = x.clone();
                    y[i] += 1;
                    if !g.adjacent(v, self.at_grid(&y)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn build(extents: Vec<usize>, f: impl Fn(&[usize]) -> usize) -> StableCube {
        let values = Self::points(&extents).map(|x| f(&x)).collect();
        StableCube { extents, values }
    }

    /// The slice `x_i = t`, an `(n-1)`-dimensional grid (not trimmed).
    fn slice(&self, i: usize, t: usize) -> StableCube {
        let mut ext = self.extents.clone();
        ext.remove(i);
        Self::build(ext, |y| {
            let mut x = y.to_vec();
            x.insert(i, t);
            self.at_grid(&x)
        })
    }

    /// Drop constant outer slices until none is removable.
    pub fn trim(&self) -> StableCube {
        let mut c = self.clone();
        for i in 0..c.dim() {
            let mut lo = 0;
            let mut hi = c.extents[i];
            while lo < hi && c.slice(i, lo) == c.slice(i, lo + 1) {
                lo += 1;
            }
            while hi > lo && c.slice(i, hi) == c.slice(i, hi - 1) {
                hi -= 1;
            }
            if lo > 0 || hi < c.extents[i] {
                let mut ext = c.extents.clone();
                ext[i] = hi - lo;
                let src = c.clone();
                c = Self::build(ext, |y| {
                    let mut x = y.to_vec();
                    x[i] += lo;
                    src.at_grid(&x)
                });
            }
        }
        c
    }

    pub fn is_trimmed(&self) -> bool {
        self.trim() == *self
    }

    fn check_index(&self, i: usize, n: usize) -> Result<()> {
        if i == 0 || i > n {
            return Err(Error::OutOfRange(format!("cube index {i} outside 1..={n}")));
        }
        Ok(())
    }

    /// `∂_{i,ε}`: the stabilized end layer in direction `i`.
    pub fn face(&self, i: usize, eps: u8) -> Result<StableCube> {
        self.check_index(i, self.dim())?;
        let t = if eps == 0 { 0 } else { self.extents[i - 1] };
        Ok(self.slice(i - 1, t).trim())
    }

    /// `σ_i`: a constant new axis in position `i`.
    pub fn degeneracy(&self, i: usize) -> Result<StableCube> {
        self.check_index(i, self.dim() + 1)?;
        let mut ext = self.extents.clone();
        ext.insert(i - 1, 0);
        let values = self.values.clone();
        Ok(StableCube { extents: ext, values })
    }

    /// `γ_{i,ε}`: axes `i, i+1` read through `max` (ε = 0) or `min` (ε = 1)
    /// of the old axis `i`.
    pub fn connection(&self, i: usize, eps: u8) -> Result<StableCube> {
        self.check_index(i, self.dim())?;
        let m = self.extents[i - 1];
        let mut ext = self.extents.clone();
        ext.insert(i, m);
        Ok(Self::build(ext, |y| {
            let mut x = y.to_vec();
            let b = x.remove(i);
            x[i - 1] = if eps == 0 { x[i - 1].max(b) } else { x[i - 1].min(b) };
            self.at_grid(&x)
        })
        .trim())
    }

    /// The vertices of a 1-cube, as a trimmed walk.
    pub fn as_walk(&self) -> Option<Vec<usize>> {
        match self.dim() {
            0 => Some(self.values.clone()),
            1 => Some(self.values.clone()),
            _ => None,
        }
    }
}

/// An open box `⊓^n_{i,ε}`: every face but `(i, ε)`, keyed by `(j, η)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenBox {
    pub n: usize,
    pub i: usize,
    pub eps: u8,
    pub faces: Vec<((usize, u8), StableCube)>,
}

impl OpenBox {
    pub fn face(&self, j: usize, eta: u8) -> Option<&StableCube> {
        self.faces.iter().find(|(k, _)| *k == (j, eta)).map(|(_, c)| c)
    }

    /// Right faces present, right dimensions, and `∂_{j,η'} x_{i,η} =
    /// ∂_{i-1,η} x_{j,η'}` for `j < i` wherever both are given.
    pub fn check(&self) -> Result<()> {
        let n = self.n;
        if !(1..=2).contains(&n) || self.i == 0 || self.i > n || self.eps > 1 {
            return Err(Error::OutOfRange(format!("open box ({}, {}, {}) is not supported", n, self.i, self.eps)));
        }
        for j in 1..=n {
            for eta in 0..2u8 {
                let present = self.face(j, eta);
                let wanted = (j, eta) != (self.i, self.eps);
                match present {
                    Some(_) if !wanted => {
                        return Err(Error::InvalidData(format!("face ({j}, {eta}) is the missing one")));
                    }
                    Some(c) if c.dim() != n - 1 => {
                        return Err(Error::InvalidData(format!("face ({j}, {eta}) has dimension {}", c.dim())));
                    }
                    None if wanted => return Err(Error::InvalidData(format!("face ({j}, {eta}) is absent"))),
                    _ => {}
                }
            }
        }
        if self.faces.len() != 2 * n - 1 {
            return Err(Error::InvalidData("duplicate faces".into()));
        }
        for (a, x) in &self.faces {
            for (b, y) in &self.faces {
                // x = face (i, ε), y = face (j, ε') with j < i
                let ((i, e), (j, e2)) = (*a, *b);
                if j < i {
                    let lhs = x.face(j, e2)?;
                    let rhs = y.face(i - 1, e)?;
                    if lhs != rhs {
                        return Err(Error::InvalidData(format!(
                            "faces ({i}, {e}) and ({j}, {e2}) disagree on their common face"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A filler of an open box, searched over extents up to `window` in each
/// direction. Exhaustion reports the window; it never proves absence.
pub fn open_box_filler_search(g: &Graph, b: &OpenBox, window: usize) -> Result<super::Search<StableCube>> {
    b.check()?;
    if b.n == 1 {
        let v = b.face(1, 1 - b.eps).unwrap();
        return Ok(super::Search::Found(v.degeneracy(1)?));
    }
    for total in 0..=2 * window {
        for m1 in total.saturating_sub(window)..=total.min(window) {
            let m2 = total - m1;
            if let Some(c) = fill_with_extents(g, b, m1, m2) {
                return Ok(super::Search::Found(c));
            }
        }
    }
    Ok(super::Search::Exhausted(window))
}

/// Ways to lay a trimmed walk along a side of length `m`.
fn paddings(walk: &[usize], m: usize) -> Vec<Vec<usize>> {
    let len = walk.len() - 1;
    if len > m {
        return Vec::new();
    }
    if len == 0 {
        return alloc::vec![alloc::vec![walk[0]; m + 1]];
    }
    (0..=m - len)
        .map(|p| {
            let mut side = alloc::vec![walk[0]; p];
            side.extend_from_slice(walk);
            side.resize(m + 1, walk[len]);
            side
        })
        .collect()
}

fn fill_with_extents(g: &Graph, b: &OpenBox, m1: usize, m2: usize) -> Option<StableCube> {
    // side (1, ε): x1 fixed, varying x2 (length m2); side (2, ε): varying x1
    let sides: Vec<((usize, u8), Vec<Vec<usize>>)> = b
        .faces
        .iter()
        .map(|(k, c)| {
            let len = if k.0 == 1 { m2 } else { m1 };
            (*k, paddings(c.values(), len))
        })
        .collect();
    if sides.iter().any(|(_, p)| p.is_empty()) {
        return None;
    }
    let mut choice = alloc::vec![0usize; sides.len()];
    loop {
        let mut grid: Vec<Option<usize>> = alloc::vec![None; (m1 + 1) * (m2 + 1)];
        let idx = |x1: usize, x2: usize| x1 * (m2 + 1) + x2;
        let mut ok = true;
        for (s, ((j, eta), pads)) in sides.iter().enumerate() {
            let side = &pads[choice[s]];
            for (t, &v) in side.iter().enumerate() {
                let k = match (j, eta) {
                    (1, 0) => idx(0, t),
                    (1, _) => idx(m1, t),
                    (_, 0) => idx(t, 0),
                    _ => idx(t, m2),
                };
                match grid[k] {
                    Some(w) if w != v => ok = false,
                    _ => grid[k] = Some(v),
                }
            }
        }
        if ok {
            if let Some(values) = fill_grid(g, &grid, m2) {
                let c = StableCube {
                    extents: alloc::vec![m1, m2],
                    values,
                };
                let full = c.trim();
                let matches = b.faces.iter().all(|((j, eta), f)| full.face(*j, *eta).ok().as_ref() == Some(f));
                if matches {
                    return Some(full);
                }
            }
        }
        // next padding combination
        let mut s = 0;
        loop {
            if s == sides.len() {
                return None;
            }
            choice[s] += 1;
            if choice[s] < sides[s].1.len() {
                break;
            }
            choice[s] = 0;
            s += 1;
        }
    }
}

/// Backtracking completion of a partially prescribed grid into a graph map.
/// A value is pruned when it is farther from some prescribed value than the
/// grid distance between the two points.
fn fill_grid(g: &Graph, fixed: &[Option<usize>], m2: usize) -> Option<Vec<usize>> {
    let w = m2 + 1;
    let dist: Vec<Vec<usize>> = (0..g.len())
        .map(|v| g.distances_from(v).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect())
        .collect();
    let pins: Vec<(usize, usize, usize)> = fixed
        .iter()
        .enumerate()
        .filter_map(|(k, v)| v.map(|v| (k / w, k % w, v)))
        .collect();
    let domains: Vec<Vec<usize>> = (0..fixed.len())
        .map(|k| match fixed[k] {
            Some(v) => alloc::vec![v],
            None => {
                let (x1, x2) = (k / w, k % w);
                (0..g.len())
                    .filter(|&v| pins.iter().all(|&(p1, p2, u)| dist[v][u] <= x1.abs_diff(p1) + x2.abs_diff(p2)))
                    .collect()
            }
        })
        .collect();
    if domains.iter().any(Vec::is_empty) {
        return None;
    }
    let mut vals = alloc::vec![usize::MAX; fixed.len()];
    fn go(g: &Graph, domains: &[Vec<usize>], vals: &mut Vec<usize>, k: usize, w: usize) -> bool {
        if k == domains.len() {
            return true;
        }
        let (x1, x2) = (k / w, k % w);
        for &v in &domains[k] {
            if (x1 == 0 || g.adjacent(vals[k - w], v)) && (x2 == 0 || g.adjacent(vals[k - 1], v)) {
                vals[k] = v;
                if go(g, domains, vals, k + 1, w) {
                    return true;
                }
            }
        }
        false
    }
    if go(g, &domains, &mut vals, 0, w) {
        Some(vals)
    } else {
        None
    }
}
