use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use core::cmp::Reverse;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::graph::Graph;
use crate::error::{Error, Result};
use crate::util::UnionFind;

/// Letters are `±(g + 1)` for generator `g`.
pub type Word = Vec<i32>;

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// The spanning-tree presentation of `A₁(G, v)` together with the loop of
/// each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A1Presentation {
    pub presentation: GroupPresentation,
    /// Generator `g` is the non-tree edge `edges[g] = (u, w)`, `u < w`.
    pub edges: Vec<(usize, usize)>,
    /// Based loop of each generator: tree path, the edge, tree path back.
    pub loops: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl A1Presentation {
    /// The word of a closed walk at the base vertex.
    pub fn word_of_walk(&self, walk: &[usize]) -> Word {
        let mut w = Word::new();
        for pair in walk.windows(2) {
            if let Some(l) = self.letter(pair[0], pair[1]) {
                w.push(l);
            }
        }
        free_reduce(&w)
    }

    fn letter(&self, a: usize, b: usize) -> Option<i32> {
        if a == b {
            return None;
        }
        let key = (a.min(b), a.max(b));
        let g = self.edges.iter().position(|&e| e == key)? as i32 + 1;
        Some(if a < b { g } else { -g })
    }
}

/// BFS tree from `v` (lowest index first); generators are the non-tree
/// edges, relators the boundaries of all 3- and 4-cycles.
pub fn a1_presentation(g: &Graph, v: usize) -> Result<A1Presentation> {
    if v >= g.len() {
        return Err(Error::OutOfRange(format!("base vertex {v}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut parent = alloc::vec![None; g.len()];
    let mut seen = alloc::vec![false; g.len()];
    seen[v] = true;
    let mut queue = alloc::collections::VecDeque::from([v]);
    let mut tree = BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                tree.insert((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|e| !tree.contains(e)).collect();
    let path_to_root = |mut u: usize| {
        let mut p = alloc::vec![u];
        while let Some(q) = parent[u] {
            p.push(q);
            u = q;
        }
        p
    };
    let loops = edges
        .iter()
        .map(|&(a, b)| {
            let mut walk = path_to_root(a);
            walk.reverse();
            walk.extend(path_to_root(b));
            walk
        })
        .collect();
    let generators = edges.iter().map(|&(a, b)| format!("{}-{}", g.name(a), g.name(b))).collect();
    let mut out = A1Presentation {
        presentation: GroupPresentation {
            generators,
            relators: Vec::new(),
        },
        edges,
        loops,
        parent,
    };
    let mut relators = BTreeSet::new();
    for cycle in short_cycles(g) {
        let mut closed = cycle.clone();
        closed.push(cycle[0]);
        let w = cyclic_reduce(&out.word_of_walk(&closed));
        if !w.is_empty() {
            relators.insert(w);
        }
    }
    out.presentation.relators = relators.into_iter().collect();
    Ok(out)
}

/// 3- and 4-cycles, each once: smallest vertex first, second below last.
pub fn short_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = g.len();
    for a in 0..n {
        for b in g.neighbors(a).filter(|&b| b > a) {
            for c in g.neighbors(b).filter(|&c| c > a && c != b) {
                if c > b && g.adjacent(c, a) {
                    out.push(alloc::vec![a, b, c]);
                }
                for d in g.neighbors(c).filter(|&d| d > b && d != c) {
                    if g.adjacent(d, a) && d != b {
                        out.push(alloc::vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Rank and torsion of the abelianization, from the Smith normal form of
/// the exponent-sum matrix.
pub fn abelianization_rank(p: &GroupPresentation) -> (usize, Vec<u64>) {
    let cols = p.generators.len();
    let mut m: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = alloc::vec![0i64; cols];
            for &l in r {
                row[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
            }
            row
        })
        .collect();
    let diag = smith_diagonal(&mut m, cols);
    let nonzero: Vec<u64> = diag.into_iter().filter(|&d| d != 0).collect();
    let torsion = nonzero.iter().copied().filter(|&d| d > 1).collect();
    (cols - nonzero.len(), torsion)
}

/// Invariant factors of an integer matrix.
fn smith_diagonal(m: &mut [Vec<i64>], cols: usize) -> Vec<u64> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t] / m[t][t];
            if q != 0 {
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = m[t][j] / m[t][t];
            if q != 0 {
                for row in m.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            clean &= m[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility of the rest by the pivot
        let p = m[t][t];
        if let Some((i, _)) = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0) {
            for j in t..cols {
                let add = m[i][j];
                m[t][j] += add;
            }
            continue;
        }
        diag.push(p.unsigned_abs());
        t += 1;
    }
    diag
}

/// A presentation after Tietze eliminations: each original generator as a
/// word in the survivors, plus the relators that could not be used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub substitution: Vec<Word>,
    pub relators: Vec<Word>,
}

fn substitute(w: &[i32], sub: &[Word]) -> Word {
    let mut out = Word::new();
    for &l in w {
        let g = (l.unsigned_abs() - 1) as usize;
        if l > 0 {
            out.extend_from_slice(&sub[g]);
        } else {
            out.extend(inverse(&sub[g]));
        }
    }
    free_reduce(&out)
}

/// Repeatedly solve a relator for a generator occurring once in it.
pub fn simplify(p: &GroupPresentation) -> Simplified {
    let n = p.generators.len();
    let mut sub: Vec<Word> = (1..=n as i32).map(|g| alloc::vec![g]).collect();
    let mut rels: Vec<Word> = p.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
    loop {
        let mut found = None;
        'search: for (ri, r) in rels.iter().enumerate() {
            let mut count: BTreeMap<u32, usize> = BTreeMap::new();
            for &l in r {
                *count.entry(l.unsigned_abs()).or_default() += 1;
            }
            for (k, &l) in r.iter().enumerate() {
                if count[&l.unsigned_abs()] == 1 {
                    found = Some((ri, k));
                    break 'search;
                }
            }
        }
        let Some((ri, k)) = found else { break };
        let r = rels.remove(ri);
        let l = r[k];
        let (a, b) = (&r[..k], &r[k + 1..]);
        // a g^e b = 1
        let mut sol = inverse(a);
        sol.extend(inverse(b));
        let sol = if l > 0 { free_reduce(&sol) } else { inverse(&free_reduce(&sol)) };
        let g = (l.unsigned_abs() - 1) as usize;
        let mut step: Vec<Word> = (1..=n as i32).map(|h| alloc::vec![h]).collect();
        step[g] = sol;
        for s in sub.iter_mut() {
            *s = substitute(s, &step);
        }
        rels = rels.iter().map(|r| cyclic_reduce(&substitute(r, &step))).filter(|r| !r.is_empty()).collect();
    }
    Simplified {
        substitution: sub,
        relators: rels,
    }
}

/// Whether a word is trivial in the presented group: decided when the
/// eliminations leave a free group, or when the abelian image is nonzero.
pub fn word_is_trivial(p: &GroupPresentation, w: &[i32]) -> Option<bool> {
    let s = simplify(p);
    let image = substitute(w, &s.substitution);
    if s.relators.is_empty() {
        return Some(image.is_empty());
    }
    let core_word = cyclic_reduce(&image);
    if core_word.is_empty() {
        return Some(true);
    }
    // a conjugate of a relator or its inverse
    for r in &s.relators {
        for cand in [r.clone(), inverse(r)] {
            if cand.len() == core_word.len() && (0..cand.len()).any(|k| cand[k..].iter().chain(&cand[..k]).eq(core_word.iter())) {
                return Some(true);
            }
        }
    }
    let mut sums = BTreeMap::new();
    for &l in &image {
        *sums.entry(l.unsigned_abs()).or_insert(0i64) += l.signum() as i64;
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let n = p.generators.len();
    for r in &s.relators {
        let mut row = alloc::vec![0i64; n];
        for &l in r {
            row[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
        }
        rows.push(row);
    }
    let mut target = alloc::vec![0i64; n];
    for (g, c) in sums {
        target[(g - 1) as usize] = c;
    }
    // in the rational span of the relator rows iff the rank does not grow
    let r0 = smith_diagonal(&mut rows.clone(), n).iter().filter(|&&d| d != 0).count();
    rows.push(target);
    let r1 = smith_diagonal(&mut rows, n).iter().filter(|&&d| d != 0).count();
    if r1 > r0 {
        Some(false)
    } else {
        None
    }
}

/// Largest loop length accepted by the oracle.
pub const ORACLE_MAX_LEN: usize = 10;
/// Largest graph accepted by the oracle.
pub const ORACLE_MAX_VERTICES: usize = 8;
const ORACLE_MAX_LOOPS: usize = 3_000_000;

/// Based loops of a fixed length modulo one-step based homotopies.
#[derive(Clone, Debug)]
pub struct LoopClasses {
    pub base: usize,
    pub len: usize,
    codes: Vec<u64>,
    labels: Vec<usize>,
    pub count: usize,
    radix: u64,
}

impl LoopClasses {
    fn encode(&self, walk: &[usize]) -> u64 {
        walk.iter().fold(0, |acc, &v| acc * self.radix + v as u64)
    }

    /// The class of a closed walk at the base, padded at the end with the
    /// base vertex. `None` if the walk is longer than the bound or invalid.
    pub fn class_of(&self, walk: &[usize]) -> Option<usize> {
        if walk.len() > self.len + 1 || walk.first() != Some(&self.base) || walk.last() != Some(&self.base) {
            return None;
        }
        let mut w = walk.to_vec();
        w.resize(self.len + 1, self.base);
        let i = self.codes.binary_search(&self.encode(&w)).ok()?;
        Some(self.labels[i])
    }

    pub fn constant_class(&self) -> usize {
        self.class_of(&[self.base]).expect("the constant loop")
    }
}

/// All based loops with `max_loop_len` steps (stutters allowed), quotiented
/// by pointwise adjacency with the ends fixed.
pub fn a1_bfs_oracle(g: &Graph, v: usize, max_loop_len: usize) -> Result<LoopClasses> {
    if max_loop_len > ORACLE_MAX_LEN || g.len() > ORACLE_MAX_VERTICES {
        return Err(Error::SizeGuard(format!(
            "the oracle takes loops up to length {ORACLE_MAX_LEN} on graphs up to {ORACLE_MAX_VERTICES} vertices"
        )));
    }
    if v >= g.len() {
        return Err(Error::OutOfRange(format!("base vertex {v}")));
    }
    let len = max_loop_len;
    let dist: Vec<usize> = g.distances_from(v).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect();
    let nbhd: Vec<Vec<usize>> = (0..g.len()).map(|u| g.closed_neighborhood(u)).collect();
    let radix = g.len().max(2) as u64;
    let mut codes = Vec::new();
    // walks v = w_0, ..., w_len = v
    let mut stack: Vec<(usize, u64, usize)> = alloc::vec![(0, v as u64, v)];
    while let Some((t, code, last)) = stack.pop() {
        if t == len {
            if last == v {
                codes.push(code);
                if codes.len() > ORACLE_MAX_LOOPS {
                    return Err(Error::SizeGuard(format!("more than {ORACLE_MAX_LOOPS} loops")));
                }
            }
            continue;
        }
        for &u in &nbhd[last] {
            if dist[u] <= len - t - 1 {
                stack.push((t + 1, code * radix + u as u64, u));
            }
        }
    }
    codes.sort_unstable();
    let mut uf = UnionFind::new(codes.len());
    let mut digits = alloc::vec![0usize; len + 1];
    let mut cur = alloc::vec![0usize; len + 1];
    for i in 0..codes.len() {
        let mut c = codes[i];
        for t in (0..=len).rev() {
            digits[t] = (c % radix) as usize;
            c /= radix;
        }
        cur[0] = v;
        adjacent_loops(&nbhd, &nbhd, &dist, &digits, &mut cur, 1, len, v, &mut |w: &[usize]| {
            let code = w.iter().fold(0u64, |acc, &x| acc * radix + x as u64);
            if code > codes[i] {
                if let Ok(j) = codes.binary_search(&code) {
                    uf.union(i, j);
                }
            }
            false
        });
    }
    let (labels, count) = uf.labels();
    Ok(LoopClasses {
        base: v,
        len,
        codes,
        labels,
        count,
        radix,
    })
}

/// Loops pointwise adjacent to `loop_`, with the prefix `cur[..t]` fixed.
/// Candidates at each step are tried in the order of `order`; `visit`
/// returns true to stop the enumeration, and so does this function.
#[allow(clippy::too_many_arguments)]
fn adjacent_loops(
    nbhd: &[Vec<usize>],
    order: &[Vec<usize>],
    dist: &[usize],
    loop_: &[usize],
    cur: &mut Vec<usize>,
    t: usize,
    len: usize,
    v: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if t == len {
        if nbhd[cur[t - 1]].contains(&v) {
            cur[t] = v;
            return visit(cur);
        }
        return false;
    }
    for &u in &order[loop_[t]] {
        if dist[u] <= len - t && nbhd[cur[t - 1]].binary_search(&u).is_ok() {
            cur[t] = u;
            if adjacent_loops(nbhd, order, dist, loop_, cur, t + 1, len, v, visit) {
                return true;
            }
        }
    }
    false
}

/// Whether a closed walk at `v` is homotopic to the constant loop among
/// loops of `max_loop_len` steps, padded with `v` at the end. Only the
/// class of the walk is explored, nearest to the base first. `None` if the
/// walk is longer than the bound.
pub fn a1_loop_is_trivial(g: &Graph, v: usize, walk: &[usize], max_loop_len: usize) -> Result<Option<bool>> {
    if max_loop_len > ORACLE_MAX_LEN || g.len() > ORACLE_MAX_VERTICES {
        return Err(Error::SizeGuard(format!(
            "the oracle takes loops up to length {ORACLE_MAX_LEN} on graphs up to {ORACLE_MAX_VERTICES} vertices"
        )));
    }
    if v >= g.len() {
        return Err(Error::OutOfRange(format!("base vertex {v}")));
    }
    let nbhd: Vec<Vec<usize>> = (0..g.len()).map(|u| g.closed_neighborhood(u)).collect();
    let is_walk = walk.first() == Some(&v)
        && walk.last() == Some(&v)
        && walk.iter().all(|&u| u < g.len())
        && walk.windows(2).all(|p| nbhd[p[0]].binary_search(&p[1]).is_ok());
    if !is_walk {
        return Err(Error::InvalidData("not a closed walk at the base".into()));
    }
    let len = max_loop_len;
    if walk.len() > len + 1 {
        return Ok(None);
    }
    let dist: Vec<usize> = g.distances_from(v).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect();
    let order: Vec<Vec<usize>> = nbhd
        .iter()
        .map(|n| {
            let mut o = n.clone();
            o.sort_by_key(|&u| (dist[u], u));
            o
        })
        .collect();
    let radix = g.len().max(2) as u64;
    let encode = |w: &[usize]| w.iter().fold(0u64, |acc, &x| acc * radix + x as u64);
    let potential = |w: &[usize]| w.iter().map(|&u| dist[u]).sum::<usize>();
    let mut start = walk.to_vec();
    start.resize(len + 1, v);
    let target = encode(&alloc::vec![v; len + 1]);
    if encode(&start) == target {
        return Ok(Some(true));
    }
    let mut seen = BTreeSet::new();
    seen.insert(encode(&start));
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((potential(&start), start)));
    let mut cur = alloc::vec![v; len + 1];
    while let Some(Reverse((_, w))) = heap.pop() {
        let mut found = false;
        adjacent_loops(&nbhd, &order, &dist, &w, &mut cur, 1, len, v, &mut |u: &[usize]| {
            let code = encode(u);
            if code == target {
                found = true;
                return true;
            }
            if seen.insert(code) {
                heap.push(Reverse((potential(u), u.to_vec())));
            }
            false
        });
        if found {
            return Ok(Some(true));
        }
        if seen.len() > ORACLE_MAX_LOOPS {
            return Err(Error::SizeGuard(format!("more than {ORACLE_MAX_LOOPS} loops")));
        }
    }
    Ok(Some(false))
}
