use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::graph::{Graph, GraphMap};
use crate::error::{Error, Result};

/// A map `I_∞ → G` stable in both directions: `walk[k]` is the value at
/// `offset + k`, constant beyond. Canonical when trimmed, with offset 0 for
/// constants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineMap {
    pub offset: i64,
    pub walk: Vec<usize>,
}

impl LineMap {
    pub fn constant(v: usize) -> LineMap {
        LineMap {
            offset: 0,
            walk: alloc::vec![v],
        }
    }

    pub fn new(offset: i64, walk: Vec<usize>) -> LineMap {
        LineMap { offset, walk }.canonical()
    }

    pub fn canonical(mut self) -> LineMap {
        while self.walk.len() > 1 && self.walk[0] == self.walk[1] {
            self.walk.remove(0);
            self.offset += 1;
        }
        while self.walk.len() > 1 && self.walk[self.walk.len() - 1] == self.walk[self.walk.len() - 2] {
            self.walk.pop();
        }
        if self.walk.len() == 1 {
            self.offset = 0;
        }
        self
    }

    pub fn at(&self, m: i64) -> usize {
        let k = (m - self.offset).clamp(0, self.walk.len() as i64 - 1);
        self.walk[k as usize]
    }

    /// `∂_{1,0}`: the value at `-∞`.
    pub fn start(&self) -> usize {
        self.walk[0]
    }

    /// `∂_{1,1}`: the value at `+∞`.
    pub fn end(&self) -> usize {
        self.walk[self.walk.len() - 1]
    }

    /// The window where the map is not yet constant, as `[lo, hi]`.
    fn window(&self) -> (i64, i64) {
        (self.offset, self.offset + self.walk.len() as i64 - 1)
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        !self.walk.is_empty() && self.walk.iter().all(|&v| v < g.len()) && self.walk.windows(2).all(|p| g.adjacent(p[0], p[1]))
    }

    pub fn adjacent(&self, other: &LineMap, g: &Graph) -> bool {
        let (a, b) = self.window();
        let (c, d) = other.window();
        (a.min(c)..=b.max(d)).all(|m| g.adjacent(self.at(m), other.at(m)))
    }

    pub fn map(&self, f: &[usize]) -> LineMap {
        LineMap::new(self.offset, self.walk.iter().map(|&v| f[v]).collect())
    }
}

/// Path-graph neighbors of `p` whose non-constant window lies within `p`'s
/// window widened by `pad` on both sides.
pub fn path_neighbors(g: &Graph, p: &LineMap, pad: usize) -> Vec<LineMap> {
    let (a, b) = p.window();
    let (lo, hi) = (a - pad as i64, b + pad as i64);
    let len = (hi - lo + 1) as usize;
    let mut out = BTreeSet::new();
    let mut cur: Vec<usize> = Vec::with_capacity(len);
    fn go(g: &Graph, p: &LineMap, lo: i64, len: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<LineMap>) {
        let t = cur.len();
        if t == len {
            out.insert(LineMap::new(lo, cur.clone()));
            return;
        }
        let here = p.at(lo + t as i64);
        for u in g.closed_neighborhood(here) {
            if t == 0 || g.adjacent(cur[t - 1], u) {
                cur.push(u);
                go(g, p, lo, len, cur, out);
                cur.pop();
            }
        }
    }
    go(g, p, lo, len, &mut cur, &mut out);
    out.into_iter().collect()
}

/// The probe interface of an infinite graph.
pub trait LazyGraph {
    type Vertex: Clone + Ord + core::fmt::Debug;

    fn canonical(&self, v: &Self::Vertex) -> Self::Vertex;
    fn is_vertex(&self, v: &Self::Vertex) -> bool;
    fn adjacent(&self, a: &Self::Vertex, b: &Self::Vertex) -> bool;
    /// Neighbors (the vertex included) reachable by widening windows by `pad`.
    fn neighbors(&self, v: &Self::Vertex, pad: usize) -> Vec<Self::Vertex>;

    /// Vertices within `radius` steps, with their distance.
    fn ball(&self, v: &Self::Vertex, radius: usize, pad: usize) -> BTreeMap<Self::Vertex, usize> {
        let mut seen = BTreeMap::new();
        seen.insert(self.canonical(v), 0);
        let mut layer = alloc::vec![self.canonical(v)];
        for r in 1..=radius {
            let mut next = Vec::new();
            for u in &layer {
                for w in self.neighbors(u, pad) {
                    if !seen.contains_key(&w) {
                        seen.insert(w.clone(), r);
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        seen
    }
}

/// `G^I`: stable line maps, adjacent when pointwise adjacent.
#[derive(Clone, Debug)]
pub struct PathGraph {
    pub graph: Graph,
}

pub fn path_graph_lazy(k: &Graph) -> PathGraph {
    PathGraph { graph: k.clone() }
}

impl LazyGraph for PathGraph {
    type Vertex = LineMap;

    fn canonical(&self, v: &LineMap) -> LineMap {
        v.clone().canonical()
    }

    fn is_vertex(&self, v: &LineMap) -> bool {
        v.is_valid(&self.graph)
    }

    fn adjacent(&self, a: &LineMap, b: &LineMap) -> bool {
        a.adjacent(b, &self.graph)
    }

    fn neighbors(&self, v: &LineMap, pad: usize) -> Vec<LineMap> {
        path_neighbors(&self.graph, v, pad)
    }
}

fn check_map(src: &Graph, tgt: &Graph, f: &[usize]) -> Result<()> {
    if !src.is_graph_map(tgt, f) {
        return Err(Error::InvalidGraph("not a graph map".into()));
    }
    Ok(())
}

/// `P f` for `f : G → K`: triples `(k, x, p)` with `p` a path from `k` to
/// `f(x)`, adjacent componentwise.
#[derive(Clone, Debug)]
pub struct DoubleMappingPath {
    pub g: Graph,
    pub k: Graph,
    pub f: GraphMap,
}

pub fn double_mapping_path_lazy(g: &Graph, k: &Graph, f: &[usize]) -> Result<DoubleMappingPath> {
    check_map(g, k, f)?;
    Ok(DoubleMappingPath {
        g: g.clone(),
        k: k.clone(),
        f: f.to_vec(),
    })
}

impl LazyGraph for DoubleMappingPath {
    /// `(x, p)`; `k` is `p(-∞)`.
    type Vertex = (usize, LineMap);

    fn canonical(&self, v: &Self::Vertex) -> Self::Vertex {
        (v.0, v.1.clone().canonical())
    }

    fn is_vertex(&self, (x, p): &Self::Vertex) -> bool {
        *x < self.g.len() && p.is_valid(&self.k) && p.end() == self.f[*x]
    }

    fn adjacent(&self, (x, p): &Self::Vertex, (y, q): &Self::Vertex) -> bool {
        self.g.adjacent(*x, *y) && p.adjacent(q, &self.k)
    }

    fn neighbors(&self, (x, p): &Self::Vertex, pad: usize) -> Vec<Self::Vertex> {
        let mut out = Vec::new();
        for q in path_neighbors(&self.k, p, pad) {
            for y in self.g.closed_neighborhood(*x) {
                if q.end() == self.f[y] {
                    out.push((y, q.clone()));
                }
            }
        }
        out.sort();
        out
    }
}

/// The limit `P` of `G → K ← K^I → K ← K^I → K ← H`: vertices
/// `(x, p₁, p₂, y)` with `p₁(+∞) = f(x)`, `p₂(+∞) = g(y)` and
/// `p₁(-∞) = p₂(-∞)`.
#[derive(Clone, Debug)]
pub struct PullbackGraph {
    pub g: Graph,
    pub h: Graph,
    pub k: Graph,
    pub f: GraphMap,
    pub gm: GraphMap,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PullbackVertex {
    pub x: usize,
    pub p1: LineMap,
    pub p2: LineMap,
    pub y: usize,
}

pub fn pullback_graph_lazy(g: &Graph, h: &Graph, k: &Graph, f: &[usize], gm: &[usize]) -> Result<PullbackGraph> {
    check_map(g, k, f)?;
    check_map(h, k, gm)?;
    Ok(PullbackGraph {
        g: g.clone(),
        h: h.clone(),
        k: k.clone(),
        f: f.to_vec(),
        gm: gm.to_vec(),
    })
}

impl PullbackGraph {
    pub fn pi_g(&self, v: &PullbackVertex) -> usize {
        v.x
    }

    pub fn pi_h(&self, v: &PullbackVertex) -> usize {
        v.y
    }

    pub fn pi_k(&self, v: &PullbackVertex) -> usize {
        v.p1.start()
    }

    pub fn pi_1(&self, v: &PullbackVertex) -> LineMap {
        v.p1.clone()
    }

    pub fn pi_2(&self, v: &PullbackVertex) -> LineMap {
        v.p2.clone()
    }

    /// `π₁` runs from `π_K` to `f π_G` and `π₂` from `π_K` to `g π_H`.
    pub fn square_commutes_at(&self, v: &PullbackVertex) -> bool {
        let k = self.pi_k(v);
        v.p1.start() == k && v.p2.start() == k && v.p1.end() == self.f[v.x] && v.p2.end() == self.gm[v.y]
    }
}

impl LazyGraph for PullbackGraph {
    type Vertex = PullbackVertex;

    fn canonical(&self, v: &PullbackVertex) -> PullbackVertex {
        PullbackVertex {
            x: v.x,
            p1: v.p1.clone().canonical(),
            p2: v.p2.clone().canonical(),
            y: v.y,
        }
    }

    fn is_vertex(&self, v: &PullbackVertex) -> bool {
        v.x < self.g.len()
            && v.y < self.h.len()
            && v.p1.is_valid(&self.k)
            && v.p2.is_valid(&self.k)
            && v.p1.start() == v.p2.start()
            && v.p1.end() == self.f[v.x]
            && v.p2.end() == self.gm[v.y]
    }

    fn adjacent(&self, a: &PullbackVertex, b: &PullbackVertex) -> bool {
        self.g.adjacent(a.x, b.x) && self.h.adjacent(a.y, b.y) && a.p1.adjacent(&b.p1, &self.k) && a.p2.adjacent(&b.p2, &self.k)
    }

    fn neighbors(&self, v: &PullbackVertex, pad: usize) -> Vec<PullbackVertex> {
        let q1s = path_neighbors(&self.k, &v.p1, pad);
        let q2s = path_neighbors(&self.k, &v.p2, pad);
        let xs = self.g.closed_neighborhood(v.x);
        let ys = self.h.closed_neighborhood(v.y);
        let mut out = Vec::new();
        for q1 in &q1s {
            for q2 in q2s.iter().filter(|q2| q2.start() == q1.start()) {
                for &x in xs.iter().filter(|&&x| self.f[x] == q1.end()) {
                    for &y in ys.iter().filter(|&&y| self.gm[y] == q2.end()) {
                        out.push(PullbackVertex {
                            x,
                            p1: q1.clone(),
                            p2: q2.clone(),
                            y,
                        });
                    }
                }
            }
        }
        out
    }
}
