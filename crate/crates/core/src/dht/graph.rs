use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite reflexive symmetric graph. Loops are implicit and never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

/// A vertex map, by image index.
pub type GraphMap = Vec<usize>;

impl Graph {
    /// Rejects unknown endpoints and loops.
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = names.len();
        let mut seen = BTreeSet::new();
        for (i, name) in names.iter().enumerate() {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidGraph(format!("vertex {name} is listed twice (index {i})")));
            }
        }
        let mut adj = alloc::vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has an unknown endpoint")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {} is implicit", names[u])));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { names, adj })
    }

    fn numbered(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new((0..n).map(|i| i.to_string()).collect(), edges).expect("well-formed")
    }

    /// `I_m`: vertices `0..=m`, consecutive integers adjacent.
    pub fn interval(m: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..m).map(|i| (i, i + 1)).collect();
        Graph::numbered(m + 1, &edges)
    }

    /// `C_m`: `I_m` with `0` and `m` identified, vertices `0..m`. Needs `m ≥ 3`.
    pub fn cycle(m: usize) -> Graph {
        assert!(m >= 3, "cycles need at least three vertices");
        let edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        Graph::numbered(m, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::numbered(n, &edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Adjacent or equal.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u == v || self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// The closed neighborhood, in increasing order.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adj[v].iter().copied().collect();
        let pos = out.partition_point(|&u| u < v);
        out.insert(pos, v);
        out
    }

    /// Edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = alloc::vec![None; self.len()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(dist[u].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn is_graph_map(&self, target: &Graph, f: &[usize]) -> bool {
        f.len() == self.len()
            && f.iter().all(|&x| x < target.len())
            && self.edges().iter().all(|&(u, v)| target.adjacent(f[u], f[v]))
    }

    pub fn identity_map(&self) -> GraphMap {
        (0..self.len()).collect()
    }

    /// All graph maps into `target`, in lexicographic order.
    pub fn maps_to(&self, target: &Graph, limit: usize) -> Result<Vec<GraphMap>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.len());
        self.extend_maps(target, &mut cur, &mut |f| {
            out.push(f.to_vec());
            out.len() <= limit
        });
        if out.len() > limit {
            return Err(Error::SizeGuard(format!("more than {limit} graph maps")));
        }
        Ok(out)
    }

    /// Calls `visit` on each graph map; stops when it returns `false`.
    fn extend_maps(&self, target: &Graph, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let i = cur.len();
        if i == self.len() {
            return visit(cur);
        }
        for y in 0..target.len() {
            if self.adj[i].iter().filter(|&&u| u < i).all(|&u| target.adjacent(cur[u], y)) {
                cur.push(y);
                let go = self.extend_maps(target, cur, visit);
                cur.pop();
                if !go {
                    return false;
                }
            }
        }
        true
    }
}

/// `G □ H`: pairs, adjacent when one coordinate is equal and the other
/// adjacent. Vertex `(g, h)` has index `g * |H| + h`.
pub fn box_product(g: &Graph, h: &Graph) -> Graph {
    let names = (0..g.len())
        .flat_map(|a| (0..h.len()).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", g.name(a), h.name(b)))
        .collect();
    let mut edges = Vec::new();
    for a in 0..g.len() {
        for (b, c) in h.edges() {
            edges.push((a * h.len() + b, a * h.len() + c));
        }
    }
    for (a, c) in g.edges() {
        for b in 0..h.len() {
            edges.push((a * h.len() + b, c * h.len() + b));
        }
    }
    Graph::new(names, &edges).expect("well-formed")
}

/// Largest hom graph built eagerly.
pub const HOM_GRAPH_LIMIT: usize = 4096;

/// The internal hom: graph maps `G → H`, adjacent when pointwise adjacent.
pub fn hom_graph(g: &Graph, h: &Graph) -> Result<(Graph, Vec<GraphMap>)> {
    let maps = g.maps_to(h, HOM_GRAPH_LIMIT)?;
    let names = maps
        .iter()
        .map(|f| {
            let parts: Vec<&str> = f.iter().map(|&y| h.name(y)).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            if maps[i].iter().zip(&maps[j]).all(|(&a, &b)| h.adjacent(a, b)) {
                edges.push((i, j));
            }
        }
    }
    Ok((Graph::new(names, &edges)?, maps))
}

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// Nothing within the bound; not a proof of absence.
    Exhausted(usize),
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            Search::Exhausted(_) => None,
        }
    }
}

/// Graph maps pointwise adjacent to `f`.
fn hom_neighbors(g: &Graph, h: &Graph, f: &[usize]) -> Vec<GraphMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(g.len());
    fn go(g: &Graph, h: &Graph, f: &[usize], cur: &mut Vec<usize>, out: &mut Vec<GraphMap>) {
        let i = cur.len();
        if i == g.len() {
            out.push(cur.clone());
            return;
        }
        for y in h.closed_neighborhood(f[i]) {
            if g.adj[i].iter().filter(|&&u| u < i).all(|&u| h.adjacent(cur[u], y)) {
                cur.push(y);
                go(g, h, f, cur, out);
                cur.pop();
            }
        }
    }
    go(g, h, f, &mut cur, &mut out);
    out
}

/// A shortest homotopy `f = α_0 ∼ α_1 ∼ … ∼ α_m = g`, as the list of its
/// stages, searched breadth first up to length `max_len`.
pub fn homotopy_search(g: &Graph, h: &Graph, f: &[usize], f2: &[usize], max_len: usize) -> Result<Search<Vec<GraphMap>>> {
    if !g.is_graph_map(h, f) || !g.is_graph_map(h, f2) {
        return Err(Error::InvalidGraph("the maps are not graph maps between the given graphs".into()));
    }
    let mut parent: BTreeMap<GraphMap, Option<GraphMap>> = BTreeMap::new();
    parent.insert(f.to_vec(), None);
    let mut layer = alloc::vec![f.to_vec()];
    for _ in 0..=max_len {
        if parent.contains_key(f2) {
            let mut path = alloc::vec![f2.to_vec()];
            while let Some(Some(p)) = parent.get(path.last().unwrap()) {
                path.push(p.clone());
            }
            path.reverse();
            return Ok(Search::Found(path));
        }
        let mut next = Vec::new();
        for m in &layer {
            for n in hom_neighbors(g, h, m) {
                if !parent.contains_key(&n) {
                    parent.insert(n.clone(), Some(m.clone()));
                    next.push(n);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(Search::Exhausted(max_len))
}

/// A homotopy equivalence `f : G → H`, `g : H → G` with homotopies
/// `α : g f ∼ id` and `β : f g ∼ id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyEquivalence {
    pub f: GraphMap,
    pub g: GraphMap,
    pub alpha: Vec<GraphMap>,
    pub beta: Vec<GraphMap>,
}

/// Candidate map pairs are tried in lexicographic order with homotopies of
/// length at most `bound`.
pub fn is_homotopy_equiv_search(g: &Graph, h: &Graph, bound: usize) -> Result<Search<HomotopyEquivalence>> {
    let fs = g.maps_to(h, HOM_GRAPH_LIMIT)?;
    let gs = h.maps_to(g, HOM_GRAPH_LIMIT)?;
    // shortest total homotopy length first, so isomorphisms come out at 0
    for len in 0..=bound {
        for f in &fs {
            for k in &gs {
                let gf: GraphMap = f.iter().map(|&y| k[y]).collect();
                let fg: GraphMap = k.iter().map(|&x| f[x]).collect();
                let Search::Found(alpha) = homotopy_search(g, g, &gf, &g.identity_map(), len)? else {
                    continue;
                };
                let Search::Found(beta) = homotopy_search(h, h, &fg, &h.identity_map(), len)? else {
                    continue;
                };
                return Ok(Search::Found(HomotopyEquivalence {
                    f: f.clone(),
                    g: k.clone(),
                    alpha,
                    beta,
                }));
            }
        }
    }
    Ok(Search::Exhausted(bound))
}
