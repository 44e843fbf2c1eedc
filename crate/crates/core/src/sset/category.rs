use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::Poset;
use crate::error::{Error, Result};
use crate::util::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    comp: Vec<Option<usize>>,
}

impl FinCategory {
    /// `comp` lists triples `(g, f, g∘f)`; every composable pair must appear
    /// except those involving an identity, which are filled in.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        comp: &[(usize, usize, usize)],
    ) -> Result<FinCategory> {
        let m = morphisms.len();
        if identities.len() != objects.len() {
            return Err(Error::InvalidCategory("one identity per object is required".into()));
        }
        for (x, &i) in identities.iter().enumerate() {
            let Some(mor) = morphisms.get(i) else {
                return Err(Error::InvalidCategory(format!("identity of {} is missing", objects[x])));
            };
            if mor.dom != x || mor.cod != x {
                return Err(Error::InvalidCategory(format!(
                    "identity {} of {} is not an endomorphism of it",
                    mor.name, objects[x]
                )));
            }
        }
        for f in &morphisms {
            if f.dom >= objects.len() || f.cod >= objects.len() {
                return Err(Error::InvalidCategory(format!("{} has an unknown endpoint", f.name)));
            }
        }
        let mut table = alloc::vec![None; m * m];
        for &(g, f, h) in comp {
            if g >= m || f >= m || h >= m {
                return Err(Error::InvalidCategory("composition refers to an unknown morphism".into()));
            }
            if morphisms[f].cod != morphisms[g].dom {
                return Err(Error::InvalidCategory(format!(
                    "{} ∘ {} is listed but not composable",
                    morphisms[g].name, morphisms[f].name
                )));
            }
            if let Some(prev) = table[g * m + f] {
                if prev != h {
                    return Err(Error::InvalidCategory(format!(
                        "{} ∘ {} is listed twice with different values",
                        morphisms[g].name, morphisms[f].name
                    )));
                }
            }
            table[g * m + f] = Some(h);
        }
        for f in 0..m {
            let id_cod = identities[morphisms[f].cod];
            let id_dom = identities[morphisms[f].dom];
            for key in [id_cod * m + f, f * m + id_dom] {
                match table[key] {
                    None => table[key] = Some(f),
                    Some(v) if v != f => {
                        return Err(Error::InvalidCategory(format!(
                            "unit law fails for {}",
                            morphisms[f].name
                        )))
                    }
                    _ => {}
                }
            }
        }
        let c = FinCategory {
            objects,
            morphisms,
            identities,
            comp: table,
        };
        c.check()?;
        Ok(c)
    }

    /// Exhaustive validation of totality, endpoints, units and associativity.
    pub fn check(&self) -> Result<()> {
        let m = self.morphisms.len();
        let mut names = BTreeSet::new();
        for f in &self.morphisms {
            if !names.insert(f.name.as_str()) {
                return Err(Error::InvalidCategory(format!("duplicate morphism name {}", f.name)));
            }
        }
        let mut onames = BTreeSet::new();
        for o in &self.objects {
            if !onames.insert(o.as_str()) {
                return Err(Error::InvalidCategory(format!("duplicate object name {o}")));
            }
        }
        for f in 0..m {
            for g in 0..m {
                let composable = self.morphisms[f].cod == self.morphisms[g].dom;
                match (composable, self.comp[g * m + f]) {
                    (true, None) => {
                        return Err(Error::InvalidCategory(format!(
                            "{} ∘ {} is missing",
                            self.morphisms[g].name, self.morphisms[f].name
                        )))
                    }
                    (false, Some(_)) => unreachable!(),
                    (true, Some(h)) => {
                        if self.morphisms[h].dom != self.morphisms[f].dom
                            || self.morphisms[h].cod != self.morphisms[g].cod
                        {
                            return Err(Error::InvalidCategory(format!(
                                "{} ∘ {} has the wrong endpoints",
                                self.morphisms[g].name, self.morphisms[f].name
                            )));
                        }
                    }
                    _ => {}
                }
            }
        }
        for f in 0..m {
            let idd = self.identities[self.morphisms[f].dom];
            let idc = self.identities[self.morphisms[f].cod];
            if self.compose(f, idd) != Some(f) || self.compose(idc, f) != Some(f) {
                return Err(Error::InvalidCategory(format!("unit law fails for {}", self.morphisms[f].name)));
            }
        }
        for f in 0..m {
            for g in self.out_of(self.morphisms[f].cod) {
                let gf = self.compose(g, f).unwrap();
                for h in self.out_of(self.morphisms[g].cod) {
                    let hg = self.compose(h, g).unwrap();
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(Error::InvalidCategory(format!(
                            "associativity fails for {}, {}, {}",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].dom] == f
    }

    /// `g ∘ f` when `cod f = dom g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphisms.len() + f]
    }

    /// Composite of a path given in application order.
    pub fn compose_path(&self, path: &[usize]) -> Option<usize> {
        let mut it = path.iter();
        let mut acc = *it.next()?;
        for &g in it {
            acc = self.compose(g, acc)?;
        }
        Some(acc)
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].dom == x && self.morphisms[f].cod == y)
            .collect()
    }

    pub fn out_of(&self, x: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].dom == x).collect()
    }

    pub fn into_obj(&self, y: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].cod == y).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.dom(f), self.cod(f));
        self.hom(y, x).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identity(x)) && self.compose(f, g) == Some(self.identity(y))
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn isomorphisms(&self) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.is_iso(f)).collect()
    }

    /// Same morphism names and indices, composition reversed.
    pub fn opposite(&self) -> FinCategory {
        let m = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|f| Morphism {
                name: f.name.clone(),
                dom: f.cod,
                cod: f.dom,
            })
            .collect();
        let mut comp = alloc::vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.comp[g * m + f] {
                    // in the opposite, f ∘op g = g ∘ f
                    comp[f * m + g] = Some(h);
                }
            }
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identities: self.identities.clone(),
            comp,
        }
    }

    /// All composition triples `(g, f, g∘f)`, in index order.
    pub fn composition_triples(&self) -> Vec<(usize, usize, usize)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.comp[g * m + f] {
                    out.push((g, f, h));
                }
            }
        }
        out
    }

    /// The category of a poset: one morphism `a≤b` per related pair.
    pub fn from_poset(p: &Poset) -> FinCategory {
        let n = p.len();
        let mut morphisms = Vec::new();
        let mut idx = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if p.le(a, b) {
                    idx.insert((a, b), morphisms.len());
                    let name = if a == b {
                        format!("id_{}", p.name(a))
                    } else {
                        format!("{}<{}", p.name(a), p.name(b))
                    };
                    morphisms.push(Morphism { name, dom: a, cod: b });
                }
            }
        }
        let identities = (0..n).map(|a| idx[&(a, a)]).collect();
        let mut comp = Vec::new();
        for (&(a, b), &f) in &idx {
            for c in 0..n {
                if let Some(&g) = idx.get(&(b, c)) {
                    comp.push((g, f, idx[&(a, c)]));
                }
            }
        }
        FinCategory::new(p.names().to_vec(), morphisms, identities, &comp).expect("poset category")
    }

    /// The category freely generated by an acyclic graph, modulo equations
    /// between parallel paths (paths in application order).
    pub fn free_on_dag(
        objects: &[&str],
        arrows: &[(&str, usize, usize)],
        equations: &[(Vec<usize>, Vec<usize>)],
    ) -> Result<FinCategory> {
        let n = objects.len();
        for &(name, d, c) in arrows {
            if d >= n || c >= n {
                return Err(Error::InvalidCategory(format!("arrow {name} has an unknown endpoint")));
            }
        }
        // all paths, by increasing length
        let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|x| (x, x, Vec::new())).collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        let mut len = 0;
        while !frontier.is_empty() {
            len += 1;
            if len > arrows.len() + 1 {
                return Err(Error::InvalidCategory("generating graph has a cycle".into()));
            }
            let mut next = Vec::new();
            for &p in &frontier {
                let c = paths[p].1;
                let path = paths[p].2.clone();
                for (a, &(_, ad, ac)) in arrows.iter().enumerate() {
                    if ad == c {
                        let mut q = path.clone();
                        q.push(a);
                        next.push(paths.len());
                        paths.push((paths[p].0, ac, q));
                    }
                }
            }
            frontier = next;
        }
        let index: BTreeMap<Vec<usize>, usize> =
            paths.iter().enumerate().filter(|(_, p)| !p.2.is_empty()).map(|(i, p)| (p.2.clone(), i)).collect();
        let lookup = |x: usize, path: &[usize]| -> Option<usize> {
            if path.is_empty() {
                Some(x)
            } else {
                index.get(path).copied()
            }
        };
        let mut uf = UnionFind::new(paths.len());
        for (lhs, rhs) in equations {
            let start = |p: &Vec<usize>| p.first().map(|&a| arrows[a].1);
            let end = |p: &Vec<usize>| p.last().map(|&a| arrows[a].2);
            let (Some(sl), Some(sr)) = (start(lhs).or(start(rhs)), start(rhs).or(start(lhs))) else {
                continue;
            };
            if sl != sr || end(lhs).unwrap_or(sl) != end(rhs).unwrap_or(sr) {
                return Err(Error::InvalidCategory("equation between non-parallel paths".into()));
            }
            let (Some(a), Some(b)) = (lookup(sl, lhs), lookup(sr, rhs)) else {
                return Err(Error::InvalidCategory("equation mentions a non-path".into()));
            };
            uf.union(a, b);
        }
        // congruence closure: whiskering preserves the relation
        loop {
            let mut changed = false;
            let classes = uf.classes();
            for class in classes.iter().filter(|c| c.len() > 1) {
                let base = class[0];
                for &other in &class[1..] {
                    let (x, y) = (paths[base].0, paths[base].1);
                    for (a, &(_, ad, ac)) in arrows.iter().enumerate() {
                        if ad == y {
                            let mut p = paths[base].2.clone();
                            p.push(a);
                            let mut q = paths[other].2.clone();
                            q.push(a);
                            let (i, j) = (lookup(x, &p).unwrap(), lookup(x, &q).unwrap());
                            changed |= uf.union(i, j);
                        }
                        if ac == x {
                            let mut p = alloc::vec![a];
                            p.extend_from_slice(&paths[base].2);
                            let mut q = alloc::vec![a];
                            q.extend_from_slice(&paths[other].2);
                            let (i, j) = (lookup(ad, &p).unwrap(), lookup(ad, &q).unwrap());
                            changed |= uf.union(i, j);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let (labels, count) = uf.labels();
        let mut rep = alloc::vec![usize::MAX; count];
        for (p, &l) in labels.iter().enumerate() {
            if rep[l] == usize::MAX {
                rep[l] = p;
            }
        }
        let mut morphisms = Vec::new();
        for &p in &rep {
            let (d, c, ref path) = paths[p];
            let name = if path.is_empty() {
                format!("id_{}", objects[d])
            } else {
                let parts: Vec<&str> = path.iter().rev().map(|&a| arrows[a].0).collect();
                parts.join(".")
            };
            morphisms.push(Morphism { name, dom: d, cod: c });
        }
        let identities = (0..n).map(|x| labels[x]).collect();
        let mut comp = Vec::new();
        for &f in &rep {
            for &g in &rep {
                if paths[f].1 == paths[g].0 {
                    let mut p = paths[f].2.clone();
                    p.extend_from_slice(&paths[g].2);
                    let h = lookup(paths[f].0, &p).unwrap();
                    comp.push((labels[g], labels[f], labels[h]));
                }
            }
        }
        FinCategory::new(objects.iter().map(|s| s.to_string()).collect(), morphisms, identities, &comp)
    }

    /// Two objects with mutually inverse arrows `f : a → b`, `g : b → a`.
    pub fn walking_isomorphism() -> FinCategory {
        let objects = alloc::vec!["a".to_string(), "b".to_string()];
        let mk = |n: &str, d, c| Morphism { name: n.to_string(), dom: d, cod: c };
        let morphisms = alloc::vec![mk("id_a", 0, 0), mk("id_b", 1, 1), mk("f", 0, 1), mk("g", 1, 0)];
        let comp = [(3, 2, 0), (2, 3, 1)];
        FinCategory::new(objects, morphisms, alloc::vec![0, 1], &comp).unwrap()
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> FinCategory {
        let morphisms = (0..n)
            .map(|k| Morphism {
                name: if k == 0 { "e".to_string() } else { format!("t{k}") },
                dom: 0,
                cod: 0,
            })
            .collect();
        let mut comp = Vec::new();
        for a in 0..n {
            for b in 0..n {
                comp.push((a, b, (a + b) % n));
            }
        }
        FinCategory::new(alloc::vec!["*".to_string()], morphisms, alloc::vec![0], &comp).unwrap()
    }

    /// Product category; objects and morphisms are pairs named `(a,b)`.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let n2 = other.object_count();
        let m2 = other.morphism_count();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let mut morphisms = Vec::new();
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(Morphism {
                    name: format!("({},{})", f.name, g.name),
                    dom: f.dom * n2 + g.dom,
                    cod: f.cod * n2 + g.cod,
                });
            }
        }
        let identities = (0..self.object_count())
            .flat_map(|a| (0..n2).map(move |b| (a, b)))
            .map(|(a, b)| self.identities[a] * m2 + other.identities[b])
            .collect();
        let mut comp = Vec::new();
        for (g1, f1, h1) in self.composition_triples() {
            for (g2, f2, h2) in other.composition_triples() {
                comp.push((g1 * m2 + g2, f1 * m2 + f2, h1 * m2 + h2));
            }
        }
        FinCategory::new(objects, morphisms, identities, &comp).expect("product category")
    }
}
