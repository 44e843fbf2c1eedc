//! JSON file formats: simplicial sets, categories, their marked variants,
//! graphs, open boxes, graph maps and pullback vertices.
//!
//! Syntax and type errors carry serde's line and column. Semantic errors
//! (unknown names, failed axioms) are located by searching the source for
//! the offending token, so they point at a line as well.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use fraction_forge_core::dht::{Graph, GraphMap, LineMap, OpenBox, PullbackVertex, StableCube};
use fraction_forge_core::marked::{MarkedCategory, MarkedSSet};
use fraction_forge_core::sset::{Cell, DegeneracyWord, FinCategory, Morphism, SSet, SSetBuilder, Simplex};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}:{line}: {message}")]
    Invalid { path: String, line: usize, message: String },
}

impl InputError {
    pub fn line(&self) -> Option<usize> {
        match self {
            InputError::Read { .. } => None,
            InputError::Syntax { line, .. } | InputError::Invalid { line, .. } => Some(*line),
        }
    }
}

/// Source text with a way to turn tokens into line numbers.
pub struct Source {
    pub path: String,
    pub text: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Source, InputError> {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Source {
            path: path.display().to_string(),
            text,
        })
    }

    pub fn from_text(path: &str, text: &str) -> Source {
        Source {
            path: path.to_string(),
            text: text.to_string(),
        }
    }

    /// Line of the last token of `path`, each token searched as a JSON
    /// string after the previous one. Falls back to the last token found.
    pub fn locate(&self, path: &[&str]) -> usize {
        let mut pos = 0;
        let mut found = 0;
        for tok in path {
            let needle = serde_json::to_string(tok).unwrap_or_default();
            if let Some(off) = self.text[pos..].find(&needle) {
                pos += off;
                found = pos;
                pos += needle.len();
            } else {
                break;
            }
        }
        self.text[..found].matches('\n').count() + 1
    }

    pub fn invalid(&self, path: &[&str], message: impl Into<String>) -> InputError {
        InputError::Invalid {
            path: self.path.clone(),
            line: self.locate(path),
            message: message.into(),
        }
    }

    pub fn parse<T: for<'de> Deserialize<'de>>(&self) -> Result<T, InputError> {
        serde_json::from_str(&self.text).map_err(|e| InputError::Syntax {
            path: self.path.clone(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Optional per-file expectations, compared by the corpus runner.
pub type Expectations = BTreeMap<String, Value>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    pub comp: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: Expectations,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawSSet {
    pub dim_bound: usize,
    pub cells: Vec<Vec<String>>,
    pub faces: BTreeMap<String, Vec<(Vec<usize>, String)>>,
    /// False when the file is a truncation: cells above the bound may exist.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: Expectations,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: Expectations,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawCube {
    pub face: (usize, u8),
    pub extents: Vec<usize>,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawBox {
    /// Graph file, relative to the box file; the CLI may supply it instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    pub n: usize,
    pub i: usize,
    pub eps: u8,
    pub faces: Vec<RawCube>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: Expectations,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraphMap {
    pub source: RawGraph,
    pub target: RawGraph,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawLineMap {
    #[serde(default)]
    pub offset: i64,
    pub walk: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawPullbackVertex {
    pub x: String,
    pub y: String,
    pub p1: RawLineMap,
    pub p2: RawLineMap,
}

/// A loaded category, marked or not.
#[derive(Clone, Debug)]
pub struct CategoryFile {
    pub category: MarkedCategory,
    /// Whether the file carried a marking; unmarked files mark identities.
    pub has_marking: bool,
    pub expect: Expectations,
}

#[derive(Clone, Debug)]
pub struct SSetFile {
    pub marked: MarkedSSet,
    pub has_marking: bool,
    pub expect: Expectations,
}

/// Either input kind, told apart by its keys.
#[derive(Clone, Debug)]
pub enum AnyInput {
    Category(CategoryFile),
    SSet(SSetFile),
}

pub fn category_from_source(src: &Source) -> Result<CategoryFile, InputError> {
    let raw: RawCategory = src.parse()?;
    let mut objects = BTreeMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if objects.insert(o.as_str(), i).is_some() {
            return Err(src.invalid(&["objects", o, o], format!("duplicate object {o:?}")));
        }
    }
    let mut morphisms = Vec::new();
    let mut index = BTreeMap::new();
    for (k, m) in raw.morphisms.iter().enumerate() {
        let at = ["morphisms", m.id.as_str()];
        let end = |name: &str| {
            objects
                .get(name)
                .copied()
                .ok_or_else(|| src.invalid(&at, format!("morphism {:?} has unknown endpoint {name:?}", m.id)))
        };
        let (dom, cod) = (end(&m.dom)?, end(&m.cod)?);
        if index.insert(m.id.as_str(), k).is_some() {
            return Err(src.invalid(&at, format!("duplicate morphism {:?}", m.id)));
        }
        morphisms.push(Morphism {
            name: m.id.clone(),
            dom,
            cod,
        });
    }
    let morph = |at: &[&str], name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| src.invalid(at, format!("unknown morphism {name:?}")))
    };
    let mut identities = Vec::new();
    for o in &raw.objects {
        let Some(id) = raw.identities.get(o) else {
            return Err(src.invalid(&["identities"], format!("object {o:?} has no identity")));
        };
        identities.push(morph(&["identities", o], id)?);
    }
    if let Some(extra) = raw.identities.keys().find(|k| !objects.contains_key(k.as_str())) {
        return Err(src.invalid(&["identities", extra], format!("identity for unknown object {extra:?}")));
    }
    let mut comp = Vec::new();
    for (g, f, h) in &raw.comp {
        let at = ["comp", g, f, h];
        comp.push((morph(&at, g)?, morph(&at, f)?, morph(&at, h)?));
    }
    let base = FinCategory::new(raw.objects.clone(), morphisms, identities, &comp)
        .map_err(|e| src.invalid(&["comp"], e.to_string()))?;
    let has_marking = raw.marked.is_some();
    let mut marked = Vec::new();
    for m in raw.marked.iter().flatten() {
        marked.push(morph(&["marked", m], m)?);
    }
    let category = MarkedCategory::new(base, marked).map_err(|e| src.invalid(&["marked"], e.to_string()))?;
    Ok(CategoryFile {
        category,
        has_marking,
        expect: raw.expect,
    })
}

pub fn sset_from_source(src: &Source) -> Result<SSetFile, InputError> {
    let raw: RawSSet = src.parse()?;
    let top = raw.cells.len().saturating_sub(1);
    if raw.cells.len() > raw.dim_bound + 1 && raw.cells[raw.dim_bound + 1..].iter().any(|l| !l.is_empty()) {
        return Err(src.invalid(&["cells"], format!("cells above dim_bound {}", raw.dim_bound)));
    }
    let mut where_: BTreeMap<&str, Cell> = BTreeMap::new();
    for (d, level) in raw.cells.iter().enumerate().take(raw.dim_bound.max(top) + 1) {
        for (i, name) in level.iter().enumerate() {
            if where_.insert(name.as_str(), Cell::new(d, i)).is_some() {
                return Err(src.invalid(&["cells", name, name], format!("duplicate cell name {name:?}")));
            }
        }
    }
    if let Some(k) = raw.faces.keys().find(|k| !where_.contains_key(k.as_str())) {
        return Err(src.invalid(&["faces", k], format!("faces given for unknown cell {k:?}")));
    }
    let mut b = SSetBuilder::new(raw.dim_bound, raw.exhaustive);
    for (d, level) in raw.cells.iter().enumerate() {
        for name in level {
            let listed = raw.faces.get(name);
            let mut faces = Vec::new();
            if d == 0 {
                if listed.is_some_and(|l| !l.is_empty()) {
                    return Err(src.invalid(&["faces", name], format!("vertex {name:?} cannot have faces")));
                }
            } else {
                let Some(list) = listed else {
                    return Err(src.invalid(&["cells", name], format!("cell {name:?} has no faces")));
                };
                for (word, target) in list {
                    let at = ["faces", name.as_str(), target.as_str()];
                    let Some(&cell) = where_.get(target.as_str()) else {
                        return Err(src.invalid(&at, format!("face of {name:?} names unknown cell {target:?}")));
                    };
                    let w = DegeneracyWord::from_indices(word).map_err(|e| src.invalid(&at, e.to_string()))?;
                    faces.push(Simplex::new(cell, w));
                }
            }
            b.add_cell(d, name, faces).map_err(|e| src.invalid(&["faces", name], e.to_string()))?;
        }
    }
    let x = b.build().map_err(|e| src.invalid(&["faces"], e.to_string()))?;
    let has_marking = raw.marked.is_some();
    let mut marked = Vec::new();
    for m in raw.marked.iter().flatten() {
        match where_.get(m.as_str()) {
            Some(c) if c.dim == 1 => marked.push(c.index),
            Some(_) => return Err(src.invalid(&["marked", m], format!("marked cell {m:?} is not an edge"))),
            None => return Err(src.invalid(&["marked", m], format!("unknown marked edge {m:?}"))),
        }
    }
    let marked = MarkedSSet::new(x, marked).map_err(|e| src.invalid(&["marked"], e.to_string()))?;
    Ok(SSetFile {
        marked,
        has_marking,
        expect: raw.expect,
    })
}

pub fn any_from_source(src: &Source) -> Result<AnyInput, InputError> {
    let v: Value = src.parse()?;
    match &v {
        Value::Object(m) if m.contains_key("objects") => Ok(AnyInput::Category(category_from_source(src)?)),
        Value::Object(m) if m.contains_key("cells") => Ok(AnyInput::SSet(sset_from_source(src)?)),
        _ => Err(src.invalid(&[], "expected a category (\"objects\") or a simplicial set (\"cells\")")),
    }
}

fn graph_from_raw(src: &Source, raw: &RawGraph, prefix: &[&str]) -> Result<Graph, InputError> {
    let at = |extra: &[&str]| -> Vec<String> { prefix.iter().chain(extra).map(|s| s.to_string()).collect() };
    let err = |extra: &[&str], msg: String| {
        let p = at(extra);
        let refs: Vec<&str> = p.iter().map(|s| s.as_str()).collect();
        src.invalid(&refs, msg)
    };
    let mut index = BTreeMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if index.insert(v.as_str(), i).is_some() {
            return Err(err(&["vertices", v, v], format!("duplicate vertex {v:?}")));
        }
    }
    let mut pairs = BTreeSet::new();
    for (u, v) in &raw.edges {
        let here = ["edges", u.as_str(), v.as_str()];
        let (Some(&a), Some(&b)) = (index.get(u.as_str()), index.get(v.as_str())) else {
            return Err(err(&here, format!("edge ({u:?}, {v:?}) has an unknown endpoint")));
        };
        if a == b {
            return Err(err(&here, format!("loop at {u:?}: loops are implicit")));
        }
        if !pairs.insert((a, b)) {
            return Err(err(&here, format!("edge ({u:?}, {v:?}) is listed twice")));
        }
    }
    // either every edge is listed once, or every edge in both directions
    let doubled = pairs.iter().filter(|&&(a, b)| pairs.contains(&(b, a))).count();
    if doubled > 0 && doubled < pairs.len() {
        let &(a, b) = pairs.iter().find(|&&(a, b)| !pairs.contains(&(b, a))).unwrap();
        let (u, v) = (&raw.vertices[a], &raw.vertices[b]);
        return Err(err(
            &["edges", u, v],
            format!("asymmetric edge list: ({u:?}, {v:?}) has no reverse while other edges do"),
        ));
    }
    let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|&(a, b)| doubled == 0 || a < b).collect();
    Graph::new(raw.vertices.clone(), &edges).map_err(|e| err(&["edges"], e.to_string()))
}

pub fn graph_from_source(src: &Source) -> Result<(Graph, Expectations), InputError> {
    let raw: RawGraph = src.parse()?;
    let g = graph_from_raw(src, &raw, &[])?;
    Ok((g, raw.expect))
}

fn vertex(src: &Source, g: &Graph, at: &[&str], name: &str) -> Result<usize, InputError> {
    g.find(name).ok_or_else(|| src.invalid(at, format!("unknown vertex {name:?}")))
}

/// A box over `g`. The graph path in the file, if any, is returned
/// resolved against the box file's directory.
pub fn box_from_source(src: &Source, g: Option<&Graph>) -> Result<(OpenBox, Option<PathBuf>, Expectations), InputError> {
    let raw: RawBox = src.parse()?;
    let graph_path = raw
        .graph
        .as_ref()
        .map(|p| Path::new(&src.path).parent().unwrap_or(Path::new(".")).join(p));
    let owned;
    let g = match g {
        Some(g) => g,
        None => {
            let Some(p) = &graph_path else {
                return Err(src.invalid(&[], "the box names no graph and none was given"));
            };
            owned = graph_from_source(&Source::read(p)?)?.0;
            &owned
        }
    };
    let mut faces = Vec::new();
    for c in &raw.faces {
        let label = format!("{}", c.face.0);
        let at = ["faces", "face", label.as_str()];
        let values = c
            .values
            .iter()
            .map(|v| vertex(src, g, &at, v))
            .collect::<Result<Vec<_>, _>>()?;
        let cube = StableCube::new(g, c.extents.clone(), values).map_err(|e| src.invalid(&at, e.to_string()))?;
        faces.push((c.face, cube));
    }
    let b = OpenBox {
        n: raw.n,
        i: raw.i,
        eps: raw.eps,
        faces,
    };
    b.check().map_err(|e| src.invalid(&["faces"], e.to_string()))?;
    Ok((b, graph_path, raw.expect))
}

/// A graph map `(source, target, f)`.
pub fn graph_map_from_source(src: &Source) -> Result<(Graph, Graph, GraphMap), InputError> {
    let raw: RawGraphMap = src.parse()?;
    let g = graph_from_raw(src, &raw.source, &["source"])?;
    let k = graph_from_raw(src, &raw.target, &["target"])?;
    let mut f = Vec::new();
    for v in g.names() {
        let Some(t) = raw.map.get(v) else {
            return Err(src.invalid(&["map"], format!("vertex {v:?} has no image")));
        };
        f.push(vertex(src, &k, &["map", v, t], t)?);
    }
    if let Some(extra) = raw.map.keys().find(|k| g.find(k).is_none()) {
        return Err(src.invalid(&["map", extra], format!("image given for unknown vertex {extra:?}")));
    }
    if !g.is_graph_map(&k, &f) {
        return Err(src.invalid(&["map"], "the map does not preserve adjacency"));
    }
    Ok((g, k, f))
}

pub fn pullback_vertex_from_source(src: &Source, g: &Graph, h: &Graph, k: &Graph) -> Result<PullbackVertex, InputError> {
    let raw: RawPullbackVertex = src.parse()?;
    let line = |key: &str, l: &RawLineMap| -> Result<LineMap, InputError> {
        if l.walk.is_empty() {
            return Err(src.invalid(&[key], "empty walk"));
        }
        let walk = l
            .walk
            .iter()
            .map(|v| vertex(src, k, &[key, v], v))
            .collect::<Result<Vec<_>, _>>()?;
        let m = LineMap::new(l.offset, walk);
        if !m.is_valid(k) {
            return Err(src.invalid(&[key], "the walk leaves the edges of the target"));
        }
        Ok(m)
    };
    Ok(PullbackVertex {
        x: vertex(src, g, &["x"], &raw.x)?,
        p1: line("p1", &raw.p1)?,
        p2: line("p2", &raw.p2)?,
        y: vertex(src, h, &["y"], &raw.y)?,
    })
}

pub fn load_category(path: &Path) -> Result<CategoryFile, InputError> {
    category_from_source(&Source::read(path)?)
}

pub fn load_sset(path: &Path) -> Result<SSetFile, InputError> {
    sset_from_source(&Source::read(path)?)
}

pub fn load_any(path: &Path) -> Result<AnyInput, InputError> {
    any_from_source(&Source::read(path)?)
}

pub fn load_graph(path: &Path) -> Result<(Graph, Expectations), InputError> {
    graph_from_source(&Source::read(path)?)
}

pub fn load_graph_map(path: &Path) -> Result<(Graph, Graph, GraphMap), InputError> {
    graph_map_from_source(&Source::read(path)?)
}

/// The file form of a category; `marked` is written for marked input.
pub fn category_to_raw(c: &MarkedCategory, marked: bool) -> RawCategory {
    let cat = c.base();
    RawCategory {
        objects: cat.objects().to_vec(),
        morphisms: cat
            .morphisms()
            .iter()
            .map(|m| RawMorphism {
                id: m.name.clone(),
                dom: cat.object_name(m.dom).to_string(),
                cod: cat.object_name(m.cod).to_string(),
            })
            .collect(),
        identities: (0..cat.object_count())
            .map(|x| (cat.object_name(x).to_string(), cat.name(cat.identity(x)).to_string()))
            .collect(),
        comp: cat
            .composition_triples()
            .into_iter()
            .filter(|&(g, f, _)| !cat.is_identity(g) && !cat.is_identity(f))
            .map(|(g, f, h)| (cat.name(g).to_string(), cat.name(f).to_string(), cat.name(h).to_string()))
            .collect(),
        marked: marked.then(|| c.marked().filter(|&f| !cat.is_identity(f)).map(|f| cat.name(f).to_string()).collect()),
        expect: Expectations::new(),
    }
}

/// The file form of a simplicial set. Names clashing across dimensions get
/// an `@dim` suffix so that every cell is named once.
pub fn sset_to_raw(x: &SSet, marked: Option<&MarkedSSet>) -> RawSSet {
    let mut count: BTreeMap<&str, usize> = BTreeMap::new();
    for c in x.all_cells() {
        *count.entry(x.name(c)).or_default() += 1;
    }
    let name = |c: Cell| -> String {
        if count[x.name(c)] > 1 {
            format!("{}@{}", x.name(c), c.dim)
        } else {
            x.name(c).to_string()
        }
    };
    let top = x.top_dim().unwrap_or(0);
    let cells: Vec<Vec<String>> = (0..=top).map(|d| x.cells(d).map(name).collect()).collect();
    let mut faces = BTreeMap::new();
    for c in x.all_cells().filter(|c| c.dim > 0) {
        let list = x.cell_faces(c).iter().map(|s| (s.word.indices(), name(s.cell))).collect();
        faces.insert(name(c), list);
    }
    RawSSet {
        dim_bound: x.dim_bound(),
        cells,
        faces,
        exhaustive: x.is_exhaustive(),
        marked: marked.map(|m| m.marked_cells().map(name).collect()),
        expect: Expectations::new(),
    }
}

pub fn graph_to_raw(g: &Graph) -> RawGraph {
    RawGraph {
        vertices: g.names().to_vec(),
        edges: g
            .edges()
            .into_iter()
            .map(|(a, b)| (g.name(a).to_string(), g.name(b).to_string()))
            .collect(),
        expect: Expectations::new(),
    }
}

pub fn cube_to_raw(g: &Graph, face: (usize, u8), c: &StableCube) -> RawCube {
    RawCube {
        face,
        extents: c.extents().to_vec(),
        values: c.values().iter().map(|&v| g.name(v).to_string()).collect(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
