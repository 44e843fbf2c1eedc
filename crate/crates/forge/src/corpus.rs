//! The corpus runner: every JSON file under a directory is classified by its
//! keys, run through the invariant suite for its kind, and compared with its
//! `expect` block. Files run in parallel; the report is sorted by path.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fraction_forge_core::dht::{a1_agreement, a1_presentation, abelianization_rank, open_box_filler_search, Graph, ORACLE_MAX_VERTICES};
use fraction_forge_core::fractions::{
    check_clf_classical, check_crf_classical, check_infty, check_infty_nerve, check_proper_clf, check_proper_crf,
    deciding_shapes, Side,
};
use fraction_forge_core::localize::{
    compare_localizations, gz_left_fractions, gz_right_fractions, iso_over_objects, slice_filtered_check,
};
use fraction_forge_core::marked::{is_weakly_closed, MarkedCategory};
use fraction_forge_core::sset::is_quasicategory_upto;
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::commands::CommandError;
use crate::io::{self, AnyInput, Expectations, InputError, Source};

pub const CORPUS_WINDOW: usize = 8;
pub const CORPUS_ORACLE_BOUND: usize = 8;

/// Results of one file: computed values, broken invariants and unmet
/// expectations.
#[derive(Clone, Debug, Default)]
pub struct FileResult {
    pub kind: &'static str,
    pub checks: BTreeMap<String, Value>,
    pub broken: Vec<String>,
}

impl FileResult {
    fn new(kind: &'static str) -> Self {
        FileResult {
            kind,
            ..Default::default()
        }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.checks.insert(key.to_string(), v.into());
    }

    /// Records `holds` under `key` and marks the invariant broken if false.
    fn invariant(&mut self, key: &str, holds: bool) {
        self.set(key, holds);
        if !holds {
            self.broken.push(key.to_string());
        }
    }
}

fn deciding(c: &MarkedCategory, side: Side) -> Result<bool, CommandError> {
    Ok(check_infty_nerve(c, side, Some(&deciding_shapes(side)))?.holds())
}

/// The invariant suite for a marked category.
pub fn category_checks(c: &MarkedCategory) -> Result<FileResult, CommandError> {
    let mut r = FileResult::new("category");
    let base = c.base();
    let objects: Vec<usize> = (0..base.object_count()).collect();
    r.set("objects", base.object_count());
    r.set("morphisms", base.morphism_count());
    r.set("marked", c.marked().count());
    let clf = check_clf_classical(c).holds();
    let crf = check_crf_classical(c).holds();
    let proper_clf = check_proper_clf(c).holds();
    let proper_crf = check_proper_crf(c).holds();
    r.set("clf", clf);
    r.set("crf", crf);
    r.set("proper_clf", proper_clf);
    r.set("proper_crf", proper_crf);
    let two = c.is_two_out_of_three().holds();
    r.set("two_out_of_three", two);

    // proper fractions in C and lifting in its nerve agree
    let clf_infty = deciding(c, Side::L)?;
    let crf_infty = deciding(c, Side::R)?;
    r.set("clf_infty", clf_infty);
    r.set("crf_infty", crf_infty);
    r.invariant("equivalence_left", proper_clf == clf_infty);
    r.invariant("equivalence_right", proper_crf == crf_infty);

    // right conditions are the left ones of the opposite
    let op = c.opposite();
    r.invariant(
        "duality",
        check_proper_clf(&op).holds() == proper_crf && check_clf_classical(&op).holds() == crf,
    );

    // the nerve marked at isomorphisms has both calculi in dimensions <= 3
    let iso = MarkedCategory::at_isomorphisms(base.clone());
    let iso_l = check_infty_nerve(&iso, Side::L, None)?.holds();
    let iso_r = check_infty_nerve(&iso, Side::R, None)?.holds();
    r.invariant("iso_marking_infty", iso_l && iso_r);

    if proper_clf {
        let gz = gz_left_fractions(c)?;
        r.set("localization_morphisms", gz.category.morphism_count());
        let cmp = compare_localizations(c)?;
        r.invariant("localizations_agree", cmp.iso);
    }
    if crf {
        let right = gz_right_fractions(c)?;
        let left_op = gz_left_fractions(&op)?;
        let ok = iso_over_objects(&right.category, &left_op.category.opposite(), &objects).is_some();
        r.invariant("right_localization_duality", ok);
    }
    if two && clf {
        let mut all = true;
        for x in 0..base.object_count() {
            all &= slice_filtered_check(c, x)?;
        }
        r.invariant("coslices_filtered", all);
    }
    Ok(r)
}

pub fn sset_checks(x: &fraction_forge_core::marked::MarkedSSet) -> Result<FileResult, CommandError> {
    let mut r = FileResult::new("sset");
    let b = x.base();
    r.set("cells", json!(b.counts()));
    r.set("marked", x.marked_count());
    let upto = b.dim_bound().min(3);
    let qcat = is_quasicategory_upto(b, upto)?.holds();
    r.set("quasicategory_upto", upto);
    r.set("quasicategory", qcat);
    if upto >= 2 {
        r.set("weakly_closed", is_weakly_closed(x)?.holds());
    }
    if qcat && b.knows(3) {
        r.set("clf_infty", check_infty(x, Side::L, None)?.holds());
        r.set("crf_infty", check_infty(x, Side::R, None)?.holds());
    }
    Ok(r)
}

pub fn graph_checks(g: &Graph) -> Result<FileResult, CommandError> {
    let mut r = FileResult::new("graph");
    r.set("vertices", g.len());
    r.set("edges", g.edges().len());
    r.set("connected", g.is_connected());
    if !g.is_connected() || g.is_empty() {
        return Ok(r);
    }
    let p = a1_presentation(g, 0)?;
    let (rank, torsion) = abelianization_rank(&p.presentation);
    r.set("a1_generators", p.presentation.generators.len());
    r.set("a1_relators", p.presentation.relators.len());
    r.set("a1_rank", rank);
    r.set("a1_torsion", json!(torsion));
    if g.len() <= ORACLE_MAX_VERTICES {
        let agree = a1_agreement(g, 0, CORPUS_ORACLE_BOUND)?;
        if let Ok(t) = &agree {
            r.set("a1_generators_trivial", json!(t));
        }
        r.invariant("a1_oracle_agreement", agree.is_ok());
    }
    Ok(r)
}

fn classify(v: &Value) -> Option<&'static str> {
    let m = v.as_object()?;
    if m.contains_key("objects") {
        Some("category")
    } else if m.contains_key("cells") {
        Some("sset")
    } else if m.contains_key("vertices") {
        Some("graph")
    } else if m.contains_key("n") && m.contains_key("faces") {
        Some("box")
    } else {
        None
    }
}

fn run_file(path: &Path) -> Result<(FileResult, Expectations, String), CommandError> {
    let src = Source::read(path)?;
    let digest = hex::encode(Sha256::digest(src.text.as_bytes()));
    let v: Value = src.parse()?;
    let kind = classify(&v).ok_or_else(|| src.invalid(&[], "not a recognised corpus file"))?;
    let (res, expect) = match kind {
        "category" | "sset" => match io::any_from_source(&src)? {
            AnyInput::Category(f) => (category_checks(&f.category)?, f.expect),
            AnyInput::SSet(f) => (sset_checks(&f.marked)?, f.expect),
        },
        "graph" => {
            let (g, expect) = io::graph_from_source(&src)?;
            (graph_checks(&g)?, expect)
        }
        _ => {
            let (b, gpath, expect) = io::box_from_source(&src, None)?;
            let g = io::load_graph(gpath.as_deref().expect("box names a graph"))?.0;
            let mut r = FileResult::new("box");
            r.set("n", b.n);
            let found = open_box_filler_search(&g, &b, CORPUS_WINDOW)?.found().is_some();
            r.invariant("filled", found);
            (r, expect)
        }
    };
    Ok((res, expect, digest))
}

/// JSON files below `dir`, sorted by their path relative to it.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, InputError> {
    fn walk(d: &Path, out: &mut Vec<PathBuf>) -> Result<(), InputError> {
        let entries = std::fs::read_dir(d).map_err(|source| InputError::Read {
            path: d.display().to_string(),
            source,
        })?;
        for e in entries {
            let p = e
                .map_err(|source| InputError::Read {
                    path: d.display().to_string(),
                    source,
                })?
                .path();
            if p.is_dir() {
                walk(&p, out)?;
            } else if p.extension().is_some_and(|x| x == "json") {
                out.push(p);
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(dir, &mut out)?;
    out.sort();
    Ok(out)
}

/// Aggregated verdict; `ok` is false when any invariant or expectation
/// fails. Malformed files abort the run with an input error.
pub fn corpus_run(dir: &Path) -> Result<(bool, Value), CommandError> {
    let files = corpus_files(dir)?;
    let results: Vec<Result<_, CommandError>> = files.par_iter().map(|p| run_file(p)).collect();
    let mut entries = Vec::new();
    let mut all_ok = true;
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (path, res) in files.iter().zip(results) {
        let (r, expect, digest) = res?;
        *counts.entry(r.kind).or_default() += 1;
        let mut mismatches = Vec::new();
        for (k, want) in &expect {
            let got = r.checks.get(k).cloned().unwrap_or(Value::Null);
            if &got != want {
                mismatches.push(json!({"check": k, "expected": want, "got": got}));
            }
        }
        let ok = r.broken.is_empty() && mismatches.is_empty();
        all_ok &= ok;
        let rel = path.strip_prefix(dir).unwrap_or(path);
        entries.push(json!({
            "path": rel.to_string_lossy().replace('\\', "/"),
            "kind": r.kind,
            "sha256": digest,
            "ok": ok,
            "checks": r.checks,
            "broken_invariants": r.broken,
            "expectation_mismatches": mismatches,
        }));
    }
    let mut warnings = Vec::new();
    if files.is_empty() {
        warnings.push("empty corpus".to_string());
    }
    Ok((
        all_ok,
        json!({
            "ok": all_ok,
            "counts": counts,
            "files": entries,
            "warnings": warnings,
        }),
    ))
}
