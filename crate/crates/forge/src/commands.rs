//! The computations behind each subcommand. Every function returns an
//! [`Outcome`]: a pass/fail flag and a JSON report with sorted keys, so equal
//! inputs give byte-equal output.

use std::collections::BTreeMap;

use fraction_forge_core::dht::{
    a1_agreement, a1_presentation, abelianization_rank, open_box_filler_search, pullback_graph_lazy, Graph, GraphMap,
    LazyGraph, LineMap, OpenBox, PullbackVertex, Search, StableCube, ORACLE_MAX_LEN, ORACLE_MAX_VERTICES,
};
use fraction_forge_core::exfunctor::{ex_levels, ExLevels, SD_MAX_N};
use fraction_forge_core::fractions::{
    check_clf, check_infty, check_infty_nerve, has_rlp, shape_pair, ClassicalWitness, InftyReport, Side, SHAPE_MAX_N,
};
use fraction_forge_core::localize::{
    compare_localizations, fraction_space_lf, fraction_space_rf, gz_left_fractions, gz_right_fractions, GzFractions,
    SLICE_MAX_LEVEL,
};
use fraction_forge_core::marked::{MarkedCategory, MarkedSSet};
use fraction_forge_core::sset::{SMap, SSet};
use serde_json::{json, Value};

use crate::io::{AnyInput, InputError};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Engine(#[from] fraction_forge_core::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub ok: bool,
    pub report: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Classical,
    Proper,
    Infty,
}

pub const MAX_EX_LEVELS: usize = SD_MAX_N;
pub const MAX_ORACLE_BOUND: usize = ORACLE_MAX_LEN;
pub const MAX_WINDOW: usize = 16;
pub const MAX_RADIUS: usize = 4;

pub fn side_name(side: Side) -> &'static str {
    match side {
        Side::L => "L",
        Side::R => "R",
    }
}

fn guard(name: &str, value: usize, ceiling: usize) -> Result<(), CommandError> {
    if value > ceiling {
        return Err(CommandError::Usage(format!("--{name} {value} exceeds the ceiling {ceiling}")));
    }
    Ok(())
}

pub fn classical_witness(c: &MarkedCategory, w: &ClassicalWitness) -> Value {
    let n = |f: usize| c.base().name(f).to_string();
    match *w {
        ClassicalWitness::NotClosed { g, f } => json!({"kind": "not_closed", "g": n(g), "f": n(f)}),
        ClassicalWitness::Span { f, w } => json!({"kind": "span", "f": n(f), "w": n(w)}),
        ClassicalWitness::ImproperSpan { f, w } => json!({"kind": "improper_span", "f": n(f), "w": n(w)}),
        ClassicalWitness::Coequalize { f, g, w } => json!({"kind": "coequalize", "f": n(f), "g": n(g), "w": n(w)}),
    }
}

/// Images of the non-degenerate cells of `src`, by name.
pub fn map_json(f: &SMap, src: &SSet, tgt: &SSet) -> Value {
    let images: BTreeMap<String, String> = src
        .all_cells()
        .map(|c| (src.name(c).to_string(), tgt.simplex_name(f.cell_image(c))))
        .collect();
    json!(images)
}

pub fn shape_label(side: Side, n: usize, k: usize) -> String {
    format!("{}-J^{n}_{k} -> {}-I^{n}_{k}", side_name(side), side_name(side))
}

fn infty_json(x: &SSet, r: &InftyReport) -> (bool, Vec<Value>, Vec<String>) {
    let mut witnesses = Vec::new();
    if let Some(h) = r.weakly_closed.witness() {
        witnesses.push(json!({"kind": "weak_closure", "f": x.simplex_name(h.f), "g": x.simplex_name(h.g)}));
    }
    let mut shapes = Vec::new();
    for s in &r.shapes {
        let label = shape_label(r.side, s.n, s.k);
        if let Some(m) = s.verdict.witness() {
            let pair = shape_pair(s.n, s.k, r.side).expect("checked shape");
            witnesses.push(json!({"kind": "lift", "shape": label, "map": map_json(m, pair.j.sset(), x)}));
        }
        shapes.push(label);
    }
    (r.holds(), witnesses, shapes)
}

pub fn fractions_check(input: &AnyInput, mode: Mode, side: Side) -> Result<Outcome, CommandError> {
    let (ok, witnesses, shapes, partial) = match (mode, input) {
        (Mode::Classical | Mode::Proper, AnyInput::Category(f)) => {
            let c = match side {
                Side::L => f.category.clone(),
                Side::R => f.category.opposite(),
            };
            let v = check_clf(&c, mode == Mode::Proper);
            let w: Vec<Value> = v.witness().map(|w| classical_witness(&c, w)).into_iter().collect();
            (v.holds(), w, Vec::new(), false)
        }
        (Mode::Classical | Mode::Proper, AnyInput::SSet(_)) => {
            return Err(CommandError::Usage("classical and proper modes need a category".into()))
        }
        (Mode::Infty, AnyInput::Category(f)) => {
            let r = check_infty_nerve(&f.category, side, None)?;
            let x = f.category.nerve(3).marked;
            let (ok, w, s) = infty_json(x.base(), &r);
            (ok, w, s, r.partial)
        }
        (Mode::Infty, AnyInput::SSet(f)) => {
            let r = check_infty(&f.marked, side, None)?;
            let (ok, w, s) = infty_json(f.marked.base(), &r);
            (ok, w, s, r.partial)
        }
    };
    let mode_name = match mode {
        Mode::Classical => "classical",
        Mode::Proper => "proper",
        Mode::Infty => "infty",
    };
    Ok(Outcome {
        ok,
        report: json!({
            "ok": ok,
            "mode": mode_name,
            "side": side_name(side),
            "witnesses": witnesses,
            "shapes_checked": shapes,
            "partial": partial,
        }),
    })
}

fn marked_input(input: &AnyInput, dim: usize) -> MarkedSSet {
    match input {
        AnyInput::Category(f) => f.category.nerve(dim).marked,
        AnyInput::SSet(f) => f.marked.clone(),
    }
}

pub fn fractions_lift(input: &AnyInput, side: Side, n: usize, k: usize) -> Result<Outcome, CommandError> {
    guard("n", n, SHAPE_MAX_N.min(3))?;
    if k > n || n < 1 {
        return Err(CommandError::Usage(format!("shape ({n}, {k}) needs 0 <= k <= n and n >= 1")));
    }
    let x = marked_input(input, n);
    let pair = shape_pair(n, k, side)?;
    let v = has_rlp(&x, &pair)?;
    let witness = v.witness().map(|m| map_json(m, pair.j.sset(), x.base()));
    Ok(Outcome {
        ok: v.holds(),
        report: json!({
            "ok": v.holds(),
            "shape": shape_label(side, n, k),
            "witness": witness,
        }),
    })
}

pub fn gz(c: &MarkedCategory, side: Side) -> Result<GzFractions, CommandError> {
    Ok(match side {
        Side::L => gz_left_fractions(c)?,
        Side::R => gz_right_fractions(c)?,
    })
}

pub fn localize_gz(c: &MarkedCategory, side: Side) -> Result<(Outcome, GzFractions), CommandError> {
    let g = gz(c, side)?;
    let cat = c.base();
    let loc = &g.category;
    let morphisms: Vec<Value> = (0..loc.morphism_count())
        .map(|m| {
            let rep = g.representative(m);
            json!({
                "id": loc.name(m),
                "dom": loc.object_name(loc.dom(m)),
                "cod": loc.object_name(loc.cod(m)),
                "representative": {"f": cat.name(rep.f), "w": cat.name(rep.w)},
                "class_size": g.classes[m].len(),
            })
        })
        .collect();
    let functor: BTreeMap<String, String> = (0..cat.morphism_count())
        .map(|f| (cat.name(f).to_string(), loc.name(g.functor[f]).to_string()))
        .collect();
    let mut hom = Vec::new();
    for x in 0..loc.object_count() {
        for y in 0..loc.object_count() {
            hom.push(json!({"source": loc.object_name(x), "target": loc.object_name(y), "size": g.hom_size(x, y)}));
        }
    }
    let report = json!({
        "ok": true,
        "side": side_name(side),
        "objects": loc.objects(),
        "morphisms": morphisms,
        "functor": functor,
        "hom_sizes": hom,
    });
    Ok((Outcome { ok: true, report }, g))
}

pub fn localize_ex(input: &AnyInput, side: Side, levels: usize) -> Result<(Outcome, ExLevels), CommandError> {
    guard("levels", levels, MAX_EX_LEVELS)?;
    let x = marked_input(input, levels.max(1));
    let ex = ex_levels(&x, levels, side)?;
    let mut out = Vec::new();
    for m in 0..=ex.bound() {
        let elements: Vec<Value> = (0..ex.elements[m].len())
            .map(|e| {
                let vs: Vec<&str> = ex.vertex_images(m, e).into_iter().map(|c| x.base().name(c)).collect();
                json!({
                    "name": ex.sset.simplex_name(ex.simplex(m, e)),
                    "vertices": vs,
                    "faces": ex.faces[m].get(e).cloned().unwrap_or_default(),
                    "degenerate": ex.simplex(m, e).is_degenerate(),
                })
            })
            .collect();
        out.push(json!({"level": m, "count": elements.len(), "elements": elements}));
    }
    let report = json!({
        "ok": true,
        "side": side_name(side),
        "levels": out,
        "nondegenerate": ex.sset.counts(),
    });
    Ok((Outcome { ok: true, report }, ex))
}

pub fn localize_compare(c: &MarkedCategory) -> Result<Outcome, CommandError> {
    let r = compare_localizations(c)?;
    let table: Vec<Value> = r
        .hom_table
        .iter()
        .map(|h| json!({"source": h.source, "target": h.target, "gz": h.gz, "colimit": h.colimit, "pi0": h.pi0, "ho": h.ho}))
        .collect();
    Ok(Outcome {
        ok: r.iso,
        report: json!({"iso": r.iso, "hom_table": table, "witnesses": r.witnesses}),
    })
}

pub fn mapspace(input: &AnyInput, side: Side, a: &str, b: &str, levels: usize) -> Result<Outcome, CommandError> {
    guard("levels", levels, SLICE_MAX_LEVEL)?;
    let x = marked_input(input, levels + 1);
    let base = x.base();
    let vertex = |name: &str| {
        base.find(0, name)
            .ok_or_else(|| CommandError::Usage(format!("no vertex named {name:?}")))
    };
    let (va, vb) = (vertex(a)?, vertex(b)?);
    let fs = match side {
        Side::L => fraction_space_lf(&x, va, vb, levels)?,
        Side::R => fraction_space_rf(&x, va, vb, levels)?,
    };
    let (labels, count) = fs.components();
    let vertices: Vec<Value> = (0..fs.elements[0].len())
        .map(|i| {
            let (e1, e2) = fs.vertex_edges(i);
            json!({"first": base.simplex_name(e1), "second": base.simplex_name(e2), "component": labels[i]})
        })
        .collect();
    Ok(Outcome {
        ok: true,
        report: json!({
            "ok": true,
            "side": side_name(side),
            "source": a,
            "target": b,
            "counts": fs.elements.iter().map(|l| l.len()).collect::<Vec<_>>(),
            "components": count,
            "vertices": vertices,
        }),
    })
}

fn word_string(p: &fraction_forge_core::dht::GroupPresentation, w: &[i32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|&l| {
            let g = &p.generators[(l.unsigned_abs() - 1) as usize];
            if l > 0 {
                g.clone()
            } else {
                format!("{g}^-1")
            }
        })
        .collect();
    parts.join(" ")
}

pub fn graph_a1(g: &Graph, base: usize, oracle_bound: usize) -> Result<Outcome, CommandError> {
    guard("oracle-bound", oracle_bound, MAX_ORACLE_BOUND)?;
    let p = a1_presentation(g, base)?;
    let pres = &p.presentation;
    let (rank, torsion) = abelianization_rank(pres);
    let relators: Vec<String> = pres.relators.iter().map(|r| word_string(pres, r)).collect();
    let loops: Vec<Vec<&str>> = p.loops.iter().map(|l| l.iter().map(|&v| g.name(v)).collect()).collect();
    let (ok, oracle) = if g.len() <= ORACLE_MAX_VERTICES {
        match a1_agreement(g, base, oracle_bound)? {
            Ok(triv) => (true, json!({"bound": oracle_bound, "agrees": true, "generator_trivial": triv})),
            Err(gen) => (
                false,
                json!({"bound": oracle_bound, "agrees": false, "disagreement": pres.generators[gen]}),
            ),
        }
    } else {
        (true, Value::Null)
    };
    Ok(Outcome {
        ok,
        report: json!({
            "ok": ok,
            "base": g.name(base),
            "generators": pres.generators,
            "generator_loops": loops,
            "relators": relators,
            "rank": rank,
            "torsion": torsion,
            "oracle": oracle,
        }),
    })
}

pub fn cube_json(g: &Graph, c: &StableCube) -> Value {
    let values: Vec<&str> = c.values().iter().map(|&v| g.name(v)).collect();
    json!({"extents": c.extents(), "values": values})
}

pub fn nerve_box(g: &Graph, b: &OpenBox, window: usize) -> Result<Outcome, CommandError> {
    guard("window", window, MAX_WINDOW)?;
    let (ok, filler) = match open_box_filler_search(g, b, window)? {
        Search::Found(c) => (true, cube_json(g, &c)),
        Search::Exhausted(_) => (false, Value::Null),
    };
    Ok(Outcome {
        ok,
        report: json!({
            "ok": ok,
            "box": {"n": b.n, "i": b.i, "eps": b.eps},
            "window": window,
            "filler": filler,
        }),
    })
}

fn line_json(k: &Graph, l: &LineMap) -> Value {
    let walk: Vec<&str> = l.walk.iter().map(|&v| k.name(v)).collect();
    json!({"offset": l.offset, "walk": walk})
}

/// Probes the pullback of `f : G → K ← H : gm` around a vertex.
pub fn pullback_probe(
    (g, k, f): (&Graph, &Graph, &GraphMap),
    (h, gm): (&Graph, &GraphMap),
    v: &PullbackVertex,
    radius: usize,
) -> Result<Outcome, CommandError> {
    guard("radius", radius, MAX_RADIUS)?;
    let p = pullback_graph_lazy(g, h, k, f, gm)?;
    if !p.is_vertex(v) {
        return Err(CommandError::Usage("the probe vertex is not a vertex of the pullback".into()));
    }
    let ball = p.ball(v, radius, 1);
    let mut by_distance = vec![0usize; radius + 1];
    let mut commutes = true;
    for (u, &d) in &ball {
        by_distance[d] += 1;
        commutes &= p.square_commutes_at(u);
    }
    let neighbors: Vec<Value> = p
        .neighbors(&p.canonical(v), 1)
        .iter()
        .map(|u| {
            json!({
                "x": g.name(u.x),
                "y": h.name(u.y),
                "p1": line_json(k, &u.p1),
                "p2": line_json(k, &u.p2),
            })
        })
        .collect();
    Ok(Outcome {
        ok: commutes,
        report: json!({
            "ok": commutes,
            "radius": radius,
            "projections": {
                "G": g.name(p.pi_g(v)),
                "H": h.name(p.pi_h(v)),
                "K": k.name(p.pi_k(v)),
                "pi_1": line_json(k, &p.pi_1(v)),
                "pi_2": line_json(k, &p.pi_2(v)),
            },
            "ball_sizes": by_distance,
            "square_commutes": commutes,
            "neighbors": neighbors,
        }),
    })
}
