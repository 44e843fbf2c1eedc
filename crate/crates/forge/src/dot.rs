//! Graphviz output for categories and their localizations.

use std::fmt::Write;

use fraction_forge_core::localize::GzFractions;
use fraction_forge_core::marked::MarkedCategory;

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

const MARKED_STYLE: &str = "color=blue, penwidth=2";

/// One node per object and one edge per non-identity morphism; marked
/// morphisms are drawn bold blue.
pub fn category_dot(name: &str, c: &MarkedCategory) -> String {
    let cat = c.base();
    let mut out = format!("digraph {} {{\n", quote(name));
    for x in 0..cat.object_count() {
        writeln!(out, "  {};", quote(cat.object_name(x))).unwrap();
    }
    for f in (0..cat.morphism_count()).filter(|&f| !cat.is_identity(f)) {
        let style = if c.is_marked(f) { format!(", {MARKED_STYLE}") } else { String::new() };
        writeln!(
            out,
            "  {} -> {} [label={}{}];",
            quote(cat.object_name(cat.dom(f))),
            quote(cat.object_name(cat.cod(f))),
            quote(cat.name(f)),
            style
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// One edge per non-identity class of the localization, labelled by its
/// representative cospan `w⁻¹ f`. Classes containing a marked morphism or
/// the inverse of one are drawn bold blue.
pub fn gz_dot(name: &str, c: &MarkedCategory, gz: &GzFractions) -> String {
    let cat = c.base();
    let loc = &gz.category;
    let mut inverted = vec![false; loc.morphism_count()];
    for w in c.marked().filter(|&w| !cat.is_identity(w)) {
        let m = gz.functor[w];
        inverted[m] = true;
        if let Some(inv) = loc.inverse(m) {
            inverted[inv] = true;
        }
    }
    let mut out = format!("digraph {} {{\n", quote(name));
    for x in 0..loc.object_count() {
        writeln!(out, "  {};", quote(loc.object_name(x))).unwrap();
    }
    for m in (0..loc.morphism_count()).filter(|&m| !loc.is_identity(m)) {
        let rep = gz.representative(m);
        // composite names are parenthesized before inverting
        let inv = |w: usize| {
            let n = cat.name(w);
            if n.contains('.') {
                format!("({n})^-1")
            } else {
                format!("{n}^-1")
            }
        };
        let label = if cat.is_identity(rep.w) {
            cat.name(rep.f).to_string()
        } else if cat.is_identity(rep.f) {
            inv(rep.w)
        } else {
            format!("{} {}", inv(rep.w), cat.name(rep.f))
        };
        let style = if inverted[m] { format!(", {MARKED_STYLE}") } else { String::new() };
        writeln!(
            out,
            "  {} -> {} [label={}{}];",
            quote(loc.object_name(loc.dom(m))),
            quote(loc.object_name(loc.cod(m))),
            quote(&label),
            style
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
