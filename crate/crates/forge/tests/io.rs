use fraction_forge::io::{
    self, any_from_source, category_from_source, graph_from_source, sset_from_source, AnyInput, InputError, Source,
};
use fraction_forge_core::dht::Graph;
use fraction_forge_core::localize::iso_over_objects;
use fraction_forge_core::marked::{MarkedCategory, MarkedSSet};
use fraction_forge_core::sset::{boundary, find_isomorphism, horn, nerve_category, standard_simplex, FinCategory, Poset};

const ARROW: &str = r#"{
  "objects": ["a", "b"],
  "morphisms": [
    {"id": "id_a", "dom": "a", "cod": "a"},
    {"id": "id_b", "dom": "b", "cod": "b"},
    {"id": "f", "dom": "a", "cod": "b"}
  ],
  "identities": {"a": "id_a", "b": "id_b"},
  "comp": [],
  "marked": ["f"]
}
"#;

fn line_of(e: InputError) -> usize {
    e.line().expect("a located error")
}

#[test]
fn loads_a_marked_category() {
    let f = category_from_source(&Source::from_text("arrow.json", ARROW)).unwrap();
    assert!(f.has_marking);
    let c = &f.category;
    assert_eq!(c.base().object_count(), 2);
    assert!(c.is_marked(c.base().find_morphism("f").unwrap()));
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let bad = ARROW.replace("\"comp\": [],", "\"comp\": [,");
    let e = category_from_source(&Source::from_text("x.json", &bad)).unwrap_err();
    assert!(matches!(e, InputError::Syntax { line: 9, .. }), "{e}");
    let missing = ARROW.replace("  \"identities\": {\"a\": \"id_a\", \"b\": \"id_b\"},\n", "");
    let e = category_from_source(&Source::from_text("x.json", &missing)).unwrap_err();
    assert!(e.to_string().contains("identities"), "{e}");
}

#[test]
fn unknown_fields_are_rejected() {
    let bad = ARROW.replace("\"comp\": [],", "\"comp\": [], \"extra\": 1,");
    let e = category_from_source(&Source::from_text("x.json", &bad)).unwrap_err();
    assert_eq!(line_of(e), 9);
}

#[test]
fn semantic_errors_point_at_the_line() {
    let bad = ARROW.replace("{\"id\": \"f\", \"dom\": \"a\", \"cod\": \"b\"}", "{\"id\": \"f\", \"dom\": \"a\", \"cod\": \"z\"}");
    let e = category_from_source(&Source::from_text("x.json", &bad)).unwrap_err();
    assert_eq!(line_of(e), 6);
    let bad = ARROW.replace("\"marked\": [\"f\"]", "\"marked\": [\"g\"]");
    let e = category_from_source(&Source::from_text("x.json", &bad)).unwrap_err();
    assert_eq!(line_of(e), 10);
    let bad = ARROW.replace("\"comp\": []", "\"comp\": [[\"f\", \"f\", \"f\"]]");
    let e = category_from_source(&Source::from_text("x.json", &bad)).unwrap_err();
    assert_eq!(line_of(e), 9);
    assert!(e_msg(&bad).contains("not composable"));
}

fn e_msg(text: &str) -> String {
    category_from_source(&Source::from_text("x.json", text)).unwrap_err().to_string()
}

#[test]
fn categories_round_trip() {
    let cats = [
        FinCategory::from_poset(&Poset::chain(2)),
        FinCategory::walking_isomorphism(),
        FinCategory::cyclic_group(3),
        FinCategory::free_on_dag(&["a", "b", "c"], &[("f", 0, 1), ("g", 0, 1), ("h", 1, 2)], &[(vec![0, 2], vec![1, 2])])
            .unwrap(),
    ];
    for c in cats {
        let m = MarkedCategory::everything(c.clone());
        let text = io::to_json(&io::category_to_raw(&m, true));
        let back = category_from_source(&Source::from_text("rt.json", &text)).unwrap();
        let objs: Vec<usize> = (0..c.object_count()).collect();
        let map = iso_over_objects(&c, back.category.base(), &objs).expect("same category");
        for (f, &g) in map.iter().enumerate() {
            assert_eq!(c.name(f), back.category.base().name(g));
        }
        assert_eq!(back.category.marked().count(), c.morphism_count());
    }
}

#[test]
fn simplicial_sets_round_trip() {
    let sets = [
        standard_simplex(2),
        boundary(2).unwrap(),
        horn(3, 1).unwrap(),
        nerve_category(&FinCategory::walking_isomorphism(), 2),
        nerve_category(&FinCategory::cyclic_group(2), 3),
    ];
    for x in sets {
        let m = MarkedSSet::from_fn(x.clone(), |c| c.index % 2 == 0);
        let text = io::to_json(&io::sset_to_raw(&x, Some(&m)));
        let back = sset_from_source(&Source::from_text("rt.json", &text)).unwrap();
        assert_eq!(back.marked.base().counts(), x.counts());
        assert!(find_isomorphism(&x, back.marked.base()).unwrap().is_some());
        assert_eq!(back.marked.marked_count(), m.marked_count());
    }
}

const EDGE: &str = r#"{
  "dim_bound": 1,
  "cells": [["x", "y"], ["e"]],
  "faces": {
    "e": [[[], "y"], [[], "x"]]
  },
  "marked": ["e"]
}
"#;

#[test]
fn sset_errors() {
    let ok = sset_from_source(&Source::from_text("e.json", EDGE)).unwrap();
    assert_eq!(ok.marked.marked_count(), 1);
    let bad = EDGE.replace("[[], \"x\"]]", "[[], \"z\"]]");
    assert_eq!(line_of(sset_from_source(&Source::from_text("e.json", &bad)).unwrap_err()), 5);
    let bad = EDGE.replace("\"marked\": [\"e\"]", "\"marked\": [\"x\"]");
    assert_eq!(line_of(sset_from_source(&Source::from_text("e.json", &bad)).unwrap_err()), 7);
    let bad = EDGE.replace("[[], \"y\"]", "[[0], \"y\"]");
    assert!(sset_from_source(&Source::from_text("e.json", &bad)).is_err());
    let dup = EDGE.replace("[\"x\", \"y\"]", "[\"x\", \"e\"]");
    assert!(sset_from_source(&Source::from_text("e.json", &dup)).is_err());
}

#[test]
fn kinds_are_detected() {
    assert!(matches!(any_from_source(&Source::from_text("a", ARROW)).unwrap(), AnyInput::Category(_)));
    assert!(matches!(any_from_source(&Source::from_text("e", EDGE)).unwrap(), AnyInput::SSet(_)));
    assert!(any_from_source(&Source::from_text("v", "{\"vertices\": []}")).is_err());
}

const TRIANGLE: &str = r#"{
  "vertices": ["a", "b", "c"],
  "edges": [
    ["a", "b"],
    ["b", "c"],
    ["c", "a"]
  ]
}
"#;

#[test]
fn graphs_reject_loops_and_asymmetry() {
    let (g, _) = graph_from_source(&Source::from_text("t.json", TRIANGLE)).unwrap();
    assert_eq!(g.edges().len(), 3);
    let looped = TRIANGLE.replace("[\"b\", \"c\"]", "[\"b\", \"b\"]");
    assert_eq!(line_of(graph_from_source(&Source::from_text("t.json", &looped)).unwrap_err()), 5);
    // fully symmetric listings are accepted, partial ones are not
    let sym = TRIANGLE.replace(
        "[\"c\", \"a\"]",
        "[\"c\", \"a\"], [\"b\", \"a\"], [\"c\", \"b\"], [\"a\", \"c\"]",
    );
    let (h, _) = graph_from_source(&Source::from_text("t.json", &sym)).unwrap();
    assert_eq!(h.edges(), g.edges());
    let partial = TRIANGLE.replace("[\"c\", \"a\"]", "[\"c\", \"a\"], [\"b\", \"a\"]");
    let e = graph_from_source(&Source::from_text("t.json", &partial)).unwrap_err();
    assert!(e.to_string().contains("asymmetric"), "{e}");
    let dup = TRIANGLE.replace("[\"c\", \"a\"]", "[\"c\", \"a\"], [\"c\", \"a\"]");
    assert!(graph_from_source(&Source::from_text("t.json", &dup)).is_err());
    let unknown = TRIANGLE.replace("[\"b\", \"c\"]", "[\"b\", \"q\"]");
    assert_eq!(line_of(graph_from_source(&Source::from_text("t.json", &unknown)).unwrap_err()), 5);
}

#[test]
fn graphs_round_trip() {
    for g in [Graph::cycle(5), Graph::complete(4), Graph::interval(3)] {
        let text = io::to_json(&io::graph_to_raw(&g));
        let (h, _) = graph_from_source(&Source::from_text("g.json", &text)).unwrap();
        assert_eq!(h.edges(), g.edges());
        assert_eq!(h.names(), g.names());
    }
}

#[test]
fn graph_maps_must_preserve_adjacency() {
    let map = |images: &str| {
        format!(
            r#"{{"source": {{"vertices": ["0", "1"], "edges": [["0", "1"]]}},
  "target": {{"vertices": ["p", "q", "r"], "edges": [["p", "q"], ["q", "r"]]}},
  "map": {images}}}"#
        )
    };
    let ok = io::graph_map_from_source(&Source::from_text("f.json", &map(r#"{"0": "p", "1": "q"}"#))).unwrap();
    assert_eq!(ok.2, vec![0, 1]);
    assert!(io::graph_map_from_source(&Source::from_text("f.json", &map(r#"{"0": "p", "1": "r"}"#))).is_err());
    assert!(io::graph_map_from_source(&Source::from_text("f.json", &map(r#"{"0": "p"}"#))).is_err());
}
