//! Writes the shipped corpus: marked categories, simplicial sets, graphs
//! and open boxes. Usage: `cargo run --example gen_corpus -- <dir>`.

use std::collections::BTreeMap;
use std::path::Path;

use fraction_forge::io::{self, cube_to_raw, graph_to_raw, RawBox};
use fraction_forge_core::dht::{Graph, StableCube};
use fraction_forge_core::marked::{MarkedCategory, MarkedSSet};
use fraction_forge_core::sset::{horn, standard_simplex, FinCategory, Poset};
use serde_json::{json, Value};

fn poset(names: &[&str], rel: &[(usize, usize)]) -> Poset {
    Poset::from_relations(names.iter().map(|s| s.to_string()).collect(), rel).unwrap()
}

fn mark(c: FinCategory, names: &[&str]) -> MarkedCategory {
    let ids: Vec<usize> = names.iter().map(|n| c.find_morphism(n).unwrap_or_else(|| panic!("no {n}"))).collect();
    MarkedCategory::new(c, ids).unwrap()
}

fn expect(pairs: &[(&str, bool)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|&(k, v)| (k.to_string(), json!(v))).collect()
}

fn write(dir: &Path, name: &str, text: String) {
    std::fs::create_dir_all(dir).unwrap();
    std::fs::write(dir.join(name), text).unwrap();
}

fn categories() -> Vec<(&'static str, MarkedCategory, Vec<(&'static str, bool)>)> {
    let arrow = FinCategory::from_poset(&Poset::chain(1));
    let chain2 = FinCategory::from_poset(&Poset::chain(2));
    let vee = FinCategory::from_poset(&poset(&["a", "b", "c"], &[(0, 1), (0, 2)]));
    let wedge = FinCategory::from_poset(&poset(&["a", "b", "c"], &[(0, 2), (1, 2)]));
    let square = FinCategory::from_poset(&poset(&["a", "b", "c", "d"], &[(0, 1), (0, 2), (1, 3), (2, 3)]));
    let pair = FinCategory::free_on_dag(&["a", "b"], &[("f", 0, 1), ("g", 0, 1)], &[]).unwrap();
    let coeq = FinCategory::free_on_dag(
        &["a", "b", "c"],
        &[("f", 0, 1), ("g", 0, 1), ("h", 1, 2)],
        &[(vec![0, 2], vec![1, 2])],
    )
    .unwrap();
    let crafted = FinCategory::free_on_dag(
        &["a", "b", "c", "d"],
        &[("f", 0, 1), ("g", 0, 1), ("w", 1, 2), ("u", 2, 3)],
        &[(vec![0, 2], vec![1, 2])],
    )
    .unwrap();
    let iso_arrow = FinCategory::free_on_dag(&["a", "b", "c"], &[("f", 0, 1), ("h", 1, 2)], &[]).unwrap();
    let e = |c: &FinCategory, n: &str| c.find_morphism(n).unwrap();
    let rel = |c: &FinCategory, d: usize, t: usize| c.hom(d, t)[0];
    let both = [("clf", true), ("crf", true), ("proper_clf", true), ("proper_crf", true)];
    vec![
        ("walking_marked_arrow", MarkedCategory::everything(arrow.clone()), both.to_vec()),
        ("arrow_identities", MarkedCategory::identities_only(arrow.clone()), both.to_vec()),
        ("parallel_pair_one_marked", mark(pair.clone(), &["f"]), vec![("clf", false), ("proper_clf", false)]),
        ("parallel_pair_unmarked", MarkedCategory::identities_only(pair.clone()), both.to_vec()),
        ("parallel_pair_both_marked", mark(pair.clone(), &["f", "g"]), vec![("clf", false)]),
        ("chain2_all", MarkedCategory::everything(chain2.clone()), both.to_vec()),
        ("chain2_lower", MarkedCategory::new(chain2.clone(), [rel(&chain2, 0, 1)]).unwrap(), vec![]),
        ("chain2_upper", MarkedCategory::new(chain2.clone(), [rel(&chain2, 1, 2)]).unwrap(), vec![]),
        ("vee_all", MarkedCategory::everything(vee.clone()), vec![("clf", false)]),
        ("vee_one_leg", MarkedCategory::new(vee.clone(), [rel(&vee, 0, 1)]).unwrap(), vec![("proper_clf", false)]),
        ("wedge_all", MarkedCategory::everything(wedge.clone()), vec![("clf", true), ("proper_clf", true)]),
        ("square_all", MarkedCategory::everything(square.clone()), both.to_vec()),
        (
            "square_lower_legs",
            MarkedCategory::new(square.clone(), [rel(&square, 0, 1), rel(&square, 0, 2)]).unwrap(),
            vec![("clf", false)],
        ),
        (
            "square_parallel",
            MarkedCategory::new(square.clone(), [rel(&square, 0, 1), rel(&square, 2, 3)]).unwrap(),
            vec![],
        ),
        ("coequalizer_h", mark(coeq.clone(), &["h"]), vec![]),
        ("coequalizer_f", mark(coeq.clone(), &["f"]), vec![("clf", false)]),
        ("coequalizer_identities", MarkedCategory::identities_only(coeq.clone()), both.to_vec()),
        ("crafted", mark(crafted.clone(), &["w", "u", "u.w"]), vec![("proper_clf", true)]),
        ("walking_iso_identities", MarkedCategory::identities_only(FinCategory::walking_isomorphism()), both.to_vec()),
        ("walking_iso_all", MarkedCategory::everything(FinCategory::walking_isomorphism()), both.to_vec()),
        ("c2_all", MarkedCategory::everything(FinCategory::cyclic_group(2)), both.to_vec()),
        ("c3_identities", MarkedCategory::identities_only(FinCategory::cyclic_group(3)), both.to_vec()),
        ("c3_all", MarkedCategory::everything(FinCategory::cyclic_group(3)), both.to_vec()),
        ("arrow_then_arrow_first", MarkedCategory::new(iso_arrow.clone(), [e(&iso_arrow, "f")]).unwrap(), vec![]),
        (
            "arrow_squared_first_factor",
            {
                let p = arrow.product(&arrow);
                let cat = p.clone();
                MarkedCategory::from_fn(p, |m| {
                    let (d, c) = (cat.dom(m), cat.cod(m));
                    cat.object_name(d).ends_with(",0)") == cat.object_name(c).ends_with(",0)")
                })
            },
            vec![],
        ),
        ("c2_times_arrow", MarkedCategory::everything(FinCategory::cyclic_group(2).product(&arrow)), vec![]),
    ]
}

fn graphs() -> Vec<(&'static str, Graph, Option<usize>)> {
    let named = |n: usize, edges: &[(usize, usize)]| Graph::new((0..n).map(|i| i.to_string()).collect(), edges).unwrap();
    vec![
        ("c3", Graph::cycle(3), Some(0)),
        ("c4", Graph::cycle(4), Some(0)),
        ("c5", Graph::cycle(5), Some(1)),
        ("c6", Graph::cycle(6), Some(1)),
        ("c7", Graph::cycle(7), Some(1)),
        ("c8", Graph::cycle(8), Some(1)),
        ("path4", Graph::interval(3), Some(0)),
        ("tree6", named(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]), Some(0)),
        ("k4", Graph::complete(4), Some(0)),
        ("house", named(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]), Some(0)),
        ("k23", named(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]), Some(0)),
        ("theta6", named(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]), Some(0)),
        (
            "petersen",
            named(
                10,
                &[
                    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                ],
            ),
            Some(6),
        ),
    ]
}

/// Cubes whose faces give fillable boxes, with the graph they live in.
fn box_cubes(gs: &BTreeMap<&str, Graph>) -> Vec<(&'static str, StableCube)> {
    let walk = |g: &str, w: &[usize]| StableCube::walk(&gs[g], w).unwrap();
    let grid = |g: &str, ext: [usize; 2], v: &[usize]| StableCube::new(&gs[g], ext.to_vec(), v.to_vec()).unwrap();
    vec![
        ("c4", walk("c4", &[0, 1, 2]).degeneracy(2).unwrap()),
        ("c4", walk("c4", &[0, 1, 2, 3, 0]).connection(1, 0).unwrap()),
        ("c5", walk("c5", &[0, 1, 2, 3, 4, 0]).degeneracy(1).unwrap()),
        ("c5", walk("c5", &[2, 3, 4]).connection(1, 0).unwrap()),
        ("c5", grid("c5", [1, 2], &[0, 1, 2, 1, 2, 3])),
        ("tree6", grid("tree6", [1, 3], &[2, 1, 3, 4, 1, 1, 3, 3])),
    ]
}

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "corpus".into());
    let out = Path::new(&out);
    for (name, c, exp) in categories() {
        let mut raw = io::category_to_raw(&c, true);
        raw.expect = expect(&exp);
        write(&out.join("categories"), &format!("{name}.json"), io::to_json(&raw));
    }
    let d1 = standard_simplex(1);
    let d1_marked = MarkedSSet::from_fn(d1.clone(), |c| c.dim == 1);
    write(&out.join("ssets"), "delta1_marked.json", io::to_json(&io::sset_to_raw(&d1, Some(&d1_marked))));
    let h = horn(2, 1).unwrap();
    write(&out.join("ssets"), "horn21.json", io::to_json(&io::sset_to_raw(&h, Some(&MarkedSSet::from_fn(h.clone(), |_| false)))));
    let mut gs = BTreeMap::new();
    for (name, g, rank) in graphs() {
        let mut raw = graph_to_raw(&g);
        if let Some(r) = rank {
            raw.expect.insert("a1_rank".into(), json!(r));
        }
        write(&out.join("graphs"), &format!("{name}.json"), io::to_json(&raw));
        gs.insert(name, g);
    }
    let mut k = 0;
    let mut emit = |graph: &str, n: usize, i: usize, eps: u8, faces: Vec<((usize, u8), StableCube)>| {
        k += 1;
        let raw = RawBox {
            graph: Some(format!("../graphs/{graph}.json")),
            n,
            i,
            eps,
            faces: faces.iter().map(|(f, c)| cube_to_raw(&gs[graph], *f, c)).collect(),
            expect: BTreeMap::new(),
        };
        write(&out.join("boxes"), &format!("box{k:02}_{graph}.json"), io::to_json(&raw));
    };
    // a 1-dimensional box: a single endpoint
    emit("tree6", 1, 1, 1, vec![((1, 0), StableCube::vertex(4))]);
    for (graph, cube) in box_cubes(&gs) {
        for (i, eps) in [(1, 0u8), (1, 1), (2, 0), (2, 1)] {
            let faces = [(1, 0u8), (1, 1), (2, 0), (2, 1)]
                .into_iter()
                .filter(|&f| f != (i, eps))
                .map(|(j, e)| ((j, e), cube.face(j, e).unwrap()))
                .collect();
            emit(graph, 2, i, eps, faces);
        }
    }
}
