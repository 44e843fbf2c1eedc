//! Discrete homotopy theory of graphs: box and hom constructions, homotopy
//! search, stable cubes of the graph nerve, `A₁` and path-graph probes.

mod a1;
mod cube;
mod graph;
mod lazy;
#[cfg(test)]
mod tests;

pub use a1::{
    a1_bfs_oracle, a1_loop_is_trivial, a1_presentation, abelianization_rank, free_reduce, inverse, short_cycles, simplify, word_is_trivial,
    A1Presentation, GroupPresentation, LoopClasses, Simplified, Word, ORACLE_MAX_LEN, ORACLE_MAX_VERTICES,
};
pub use cube::{open_box_filler_search, OpenBox, StableCube};
pub use graph::{
    box_product, hom_graph, homotopy_search, is_homotopy_equiv_search, Graph, GraphMap, HomotopyEquivalence, Search,
    HOM_GRAPH_LIMIT,
};
pub use lazy::{
    double_mapping_path_lazy, path_graph_lazy, path_neighbors, pullback_graph_lazy, DoubleMappingPath, LazyGraph, LineMap,
    PathGraph, PullbackGraph, PullbackVertex,
};

/// Agreement between the presentation and the loop oracle on each
/// generator loop: `Some(trivial)` per generator, or the first
/// disagreement. Generator loops longer than the oracle bound are skipped.
pub fn a1_agreement(g: &Graph, v: usize, bound: usize) -> crate::Result<Result<alloc::vec::Vec<Option<bool>>, usize>> {
    let p = a1_presentation(g, v)?;
    let mut out = alloc::vec::Vec::new();
    for (i, walk) in p.loops.iter().enumerate() {
        let Some(by_oracle) = a1_loop_is_trivial(g, v, walk, bound)? else {
            out.push(None);
            continue;
        };
        match word_is_trivial(&p.presentation, &p.word_of_walk(walk)) {
            Some(t) if t != by_oracle => return Ok(Err(i)),
            _ => out.push(Some(by_oracle)),
        }
    }
    Ok(Ok(out))
}
