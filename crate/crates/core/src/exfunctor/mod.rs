//! Marked subdivision and the truncated marked `Ex` functor.

mod ex;
mod kan;
mod sd;

pub use ex::{
    composite_with_extremum, ex_levels, ex_map, ex_op, ex_op_direct, ex_plus, ex_plus_default, max_star, min_star,
    unit_map, ExLevels,
};
pub use kan::{compare_levels, compare_with_kan_ex, table_of, ChainTable, KanEx};
pub use sd::{
    codegeneracy, coface, push_subset, sd_op, sd_operator, sd_plus, sd_shape, subdivide, Subdivision, SD_MAX_N,
};

#[cfg(test)]
mod tests;
