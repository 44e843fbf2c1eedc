//! Classical and ∞-categorical calculi of fractions: the lifting shapes,
//! the checks, the retract diagrams and simple inner horn decompositions.

mod classical;
mod lifting;
mod retract;
mod shape;
mod sihd;

pub use classical::{
    all_coequalizers, check_clf, check_clf_classical, check_crf_classical, check_proper_clf, check_proper_crf,
    coequalize_many, coequalizing, complete_span, ClassicalWitness, Coequalized,
};
pub use lifting::{
    check_clf_infty, check_crf_infty, check_infty, check_infty_nerve, deciding_shapes, has_rlp, infty_shapes,
    InftyReport, ShapeOutcome,
};
pub use retract::{
    all_retract_cases, retract_check, sd_horn_pair, verify_retract_square, verify_retraction, Inclusion, RetractKind,
    RetractSquare,
};
pub use shape::{
    flip_iso, flip_set, full, shape, shape_pair, subset_name, FlipIso, FractionShape, ShapePair, Side, SubsetNerve,
    Variant, SHAPE_MAX_N,
};
pub use sihd::{
    build_sihd_jk, build_sihd_prodjoin, jk_pair, validate_sihd, Decomposition, SihdInstance, SihdViolation,
    SIHD_MAX_N,
};
