//! Exhaustive and sampled word-map computations over `SL_2`, `GL_2`,
//! `PGL_2` and `PSL_2` of small finite fields.

pub mod analysis;
pub mod classes;
pub mod element_set;
pub mod engine;
pub mod field;
pub mod group;

pub use analysis::{
    identity_scan, image_stats, is_identity_with_constants, is_nontrivial_unipotent, is_semisimple,
    trace_image, trace_set, IdentityScan, ImageStats, TraceImage,
};
pub use classes::{
    class_product_covers, commutator_width, conjugacy_classes, covering_numbers, derived_subgroup,
    ClassStructure, ConjClass, CoveringNumbers,
};
pub use element_set::ElementSet;
pub use engine::{
    count_tw, count_ww, sampled_image, target_image, word_image, word_image_with_constants,
    EngineOptions, Program, Target, DEFAULT_BUDGET,
};
pub use field::{Field, FieldSpec, Fq};
pub use group::{GroupKind, GroupOptions, GroupTable, Mat2, MatrixGroup};
