//! Explicit small links of prescribed Heegaard genus.
//!
//! The pipeline mirrors the construction step by step:
//!
//! 1. [`disk_curves`] models the `n`-punctured disk and the standard curves
//!    `b{i}_{j}` that encircle a cyclic run of punctures.
//! 2. [`pants_path`] builds the rotating pants decompositions and the certified
//!    path of associative moves between them.
//! 3. [`link_template`] reads the drilled loops off that path and records the
//!    braid monodromy and the augmentation circle.
//! 4. [`diagram`] fills every loop by inserting full twists, producing a closed
//!    braid word with an exactly known crossing count.
//! 5. [`export`] turns diagrams into PD, Gauss and DT codes and SVG pictures.
//!
//! [`geom_oracle`] is an independent planar realization of the curves used to
//! cross-check the combinatorial intersection model, and [`sweep`] runs the
//! quantitative checks over ranges of parameters.

pub mod diagram;
pub mod disk_curves;
pub mod error;
pub mod exec;
pub mod export;
pub mod geom_oracle;
pub mod link_template;
pub mod pants_path;
pub mod sweep;
pub mod validate;

pub use diagram::{
    bridge_upper_bound, crossing_census, default_slopes, fill, verify_bound, BoundReport,
    FillingSystem, LinkDiagram,
};
pub use disk_curves::{beta_curve, encircled_punctures, geometric_intersection, Curve, PuncturedDisk};
pub use error::{Error, Result};
pub use exec::Execution;
pub use link_template::{build_template, component_count, loop_heights, LinkTemplate, Loop};
pub use pants_path::{
    build_path, interpolant, is_a_move, is_s_move, standard_decomposition, PantsDecomposition,
    PantsPath,
};
