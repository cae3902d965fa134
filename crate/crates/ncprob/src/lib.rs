//! Noncrossing-partition calculus for free probability.
//!
//! The crate is organized around five layers:
//!
//! - [`partitions`] / [`permutations`]: exact combinatorics of set partitions,
//!   the noncrossing lattice `NC(n)` with its Möbius function, and the
//!   geodesic embedding into the symmetric group's Cayley graph.
//! - [`cumulants`]: exact moment/cumulant transforms over both the noncrossing
//!   and the full partition lattice, mixed cumulants, and mixed moments of
//!   free families.
//! - [`series`] / [`transforms`] / [`measure`]: Cauchy-transform series, the
//!   R-transform by compositional inversion, free convolution, free
//!   compression, and the named laws (semicircle, arcsine, Bernoulli, point).
//! - [`young`]: Young diagrams, interlacing coordinates, Kerov transition
//!   measures, Murnaghan-Nakayama characters, and character asymptotics.
//! - [`rmt`]: a seeded Monte Carlo harness over Haar-rotated matrix models
//!   that cross-validates the exact predictions.
//!
//! All algebraic layers use exact rational arithmetic; the Monte Carlo layer
//! is `f64` and compares against exact predictions converted at the boundary.

pub mod arith;
pub mod cumulants;
pub mod io;
pub mod measure;
pub mod partitions;
pub mod permutations;
pub mod rmt;
pub mod series;
pub mod transforms;
pub mod young;

pub use cumulants::{
    mixed_free_cumulant, CumulantError, CumulantKind, CumulantSequence, FreeFamilySpec,
    MomentFunctional, MomentSequence,
};
pub use measure::{DiscreteMeasure, MeasureError, NamedLaw};
pub use partitions::{
    count_nc, enumerate_all_partitions, enumerate_nc, for_each_nc, for_each_partition, moebius_nc,
    moebius_to_top, nc_join, nc_meet, NcInterval, PartitionError, SetPartition,
};
pub use permutations::{
    cayley_distance, nc_to_permutation, permutation_to_nc, Permutation, PermutationError,
};
pub use series::TruncatedSeries;
pub use transforms::{
    cauchy_series, dilate, free_compress, free_convolve, r_coefficients_via_inversion,
    TransformError,
};
pub use young::{
    balanced_check, character_estimate, diagram_free_cumulants, diagram_to_interlacing,
    dimension, factorization_defect, induce_shape_prediction, induced_decomposition_oracle,
    interlacing_to_diagram, mn_character, transition_measure, CharacterEstimate, CycleType,
    InterlacingCoords, YoungDiagram, YoungError,
};
