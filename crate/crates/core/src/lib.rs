pub mod balls;
pub mod bounds;
pub mod cells;
pub mod error;
pub mod recon;
pub mod set;
pub mod verify;
pub mod word;

pub use balls::{enum_del_ball, enum_ds_ball, enum_sub_ball, xi_02_closed, xi_0s, xi_d2_closed, xi_ds, BallSpec, Limits, XiQuery};
pub use error::{Error, Result};
pub use set::WordSet;
pub use word::{RunProfile, SupportDiff, Word};
pub use cells::{brute_intersection, cell, deletion_pair_distance, ds12_intersection_via_cells, pair_distance_histogram, sub2_intersection_structural, CellIndex, Orientation, PairHistogram};
pub use bounds::{canonical_d2_form, classify_d2, claim_cell_predictions, extremal_pair, fit_quadratic, theorem_bound, BoundModel, CanonicalD2Form, D2Shape, D2Subcase, Method};
pub use recon::{decode, is_reconstruction_code, min_hamming_distance, read_coverage, sample_distinct_reads, simulate, Code, Coverage, ReadSet, SampleMode};
pub use verify::{run_suite, Suite, SuiteReport, VerifyParams};
