//! Gauged linear sigma model for `[C^13 //_θ (C*)^4]`, whose geometric phase
//! is a cubic hypersurface fibration over `[E^3/μ_3]`.
//!
//! The crate computes the chamber structure, the narrow Chen-Ruan state
//! spaces, the I-functions of the a-superscript chambers and the analytic
//! continuation that relates the I-functions of adjacent chambers.

pub mod coh_ring;
pub mod degrees;
pub mod error;
pub mod gamma_kit;
pub mod i_series;
pub mod json;
pub mod model;
pub mod orbi_bundle;
pub mod state_space;
pub mod thirds;
pub mod verify;
pub mod wall_crossing;

pub use coh_ring::{
    nil_inv, nil_mul, reduce_to_state, AmbientClass, DualNum, Monomial, NilPoly, Scalar, SectorLabel, StateClass,
};
pub use degrees::{
    beta_rho, beta_theta, enumerate_ifunction_degrees, extremal_degree, is_unstable_tuple, passes_effectiveness,
    Degree, Epsilon,
};
pub use error::{GlsmError, Result};
pub use i_series::{build_givental, build_i_series, evaluate, ISeries, LogPoly, SeriesKind};
pub use json::{series_from_json, series_to_json, CoeffJson};
pub use model::{is_semistable, toric_divisor, unstable_components, Chamber, Coord, DivisorForm, GlsmModel, Var};
pub use state_space::{enumerate_sectors, state_basis, state_iso, SectorRecord, StateBasis};
pub use thirds::Thirds;
pub use verify::{run_all, run_criterion, CriterionReport, VerifyConfig};
pub use wall_crossing::mellin_barnes::{mellin_barnes_continued, mellin_barnes_oracle, MellinBarnes};
pub use wall_crossing::{
    chain_matrix, connection_coeffs, continue_series, extract_lgcy_matrix, term_match, ConnectionCoeffs, LgcyMatrix,
    TermMatchReport,
};

pub use num_complex::Complex64;
pub use num_rational::BigRational;
