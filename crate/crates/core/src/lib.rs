//! Exact construction and verification of Kochen-Specker parity proofs built
//! from S-Hadamard matrices.
//!
//! The pipeline is:
//!
//! 1. obtain a generalized Hadamard matrix GH(g, λ) over `Z_g` ([`ghmat`]),
//!    either from the prime multiplication table, a Kronecker-sum composition,
//!    a backtracking search, or an imported file;
//! 2. exponentiate it into a Butson-type S-Hadamard matrix ([`shadamard`]);
//! 3. assemble the `n + 1` bases of a Kochen-Specker pair from products of its
//!    rows ([`ksset`]) and check non-colorability by exhaustive search.
//!
//! Every equality is decided in `Z[ζ_L]` ([`cyclotomic`]) by divisibility by the
//! cyclotomic polynomial; no floating point is involved anywhere.

pub mod cyclotomic;
pub mod error;
pub mod ghmat;
pub mod ksset;
pub mod pipeline;
pub mod shadamard;

pub use cyclotomic::{cyclotomic_poly, inner_product, CycInt, IntPoly};
pub use error::{Error, Result};
pub use ghmat::plan::{plan_order, Planner, Recipe, Step, EXCLUDED_ORDERS};
pub use ghmat::search::{gh_search, NotFound, SearchConfig, SearchOutcome};
pub use ghmat::{
    gh_compose, gh_cyclic_prime, gh_export, gh_import, verify_gh, GHMatrix, GhReport, GhWitness,
};
pub use ksset::noncolor::{noncolor_check, parity_refutes, Coloring, NoncolorOutcome};
pub use ksset::{
    build_ks, hadamard_product, ks_export, ks_import, ks_stats, verify_ks, KSPair, KSVector, KsReport,
    KsStats,
};
pub use pipeline::{run_pipeline, PipelineBundle, PipelineConfig, PipelineOutcome};
pub use shadamard::{
    dephase, from_gh, shad_export, shad_import, verify_shadamard, SHadamard, ShFailure, ShReport,
};
