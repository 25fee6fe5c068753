//! Exact dense linear algebra over the integers.
//!
//! No floating point is used anywhere. Ranks are certified modulo fixed
//! primes with a fraction-free fallback, and matrices in the span of
//! `{I, J, A}` are recognised entrywise.

mod incidence;
mod matrix;
mod rank;
mod span;

pub use incidence::{pair_block_matrix, pair_indicator_matrix, point_block_matrix};
pub use matrix::{matmul, max_abs, ExactMatrix, LinalgError};
pub use rank::{
    bareiss_rank, full_rank_certificate, modular_rank, rank_lower_bound, RankCertificate,
    RankMethod, RANK_PRIMES,
};
pub use span::{compose_ija, decompose_in_ija, DecompositionError, SpanDecomposition};
