//! Exact analysis of quasi-symmetric 2-designs.
//!
//! A 2-design is quasi-symmetric when any two distinct blocks meet in one of
//! exactly two sizes `x < y`. Such a design has at most `C(v,2)` blocks, and
//! meets that bound exactly when it is also a 4-design. This crate builds
//! the known examples, computes their invariants, and checks every step of
//! that argument on concrete inputs using integer and rational arithmetic
//! only.
//!
//! ```
//! use qsdesign::{constructions::golay_witt_design, tightness_certificate};
//!
//! let witt = golay_witt_design();
//! let cert = tightness_certificate(&witt).unwrap();
//! assert!(cert.is_valid());
//! assert!(cert.is_tight);
//! assert_eq!(cert.lambda4, qsdesign::FourSubsetCount::Constant(1));
//! ```
//!
//! The pieces:
//!
//! * [`design`]: the [`Design`] type and the plain-text block-list format.
//! * [`profile`]: parameters, intersection numbers and strength.
//! * [`constructions`]: the Golay-code Witt design and a small corpus.
//! * [`graph`] and [`spectrum`]: block graphs, strong regularity, exact
//!   eigenvalues.
//! * [`linalg`]: exact matrices, certified ranks, `{I, J, A}` decompositions.
//! * [`tightness`]: the bound and its equality case.
//! * [`report`]: JSON and text reports as printed by the `qsdesign` binary.

pub mod bitset;
pub mod combinatorics;
pub mod constructions;
pub mod design;
pub mod graph;
pub mod linalg;
pub mod profile;
pub mod report;
pub mod spectrum;
pub mod tightness;

pub use design::{parse_design, Design, DesignError, ParseError};
pub use graph::{block_graph, srg_check, triangular_graph, Graph, SrgParams, SrgRejection};
pub use profile::{profile, strength, DesignProfile, NotQuasiSymmetric};
pub use report::{analyze, Report, Verdict};
pub use spectrum::{Eigenvalue, Spectrum};
pub use tightness::{tightness_certificate, FourSubsetCount, TightnessCertificate};
