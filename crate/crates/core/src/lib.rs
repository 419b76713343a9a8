//! Basis reduction for linear codes over F_q.
//!
//! A linear `[n, k]_q` code is the row space of a full-rank generator matrix
//! `B` over F_q. This crate manipulates such bases through the *epipodal*
//! machinery: the i-th epipodal vector is row i with every coordinate lying in
//! the support of rows `1..i` zeroed out, and the profile of epipodal weights
//! `l_1..l_k` plays the role the Gram-Schmidt norms play for lattices. On top
//! of that sit the reduction algorithms:
//!
//! * [`reduce::bkz_reduce`] — block reduction (LLL is the block-size-2 case),
//! * [`reduce::slide_reduce`] — alternating forward/backward block reduction,
//! * [`backward::full_backward_reduce`] and
//!   [`backward::selective_backward_reduce`] — reduction via redundant
//!   coordinate sets,
//! * [`reduce::one_block_shortest`] and [`reduce::approx_griesmer_reduce`] —
//!   short-codeword search through a single block or repeated projection.
//!
//! [`domain`] implements size reduction into the fundamental domain together
//! with its exact weight distribution, [`bounds`] the closed-form quality
//! bounds, and [`bench`] a seeded, reproducible experiment harness.
//!
//! With the default `parallel` feature the harness and the bulk test sweeps
//! fan out over rayon; without it everything runs sequentially with identical
//! results.

pub mod backward;
pub mod bench;
pub mod bounds;
pub mod domain;
mod error;
pub mod gf;
pub mod linalg;
pub mod par;
pub mod proper;
pub mod reduce;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
