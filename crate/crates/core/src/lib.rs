//! Exact combinatorics of the Young graph and the Plancherel growth process.
//!
//! The crate is organised bottom-up:
//!
//! - [`young`]: partitions, covering relations and dimensions (hook-length
//!   formula with a path-counting oracle).
//! - [`graded`]: graded graphs (Bratteli diagrams) and the Plancherel-graph
//!   property.
//! - [`plancherel`]: level and tableau measures, transition/cotransition
//!   probabilities, the growth sampler and induced prefix distributions.
//! - [`posets`]: locally finite posets, monotone numberings, ideal densities
//!   and centrality checks.
//! - [`transfer`]: the jeu de taquin transfer and its quasi-stationarity test.
//! - [`totpos`]: Toeplitz minors, Edrei–Thoma coefficient families and
//!   character generating functions.
//! - [`stats`]: Monte Carlo first-row statistics.
//! - [`selftest`]: the exact-identity suite with an injectable dimension.
//!
//! All measure-valued results are exact [`BigRational`]s unless a function
//! says otherwise.

pub mod error;
pub mod graded;
pub mod limits;
pub mod plancherel;
pub mod posets;
pub mod rational;
pub mod rng;
pub mod selftest;
pub mod stats;
pub mod tableau;
pub mod totpos;
pub mod transfer;
pub mod young;

pub use error::{Error, Result};
pub use limits::Limits;
pub use num_bigint::BigUint;
pub use num_rational::BigRational;
pub use tableau::StandardTableau;
pub use young::{Cell, Partition};
