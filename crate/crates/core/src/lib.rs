//! Approximate graph k-coloring.
//!
//! Greedy local search with recursive warm starts ([`search`]), a per-instance
//! graph convolutional optimizer ([`gcn`]), the generators and file formats
//! they run on ([`graph`]), and an experiment harness ([`experiments`]).
//!
//! ```
//! use kcolor::coloring::loss_hard;
//! use kcolor::graph::{gen_family, FamilySpec};
//! use kcolor::rng::SearchRng;
//! use kcolor::search::full_color;
//!
//! let g = gen_family(&FamilySpec::Cycle(9)).unwrap();
//! let c = full_color(&g, 3, &mut SearchRng::new(1)).unwrap();
//! assert_eq!(loss_hard(&g, &c).unwrap(), 0);
//! ```

pub mod cli;
pub mod coloring;
pub mod error;
pub mod experiments;
pub mod gcn;
pub mod graph;
pub mod rng;
pub mod search;

pub use error::{Error, Result};
