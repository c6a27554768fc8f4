//! Multiparameter persistence landscapes of two-parameter filtered simplicial
//! complexes, with the statistics built on them.

pub mod bifiltration;
pub mod cli;
pub mod datagen;
pub mod error;
pub mod experiments;
pub mod grade;
pub mod io;
pub mod landscape;
pub mod lattice;
pub mod multiland;
pub mod persistence;
pub mod rect;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
