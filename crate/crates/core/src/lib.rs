//! Finite commutative rings and modules, with exhaustive decision procedures for
//! annihilator multiplication modules and the classes around them.

pub mod classify;
pub mod commands;
pub mod dsl;
pub mod error;
pub mod finmod;
pub mod finring;
pub mod localize;
pub mod polymod;
pub mod propcheck;
pub mod report;
pub mod sets;

pub use error::{Error, Result};
