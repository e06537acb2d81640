//! Hyperbolic metrics on expansive symbolic systems and the dimension and
//! entropy identities they satisfy.
//!
//! The crate is organised bottom-up: [`shift`] spaces and points, the
//! [`metric`] ρ with its metrizations, [`cylinder`] windows realizing balls,
//! [`measure`]s with exact cylinder masses, and the [`estimate`] layer that
//! regresses counts and masses into slopes and checks them against closed
//! forms in [`relations`].

pub mod cylinder;
pub mod error;
pub mod estimate;
pub mod measure;
pub mod metric;
pub mod numeric;
pub mod relations;
pub mod shift;

pub use error::{Error, Result};
