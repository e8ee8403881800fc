//! Conjugacy limits of closed subgroups of `SL(2,R) ⋉ R²`.

pub mod catalog;
pub mod classify;
pub mod config;
pub mod error;
pub mod experiment;
pub mod group;
pub mod lie;
pub mod metric;
pub mod minimize;
pub mod schema;
pub mod verify;
pub mod window;
pub mod witness;

pub use error::{Error, Result};
pub use group::{GroupElement, Mat2, Vec2};
pub use window::Window;
