//! Computations with RO(C_2^n)-graded global algebras over F2.

pub mod error;
pub mod expansions;
pub mod group;
pub mod linalg;
pub mod localization;
pub mod poly;
pub mod presented;
pub mod ring;
pub mod series;
pub mod backend;
pub mod bordism;
pub mod checks;
pub mod fgl;

pub use error::{Error, Result};
pub use group::{Character, Group, GroupHom, RepGrading};
