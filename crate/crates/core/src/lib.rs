//! Exact computations with super-polynomials under finite reflection groups.

pub mod actions;
pub mod error;
pub mod groups;
pub mod isotypic;
pub mod linalg;
pub mod matrix;
pub mod molien;
pub mod random;
pub mod scalars;
pub mod supergebra;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use groups::{Character, ReflectionGroup};
pub use matrix::Matrix;
pub use molien::{BiSeries, ExponentData, Space};
pub use scalars::{Cyclotomic, Rational};
pub use supergebra::{Bidegree, Flavor, LinearSubstitution, SuperMonomial, SuperPoly};
