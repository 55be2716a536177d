//! Polynomial root approximation with the line-and-circumference (LC) method.
//!
//! For a monic polynomial `z^n + C1 z^(n-1) + ... + Cn`, a line `P1 + t v(θ)` through
//! the fixed point `P1 = -C1/2` is paired with its z-circumference and a terminal
//! semi-line. Sweeping θ produces proximity maps whose smooth zero crossings locate
//! the roots; the [`proximity_maps`] module turns those crossings into ranked tables.
//!
//! ```
//! use lc_core::{lzc_engine::solve_quadratic, C64};
//!
//! let sol = solve_quadratic(C64::new(1.0, 1.0), C64::new(2.0, 2.0));
//! assert!((sol.r1 - C64::new(-1.0, 1.0)).norm() < 1e-12);
//! assert!((sol.r2 - C64::new(0.0, -2.0)).norm() < 1e-12);
//! ```

// `!(x > 0.0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod complex_geometry;
pub mod dsd_optimizer;
mod error;
pub mod lzc_engine;
pub mod polynomial;
pub mod proximity_maps;
pub mod ser;

pub use complex_geometry::{Circle, ComplexPoint, IntersectionPair, Line, SemiLine};
pub use dsd_optimizer::{minimize_dsd, Method, MinResult, MinStatus, OptimizerConfig};
pub use error::{LcError, Result};
pub use lzc_engine::{build_frame, LzCFrame, QuadraticSolution};
pub use polynomial::{MonicPolynomial, RootSet};
pub use proximity_maps::{EstimateRow, MapKind, PartitionSpec, ProximityMap};

/// Shorthand for the complex scalar used everywhere.
pub type C64 = num_complex::Complex64;
