//! Weak consistent digital rays on the integer grid.
//!
//! A ray system assigns to every lattice point `p` a grid path from the
//! origin to `p`. This crate builds a system whose L∞ error stays strictly
//! below 3/2, measures error exactly, checks the consistency axioms, and
//! searches exhaustively for the best possible error at small scale.
//!
//! ```
//! use wcdr_core::{build_system, max_error, Rational};
//!
//! let sys = build_system(64);
//! assert!(max_error(&sys).max_error < Rational::new(3, 2));
//! ```

pub mod baselines;
pub mod construction;
pub mod error;
pub mod grid;
pub mod metrics;
pub mod oracle;
pub mod ray_system;
pub mod svg;
pub mod verifier;

pub use baselines::{find_s3_violation_rounding, lpath_system, rounding_ray, RoundingScheme};
pub use construction::{
    build_system, build_system_with, pick_parent, pick_parent_with, zone_midpoint_x, zone_of, TieBreak, ZoneId,
};
pub use error::{Error, Result};
pub use grid::{compare_to_line, diagonal, intersect_diagonal, slope, GridPoint, LineSide, Rational, RationalPoint, Slope};
pub use metrics::{
    max_error, per_diagonal_errors, point_error_l2, point_error_linf, ray_error, DiagonalError, ErrorReport,
};
pub use oracle::{min_error_bnb, min_error_curve, min_error_exhaustive, SearchResult};
pub use ray_system::{cone_width, grid_points_in_cone, Cone, DigitalRay, ParentChoice, RaySystem};
pub use verifier::{
    check_alternation, check_no_consecutive_dead, check_s1, check_s2, check_s3, check_s4, check_s5, verify_system,
    PathFamily, RayFamily, VerificationReport,
};
