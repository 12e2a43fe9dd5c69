//! Exact integer-matrix dynamics of subtractive algorithms and induction on
//! interval exchange transformations.
//!
//! The crate machine-checks, in exact rational arithmetic, the identities
//! that make these algorithms "exact": branch letters are remembered by
//! nonnegative unimodular matrix products, cones of starting data nest
//! along walk prefixes, and induced first-return maps match the algebraic
//! induction step. Monte Carlo estimates appear only as cross-checks and
//! always carry their seed and a 3-sigma band.

pub mod cones;
pub mod error;
pub mod euclid;
pub mod geom2d;
pub mod iet;
pub mod induction;
pub mod mcf;
pub mod numerics;
pub mod perm;
pub mod proofgeom;
pub mod report;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
