//! Exact counting of caps and planar-space realizations in the projective
//! space PG(3,q).
//!
//! The crate builds the full incidence structure of PG(3,q) for small prime
//! powers q, runs exhaustive backtracking searches over it (n-cap counts,
//! classification of caps by their induced planar space, strong-realization
//! counts of small configurations), and carries an exact-integer catalog of
//! the matching closed forms so the two routes can be compared with zero
//! tolerance.
//!
//! Everything here is `no_std`-compatible (with `alloc`); IO, caching and
//! the command-line front end live in the companion `capcount` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bits;
pub mod field;
pub mod formulas;
pub mod geometry;
pub mod planar;
pub mod search;

pub use field::{Field, FieldError};
pub use geometry::{Geometry, GeometryError};
pub use planar::{CensusFilter, IsoClass, PlanarError, PlanarSpace, PointIndex, Violation};
pub use search::{CapCount, CapMethod, ClassTable, RealizationCount, SearchError};
