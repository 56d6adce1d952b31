//! Exhaustive search engines over a [`Geometry`]: n-cap counts, cap
//! classification by induced planar space, strong-realization counts, and
//! the maximum cap size.
//!
//! All engines enumerate with increasing point ids (sets are visited once)
//! and count the final level by a popcount over the surviving candidate
//! mask, so the visited node count tracks the second-to-last level rather
//! than the answer volume. Counts accumulate in u128 (comfortably above any
//! reachable answer volume at the supported orders) and surface as big
//! integers.

mod caps;
mod classify;
mod realize;

pub use caps::{
    count_caps, count_caps_rooted, elliptic_quadric_cap, factorial, for_each_cap,
    for_each_cap_rooted, max_cap_size, CapCount, CapMethod, MaxCapReport,
};
pub use classify::{
    classify_caps, classify_caps_rooted, merge_class_maps, verify_decomposition, ClassAccum,
    ClassRow, ClassTable, DecompositionReport, DecompositionRow,
};
pub use realize::{
    count_strong_realizations, count_strong_realizations_rooted, RealizationCount,
};

use alloc::vec::Vec;
use core::fmt;

use crate::geometry::GeometryError;
use crate::planar::{PlanarError, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    NOutOfRange { n: usize, min: usize, max: usize },
    /// The planar space fails closure validation; realization counts are
    /// only defined for closure-valid spaces.
    InvalidSpace(Vec<Violation>),
    /// Exhaustive maximum-cap search is restricted to q <= 3.
    ExactModeUnsupported { q: usize, max_q: usize },
    Geometry(GeometryError),
    Planar(PlanarError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::NOutOfRange { n, min, max } => {
                write!(f, "n={} outside supported range {}..={}", n, min, max)
            }
            SearchError::InvalidSpace(v) => {
                write!(f, "planar space fails closure validation ({} violations)", v.len())
            }
            SearchError::ExactModeUnsupported { q, max_q } => {
                write!(f, "exact maximum-cap search supports q<={}, got q={}", max_q, q)
            }
            SearchError::Geometry(e) => write!(f, "{}", e),
            SearchError::Planar(e) => write!(f, "{}", e),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SearchError {}

impl From<GeometryError> for SearchError {
    fn from(e: GeometryError) -> Self {
        SearchError::Geometry(e)
    }
}

impl From<PlanarError> for SearchError {
    fn from(e: PlanarError) -> Self {
        SearchError::Planar(e)
    }
}
