//! Labeled combinatorial planar spaces: points 0..n-1, full lines (>= 3
//! points) and full planes (>= 4 points), with two-point lines and
//! three-point planes suppressed.
//!
//! Validation distinguishes the bare axioms (two points on at most one full
//! line, a non-collinear triple in at most one full plane) from the
//! realizability closure rules. The closure package exists because an
//! injective image in PG(3,q) forces coplanarity in situations the bare
//! axioms do not mention; a space violating any closure rule has no strong
//! realization at any q:
//!
//! * a full plane sharing two points with a full line contains the line,
//! * a full plane never lies inside a full line,
//! * two full lines sharing a point lie in a common full plane,
//! * a full line plus any external point lies in a common full plane.
//!
//! Set membership is stored as 16-bit masks, which caps spaces at 16 points;
//! the census operates on at most [`MAX_CENSUS_POINTS`].

mod canon;
mod enumerate;
mod induced;

pub use canon::{are_isomorphic, canonical_form, IsoClass};
pub use enumerate::{enumerate_planar_spaces, CensusFilter, MAX_CENSUS_POINTS};
pub use induced::induced_planar_space;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Hard cap on labeled points (sets are u16 masks).
pub const MAX_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarError {
    TooManyPoints { n: usize, max: usize },
    LabelOutOfRange { label: usize, n: usize },
    LineTooSmall(usize),
    PlaneTooSmall(usize),
    DuplicateSet,
    DuplicatePoint(usize),
    BadPermutation,
    UnknownCatalogName(String),
}

impl fmt::Display for PlanarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarError::TooManyPoints { n, max } => {
                write!(f, "{} points exceeds the supported maximum {}", n, max)
            }
            PlanarError::LabelOutOfRange { label, n } => {
                write!(f, "label {} out of range for {} points", label, n)
            }
            PlanarError::LineTooSmall(s) => write!(f, "a full line needs >= 3 points, got {}", s),
            PlanarError::PlaneTooSmall(s) => {
                write!(f, "a full plane needs >= 4 points, got {}", s)
            }
            PlanarError::DuplicateSet => write!(f, "duplicate line or plane"),
            PlanarError::DuplicatePoint(p) => write!(f, "point {} listed twice", p),
            PlanarError::BadPermutation => write!(f, "relabeling must be a permutation of 0..n"),
            PlanarError::UnknownCatalogName(name) => write!(f, "unknown configuration {:?}", name),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PlanarError {}

/// Incidence counts of one point: `planes` full planes and `lines` full
/// lines through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointIndex {
    pub planes: usize,
    pub lines: usize,
}

/// An axiom or closure violation found by [`PlanarSpace::validate`].
/// Violations are data, not errors: invalid spaces are representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two full lines share two or more points.
    PairInTwoLines { line_a: u16, line_b: u16 },
    /// Two full planes share three or more points not all on a full line.
    TripleInTwoPlanes { plane_a: u16, plane_b: u16 },
    /// Closure: plane meets a line in >= 2 points without containing it.
    PlaneCutsLine { plane: u16, line: u16 },
    /// Closure: a full plane lies inside a full line.
    PlaneInsideLine { plane: u16, line: u16 },
    /// Closure: two meeting lines have no common full plane.
    MeetingLinesWithoutPlane { line_a: u16, line_b: u16 },
    /// Closure: a full line plus an external point has no common full plane.
    LinePointWithoutPlane { line: u16, point: usize },
}

fn set_string(mask: u16) -> String {
    use core::fmt::Write;
    let mut s = String::from("{");
    let mut first = true;
    for i in 0..16 {
        if mask >> i & 1 == 1 {
            if !first {
                s.push(',');
            }
            let _ = write!(s, "{}", i);
            first = false;
        }
    }
    s.push('}');
    s
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PairInTwoLines { line_a, line_b } => write!(
                f,
                "lines {} and {} share two points",
                set_string(*line_a),
                set_string(*line_b)
            ),
            Violation::TripleInTwoPlanes { plane_a, plane_b } => write!(
                f,
                "planes {} and {} share a non-collinear triple",
                set_string(*plane_a),
                set_string(*plane_b)
            ),
            Violation::PlaneCutsLine { plane, line } => write!(
                f,
                "plane {} meets line {} in two points without containing it",
                set_string(*plane),
                set_string(*line)
            ),
            Violation::PlaneInsideLine { plane, line } => write!(
                f,
                "plane {} lies inside line {}",
                set_string(*plane),
                set_string(*line)
            ),
            Violation::MeetingLinesWithoutPlane { line_a, line_b } => write!(
                f,
                "meeting lines {} and {} lie in no common plane",
                set_string(*line_a),
                set_string(*line_b)
            ),
            Violation::LinePointWithoutPlane { line, point } => write!(
                f,
                "line {} and point {} lie in no common plane",
                set_string(*line),
                point
            ),
        }
    }
}

/// A labeled planar space on points 0..n-1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarSpace {
    n: usize,
    /// Full lines as bitmasks, ascending.
    lines: Vec<u16>,
    /// Full planes as bitmasks, ascending.
    planes: Vec<u16>,
}

pub(crate) fn mask_from_labels(n: usize, labels: &[usize]) -> Result<u16, PlanarError> {
    let mut mask = 0u16;
    for &l in labels {
        if l >= n {
            return Err(PlanarError::LabelOutOfRange { label: l, n });
        }
        mask |= 1 << l;
    }
    Ok(mask)
}

pub(crate) fn labels_of(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask >> i & 1 == 1).collect()
}

impl PlanarSpace {
    /// Builds a space from explicit label sets. Structural rules (label
    /// range, minimum sizes, no duplicate sets) are enforced here; the
    /// geometric axioms are checked by [`validate`](Self::validate).
    pub fn from_sets(
        n: usize,
        lines: &[Vec<usize>],
        planes: &[Vec<usize>],
    ) -> Result<PlanarSpace, PlanarError> {
        if n > MAX_POINTS {
            return Err(PlanarError::TooManyPoints { n, max: MAX_POINTS });
        }
        let mut lm = Vec::with_capacity(lines.len());
        for set in lines {
            let mask = mask_from_labels(n, set)?;
            let size = mask.count_ones() as usize;
            if size < 3 {
                return Err(PlanarError::LineTooSmall(size));
            }
            lm.push(mask);
        }
        let mut pm = Vec::with_capacity(planes.len());
        for set in planes {
            let mask = mask_from_labels(n, set)?;
            let size = mask.count_ones() as usize;
            if size < 4 {
                return Err(PlanarError::PlaneTooSmall(size));
            }
            pm.push(mask);
        }
        PlanarSpace::from_masks(n, lm, pm)
    }

    /// Builds a space from preassembled masks.
    pub fn from_masks(
        n: usize,
        mut lines: Vec<u16>,
        mut planes: Vec<u16>,
    ) -> Result<PlanarSpace, PlanarError> {
        if n > MAX_POINTS {
            return Err(PlanarError::TooManyPoints { n, max: MAX_POINTS });
        }
        let label_bound = if n == 16 { u16::MAX } else { (1 << n) - 1 };
        for &m in lines.iter().chain(planes.iter()) {
            if m & !label_bound != 0 {
                return Err(PlanarError::LabelOutOfRange {
                    label: (15 - (m & !label_bound).leading_zeros()) as usize,
                    n,
                });
            }
        }
        if lines.iter().any(|m| m.count_ones() < 3) {
            return Err(PlanarError::LineTooSmall(
                lines.iter().map(|m| m.count_ones()).min().unwrap() as usize,
            ));
        }
        if planes.iter().any(|m| m.count_ones() < 4) {
            return Err(PlanarError::PlaneTooSmall(
                planes.iter().map(|m| m.count_ones()).min().unwrap() as usize,
            ));
        }
        lines.sort_unstable();
        planes.sort_unstable();
        let before = lines.len() + planes.len();
        lines.dedup();
        planes.dedup();
        if lines.len() + planes.len() != before {
            return Err(PlanarError::DuplicateSet);
        }
        Ok(PlanarSpace { n, lines, planes })
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    pub fn line_masks(&self) -> &[u16] {
        &self.lines
    }

    pub fn plane_masks(&self) -> &[u16] {
        &self.planes
    }

    pub fn lines_as_sets(&self) -> Vec<Vec<usize>> {
        self.lines.iter().map(|&m| labels_of(m)).collect()
    }

    pub fn planes_as_sets(&self) -> Vec<Vec<usize>> {
        self.planes.iter().map(|&m| labels_of(m)).collect()
    }

    /// A triple (or larger set) counts as collinear when it sits inside a
    /// full line; pairs and singletons are trivially collinear.
    pub fn is_collinear_set(&self, mask: u16) -> bool {
        mask.count_ones() <= 2 || self.lines.iter().any(|&l| mask & !l == 0)
    }

    /// A set counts as coplanar when it sits inside a full plane or a full
    /// line; sets of at most three points are trivially coplanar.
    pub fn is_coplanar_set(&self, mask: u16) -> bool {
        mask.count_ones() <= 3
            || self.planes.iter().any(|&h| mask & !h == 0)
            || self.lines.iter().any(|&l| mask & !l == 0)
    }

    pub fn point_index(&self, point: usize) -> Result<PointIndex, PlanarError> {
        if point >= self.n {
            return Err(PlanarError::LabelOutOfRange {
                label: point,
                n: self.n,
            });
        }
        let bit = 1u16 << point;
        Ok(PointIndex {
            planes: self.planes.iter().filter(|&&h| h & bit != 0).count(),
            lines: self.lines.iter().filter(|&&l| l & bit != 0).count(),
        })
    }

    /// Lists every axiom violation; `enforce_closure` additionally applies
    /// the realizability closure rules described at the module level.
    pub fn validate(&self, enforce_closure: bool) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, &a) in self.lines.iter().enumerate() {
            for &b in &self.lines[i + 1..] {
                if (a & b).count_ones() >= 2 {
                    out.push(Violation::PairInTwoLines { line_a: a, line_b: b });
                }
            }
        }
        for (i, &a) in self.planes.iter().enumerate() {
            for &b in &self.planes[i + 1..] {
                let shared = a & b;
                if shared.count_ones() >= 3 && !self.is_collinear_set(shared) {
                    out.push(Violation::TripleInTwoPlanes { plane_a: a, plane_b: b });
                }
            }
        }
        if enforce_closure {
            for &h in &self.planes {
                for &l in &self.lines {
                    if h & !l == 0 {
                        out.push(Violation::PlaneInsideLine { plane: h, line: l });
                    } else if (h & l).count_ones() >= 2 && l & !h != 0 {
                        out.push(Violation::PlaneCutsLine { plane: h, line: l });
                    }
                }
            }
            for (i, &a) in self.lines.iter().enumerate() {
                for &b in &self.lines[i + 1..] {
                    if a & b != 0 && !self.planes.iter().any(|&h| (a | b) & !h == 0) {
                        out.push(Violation::MeetingLinesWithoutPlane { line_a: a, line_b: b });
                    }
                }
            }
            for &l in &self.lines {
                for p in 0..self.n {
                    let bit = 1u16 << p;
                    if l & bit == 0 && !self.planes.iter().any(|&h| (l | bit) & !h == 0) {
                        out.push(Violation::LinePointWithoutPlane { line: l, point: p });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self, enforce_closure: bool) -> bool {
        self.validate(enforce_closure).is_empty()
    }

    /// True when every point has >= 4 planes, or >= 3 lines, or exactly
    /// (3 planes, 0 lines) through it.
    pub fn is_hyperfiguration(&self) -> bool {
        (0..self.n).all(|p| {
            let idx = self.point_index(p).expect("point in range");
            idx.planes >= 4 || idx.lines >= 3 || (idx.planes == 3 && idx.lines == 0)
        })
    }

    /// Applies a permutation of the labels: point p becomes perm[p].
    pub fn relabel(&self, perm: &[usize]) -> Result<PlanarSpace, PlanarError> {
        if perm.len() != self.n {
            return Err(PlanarError::BadPermutation);
        }
        let mut seen = 0u16;
        for &t in perm {
            if t >= self.n || seen >> t & 1 == 1 {
                return Err(PlanarError::BadPermutation);
            }
            seen |= 1 << t;
        }
        let map = |m: u16| -> u16 {
            let mut out = 0u16;
            for (src, &dst) in perm.iter().enumerate() {
                if m >> src & 1 == 1 {
                    out |= 1 << dst;
                }
            }
            out
        };
        let lines = self.lines.iter().map(|&m| map(m)).collect();
        let planes = self.planes.iter().map(|&m| map(m)).collect();
        PlanarSpace::from_masks(self.n, lines, planes)
    }

    /// Stable byte-comparable encoding of the labeled space.
    pub fn encoding(&self) -> Vec<u16> {
        let mut key = Vec::with_capacity(self.lines.len() + self.planes.len() + 2);
        key.push(self.n as u16);
        key.extend_from_slice(&self.lines);
        key.push(u16::MAX);
        key.extend_from_slice(&self.planes);
        key
    }
}

impl fmt::Display for PlanarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} lines=[", self.n)?;
        for (i, &l) in self.lines.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", set_string(l))?;
        }
        write!(f, "] planes=[")?;
        for (i, &h) in self.planes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", set_string(h))?;
        }
        write!(f, "]")
    }
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 8] = [
    "example_2_5",
    "sixpoint",
    "h1",
    "h2",
    "h3",
    "h4",
    "h5",
    "h6",
];

/// The named small configurations used throughout the verification suites.
pub fn catalog(name: &str) -> Result<PlanarSpace, PlanarError> {
    let build = |n: usize, lines: &[&[usize]], planes: &[&[usize]]| {
        let lines: Vec<Vec<usize>> = lines.iter().map(|s| s.to_vec()).collect();
        let planes: Vec<Vec<usize>> = planes.iter().map(|s| s.to_vec()).collect();
        PlanarSpace::from_sets(n, &lines, &planes).expect("catalog entries are well-formed")
    };
    Ok(match name {
        "example_2_5" => build(4, &[&[0, 1, 2]], &[&[0, 1, 2, 3]]),
        "sixpoint" => build(
            6,
            &[&[0, 1, 2], &[3, 4, 5]],
            &[
                &[0, 1, 2, 3],
                &[0, 1, 2, 4],
                &[0, 1, 2, 5],
                &[0, 3, 4, 5],
                &[1, 3, 4, 5],
                &[2, 3, 4, 5],
            ],
        ),
        "h1" => build(
            7,
            &[],
            &[
                &[0, 1, 2, 3],
                &[0, 1, 4, 5],
                &[0, 2, 4, 6],
                &[1, 2, 5, 6],
                &[1, 3, 4, 6],
                &[2, 3, 4, 5],
            ],
        ),
        "h2" => build(
            7,
            &[],
            &[
                &[0, 1, 2, 3],
                &[0, 1, 4, 5],
                &[0, 2, 4, 6],
                &[0, 3, 5, 6],
                &[1, 2, 5, 6],
                &[1, 3, 4, 6],
                &[2, 3, 4, 5],
            ],
        ),
        "h3" => build(
            7,
            &[&[0, 1, 2]],
            &[
                &[0, 1, 2, 3],
                &[0, 1, 2, 4],
                &[0, 1, 2, 5],
                &[0, 1, 2, 6],
                &[0, 3, 4, 5],
                &[1, 3, 4, 6],
                &[2, 3, 5, 6],
            ],
        ),
        "h4" => build(
            7,
            &[&[0, 1, 2], &[0, 3, 4]],
            &[
                &[0, 1, 2, 3, 4],
                &[0, 1, 2, 5],
                &[0, 1, 2, 6],
                &[0, 3, 4, 5],
                &[0, 3, 4, 6],
                &[1, 3, 5, 6],
                &[2, 4, 5, 6],
            ],
        ),
        "h5" => build(
            7,
            &[&[0, 1, 2, 3], &[4, 5, 6]],
            &[
                &[0, 1, 2, 3, 4],
                &[0, 1, 2, 3, 5],
                &[0, 1, 2, 3, 6],
                &[0, 4, 5, 6],
                &[1, 4, 5, 6],
                &[2, 4, 5, 6],
                &[3, 4, 5, 6],
            ],
        ),
        "h6" => build(
            7,
            &[
                &[0, 1, 2],
                &[0, 3, 4],
                &[0, 5, 6],
                &[1, 3, 5],
                &[1, 4, 6],
                &[2, 3, 6],
                &[2, 4, 5],
            ],
            &[&[0, 1, 2, 3, 4, 5, 6]],
        ),
        other => return Err(PlanarError::UnknownCatalogName(String::from(other))),
    })
}
