//! The incidence structure of the projective space PG(3,q).
//!
//! Points are normalized homogeneous coordinate vectors (first nonzero
//! coordinate equals 1) ordered lexicographically, so ids are stable across
//! runs. Lines and planes are materialized up front together with a
//! pair-of-points -> line table and per-point plane membership bitmasks;
//! the search kernels only ever touch those tables.
//!
//! Everything is verified at construction time: subspace counts, incidence
//! degrees, and the closure property that a plane containing two points of a
//! line contains the whole line.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits;
use crate::field::{factor_prime_power, Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    Field(FieldError),
    /// q is not a prime power.
    NotPrimePower(usize),
    PointOutOfRange(usize),
    /// An operation requires pairwise distinct points.
    DuplicatePoints,
    /// plane_through needs a non-collinear triple (a collinear one lies in
    /// q+1 planes, not one).
    CollinearTriple,
    Invariant(String),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::Field(e) => write!(f, "{}", e),
            GeometryError::NotPrimePower(q) => write!(f, "{} is not a prime power", q),
            GeometryError::PointOutOfRange(p) => write!(f, "point id {} out of range", p),
            GeometryError::DuplicatePoints => write!(f, "points must be pairwise distinct"),
            GeometryError::CollinearTriple => {
                write!(f, "collinear triple does not determine a unique plane")
            }
            GeometryError::Invariant(msg) => write!(f, "geometry invariant failed: {}", msg),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GeometryError {}

impl From<FieldError> for GeometryError {
    fn from(e: FieldError) -> Self {
        GeometryError::Field(e)
    }
}

const UNSET: u32 = u32::MAX;

/// PG(3,q) with all incidence tables populated.
#[derive(Debug, Clone)]
pub struct Geometry {
    field: Field,
    q: usize,
    n_points: usize,
    n_lines: usize,
    n_planes: usize,
    /// Words per point-set bitmask.
    words: usize,
    points: Vec<[u8; 4]>,
    /// Point ids per line, stride q+1, ascending within each line.
    lines_flat: Vec<u32>,
    line_masks: Vec<u64>,
    /// Triangular pair -> line table, index `tri(a, b)` for a < b.
    pair_line: Vec<u32>,
    /// Point ids per plane, stride q^2+q+1, ascending.
    planes_flat: Vec<u32>,
    plane_masks: Vec<u64>,
    /// Per point: bitmask over plane ids (plane count equals point count).
    point_plane_masks: Vec<u64>,
    /// Plane ids per line, stride q+1.
    line_planes: Vec<u32>,
}

#[inline(always)]
fn tri(a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    b * (b - 1) / 2 + a
}

impl Geometry {
    /// Builds PG(3,q) for a prime power q within the default field bound.
    pub fn new(q: usize) -> Result<Geometry, GeometryError> {
        let (p, d) = factor_prime_power(q).ok_or(GeometryError::NotPrimePower(q))?;
        let field = Field::new(p, d)?;
        Geometry::from_field(field)
    }

    pub fn with_max_order(q: usize, max_order: usize) -> Result<Geometry, GeometryError> {
        let (p, d) = factor_prime_power(q).ok_or(GeometryError::NotPrimePower(q))?;
        let field = Field::with_max_order(p, d, max_order)?;
        Geometry::from_field(field)
    }

    pub fn from_field(field: Field) -> Result<Geometry, GeometryError> {
        let q = field.order();
        let n_points = q * q * q + q * q + q + 1;
        let n_lines = (q * q + 1) * (q * q + q + 1);
        let n_planes = n_points;
        let words = bits::words_for(n_points);
        let line_size = q + 1;
        let plane_size = q * q + q + 1;

        // Normalized points in lexicographic coordinate order.
        let mut points = Vec::with_capacity(n_points);
        points.push([0, 0, 0, 1]);
        for c3 in 0..q {
            points.push([0, 0, 1, c3 as u8]);
        }
        for c2 in 0..q {
            for c3 in 0..q {
                points.push([0, 1, c2 as u8, c3 as u8]);
            }
        }
        for c1 in 0..q {
            for c2 in 0..q {
                for c3 in 0..q {
                    points.push([1, c1 as u8, c2 as u8, c3 as u8]);
                }
            }
        }
        if points.len() != n_points {
            return Err(GeometryError::Invariant(String::from("point enumeration")));
        }

        let mut g = Geometry {
            field,
            q,
            n_points,
            n_lines,
            n_planes,
            words,
            points,
            lines_flat: Vec::with_capacity(n_lines * line_size),
            line_masks: vec![0u64; n_lines * words],
            pair_line: vec![UNSET; n_points * (n_points - 1) / 2],
            planes_flat: Vec::with_capacity(n_planes * plane_size),
            plane_masks: vec![0u64; n_planes * words],
            point_plane_masks: vec![0u64; n_points * words],
            line_planes: vec![UNSET; n_lines * line_size],
        };
        g.build_lines()?;
        g.build_planes()?;
        g.build_line_planes()?;
        g.verify()?;
        Ok(g)
    }

    fn build_lines(&mut self) -> Result<(), GeometryError> {
        let q = self.q;
        let f = &self.field;
        let mut next_line = 0usize;
        let mut buf: Vec<u32> = Vec::with_capacity(q + 1);
        for a in 0..self.n_points {
            for b in (a + 1)..self.n_points {
                if self.pair_line[tri(a, b)] != UNSET {
                    continue;
                }
                // line through a and b: {P + t Q : t in F_q} plus Q itself
                buf.clear();
                let pa = self.points[a];
                let pb = self.points[b];
                for t in 0..q as u8 {
                    let mut v = [0u8; 4];
                    for i in 0..4 {
                        v[i] = f.add(pa[i], f.mul(t, pb[i]));
                    }
                    let id = self
                        .point_id(v)
                        .ok_or_else(|| GeometryError::Invariant(String::from("line span")))?;
                    buf.push(id as u32);
                }
                buf.push(b as u32);
                buf.sort_unstable();
                buf.dedup();
                if buf.len() != q + 1 {
                    return Err(GeometryError::Invariant(String::from("line size")));
                }
                let lid = next_line;
                next_line += 1;
                if lid >= self.n_lines {
                    return Err(GeometryError::Invariant(String::from("line count overflow")));
                }
                let mask = &mut self.line_masks[lid * self.words..(lid + 1) * self.words];
                for &pid in buf.iter() {
                    bits::set(mask, pid as usize);
                }
                for i in 0..buf.len() {
                    for j in (i + 1)..buf.len() {
                        let (x, y) = (buf[i] as usize, buf[j] as usize);
                        let slot = &mut self.pair_line[tri(x, y)];
                        if *slot != UNSET {
                            return Err(GeometryError::Invariant(String::from(
                                "pair on two lines",
                            )));
                        }
                        *slot = lid as u32;
                    }
                }
                self.lines_flat.extend_from_slice(&buf);
            }
        }
        if next_line != self.n_lines {
            return Err(GeometryError::Invariant(format!(
                "expected {} lines, built {}",
                self.n_lines, next_line
            )));
        }
        Ok(())
    }

    fn build_planes(&mut self) -> Result<(), GeometryError> {
        let plane_size = self.q * self.q + self.q + 1;
        for h in 0..self.n_planes {
            let hv = self.points[h]; // duals share the normalized enumeration
            let start = self.planes_flat.len();
            for p in 0..self.n_points {
                if self.dot(hv, self.points[p]) == 0 {
                    self.planes_flat.push(p as u32);
                    bits::set(
                        &mut self.plane_masks[h * self.words..(h + 1) * self.words],
                        p,
                    );
                    bits::set(
                        &mut self.point_plane_masks[p * self.words..(p + 1) * self.words],
                        h,
                    );
                }
            }
            if self.planes_flat.len() - start != plane_size {
                return Err(GeometryError::Invariant(String::from("plane size")));
            }
        }
        Ok(())
    }

    fn build_line_planes(&mut self) -> Result<(), GeometryError> {
        let stride = self.q + 1;
        let mut meet = vec![0u64; self.words];
        for l in 0..self.n_lines {
            let pts = &self.lines_flat[l * stride..(l + 1) * stride];
            let (p0, p1) = (pts[0] as usize, pts[1] as usize);
            meet.copy_from_slice(self.point_plane_mask(p0));
            bits::and_assign(&mut meet, self.point_plane_mask(p1));
            if bits::count(&meet) != stride as u64 {
                return Err(GeometryError::Invariant(String::from(
                    "line must lie in exactly q+1 planes",
                )));
            }
            for (slot, h) in bits::iter(&meet).enumerate() {
                if !bits::is_subset(self.line_mask(l), self.plane_mask(h)) {
                    return Err(GeometryError::Invariant(String::from(
                        "plane through two line points must contain the line",
                    )));
                }
                self.line_planes[l * stride + slot] = h as u32;
            }
        }
        Ok(())
    }

    /// Remaining structural checks not already enforced while building.
    fn verify(&self) -> Result<(), GeometryError> {
        let q = self.q;
        let plane_size = q * q + q + 1;
        if self.pair_line.iter().any(|&x| x == UNSET) {
            return Err(GeometryError::Invariant(String::from(
                "a point pair has no line",
            )));
        }
        // every point lies on q^2+q+1 lines and q^2+q+1 planes
        let mut line_deg = vec![0usize; self.n_points];
        for &p in &self.lines_flat {
            line_deg[p as usize] += 1;
        }
        if line_deg.iter().any(|&d| d != plane_size) {
            return Err(GeometryError::Invariant(String::from(
                "point/line incidence degree",
            )));
        }
        for p in 0..self.n_points {
            if bits::count(self.point_plane_mask(p)) != plane_size as u64 {
                return Err(GeometryError::Invariant(String::from(
                    "point/plane incidence degree",
                )));
            }
        }
        // every plane carries exactly q^2+q+1 distinct lines, each contained
        // in it (two points of a line inside a plane pull in the whole line)
        let mut seen = vec![u32::MAX; self.n_lines];
        for h in 0..self.n_planes {
            let pts = self.plane_points(h);
            let mut distinct = 0usize;
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    let l = self.line_through_ids(pts[i] as usize, pts[j] as usize);
                    if seen[l] != h as u32 {
                        seen[l] = h as u32;
                        distinct += 1;
                        if !bits::is_subset(self.line_mask(l), self.plane_mask(h)) {
                            return Err(GeometryError::Invariant(String::from(
                                "line escapes a plane containing two of its points",
                            )));
                        }
                    }
                }
            }
            if distinct != plane_size {
                return Err(GeometryError::Invariant(String::from(
                    "plane/line incidence degree",
                )));
            }
        }
        Ok(())
    }

    #[inline]
    fn dot(&self, a: [u8; 4], b: [u8; 4]) -> u8 {
        let f = &self.field;
        let mut acc = 0u8;
        for i in 0..4 {
            acc = f.add(acc, f.mul(a[i], b[i]));
        }
        acc
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn point_count(&self) -> usize {
        self.n_points
    }

    pub fn line_count(&self) -> usize {
        self.n_lines
    }

    pub fn plane_count(&self) -> usize {
        self.n_planes
    }

    /// Words per point-set mask handed out by this geometry.
    pub fn mask_words(&self) -> usize {
        self.words
    }

    pub fn point(&self, id: usize) -> [u8; 4] {
        self.points[id]
    }

    /// Scales a nonzero vector so its first nonzero coordinate is 1.
    pub fn normalize(&self, v: [u8; 4]) -> Option<[u8; 4]> {
        let f = &self.field;
        let lead = v.iter().position(|&c| c != 0)?;
        if v.iter().any(|&c| c as usize >= self.q) {
            return None;
        }
        let s = f.inv(v[lead]).ok()?;
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[i] = f.mul(s, v[i]);
        }
        Some(out)
    }

    /// Id of the point with the given homogeneous coordinates (any nonzero
    /// scalar multiple).
    pub fn point_id(&self, v: [u8; 4]) -> Option<usize> {
        let n = self.normalize(v)?;
        let q = self.q;
        let lead = n.iter().position(|&c| c != 0).unwrap();
        Some(match lead {
            3 => 0,
            2 => 1 + n[3] as usize,
            1 => 1 + q + (n[2] as usize) * q + n[3] as usize,
            _ => 1 + q + q * q + ((n[1] as usize) * q + n[2] as usize) * q + n[3] as usize,
        })
    }

    pub fn line_points(&self, l: usize) -> &[u32] {
        let s = self.q + 1;
        &self.lines_flat[l * s..(l + 1) * s]
    }

    pub fn line_mask(&self, l: usize) -> &[u64] {
        &self.line_masks[l * self.words..(l + 1) * self.words]
    }

    pub fn plane_points(&self, h: usize) -> &[u32] {
        let s = self.q * self.q + self.q + 1;
        &self.planes_flat[h * s..(h + 1) * s]
    }

    pub fn plane_mask(&self, h: usize) -> &[u64] {
        &self.plane_masks[h * self.words..(h + 1) * self.words]
    }

    pub fn point_plane_mask(&self, p: usize) -> &[u64] {
        &self.point_plane_masks[p * self.words..(p + 1) * self.words]
    }

    pub fn planes_of_line(&self, l: usize) -> &[u32] {
        let s = self.q + 1;
        &self.line_planes[l * s..(l + 1) * s]
    }

    /// Unchecked variant for the search kernels.
    #[inline(always)]
    pub fn line_through_ids(&self, a: usize, b: usize) -> usize {
        let idx = if a < b { tri(a, b) } else { tri(b, a) };
        self.pair_line[idx] as usize
    }

    fn check_distinct(&self, ids: &[usize]) -> Result<(), GeometryError> {
        for (i, &a) in ids.iter().enumerate() {
            if a >= self.n_points {
                return Err(GeometryError::PointOutOfRange(a));
            }
            if ids[i + 1..].contains(&a) {
                return Err(GeometryError::DuplicatePoints);
            }
        }
        Ok(())
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> Result<usize, GeometryError> {
        self.check_distinct(&[a, b])?;
        Ok(self.line_through_ids(a, b))
    }

    pub fn collinear(&self, a: usize, b: usize, c: usize) -> Result<bool, GeometryError> {
        self.check_distinct(&[a, b, c])?;
        Ok(bits::test(self.line_mask(self.line_through_ids(a, b)), c))
    }

    /// The unique plane through a non-collinear triple.
    pub fn plane_through(&self, a: usize, b: usize, c: usize) -> Result<usize, GeometryError> {
        self.check_distinct(&[a, b, c])?;
        if bits::test(self.line_mask(self.line_through_ids(a, b)), c) {
            return Err(GeometryError::CollinearTriple);
        }
        let mut meet = self.point_plane_mask(a).to_vec();
        bits::and_assign(&mut meet, self.point_plane_mask(b));
        bits::and_assign(&mut meet, self.point_plane_mask(c));
        bits::first_set(&meet)
            .ok_or_else(|| GeometryError::Invariant(String::from("triple spans no plane")))
    }

    pub fn coplanar(&self, a: usize, b: usize, c: usize, d: usize) -> Result<bool, GeometryError> {
        self.check_distinct(&[a, b, c, d])?;
        let mut meet = self.point_plane_mask(a).to_vec();
        for &p in &[b, c, d] {
            bits::and_assign(&mut meet, self.point_plane_mask(p));
        }
        Ok(!bits::is_zero(&meet))
    }
}
