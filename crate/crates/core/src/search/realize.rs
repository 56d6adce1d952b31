//! Strong-realization counting: injective label-to-point assignments whose
//! image reproduces the planar space exactly (triples collinear iff inside a
//! full line, quadruples coplanar iff inside a full plane or a full line).
//!
//! Backtracking over a constraint-chosen static label order with one live
//! candidate mask per unplaced label. Placing a label propagates to every
//! unplaced label m:
//!
//! * for each previously placed a: m's image must lie on the image line of
//!   (a, new) exactly when {a, new, m} sits inside a full line;
//! * for each previously placed pair (a, b) with {a, b, new} not inside a
//!   full line (so the three images span a unique plane): m's image must lie
//!   on that plane exactly when {a, b, new, m} sits inside a full plane.
//!
//! Placed triples inside a full line impose nothing: for a closure-valid
//! space the quadruple is always inside a full plane or the line itself, and
//! three collinear image points are coplanar with any fourth. The last label
//! is never branched on; its surviving candidates are counted directly.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bits;
use crate::geometry::Geometry;
use crate::planar::PlanarSpace;

use super::SearchError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationCount {
    pub count: BigUint,
    pub nodes: u64,
}

struct Problem<'g> {
    g: &'g Geometry,
    n: usize,
    words: usize,
    order: Vec<usize>,
    /// line_with[a*n+b]: label mask of the unique full line containing
    /// {a, b}, or 0 when the pair is in no full line.
    line_with: Vec<u16>,
    /// plane_of[(a*n+b)*n+c] for a non-collinear triple: label mask of the
    /// unique full plane containing it, or 0.
    plane_of: Vec<u16>,
}

/// Static most-constrained-first placement order: prefer labels pinned onto
/// an image line (two placed points of a shared full line), then onto an
/// image plane, then labels merely related to placed ones.
fn order_labels(ps: &PlanarSpace) -> Vec<usize> {
    let n = ps.point_count();
    let mut order = Vec::with_capacity(n);
    let mut placed: u16 = 0;
    for _ in 0..n {
        let mut best: Option<(usize, (usize, usize, usize, usize))> = None;
        for x in 0..n {
            let bit = 1u16 << x;
            if placed & bit != 0 {
                continue;
            }
            let line_pins = ps
                .line_masks()
                .iter()
                .filter(|&&l| l & bit != 0 && (l & placed).count_ones() >= 2)
                .count();
            let plane_pins = ps
                .plane_masks()
                .iter()
                .filter(|&&h| h & bit != 0 && (h & placed).count_ones() >= 3)
                .count();
            let related = ps
                .line_masks()
                .iter()
                .chain(ps.plane_masks().iter())
                .filter(|&&s| s & bit != 0 && s & placed != 0)
                .count();
            let total = ps
                .line_masks()
                .iter()
                .chain(ps.plane_masks().iter())
                .filter(|&&s| s & bit != 0)
                .count();
            let score = (line_pins, plane_pins, related, total);
            if best.as_ref().map_or(true, |(_, s)| score > *s) {
                best = Some((x, score));
            }
        }
        let (x, _) = best.expect("an unplaced label remains");
        order.push(x);
        placed |= 1 << x;
    }
    order
}

impl<'g> Problem<'g> {
    fn new(g: &'g Geometry, ps: &PlanarSpace) -> Self {
        let n = ps.point_count();
        let mut line_with = vec![0u16; n * n];
        for &l in ps.line_masks() {
            for a in 0..n {
                if l >> a & 1 == 0 {
                    continue;
                }
                for b in 0..n {
                    if b != a && l >> b & 1 == 1 {
                        line_with[a * n + b] = l;
                    }
                }
            }
        }
        let mut plane_of = vec![0u16; n * n * n];
        for &h in ps.plane_masks() {
            for a in 0..n {
                if h >> a & 1 == 0 {
                    continue;
                }
                for b in 0..n {
                    if b == a || h >> b & 1 == 0 {
                        continue;
                    }
                    for c in 0..n {
                        if c != a && c != b && h >> c & 1 == 1 {
                            plane_of[(a * n + b) * n + c] = h;
                        }
                    }
                }
            }
        }
        Problem {
            g,
            n,
            words: g.mask_words(),
            order: order_labels(ps),
            line_with,
            plane_of,
        }
    }

    /// Counts assignments with the first label in `order` mapped to `root`.
    fn run_rooted(&self, root: usize) -> (u128, u64) {
        let n = self.n;
        let words = self.words;
        if n == 1 {
            return (1, 1);
        }
        // per-level snapshot of every label's candidate mask
        let mut masks = vec![0u64; n * n * words];
        let full = bits::full(self.g.point_count());
        for lab in 0..n {
            masks[lab * words..(lab + 1) * words].copy_from_slice(&full);
        }

        let mut state = State {
            problem: self,
            masks,
            placed: Vec::with_capacity(n),
            level_bufs: vec![Vec::with_capacity(words); n],
            scratch: Vec::with_capacity(words),
            count: 0,
            nodes: 0,
        };
        state.nodes += 1;
        if state.apply(0, state.problem.order[0], root) {
            state.placed.push((state.problem.order[0], root));
            state.descend(1);
        }
        (state.count, state.nodes)
    }
}

struct State<'p, 'g> {
    problem: &'p Problem<'g>,
    /// Level-major: masks[level][label] as flat words.
    masks: Vec<u64>,
    placed: Vec<(usize, usize)>,
    /// Reusable iteration buffers, one per level.
    level_bufs: Vec<Vec<u64>>,
    scratch: Vec<u64>,
    count: u128,
    nodes: u64,
}

impl<'p, 'g> State<'p, 'g> {
    #[inline]
    fn mask_range(&self, level: usize, label: usize) -> core::ops::Range<usize> {
        let w = self.problem.words;
        let n = self.problem.n;
        (level * n + label) * w..(level * n + label + 1) * w
    }

    fn descend(&mut self, level: usize) {
        let n = self.problem.n;
        let label = self.problem.order[level];
        if level == n - 1 {
            let r = self.mask_range(level - 1, label);
            self.count += bits::count(&self.masks[r]) as u128;
            return;
        }
        let mut cur = core::mem::take(&mut self.level_bufs[level]);
        cur.clear();
        let r = self.mask_range(level - 1, label);
        cur.extend_from_slice(&self.masks[r]);
        for point in bits::iter(&cur) {
            self.nodes += 1;
            if self.apply(level, label, point) {
                self.placed.push((label, point));
                self.descend(level + 1);
                self.placed.pop();
            }
        }
        self.level_bufs[level] = cur;
    }

    /// Copies the level-1 masks into this level's slots and intersects them
    /// with the constraints created by mapping `label` to `point`. Returns
    /// false when some unplaced label runs out of candidates.
    fn apply(&mut self, level: usize, label: usize, point: usize) -> bool {
        let p = self.problem;
        let n = p.n;
        let words = p.words;
        let g = p.g;

        // copy parent-level masks for the still-unplaced labels
        for &m in &p.order[level + 1..] {
            let (src, dst) = if level == 0 {
                (self.mask_range(0, m), self.mask_range(0, m))
            } else {
                (self.mask_range(level - 1, m), self.mask_range(level, m))
            };
            if src != dst {
                let (a, b) = (src.start, dst.start);
                self.masks.copy_within(a..a + words, b);
            }
            let r = self.mask_range(level, m);
            bits::clear(&mut self.masks[r], point);
        }

        // pair constraints: lines through (placed a, point)
        for idx in 0..self.placed.len() {
            let (a, pa) = self.placed[idx];
            let lm = g.line_mask(g.line_through_ids(pa, point));
            let lw = p.line_with[a * n + label];
            for &m in &p.order[level + 1..] {
                let r = self.mask_range(level, m);
                if lw >> m & 1 == 1 {
                    bits::and_assign(&mut self.masks[r], lm);
                } else {
                    bits::and_not_assign(&mut self.masks[r], lm);
                }
            }
        }

        // triple constraints: planes through (placed a, placed b, point)
        for i in 0..self.placed.len() {
            for j in (i + 1)..self.placed.len() {
                let (a, pa) = self.placed[i];
                let (b, pb) = self.placed[j];
                if p.line_with[a * n + b] >> label & 1 == 1 {
                    // collinear triple: coplanarity with any fourth point is
                    // automatic and closure guarantees the abstract side
                    continue;
                }
                self.scratch.clear();
                self.scratch.extend_from_slice(g.point_plane_mask(pa));
                bits::and_assign(&mut self.scratch, g.point_plane_mask(pb));
                bits::and_assign(&mut self.scratch, g.point_plane_mask(point));
                let h = bits::first_set(&self.scratch).expect("non-collinear images span a plane");
                let hm = g.plane_mask(h);
                let hw = p.plane_of[(a * n + b) * n + label];
                for &m in &p.order[level + 1..] {
                    let r = self.mask_range(level, m);
                    if hw >> m & 1 == 1 {
                        bits::and_assign(&mut self.masks[r], hm);
                    } else {
                        bits::and_not_assign(&mut self.masks[r], hm);
                    }
                }
            }
        }

        for &m in &p.order[level + 1..] {
            let r = self.mask_range(level, m);
            if bits::is_zero(&self.masks[r]) {
                return false;
            }
        }
        true
    }
}

fn validated(ps: &PlanarSpace) -> Result<(), SearchError> {
    let violations = ps.validate(true);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SearchError::InvalidSpace(violations))
    }
}

/// Number of strong realizations of a closure-valid planar space in the
/// given geometry.
pub fn count_strong_realizations(
    g: &Geometry,
    ps: &PlanarSpace,
) -> Result<RealizationCount, SearchError> {
    validated(ps)?;
    let problem = Problem::new(g, ps);
    let mut count: u128 = 0;
    let mut nodes: u64 = 0;
    for root in 0..g.point_count() {
        let (c, nd) = problem.run_rooted(root);
        count += c;
        nodes += nd;
    }
    Ok(RealizationCount {
        count: BigUint::from(count),
        nodes,
    })
}

/// Assignments whose first placed label maps to `root`; the parallel unit.
pub fn count_strong_realizations_rooted(
    g: &Geometry,
    ps: &PlanarSpace,
    root: usize,
) -> Result<(u128, u64), SearchError> {
    validated(ps)?;
    Ok(Problem::new(g, ps).run_rooted(root))
}
