//! The planar space induced by a point tuple in PG(3,q): the unique abstract
//! space those points strongly realize.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{PlanarError, PlanarSpace, MAX_POINTS};
use crate::bits;
use crate::geometry::Geometry;

/// Full lines are the maximal label sets (size >= 3) with collinear images;
/// full planes the maximal label sets (size >= 4) whose images are coplanar
/// and not all collinear.
pub fn induced_planar_space(g: &Geometry, pts: &[usize]) -> Result<PlanarSpace, PlanarError> {
    let n = pts.len();
    if n > MAX_POINTS {
        return Err(PlanarError::TooManyPoints { n, max: MAX_POINTS });
    }
    for (i, &p) in pts.iter().enumerate() {
        if p >= g.point_count() {
            return Err(PlanarError::LabelOutOfRange {
                label: p,
                n: g.point_count(),
            });
        }
        if pts[i + 1..].contains(&p) {
            return Err(PlanarError::DuplicatePoint(p));
        }
    }

    let labels_on = |mask: &[u64]| -> u16 {
        let mut out = 0u16;
        for (lab, &p) in pts.iter().enumerate() {
            if bits::test(mask, p) {
                out |= 1 << lab;
            }
        }
        out
    };

    let mut lines: BTreeSet<u16> = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let l = g.line_through_ids(pts[i], pts[j]);
            let lab = labels_on(g.line_mask(l));
            if lab.count_ones() >= 3 {
                lines.insert(lab);
            }
        }
    }

    let mut planes: BTreeSet<u16> = BTreeSet::new();
    let mut meet = alloc::vec![0u64; g.mask_words()];
    for i in 0..n {
        for j in (i + 1)..n {
            let l = g.line_through_ids(pts[i], pts[j]);
            for k in (j + 1)..n {
                if bits::test(g.line_mask(l), pts[k]) {
                    continue; // collinear triples determine no single plane
                }
                meet.copy_from_slice(g.point_plane_mask(pts[i]));
                bits::and_assign(&mut meet, g.point_plane_mask(pts[j]));
                bits::and_assign(&mut meet, g.point_plane_mask(pts[k]));
                let h = bits::first_set(&meet).expect("non-collinear triple spans a plane");
                let lab = labels_on(g.plane_mask(h));
                if lab.count_ones() >= 4 {
                    planes.insert(lab);
                }
            }
        }
    }

    let ps = PlanarSpace::from_masks(
        n,
        lines.into_iter().collect::<Vec<u16>>(),
        planes.into_iter().collect::<Vec<u16>>(),
    )
    .expect("induced sets are structurally sound");
    debug_assert!(ps.is_valid(true), "induced space must pass closure: {}", ps);
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::catalog;

    #[test]
    fn basis_points_induce_the_empty_space() {
        let g = Geometry::new(2).unwrap();
        let pts: Vec<usize> = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ]
        .iter()
        .map(|&v| g.point_id(v).unwrap())
        .collect();
        let ps = induced_planar_space(&g, &pts).unwrap();
        assert!(ps.line_masks().is_empty());
        assert!(ps.plane_masks().is_empty());
    }

    #[test]
    fn coplanar_quad_without_collinear_triple() {
        let g = Geometry::new(2).unwrap();
        // all in the plane c3 = 0, no three collinear
        let pts: Vec<usize> = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [1, 1, 1, 0],
        ]
        .iter()
        .map(|&v| g.point_id(v).unwrap())
        .collect();
        let ps = induced_planar_space(&g, &pts).unwrap();
        assert!(ps.line_masks().is_empty());
        assert_eq!(ps.plane_masks(), &[0b1111]);
    }

    #[test]
    fn line_plus_point_recovers_example_2_5() {
        let g = Geometry::new(2).unwrap();
        let pts: Vec<usize> = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [1, 1, 0, 0],
            [0, 0, 1, 0],
        ]
        .iter()
        .map(|&v| g.point_id(v).unwrap())
        .collect();
        let ps = induced_planar_space(&g, &pts).unwrap();
        assert_eq!(ps, catalog("example_2_5").unwrap());
    }

    #[test]
    fn four_collinear_points_make_a_line_and_no_plane() {
        let g = Geometry::new(3).unwrap();
        let a = g.point_id([1, 0, 0, 0]).unwrap();
        let b = g.point_id([0, 1, 0, 0]).unwrap();
        let l = g.line_through(a, b).unwrap();
        let pts: Vec<usize> = g.line_points(l).iter().map(|&p| p as usize).collect();
        let ps = induced_planar_space(&g, &pts).unwrap();
        assert_eq!(ps.line_masks(), &[0b1111]);
        assert!(ps.plane_masks().is_empty());
    }

    #[test]
    fn duplicates_rejected() {
        let g = Geometry::new(2).unwrap();
        assert!(induced_planar_space(&g, &[1, 2, 1]).is_err());
    }
}
