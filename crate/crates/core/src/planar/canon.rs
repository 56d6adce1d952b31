//! Canonical labeling of planar spaces.
//!
//! Points are first partitioned by iterated invariant refinement (incidence
//! degrees, then profiles of the sets through each point in terms of the
//! current coloring). The canonical form is the lexicographically least
//! relabeled encoding over all partition-respecting permutations; the number
//! of permutations attaining the minimum equals the automorphism group
//! order, since any two of them differ by an automorphism.
//!
//! At n <= 8 the residual permutation count stays tiny for everything except
//! highly symmetric spaces, and even the worst case (a single cell of 8)
//! costs only 8! encodings.

use alloc::vec;
use alloc::vec::Vec;

use super::{labels_of, PlanarSpace};

/// An isomorphism class: canonical representative, automorphism count, and
/// the labeled space the class was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub canonical: PlanarSpace,
    pub aut_size: u64,
    pub representative: PlanarSpace,
    to_canonical: Vec<usize>,
}

impl IsoClass {
    /// Byte-comparable class key (the canonical encoding).
    pub fn key(&self) -> Vec<u16> {
        self.canonical.encoding()
    }

    /// Permutation sending representative labels to canonical labels.
    pub fn to_canonical(&self) -> &[usize] {
        &self.to_canonical
    }
}

fn apply_perm(mask: u16, perm: &[usize]) -> u16 {
    let mut out = 0u16;
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out |= 1 << perm[b];
        m &= m - 1;
    }
    out
}

fn encode_under(ps: &PlanarSpace, perm: &[usize], buf: &mut Vec<u16>) {
    buf.clear();
    let lstart = buf.len();
    buf.extend(ps.line_masks().iter().map(|&m| apply_perm(m, perm)));
    buf[lstart..].sort_unstable();
    buf.push(u16::MAX);
    let pstart = buf.len();
    buf.extend(ps.plane_masks().iter().map(|&m| apply_perm(m, perm)));
    buf[pstart..].sort_unstable();
}

/// Iterated partition refinement; returns one color per point, colors
/// numbered by the sorted order of their invariant keys (so the numbering
/// itself is isomorphism-invariant).
fn refine_colors(ps: &PlanarSpace) -> Vec<u32> {
    let n = ps.point_count();
    let mut colors = vec![0u32; n];
    loop {
        let mut keys: Vec<(Vec<u32>, usize)> = (0..n)
            .map(|p| {
                let bit = 1u16 << p;
                let mut key: Vec<u32> = vec![colors[p]];
                let mut profiles: Vec<Vec<u32>> = Vec::new();
                for (tag, sets) in [(0u32, ps.line_masks()), (1u32, ps.plane_masks())] {
                    for &s in sets {
                        if s & bit == 0 {
                            continue;
                        }
                        let mut prof: Vec<u32> = vec![tag, s.count_ones()];
                        let mut others: Vec<u32> = labels_of(s & !bit)
                            .into_iter()
                            .map(|x| colors[x])
                            .collect();
                        others.sort_unstable();
                        prof.extend(others);
                        profiles.push(prof);
                    }
                }
                profiles.sort_unstable();
                for prof in profiles {
                    key.push(u32::MAX); // separator
                    key.extend(prof);
                }
                (key, p)
            })
            .collect();
        keys.sort();
        let mut next = vec![0u32; n];
        let mut rank = 0u32;
        for i in 0..keys.len() {
            if i > 0 && keys[i].0 != keys[i - 1].0 {
                rank += 1;
            }
            next[keys[i].1] = rank;
        }
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

struct MinSearch<'a> {
    ps: &'a PlanarSpace,
    cells: Vec<Vec<usize>>,
    perm: Vec<usize>,
    best: Option<Vec<u16>>,
    best_perm: Vec<usize>,
    best_count: u64,
    scratch: Vec<u16>,
}

impl<'a> MinSearch<'a> {
    fn run(&mut self, cell: usize, next_label: usize) {
        if cell == self.cells.len() {
            encode_under(self.ps, &self.perm, &mut self.scratch);
            match &self.best {
                Some(b) if self.scratch > *b => {}
                Some(b) if self.scratch == *b => self.best_count += 1,
                _ => {
                    self.best = Some(self.scratch.clone());
                    self.best_perm = self.perm.clone();
                    self.best_count = 1;
                }
            }
            return;
        }
        let members = self.cells[cell].clone();
        self.assign(cell, next_label, &members, 0);
    }

    // permute the members of one cell over the label range starting at base
    fn assign(&mut self, cell: usize, base: usize, members: &[usize], k: usize) {
        if k == members.len() {
            self.run(cell + 1, base + members.len());
            return;
        }
        let mut members = members.to_vec();
        for i in k..members.len() {
            members.swap(k, i);
            self.perm[members[k]] = base + k;
            self.assign(cell, base, &members, k + 1);
            members.swap(k, i);
        }
    }
}

/// Computes the canonical form, the witness permutation, and the
/// automorphism group order of a labeled planar space.
pub fn canonical_form(ps: &PlanarSpace) -> IsoClass {
    let n = ps.point_count();
    let colors = refine_colors(ps);
    let ncolors = colors.iter().copied().max().map_or(0, |c| c as usize + 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); ncolors];
    for (p, &c) in colors.iter().enumerate() {
        cells[c as usize].push(p);
    }
    let mut search = MinSearch {
        ps,
        cells,
        perm: vec![0usize; n],
        best: None,
        best_perm: vec![0usize; n],
        best_count: 0,
        scratch: Vec::new(),
    };
    search.run(0, 0);
    let perm = search.best_perm;
    let canonical = ps.relabel(&perm).expect("cell permutation is a bijection");
    IsoClass {
        canonical,
        aut_size: search.best_count.max(1),
        representative: ps.clone(),
        to_canonical: perm,
    }
}

/// A label bijection sending `a` onto `b` (preserving lines and planes in
/// both directions), when one exists.
pub fn are_isomorphic(a: &PlanarSpace, b: &PlanarSpace) -> Option<Vec<usize>> {
    if a.point_count() != b.point_count() {
        return None;
    }
    let ca = canonical_form(a);
    let cb = canonical_form(b);
    if ca.canonical != cb.canonical {
        return None;
    }
    // a --pa--> canonical <--pb-- b, so pb^{-1} ∘ pa maps a to b
    let n = a.point_count();
    let mut inv_b = vec![0usize; n];
    for (p, &t) in cb.to_canonical.iter().enumerate() {
        inv_b[t] = p;
    }
    let witness: Vec<usize> = ca.to_canonical.iter().map(|&t| inv_b[t]).collect();
    debug_assert_eq!(a.relabel(&witness).unwrap(), *b);
    Some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::catalog;
    use alloc::collections::BTreeSet;

    // brute-force oracle: count permutations fixing the space
    fn aut_by_brute_force(ps: &PlanarSpace) -> u64 {
        let n = ps.point_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0u64;
        fn rec(ps: &PlanarSpace, perm: &mut Vec<usize>, k: usize, count: &mut u64) {
            if k == perm.len() {
                if &ps.relabel(perm).unwrap() == ps {
                    *count += 1;
                }
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                rec(ps, perm, k + 1, count);
                perm.swap(k, i);
            }
        }
        rec(ps, &mut perm, 0, &mut count);
        count
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let expected = [
            ("example_2_5", 6u64),
            ("sixpoint", 72),
            ("h1", 24),
            ("h2", 168),
            ("h3", 6),
            ("h4", 8),
            ("h5", 144),
            ("h6", 168),
        ];
        for (name, aut) in expected {
            let ps = catalog(name).unwrap();
            assert_eq!(aut_by_brute_force(&ps), aut, "brute force {}", name);
            assert_eq!(canonical_form(&ps).aut_size, aut, "refined {}", name);
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        // a fixed set of scrambles is enough here; the property suite covers
        // random ones
        let perms: [&[usize]; 4] = [
            &[6, 5, 4, 3, 2, 1, 0],
            &[1, 2, 3, 4, 5, 6, 0],
            &[3, 0, 6, 1, 5, 2, 4],
            &[2, 4, 0, 6, 1, 3, 5],
        ];
        for name in ["h1", "h2", "h3", "h4", "h5", "h6"] {
            let ps = catalog(name).unwrap();
            let base = canonical_form(&ps);
            for perm in perms {
                let moved = ps.relabel(perm).unwrap();
                let c = canonical_form(&moved);
                assert_eq!(c.canonical, base.canonical, "{}", name);
                assert_eq!(c.aut_size, base.aut_size, "{}", name);
            }
        }
    }

    #[test]
    fn seven_point_catalog_classes_are_distinct() {
        let keys: BTreeSet<_> = ["h1", "h2", "h3", "h4", "h5", "h6"]
            .iter()
            .map(|n| canonical_form(&catalog(n).unwrap()).key())
            .collect();
        assert_eq!(keys.len(), 6);
    }

    #[test]
    fn isomorphism_witness() {
        let h4 = catalog("h4").unwrap();
        let moved = h4.relabel(&[6, 5, 2, 3, 4, 1, 0]).unwrap();
        let w = are_isomorphic(&h4, &moved).expect("same class");
        assert_eq!(h4.relabel(&w).unwrap(), moved);

        assert!(are_isomorphic(&catalog("h1").unwrap(), &catalog("h2").unwrap()).is_none());
        assert!(are_isomorphic(&catalog("h5").unwrap(), &catalog("h6").unwrap()).is_none());
    }

    #[test]
    fn aut_size_divides_factorial() {
        for name in super::super::CATALOG_NAMES {
            let ps = catalog(name).unwrap();
            let fact: u64 = (1..=ps.point_count() as u64).product();
            assert_eq!(fact % canonical_form(&ps).aut_size, 0, "{}", name);
        }
    }
}
