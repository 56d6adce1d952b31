//! Classification of caps by the isomorphism class of their induced planar
//! space, and the decomposition cross-check tying three engines together:
//! the cap counter, the classifier, and the strong-realization counter.
//!
//! For a class f with automorphism group size a and u unordered caps
//! inducing it, the strong-realization count of a labeled representative is
//! A_f = a * u (each cap set admits exactly a label assignments onto it),
//! and the class contributes (n!/a) * A_f ordered tuples.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::geometry::Geometry;
use crate::planar::{canonical_form, induced_planar_space, IsoClass, PlanarSpace};

use super::caps::{count_caps, factorial, for_each_cap_rooted, CapCount, CapMethod};
use super::realize::count_strong_realizations;
use super::SearchError;

#[derive(Debug, Clone)]
pub struct ClassAccum {
    pub class: IsoClass,
    pub unordered: u128,
}

/// Classification keyed by canonical encoding, restricted to caps whose
/// smallest point id lies in [lo, hi); the parallel work unit.
pub fn classify_caps_rooted(
    g: &Geometry,
    n: usize,
    lo: usize,
    hi: usize,
) -> Result<(BTreeMap<Vec<u16>, ClassAccum>, u64), SearchError> {
    if !(3..=7).contains(&n) {
        return Err(SearchError::NOutOfRange { n, min: 3, max: 7 });
    }
    let mut classes: BTreeMap<Vec<u16>, ClassAccum> = BTreeMap::new();
    // raw labeled encoding -> canonical key, to canonicalize each distinct
    // induced labeling once rather than once per cap
    let mut seen_raw: BTreeMap<Vec<u16>, Vec<u16>> = BTreeMap::new();
    let mut caps: u64 = 0;
    for first in lo..hi.min(g.point_count()) {
        for_each_cap_rooted(g, n, first, &mut |cap: &[usize]| {
            caps += 1;
            let ps = induced_planar_space(g, cap).expect("cap points are distinct");
            debug_assert!(ps.line_masks().is_empty(), "caps induce line-free spaces");
            let raw = ps.encoding();
            let key = match seen_raw.get(&raw) {
                Some(k) => k.clone(),
                None => {
                    let class = canonical_form(&ps);
                    let key = class.key();
                    seen_raw.insert(raw, key.clone());
                    classes.entry(key.clone()).or_insert(ClassAccum {
                        class,
                        unordered: 0,
                    });
                    key
                }
            };
            classes.get_mut(&key).expect("entry just ensured").unordered += 1;
        });
    }
    Ok((classes, caps))
}

pub fn merge_class_maps(
    mut into: BTreeMap<Vec<u16>, ClassAccum>,
    from: BTreeMap<Vec<u16>, ClassAccum>,
) -> BTreeMap<Vec<u16>, ClassAccum> {
    for (key, acc) in from {
        match into.get_mut(&key) {
            Some(slot) => slot.unordered += acc.unordered,
            None => {
                into.insert(key, acc);
            }
        }
    }
    into
}

/// One isomorphism class of induced planar spaces.
#[derive(Debug, Clone)]
pub struct ClassRow {
    pub class: IsoClass,
    /// Cap sets inducing this class.
    pub unordered: BigUint,
    /// Labeled spaces in the class: n! / aut.
    pub labeled_spaces: BigUint,
    /// Strong realizations of one labeled representative: aut * unordered.
    pub realizations: BigUint,
}

#[derive(Debug, Clone)]
pub struct ClassTable {
    pub q: usize,
    pub n: usize,
    pub rows: Vec<ClassRow>,
    /// Caps enumerated while classifying.
    pub caps_seen: u64,
}

impl ClassTable {
    /// Sum of labeled_spaces * realizations over the rows; equals the
    /// ordered cap count.
    pub fn ordered_total(&self) -> BigUint {
        self.rows
            .iter()
            .map(|r| &r.labeled_spaces * &r.realizations)
            .sum()
    }
}

pub(crate) fn table_from_classes(
    g: &Geometry,
    n: usize,
    classes: BTreeMap<Vec<u16>, ClassAccum>,
    caps_seen: u64,
) -> ClassTable {
    let fact = factorial(n);
    let rows = classes
        .into_values()
        .map(|acc| {
            let aut = BigUint::from(acc.class.aut_size);
            let unordered = BigUint::from(acc.unordered);
            ClassRow {
                labeled_spaces: &fact / &aut,
                realizations: &aut * &unordered,
                unordered,
                class: acc.class,
            }
        })
        .collect();
    ClassTable {
        q: g.q(),
        n,
        rows,
        caps_seen,
    }
}

/// Buckets every unordered n-cap by the isomorphism class of its induced
/// planar space, 3 <= n <= 7.
pub fn classify_caps(g: &Geometry, n: usize) -> Result<ClassTable, SearchError> {
    let (classes, caps) = classify_caps_rooted(g, n, 0, g.point_count())?;
    Ok(table_from_classes(g, n, classes, caps))
}

#[derive(Debug, Clone)]
pub struct DecompositionRow {
    /// Canonical labeled representative of the class.
    pub space: PlanarSpace,
    /// A_f derived from the classification (aut * unordered).
    pub from_classification: BigUint,
    /// A_f recounted by the strong-realization engine.
    pub recounted: BigUint,
    pub matches: bool,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub q: usize,
    pub n: usize,
    pub ordered_from_search: BigUint,
    pub ordered_from_classes: BigUint,
    pub totals_match: bool,
    pub rows: Vec<DecompositionRow>,
    pub pass: bool,
}

/// Two independent engines, one identity: the class table must sum to the
/// ordered cap count, and every class's A_f must equal a fresh
/// strong-realization count of its representative. 3 <= n <= 6.
pub fn verify_decomposition(g: &Geometry, n: usize) -> Result<DecompositionReport, SearchError> {
    if !(3..=6).contains(&n) {
        return Err(SearchError::NOutOfRange { n, min: 3, max: 6 });
    }
    let table = classify_caps(g, n)?;
    let plain: CapCount = count_caps(g, n, CapMethod::Plain)?;
    let ordered_from_classes = table.ordered_total();
    let totals_match = ordered_from_classes == plain.ordered;
    let mut rows = Vec::with_capacity(table.rows.len());
    let mut pass = totals_match;
    for row in &table.rows {
        let rep = row.class.canonical.clone();
        let recounted = count_strong_realizations(g, &rep)?.count;
        let matches = recounted == row.realizations;
        pass &= matches;
        rows.push(DecompositionRow {
            space: rep,
            from_classification: row.realizations.clone(),
            recounted,
            matches,
        });
    }
    Ok(DecompositionReport {
        q: g.q(),
        n,
        ordered_from_search: plain.ordered,
        ordered_from_classes,
        totals_match,
        rows,
        pass,
    })
}
