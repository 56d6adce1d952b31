//! Opt-in smoke checks for the heavier search configurations, with wall
//! times printed. Run with `cargo test --release -- --ignored --nocapture`.

use std::time::Instant;

use capcount_core::formulas::{FormulaCatalog, FormulaName};
use capcount_core::planar::{catalog, enumerate_planar_spaces, CensusFilter};
use capcount_core::search::{classify_caps, count_caps, count_strong_realizations, CapMethod};
use capcount_core::Geometry;
use num_bigint::BigInt;

#[test]
#[ignore = "heavy; exercised by the acceptance suite through the CLI crate"]
fn heavy_search_timings() {
    let cat = FormulaCatalog::new();

    let t = Instant::now();
    let g3 = Geometry::new(3).unwrap();
    let c7 = count_caps(&g3, 7, CapMethod::Plain).unwrap();
    println!("q=3 n=7: {} ordered, {} nodes, {:?}", c7.ordered, c7.nodes, t.elapsed());
    assert_eq!(BigInt::from(c7.ordered.clone()), cat.eval(FormulaName::C7, 3));

    let t = Instant::now();
    let g4 = Geometry::new(4).unwrap();
    println!("geometry q=4 built in {:?}", t.elapsed());
    let t = Instant::now();
    let c6 = count_caps(&g4, 6, CapMethod::Plain).unwrap();
    println!("q=4 n=6: {} ordered, {} nodes, {:?}", c6.ordered, c6.nodes, t.elapsed());
    assert_eq!(BigInt::from(c6.ordered.clone()), cat.eval(FormulaName::C6, 4));

    let t = Instant::now();
    let h4 = catalog("h4").unwrap();
    let r = count_strong_realizations(&g3, &h4).unwrap();
    println!("q=3 h4: {} realizations, {} nodes, {:?}", r.count, r.nodes, t.elapsed());
    assert_eq!(BigInt::from(r.count.clone()), cat.eval(FormulaName::Ah4, 3));

    let t = Instant::now();
    let six = catalog("sixpoint").unwrap();
    let r6 = count_strong_realizations(&g3, &six).unwrap();
    println!("q=3 sixpoint: {} realizations, {:?}", r6.count, t.elapsed());
    assert_eq!(BigInt::from(r6.count.clone()), cat.eval(FormulaName::A6, 3));

    let t = Instant::now();
    let table = classify_caps(&g3, 6).unwrap();
    println!(
        "classify q=3 n=6: {} classes over {} caps, {:?}",
        table.rows.len(),
        table.caps_seen,
        t.elapsed()
    );
    assert_eq!(BigInt::from(table.ordered_total()), cat.eval(FormulaName::C6, 3));

    let t = Instant::now();
    let census7 = enumerate_planar_spaces(7, CensusFilter::Hyperfigurations).unwrap();
    println!("census n=7 hyperfigurations: {} classes, {:?}", census7.len(), t.elapsed());
    assert_eq!(census7.len(), 6);

    let t = Instant::now();
    let g16 = Geometry::new(16).unwrap();
    println!(
        "geometry q=16 built and verified in {:?} ({} points, {} lines)",
        t.elapsed(),
        g16.point_count(),
        g16.line_count()
    );
}
