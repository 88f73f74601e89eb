//! Engine runs past the exact solver's reach.

use gscolor::density::{bound_report, certificate_check};
use gscolor::engine::{color, verify_result, ColorOptions};
use gscolor::generate::{random, ring};
use gscolor::graph::EdgeId;
use gscolor::VertexSet;

#[test]
fn critical_rings_meet_the_density_bound() {
    for (n, mu) in [(7, 4), (9, 5), (11, 6), (13, 7)] {
        let g = ring(n, mu);
        let report = bound_report(&g).unwrap();
        assert_eq!(report.gamma_ceil, report.max_degree + 2);
        let result = color(&g, &ColorOptions::default()).unwrap();
        assert!(verify_result(&g, &result));
        assert_eq!(result.k_used, report.gamma_ceil, "ring {n} {mu}");
        assert!(!result.certificates.is_empty());
        // One edge fewer needs one color fewer.
        let h = g.without_edges(&[EdgeId(0)]);
        let smaller = color(&h, &ColorOptions::default()).unwrap();
        assert_eq!(smaller.k_used, report.gamma_ceil - 1, "ring {n} {mu} minus an edge");
        assert_eq!(certificate_check(&g, &VertexSet::full(n), smaller.k_used), Ok(true));
    }
}

#[test]
fn large_orders_use_the_classical_ceiling() {
    let g = ring(23, 3);
    assert!(bound_report(&g).is_err());
    let result = color(&g, &ColorOptions::default()).unwrap();
    assert!(verify_result(&g, &result));
    // Γ = 138/22 rounds up to 7; the engine is only held to min{⌊3Δ/2⌋, Δ+μ} = 9.
    assert!((7..=9).contains(&result.k_used));
    for seed in 0..4 {
        let g = random(24, 60, seed);
        let result = color(&g, &ColorOptions { seed, ..ColorOptions::default() }).unwrap();
        assert!(verify_result(&g, &result));
        let stats = g.stats();
        assert!(result.k_used <= (3 * stats.max_degree / 2).min(stats.max_degree + stats.max_multiplicity));
    }
}
