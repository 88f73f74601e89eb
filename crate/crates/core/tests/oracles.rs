//! Library results against brute-force oracles, and values frozen from them.

mod common;

use common::*;
use gscolor::density::{bound_report, chromatic_index_exact, density, is_critical, tashkinov_order, Rational};
use gscolor::generate::{petersen, ring, shannon};
use rayon::prelude::*;

const NAIVE_BUDGET: u64 = 20_000_000;

#[test]
fn density_matches_subset_scan() {
    let bad: Vec<usize> = full_corpus()
        .par_iter()
        .enumerate()
        .filter(|(_, g)| density(g).unwrap().value != oracle_gamma(g))
        .map(|(i, _)| i)
        .collect();
    assert!(bad.is_empty(), "instances {bad:?}");
}

#[test]
fn density_set_attains_value() {
    for g in desk_corpus() {
        let cert = density(&g).unwrap();
        if cert.set.is_empty() {
            continue;
        }
        let size = cert.set.len() as u64;
        let edges = g.induced_edge_count(&cert.set) as u64;
        assert_eq!(Rational::new(2 * edges, size - 1), cert.value);
    }
}

#[test]
fn chromatic_index_matches_naive_search() {
    let bad: Vec<(usize, usize, usize)> = full_corpus()
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let naive = oracle_chi(g, NAIVE_BUDGET).expect("naive search within budget");
            let fast = chromatic_index_exact(g).unwrap();
            (naive != fast).then_some((i, naive, fast))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

fn class_counts(corpus: &[gscolor::Multigraph]) -> [usize; 3] {
    let mut counts = [0; 3];
    for g in corpus {
        let excess = chromatic_index_exact(g).unwrap() - g.max_degree();
        counts[excess.min(2)] += 1;
    }
    counts
}

#[test]
fn frozen_corpus_profile() {
    let desk = desk_corpus();
    assert_eq!(desk.len(), 1933);
    // χ′ = Δ, χ′ = Δ + 1, χ′ ≥ Δ + 2.
    assert_eq!(class_counts(&desk), [1680, 227, 26]);
    assert_eq!(class_counts(&random_corpus()), [400, 35, 65]);
}

#[test]
fn frozen_named_values() {
    let p = bound_report(&petersen()).unwrap();
    assert_eq!((p.gamma, p.gs_upper), (Rational::from_integer(3), 4));
    assert_eq!(chromatic_index_exact(&petersen()).unwrap(), 4);
    for mu in 1..=3 {
        assert_eq!(chromatic_index_exact(&shannon(mu)).unwrap(), 3 * mu);
        assert_eq!(oracle_gamma(&shannon(mu)), Rational::from_integer(3 * mu as u64));
    }
    assert_eq!(oracle_gamma(&ring(5, 3)), Rational::new(15, 2));
    assert_eq!(chromatic_index_exact(&ring(5, 3)).unwrap(), 8);
    assert_eq!(oracle_gamma(&k5_doubled_cycle()), Rational::new(15, 2));
    assert_eq!(chromatic_index_exact(&k5_doubled_cycle()).unwrap(), 8);
    assert_eq!(chromatic_index_exact(&fat_triangle(2, 2, 3)).unwrap(), 7);
}

#[test]
fn frozen_critical_instances() {
    for g in [shannon(2), shannon(3), fat_triangle(2, 2, 3), ring(5, 3), k5_doubled_cycle()] {
        assert!(is_critical(&g).unwrap());
    }
    let mut pairs = shannon(2).endpoint_pairs();
    pairs.push((3, 4));
    assert!(!is_critical(&gscolor::Multigraph::build(5, &pairs).unwrap()).unwrap());
    assert_eq!(tashkinov_order(&shannon(3), 2000).unwrap().value, 3);
    assert_eq!(tashkinov_order(&fat_triangle(2, 2, 3), 2000).unwrap().value, 3);
}

#[test]
fn r_graph_harness() {
    assert!(petersen().is_r_graph(3).unwrap());
    assert!(!shannon(2).is_r_graph(4).unwrap());
}
