//! Series and hierarchy runs on the hand-built gadgets, where the first
//! tree is elementary and closed but not strongly closed.

mod common;

use common::{parallel_gadget, series_gadget, split_parallel_gadget};
use gscolor::coloring::{is_closed, is_elementary, is_stable, is_strongly_closed, missing_union};
use gscolor::graph::EdgeId;
use gscolor::tashkinov::{
    build_hierarchy_at, build_series, check_iteration, failed_conditions, HierarchyError, SeriesBudget,
    SeriesOutcome, Shortfall,
};
use gscolor::{ColorSet, VertexSet};

fn core(n: usize) -> VertexSet {
    VertexSet::new(n, [0, 1, 2]).unwrap()
}

fn state_tree(g: &gscolor::graph::Multigraph, phi: &gscolor::coloring::PartialColoring) -> VertexSet {
    build_series(g, EdgeId(0), phi, &SeriesBudget::default()).unwrap().tree(1).vertex_set()
}

#[test]
fn gadgets_start_elementary_closed_not_strongly_closed() {
    for (g, phi) in [parallel_gadget(), series_gadget(), split_parallel_gadget()] {
        assert_eq!(phi.k(), g.max_degree() + 1);
        let set = state_tree(&g, &phi);
        assert!(is_elementary(&phi, &set));
        assert!(is_closed(&g, &phi, &set));
        assert!(!is_strongly_closed(&g, &phi, &set));
    }
}

#[test]
fn parallel_extension_postconditions() {
    let (g, phi) = parallel_gadget();
    let state = build_series(&g, EdgeId(0), &phi, &SeriesBudget::default()).unwrap();
    assert_eq!(state.tree(1).vertex_set(), core(6));
    assert!(state.n() >= 2);
    let rung = state.rung(1);
    assert_eq!(rung.theta, gscolor::tashkinov::Extension::Parallel);
    assert_eq!((rung.v, rung.u, rung.delta), (2, 5, 6));
    let gamma = rung.gamma.unwrap();
    assert_eq!(gamma, 3);
    let phi1 = state.coloring(1);
    assert_eq!(phi1.color(rung.f), Some(gamma));
    assert!(phi1.is_proper(&g));
    let guard: ColorSet = [rung.delta].into_iter().collect();
    // Before the connecting edge is recolored, the exit coloring is stable.
    let mut before = phi1.clone();
    before.set(&g, rung.f, Some(rung.delta));
    assert!(is_stable(&g, &before, &core(6), &guard, state.coloring(0)).unwrap());
    check_iteration(&g, &state, 1).unwrap();
    assert_eq!(state.d(1), &[3].into_iter().collect::<ColorSet>());
    let r = rung.r_tree.as_ref().unwrap();
    assert!(state.tree(1).vertices().iter().all(|&v| r.contains(v)));
    // Every vertex is swallowed, and leaf 3 repeats a missing color of 0.
    assert_eq!(state.tree(2).len(), 6);
    assert!(matches!(state.outcome(), SeriesOutcome::NonElementary(_)));
}

#[test]
fn series_extension_postconditions() {
    let (g, phi) = series_gadget();
    let state = build_series(&g, EdgeId(0), &phi, &SeriesBudget::default()).unwrap();
    let rung = state.rung(1);
    assert_eq!(rung.theta, gscolor::tashkinov::Extension::Series);
    assert_eq!((rung.v, rung.u, rung.delta, rung.gamma), (2, 3, 6, None));
    assert!(!rung.truncated);
    // SE keeps the coloring.
    assert_eq!(state.coloring(1), state.coloring(0));
    assert_eq!(state.d(1), &[6].into_iter().collect::<ColorSet>());
    assert_eq!(&state.tree(2).vertices()[..5], &[0, 1, 2, 3, 4]);
    check_iteration(&g, &state, 1).unwrap();
    assert!(matches!(state.outcome(), SeriesOutcome::NonElementary(_)));
}

#[test]
fn parallel_hierarchy_degenerates_when_the_join_is_the_whole_tree() {
    let (g, phi) = parallel_gadget();
    let state = build_series(&g, EdgeId(0), &phi, &SeriesBudget::default()).unwrap();
    assert_eq!(
        build_hierarchy_at(&g, &state, 1).unwrap_err(),
        HierarchyError::Inapplicable(Shortfall::NoOpenColor)
    );
}

#[test]
fn series_hierarchy_meets_every_condition() {
    let (g, phi) = series_gadget();
    let state = build_series(&g, EdgeId(0), &phi, &SeriesBudget::default()).unwrap();
    let h = build_hierarchy_at(&g, &state, 1).unwrap();
    assert_eq!(h.tree.vertex_set(), state.tree(2).vertex_set());
    assert_eq!(h.levels[0], 3);
    assert_eq!(failed_conditions(&g, &h), Vec::<u8>::new());
    let eta = 6;
    let pair = h.gamma_sets[0][&eta];
    assert!(pair.iter().all(|&c| (1..=5).contains(&c)));
}

#[test]
fn parallel_hierarchy_on_a_split_join() {
    let (g, phi) = split_parallel_gadget();
    let state = build_series(&g, EdgeId(0), &phi, &SeriesBudget::default()).unwrap();
    let t1 = state.tree(1);
    assert_eq!(t1.vertices(), &[0, 1, 2, 3, 4]);
    let rung = state.rung(1);
    assert_eq!(rung.theta, gscolor::tashkinov::Extension::Parallel);
    check_iteration(&g, &state, 1).unwrap();
    let r = rung.r_tree.as_ref().unwrap();
    assert!(!r.contains(3) && !r.contains(4));
    let joined = t1.join(&g, r);
    assert!(joined.len() < state.tree(2).len());

    let h = build_hierarchy_at(&g, &state, 1).unwrap();
    assert_eq!(failed_conditions(&g, &h), Vec::<u8>::new());
    let phi1 = state.coloring(1);
    let t_missing = missing_union(phi1, t1.vertices().iter().copied());
    let r_missing = missing_union(phi1, r.vertices().iter().copied());
    let gamma0: ColorSet = h.gamma_sets[0].values().flat_map(|p| p.iter().copied()).collect();
    let slack = t_missing.intersection(&r_missing).difference(&gamma0).len();
    assert_eq!(r.vertices(), &[0, 1, 2, 5, 9, 6, 8, 7]);
    assert_eq!(h.levels, vec![5, 11]);
    assert_eq!(h.gamma_sets[0][&6], [8, 1]);
    assert_eq!(slack, 5);
}
