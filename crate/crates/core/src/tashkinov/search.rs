use std::collections::{HashSet, VecDeque};

use crate::color_set::ColorSet;
use crate::coloring::{all_chains, is_stable, PartialColoring};
use crate::graph::{Multigraph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct SearchStats {
    pub visited: usize,
    pub truncated: bool,
}

/// Breadth-first search over `(T, C, φ)`-stable colorings reachable from
/// `φ` by single Kempe changes, each intermediate coloring stable too.
///
/// `visit` sees `φ` first; returning `true` stops the search. At most
/// `budget` colorings beyond `φ` are visited.
pub(crate) fn stable_search(
    g: &Multigraph,
    phi: &PartialColoring,
    t: &VertexSet,
    c: &ColorSet,
    budget: usize,
    visit: &mut dyn FnMut(&PartialColoring) -> bool,
) -> SearchStats {
    let mut stats = SearchStats::default();
    if visit(phi) {
        return stats;
    }
    let mut seen: HashSet<PartialColoring> = HashSet::new();
    seen.insert(phi.clone());
    let mut queue = VecDeque::from([phi.clone()]);
    while let Some(current) = queue.pop_front() {
        for chain in all_chains(g, &current) {
            if stats.visited >= budget {
                stats.truncated = true;
                return stats;
            }
            let mut next = current.clone();
            crate::coloring::swap_chain(g, &mut next, &chain);
            if seen.contains(&next) {
                continue;
            }
            if !is_stable(g, &next, t, c, phi).unwrap_or(false) {
                continue;
            }
            stats.visited += 1;
            if visit(&next) {
                return stats;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    stats
}
