use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::color_set::ColorSet;
use crate::coloring::{all_chains, kempe_chain, swap_chain, PartialColoring};
use crate::graph::{EdgeId, Multigraph};

#[derive(Debug, Clone)]
enum Move {
    /// Give the uncolored edge the color of `from`, which then loses it.
    Shift { from: EdgeId },
    /// Swap the chain at index `chain` in the enumeration.
    Swap { chain: usize },
}

/// Breadth-first search over colorings with exactly one uncolored edge,
/// moving by Kempe changes and by shifting a color onto the uncolored edge
/// from a neighbour. Succeeds when the uncolored edge can be colored.
///
/// Chains using a `focus` color are tried first; each group is shuffled.
pub(crate) fn recolor_search(
    g: &Multigraph,
    phi: &PartialColoring,
    e: EdgeId,
    budget: usize,
    focus: &ColorSet,
    rng: &mut ChaCha8Rng,
) -> Option<PartialColoring> {
    let mut seen: HashSet<PartialColoring> = HashSet::from([phi.clone()]);
    let mut queue = VecDeque::from([(phi.clone(), e)]);
    let mut visited = 0;
    while let Some((current, gap)) = queue.pop_front() {
        let edge = g.edge(gap);
        if let Some(c) = current.missing(edge.u).intersection(current.missing(edge.v)).first() {
            let mut done = current;
            done.set(g, gap, Some(c));
            return Some(done);
        }
        let chains = all_chains(g, &current);
        let mut shifts = Vec::new();
        for (w, z) in [(edge.u, edge.v), (edge.v, edge.u)] {
            for &id in g.incident(w) {
                match current.color(id) {
                    Some(c) if current.is_missing(z, c) => shifts.push(Move::Shift { from: id }),
                    _ => {}
                }
            }
        }
        let (mut near, mut far): (Vec<Move>, Vec<Move>) = (0..chains.len())
            .map(|chain| Move::Swap { chain })
            .partition(|m| match m {
                Move::Swap { chain } => {
                    let (a, b) = chains[*chain].colors;
                    focus.contains(a) || focus.contains(b)
                }
                Move::Shift { .. } => true,
            });
        shifts.shuffle(rng);
        near.shuffle(rng);
        far.shuffle(rng);
        for mv in shifts.into_iter().chain(near).chain(far) {
            if visited >= budget {
                return None;
            }
            let mut next = current.clone();
            let next_gap = match mv {
                Move::Shift { from } => {
                    let c = next.color(from);
                    next.set(g, from, None);
                    next.set(g, gap, c);
                    from
                }
                Move::Swap { chain } => {
                    swap_chain(g, &mut next, &chains[chain]);
                    gap
                }
            };
            if !seen.insert(next.clone()) {
                continue;
            }
            visited += 1;
            queue.push_back((next, next_gap));
        }
    }
    None
}

/// A seeded random walk over the same state space, for instances where
/// breadth-first search drowns in a wide neighbourhood. Each step shifts the
/// gap or swaps a chain starting at one of its ends with a color missing
/// there.
pub(crate) fn recolor_walk(
    g: &Multigraph,
    phi: &PartialColoring,
    e: EdgeId,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> Option<PartialColoring> {
    let mut current = phi.clone();
    let mut gap = e;
    for _ in 0..=steps {
        let edge = g.edge(gap);
        if let Some(c) = current.missing(edge.u).intersection(current.missing(edge.v)).first() {
            current.set(g, gap, Some(c));
            return Some(current);
        }
        if rng.gen_bool(0.5) {
            let (w, z) = if rng.gen_bool(0.5) { (edge.u, edge.v) } else { (edge.v, edge.u) };
            let shifts: Vec<EdgeId> = g
                .incident(w)
                .iter()
                .copied()
                .filter(|&id| current.color(id).is_some_and(|c| current.is_missing(z, c)))
                .collect();
            if let Some(&from) = shifts.choose(rng) {
                let c = current.color(from);
                current.set(g, from, None);
                current.set(g, gap, c);
                gap = from;
                continue;
            }
        }
        let w = if rng.gen_bool(0.5) { edge.u } else { edge.v };
        let Some(alpha) = current.missing(w).iter().collect::<Vec<_>>().choose(rng).copied() else {
            continue;
        };
        let beta = rng.gen_range(1..=current.k());
        if beta == alpha {
            continue;
        }
        let chain = kempe_chain(g, &current, w, alpha, beta);
        if !chain.is_empty() {
            swap_chain(g, &mut current, &chain);
        }
    }
    None
}
