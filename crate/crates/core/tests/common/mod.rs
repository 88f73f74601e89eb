#![allow(dead_code)]

use gscolor::coloring::{kempe_chain, kempe_swap, PartialColoring};
use gscolor::density::Rational;
use gscolor::generate::{exhaustive, random};
use gscolor::graph::{EdgeId, Multigraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RANDOM_INSTANCES: u64 = 500;

/// Connected multigraphs with `n ≤ 5`, `m ≤ 10`, one per isomorphism class.
pub fn desk_corpus() -> Vec<Multigraph> {
    exhaustive(5, 10)
}

/// Seeded random multigraphs with `3 ≤ n ≤ 8`, `μ ≤ 4` and at most 20 edges.
pub fn random_corpus() -> Vec<Multigraph> {
    (0..RANDOM_INSTANCES)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(3..=8);
            let m = rng.gen_range(n - 1..=20);
            random(n, m, seed)
        })
        .collect()
}

pub fn full_corpus() -> Vec<Multigraph> {
    let mut all = desk_corpus();
    all.extend(random_corpus());
    all
}

/// Γ by scanning every odd subset and counting its edges directly.
pub fn oracle_gamma(g: &Multigraph) -> Rational {
    let n = g.vertex_count();
    let mut best = Rational::from_integer(0);
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as u64;
        if size < 3 || size.is_multiple_of(2) {
            continue;
        }
        let inside = g
            .edges()
            .filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1)
            .count() as u64;
        best = best.max(Rational::new(2 * inside, size - 1));
    }
    best
}

/// `χ′` by plain backtracking over edges in id order, colors introduced in
/// order of first use. `None` once `budget` nodes are spent.
pub fn oracle_chi(g: &Multigraph, budget: u64) -> Option<usize> {
    let edges: Vec<(usize, usize)> = g.edges().map(|e| (e.u, e.v)).collect();
    if edges.is_empty() {
        return Some(0);
    }
    let mut k = g.max_degree();
    let mut nodes = 0;
    loop {
        let mut used = vec![0u128; g.vertex_count()];
        match fill(&edges, 0, k, 0, &mut used, &mut nodes, budget) {
            Some(true) => return Some(k),
            Some(false) => k += 1,
            None => return None,
        }
    }
}

fn fill(
    edges: &[(usize, usize)],
    i: usize,
    k: usize,
    opened: usize,
    used: &mut [u128],
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    if i == edges.len() {
        return Some(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let (u, v) = edges[i];
    for c in 0..k.min(opened + 1) {
        let bit = 1u128 << c;
        if (used[u] | used[v]) & bit != 0 {
            continue;
        }
        used[u] |= bit;
        used[v] |= bit;
        let found = fill(edges, i + 1, k, opened.max(c + 1), used, nodes, budget);
        used[u] &= !bit;
        used[v] &= !bit;
        if found != Some(false) {
            return found;
        }
    }
    Some(false)
}

/// A proper partial `k`-coloring built greedily in random order; an edge is
/// left uncolored when no common color is free or with probability `hole`.
pub fn random_partial(g: &Multigraph, k: usize, hole: f64, rng: &mut ChaCha8Rng) -> PartialColoring {
    let mut phi = PartialColoring::new(g, k);
    let mut ids: Vec<EdgeId> = g.edge_ids().collect();
    ids.shuffle(rng);
    for id in ids {
        if rng.gen_bool(hole) {
            continue;
        }
        let e = g.edge(id);
        let free: Vec<_> = phi.missing(e.u).intersection(phi.missing(e.v)).iter().collect();
        if let Some(&c) = free.choose(rng) {
            phi.set(g, id, Some(c));
        }
    }
    phi
}

/// `steps` random Kempe changes starting from `phi`.
pub fn scramble(g: &Multigraph, phi: &PartialColoring, steps: usize, rng: &mut ChaCha8Rng) -> PartialColoring {
    let mut out = phi.clone();
    let k = out.k();
    if k < 2 || g.vertex_count() == 0 {
        return out;
    }
    for _ in 0..steps {
        let v = rng.gen_range(0..g.vertex_count());
        let a = rng.gen_range(1..=k);
        let b = rng.gen_range(1..=k);
        if a == b {
            continue;
        }
        let chain = kempe_chain(g, &out, v, a, b);
        if !chain.is_empty() {
            out = kempe_swap(g, &out, &chain).expect("fresh chain");
        }
    }
    out
}

/// The triangle with multiplicities `a`, `b`, `c` on sides `01`, `12`, `20`.
pub fn fat_triangle(a: usize, b: usize, c: usize) -> Multigraph {
    let mut pairs = vec![(0, 1); a];
    pairs.extend(vec![(1, 2); b]);
    pairs.extend(vec![(0, 2); c]);
    Multigraph::build(3, &pairs).unwrap()
}

/// `K_5` with its Hamiltonian cycle `0-1-2-3-4` doubled.
pub fn k5_doubled_cycle() -> Multigraph {
    let mut pairs = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            pairs.push((u, v));
        }
    }
    pairs.extend((0..5).map(|i| (i, (i + 1) % 5)));
    Multigraph::build(5, &pairs).unwrap()
}

// Gadgets sharing a triangle core `{0,1,2}` with the uncolored edge `01`.
// Core vertex `x` misses the colors placed on the opposite core edges, and a
// defective color `δ = 6` leaves the core once at each core vertex.

pub fn instance(n: usize, k: usize, edges: &[(usize, usize, Option<usize>)]) -> (Multigraph, PartialColoring) {
    let pairs: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let g = Multigraph::build(n, &pairs).unwrap();
    let assignment: Vec<_> = edges.iter().enumerate().map(|(i, &(_, _, c))| (EdgeId(i), c)).collect();
    let phi = PartialColoring::from_assignment(&g, k, &assignment).unwrap();
    assert!(phi.is_proper(&g));
    (g, phi)
}

/// `k = 6 = Δ + 1`; the δ-neighbours are leaves, so the far end of the
/// connecting edge misses every tree color.
pub fn parallel_gadget() -> (Multigraph, PartialColoring) {
    instance(
        6,
        6,
        &[
            (0, 1, None),
            (1, 2, Some(1)),
            (1, 2, Some(4)),
            (0, 2, Some(2)),
            (0, 2, Some(5)),
            (0, 1, Some(3)),
            (0, 3, Some(6)),
            (1, 4, Some(6)),
            (2, 5, Some(6)),
        ],
    )
}

/// `k = 7 = Δ + 1`. Vertex 3 ends the connecting edge and misses only 7;
/// its other edges all run to vertex 4, whose 7-edge leads back into the
/// core, so no stable recoloring frees a tree color at 3.
pub fn series_gadget() -> (Multigraph, PartialColoring) {
    let mut edges = vec![
        (0, 1, None),
        (1, 2, Some(1)),
        (1, 2, Some(4)),
        (0, 2, Some(2)),
        (0, 2, Some(5)),
        (0, 1, Some(3)),
        (0, 1, Some(7)),
        (0, 5, Some(6)),
        (1, 6, Some(6)),
        (2, 3, Some(6)),
        (2, 4, Some(7)),
    ];
    edges.extend((1..=5).map(|c| (3, 4, Some(c))));
    instance(7, 7, &edges)
}

/// `k = 9 = Δ + 1` on an elementary five-vertex tree `0..5`. Colors missing
/// at `0`, `1` and `2` never cross between `{0,1,2}` and `{3,4}`, so the
/// tree grown from the defective vertex `2` leaves `3` and `4` behind.
pub fn split_parallel_gadget() -> (Multigraph, PartialColoring) {
    instance(
        11,
        9,
        &[
            (0, 1, None),
            (1, 2, Some(1)),
            (3, 4, Some(1)),
            (9, 5, Some(1)),
            (8, 6, Some(1)),
            (1, 2, Some(2)),
            (3, 4, Some(2)),
            (0, 2, Some(3)),
            (3, 4, Some(3)),
            (0, 2, Some(4)),
            (3, 4, Some(4)),
            (0, 2, Some(5)),
            (3, 4, Some(5)),
            (5, 9, Some(6)),
            (7, 8, Some(6)),
            (7, 9, Some(7)),
            (8, 5, Some(7)),
            (6, 10, Some(7)),
            (6, 8, Some(8)),
            (5, 7, Some(8)),
            (9, 10, Some(8)),
            (3, 4, Some(9)),
            (0, 5, Some(9)),
            (1, 6, Some(9)),
            (2, 7, Some(9)),
            (8, 9, Some(9)),
            (0, 3, Some(6)),
            (1, 4, Some(6)),
            (4, 2, Some(7)),
            (1, 0, Some(7)),
            (3, 0, Some(8)),
            (1, 2, Some(8)),
        ],
    )
}

/// A seeded colored multigraph around a planted tree `0..5` that is
/// elementary and closed, with a defective color `δ` leaving `0`, `1`, `2`
/// towards `A` and joining `3` to `4`. Outside vertices split into `A` and
/// `B`; only colors missing at `3` or `4` run between them. `None` when the
/// draw needs more than `k − 1` colors at a vertex.
pub fn planted_tree(seed: u64) -> Option<(Multigraph, PartialColoring)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let na = rng.gen_range(4..=8);
    let nb = rng.gen_range(1..=5);
    let n = 5 + na + nb;
    let a: Vec<usize> = (5..5 + na).collect();
    let b: Vec<usize> = (5 + na..n).collect();
    // Class of each color: the tree vertex missing it, 5 for δ, 6 for filler.
    let mut class = Vec::new();
    for (x, hi) in [(0, 3), (1, 3), (2, 1), (3, 3), (4, 2)] {
        let count = if hi == 1 { 1 } else { rng.gen_range(1..=hi) };
        class.extend(std::iter::repeat_n(x, count));
    }
    class.push(5);
    let fillers = rng.gen_range(0..=3);
    class.extend(std::iter::repeat_n(6, fillers));
    let k = class.len();
    let mut edges: Vec<(usize, usize, Option<usize>)> = vec![(0, 1, None)];
    // Edges into 3 and 4 come last so the tree grows in vertex order.
    let mut late = Vec::new();
    for (i, &cl) in class.iter().enumerate() {
        let c = Some(i + 1);
        let mut taken = Vec::new();
        let mut low = [0, 1, 2];
        low.shuffle(&mut rng);
        match cl {
            0 => edges.extend([(1, 2, c), (3, 4, c)]),
            1 => edges.extend([(0, 2, c), (3, 4, c)]),
            2 => late.extend([(0, 3, c), (1, 4, c)]),
            3 => late.extend([(4, low[0], c), (low[1], low[2], c)]),
            4 => late.extend([(3, low[0], c), (low[1], low[2], c)]),
            5 => {
                edges.push((3, 4, c));
                for (x, &y) in a[..3].iter().enumerate() {
                    edges.push((x, y, c));
                    taken.push(y);
                }
            }
            _ => {
                let y = *a[3..].choose(&mut rng).unwrap();
                edges.extend([(low[0], low[1], c), (3, 4, c), (low[2], y, c)]);
                taken.push(y);
            }
        }
        let mut pool_a: Vec<usize> = a.iter().copied().filter(|y| !taken.contains(y)).collect();
        if i == 0 {
            // The δ-neighbour of 2 misses a tree color.
            pool_a.retain(|&y| y != a[2]);
        }
        let mut pool_b = b.clone();
        pool_a.shuffle(&mut rng);
        pool_b.shuffle(&mut rng);
        let mut pair_up = |pool: &[usize], skip: usize| {
            edges.extend(pool.chunks_exact(2).skip(skip).map(|p| (p[0], p[1], c)));
        };
        match cl {
            3 | 4 => {
                let all: Vec<usize> = pool_a.iter().chain(&pool_b).copied().collect();
                pair_up(&all, rng.gen_range(0..=1));
            }
            2 => {
                pair_up(&pool_a, rng.gen_range(0..=1));
                pair_up(&pool_b, 0);
            }
            _ => {
                for pool in [&pool_a, &pool_b] {
                    let pairs = pool.len() / 2;
                    pair_up(pool, pairs - rng.gen_range(0..=pairs));
                }
            }
        }
    }
    edges.extend(late);
    let pairs: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let g = Multigraph::build(n, &pairs).unwrap();
    if g.max_degree() + 1 > k {
        return None;
    }
    let assignment: Vec<_> = edges.iter().enumerate().map(|(i, &(_, _, c))| (EdgeId(i), c)).collect();
    Some((g.clone(), PartialColoring::from_assignment(&g, k, &assignment).unwrap()))
}
