//! Deterministic instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Multigraph;

/// Largest multiplicity produced by [`random`].
pub const RANDOM_MAX_MULTIPLICITY: usize = 4;

/// Outer cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Multigraph {
    let mut pairs = Vec::with_capacity(15);
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        pairs.push((i, i + 5));
    }
    for i in 0..5 {
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Multigraph::build(10, &pairs).expect("valid")
}

/// A triangle with every side replaced by `mu` parallel edges.
pub fn shannon(mu: usize) -> Multigraph {
    ring(3, mu)
}

/// An `n`-cycle with every edge replaced by `mu` parallel edges.
///
/// `n = 2` gives a single bundle of `mu` edges; smaller `n` is edgeless.
pub fn ring(n: usize, mu: usize) -> Multigraph {
    let mut pairs = Vec::new();
    match n {
        0 | 1 => {}
        2 => pairs.extend(std::iter::repeat_n((0, 1), mu)),
        _ => {
            for i in 0..n {
                pairs.extend(std::iter::repeat_n((i, (i + 1) % n), mu));
            }
        }
    }
    Multigraph::build(n, &pairs).expect("valid")
}

/// `m` random edges on `n` vertices, multiplicity at most
/// [`RANDOM_MAX_MULTIPLICITY`]. Stops early if every pair is saturated.
pub fn random(n: usize, m: usize, seed: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mult = vec![vec![0usize; n]; n];
    let capacity = n * n.saturating_sub(1) / 2 * RANDOM_MAX_MULTIPLICITY;
    let mut pairs = Vec::with_capacity(m);
    while pairs.len() < m.min(capacity) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || mult[u][v] >= RANDOM_MAX_MULTIPLICITY {
            continue;
        }
        mult[u][v] += 1;
        mult[v][u] += 1;
        pairs.push((u.min(v), u.max(v)));
    }
    Multigraph::build(n, &pairs).expect("valid")
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class of connected loopless
/// multigraphs with `2..=n` vertices and at most `m_max` edges.
///
/// A multiplicity vector is kept iff it is lexicographically largest among
/// its relabelings. Output is ordered by vertex count, then edge count,
/// then vector.
pub fn exhaustive(n: usize, m_max: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for order in 2..=n {
        let pairs = pair_list(order);
        let index = |u: usize, v: usize| {
            pairs
                .iter()
                .position(|&p| p == (u.min(v), u.max(v)))
                .unwrap()
        };
        let perm_maps: Vec<Vec<usize>> = permutations(order)
            .into_iter()
            .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
            .collect();
        for m in order - 1..=m_max {
            let mut found = Vec::new();
            let mut vector = vec![0usize; pairs.len()];
            compositions(&mut vector, 0, m, &mut |vec| {
                let canonical = perm_maps.iter().all(|map| {
                    let mut image = vec![0; vec.len()];
                    for (i, &c) in vec.iter().enumerate() {
                        image[map[i]] = c;
                    }
                    image.as_slice() <= vec
                });
                if !canonical {
                    return;
                }
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .zip(vec)
                    .flat_map(|(&p, &c)| std::iter::repeat_n(p, c))
                    .collect();
                let g = Multigraph::build(order, &edges).expect("valid");
                if g.is_connected() {
                    found.push((vec.to_vec(), g));
                }
            });
            found.sort_by(|a, b| a.0.cmp(&b.0));
            out.extend(found.into_iter().map(|(_, g)| g));
        }
    }
    out
}

fn compositions(vector: &mut [usize], at: usize, left: usize, visit: &mut dyn FnMut(&[usize])) {
    if at + 1 == vector.len() {
        vector[at] = left;
        visit(vector);
        vector[at] = 0;
        return;
    }
    if at == vector.len() {
        if left == 0 {
            visit(vector);
        }
        return;
    }
    for c in (0..=left).rev() {
        vector[at] = c;
        compositions(vector, at + 1, left - c, visit);
    }
    vector[at] = 0;
}
