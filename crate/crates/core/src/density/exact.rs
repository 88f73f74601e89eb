use super::DensityError;
use crate::coloring::PartialColoring;
use crate::graph::{EdgeId, GraphError, Multigraph};

/// Caps for the backtracking solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_edges: usize,
    pub node_budget: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_edges: 48,
            node_budget: 50_000_000,
        }
    }
}

const MAX_COLORS: usize = 127;

struct Solver {
    k: usize,
    ends: Vec<(usize, usize)>,
    weight: Vec<usize>,
    color: Vec<u8>,
    used: Vec<u128>,
    remaining: Vec<u32>,
    nodes: u64,
    budget: u64,
}

enum Flow {
    Continue,
    Stop,
}

impl Solver {
    fn new(n: usize, ends: Vec<(usize, usize)>, k: usize, budget: u64) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in &ends {
            degree[u] += 1;
            degree[v] += 1;
        }
        let weight = ends.iter().map(|&(u, v)| degree[u] + degree[v]).collect();
        Solver {
            k,
            color: vec![0; ends.len()],
            weight,
            used: vec![0; n],
            remaining: degree.iter().map(|&d| d as u32).collect(),
            ends,
            nodes: 0,
            budget,
        }
    }

    fn full(&self) -> u128 {
        ((1u128 << self.k) - 1) << 1
    }

    fn feasible(&self, left: usize) -> bool {
        for (v, &r) in self.remaining.iter().enumerate() {
            if r > 0 && r as usize > self.k - self.used[v].count_ones() as usize {
                return false;
            }
        }
        // Each color class can still absorb at most half of the vertices
        // that are both unsaturated and free in that color.
        let mut capacity = 0;
        for c in 1..=self.k {
            let bit = 1u128 << c;
            let free = self
                .remaining
                .iter()
                .zip(&self.used)
                .filter(|&(&r, &u)| r > 0 && u & bit == 0)
                .count();
            capacity += free / 2;
        }
        capacity >= left
    }

    fn pick(&self) -> Option<(usize, u128)> {
        let full = self.full();
        let mut best: Option<(usize, u128, u32)> = None;
        for (i, &(u, v)) in self.ends.iter().enumerate() {
            if self.color[i] != 0 {
                continue;
            }
            let avail = full & !(self.used[u] | self.used[v]);
            let count = avail.count_ones();
            let better = match best {
                None => true,
                Some((j, _, bc)) => count < bc || (count == bc && self.weight[i] > self.weight[j]),
            };
            if better {
                best = Some((i, avail, count));
            }
        }
        best.map(|(i, avail, _)| (i, avail))
    }

    fn assign(&mut self, i: usize, c: usize) {
        let (u, v) = self.ends[i];
        self.color[i] = c as u8;
        self.used[u] |= 1 << c;
        self.used[v] |= 1 << c;
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
    }

    fn unassign(&mut self, i: usize) {
        let (u, v) = self.ends[i];
        let c = self.color[i] as usize;
        self.color[i] = 0;
        self.used[u] &= !(1 << c);
        self.used[v] &= !(1 << c);
        self.remaining[u] += 1;
        self.remaining[v] += 1;
    }

    fn search(
        &mut self,
        left: usize,
        max_used: usize,
        visit: &mut dyn FnMut(&[u8]) -> Flow,
    ) -> Result<Flow, DensityError> {
        if left == 0 {
            return Ok(visit(&self.color));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(DensityError::Budget(self.budget));
        }
        if !self.feasible(left) {
            return Ok(Flow::Continue);
        }
        let Some((i, avail)) = self.pick() else {
            return Ok(Flow::Continue);
        };
        // Colors above max_used + 1 are interchangeable with max_used + 1.
        for c in 1..=self.k.min(max_used + 1) {
            if avail >> c & 1 == 0 {
                continue;
            }
            self.assign(i, c);
            let flow = self.search(left - 1, max_used.max(c), visit)?;
            self.unassign(i);
            if let Flow::Stop = flow {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
}

fn check_scale(g: &Multigraph, k: usize, limits: &ExactLimits) -> Result<(), DensityError> {
    if g.edge_count() > limits.max_edges {
        return Err(GraphError::ScaleExceeded {
            what: "edge count",
            actual: g.edge_count(),
            cap: limits.max_edges,
        }
        .into());
    }
    if k > MAX_COLORS {
        return Err(GraphError::ScaleExceeded {
            what: "color count",
            actual: k,
            cap: MAX_COLORS,
        }
        .into());
    }
    Ok(())
}

fn component_edges(g: &Multigraph) -> Vec<Vec<EdgeId>> {
    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    let comps = g.components();
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut out = vec![Vec::new(); comps.len()];
    for e in g.edges() {
        out[comp_of[e.u]].push(e.id);
    }
    out.retain(|edges| !edges.is_empty());
    out
}

fn solve_part(
    g: &Multigraph,
    ids: &[EdgeId],
    k: usize,
    limits: &ExactLimits,
) -> Result<Option<Vec<u8>>, DensityError> {
    let ends = ids.iter().map(|&id| {
        let e = g.edge(id);
        (e.u, e.v)
    });
    let mut solver = Solver::new(g.vertex_count(), ends.collect(), k, limits.node_budget);
    let mut found = None;
    solver.search(ids.len(), 0, &mut |colors| {
        found = Some(colors.to_vec());
        Flow::Stop
    })?;
    Ok(found)
}

/// A proper `k`-edge-coloring of all of `g`, or `None` if none exists.
pub fn edge_colorable(
    g: &Multigraph,
    k: usize,
    limits: &ExactLimits,
) -> Result<Option<PartialColoring>, DensityError> {
    check_scale(g, k, limits)?;
    let mut phi = PartialColoring::new(g, k);
    for ids in component_edges(g) {
        match solve_part(g, &ids, k, limits)? {
            Some(colors) => {
                for (&id, &c) in ids.iter().zip(&colors) {
                    phi.set(g, id, Some(c as usize));
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(phi))
}

/// Up to `limit` proper `k`-colorings of `g`, one per class under color
/// relabeling. The flag is true when the limit cut the enumeration short.
pub fn enumerate_colorings(
    g: &Multigraph,
    k: usize,
    limit: usize,
    limits: &ExactLimits,
) -> Result<(Vec<PartialColoring>, bool), DensityError> {
    check_scale(g, k, limits)?;
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let ends = ids.iter().map(|&id| {
        let e = g.edge(id);
        (e.u, e.v)
    });
    let mut solver = Solver::new(g.vertex_count(), ends.collect(), k, limits.node_budget);
    let mut out = Vec::new();
    let mut truncated = false;
    solver.search(ids.len(), 0, &mut |colors| {
        if out.len() == limit {
            truncated = true;
            return Flow::Stop;
        }
        let mut phi = PartialColoring::new(g, k);
        for (&id, &c) in ids.iter().zip(colors) {
            phi.set(g, id, Some(c as usize));
        }
        out.push(phi);
        Flow::Continue
    })?;
    Ok((out, truncated))
}

/// `χ′(G)` by backtracking, one component at a time, from `k = Δ` upward.
pub fn chromatic_index_exact(g: &Multigraph) -> Result<usize, DensityError> {
    chromatic_index_with(g, &ExactLimits::default())
}

pub fn chromatic_index_with(g: &Multigraph, limits: &ExactLimits) -> Result<usize, DensityError> {
    check_scale(g, 0, limits)?;
    let mut chi = 0;
    for ids in component_edges(g) {
        let mut degree = vec![0usize; g.vertex_count()];
        for &id in &ids {
            let e = g.edge(id);
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut k = degree.into_iter().max().unwrap_or(0).max(chi);
        loop {
            check_scale(g, k, limits)?;
            if solve_part(g, &ids, k, limits)?.is_some() {
                break;
            }
            k += 1;
        }
        chi = chi.max(k);
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{petersen, ring, shannon};

    #[test]
    fn chromatic_index_examples() {
        let tri = Multigraph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(chromatic_index_exact(&tri), Ok(3));
        assert_eq!(chromatic_index_exact(&petersen()), Ok(4));
        assert_eq!(chromatic_index_exact(&shannon(2)), Ok(6));
        assert_eq!(chromatic_index_exact(&shannon(3)), Ok(9));
        assert_eq!(chromatic_index_exact(&ring(4, 1)), Ok(2));
        assert_eq!(chromatic_index_exact(&Multigraph::edgeless(4)), Ok(0));
        // Ring of five doubled edges: Δ = 4, Γ = 20/4 = 5.
        assert_eq!(chromatic_index_exact(&ring(5, 2)), Ok(5));
    }

    #[test]
    fn colorable_returns_proper_coloring() {
        let g = petersen();
        assert!(edge_colorable(&g, 3, &ExactLimits::default()).unwrap().is_none());
        let phi = edge_colorable(&g, 4, &ExactLimits::default()).unwrap().unwrap();
        assert!(phi.is_proper(&g));
        assert!(phi.uncolored(&g).is_empty());
    }

    #[test]
    fn scale_and_budget_errors() {
        let limits = ExactLimits { max_edges: 5, node_budget: 10 };
        assert!(matches!(
            chromatic_index_with(&petersen(), &limits),
            Err(DensityError::Graph(GraphError::ScaleExceeded { .. }))
        ));
        let tight = ExactLimits { max_edges: 100, node_budget: 3 };
        assert_eq!(chromatic_index_with(&petersen(), &tight), Err(DensityError::Budget(3)));
    }

    #[test]
    fn enumeration_respects_limit() {
        let (all, truncated) =
            enumerate_colorings(&ring(4, 1), 2, 10, &ExactLimits::default()).unwrap();
        assert_eq!((all.len(), truncated), (1, false));
        let (some, truncated) =
            enumerate_colorings(&ring(4, 1), 3, 2, &ExactLimits::default()).unwrap();
        assert_eq!((some.len(), truncated), (2, true));
    }
}
