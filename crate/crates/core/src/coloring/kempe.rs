use std::collections::HashSet;

use serde::Serialize;

use super::{ColoringError, PartialColoring};
use crate::color_set::Color;
use crate::graph::{EdgeId, Multigraph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    Path,
    Cycle,
}

/// A maximal `(α, β)`-component.
///
/// `vertices` lists the vertices in walk order; for a path `vertices.len()
/// == edges.len() + 1`, for a cycle the closing vertex is not repeated.
/// `ends` holds the two path ends, the single vertex of an empty chain, or
/// nothing for a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KempeChain {
    pub colors: (Color, Color),
    pub kind: ChainKind,
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<usize>,
    pub ends: Vec<usize>,
}

impl KempeChain {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn touches(&self, set: &VertexSet) -> bool {
        self.vertices.iter().any(|&v| set.contains(v))
    }
}

fn walk(
    g: &Multigraph,
    phi: &PartialColoring,
    start: usize,
    first: EdgeId,
    alpha: Color,
    beta: Color,
) -> (Vec<EdgeId>, Vec<usize>, bool) {
    let mut edges = vec![first];
    let mut vertices = vec![start];
    let mut at = g.edge(first).other(start);
    let mut last = first;
    loop {
        if at == start {
            return (edges, vertices, true);
        }
        vertices.push(at);
        let want = if phi.color(last) == Some(alpha) { beta } else { alpha };
        match phi.edge_at(g, at, want) {
            Some(next) if next != last => {
                edges.push(next);
                last = next;
                at = g.edge(next).other(at);
            }
            _ => return (edges, vertices, false),
        }
    }
}

/// `P_v(α, β, φ)`: the `(α, β)`-component containing `v`.
///
/// Assumes `φ` is proper on colors `α` and `β`.
pub fn kempe_chain(
    g: &Multigraph,
    phi: &PartialColoring,
    v: usize,
    alpha: Color,
    beta: Color,
) -> KempeChain {
    assert_ne!(alpha, beta, "chain colors must differ");
    let colors = (alpha, beta);
    let a = phi.edge_at(g, v, alpha);
    let b = phi.edge_at(g, v, beta);
    let (first, second) = match (a, b) {
        (None, None) => {
            return KempeChain {
                colors,
                kind: ChainKind::Path,
                edges: Vec::new(),
                vertices: vec![v],
                ends: vec![v],
            }
        }
        (Some(x), None) | (None, Some(x)) => (x, None),
        (Some(x), Some(y)) => (x, Some(y)),
    };
    let (edges, vertices, closed) = walk(g, phi, v, first, alpha, beta);
    if closed {
        return KempeChain {
            colors,
            kind: ChainKind::Cycle,
            edges,
            vertices,
            ends: Vec::new(),
        };
    }
    let (mut all_edges, mut all_vertices) = (Vec::new(), Vec::new());
    if let Some(second) = second {
        let (back_edges, back_vertices, _) = walk(g, phi, v, second, alpha, beta);
        all_edges.extend(back_edges.into_iter().rev());
        all_vertices.extend(back_vertices.into_iter().skip(1).rev());
    }
    all_edges.extend(edges);
    all_vertices.extend(vertices);
    let ends = vec![all_vertices[0], *all_vertices.last().unwrap()];
    KempeChain {
        colors,
        kind: ChainKind::Path,
        edges: all_edges,
        vertices: all_vertices,
        ends,
    }
}

/// Every nonempty Kempe chain of `φ`, by color pair then lowest edge id.
pub fn all_chains(g: &Multigraph, phi: &PartialColoring) -> Vec<KempeChain> {
    let k = phi.k();
    let mut out = Vec::new();
    for alpha in 1..=k {
        for beta in alpha + 1..=k {
            let mut seen: HashSet<EdgeId> = HashSet::new();
            for e in g.edges() {
                let c = phi.color(e.id);
                if c != Some(alpha) && c != Some(beta) {
                    continue;
                }
                if seen.contains(&e.id) {
                    continue;
                }
                let chain = kempe_chain(g, phi, e.u, alpha, beta);
                seen.extend(chain.edges.iter().copied());
                out.push(chain);
            }
        }
    }
    out
}

/// Interchanges the chain colors on the chain edges without checking.
pub(crate) fn swap_in_place(g: &Multigraph, phi: &mut PartialColoring, chain: &KempeChain) {
    let (alpha, beta) = chain.colors;
    // Uncolor first so intermediate states never double-count a color.
    let old: Vec<_> = chain.edges.iter().map(|&id| phi.color(id)).collect();
    for &id in &chain.edges {
        phi.set(g, id, None);
    }
    for (&id, c) in chain.edges.iter().zip(old) {
        let swapped = if c == Some(alpha) { beta } else { alpha };
        phi.set(g, id, Some(swapped));
    }
}

/// `φ/C`. Rejects `C` unless it is exactly a current component of `φ`.
pub fn kempe_swap(
    g: &Multigraph,
    phi: &PartialColoring,
    chain: &KempeChain,
) -> Result<PartialColoring, ColoringError> {
    let (alpha, beta) = chain.colors;
    let anchor = chain.vertices.first().copied();
    let fresh = anchor
        .filter(|&v| v < g.vertex_count())
        .map(|v| kempe_chain(g, phi, v, alpha, beta));
    let mut want: Vec<_> = chain.edges.clone();
    want.sort_unstable();
    let matches = fresh.is_some_and(|c| {
        let mut got = c.edges;
        got.sort_unstable();
        got == want
    });
    if !matches {
        return Err(ColoringError::NotAChain(alpha, beta));
    }
    let mut out = phi.clone();
    swap_in_place(g, &mut out, chain);
    Ok(out)
}

/// `φ/(G − H, α, β)`: swaps `α` and `β` on every edge with no end in `H`.
pub fn swap_outside(
    g: &Multigraph,
    phi: &PartialColoring,
    h: &VertexSet,
    alpha: Color,
    beta: Color,
) -> Result<PartialColoring, ColoringError> {
    for id in g.boundary(h) {
        if let Some(c) = phi.color(id) {
            if c == alpha || c == beta {
                return Err(ColoringError::BoundaryColor { edge: id, color: c });
            }
        }
    }
    let mut out = phi.clone();
    swap_outside_in_place(g, &mut out, h, alpha, beta);
    Ok(out)
}

pub(crate) fn swap_outside_in_place(
    g: &Multigraph,
    phi: &mut PartialColoring,
    h: &VertexSet,
    alpha: Color,
    beta: Color,
) {
    if alpha == beta {
        return;
    }
    let targets: Vec<_> = g
        .edges()
        .filter(|e| !h.contains(e.u) && !h.contains(e.v))
        .filter_map(|e| match phi.color(e.id) {
            Some(c) if c == alpha => Some((e.id, beta)),
            Some(c) if c == beta => Some((e.id, alpha)),
            _ => None,
        })
        .collect();
    for &(id, _) in &targets {
        phi.set(g, id, None);
    }
    for (id, c) in targets {
        phi.set(g, id, Some(c));
    }
}
