use serde::Serialize;

use super::kempe::{kempe_chain, ChainKind};
use super::sets::missing_union;
use super::{ColoringError, PartialColoring};
use crate::color_set::{Color, ColorSet};
use crate::graph::{EdgeId, Multigraph, VertexSet};

fn check_comparable(
    g: &Multigraph,
    pi: &PartialColoring,
    phi: &PartialColoring,
) -> Result<(), ColoringError> {
    if pi.k() != phi.k() {
        return Err(ColoringError::Mismatch("different k"));
    }
    if pi.uncolored(g) != phi.uncolored(g) {
        return Err(ColoringError::Mismatch("different uncolored edges"));
    }
    Ok(())
}

fn stable_with(
    g: &Multigraph,
    pi: &PartialColoring,
    t: &VertexSet,
    c: &ColorSet,
    phi: &PartialColoring,
    strong: bool,
) -> Result<bool, ColoringError> {
    check_comparable(g, pi, phi)?;
    let protected = missing_union(phi, t.iter()).union(c);
    let is_protected = |col: Option<Color>| col.is_some_and(|x| protected.contains(x));
    for e in g.edges() {
        if !(t.contains(e.u) || t.contains(e.v)) {
            continue;
        }
        let (before, after) = (phi.color(e.id), pi.color(e.id));
        let guarded = is_protected(before) || (strong && is_protected(after));
        if guarded && before != after {
            return Ok(false);
        }
    }
    Ok(t.iter().all(|v| pi.missing(v) == phi.missing(v)))
}

/// Whether `π` is `(T, C, φ)`-stable, using conditions (i) and (ii).
pub fn is_stable(
    g: &Multigraph,
    pi: &PartialColoring,
    t: &VertexSet,
    c: &ColorSet,
    phi: &PartialColoring,
) -> Result<bool, ColoringError> {
    stable_with(g, pi, t, c, phi, false)
}

/// The same relation tested through the strengthened condition (i′), which
/// also guards edges whose new color is protected.
pub fn is_stable_strong(
    g: &Multigraph,
    pi: &PartialColoring,
    t: &VertexSet,
    c: &ColorSet,
    phi: &PartialColoring,
) -> Result<bool, ColoringError> {
    stable_with(g, pi, t, c, phi, true)
}

/// An alternating path meeting `T` only in `exit`, whose far end `far`
/// misses one of its colors. `edges` run from `exit` to `far`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExitPath {
    pub exit: usize,
    pub far: usize,
    pub edges: Vec<EdgeId>,
}

/// All `(T, φ, {α, β})`-exit paths, ordered by the id of the edge leaving `T`.
pub fn find_exit_paths(
    g: &Multigraph,
    phi: &PartialColoring,
    t: &VertexSet,
    alpha: Color,
    beta: Color,
) -> Vec<ExitPath> {
    let mut out: Vec<ExitPath> = Vec::new();
    let mut seen_edges: Vec<EdgeId> = Vec::new();
    for id in g.boundary(t) {
        let col = phi.color(id);
        if col != Some(alpha) && col != Some(beta) {
            continue;
        }
        if seen_edges.contains(&id) {
            continue;
        }
        let e = g.edge(id);
        let chain = kempe_chain(g, phi, e.u, alpha, beta);
        seen_edges.extend(&chain.edges);
        if chain.kind == ChainKind::Cycle {
            continue;
        }
        // Walk inward from each end until the first vertex of T.
        let n = chain.vertices.len();
        for from_front in [true, false] {
            let at = |i: usize| if from_front { i } else { n - 1 - i };
            let far = chain.vertices[at(0)];
            if t.contains(far) {
                continue;
            }
            if let Some(i) = (1..n).find(|&i| t.contains(chain.vertices[at(i)])) {
                let mut edges: Vec<EdgeId> = (0..i)
                    .map(|j| {
                        let idx = if from_front { j } else { n - 2 - j };
                        chain.edges[idx]
                    })
                    .collect();
                edges.reverse();
                out.push(ExitPath {
                    exit: chain.vertices[at(i)],
                    far,
                    edges,
                });
            }
        }
    }
    out.sort_by_key(|p| p.edges[0]);
    out
}
