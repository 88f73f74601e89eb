use serde::Serialize;

use super::tree::TreeSequence;
use crate::color_set::{Color, ColorSet};
use crate::coloring::{elementary_witness, ElementaryWitness, PartialColoring};
use crate::graph::{Edge, EdgeId, Multigraph};

/// Which boundary edges the augmentation may add.
pub enum PaletteRule<'a> {
    /// `φ(f) ∈ φ̄(T)`.
    Plain,
    /// `φ(f) ∈ φ̄(T) ∪ extra`.
    Extra(&'a ColorSet),
    /// `φ(f) ∈ φ̄(T)` and the predicate accepts the tree grown by `f`.
    Guarded(&'a dyn Fn(&TreeSequence, &Edge, Color) -> bool),
}

/// Whether `T` is a Tashkinov tree for `e` under `φ`.
pub fn is_tashkinov_tree(g: &Multigraph, phi: &PartialColoring, e: EdgeId, t: &TreeSequence) -> bool {
    if t.validate(g, Some(e)).is_err() {
        return false;
    }
    let mut seen = phi.missing(t.vertices()[0]).clone();
    for (j, &id) in t.edges().iter().enumerate() {
        if j > 0 {
            match phi.color(id) {
                Some(c) if seen.contains(c) => {}
                _ => return false,
            }
        }
        seen.union_with(phi.missing(t.vertices()[j + 1]));
    }
    true
}

fn close_once(
    g: &Multigraph,
    phi: &PartialColoring,
    t: &TreeSequence,
    rule: &PaletteRule<'_>,
    lowest_first: bool,
) -> TreeSequence {
    let mut tree = t.clone();
    let mut missing = ColorSet::new();
    for &v in tree.vertices() {
        missing.union_with(phi.missing(v));
    }
    loop {
        let mut pick: Option<Edge> = None;
        for &v in tree.vertices() {
            for &id in g.incident(v) {
                let edge = g.edge(id);
                if tree.contains(edge.other(v)) {
                    continue;
                }
                let Some(c) = phi.color(id) else { continue };
                let admissible = match rule {
                    PaletteRule::Plain => missing.contains(c),
                    PaletteRule::Extra(extra) => missing.contains(c) || extra.contains(c),
                    PaletteRule::Guarded(accept) => missing.contains(c) && accept(&tree, &edge, c),
                };
                let better = match pick {
                    None => true,
                    Some(p) => (id < p.id) == lowest_first,
                };
                if admissible && better {
                    pick = Some(edge);
                }
            }
        }
        let Some(edge) = pick else { return tree };
        let y = tree.push(g, edge.id).expect("boundary edge");
        missing.union_with(phi.missing(y));
    }
}

/// A closure of `T` under `φ`: augments by admissible boundary edges,
/// lowest id first, until none remain.
///
/// Debug builds rerun with highest-id-first tie-breaking and check that the
/// vertex set is the same (guarded rules excepted, as they may depend on
/// order).
pub fn taa_close(
    g: &Multigraph,
    phi: &PartialColoring,
    t: &TreeSequence,
    rule: &PaletteRule<'_>,
) -> TreeSequence {
    let out = close_once(g, phi, t, rule, true);
    #[cfg(debug_assertions)]
    if !matches!(rule, PaletteRule::Guarded(_)) {
        let other = close_once(g, phi, t, rule, false);
        assert_eq!(
            out.vertex_set(),
            other.vertex_set(),
            "closure vertex set depends on augmentation order"
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Audit {
    Ok,
    Witness(ElementaryWitness),
}

/// Whether `V(T)` is elementary; otherwise the first clashing pair in `≺`.
pub fn elementary_audit(phi: &PartialColoring, t: &TreeSequence) -> Audit {
    match elementary_witness(phi, t.vertices()) {
        None => Audit::Ok,
        Some(w) => Audit::Witness(w),
    }
}
