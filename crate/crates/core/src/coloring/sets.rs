use serde::Serialize;

use super::PartialColoring;
use crate::color_set::{Color, ColorSet};
use crate::graph::{EdgeId, Multigraph, VertexSet};

/// Two vertices of a set sharing a missing color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementaryWitness {
    pub u: usize,
    pub v: usize,
    pub color: Color,
}

/// `φ̄(X)`.
pub fn missing_union<I: IntoIterator<Item = usize>>(phi: &PartialColoring, xs: I) -> ColorSet {
    let mut out = ColorSet::new();
    for v in xs {
        out.union_with(phi.missing(v));
    }
    out
}

/// The first pair (in the given order) whose missing sets meet.
pub fn elementary_witness(phi: &PartialColoring, xs: &[usize]) -> Option<ElementaryWitness> {
    let mut seen = ColorSet::new();
    for (i, &v) in xs.iter().enumerate() {
        let shared = seen.intersection(phi.missing(v));
        if let Some(color) = shared.first() {
            let u = xs[..i]
                .iter()
                .copied()
                .find(|&u| phi.is_missing(u, color))
                .expect("shared color has an earlier owner");
            return Some(ElementaryWitness { u, v, color });
        }
        seen.union_with(phi.missing(v));
    }
    None
}

pub fn is_elementary(phi: &PartialColoring, x: &VertexSet) -> bool {
    elementary_witness(phi, &x.to_vec()).is_none()
}

/// `φ(∂(X)) ∩ φ̄(X) = ∅`.
pub fn is_closed(g: &Multigraph, phi: &PartialColoring, x: &VertexSet) -> bool {
    let missing = missing_union(phi, x.iter());
    g.boundary(x)
        .into_iter()
        .filter_map(|id| phi.color(id))
        .all(|c| !missing.contains(c))
}

pub fn is_strongly_closed(g: &Multigraph, phi: &PartialColoring, x: &VertexSet) -> bool {
    if !is_closed(g, phi, x) {
        return false;
    }
    let mut seen = ColorSet::new();
    g.boundary(x)
        .into_iter()
        .filter_map(|id| phi.color(id))
        .all(|c| seen.insert(c))
}

/// `∂_{φ,α}(H)` and its in-ends `I[∂_{φ,α}(H)]`, both ascending.
pub fn color_boundary(
    g: &Multigraph,
    phi: &PartialColoring,
    h: &VertexSet,
    alpha: Color,
) -> (Vec<EdgeId>, Vec<usize>) {
    let edges: Vec<EdgeId> = g
        .boundary(h)
        .into_iter()
        .filter(|&id| phi.color(id) == Some(alpha))
        .collect();
    let mut ends: Vec<usize> = edges
        .iter()
        .map(|&id| {
            let e = g.edge(id);
            if h.contains(e.u) {
                e.u
            } else {
                e.v
            }
        })
        .collect();
    ends.sort_unstable();
    ends.dedup();
    (edges, ends)
}

/// Colors on at least two boundary edges of `H`.
pub fn defective_colors(g: &Multigraph, phi: &PartialColoring, h: &VertexSet) -> ColorSet {
    let mut once = ColorSet::new();
    let mut twice = ColorSet::new();
    for id in g.boundary(h) {
        if let Some(c) = phi.color(id) {
            if !once.insert(c) {
                twice.insert(c);
            }
        }
    }
    twice
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_123() -> (Multigraph, PartialColoring) {
        let g = Multigraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let phi = PartialColoring::from_assignment(
            &g,
            3,
            &[(EdgeId(0), Some(1)), (EdgeId(1), Some(2)), (EdgeId(2), Some(3))],
        )
        .unwrap();
        (g, phi)
    }

    #[test]
    fn predicate_examples() {
        let (g, phi) = triangle_123();
        assert!(is_elementary(&phi, &VertexSet::singleton(3, 2)));
        assert!(is_closed(&g, &phi, &VertexSet::full(3)));
        assert!(is_strongly_closed(&g, &phi, &VertexSet::full(3)));
        // X = {a, b}; φ̄(a) = {2}, φ̄(b) = {3}; ca has color 3.
        let x = VertexSet::new(3, [0, 1]).unwrap();
        assert!(is_elementary(&phi, &x));
        assert!(!is_closed(&g, &phi, &x));
        assert!(!is_strongly_closed(&g, &phi, &x));
    }

    #[test]
    fn boundary_examples() {
        let (g, phi) = triangle_123();
        let x = VertexSet::new(3, [0, 1]).unwrap();
        assert_eq!(color_boundary(&g, &phi, &x, 3), (vec![EdgeId(2)], vec![0]));
        // Color 1 sits inside X, so it is closed there.
        assert_eq!(color_boundary(&g, &phi, &x, 1), (vec![], vec![]));
        assert!(defective_colors(&g, &phi, &VertexSet::full(3)).is_empty());
    }

    #[test]
    fn defective_examples() {
        let star = Multigraph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let phi = PartialColoring::from_assignment(
            &star,
            3,
            &[(EdgeId(0), Some(1)), (EdgeId(1), Some(2)), (EdgeId(2), Some(3))],
        )
        .unwrap();
        assert!(defective_colors(&star, &phi, &VertexSet::singleton(4, 0)).is_empty());

        let path = Multigraph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let phi = PartialColoring::from_assignment(
            &path,
            2,
            &[(EdgeId(0), Some(1)), (EdgeId(1), Some(2)), (EdgeId(2), Some(1))],
        )
        .unwrap();
        let h = VertexSet::new(4, [1, 2]).unwrap();
        assert_eq!(defective_colors(&path, &phi, &h), [1].into_iter().collect());
        let (edges, ends) = color_boundary(&path, &phi, &h, 1);
        assert_eq!((edges.len(), ends), (2, vec![1, 2]));
    }

    #[test]
    fn witness_names_the_pair() {
        let g = Multigraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let phi = PartialColoring::new(&g, 2);
        assert_eq!(
            elementary_witness(&phi, &[2, 0]),
            Some(ElementaryWitness { u: 2, v: 0, color: 1 })
        );
    }
}
