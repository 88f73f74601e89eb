use std::collections::BTreeSet;

use super::exact::{chromatic_index_with, enumerate_colorings, ExactLimits};
use super::DensityError;
use crate::graph::{EdgeId, Multigraph};
use crate::tashkinov::{taa_close, PaletteRule, TreeSequence};

/// One edge per vertex pair; parallel edges are interchangeable.
fn pair_representatives(g: &Multigraph) -> Vec<EdgeId> {
    let mut seen = BTreeSet::new();
    g.edges()
        .filter(|e| seen.insert((e.u.min(e.v), e.u.max(e.v))))
        .map(|e| e.id)
        .collect()
}

/// Whether deleting any single edge lowers `χ′`.
pub fn is_critical(g: &Multigraph) -> Result<bool, DensityError> {
    is_critical_with(g, &ExactLimits::default())
}

pub fn is_critical_with(g: &Multigraph, limits: &ExactLimits) -> Result<bool, DensityError> {
    let chi = chromatic_index_with(g, limits)?;
    for e in pair_representatives(g) {
        if chromatic_index_with(&g.without_edges(&[e]), limits)? >= chi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t(G)` as found by the search, flagged when some coloring enumeration
/// hit its limit (the value is then a lower bound).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TashkinovOrder {
    pub value: usize,
    pub k: usize,
    pub truncated: bool,
}

/// The largest closure of an uncolored edge over `k`-colorings of `G − e`,
/// `k = χ′ − 1`, taking at most `coloring_limit` colorings per edge.
///
/// Closures are invariant under renaming colors, so one coloring per
/// relabeling class is enough.
pub fn tashkinov_order(g: &Multigraph, coloring_limit: usize) -> Result<TashkinovOrder, DensityError> {
    let limits = ExactLimits::default();
    let chi = chromatic_index_with(g, &limits)?;
    let need = g.max_degree() + 2;
    if chi < need {
        return Err(DensityError::BelowThreshold { chi, need });
    }
    if !is_critical_with(g, &limits)? {
        return Err(DensityError::NotCritical);
    }
    let k = chi - 1;
    let mut order = TashkinovOrder { value: 0, k, truncated: false };
    for e in pair_representatives(g) {
        let h = g.without_edges(&[e]);
        let (colorings, truncated) = enumerate_colorings(&h, k, coloring_limit, &limits)?;
        order.truncated |= truncated;
        let start = TreeSequence::from_edge(g, e);
        for phi in &colorings {
            let t = taa_close(g, phi, &start, &PaletteRule::Plain);
            order.value = order.value.max(t.len());
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::shannon;

    #[test]
    fn critical_examples() {
        let triangle = Multigraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(is_critical(&triangle).unwrap());
        let square = Multigraph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!is_critical(&square).unwrap());
        assert!(is_critical(&Multigraph::build(2, &[(0, 1)]).unwrap()).unwrap());
    }

    #[test]
    fn shannon_order_is_three() {
        let order = tashkinov_order(&shannon(2), 1000).unwrap();
        assert_eq!(order, TashkinovOrder { value: 3, k: 5, truncated: false });
    }

    #[test]
    fn non_critical_rejected() {
        // Shannon triangle plus a separate edge: χ′ stays 6 without it.
        let g = Multigraph::build(5, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0), (3, 4)]).unwrap();
        assert_eq!(tashkinov_order(&g, 10), Err(DensityError::NotCritical));
        let square = Multigraph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(tashkinov_order(&square, 10), Err(DensityError::BelowThreshold { .. })));
    }
}
