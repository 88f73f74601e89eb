//! Good hierarchies: levels between `T_n` and `T_{n+1}` with reserved
//! two-color sets guarding each color of `D_{n,j}`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::series::{Extension, SeriesState};
use super::taa::{taa_close, PaletteRule};
use super::tree::TreeSequence;
use crate::color_set::{Color, ColorSet};
use crate::coloring::{color_boundary, is_closed, missing_union, PartialColoring};
use crate::graph::{Edge, EdgeId, Multigraph, VertexSet};

/// `Γ^j_h` for each `η_h ∈ D_{n,j}`, keyed by `η_h`.
pub type GammaLevel = BTreeMap<Color, [Color; 2]>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Shortfall {
    /// Fewer colors than needed to draw disjoint Γ-sets at `level`.
    Colors { level: usize, need: usize, have: usize },
    /// Under PE, every missing color of `T_n ∨ R_n` is closed.
    NoOpenColor,
    /// Under PE, the best `|φ̄(T_n) ∩ φ̄(R_n) − Γ^0|` is below 4.
    Slack { value: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HierarchyError {
    #[error("inapplicable: {0:?}")]
    Inapplicable(Shortfall),
    #[error("rung {0} is not in the series")]
    NoSuchRung(usize),
    #[error("level {level} is open but no boundary edge carries a guarded color")]
    Stuck { level: usize },
    #[error("final level does not span V(T_(n+1))")]
    VertexSetMismatch,
}

/// `T_n = T_{n,0} ⊂ T_{n,1} ⊂ … ⊂ T_{n,q+1} = T′`, all prefixes of `tree`.
#[derive(Debug, Clone, Serialize)]
pub struct Hierarchy {
    pub n: usize,
    pub theta: Option<Extension>,
    pub tree: TreeSequence,
    /// `|T_{n,j}|` for `j = 0..=q+1`.
    pub levels: Vec<usize>,
    /// `|T*_{n,0}|`.
    pub star0: usize,
    /// Divider edges `f` and their outer ends `u_1 ≺ … ≺ u_q`.
    pub dividers: Vec<(EdgeId, usize)>,
    /// `Γ^j` for `j = 0..=q`.
    pub gamma_sets: Vec<GammaLevel>,
    /// `∪_{i≤n} S_i`.
    pub connecting: ColorSet,
    #[serde(skip)]
    pub coloring: PartialColoring,
    #[serde(skip)]
    pub r_tree: Option<TreeSequence>,
}

impl Hierarchy {
    pub fn q(&self) -> usize {
        self.dividers.len()
    }

    pub fn level(&self, j: usize) -> TreeSequence {
        self.tree.prefix(self.levels[j])
    }

    /// `T*_{n,j}`.
    pub fn star(&self, j: usize) -> TreeSequence {
        if j == 0 {
            self.tree.prefix(self.star0)
        } else {
            self.level(j)
        }
    }

    /// `D_{n,j}`.
    pub fn d(&self, j: usize) -> ColorSet {
        self.connecting.difference(&missing_of(&self.coloring, &self.star(j)))
    }

    /// `v_η`: the first vertex of `T′` missing `η`, else its last vertex.
    pub fn v_eta(&self, eta: Color) -> usize {
        self.tree
            .vertices()
            .iter()
            .copied()
            .find(|&v| self.coloring.is_missing(v, eta))
            .unwrap_or_else(|| self.tree.last_vertex())
    }

    /// `Λ^j_h`.
    pub fn lambda(&self, j: usize, eta: Color) -> ColorSet {
        let phi = &self.coloring;
        let base = self.level(j);
        let upper = self.level(j + 1);
        let v = self.v_eta(eta);
        let reach = if upper.contains(v) { upper.segment(v) } else { upper };
        let below = self.star(j);
        let used: ColorSet = reach
            .edges()
            .get(below.len() - 1..)
            .unwrap_or_default()
            .iter()
            .filter_map(|&id| phi.color(id))
            .collect();
        missing_of(phi, &base).difference(&used)
    }

    fn gamma_union(&self, j: usize, keys: &ColorSet) -> ColorSet {
        self.gamma_sets[j]
            .iter()
            .filter(|(eta, _)| keys.contains(**eta))
            .flat_map(|(_, pair)| pair.iter().copied())
            .collect()
    }
}

fn missing_of(phi: &PartialColoring, t: &TreeSequence) -> ColorSet {
    missing_union(phi, t.vertices().iter().copied())
}

/// Whether `H` is `C`-closed: no color of `C` on the boundary.
pub fn is_c_closed(g: &Multigraph, phi: &PartialColoring, h: &VertexSet, c: &ColorSet) -> bool {
    c.iter().all(|alpha| color_boundary(g, phi, h, alpha).0.is_empty())
}

/// Whether `H` is `C^−`-closed, that is `(φ̄(H) − C)`-closed.
pub fn is_c_minus_closed(g: &Multigraph, phi: &PartialColoring, h: &VertexSet, c: &ColorSet) -> bool {
    let own = missing_union(phi, h.iter());
    is_c_closed(g, phi, h, &own.difference(c))
}

/// Condition (i): every `Γ^j_h ⊆ Λ^j_h`.
pub fn condition_i(h: &Hierarchy) -> bool {
    (0..h.gamma_sets.len()).all(|j| {
        h.gamma_sets[j].iter().all(|(&eta, pair)| {
            let lambda = h.lambda(j, eta);
            pair.iter().all(|&c| lambda.contains(c))
        })
    })
}

/// Condition (ii): the Γ-sets of one level are pairwise disjoint, and each
/// has two distinct colors.
pub fn condition_ii(h: &Hierarchy) -> bool {
    h.gamma_sets.iter().all(|level| {
        let mut seen = ColorSet::new();
        level.values().all(|pair| {
            let fresh = pair[0] != pair[1] && !seen.contains(pair[0]) && !seen.contains(pair[1]);
            seen.insert(pair[0]);
            seen.insert(pair[1]);
            fresh
        })
    })
}

/// Condition (iii): each level `j ≥ 1` replaces exactly one Γ-set, by one
/// drawn from `φ̄(T_{n,j} − V(T*_{n,j−1}))`, keeping the others.
pub fn condition_iii(h: &Hierarchy) -> bool {
    (1..h.gamma_sets.len()).all(|j| {
        let fresh_vertices = h.level(j).vertices()[h.star(j - 1).len()..].to_vec();
        let fresh = missing_union(&h.coloring, fresh_vertices);
        let keys = h.d(j);
        let mut replaced = 0;
        for eta in keys.iter() {
            let Some(now) = h.gamma_sets[j].get(&eta) else { return false };
            let before = h.gamma_sets[j - 1].get(&eta);
            if before == Some(now) {
                continue;
            }
            if !now.iter().all(|&c| fresh.contains(c)) {
                return false;
            }
            replaced += 1;
        }
        replaced == 1 && h.gamma_sets[j].len() == keys.len()
    })
}

/// `|φ̄(T_n) ∩ φ̄(R_n) − Γ^0|` at best when the open color `alpha` is kept
/// out of a Γ^0 of `need` colors drawn from `φ̄(T_n)`.
fn pe_score(t_missing: &ColorSet, both: &ColorSet, need: usize, alpha: Color) -> Option<usize> {
    let in_t = t_missing.contains(alpha);
    if need + usize::from(in_t) > t_missing.len() {
        return None;
    }
    let outside = t_missing.difference(both).len() - usize::from(in_t && !both.contains(alpha));
    Some(both.len().saturating_sub(need.saturating_sub(outside)))
}

/// Missing colors of `T*_{n,0}` that appear on its boundary.
fn open_colors(g: &Multigraph, phi: &PartialColoring, star: &TreeSequence) -> Vec<Color> {
    let set = star.vertex_set();
    missing_of(phi, star)
        .iter()
        .filter(|&a| !color_boundary(g, phi, &set, a).0.is_empty())
        .collect()
}

/// The best `|φ̄(T_n) ∩ φ̄(R_n) − Γ^0|` over admissible Γ^0 choices.
fn pe_optimum(g: &Multigraph, h: &Hierarchy, need: usize) -> Option<usize> {
    let phi = &h.coloring;
    let t_missing = missing_of(phi, &h.level(0));
    let both = t_missing.intersection(&missing_of(phi, h.r_tree.as_ref()?));
    open_colors(g, phi, &h.star(0))
        .into_iter()
        .filter_map(|alpha| pe_score(&t_missing, &both, need, alpha))
        .max()
}

fn pe_value(h: &Hierarchy) -> Option<usize> {
    let phi = &h.coloring;
    let r = h.r_tree.as_ref()?;
    let both = missing_of(phi, &h.level(0)).intersection(&missing_of(phi, r));
    Some(both.difference(&h.gamma_union(0, &h.d(0))).len())
}

/// Condition (iv): under PE, `T_n ∨ R_n` is not `(Γ^0)^−`-closed and
/// `|φ̄(T_n) ∩ φ̄(R_n) − Γ^0|` is as large as any admissible choice allows.
pub fn condition_iv(g: &Multigraph, h: &Hierarchy) -> bool {
    if h.theta != Some(Extension::Parallel) {
        return true;
    }
    let gamma0 = h.gamma_union(0, &h.d(0));
    if is_c_minus_closed(g, &h.coloring, &h.star(0).vertex_set(), &gamma0) {
        return false;
    }
    pe_value(h) == pe_optimum(g, h, gamma0.len())
}

/// Condition (v): each `T_{n,j}`, `1 ≤ j ≤ q`, is
/// `(∪_{η_h ∈ D_{n,j}} Γ^{j−1}_h)^−`-closed.
pub fn condition_v(g: &Multigraph, h: &Hierarchy) -> bool {
    (1..=h.q()).all(|j| {
        let guard = h.gamma_union(j - 1, &h.d(j));
        is_c_minus_closed(g, &h.coloring, &h.level(j).vertex_set(), &guard)
    })
}

/// All five conditions; returns the numbers of those that fail.
pub fn failed_conditions(g: &Multigraph, h: &Hierarchy) -> Vec<u8> {
    let checks = [
        condition_i(h),
        condition_ii(h),
        condition_iii(h),
        condition_iv(g, h),
        condition_v(g, h),
    ];
    (1..=5).zip(checks).filter(|(_, ok)| !ok).map(|(i, _)| i).collect()
}

/// Assigns pairs from `pool` (in order) to the colors of `keys` ascending.
fn draw_pairs(keys: &ColorSet, pool: &[Color], level: usize) -> Result<GammaLevel, HierarchyError> {
    let need = 2 * keys.len();
    if pool.len() < need {
        return Err(HierarchyError::Inapplicable(Shortfall::Colors {
            level,
            need,
            have: pool.len(),
        }));
    }
    Ok(keys
        .iter()
        .zip(pool.chunks(2))
        .map(|(eta, pair)| (eta, [pair[0], pair[1]]))
        .collect())
}

/// Grows `start` by plain augmentation, refusing an edge colored from some
/// `Γ_h` while no vertex of the tree yet misses `η_h`.
fn guarded_growth(
    g: &Multigraph,
    phi: &PartialColoring,
    start: &TreeSequence,
    gammas: &GammaLevel,
) -> TreeSequence {
    let accept = |tree: &TreeSequence, _: &Edge, c: Color| {
        gammas.iter().all(|(&eta, pair)| {
            !pair.contains(&c) || tree.vertices().iter().any(|&v| phi.is_missing(v, eta))
        })
    };
    taa_close(g, phi, start, &PaletteRule::Guarded(&accept))
}

/// Builds a good hierarchy for the newest rung of `state`.
pub fn build_hierarchy(g: &Multigraph, state: &SeriesState) -> Result<Hierarchy, HierarchyError> {
    build_hierarchy_at(g, state, state.n() - 1)
}

/// Builds a good hierarchy between `T_n` and `T_{n+1}` under `φ_n`.
///
/// `n = 0` gives the degenerate hierarchy of `T_1` with no levels above it.
pub fn build_hierarchy_at(
    g: &Multigraph,
    state: &SeriesState,
    n: usize,
) -> Result<Hierarchy, HierarchyError> {
    if n >= state.n() {
        return Err(HierarchyError::NoSuchRung(n));
    }
    if n == 0 {
        let t1 = state.tree(1).clone();
        return Ok(Hierarchy {
            n,
            theta: None,
            levels: vec![t1.len()],
            star0: t1.len(),
            tree: t1,
            dividers: Vec::new(),
            gamma_sets: Vec::new(),
            connecting: ColorSet::new(),
            coloring: state.coloring(0).clone(),
            r_tree: None,
        });
    }
    let phi = state.coloring(n).clone();
    let rung = state.rung(n);
    let t_n = state.tree(n).clone();
    let mut connecting = ColorSet::new();
    for i in 1..=n {
        connecting.union_with(&state.rung(i).s);
    }
    let t_missing = missing_of(&phi, &t_n);

    let (star0, start) = match (&rung.theta, &rung.r_tree) {
        (Extension::Parallel, Some(r)) => {
            let joined = t_n.join(g, r);
            (joined.clone(), joined)
        }
        _ => {
            let mut grown = t_n.clone();
            grown.push(g, rung.f).expect("connecting edge leaves T_n");
            (t_n.clone(), grown)
        }
    };
    let d0 = connecting.difference(&missing_of(&phi, &star0));

    let gamma0 = if rung.theta == Extension::Parallel {
        let r = rung.r_tree.as_ref().expect("parallel rung records R_n");
        let r_missing = missing_of(&phi, r);
        let open = open_colors(g, &phi, &star0);
        if open.is_empty() {
            return Err(HierarchyError::Inapplicable(Shortfall::NoOpenColor));
        }
        let need = 2 * d0.len();
        let both = t_missing.intersection(&r_missing);
        // Keep one open color out of Γ^0, choosing the cheapest.
        let alpha = open
            .iter()
            .copied()
            .min_by_key(|&a| (std::cmp::Reverse(pe_score(&t_missing, &both, need, a)), a))
            .unwrap();
        let mut pool: Vec<Color> = t_missing.difference(&r_missing).iter().filter(|&c| c != alpha).collect();
        pool.extend(both.iter().filter(|&c| c != alpha));
        draw_pairs(&d0, &pool, 0)?
    } else {
        let pool: Vec<Color> = t_missing.iter().collect();
        draw_pairs(&d0, &pool, 0)?
    };

    let mut tree = guarded_growth(g, &phi, &start, &gamma0);
    let mut levels = vec![t_n.len(), tree.len()];
    let mut gamma_sets = vec![gamma0];
    let mut dividers = Vec::new();
    let star0_len = star0.len();

    loop {
        let j = levels.len() - 1;
        let level = tree.prefix(levels[j]);
        let set = level.vertex_set();
        if is_closed(g, &phi, &set) {
            break;
        }
        let d_j = connecting.difference(&missing_of(&phi, &level));
        let previous = gamma_sets[j - 1].clone();
        // Step 1: a boundary edge colored from some guarded Γ^{j−1}_h.
        let pick = g
            .boundary(&set)
            .into_iter()
            .filter_map(|id| {
                let c = phi.color(id)?;
                previous
                    .iter()
                    .find(|(eta, pair)| d_j.contains(**eta) && pair.contains(&c))
                    .map(|(&eta, _)| (id, eta))
            })
            .min();
        let Some((f, eta_g)) = pick else {
            return Err(HierarchyError::Stuck { level: j });
        };
        let mut next: GammaLevel = previous
            .into_iter()
            .filter(|(eta, _)| d_j.contains(*eta))
            .collect();
        let below = if j == 1 { star0_len } else { levels[j - 1] };
        let taken: ColorSet = next
            .iter()
            .filter(|(eta, _)| **eta != eta_g)
            .flat_map(|(_, pair)| pair.iter().copied())
            .collect();
        let fresh: Vec<Color> = missing_union(&phi, level.vertices()[below..].iter().copied())
            .difference(&taken)
            .iter()
            .collect();
        if fresh.len() < 2 {
            return Err(HierarchyError::Inapplicable(Shortfall::Colors {
                level: j,
                need: 2,
                have: fresh.len(),
            }));
        }
        next.insert(eta_g, [fresh[0], fresh[1]]);
        let mut grown = level.clone();
        let u = grown.push(g, f).expect("boundary edge");
        dividers.push((f, u));
        tree = guarded_growth(g, &phi, &grown, &next);
        levels.push(tree.len());
        gamma_sets.push(next);
    }

    if tree.vertex_set() != state.tree(n + 1).vertex_set() {
        return Err(HierarchyError::VertexSetMismatch);
    }
    let hierarchy = Hierarchy {
        n,
        theta: Some(rung.theta),
        tree,
        levels,
        star0: star0_len,
        dividers,
        gamma_sets,
        connecting,
        coloring: phi,
        r_tree: rung.r_tree.clone(),
    };
    if rung.theta == Extension::Parallel {
        let value = pe_value(&hierarchy).unwrap_or(0);
        if value < 4 {
            return Err(HierarchyError::Inapplicable(Shortfall::Slack { value }));
        }
    }
    Ok(hierarchy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::shannon;
    use crate::tashkinov::series::{build_series, SeriesBudget};

    #[test]
    fn single_tree_hierarchy_is_vacuous() {
        let g = shannon(2);
        let colors = [None, Some(1), Some(2), Some(3), Some(4), Some(5)];
        let pairs: Vec<_> = colors.iter().enumerate().map(|(i, &c)| (EdgeId(i), c)).collect();
        let phi = PartialColoring::from_assignment(&g, 5, &pairs).unwrap();
        let state = build_series(&g, EdgeId(0), &phi, &SeriesBudget::default()).unwrap();
        let h = build_hierarchy(&g, &state).unwrap();
        assert_eq!(h.q(), 0);
        assert!(h.gamma_sets.is_empty());
        assert!(failed_conditions(&g, &h).is_empty());
    }

    #[test]
    fn draw_pairs_reports_shortfall() {
        let keys: ColorSet = [3, 5].into_iter().collect();
        assert_eq!(
            draw_pairs(&keys, &[1, 2, 4], 0),
            Err(HierarchyError::Inapplicable(Shortfall::Colors { level: 0, need: 4, have: 3 }))
        );
        let ok = draw_pairs(&keys, &[1, 2, 4, 6], 0).unwrap();
        assert_eq!(ok[&3], [1, 2]);
        assert_eq!(ok[&5], [4, 6]);
    }

    #[test]
    fn c_closed_examples() {
        // Path 0-1-2 colored 1, 2; H = {0, 1} has color 2 on its boundary.
        let g = Multigraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let phi = PartialColoring::from_assignment(&g, 3, &[(EdgeId(0), Some(1)), (EdgeId(1), Some(2))]).unwrap();
        let h = VertexSet::new(3, [0, 1]).unwrap();
        assert!(!is_c_closed(&g, &phi, &h, &[2].into_iter().collect()));
        assert!(is_c_closed(&g, &phi, &h, &[3].into_iter().collect()));
        // φ̄(H) = {2, 3}; excluding 2 leaves {3}, which is closed.
        assert!(is_c_minus_closed(&g, &phi, &h, &[2].into_iter().collect()));
        assert!(!is_c_minus_closed(&g, &phi, &h, &ColorSet::new()));
    }
}
