//! Extended Tashkinov trees grown by revisiting, series and parallel
//! extensions.

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use super::search::stable_search;
use super::taa::{elementary_audit, taa_close, Audit, PaletteRule};
use super::tree::TreeSequence;
use crate::color_set::{Color, ColorSet};
use crate::coloring::{
    color_boundary, defective_colors, is_closed, is_stable, is_strongly_closed, kempe_chain,
    missing_union, swap_outside, ChainKind, ElementaryWitness, PartialColoring,
};
use crate::graph::{EdgeId, Multigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Extension {
    #[serde(rename = "RE")]
    Revisiting,
    #[serde(rename = "SE")]
    Series,
    #[serde(rename = "PE")]
    Parallel,
}

/// Iteration data for one extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rung {
    pub theta: Extension,
    /// Connecting colors `S_i`.
    pub s: ColorSet,
    /// Connecting edge `f_i = u_i v_i`, `v_i` inside the tree.
    pub f: EdgeId,
    pub u: usize,
    pub v: usize,
    pub delta: Color,
    pub gamma: Option<Color>,
    /// `R_i`, the closure of `T_i(v_i)` after a parallel extension.
    pub r_tree: Option<TreeSequence>,
    /// Whether a budgeted coloring search stopped before exhausting its
    /// neighbourhood in this iteration.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeriesOutcome {
    Running,
    StronglyClosed,
    BudgetExhausted,
    NonElementary(ElementaryWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    StronglyClosed,
    Extended(Extension),
    BudgetExhausted,
    NonElementary(ElementaryWitness),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("invariant `{what}` broken at iteration {iteration}: {detail}\nstate: {dump}")]
    Invariant {
        what: &'static str,
        iteration: usize,
        detail: String,
        dump: String,
    },
}

/// Per-run limits. `iterations` caps extension steps; `search` caps the
/// number of colorings each stable-coloring search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesBudget {
    pub iterations: usize,
    pub search: usize,
}

impl Default for SeriesBudget {
    fn default() -> Self {
        SeriesBudget {
            iterations: 64,
            search: 200,
        }
    }
}

/// The ledger `(T_i, φ_{i−1}, S_{i−1}, F_{i−1}, Θ_{i−1})` with `D_i`.
#[derive(Debug, Clone)]
pub struct SeriesState {
    e: EdgeId,
    trees: Vec<TreeSequence>,
    colorings: Vec<PartialColoring>,
    rungs: Vec<Rung>,
    d: Vec<ColorSet>,
    outcome: SeriesOutcome,
}

#[derive(Debug, Clone, Serialize)]
struct LedgerRow {
    i: usize,
    theta: Option<Extension>,
    #[serde(rename = "S")]
    s: ColorSet,
    #[serde(rename = "F")]
    f: Vec<EdgeId>,
    tree_vertices: Vec<usize>,
    #[serde(rename = "D")]
    d: ColorSet,
}

impl SeriesState {
    /// Step 0: `T_1` is the closure of `e` under `φ_0`.
    pub fn start(g: &Multigraph, e: EdgeId, phi0: &PartialColoring) -> Result<Self, SeriesError> {
        if !g.contains_edge(e) || phi0.color(e).is_some() {
            return Err(SeriesError::Precondition(format!("{e} must be an uncolored edge")));
        }
        let t1 = taa_close(g, phi0, &TreeSequence::from_edge(g, e), &PaletteRule::Plain);
        Ok(SeriesState {
            e,
            trees: vec![t1],
            colorings: vec![phi0.clone()],
            rungs: Vec::new(),
            d: vec![ColorSet::new()],
            outcome: SeriesOutcome::Running,
        })
    }

    pub fn uncolored_edge(&self) -> EdgeId {
        self.e
    }

    /// `n`, the index of the newest tree `T_n`.
    pub fn n(&self) -> usize {
        self.trees.len()
    }

    /// `T_i` for `1 ≤ i ≤ n`.
    pub fn tree(&self, i: usize) -> &TreeSequence {
        &self.trees[i - 1]
    }

    pub fn current_tree(&self) -> &TreeSequence {
        self.trees.last().unwrap()
    }

    /// `φ_i` for `0 ≤ i ≤ n − 1`.
    pub fn coloring(&self, i: usize) -> &PartialColoring {
        &self.colorings[i]
    }

    pub fn current_coloring(&self) -> &PartialColoring {
        self.colorings.last().unwrap()
    }

    /// Iteration `i` for `1 ≤ i ≤ n − 1`.
    pub fn rung(&self, i: usize) -> &Rung {
        &self.rungs[i - 1]
    }

    pub fn rungs(&self) -> &[Rung] {
        &self.rungs
    }

    /// `D_i` for `0 ≤ i ≤ n − 1`.
    pub fn d(&self, i: usize) -> &ColorSet {
        &self.d[i]
    }

    pub fn outcome(&self) -> &SeriesOutcome {
        &self.outcome
    }

    /// Whether any budgeted search was cut short.
    pub fn truncated(&self) -> bool {
        self.rungs.iter().any(|r| r.truncated)
    }

    /// Rows `{i, theta, S, F, tree_vertices, D}` for `i = 0..n`, where row
    /// `i` holds the iteration-`i` data and the vertices of `T_{i+1}`.
    pub fn ledger_json(&self) -> serde_json::Value {
        let rows: Vec<LedgerRow> = (0..self.n())
            .map(|i| {
                let rung = (i > 0).then(|| self.rung(i));
                LedgerRow {
                    i,
                    theta: rung.map(|r| r.theta),
                    s: rung.map(|r| r.s.clone()).unwrap_or_default(),
                    f: rung.map(|r| vec![r.f]).unwrap_or_default(),
                    tree_vertices: self.tree(i + 1).vertices().to_vec(),
                    d: self.d[i].clone(),
                }
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }

    fn dump(&self) -> String {
        json!({ "outcome": self.outcome, "ledger": self.ledger_json() }).to_string()
    }

    fn union_s(&self, upto: usize) -> ColorSet {
        let mut out = ColorSet::new();
        for rung in &self.rungs[..upto] {
            out.union_with(&rung.s);
        }
        out
    }

    fn breach(&self, what: &'static str, detail: String) -> SeriesError {
        SeriesError::Invariant {
            what,
            iteration: self.n(),
            detail,
            dump: self.dump(),
        }
    }
}

/// `φ⟨T⟩`: colors on the colored edges of `T`.
fn tree_colors(phi: &PartialColoring, t: &TreeSequence) -> ColorSet {
    t.edges().iter().filter_map(|&id| phi.color(id)).collect()
}

/// The ≺-largest in-end over all defective colors, with its edge.
fn defective_peak(g: &Multigraph, phi: &PartialColoring, t: &TreeSequence) -> Option<(usize, EdgeId)> {
    let set = t.vertex_set();
    let defective = defective_colors(g, phi, &set);
    let mut best: Option<(usize, EdgeId)> = None;
    for alpha in defective.iter() {
        let (edges, _) = color_boundary(g, phi, &set, alpha);
        for id in edges {
            let e = g.edge(id);
            let inside = if t.contains(e.u) { e.u } else { e.v };
            let pos = t.position(inside).unwrap();
            let better = match best {
                None => true,
                Some((p, f)) => pos > p || (pos == p && id < f),
            };
            if better {
                best = Some((pos, id));
            }
        }
    }
    best.map(|(pos, f)| (t.vertices()[pos], f))
}

/// The maximum defective vertex found by a budgeted search.
#[derive(Debug, Clone)]
pub struct DefectiveChoice {
    pub v: usize,
    pub u: usize,
    pub f: EdgeId,
    pub delta: Color,
    pub pi: PartialColoring,
    pub truncated: bool,
}

/// Searches `(T, D, φ)`-stable colorings reachable by Kempe changes for the
/// one whose defective in-ends reach furthest in `≺`. Ties keep the first
/// coloring found; `budget = 0` inspects `φ` alone.
pub fn max_defective_vertex(
    g: &Multigraph,
    phi: &PartialColoring,
    t: &TreeSequence,
    d: &ColorSet,
    budget: usize,
) -> Result<DefectiveChoice, SeriesError> {
    let set = t.vertex_set();
    if !is_closed(g, phi, &set) || is_strongly_closed(g, phi, &set) {
        return Err(SeriesError::Precondition(
            "tree must be closed but not strongly closed".into(),
        ));
    }
    let last = t.len() - 1;
    let mut best: Option<(usize, EdgeId, PartialColoring)> = None;
    let stats = stable_search(g, phi, &set, d, budget, &mut |pi| {
        if let Some((v, f)) = defective_peak(g, pi, t) {
            let pos = t.position(v).unwrap();
            if best.as_ref().is_none_or(|(b, _, _)| pos > *b) {
                best = Some((pos, f, pi.clone()));
            }
        }
        best.as_ref().is_some_and(|(b, _, _)| *b == last)
    });
    let (pos, f, pi) = best.ok_or_else(|| {
        SeriesError::Precondition("no stable coloring has a defective color".into())
    })?;
    let v = t.vertices()[pos];
    Ok(DefectiveChoice {
        v,
        u: g.edge(f).other(v),
        f,
        delta: pi.color(f).unwrap(),
        pi,
        truncated: stats.truncated,
    })
}

/// Step 1's revisiting test: the newest non-RE iteration `h` must be a
/// parallel extension, and some `(γ_h, δ_h)`-cycle must hold a `γ_h` edge
/// leaving `T_n` whose in-end reaches `V(T_h)` along the cycle inside `T_n`.
fn revisiting_edge(g: &Multigraph, state: &SeriesState) -> Option<(usize, EdgeId, usize)> {
    let h = (1..state.n()).rev().find(|&i| state.rung(i).theta != Extension::Revisiting)?;
    let rung = state.rung(h);
    if rung.theta != Extension::Parallel {
        return None;
    }
    let (gamma, delta) = (rung.gamma?, rung.delta);
    let phi = state.current_coloring();
    let t = state.current_tree();
    let th = state.tree(h);
    let (edges, _) = color_boundary(g, phi, &t.vertex_set(), gamma);
    for f in edges {
        let e = g.edge(f);
        let v = if t.contains(e.u) { e.u } else { e.v };
        let chain = kempe_chain(g, phi, v, gamma, delta);
        if chain.kind != ChainKind::Cycle {
            continue;
        }
        // Walk from v away from f, staying inside T_n.
        let len = chain.vertices.len();
        let start = chain.vertices.iter().position(|&x| x == v).unwrap();
        let f_at = chain.edges.iter().position(|&x| x == f).unwrap();
        // Edge i joins vertices[i] and vertices[i + 1 mod len].
        let step: isize = if f_at == start { -1 } else { 1 };
        let mut at = start;
        for _ in 0..len {
            let x = chain.vertices[at];
            if !t.contains(x) {
                break;
            }
            if th.contains(x) {
                return Some((h, f, v));
            }
            at = ((at as isize + step).rem_euclid(len as isize)) as usize;
        }
    }
    None
}

/// One iteration of the series; appends a tuple unless the series stops.
pub fn series_step(
    g: &Multigraph,
    state: &mut SeriesState,
    budget: &SeriesBudget,
) -> Result<StepOutcome, SeriesError> {
    if state.outcome != SeriesOutcome::Running {
        return Err(SeriesError::Precondition("series already stopped".into()));
    }
    let n = state.n();
    let t = state.current_tree().clone();
    let phi = state.current_coloring().clone();
    let set = t.vertex_set();

    if let Audit::Witness(w) = elementary_audit(&phi, &t) {
        state.outcome = SeriesOutcome::NonElementary(w);
        return Ok(StepOutcome::NonElementary(w));
    }
    if is_strongly_closed(g, &phi, &set) {
        state.outcome = SeriesOutcome::StronglyClosed;
        return Ok(StepOutcome::StronglyClosed);
    }
    if n > budget.iterations {
        state.outcome = SeriesOutcome::BudgetExhausted;
        return Ok(StepOutcome::BudgetExhausted);
    }
    if !is_closed(g, &phi, &set) {
        return Err(state.breach("T_n closed", "current tree is not closed".into()));
    }

    let (rung, phi_n, next_tree) = if let Some((h, f, v)) = revisiting_edge(g, state) {
        let hr = state.rung(h);
        let (delta, gamma) = (hr.delta, hr.gamma.unwrap());
        let mut grown = t.clone();
        grown.push(g, f).expect("boundary edge");
        let next = taa_close(g, &phi, &grown, &PaletteRule::Plain);
        let rung = Rung {
            theta: Extension::Revisiting,
            s: [delta, gamma].into_iter().collect(),
            f,
            u: g.edge(f).other(v),
            v,
            delta,
            gamma: Some(gamma),
            r_tree: None,
            truncated: false,
        };
        (rung, phi.clone(), next)
    } else {
        let d_prev = state.d(n - 1).clone();
        let choice = max_defective_vertex(g, &phi, &t, &d_prev, budget.search)?;
        let DefectiveChoice { v, u, f, delta, pi, truncated } = choice;
        let mut guard = d_prev.clone();
        guard.insert(delta);
        let tree_missing = missing_union(&pi, t.vertices().iter().copied());
        let mut sigma: Option<PartialColoring> = None;
        let stats = stable_search(g, &pi, &set, &guard, budget.search, &mut |s| {
            if !s.missing(u).is_disjoint(&tree_missing) {
                sigma = Some(s.clone());
                true
            } else {
                false
            }
        });
        let truncated = truncated || stats.truncated;
        match sigma {
            None => {
                let mut grown = t.clone();
                grown.push(g, f).expect("boundary edge");
                let next = taa_close(g, &pi, &grown, &PaletteRule::Plain);
                let rung = Rung {
                    theta: Extension::Series,
                    s: [delta].into_iter().collect(),
                    f,
                    u,
                    v,
                    delta,
                    gamma: None,
                    r_tree: None,
                    truncated,
                };
                (rung, pi, next)
            }
            Some(sigma) => {
                let supporting: Vec<usize> = (1..n)
                    .filter(|&i| state.rung(i).theta == Extension::Parallel && state.rung(i).v == v)
                    .collect();
                let gamma = if supporting.is_empty() {
                    pi.missing(v).first()
                } else {
                    let mut pool = ColorSet::new();
                    for &i in &supporting {
                        pool.union_with(&state.rung(i).s);
                    }
                    pi.missing(v).intersection(&pool).first()
                };
                let gamma = gamma.ok_or_else(|| {
                    state.breach(
                        "supporting color available",
                        format!("no admissible γ at supporting vertex {v}"),
                    )
                })?;
                if let Some(&last) = supporting.last() {
                    let prev_delta = state.rung(last).delta;
                    if gamma != prev_delta {
                        return Err(state.breach(
                            "supporting color chaining",
                            format!("γ = {gamma} but previous δ at {v} was {prev_delta}"),
                        ));
                    }
                }
                let alpha = sigma
                    .missing(u)
                    .intersection(&tree_missing)
                    .first()
                    .expect("found by search");
                let swapped = if alpha == gamma {
                    sigma.clone()
                } else {
                    swap_outside(g, &sigma, &set, alpha, gamma)
                        .map_err(|err| state.breach("swap outside tree", err.to_string()))?
                };
                if !is_stable(g, &swapped, &set, &guard, &pi).unwrap_or(false) {
                    return Err(state.breach(
                        "exit coloring stable",
                        "π′ is not stable with respect to π".into(),
                    ));
                }
                let exit = kempe_chain(g, &swapped, v, gamma, delta);
                if exit.edges != vec![f] {
                    return Err(state.breach(
                        "single-edge exit path",
                        format!("exit path has {} edges", exit.edges.len()),
                    ));
                }
                let mut phi_n = swapped;
                phi_n.set(g, f, Some(gamma));
                let r_tree = taa_close(g, &phi_n, &t.segment(v), &PaletteRule::Plain);
                let joined = t.join(g, &r_tree);
                let next = taa_close(g, &phi_n, &joined, &PaletteRule::Plain);
                let rung = Rung {
                    theta: Extension::Parallel,
                    s: [delta, gamma].into_iter().collect(),
                    f,
                    u,
                    v,
                    delta,
                    gamma: Some(gamma),
                    r_tree: Some(r_tree),
                    truncated,
                };
                (rung, phi_n, next)
            }
        }
    };

    let theta = rung.theta;
    state.rungs.push(rung);
    let d_n = state
        .union_s(n)
        .difference(&missing_union(&phi_n, t.vertices().iter().copied()));
    state.trees.push(next_tree);
    state.colorings.push(phi_n);
    state.d.push(d_n);
    check_iteration(g, state, n)?;
    Ok(StepOutcome::Extended(theta))
}

/// The per-iteration ledger invariants for iteration `n`.
pub fn check_iteration(g: &Multigraph, state: &SeriesState, n: usize) -> Result<(), SeriesError> {
    let t_n = state.tree(n);
    let t_next = state.tree(n + 1);
    let (phi_prev, phi_n) = (state.coloring(n - 1), state.coloring(n));
    let (d_prev, d_n) = (state.d(n - 1), state.d(n));
    let missing = |phi: &PartialColoring, t: &TreeSequence| missing_union(phi, t.vertices().iter().copied());

    if d_n.len() > n {
        return Err(state.breach("|D_n| <= n", format!("|D_{n}| = {}", d_n.len())));
    }
    let before = missing(phi_prev, t_n).union(d_prev);
    let after = missing(phi_n, t_n).union(d_n);
    let widened = missing(phi_n, t_next).union(d_n);
    if !tree_colors(phi_prev, t_n).is_subset(&before) {
        return Err(state.breach(
            "tree colors before",
            format!("φ_(n-1)<T_n> = {:?} not within {:?}", tree_colors(phi_prev, t_n), before),
        ));
    }
    if !tree_colors(phi_n, t_n).is_subset(&after) {
        return Err(state.breach(
            "tree colors after",
            format!("φ_n<T_n> = {:?} not within {:?}", tree_colors(phi_n, t_n), after),
        ));
    }
    if !before.is_subset(&after) || !after.is_subset(&widened) {
        return Err(state.breach(
            "monotonicity",
            format!("{before:?} ⊆ {after:?} ⊆ {widened:?} fails"),
        ));
    }
    let rung = state.rung(n);
    if rung.theta == Extension::Parallel {
        let set = t_n.vertex_set();
        let gamma = rung.gamma.unwrap();
        let (gamma_edges, _) = color_boundary(g, phi_n, &set, gamma);
        if gamma_edges != vec![rung.f] {
            return Err(state.breach("γ boundary is f_n", format!("{gamma_edges:?}")));
        }
        let v_pos = t_n.position(rung.v).unwrap();
        for alpha in missing(phi_n, t_n).iter() {
            let (edges, ends) = color_boundary(g, phi_n, &set, alpha);
            if alpha == rung.delta {
                if ends.iter().any(|&x| t_n.position(x).unwrap() >= v_pos) {
                    return Err(state.breach("δ boundary before v_n", format!("{ends:?}")));
                }
            } else if !edges.is_empty() {
                return Err(state.breach("missing colors closed", format!("color {alpha}")));
            }
        }
    }
    Ok(())
}

/// Runs the series from Step 0 until it stops or the budget runs out.
pub fn build_series(
    g: &Multigraph,
    e: EdgeId,
    phi0: &PartialColoring,
    budget: &SeriesBudget,
) -> Result<SeriesState, SeriesError> {
    if phi0.k() < g.max_degree() + 1 {
        return Err(SeriesError::Precondition(format!(
            "k = {} is below Δ + 1 = {}",
            phi0.k(),
            g.max_degree() + 1
        )));
    }
    let mut state = SeriesState::start(g, e, phi0)?;
    loop {
        match series_step(g, &mut state, budget)? {
            StepOutcome::Extended(_) => continue,
            _ => return Ok(state),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::shannon;

    fn shannon_partial(k: usize) -> (Multigraph, PartialColoring) {
        // Edges 0..6 are 01, 01, 12, 12, 20, 20; edge 0 stays uncolored.
        let g = shannon(2);
        let colors = [None, Some(1), Some(2), Some(3), Some(4), Some(5)];
        let pairs: Vec<_> = colors.iter().enumerate().map(|(i, &c)| (EdgeId(i), c)).collect();
        (g.clone(), PartialColoring::from_assignment(&g, k, &pairs).unwrap())
    }

    #[test]
    fn shannon_triangle_closes_at_once() {
        let (g, phi) = shannon_partial(5);
        assert!(phi.is_proper(&g));
        let state = build_series(&g, EdgeId(0), &phi, &SeriesBudget::default()).unwrap();
        assert_eq!(state.outcome(), &SeriesOutcome::StronglyClosed);
        assert_eq!(state.n(), 1);
        assert_eq!(state.tree(1).len(), 3);
        let ledger = state.ledger_json();
        assert_eq!(ledger[0]["tree_vertices"].as_array().unwrap().len(), 3);
        assert_eq!(ledger[0]["theta"], serde_json::Value::Null);
    }

    #[test]
    fn rejects_small_k() {
        let (g, phi) = shannon_partial(4);
        assert!(matches!(
            build_series(&g, EdgeId(0), &phi, &SeriesBudget::default()),
            Err(SeriesError::Precondition(_))
        ));
    }

    #[test]
    fn max_defective_needs_open_tree() {
        let (g, phi) = shannon_partial(5);
        let t = taa_close(&g, &phi, &TreeSequence::from_edge(&g, EdgeId(0)), &PaletteRule::Plain);
        assert!(max_defective_vertex(&g, &phi, &t, &ColorSet::new(), 0).is_err());
    }
}
