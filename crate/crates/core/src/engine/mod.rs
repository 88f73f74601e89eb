//! The coloring driver: extends a partial coloring one edge at a time
//! within `max{Δ + 1, ⌈Γ⌉}` colors, and checks results independently.

mod search;

use std::cmp::Reverse;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color_set::{Color, ColorSet};
use crate::coloring::{
    is_strongly_closed, kempe_chain, missing_union, swap_chain, ColoringError, ColoringJson,
    PartialColoring,
};
use crate::density::{
    bound_report, certificate_check, density, edge_colorable, DensityError, ExactLimits, Rational,
    RationalJson,
};
use crate::graph::{EdgeId, GraphError, Multigraph, VertexSet};
use crate::tashkinov::{
    build_series, elementary_audit, taa_close, Audit, PaletteRule, SeriesBudget, SeriesError,
    SeriesOutcome, TreeSequence,
};
use search::{recolor_search, recolor_walk};

pub const RESULT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineBudget {
    pub series: SeriesBudget,
    /// Colorings the recoloring search may visit per edge.
    pub search: usize,
    /// Steps of the random walk tried after the search.
    pub walk: usize,
}

impl Default for EngineBudget {
    fn default() -> Self {
        EngineBudget {
            series: SeriesBudget {
                iterations: 16,
                search: 60,
            },
            search: 4000,
            walk: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorOptions {
    pub seed: u64,
    pub budget: EngineBudget,
    /// Graphs with at most this many edges fall back to exact search when
    /// the heuristics stall.
    pub fallback_threshold: usize,
    /// First palette size to try; defaults to `max{Δ, ⌈Γ⌉}`.
    pub start_k: Option<usize>,
    pub exact: ExactLimits,
}

impl Default for ColorOptions {
    fn default() -> Self {
        ColorOptions {
            seed: 0,
            budget: EngineBudget::default(),
            fallback_threshold: 25,
            start_k: None,
            exact: ExactLimits::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Kempe,
    Tashkinov,
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub edge: EdgeId,
    pub method: Method,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceKind {
    ElementaryStronglyClosedTree,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureEvidence {
    pub kind: EvidenceKind,
    pub tree: TreeSequence,
    pub k: usize,
    pub edge: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendOutcome {
    Colored { coloring: PartialColoring, method: Method },
    Evidence(FailureEvidence),
}

/// An odd set `U` with `2|E(U)|/(|U| − 1) > k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmittedCertificate {
    #[serde(rename = "U")]
    pub set: Vec<usize>,
    pub value: RationalJson,
    pub k: usize,
}

/// Counters from the tree machinery, kept out of the JSON form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub series_runs: usize,
    pub series_steps: usize,
    pub series_violations: Vec<String>,
    pub audit_witnesses: usize,
    pub unsound_evidence: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringResult {
    pub coloring: PartialColoring,
    pub k_used: usize,
    pub certificates: Vec<EmittedCertificate>,
    pub trace: Vec<TraceEntry>,
    pub seed: u64,
    pub evidence: Vec<FailureEvidence>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    pub v: u32,
    pub k_used: usize,
    pub assignment: Vec<(usize, Option<Color>)>,
    pub certificates: Vec<EmittedCertificate>,
    pub trace: Vec<TraceEntry>,
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("incomplete (budget): edge {edge} could not be colored with {k} colors")]
    Incomplete {
        k: usize,
        edge: EdgeId,
        partial: Box<PartialColoring>,
    },
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("result does not match the graph: {0}")]
    Mismatch(String),
}

impl ColoringResult {
    pub fn to_json(&self, g: &Multigraph) -> ResultJson {
        ResultJson {
            v: RESULT_VERSION,
            k_used: self.k_used,
            assignment: self.coloring.to_json(g).assignment,
            certificates: self.certificates.clone(),
            trace: self.trace.clone(),
            seed: self.seed,
        }
    }

    /// Rebuilds a result from its JSON form; fails if the assignment does
    /// not list exactly the edges of `g`.
    pub fn from_json(g: &Multigraph, json: &ResultJson) -> Result<Self, EngineError> {
        let mut ids: Vec<usize> = json.assignment.iter().map(|&(id, _)| id).collect();
        ids.sort_unstable();
        let expected: Vec<usize> = g.edge_ids().map(|id| id.0).collect();
        if ids != expected {
            return Err(EngineError::Mismatch(format!(
                "assignment covers {} edge ids, graph has {}",
                ids.len(),
                expected.len()
            )));
        }
        let coloring = ColoringJson {
            k: json.k_used,
            assignment: json.assignment.clone(),
        };
        let coloring = PartialColoring::from_json(g, &coloring)
            .map_err(|err: ColoringError| EngineError::Mismatch(err.to_string()))?;
        Ok(ColoringResult {
            coloring,
            k_used: json.k_used,
            certificates: json.certificates.clone(),
            trace: json.trace.clone(),
            seed: json.seed,
            evidence: Vec::new(),
            diagnostics: Diagnostics::default(),
        })
    }

    pub fn method_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for entry in &self.trace {
            counts[entry.method as usize] += 1;
        }
        counts
    }
}

fn value_of(g: &Multigraph, set: &VertexSet) -> Rational {
    Rational::new(2 * g.induced_edge_count(set) as u64, (set.len() - 1) as u64)
}

fn emit(g: &Multigraph, set: &VertexSet, k: usize) -> Option<EmittedCertificate> {
    match certificate_check(g, set, k) {
        Ok(true) => Some(EmittedCertificate {
            set: set.to_vec(),
            value: value_of(g, set).into(),
            k,
        }),
        _ => None,
    }
}

/// Extends `φ` to the uncolored edge `e`.
///
/// Tries, in order: a color missing at both ends; one Kempe change between
/// the ends' missing colors; then the tree analysis. When `e` is the only
/// uncolored edge and `k ≥ Δ`, an elementary strongly closed closure (or
/// series end) proves `k` colors cannot suffice. Otherwise a seeded search
/// over Kempe changes and shifts, favouring the tree's colors, finishes the
/// job or the budget runs out.
pub fn extend(
    g: &Multigraph,
    phi: &PartialColoring,
    e: EdgeId,
    budget: &EngineBudget,
    seed: u64,
) -> ExtendOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    extend_with(g, phi, e, budget, &mut rng, &mut Diagnostics::default())
}

fn extend_with(
    g: &Multigraph,
    phi: &PartialColoring,
    e: EdgeId,
    budget: &EngineBudget,
    rng: &mut ChaCha8Rng,
    diag: &mut Diagnostics,
) -> ExtendOutcome {
    let edge = g.edge(e);
    let (x, y) = (edge.u, edge.v);
    let k = phi.k();
    if let Some(c) = phi.missing(x).intersection(phi.missing(y)).first() {
        let mut out = phi.clone();
        out.set(g, e, Some(c));
        return ExtendOutcome::Colored { coloring: out, method: Method::Direct };
    }
    for alpha in phi.missing(x).iter() {
        for beta in phi.missing(y).iter() {
            let chain = kempe_chain(g, phi, x, alpha, beta);
            if chain.contains_vertex(y) {
                continue;
            }
            let mut out = phi.clone();
            swap_chain(g, &mut out, &chain);
            out.set(g, e, Some(beta));
            return ExtendOutcome::Colored { coloring: out, method: Method::Kempe };
        }
    }

    let t1 = taa_close(g, phi, &TreeSequence::from_edge(g, e), &PaletteRule::Plain);
    let sole_gap = phi.uncolored(g) == [e];
    let elementary = match elementary_audit(phi, &t1) {
        Audit::Ok => true,
        Audit::Witness(_) => {
            diag.audit_witnesses += 1;
            false
        }
    };
    let delta = g.max_degree();
    if sole_gap && elementary && k >= delta && is_strongly_closed(g, phi, &t1.vertex_set()) {
        return ExtendOutcome::Evidence(FailureEvidence {
            kind: EvidenceKind::ElementaryStronglyClosedTree,
            tree: t1,
            k,
            edge: e,
        });
    }
    if sole_gap && elementary && k > delta {
        diag.series_runs += 1;
        match build_series(g, e, phi, &budget.series) {
            Ok(state) => {
                diag.series_steps += state.n() - 1;
                if state.outcome() == &SeriesOutcome::StronglyClosed {
                    return ExtendOutcome::Evidence(FailureEvidence {
                        kind: EvidenceKind::ElementaryStronglyClosedTree,
                        tree: state.current_tree().clone(),
                        k,
                        edge: e,
                    });
                }
            }
            Err(err @ SeriesError::Invariant { .. }) => diag.series_violations.push(err.to_string()),
            Err(SeriesError::Precondition(_)) => {}
        }
    }

    let mut focus: ColorSet = missing_union(phi, t1.vertices().iter().copied());
    focus.union_with(&t1.edges().iter().filter_map(|&id| phi.color(id)).collect());
    if let Some(out) = recolor_search(g, phi, e, budget.search, &focus, rng) {
        return ExtendOutcome::Colored { coloring: out, method: Method::Tashkinov };
    }
    if let Some(out) = recolor_walk(g, phi, e, budget.walk, rng) {
        return ExtendOutcome::Colored { coloring: out, method: Method::Tashkinov };
    }
    ExtendOutcome::Evidence(FailureEvidence {
        kind: EvidenceKind::BudgetExhausted,
        tree: t1,
        k,
        edge: e,
    })
}

/// Start, ceiling, and the densest set with `⌈Γ⌉` when it beats `Δ`.
type Palette = (usize, usize, Option<(VertexSet, usize)>);

fn palette(g: &Multigraph) -> Result<Palette, EngineError> {
    let stats = g.stats();
    let delta = stats.max_degree;
    match bound_report(g) {
        Ok(report) => {
            let witness = (report.gamma_ceil > delta)
                .then(|| density(g).map(|cert| (cert.set, report.gamma_ceil)))
                .transpose()?;
            Ok((report.lower, report.gs_upper, witness))
        }
        // Γ is out of reach; the classical bounds still cap χ′.
        Err(DensityError::Graph(GraphError::ScaleExceeded { .. })) => {
            let cap = (3 * delta / 2).min(delta + stats.max_multiplicity).max(delta);
            Ok((delta, cap, None))
        }
        Err(err) => Err(err.into()),
    }
}

fn widen(g: &Multigraph, phi: &PartialColoring, k: usize) -> PartialColoring {
    let pairs: Vec<_> = g.edge_ids().map(|id| (id, phi.color(id))).collect();
    PartialColoring::from_assignment(g, k, &pairs).expect("same graph")
}

/// Colors every edge of `g` with at most `max{Δ + 1, ⌈Γ⌉}` colors.
pub fn color(g: &Multigraph, options: &ColorOptions) -> Result<ColoringResult, EngineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut diag = Diagnostics::default();
    let (lower, ceiling, witness) = palette(g)?;
    let delta = g.max_degree();
    let mut k = options.start_k.map_or(lower, |s| s.max(delta)).min(ceiling);
    if g.edge_count() == 0 {
        k = 0;
    }

    let mut order: Vec<EdgeId> = g.edge_ids().collect();
    order.sort_by_key(|&id| {
        let e = g.edge(id);
        (Reverse(g.degree(e.u) + g.degree(e.v)), id)
    });

    let mut phi = PartialColoring::new(g, k);
    let mut trace = Vec::with_capacity(order.len());
    let mut certificates = Vec::new();
    let mut evidence = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let e = order[i];
        let h = g.without_edges(&order[i + 1..]);
        let failure = match extend_with(&h, &phi, e, &options.budget, &mut rng, &mut diag) {
            ExtendOutcome::Colored { coloring, method } => {
                phi = coloring;
                trace.push(TraceEntry { edge: e, method, k });
                i += 1;
                continue;
            }
            ExtendOutcome::Evidence(ev) => ev,
        };
        let proven = failure.kind == EvidenceKind::ElementaryStronglyClosedTree;
        if proven {
            match emit(g, &failure.tree.vertex_set(), k) {
                Some(cert) => certificates.push(cert),
                None => diag.unsound_evidence += 1,
            }
        }
        evidence.push(failure);
        if !proven && g.edge_count() <= options.fallback_threshold {
            match edge_colorable(&h, k, &options.exact) {
                Ok(Some(exact)) => {
                    phi = widen(g, &exact, k);
                    trace.push(TraceEntry { edge: e, method: Method::Fallback, k });
                    i += 1;
                    continue;
                }
                Ok(None) | Err(DensityError::Budget(_)) => {}
                Err(err) => return Err(err.into()),
            }
        }
        if k >= ceiling {
            return Err(EngineError::Incomplete {
                k,
                edge: e,
                partial: Box::new(phi),
            });
        }
        k += 1;
        phi = widen(g, &phi, k);
    }

    if let Some((set, gamma_ceil)) = witness {
        if let Some(cert) = emit(g, &set, gamma_ceil - 1) {
            certificates.push(cert);
        }
    }
    Ok(ColoringResult {
        coloring: phi,
        k_used: k,
        certificates,
        trace,
        seed: options.seed,
        evidence,
        diagnostics: diag,
    })
}

/// Re-checks a result from scratch: a proper total coloring within the
/// palette, the palette within the bound, and every certificate.
pub fn verify_result(g: &Multigraph, result: &ColoringResult) -> bool {
    let phi = &result.coloring;
    if phi.k() != result.k_used || !phi.uncolored(g).is_empty() || !phi.is_proper(g) {
        return false;
    }
    let ceiling = match palette(g) {
        Ok((_, ceiling, _)) => ceiling,
        Err(_) => return false,
    };
    if g.edge_count() > 0 && result.k_used > ceiling {
        return false;
    }
    result.certificates.iter().all(|cert| {
        let Ok(set) = VertexSet::new(g.vertex_count(), cert.set.iter().copied()) else {
            return false;
        };
        set.len() == cert.set.len()
            && certificate_check(g, &set, cert.k) == Ok(true)
            && RationalJson::from(value_of(g, &set)) == cert.value
    })
}
