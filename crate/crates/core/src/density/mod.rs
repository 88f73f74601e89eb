//! Density `Γ(G)`, the bound family around `χ′`, and brute-force oracles.

mod critical;
mod exact;

pub use critical::{is_critical, is_critical_with, tashkinov_order, TashkinovOrder};
pub use exact::{chromatic_index_exact, chromatic_index_with, edge_colorable, enumerate_colorings, ExactLimits};

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{GraphError, Multigraph, VertexSet};

pub type Rational = Ratio<u64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DensityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("certificate set must be odd with at least 3 vertices, got {0}")]
    BadCertificateSet(usize),
    #[error("exact search exceeded its node budget of {0}")]
    Budget(u64),
    #[error("graph is not critical")]
    NotCritical,
    #[error("chromatic index {chi} is below Δ + 2 = {need}")]
    BelowThreshold { chi: usize, need: usize },
}

/// `{num, den}` on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: u64,
    pub den: u64,
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        RationalJson {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

pub(crate) fn ceil(r: Rational) -> usize {
    r.ceil().to_integer() as usize
}

/// An odd set `U` with its value `2|E(U)|/(|U| − 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityCertificate {
    pub set: VertexSet,
    pub value: Rational,
}

impl Serialize for DensityCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DensityCertificate", 2)?;
        s.serialize_field("U", &self.set.to_vec())?;
        s.serialize_field("value", &RationalJson::from(self.value))?;
        s.end()
    }
}

fn value_of(edges: usize, size: usize) -> Rational {
    Rational::new(2 * edges as u64, (size - 1) as u64)
}

/// `Γ(G)` with a maximizing set.
///
/// Every subset is scored from a table of induced edge counts. Among sets of
/// equal value the larger one wins, then the one with the smaller bitmask.
/// Graphs with fewer than three vertices give value 0 and an empty set.
pub fn density(g: &Multigraph) -> Result<DensityCertificate, DensityError> {
    let n = g.vertex_count();
    let counts = g.induced_counts_by_mask()?;
    let mut best: Option<(Rational, usize, usize)> = None;
    for (mask, &inside) in counts.iter().enumerate().skip(1) {
        let size = mask.count_ones() as usize;
        if size < 3 || size.is_multiple_of(2) {
            continue;
        }
        let value = value_of(inside as usize, size);
        let better = match best {
            None => true,
            Some((v, s, _)) => value > v || (value == v && size > s),
        };
        if better {
            best = Some((value, size, mask));
        }
    }
    Ok(match best {
        Some((value, _, mask)) if value > Rational::from_integer(0) => DensityCertificate {
            set: VertexSet::from_bits(n, mask as u64),
            value,
        },
        _ => DensityCertificate {
            set: VertexSet::empty(n),
            value: Rational::from_integer(0),
        },
    })
}

/// `χ′ ≥ k + 1` is proved by `U` iff `2|E(U)|/(|U| − 1) > k`.
pub fn certificate_check(g: &Multigraph, u: &VertexSet, k: usize) -> Result<bool, DensityError> {
    let size = u.len();
    if size < 3 || size.is_multiple_of(2) {
        return Err(DensityError::BadCertificateSet(size));
    }
    let value = value_of(g.induced_edge_count(u), size);
    Ok(value > Rational::from_integer(k as u64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub max_multiplicity: usize,
    pub gamma: Rational,
    pub gamma_ceil: usize,
    pub chi_star: Rational,
    pub lower: usize,
    pub gs_upper: usize,
    pub shannon: usize,
    pub vizing: usize,
}

pub const BOUND_REPORT_VERSION: u32 = 1;

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BoundReport", 12)?;
        s.serialize_field("v", &BOUND_REPORT_VERSION)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("delta", &self.max_degree)?;
        s.serialize_field("mu", &self.max_multiplicity)?;
        s.serialize_field("gamma", &RationalJson::from(self.gamma))?;
        s.serialize_field("gamma_ceil", &self.gamma_ceil)?;
        s.serialize_field("chi_star", &RationalJson::from(self.chi_star))?;
        s.serialize_field("lower", &self.lower)?;
        s.serialize_field("gs_upper", &self.gs_upper)?;
        s.serialize_field("shannon", &self.shannon)?;
        s.serialize_field("vizing", &self.vizing)?;
        s.end()
    }
}

pub fn bound_report(g: &Multigraph) -> Result<BoundReport, DensityError> {
    let stats = g.stats();
    let gamma = density(g)?.value;
    let delta = stats.max_degree;
    let gamma_ceil = ceil(gamma);
    Ok(BoundReport {
        n: stats.n,
        m: stats.m,
        max_degree: delta,
        max_multiplicity: stats.max_multiplicity,
        gamma,
        gamma_ceil,
        chi_star: gamma.max(Rational::from_integer(delta as u64)),
        lower: delta.max(gamma_ceil),
        gs_upper: (delta + 1).max(gamma_ceil),
        shannon: 3 * delta / 2,
        vizing: delta + stats.max_multiplicity,
    })
}
