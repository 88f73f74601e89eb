//! Partial edge colorings and the predicates built on them.

mod kempe;
mod sets;
mod stable;

pub use kempe::{all_chains, kempe_chain, kempe_swap, swap_outside, ChainKind, KempeChain};
pub(crate) use kempe::swap_in_place as swap_chain;
pub use sets::{
    color_boundary, defective_colors, elementary_witness, is_closed, is_elementary,
    is_strongly_closed, missing_union, ElementaryWitness,
};
pub use stable::{find_exit_paths, is_stable, is_stable_strong, ExitPath};

use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color_set::{Color, ColorSet};
use crate::graph::{EdgeId, Multigraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("color {color} on edge {edge} is outside 1..={k}")]
    ColorOutOfRange { edge: EdgeId, color: Color, k: usize },
    #[error("colorings disagree: {0}")]
    Mismatch(&'static str),
    #[error("chain is not an ({0}, {1})-chain of this coloring")]
    NotAChain(Color, Color),
    #[error("boundary edge {edge} carries color {color}")]
    BoundaryColor { edge: EdgeId, color: Color },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two or more edges at `vertex` share `color`.
    Conflict {
        vertex: usize,
        color: Color,
        edges: Vec<EdgeId>,
    },
    OutOfRange { edge: EdgeId, color: Color },
}

/// An assignment of colors in `1..=k` to some of the edges.
///
/// Per-vertex color counts and missing sets are maintained on every
/// mutation. Debug builds re-derive both ends from scratch after each
/// write and compare.
#[derive(Debug, Clone)]
pub struct PartialColoring {
    k: usize,
    colors: Vec<Option<Color>>,
    counts: Vec<u32>,
    missing: Vec<ColorSet>,
}

impl PartialEq for PartialColoring {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.colors == other.colors
    }
}

impl Eq for PartialColoring {}

impl Hash for PartialColoring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.colors.hash(state);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: usize,
    pub assignment: Vec<(usize, Option<Color>)>,
}

impl PartialColoring {
    /// Every edge uncolored.
    pub fn new(g: &Multigraph, k: usize) -> Self {
        PartialColoring {
            k,
            colors: vec![None; g.edge_bound()],
            counts: vec![0; g.vertex_count() * (k + 1)],
            missing: vec![ColorSet::range(k); g.vertex_count()],
        }
    }

    /// Builds from explicit pairs. Out-of-range colors are stored (so that
    /// [`validate`](Self::validate) can report them) but never counted.
    pub fn from_assignment(
        g: &Multigraph,
        k: usize,
        assignment: &[(EdgeId, Option<Color>)],
    ) -> Result<Self, ColoringError> {
        let mut phi = PartialColoring::new(g, k);
        for &(id, color) in assignment {
            if !g.contains_edge(id) {
                return Err(ColoringError::UnknownEdge(id));
            }
            phi.set(g, id, color);
        }
        Ok(phi)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, id: EdgeId) -> Option<Color> {
        self.colors.get(id.0).copied().flatten()
    }

    fn in_range(&self, c: Color) -> bool {
        (1..=self.k).contains(&c)
    }

    fn bump(&mut self, v: usize, c: Color, up: bool) {
        let slot = v * (self.k + 1) + c;
        if up {
            self.counts[slot] += 1;
            if self.counts[slot] == 1 {
                self.missing[v].remove(c);
            }
        } else {
            self.counts[slot] -= 1;
            if self.counts[slot] == 0 {
                self.missing[v].insert(c);
            }
        }
    }

    /// Sets the color of `id` (or uncolors it with `None`).
    pub fn set(&mut self, g: &Multigraph, id: EdgeId, color: Option<Color>) {
        let e = g.edge(id);
        if let Some(old) = self.colors[id.0] {
            if self.in_range(old) {
                self.bump(e.u, old, false);
                self.bump(e.v, old, false);
            }
        }
        if let Some(new) = color {
            if self.in_range(new) {
                self.bump(e.u, new, true);
                self.bump(e.v, new, true);
            }
        }
        self.colors[id.0] = color;
        #[cfg(debug_assertions)]
        {
            self.cross_check(g, e.u);
            self.cross_check(g, e.v);
        }
    }

    #[cfg(debug_assertions)]
    fn cross_check(&self, g: &Multigraph, v: usize) {
        let present: ColorSet = g
            .incident(v)
            .iter()
            .filter_map(|&id| self.color(id))
            .filter(|&c| self.in_range(c))
            .collect();
        let fresh = ColorSet::range(self.k).difference(&present);
        assert_eq!(fresh, self.missing[v], "missing-set cache drifted at {v}");
    }

    /// `φ̄(v)`.
    pub fn missing(&self, v: usize) -> &ColorSet {
        &self.missing[v]
    }

    pub fn is_missing(&self, v: usize, c: Color) -> bool {
        self.missing[v].contains(c)
    }

    /// `φ̄(v)` recomputed from the assignment alone.
    pub fn missing_from_scratch(&self, g: &Multigraph, v: usize) -> ColorSet {
        let mut set = ColorSet::range(self.k);
        for &id in g.incident(v) {
            if let Some(c) = self.color(id) {
                set.remove(c);
            }
        }
        set
    }

    /// The lowest-id edge at `v` with color `c`.
    pub fn edge_at(&self, g: &Multigraph, v: usize, c: Color) -> Option<EdgeId> {
        if self.in_range(c) && self.is_missing(v, c) {
            return None;
        }
        g.incident(v)
            .iter()
            .copied()
            .find(|&id| self.color(id) == Some(c))
    }

    pub fn uncolored(&self, g: &Multigraph) -> Vec<EdgeId> {
        g.edge_ids().filter(|&id| self.color(id).is_none()).collect()
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn validate(&self, g: &Multigraph) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in g.edges() {
            if let Some(c) = self.color(e.id) {
                if !self.in_range(c) {
                    out.push(Violation::OutOfRange { edge: e.id, color: c });
                }
            }
        }
        for v in 0..g.vertex_count() {
            let mut by_color: Vec<(Color, EdgeId)> = g
                .incident(v)
                .iter()
                .filter_map(|&id| self.color(id).map(|c| (c, id)))
                .collect();
            by_color.sort_unstable();
            for group in by_color.chunk_by(|a, b| a.0 == b.0) {
                if group.len() > 1 {
                    out.push(Violation::Conflict {
                        vertex: v,
                        color: group[0].0,
                        edges: group.iter().map(|&(_, id)| id).collect(),
                    });
                }
            }
        }
        out
    }

    pub fn is_proper(&self, g: &Multigraph) -> bool {
        self.validate(g).is_empty()
    }

    /// Colored edges plus `None` entries, in edge id order.
    pub fn to_json(&self, g: &Multigraph) -> ColoringJson {
        ColoringJson {
            k: self.k,
            assignment: g.edge_ids().map(|id| (id.0, self.color(id))).collect(),
        }
    }

    pub fn from_json(g: &Multigraph, json: &ColoringJson) -> Result<Self, ColoringError> {
        let pairs: Vec<_> = json
            .assignment
            .iter()
            .map(|&(id, c)| (EdgeId(id), c))
            .collect();
        PartialColoring::from_assignment(g, json.k, &pairs)
    }
}
