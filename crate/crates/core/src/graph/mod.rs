//! Multigraphs with parallel edges and stable edge identities.
//!
//! Edges are addressed by [`EdgeId`]. Identities never change once assigned:
//! deleting edges leaves a hole in the id space instead of renumbering, so a
//! coloring or a tree sequence built against a graph keeps meaning the same
//! edges after a subgraph operation.

pub mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count for which subset enumeration is attempted.
pub const ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// The end of the edge that is not `w`.
    ///
    /// Panics if `w` is not an end.
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            assert_eq!(w, self.v, "vertex {w} is not an end of {}", self.id);
            self.u
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge #{position} is a self-loop at vertex {vertex}")]
    SelfLoop { position: usize, vertex: usize },
    #[error("edge #{position} has endpoint {vertex} outside 0..{n}")]
    EndpointOutOfRange {
        position: usize,
        vertex: usize,
        n: usize,
    },
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("scale exceeded: {what} is {actual}, enumeration cap is {cap}")]
    ScaleExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A subset of the vertices of some graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    mask: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self, GraphError> {
        let mut set = Self::empty(n);
        for v in members {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn empty(n: usize) -> Self {
        VertexSet {
            mask: vec![false; n],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            mask: vec![true; n],
            len: n,
        }
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut set = Self::empty(n);
        set.insert(v);
        set
    }

    /// Members of a bitmask over `0..n` (bit `i` is vertex `i`).
    pub fn from_bits(n: usize, bits: u64) -> Self {
        let mut set = Self::empty(n);
        for v in 0..n {
            if bits >> v & 1 == 1 {
                set.insert(v);
            }
        }
        set
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = !self.mask[v];
        if fresh {
            self.mask[v] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Size of the ambient vertex range.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
    }

    pub fn complement(&self) -> Self {
        VertexSet {
            mask: self.mask.iter().map(|m| !m).collect(),
            len: self.mask.len() - self.len,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// `(n, m, Δ, μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub max_multiplicity: usize,
}

/// An undirected loopless multigraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    slots: Vec<Option<(usize, usize)>>,
    m: usize,
    incident: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    /// Builds a multigraph with one edge per pair; ids follow input order.
    pub fn build(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut incident = vec![Vec::new(); n];
        let mut slots = Vec::with_capacity(pairs.len());
        for (position, &(u, v)) in pairs.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange {
                        position,
                        vertex: w,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { position, vertex: u });
            }
            incident[u].push(EdgeId(position));
            incident[v].push(EdgeId(position));
            slots.push(Some((u, v)));
        }
        Ok(Multigraph {
            n,
            m: pairs.len(),
            slots,
            incident,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Multigraph {
            n,
            slots: Vec::new(),
            m: 0,
            incident: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// One past the largest edge id ever assigned.
    pub fn edge_bound(&self) -> usize {
        self.slots.len()
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        matches!(self.slots.get(id.0), Some(Some(_)))
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        let (u, v) = self.slots[id.0].unwrap_or_else(|| panic!("no edge {id}"));
        Edge { id, u, v }
    }

    pub fn try_edge(&self, id: EdgeId) -> Option<Edge> {
        self.slots
            .get(id.0)
            .copied()
            .flatten()
            .map(|(u, v)| Edge { id, u, v })
    }

    /// Edges in id order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|(u, v)| Edge { id: EdgeId(i), u, v }))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|e| e.id)
    }

    /// Ids of the edges at `v`, ascending.
    pub fn incident(&self, v: usize) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// `|E(u, v)|`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.incident[u]
            .iter()
            .filter(|&&id| self.edge(id).touches(v) && u != v)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        let mut best = 0;
        let mut count = vec![0usize; self.n];
        for u in 0..self.n {
            for &id in &self.incident[u] {
                let w = self.edge(id).other(u);
                count[w] += 1;
                best = best.max(count[w]);
            }
            for &id in &self.incident[u] {
                count[self.edge(id).other(u)] = 0;
            }
        }
        best
    }

    pub fn stats(&self) -> Stats {
        Stats {
            n: self.n,
            m: self.m,
            max_degree: self.max_degree(),
            max_multiplicity: self.max_multiplicity(),
        }
    }

    /// `|E(U)|`, counting parallel edges.
    pub fn induced_edge_count(&self, set: &VertexSet) -> usize {
        self.edges()
            .filter(|e| set.contains(e.u) && set.contains(e.v))
            .count()
    }

    /// `∂(X)`: ids of edges with exactly one end in `X`, ascending.
    pub fn boundary(&self, set: &VertexSet) -> Vec<EdgeId> {
        self.edges()
            .filter(|e| set.contains(e.u) != set.contains(e.v))
            .map(|e| e.id)
            .collect()
    }

    /// `G_w`: every edge `e` becomes `w(e)` parallel copies; ids are fresh
    /// and follow the order of the original edges.
    pub fn expand_weighted<W: Fn(EdgeId) -> usize>(&self, weight: W) -> Multigraph {
        let mut pairs = Vec::new();
        for e in self.edges() {
            for _ in 0..weight(e.id) {
                pairs.push((e.u, e.v));
            }
        }
        Multigraph::build(self.n, &pairs).expect("endpoints come from a valid graph")
    }

    /// The subgraph without `removed`; surviving edges keep their ids.
    pub fn without_edges(&self, removed: &[EdgeId]) -> Multigraph {
        let mut slots = self.slots.clone();
        for id in removed {
            if let Some(slot) = slots.get_mut(id.0) {
                *slot = None;
            }
        }
        let mut incident = vec![Vec::new(); self.n];
        let mut m = 0;
        for (i, s) in slots.iter().enumerate() {
            if let Some((u, v)) = *s {
                incident[u].push(EdgeId(i));
                incident[v].push(EdgeId(i));
                m += 1;
            }
        }
        Multigraph {
            n: self.n,
            slots,
            m,
            incident,
        }
    }

    /// Endpoint pairs in id order, dropping ids.
    pub fn endpoint_pairs(&self) -> Vec<(usize, usize)> {
        self.edges().map(|e| (e.u, e.v)).collect()
    }

    /// Connected components (isolated vertices included), each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &id in &self.incident[u] {
                    let w = self.edge(id).other(u);
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Pairwise multiplicity table, `n × n`.
    pub fn multiplicity_table(&self) -> Vec<Vec<usize>> {
        let mut table = vec![vec![0; self.n]; self.n];
        for e in self.edges() {
            table[e.u][e.v] += 1;
            table[e.v][e.u] += 1;
        }
        table
    }

    /// `|E(U)|` for every `U ⊆ V` as a bitmask-indexed table.
    pub(crate) fn induced_counts_by_mask(&self) -> Result<Vec<u32>, GraphError> {
        if self.n > ENUMERATION_CAP {
            return Err(GraphError::ScaleExceeded {
                what: "vertex count",
                actual: self.n,
                cap: ENUMERATION_CAP,
            });
        }
        let mult = self.multiplicity_table();
        let size = 1usize << self.n;
        let mut counts = vec![0u32; size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let mut extra = 0u32;
            let mut bits = rest;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                extra += mult[low][w] as u32;
                bits &= bits - 1;
            }
            counts[mask] = counts[rest] + extra;
        }
        Ok(counts)
    }

    /// Whether the graph is `r`-regular with every odd cut of size at least `r`.
    pub fn is_r_graph(&self, r: usize) -> Result<bool, GraphError> {
        let counts = self.induced_counts_by_mask()?;
        if (0..self.n).any(|v| self.degree(v) != r) {
            return Ok(false);
        }
        // |∂(X)| = r|X| - 2|E(X)| in an r-regular graph.
        for (mask, &inside) in counts.iter().enumerate().skip(1) {
            let size = mask.count_ones() as usize;
            if size % 2 == 1 && r * size - 2 * (inside as usize) < r {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
