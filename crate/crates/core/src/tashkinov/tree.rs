use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, Multigraph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("edge {0} does not have exactly one end in the tree")]
    NotPendant(EdgeId),
    #[error("edge {0} already used")]
    RepeatedEdge(EdgeId),
    #[error("first edge is {found:?}, expected {expected}")]
    WrongRoot { expected: EdgeId, found: Option<EdgeId> },
}

/// `(y_0, e_1, y_1, …, e_p, y_p)`: every `e_j` joins `y_j` to some earlier
/// vertex. Position in the sequence is the order `≺`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeSequence {
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
    #[serde(skip)]
    position: Vec<Option<usize>>,
}

impl TreeSequence {
    /// The one-vertex sequence `(v)` in a graph with `n` vertices.
    pub fn root(n: usize, v: usize) -> Self {
        let mut position = vec![None; n];
        position[v] = Some(0);
        TreeSequence {
            vertices: vec![v],
            edges: Vec::new(),
            position,
        }
    }

    /// `(u, e, v)` for `e = uv`.
    pub fn from_edge(g: &Multigraph, e: EdgeId) -> Self {
        let edge = g.edge(e);
        let mut t = TreeSequence::root(g.vertex_count(), edge.u);
        t.push(g, e).expect("fresh edge at the root");
        t
    }

    /// Appends `edge` and its end outside the tree; returns that end.
    pub fn push(&mut self, g: &Multigraph, edge: EdgeId) -> Result<usize, TreeError> {
        let e = g.edge(edge);
        let (inside_u, inside_v) = (self.contains(e.u), self.contains(e.v));
        if inside_u == inside_v {
            return Err(TreeError::NotPendant(edge));
        }
        if self.edges.contains(&edge) {
            return Err(TreeError::RepeatedEdge(edge));
        }
        let y = if inside_u { e.v } else { e.u };
        self.position[y] = Some(self.vertices.len());
        self.vertices.push(y);
        self.edges.push(edge);
        Ok(y)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `e_1, e_2, …`; `edges()[j - 1]` attaches `vertices()[j]`.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// `|V(T)|`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.position.get(v).copied().flatten().is_some()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.position.get(v).copied().flatten()
    }

    pub fn last_vertex(&self) -> usize {
        *self.vertices.last().expect("sequences are never empty")
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::new(self.position.len(), self.vertices.iter().copied()).expect("in range")
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edges.contains(&id)
    }

    /// The first `len` vertices with their attaching edges.
    pub fn prefix(&self, len: usize) -> TreeSequence {
        let len = len.clamp(1, self.len());
        let mut position = vec![None; self.position.len()];
        for (i, &v) in self.vertices[..len].iter().enumerate() {
            position[v] = Some(i);
        }
        TreeSequence {
            vertices: self.vertices[..len].to_vec(),
            edges: self.edges[..len - 1].to_vec(),
            position,
        }
    }

    /// `T(y)`: the prefix ending at `y`.
    pub fn segment(&self, y: usize) -> TreeSequence {
        let at = self.position(y).expect("vertex of the tree");
        self.prefix(at + 1)
    }

    pub fn is_prefix_of(&self, other: &TreeSequence) -> bool {
        other.len() >= self.len()
            && other.vertices[..self.len()] == self.vertices[..]
            && other.edges[..self.edges.len()] == self.edges[..]
    }

    /// `T ∨ R`: appends the vertices of `R` missing from `T` in `R`'s order,
    /// each with the edge that attached it in `R`.
    pub fn join(&self, g: &Multigraph, other: &TreeSequence) -> TreeSequence {
        let mut out = self.clone();
        for (j, &y) in other.vertices.iter().enumerate().skip(1) {
            if !out.contains(y) {
                out.push(g, other.edges[j - 1])
                    .expect("attaching edge joins y to an earlier vertex of R");
            }
        }
        out
    }

    /// Checks the tree-sequence conditions against `g`; `root` pins `e_1`.
    pub fn validate(&self, g: &Multigraph, root: Option<EdgeId>) -> Result<(), TreeError> {
        if let Some(expected) = root {
            if self.edges.first() != Some(&expected) {
                return Err(TreeError::WrongRoot {
                    expected,
                    found: self.edges.first().copied(),
                });
            }
        }
        let mut rebuilt = TreeSequence::root(g.vertex_count(), self.vertices[0]);
        for (j, &id) in self.edges.iter().enumerate() {
            if !g.contains_edge(id) {
                return Err(TreeError::NotPendant(id));
            }
            let y = rebuilt.push(g, id)?;
            if y != self.vertices[j + 1] {
                return Err(TreeError::NotPendant(id));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> Multigraph {
        Multigraph::build(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn grow_and_segment() {
        let g = path4();
        let mut t = TreeSequence::from_edge(&g, EdgeId(0));
        assert_eq!(t.vertices(), &[0, 1]);
        assert_eq!(t.push(&g, EdgeId(1)), Ok(2));
        assert_eq!(t.push(&g, EdgeId(0)), Err(TreeError::NotPendant(EdgeId(0))));
        assert_eq!(t.position(2), Some(2));
        let seg = t.segment(1);
        assert_eq!(seg.vertices(), &[0, 1]);
        assert!(seg.is_prefix_of(&t));
        assert!(seg.validate(&g, Some(EdgeId(0))).is_ok());
        assert!(t.validate(&g, Some(EdgeId(1))).is_err());
    }

    #[test]
    fn join_appends_in_other_order() {
        let g = path4();
        let t = TreeSequence::from_edge(&g, EdgeId(0));
        let mut r = TreeSequence::from_edge(&g, EdgeId(0));
        r.push(&g, EdgeId(3)).unwrap();
        r.push(&g, EdgeId(2)).unwrap();
        let joined = t.join(&g, &r);
        assert_eq!(joined.vertices(), &[0, 1, 3, 2]);
        assert!(t.is_prefix_of(&joined));
        assert!(joined.validate(&g, Some(EdgeId(0))).is_ok());
    }
}
