//! Nodal mesh model: node coordinates, element connectivity and element kinds.
//!
//! Node ids in files may be arbitrary positive integers. On load they are
//! compacted to dense indices in file order; everything downstream works on
//! the compact indices (0-based in the API, 1-based in printed reports).

mod boundary;
mod io;

pub use boundary::{detect_boundary, BoundaryInfo};
pub use io::{parse_mesh, write_mesh};

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    Tri3,
    Quad4,
    Tri6,
    Quad9,
}

impl ElementKind {
    pub const ALL: [ElementKind; 4] = [Self::Tri3, Self::Quad4, Self::Tri6, Self::Quad9];

    pub const fn nodes_per_element(self) -> usize {
        match self {
            Self::Tri3 => 3,
            Self::Quad4 => 4,
            Self::Tri6 => 6,
            Self::Quad9 => 9,
        }
    }

    pub const fn edges_per_element(self) -> usize {
        match self {
            Self::Tri3 => 3,
            Self::Quad4 => 4,
            Self::Tri6 => 8,
            Self::Quad9 => 12,
        }
    }

    pub const fn is_second_order(self) -> bool {
        matches!(self, Self::Tri6 | Self::Quad9)
    }

    pub const fn is_triangle(self) -> bool {
        matches!(self, Self::Tri3 | Self::Tri6)
    }

    /// Local positions (0-based) of the geometric corner nodes, counter-clockwise.
    pub const fn corner_positions(self) -> &'static [usize] {
        match self {
            Self::Tri3 | Self::Tri6 => &[0, 1, 2],
            Self::Quad4 => &[0, 1, 2, 3],
            Self::Quad9 => &[0, 2, 8, 6],
        }
    }

    pub const fn tag(self) -> &'static str {
        match self {
            Self::Tri3 => "tri3",
            Self::Quad4 => "quad4",
            Self::Tri6 => "tri6",
            Self::Quad9 => "quad9",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    /// Id as written in the source file.
    pub label: u64,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub kind: ElementKind,
    /// Compact 0-based node indices in local order.
    pub nodes: Vec<usize>,
}

impl Element {
    pub fn new(kind: ElementKind, nodes: Vec<usize>) -> Self {
        Self { kind, nodes }
    }
}

/// A validated 2-D nodal mesh. Element order is significant: it fixes the
/// global edge numbering produced by the conversion.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NodalMesh {
    nodes: Vec<Node>,
    elements: Vec<Element>,
}

impl NodalMesh {
    pub fn new(nodes: Vec<Node>, elements: Vec<Element>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(nodes.len());
        for n in &nodes {
            if n.label == 0 {
                return Err(Error::InvalidParameter("node ids must be positive".into()));
            }
            if !seen.insert(n.label) {
                return Err(Error::DuplicateId {
                    what: "node",
                    id: n.label,
                });
            }
        }
        for (e, el) in elements.iter().enumerate() {
            if el.nodes.len() != el.kind.nodes_per_element() {
                return Err(Error::InvalidParameter(format!(
                    "element {} ({}) has {} nodes, expected {}",
                    e + 1,
                    el.kind,
                    el.nodes.len(),
                    el.kind.nodes_per_element()
                )));
            }
            if let Some(&bad) = el.nodes.iter().find(|&&n| n >= nodes.len()) {
                return Err(Error::DanglingNodeRef {
                    element: e as u64 + 1,
                    node: bad as u64 + 1,
                });
            }
        }
        Ok(Self { nodes, elements })
    }

    /// Builds a mesh whose node labels are `1..=coords.len()`.
    pub fn from_coords(coords: &[[f64; 2]], elements: Vec<Element>) -> Result<Self> {
        let nodes = coords
            .iter()
            .enumerate()
            .map(|(i, &[x, y])| Node {
                label: i as u64 + 1,
                x,
                y,
            })
            .collect();
        Self::new(nodes, elements)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn coords(&self, node: usize) -> [f64; 2] {
        let n = &self.nodes[node];
        [n.x, n.y]
    }

    /// Physical coordinates of an element's nodes in local order.
    pub fn element_coords(&self, element: usize) -> Vec<[f64; 2]> {
        self.elements[element]
            .nodes
            .iter()
            .map(|&n| self.coords(n))
            .collect()
    }

    /// Returns `(first-order present, second-order present)`.
    pub fn orders(&self) -> (bool, bool) {
        let second = self.elements.iter().any(|e| e.kind.is_second_order());
        let first = self.elements.iter().any(|e| !e.kind.is_second_order());
        (first, second)
    }

    pub fn is_first_order(&self) -> bool {
        !self.orders().1
    }

    /// Applies `f` to every node coordinate.
    pub fn map_coords(&self, f: impl Fn([f64; 2]) -> [f64; 2]) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                let [x, y] = f([n.x, n.y]);
                Node { label: n.label, x, y }
            })
            .collect();
        Self {
            nodes,
            elements: self.elements.clone(),
        }
    }

    /// Renumbers nodes and reorders elements. `node_perm[old] = new` and
    /// `element_order[new] = old`; node labels follow the new positions.
    pub fn permuted(&self, node_perm: &[usize], element_order: &[usize]) -> Result<Self> {
        let n = self.nodes.len();
        if node_perm.len() != n || element_order.len() != self.elements.len() {
            return Err(Error::LengthMismatch {
                expected: n,
                found: node_perm.len(),
            });
        }
        let mut coords = vec![[0.0; 2]; n];
        for (old, &new) in node_perm.iter().enumerate() {
            coords[new] = self.coords(old);
        }
        let elements = element_order
            .iter()
            .map(|&old| {
                let el = &self.elements[old];
                Element::new(el.kind, el.nodes.iter().map(|&v| node_perm[v]).collect())
            })
            .collect();
        Self::from_coords(&coords, elements)
    }
}
