//! Nodal-to-edge conversion.
//!
//! Global edge numbers are 1-based and signed wherever a direction matters:
//! `+e` means "in the stored direction of edge `e`", `-e` the reverse. Node
//! indices are 0-based compact indices; the `paper_*` helpers print them
//! 1-based with zero padding for empty slots.

use crate::error::{Error, Result};
use crate::mesh::{ElementKind, NodalMesh};

/// Primary incidence slots per node.
pub const PRIMARY_SLOTS: usize = 4;
/// Overflow slots per node listed in `ndexn`.
pub const OVERFLOW_SLOTS: usize = 8;
pub const MAX_INCIDENT_EDGES: usize = PRIMARY_SLOTS + OVERFLOW_SLOTS;

/// One incidence entry: a signed global edge and the node at its other end.
/// The sign is positive when the edge leaves the owning node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub edge: i64,
    pub other: usize,
}

const QUAD4_EDGES: [(usize, usize); 4] = [(1, 2), (4, 3), (1, 4), (2, 3)];
const TRI3_EDGES: [(usize, usize); 3] = [(1, 2), (2, 3), (3, 1)];
const TRI6_EDGES: [(usize, usize); 8] = [
    (1, 4),
    (4, 2),
    (2, 5),
    (5, 3),
    (3, 6),
    (6, 1),
    (6, 5),
    (5, 4),
];
const QUAD9_EDGES: [(usize, usize); 12] = [
    (1, 2),
    (2, 3),
    (4, 5),
    (5, 6),
    (7, 8),
    (8, 9),
    (1, 4),
    (2, 5),
    (3, 6),
    (4, 7),
    (5, 8),
    (6, 9),
];

/// Local edge table: 1-based local node pairs, directed first to second.
pub fn local_edges(kind: ElementKind) -> &'static [(usize, usize)] {
    match kind {
        ElementKind::Tri3 => &TRI3_EDGES,
        ElementKind::Quad4 => &QUAD4_EDGES,
        ElementKind::Tri6 => &TRI6_EDGES,
        ElementKind::Quad9 => &QUAD9_EDGES,
    }
}

/// 1-based local edges lying inside the element (Tri6 face edges, Quad9
/// cross edges). They are never shared and never on the domain boundary.
pub fn internal_local_edges(kind: ElementKind) -> &'static [usize] {
    match kind {
        ElementKind::Tri3 | ElementKind::Quad4 => &[],
        ElementKind::Tri6 => &[7, 8],
        ElementKind::Quad9 => &[3, 4, 8, 11],
    }
}

/// End nodes of local edge `i` (1-based) of an element with connectivity `nodarr`.
pub fn edgend(i: usize, nodarr: &[usize], kind: ElementKind) -> Result<(usize, usize)> {
    let table = local_edges(kind);
    if i == 0 || i > table.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            kind,
            max: table.len(),
        });
    }
    if nodarr.len() != kind.nodes_per_element() {
        return Err(Error::LengthMismatch {
            expected: kind.nodes_per_element(),
            found: nodarr.len(),
        });
    }
    let (a, b) = table[i - 1];
    Ok((nodarr[a - 1], nodarr[b - 1]))
}

/// Incremental edge registry in the layout of the conversion algorithm.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeRegistry {
    nodeedgenum: Vec<usize>,
    nodeedge: Vec<[Option<Slot>; PRIMARY_SLOTS]>,
    ndexn: Vec<usize>,
    nodeedgeexn: Vec<[Option<Slot>; OVERFLOW_SLOTS]>,
    exn_row: Vec<Option<usize>>,
    edgenode: Vec<(usize, usize)>,
}

impl EdgeRegistry {
    pub fn new(num_nodes: usize) -> Self {
        Self {
            nodeedgenum: vec![0; num_nodes],
            nodeedge: vec![[None; PRIMARY_SLOTS]; num_nodes],
            ndexn: Vec::new(),
            nodeedgeexn: Vec::new(),
            exn_row: vec![None; num_nodes],
            edgenode: Vec::new(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodeedgenum.len()
    }

    /// Last assigned global edge number (`e_l`).
    pub fn last_edge(&self) -> usize {
        self.edgenode.len()
    }

    pub fn nodeedgenum(&self) -> &[usize] {
        &self.nodeedgenum
    }

    pub fn nodeedge(&self, node: usize) -> &[Option<Slot>; PRIMARY_SLOTS] {
        &self.nodeedge[node]
    }

    /// Nodes with more than four incident edges, in order of first overflow.
    pub fn ndexn(&self) -> &[usize] {
        &self.ndexn
    }

    pub fn nndexn(&self) -> usize {
        self.ndexn.len()
    }

    /// Overflow row `j` (0-based, aligned with `ndexn`).
    pub fn nodeedgeexn(&self, j: usize) -> &[Option<Slot>; OVERFLOW_SLOTS] {
        &self.nodeedgeexn[j]
    }

    pub fn overflow_row_of(&self, node: usize) -> Option<usize> {
        self.exn_row[node]
    }

    /// Start and end node of global edge `e` (1-based).
    pub fn edgenode(&self, e: usize) -> (usize, usize) {
        self.edgenode[e - 1]
    }

    pub fn edgenodes(&self) -> &[(usize, usize)] {
        &self.edgenode
    }

    /// All filled slots of a node, primary first.
    pub fn slots(&self, node: usize) -> impl Iterator<Item = Slot> + '_ {
        let extra = self.exn_row[node].map(|j| &self.nodeedgeexn[j]);
        self.nodeedge[node]
            .iter()
            .chain(extra.into_iter().flatten())
            .flatten()
            .copied()
    }

    /// Signed edge between `nd1` and `nd2`: positive if stored as `nd1 -> nd2`.
    pub fn lookup_edge(&self, nd1: usize, nd2: usize) -> Option<i64> {
        self.slots(nd1).find(|s| s.other == nd2).map(|s| s.edge)
    }

    /// Registers the edge `nd1 -> nd2` if absent and returns its signed number.
    /// `edgearr[i - 1]` receives the result, mirroring the per-element row.
    pub fn edgedata(
        &mut self,
        i: usize,
        nd1: usize,
        nd2: usize,
        edgearr: &mut [i64],
    ) -> Result<i64> {
        if nd1 == nd2 {
            return Err(Error::SelfLoop(nd1 + 1));
        }
        if i == 0 || i > edgearr.len() {
            return Err(Error::LengthMismatch {
                expected: i,
                found: edgearr.len(),
            });
        }
        let signed = match self.lookup_edge(nd1, nd2) {
            Some(e) => e,
            None => {
                for n in [nd1, nd2] {
                    if self.nodeedgenum[n] >= MAX_INCIDENT_EDGES {
                        return Err(Error::EdgeOverflow(n + 1));
                    }
                }
                self.edgenode.push((nd1, nd2));
                let e = self.edgenode.len() as i64;
                self.push_slot(nd1, Slot { edge: e, other: nd2 });
                self.push_slot(nd2, Slot { edge: -e, other: nd1 });
                e
            }
        };
        edgearr[i - 1] = signed;
        Ok(signed)
    }

    fn push_slot(&mut self, node: usize, slot: Slot) {
        let k = self.nodeedgenum[node];
        if k < PRIMARY_SLOTS {
            self.nodeedge[node][k] = Some(slot);
        } else {
            let row = match self.exn_row[node] {
                Some(j) => j,
                None => {
                    self.ndexn.push(node);
                    self.nodeedgeexn.push([None; OVERFLOW_SLOTS]);
                    let j = self.ndexn.len() - 1;
                    self.exn_row[node] = Some(j);
                    j
                }
            };
            self.nodeedgeexn[row][k - PRIMARY_SLOTS] = Some(slot);
        }
        self.nodeedgenum[node] = k + 1;
    }

    /// `nodeedge` row as printed: (edge, other) pairs, 1-based nodes, zeros when empty.
    pub fn paper_nodeedge_row(&self, node: usize) -> [i64; 2 * PRIMARY_SLOTS] {
        flatten_slots(&self.nodeedge[node])
    }

    /// `nodeedgeexn` row `j` as printed.
    pub fn paper_nodeedgeexn_row(&self, j: usize) -> [i64; 2 * OVERFLOW_SLOTS] {
        flatten_slots(&self.nodeedgeexn[j])
    }

    /// Checks every structural invariant; returns a description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.num_nodes();
        let mut seen = vec![(0u8, 0u8); self.edgenode.len()];
        for node in 0..n {
            let primary = self.nodeedge[node].iter().flatten().count();
            let count = self.slots(node).count();
            if count != self.nodeedgenum[node] {
                return Err(format!("node {}: nodeedgenum disagrees with slots", node + 1));
            }
            if primary < PRIMARY_SLOTS.min(count) {
                return Err(format!("node {}: primary slots not filled first", node + 1));
            }
            let listed = self.ndexn.contains(&node);
            if listed != (count > PRIMARY_SLOTS) || listed != self.exn_row[node].is_some() {
                return Err(format!("node {}: ndexn membership inconsistent", node + 1));
            }
            for s in self.slots(node) {
                let e = s.edge.unsigned_abs() as usize;
                if e == 0 || e > self.edgenode.len() {
                    return Err(format!("node {}: edge {e} out of range", node + 1));
                }
                let expected = if s.edge > 0 { (node, s.other) } else { (s.other, node) };
                if self.edgenode[e - 1] != expected {
                    return Err(format!("node {}: slot for edge {e} disagrees with edgenode", node + 1));
                }
                let entry = &mut seen[e - 1];
                if s.edge > 0 {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
            }
        }
        if let Some(e) = seen.iter().position(|&c| c != (1, 1)) {
            return Err(format!("edge {} not listed exactly once at each end", e + 1));
        }
        let mut sorted = self.ndexn.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.ndexn.len() {
            return Err("ndexn has duplicates".into());
        }
        Ok(())
    }
}

fn flatten_slots<const N: usize, const M: usize>(slots: &[Option<Slot>; N]) -> [i64; M] {
    let mut row = [0i64; M];
    for (k, s) in slots.iter().enumerate() {
        if let Some(s) = s {
            row[2 * k] = s.edge;
            row[2 * k + 1] = s.other as i64 + 1;
        }
    }
    row
}

/// Conversion output: signed element-to-edge connectivity plus the registry.
#[derive(Clone, Debug)]
pub struct EdgeMesh<'m> {
    mesh: &'m NodalMesh,
    edgecon: Vec<Vec<i64>>,
    edge_length: Vec<f64>,
    registry: EdgeRegistry,
}

impl<'m> EdgeMesh<'m> {
    pub fn mesh(&self) -> &'m NodalMesh {
        self.mesh
    }

    /// Signed global edges of element `e` (0-based) in local edge order.
    pub fn element_edges(&self, e: usize) -> &[i64] {
        &self.edgecon[e]
    }

    pub fn edgecon(&self) -> &[Vec<i64>] {
        &self.edgecon
    }

    pub fn num_edges(&self) -> usize {
        self.registry.last_edge()
    }

    /// Chord length of global edge `e` (1-based).
    pub fn edge_length(&self, e: usize) -> f64 {
        self.edge_length[e - 1]
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_length
    }

    pub fn edgenode(&self, e: usize) -> (usize, usize) {
        self.registry.edgenode(e)
    }

    pub fn registry(&self) -> &EdgeRegistry {
        &self.registry
    }

    /// Lengths of element `e`'s edges in local order.
    pub fn element_lengths(&self, e: usize) -> Vec<f64> {
        self.edgecon[e]
            .iter()
            .map(|s| self.edge_length(s.unsigned_abs() as usize))
            .collect()
    }
}

/// Element-by-element driver of the conversion loop.
#[derive(Debug)]
pub struct EdgeConverter<'m> {
    mesh: &'m NodalMesh,
    registry: EdgeRegistry,
    edgecon: Vec<Vec<i64>>,
}

impl<'m> EdgeConverter<'m> {
    pub fn new(mesh: &'m NodalMesh) -> Result<Self> {
        let mut first = None;
        let mut second = None;
        for el in mesh.elements() {
            let slot = if el.kind.is_second_order() { &mut second } else { &mut first };
            slot.get_or_insert(el.kind);
        }
        if let (Some(a), Some(b)) = (first, second) {
            return Err(Error::MixedOrderMismatch(a, b));
        }
        Ok(Self {
            mesh,
            registry: EdgeRegistry::new(mesh.num_nodes()),
            edgecon: Vec::with_capacity(mesh.num_elements()),
        })
    }

    /// Number of elements already processed.
    pub fn position(&self) -> usize {
        self.edgecon.len()
    }

    pub fn is_done(&self) -> bool {
        self.position() == self.mesh.num_elements()
    }

    pub fn registry(&self) -> &EdgeRegistry {
        &self.registry
    }

    pub fn edgecon(&self) -> &[Vec<i64>] {
        &self.edgecon
    }

    /// Processes the next element. Returns `false` once all elements are done.
    pub fn step(&mut self) -> Result<bool> {
        let Some(el) = self.mesh.elements().get(self.position()) else {
            return Ok(false);
        };
        let n = el.kind.edges_per_element();
        let mut edgearr = vec![0i64; n];
        for i in 1..=n {
            let (nd1, nd2) = edgend(i, &el.nodes, el.kind)?;
            self.registry.edgedata(i, nd1, nd2, &mut edgearr)?;
        }
        self.edgecon.push(edgearr);
        Ok(true)
    }

    pub fn run(mut self) -> Result<EdgeMesh<'m>> {
        while self.step()? {}
        let mesh = self.mesh;
        let edge_length = self
            .registry
            .edgenodes()
            .iter()
            .map(|&(a, b)| {
                let [xa, ya] = mesh.coords(a);
                let [xb, yb] = mesh.coords(b);
                (xb - xa).hypot(yb - ya)
            })
            .collect();
        Ok(EdgeMesh {
            mesh,
            edgecon: self.edgecon,
            edge_length,
            registry: self.registry,
        })
    }
}

/// Converts a nodal mesh to its edge representation.
pub fn node_to_edge(mesh: &NodalMesh) -> Result<EdgeMesh<'_>> {
    EdgeConverter::new(mesh)?.run()
}
