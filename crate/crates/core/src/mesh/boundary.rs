use crate::convert::{internal_local_edges, EdgeMesh};
use crate::error::{Error, Result};

/// Boundary classification by edge incidence: an edge is on the boundary
/// iff exactly one element references it. Edges internal to a second-order
/// element are excluded; they always have a single incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryInfo {
    /// Indexed by global edge number minus one.
    pub boundary_edge_flags: Vec<bool>,
    pub boundary_node_flags: Vec<bool>,
}

impl BoundaryInfo {
    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.boundary_edge_flags[e - 1]
    }

    /// 1-based numbers of boundary edges, ascending.
    pub fn boundary_edges(&self) -> Vec<usize> {
        (1..=self.boundary_edge_flags.len())
            .filter(|&e| self.is_boundary_edge(e))
            .collect()
    }

    /// 1-based numbers of interior edges, ascending.
    pub fn interior_edges(&self) -> Vec<usize> {
        (1..=self.boundary_edge_flags.len())
            .filter(|&e| !self.is_boundary_edge(e))
            .collect()
    }

    /// 0-based indices of nodes not on the boundary.
    pub fn interior_nodes(&self) -> Vec<usize> {
        (0..self.boundary_node_flags.len())
            .filter(|&n| !self.boundary_node_flags[n])
            .collect()
    }
}

pub fn detect_boundary(edge_mesh: &EdgeMesh<'_>) -> Result<BoundaryInfo> {
    let mut incidence = vec![0u32; edge_mesh.num_edges()];
    let mut internal = vec![false; edge_mesh.num_edges()];
    for (row, el) in edge_mesh.edgecon().iter().zip(edge_mesh.mesh().elements()) {
        for s in row {
            incidence[s.unsigned_abs() as usize - 1] += 1;
        }
        for &i in internal_local_edges(el.kind) {
            internal[row[i - 1].unsigned_abs() as usize - 1] = true;
        }
    }
    if let Some(e) = incidence.iter().position(|&c| c > 2) {
        return Err(Error::NonManifold(e + 1));
    }
    let boundary_edge_flags: Vec<bool> = incidence
        .iter()
        .zip(&internal)
        .map(|(&c, &inside)| c == 1 && !inside)
        .collect();
    let mut boundary_node_flags = vec![false; edge_mesh.mesh().num_nodes()];
    for (e, _) in boundary_edge_flags.iter().enumerate().filter(|(_, &b)| b) {
        let (a, b) = edge_mesh.edgenode(e + 1);
        boundary_node_flags[a] = true;
        boundary_node_flags[b] = true;
    }
    Ok(BoundaryInfo {
        boundary_edge_flags,
        boundary_node_flags,
    })
}
