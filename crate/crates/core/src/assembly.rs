//! Stiffness and mass assembly over edge degrees of freedom.

use rayon::prelude::*;

use crate::convert::EdgeMesh;
use crate::element::geometry::jacobian_at;
use crate::element::quadrature::{quadrature_for, refined_quadrature, QuadratureRule};
use crate::element::{eval_with_jacobian, is_curved};
use crate::error::{Error, Result};
use crate::mesh::BoundaryInfo;
use crate::sparse::SparseSym;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaterialParams {
    pub eps_r: f64,
    pub mu_r: f64,
}

impl Default for MaterialParams {
    fn default() -> Self {
        Self { eps_r: 1.0, mu_r: 1.0 }
    }
}

impl MaterialParams {
    pub fn new(eps_r: f64, mu_r: f64) -> Result<Self> {
        if !(eps_r > 0.0 && mu_r > 0.0 && eps_r.is_finite() && mu_r.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "material parameters must be positive, got eps_r = {eps_r}, mu_r = {mu_r}"
            )));
        }
        Ok(Self { eps_r, mu_r })
    }
}

/// Which quadrature the element integrals use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QuadratureChoice {
    #[default]
    Standard,
    /// At least double the standard degree; for exactness checks.
    Refined,
}

/// Dense element matrices in local edge order, orientation signs applied.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementMatrices {
    pub n: usize,
    pub k: Vec<f64>,
    pub m: Vec<f64>,
}

impl ElementMatrices {
    pub fn k(&self, i: usize, j: usize) -> f64 {
        self.k[i * self.n + j]
    }

    pub fn m(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.n + j]
    }
}

fn rule_for(edge_mesh: &EdgeMesh<'_>, element: usize, choice: QuadratureChoice) -> QuadratureRule {
    let mesh = edge_mesh.mesh();
    let kind = mesh.elements()[element].kind;
    let curved = is_curved(kind, &mesh.element_coords(element));
    match choice {
        QuadratureChoice::Standard => quadrature_for(kind, curved),
        QuadratureChoice::Refined => refined_quadrature(kind, curved),
    }
}

/// Element matrices with an explicit quadrature rule.
pub fn element_matrices_with_rule(
    edge_mesh: &EdgeMesh<'_>,
    element: usize,
    materials: &MaterialParams,
    rule: &QuadratureRule,
) -> Result<ElementMatrices> {
    let mesh = edge_mesh.mesh();
    let kind = mesh.elements()[element].kind;
    let coords = mesh.element_coords(element);
    let lengths = edge_mesh.element_lengths(element);
    let n = kind.edges_per_element();
    let mut k = vec![0.0; n * n];
    let mut m = vec![0.0; n * n];
    let nu = 1.0 / materials.mu_r;
    for (pt, w) in rule.iter() {
        let jd = jacobian_at(kind, &coords, pt)?;
        let s = eval_with_jacobian(kind, &jd, &lengths, pt);
        let dv = w * jd.det.abs();
        let (curls, vals) = (s.curls(), s.values());
        for i in 0..n {
            for j in 0..n {
                k[i * n + j] += nu * curls[i] * curls[j] * dv;
                m[i * n + j] += materials.eps_r * (vals[i][0] * vals[j][0] + vals[i][1] * vals[j][1]) * dv;
            }
        }
    }
    let signs: Vec<f64> = edge_mesh
        .element_edges(element)
        .iter()
        .map(|&s| if s < 0 { -1.0 } else { 1.0 })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let s = signs[i] * signs[j];
            k[i * n + j] *= s;
            m[i * n + j] *= s;
        }
    }
    Ok(ElementMatrices { n, k, m })
}

pub fn element_matrices(
    edge_mesh: &EdgeMesh<'_>,
    element: usize,
    materials: &MaterialParams,
) -> Result<ElementMatrices> {
    let rule = rule_for(edge_mesh, element, QuadratureChoice::Standard);
    element_matrices_with_rule(edge_mesh, element, materials, &rule)
}

/// Global stiffness and mass on the free (non-boundary) edges.
#[derive(Clone, Debug)]
pub struct AssembledSystem {
    pub k: SparseSym,
    pub m: SparseSym,
    /// Indexed by global edge minus one; `None` for eliminated edges.
    pub free_dof_map: Vec<Option<usize>>,
    /// 1-based global edge of each free index, ascending.
    pub free_edges: Vec<usize>,
}

impl AssembledSystem {
    pub fn n_free(&self) -> usize {
        self.free_edges.len()
    }
}

pub fn assemble(edge_mesh: &EdgeMesh<'_>, materials: &MaterialParams, boundary: &BoundaryInfo) -> Result<AssembledSystem> {
    assemble_with(edge_mesh, materials, boundary, QuadratureChoice::Standard)
}

pub fn assemble_with(
    edge_mesh: &EdgeMesh<'_>,
    materials: &MaterialParams,
    boundary: &BoundaryInfo,
    choice: QuadratureChoice,
) -> Result<AssembledSystem> {
    let n_edges = edge_mesh.num_edges();
    if boundary.boundary_edge_flags.len() != n_edges {
        return Err(Error::LengthMismatch {
            expected: n_edges,
            found: boundary.boundary_edge_flags.len(),
        });
    }
    let mut free_dof_map = vec![None; n_edges];
    let mut free_edges = Vec::new();
    for e in 1..=n_edges {
        if !boundary.is_boundary_edge(e) {
            free_dof_map[e - 1] = Some(free_edges.len());
            free_edges.push(e);
        }
    }
    if free_edges.is_empty() {
        return Err(Error::EmptySystem);
    }

    // Local position and free index of each element's surviving edges.
    let local: Vec<Vec<(usize, usize)>> = edge_mesh
        .edgecon()
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter_map(|(i, s)| free_dof_map[s.unsigned_abs() as usize - 1].map(|g| (i, g)))
                .collect()
        })
        .collect();
    let cliques: Vec<Vec<usize>> = local.iter().map(|l| l.iter().map(|&(_, g)| g).collect()).collect();
    let n_free = free_edges.len();
    let mut k = SparseSym::from_cliques(n_free, cliques.iter().map(Vec::as_slice));
    let mut m = k.clone();

    let mats: Vec<ElementMatrices> = (0..edge_mesh.mesh().num_elements())
        .into_par_iter()
        .map(|e| {
            let rule = rule_for(edge_mesh, e, choice);
            element_matrices_with_rule(edge_mesh, e, materials, &rule)
        })
        .collect::<Result<_>>()?;

    // Sequential scatter in element order keeps sums bit-reproducible.
    for (em, l) in mats.iter().zip(&local) {
        for &(i, gi) in l {
            for &(j, gj) in l {
                k.add(gi, gj, em.k(i, j));
                m.add(gi, gj, em.m(i, j));
            }
        }
    }
    Ok(AssembledSystem {
        k,
        m,
        free_dof_map,
        free_edges,
    })
}

/// Sparse discrete gradient: columns are interior nodes, rows free edges.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteGradient {
    pub n_rows: usize,
    /// 0-based interior node of each column.
    pub nodes: Vec<usize>,
    /// Per column: `(free row, value)` sorted by row.
    pub columns: Vec<Vec<(usize, f64)>>,
}

impl DiscreteGradient {
    pub fn n_cols(&self) -> usize {
        self.nodes.len()
    }

    pub fn column_dense(&self, c: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.n_rows];
        for &(r, x) in &self.columns[c] {
            v[r] = x;
        }
        v
    }
}

/// Edge coefficients of the gradients of interior nodal hat functions.
///
/// The edge degree of freedom is the mean tangential component, so an edge
/// starting at the node gets `+1 / l_e` and one ending there `-1 / l_e`
/// (the overall sign is immaterial for the null space).
pub fn discrete_gradient(edge_mesh: &EdgeMesh<'_>, boundary: &BoundaryInfo) -> Result<DiscreteGradient> {
    let mesh = edge_mesh.mesh();
    if !mesh.is_first_order() {
        return Err(Error::WrongOrder);
    }
    let n_edges = edge_mesh.num_edges();
    let mut free = vec![None; n_edges];
    let mut n_rows = 0;
    for e in 1..=n_edges {
        if !boundary.is_boundary_edge(e) {
            free[e - 1] = Some(n_rows);
            n_rows += 1;
        }
    }
    let nodes = boundary.interior_nodes();
    let reg = edge_mesh.registry();
    let columns = nodes
        .iter()
        .map(|&node| {
            let mut col: Vec<(usize, f64)> = reg
                .slots(node)
                .filter_map(|s| {
                    let e = s.edge.unsigned_abs() as usize;
                    let sign = if s.edge > 0 { 1.0 } else { -1.0 };
                    free[e - 1].map(|r| (r, sign / edge_mesh.edge_length(e)))
                })
                .collect();
            col.sort_by_key(|&(r, _)| r);
            col
        })
        .collect();
    Ok(DiscreteGradient { n_rows, nodes, columns })
}
