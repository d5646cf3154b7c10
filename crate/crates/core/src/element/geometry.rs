//! Geometric (nodal Lagrange) maps from the reference element to physical space.

use crate::error::{Error, Result};
use crate::mesh::ElementKind;

/// Geometric shape function values and reference derivatives at one point.
#[derive(Clone, Copy, Debug)]
pub struct GeomShapes {
    pub n: usize,
    pub value: [f64; 9],
    pub d_xi: [f64; 9],
    pub d_eta: [f64; 9],
}

/// 1-D quadratic Lagrange basis on nodes -1, 0, 1 and its derivative.
fn lagrange3(s: f64) -> ([f64; 3], [f64; 3]) {
    (
        [0.5 * s * (s - 1.0), 1.0 - s * s, 0.5 * s * (s + 1.0)],
        [s - 0.5, -2.0 * s, s + 0.5],
    )
}

pub fn geom_shapes(kind: ElementKind, [xi, eta]: [f64; 2]) -> GeomShapes {
    let mut g = GeomShapes {
        n: kind.nodes_per_element(),
        value: [0.0; 9],
        d_xi: [0.0; 9],
        d_eta: [0.0; 9],
    };
    match kind {
        ElementKind::Tri3 => {
            g.value[..3].copy_from_slice(&[xi, eta, 1.0 - xi - eta]);
            g.d_xi[..3].copy_from_slice(&[1.0, 0.0, -1.0]);
            g.d_eta[..3].copy_from_slice(&[0.0, 1.0, -1.0]);
        }
        ElementKind::Quad4 => {
            const SIGNS: [(f64, f64); 4] = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];
            for (k, &(sx, sy)) in SIGNS.iter().enumerate() {
                g.value[k] = 0.25 * (1.0 + sx * xi) * (1.0 + sy * eta);
                g.d_xi[k] = 0.25 * sx * (1.0 + sy * eta);
                g.d_eta[k] = 0.25 * sy * (1.0 + sx * xi);
            }
        }
        ElementKind::Tri6 => {
            let (l1, l2, l3) = (xi, eta, 1.0 - xi - eta);
            g.value[..6].copy_from_slice(&[
                l1 * (2.0 * l1 - 1.0),
                l2 * (2.0 * l2 - 1.0),
                l3 * (2.0 * l3 - 1.0),
                4.0 * l1 * l2,
                4.0 * l2 * l3,
                4.0 * l3 * l1,
            ]);
            g.d_xi[..6].copy_from_slice(&[
                4.0 * l1 - 1.0,
                0.0,
                -(4.0 * l3 - 1.0),
                4.0 * l2,
                -4.0 * l2,
                4.0 * (l3 - l1),
            ]);
            g.d_eta[..6].copy_from_slice(&[
                0.0,
                4.0 * l2 - 1.0,
                -(4.0 * l3 - 1.0),
                4.0 * l1,
                4.0 * (l3 - l2),
                -4.0 * l1,
            ]);
        }
        ElementKind::Quad9 => {
            let (lx, dlx) = lagrange3(xi);
            let (ly, dly) = lagrange3(eta);
            for row in 0..3 {
                for col in 0..3 {
                    let k = 3 * row + col;
                    g.value[k] = lx[col] * ly[row];
                    g.d_xi[k] = dlx[col] * ly[row];
                    g.d_eta[k] = lx[col] * dly[row];
                }
            }
        }
    }
    g
}

/// Maps a reference point to physical coordinates.
pub fn map_point(kind: ElementKind, coords: &[[f64; 2]], pt: [f64; 2]) -> [f64; 2] {
    let g = geom_shapes(kind, pt);
    let mut p = [0.0; 2];
    for (k, c) in coords.iter().enumerate().take(g.n) {
        p[0] += g.value[k] * c[0];
        p[1] += g.value[k] * c[1];
    }
    p
}

/// Jacobian `J = [[dx/dxi, dy/dxi], [dx/deta, dy/deta]]` and its inverse.
///
/// `gamma = J^-1`, so `gamma[0][0] = dxi/dx`, `gamma[1][0] = dxi/dy`,
/// `gamma[0][1] = deta/dx`, `gamma[1][1] = deta/dy`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobianData {
    pub j: [[f64; 2]; 2],
    pub gamma: [[f64; 2]; 2],
    pub det: f64,
}

impl JacobianData {
    pub fn grad_xi(&self) -> [f64; 2] {
        [self.gamma[0][0], self.gamma[1][0]]
    }

    pub fn grad_eta(&self) -> [f64; 2] {
        [self.gamma[0][1], self.gamma[1][1]]
    }
}

/// Squared diameter of a point set.
pub fn diameter_sq(coords: &[[f64; 2]]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in coords.iter().enumerate() {
        for b in &coords[i + 1..] {
            d = d.max((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2));
        }
    }
    d
}

pub fn jacobian_at(kind: ElementKind, coords: &[[f64; 2]], pt: [f64; 2]) -> Result<JacobianData> {
    if coords.len() != kind.nodes_per_element() {
        return Err(Error::LengthMismatch {
            expected: kind.nodes_per_element(),
            found: coords.len(),
        });
    }
    let g = geom_shapes(kind, pt);
    let mut j = [[0.0; 2]; 2];
    for (k, c) in coords.iter().enumerate() {
        j[0][0] += g.d_xi[k] * c[0];
        j[0][1] += g.d_xi[k] * c[1];
        j[1][0] += g.d_eta[k] * c[0];
        j[1][1] += g.d_eta[k] * c[1];
    }
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if !(det.abs() >= 1e-14 * diameter_sq(coords)) {
        return Err(Error::SingularJacobian { det });
    }
    let inv = 1.0 / det;
    let gamma = [
        [j[1][1] * inv, -j[0][1] * inv],
        [-j[1][0] * inv, j[0][0] * inv],
    ];
    Ok(JacobianData { j, gamma, det })
}

/// True when a second-order element's extra nodes leave the affine (Tri6)
/// or bilinear (Quad9) positions implied by its corners.
pub fn is_curved(kind: ElementKind, coords: &[[f64; 2]]) -> bool {
    let tol = 1e-12 * diameter_sq(coords).sqrt();
    let mid = |a: usize, b: usize| [0.5 * (coords[a][0] + coords[b][0]), 0.5 * (coords[a][1] + coords[b][1])];
    let off = |p: [f64; 2], q: [f64; 2]| (p[0] - q[0]).hypot(p[1] - q[1]) > tol;
    match kind {
        ElementKind::Tri3 | ElementKind::Quad4 => false,
        ElementKind::Tri6 => [(3, 0, 1), (4, 1, 2), (5, 2, 0)]
            .iter()
            .any(|&(m, a, b)| off(coords[m], mid(a, b))),
        ElementKind::Quad9 => {
            let sides = [(1, 0, 2), (3, 0, 6), (5, 2, 8), (7, 6, 8)];
            let centre = [
                0.25 * (coords[0][0] + coords[2][0] + coords[6][0] + coords[8][0]),
                0.25 * (coords[0][1] + coords[2][1] + coords[6][1] + coords[8][1]),
            ];
            sides.iter().any(|&(m, a, b)| off(coords[m], mid(a, b))) || off(coords[4], centre)
        }
    }
}

/// Reference coordinates of the element nodes, in local order.
pub fn reference_nodes(kind: ElementKind) -> &'static [[f64; 2]] {
    match kind {
        ElementKind::Tri3 => &[[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]],
        ElementKind::Quad4 => &[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]],
        ElementKind::Tri6 => &[
            [1.0, 0.0],
            [0.0, 1.0],
            [0.0, 0.0],
            [0.5, 0.5],
            [0.0, 0.5],
            [0.5, 0.0],
        ],
        ElementKind::Quad9 => &[
            [-1.0, -1.0],
            [0.0, -1.0],
            [1.0, -1.0],
            [-1.0, 0.0],
            [0.0, 0.0],
            [1.0, 0.0],
            [-1.0, 1.0],
            [0.0, 1.0],
            [1.0, 1.0],
        ],
    }
}
