//! Edge shape functions and their curls.
//!
//! Every basis function is written as `v_i = l_i (a_i grad(xi) + b_i grad(eta))`
//! with polynomial `a_i`, `b_i` in reference coordinates. Its scalar curl is
//! then `l_i (db_i/dxi - da_i/deta) / det J`, because
//! `grad(xi) x grad(eta) = det(Gamma) = 1 / det J`.

use super::geometry::{jacobian_at, JacobianData};
use crate::error::{Error, Result};
use crate::mesh::ElementKind;

pub const MAX_EDGES: usize = 12;

/// Reference coefficients `(a, b)` and reference curl `db/dxi - da/deta`
/// of each basis function with the length factor removed.
#[derive(Clone, Copy, Debug)]
pub struct RefBasis {
    pub n: usize,
    pub a: [f64; MAX_EDGES],
    pub b: [f64; MAX_EDGES],
    pub curl: [f64; MAX_EDGES],
}

pub fn reference_basis(kind: ElementKind, [xi, eta]: [f64; 2]) -> RefBasis {
    let mut r = RefBasis {
        n: kind.edges_per_element(),
        a: [0.0; MAX_EDGES],
        b: [0.0; MAX_EDGES],
        curl: [0.0; MAX_EDGES],
    };
    let mut set = |i: usize, a: f64, b: f64, c: f64| {
        r.a[i] = a;
        r.b[i] = b;
        r.curl[i] = c;
    };
    match kind {
        ElementKind::Quad4 => {
            set(0, 0.25 * (1.0 - eta), 0.0, 0.25);
            set(1, 0.25 * (1.0 + eta), 0.0, -0.25);
            set(2, 0.0, 0.25 * (1.0 - xi), -0.25);
            set(3, 0.0, 0.25 * (1.0 + xi), 0.25);
        }
        ElementKind::Tri3 => {
            set(0, -eta, xi, 2.0);
            set(1, -eta, xi - 1.0, 2.0);
            set(2, 1.0 - eta, xi, 2.0);
        }
        ElementKind::Tri6 => {
            // Whitney pieces of the three sides, scaled by the half-edge factors.
            let w12 = (-eta, xi);
            let w23 = (-eta, xi - 1.0);
            let w31 = (1.0 - eta, xi);
            let alpha = 1.0 - xi - eta;
            let fx = 4.0 * xi - 1.0;
            let fy = 4.0 * eta - 1.0;
            let fa = 4.0 * alpha - 1.0;
            set(0, fx * w12.0, fx * w12.1, 12.0 * xi - 2.0);
            set(1, fy * w12.0, fy * w12.1, 12.0 * eta - 2.0);
            set(2, fy * w23.0, fy * w23.1, 12.0 * eta - 2.0);
            set(3, fa * w23.0, fa * w23.1, 10.0 - 12.0 * xi - 12.0 * eta);
            set(4, fa * w31.0, fa * w31.1, 10.0 - 12.0 * xi - 12.0 * eta);
            set(5, fx * w31.0, fx * w31.1, 12.0 * xi - 2.0);
            set(6, 4.0 * eta * w31.0, 4.0 * eta * w31.1, 12.0 * eta - 4.0);
            set(7, 4.0 * xi * w23.0, 4.0 * xi * w23.1, 12.0 * xi - 4.0);
        }
        ElementKind::Quad9 => {
            let (xm, xp) = (xi - 0.5, xi + 0.5);
            let (ym, yp) = (eta - 0.5, eta + 0.5);
            // xi-directed functions on the rows eta = -1, 0, 1.
            set(0, -0.5 * eta * (eta - 1.0) * xm, 0.0, 0.5 * (2.0 * eta - 1.0) * xm);
            set(1, 0.5 * eta * (eta - 1.0) * xp, 0.0, -0.5 * (2.0 * eta - 1.0) * xp);
            set(2, (eta * eta - 1.0) * xm, 0.0, -2.0 * eta * xm);
            set(3, -(eta * eta - 1.0) * xp, 0.0, 2.0 * eta * xp);
            set(4, -0.5 * eta * (eta + 1.0) * xm, 0.0, 0.5 * (2.0 * eta + 1.0) * xm);
            set(5, 0.5 * eta * (eta + 1.0) * xp, 0.0, -0.5 * (2.0 * eta + 1.0) * xp);
            // eta-directed functions on the columns xi = -1, 0, 1.
            set(6, 0.0, -0.5 * xi * (xi - 1.0) * ym, -0.5 * (2.0 * xi - 1.0) * ym);
            set(7, 0.0, (xi * xi - 1.0) * ym, 2.0 * xi * ym);
            set(8, 0.0, -0.5 * xi * (xi + 1.0) * ym, -0.5 * (2.0 * xi + 1.0) * ym);
            set(9, 0.0, 0.5 * xi * (xi - 1.0) * yp, 0.5 * (2.0 * xi - 1.0) * yp);
            set(10, 0.0, -(xi * xi - 1.0) * yp, -2.0 * xi * yp);
            set(11, 0.0, 0.5 * xi * (xi + 1.0) * yp, 0.5 * (2.0 * xi + 1.0) * yp);
        }
    }
    r
}

/// Physical basis values and curls at one reference point.
#[derive(Clone, Copy, Debug)]
pub struct ShapeEval {
    pub n: usize,
    pub at_point: [f64; 2],
    pub jacobian: JacobianData,
    values: [[f64; 2]; MAX_EDGES],
    curls: [f64; MAX_EDGES],
}

impl ShapeEval {
    pub fn values(&self) -> &[[f64; 2]] {
        &self.values[..self.n]
    }

    pub fn curls(&self) -> &[f64] {
        &self.curls[..self.n]
    }
}

/// Evaluates the edge basis given precomputed Jacobian data.
pub fn eval_with_jacobian(kind: ElementKind, jd: &JacobianData, lengths: &[f64], pt: [f64; 2]) -> ShapeEval {
    let rb = reference_basis(kind, pt);
    let gx = jd.grad_xi();
    let ge = jd.grad_eta();
    let mut s = ShapeEval {
        n: rb.n,
        at_point: pt,
        jacobian: *jd,
        values: [[0.0; 2]; MAX_EDGES],
        curls: [0.0; MAX_EDGES],
    };
    for i in 0..rb.n {
        let l = lengths[i];
        s.values[i] = [
            l * (rb.a[i] * gx[0] + rb.b[i] * ge[0]),
            l * (rb.a[i] * gx[1] + rb.b[i] * ge[1]),
        ];
        s.curls[i] = l * rb.curl[i] / jd.det;
    }
    s
}

pub fn eval_shapes(kind: ElementKind, coords: &[[f64; 2]], lengths: &[f64], pt: [f64; 2]) -> Result<ShapeEval> {
    if lengths.len() != kind.edges_per_element() {
        return Err(Error::LengthMismatch {
            expected: kind.edges_per_element(),
            found: lengths.len(),
        });
    }
    let jd = jacobian_at(kind, coords, pt)?;
    Ok(eval_with_jacobian(kind, &jd, lengths, pt))
}

/// The curl row `B` at one point.
pub fn curl_row(kind: ElementKind, coords: &[[f64; 2]], lengths: &[f64], pt: [f64; 2]) -> Result<Vec<f64>> {
    Ok(eval_shapes(kind, coords, lengths, pt)?.curls().to_vec())
}
