//! Quadrature on the reference square `[-1, 1]^2` and the unit triangle.

use crate::mesh::ElementKind;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
    /// Total polynomial degree integrated exactly.
    pub degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ([f64; 2], f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }
}

/// `n`-point Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one point");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-type initial guess, then Newton on P_n.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            dp = 1.0;
            z = 0.0;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// Tensor-product Gauss rule with `n` points per direction on `[-1, 1]^2`.
pub fn gauss_square(n: usize) -> QuadratureRule {
    let (x, w) = gauss_legendre(n);
    let mut points = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            points.push([x[i], x[j]]);
            weights.push(w[i] * w[j]);
        }
    }
    QuadratureRule {
        points,
        weights,
        degree: 2 * n - 1,
    }
}

/// Builds a triangle rule from barycentric orbits given with unit total weight.
fn symmetric_triangle(orbits: &[(&[[f64; 3]], f64)], degree: usize) -> QuadratureRule {
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for &(bary, w) in orbits {
        for b in bary {
            points.push([b[0], b[1]]);
            weights.push(0.5 * w);
        }
    }
    QuadratureRule {
        points,
        weights,
        degree,
    }
}

fn orbit3(a: f64) -> [[f64; 3]; 3] {
    let c = 1.0 - 2.0 * a;
    [[a, a, c], [a, c, a], [c, a, a]]
}

fn orbit6(a: f64, b: f64, c: f64) -> [[f64; 3]; 6] {
    [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
}

/// Edge-midpoint rule, degree 2.
pub fn triangle_midpoints() -> QuadratureRule {
    symmetric_triangle(&[(&orbit3(0.5), 1.0 / 3.0)], 2)
}

/// Seven-point rule, degree 5.
pub fn triangle_7() -> QuadratureRule {
    let s = 15f64.sqrt();
    let centre = [[1.0 / 3.0; 3]];
    symmetric_triangle(
        &[
            (&centre, 9.0 / 40.0),
            (&orbit3((6.0 - s) / 21.0), (155.0 - s) / 1200.0),
            (&orbit3((6.0 + s) / 21.0), (155.0 + s) / 1200.0),
        ],
        5,
    )
}

/// Twelve-point rule, degree 6.
pub fn triangle_12() -> QuadratureRule {
    symmetric_triangle(
        &[
            (&orbit3(0.249286745170910), 0.116786275726379),
            (&orbit3(0.063089014491502), 0.050844906370207),
            (
                &orbit6(0.053145049844817, 0.310352451033784, 0.636502499121399),
                0.082851075618374,
            ),
        ],
        6,
    )
}

/// Collapsed Gauss rule on the triangle, exact to degree `2n - 2`.
pub fn triangle_collapsed(n: usize) -> QuadratureRule {
    let (x, w) = gauss_legendre(n);
    let mut points = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for i in 0..n {
        let u = 0.5 * (x[i] + 1.0);
        for j in 0..n {
            let v = 0.5 * (x[j] + 1.0);
            points.push([u, v * (1.0 - u)]);
            weights.push(0.25 * w[i] * w[j] * (1.0 - u));
        }
    }
    QuadratureRule {
        points,
        weights,
        degree: 2 * n - 2,
    }
}

/// Default element-integration rule.
pub fn quadrature_for(kind: ElementKind, curved: bool) -> QuadratureRule {
    match (kind, curved) {
        (ElementKind::Quad4, _) => gauss_square(2),
        (ElementKind::Tri3, _) => triangle_midpoints(),
        (ElementKind::Quad9, false) => gauss_square(4),
        (ElementKind::Quad9, true) => gauss_square(5),
        (ElementKind::Tri6, false) => triangle_7(),
        (ElementKind::Tri6, true) => triangle_12(),
    }
}

/// A rule of at least twice the default degree, used for exactness checks.
pub fn refined_quadrature(kind: ElementKind, curved: bool) -> QuadratureRule {
    let base = quadrature_for(kind, curved).degree;
    if kind.is_triangle() {
        triangle_collapsed(base + 2)
    } else {
        gauss_square(base + 1)
    }
}
