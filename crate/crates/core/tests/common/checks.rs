//! Property checks shared by the proptest suite and the acceptance run.

use edgefem::assembly::{assemble, discrete_gradient, AssembledSystem, MaterialParams};
use edgefem::convert::{internal_local_edges, local_edges, node_to_edge};
use edgefem::eigen::{solve_dense, solve_gevp, solve_gevp_pairs, DEFAULT_CLUSTER_GAP, DEFAULT_ZERO_TOL};
use edgefem::element::quadrature::gauss_legendre;
use edgefem::element::{eval_shapes, jacobian_at, reference_nodes};
use edgefem::mesh::{detect_boundary, parse_mesh, write_mesh, NodalMesh};
use faer::Mat;
use proptest::prelude::*;

use super::rotate;

pub type Check = Result<(), TestCaseError>;

fn system(mesh: &NodalMesh) -> AssembledSystem {
    let em = node_to_edge(mesh).unwrap();
    let b = detect_boundary(&em).unwrap();
    assemble(&em, &MaterialParams::default(), &b).unwrap()
}

pub fn has_free_edges(mesh: &NodalMesh) -> bool {
    let em = node_to_edge(mesh).unwrap();
    !detect_boundary(&em).unwrap().interior_edges().is_empty()
}

/// Meshes with at least one free edge.
pub fn arb_solvable() -> impl Strategy<Value = NodalMesh> {
    super::arb_mesh().prop_filter("needs free edges", has_free_edges)
}

/// Local edges on the element boundary with their reference endpoints.
fn traced_edges(mesh: &NodalMesh, e: usize) -> Vec<(usize, [f64; 2], [f64; 2])> {
    let kind = mesh.elements()[e].kind;
    let refs = reference_nodes(kind);
    local_edges(kind)
        .iter()
        .enumerate()
        .filter(|(i, _)| !internal_local_edges(kind).contains(&(i + 1)))
        .map(|(i, &(a, b))| (i, refs[a - 1], refs[b - 1]))
        .collect()
}

fn sorted_spectrum(mesh: &NodalMesh) -> Vec<f64> {
    solve_gevp(&system(mesh), DEFAULT_ZERO_TOL, DEFAULT_CLUSTER_GAP).unwrap().eigenvalues
}

fn same_spectrum(a: &[f64], b: &[f64], tol: f64) -> Check {
    prop_assert_eq!(a.len(), b.len());
    let scale = a.last().unwrap().abs();
    for (x, y) in a.iter().zip(b) {
        // Zero modes are compared on the scale of the largest eigenvalue.
        let denom = if x.abs() < 1e-8 * scale { scale } else { x.abs() };
        prop_assert!((x - y).abs() <= tol * denom, "{} vs {}", x, y);
    }
    Ok(())
}

/// The tangential line integral of basis i along boundary edge j is
/// l_j when i == j and zero otherwise.
pub fn tangential_trace_duality(m: &NodalMesh) -> Check {
    let em = node_to_edge(m).unwrap();
    let (s, w) = gauss_legendre(6);
    for e in 0..m.num_elements() {
        let kind = m.elements()[e].kind;
        let coords = m.element_coords(e);
        let lengths = em.element_lengths(e);
        for (j, pa, pb) in traced_edges(m, e) {
            let mut integral = vec![0.0; lengths.len()];
            for (&t, &wt) in s.iter().zip(&w) {
                let u = 0.5 * (t + 1.0);
                let pt = [pa[0] + u * (pb[0] - pa[0]), pa[1] + u * (pb[1] - pa[1])];
                let ev = eval_shapes(kind, &coords, &lengths, pt).unwrap();
                // dx/du along the mapped edge.
                let jd = ev.jacobian;
                let d = [pb[0] - pa[0], pb[1] - pa[1]];
                let dx = [d[0] * jd.j[0][0] + d[1] * jd.j[1][0], d[0] * jd.j[0][1] + d[1] * jd.j[1][1]];
                for (i, v) in ev.values().iter().enumerate() {
                    integral[i] += 0.5 * wt * (v[0] * dx[0] + v[1] * dx[1]);
                }
            }
            for (i, &val) in integral.iter().enumerate() {
                let want = if i == j { lengths[i] } else { 0.0 };
                prop_assert!(
                    (val - want).abs() <= 1e-12 * lengths[j].max(1.0),
                    "element {} edge {} basis {}: {}",
                    e,
                    j,
                    i,
                    val
                );
            }
        }
    }
    Ok(())
}

/// Analytic curl against central differences of the basis at a reference point.
pub fn curl_matches_finite_differences(m: &NodalMesh, pick: usize, u: f64, v: f64) -> Check {
    let em = node_to_edge(m).unwrap();
    let e = pick % m.num_elements();
    let kind = m.elements()[e].kind;
    let coords = m.element_coords(e);
    let lengths = em.element_lengths(e);
    let pt = if kind.is_triangle() { [u, v] } else { [2.0 * u - 0.4, 2.0 * v - 0.4] };
    let ev = eval_shapes(kind, &coords, &lengths, pt).unwrap();
    let h = 1e-6;
    let at = |p: [f64; 2]| eval_shapes(kind, &coords, &lengths, p).unwrap();
    let (xp, xm) = (at([pt[0] + h, pt[1]]), at([pt[0] - h, pt[1]]));
    let (yp, ym) = (at([pt[0], pt[1] + h]), at([pt[0], pt[1] - h]));
    let g = ev.jacobian.gamma;
    let scale = ev.curls().iter().fold(0.0f64, |a, c| a.max(c.abs()));
    for i in 0..ev.n {
        let d_xi = [
            (xp.values()[i][0] - xm.values()[i][0]) / (2.0 * h),
            (xp.values()[i][1] - xm.values()[i][1]) / (2.0 * h),
        ];
        let d_eta = [
            (yp.values()[i][0] - ym.values()[i][0]) / (2.0 * h),
            (yp.values()[i][1] - ym.values()[i][1]) / (2.0 * h),
        ];
        // d/dx = g00 d/dxi + g01 d/deta, d/dy = g10 d/dxi + g11 d/deta.
        let dvy_dx = g[0][0] * d_xi[1] + g[0][1] * d_eta[1];
        let dvx_dy = g[1][0] * d_xi[0] + g[1][1] * d_eta[0];
        let fd = dvy_dx - dvx_dy;
        prop_assert!(
            (fd - ev.curls()[i]).abs() <= 1e-6 * scale,
            "basis {}: fd {} analytic {}",
            i,
            fd,
            ev.curls()[i]
        );
    }
    Ok(())
}

/// K G = 0 for the discrete gradient of every interior node.
pub fn stiffness_annihilates_gradients(m: &NodalMesh) -> Check {
    let em = node_to_edge(m).unwrap();
    let b = detect_boundary(&em).unwrap();
    let sys = assemble(&em, &MaterialParams::default(), &b).unwrap();
    let g = discrete_gradient(&em, &b).unwrap();
    prop_assert_eq!(g.n_rows, sys.n_free());
    let knorm = sys.k.norm_inf();
    for c in 0..g.n_cols() {
        let col = g.column_dense(c);
        let gnorm = col.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let kg = sys.k.mul_vec(&col);
        let r = kg.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        prop_assert!(r <= 1e-10 * knorm * gnorm, "column {}: {}", c, r);
    }
    Ok(())
}

pub fn spectrum_is_invariant_under_renumbering(m: &NodalMesh, perm: &[usize], order: &[usize]) -> Check {
    let shuffled = m.permuted(perm, order).unwrap();
    same_spectrum(&sorted_spectrum(m), &sorted_spectrum(&shuffled), 1e-9)
}

pub fn spectrum_is_invariant_under_rotation(m: &NodalMesh, theta: f64) -> Check {
    let rotated = m.map_coords(rotate(theta));
    same_spectrum(&sorted_spectrum(m), &sorted_spectrum(&rotated), 1e-9)
}

/// ||K x - lambda M x|| small relative to the operator scale.
pub fn eigenpair_residuals(m: &NodalMesh) -> Check {
    let sys = system(m);
    let pairs = solve_gevp_pairs(&sys).unwrap();
    let x = pairs.vectors.unwrap();
    let (kn, mn) = (sys.k.norm_inf(), sys.m.norm_inf());
    for (c, &lam) in pairs.values.iter().enumerate() {
        let xc: Vec<f64> = (0..x.nrows()).map(|r| x[(r, c)]).collect();
        let kx = sys.k.mul_vec(&xc);
        let mx = sys.m.mul_vec(&xc);
        let res = kx.iter().zip(&mx).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
        let xn = xc.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!(res <= 1e-8 * (kn + lam.abs() * mn) * xn, "pair {}: residual {}", c, res);
    }
    Ok(())
}

/// Solving with K + M shifts every eigenvalue by one.
pub fn unit_shift_moves_every_eigenvalue(m: &NodalMesh) -> Check {
    let sys = system(m);
    let k = sys.k.to_dense();
    let mm = sys.m.to_dense();
    let shifted = Mat::from_fn(k.nrows(), k.ncols(), |i, j| k[(i, j)] + mm[(i, j)]);
    let base = solve_dense(k.as_ref(), mm.as_ref(), false).unwrap().values;
    let moved = solve_dense(shifted.as_ref(), mm.as_ref(), false).unwrap().values;
    for (a, b) in base.iter().zip(&moved) {
        prop_assert!((a + 1.0 - b).abs() <= 1e-9 * (a + 1.0).abs(), "{} + 1 vs {}", a, b);
    }
    Ok(())
}

pub fn write_then_parse_is_identity(m: &NodalMesh) -> Check {
    let text = write_mesh(m);
    let back = parse_mesh(&text).unwrap();
    prop_assert_eq!(&back, m);
    prop_assert_eq!(write_mesh(&back), text);
    Ok(())
}

pub fn jacobian_is_positive(m: &NodalMesh) -> Check {
    for e in 0..m.num_elements() {
        let kind = m.elements()[e].kind;
        let coords = m.element_coords(e);
        for &p in reference_nodes(kind) {
            prop_assert!(jacobian_at(kind, &coords, p).unwrap().det > 0.0, "element {}", e);
        }
    }
    Ok(())
}
