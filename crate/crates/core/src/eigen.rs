//! Dense generalized symmetric eigensolver for `K x = lambda M x`.
//!
//! `M = L L^T` is factored and the standard problem for `L^-1 K L^-T` is
//! solved with a dense self-adjoint eigensolver.

use faer::{Mat, MatRef, Side};

use crate::assembly::AssembledSystem;
use crate::error::{Error, Result};

/// Largest system handed to the dense solver.
pub const MAX_DENSE_DOFS: usize = 8000;
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;
pub const DEFAULT_CLUSTER_GAP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub zero_count: usize,
    pub zero_threshold: f64,
    pub clusters: Vec<Cluster>,
}

impl Spectrum {
    pub fn from_eigenvalues(eigenvalues: Vec<f64>, zero_tol: f64, cluster_gap: f64) -> Self {
        let zero_count = count_zeros(&eigenvalues, zero_tol);
        let clusters = cluster_multiplicities(&eigenvalues[zero_count..], cluster_gap);
        Self {
            eigenvalues,
            zero_count,
            zero_threshold: zero_tol,
            clusters,
        }
    }

    /// Eigenvalues above the zero threshold, ascending.
    pub fn nonzero(&self) -> &[f64] {
        &self.eigenvalues[self.zero_count..]
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.multiplicity).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Number of eigenvalues below `tau * lambda_max`.
pub fn count_zeros(sorted: &[f64], tau: f64) -> usize {
    let Some(&max) = sorted.last() else {
        return 0;
    };
    let cut = tau * max.abs();
    sorted.partition_point(|&v| v < cut)
}

/// Greedy grouping of ascending values: a value joins the current cluster
/// when it lies within `rel_gap` (relative) of its predecessor.
pub fn cluster_multiplicities(sorted: &[f64], rel_gap: f64) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    let mut sum = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        let joins = k > 0 && (v - sorted[k - 1]) <= rel_gap * sorted[k - 1].abs();
        match out.last_mut() {
            Some(c) if joins => {
                sum += v;
                c.multiplicity += 1;
                c.value = sum / c.multiplicity as f64;
            }
            _ => {
                sum = v;
                out.push(Cluster {
                    value: v,
                    multiplicity: 1,
                });
            }
        }
    }
    out
}

/// Eigenpairs of a dense pencil. Columns of the vector matrix are
/// M-orthonormal generalized eigenvectors.
#[derive(Debug)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: Option<Mat<f64>>,
}

fn reduce(k: MatRef<'_, f64>, m: MatRef<'_, f64>) -> Result<(Mat<f64>, Mat<f64>)> {
    let llt = m.llt(Side::Lower).map_err(|_| Error::MassNotPd)?;
    let l = llt.L().to_owned();
    let mut x = k.to_owned();
    l.as_ref().solve_lower_triangular_in_place(x.as_mut());
    let mut y = x.transpose().to_owned();
    drop(x);
    l.as_ref().solve_lower_triangular_in_place(y.as_mut());
    Ok((y, l))
}

/// Solves a dense generalized problem; `k` and `m` must be symmetric.
pub fn solve_dense(k: MatRef<'_, f64>, m: MatRef<'_, f64>, vectors: bool) -> Result<EigenPairs> {
    let n = k.nrows();
    if n == 0 {
        return Err(Error::EmptySystem);
    }
    if k.ncols() != n || m.nrows() != n || m.ncols() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: m.nrows(),
        });
    }
    if n > MAX_DENSE_DOFS {
        return Err(Error::TooLarge(n));
    }
    let (a, l) = reduce(k, m)?;
    let failed = |_| Error::InvalidParameter("symmetric eigensolver did not converge".into());
    if !vectors {
        let values = a.self_adjoint_eigenvalues(Side::Lower).map_err(failed)?;
        return Ok(EigenPairs { values, vectors: None });
    }
    let evd = a.self_adjoint_eigen(Side::Lower).map_err(failed)?;
    let values: Vec<f64> = evd.S().column_vector().iter().copied().collect();
    let mut z = evd.U().to_owned();
    l.as_ref().transpose().solve_upper_triangular_in_place(z.as_mut());
    Ok(EigenPairs {
        values,
        vectors: Some(z),
    })
}

/// Full spectrum of an assembled system.
pub fn solve_gevp(system: &AssembledSystem, zero_tol: f64, cluster_gap: f64) -> Result<Spectrum> {
    let n = system.n_free();
    if n > MAX_DENSE_DOFS {
        return Err(Error::TooLarge(n));
    }
    let k = system.k.to_dense();
    let m = system.m.to_dense();
    let pairs = solve_dense(k.as_ref(), m.as_ref(), false)?;
    Ok(Spectrum::from_eigenvalues(pairs.values, zero_tol, cluster_gap))
}

/// Eigenvalues and M-orthonormal eigenvectors of an assembled system.
pub fn solve_gevp_pairs(system: &AssembledSystem) -> Result<EigenPairs> {
    let n = system.n_free();
    if n > MAX_DENSE_DOFS {
        return Err(Error::TooLarge(n));
    }
    let k = system.k.to_dense();
    let m = system.m.to_dense();
    solve_dense(k.as_ref(), m.as_ref(), true)
}
