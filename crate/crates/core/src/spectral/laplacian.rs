use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use super::spectrum_cube_layer;
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::rational::{self, Rational};

pub const MAX_LAPLACIAN_VERTICES: usize = 512;
const EIGEN_EPS: f64 = 1e-14;
const EIGEN_MAX_ITER: usize = 100_000;

/// Largest Laplacian eigenvalue; some eigenvalue lies within `error_bound`
/// of `value`, certified by the residual of the returned eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaMax {
    pub value: f64,
    pub error_bound: f64,
}

pub fn laplacian_lambda_max(g: &Graph) -> Result<LambdaMax> {
    let n = g.n();
    if n > MAX_LAPLACIAN_VERTICES {
        return Err(Error::SizeLimit { what: "laplacian eigenvalues", limit: MAX_LAPLACIAN_VERTICES, actual: n });
    }
    let mut l = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
    }
    for v in 0..n {
        l[(v, v)] = g.degree(v) as f64;
    }
    let eig = SymmetricEigen::try_new(l.clone(), EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::Verification("symmetric eigenvalue iteration did not converge".into()))?;
    let (idx, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("graph has a vertex");
    let vec: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
    let norm = vec.norm();
    let residual = (&l * &vec - &vec * value).norm() / norm;
    let scale = 2.0 * g.max_degree() as f64;
    let error_bound = residual + (n as f64) * f64::EPSILON * scale.max(1.0);
    Ok(LambdaMax { value, error_bound })
}

/// Upper bound `(|V|/|E|)·λ_max/4` on the bipartite density.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpectralBound {
    Exact {
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
    Numeric {
        value: f64,
        error_bound: f64,
    },
}

impl SpectralBound {
    pub fn as_f64(&self) -> f64 {
        match self {
            SpectralBound::Exact { value } => rational::to_f64(value),
            SpectralBound::Numeric { value, .. } => *value,
        }
    }

    /// Whether `b` could satisfy the bound, allowing for the numeric error.
    pub fn admits(&self, b: &Rational) -> bool {
        match self {
            SpectralBound::Exact { value } => b <= value,
            SpectralBound::Numeric { value, error_bound } => rational::to_f64(b) <= value + error_bound + 1e-12,
        }
    }
}

/// Exact for graphs generated as a cube layer, numeric otherwise.
pub fn spectral_density_bound(g: &Graph) -> Result<SpectralBound> {
    g.require_edges()?;
    if let Some(&Family::CubeLayer(n, k)) = g.family() {
        let s = spectrum_cube_layer(n, k)?;
        return Ok(SpectralBound::Exact { value: s.density_bound });
    }
    let lm = laplacian_lambda_max(g)?;
    let factor = g.n() as f64 / (4.0 * g.m() as f64);
    Ok(SpectralBound::Numeric { value: factor * lm.value, error_bound: factor * lm.error_bound })
}
