//! Block band matrix and GUE samplers with their covariance profiles.
//!
//! The ensemble is an n×n lattice of W×W blocks; the entry H_{jk,αγ} is a
//! complex Gaussian whose variance is the (j,k) entry of a small covariance
//! matrix J built from the discrete path Laplacian Δ:
//!   J = I/W + β Δ/W^p,   p = 1 or 2.
//! Row sums of J stay at 1/W under the Neumann convention, so the total
//! variance per row is 1 and the spectrum follows the semicircle on [−2, 2].

use crate::error::{CoreError, Result};
use crate::linalg::CMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Exponent of W dividing the Laplacian coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CovarianceLaw {
    /// J = I/W + β Δ/W
    DeltaOverW,
    /// J = I/W + β Δ/W²
    DeltaOverW2,
}

/// Boundary convention for the path Laplacian on {1, …, n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    /// Graph Laplacian of the path; rows sum to zero.
    Neumann,
    /// Degree 2 everywhere, as if the chain continued into absorbing sites.
    Dirichlet,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockBandModel {
    pub n: usize,
    pub w: usize,
    pub beta: f64,
    pub law: CovarianceLaw,
    pub boundary: Boundary,
}

impl BlockBandModel {
    pub fn new(
        n: usize,
        w: usize,
        beta: f64,
        law: CovarianceLaw,
        boundary: Boundary,
    ) -> Result<Self> {
        if n == 0 || w == 0 {
            return Err(CoreError::InvalidParameter("n and W must be positive".into()));
        }
        if beta < 0.0 {
            return Err(CoreError::InvalidParameter("beta must be nonnegative".into()));
        }
        let model = BlockBandModel { n, w, beta, law, boundary };
        model.covariance()?; // positive definiteness gate
        Ok(model)
    }

    pub fn matrix_size(&self) -> usize {
        self.n * self.w
    }

    /// Negative-semidefinite path Laplacian under the chosen boundary convention.
    fn laplacian(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        let mut d = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut deg = 0.0;
            if j > 0 {
                d[j][j - 1] = 1.0;
                deg += 1.0;
            }
            if j + 1 < n {
                d[j][j + 1] = 1.0;
                deg += 1.0;
            }
            d[j][j] = match self.boundary {
                Boundary::Neumann => -deg,
                Boundary::Dirichlet => -2.0,
            };
        }
        d
    }

    /// The n×n covariance profile J; errors unless J is positive definite.
    pub fn covariance(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.n;
        let w = self.w as f64;
        let scale = match self.law {
            CovarianceLaw::DeltaOverW => self.beta / w,
            CovarianceLaw::DeltaOverW2 => self.beta / (w * w),
        };
        let lap = self.laplacian();
        let mut j = vec![vec![0.0; n]; n];
        for r in 0..n {
            for c in 0..n {
                j[r][c] = scale * lap[r][c] + if r == c { 1.0 / w } else { 0.0 };
            }
        }
        if !is_positive_definite(&j) {
            return Err(CoreError::CovarianceNotPositive);
        }
        Ok(j)
    }
}

/// In-place real Cholesky test.
fn is_positive_definite(a: &[Vec<f64>]) -> bool {
    let n = a.len();
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return false;
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    true
}

fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Hermitian draw of the block band ensemble. Entry (jα, kγ) with j<k is a
/// complex Gaussian with E|·|² = J_{jk}; diagonal blocks are Hermitian with
/// the matching variances and real N(0, J_jj) diagonal.
pub fn sample_block_rbm(model: &BlockBandModel, rng: &mut impl Rng) -> Result<CMatrix> {
    let j = model.covariance()?;
    let (n, w) = (model.n, model.w);
    let size = n * w;
    let mut h = CMatrix::zeros(size, size);
    for bj in 0..n {
        for bk in bj..n {
            let var = j[bj][bk];
            if var == 0.0 {
                continue;
            }
            let s = (var / 2.0).sqrt();
            for a in 0..w {
                let row = bj * w + a;
                let start_c = if bj == bk { a } else { 0 };
                for g in start_c..w {
                    let col = bk * w + g;
                    if row == col {
                        h[(row, col)] = Complex64::new(var.sqrt() * normal(rng), 0.0);
                    } else {
                        let z = Complex64::new(s * normal(rng), s * normal(rng));
                        h[(row, col)] = z;
                        h[(col, row)] = z.conj();
                    }
                }
            }
        }
    }
    Ok(h)
}

/// GUE normalized so the spectrum fills [−2, 2]: E|H_ij|² = 1/N.
pub fn sample_gue(n: usize, rng: &mut impl Rng) -> CMatrix {
    let model = BlockBandModel {
        n: 1,
        w: n,
        beta: 0.0,
        law: CovarianceLaw::DeltaOverW2,
        boundary: Boundary::Neumann,
    };
    sample_block_rbm(&model, rng).expect("single-site covariance is trivially positive")
}

/// Wigner semicircle density (2π)⁻¹ √(4 − E²); zero outside [−2, 2].
pub fn semicircle_density(e: f64) -> f64 {
    if e.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - e * e).sqrt() / (2.0 * std::f64::consts::PI)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rngstream::stream;

    #[test]
    fn covariance_single_site() {
        let m = BlockBandModel::new(1, 16, 1.0, CovarianceLaw::DeltaOverW2, Boundary::Neumann)
            .unwrap();
        let j = m.covariance().unwrap();
        assert_eq!(j.len(), 1);
        assert!((j[0][0] - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn covariance_two_site_hand_assembled() {
        // Δ = [[-1, 1], [1, -1]] so J = [[0.1 - 0.01, 0.01], [0.01, 0.1 - 0.01]]
        let m = BlockBandModel::new(2, 10, 1.0, CovarianceLaw::DeltaOverW2, Boundary::Neumann)
            .unwrap();
        let j = m.covariance().unwrap();
        assert!((j[0][0] - 0.09).abs() < 1e-15);
        assert!((j[0][1] - 0.01).abs() < 1e-15);
        assert!((j[1][0] - 0.01).abs() < 1e-15);
        assert!((j[1][1] - 0.09).abs() < 1e-15);
    }

    #[test]
    fn covariance_row_sums_neumann() {
        let m = BlockBandModel::new(7, 12, 0.9, CovarianceLaw::DeltaOverW2, Boundary::Neumann)
            .unwrap();
        let j = m.covariance().unwrap();
        for row in &j {
            let s: f64 = row.iter().sum();
            assert!((s - 1.0 / 12.0).abs() < 1e-14);
        }
    }

    #[test]
    fn covariance_rejects_large_beta() {
        // beta/W f_min = 1/W - 4 beta/W^2 < 0 for beta > W/4
        let res = BlockBandModel::new(6, 8, 3.0, CovarianceLaw::DeltaOverW2, Boundary::Neumann);
        assert!(matches!(res, Err(CoreError::CovarianceNotPositive)));
    }

    #[test]
    fn samples_are_hermitian() {
        let m = BlockBandModel::new(3, 5, 0.5, CovarianceLaw::DeltaOverW2, Boundary::Neumann)
            .unwrap();
        let mut rng = stream(1, 0);
        let h = sample_block_rbm(&m, &mut rng).unwrap();
        assert_eq!(h.hermiticity_defect(), 0.0);
        let g = sample_gue(10, &mut rng);
        assert_eq!(g.hermiticity_defect(), 0.0);
    }

    #[test]
    fn semicircle_values() {
        assert!((semicircle_density(0.0) - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(semicircle_density(2.0), 0.0);
        assert_eq!(semicircle_density(2.5), 0.0);
        let e = std::f64::consts::SQRT_2;
        assert!((semicircle_density(e) - e / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }
}
