//! Shared parameter records: the finite-rank deformation and the spectral
//! window of the generating function.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// Positive rank-M deformation iΓ with Γ = diag(γ₁, …, γ_M, 0, …, 0).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Deformation {
    pub gammas: Vec<f64>,
}

impl Deformation {
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(CoreError::InvalidParameter("deformation rank M must be >= 1".into()));
        }
        if gammas.iter().any(|&g| g <= 0.0 || !g.is_finite()) {
            return Err(CoreError::InvalidParameter("all gamma_a must be positive".into()));
        }
        Ok(Deformation { gammas })
    }

    pub fn rank(&self) -> usize {
        self.gammas.len()
    }

    pub fn gamma_sum(&self) -> f64 {
        self.gammas.iter().sum()
    }

    pub fn gamma_max(&self) -> f64 {
        self.gammas.iter().cloned().fold(0.0, f64::max)
    }
}

/// Spectral parameters of the determinant-ratio generating function.
///
/// The two spectral points sit microscopically close to the energy E:
/// z_l = (E + x_l/N) + i y_l/N, regularized by κ/N.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralParams {
    pub e: f64,
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
    pub kappa: f64,
    pub gammas: Vec<f64>,
}

impl SpectralParams {
    pub fn new(
        e: f64,
        (x1, y1): (f64, f64),
        (x2, y2): (f64, f64),
        kappa: f64,
        gammas: Vec<f64>,
    ) -> Result<Self> {
        if e.abs() > std::f64::consts::SQRT_2 {
            return Err(CoreError::InvalidParameter(format!(
                "|E| must not exceed sqrt(2), got {e}"
            )));
        }
        if kappa <= 0.0 {
            return Err(CoreError::InvalidParameter("kappa must be positive".into()));
        }
        Deformation::new(gammas.clone())?;
        Ok(SpectralParams { e, x1, y1, x2, y2, kappa, gammas })
    }

    pub fn is_degenerate(&self) -> bool {
        self.x1 == self.x2 && self.y1 == self.y2
    }

    /// Same parameters with the second spectral point collapsed onto the first.
    pub fn collapsed(&self) -> SpectralParams {
        let mut p = self.clone();
        p.x2 = p.x1;
        p.y2 = p.y1;
        p
    }

    pub fn deformation(&self) -> Deformation {
        Deformation { gammas: self.gammas.clone() }
    }

    /// z_l as complex numbers for a given matrix size N.
    pub fn z_points(&self, n_size: usize) -> (num_complex::Complex64, num_complex::Complex64) {
        let n = n_size as f64;
        (
            num_complex::Complex64::new(self.e + self.x1 / n, self.y1 / n),
            num_complex::Complex64::new(self.e + self.x2 / n, self.y2 / n),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Deformation::new(vec![]).is_err());
        assert!(Deformation::new(vec![-0.5]).is_err());
        assert!(SpectralParams::new(1.6, (0.0, 1.0), (0.0, 2.0), 1.0, vec![0.5]).is_err());
        assert!(SpectralParams::new(0.0, (0.0, 1.0), (0.0, 2.0), 0.0, vec![0.5]).is_err());
        let p = SpectralParams::new(0.0, (0.0, 1.0), (0.0, 1.0), 1.0, vec![0.5]).unwrap();
        assert!(p.is_degenerate());
    }
}
