//! Saddle constants of the band-matrix action at energy E.
//!
//! a_± = (−iE ± √(4−E²))/2 are the two stationary points of
//! f(x) = x²/2 + iEx − log x − (2+E²)/4; both lie on the unit circle so
//! Re f(a_±) = 0. The curvatures c_± = 1 + a_±⁻² satisfy
//! c₊a₊² = c₀a₊ and c₋a₋² = −c₀a₋ with c₀ = √(4−E²) = 2πρ(E).

use crate::error::{CoreError, Result};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct SaddleConstants {
    pub e: f64,
    pub a_plus: Complex64,
    pub a_minus: Complex64,
    pub c_plus: Complex64,
    pub c_minus: Complex64,
    pub c0: f64,
    pub beta: f64,
    pub beta_tilde: f64,
}

pub const SADDLE_IDENTITY_TOL: f64 = 1e-14;

impl SaddleConstants {
    pub fn new(e: f64, beta: f64) -> Result<Self> {
        if e.abs() >= 2.0 {
            return Err(CoreError::InvalidParameter(format!(
                "saddle constants need |E| < 2, got {e}"
            )));
        }
        let c0 = (4.0 - e * e).sqrt();
        let a_plus = Complex64::new(c0 / 2.0, -e / 2.0);
        let a_minus = Complex64::new(-c0 / 2.0, -e / 2.0);
        let c_plus = Complex64::ONE + 1.0 / (a_plus * a_plus);
        let c_minus = Complex64::ONE + 1.0 / (a_minus * a_minus);
        let sc = SaddleConstants {
            e,
            a_plus,
            a_minus,
            c_plus,
            c_minus,
            c0,
            beta,
            beta_tilde: c0 * c0 * beta,
        };
        let d1 = (sc.c_plus * sc.a_plus * sc.a_plus - sc.c0 * sc.a_plus).norm();
        let d2 = (sc.c_minus * sc.a_minus * sc.a_minus + sc.c0 * sc.a_minus).norm();
        if d1 > SADDLE_IDENTITY_TOL || d2 > SADDLE_IDENTITY_TOL {
            return Err(CoreError::InvalidParameter(format!(
                "saddle identities violated: {d1:.2e}, {d2:.2e}"
            )));
        }
        Ok(sc)
    }

    /// The action f(x) = x²/2 + iEx − log x − (2+E²)/4 (principal log).
    pub fn action(&self, x: Complex64) -> Complex64 {
        let e = Complex64::new(self.e, 0.0);
        x * x / 2.0 + Complex64::i() * e * x - x.ln()
            - Complex64::new((2.0 + self.e * self.e) / 4.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_energy_values() {
        let sc = SaddleConstants::new(0.0, 1.0).unwrap();
        assert!((sc.a_plus - Complex64::ONE).norm() < 1e-15);
        assert!((sc.a_minus + Complex64::ONE).norm() < 1e-15);
        assert!((sc.c_plus.re - 2.0).abs() < 1e-15 && sc.c_plus.im.abs() < 1e-16);
        assert!((sc.c0 - 2.0).abs() < 1e-15);
        assert!((sc.beta_tilde - 4.0).abs() < 1e-15);
    }

    #[test]
    fn sqrt2_energy() {
        let e = std::f64::consts::SQRT_2;
        let sc = SaddleConstants::new(e, 1.0).unwrap();
        assert!((sc.c0 - e).abs() < 1e-14);
        let want = Complex64::new(e / 2.0, -e / 2.0);
        assert!((sc.a_plus - want).norm() < 1e-14);
    }

    #[test]
    fn action_real_part_vanishes_at_saddles() {
        // deterministic sweep standing in for random E draws
        for k in 0..10 {
            let e = -1.4 + 2.8 * (k as f64 + 0.5) / 10.0;
            let sc = SaddleConstants::new(e, 1.0).unwrap();
            assert!(sc.action(sc.a_plus).re.abs() < 1e-12, "E={e}");
            assert!(sc.action(sc.a_minus).re.abs() < 1e-12, "E={e}");
        }
    }

    #[test]
    fn rejects_band_edge() {
        assert!(SaddleConstants::new(2.0, 1.0).is_err());
    }
}
