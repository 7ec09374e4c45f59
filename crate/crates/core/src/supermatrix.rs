//! 4×4 supermatrices over a Grassmann algebra.
//!
//! Rows and columns 0–1 form the boson sector, 2–3 the fermion sector. For
//! M = [[A, σ], [η, B]] in 2×2 blocks,
//!   Str M = Tr B − Tr A,
//!   Sdet M = det(B − η A⁻¹ σ) / det A,
//! the latter requiring the body of det A to be nonzero. An even supermatrix
//! has even-parity diagonal blocks and odd-parity off-diagonal blocks.

use crate::error::{CoreError, Result};
use crate::grassmann::{GrassmannAlgebra, GrassmannElement, Parity};
use num_complex::Complex64;

/// 2×2 matrix of Grassmann elements.
#[derive(Debug, Clone)]
pub struct Block2 {
    pub e: [[GrassmannElement; 2]; 2],
}

impl Block2 {
    pub fn zero(alg: GrassmannAlgebra) -> Self {
        Block2 { e: std::array::from_fn(|_| std::array::from_fn(|_| alg.zero())) }
    }

    /// Lift of a complex 2×2 matrix.
    pub fn from_complex(alg: GrassmannAlgebra, m: [[Complex64; 2]; 2]) -> Self {
        Block2 { e: std::array::from_fn(|i| std::array::from_fn(|j| alg.scalar(m[i][j]))) }
    }

    pub fn diag(a: GrassmannElement, d: GrassmannElement) -> Self {
        let alg = a.algebra();
        Block2 { e: [[a, alg.zero()], [alg.zero(), d]] }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let alg = self.e[0][0].algebra();
        let mut out = Block2::zero(alg);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = alg.zero();
                for k in 0..2 {
                    acc = acc.add(&self.e[i][k].multiply(&other.e[k][j])?)?;
                }
                out.e[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let alg = self.e[0][0].algebra();
        let mut out = Block2::zero(alg);
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][j].add(&other.e[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Block2 { e: std::array::from_fn(|i| std::array::from_fn(|j| self.e[i][j].scale(c))) }
    }

    pub fn det(&self) -> Result<GrassmannElement> {
        self.e[0][0]
            .multiply(&self.e[1][1])?
            .sub(&self.e[0][1].multiply(&self.e[1][0])?)
    }

    pub fn trace(&self) -> Result<GrassmannElement> {
        self.e[0][0].add(&self.e[1][1])
    }

    /// Inverse via the adjugate and the even inverse of the determinant.
    pub fn inverse(&self) -> Result<Self> {
        let dinv = self.det()?.even_inverse()?;
        Ok(Block2 {
            e: [
                [self.e[1][1].multiply(&dinv)?, self.e[0][1].multiply(&dinv)?.scale_re(-1.0)],
                [self.e[1][0].multiply(&dinv)?.scale_re(-1.0), self.e[0][0].multiply(&dinv)?],
            ],
        })
    }
}

/// 4×4 supermatrix with the 2×2 block grading.
#[derive(Debug, Clone)]
pub struct SuperMatrix {
    pub entries: [[GrassmannElement; 4]; 4],
}

impl SuperMatrix {
    pub fn zero(alg: GrassmannAlgebra) -> Self {
        SuperMatrix { entries: std::array::from_fn(|_| std::array::from_fn(|_| alg.zero())) }
    }

    pub fn from_blocks(a: &Block2, sigma: &Block2, eta: &Block2, b: &Block2) -> Self {
        let alg = a.e[0][0].algebra();
        let mut m = SuperMatrix::zero(alg);
        for i in 0..2 {
            for j in 0..2 {
                m.entries[i][j] = a.e[i][j].clone();
                m.entries[i][j + 2] = sigma.e[i][j].clone();
                m.entries[i + 2][j] = eta.e[i][j].clone();
                m.entries[i + 2][j + 2] = b.e[i][j].clone();
            }
        }
        m
    }

    pub fn from_complex_diag(alg: GrassmannAlgebra, d: [Complex64; 4]) -> Self {
        let mut m = SuperMatrix::zero(alg);
        for (i, di) in d.into_iter().enumerate() {
            m.entries[i][i] = alg.scalar(di);
        }
        m
    }

    fn algebra(&self) -> GrassmannAlgebra {
        self.entries[0][0].algebra()
    }

    pub fn block_a(&self) -> Block2 {
        Block2 { e: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].clone())) }
    }

    pub fn block_sigma(&self) -> Block2 {
        Block2 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j + 2].clone())),
        }
    }

    pub fn block_eta(&self) -> Block2 {
        Block2 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i + 2][j].clone())),
        }
    }

    pub fn block_b(&self) -> Block2 {
        Block2 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.entries[i + 2][j + 2].clone())
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = SuperMatrix::zero(self.algebra());
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = self.entries[i][j].add(&other.entries[i][j])?;
            }
        }
        Ok(out)
    }

    /// Adds c·I₄.
    pub fn add_scalar_diag(&self, c: Complex64) -> Result<Self> {
        let mut out = self.clone();
        let s = self.algebra().scalar(c);
        for i in 0..4 {
            out.entries[i][i] = out.entries[i][i].add(&s)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let alg = self.algebra();
        let mut out = SuperMatrix::zero(alg);
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = alg.zero();
                for k in 0..4 {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.entries[i][k].multiply(&other.entries[k][j])?)?;
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// Graded-even check: commuting diagonal blocks, anticommuting off-diagonal blocks.
    pub fn is_graded_even(&self) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i < 2) == (j < 2) { Parity::Even } else { Parity::Odd };
                match self.entries[i][j].parity() {
                    Some(p) if p == want => {}
                    _ if self.entries[i][j].is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Supertrace Tr B − Tr A.
    pub fn str_(&self) -> GrassmannElement {
        let b = self.block_b().trace().expect("same algebra");
        let a = self.block_a().trace().expect("same algebra");
        b.sub(&a).expect("same algebra")
    }

    /// Superdeterminant det(B − η A⁻¹ σ)·(det A)⁻¹.
    pub fn sdet(&self) -> Result<GrassmannElement> {
        let a = self.block_a();
        let det_a = a.det()?;
        if det_a.body() == Complex64::ZERO {
            return Err(CoreError::SingularBosonBlock);
        }
        let a_inv = a.inverse()?;
        let corr = self.block_eta().mul(&a_inv)?.mul(&self.block_sigma())?;
        let schur = self.block_b().sub(&corr)?;
        schur.det()?.multiply(&det_a.even_inverse()?)
    }

    /// Sdet⁻¹, with the same singularity condition.
    pub fn sdet_inverse(&self) -> Result<GrassmannElement> {
        self.sdet()?.even_inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn str_identity_and_diag() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let id = SuperMatrix::from_complex_diag(alg, [c(1.0); 4]);
        assert!(id.str_().is_zero());
        let m = SuperMatrix::from_complex_diag(alg, [c(1.0), c(1.0), c(2.0), c(2.0)]);
        assert_eq!(m.str_().body(), c(2.0));
        // diag(I, -I) has Str = -4
        let l = SuperMatrix::from_complex_diag(alg, [c(1.0), c(1.0), c(-1.0), c(-1.0)]);
        assert_eq!(l.str_().body(), c(-4.0));
    }

    #[test]
    fn sdet_commuting_blocks() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let id = SuperMatrix::from_complex_diag(alg, [c(1.0); 4]);
        assert_eq!(id.sdet().unwrap().body(), c(1.0));
        let m = SuperMatrix::from_complex_diag(alg, [c(2.0), c(2.0), c(3.0), c(3.0)]);
        assert_eq!(m.sdet().unwrap().body(), c(9.0 / 4.0));
    }

    #[test]
    fn sdet_singular_a_block() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let m = SuperMatrix::from_complex_diag(alg, [c(0.0), c(1.0), c(1.0), c(1.0)]);
        assert!(matches!(m.sdet(), Err(CoreError::SingularBosonBlock)));
    }
}
