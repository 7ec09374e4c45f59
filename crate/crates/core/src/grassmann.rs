//! Finite-dimensional Grassmann (exterior) algebra over ℂ with Berezin integration.
//!
//! Generators g₀..g_{m−1} anticommute: gᵢgⱼ = −gⱼgᵢ and gᵢ² = 0. An element is
//! a sparse sum of canonical monomials, each keyed by the bitset of generators
//! it contains, with a complex coefficient. Products pick up a sign from
//! counting the transpositions needed to restore ascending generator order.
//!
//! The Berezin integral ∫·dgᵢ strips generator i from every monomial that
//! contains it, with the sign that moves gᵢ past the generators above it.
//! This convention is the one for which
//! ∫ exp{−Σ A_jk ḡ_j g_k} Π dḡ_j dg_j = det A
//! when the pair differentials are applied left to right.

use crate::error::{CoreError, Result};
use num_complex::Complex64;

/// Generator context: a fixed ordered set of anticommuting generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrassmannAlgebra {
    num_generators: usize,
}

pub const MAX_GENERATORS: usize = 32;

impl GrassmannAlgebra {
    pub fn new(num_generators: usize) -> Result<Self> {
        if num_generators > MAX_GENERATORS {
            return Err(CoreError::InvalidParameter(format!(
                "at most {MAX_GENERATORS} generators supported, got {num_generators}"
            )));
        }
        Ok(Self { num_generators })
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    /// The element 0.
    pub fn zero(&self) -> GrassmannElement {
        GrassmannElement { algebra: *self, terms: Vec::new() }
    }

    /// A pure scalar c·1.
    pub fn scalar(&self, c: Complex64) -> GrassmannElement {
        if c == Complex64::ZERO {
            return self.zero();
        }
        GrassmannElement { algebra: *self, terms: vec![(0, c)] }
    }

    pub fn scalar_re(&self, c: f64) -> GrassmannElement {
        self.scalar(Complex64::new(c, 0.0))
    }

    /// Generator gᵢ.
    pub fn generator(&self, i: usize) -> GrassmannElement {
        assert!(i < self.num_generators, "generator index out of range");
        GrassmannElement { algebra: *self, terms: vec![(1 << i, Complex64::ONE)] }
    }

    /// Monomial for an explicit generator subset (coefficient 1, canonical order).
    pub fn monomial(&self, mask: u32) -> GrassmannElement {
        assert!(mask < (1u64 << self.num_generators) as u32 || self.num_generators == 32);
        GrassmannElement { algebra: *self, terms: vec![(mask, Complex64::ONE)] }
    }
}

/// Parity of an element under the grading by monomial degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Sparse Grassmann-algebra element: terms sorted by monomial bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannElement {
    algebra: GrassmannAlgebra,
    terms: Vec<(u32, Complex64)>,
}

/// Sign (as ±1) accumulated when moving the monomial `b` left through `a`
/// to reach canonical ascending order; masks must be disjoint.
#[inline]
fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut parity = 0u32;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        parity ^= (a >> (i + 1)).count_ones() & 1;
        rest &= rest - 1;
    }
    if parity & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl GrassmannElement {
    pub fn algebra(&self) -> GrassmannAlgebra {
        self.algebra
    }

    pub fn terms(&self) -> &[(u32, Complex64)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given generator set.
    pub fn coeff(&self, mask: u32) -> Complex64 {
        match self.terms.binary_search_by_key(&mask, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => Complex64::ZERO,
        }
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> Complex64 {
        self.coeff(0)
    }

    /// Element minus its body; always nilpotent.
    pub fn soul(&self) -> GrassmannElement {
        let terms = self.terms.iter().copied().filter(|&(m, _)| m != 0).collect();
        GrassmannElement { algebra: self.algebra, terms }
    }

    /// `Some(parity)` when every monomial has the same degree parity.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.iter();
        let first = match it.next() {
            None => return Some(Parity::Even), // zero is even
            Some(&(m, _)) => m.count_ones() & 1,
        };
        for &(m, _) in it {
            if m.count_ones() & 1 != first {
                return None;
            }
        }
        Some(if first == 0 { Parity::Even } else { Parity::Odd })
    }

    pub fn is_even(&self) -> bool {
        matches!(self.parity(), Some(Parity::Even))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(CoreError::AlgebraMismatch(
                self.algebra.num_generators,
                other.algebra.num_generators,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = self.terms[i];
            let (mb, cb) = other.terms[j];
            match ma.cmp(&mb) {
                std::cmp::Ordering::Less => {
                    terms.push((ma, ca));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push((mb, cb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if c != Complex64::ZERO {
                        terms.push((ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Ok(GrassmannElement { algebra: self.algebra, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::ZERO {
            return self.algebra.zero();
        }
        let terms = self.terms.iter().map(|&(m, v)| (m, v * c)).collect();
        GrassmannElement { algebra: self.algebra, terms }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Bilinear anticommutative product. Monomials sharing a generator vanish.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut raw: Vec<(u32, Complex64)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                raw.push((ma | mb, ca * cb * reorder_sign(ma, mb)));
            }
        }
        raw.sort_unstable_by_key(|t| t.0);
        let mut terms: Vec<(u32, Complex64)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|&(_, c)| c != Complex64::ZERO);
        Ok(GrassmannElement { algebra: self.algebra, terms })
    }

    /// exp(a) for even a: exp(body) · Σ_k soul^k / k!, which terminates because
    /// the soul is nilpotent.
    pub fn exp_even(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(CoreError::OddParity);
        }
        let body = self.body();
        let soul = self.soul();
        let mut acc = self.algebra.scalar_re(1.0);
        let mut term = self.algebra.scalar_re(1.0);
        let max_k = self.algebra.num_generators / 2 + 1;
        for k in 1..=max_k {
            term = term.multiply(&soul)?.scale_re(1.0 / k as f64);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc.scale(body.exp()))
    }

    /// Multiplicative inverse of an even element with nonzero body, via the
    /// terminating geometric series body⁻¹ Σ_k (−soul/body)^k.
    pub fn even_inverse(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(CoreError::OddParity);
        }
        let body = self.body();
        if body == Complex64::ZERO {
            return Err(CoreError::SingularElement);
        }
        let binv = Complex64::ONE / body;
        let ratio = self.soul().scale(-binv);
        let mut acc = self.algebra.scalar_re(1.0);
        let mut term = self.algebra.scalar_re(1.0);
        let max_k = self.algebra.num_generators / 2 + 1;
        for _ in 1..=max_k {
            term = term.multiply(&ratio)?;
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc.scale(binv))
    }

    /// Single Berezin integral ∫·dgᵢ: keeps only monomials containing gᵢ,
    /// strips it, and applies the sign from hopping dgᵢ over the generators
    /// above gᵢ.
    pub fn berezin_one(&self, i: usize) -> Self {
        let bit = 1u32 << i;
        let terms = self
            .terms
            .iter()
            .filter(|&&(m, _)| m & bit != 0)
            .map(|&(m, c)| {
                let sign = if (m >> (i + 1)).count_ones() & 1 == 0 { 1.0 } else { -1.0 };
                (m & !bit, c * sign)
            })
            .collect();
        GrassmannElement { algebra: self.algebra, terms }
    }

    /// Repeated Berezin integral; the differentials in `order` are applied
    /// left to right.
    pub fn berezin(&self, order: &[usize]) -> Self {
        let mut e = self.clone();
        for &i in order {
            e = e.berezin_one(i);
        }
        e
    }

    /// Largest absolute coefficient, for tolerance checks.
    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|t| t.1.norm()).fold(0.0, f64::max)
    }
}

/// ∫ exp{−Σ_jk A_jk ḡ_j g_k} Π_j dḡ_j dg_j over the 2k-generator algebra
/// with ḡ_j ↦ g_{2j}, g_j ↦ g_{2j+1}. Equals det A.
pub fn gaussian_grassmann(a: &[Vec<Complex64>]) -> Complex64 {
    let k = a.len();
    let alg = GrassmannAlgebra::new(2 * k).expect("k <= 16");
    let mut expo = alg.zero();
    for (j, row) in a.iter().enumerate() {
        for (l, &ajl) in row.iter().enumerate() {
            let term = alg.generator(2 * j).multiply(&alg.generator(2 * l + 1)).unwrap();
            expo = expo.add(&term.scale(-ajl)).unwrap();
        }
    }
    let mut e = expo.exp_even().expect("bilinear exponent is even");
    for j in 0..k {
        e = e.berezin_one(2 * j);
        e = e.berezin_one(2 * j + 1);
    }
    e.body()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn anticommutation() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        let g0 = alg.generator(0);
        let g1 = alg.generator(1);
        let ab = g0.multiply(&g1).unwrap();
        let ba = g1.multiply(&g0).unwrap();
        assert_eq!(ab.coeff(0b11), c(1.0, 0.0));
        assert_eq!(ba.coeff(0b11), c(-1.0, 0.0));
        assert!(g0.multiply(&g0).unwrap().is_zero());
    }

    #[test]
    fn square_of_one_plus_bivector() {
        // (1 + g0 g1)^2 = 1 + 2 g0 g1
        let alg = GrassmannAlgebra::new(2).unwrap();
        let e = alg.scalar_re(1.0).add(&alg.monomial(0b11)).unwrap();
        let sq = e.multiply(&e).unwrap();
        assert_eq!(sq.coeff(0), c(1.0, 0.0));
        assert_eq!(sq.coeff(0b11), c(2.0, 0.0));
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn mismatched_algebras_error() {
        let a = GrassmannAlgebra::new(2).unwrap().generator(0);
        let b = GrassmannAlgebra::new(4).unwrap().generator(0);
        assert!(matches!(a.multiply(&b), Err(CoreError::AlgebraMismatch(2, 4))));
    }

    #[test]
    fn exp_even_nilpotent() {
        let alg = GrassmannAlgebra::new(4).unwrap();
        // exp(λ g0g1) = 1 + λ g0g1
        let lam = c(0.3, -0.7);
        let e = alg.monomial(0b0011).scale(lam).exp_even().unwrap();
        assert_eq!(e.coeff(0), c(1.0, 0.0));
        assert_eq!(e.coeff(0b0011), lam);
        // exp(g0g1 + g2g3) = 1 + g0g1 + g2g3 + g0g1g2g3
        let s = alg.monomial(0b0011).add(&alg.monomial(0b1100)).unwrap();
        let e = s.exp_even().unwrap();
        assert_eq!(e.coeff(0), c(1.0, 0.0));
        assert_eq!(e.coeff(0b0011), c(1.0, 0.0));
        assert_eq!(e.coeff(0b1100), c(1.0, 0.0));
        assert_eq!(e.coeff(0b1111), c(1.0, 0.0));
    }

    #[test]
    fn exp_even_rejects_odd() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        assert!(matches!(alg.generator(0).exp_even(), Err(CoreError::OddParity)));
    }

    #[test]
    fn even_inverse_examples() {
        let alg = GrassmannAlgebra::new(2).unwrap();
        let two = alg.scalar_re(2.0);
        assert_eq!(two.even_inverse().unwrap().body(), c(0.5, 0.0));
        // (1 + g0g1)^-1 = 1 - g0g1
        let e = alg.scalar_re(1.0).add(&alg.monomial(0b11)).unwrap();
        let inv = e.even_inverse().unwrap();
        assert_eq!(inv.coeff(0), c(1.0, 0.0));
        assert_eq!(inv.coeff(0b11), c(-1.0, 0.0));
        let prod = e.multiply(&inv).unwrap();
        assert_eq!(prod.coeff(0), c(1.0, 0.0));
        assert_eq!(prod.num_terms(), 1);
        assert!(matches!(alg.zero().even_inverse(), Err(CoreError::SingularElement)));
    }

    #[test]
    fn berezin_basics() {
        let alg = GrassmannAlgebra::new(1).unwrap();
        assert_eq!(alg.generator(0).berezin_one(0).body(), c(1.0, 0.0));
        assert!(alg.scalar_re(1.0).berezin_one(0).is_zero());
    }

    #[test]
    fn gaussian_diag_2x2() {
        let a = vec![
            vec![c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0)],
        ];
        let v = gaussian_grassmann(&a);
        assert!((v - c(6.0, 0.0)).norm() < 1e-14);
    }
}
