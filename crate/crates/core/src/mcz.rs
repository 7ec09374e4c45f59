//! Monte Carlo estimator of the determinant-ratio generating function
//!
//!   Z(κ, z₁, z₂) = E[ det{(𝓗−z₁)(𝓗−z₁)* + κ²/N²} / det{(𝓗−z₂)(𝓗−z₂)* + κ²/N²} ]
//!
//! over draws of the block band ensemble, 𝓗 = H + iΓ. Determinants are
//! evaluated as Cholesky log-determinants and combined in log space; batch
//! aggregation is median-of-means because the ratio is heavy-tailed.

use crate::ensemble::{sample_block_rbm, BlockBandModel};
use crate::error::Result;
use crate::linalg::{gemm, logdet_hermitian_pd, CMatrix};
use crate::params::SpectralParams;
use crate::rngstream::stream;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct McZResult {
    pub estimate_re: f64,
    pub estimate_im: f64,
    pub se: f64,
    pub samples: usize,
    pub rejected: usize,
    pub seed: u64,
}

pub const MIN_BATCHES: usize = 8;

/// log det{(𝓗−z)(𝓗−z)* + (κ/N)²}.
fn log_det_shifted(hdef: &CMatrix, z: Complex64, kappa_over_n: f64) -> Result<f64> {
    let n = hdef.n_rows;
    let mut shifted = hdef.clone();
    for i in 0..n {
        shifted[(i, i)] -= z;
    }
    let mut m = gemm(&shifted, &shifted, true);
    m.add_scaled_identity(Complex64::new(kappa_over_n * kappa_over_n, 0.0));
    logdet_hermitian_pd(m)
}

/// One draw's determinant ratio; NaN/Inf results are surfaced for rejection.
fn one_sample(model: &BlockBandModel, p: &SpectralParams, seed: u64, idx: u64) -> Result<f64> {
    let mut rng = stream(seed, idx);
    let mut h = sample_block_rbm(model, &mut rng)?;
    for (a, &g) in p.gammas.iter().enumerate() {
        h[(a, a)] += Complex64::new(0.0, g);
    }
    let nsz = model.matrix_size();
    let (z1, z2) = p.z_points(nsz);
    let kn = p.kappa / nsz as f64;
    let l1 = log_det_shifted(&h, z1, kn)?;
    let l2 = log_det_shifted(&h, z2, kn)?;
    Ok((l1 - l2).exp())
}

/// Median-of-means Monte Carlo estimate of Z.
///
/// Sample index determines its random stream, so the result is bit-identical
/// for any worker count. A degenerate z₁ = z₂ returns exactly 1 with zero
/// error: the per-draw ratio is identically one.
pub fn mc_generating_function(
    model: &BlockBandModel,
    p: &SpectralParams,
    samples: usize,
    seed: u64,
) -> Result<McZResult> {
    assert!(samples >= 1);
    if p.is_degenerate() {
        return Ok(McZResult {
            estimate_re: 1.0,
            estimate_im: 0.0,
            se: 0.0,
            samples,
            rejected: 0,
            seed,
        });
    }
    // ratios in sample order (deterministic reduction)
    let ratios: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| one_sample(model, p, seed, i).map(|r| if r.is_finite() { r } else { f64::NAN }))
        .collect::<Result<Vec<f64>>>()?;

    let n_batches = MIN_BATCHES.max(samples / 2500).min(samples);
    let mut batch_means = Vec::with_capacity(n_batches);
    let mut rejected = 0usize;
    for b in 0..n_batches {
        let lo = b * samples / n_batches;
        let hi = (b + 1) * samples / n_batches;
        let mut acc = 0.0;
        let mut cnt = 0usize;
        for &r in &ratios[lo..hi] {
            if r.is_nan() {
                rejected += 1;
            } else {
                acc += r;
                cnt += 1;
            }
        }
        batch_means.push(if cnt > 0 { acc / cnt as f64 } else { f64::NAN });
    }
    batch_means.retain(|m| !m.is_nan());
    batch_means.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let nb = batch_means.len();
    let estimate = if nb % 2 == 1 {
        batch_means[nb / 2]
    } else {
        0.5 * (batch_means[nb / 2 - 1] + batch_means[nb / 2])
    };
    let mean: f64 = batch_means.iter().sum::<f64>() / nb as f64;
    let var: f64 =
        batch_means.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / (nb - 1).max(1) as f64;
    let se = (var / nb as f64).sqrt();
    Ok(McZResult { estimate_re: estimate, estimate_im: 0.0, se, samples, rejected, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{Boundary, CovarianceLaw};

    #[test]
    fn degenerate_points_give_exact_one() {
        let model =
            BlockBandModel::new(1, 8, 1.0, CovarianceLaw::DeltaOverW2, Boundary::Neumann).unwrap();
        let p = SpectralParams::new(0.0, (0.0, 1.0), (0.0, 1.0), 1.0, vec![0.5]).unwrap();
        let r = mc_generating_function(&model, &p, 100, 1).unwrap();
        assert_eq!(r.estimate_re, 1.0);
        assert_eq!(r.se, 0.0);
    }

    #[test]
    fn per_sample_ratio_is_one_at_equal_points() {
        // not just in mean: each draw's ratio is exactly 1
        let model =
            BlockBandModel::new(1, 6, 1.0, CovarianceLaw::DeltaOverW2, Boundary::Neumann).unwrap();
        let p = SpectralParams::new(0.0, (0.3, 1.2), (0.3, 1.2), 0.7, vec![0.4]).unwrap();
        for i in 0..5 {
            let r = one_sample(&model, &p, 11, i).unwrap();
            assert!((r - 1.0).abs() < 1e-10, "ratio {r}");
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let model =
            BlockBandModel::new(1, 8, 1.0, CovarianceLaw::DeltaOverW2, Boundary::Neumann).unwrap();
        let p = SpectralParams::new(0.0, (0.0, 1.0), (0.0, 2.0), 1.0, vec![0.5]).unwrap();
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool8 = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        let r1 = pool1.install(|| mc_generating_function(&model, &p, 64, 5).unwrap());
        let r8 = pool8.install(|| mc_generating_function(&model, &p, 64, 5).unwrap());
        assert_eq!(r1.estimate_re.to_bits(), r8.estimate_re.to_bits());
        assert_eq!(r1.se.to_bits(), r8.se.to_bits());
    }
}
