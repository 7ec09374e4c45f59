//! Quadrature building blocks: Gauss–Legendre rules, composite panels,
//! uniform angle grids, a Halton sequence for low-discrepancy sampling,
//! and the exponentially scaled modified Bessel function I₀.

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on Pₙ.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P_n'(x) by recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_ab(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&v| v * half).collect(),
    )
}

/// Composite Gauss–Legendre: `panels` equal panels on [a, b], `per_panel` nodes each.
pub fn composite_gauss(a: f64, b: f64, panels: usize, per_panel: usize) -> (Vec<f64>, Vec<f64>) {
    let (xr, wr) = gauss_legendre(per_panel);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * per_panel);
    let mut weights = Vec::with_capacity(panels * per_panel);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (&x, &w) in xr.iter().zip(&wr) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

/// Uniformly spaced angles on [0, 2π); with equal weights 2π/n this is the
/// trapezoidal rule for periodic integrands.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * std::f64::consts::PI * k as f64 / n as f64).collect()
}

/// Halton low-discrepancy sequence in `dim` dimensions (prime bases).
pub struct Halton {
    bases: Vec<u64>,
    index: u64,
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

impl Halton {
    pub fn new(dim: usize) -> Self {
        assert!(dim <= PRIMES.len());
        // skip the first points, which are poorly distributed
        Halton { bases: PRIMES[..dim].to_vec(), index: 64 }
    }

    fn radical_inverse(base: u64, mut i: u64) -> f64 {
        let mut f = 1.0;
        let mut r = 0.0;
        let b = base as f64;
        while i > 0 {
            f /= b;
            r += f * (i % base) as f64;
            i /= base;
        }
        r
    }

    /// Next point in [0,1)^dim.
    pub fn next_point(&mut self, out: &mut [f64]) {
        let i = self.index;
        self.index += 1;
        for (d, &b) in self.bases.iter().enumerate() {
            out[d] = Self::radical_inverse(b, i);
        }
    }
}

/// Exponentially scaled modified Bessel function e^{-|z|} I₀(z) for z ≥ 0.
///
/// Power series below the crossover (all-positive terms, no cancellation),
/// asymptotic expansion above it where the truncation error is ≪ 1e-14.
pub fn i0e(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z < 20.0 {
        let q = 0.25 * z * z;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..200 {
            term *= q / ((k * k) as f64);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        (-z).exp() * sum
    } else {
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..16u32 {
            let kf = k as f64;
            term *= (2.0 * kf - 1.0) * (2.0 * kf - 1.0) / (8.0 * z * kf);
            sum += term;
            if term < 1e-17 {
                break;
            }
        }
        sum / (2.0 * std::f64::consts::PI * z).sqrt()
    }
}
