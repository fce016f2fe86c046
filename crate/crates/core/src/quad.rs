//! Quadrature rules used throughout the crate.
//!
//! Two integrand classes appear: 2π-periodic angular integrands, for which
//! the composite trapezoid rule is spectrally accurate, and smooth but
//! non-periodic integrands (z-integrals, sin(γθ) with non-integer γ,
//! monomials in θ), which get Gauss–Legendre rules instead.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

/// Composite trapezoid rule for a 2π-periodic integrand over [0, 2π).
///
/// With the periodic extension smooth, the error decays faster than any
/// power of 1/nodes; for trigonometric polynomials of degree < nodes the
/// rule is exact up to rounding.
pub fn trapezoid_periodic<F>(nodes: usize, mut f: F) -> Complex64
where
    F: FnMut(f64) -> Complex64,
{
    let h = std::f64::consts::TAU / nodes as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        sum += f(j as f64 * h);
    }
    sum * h
}

/// Gauss–Legendre rule of given degree on the reference interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre polynomial
    /// roots (Numerical Recipes style, symmetric pairs shared).
    pub fn new(degree: usize) -> Self {
        assert!(degree >= 1, "Gauss-Legendre degree must be at least 1");
        let n = degree;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess for the i-th root of P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Recurrence for P_n(x) and P'_n(x).
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let p = if n == 1 { x } else { p1 };
                let pm1 = if n == 1 { 1.0 } else { p0 };
                dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                    // One polishing step, then stop.
                    let mut p0 = 1.0;
                    let mut p1 = x;
                    for k in 2..=n {
                        let kf = k as f64;
                        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                        p0 = p1;
                        p1 = p2;
                    }
                    let p = if n == 1 { x } else { p1 };
                    let pm1 = if n == 1 { 1.0 } else { p0 };
                    dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
                    x -= p / dp;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            // Midpoint node of odd rules sits exactly at zero.
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn degree(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F>(&self, a: f64, b: f64, mut f: F) -> f64
    where
        F: FnMut(f64) -> f64,
    {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F>(&self, a: f64, b: f64, mut f: F) -> Complex64
    where
        F: FnMut(f64) -> Complex64,
    {
        self.mapped(a, b)
            .fold(Complex64::new(0.0, 0.0), |acc, (x, w)| acc + f(x) * w)
    }
}

/// Shared cache of Gauss–Legendre rules; node computation is O(degree²)
/// and the same degrees recur across the oracle suite.
pub fn gauss_legendre(degree: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("gauss-legendre cache poisoned");
    map.entry(degree)
        .or_insert_with(|| Arc::new(GaussLegendre::new(degree)))
        .clone()
}
