//! One-dimensional summaries of samples against the uniform law on the unit
//! interval: exact quadratic Wasserstein distance through the quantile
//! coupling, the Kolmogorov-Smirnov statistic, and raw moments.

use crate::error::{Error, Result};
use crate::real::{real, real_usize, Real};

/// A sorted sample of nonnegative finite values.
#[derive(Clone, Debug)]
pub struct EmpiricalSample<F> {
    values: Vec<F>,
}

impl<F: Real> EmpiricalSample<F> {
    pub fn new(mut values: Vec<F>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("sample must be non-empty".into()));
        }
        for &x in &values {
            if !x.is_finite() || x < F::zero() {
                return Err(Error::InvalidParameter(format!(
                    "sample values must be finite and nonnegative, got {x}"
                )));
            }
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("values are finite"));
        Ok(EmpiricalSample { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    /// Quadratic Wasserstein distance to the uniform law on `[0, 1]` via the
    /// monotone coupling: the i-th order statistic is matched with the i-th
    /// quantile slab, each slab integral in closed form.
    pub fn w2_to_uniform(&self) -> F {
        let m = real_usize::<F>(self.len());
        let three = real::<F>(3.0);
        let mut sum = F::zero();
        for (idx, &x) in self.values.iter().enumerate() {
            let a = real_usize::<F>(idx) / m;
            let b = real_usize::<F>(idx + 1) / m;
            // integral of (x - t)^2 over [a, b]
            let term = ((x - a).powi(3) - (x - b).powi(3)) / three;
            sum = sum + term;
        }
        sum.sqrt()
    }

    /// Kolmogorov-Smirnov statistic against the uniform law on `[0, 1]`,
    /// evaluated at the jump points of the empirical CDF.
    pub fn ks_to_uniform(&self) -> F {
        let m = real_usize::<F>(self.len());
        let one = F::one();
        let mut sup = F::zero();
        for (idx, &x) in self.values.iter().enumerate() {
            let g = x.min(one).max(F::zero());
            let lo = real_usize::<F>(idx) / m;
            let hi = real_usize::<F>(idx + 1) / m;
            sup = sup.max((hi - g).abs()).max((lo - g).abs());
        }
        sup
    }

    /// Raw moments of orders `1..=k`.
    pub fn moments(&self, k: usize) -> Vec<F> {
        let m = real_usize::<F>(self.len());
        let mut sums = vec![F::zero(); k];
        for &x in &self.values {
            let mut power = F::one();
            for slot in sums.iter_mut() {
                power = power * x;
                *slot = *slot + power;
            }
        }
        sums.into_iter().map(|s| s / m).collect()
    }

    pub fn mean(&self) -> F {
        self.moments(1)[0]
    }

    /// Population variance.
    pub fn variance(&self) -> F {
        let ms = self.moments(2);
        ms[1] - ms[0] * ms[0]
    }
}

/// Exact distance between the uniform law on the grid `{1/n, ..., n/n}` (the
/// law of a position under a uniform cyclic shift of `n` intervals, right
/// endpoint convention) and the uniform law on `[0, 1]`.
pub fn w2_grid<F: Real>(n: usize) -> Result<F> {
    if n == 0 {
        return Err(Error::InvalidParameter("grid size must be >= 1".into()));
    }
    let nf = real_usize::<F>(n);
    let values = (1..=n).map(|k| real_usize::<F>(k) / nf).collect();
    Ok(EmpiricalSample::new(values)?.w2_to_uniform())
}
