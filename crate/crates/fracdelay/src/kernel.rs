//! Convolution weights of the fractional-order sum and their Z-domain checks.
//!
//! The weight sequence is the generalized binomial coefficient
//! `w(n) = Γ(n+α) / (Γ(α) Γ(n+1))`. Everything downstream consumes it through
//! the multiplicative recurrence `w(0)=1, w(n) = w(n−1)·(n−1+α)/n`, which stays
//! in range for any `n` while direct Γ quotients overflow beyond arguments of
//! roughly 170.

use std::sync::RwLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) fn validate_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", format!("order must lie in (0, 1], got {alpha}")))
    }
}

/// Single weight `w(n)` for order `alpha`, via the recurrence.
///
/// `O(n)`; use [`FractionalKernel`] when many weights are needed repeatedly.
pub fn kernel_coefficient(alpha: f64, n: usize) -> Result<f64> {
    validate_alpha(alpha)?;
    let mut c = 1.0;
    for k in 1..=n {
        c *= (k as f64 - 1.0 + alpha) / k as f64;
    }
    Ok(c)
}

/// Weights `[w(0), …, w(length−1)]`.
pub fn kernel_prefix(alpha: f64, length: usize) -> Result<Vec<f64>> {
    if length == 0 {
        return Err(Error::domain("length", "prefix length must be at least 1"));
    }
    let kernel = FractionalKernel::new(alpha)?;
    Ok(kernel.prefix(length))
}

/// Memoized weight sequence for one order.
///
/// The cache is append-only: extending it never changes previously returned
/// values, and extension happens under a write lock so concurrent readers see
/// either the old or the new prefix, never a partial one.
#[derive(Debug)]
pub struct FractionalKernel {
    alpha: f64,
    coeffs: RwLock<Vec<f64>>,
}

impl FractionalKernel {
    pub fn new(alpha: f64) -> Result<Self> {
        validate_alpha(alpha)?;
        Ok(FractionalKernel {
            alpha,
            coeffs: RwLock::new(vec![1.0]),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn ensure(&self, len: usize) {
        {
            let read = self.coeffs.read().unwrap();
            if read.len() >= len {
                return;
            }
        }
        let mut write = self.coeffs.write().unwrap();
        while write.len() < len {
            let n = write.len();
            let last = write[n - 1];
            write.push(last * (n as f64 - 1.0 + self.alpha) / n as f64);
        }
    }

    pub fn coefficient(&self, n: usize) -> f64 {
        self.ensure(n + 1);
        self.coeffs.read().unwrap()[n]
    }

    /// Owned copy of the first `length` weights.
    pub fn prefix(&self, length: usize) -> Vec<f64> {
        self.ensure(length);
        self.coeffs.read().unwrap()[..length].to_vec()
    }

    /// Borrow the first `length` weights without copying.
    pub fn with_prefix<R>(&self, length: usize, f: impl FnOnce(&[f64]) -> R) -> R {
        self.ensure(length);
        let read = self.coeffs.read().unwrap();
        f(&read[..length])
    }
}

/// Residual of the truncated Z-transform identity
/// `Σ_{j=0}^{N} w(j) z^{−j}  vs  (1 − z^{−1})^{−α}`, valid for `|z| > 1`.
///
/// The residual decreases in `N` (down to rounding level) and certifies the
/// weight sequence against an independent closed form.
pub fn check_z_identity(alpha: f64, z: Complex64, truncation: usize) -> Result<f64> {
    validate_alpha(alpha)?;
    if !(z.norm() > 1.0) {
        return Err(Error::domain("z", format!("|z| must exceed 1, got {}", z.norm())));
    }
    if truncation < 1 {
        return Err(Error::domain("truncation", "need at least one term"));
    }
    let zinv = z.inv();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut weight = 1.0;
    let mut zpow = Complex64::new(1.0, 0.0);
    for j in 0..=truncation {
        if j > 0 {
            weight *= (j as f64 - 1.0 + alpha) / j as f64;
            zpow *= zinv;
        }
        sum += weight * zpow;
    }
    let closed = (Complex64::new(1.0, 0.0) - zinv).powf(-alpha);
    Ok((sum - closed).norm())
}
