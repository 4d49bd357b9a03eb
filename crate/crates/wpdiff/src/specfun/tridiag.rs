//! Complex tridiagonal (Thomas) solve. Inputs are borrowed immutably; the
//! elimination works on scratch copies.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Solve the tridiagonal system
///   diag[0] x0 + upper[0] x1                     = rhs[0]
///   lower[i-1] x_{i-1} + diag[i] x_i + upper[i] x_{i+1} = rhs[i]
///   lower[n-2] x_{n-2} + diag[n-1] x_{n-1}       = rhs[n-1]
///
/// `lower` and `upper` must have length n-1. Errors with
/// [`Error::SingularPivot`] when forward elimination hits a pivot that is
/// zero relative to the row scale.
pub fn solve_tridiagonal(
    lower: &[Complex64],
    diag: &[Complex64],
    upper: &[Complex64],
    rhs: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if lower.len() != n - 1 || upper.len() != n - 1 || rhs.len() != n {
        return Err(Error::InvalidInput(format!(
            "tridiagonal shape mismatch: n={n}, lower={}, upper={}, rhs={}",
            lower.len(),
            upper.len(),
            rhs.len()
        )));
    }
    let mut c = vec![Complex64::default(); n - 1];
    let mut d = vec![Complex64::default(); n];

    let mut pivot = diag[0];
    let row_scale = pivot.norm().max(if n > 1 { upper[0].norm() } else { 0.0 });
    if pivot.norm() <= 1e-300 * row_scale.max(1.0) {
        return Err(Error::SingularPivot(pivot.norm(), 0));
    }
    if n > 1 {
        c[0] = upper[0] / pivot;
    }
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i - 1] * c[i - 1];
        let row_scale = pivot
            .norm()
            .max(lower[i - 1].norm())
            .max(if i < n - 1 { upper[i].norm() } else { 0.0 });
        if pivot.norm() <= 1e-300 * row_scale.max(1.0) {
            return Err(Error::SingularPivot(pivot.norm(), i));
        }
        if i < n - 1 {
            c[i] = upper[i] / pivot;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        let next = d[i + 1];
        d[i] -= c[i] * next;
    }
    Ok(d)
}

/// Residual max-norm ||A x - rhs||_inf, for verification.
pub fn tridiagonal_residual(
    lower: &[Complex64],
    diag: &[Complex64],
    upper: &[Complex64],
    x: &[Complex64],
    rhs: &[Complex64],
) -> f64 {
    let n = diag.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut acc = diag[i] * x[i] - rhs[i];
        if i > 0 {
            acc += lower[i - 1] * x[i - 1];
        }
        if i < n - 1 {
            acc += upper[i] * x[i + 1];
        }
        worst = worst.max(acc.norm());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_pivot_detected() {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        assert!(matches!(
            solve_tridiagonal(&[o], &[z, o], &[o], &[o, o]),
            Err(Error::SingularPivot(_, 0))
        ));
    }
}
