//! Small shared numerics: bracketed root finding and 1-D minimization.
//!
//! The trigonometric conditions solved in this crate oscillate, so every root
//! is located by sign-change scanning and polished bisection-first; Newton is
//! only applied once the bracket is tight enough that it cannot escape.

/// Roots of `f` on `(lo, hi)` found by scanning `n` cells for sign changes and
/// polishing each bracket. Tangential (non-crossing) zeros are not detected.
pub(crate) fn scan_roots(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = (hi - lo) / n as f64;
    let mut t_prev = lo;
    let mut f_prev = f(t_prev);
    for i in 1..=n {
        let t = lo + step * i as f64;
        let ft = f(t);
        if f_prev == 0.0 {
            roots.push(t_prev);
        } else if f_prev * ft < 0.0 {
            roots.push(bisect(f, t_prev, t, f_prev));
        }
        t_prev = t;
        f_prev = ft;
    }
    if f_prev == 0.0 {
        roots.push(t_prev);
    }
    roots
}

/// Bisection on a sign-changing bracket, to ~1 ulp of the interval.
pub(crate) fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let mut sign_lo = flo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sign_lo {
            lo = mid;
            sign_lo = fm.signum();
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bisection followed by a few Newton steps confined to the bracket.
pub(crate) fn polish_root(
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
) -> f64 {
    let flo = f(lo);
    let mut x = if flo == 0.0 { lo } else { bisect(f, lo, hi, flo) };
    for _ in 0..8 {
        let fx = f(x);
        let dfx = df(x);
        if dfx == 0.0 || !dfx.is_finite() {
            break;
        }
        let next = x - fx / dfx;
        if !(lo..=hi).contains(&next) {
            break;
        }
        if (next - x).abs() < 1e-15 * x.abs().max(1.0) {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// Golden-section minimum of `f` on `[lo, hi]` (unimodal on the bracket).
pub(crate) fn minimize_golden(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        x1
    } else {
        x2
    }
}

/// Determinant of a small dense complex matrix by partial-pivot elimination.
pub(crate) fn complex_det(mut m: Vec<Vec<num_complex::Complex64>>) -> num_complex::Complex64 {
    use num_complex::Complex64;
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                let sub = factor * m[col][k];
                m[row][k] -= sub;
            }
        }
    }
    det
}
