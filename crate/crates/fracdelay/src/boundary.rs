//! Stability boundary curve in the complex coefficient plane.
//!
//! For order `α`, delay coefficient `b` and delay `τ`, the boundary of the
//! asymptotically stable set of coefficients `a` is the closed curve
//!
//! `γ(t) = 1 + (2 sin(t/2))^α · e^{i(απ/2 + (1−α/2)t)} − b e^{−iτt}`, t ∈ [0, 2π],
//!
//! the image of the unit circle `z = e^{it}` under the characteristic relation
//! `z(1−z⁻¹)^α − (a−1) − b z^{−τ} = 0` solved for `a`. A coefficient is stable
//! exactly when the curve winds once anticlockwise around it; clockwise or
//! multiply covered subregions are unstable.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::kernel::validate_alpha;
use crate::solve;

/// Distance below which a point is reported as lying on the curve.
pub const BOUNDARY_TOL: f64 = 1e-6;

/// Sample resolution used by [`classify_point`] and other one-shot helpers.
pub const DEFAULT_RESOLUTION: usize = 1024;

/// Adaptive refinement may grow the sample count up to this multiple of the
/// base resolution.
const REFINE_FACTOR: usize = 64;

/// Vertex turning angle (radians) above which the adjacent segments are split.
const TURN_LIMIT: f64 = 5.0 * std::f64::consts::PI / 180.0;

/// Curve-speed dip, relative to the median, that flags a cusp candidate.
const SPEED_DIP: f64 = 1e-3;

fn validate_tau(tau: usize) -> Result<()> {
    if tau >= 1 {
        Ok(())
    } else {
        Err(Error::domain("tau", "delay must be at least 1"))
    }
}

fn validate_b(b: f64) -> Result<()> {
    if b.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("b", "delay coefficient must be finite"))
    }
}

/// Boundary curve point at parameter `t ∈ [0, 2π]`.
///
/// The power term is exactly zero at both endpoints, so `γ(0) = γ(2π) = (1−b, 0)`
/// holds without rounding residue.
pub fn gamma_eval(alpha: f64, b: f64, tau: usize, t: f64) -> Complex64 {
    let delay = Complex64::from_polar(b, -(tau as f64) * t);
    if t == 0.0 || t == TAU {
        return Complex64::new(1.0, 0.0) - delay;
    }
    let radius = (2.0 * (0.5 * t).sin()).powf(alpha);
    let phase = alpha * FRAC_PI_2 + (1.0 - 0.5 * alpha) * t;
    Complex64::new(1.0, 0.0) + Complex64::from_polar(radius, phase) - delay
}

/// `dγ/dt`. Unbounded at the endpoints for `α < 1` (the power term leaves the
/// contact point with infinite speed); callers must treat non-finite values as
/// the endpoint singularity, not as a cusp.
pub fn gamma_derivative(alpha: f64, b: f64, tau: usize, t: f64) -> Complex64 {
    let s = (0.5 * t).sin();
    let c = (0.5 * t).cos();
    let phase = alpha * FRAC_PI_2 + (1.0 - 0.5 * alpha) * t;
    let speed = (2.0 * s).powf(alpha - 1.0);
    let bracket = Complex64::new(alpha * c, (2.0 - alpha) * s);
    let tf = tau as f64;
    speed * bracket * Complex64::from_polar(1.0, phase)
        + Complex64::new(0.0, tf * b) * Complex64::from_polar(1.0, -tf * t)
}

/// `d²γ/dt²`, used to polish curve-speed minima when locating cusps.
pub fn gamma_second_derivative(alpha: f64, b: f64, tau: usize, t: f64) -> Complex64 {
    let s = (0.5 * t).sin();
    let c = (0.5 * t).cos();
    let theta = alpha * FRAC_PI_2 + (1.0 - 0.5 * alpha) * t;
    let dtheta = 1.0 - 0.5 * alpha;
    let rho = (2.0 * s).powf(alpha);
    let drho = alpha * (2.0 * s).powf(alpha - 1.0) * c;
    let ddrho = alpha * ((alpha - 1.0) * (2.0 * s).powf(alpha - 2.0) * c * c
        - 0.5 * (2.0 * s).powf(alpha - 1.0) * s);
    let w2 = Complex64::new(ddrho - rho * dtheta * dtheta, 2.0 * drho * dtheta)
        * Complex64::from_polar(1.0, theta);
    let tf = tau as f64;
    w2 + tf * tf * b * Complex64::from_polar(1.0, -tf * t)
}

/// Characteristic function `z(1−z⁻¹)^α − (a−1) − b z^{−τ}` on the principal
/// branch. Vanishes at `z = e^{it}` when `a = γ(t)`.
pub fn char_residual(alpha: f64, a: Complex64, b: f64, tau: usize, z: Complex64) -> Complex64 {
    let w = Complex64::new(1.0, 0.0) - z.inv();
    let pw = if w.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        w.powf(alpha)
    };
    z * pw - (a - Complex64::new(1.0, 0.0)) - b * z.powi(-(tau as i32))
}

/// `|det M(z) − z^τ · (characteristic expression)|` for the `(τ+1)×(τ+1)`
/// companion-style determinant. The determinant is expanded numerically by
/// elimination, keeping this route independent of [`char_residual`].
pub fn determinant_equivalence(alpha: f64, a: Complex64, b: f64, tau: usize, z: Complex64) -> f64 {
    let n = tau + 1;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let w = Complex64::new(1.0, 0.0) - z.inv();
    let pw = if w.norm() == 0.0 { zero } else { w.powf(alpha) };
    let mut m = vec![vec![zero; n]; n];
    m[0][0] = z * pw - (a - one);
    m[0][n - 1] = m[0][n - 1] - Complex64::new(b, 0.0);
    for row in 1..n {
        m[row][row - 1] = -one;
        m[row][row] = (z - one) + one;
    }
    let det = solve::complex_det(m);
    let reference = z.powi(tau as i32) * char_residual(alpha, a, b, tau, z);
    (det - reference).norm()
}

/// Stability classification of a single coefficient value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Stable,
    Unstable,
    Boundary,
}

/// Winding number, verdict, and distance from the query point to the curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StabilityVerdict {
    pub winding: i32,
    pub classification: Classification,
    pub distance_to_curve: f64,
}

/// A located parameter pair with `γ(t1) = γ(t2)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SelfIntersection {
    pub t1: f64,
    pub t2: f64,
    pub point_re: f64,
    pub point_im: f64,
    /// False when Newton stalled and the pair is reported at bracket accuracy.
    pub polished: bool,
}

/// Densely sampled boundary curve with per-sample tangents.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    alpha: f64,
    b: f64,
    tau: usize,
    ts: Vec<f64>,
    points: Vec<Complex64>,
    tangents: Vec<Complex64>,
}

impl BoundaryCurve {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn tau(&self) -> usize {
        self.tau
    }
    pub fn parameters(&self) -> &[f64] {
        &self.ts
    }
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }
    pub fn tangents(&self) -> &[Complex64] {
        &self.tangents
    }

    /// Sample the curve uniformly at `base_resolution` segments, then refine
    /// wherever the polyline turns by more than 5° or the curve speed dips
    /// below 1e-3 of its median (cusp candidates). Sample count is capped at
    /// 64× the base resolution; a genuine corner at the resolution floor stops
    /// splitting once its segments reach the floor length.
    pub fn sample(alpha: f64, b: f64, tau: usize, base_resolution: usize) -> Result<Self> {
        validate_alpha(alpha)?;
        validate_b(b)?;
        validate_tau(tau)?;
        if base_resolution < 256 {
            return Err(Error::domain("base_resolution", "need at least 256 segments"));
        }
        let budget = REFINE_FACTOR * base_resolution + 1;
        let min_dt = TAU / budget as f64;

        let mut ts: Vec<f64> = (0..=base_resolution)
            .map(|i| TAU * (i as f64 / base_resolution as f64))
            .collect();
        *ts.last_mut().unwrap() = TAU;
        let mut points: Vec<Complex64> = ts.iter().map(|&t| gamma_eval(alpha, b, tau, t)).collect();

        for _pass in 0..64 {
            let speeds: Vec<f64> = ts
                .iter()
                .map(|&t| gamma_derivative(alpha, b, tau, t).norm())
                .collect();
            let mut finite: Vec<f64> = speeds.iter().copied().filter(|v| v.is_finite()).collect();
            finite.sort_by(f64::total_cmp);
            let median = finite.get(finite.len() / 2).copied().unwrap_or(1.0);

            let n = ts.len();
            let mut split = vec![false; n - 1];
            for k in 1..n - 1 {
                let u = points[k] - points[k - 1];
                let v = points[k + 1] - points[k];
                if u.norm() == 0.0 || v.norm() == 0.0 {
                    continue;
                }
                let turn = (u.conj() * v).arg().abs();
                let dip = speeds[k].is_finite() && speeds[k] < SPEED_DIP * median;
                if turn > TURN_LIMIT || dip {
                    split[k - 1] = true;
                    split[k] = true;
                }
            }

            let mut new_ts = Vec::with_capacity(n + 64);
            let mut grew = false;
            for k in 0..n - 1 {
                new_ts.push(ts[k]);
                if split[k] && ts[k + 1] - ts[k] > min_dt {
                    new_ts.push(0.5 * (ts[k] + ts[k + 1]));
                    grew = true;
                }
            }
            new_ts.push(TAU);
            if new_ts.len() > budget {
                return Err(Error::RefinementBudget {
                    needed: new_ts.len(),
                    budget,
                });
            }
            if !grew {
                break;
            }
            ts = new_ts;
            points = ts.iter().map(|&t| gamma_eval(alpha, b, tau, t)).collect();
        }

        let tangents = ts
            .iter()
            .map(|&t| gamma_derivative(alpha, b, tau, t))
            .collect();
        Ok(BoundaryCurve {
            alpha,
            b,
            tau,
            ts,
            points,
            tangents,
        })
    }

    /// Minimum distance from `a` to the sampled polyline.
    pub fn distance_to(&self, a: Complex64) -> f64 {
        let mut best = f64::INFINITY;
        for k in 0..self.points.len() - 1 {
            let d = point_segment_distance(a, self.points[k], self.points[k + 1]);
            if d < best {
                best = d;
            }
        }
        best
    }

    /// Winding number by summed turning angles; exact integer for points off
    /// the curve. Errors when the point is within [`BOUNDARY_TOL`] of the
    /// polyline.
    pub fn winding_number(&self, a: Complex64) -> Result<i32> {
        let distance = self.distance_to(a);
        if distance < BOUNDARY_TOL {
            return Err(Error::PointOnCurve { distance });
        }
        let mut total = 0.0;
        for k in 0..self.points.len() - 1 {
            let u = self.points[k] - a;
            let v = self.points[k + 1] - a;
            total += (u.conj() * v).arg();
        }
        let winding = total / TAU;
        let rounded = winding.round();
        debug_assert!((winding - rounded).abs() < 0.25, "non-integer winding {winding}");
        Ok(rounded as i32)
    }

    /// Winding number by signed ray crossings. No distance guard and no trig;
    /// intended for dense grid scans. Agrees with [`Self::winding_number`]
    /// wherever the latter is defined.
    pub fn winding_number_fast(&self, a: Complex64) -> i32 {
        let mut wn = 0i32;
        for k in 0..self.points.len() - 1 {
            let p = self.points[k];
            let q = self.points[k + 1];
            if p.im <= a.im {
                if q.im > a.im && is_left(p, q, a) > 0.0 {
                    wn += 1;
                }
            } else if q.im <= a.im && is_left(p, q, a) < 0.0 {
                wn -= 1;
            }
        }
        wn
    }

    /// Full verdict for one coefficient value.
    pub fn classify(&self, a: Complex64) -> StabilityVerdict {
        let distance = self.distance_to(a);
        if distance < BOUNDARY_TOL {
            return StabilityVerdict {
                winding: 0,
                classification: Classification::Boundary,
                distance_to_curve: distance,
            };
        }
        let winding = self
            .winding_number(a)
            .expect("distance already checked against tolerance");
        let classification = if winding == 1 {
            Classification::Stable
        } else {
            // Clockwise or multiply covered subregions are treated as unstable.
            Classification::Unstable
        };
        StabilityVerdict {
            winding,
            classification,
            distance_to_curve: distance,
        }
    }

    /// All parameter pairs `t1 < t2` with `γ(t1) = γ(t2)`, excluding the
    /// trivial closure pair `(0, 2π)`. Candidates come from polyline segment
    /// crossings; each is polished by two-variable Newton on `γ(t1) − γ(t2)`.
    /// Contacts involving the closure point `γ(0)` are polished on the real
    /// axis instead, where the one-dimensional problem is well conditioned.
    pub fn find_self_intersections(&self) -> Vec<SelfIntersection> {
        let n = self.points.len() - 1;
        let mut found: Vec<SelfIntersection> = Vec::new();

        // Coarse spatial hash over segment bounding boxes.
        let (min_re, max_re, min_im, max_im) = self.bounding_box();
        let span = (max_re - min_re).max(max_im - min_im).max(1e-12);
        let cells = 64usize;
        let cell = span / cells as f64;
        let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> =
            std::collections::HashMap::new();
        let index = |x: f64, y: f64| {
            (
                ((x - min_re) / cell).floor() as i64,
                ((y - min_im) / cell).floor() as i64,
            )
        };
        for k in 0..n {
            let p = self.points[k];
            let q = self.points[k + 1];
            let (i0, j0) = index(p.re.min(q.re), p.im.min(q.im));
            let (i1, j1) = index(p.re.max(q.re), p.im.max(q.im));
            for i in i0..=i1 {
                for j in j0..=j1 {
                    grid.entry((i, j)).or_default().push(k);
                }
            }
        }

        let mut candidate_pairs: Vec<(usize, usize)> = Vec::new();
        for bucket in grid.values() {
            for (ai, &ka) in bucket.iter().enumerate() {
                for &kb in &bucket[ai + 1..] {
                    let (lo, hi) = if ka < kb { (ka, kb) } else { (kb, ka) };
                    if hi - lo <= 1 {
                        continue;
                    }
                    if lo == 0 && hi == n - 1 {
                        continue; // adjacent through the closure
                    }
                    candidate_pairs.push((lo, hi));
                }
            }
        }
        candidate_pairs.sort_unstable();
        candidate_pairs.dedup();

        for (ka, kb) in candidate_pairs {
            let (pa, qa) = (self.points[ka], self.points[ka + 1]);
            let (pb, qb) = (self.points[kb], self.points[kb + 1]);
            let Some((sa, sb)) = segment_intersection(pa, qa, pb, qb) else {
                continue;
            };
            let t1 = self.ts[ka] + sa * (self.ts[ka + 1] - self.ts[ka]);
            let t2 = self.ts[kb] + sb * (self.ts[kb + 1] - self.ts[kb]);
            if (t2 - t1).abs() < 1e-6 {
                continue;
            }
            if let Some(hit) = self.polish_intersection(t1, t2) {
                found.push(hit);
            }
        }

        // Merge duplicates (the same crossing seen from neighbouring segments).
        found.sort_by(|x, y| (x.t1, x.t2).partial_cmp(&(y.t1, y.t2)).unwrap());
        let mut merged: Vec<SelfIntersection> = Vec::new();
        for hit in found {
            let dup = merged.iter().any(|m| {
                (m.t1 - hit.t1).abs() < 1e-5 && (m.t2 - hit.t2).abs() < 1e-5
            });
            if !dup {
                merged.push(hit);
            }
        }
        merged
    }

    fn polish_intersection(&self, mut t1: f64, mut t2: f64) -> Option<SelfIntersection> {
        let end_tol = 1e-4;
        // Contacts with the closure point live on the real axis: solve
        // Im γ(s) = 0 near the other parameter and compare against γ(0).
        if t1 < end_tol || t2 > TAU - end_tol {
            let s0 = if t1 < end_tol { t2 } else { t1 };
            let im = |s: f64| gamma_eval(self.alpha, self.b, self.tau, s).im;
            let dim = |s: f64| gamma_derivative(self.alpha, self.b, self.tau, s).im;
            let width = 0.02;
            let (lo, hi) = (s0 - width, s0 + width);
            if im(lo) * im(hi) > 0.0 {
                return None;
            }
            let s = solve::polish_root(&im, &dim, lo, hi);
            let p = gamma_eval(self.alpha, self.b, self.tau, s);
            let anchor = gamma_eval(self.alpha, self.b, self.tau, 0.0);
            if (p - anchor).norm() > 1e-8 {
                return None;
            }
            let (t1, t2) = if t1 < end_tol { (0.0, s) } else { (s, TAU) };
            return Some(SelfIntersection {
                t1,
                t2,
                point_re: anchor.re,
                point_im: anchor.im,
                polished: true,
            });
        }

        let eval = |t: f64| gamma_eval(self.alpha, self.b, self.tau, t);
        let deriv = |t: f64| gamma_derivative(self.alpha, self.b, self.tau, t);
        let mut polished = false;
        for _ in 0..50 {
            let f = eval(t1) - eval(t2);
            if f.norm() < 1e-12 {
                polished = true;
                break;
            }
            let d1 = deriv(t1);
            let d2 = deriv(t2);
            // Solve [d1, −d2]·[dt1, dt2]ᵀ = −f.
            let det = d1.re * (-d2.im) - (-d2.re) * d1.im;
            if det.abs() < 1e-14 {
                break;
            }
            let dt1 = (-f.re * (-d2.im) - (-d2.re) * (-f.im)) / det;
            let dt2 = (d1.re * (-f.im) - (-f.re) * d1.im) / det;
            t1 += dt1;
            t2 += dt2;
            if !(0.0..=TAU).contains(&t1) || !(0.0..=TAU).contains(&t2) {
                return None;
            }
        }
        if !polished && (eval(t1) - eval(t2)).norm() < 1e-10 {
            polished = true;
        }
        let (t1, t2) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        if (t2 - t1).abs() < 1e-6 || (t1 < 1e-9 && t2 > TAU - 1e-9) {
            return None;
        }
        let p = eval(t1);
        Some(SelfIntersection {
            t1,
            t2,
            point_re: p.re,
            point_im: p.im,
            polished,
        })
    }

    /// Parameters `t` with `|γ′(t)| < 1e-8` after polishing the local minima
    /// of `|γ′|²`. The endpoints are excluded: the power-term derivative
    /// blows up at `t = 0` for `α < 1`, which is a parametrization artifact,
    /// not a cusp of the region boundary.
    pub fn find_cusps(&self) -> Vec<f64> {
        let speed2 = |t: f64| gamma_derivative(self.alpha, self.b, self.tau, t).norm_sqr();
        // d|γ′|²/dt = 2 Re(conj(γ′)·γ″); bisect its sign change inside each
        // sampled local-minimum bracket.
        let dspeed2 = |t: f64| {
            let d = gamma_derivative(self.alpha, self.b, self.tau, t);
            let dd = gamma_second_derivative(self.alpha, self.b, self.tau, t);
            2.0 * (d.conj() * dd).re
        };
        let n = self.ts.len();
        let mut cusps: Vec<f64> = Vec::new();
        for k in 1..n - 1 {
            let sk = self.tangents[k].norm();
            if !sk.is_finite() {
                continue;
            }
            let sl = self.tangents[k - 1].norm();
            let sr = self.tangents[k + 1].norm();
            if !(sk <= sl && sk <= sr) {
                continue;
            }
            let lo = self.ts[k - 1].max(1e-9);
            let hi = self.ts[k + 1].min(TAU - 1e-9);
            let t_star = if dspeed2(lo) < 0.0 && dspeed2(hi) > 0.0 {
                solve::polish_root(&dspeed2, &|t| {
                    // One-sided numeric slope is enough to guide Newton here.
                    let h = 1e-7;
                    (dspeed2(t + h) - dspeed2(t - h)) / (2.0 * h)
                }, lo, hi)
            } else {
                solve::minimize_golden(&speed2, lo, hi, 1e-13)
            };
            if t_star <= 1e-9 || t_star >= TAU - 1e-9 {
                continue;
            }
            if speed2(t_star).sqrt() < 1e-8 {
                cusps.push(t_star);
            }
        }
        cusps.sort_by(f64::total_cmp);
        cusps.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        cusps
    }

    fn bounding_box(&self) -> (f64, f64, f64, f64) {
        let mut min_re = f64::INFINITY;
        let mut max_re = f64::NEG_INFINITY;
        let mut min_im = f64::INFINITY;
        let mut max_im = f64::NEG_INFINITY;
        for p in &self.points {
            min_re = min_re.min(p.re);
            max_re = max_re.max(p.re);
            min_im = min_im.min(p.im);
            max_im = max_im.max(p.im);
        }
        (min_re, max_re, min_im, max_im)
    }

    /// Axis-aligned bounds of the sampled curve: `(min_re, max_re, min_im, max_im)`.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        self.bounding_box()
    }

    /// CSV rows `(t, re, im)` with a header, floats at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.ts.len() * 64);
        out.push_str("t,re,im\n");
        for (t, p) in self.ts.iter().zip(&self.points) {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", t, p.re, p.im);
        }
        out
    }
}

/// One-shot classification of coefficient `a` for system parameters
/// `(alpha, b, tau)`; samples the curve at [`DEFAULT_RESOLUTION`].
pub fn classify_point(alpha: f64, b: f64, tau: usize, a: Complex64) -> Result<StabilityVerdict> {
    let curve = BoundaryCurve::sample(alpha, b, tau, DEFAULT_RESOLUTION)?;
    Ok(curve.classify(a))
}

fn is_left(p: Complex64, q: Complex64, a: Complex64) -> f64 {
    (q.re - p.re) * (a.im - p.im) - (a.re - p.re) * (q.im - p.im)
}

fn point_segment_distance(a: Complex64, p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (a - p).norm();
    }
    let s = ((a - p).re * d.re + (a - p).im * d.im) / len2;
    let s = s.clamp(0.0, 1.0);
    (a - (p + s * d)).norm()
}

/// Parametric intersection of segments `p0→p1` and `q0→q1`, if any.
fn segment_intersection(
    p0: Complex64,
    p1: Complex64,
    q0: Complex64,
    q1: Complex64,
) -> Option<(f64, f64)> {
    let r = p1 - p0;
    let s = q1 - q0;
    let denom = r.re * s.im - r.im * s.re;
    if denom.abs() < 1e-300 {
        return None;
    }
    let w = q0 - p0;
    let t = (w.re * s.im - w.im * s.re) / denom;
    let u = (w.re * r.im - w.im * r.re) / denom;
    let eps = 1e-9;
    if (-eps..=1.0 + eps).contains(&t) && (-eps..=1.0 + eps).contains(&u) {
        Some((t.clamp(0.0, 1.0), u.clamp(0.0, 1.0)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn endpoints_on_real_axis() {
        for &(alpha, b, tau) in &[(0.5, 0.3, 1usize), (0.25, -1.2, 2), (0.9, 0.0, 3), (1.0, 0.7, 1)] {
            let g0 = gamma_eval(alpha, b, tau, 0.0);
            assert_eq!(g0, Complex64::new(1.0 - b, 0.0));
            let gpi = gamma_eval(alpha, b, tau, PI);
            let sign = if tau % 2 == 0 { 1.0 } else { -1.0 };
            let expected = 1.0 - 2f64.powf(alpha) - sign * b;
            assert!((gpi.re - expected).abs() < 1e-12, "re {} vs {}", gpi.re, expected);
            assert!(gpi.im.abs() < 1e-12);
        }
    }

    #[test]
    fn closure_and_conjugate_symmetry() {
        for &(alpha, b, tau) in &[(0.5, 0.4, 1usize), (0.3, -0.8, 2), (0.75, 1.1, 4)] {
            let g0 = gamma_eval(alpha, b, tau, 0.0);
            let g2pi = gamma_eval(alpha, b, tau, TAU);
            assert!((g0 - g2pi).norm() < 1e-12);
            for i in 1..40 {
                let t = TAU * i as f64 / 40.0;
                let fwd = gamma_eval(alpha, b, tau, t);
                let mirrored = gamma_eval(alpha, b, tau, TAU - t);
                assert!((mirrored - fwd.conj()).norm() < 1e-10, "t={t}");
            }
        }
    }

    #[test]
    fn unit_circle_at_integer_order() {
        // α=1, b=0 collapses to γ(t) = e^{it}.
        let curve = BoundaryCurve::sample(1.0, 0.0, 1, 256).unwrap();
        let mut worst: f64 = 0.0;
        for p in curve.points() {
            worst = worst.max((p.norm() - 1.0).abs());
        }
        assert!(worst < 1e-10, "radial deviation {worst:.3e}");
        let q = gamma_eval(1.0, 0.0, 1, FRAC_PI_2);
        assert!((q - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let h = 1e-6;
        for &(alpha, b, tau) in &[(0.5, 0.6, 1usize), (0.8, -1.0, 2)] {
            for i in 1..24 {
                let t = 0.3 + i as f64 * 0.23;
                if t >= TAU - 0.3 {
                    break;
                }
                let num = (gamma_eval(alpha, b, tau, t + h) - gamma_eval(alpha, b, tau, t - h))
                    / (2.0 * h);
                let ana = gamma_derivative(alpha, b, tau, t);
                assert!((num - ana).norm() < 1e-6 * ana.norm().max(1.0), "t={t}");
                let num2 = (gamma_derivative(alpha, b, tau, t + h)
                    - gamma_derivative(alpha, b, tau, t - h))
                    / (2.0 * h);
                let ana2 = gamma_second_derivative(alpha, b, tau, t);
                assert!((num2 - ana2).norm() < 1e-5 * ana2.norm().max(1.0), "t={t}");
            }
        }
    }

    #[test]
    fn winding_on_unit_circle() {
        let curve = BoundaryCurve::sample(1.0, 0.0, 1, 256).unwrap();
        assert_eq!(curve.winding_number(Complex64::new(0.0, 0.0)).unwrap(), 1);
        assert_eq!(curve.winding_number(Complex64::new(2.5, 0.0)).unwrap(), 0);
        assert_eq!(curve.winding_number_fast(Complex64::new(0.0, 0.0)), 1);
        assert_eq!(curve.winding_number_fast(Complex64::new(2.5, 0.0)), 0);
    }

    #[test]
    fn winding_stable_under_resolution_doubling() {
        let probes = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.8),
            Complex64::new(-1.2, 0.3),
            Complex64::new(2.0, -1.0),
            Complex64::new(-0.4, -0.9),
        ];
        for &(alpha, b, tau) in &[(0.5, 0.8, 1usize), (0.5, -1.15, 1), (0.5, -0.68, 2)] {
            let coarse = BoundaryCurve::sample(alpha, b, tau, 512).unwrap();
            let fine = BoundaryCurve::sample(alpha, b, tau, 1024).unwrap();
            for &a in &probes {
                let w0 = coarse.winding_number(a);
                let w1 = fine.winding_number(a);
                match (w0, w1) {
                    (Ok(w0), Ok(w1)) => assert_eq!(w0, w1, "a={a} alpha={alpha} b={b}"),
                    _ => {} // on-curve probes stay on-curve
                }
            }
        }
    }

    #[test]
    fn fast_and_angle_windings_agree() {
        let curve = BoundaryCurve::sample(0.5, -1.15, 1, 512).unwrap();
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..300 {
            let a = Complex64::new(next() * 6.0 - 3.0, next() * 6.0 - 3.0);
            if let Ok(w) = curve.winding_number(a) {
                assert_eq!(w, curve.winding_number_fast(a), "a={a}");
            }
        }
    }

    #[test]
    fn classify_boundary_and_interior() {
        // a = γ(0) = 1 − b sits on the curve for any parameters.
        let v = classify_point(0.5, 0.2, 1, Complex64::new(0.8, 0.0)).unwrap();
        assert_eq!(v.classification, Classification::Boundary);

        let stable = classify_point(0.5, 0.0, 1, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(stable.classification, Classification::Stable);
        assert_eq!(stable.winding, 1);

        let unstable = classify_point(0.5, 0.0, 1, Complex64::new(3.0, 0.0)).unwrap();
        assert_eq!(unstable.classification, Classification::Unstable);
        assert_eq!(unstable.winding, 0);
    }

    #[test]
    fn classical_limit_probe() {
        let curve = BoundaryCurve::sample(1.0, 0.0, 1, 512).unwrap();
        for i in 0..100 {
            let angle = TAU * i as f64 / 100.0;
            let inner = Complex64::from_polar(0.9, angle);
            let outer = Complex64::from_polar(1.1, angle);
            assert_eq!(curve.classify(inner).classification, Classification::Stable);
            assert_eq!(curve.classify(outer).classification, Classification::Unstable);
        }
    }

    #[test]
    fn char_residual_vanishes_on_curve() {
        for &(alpha, b, tau) in &[(0.5, 0.3, 1usize), (0.8, -0.7, 2), (1.0, 0.0, 1)] {
            for i in 0..=32 {
                let t = TAU * i as f64 / 32.0;
                let a = gamma_eval(alpha, b, tau, t);
                let z = Complex64::from_polar(1.0, t);
                let r = char_residual(alpha, a, b, tau, z).norm();
                assert!(r < 1e-12, "alpha={alpha} b={b} t={t}: {r:.3e}");
            }
        }
    }

    #[test]
    fn char_residual_classical_root() {
        let r = char_residual(
            1.0,
            Complex64::new(0.5, 0.0),
            0.0,
            1,
            Complex64::new(0.5, 0.0),
        );
        assert!(r.norm() < 1e-15);
        // t = 0 boundary point: z = 1, a = 1 − b.
        let r0 = char_residual(0.5, Complex64::new(0.8, 0.0), 0.2, 1, Complex64::new(1.0, 0.0));
        assert!(r0.norm() < 1e-15);
    }

    #[test]
    fn determinant_matches_characteristic_expression() {
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for tau in [1usize, 2] {
            for _ in 0..200 {
                let z = Complex64::from_polar(0.1 + 2.9 * next(), TAU * next());
                let a = Complex64::new(4.0 * next() - 2.0, 4.0 * next() - 2.0);
                let b = 3.0 * next() - 1.5;
                let alpha = 0.05 + 0.95 * next();
                let r = determinant_equivalence(alpha, a, b, tau, z);
                assert!(r < 1e-10, "tau={tau} z={z}: {r:.3e}");
            }
        }
        // Integer order is a polynomial identity.
        let r = determinant_equivalence(
            1.0,
            Complex64::new(0.3, 0.1),
            0.4,
            1,
            Complex64::new(1.7, -0.4),
        );
        assert!(r < 1e-12);
    }

    #[test]
    fn simple_curve_has_no_self_intersections() {
        let curve = BoundaryCurve::sample(0.5, 0.0, 1, 512).unwrap();
        assert!(curve.find_self_intersections().is_empty());
        let curve2 = BoundaryCurve::sample(0.5, 0.0, 2, 256).unwrap();
        assert!(curve2.find_self_intersections().is_empty());
    }

    #[test]
    fn refinement_caps_at_budget_factor() {
        let curve = BoundaryCurve::sample(0.5, -1.15, 1, 256).unwrap();
        assert!(curve.points().len() <= 64 * 256 + 1);
        // Parameters strictly increasing.
        for k in 1..curve.parameters().len() {
            assert!(curve.parameters()[k] > curve.parameters()[k - 1]);
        }
    }
}
