//! Adaptive quadrature on finite and semi-infinite intervals.
//!
//! The workhorse is a globally adaptive Gauss–Kronrod 7/15 rule: segments
//! live in a max-heap keyed by the |K15 - G7| error estimate and the worst
//! one is bisected until the summed estimate meets the tolerance. This deals
//! with integrable endpoint singularities (arc-sine edges) by zooming into
//! them geometrically.

use crate::dd::Compensated;
use crate::error::{Result, VdError};
use num_complex::Complex64;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Values an integrand may produce. Only what the adaptive loop needs.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn norm(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        num_complex::Complex::norm(self)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult<V> {
    pub value: V,
    pub abs_err: f64,
    pub evals: usize,
}

struct Segment<V> {
    a: f64,
    b: f64,
    value: V,
    err: f64,
}

impl<V> PartialEq for Segment<V> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<V> Eq for Segment<V> {}
impl<V> PartialOrd for Segment<V> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Segment<V> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

fn gk15<V: QuadValue, F: FnMut(f64) -> V>(f: &mut F, a: f64, b: f64) -> (V, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut kronrod = V::zero();
    let mut gauss = V::zero();
    for (i, &x) in XGK.iter().enumerate() {
        let v = if x == 0.0 {
            f(mid)
        } else {
            f(mid - half * x).add(f(mid + half * x))
        };
        kronrod = kronrod.add(v.scale(WGK[i]));
        // Gauss nodes are the odd-index Kronrod nodes.
        if i % 2 == 1 {
            gauss = gauss.add(v.scale(WG[i / 2]));
        }
    }
    let k = kronrod.scale(half);
    let g = gauss.scale(half);
    let diff = k.add(g.scale(-1.0)).norm();
    // QUADPACK-style sharpened estimate.
    let err = if diff == 0.0 {
        0.0
    } else {
        diff * (200.0 * diff / (1.0 + k.norm())).min(1.0).powf(1.5).max(1e-3) * 1.0
    };
    (k, err.max(diff * 1e-3))
}

/// Globally adaptive integral of `f` over `[a, b]`.
///
/// Stops when the summed error estimate is below `abs_tol + rel_tol * |I|`.
pub fn quad<V: QuadValue, F: FnMut(f64) -> V>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadResult<V>> {
    const MAX_SEGMENTS: usize = 4000;
    let mut evals = 15usize;
    let (v0, e0) = gk15(&mut f, a, b);
    let mut heap: BinaryHeap<Segment<V>> = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value: v0,
        err: e0,
    });
    let mut total_err = e0;
    let mut total_norm = v0.norm();

    while total_err > abs_tol + rel_tol * total_norm {
        if heap.len() >= MAX_SEGMENTS {
            return Err(VdError::QuadratureNonConvergence {
                residual: total_err,
                context: format!("{} segments on [{a}, {b}]", heap.len()),
            });
        }
        let worst = heap.pop().expect("heap non-empty while error positive");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; accept its estimate.
            let mut v = worst.value;
            let mut e = worst.err;
            let mut n = worst.value.norm();
            for s in heap.iter() {
                v = v.add(s.value);
                e += s.err;
                n += s.value.norm();
            }
            return Ok(QuadResult {
                value: v,
                abs_err: e,
                evals,
            });
        }
        let (vl, el) = gk15(&mut f, worst.a, mid);
        let (vr, er) = gk15(&mut f, mid, worst.b);
        evals += 30;
        total_err += el + er - worst.err;
        total_norm += vl.norm() + vr.norm() - worst.value.norm();
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: vl,
            err: el,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: vr,
            err: er,
        });
    }

    let mut value = V::zero();
    let mut err = 0.0;
    for s in heap.iter() {
        value = value.add(s.value);
        err += s.err;
    }
    Ok(QuadResult {
        value,
        abs_err: err,
        evals,
    })
}

/// Integral over `[a, ∞)` via the rational substitution r = a + t/(1-t).
pub fn quad_to_inf<V: QuadValue, F: FnMut(f64) -> V>(
    mut f: F,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadResult<V>> {
    quad(
        |t| {
            let omt = 1.0 - t;
            let r = a + t / omt;
            let jac = 1.0 / (omt * omt);
            if jac.is_finite() {
                f(r).scale(jac)
            } else {
                V::zero()
            }
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
    )
}

/// Composite Simpson on a uniform grid; `values.len()` must be odd.
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    assert!(values.len() >= 3 && values.len() % 2 == 1);
    let mut acc = Compensated::default();
    acc.add(values[0]);
    acc.add(values[values.len() - 1]);
    for (i, &v) in values.iter().enumerate().skip(1).take(values.len() - 2) {
        acc.add(if i % 2 == 1 { 4.0 * v } else { 2.0 * v });
    }
    acc.value() * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = quad(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12, 1e-12).unwrap();
        // antiderivative x^4/4 - x^2 + x
        let exact = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert!((r.value - exact).abs() < 1e-10);
    }

    #[test]
    fn gaussian_tail() {
        let r = quad_to_inf(|x| (-x * x).exp(), 0.0, 1e-12, 1e-12).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-10);
    }

    #[test]
    fn arcsine_endpoint_singularity() {
        // ∫_0^2 (4-x²)^{-1/2} dx = π/2
        let r = quad(|x| 1.0 / ((2.0 - x) * (2.0 + x)).sqrt(), 0.0, 2.0, 1e-11, 0.0).unwrap();
        assert!(
            (r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-9,
            "got {} err {}",
            r.value,
            r.abs_err
        );
    }

    #[test]
    fn heavy_tail_moment() {
        // ∫_1^∞ r · r^{-3} dr = 1
        let r = quad_to_inf(|x| x.powi(-2), 1.0, 1e-12, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn oscillatory_complex() {
        // ∫_0^π e^{ix} dx = 2i
        let r = quad(
            |x| Complex64::new(0.0, x).exp(),
            0.0,
            std::f64::consts::PI,
            1e-12,
            1e-12,
        )
        .unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-10);
    }

    #[test]
    fn simpson_sine() {
        let n = 201;
        let h = std::f64::consts::PI / (n as f64 - 1.0);
        let vals: Vec<f64> = (0..n).map(|i| (i as f64 * h).sin()).collect();
        assert!((simpson_uniform(&vals, h) - 2.0).abs() < 1e-8);
    }

    #[test]
    fn reports_nonconvergence() {
        // 1/x on (0,1] is divergent; the heap must give up with an error.
        let r = quad(|x| 1.0 / x, 0.0, 1.0, 1e-10, 0.0);
        assert!(matches!(
            r,
            Err(VdError::QuadratureNonConvergence { .. })
        ));
    }
}
