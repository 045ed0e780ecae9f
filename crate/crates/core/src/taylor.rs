//! Taylor-Lagrange bounds for the central second difference.
//!
//! For a point `x` in `(0, L)` and a step `dx > 0`, the degree-3 remainders
//!
//! ```text
//! F(x) = u(x+dx) - u(x) - dx u' - dx^2/2 u'' - dx^3/6 u'''
//! G(x) = u(x-dx) - u(x) + dx u' - dx^2/2 u'' + dx^3/6 u'''
//! ```
//!
//! satisfy `|F| <= M dx^4` for `dx < L - x` and `|G| <= K dx^4` for `dx < x`,
//! with `M`, `K` the largest `|u''''|` on `[x, L]` and `[0, x]`. Their sum is
//! the stencil numerator minus `dx^2 u''`, so the truncation error of the
//! stencil is at most `(M + K) dx^2` whenever `dx < min(L - x, x)`.
//!
//! All inequalities are checked in floating point with an explicit rounding
//! allowance proportional to the magnitude of the cancelled terms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::{self, serialize_sig17, serialize_sig17_vec, Order};
use crate::grid::BVProblem;

/// Uniform samples used to locate the maximum of `|u''''|` on an interval.
pub const EXTREMUM_SAMPLES: usize = 4096;
/// Multiplicative inflation applied to the sampled maximum.
pub const EXTREMUM_INFLATION: f64 = 1.01;
/// Rounding allowance, in units of machine epsilon times the cancelled terms.
pub const ROUNDING_ULPS: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Forward,
    Backward,
}

/// `(eta, M)` for the forward remainder or `(delta, K)` for the backward one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderBound {
    pub side: Side,
    pub x: f64,
    /// `L - x` (forward) or `x` (backward).
    pub radius: f64,
    /// Largest sampled `|u''''|` on the interval.
    pub peak: f64,
    /// `peak * EXTREMUM_INFLATION`.
    pub constant: f64,
}

/// `gamma = min(eta, delta)` and `Gamma = M + K` at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyBound {
    pub x: f64,
    pub gamma_radius: f64,
    #[serde(rename = "Gamma")]
    pub gamma: f64,
    /// `max(M, K) / 12`, the classical constant of the central stencil.
    #[serde(rename = "Gamma_tight")]
    pub gamma_tight: f64,
    pub forward: RemainderBound,
    pub backward: RemainderBound,
}

fn out_of_domain(value: f64, domain: String) -> Error {
    Error::OutOfDomain { value, domain }
}

fn check_interior(p: &BVProblem, x: f64) -> Result<()> {
    if !(x > 0.0 && x < p.length()) {
        return Err(out_of_domain(x, format!("open interval (0, {})", p.length())));
    }
    Ok(())
}

fn check_step(dx: f64) -> Result<()> {
    if !(dx > 0.0 && dx.is_finite()) {
        return Err(out_of_domain(dx, "positive step".into()));
    }
    Ok(())
}

fn taylor_terms(p: &BVProblem, x: f64, dx: f64) -> [f64; 4] {
    [
        p.u(x),
        dx * p.derivative(1, x),
        dx * dx / 2.0 * p.derivative(2, x),
        dx * dx * dx / 6.0 * p.derivative(3, x),
    ]
}

/// `F(x)`; requires `0 < x < x + dx < L`.
pub fn remainder_forward(p: &BVProblem, x: f64, dx: f64) -> Result<f64> {
    check_interior(p, x)?;
    check_step(dx)?;
    check_interior(p, x + dx)?;
    let [u0, t1, t2, t3] = taylor_terms(p, x, dx);
    Ok(p.u(x + dx) - u0 - t1 - t2 - t3)
}

/// `G(x)`; requires `0 < x - dx < x < L`.
pub fn remainder_backward(p: &BVProblem, x: f64, dx: f64) -> Result<f64> {
    check_interior(p, x)?;
    check_step(dx)?;
    check_interior(p, x - dx)?;
    let [u0, t1, t2, t3] = taylor_terms(p, x, dx);
    Ok(p.u(x - dx) - u0 + t1 - t2 + t3)
}

/// Rounding allowance for `F` (`sign = 1`) or `G` (`sign = -1`).
fn remainder_allowance(p: &BVProblem, x: f64, dx: f64, sign: f64) -> f64 {
    let y = x + sign * dx;
    let terms: f64 = taylor_terms(p, x, dx).iter().map(|t| t.abs()).sum();
    ROUNDING_ULPS
        * f64::EPSILON
        * (p.u(y).abs() + terms + y.abs() * p.derivative(1, y).abs() + x.abs() * p.derivative(1, x).abs())
}

/// Rounding allowance for the stencil value at step `dx`.
pub fn stencil_allowance(p: &BVProblem, x: f64, dx: f64) -> f64 {
    let mag = p.u(x + dx).abs()
        + 2.0 * p.u(x).abs()
        + p.u(x - dx).abs()
        + (x + dx).abs() * p.derivative(1, x + dx).abs()
        + (x - dx).abs() * p.derivative(1, x - dx).abs();
    ROUNDING_ULPS * f64::EPSILON * mag / (dx * dx) + ROUNDING_ULPS * f64::EPSILON * p.derivative(2, x).abs()
}

/// Largest `|g|` on `[lo, hi]`: dense uniform sampling, then golden-section
/// refinement around the best sample.
pub fn interval_max_abs(g: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let n = EXTREMUM_SAMPLES;
    let step = (hi - lo) / (n - 1) as f64;
    let at = |i: usize| if i == n - 1 { hi } else { lo + i as f64 * step };
    let (best_i, best) = (0..n)
        .map(|i| (i, g(at(i)).abs()))
        .fold((0, f64::NEG_INFINITY), |acc, v| if v.1 > acc.1 { v } else { acc });

    let mut a = at(best_i.saturating_sub(1));
    let mut b = at((best_i + 1).min(n - 1));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut gc, mut gd) = (g(c).abs(), g(d).abs());
    for _ in 0..80 {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - ratio * (b - a);
            gc = g(c).abs();
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + ratio * (b - a);
            gd = g(d).abs();
        }
    }
    best.max(gc).max(gd)
}

/// `(eta, M)` or `(delta, K)` at `x`.
pub fn remainder_bound(p: &BVProblem, x: f64, side: Side) -> Result<RemainderBound> {
    check_interior(p, x)?;
    let (lo, hi, radius) = match side {
        Side::Forward => (x, p.length(), p.length() - x),
        Side::Backward => (0.0, x, x),
    };
    let peak = interval_max_abs(|t| p.derivative(4, t), lo, hi);
    Ok(RemainderBound {
        side,
        x,
        radius,
        peak,
        constant: peak * EXTREMUM_INFLATION,
    })
}

pub fn consistency_bound(p: &BVProblem, x: f64) -> Result<ConsistencyBound> {
    let forward = remainder_bound(p, x, Side::Forward)?;
    let backward = remainder_bound(p, x, Side::Backward)?;
    Ok(ConsistencyBound {
        x,
        gamma_radius: forward.radius.min(backward.radius),
        gamma: forward.constant + backward.constant,
        gamma_tight: forward.constant.max(backward.constant) / 12.0,
        forward,
        backward,
    })
}

/// `(u(x+dx) - 2u(x) + u(x-dx)) / dx^2`; requires `[x - dx, x + dx]` inside `[0, L]`.
pub fn central_diff_second(p: &BVProblem, x: f64, dx: f64) -> Result<f64> {
    check_step(dx)?;
    let (lo, hi) = (x - dx, x + dx);
    if lo < 0.0 || hi > p.length() {
        return Err(out_of_domain(
            if lo < 0.0 { lo } else { hi },
            format!("closed interval [0, {}]", p.length()),
        ));
    }
    Ok((p.u(hi) - 2.0 * p.u(x) + p.u(lo)) / (dx * dx))
}

/// Signed truncation error `stencil - u''(x)`.
pub fn truncation_error(p: &BVProblem, x: f64, dx: f64) -> Result<f64> {
    Ok(central_diff_second(p, x, dx)? - p.derivative(2, x))
}

/// Outcome of checking every inequality of the consistency argument at one
/// `(x, dx)` sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleCheck {
    pub x: f64,
    pub dx: f64,
    pub forward: f64,
    pub backward: f64,
    pub tau: f64,
    /// `|F| <= M dx^4`
    pub forward_ok: bool,
    /// `|G| <= K dx^4`
    pub backward_ok: bool,
    /// `|F + G| <= |F| + |G| <= (M + K) dx^4`
    pub triangle_ok: bool,
    /// `|tau| <= Gamma dx^2`
    pub stencil_ok: bool,
    /// `|tau| <= Gamma_tight dx^2`
    pub tight_ok: bool,
    /// `|F + G - (numerator - dx^2 u'')|` relative to the summed term magnitudes.
    pub identity_residual: f64,
}

impl SampleCheck {
    pub fn all_ok(&self) -> bool {
        self.forward_ok && self.backward_ok && self.triangle_ok && self.stencil_ok && self.tight_ok
    }
}

/// Check the remainder and stencil bounds of `bound` at step `dx < gamma`.
pub fn check_sample(p: &BVProblem, bound: &ConsistencyBound, dx: f64) -> Result<SampleCheck> {
    let x = bound.x;
    if !(dx < bound.gamma_radius) {
        return Err(out_of_domain(dx, format!("step below gamma = {}", bound.gamma_radius)));
    }
    let f = remainder_forward(p, x, dx)?;
    let g = remainder_backward(p, x, dx)?;
    let tau = truncation_error(p, x, dx)?;
    let dx4 = dx.powi(4);
    let af = remainder_allowance(p, x, dx, 1.0);
    let ag = remainder_allowance(p, x, dx, -1.0);
    let at = stencil_allowance(p, x, dx);

    let (up, u0, um) = (p.u(x + dx), p.u(x), p.u(x - dx));
    let numerator = up - 2.0 * u0 + um - dx * dx * p.derivative(2, x);
    let scale = up.abs()
        + 2.0 * u0.abs()
        + um.abs()
        + taylor_terms(p, x, dx).iter().skip(1).map(|t| 2.0 * t.abs()).sum::<f64>();
    let identity_residual = if scale == 0.0 {
        (f + g - numerator).abs()
    } else {
        (f + g - numerator).abs() / scale
    };

    Ok(SampleCheck {
        x,
        dx,
        forward: f,
        backward: g,
        tau,
        forward_ok: f.abs() <= bound.forward.constant * dx4 + af,
        backward_ok: g.abs() <= bound.backward.constant * dx4 + ag,
        triangle_ok: (f + g).abs() <= f.abs() + g.abs()
            && f.abs() + g.abs() <= bound.gamma * dx4 + af + ag,
        stencil_ok: tau.abs() <= bound.gamma * dx * dx + at,
        tight_ok: tau.abs() <= bound.gamma_tight * dx * dx + at,
        identity_residual,
    })
}

/// Geometric ladder with ratio 1/2 starting at `min(gamma/2, L/10)`.
pub fn default_dx_ladder(p: &BVProblem, x: f64, levels: usize) -> Result<Vec<f64>> {
    let bound = consistency_bound(p, x)?;
    let start = (bound.gamma_radius / 2.0).min(p.length() / 10.0);
    Ok((0..levels).map(|k| start * 0.5f64.powi(k as i32)).collect())
}

/// Result of an empirical truncation-order measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderFit {
    #[serde(serialize_with = "serialize_sig17")]
    pub x: f64,
    #[serde(serialize_with = "serialize_sig17_vec")]
    pub dx_list: Vec<f64>,
    /// `|tau|` per step.
    #[serde(serialize_with = "serialize_sig17_vec")]
    pub tau_list: Vec<f64>,
    pub slope: Order,
    #[serde(rename = "Gamma", serialize_with = "serialize_sig17")]
    pub gamma: f64,
    #[serde(rename = "Gamma_tight", serialize_with = "serialize_sig17")]
    pub gamma_tight: f64,
    #[serde(serialize_with = "serialize_sig17")]
    pub gamma_radius: f64,
}

fn check_ladder(dx_list: &[f64], gamma: f64) -> Result<()> {
    if dx_list.len() < 3 {
        return Err(Error::InvalidLadder(format!(
            "need at least 3 steps, got {}",
            dx_list.len()
        )));
    }
    if let Some(&bad) = dx_list.iter().find(|&&d| !(d > 0.0 && d < gamma)) {
        return Err(Error::InvalidLadder(format!(
            "step {bad} outside (0, gamma = {gamma})"
        )));
    }
    let ratio = dx_list[1] / dx_list[0];
    if (ratio - 1.0).abs() < 1e-9 {
        return Err(Error::InvalidLadder("steps must differ".into()));
    }
    if dx_list
        .windows(2)
        .any(|w| ((w[1] / w[0]) - ratio).abs() > 1e-6 * ratio)
    {
        return Err(Error::InvalidLadder("steps must form a geometric sequence".into()));
    }
    Ok(())
}

/// Least-squares order of `|tau|` over a geometric step ladder inside the
/// consistency radius.
pub fn truncation_order_fit(p: &BVProblem, x: f64, dx_list: &[f64]) -> Result<OrderFit> {
    let bound = consistency_bound(p, x)?;
    check_ladder(dx_list, bound.gamma_radius)?;
    let tau_list = dx_list
        .iter()
        .map(|&dx| truncation_error(p, x, dx).map(f64::abs))
        .collect::<Result<Vec<_>>>()?;
    let floors: Vec<f64> = dx_list.iter().map(|&dx| stencil_allowance(p, x, dx)).collect();
    Ok(OrderFit {
        x,
        dx_list: dx_list.to_vec(),
        slope: fit::fit_order(dx_list, &tau_list, &floors),
        tau_list,
        gamma: bound.gamma,
        gamma_tight: bound.gamma_tight,
        gamma_radius: bound.gamma_radius,
    })
}
