//! Log-log order fitting and fixed-precision number formatting shared by
//! the order studies and the report writers.

use serde::{Serialize, Serializer};

/// Errors at or below this are treated as exact zeros.
pub const UNDERFLOW_FLOOR: f64 = 1e-14;

/// Per-step observed orders spreading by more than this mark the coarse end
/// of the ladder as pre-asymptotic.
pub const CURVATURE_SPREAD: f64 = 0.2;

/// Fitted convergence order, or `Exact` when too few errors rise above the
/// rounding floor to fit a line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Slope(f64),
    Exact,
}

impl Order {
    pub fn slope(self) -> Option<f64> {
        match self {
            Order::Slope(s) => Some(s),
            Order::Exact => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Order::Exact)
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Slope(x) => serialize_sig17(x, s),
            Order::Exact => s.serialize_str("exact"),
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Slope(x) => write!(f, "{}", sig17(*x)),
            Order::Exact => f.write_str("exact"),
        }
    }
}

/// Least-squares slope of `ln y` against `ln x`. `None` for fewer than two
/// points or a degenerate abscissa.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

/// Fit the order of `errors` against `steps`.
///
/// A point is dropped when its error is at or below `UNDERFLOW_FLOOR` or its
/// own rounding floor in `floors`. With fewer than three survivors the
/// result is `Order::Exact`. When the per-step orders of the survivors
/// spread by more than `CURVATURE_SPREAD`, only the finest half is fitted.
pub fn fit_order(steps: &[f64], errors: &[f64], floors: &[f64]) -> Order {
    let mut pts: Vec<(f64, f64)> = steps
        .iter()
        .zip(errors)
        .zip(floors)
        .filter(|((_, &e), &fl)| e.is_finite() && e > UNDERFLOW_FLOOR.max(fl))
        .map(|((&s, &e), _)| (s, e))
        .collect();
    if pts.len() < 3 {
        return Order::Exact;
    }
    pts.sort_by(|a, b| b.0.total_cmp(&a.0));

    let local: Vec<f64> = pts
        .windows(2)
        .map(|w| (w[0].1 / w[1].1).ln() / (w[0].0 / w[1].0).ln())
        .collect();
    let lo = local.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = local.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > CURVATURE_SPREAD {
        let keep = pts.len().div_ceil(2).max(2);
        pts.drain(..pts.len() - keep);
    }

    let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    loglog_slope(&xs, &ys).map_or(Order::Exact, Order::Slope)
}

/// 17 significant digits in scientific notation; round-trips every `f64`.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serialize an `f64` as a JSON number with 17 significant digits
/// (non-finite values become `null`).
pub fn serialize_sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = serde_json::value::RawValue::from_string(sig17(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub fn serialize_sig17_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_sig17(v, s),
        None => s.serialize_none(),
    }
}

pub fn serialize_sig17_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Sig17(*x))?;
    }
    seq.end()
}

struct Sig17(f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_sig17(&self.0, s)
    }
}
