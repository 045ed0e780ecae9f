//! Continuous two-point problems `u'' = f` on `(0, L)` with homogeneous
//! Dirichlet data, uniform interior grids, the restriction operators and
//! the discrete norms.
//!
//! Boundary unknowns are eliminated: a grid with `N` interior points has
//! `h = L/(N+1)` and nodes `x_i = i*h` for `i = 1..=N`. The values at
//! `x_0 = 0` and `x_{N+1} = L` are pinned to zero by the problem and never
//! stored.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for the homogeneous boundary values of a registered solution.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Maximum number of polynomial coefficients accepted by `poly:`.
pub const MAX_POLY_COEFFS: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind {
    /// `u = 0`, `f = 0`.
    Zero,
    /// `u'' = 1`, `u = x(x - L)/2`.
    ConstantRhs,
    /// `u = sin(k pi x / L)`, `f = -(k pi / L)^2 u`.
    Sine { k: u32 },
    /// `u = sum c_i x^i`, `f = u''`; coefficients must satisfy the boundary data.
    Poly { coeffs: Vec<f64> },
}

/// A registered exact solution together with its right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct BVProblem {
    name: String,
    length: f64,
    kind: ProblemKind,
}

impl BVProblem {
    fn new(name: String, length: f64, kind: ProblemKind) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidLength(length));
        }
        let p = Self { name, length, kind };
        let scale = match &p.kind {
            ProblemKind::Poly { coeffs } => coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.abs() * length.powi(i as i32))
                .sum::<f64>()
                .max(1.0),
            _ => 1.0,
        };
        for x in [0.0, length] {
            let u = p.u(x);
            if u.abs() > BOUNDARY_TOL * scale {
                return Err(Error::InvalidProblem {
                    name: p.name.clone(),
                    reason: format!("u({x}) = {u:e} violates the homogeneous boundary condition"),
                });
            }
        }
        Ok(p)
    }

    pub fn zero(length: f64) -> Result<Self> {
        Self::new("zero".into(), length, ProblemKind::Zero)
    }

    pub fn constant_rhs(length: f64) -> Result<Self> {
        Self::new("constant_rhs".into(), length, ProblemKind::ConstantRhs)
    }

    pub fn sine(k: u32, length: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidProblem {
                name: "sine:k=0".into(),
                reason: "wavenumber must be at least 1".into(),
            });
        }
        Self::new(format!("sine:k={k}"), length, ProblemKind::Sine { k })
    }

    pub fn poly(coeffs: &[f64], length: f64) -> Result<Self> {
        let name = format!(
            "poly:{}",
            coeffs.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
        );
        if coeffs.is_empty() || coeffs.len() > MAX_POLY_COEFFS {
            return Err(Error::InvalidProblem {
                name,
                reason: format!("expected 1..={MAX_POLY_COEFFS} coefficients"),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidProblem {
                name,
                reason: "coefficients must be finite".into(),
            });
        }
        Self::new(
            name,
            length,
            ProblemKind::Poly {
                coeffs: coeffs.to_vec(),
            },
        )
    }

    /// Parse a selection string: `zero`, `constant_rhs`, `sine:k=<int>` (or
    /// bare `sine` for k = 1) or `poly:c0,c1,..,c5`.
    pub fn parse(selection: &str, length: f64) -> Result<Self> {
        let selection = selection.trim();
        let (head, params) = match selection.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (selection, None),
        };
        let invalid = |reason: &str| Error::InvalidProblem {
            name: selection.to_string(),
            reason: reason.to_string(),
        };
        match (head, params) {
            ("zero", None) => Self::zero(length),
            ("constant_rhs", None) => Self::constant_rhs(length),
            ("sine", None) => Self::sine(1, length),
            ("sine", Some(p)) => {
                let k = p
                    .strip_prefix("k=")
                    .ok_or_else(|| invalid("expected sine:k=<int>"))?
                    .parse::<u32>()
                    .map_err(|_| invalid("k must be a positive integer"))?;
                Self::sine(k, length)
            }
            ("poly", Some(p)) => {
                let coeffs = p
                    .split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| invalid("coefficients must be reals"))?;
                Self::poly(&coeffs, length)
            }
            ("zero" | "constant_rhs", Some(_)) => Err(invalid("takes no parameters")),
            ("poly", None) => Err(invalid("expected poly:c0,..,c5")),
            _ => Err(Error::UnknownProblem(selection.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn kind(&self) -> &ProblemKind {
        &self.kind
    }

    pub fn u(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    /// `d^order u / dx^order` at `x`.
    pub fn derivative(&self, order: u32, x: f64) -> f64 {
        match &self.kind {
            ProblemKind::Zero => 0.0,
            ProblemKind::ConstantRhs => match order {
                0 => 0.5 * x * (x - self.length),
                1 => x - 0.5 * self.length,
                2 => 1.0,
                _ => 0.0,
            },
            ProblemKind::Sine { k } => {
                let w = f64::from(*k) * PI / self.length;
                let scale = w.powi(order as i32);
                let (s, c) = (w * x).sin_cos();
                match order % 4 {
                    0 => scale * s,
                    1 => scale * c,
                    2 => -scale * s,
                    _ => -scale * c,
                }
            }
            ProblemKind::Poly { coeffs } => {
                // Horner on the differentiated coefficients.
                let order = order as usize;
                coeffs
                    .iter()
                    .enumerate()
                    .skip(order)
                    .rev()
                    .fold(0.0, |acc, (i, &c)| {
                        let falling: f64 = ((i - order + 1)..=i).map(|t| t as f64).product();
                        acc * x + c * falling
                    })
            }
        }
    }

    /// Right-hand side `f`, written out per problem rather than through
    /// `derivative(2, x)` so the two can be checked against each other.
    pub fn rhs(&self, x: f64) -> f64 {
        match &self.kind {
            ProblemKind::Zero => 0.0,
            ProblemKind::ConstantRhs => 1.0,
            ProblemKind::Sine { k } => {
                let w = f64::from(*k) * PI / self.length;
                -w * w * (w * x).sin()
            }
            ProblemKind::Poly { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(2)
                .map(|(i, c)| c * (i * (i - 1)) as f64 * x.powi(i as i32 - 2))
                .sum(),
        }
    }

    pub fn grid(&self, n: usize) -> Result<Grid> {
        Grid::new(n, self.length)
    }
}

impl fmt::Display for BVProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on (0, {})", self.name, self.length)
    }
}

/// Uniform grid of `n` interior points on `(0, length)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    length: f64,
    h: f64,
}

impl Grid {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::GridTooSmall { n, min: 1 });
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidLength(length));
        }
        Ok(Self {
            n,
            length,
            h: length / (n + 1) as f64,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Node `x_i = i h`, 1-based; `x(0) = 0` and `x(n+1) = L` are the
    /// boundary nodes.
    pub fn x(&self, i: usize) -> f64 {
        if i == self.n + 1 {
            self.length
        } else {
            i as f64 * self.h
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.n).map(|i| self.x(i))
    }

    fn check_domain(&self, p: &BVProblem) -> Result<()> {
        let rel = (self.length - p.length).abs() / p.length;
        if rel > 1e-12 {
            return Err(Error::OutOfDomain {
                value: self.length,
                domain: format!("problem domain length {}", p.length),
            });
        }
        Ok(())
    }
}

/// Discrete norm on grid functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GridNorm {
    #[serde(rename = "max")]
    Max,
    #[serde(rename = "l1")]
    L1,
    #[serde(rename = "l2")]
    L2,
    /// `sqrt(h * sum v_i^2)`, the discrete analogue of the continuum L2 norm.
    #[serde(rename = "l2h")]
    L2H,
}

impl GridNorm {
    pub const ALL: [GridNorm; 4] = [GridNorm::Max, GridNorm::L1, GridNorm::L2, GridNorm::L2H];

    pub fn name(self) -> &'static str {
        match self {
            GridNorm::Max => "max",
            GridNorm::L1 => "l1",
            GridNorm::L2 => "l2",
            GridNorm::L2H => "l2h",
        }
    }

    pub fn eval(self, values: &[f64], h: f64) -> f64 {
        match self {
            GridNorm::Max => values.iter().fold(0.0, |m, v| m.max(v.abs())),
            GridNorm::L1 => values.iter().map(|v| v.abs()).sum(),
            GridNorm::L2 => hypot_sum(values),
            GridNorm::L2H => h.sqrt() * hypot_sum(values),
        }
    }

    /// Whether the spectral norm of the inverse bounds the induced operator
    /// norm for this vector norm.
    pub fn has_spectral_bound(self) -> bool {
        matches!(self, GridNorm::L2 | GridNorm::L2H)
    }
}

// Scaled to avoid overflow for large entries.
fn hypot_sum(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    scale * values.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
}

impl fmt::Display for GridNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GridNorm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "max" | "linf" => Ok(GridNorm::Max),
            "l1" => Ok(GridNorm::L1),
            "l2" => Ok(GridNorm::L2),
            "l2h" | "l2_h_weighted" => Ok(GridNorm::L2H),
            other => Err(format!("unknown norm `{other}` (max, l1, l2, l2h)")),
        }
    }
}

/// Values on the interior nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::DimensionMismatch {
                expected: grid.n(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn norm(&self, kind: GridNorm) -> f64 {
        kind.eval(&self.values, self.grid.h())
    }

    /// `self - other` on the same grid.
    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        if other.values.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: other.values.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(GridFunction {
            grid: self.grid,
            values,
        })
    }
}

/// `r_h u`: samples the exact solution at the interior nodes.
pub fn restrict_solution(p: &BVProblem, g: &Grid) -> Result<GridFunction> {
    g.check_domain(p)?;
    GridFunction::new(*g, g.points().map(|x| p.u(x)).collect())
}

/// `s_h f`: samples the right-hand side at the interior nodes.
pub fn restrict_data(p: &BVProblem, g: &Grid) -> Result<GridFunction> {
    g.check_domain(p)?;
    GridFunction::new(*g, g.points().map(|x| p.rhs(x)).collect())
}

pub fn grid_norm(v: &GridFunction, kind: GridNorm) -> f64 {
    v.norm(kind)
}
