//! Local and global discretization errors, the stability constant, and the
//! chain `global <= K * local` over a refinement ladder.
//!
//! With `u_h = A^{-1} s_h f` the global error is exactly
//! `r_h u - u_h = A^{-1} (A r_h u - s_h f)`, so in any norm whose induced
//! operator norm of `A^{-1}` is at most `K` the global error is at most `K`
//! times the local one. `K = 1/|lambda_min|` is the spectral norm, which is
//! the induced norm for `l2` and `l2h` only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::{self, serialize_sig17, serialize_sig17_opt, sig17, Order};
use crate::grid::{restrict_data, restrict_solution, BVProblem, Grid, GridFunction, GridNorm};
use crate::spectral::{stability_summary, SpectralSummary};
use crate::tridiag::TridiagonalOperator;

/// Relative slack on the chain inequality.
pub const CHAIN_SLACK: f64 = 1e-9;
/// Rounding floor multiplier (times machine epsilon times term magnitude).
pub const ROUNDING_ULPS: f64 = 64.0;

/// One assembled discretization `(grid, A_h, r_h u, s_h f, u_h)`.
#[derive(Debug, Clone)]
pub struct MethodInstance {
    problem: BVProblem,
    grid: Grid,
    op: TridiagonalOperator,
    exact: GridFunction,
    data: GridFunction,
    discrete: GridFunction,
    stability: SpectralSummary,
}

impl MethodInstance {
    pub fn assemble(problem: &BVProblem, n: usize) -> Result<Self> {
        let grid = problem.grid(n)?;
        let op = TridiagonalOperator::scheme(&grid)?;
        let exact = restrict_solution(problem, &grid)?;
        let data = restrict_data(problem, &grid)?;
        let discrete = op.solve_grid(&data)?;
        let stability = stability_summary(n, problem.length())?;
        Ok(Self {
            problem: problem.clone(),
            grid,
            op,
            exact,
            data,
            discrete,
            stability,
        })
    }

    pub fn problem(&self) -> &BVProblem {
        &self.problem
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn operator(&self) -> &TridiagonalOperator {
        &self.op
    }

    /// `r_h u`
    pub fn exact(&self) -> &GridFunction {
        &self.exact
    }

    /// `s_h f`
    pub fn data(&self) -> &GridFunction {
        &self.data
    }

    /// `u_h`
    pub fn discrete(&self) -> &GridFunction {
        &self.discrete
    }

    pub fn stability(&self) -> &SpectralSummary {
        &self.stability
    }

    /// `A_h r_h u - s_h f`.
    pub fn local_residual(&self) -> GridFunction {
        let applied = self.op.matvec(&self.exact).expect("sizes fixed at assembly");
        applied.sub(&self.data).expect("sizes fixed at assembly")
    }

    pub fn local_error(&self, norm: GridNorm) -> f64 {
        self.local_residual().norm(norm)
    }

    pub fn global_error(&self, norm: GridNorm) -> f64 {
        self.exact
            .sub(&self.discrete)
            .expect("sizes fixed at assembly")
            .norm(norm)
    }

    /// Size of the rounding noise in the local error: a multiple of epsilon
    /// times `| |A| |r_h u| + |s_h f| |`.
    pub fn local_floor(&self, norm: GridNorm) -> f64 {
        let abs_op = TridiagonalOperator::new(
            self.op.n(),
            self.op.sub().abs(),
            self.op.diag().abs(),
            self.op.sup().abs(),
        )
        .expect("finite coefficients");
        let abs_u: Vec<f64> = self.exact.values().iter().map(|v| v.abs()).collect();
        let mag: Vec<f64> = abs_op
            .apply(&abs_u)
            .expect("sizes fixed at assembly")
            .iter()
            .zip(self.data.values())
            .map(|(a, f)| a + f.abs())
            .collect();
        ROUNDING_ULPS * f64::EPSILON * norm.eval(&mag, self.grid.h())
    }

    /// Rounding noise in the global error: the local floor propagated
    /// through the inverse (twice its spectral norm, which also covers the
    /// max and l1 norms of this operator) plus rounding in `r_h u` itself.
    pub fn global_floor(&self, norm: GridNorm) -> f64 {
        2.0 * self.stability.inv_norm * self.local_floor(norm)
            + ROUNDING_ULPS * f64::EPSILON * self.exact.norm(norm)
    }

    /// `global <= K * local`, with `K` the spectral norm of the inverse.
    ///
    /// Both sides are computed in floating point, so the comparison allows
    /// the global rounding floor on top of the relative `CHAIN_SLACK`.
    pub fn lax_chain_check(&self, norm: GridNorm) -> Result<ChainCheck> {
        if !norm.has_spectral_bound() {
            return Err(Error::UnsupportedNorm(norm.name()));
        }
        let local = self.local_error(norm);
        let global = self.global_error(norm);
        let k = self.stability.inv_norm;
        Ok(ChainCheck {
            global,
            local,
            k,
            ok: global <= k * local * (1.0 + CHAIN_SLACK) + self.global_floor(norm),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainCheck {
    pub global: f64,
    pub local: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "serialize_sig17")]
    pub h: f64,
    #[serde(rename = "local", serialize_with = "serialize_sig17")]
    pub local_error: f64,
    #[serde(rename = "global", serialize_with = "serialize_sig17")]
    pub global_error: f64,
    /// `None` for norms without a spectral bound.
    #[serde(rename = "K", serialize_with = "serialize_sig17_opt")]
    pub k_bound: Option<f64>,
    pub chain_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub problem: String,
    #[serde(rename = "L", serialize_with = "serialize_sig17")]
    pub length: f64,
    pub norm: GridNorm,
    pub rows: Vec<ConvergenceRow>,
    pub local_order: Order,
    pub global_order: Order,
}

impl ConvergenceReport {
    /// False if any row has a failed chain check.
    pub fn chains_ok(&self) -> bool {
        self.rows.iter().all(|r| r.chain_ok != Some(false))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,h,local,global,K,chain_ok\n");
        for r in &self.rows {
            let k = r.k_bound.map_or_else(|| "NA".to_string(), sig17);
            let ok = r.chain_ok.map_or_else(|| "NA".to_string(), |b| b.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n,
                sig17(r.h),
                sig17(r.local_error),
                sig17(r.global_error),
                k,
                ok
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Assemble a method per `N`, tabulate local and global errors with the
/// chain check, and fit both orders on the log-log scale.
pub fn refinement_study(p: &BVProblem, n_list: &[usize], norm: GridNorm) -> Result<ConvergenceReport> {
    if n_list.len() < 3 {
        return Err(Error::InvalidLadder(format!(
            "need at least 3 refinement levels, got {}",
            n_list.len()
        )));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidLadder("N values must be strictly increasing".into()));
    }

    let mut rows = Vec::with_capacity(n_list.len());
    let mut local_floors = Vec::with_capacity(n_list.len());
    let mut global_floors = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let m = MethodInstance::assemble(p, n).map_err(|e| match e {
            Error::GridTooSmall { .. } => e,
            other => Error::LevelFailed {
                n,
                source: Box::new(other),
            },
        })?;
        let local = m.local_error(norm);
        let global = m.global_error(norm);
        let (k_bound, chain_ok) = match m.lax_chain_check(norm) {
            Ok(c) => (Some(c.k), Some(c.ok)),
            Err(_) => (None, None),
        };
        local_floors.push(m.local_floor(norm));
        global_floors.push(m.global_floor(norm));
        rows.push(ConvergenceRow {
            n,
            h: m.grid().h(),
            local_error: local,
            global_error: global,
            k_bound,
            chain_ok,
        });
    }

    let hs: Vec<f64> = rows.iter().map(|r| r.h).collect();
    let locals: Vec<f64> = rows.iter().map(|r| r.local_error).collect();
    let globals: Vec<f64> = rows.iter().map(|r| r.global_error).collect();
    Ok(ConvergenceReport {
        problem: p.name().to_string(),
        length: p.length(),
        norm,
        local_order: fit::fit_order(&hs, &locals, &local_floors),
        global_order: fit::fit_order(&hs, &globals, &global_floors),
        rows,
    })
}
