//! Exponential families on a finite sample space.
//!
//! A representation `(C, F)` generates the densities
//! `p(x; θ) = exp(C(x) + ⟨θ, F(x)⟩ - ψ(θ))` for `θ ∈ ℝ^n`, where the
//! log-partition `ψ` normalizes each density.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::function_space::{quotient_project, same_space, FuncVec, MinimalFrame, SampleSpace};
use crate::tolerance::DEFAULT_MEMBERSHIP_TOL;

/// A pair `(C, F)` with `F` minimal.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    carrier: FuncVec,
    frame: MinimalFrame,
}

impl Representation {
    pub fn new(carrier: FuncVec, frame: MinimalFrame) -> Result<Self> {
        same_space(carrier.space(), frame.space())?;
        Ok(Self { carrier, frame })
    }

    /// Builds a representation from raw value vectors on `space`.
    pub fn from_values(
        space: Arc<SampleSpace>,
        carrier: Vec<f64>,
        functions: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let carrier = FuncVec::new(space.clone(), carrier)?;
        let functions = functions
            .into_iter()
            .map(|f| FuncVec::new(space.clone(), f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(carrier, MinimalFrame::from_functions(functions)?)
    }

    /// The base function `C`.
    pub fn carrier(&self) -> &FuncVec {
        &self.carrier
    }

    pub fn frame(&self) -> &MinimalFrame {
        &self.frame
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        self.carrier.space()
    }

    /// Intrinsic dimension `n`.
    pub fn n(&self) -> usize {
        self.frame.n()
    }

    /// Largest absolute entry of `C` and `F`.
    pub fn magnitude(&self) -> f64 {
        self.carrier.max_abs().max(self.frame.max_abs())
    }

    /// Exponents `C(x_i) + ⟨θ, F(x_i)⟩`.
    fn exponents(&self, theta: &DVector<f64>) -> Result<Vec<f64>> {
        check_dim(self.n(), theta.len())?;
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Input("natural parameters must be finite".into()));
        }
        let mut e = self.carrier.values().to_vec();
        for (t, f) in theta.iter().zip(self.frame.functions()) {
            for (acc, v) in e.iter_mut().zip(f.values()) {
                *acc += t * v;
            }
        }
        Ok(e)
    }
}

/// A strictly positive probability vector on a sample space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec(Vec<f64>);

impl ProbVec {
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
            return Err(Error::Input(
                "probabilities must be finite and strictly positive".into(),
            ));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::Input(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `ln Σ exp(e_i)` with the maximum factored out.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// `ψ(θ) = ln Σ_x exp(C(x) + ⟨θ, F(x)⟩)`.
pub fn log_partition(rep: &Representation, theta: &DVector<f64>) -> Result<f64> {
    Ok(log_sum_exp(&rep.exponents(theta)?))
}

pub fn density(rep: &Representation, theta: &DVector<f64>) -> Result<ProbVec> {
    let e = rep.exponents(theta)?;
    let psi = log_sum_exp(&e);
    Ok(ProbVec(e.into_iter().map(|v| (v - psi).exp()).collect()))
}

/// `∇ψ(θ)`: the expectation of `F` under `p(·; θ)`.
pub fn mean_statistic(rep: &Representation, theta: &DVector<f64>) -> Result<DVector<f64>> {
    let p = density(rep, theta)?;
    Ok(DVector::from_iterator(
        rep.n(),
        rep.frame
            .functions()
            .iter()
            .map(|f| f.values().iter().zip(p.values()).map(|(v, q)| v * q).sum()),
    ))
}

/// Hessian of `ψ`: the covariance matrix of `F` under `p(·; θ)`.
pub fn fisher_information(rep: &Representation, theta: &DVector<f64>) -> Result<DMatrix<f64>> {
    let p = density(rep, theta)?;
    let mean = mean_statistic(rep, theta)?;
    let n = rep.n();
    let fs = rep.frame.functions();
    let mut cov = DMatrix::zeros(n, n);
    for (i, &q) in p.values().iter().enumerate() {
        for a in 0..n {
            let da = fs[a].get(i) - mean[a];
            for b in a..n {
                cov[(a, b)] += q * da * (fs[b].get(i) - mean[b]);
            }
        }
    }
    for a in 0..n {
        for b in 0..a {
            cov[(a, b)] = cov[(b, a)];
        }
    }
    Ok(cov)
}

pub fn membership(rep: &Representation, p: &ProbVec) -> Result<Option<DVector<f64>>> {
    membership_with_tol(rep, p, DEFAULT_MEMBERSHIP_TOL)
}

/// Natural parameter of `p` in the family, if `p` belongs to it.
///
/// Solves `[ln p - C] = Σ θ_k [F_k]` by least squares in `C(Ω)/ℝ`, which
/// removes the unknown `ψ(θ)`, and accepts when the ∞-norm residual is at most `tol`.
pub fn membership_with_tol(
    rep: &Representation,
    p: &ProbVec,
    tol: f64,
) -> Result<Option<DVector<f64>>> {
    check_dim(rep.space().size(), p.len())?;
    let log_ratio = FuncVec::new(
        rep.space().clone(),
        p.values()
            .iter()
            .zip(rep.carrier.values())
            .map(|(q, c)| q.ln() - c)
            .collect(),
    )?;
    let target = quotient_project(&log_ratio).to_dvector();
    let m = rep.space().quotient_dim();
    let columns: Vec<DVector<f64>> = rep
        .frame
        .functions()
        .iter()
        .map(|f| quotient_project(f).to_dvector())
        .collect();
    let design = DMatrix::from_columns(&columns);
    debug_assert_eq!(design.nrows(), m);
    let theta = design
        .clone()
        .svd(true, true)
        .solve(&target, f64::EPSILON)
        .map_err(|e| Error::Degenerate(e.to_string()))?;
    let residual = (&design * &theta - &target).amax();
    Ok((residual <= tol).then_some(theta))
}
