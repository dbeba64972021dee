//! Deciding whether two representations generate the same family.
//!
//! Two minimal representations `(C, F)` and `(C', F')` give the same family
//! exactly when `(C, F) = g · (C', F')` for some `g ∈ G_n`, and that `g` is
//! unique. [`recover_witness`] reconstructs the candidate `g` from `n + 1`
//! well-chosen sample points and then checks it against every point.

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::expfam::{log_partition, Representation};
use crate::function_space::{
    difference_matrix, difference_vector, is_invertible, same_space, select_pivot_indices_with_tol,
};
use crate::group::{act, GroupElement};
use crate::tolerance::Tolerances;

/// Factor around the decision threshold inside which a verdict is flagged marginal.
pub const MARGINAL_FACTOR: f64 = 10.0;

/// Outcome of a witness search.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub equivalent: bool,
    /// Present iff `equivalent`.
    pub witness: Option<GroupElement>,
    /// Max deviation of `act(candidate, rep')` from `rep`; infinite when no
    /// candidate with invertible `A` exists.
    pub residual: f64,
    /// Decision threshold the residual was compared against.
    pub threshold: f64,
    /// Residual lies within a factor [`MARGINAL_FACTOR`] of the threshold.
    pub marginal: bool,
    pub pivot_indices: Vec<usize>,
}

fn max_rep_deviation(a: &Representation, b: &Representation) -> f64 {
    let mut dev = a
        .carrier()
        .values()
        .iter()
        .zip(b.carrier().values())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    for (fa, fb) in a.frame().functions().iter().zip(b.frame().functions()) {
        for (x, y) in fa.values().iter().zip(fb.values()) {
            dev = dev.max((x - y).abs());
        }
    }
    dev
}

/// Mean of a family of vectors and the ∞-norm deviation from it.
fn mean_and_spread(samples: &[DVector<f64>]) -> (DVector<f64>, f64) {
    let mut mean = DVector::zeros(samples[0].len());
    for s in samples {
        mean += s;
    }
    mean /= samples.len() as f64;
    let spread = samples
        .iter()
        .fold(0.0f64, |m, s| m.max((s - &mean).amax()));
    (mean, spread)
}

fn check_compatible(rep: &Representation, rep_prime: &Representation) -> Result<()> {
    same_space(rep.space(), rep_prime.space())?;
    check_dim(rep_prime.n(), rep.n())
}

pub fn recover_witness(rep: &Representation, rep_prime: &Representation) -> Result<WitnessReport> {
    recover_witness_with(rep, rep_prime, &Tolerances::default())
}

/// Finds `g` with `rep = g · rep_prime`, pivoting on points chosen from `F'`.
pub fn recover_witness_with(
    rep: &Representation,
    rep_prime: &Representation,
    tol: &Tolerances,
) -> Result<WitnessReport> {
    check_compatible(rep, rep_prime)?;
    let indices = select_pivot_indices_with_tol(rep_prime.frame(), tol.rank)?;
    recover_witness_at(rep, rep_prime, &indices, tol)
}

/// Witness recovery using caller-supplied pivot points.
///
/// The difference matrix of `F'` at `indices` must be invertible; otherwise
/// this returns [`Error::Degenerate`].
pub fn recover_witness_at(
    rep: &Representation,
    rep_prime: &Representation,
    indices: &[usize],
    tol: &Tolerances,
) -> Result<WitnessReport> {
    check_compatible(rep, rep_prime)?;
    let f = rep.frame();
    let f_prime = rep_prime.frame();

    let m_prime = difference_matrix(f_prime, indices)?;
    let m = difference_matrix(f, indices)?;
    let n_prime = difference_vector(rep_prime.carrier(), indices)?;
    let n_vec = difference_vector(rep.carrier(), indices)?;
    if !is_invertible(&m_prime, tol.rank) {
        return Err(Error::Degenerate(format!(
            "difference matrix of F' at pivots {indices:?} is singular"
        )));
    }
    let lu = m_prime.transpose().lu();
    // L = ((M')^T)^{-1} M^T and u = ((M')^T)^{-1} (N - N').
    let l = lu
        .solve(&m.transpose())
        .ok_or_else(|| Error::Degenerate("LU solve for L failed".into()))?;
    let u = lu
        .solve(&(n_vec - n_prime))
        .ok_or_else(|| Error::Degenerate("LU solve for u failed".into()))?;
    let a: DMatrix<f64> = l.transpose();

    let scale = 1f64.max(rep.magnitude()).max(rep_prime.magnitude());
    let threshold = tol.decision * scale;
    let points = rep.space().size();

    // v(x) = F(x) - A F'(x) must be constant.
    let v_samples: Vec<DVector<f64>> = (0..points)
        .map(|i| f.eval(i) - &a * f_prime.eval(i))
        .collect();
    let (v, v_spread) = mean_and_spread(&v_samples);

    // c(x) = C(x) - C'(x) - ⟨u, F'(x)⟩ must be constant.
    let c_samples: Vec<DVector<f64>> = (0..points)
        .map(|i| {
            DVector::from_element(
                1,
                rep.carrier().get(i) - rep_prime.carrier().get(i) - u.dot(&f_prime.eval(i)),
            )
        })
        .collect();
    let (c, c_spread) = mean_and_spread(&c_samples);

    let candidate = GroupElement::with_tol(a, u, v, c[0], tol.rank)
        .ok()
        .and_then(|g| act(&g, rep_prime).ok().map(|image| (g, image)));
    let (witness, residual) = match candidate {
        Some((g, image)) => {
            let residual = max_rep_deviation(&image, rep);
            (Some(g), residual)
        }
        None => (None, f64::INFINITY),
    };

    let equivalent = witness.is_some()
        && v_spread <= threshold
        && c_spread <= threshold
        && residual <= threshold;
    let marginal =
        residual >= threshold / MARGINAL_FACTOR && residual <= threshold * MARGINAL_FACTOR;
    Ok(WitnessReport {
        equivalent,
        witness: if equivalent { witness } else { None },
        residual,
        threshold,
        marginal,
        pivot_indices: indices.to_vec(),
    })
}

pub fn are_equivalent(rep: &Representation, rep_prime: &Representation) -> Result<bool> {
    Ok(recover_witness(rep, rep_prime)?.equivalent)
}

pub fn are_equivalent_with(
    rep: &Representation,
    rep_prime: &Representation,
    tol: &Tolerances,
) -> Result<bool> {
    Ok(recover_witness_with(rep, rep_prime, tol)?.equivalent)
}

/// `A^T θ + u`: the parameter of `rep'` that yields the same density as `θ` does for `g · rep'`.
pub fn transfer_theta(g: &GroupElement, theta: &DVector<f64>) -> Result<DVector<f64>> {
    check_dim(g.n(), theta.len())?;
    Ok(g.a().tr_mul(theta) + g.u())
}

/// `|ψ(θ) - ψ'(A^T θ + u) - ⟨θ, v⟩ - c|` for `rep = g · rep'`.
pub fn psi_residual(
    g: &GroupElement,
    rep: &Representation,
    rep_prime: &Representation,
    theta: &DVector<f64>,
) -> Result<f64> {
    let psi = log_partition(rep, theta)?;
    let psi_prime = log_partition(rep_prime, &transfer_theta(g, theta)?)?;
    Ok((psi - psi_prime - theta.dot(g.v()) - g.c()).abs())
}
