//! Seeded generators for representations, group elements, and parameters.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};
use crate::expfam::Representation;
use crate::function_space::singular_values;
use crate::function_space::{minimality_margin, Frame, FuncVec, MinimalFrame, SampleSpace};
use crate::group::GroupElement;

/// Draws with `[1, F]` singular-value ratio below this are rejected.
pub const MIN_MINIMALITY_MARGIN: f64 = 1e-3;
/// Draws of `A` with singular-value ratio below this are rejected.
pub const MIN_GROUP_CONDITION: f64 = 1e-2;

const MAX_ATTEMPTS: usize = 10_000;

fn uniform_vec<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// A minimal representation on `m + 1` points with `n` functions, all values
/// uniform in `[-1, 1]`.
pub fn random_representation<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n: usize,
) -> Result<Representation> {
    if n == 0 || m == 0 || n > m {
        return Err(Error::Input(format!(
            "need 1 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    let space = SampleSpace::with_size(m + 1)?;
    for _ in 0..MAX_ATTEMPTS {
        let carrier = FuncVec::new(space.clone(), uniform_vec(rng, m + 1))?;
        let functions = (0..n)
            .map(|_| FuncVec::new(space.clone(), uniform_vec(rng, m + 1)))
            .collect::<Result<Vec<_>>>()?;
        let Ok(frame) = Frame::new(functions) else {
            continue;
        };
        if minimality_margin(&frame) < MIN_MINIMALITY_MARGIN {
            continue;
        }
        return Representation::new(carrier, MinimalFrame::new(frame)?);
    }
    Err(Error::Degenerate(
        "no well-conditioned minimal frame drawn".into(),
    ))
}

/// A group element with entries uniform in `[-1, 1]` and a well-conditioned `A`.
pub fn random_group_element<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<GroupElement> {
    if n == 0 {
        return Err(Error::Input("group dimension must be positive".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let a = DMatrix::from_vec(n, n, uniform_vec(rng, n * n));
        let sv = singular_values(&a);
        if sv[sv.len() - 1] < MIN_GROUP_CONDITION * sv[0] {
            continue;
        }
        let u = DVector::from_vec(uniform_vec(rng, n));
        let v = DVector::from_vec(uniform_vec(rng, n));
        let c = rng.gen_range(-1.0..=1.0);
        return GroupElement::new(a, u, v, c);
    }
    Err(Error::Degenerate(
        "no well-conditioned group element drawn".into(),
    ))
}

/// Natural parameters uniform in `[-bound, bound]^n`.
pub fn random_theta<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: f64) -> DVector<f64> {
    DVector::from_iterator(n, (0..n).map(|_| rng.gen_range(-bound..=bound)))
}
