//! Affine subspaces of `C(Ω)/ℝ ≅ ℝ^m` and the canonical form of a family.
//!
//! The family generated by `(C, F)` is sent to the affine subspace
//! `[C] + span{[F_1], ..., [F_n]}`. The map is constant on `G_n`-orbits and
//! separates them, so the canonical subspace is a complete invariant.
//!
//! Reduction happens in two stages: quotienting by the constant shifts
//! `(v, c)` gives [`first_stage_reduce`], and the remaining `Aff(n,ℝ)†` action
//! ([`aff_dagger_act`]) is quotiented by [`pi_projection`].

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::expfam::Representation;
use crate::function_space::{matrix_rank, quotient_project, Frame, QuotientVec};
use crate::group::AffDagElement;
use crate::tolerance::DEFAULT_RANK_TOL;

/// Relative ratio below which two candidate pivot columns count as tied.
const PIVOT_TIE: f64 = 1e-8;
/// Base-point entries below this (relative to the input scale) are set to zero.
const BASE_SNAP: f64 = 1e-12;

/// An affine subspace stored as its minimum-norm point and an orthonormal
/// basis of its direction.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSubspace {
    base: DVector<f64>,
    basis: DMatrix<f64>,
}

impl AffineSubspace {
    pub fn ambient_dim(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn base(&self) -> &DVector<f64> {
        &self.base
    }

    /// `m × n`, orthonormal columns.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Orthogonal projector onto the direction.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    pub fn contains(&self, point: &DVector<f64>, tol: f64) -> bool {
        if point.len() != self.ambient_dim() {
            return false;
        }
        let offset = point - &self.base;
        (&offset - self.projector() * &offset).amax() <= tol
    }
}

/// Canonical form of `origin + span(directions)`, directions as columns.
pub fn canonical_affine(
    origin: &DVector<f64>,
    directions: &DMatrix<f64>,
    tol: f64,
) -> Result<AffineSubspace> {
    let m = origin.len();
    check_dim(m, directions.nrows())?;
    let n = directions.ncols();
    if n > m {
        return Err(Error::Input(format!(
            "{n} directions cannot be independent in dimension {m}"
        )));
    }
    if n > 0 && matrix_rank(directions, tol) < n {
        return Err(Error::Input(
            "direction vectors are linearly dependent".into(),
        ));
    }
    let projector = if n == 0 {
        DMatrix::zeros(m, m)
    } else {
        let q = directions.clone().qr().q();
        &q * q.transpose()
    };
    let basis = canonical_basis(&projector, n);
    let mut base = origin - &basis * basis.tr_mul(origin);
    let snap = BASE_SNAP * 1f64.max(origin.amax());
    base.iter_mut()
        .filter(|x| x.abs() <= snap)
        .for_each(|x| *x = 0.0);
    Ok(AffineSubspace { base, basis })
}

/// Orthonormal basis read off the projector by column-pivoted Gram-Schmidt,
/// so it depends only on the subspace and not on the presenting frame.
fn canonical_basis(projector: &DMatrix<f64>, n: usize) -> DMatrix<f64> {
    let m = projector.nrows();
    let mut residual = projector.clone();
    let mut basis = DMatrix::zeros(m, n);
    for k in 0..n {
        let norms: Vec<f64> = residual.column_iter().map(|c| c.norm()).collect();
        let max = norms.iter().copied().fold(0.0, f64::max);
        let pivot = norms
            .iter()
            .position(|&x| x >= max * (1.0 - PIVOT_TIE))
            .unwrap_or(0);
        let mut q = residual.column(pivot).into_owned();
        // Second pass against earlier columns for orthogonality at round-off.
        for j in 0..k {
            let prev = basis.column(j);
            let d = prev.dot(&q);
            q.axpy(-d, &prev, 1.0);
        }
        q /= q.norm();
        let coeffs = q.tr_mul(&residual);
        residual -= &q * coeffs;
        basis.set_column(k, &q);
    }
    basis
}

pub fn pi_projection(v0: &QuotientVec, frame_q: &[QuotientVec]) -> Result<AffineSubspace> {
    pi_projection_with_tol(v0, frame_q, DEFAULT_RANK_TOL)
}

/// `(v_0, (v_1, ..., v_n)) ↦ v_0 + span{v_1, ..., v_n}` in canonical form.
pub fn pi_projection_with_tol(
    v0: &QuotientVec,
    frame_q: &[QuotientVec],
    tol: f64,
) -> Result<AffineSubspace> {
    let m = v0.diffs().len();
    for q in frame_q {
        check_dim(m, q.diffs().len())?;
    }
    let directions = DMatrix::from_fn(m, frame_q.len(), |r, c| frame_q[c].diffs()[r]);
    canonical_affine(&v0.to_dvector(), &directions, tol)
}

/// The first-stage quotient `([C], ([F_1], ..., [F_n]))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPair {
    pub base: QuotientVec,
    pub frame: Vec<QuotientVec>,
}

impl ReducedPair {
    pub fn max_abs_diff(&self, other: &ReducedPair) -> f64 {
        let mut dev = (self.base.to_dvector() - other.base.to_dvector()).amax();
        if self.frame.len() != other.frame.len() {
            return f64::INFINITY;
        }
        for (a, b) in self.frame.iter().zip(&other.frame) {
            dev = dev.max((a.to_dvector() - b.to_dvector()).amax());
        }
        dev
    }

    /// Whether the projected frame is still linearly independent.
    pub fn frame_is_independent(&self, tol: f64) -> bool {
        let m = self.base.diffs().len();
        let n = self.frame.len();
        let d = DMatrix::from_fn(m, n, |r, c| self.frame[c].diffs()[r]);
        n <= m && matrix_rank(&d, tol) == n
    }
}

pub fn first_stage_reduce(rep: &Representation) -> ReducedPair {
    reduce_functions(rep.carrier(), rep.frame())
}

/// Componentwise quotient projection of any `(C, F)`, minimal or not.
pub fn reduce_functions(carrier: &crate::function_space::FuncVec, frame: &Frame) -> ReducedPair {
    ReducedPair {
        base: quotient_project(carrier),
        frame: frame.functions().iter().map(quotient_project).collect(),
    }
}

/// `(A, u) · ([C], [F]) = ([C] + ⟨u, [F]⟩, A[F])`.
pub fn aff_dagger_act(a: &AffDagElement, pair: &ReducedPair) -> Result<ReducedPair> {
    let n = pair.frame.len();
    check_dim(n, a.n())?;
    let space = pair.base.space().clone();
    let columns: Vec<DVector<f64>> = pair.frame.iter().map(QuotientVec::to_dvector).collect();
    let mut base = pair.base.to_dvector();
    for (k, col) in columns.iter().enumerate() {
        base.axpy(a.u()[k], col, 1.0);
    }
    let frame = (0..n)
        .map(|row| {
            let mut acc = DVector::zeros(base.len());
            for (b, col) in columns.iter().enumerate() {
                acc.axpy(a.a()[(row, b)], col, 1.0);
            }
            QuotientVec::new(space.clone(), acc.as_slice().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReducedPair {
        base: QuotientVec::new(space, base.as_slice().to_vec())?,
        frame,
    })
}

/// Canonical affine subspace `[C] + span{[F_1], ..., [F_n]}` of a family.
pub fn graff_from_rep(rep: &Representation) -> Result<AffineSubspace> {
    let pair = first_stage_reduce(rep);
    pi_projection(&pair.base, &pair.frame)
}

/// Same dimension, direction projectors within `tol` (max-entry), base points within `tol` (∞-norm).
pub fn subspaces_equal(s: &AffineSubspace, t: &AffineSubspace, tol: f64) -> bool {
    s.ambient_dim() == t.ambient_dim()
        && s.dim() == t.dim()
        && (s.projector() - t.projector()).amax() <= tol
        && (s.base() - t.base()).amax() <= tol
}

/// Dimension `(n+1)(d - n)` of the affine Grassmannian of `n`-planes in a `d`-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraffDimension {
    pub n: usize,
    pub ambient_dim: usize,
    pub value: usize,
}

pub fn graff_dimension(n: usize, ambient_dim: usize) -> Result<GraffDimension> {
    if n == 0 || n > ambient_dim {
        return Err(Error::Input(format!(
            "need 1 <= n <= ambient dimension, got n = {n}, ambient = {ambient_dim}"
        )));
    }
    Ok(GraffDimension {
        n,
        ambient_dim,
        value: (n + 1) * (ambient_dim - n),
    })
}

/// Dimension of the set of `(A, u, v, c)` fixing `(C, F)`: the solutions of
/// `⟨u,F⟩ + c = 0` and `(A - I)F + v = 0`, an affine space through the identity.
///
/// The carrier cancels from the fixing equations, so only `F` matters.
pub fn stabilizer_dimension(frame: &Frame, tol: f64) -> usize {
    let n = frame.n();
    let points = frame.space().size();
    // Unknowns: B = A - I (row-major, n²), u (n), v (n), c (1).
    let unknowns = n * n + 2 * n + 1;
    let u_off = n * n;
    let v_off = u_off + n;
    let c_off = v_off + n;
    let rows = points * (n + 1);
    let mut system = DMatrix::zeros(rows, unknowns);
    let values = frame.value_matrix();
    for i in 0..points {
        // ⟨u, F(x_i)⟩ + c = 0
        for k in 0..n {
            system[(i, u_off + k)] = values[(k, i)];
        }
        system[(i, c_off)] = 1.0;
        // (B F(x_i))_a + v_a = 0
        for a in 0..n {
            let row = points + a * points + i;
            for b in 0..n {
                system[(row, a * n + b)] = values[(b, i)];
            }
            system[(row, v_off + a)] = 1.0;
        }
    }
    unknowns - matrix_rank(&system, tol)
}

/// Whether only the identity of `G_n` fixes `rep`.
pub fn stabilizer_is_trivial(rep: &Representation) -> bool {
    stabilizer_dimension(rep.frame(), DEFAULT_RANK_TOL) == 0
}
