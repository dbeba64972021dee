//! Finite sample spaces, real functions on them, the quotient by constants,
//! frames, and numerical rank.
//!
//! A sample space `Ω = {x_0, ..., x_m}` has a fixed point order; a function
//! `f ∈ C(Ω)` is stored as its value vector `(f(x_0), ..., f(x_m))`. The
//! quotient `C(Ω)/ℝ` is represented by anchored differences
//! `(f(x_1) - f(x_0), ..., f(x_m) - f(x_0))`, so it is identified with `ℝ^m`.

use std::collections::HashSet;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::tolerance::DEFAULT_RANK_TOL;

/// An ordered finite set of labelled points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SampleSpace {
    labels: Vec<String>,
}

impl SampleSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::Input(format!(
                "a sample space needs at least 2 points, got {}",
                labels.len()
            )));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Input(format!(
                    "duplicate sample point label {label:?}"
                )));
            }
        }
        Ok(Arc::new(Self { labels }))
    }

    /// Points labelled `x0, x1, ..., x{size-1}`.
    pub fn with_size(size: usize) -> Result<Arc<Self>> {
        Self::new((0..size).map(|i| format!("x{i}")))
    }

    /// Number of points, `m + 1`.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Dimension `m` of the quotient `C(Ω)/ℝ`.
    pub fn quotient_dim(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn same_space(a: &Arc<SampleSpace>, b: &Arc<SampleSpace>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::Input(
            "operands live on different sample spaces".into(),
        ))
    }
}

/// A real-valued function on a sample space.
#[derive(Debug, Clone, PartialEq)]
pub struct FuncVec {
    space: Arc<SampleSpace>,
    values: Vec<f64>,
}

impl FuncVec {
    pub fn new(space: Arc<SampleSpace>, values: Vec<f64>) -> Result<Self> {
        check_dim(space.size(), values.len())?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Input(format!(
                "non-finite function value at point {i}"
            )));
        }
        Ok(Self { space, values })
    }

    pub fn constant(space: Arc<SampleSpace>, value: f64) -> Self {
        let values = vec![value; space.size()];
        Self { space, values }
    }

    pub fn zeros(space: Arc<SampleSpace>) -> Self {
        Self::constant(space, 0.0)
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: f64, other: &FuncVec) -> Result<FuncVec> {
        same_space(&self.space, &other.space)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + alpha * b)
            .collect();
        Ok(FuncVec {
            space: self.space.clone(),
            values,
        })
    }

    /// `self + shift`, the shift read as a constant function.
    pub fn shifted(&self, shift: f64) -> FuncVec {
        FuncVec {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v + shift).collect(),
        }
    }

    pub fn scaled(&self, alpha: f64) -> FuncVec {
        FuncVec {
            space: self.space.clone(),
            values: self.values.iter().map(|v| alpha * v).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// An element of `C(Ω)/ℝ` in anchored-difference coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientVec {
    space: Arc<SampleSpace>,
    diffs: Vec<f64>,
}

impl QuotientVec {
    pub fn new(space: Arc<SampleSpace>, diffs: Vec<f64>) -> Result<Self> {
        check_dim(space.quotient_dim(), diffs.len())?;
        Ok(Self { space, diffs })
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        &self.space
    }

    pub fn diffs(&self) -> &[f64] {
        &self.diffs
    }

    pub fn to_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.diffs)
    }
}

/// Class of `f` in `C(Ω)/ℝ`: entry `i-1` is `f(x_i) - f(x_0)`.
pub fn quotient_project(f: &FuncVec) -> QuotientVec {
    let anchor = f.values[0];
    QuotientVec {
        space: f.space.clone(),
        diffs: f.values[1..].iter().map(|v| v - anchor).collect(),
    }
}

/// Singular values of `matrix`, largest first.
pub(crate) fn singular_values(matrix: &DMatrix<f64>) -> Vec<f64> {
    if matrix.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = matrix.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Count of singular values above `tol * σ_max * max(rows, cols)`.
pub fn matrix_rank(matrix: &DMatrix<f64>, tol: f64) -> usize {
    let sv = singular_values(matrix);
    let Some(&largest) = sv.first() else {
        return 0;
    };
    if largest == 0.0 {
        return 0;
    }
    let cutoff = tol * largest * matrix.nrows().max(matrix.ncols()) as f64;
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Whether a square matrix has full numerical rank at `tol`.
pub fn is_invertible(matrix: &DMatrix<f64>, tol: f64) -> bool {
    matrix.is_square() && matrix.nrows() > 0 && matrix_rank(matrix, tol) == matrix.nrows()
}

/// Numerical rank of a family of equal-length vectors.
pub fn rank_with_tolerance<V: AsRef<[f64]>>(vectors: &[V], tol: f64) -> Result<usize> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Input(format!(
            "rank tolerance must be positive, got {tol}"
        )));
    }
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let len = first.as_ref().len();
    for v in vectors {
        check_dim(len, v.as_ref().len())?;
    }
    if len == 0 {
        return Ok(0);
    }
    let matrix = DMatrix::from_fn(len, vectors.len(), |r, c| vectors[c].as_ref()[r]);
    Ok(matrix_rank(&matrix, tol))
}

/// An ordered tuple of linearly independent functions: a point of `Stief_n(C(Ω))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    space: Arc<SampleSpace>,
    functions: Vec<FuncVec>,
}

impl Frame {
    pub fn new(functions: Vec<FuncVec>) -> Result<Self> {
        Self::with_tol(functions, DEFAULT_RANK_TOL)
    }

    pub fn with_tol(functions: Vec<FuncVec>, tol: f64) -> Result<Self> {
        let Some(first) = functions.first() else {
            return Err(Error::Input("a frame needs at least one function".into()));
        };
        let space = first.space.clone();
        for f in &functions[1..] {
            same_space(&space, &f.space)?;
        }
        let rank = rank_with_tolerance(
            &functions.iter().map(FuncVec::values).collect::<Vec<_>>(),
            tol,
        )?;
        if rank < functions.len() {
            return Err(Error::Input(format!(
                "frame functions are linearly dependent (rank {rank} < {})",
                functions.len()
            )));
        }
        Ok(Self { space, functions })
    }

    /// Dimension `n` of the frame.
    pub fn n(&self) -> usize {
        self.functions.len()
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        &self.space
    }

    pub fn functions(&self) -> &[FuncVec] {
        &self.functions
    }

    /// The `n × (m+1)` matrix whose row `a` holds the values of `F_a`.
    pub fn value_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n(), self.space.size(), |a, i| {
            self.functions[a].values[i]
        })
    }

    /// `F(x_i) ∈ ℝ^n`.
    pub fn eval(&self, i: usize) -> DVector<f64> {
        DVector::from_iterator(self.n(), self.functions.iter().map(|f| f.values[i]))
    }

    /// `⟨x, F⟩ = x_1 F_1 + ... + x_n F_n`.
    pub fn combination(&self, x: &DVector<f64>) -> Result<FuncVec> {
        check_dim(self.n(), x.len())?;
        let mut values = vec![0.0; self.space.size()];
        for (coef, f) in x.iter().zip(&self.functions) {
            for (acc, v) in values.iter_mut().zip(&f.values) {
                *acc += coef * v;
            }
        }
        Ok(FuncVec {
            space: self.space.clone(),
            values,
        })
    }

    /// `AF + v`: the function tuple whose `a`-th entry is `Σ_b A_ab F_b + v_a`.
    ///
    /// The result is not re-validated; it is a frame whenever `A` is invertible.
    pub fn affine_image(&self, a: &DMatrix<f64>, v: &DVector<f64>) -> Result<Frame> {
        check_dim(self.n(), a.nrows())?;
        check_dim(self.n(), a.ncols())?;
        check_dim(self.n(), v.len())?;
        let functions = (0..self.n())
            .map(|row| {
                let coefs = a.row(row).transpose();
                self.combination(&coefs).map(|f| f.shifted(v[row]))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Frame {
            space: self.space.clone(),
            functions,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.functions.iter().fold(0.0, |m, f| m.max(f.max_abs()))
    }
}

/// A frame with `{1, F_1, ..., F_n}` linearly independent.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalFrame(Frame);

impl MinimalFrame {
    pub fn new(frame: Frame) -> Result<Self> {
        Self::with_tol(frame, DEFAULT_RANK_TOL)
    }

    pub fn with_tol(frame: Frame, tol: f64) -> Result<Self> {
        if frame.n() > frame.space.quotient_dim() {
            return Err(Error::Input(format!(
                "a minimal frame on {} points has at most {} functions, got {}",
                frame.space.size(),
                frame.space.quotient_dim(),
                frame.n()
            )));
        }
        if !is_minimal_frame_with_tol(&frame, tol) {
            return Err(Error::Input(
                "frame is not minimal: 1, F_1, ..., F_n are linearly dependent".into(),
            ));
        }
        Ok(Self(frame))
    }

    pub fn from_functions(functions: Vec<FuncVec>) -> Result<Self> {
        Self::new(Frame::new(functions)?)
    }

    pub fn frame(&self) -> &Frame {
        &self.0
    }

    pub fn into_frame(self) -> Frame {
        self.0
    }
}

impl std::ops::Deref for MinimalFrame {
    type Target = Frame;

    fn deref(&self) -> &Frame {
        &self.0
    }
}

/// `(m+1) × (n+1)` matrix with columns `[1, F_1, ..., F_n]`.
fn augmented_columns(frame: &Frame) -> DMatrix<f64> {
    DMatrix::from_fn(frame.space.size(), frame.n() + 1, |i, col| {
        if col == 0 {
            1.0
        } else {
            frame.functions[col - 1].values[i]
        }
    })
}

pub fn is_minimal_frame(frame: &Frame) -> bool {
    is_minimal_frame_with_tol(frame, DEFAULT_RANK_TOL)
}

pub fn is_minimal_frame_with_tol(frame: &Frame, tol: f64) -> bool {
    matrix_rank(&augmented_columns(frame), tol) == frame.n() + 1
}

/// Smallest-to-largest singular value ratio of `[1, F_1, ..., F_n]`.
pub fn minimality_margin(frame: &Frame) -> f64 {
    let sv = singular_values(&augmented_columns(frame));
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
        _ => 0.0,
    }
}

fn check_indices(space_size: usize, n: usize, indices: &[usize]) -> Result<()> {
    if indices.len() != n + 1 {
        return Err(Error::Input(format!(
            "expected {} pivot indices, got {}",
            n + 1,
            indices.len()
        )));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input(format!(
            "pivot indices {indices:?} are not strictly increasing"
        )));
    }
    if let Some(&last) = indices.last() {
        if last >= space_size {
            return Err(Error::Input(format!(
                "pivot index {last} out of range for {space_size} points"
            )));
        }
    }
    Ok(())
}

/// `n × n` matrix with entry `(a, b)` equal to `F_a(x_{i_b}) - F_a(x_{i_0})`.
pub fn difference_matrix(frame: &Frame, indices: &[usize]) -> Result<DMatrix<f64>> {
    check_indices(frame.space.size(), frame.n(), indices)?;
    let i0 = indices[0];
    Ok(DMatrix::from_fn(frame.n(), frame.n(), |a, b| {
        let f = &frame.functions[a].values;
        f[indices[b + 1]] - f[i0]
    }))
}

/// `(f(x_{i_1}) - f(x_{i_0}), ..., f(x_{i_n}) - f(x_{i_0}))`.
pub fn difference_vector(f: &FuncVec, indices: &[usize]) -> Result<DVector<f64>> {
    if indices.len() < 2 {
        return Err(Error::Input("need at least two indices".into()));
    }
    check_indices(f.len(), indices.len() - 1, indices)?;
    let i0 = indices[0];
    Ok(DVector::from_iterator(
        indices.len() - 1,
        indices[1..].iter().map(|&i| f.values[i] - f.values[i0]),
    ))
}

pub fn select_pivot_indices(frame: &MinimalFrame) -> Result<Vec<usize>> {
    select_pivot_indices_with_tol(frame, DEFAULT_RANK_TOL)
}

/// Chooses `i_0 < ... < i_n` making the difference matrix invertible.
///
/// Greedy column-pivoted Gram-Schmidt over the sample points, applied to the
/// columns `(1, F_1(x_i), ..., F_n(x_i))`; an `(n+1)`-subset of those columns is
/// independent exactly when its difference matrix is invertible. Ties go to the
/// lower index.
pub fn select_pivot_indices_with_tol(frame: &MinimalFrame, tol: f64) -> Result<Vec<usize>> {
    let n = frame.n();
    let points = frame.space.size();
    let mut residual = augmented_columns(frame).transpose();
    let mut chosen: Vec<usize> = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let mut best: Option<(usize, f64)> = None;
        for j in (0..points).filter(|j| !chosen.contains(j)) {
            let norm = residual.column(j).norm();
            if best.is_none_or(|(_, b)| norm > b) {
                best = Some((j, norm));
            }
        }
        let (pivot, norm) = best.ok_or_else(|| {
            Error::Degenerate("ran out of sample points while selecting pivots".into())
        })?;
        if norm == 0.0 {
            return Err(Error::Degenerate(
                "no independent sample point left; frame is not minimal at this tolerance".into(),
            ));
        }
        let q = residual.column(pivot) / norm;
        for j in 0..points {
            let proj = q.dot(&residual.column(j));
            residual.column_mut(j).axpy(-proj, &q, 1.0);
        }
        chosen.push(pivot);
    }
    chosen.sort_unstable();
    let m = difference_matrix(frame, &chosen)?;
    if !is_invertible(&m, tol) {
        return Err(Error::Degenerate(format!(
            "difference matrix at pivots {chosen:?} is singular at tolerance {tol}"
        )));
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(space: &Arc<SampleSpace>, values: &[f64]) -> FuncVec {
        FuncVec::new(space.clone(), values.to_vec()).unwrap()
    }

    #[test]
    fn sample_space_rejects_duplicates_and_singletons() {
        assert!(SampleSpace::new(["a", "b", "a"]).is_err());
        assert!(SampleSpace::new(["a"]).is_err());
        let s = SampleSpace::new(["a", "b", "c"]).unwrap();
        assert_eq!(s.quotient_dim(), 2);
        assert_eq!(s.index_of("c"), Some(2));
    }

    #[test]
    fn func_vec_rejects_bad_lengths_and_nan() {
        let s = SampleSpace::with_size(3).unwrap();
        assert!(FuncVec::new(s.clone(), vec![1.0, 2.0]).is_err());
        assert!(FuncVec::new(s, vec![1.0, f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn quotient_projection_examples() {
        let s3 = SampleSpace::with_size(3).unwrap();
        assert_eq!(
            quotient_project(&fv(&s3, &[5.0, 5.0, 5.0])).diffs(),
            &[0.0, 0.0]
        );
        assert_eq!(
            quotient_project(&fv(&s3, &[0.0, 1.0, 2.0])).diffs(),
            &[1.0, 2.0]
        );
        let s2 = SampleSpace::with_size(2).unwrap();
        assert_eq!(quotient_project(&fv(&s2, &[1.0, 0.0])).diffs(), &[-1.0]);
    }

    #[test]
    fn rank_examples() {
        let tol = DEFAULT_RANK_TOL;
        assert_eq!(
            rank_with_tolerance(&[[1.0, 0.0], [0.0, 1.0]], tol).unwrap(),
            2
        );
        assert_eq!(
            rank_with_tolerance(&[[1.0, 1.0], [2.0, 2.0]], tol).unwrap(),
            1
        );
        let v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]];
        assert_eq!(rank_with_tolerance(&v, tol).unwrap(), 2);
        assert_eq!(rank_with_tolerance(&[[0.0, 0.0]], tol).unwrap(), 0);
        assert_eq!(rank_with_tolerance::<[f64; 2]>(&[], tol).unwrap(), 0);
    }

    #[test]
    fn rank_errors() {
        let mixed: Vec<Vec<f64>> = vec![vec![1.0, 0.0], vec![1.0]];
        assert!(matches!(
            rank_with_tolerance(&mixed, 1e-10),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(rank_with_tolerance(&[[1.0]], 0.0).is_err());
    }

    #[test]
    fn minimality_examples() {
        let s2 = SampleSpace::with_size(2).unwrap();
        assert!(is_minimal_frame(
            &Frame::new(vec![fv(&s2, &[0.0, 1.0])]).unwrap()
        ));
        assert!(!is_minimal_frame(
            &Frame::new(vec![fv(&s2, &[3.0, 3.0])]).unwrap()
        ));
        let s3 = SampleSpace::with_size(3).unwrap();
        let f = Frame::new(vec![fv(&s3, &[0.0, 1.0, 0.0]), fv(&s3, &[0.0, 0.0, 1.0])]).unwrap();
        assert!(is_minimal_frame(&f));
    }

    #[test]
    fn minimal_frame_rejects_too_many_functions() {
        let s2 = SampleSpace::with_size(2).unwrap();
        let f = Frame::new(vec![fv(&s2, &[0.0, 1.0]), fv(&s2, &[1.0, 0.0])]).unwrap();
        assert!(MinimalFrame::new(f).is_err());
    }

    #[test]
    fn frame_rejects_dependent_functions() {
        let s3 = SampleSpace::with_size(3).unwrap();
        let res = Frame::new(vec![fv(&s3, &[1.0, 2.0, 3.0]), fv(&s3, &[2.0, 4.0, 6.0])]);
        assert!(res.is_err());
    }

    #[test]
    fn pivot_examples() {
        let s3 = SampleSpace::with_size(3).unwrap();
        let f = MinimalFrame::from_functions(vec![fv(&s3, &[0.0, 0.0, 1.0])]).unwrap();
        assert_eq!(select_pivot_indices(&f).unwrap(), vec![0, 2]);

        let s2 = SampleSpace::with_size(2).unwrap();
        let f = MinimalFrame::from_functions(vec![fv(&s2, &[0.0, 1.0])]).unwrap();
        assert_eq!(select_pivot_indices(&f).unwrap(), vec![0, 1]);

        let f = MinimalFrame::from_functions(vec![
            fv(&s3, &[0.0, 1.0, 0.0]),
            fv(&s3, &[0.0, 0.0, 1.0]),
        ])
        .unwrap();
        assert_eq!(select_pivot_indices(&f).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn pivot_pair_01_is_singular_for_indicator_of_x2() {
        let s3 = SampleSpace::with_size(3).unwrap();
        let f = Frame::new(vec![fv(&s3, &[0.0, 0.0, 1.0])]).unwrap();
        assert_eq!(difference_matrix(&f, &[0, 1]).unwrap()[(0, 0)], 0.0);
    }

    #[test]
    fn difference_matrix_examples() {
        let s2 = SampleSpace::with_size(2).unwrap();
        let f = Frame::new(vec![fv(&s2, &[0.0, 1.0])]).unwrap();
        assert_eq!(
            difference_matrix(&f, &[0, 1]).unwrap(),
            DMatrix::from_element(1, 1, 1.0)
        );
        let f = Frame::new(vec![fv(&s2, &[2.0, 2.0])]).unwrap();
        assert_eq!(
            difference_matrix(&f, &[0, 1]).unwrap(),
            DMatrix::from_element(1, 1, 0.0)
        );

        let s3 = SampleSpace::with_size(3).unwrap();
        let f = Frame::new(vec![fv(&s3, &[0.0, 1.0, 0.0]), fv(&s3, &[0.0, 0.0, 1.0])]).unwrap();
        assert_eq!(
            difference_matrix(&f, &[0, 1, 2]).unwrap(),
            DMatrix::identity(2, 2)
        );
    }

    #[test]
    fn difference_matrix_rejects_bad_indices() {
        let s3 = SampleSpace::with_size(3).unwrap();
        let f = Frame::new(vec![fv(&s3, &[0.0, 1.0, 0.0])]).unwrap();
        assert!(difference_matrix(&f, &[1, 0]).is_err());
        assert!(difference_matrix(&f, &[0, 3]).is_err());
        assert!(difference_matrix(&f, &[0, 1, 2]).is_err());
        assert!(difference_matrix(&f, &[1, 1]).is_err());
    }

    #[test]
    fn affine_image_applies_rows() {
        let s3 = SampleSpace::with_size(3).unwrap();
        let f = Frame::new(vec![fv(&s3, &[0.0, 1.0, 0.0]), fv(&s3, &[0.0, 0.0, 1.0])]).unwrap();
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 3.0]);
        let v = DVector::from_vec(vec![1.0, -1.0]);
        let g = f.affine_image(&a, &v).unwrap();
        assert_eq!(g.functions()[0].values(), &[1.0, 2.0, 3.0]);
        assert_eq!(g.functions()[1].values(), &[-1.0, -1.0, 2.0]);
    }
}
