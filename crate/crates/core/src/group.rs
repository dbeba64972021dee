//! The group `G_n` of block matrices
//!
//! ```text
//! [ 1  u^T  c ]
//! [ 0  A    v ]
//! [ 0  0    1 ]
//! ```
//!
//! stored by components `(A, u, v, c)`, its action on representations, and its
//! splitting as `Aff(n,ℝ)† ⋉ (ℝ^n × ℝ)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{check_dim, Error, Result};
use crate::expfam::Representation;
use crate::function_space::{is_invertible, MinimalFrame};
use crate::tolerance::DEFAULT_RANK_TOL;

fn check_square(a: &DMatrix<f64>) -> Result<usize> {
    if !a.is_square() || a.nrows() == 0 {
        return Err(Error::Input(format!(
            "expected a non-empty square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows())
}

fn check_finite<'a>(values: impl IntoIterator<Item = &'a f64>) -> Result<()> {
    if values.into_iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Input("group element entries must be finite".into()))
    }
}

fn invert(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !is_invertible(a, DEFAULT_RANK_TOL) {
        return Err(Error::Conditioning(
            "matrix A is singular at tolerance".into(),
        ));
    }
    a.clone()
        .try_inverse()
        .ok_or_else(|| Error::Conditioning("matrix A could not be inverted".into()))
}

/// An element `(A, u, v, c)` of `G_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    a: DMatrix<f64>,
    u: DVector<f64>,
    v: DVector<f64>,
    c: f64,
}

impl GroupElement {
    pub fn new(a: DMatrix<f64>, u: DVector<f64>, v: DVector<f64>, c: f64) -> Result<Self> {
        Self::with_tol(a, u, v, c, DEFAULT_RANK_TOL)
    }

    pub fn with_tol(
        a: DMatrix<f64>,
        u: DVector<f64>,
        v: DVector<f64>,
        c: f64,
        tol: f64,
    ) -> Result<Self> {
        let n = check_square(&a)?;
        check_dim(n, u.len())?;
        check_dim(n, v.len())?;
        check_finite(a.iter().chain(u.iter()).chain(v.iter()).chain([&c]))?;
        if !is_invertible(&a, tol) {
            return Err(Error::Conditioning(
                "matrix A is singular at tolerance".into(),
            ));
        }
        Ok(Self { a, u, v, c })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            a: DMatrix::identity(n, n),
            u: DVector::zeros(n),
            v: DVector::zeros(n),
            c: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn u(&self) -> &DVector<f64> {
        &self.u
    }

    pub fn v(&self) -> &DVector<f64> {
        &self.v
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Largest componentwise difference from `other`.
    pub fn max_abs_diff(&self, other: &GroupElement) -> f64 {
        if self.n() != other.n() {
            return f64::INFINITY;
        }
        (&self.a - &other.a)
            .amax()
            .max((&self.u - &other.u).amax())
            .max((&self.v - &other.v).amax())
            .max((self.c - other.c).abs())
    }
}

/// Product `g' · g = (A'A, u + A^T u', v' + A'v, c' + c + ⟨u', v⟩)`.
pub fn compose(g_prime: &GroupElement, g: &GroupElement) -> Result<GroupElement> {
    check_dim(g_prime.n(), g.n())?;
    Ok(GroupElement {
        a: &g_prime.a * &g.a,
        u: &g.u + g.a.tr_mul(&g_prime.u),
        v: &g_prime.v + &g_prime.a * &g.v,
        c: g_prime.c + g.c + g_prime.u.dot(&g.v),
    })
}

/// `g^{-1} = (A^{-1}, -(A^{-1})^T u, -A^{-1} v, -c + ⟨u, A^{-1} v⟩)`.
pub fn inverse(g: &GroupElement) -> Result<GroupElement> {
    let a_inv = invert(&g.a)?;
    let a_inv_v = &a_inv * &g.v;
    Ok(GroupElement {
        u: -a_inv.tr_mul(&g.u),
        c: -g.c + g.u.dot(&a_inv_v),
        v: -a_inv_v,
        a: a_inv,
    })
}

/// The `(n+2) × (n+2)` block matrix of `g`.
pub fn embed_matrix(g: &GroupElement) -> DMatrix<f64> {
    let n = g.n();
    let mut m = DMatrix::identity(n + 2, n + 2);
    for k in 0..n {
        m[(0, k + 1)] = g.u[k];
        m[(k + 1, n + 1)] = g.v[k];
    }
    m[(0, n + 1)] = g.c;
    m.view_mut((1, 1), (n, n)).copy_from(&g.a);
    m
}

/// Reads a block matrix back into components. Fails unless the fixed rows
/// and column hold exactly their identity values.
pub fn from_embedded(m: &DMatrix<f64>) -> Result<GroupElement> {
    let size = check_square(m)?;
    if size < 3 {
        return Err(Error::Input("embedded matrix must be at least 3x3".into()));
    }
    let n = size - 2;
    let fixed_ok = m[(0, 0)] == 1.0
        && m[(n + 1, n + 1)] == 1.0
        && (1..size).all(|r| m[(r, 0)] == 0.0)
        && (1..=n).all(|c| m[(n + 1, c)] == 0.0);
    if !fixed_ok {
        return Err(Error::Input("matrix is not of the G_n block form".into()));
    }
    GroupElement::new(
        m.view((1, 1), (n, n)).into_owned(),
        DVector::from_iterator(n, (1..=n).map(|k| m[(0, k)])),
        DVector::from_iterator(n, (1..=n).map(|k| m[(k, n + 1)])),
        m[(0, n + 1)],
    )
}

/// `g · (C, F) = (C + ⟨u, F⟩ + c, AF + v)`.
pub fn act(g: &GroupElement, rep: &Representation) -> Result<Representation> {
    check_dim(rep.n(), g.n())?;
    let frame = rep.frame();
    let carrier = rep
        .carrier()
        .axpy(1.0, &frame.combination(&g.u)?)?
        .shifted(g.c);
    let image = frame.affine_image(&g.a, &g.v)?;
    // Minimality is preserved for invertible A; re-validation makes a
    // badly conditioned A surface as an error rather than a bogus family.
    let frame = MinimalFrame::new(image)
        .map_err(|e| Error::Conditioning(format!("action produced a non-minimal frame: {e}")))?;
    Representation::new(carrier, frame)
}

/// An element `(A, u)` of `Aff(n,ℝ)† = GL(n,ℝ) ⋉_ρ ℝ^n` with `ρ(A) = A^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffDagElement {
    a: DMatrix<f64>,
    u: DVector<f64>,
}

impl AffDagElement {
    pub fn new(a: DMatrix<f64>, u: DVector<f64>) -> Result<Self> {
        let n = check_square(&a)?;
        check_dim(n, u.len())?;
        check_finite(a.iter().chain(u.iter()))?;
        if !is_invertible(&a, DEFAULT_RANK_TOL) {
            return Err(Error::Conditioning(
                "matrix A is singular at tolerance".into(),
            ));
        }
        Ok(Self { a, u })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            a: DMatrix::identity(n, n),
            u: DVector::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn u(&self) -> &DVector<f64> {
        &self.u
    }
}

/// `(A', u') · (A, u) = (A'A, u + A^T u')`.
pub fn aff_dag_compose(a_prime: &AffDagElement, a: &AffDagElement) -> Result<AffDagElement> {
    check_dim(a_prime.n(), a.n())?;
    Ok(AffDagElement {
        a: &a_prime.a * &a.a,
        u: &a.u + a.a.tr_mul(&a_prime.u),
    })
}

/// Translation part `(v, c)` of `G_n`, the normal subgroup `ℝ^n × ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Translation {
    pub v: DVector<f64>,
    pub c: f64,
}

/// `ε(A, u)(v, c) = (Av, ⟨u, v⟩ + c)`.
pub fn epsilon_apply(a: &AffDagElement, t: &Translation) -> Result<Translation> {
    check_dim(a.n(), t.v.len())?;
    Ok(Translation {
        v: &a.a * &t.v,
        c: a.u.dot(&t.v) + t.c,
    })
}

/// Splits `g` into its `Aff(n,ℝ)†` and translation parts.
pub fn semidirect_split(g: &GroupElement) -> (AffDagElement, Translation) {
    (
        AffDagElement {
            a: g.a.clone(),
            u: g.u.clone(),
        },
        Translation {
            v: g.v.clone(),
            c: g.c,
        },
    )
}

pub fn semidirect_join(a: &AffDagElement, t: &Translation) -> Result<GroupElement> {
    check_dim(a.n(), t.v.len())?;
    Ok(GroupElement {
        a: a.a.clone(),
        u: a.u.clone(),
        v: t.v.clone(),
        c: t.c,
    })
}

/// Product in `Aff(n,ℝ)† ⋉_ε (ℝ^n × ℝ)`:
/// `((A',u'),(v',c')) · ((A,u),(v,c)) = ((A',u')·(A,u), (v',c') + ε(A',u')(v,c))`.
pub fn semidirect_product(
    left: &(AffDagElement, Translation),
    right: &(AffDagElement, Translation),
) -> Result<(AffDagElement, Translation)> {
    let head = aff_dag_compose(&left.0, &right.0)?;
    let pushed = epsilon_apply(&left.0, &right.1)?;
    Ok((
        head,
        Translation {
            v: &left.1.v + pushed.v,
            c: left.1.c + pushed.c,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_space::SampleSpace;

    fn g1(a: f64, u: f64, v: f64, c: f64) -> GroupElement {
        GroupElement::new(
            DMatrix::from_element(1, 1, a),
            DVector::from_element(1, u),
            DVector::from_element(1, v),
            c,
        )
        .unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let g = g1(2.0, 1.0, 3.0, -0.5);
        assert_eq!(compose(&GroupElement::identity(1), &g).unwrap(), g);
        assert_eq!(compose(&g, &GroupElement::identity(1)).unwrap(), g);
    }

    #[test]
    fn compose_scalar_example() {
        let out = compose(&g1(1.0, 1.0, 0.0, 0.0), &g1(1.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(out, g1(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn compose_rejects_mixed_dimensions() {
        let r = compose(&GroupElement::identity(2), &GroupElement::identity(1));
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn inverse_scalar_example() {
        let g = g1(2.0, 1.0, 3.0, -0.5);
        let inv = inverse(&g).unwrap();
        assert_eq!(inv, g1(0.5, -0.5, -1.5, 2.0));
        let e = compose(&g, &inv).unwrap();
        assert!(e.max_abs_diff(&GroupElement::identity(1)) < 1e-15);
        assert_eq!(
            inverse(&GroupElement::identity(3)).unwrap(),
            GroupElement::identity(3)
        );
    }

    #[test]
    fn singular_a_is_rejected() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let r = GroupElement::new(a, DVector::zeros(2), DVector::zeros(2), 0.0);
        assert!(matches!(r, Err(Error::Conditioning(_))));
    }

    #[test]
    fn embed_scalar_example() {
        let m = embed_matrix(&g1(2.0, 1.0, 3.0, -0.5));
        let expected =
            DMatrix::from_row_slice(3, 3, &[1.0, 1.0, -0.5, 0.0, 2.0, 3.0, 0.0, 0.0, 1.0]);
        assert_eq!(m, expected);
        assert_eq!(
            embed_matrix(&GroupElement::identity(2)),
            DMatrix::identity(4, 4)
        );
        assert_eq!(from_embedded(&m).unwrap(), g1(2.0, 1.0, 3.0, -0.5));
    }

    #[test]
    fn act_bernoulli_example() {
        let s = SampleSpace::with_size(2).unwrap();
        let rep = Representation::from_values(s, vec![0.0, 0.0], vec![vec![0.0, 1.0]]).unwrap();
        let out = act(&g1(2.0, 1.0, 3.0, -0.5), &rep).unwrap();
        assert_eq!(out.carrier().values(), &[-0.5, 0.5]);
        assert_eq!(out.frame().functions()[0].values(), &[3.0, 5.0]);
        assert_eq!(act(&GroupElement::identity(1), &rep).unwrap(), rep);
    }

    #[test]
    fn act_rejects_dimension_mismatch() {
        let s = SampleSpace::with_size(2).unwrap();
        let rep = Representation::from_values(s, vec![0.0, 0.0], vec![vec![0.0, 1.0]]).unwrap();
        assert!(act(&GroupElement::identity(2), &rep).is_err());
    }

    #[test]
    fn split_identity() {
        let (a, t) = semidirect_split(&GroupElement::identity(2));
        assert_eq!(a, AffDagElement::identity(2));
        assert_eq!(
            t,
            Translation {
                v: DVector::zeros(2),
                c: 0.0
            }
        );
    }

    #[test]
    fn epsilon_examples() {
        let a = AffDagElement::new(
            DMatrix::from_element(1, 1, 2.0),
            DVector::from_element(1, 3.0),
        )
        .unwrap();
        let out = epsilon_apply(
            &a,
            &Translation {
                v: DVector::from_element(1, 1.0),
                c: 0.0,
            },
        )
        .unwrap();
        assert_eq!(
            out,
            Translation {
                v: DVector::from_element(1, 2.0),
                c: 3.0
            }
        );

        let t = Translation {
            v: DVector::from_vec(vec![1.5, -2.0]),
            c: 0.25,
        };
        assert_eq!(epsilon_apply(&AffDagElement::identity(2), &t).unwrap(), t);
    }
}
