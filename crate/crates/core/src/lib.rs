//! Discrete exponential families and their canonical forms.
//!
//! A minimal representation `(C, F)` on a finite sample space generates the
//! family `p(x; θ) = exp(C(x) + ⟨θ, F(x)⟩ - ψ(θ))`. Different representations
//! can generate the same family; they are related by a unique element of the
//! group `G_n`, which [`equivalence::recover_witness`] reconstructs. Each
//! family also has a canonical form, the affine subspace
//! `[C] + span{[F_1], ..., [F_n]}` of `C(Ω)/ℝ` computed by
//! [`grassmann::graff_from_rep`]; two representations are equivalent exactly
//! when their canonical forms agree.
//!
//! ```
//! use expfam_core::{act, are_equivalent, graff_from_rep, subspaces_equal};
//! use expfam_core::{GroupElement, Representation, SampleSpace};
//! use nalgebra::{DMatrix, DVector};
//!
//! let space = SampleSpace::with_size(3).unwrap();
//! let rep = Representation::from_values(space, vec![0.0, 0.2, -0.1], vec![vec![0.0, 1.0, 2.0]]).unwrap();
//! let g = GroupElement::new(
//!     DMatrix::from_element(1, 1, -2.0),
//!     DVector::from_element(1, 0.5),
//!     DVector::from_element(1, 1.0),
//!     3.0,
//! ).unwrap();
//! let moved = act(&g, &rep).unwrap();
//! assert!(are_equivalent(&moved, &rep).unwrap());
//! let (a, b) = (graff_from_rep(&moved).unwrap(), graff_from_rep(&rep).unwrap());
//! assert!(subspaces_equal(&a, &b, 1e-9));
//! ```

pub mod equivalence;
pub mod error;
pub mod expfam;
pub mod function_space;
pub mod grassmann;
pub mod group;
pub mod random;
pub mod tolerance;

pub use equivalence::{
    are_equivalent, are_equivalent_with, psi_residual, recover_witness, recover_witness_at,
    recover_witness_with, transfer_theta, WitnessReport,
};
pub use error::{Error, Result};
pub use expfam::{
    density, fisher_information, log_partition, log_sum_exp, mean_statistic, membership,
    membership_with_tol, ProbVec, Representation,
};
pub use function_space::{
    difference_matrix, difference_vector, is_invertible, is_minimal_frame,
    is_minimal_frame_with_tol, matrix_rank, minimality_margin, quotient_project,
    rank_with_tolerance, select_pivot_indices, select_pivot_indices_with_tol, Frame, FuncVec,
    MinimalFrame, QuotientVec, SampleSpace,
};
pub use grassmann::{
    aff_dagger_act, canonical_affine, first_stage_reduce, graff_dimension, graff_from_rep,
    pi_projection, pi_projection_with_tol, reduce_functions, stabilizer_dimension,
    stabilizer_is_trivial, subspaces_equal, AffineSubspace, GraffDimension, ReducedPair,
};
pub use group::{
    act, aff_dag_compose, compose, embed_matrix, epsilon_apply, from_embedded, inverse,
    semidirect_join, semidirect_product, semidirect_split, AffDagElement, GroupElement,
    Translation,
};
pub use tolerance::Tolerances;

pub use nalgebra::{DMatrix, DVector};
