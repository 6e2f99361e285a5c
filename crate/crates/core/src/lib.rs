//! Exact computational algebra for spherical Schubert slices in the affine
//! Grassmannian of `SL_n`.

pub mod certify;
pub mod groebner;
pub mod lattice;
pub mod poisson;
pub mod polynomial;
pub mod slice;

pub use groebner::{
    buchberger, eliminate, eliminate_named, ideal_equal, krull_dimension, normal_form, Budget, BudgetLimit,
    GroebnerBasis, GroebnerError, GroebnerStats, TermOrder,
};
pub use polynomial::{poly_arith, poly_diff, poly_eval, ArithOp, Monomial, PolyError, Polynomial, Rational, VarTable};
pub use lattice::{Coweight, LatticeError, RootDatum, ThresholdData};
pub use slice::{build_generic_X, det_t, minor_degree_check, slice_generators, MatrixT, SliceError, TPoly};
pub use certify::{certify_reduced, find_smooth_point, tangent_dim_at, Certificate, CertifyError, CertifyOptions};
pub use poisson::{
    bracket, compare_ideals_mu_zero, delta_series, f_series, residue_plus, slice_generator_set, verify_axioms,
    verify_lemma_bracket_f, verify_minor_bracket_identity, DualBasisTable, GroupChart, MinorLabel, PoissonConfig,
    PoissonError, SeriesU, VerificationRecord,
};
