//! Exact canonical forms of positive geometries: convex polytopes and plane
//! polypols.
//!
//! All arithmetic is over arbitrary-precision rationals. Forms live on affine
//! charts, polytopes are given by inequalities `U·y + z ≥ 0`, and polypols by
//! homogeneous curves with rational parametrizations.

pub mod algebra;
pub mod canonical;
pub mod fixtures;
pub mod forms;
pub mod io;
pub mod polypol;
pub mod polytope;

use thiserror::Error;

pub use algebra::{AlgebraError, FactoredRatFn, MPoly, Rat, RatMatrix, UPoly};
pub use canonical::{
    canonical_form, canonical_form_via_triangulation, dual_volume_function, toric_amplitude,
    universal_adjoint, verify_positive_geometry, warren_adjoint, Amplitude, CanonicalError,
    CanonicalFormResult, VerificationReport,
};
pub use forms::{CurveParam, FormError, OneFormOnLine, RatForm};
pub use io::IoError;
pub use polypol::{
    adjoint_curve, canonical_form_polypol, validate_polypol, verify_polypol_geometry, Polypol,
    PolypolCanonicalForm, PolypolError, QuasiRegularPolypol,
};
pub use polytope::{vertices_from_hrep, HRep, Polytope, PolytopeError};

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Polypol(#[from] PolypolError),
    #[error(transparent)]
    Io(#[from] IoError),
}

impl Error {
    /// Malformed input text, as opposed to a well-formed but invalid object.
    pub fn is_parse(&self) -> bool {
        match self {
            Error::Algebra(e) => matches!(e, AlgebraError::Parse { .. }),
            Error::Form(e) => matches!(
                e,
                FormError::Syntax(_) | FormError::Algebra(AlgebraError::Parse { .. })
            ),
            Error::Io(e) => e.is_parse(),
            _ => false,
        }
    }

    /// A residue check failed.
    pub fn is_verification(&self) -> bool {
        matches!(self, Error::Canonical(CanonicalError::VerificationFailed { .. }))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
