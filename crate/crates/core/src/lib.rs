//! Reduction numbers, degrees, Cohen–Macaulayness and graded Betti tables
//! of projective subschemes, with the closed-form tables for subschemes of
//! maximal and almost maximal degree.

pub mod betti;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod formulas;
pub mod groebner;
pub mod hilbert;
pub mod ideal_file;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use betti::BettiTable;
pub use error::{Error, Result};
pub use groebner::{buchberger, GroebnerBasis, MonomialIdeal};
pub use linalg::Matrix;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ring::Ring;
pub use scalar::{FieldKind, Fp, Scalar};

/// The default coefficient field.
pub type Gf32003 = Fp<32003>;
/// Smaller prime used to cross-check characteristic independence.
pub type Gf101 = Fp<101>;
/// The rationals.
pub type Qq = num_rational::BigRational;
/// Polynomial over the default field.
pub type Poly = Polynomial<Gf32003>;

/// Prime moduli with a compiled field type, usable through [`with_field!`].
pub const SUPPORTED_PRIMES: [u32; 6] = [7, 101, 1009, 32003, 65521, 2147483647];

/// Evaluates `$body` with `$F` bound to the scalar type of a runtime
/// [`FieldKind`]. `$body` must produce a [`Result`]; moduli outside
/// [`SUPPORTED_PRIMES`] give [`Error::UnsupportedField`].
#[macro_export]
macro_rules! with_field {
    ($kind:expr, $F:ident => $body:expr) => {{
        match $kind {
            $crate::FieldKind::Rationals => {
                type $F = $crate::Qq;
                $body
            }
            $crate::FieldKind::Prime(7) => {
                type $F = $crate::Fp<7>;
                $body
            }
            $crate::FieldKind::Prime(101) => {
                type $F = $crate::Fp<101>;
                $body
            }
            $crate::FieldKind::Prime(1009) => {
                type $F = $crate::Fp<1009>;
                $body
            }
            $crate::FieldKind::Prime(32003) => {
                type $F = $crate::Fp<32003>;
                $body
            }
            $crate::FieldKind::Prime(65521) => {
                type $F = $crate::Fp<65521>;
                $body
            }
            $crate::FieldKind::Prime(2147483647) => {
                type $F = $crate::Fp<2147483647>;
                $body
            }
            other => Err($crate::Error::UnsupportedField(other.to_string())),
        }
    }};
}
