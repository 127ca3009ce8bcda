//! Exact arithmetic kernel: prime and rational fields, univariate and
//! multivariate polynomials, Gröbner bases, eliminants, Sturm sequences and
//! factorization over finite fields.

pub mod descartes;
pub mod eliminate;
pub mod factor;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod multimodular;
pub mod multivariate;
pub mod primes;
pub mod sturm;
pub mod univariate;
pub mod wronskian;

pub use descartes::{gated_real_count, is_squarefree_rational};
pub use eliminate::{groebner_eliminate, groebner_shape, ElimError, ElimOptions, Eliminant, Retained, ShapeBasis};
pub use factor::{factor_mod_p, Factorization};
pub use field::{Field, Gaussian, GaussianField, PrimeField, RationalField};
pub use groebner::{GbOptions, GroebnerBasis};
pub use monomial::{GrevLex, Lex, Monomial, MonomialOrder};
pub use multimodular::{multimodular_eliminate, MultiModOptions};
pub use multivariate::{realize_gaussian, MultiPoly, PolySystem};
pub use sturm::{sturm_count, SturmError};
pub use univariate::{squarefree_and_degree, UniPoly};
pub use wronskian::wronskian;
