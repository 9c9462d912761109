//! Exact mixed spectral moments of complex (determinantal) and symplectic
//! (Pfaffian) planar random-matrix ensembles for the planar Hermite,
//! Laguerre and Gegenbauer weight families, together with their large-N
//! expansion coefficients and an independent floating-point quadrature
//! oracle.
//!
//! All moment formulas run in exact big-rational arithmetic; the
//! non-Hermiticity parameter can be instantiated at a rational value or kept
//! formal, in which case results are polynomials in `t`.
//!
//! ```
//! use planar_moments::{evaluate, Component, Method, MomentQuery, Rational, Scalar, WeightFamily};
//!
//! let family = WeightFamily::hermite(Scalar::Rat(Rational::new(1, 2))).unwrap();
//! let q = MomentQuery {
//!     family,
//!     p1: 1,
//!     p2: 1,
//!     n: 3,
//!     component: Component::Complex,
//!     method: Method::Auto,
//! };
//! assert_eq!(evaluate(&q).unwrap().value.to_string(), "27/4");
//!
//! // symbolic mode: the same moment as a polynomial in t
//! let sym = WeightFamily::hermite(Scalar::tau()).unwrap();
//! let q = MomentQuery { family: sym, ..q };
//! assert_eq!(evaluate(&q).unwrap().value.to_string(), "6 + 3*t^2");
//! ```

pub mod acoeff;
pub mod asympt;
pub mod complex;
pub mod exact;
pub mod oracle;
pub mod query;
pub mod symplectic;
pub mod verify;
pub mod weights;

pub use exact::{Rational, Scalar, TauPoly};
pub use query::{evaluate, Method, MomentQuery, MomentResult, Tables};
pub use weights::WeightFamily;

/// Which of the two ensemble classes a computation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    Complex,
    Symplectic,
}

impl std::fmt::Display for Component {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Component::Complex => write!(f, "complex"),
            Component::Symplectic => write!(f, "symplectic"),
        }
    }
}
