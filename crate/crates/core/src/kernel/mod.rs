pub mod algebraic;
pub mod homology;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod smith;

pub use algebraic::RealAlgebraic;
pub use homology::{homology_order, ChainComplex};
pub use laurent::LaurentPolynomial;
pub use matrix::Matrix;
pub use poly::Poly;
pub use ratfunc::{normalize_unit_class, NormalizedTorsionClass, RationalFunction};
pub use ring::{EuclideanRing, Ring};
pub use scalar::ExactScalar;
pub use series::{exp_from_log_coefficients, log_coefficients, series_expand};
pub use smith::{smith_normal_form, SmithForm};
