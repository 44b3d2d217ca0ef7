//! Exact scalars, dense matrices, subspaces, quadratic forms and polynomial
//! interpolation over `Q` and `F_p`.

pub mod binary;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod quadform;
pub mod subspace;

pub use binary::binary_forms_have_common_root;
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use poly::{interpolate_poly, monomials, HomPoly};
pub use quadform::QuadForm;
pub use subspace::LinSubspace;
