//! Exact toolkit for matrix factorizations of the Fermat cubic threefold
//! `f4 = Y1^3 + Y2^3 + Y3^3 + Y4^3` and the rank-one graded maximal
//! Cohen–Macaulay modules they present.
//!
//! The algebraic kernel (polynomials, linear algebra, Gröbner bases,
//! polynomial matrices) is generic over an exact [`Field`]; the catalog and
//! the equivalence machinery work over [`CycNum`], the field Q(ε) with
//! ε² + ε + 1 = 0. Type aliases at the crate root fix the scalar to `CycNum`.

pub mod catalog;
pub mod cyclofield;
pub mod equiv;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linsolve;
pub mod matpoly;
pub mod multipoly;

pub use cyclofield::{cube_roots_of_minus_one, primitive_cube_roots_of_unity, CycNum};
pub use error::{Error, Result};
pub use field::{Field, Rat};
pub use matpoly::{ElementaryOp, MatrixJson};
pub use multipoly::{Monomial, MonomialOrder, VarTable};

pub type Poly = multipoly::Polynomial<CycNum>;
pub type Ideal = groebner::Ideal<CycNum>;
pub type GroebnerBasis = groebner::GroebnerBasis<CycNum>;
pub type ScalarMat = linsolve::ScalarMatrix<CycNum>;
pub type PolyMat = matpoly::PolyMatrix<CycNum>;
pub type MatrixFactorization = matpoly::MatrixFactorization<CycNum>;
