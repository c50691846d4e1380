pub mod algebra;
pub mod ambiskew;
pub mod error;
pub mod expr;
pub mod gallery;
pub mod hopf;
pub mod hopfgalois;
pub mod hra;
pub mod lincomb;
pub mod linalg;
pub mod morphism;
pub mod props;
pub mod report;
pub mod scalar;
pub mod scan;
pub mod session;
pub mod tensor;

pub use algebra::{Element, Monomial, TowerAlgebra};
pub use error::{Error, Result};
pub use morphism::{Automorphism, Character, Morphism};
pub use scalar::{ParamRing, Scalar};
