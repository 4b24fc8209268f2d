//! Exact-arithmetic finite-dimensional algebras: structure constants,
//! bimodule tensor calculus, Frobenius-type diagnostics, and the truncated
//! tensor-algebra construction with its graded analysis.

pub mod algebra;
pub mod catalog;
pub mod claims;
pub mod error;
pub mod frobenius;
pub mod graded;
pub mod hom;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod radical;
pub mod semisimple;
pub mod scalar;
pub mod tensor;

pub use algebra::{corner_algebra, product_algebra, Algebra, ArcAlgebra};
pub use error::{Error, Result};
pub use frobenius::{frobenius_form, is_inner, is_quasi_frobenius, is_symmetric, nakayama_automorphism, nakayama_permutation, FrobeniusData};
pub use graded::{build_a, build_a_of_dual, check_associative, graded_diagnostics, GradedAlgebra};
pub use hom::{find_invertible_in_span, is_invertible_bimodule, pic_order_of_dual, SearchParams};
pub use linalg::{Mat, SparseMat, SparseVec, Subspace};
pub use module::{Bimodule, Module, Side};
pub use radical::jacobson_radical;
pub use semisimple::{semisimple_data, SemisimpleData};
pub use scalar::{Field, Scalar};
pub use tensor::{tensor_bimodule_with_left, tensor_bimodules, TensorFactorization, TensorTower};
