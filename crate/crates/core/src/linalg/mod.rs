//! Dense matrix primitives and the Gram–Schmidt decomposition.

mod design;
mod gram_schmidt;
mod matrix;
mod triangular;

pub use design::{center_vector, stack_replicates, stack_vector, DesignMatrix, Permutation};
pub use gram_schmidt::{gram_schmidt, GsDecomposition, RANK_TOL};
pub use matrix::{axpy, dot, norm, Matrix};
pub use triangular::{invert_upper_triangular, solve_upper};
