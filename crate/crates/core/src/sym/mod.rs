//! The symmetric coalgebra k[V]: monomials, coproduct, counit, primitive
//! projection, tensors and the series/distribution codec.

mod element;
mod exps;
mod tensor;

pub use element::{SymElement, VectorElem};
pub use exps::{
    add_exps, concat_exps, degree, divides, exp_binomial, exp_factorial, exp_factorial_q, graded_dimension,
    monomials_of_degree, monomials_up_to, multidegree, split_by_dims, sub_exps, sub_monomials, unit_vector, ExpVector,
};
pub use tensor::{split_monomial, SymTensor};
