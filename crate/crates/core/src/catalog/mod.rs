//! Concrete algebras and loops: Jordan, split octonion and associative
//! tables, the rational loop on the plane and its covering homomorphism.

mod algebra;
mod loops;
#[cfg(test)]
mod tests;

pub use algebra::{
    builtin_algebra, dual_numbers, jordan_k3, jordan_spin_normalized, split_octonions, upper_triangular, AlgebraFlags,
    AlgebraTable, JordanSpin, ALGEBRA_NAMES,
};
pub use loops::{
    builtin_loop, check_homomorphism, load_loop, loop_from_algebra, loop_from_json, nonlinear_loop_f, perturb_linear,
    phi_g_to_f, HomomorphismVerdict, LOOP_NAMES,
};
