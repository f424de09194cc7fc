//! The unital free non-associative algebra with its bialgebra structure,
//! divisions, Shestakov-Umirbaev operations, and the non-associative
//! exponential and logarithm, all truncated at a fixed degree.

mod element;
mod mono;
mod multioperator;
mod ops;

pub use element::{mono_coproduct, FaContext, FaElement, FaTensor};
pub use mono::Mono;
pub use multioperator::{
    alpha_beta, multioperator_ms, multioperator_series, multioperator_su, phi13_closed_form, phi23_closed_form,
};
pub use ops::{
    associative_collapse, fa_associator, fa_commutator, fa_divide, fa_exp, fa_log, fa_log_at, fa_log_by_inversion,
    fa_loop_divide, left_normed, p_general, p_operation, su_bracket, su_multioperator, Side,
};
