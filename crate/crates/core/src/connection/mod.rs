mod field;
mod flat;

pub use field::{vf_bracket, FormalFunction, FormalVectorField};
pub use flat::{
    adapted_field, connection_backslash_star, connection_from_loop, covariant_derivative, ms_bracket_table,
    ms_brackets, torsion, FlatConnection,
};
