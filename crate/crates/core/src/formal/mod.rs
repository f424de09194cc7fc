//! Formal maps, their prolongations, and formal loops.

mod loops;
mod map;
#[cfg(test)]
mod tests;

pub use loops::{
    check_loop_identity, eval_word, first_witness, loop_division, right_alt_modify, similarity_between, FormalLoop,
    IdentityVerdict, SimilarityMap, Witness,
};
pub use map::{prolong, FormalMap, Prolongation, View};
