//! Binary plane trees, Bernoulli numbers indexed by trees, and the loop-word
//! language used to state identities.

mod bernoulli;
mod tree;
mod word;

pub use bernoulli::{bernoulli_number, bernoulli_tree_sum, catalan, tree_stats, weighted_tree_sum};
pub use tree::{enumerate_trees, PlaneTree};
pub use word::{parse_identity, parse_word, Identity, LoopWord, WordOp};
