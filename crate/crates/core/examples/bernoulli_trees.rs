//! Sums of Bernoulli tree weights over all planar binary trees with n leaves.

use sabinin::rational::{format_q, qf};
use sabinin::trees::{bernoulli_tree_sum, catalan, enumerate_trees, tree_stats};

fn main() -> sabinin::Result<()> {
    println!("{:>3} {:>6} {:>8}  expected", "n", "trees", "sum");
    for n in 1..=8 {
        let sum = bernoulli_tree_sum(n)?;
        let expected = qf(if n % 2 == 1 { 1 } else { -1 }, n as i64);
        println!("{n:>3} {:>6} {:>8}  {}", catalan(n - 1), format_q(&sum), format_q(&expected));
    }
    println!("\nweights of the trees with four leaves:");
    for t in enumerate_trees(4)? {
        let (b, fact) = tree_stats(&t);
        println!("  {:<10} B = {:<6} tau! = {fact}", t.encode(), format_q(&b));
    }
    Ok(())
}
