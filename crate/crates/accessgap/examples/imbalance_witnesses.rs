//! The imbalance pattern: a split where the optimal intervention helps only
//! the side that already had access. The mean-style welfare functions admit
//! witnesses; the maximin does not.

use accessgap::fixtures::{generate, FixtureName, FixtureSpec};
use accessgap::welfare::{k_imbalance_witness_check, Bipartition, ExactOracle, WelfareSpec};

fn main() -> accessgap::Result<()> {
    // eight isolated nodes, two seeds in the advantaged half, two to add
    let fix = generate(&FixtureSpec::new(FixtureName::DisjointImbalance).with("n", 8))?;
    let bp = Bipartition::new(4..8, 0..4, 8)?;
    let oracle = ExactOracle::new(0.5);
    println!("disjoint graph, k = 2:");
    for spec in [WelfareSpec::REACH, WelfareSpec::MAXIMIN] {
        let check = k_imbalance_witness_check(&fix.graph, &fix.seeds, &bp, 2, spec, &oracle)?;
        println!(
            "  phi = {spec:>4}: witness = {} (conditions {:?})",
            check.holds, check.conditions
        );
    }

    // the star construction does the same for the geometric mean
    let fix = generate(&FixtureSpec::new(FixtureName::StarImbalance).with("n", 4))?;
    let n = fix.graph.n();
    let bp = Bipartition::new(n / 2..n, 0..n / 2, n)?;
    println!("star graph, k = 2:");
    for spec in [WelfareSpec::Finite(0.0), WelfareSpec::MAXIMIN] {
        let check = k_imbalance_witness_check(&fix.graph, &fix.seeds, &bp, 2, spec, &oracle)?;
        println!(
            "  phi = {spec:>4}: witness = {} (mu values: V {:.3} -> {:.3}, V' {:.3} -> {:.3})",
            check.holds,
            check.mu_initial_v,
            check.mu_optimal_v,
            check.mu_initial_v_prime,
            check.mu_optimal_v_prime,
        );
    }
    Ok(())
}
