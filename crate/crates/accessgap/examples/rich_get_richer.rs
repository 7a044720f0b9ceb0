//! The four-node chain where the optimal extra seed widens an existing
//! access gap: exact probabilities, gaps before and after, and the
//! brute-force witness search.

use accessgap::cascade::exact_probabilities;
use accessgap::fixtures::{generate, FixtureName, FixtureSpec};
use accessgap::welfare::{
    access_gap, rich_get_richer_witness, Bipartition, ExactOracle, WelfareSpec,
};

fn main() -> accessgap::Result<()> {
    let alpha = 0.3;
    let fix = generate(&FixtureSpec::new(FixtureName::Fig2))?;
    let g = &fix.graph;

    println!("chain: v1 -> v2 -> {{v3, v4}}, seed {{v1}}, alpha = {alpha}");
    let probs = exact_probabilities(g, &fix.seeds, alpha)?;
    for v in 0..g.n() {
        println!("  p({}) = {:.4}", g.label(v), probs.get(v));
    }

    // the advantaged pair {v1, v2} vs the rest
    let bp = Bipartition::new([2, 3], [0, 1], g.n())?;
    for spec in [WelfareSpec::MAXIMIN, WelfareSpec::REACH] {
        let gap = access_gap(&probs, &bp, spec)?;
        println!("access gap (phi = {spec}): {gap:+.4}");
    }

    let oracle = ExactOracle::new(alpha);
    match rich_get_richer_witness(g, &fix.seeds, 1, WelfareSpec::REACH, &oracle)? {
        Some(w) => {
            let labels: Vec<String> = w.optimal_seeds.iter().map(|v| g.label(v)).collect();
            println!(
                "witness: optimal seeds {:?} widen the gap from {:+.4} to {:+.4}",
                labels, w.gap_initial, w.gap_optimal
            );
        }
        None => println!("no rich-get-richer witness (unexpected here)"),
    }
    Ok(())
}
