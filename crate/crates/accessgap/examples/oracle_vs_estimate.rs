//! Monte Carlo estimation against the exact live-edge oracle on small
//! fixtures, plus the layered-graph level recurrence.

use accessgap::cascade::{
    exact_probabilities, hlevel_recurrence, prob_est, CascadeConfig,
};
use accessgap::fixtures::{generate, FixtureName, FixtureSpec};

fn main() -> accessgap::Result<()> {
    let specs = [
        FixtureSpec::new(FixtureName::Fig2),
        FixtureSpec::new(FixtureName::GreedIsBad).with("ell", 4),
        FixtureSpec::new(FixtureName::HLevel).with("ell", 3),
    ];
    for spec in specs {
        let fix = generate(&spec)?;
        let g = &fix.graph;
        let cfg = CascadeConfig {
            alpha: 0.3,
            reps: 20_000,
            master_seed: 42,
        };
        let est = prob_est(g, &fix.seeds, &cfg)?;
        let exact = exact_probabilities(g, &fix.seeds, cfg.alpha)?;
        let worst = (0..g.n())
            .map(|v| (est.get(v) - exact.get(v)).abs())
            .fold(0.0f64, f64::max);
        println!(
            "{:<14} n = {:>2}, arcs = {:>2}: max |estimate - exact| = {:.4}",
            fix.name.as_str(),
            g.n(),
            g.arc_count(),
            worst
        );
    }

    // the layered fixture's sink follows p_{k+1} = 1 - (1 - a p_k)^2 exactly
    println!("\nlayered sink probability at alpha = 1/2:");
    for ell in 1..=6 {
        println!("  depth {ell}: recurrence {:.6}", hlevel_recurrence(ell, 0.5));
    }
    let fix = generate(&FixtureSpec::new(FixtureName::HLevel).with("ell", 3))?;
    let exact = exact_probabilities(&fix.graph, &fix.seeds, 0.5)?;
    println!(
        "  exact oracle at depth 3: {:.6} (sink node {})",
        exact.get(fix.special["t"]),
        fix.graph.label(fix.special["t"])
    );
    Ok(())
}
