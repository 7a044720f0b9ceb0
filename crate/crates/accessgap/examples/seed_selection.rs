//! All six selection heuristics side by side on a small synthetic network.

use accessgap::cascade::{prob_est, CascadeConfig, SeedSet};
use accessgap::experiments::{prepare_graph, synthetic_social_graph};
use accessgap::seeding::{select_seeds, Evaluator, Method};

fn main() -> accessgap::Result<()> {
    let prep = prepare_graph(synthetic_social_graph(120, 3, 0.4, 7));
    let g = &prep.graph;
    println!(
        "synthetic network: {} nodes, {} arcs (largest strongly connected component)",
        g.n(),
        g.arc_count()
    );

    let alpha = 0.3;
    let k = 5;
    let eval = Evaluator::MonteCarlo(CascadeConfig {
        alpha,
        reps: 2000,
        master_seed: 11,
    });
    println!("adding k = {k} seeds at alpha = {alpha}:\n");
    println!(
        "{:<14} {:>9} {:>9} {:>7} {:>11}",
        "method", "min prob", "reach", "evals", "time"
    );
    for method in Method::ALL {
        let sel = select_seeds(method, g, &SeedSet::empty(), k, &eval, 99)?;
        // fresh higher-precision evaluation of the chosen seeds
        let probs = prob_est(
            g,
            &sel.seeds,
            &CascadeConfig {
                alpha,
                reps: 20_000,
                master_seed: 12,
            },
        )?;
        println!(
            "{:<14} {:>9.4} {:>9.4} {:>7} {:>10.1?}",
            method.to_string(),
            probs.min(),
            probs.mean(),
            sel.evaluations,
            sel.wall_time
        );
    }
    Ok(())
}
