//! Three small graphs on which the cheap heuristics fail by factors
//! exponential in the graph size, with the exact oracle doing the scoring.

use accessgap::cascade::SeedSet;
use accessgap::fixtures::{generate, FixtureName, FixtureSpec};
use accessgap::seeding::{greedy_maximin, myopic, Evaluator};
use accessgap::welfare::{brute_force_optimal_seeds, ExactOracle, WelfareSpec};

fn main() -> accessgap::Result<()> {
    // 1. chasing the lowest probability: the cycle-with-tails graph
    let alpha = 0.3;
    let fix = generate(&FixtureSpec::new(FixtureName::GreedIsBad).with("ell", 4))?;
    let eval = Evaluator::exact(alpha);
    let oracle = ExactOracle::new(alpha);
    let sel = myopic(&fix.graph, &fix.seeds, 1, &eval)?;
    let best = brute_force_optimal_seeds(
        &fix.graph,
        &fix.seeds,
        1,
        WelfareSpec::MAXIMIN,
        &oracle,
        None,
    )?;
    let min_of = |seeds: &SeedSet| -> accessgap::Result<f64> {
        Ok(eval.probabilities(&fix.graph, seeds)?.min())
    };
    println!("probability chasing on the cycle graph (alpha = {alpha}):");
    println!(
        "  myopic adds {:?} -> min {:.5}",
        sel.seeds.iter().map(|v| fix.graph.label(v)).collect::<Vec<_>>(),
        min_of(&sel.seeds)?
    );
    println!(
        "  optimum adds {:?} -> min {:.5}",
        best.iter().map(|v| fix.graph.label(v)).collect::<Vec<_>>(),
        min_of(&best)?
    );

    // 2. greedy stalls on a path: the first pick blocks the trisection
    let path = generate(&FixtureSpec::new(FixtureName::Path).with("n", 13))?;
    let eval = Evaluator::exact(alpha);
    let greedy = greedy_maximin(&path.graph, &SeedSet::empty(), 2, &eval)?;
    let oracle = ExactOracle::new(alpha);
    let best = brute_force_optimal_seeds(
        &path.graph,
        &SeedSet::empty(),
        2,
        WelfareSpec::MAXIMIN,
        &oracle,
        None,
    )?;
    println!("\ntwo seeds on a 13-node path (alpha = {alpha}):");
    println!(
        "  greedy picks {:?} -> min {:.6}",
        greedy.seeds.as_slice(),
        eval.probabilities(&path.graph, &greedy.seeds)?.min()
    );
    println!(
        "  optimum is  {:?} -> min {:.6}",
        best.as_slice(),
        eval.probabilities(&path.graph, &best)?.min()
    );

    // 3. distance is not probability: the path-plus-ladder composite
    let fix = generate(&FixtureSpec::new(FixtureName::HComposite).with("ell", 8))?;
    let alpha = 0.5;
    let eval = Evaluator::exact(alpha);
    let oracle = ExactOracle::new(alpha);
    let center = fix.graph.graph_center()?;
    let best = brute_force_optimal_seeds(
        &fix.graph,
        &SeedSet::empty(),
        1,
        WelfareSpec::MAXIMIN,
        &oracle,
        None,
    )?;
    println!("\nminimax distance on the path-plus-ladder graph (alpha = {alpha}):");
    println!(
        "  distance-minimizing seed {:?} -> min {:.5}",
        fix.graph.label(center),
        eval.probabilities(&fix.graph, &SeedSet::new([center]))?.min()
    );
    println!(
        "  optimal seed {:?} -> min {:.5}",
        best.iter().map(|v| fix.graph.label(v)).collect::<Vec<_>>(),
        eval.probabilities(&fix.graph, &best)?.min()
    );
    Ok(())
}
