//! Acceptance suite: one test that exercises every headline property of the
//! crate at its stated tolerance and prints one pass/fail line per
//! criterion. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines as they complete.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use accessgap::cascade::{
    exact_probabilities, hlevel_recurrence, prob_est, CascadeConfig,
    SeedSet,
};
use accessgap::experiments::{
    prepare_graph, run_sweep_on, timing_table, CellOutcome, ExperimentConfig,
    core_periphery_graph,
};
use accessgap::fixtures::{generate, FixtureName, FixtureSpec};
use accessgap::graph::Graph;
use accessgap::seeding::{greedy_maximin, myopic, Evaluator, Method};
use accessgap::welfare::{
    brute_force_optimal_seeds, k_imbalance_witness_check, rich_get_richer_witness, welfare,
    Bipartition, CachedOracle, ExactOracle, WelfareSpec,
};

/// Deterministic stand-in for an email-network-scale dataset (the evaluation
/// corpus is not shipped with the repository). Pinned so regression values
/// below stay valid.
const STANDIN_NODES: usize = 1133;
const STANDIN_SEED: u64 = 20260809;
/// Computed once from the generator above and frozen.
const STANDIN_SCC_NODES: usize = 971;
const STANDIN_MAX_DEGREE_VERTEX: usize = 86;

const MASTER_SEED: u64 = 0xACCE55;

type CriterionResult = Result<(), String>;

fn fail(msg: impl Into<String>) -> CriterionResult {
    Err(msg.into())
}

fn check(cond: bool, msg: impl Into<String>) -> CriterionResult {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

struct Suite {
    results: Vec<(String, CriterionResult, Duration)>,
}

impl Suite {
    fn run(&mut self, name: &str, f: impl FnOnce() -> CriterionResult) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let line = match &result {
            Ok(()) => format!("criterion {name}: PASS ({elapsed:.1?})"),
            Err(msg) => format!("criterion {name}: FAIL ({elapsed:.1?}): {msg}"),
        };
        println!("{line}");
        self.results.push((name.to_string(), result, elapsed));
    }
}

#[test]
fn acceptance_criteria() {
    let mut suite = Suite {
        results: Vec::new(),
    };
    suite.run("1 (estimator matches oracle)", criterion_1);
    suite.run("2 (chain ground truth)", criterion_2);
    suite.run("3 (rich-get-richer witness)", criterion_3);
    suite.run("4 (imbalance witnesses and maximin balance)", criterion_4);
    suite.run("5 (probability chasing regression)", criterion_5);
    suite.run("6 (greedy path regression)", criterion_6);
    suite.run("7 (level recurrence)", criterion_7);
    suite.run("8 (minimax distance pathology)", criterion_8);
    suite.run("9 (qualitative sweep reproduction)", criterion_9);
    suite.run("10 (timing ordering)", criterion_10);
    suite.run("11 (end-to-end determinism)", criterion_11);

    let failures: Vec<String> = suite
        .results
        .iter()
        .filter_map(|(name, r, _)| r.as_ref().err().map(|m| format!("{name}: {m}")))
        .collect();
    assert!(
        failures.is_empty(),
        "{} criterion(s) failed:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

/// Small fixtures (at most 12 arc coins) with their canonical or default
/// seed sets.
fn oracle_fixtures() -> Vec<(FixtureSpec, SeedSet)> {
    let specs = vec![
        FixtureSpec::new(FixtureName::Fig2),
        FixtureSpec::new(FixtureName::GreedIsBad).with("ell", 1),
        FixtureSpec::new(FixtureName::GreedIsBad).with("ell", 4),
        FixtureSpec::new(FixtureName::HLevel).with("ell", 1),
        FixtureSpec::new(FixtureName::HLevel).with("ell", 2),
        FixtureSpec::new(FixtureName::HComposite).with("ell", 4),
        FixtureSpec::new(FixtureName::Path).with("n", 6),
        FixtureSpec::new(FixtureName::Star).with("n", 6),
        FixtureSpec::new(FixtureName::DisjointImbalance).with("n", 8),
    ];
    specs
        .into_iter()
        .map(|spec| {
            let fix = generate(&spec).expect("fixture generates");
            let seeds = if fix.seeds.is_empty() {
                SeedSet::new([0])
            } else {
                fix.seeds.clone()
            };
            (spec, seeds)
        })
        .collect()
}

fn criterion_1() -> CriterionResult {
    let start = Instant::now();
    for (spec, seeds) in oracle_fixtures() {
        let fix = generate(&spec).expect("fixture generates");
        let g = &fix.graph;
        if g.arc_count() > 12 {
            return fail(format!("{spec:?} exceeds the 12-arc budget"));
        }
        for alpha in [0.1, 0.3, 0.5] {
            let exact = exact_probabilities(g, &seeds, alpha).map_err(|e| e.to_string())?;
            let est = prob_est(
                g,
                &seeds,
                &CascadeConfig {
                    alpha,
                    reps: 10_000,
                    master_seed: MASTER_SEED,
                },
            )
            .map_err(|e| e.to_string())?;
            for v in 0..g.n() {
                let diff = (est.get(v) - exact.get(v)).abs();
                check(
                    diff <= 0.03,
                    format!(
                        "{:?} alpha {alpha} node {v}: |{} - {}| = {diff} > 0.03",
                        spec.name,
                        est.get(v),
                        exact.get(v)
                    ),
                )?;
            }
        }
    }
    check(
        start.elapsed() < Duration::from_secs(10),
        format!("took {:?}, budget 10s", start.elapsed()),
    )
}

fn criterion_2() -> CriterionResult {
    let fix = generate(&FixtureSpec::new(FixtureName::Fig2)).expect("fig2");
    for alpha in [0.1, 0.2, 0.3, 0.4, 0.5] {
        let p = exact_probabilities(&fix.graph, &fix.seeds, alpha).map_err(|e| e.to_string())?;
        let expected = [1.0, alpha, alpha * alpha, alpha * alpha];
        for (v, want) in expected.iter().enumerate() {
            check(
                (p.get(v) - want).abs() <= 1e-12,
                format!("alpha {alpha} node {v}: {} vs {want}", p.get(v)),
            )?;
        }
    }
    Ok(())
}

fn criterion_3() -> CriterionResult {
    let fix = generate(&FixtureSpec::new(FixtureName::Fig2)).expect("fig2");
    let g = &fix.graph;
    let alpha = 0.3;
    let oracle = ExactOracle::new(alpha);
    let witness = rich_get_richer_witness(g, &fix.seeds, 1, WelfareSpec::REACH, &oracle)
        .map_err(|e| e.to_string())?
        .ok_or("no witness found")?;
    check(
        witness.optimal_seeds == SeedSet::new([0, 1]),
        format!("optimal seeds {:?}, expected {{v1, v2}}", witness.optimal_seeds),
    )?;
    check(
        witness.gap_initial > 0.0 && witness.gap_optimal > witness.gap_initial,
        format!(
            "gap did not widen: {} -> {}",
            witness.gap_initial, witness.gap_optimal
        ),
    )?;
    // the canonical split {v3, v4} vs {v1, v2} also widens strictly
    let before = exact_probabilities(g, &fix.seeds, alpha).map_err(|e| e.to_string())?;
    let after = exact_probabilities(g, &witness.optimal_seeds, alpha).map_err(|e| e.to_string())?;
    let v = [2usize, 3];
    let v_prime = [0usize, 1];
    let gap = |p: &accessgap::ProbVector| -> Result<f64, String> {
        Ok(welfare(p, &v_prime, WelfareSpec::REACH).map_err(|e| e.to_string())?
            - welfare(p, &v, WelfareSpec::REACH).map_err(|e| e.to_string())?)
    };
    let (g0, g1) = (gap(&before)?, gap(&after)?);
    check(
        g1 > g0 && g0 > 0.0,
        format!("canonical split gap {g0} -> {g1}"),
    )
}

/// All connected undirected graphs on at most `max_n` nodes, one per
/// isomorphism class (canonical form: minimum edge bitmask over all node
/// permutations).
fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut graphs = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let perms = permutations(n);
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut count = 0usize;
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, false, edges.iter().copied()).expect("edges in range");
            if g.bfs_hop_distances(&[0], false)
                .iter()
                .any(|&d| d == accessgap::graph::UNREACHABLE)
            {
                continue;
            }
            let canon = perms
                .iter()
                .map(|perm| {
                    let mut m = 0u64;
                    for &(a, b) in &edges {
                        let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
                        let bit = pairs.iter().position(|&p| p == (x, y)).unwrap();
                        m |= 1 << bit;
                    }
                    m
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                graphs.push(g);
                count += 1;
            }
        }
        counts.push(count);
    }
    // known counts of connected graphs on 1..=5 unlabeled nodes
    assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    graphs
}

fn criterion_4() -> CriterionResult {
    let start = Instant::now();

    // (a) disjoint witness under the arithmetic mean
    let fix = generate(&FixtureSpec::new(FixtureName::DisjointImbalance).with("n", 8))
        .expect("disjoint fixture");
    let bp = Bipartition::new(4..8, 0..4, 8).map_err(|e| e.to_string())?;
    let oracle = ExactOracle::new(0.5);
    let checkres =
        k_imbalance_witness_check(&fix.graph, &fix.seeds, &bp, 2, WelfareSpec::REACH, &oracle)
            .map_err(|e| e.to_string())?;
    check(
        checkres.holds,
        format!("disjoint witness conditions {:?}", checkres.conditions),
    )?;

    // (b) star witness under the geometric mean at alpha = 0.5
    let fix = generate(&FixtureSpec::new(FixtureName::StarImbalance).with("n", 4))
        .expect("star fixture");
    let bp = Bipartition::new(4..8, 0..4, 8).map_err(|e| e.to_string())?;
    let checkres = k_imbalance_witness_check(
        &fix.graph,
        &fix.seeds,
        &bp,
        2,
        WelfareSpec::Finite(0.0),
        &oracle,
    )
    .map_err(|e| e.to_string())?;
    check(
        checkres.holds,
        format!("star witness conditions {:?}", checkres.conditions),
    )?;

    // (c) exhaustive scan: the maximin admits no witness anywhere
    use rayon::prelude::*;
    let graphs = connected_graphs_up_to(5);
    let violations: Vec<String> = graphs
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            let n = g.n();
            let mut local = Vec::new();
            for alpha in [0.3, 0.5] {
                let oracle = CachedOracle::new(ExactOracle::new(alpha));
                for seed in 0..n {
                    let initial = SeedSet::new([seed]);
                    for k in 1..=2usize {
                        for mask in 1u32..((1u32 << n) - 1) {
                            let v: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                            let v_prime: Vec<usize> =
                                (0..n).filter(|&i| mask & (1 << i) == 0).collect();
                            let bp = Bipartition::new(v, v_prime, n).expect("valid split");
                            let res = k_imbalance_witness_check(
                                g,
                                &initial,
                                &bp,
                                k,
                                WelfareSpec::MAXIMIN,
                                &oracle,
                            )
                            .expect("check runs");
                            if res.holds {
                                local.push(format!(
                                    "graph {gi} (n={n}) seed {seed} k {k} alpha {alpha} mask {mask:b}"
                                ));
                            }
                        }
                    }
                }
            }
            local
        })
        .flatten()
        .collect();
    check(
        violations.is_empty(),
        format!("maximin imbalance witnesses found: {violations:?}"),
    )?;
    check(
        start.elapsed() < Duration::from_secs(300),
        format!("took {:?}, budget 5 min", start.elapsed()),
    )
}

fn criterion_5() -> CriterionResult {
    let alpha = 0.3f64;
    let fix =
        generate(&FixtureSpec::new(FixtureName::GreedIsBad).with("ell", 4)).expect("fixture");
    let g = &fix.graph;
    let eval = Evaluator::exact(alpha);
    let sel = myopic(g, &fix.seeds, 1, &eval).map_err(|e| e.to_string())?;
    let myopic_min = eval
        .probabilities(g, &sel.seeds)
        .map_err(|e| e.to_string())?
        .min();
    check(
        (myopic_min - 0.00243).abs() <= 1e-12 && (myopic_min - alpha.powi(5)).abs() <= 1e-12,
        format!("myopic min {myopic_min}, expected 0.3^5 = 0.00243"),
    )?;

    let oracle = ExactOracle::new(alpha);
    let best = brute_force_optimal_seeds(g, &fix.seeds, 1, WelfareSpec::MAXIMIN, &oracle, None)
        .map_err(|e| e.to_string())?;
    let best_min = eval
        .probabilities(g, &best)
        .map_err(|e| e.to_string())?
        .min();
    check(
        best_min >= 0.09 - 1e-12,
        format!("brute-force optimum min {best_min} < 0.09"),
    )?;
    let ratio = myopic_min / (alpha * alpha);
    check(
        (ratio - alpha.powi(3)).abs() <= 1e-12,
        format!("ratio {ratio} differs from alpha^3"),
    )
}

fn criterion_6() -> CriterionResult {
    // a path of length 12 (13 nodes): greedy takes the center and stalls at
    // alpha^6 while trisection-style seeds achieve at least alpha^4
    let alpha = 0.3f64;
    let fix = generate(&FixtureSpec::new(FixtureName::Path).with("n", 13)).expect("path");
    let g = &fix.graph;
    let eval = Evaluator::exact(alpha);
    let sel = greedy_maximin(g, &SeedSet::empty(), 2, &eval).map_err(|e| e.to_string())?;
    let greedy_min = eval
        .probabilities(g, &sel.seeds)
        .map_err(|e| e.to_string())?
        .min();
    check(
        sel.seeds.contains(6),
        format!("greedy seeds {:?} do not include the center", sel.seeds),
    )?;
    check(
        (greedy_min - alpha.powi(6)).abs() <= 1e-12,
        format!("greedy min {greedy_min}, expected alpha^6 = {}", alpha.powi(6)),
    )?;

    let oracle = ExactOracle::new(alpha);
    let best = brute_force_optimal_seeds(g, &SeedSet::empty(), 2, WelfareSpec::MAXIMIN, &oracle, None)
        .map_err(|e| e.to_string())?;
    let best_min = eval
        .probabilities(g, &best)
        .map_err(|e| e.to_string())?
        .min();
    check(
        best_min >= alpha.powi(4) - 1e-12,
        format!("optimum {best_min} below alpha^4 = {}", alpha.powi(4)),
    )
}

fn criterion_7() -> CriterionResult {
    let p20 = hlevel_recurrence(20, 0.5);
    check(
        (0.13043..=0.16667).contains(&p20),
        format!("recurrence(20) = {p20} outside [0.13043, 0.16667]"),
    )?;

    let fix = generate(&FixtureSpec::new(FixtureName::HLevel).with("ell", 3)).expect("fixture");
    let p = exact_probabilities(&fix.graph, &fix.seeds, 0.5).map_err(|e| e.to_string())?;
    let want = hlevel_recurrence(3, 0.5);
    let got = p.get(fix.special["t"]);
    check(
        (got - want).abs() <= 1e-12,
        format!("exact {got} vs recurrence {want}"),
    )?;

    let fix = generate(&FixtureSpec::new(FixtureName::HLevel).with("ell", 12)).expect("fixture");
    let est = prob_est(
        &fix.graph,
        &fix.seeds,
        &CascadeConfig {
            alpha: 0.5,
            reps: 10_000,
            master_seed: MASTER_SEED,
        },
    )
    .map_err(|e| e.to_string())?;
    let want = hlevel_recurrence(12, 0.5);
    let got = est.get(fix.special["t"]);
    check(
        (got - want).abs() <= 0.03,
        format!("Monte Carlo {got} vs recurrence {want}"),
    )
}

fn criterion_8() -> CriterionResult {
    let alpha = 0.5;
    let fix = generate(&FixtureSpec::new(FixtureName::HComposite).with("ell", 8)).expect("fixture");
    let g = &fix.graph;
    let center = g.graph_center().map_err(|e| e.to_string())?;
    check(
        center == fix.special["s"],
        format!("minimax-distance vertex {center} is not the junction"),
    )?;
    let eval = Evaluator::exact(alpha);
    let minimax_min = eval
        .probabilities(g, &SeedSet::new([center]))
        .map_err(|e| e.to_string())?
        .min();
    let oracle = ExactOracle::new(alpha);
    let best = brute_force_optimal_seeds(g, &SeedSet::empty(), 1, WelfareSpec::MAXIMIN, &oracle, None)
        .map_err(|e| e.to_string())?;
    let best_min = eval
        .probabilities(g, &best)
        .map_err(|e| e.to_string())?
        .min();
    check(
        best_min > minimax_min,
        format!("optimum {best_min} does not beat minimax seed {minimax_min}"),
    )?;
    // the optimum is the interior path vertex next to the junction
    check(
        best == SeedSet::new([fix.special["x"]]),
        format!("optimal seed {best:?} is not the interior path vertex"),
    )
}

struct Standin {
    graph: Graph,
}

fn standin() -> Result<Standin, String> {
    let full = core_periphery_graph(STANDIN_NODES, STANDIN_SEED);
    let prep = prepare_graph(full);
    if prep.retained_nodes >= prep.original_nodes {
        return Err("restriction did not shrink the graph".into());
    }
    if prep.retained_nodes != STANDIN_SCC_NODES {
        return Err(format!(
            "largest component has {} nodes, pinned {STANDIN_SCC_NODES}",
            prep.retained_nodes
        ));
    }
    let deg = prep.graph.degrees();
    let max_deg = *deg.iter().max().unwrap();
    let hubs: Vec<usize> = (0..prep.graph.n()).filter(|&v| deg[v] == max_deg).collect();
    if hubs != vec![STANDIN_MAX_DEGREE_VERTEX] {
        return Err(format!(
            "max-degree vertices {hubs:?} differ from the pinned unique vertex              {STANDIN_MAX_DEGREE_VERTEX}"
        ));
    }
    Ok(Standin { graph: prep.graph })
}

/// One-sided sign test: is `wins` out of `n` significantly above chance at
/// the 95% level?
fn sign_test_significant(wins: usize, n: usize) -> bool {
    let tail: f64 = (wins..=n)
        .map(|i| {
            let mut c = 1.0f64;
            for j in 0..i {
                c = c * (n - j) as f64 / (j + 1) as f64;
            }
            c
        })
        .sum::<f64>()
        / 2f64.powi(n as i32);
    tail < 0.05
}

fn criterion_9() -> CriterionResult {
    let start = Instant::now();
    let standin = standin()?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let graph_path = dir.path().join("standin.txt");
    std::fs::write(&graph_path, standin.graph.canonical_edge_list()).map_err(|e| e.to_string())?;
    let prepared = prepare_graph(standin.graph.clone());

    // (a) estimation-based heuristics dominate the distance and random
    // baselines on the minimum probability
    let cfg = ExperimentConfig {
        graph_path: graph_path.clone(),
        directed: true,
        methods: vec![
            Method::Myopic,
            Method::NaiveMyopic,
            Method::Gonzalez,
            Method::Random,
        ],
        alphas: vec![0.3, 0.4, 0.5],
        ks: vec![25, 50, 100],
        reps_per_estimate: 1000,
        repeats: 20,
        master_seed: MASTER_SEED,
    };
    let report = run_sweep_on(&prepared, &cfg).map_err(|e| e.to_string())?;
    let min_of = |method: Method, alpha: f64, k: usize, trial: usize| -> Result<f64, String> {
        report
            .cells
            .iter()
            .find(|c| c.method == method && c.alpha == alpha && c.k == k && c.trial == trial)
            .and_then(|c| match &c.outcome {
                CellOutcome::Done(d) => Some(d.min_prob),
                CellOutcome::Skipped { .. } => None,
            })
            .ok_or_else(|| format!("missing cell {method} {alpha} {k} {trial}"))
    };
    for &alpha in &cfg.alphas {
        for &k in &cfg.ks {
            for est_method in [Method::Myopic, Method::NaiveMyopic] {
                for base_method in [Method::Gonzalez, Method::Random] {
                    let mut wins = 0;
                    for trial in 0..cfg.repeats {
                        if min_of(est_method, alpha, k, trial)?
                            > min_of(base_method, alpha, k, trial)?
                        {
                            wins += 1;
                        }
                    }
                    check(
                        sign_test_significant(wins, cfg.repeats),
                        format!(
                            "{est_method} vs {base_method} at alpha {alpha} k {k}: {wins}/{} wins",
                            cfg.repeats
                        ),
                    )?;
                }
            }
        }
    }

    // (b) + (c) at alpha = 0.1, k = 100: myopic decorrelates access from
    // network position and thins the lowest histogram bin
    let cfg2 = ExperimentConfig {
        graph_path,
        directed: true,
        methods: vec![Method::Myopic, Method::ReachGreedy],
        alphas: vec![0.1],
        ks: vec![100],
        reps_per_estimate: 1000,
        repeats: 20,
        master_seed: MASTER_SEED + 1,
    };
    let report2 = run_sweep_on(&prepared, &cfg2).map_err(|e| e.to_string())?;
    let stats = |method: Method| -> Result<([f64; 3], f64), String> {
        let mut rho = [0.0f64; 3];
        let mut bin0 = 0.0f64;
        let mut count = 0usize;
        for cell in report2.cells.iter().filter(|c| c.method == method) {
            if let CellOutcome::Done(d) = &cell.outcome {
                rho[0] += d
                    .correlations
                    .vs_baseline
                    .ok_or("undefined baseline correlation")?
                    .abs();
                rho[1] += d
                    .correlations
                    .vs_degree
                    .ok_or("undefined degree correlation")?
                    .abs();
                rho[2] += d
                    .correlations
                    .vs_center_distance
                    .ok_or("undefined center correlation")?
                    .abs();
                bin0 += d.histogram[0] as f64;
                count += 1;
            }
        }
        if count == 0 {
            return Err(format!("no completed cells for {method}"));
        }
        Ok((
            [
                rho[0] / count as f64,
                rho[1] / count as f64,
                rho[2] / count as f64,
            ],
            bin0 / count as f64,
        ))
    };
    let (rho_myopic, bin0_myopic) = stats(Method::Myopic)?;
    let (rho_reach, bin0_reach) = stats(Method::ReachGreedy)?;
    for axis in 0..3 {
        check(
            rho_myopic[axis] < rho_reach[axis],
            format!(
                "axis {axis}: myopic |rho| {:.4} not below reach-greedy {:.4}",
                rho_myopic[axis], rho_reach[axis]
            ),
        )?;
    }
    check(
        bin0_myopic < bin0_reach,
        format!("lowest bin: myopic {bin0_myopic:.1} not below reach-greedy {bin0_reach:.1}"),
    )?;

    check(
        start.elapsed() < Duration::from_secs(30 * 60),
        format!("took {:?}, budget 30 min", start.elapsed()),
    )
}

fn criterion_10() -> CriterionResult {
    let standin = standin()?;
    let methods = [
        Method::Random,
        Method::Gonzalez,
        Method::NaiveMyopic,
        Method::Myopic,
        Method::Greedy,
    ];
    // alpha = 0.2 keeps every adjacent gap in the ordering at least fivefold
    // while the full-candidate greedy still finishes in minutes
    let rows = timing_table(&standin.graph, &methods, 0.2, 100, 1000, 1, MASTER_SEED)
        .map_err(|e| e.to_string())?;
    let secs: Vec<f64> = rows.iter().map(|r| r.mean_seconds).collect();
    for w in rows.windows(2) {
        check(
            w[0].mean_seconds < w[1].mean_seconds,
            format!(
                "{} ({:.3e}s) not faster than {} ({:.3e}s); full table {:?}",
                w[0].method, w[0].mean_seconds, w[1].method, w[1].mean_seconds, secs
            ),
        )?;
    }
    Ok(())
}

fn criterion_11() -> CriterionResult {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let graph_path = dir.path().join("net.txt");
    let g = core_periphery_graph(300, 7);
    std::fs::write(&graph_path, g.canonical_edge_list()).map_err(|e| e.to_string())?;
    let config_path = dir.path().join("config.json");
    std::fs::write(
        &config_path,
        serde_json::json!({
            "graph_path": graph_path,
            "directed": true,
            "methods": ["myopic", "random", "gonzalez"],
            "alphas": [0.3],
            "ks": [3],
            "reps_per_estimate": 200,
            "repeats": 2,
            "master_seed": 12
        })
        .to_string(),
    )
    .map_err(|e| e.to_string())?;

    let run = |out: &Path, threads: &str| -> Result<(), String> {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_accessgap"))
            .args([
                "experiment",
                "--config",
                config_path.to_str().unwrap(),
                "--threads",
                threads,
                "-o",
                out.to_str().unwrap(),
            ])
            .status()
            .map_err(|e| e.to_string())?;
        check(status.success(), format!("experiment run failed: {status}"))
    };
    let outs = [
        dir.path().join("r1"),
        dir.path().join("r2"),
        dir.path().join("r0"),
    ];
    run(&outs[0], "1")?;
    run(&outs[1], "2")?;
    run(&outs[2], "0")?;

    // measured seconds are the only permitted difference: sweep.csv is
    // compared with its seconds column stripped, timing.csv is exempt
    let strip_seconds = |text: &str| -> String {
        text.lines()
            .map(|l| l.rsplitn(2, ',').last().unwrap().to_string())
            .collect::<Vec<_>>()
            .join("\n")
    };
    for file in ["report.json", "correlations.csv", "histogram.csv"] {
        let a = std::fs::read_to_string(outs[0].join(file)).map_err(|e| e.to_string())?;
        for other in &outs[1..] {
            let b = std::fs::read_to_string(other.join(file)).map_err(|e| e.to_string())?;
            check(a == b, format!("{file} differs across --threads settings"))?;
        }
    }
    let a = strip_seconds(&std::fs::read_to_string(outs[0].join("sweep.csv")).map_err(|e| e.to_string())?);
    for other in &outs[1..] {
        let b = strip_seconds(
            &std::fs::read_to_string(other.join("sweep.csv")).map_err(|e| e.to_string())?,
        );
        check(a == b, "sweep.csv differs beyond the seconds column".to_string())?;
    }
    Ok(())
}
