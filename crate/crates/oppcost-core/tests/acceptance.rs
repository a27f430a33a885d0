//! Acceptance suite: the seven gate criteria, one test each, printing a
//! `[PASS]`/`[FAIL]` line per criterion (visible with `--nocapture`).
//!
//! Each criterion pins the exact reference numbers and tolerances; random
//! checks use fixed seeds so runs are reproducible.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use oppcost_core::{
    analyze_path_problem, bellman_operator, brute_force_max_spanning_tree,
    descending_edge_order, enumerate_simple_paths, first_choice_opportunity_costs,
    first_decision_analyses, greedy_path, kruskal_max_spanning_tree, optimal_path,
    producer_period_optimum, producer_plan, simulate_policy, value_function_iteration,
    verify_greedy_min_oppcost, CapitalGrid, Graph, HouseholdModel, PathError, ProducerModel,
    SimulationPolicy, Utility, Verdict, DEFAULT_VERTEX_CAP,
};

const EXAMPLE_EDGE_LIST: &str = "\
c e 8
a d 5
f h 4
a c 3
a b 2
b f 2
d g 2
e h 2
g h 1
";

fn example_graph() -> Graph {
    Graph::parse(EXAMPLE_EDGE_LIST).unwrap()
}

/// Runs one criterion, printing its verdict line and failing the test on
/// any reported problem or a blown runtime budget.
fn criterion(name: &str, budget: Duration, body: impl FnOnce() -> Result<(), String>) {
    let started = Instant::now();
    let outcome = body();
    let elapsed = started.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed <= budget {
            Ok(())
        } else {
            Err(format!("runtime {elapsed:?} exceeds budget {budget:?}"))
        }
    });
    match outcome {
        Ok(()) => println!("[PASS] {name} ({elapsed:.2?})"),
        Err(message) => {
            println!("[FAIL] {name}: {message}");
            panic!("[FAIL] {name}: {message}");
        }
    }
}

fn ensure(cond: bool, message: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.into())
    }
}

/// A connected graph on 2..=7 vertices with guaranteed-distinct weights:
/// a random spanning tree plus random extra edges, weighted by a shuffled
/// set of distinct integers under a random scale.
fn random_connected_graph(rng: &mut StdRng) -> Graph {
    let n = rng.random_range(2..=7usize);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let mut chosen: Vec<(usize, usize)> = (1..n)
        .map(|i| (rng.random_range(0..i), i))
        .collect();
    for &p in &pairs {
        if !chosen.contains(&p) && rng.random_bool(0.4) {
            chosen.push(p);
        }
    }
    let mut weights: Vec<usize> = (1..=chosen.len()).collect();
    weights.shuffle(rng);
    let scale = rng.random_range(0.5..2.0);
    let label = |i: usize| ((b'a' + i as u8) as char).to_string();
    Graph::from_edges(
        chosen
            .iter()
            .zip(&weights)
            .map(|(&(i, j), &w)| (label(i), label(j), w as f64 * scale)),
    )
    .unwrap()
}

/// An arbitrary (possibly disconnected) graph on 2..=7 vertices.
fn random_graph(rng: &mut StdRng) -> Graph {
    let n = rng.random_range(2..=7usize);
    let label = |i: usize| ((b'a' + i as u8) as char).to_string();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.45) {
                edges.push((label(i), label(j), rng.random_range(0.0..10.0)));
            }
        }
    }
    let mut g = Graph::from_edges(edges).unwrap();
    for i in 0..n {
        if !g.contains_vertex(&label(i)) {
            let mut text = g.to_edge_list();
            text.push_str(&label(i));
            text.push('\n');
            g = Graph::parse(&text).unwrap();
        }
    }
    g
}

#[test]
fn criterion_1_path_example_reproduction() {
    criterion(
        "1. path-problem reproduction (3 paths, oppcosts, greedy vs optimal)",
        Duration::from_secs(1),
        || {
            let g = example_graph();
            let paths = enumerate_simple_paths(&g, "a", "h", DEFAULT_VERTEX_CAP)
                .map_err(|e| e.to_string())?;
            let listed: Vec<(String, f64)> =
                paths.iter().map(|p| (p.to_string(), p.utility)).collect();
            ensure(
                listed
                    == [
                        ("a-b-f-h".to_string(), 8.0),
                        ("a-c-e-h".to_string(), 13.0),
                        ("a-d-g-h".to_string(), 8.0),
                    ],
                format!("paths {listed:?}"),
            )?;

            let analyses = first_decision_analyses(&g, "a", "h").map_err(|e| e.to_string())?;
            let costs: Vec<(String, Option<f64>)> = analyses
                .iter()
                .map(|d| (d.choice.to_string(), d.opportunity_cost))
                .collect();
            ensure(
                costs
                    == [
                        ("a-b".to_string(), Some(13.0)),
                        ("a-c".to_string(), Some(8.0)),
                        ("a-d".to_string(), Some(13.0)),
                    ],
                format!("opportunity costs {costs:?}"),
            )?;

            let greedy = greedy_path(&g, "a", "h").map_err(|e| e.to_string())?;
            ensure(
                greedy.to_string() == "a-d-g-h" && greedy.utility == 8.0,
                format!("greedy {greedy} ({})", greedy.utility),
            )?;
            let optimal = optimal_path(&g, "a", "h").map_err(|e| e.to_string())?;
            ensure(
                optimal.to_string() == "a-c-e-h" && optimal.utility == 13.0,
                format!("optimal {optimal} ({})", optimal.utility),
            )?;
            let report = analyze_path_problem(&g, "a", "h").map_err(|e| e.to_string())?;
            ensure(report.utility_gap == Some(5.0), format!("gap {:?}", report.utility_gap))?;
            ensure(
                report.verdict == Verdict::RequiresDp,
                format!("verdict {:?}", report.verdict),
            )
        },
    );
}

#[test]
fn criterion_2_kruskal_reproduction() {
    criterion(
        "2. spanning-tree reproduction (ordering, first-pick oppcosts, total 26)",
        Duration::from_secs(1),
        || {
            let g = example_graph();
            let ordering: Vec<String> = descending_edge_order(&g)
                .iter()
                .map(|e| format!("{e}:{}", e.weight))
                .collect();
            let expected = [
                "c-e:8", "a-d:5", "f-h:4", "a-c:3", "a-b:2", "b-f:2", "d-g:2", "e-h:2", "g-h:1",
            ];
            ensure(ordering == expected, format!("ordering {ordering:?}"))?;

            let table = first_choice_opportunity_costs(&g);
            let head: Vec<(String, Option<f64>)> = table[..3]
                .iter()
                .map(|t| (t.edge.to_string(), t.opportunity_cost))
                .collect();
            ensure(
                head == [
                    ("c-e".to_string(), Some(5.0)),
                    ("a-d".to_string(), Some(8.0)),
                    ("f-h".to_string(), Some(8.0)),
                ],
                format!("first-pick opportunity costs {head:?}"),
            )?;

            let (tree, _) = kruskal_max_spanning_tree(&g).map_err(|e| e.to_string())?;
            ensure(tree.total_weight == 26.0, format!("total {}", tree.total_weight))?;
            let brute = brute_force_max_spanning_tree(&g).map_err(|e| e.to_string())?;
            ensure(
                tree.edges == brute.edges && tree.total_weight == brute.total_weight,
                "Kruskal and brute force disagree".to_string(),
            )
        },
    );
}

#[test]
fn criterion_3_oracle_equivalence_suite() {
    criterion(
        "3. oracle equivalence (200 spanning-tree + 50 path instances)",
        Duration::from_secs(60),
        || {
            let mut rng = StdRng::seed_from_u64(7);
            for case in 0..200 {
                let g = random_connected_graph(&mut rng);
                let (tree, trace) =
                    kruskal_max_spanning_tree(&g).map_err(|e| format!("case {case}: {e}"))?;
                let brute = brute_force_max_spanning_tree(&g)
                    .map_err(|e| format!("case {case}: {e}"))?;
                ensure(
                    tree.edges == brute.edges,
                    format!("case {case}: tree mismatch\n{tree:?}\n{brute:?}"),
                )?;
                let report = verify_greedy_min_oppcost(&trace);
                ensure(report.all_pass, format!("case {case}: min-oppcost check failed"))?;
            }

            let mut analyzed = 0;
            let mut attempts = 0;
            while analyzed < 50 {
                attempts += 1;
                ensure(attempts < 2000, "not enough analyzable path instances".to_string())?;
                let g = random_graph(&mut rng);
                let n = g.vertex_count();
                let label = |i: usize| ((b'a' + i as u8) as char).to_string();
                let (s, t) = (label(0), label(n - 1));
                let report = match analyze_path_problem(&g, &s, &t) {
                    Ok(r) => r,
                    Err(PathError::NoPath { .. }) => continue,
                    Err(e) => return Err(format!("attempt {attempts}: {e}")),
                };
                let optimal = optimal_path(&g, &s, &t).map_err(|e| e.to_string())?;
                let expected = match greedy_path(&g, &s, &t) {
                    Ok(p) if p.utility == optimal.utility => Verdict::GreedyAmenable,
                    Ok(_) | Err(PathError::GreedyStuck { .. }) => Verdict::RequiresDp,
                    Err(e) => return Err(format!("attempt {attempts}: {e}")),
                };
                ensure(
                    report.verdict == expected,
                    format!("attempt {attempts}: verdict {:?} vs {expected:?}", report.verdict),
                )?;
                analyzed += 1;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_4_contraction_check() {
    criterion(
        "4. Bellman operator contracts (100 random pairs, 101-point grid)",
        Duration::from_secs(60),
        || {
            let model = HouseholdModel::new(0.95, 1.0, 0.3, 1.0, Utility::Log)
                .map_err(|e| e.to_string())?;
            let k_star = model.steady_state_capital();
            let grid = CapitalGrid::geometric(0.05 * k_star, 2.5 * k_star, 101)
                .map_err(|e| e.to_string())?;
            let mut rng = StdRng::seed_from_u64(11);
            for case in 0..100 {
                let v1: Vec<f64> =
                    (0..grid.len()).map(|_| rng.random_range(-50.0..50.0)).collect();
                let v2: Vec<f64> =
                    (0..grid.len()).map(|_| rng.random_range(-50.0..50.0)).collect();
                let (t1, _) = bellman_operator(&model, &grid, &v1).map_err(|e| e.to_string())?;
                let (t2, _) = bellman_operator(&model, &grid, &v2).map_err(|e| e.to_string())?;
                let before: f64 = v1
                    .iter()
                    .zip(&v2)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                let after: f64 = t1
                    .iter()
                    .zip(&t2)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                ensure(
                    after <= 0.95 * before + 1e-12,
                    format!("case {case}: {after} > 0.95 × {before}"),
                )?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_5_closed_form_match() {
    criterion(
        "5. VFI matches the closed-form policy (≤ 2% on the middle 80%)",
        Duration::from_secs(30),
        || {
            let model = HouseholdModel::new(0.95, 1.0, 0.3, 1.0, Utility::Log)
                .map_err(|e| e.to_string())?;
            let grid = CapitalGrid::default_for(&model);
            ensure(grid.len() == 501, format!("grid size {}", grid.len()))?;
            let solution = value_function_iteration(&model, &grid, 1e-8, 10_000)
                .map_err(|e| e.to_string())?;
            ensure(
                solution.residual < 1e-8,
                format!("residual {}", solution.residual),
            )?;

            let mut worst = 0.0f64;
            for i in 50..=450 {
                let k = grid.points()[i];
                let exact = 0.285 * k.powf(0.3);
                let got = solution.policy_capital(i);
                worst = worst.max((got - exact).abs() / exact);
            }
            ensure(
                worst <= 0.02,
                format!("max relative policy error {worst:.4} above 2%"),
            )?;

            let k_star = model.steady_state_capital();
            let run = simulate_policy(&model, SimulationPolicy::Solved(&solution), k_star, 50)
                .map_err(|e| e.to_string())?;
            let star_index = grid.nearest_index(k_star) as isize;
            for (t, &k) in run.capital.iter().enumerate() {
                let drift = (grid.nearest_index(k) as isize - star_index).abs();
                ensure(
                    drift <= 1,
                    format!("period {t}: capital {k} drifted {drift} cells from K*"),
                )?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_6_myopia_penalty() {
    criterion(
        "6. DP strictly beats myopic greed over 100 periods",
        Duration::from_secs(30),
        || {
            let model = HouseholdModel::new(0.95, 1.0, 0.3, 1.0, Utility::Log)
                .map_err(|e| e.to_string())?;
            let grid = CapitalGrid::default_for(&model);
            let solution = value_function_iteration(&model, &grid, 1e-8, 10_000)
                .map_err(|e| e.to_string())?;
            let k_star = model.steady_state_capital();
            let dp = simulate_policy(&model, SimulationPolicy::Solved(&solution), k_star, 100)
                .map_err(|e| e.to_string())?;
            let myopic =
                simulate_policy(&model, SimulationPolicy::MyopicGreedy(&grid), k_star, 100)
                    .map_err(|e| e.to_string())?;
            ensure(
                dp.discounted_utility > myopic.discounted_utility,
                format!(
                    "DP {} not above myopic {}",
                    dp.discounted_utility, myopic.discounted_utility
                ),
            )
        },
    );
}

#[test]
fn criterion_7_producer_greedy_is_global() {
    criterion(
        "7. producer per-period greed is globally optimal (20 series × 1000 plans)",
        Duration::from_secs(60),
        || {
            let mut rng = StdRng::seed_from_u64(23);
            for series in 0..20 {
                let horizon = rng.random_range(1..=8usize);
                let prices: Vec<f64> =
                    (0..horizon).map(|_| rng.random_range(0.0..120.0)).collect();
                let fixed = rng.random_range(500.0..1500.0);
                let quad = rng.random_range(0.5..2.0);
                let model = ProducerModel::new(fixed, quad, prices.clone())
                    .map_err(|e| e.to_string())?;

                // Per-period closed form vs a dense grid search.
                for (t, &price) in prices.iter().enumerate() {
                    let (y_star, profit_star) = producer_period_optimum(price, &model);
                    let n = 2000;
                    let hi = 2.0 * price / quad;
                    let step = hi / n as f64;
                    let (grid_y, grid_profit) = (0..=n)
                        .map(|i| {
                            let y = i as f64 * step;
                            (y, model.period_profit(price, y))
                        })
                        .reduce(|a, b| if b.1 > a.1 { b } else { a })
                        .unwrap();
                    ensure(
                        (grid_y - y_star).abs() <= step.max(1e-12),
                        format!("series {series} period {t}: grid {grid_y} vs {y_star}"),
                    )?;
                    ensure(
                        profit_star >= grid_profit - 1e-9,
                        format!("series {series} period {t}: formula below grid search"),
                    )?;
                }

                // Whole-horizon: greedy beats 1000 random alternative plans.
                let plan = producer_plan(&model);
                for alt in 0..1000 {
                    let alt_total: f64 = if rng.random_bool(0.05) {
                        0.0 // the shutdown plan
                    } else {
                        prices
                            .iter()
                            .map(|&p| {
                                let y = rng.random_range(0.0..=(p / quad).max(1.0));
                                model.period_profit(p, y)
                            })
                            .sum()
                    };
                    ensure(
                        plan.total_profit >= alt_total - 1e-9,
                        format!(
                            "series {series} alternative {alt}: greedy {} below {alt_total}",
                            plan.total_profit
                        ),
                    )?;
                }
            }
            Ok(())
        },
    );
}
