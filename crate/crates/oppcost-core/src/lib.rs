//! Opportunity-cost analysis of optimization problems.
//!
//! At every decision point of a sequential optimization problem, choosing one
//! alternative means forgoing the others; the opportunity cost of a choice is
//! the value of the best complete solution that begins with some other choice.
//! Comparing each locally best (greedy) choice against its opportunity cost
//! separates instances a greedy strategy solves exactly from instances that
//! need full look-ahead — dynamic programming.
//!
//! The crate covers both discrete and continuous settings:
//!
//! - [`graph`]: weighted graphs, simple-path enumeration, path utilities;
//! - [`path_analysis`]: per-decision opportunity costs on source-target path
//!   problems and a greedy-versus-optimal verdict for each instance;
//! - [`spanning_tree`]: Kruskal's algorithm for maximum-weight spanning trees
//!   with a step-by-step opportunity-cost trace, plus a brute-force oracle;
//! - [`econ`]: a static producer choosing output against price, and an
//!   infinite-horizon household savings problem solved by value-function
//!   iteration on the Bellman equation, with a closed form for the
//!   log-utility, full-depreciation case.

pub mod econ;
pub mod graph;
pub mod path_analysis;
pub mod spanning_tree;
pub mod union_find;

pub use econ::{
    bellman_operator, closed_form_log_full_depreciation, producer_period_optimum, producer_plan,
    simulate_policy, value_function_iteration, CapitalGrid, EconError, HouseholdModel,
    ProducerModel, ProducerPlan, SimulationPolicy, SimulationResult, Utility, ValueSolution,
    DEFAULT_GRID_SIZE, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
};
pub use graph::{
    enumerate_simple_paths, path_utility, Edge, Graph, GraphError, PathRecord,
    DEFAULT_VERTEX_CAP,
};
pub use path_analysis::{
    analyze_path_problem, decision_analyses_at, first_decision_analyses, greedy_path,
    optimal_path, ClassificationReport, DecisionAnalysis, EdgeChoice, ForgoneAlternative,
    PathError, Verdict,
};
pub use spanning_tree::{
    brute_force_max_spanning_tree, descending_edge_order, first_choice_opportunity_costs,
    kruskal_max_spanning_tree, verify_greedy_min_oppcost, EdgeOpportunity, KruskalStep,
    KruskalTrace, MinOppcostReport, MstError, SpanningTree, StepCheck, BRUTE_FORCE_EDGE_CAP,
    GREEDY_RATIONALE,
};
pub use union_find::UnionFind;
