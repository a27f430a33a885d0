//! Opportunity costs at the decision points of source-target path problems,
//! and an instance-level verdict: does greedy choice suffice here, or does
//! optimality require dynamic programming?
//!
//! At a vertex, the traveler chooses the next edge. The immediate utility of
//! a choice is that edge's weight; its true value is the best total utility
//! among complete paths that start with it. The opportunity cost of a choice
//! is the best total utility attainable through any *other* available choice
//! — the value of the best forgone alternative. A greedy (locally best)
//! choice whose own best completion is at least its opportunity cost loses
//! nothing to look-ahead; when its opportunity cost is higher, only
//! whole-path comparison — dynamic programming — finds the optimum.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    enumerate_simple_paths, path_utility, Graph, GraphError, PathRecord, DEFAULT_VERTEX_CAP,
};

/// A directed edge choice made at a decision point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeChoice {
    pub from: String,
    pub to: String,
}

impl std::fmt::Display for EdgeChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.from, self.to)
    }
}

/// An alternative not taken at a decision point.
///
/// `best_completion_utility` is the best total source-to-target utility
/// among complete paths that begin with the prefix so far plus this edge;
/// `None` when no such path exists (a dead-end alternative).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForgoneAlternative {
    pub choice: EdgeChoice,
    pub immediate_utility: f64,
    pub best_completion_utility: Option<f64>,
}

/// Full accounting for one choice at a decision point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionAnalysis {
    /// The edge under consideration.
    pub choice: EdgeChoice,
    /// Weight of the chosen edge — what greedy sees.
    pub immediate_utility: f64,
    /// Best total source-to-target utility among complete paths beginning
    /// with the walk so far plus this choice, or `None` if the choice leads
    /// to a dead end.
    pub best_completion_utility: Option<f64>,
    /// Value of the best forgone alternative: the highest
    /// `best_completion_utility` among the *other* choices at this point.
    /// `None` when there is no completable alternative.
    pub opportunity_cost: Option<f64>,
    /// Whether this is the choice greedy makes at this decision point
    /// (highest immediate utility, ties broken toward the smaller label).
    pub is_greedy_choice: bool,
    /// The competing choices this one forgoes.
    pub forgone_alternatives: Vec<ForgoneAlternative>,
}

/// Instance-level verdict from comparing greedy against the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Greedy attains the optimal utility on this instance.
    #[serde(rename = "greedy-amenable-on-instance")]
    GreedyAmenable,
    /// Greedy falls short (or gets stuck); optimality needs look-ahead.
    #[serde(rename = "requires-dp-on-instance")]
    RequiresDp,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::GreedyAmenable => "greedy-amenable-on-instance",
            Verdict::RequiresDp => "requires-dp-on-instance",
        };
        f.write_str(s)
    }
}

/// Complete diagnosis of one source-target instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    /// The path greedy builds, or `None` if it walks into a dead end.
    pub greedy_path: Option<PathRecord>,
    pub greedy_solution_utility: Option<f64>,
    pub optimal_path: PathRecord,
    pub optimal_solution_utility: f64,
    /// Optimal minus greedy utility; `None` when greedy gets stuck.
    pub utility_gap: Option<f64>,
    /// Opportunity-cost accounting for every choice at the first decision.
    pub first_decisions: Vec<DecisionAnalysis>,
    /// One-sentence explanation of the verdict.
    pub narrative: String,
}

/// Errors from path-problem analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no path from {from:?} to {to:?}")]
    NoPath { from: String, to: String },
    #[error("greedy walk stuck at {stuck_at:?} after {}", partial.join("-"))]
    GreedyStuck {
        partial: Vec<String>,
        stuck_at: String,
    },
}

/// Walks from `source` toward `target`, always taking the highest-weight edge
/// to an unvisited vertex; ties go to the smaller neighbor label.
///
/// Greedy has no look-ahead, so it can wander into a vertex with no unvisited
/// neighbors; that returns [`PathError::GreedyStuck`] with the walk so far.
pub fn greedy_path(g: &Graph, source: &str, target: &str) -> Result<PathRecord, PathError> {
    if !g.contains_vertex(source) {
        return Err(GraphError::UnknownVertex(source.to_string()).into());
    }
    if !g.contains_vertex(target) {
        return Err(GraphError::UnknownVertex(target.to_string()).into());
    }
    let mut vertices = vec![source.to_string()];
    let mut utility = 0.0;
    while vertices.last().unwrap() != target {
        let here = vertices.last().unwrap().clone();
        // Neighbor lists are sorted by label, so a strict `>` scan lands on
        // the smallest label among maximum-weight choices.
        let mut best: Option<(&str, f64)> = None;
        for (n, w) in g.neighbors(&here) {
            if vertices.iter().any(|v| v == n) {
                continue;
            }
            if best.is_none_or(|(_, bw)| *w > bw) {
                best = Some((n, *w));
            }
        }
        match best {
            Some((next, w)) => {
                vertices.push(next.to_string());
                utility += w;
            }
            None => {
                return Err(PathError::GreedyStuck {
                    stuck_at: here,
                    partial: vertices,
                })
            }
        }
    }
    Ok(PathRecord { vertices, utility })
}

/// The maximum-utility simple path from `source` to `target`, found by
/// exhaustive enumeration; ties go to the lexicographically smallest path.
pub fn optimal_path(g: &Graph, source: &str, target: &str) -> Result<PathRecord, PathError> {
    let paths = enumerate_simple_paths(g, source, target, DEFAULT_VERTEX_CAP)?;
    // Paths arrive in lexicographic order; keeping the first strict maximum
    // therefore implements the tie-break.
    paths
        .into_iter()
        .reduce(|best, p| if p.utility > best.utility { p } else { best })
        .ok_or_else(|| PathError::NoPath {
            from: source.to_string(),
            to: target.to_string(),
        })
}

/// Opportunity-cost accounting for every choice available after walking
/// `prefix` (which must start at the problem's source vertex), en route to
/// `target`.
///
/// The menu at a decision point is the set of edges from the prefix's last
/// vertex to any vertex not already on the prefix — exactly what the greedy
/// walk sees, and the greedy flag is judged against that whole menu. Only
/// choices that admit at least one completion to `target` get an analysis
/// of their own; dead-end choices appear solely as forgone alternatives.
/// Analyses are returned in neighbor-label order.
pub fn decision_analyses_at(
    g: &Graph,
    prefix: &[String],
    target: &str,
) -> Result<Vec<DecisionAnalysis>, PathError> {
    let here = prefix.last().ok_or(GraphError::EmptyPath)?;
    // Validates that the prefix is a simple path of known vertices.
    path_utility(g, prefix)?;
    if !g.contains_vertex(target) {
        return Err(GraphError::UnknownVertex(target.to_string()).into());
    }
    if here == target {
        // Already arrived: nothing left to decide.
        return Ok(Vec::new());
    }

    // Best completion utility for each candidate next vertex, computed by
    // enumerating the remainder of the problem once per candidate.
    let mut menu: Vec<(String, f64, Option<f64>)> = Vec::new();
    for (next, weight) in g.neighbors(here) {
        if prefix.iter().any(|v| v == next) {
            continue;
        }
        let best = if next == target {
            let mut full = prefix.to_vec();
            full.push(next.clone());
            Some(path_utility(g, &full)?)
        } else {
            best_total_utility(g, prefix, next, target)?
        };
        menu.push((next.clone(), *weight, best));
    }

    // Greedy picks the highest immediate utility, smallest label on ties —
    // the same strict `>` scan as `greedy_path`.
    let greedy_idx = menu
        .iter()
        .enumerate()
        .reduce(|best, cand| if cand.1 .1 > best.1 .1 { cand } else { best })
        .map(|(i, _)| i);

    let analyses: Vec<DecisionAnalysis> = menu
        .iter()
        .enumerate()
        .filter(|(_, (_, _, best))| best.is_some())
        .map(|(i, (next, weight, best))| {
            let forgone: Vec<ForgoneAlternative> = menu
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, (n, w, b))| ForgoneAlternative {
                    choice: EdgeChoice {
                        from: here.clone(),
                        to: n.clone(),
                    },
                    immediate_utility: *w,
                    best_completion_utility: *b,
                })
                .collect();
            let opportunity_cost = forgone
                .iter()
                .filter_map(|f| f.best_completion_utility)
                .reduce(f64::max);
            DecisionAnalysis {
                choice: EdgeChoice {
                    from: here.clone(),
                    to: next.clone(),
                },
                immediate_utility: *weight,
                best_completion_utility: *best,
                opportunity_cost,
                is_greedy_choice: Some(i) == greedy_idx,
                forgone_alternatives: forgone,
            }
        })
        .collect();
    if analyses.is_empty() {
        return Err(PathError::NoPath {
            from: here.clone(),
            to: target.to_string(),
        });
    }
    Ok(analyses)
}

/// Best total utility of a source-to-target path `prefix -> next -> ... ->
/// target`, or `None` if no completion avoids the prefix.
///
/// Totals are accumulated left to right over the full vertex sequence, the
/// same order the source-to-target enumeration uses, so equal paths give
/// bit-identical utilities.
fn best_total_utility(
    g: &Graph,
    prefix: &[String],
    next: &str,
    target: &str,
) -> Result<Option<f64>, PathError> {
    // Enumerate all next->target simple paths, then drop those touching the
    // already-visited prefix. The graphs here are small, so filtering the
    // full enumeration is simpler than re-deriving a masked graph.
    let paths = enumerate_simple_paths(g, next, target, DEFAULT_VERTEX_CAP)?;
    let mut best: Option<f64> = None;
    for p in &paths {
        if p.vertices.iter().any(|v| prefix.contains(v)) {
            continue;
        }
        let mut full = prefix.to_vec();
        full.extend(p.vertices.iter().cloned());
        let total = path_utility(g, &full)?;
        best = Some(best.map_or(total, |b: f64| b.max(total)));
    }
    Ok(best)
}

/// [`decision_analyses_at`] for the very first decision, at the source.
pub fn first_decision_analyses(
    g: &Graph,
    source: &str,
    target: &str,
) -> Result<Vec<DecisionAnalysis>, PathError> {
    decision_analyses_at(g, &[source.to_string()], target)
}

/// Runs greedy and exhaustive search on one instance and reports whether the
/// greedy outcome matches the optimum.
pub fn analyze_path_problem(
    g: &Graph,
    source: &str,
    target: &str,
) -> Result<ClassificationReport, PathError> {
    let optimal = optimal_path(g, source, target)?;
    let first_decisions = first_decision_analyses(g, source, target)?;
    let greedy = match greedy_path(g, source, target) {
        Ok(p) => Some(p),
        Err(PathError::GreedyStuck { .. }) => None,
        Err(e) => return Err(e),
    };

    let (verdict, narrative) = match &greedy {
        None => (
            Verdict::RequiresDp,
            format!(
                "greedy walks into a dead end before reaching {target}; \
                 only whole-path comparison finds the optimum {optimal} ({})",
                optimal.utility
            ),
        ),
        Some(gp) if gp.utility == optimal.utility => (
            Verdict::GreedyAmenable,
            format!(
                "greedy's path {gp} attains the optimal utility {}; \
                 no choice here has an opportunity cost exceeding its value",
                optimal.utility
            ),
        ),
        Some(gp) => (
            Verdict::RequiresDp,
            format!(
                "greedy's path {gp} ({}) forgoes the better path {optimal} ({}); \
                 the locally best first step carries an opportunity cost above its value",
                gp.utility, optimal.utility
            ),
        ),
    };

    let greedy_solution_utility = greedy.as_ref().map(|p| p.utility);
    let optimal_solution_utility = optimal.utility;
    let utility_gap = greedy_solution_utility.map(|u| optimal_solution_utility - u);
    Ok(ClassificationReport {
        verdict,
        greedy_path: greedy,
        greedy_solution_utility,
        optimal_path: optimal,
        optimal_solution_utility,
        utility_gap,
        first_decisions,
        narrative,
    })
}
