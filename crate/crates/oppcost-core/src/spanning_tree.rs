//! Maximum-weight spanning trees by Kruskal's algorithm, with an
//! opportunity-cost trace of every accept/reject decision, and a proof that
//! on this problem the greedy choice is also the opportunity-cost-minimizing
//! choice.
//!
//! Spanning-tree construction is the clean contrast to the path problem: the
//! exchange property of spanning trees means accepting the best feasible
//! edge never forecloses a better tree. Greedy is exact here, and the trace
//! makes the reason visible — at every step the chosen edge's opportunity
//! cost is no larger than any alternative's.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::union_find::UnionFind;

/// Edge-count ceiling for the brute-force spanning-tree search, which
/// examines every (n-1)-edge subset.
pub const BRUTE_FORCE_EDGE_CAP: usize = 20;

/// Why the greedy edge choice is safe in spanning-tree construction.
pub const GREEDY_RATIONALE: &str = "the choice of an edge does not restrict future choices";

/// Errors from spanning-tree construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MstError {
    #[error("cannot build a spanning tree of an empty graph")]
    EmptyGraph,
    #[error("graph is disconnected: no tree spans both {a:?} and {b:?}")]
    Disconnected { a: String, b: String },
    #[error("graph has {edges} edges, above the brute-force cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
}

/// A spanning tree: its edges in canonical order and their total weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanningTree {
    pub edges: Vec<Edge>,
    pub total_weight: f64,
}

/// One accept/reject decision in the Kruskal scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KruskalStep {
    /// The edge examined at this step.
    pub edge: Edge,
    /// Whether the edge joined two components (accepted) or would have
    /// closed a cycle (rejected).
    pub accepted: bool,
    /// Later-ranked edges that were also feasible — addable without a cycle —
    /// just before this decision. These are the alternatives forgone by
    /// taking `edge` now.
    pub feasible_alternatives: Vec<Edge>,
    /// Weight of the best feasible alternative, or `None` when the scan has
    /// no remaining feasible edge to forgo.
    pub opportunity_cost: Option<f64>,
}

/// The full decision-by-decision record of a Kruskal run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KruskalTrace {
    /// All edges in the order Kruskal considers them.
    pub ordered_edges: Vec<Edge>,
    /// One entry per examined edge, in scan order. The scan stops once the
    /// tree is complete, so rejected tail edges may never appear.
    pub steps: Vec<KruskalStep>,
}

/// Opportunity cost of taking one edge as the hypothetical *first* pick.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeOpportunity {
    pub edge: Edge,
    /// Weight of the best edge forgone by picking this one first: the
    /// maximum weight among all other edges. `None` when there is no other
    /// edge.
    pub opportunity_cost: Option<f64>,
}

/// One row of the greedy-minimizes-opportunity-cost check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepCheck {
    /// Index into the trace's `steps`.
    pub step: usize,
    pub edge: Edge,
    pub chosen_opportunity_cost: Option<f64>,
    /// The smallest opportunity cost any feasible alternative would have
    /// borne instead, had it been taken at this step.
    pub min_alternative_opportunity_cost: Option<f64>,
    pub pass: bool,
}

/// Outcome of [`verify_greedy_min_oppcost`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinOppcostReport {
    pub steps: Vec<StepCheck>,
    pub all_pass: bool,
    pub rationale: String,
}

/// Edges sorted for a maximum-weight Kruskal scan: weight descending, ties
/// by endpoint pair ascending.
pub fn descending_edge_order(g: &Graph) -> Vec<Edge> {
    let mut edges = g.edges().to_vec();
    edges.sort_by(|a, b| {
        b.weight
            .partial_cmp(&a.weight)
            .unwrap()
            .then_with(|| (&a.u, &a.v).cmp(&(&b.u, &b.v)))
    });
    edges
}

fn vertex_index(g: &Graph, label: &str) -> usize {
    g.vertices().binary_search_by(|v| v.as_str().cmp(label)).unwrap()
}

/// Builds a maximum-weight spanning tree with Kruskal's algorithm and
/// records every decision's forgone alternatives.
///
/// Scans edges in descending weight order, accepting each edge that joins
/// two components. For each examined edge the trace captures which
/// later-ranked edges were still feasible at that moment and the best weight
/// among them — the opportunity cost of committing now. The scan stops as
/// soon as the tree has `n - 1` edges.
pub fn kruskal_max_spanning_tree(g: &Graph) -> Result<(SpanningTree, KruskalTrace), MstError> {
    if g.vertex_count() == 0 {
        return Err(MstError::EmptyGraph);
    }
    if let Some((a, b)) = g.disconnected_pair() {
        return Err(MstError::Disconnected { a, b });
    }

    let ordered = descending_edge_order(g);
    let mut uf = UnionFind::new(g.vertex_count());
    let mut tree_edges: Vec<Edge> = Vec::new();
    let mut steps: Vec<KruskalStep> = Vec::new();
    let need = g.vertex_count() - 1;

    for (i, edge) in ordered.iter().enumerate() {
        if tree_edges.len() == need {
            break;
        }
        // Feasibility of later edges is judged against the forest as it
        // stands *before* this decision.
        let feasible_alternatives: Vec<Edge> = ordered[i + 1..]
            .iter()
            .filter(|e| {
                !uf.connected(vertex_index(g, &e.u), vertex_index(g, &e.v))
            })
            .cloned()
            .collect();
        let opportunity_cost = feasible_alternatives
            .iter()
            .map(|e| e.weight)
            .reduce(f64::max);
        let accepted = uf.union(vertex_index(g, &edge.u), vertex_index(g, &edge.v));
        if accepted {
            tree_edges.push(edge.clone());
        }
        steps.push(KruskalStep {
            edge: edge.clone(),
            accepted,
            feasible_alternatives,
            opportunity_cost,
        });
    }

    tree_edges.sort_by(|a, b| (&a.u, &a.v).cmp(&(&b.u, &b.v)));
    let total_weight = tree_edges.iter().map(|e| e.weight).sum();
    Ok((
        SpanningTree {
            edges: tree_edges,
            total_weight,
        },
        KruskalTrace {
            ordered_edges: ordered,
            steps,
        },
    ))
}

/// Opportunity cost of each edge considered as the *first* pick.
///
/// Before anything is chosen every edge is feasible, so picking edge `e`
/// first forgoes, at worst, the heaviest of the others. Returned in the
/// Kruskal scan order.
pub fn first_choice_opportunity_costs(g: &Graph) -> Vec<EdgeOpportunity> {
    let ordered = descending_edge_order(g);
    ordered
        .iter()
        .enumerate()
        .map(|(i, edge)| {
            // Heaviest other edge: the scan leader, unless `edge` is the
            // leader itself, in which case the runner-up.
            let best_other = if i == 0 { ordered.get(1) } else { ordered.first() };
            EdgeOpportunity {
                edge: edge.clone(),
                opportunity_cost: best_other.map(|e| e.weight),
            }
        })
        .collect()
}

/// Finds a maximum-weight spanning tree by trying every (n-1)-edge subset.
///
/// Exponential by design — this is the independent check on Kruskal, not a
/// production path. Ties go to the lexicographically smallest edge set.
pub fn brute_force_max_spanning_tree(g: &Graph) -> Result<SpanningTree, MstError> {
    if g.vertex_count() == 0 {
        return Err(MstError::EmptyGraph);
    }
    if let Some((a, b)) = g.disconnected_pair() {
        return Err(MstError::Disconnected { a, b });
    }
    if g.edge_count() > BRUTE_FORCE_EDGE_CAP {
        return Err(MstError::TooManyEdges {
            edges: g.edge_count(),
            cap: BRUTE_FORCE_EDGE_CAP,
        });
    }
    let edges = g.edges();
    let need = g.vertex_count() - 1;
    let mut best: Option<SpanningTree> = None;
    let mut picked: Vec<usize> = Vec::with_capacity(need);
    // Enumerate index combinations in lexicographic order so the first
    // strict maximum is also the lexicographically smallest tie.
    fn walk(
        g: &Graph,
        edges: &[Edge],
        need: usize,
        start: usize,
        picked: &mut Vec<usize>,
        best: &mut Option<SpanningTree>,
    ) {
        if picked.len() == need {
            let mut uf = UnionFind::new(g.vertex_count());
            for &i in picked.iter() {
                if !uf.union(
                    vertex_index(g, &edges[i].u),
                    vertex_index(g, &edges[i].v),
                ) {
                    return; // cycle: not a tree
                }
            }
            // n-1 edges and no cycle over n vertices means spanning tree.
            let total: f64 = picked.iter().map(|&i| edges[i].weight).sum();
            if best.as_ref().is_none_or(|b| total > b.total_weight) {
                *best = Some(SpanningTree {
                    edges: picked.iter().map(|&i| edges[i].clone()).collect(),
                    total_weight: total,
                });
            }
            return;
        }
        let remaining = need - picked.len();
        for i in start..=edges.len().saturating_sub(remaining) {
            picked.push(i);
            walk(g, edges, need, i + 1, picked, best);
            picked.pop();
        }
    }
    walk(g, edges, need, 0, &mut picked, &mut best);
    // Connectivity was checked, so a spanning tree always exists; edges()
    // is canonically sorted and combinations preserve that order.
    Ok(best.expect("connected graph has a spanning tree"))
}

/// Checks, step by step, that the greedy (heaviest-feasible) choice never
/// bears a higher opportunity cost than any alternative it forgoes.
///
/// At an accepted step, the chosen edge's opportunity cost is the best
/// feasible alternative's weight. Taking some alternative `e` instead would
/// have forgone the best of the *remaining* feasible edges — including the
/// heavier chosen one — so its opportunity cost is at least as large. The
/// report makes that comparison explicit for every accepted step.
pub fn verify_greedy_min_oppcost(trace: &KruskalTrace) -> MinOppcostReport {
    let mut steps = Vec::new();
    for (idx, step) in trace.steps.iter().enumerate() {
        if !step.accepted {
            continue;
        }
        // Opportunity cost of swapping in alternative `alt`: the heaviest
        // edge among the chosen one and the other alternatives.
        let min_alternative_opportunity_cost = step
            .feasible_alternatives
            .iter()
            .enumerate()
            .map(|(j, _)| {
                std::iter::once(step.edge.weight)
                    .chain(
                        step.feasible_alternatives
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, e)| e.weight),
                    )
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .reduce(f64::min);
        let pass = match (step.opportunity_cost, min_alternative_opportunity_cost) {
            (Some(chosen), Some(alt)) => chosen <= alt,
            // No feasible alternative: nothing forgone, trivially minimal.
            (None, _) => true,
            (Some(_), None) => false,
        };
        steps.push(StepCheck {
            step: idx,
            edge: step.edge.clone(),
            chosen_opportunity_cost: step.opportunity_cost,
            min_alternative_opportunity_cost,
            pass,
        });
    }
    let all_pass = steps.iter().all(|s| s.pass);
    MinOppcostReport {
        steps,
        all_pass,
        rationale: GREEDY_RATIONALE.to_string(),
    }
}
