//! An infinite-horizon household choosing consumption versus savings,
//! solved by value-function iteration on a discretized Bellman equation.
//!
//! Each period the household holds capital `K`, produces `f(K) = A·K^α`,
//! and splits its resources between consumption `C` and next-period capital
//! by the law of motion `K′ = f(K) − C + (1−δ)·K`. Consuming more today
//! means holding less capital tomorrow — the dynamic opportunity cost that
//! makes myopic choice foolish here. The optimal value function satisfies
//!
//! ```text
//! V(K) = max { u(C) + β·V(K′) }
//! ```
//!
//! and is found as the fixed point of the Bellman operator, a β-contraction
//! in the sup norm. Capital lives on a finite grid; the operator maximizes
//! over grid choices of `K′` with strictly positive consumption.
//!
//! For log utility with full depreciation (δ = 1) the model has the classic
//! closed-form solution `K′ = αβA·K^α`, used as an exact oracle.

use serde::Serialize;

use super::EconError;

/// Default number of capital grid points.
pub const DEFAULT_GRID_SIZE: usize = 501;
/// Default sup-norm convergence tolerance for value-function iteration.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Default iteration cap for value-function iteration.
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

/// Period utility function over consumption.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Utility {
    /// `u(C) = ln C`.
    Log,
    /// `u(C) = C^(1−σ)/(1−σ)` with `σ > 0`, `σ ≠ 1` (σ → 1 recovers log).
    Crra { sigma: f64 },
}

/// Household primitives: discounting, depreciation, Cobb-Douglas
/// technology `f(K) = A·K^α`, and the period utility function.
///
/// These functional forms satisfy the usual curvature conditions —
/// `u′ > 0`, `u″ < 0`, `f′ > 0`, `f″ < 0`, and `u′(C) → ∞` as `C → 0` —
/// so optimal consumption is interior and the Bellman operator is a
/// β-contraction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HouseholdModel {
    beta: f64,
    delta: f64,
    alpha: f64,
    tfp: f64,
    utility: Utility,
}

fn check_param(name: &str, constraint: &str, value: f64, ok: bool) -> Result<(), EconError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(EconError::InvalidParameter {
            name: name.to_string(),
            constraint: constraint.to_string(),
            value,
        })
    }
}

impl HouseholdModel {
    /// Validates `β ∈ (0,1)` strictly, `δ ∈ (0,1]`, `α ∈ (0,1)`, `A > 0`,
    /// and for CRRA utility `σ > 0`, `σ ≠ 1`.
    pub fn new(
        beta: f64,
        delta: f64,
        alpha: f64,
        tfp: f64,
        utility: Utility,
    ) -> Result<Self, EconError> {
        check_param("beta", "0 < beta < 1", beta, 0.0 < beta && beta < 1.0)?;
        check_param("delta", "0 < delta <= 1", delta, 0.0 < delta && delta <= 1.0)?;
        check_param("alpha", "0 < alpha < 1", alpha, 0.0 < alpha && alpha < 1.0)?;
        check_param("tfp", "A > 0", tfp, tfp > 0.0)?;
        if let Utility::Crra { sigma } = utility {
            check_param("sigma", "sigma > 0, sigma != 1", sigma, sigma > 0.0 && sigma != 1.0)?;
        }
        Ok(HouseholdModel {
            beta,
            delta,
            alpha,
            tfp,
            utility,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Total factor productivity `A`.
    pub fn tfp(&self) -> f64 {
        self.tfp
    }

    pub fn utility(&self) -> Utility {
        self.utility
    }

    /// Production `f(K) = A·K^α`.
    pub fn production(&self, capital: f64) -> f64 {
        self.tfp * capital.powf(self.alpha)
    }

    /// Resources available for splitting: `f(K) + (1−δ)·K`.
    pub fn resources(&self, capital: f64) -> f64 {
        self.production(capital) + (1.0 - self.delta) * capital
    }

    /// Period utility `u(C)`; non-positive consumption yields `-∞`,
    /// marking the choice infeasible.
    pub fn utility_of(&self, consumption: f64) -> f64 {
        if consumption <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match self.utility {
            Utility::Log => consumption.ln(),
            Utility::Crra { sigma } => consumption.powf(1.0 - sigma) / (1.0 - sigma),
        }
    }

    /// The steady-state capital stock `K*` solving `β·(f′(K) + 1 − δ) = 1`:
    /// `K* = (αA / (1/β − 1 + δ))^(1/(1−α))`.
    ///
    /// With δ = 1 this reduces to `(αβA)^(1/(1−α))`, the fixed point of the
    /// closed-form savings policy.
    pub fn steady_state_capital(&self) -> f64 {
        (self.alpha * self.tfp / (1.0 / self.beta - 1.0 + self.delta))
            .powf(1.0 / (1.0 - self.alpha))
    }
}

/// A strictly increasing grid of positive capital levels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapitalGrid {
    points: Vec<f64>,
}

impl CapitalGrid {
    /// Validates positivity and strict monotonicity.
    pub fn new(points: Vec<f64>) -> Result<Self, EconError> {
        if points.is_empty() {
            return Err(EconError::InvalidGrid("no points".to_string()));
        }
        for (i, &p) in points.iter().enumerate() {
            if !p.is_finite() || p <= 0.0 {
                return Err(EconError::InvalidGrid(format!(
                    "point {i} is {p}; all points must be positive and finite"
                )));
            }
            if i > 0 && p <= points[i - 1] {
                return Err(EconError::InvalidGrid(format!(
                    "point {i} ({p}) does not exceed point {} ({})",
                    i - 1,
                    points[i - 1]
                )));
            }
        }
        Ok(CapitalGrid { points })
    }

    /// `n ≥ 2` geometrically spaced points from `lo` to `hi` inclusive.
    ///
    /// Geometric spacing concentrates points at low capital, where the value
    /// function curves most.
    pub fn geometric(lo: f64, hi: f64, n: usize) -> Result<Self, EconError> {
        if n < 2 {
            return Err(EconError::InvalidGrid(format!(
                "need at least 2 points, got {n}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi <= lo {
            return Err(EconError::InvalidGrid(format!(
                "need 0 < lo < hi, got lo = {lo}, hi = {hi}"
            )));
        }
        let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
        let mut points: Vec<f64> = (0..n).map(|i| lo * ratio.powi(i as i32)).collect();
        points[n - 1] = hi; // pin the endpoint against accumulated rounding
        CapitalGrid::new(points)
    }

    /// The default grid for `model`: [`DEFAULT_GRID_SIZE`] geometric points
    /// on `[0.05·K*, 2.5·K*]` around the steady state.
    pub fn default_for(model: &HouseholdModel) -> CapitalGrid {
        let k_star = model.steady_state_capital();
        CapitalGrid::geometric(0.05 * k_star, 2.5 * k_star, DEFAULT_GRID_SIZE)
            .expect("steady state of a valid model is positive and finite")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        *self.points.last().unwrap()
    }

    /// Index of the grid point nearest to `capital` (lower index on ties).
    pub fn nearest_index(&self, capital: f64) -> usize {
        let after = self.points.partition_point(|&p| p < capital);
        if after == 0 {
            return 0;
        }
        if after == self.points.len() {
            return after - 1;
        }
        let below = after - 1;
        if capital - self.points[below] <= self.points[after] - capital {
            below
        } else {
            after
        }
    }
}

/// Per-state utilities of every feasible savings choice, precomputed.
///
/// Grid points increase, so for each state `K_i` the feasible choices
/// `K′_j` (those leaving consumption `C = resources(K_i) − K′_j > 0`) form
/// a prefix of the grid; `rows[i]` holds `u(C_ij)` for exactly that prefix.
/// Applying the Bellman operator is then pure adds and compares.
struct ChoiceTable {
    rows: Vec<Vec<f64>>,
}

impl ChoiceTable {
    fn build(model: &HouseholdModel, grid: &CapitalGrid) -> Result<Self, EconError> {
        let rows = grid
            .points()
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let resources = model.resources(k);
                let feasible = grid.points().partition_point(|&kp| kp < resources);
                if feasible == 0 {
                    return Err(EconError::InfeasibleGridPoint { index: i, capital: k });
                }
                Ok(grid.points()[..feasible]
                    .iter()
                    .map(|&kp| model.utility_of(resources - kp))
                    .collect())
            })
            .collect::<Result<_, _>>()?;
        Ok(ChoiceTable { rows })
    }

    /// One Bellman update: `V′(K_i) = max_j [u(C_ij) + β·V(K′_j)]` with the
    /// argmax recorded (smallest index on exact ties).
    fn apply(&self, beta: f64, values: &[f64]) -> (Vec<f64>, Vec<usize>) {
        let mut next = Vec::with_capacity(self.rows.len());
        let mut policy = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut best = f64::NEG_INFINITY;
            let mut best_j = 0;
            for (j, &u) in row.iter().enumerate() {
                let candidate = u + beta * values[j];
                if candidate > best {
                    best = candidate;
                    best_j = j;
                }
            }
            next.push(best);
            policy.push(best_j);
        }
        (next, policy)
    }
}

fn check_values(grid: &CapitalGrid, values: &[f64]) -> Result<(), EconError> {
    if values.len() != grid.len() {
        return Err(EconError::ValueLengthMismatch {
            expected: grid.len(),
            got: values.len(),
        });
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(EconError::NonFiniteValue(i));
    }
    Ok(())
}

/// One application of the Bellman operator to the value array `values`.
///
/// Returns the updated values and the argmax policy (grid index of the
/// chosen `K′` per state). Fails if the grid leaves some state with no
/// feasible choice, or `values` has the wrong length or non-finite entries.
pub fn bellman_operator(
    model: &HouseholdModel,
    grid: &CapitalGrid,
    values: &[f64],
) -> Result<(Vec<f64>, Vec<usize>), EconError> {
    check_values(grid, values)?;
    let table = ChoiceTable::build(model, grid)?;
    Ok(table.apply(model.beta(), values))
}

/// A converged (or analytically constructed) solution of the household
/// problem on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueSolution {
    pub grid: CapitalGrid,
    /// `V(K_i)` per grid point.
    pub values: Vec<f64>,
    /// Grid index of the chosen `K′` per grid point.
    pub policy: Vec<usize>,
    /// Bellman applications performed (0 for a closed-form solution).
    pub iterations: usize,
    /// Final sup-norm change between successive value arrays.
    pub residual: f64,
    /// Distance bound to the true fixed point: `residual·β/(1−β)`.
    pub error_bound: f64,
}

impl ValueSolution {
    /// The chosen next-period capital at grid point `i`.
    pub fn policy_capital(&self, i: usize) -> f64 {
        self.grid.points()[self.policy[i]]
    }

    /// Consumption implied by the policy at grid point `i`.
    pub fn consumption(&self, model: &HouseholdModel, i: usize) -> f64 {
        model.resources(self.grid.points()[i]) - self.policy_capital(i)
    }

    /// CSV export with header `K,V,K_prime,C`, one row per grid point,
    /// full-precision values.
    pub fn to_csv(&self, model: &HouseholdModel) -> String {
        let mut out = String::from("K,V,K_prime,C\n");
        for i in 0..self.grid.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.grid.points()[i],
                self.values[i],
                self.policy_capital(i),
                self.consumption(model, i)
            ));
        }
        out
    }
}

/// Iterates the Bellman operator from `V₀ ≡ 0` until the sup-norm change
/// drops below `tolerance`.
///
/// The operator contracts by factor β, so convergence is geometric and the
/// reported `error_bound = residual·β/(1−β)` bounds the sup-norm distance
/// to the exact fixed point on the grid. Fails with
/// [`EconError::NoConvergence`] if `max_iterations` is exhausted.
pub fn value_function_iteration(
    model: &HouseholdModel,
    grid: &CapitalGrid,
    tolerance: f64,
    max_iterations: usize,
) -> Result<ValueSolution, EconError> {
    check_param("tolerance", "tol > 0", tolerance, tolerance > 0.0)?;
    if max_iterations == 0 {
        return Err(EconError::InvalidParameter {
            name: "max_iterations".to_string(),
            constraint: "max_iter >= 1".to_string(),
            value: 0.0,
        });
    }
    let table = ChoiceTable::build(model, grid)?;
    let mut values = vec![0.0; grid.len()];
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iterations {
        let (next, policy) = table.apply(model.beta(), &values);
        residual = values
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        values = next;
        if residual < tolerance {
            return Ok(ValueSolution {
                grid: grid.clone(),
                values,
                policy,
                iterations: iteration,
                residual,
                error_bound: residual * model.beta() / (1.0 - model.beta()),
            });
        }
    }
    Err(EconError::NoConvergence {
        iterations: max_iterations,
        residual,
        tolerance,
    })
}

/// The exact solution for log utility with full depreciation (δ = 1):
/// savings policy `K′ = αβA·K^α` and value `V(K) = a + b·ln K` with
/// `b = α/(1−αβ)` and `a = [ln((1−αβ)A) + (αβ/(1−αβ))·ln(αβA)]/(1−β)`.
///
/// Any other configuration is rejected. The policy is snapped to the
/// nearest grid point; `iterations` and `residual` are zero.
pub fn closed_form_log_full_depreciation(
    model: &HouseholdModel,
    grid: &CapitalGrid,
) -> Result<ValueSolution, EconError> {
    if model.utility() != Utility::Log {
        return Err(EconError::UnsupportedConfiguration(
            "closed form requires log utility".to_string(),
        ));
    }
    if model.delta() != 1.0 {
        return Err(EconError::UnsupportedConfiguration(format!(
            "closed form requires full depreciation (delta = 1), got delta = {}",
            model.delta()
        )));
    }
    let (alpha, beta, tfp) = (model.alpha(), model.beta(), model.tfp());
    let ab = alpha * beta;
    let b = alpha / (1.0 - ab);
    let a = (((1.0 - ab) * tfp).ln() + ab / (1.0 - ab) * (ab * tfp).ln()) / (1.0 - beta);

    let values = grid.points().iter().map(|&k| a + b * k.ln()).collect();
    let policy = grid
        .points()
        .iter()
        .map(|&k| {
            let mut j = grid.nearest_index(ab * tfp * k.powf(alpha));
            // Snapping can land on an infeasible point only on very coarse
            // grids; step down until consumption is positive.
            while j > 0 && model.resources(k) - grid.points()[j] <= 0.0 {
                j -= 1;
            }
            j
        })
        .collect();
    Ok(ValueSolution {
        grid: grid.clone(),
        values,
        policy,
        iterations: 0,
        residual: 0.0,
        error_bound: 0.0,
    })
}

/// A rule for choosing next-period capital during simulation.
#[derive(Debug, Clone, Copy)]
pub enum SimulationPolicy<'a> {
    /// Follow a solved policy's argmax indices.
    Solved(&'a ValueSolution),
    /// Myopic greed: each period take the smallest feasible grid `K′`,
    /// consuming as much as the grid floor allows, with no regard for the
    /// future.
    MyopicGreedy(&'a CapitalGrid),
}

impl<'a> SimulationPolicy<'a> {
    fn grid(&self) -> &'a CapitalGrid {
        match self {
            SimulationPolicy::Solved(solution) => &solution.grid,
            SimulationPolicy::MyopicGreedy(grid) => grid,
        }
    }
}

/// A simulated capital/consumption trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResult {
    /// Capital path `K_1 .. K_{T+1}`, starting at the snapped initial stock.
    pub capital: Vec<f64>,
    /// Consumption path `C_1 .. C_T`.
    pub consumption: Vec<f64>,
    /// `Σ_{t=1..T} β^(t−1)·u(C_t)`.
    pub discounted_utility: f64,
}

/// Simulates `periods` periods from `initial_capital` (snapped to the
/// grid) under the given policy.
///
/// Fails if the initial stock lies outside the grid range, or if a period
/// offers no positive-consumption choice (myopic policy on a grid whose
/// floor exceeds available resources).
pub fn simulate_policy(
    model: &HouseholdModel,
    policy: SimulationPolicy,
    initial_capital: f64,
    periods: usize,
) -> Result<SimulationResult, EconError> {
    if periods == 0 {
        return Err(EconError::InvalidParameter {
            name: "periods".to_string(),
            constraint: "T >= 1".to_string(),
            value: 0.0,
        });
    }
    let grid = policy.grid();
    if !initial_capital.is_finite()
        || initial_capital < grid.min()
        || initial_capital > grid.max()
    {
        return Err(EconError::CapitalOutOfRange {
            capital: initial_capital,
            min: grid.min(),
            max: grid.max(),
        });
    }

    let mut index = grid.nearest_index(initial_capital);
    let mut capital = vec![grid.points()[index]];
    let mut consumption = Vec::with_capacity(periods);
    let mut discounted_utility = 0.0;
    let mut discount = 1.0;
    for period in 1..=periods {
        let stock = grid.points()[index];
        let resources = model.resources(stock);
        let next_index = match policy {
            SimulationPolicy::Solved(solution) => solution.policy[index],
            SimulationPolicy::MyopicGreedy(_) => 0,
        };
        let chosen = grid.points()[next_index];
        let consumed = resources - chosen;
        if consumed <= 0.0 {
            return Err(EconError::InfeasibleSimulationStep {
                period,
                capital: stock,
            });
        }
        discounted_utility += discount * model.utility_of(consumed);
        discount *= model.beta();
        consumption.push(consumed);
        capital.push(chosen);
        index = next_index;
    }
    Ok(SimulationResult {
        capital,
        consumption,
        discounted_utility,
    })
}
