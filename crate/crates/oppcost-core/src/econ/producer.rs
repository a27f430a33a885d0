//! A price-taking producer with quadratic costs, solved greedily period by
//! period.
//!
//! Profit in a period is `P·Y − F − c·Y²`: revenue less a fixed cost and a
//! quadratic variable cost. Nothing chosen today alters tomorrow's problem,
//! so the per-period first-order condition `Y* = P/(2c)` is both the myopic
//! and the global optimum; the only cross-period decision is whether to
//! operate the plant at all, judged on whole-horizon profit.

use serde::Serialize;

use super::EconError;

/// A producer facing a known price path with per-period cost `F + c·Y²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProducerModel {
    fixed_cost: f64,
    quad_cost: f64,
    prices: Vec<f64>,
}

impl ProducerModel {
    /// Validates `F ≥ 0`, `c > 0`, and a non-empty series of finite
    /// non-negative prices.
    pub fn new(fixed_cost: f64, quad_cost: f64, prices: Vec<f64>) -> Result<Self, EconError> {
        if !fixed_cost.is_finite() || fixed_cost < 0.0 {
            return Err(EconError::InvalidParameter {
                name: "fixed_cost".to_string(),
                constraint: "F >= 0".to_string(),
                value: fixed_cost,
            });
        }
        if !quad_cost.is_finite() || quad_cost <= 0.0 {
            return Err(EconError::InvalidParameter {
                name: "quad_cost".to_string(),
                constraint: "c > 0".to_string(),
                value: quad_cost,
            });
        }
        if prices.is_empty() {
            return Err(EconError::EmptyPrices);
        }
        for &p in &prices {
            if !p.is_finite() || p < 0.0 {
                return Err(EconError::InvalidParameter {
                    name: "price".to_string(),
                    constraint: "P >= 0".to_string(),
                    value: p,
                });
            }
        }
        Ok(ProducerModel {
            fixed_cost,
            quad_cost,
            prices,
        })
    }

    pub fn fixed_cost(&self) -> f64 {
        self.fixed_cost
    }

    pub fn quad_cost(&self) -> f64 {
        self.quad_cost
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    /// Number of periods in the price series.
    pub fn horizon(&self) -> usize {
        self.prices.len()
    }

    /// Profit `P·Y − F − c·Y²` from producing `output` at `price`.
    pub fn period_profit(&self, price: f64, output: f64) -> f64 {
        price * output - self.fixed_cost - self.quad_cost * output * output
    }
}

/// The one-period optimum: output `Y* = P/(2c)` from the first-order
/// condition `P = 2cY`, and the profit it earns, `P²/(4c) − F`.
pub fn producer_period_optimum(price: f64, model: &ProducerModel) -> (f64, f64) {
    debug_assert!(price >= 0.0, "price must be non-negative");
    let output = price / (2.0 * model.quad_cost);
    let profit = price * price / (4.0 * model.quad_cost) - model.fixed_cost;
    (output, profit)
}

/// The producer's whole-horizon plan.
///
/// `operating_profit` is the profit the per-period optima would earn — the
/// criterion for the operate decision. When it is negative the plant shuts
/// down: `outputs` and `period_profits` are all zero and `total_profit` is 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProducerPlan {
    pub outputs: Vec<f64>,
    pub period_profits: Vec<f64>,
    pub operate: bool,
    pub operating_profit: f64,
    pub total_profit: f64,
}

/// Solves every period independently, then applies the one global check:
/// operate only if the periods' best profits sum to at least zero.
pub fn producer_plan(model: &ProducerModel) -> ProducerPlan {
    let optima: Vec<(f64, f64)> = model
        .prices
        .iter()
        .map(|&p| producer_period_optimum(p, model))
        .collect();
    let operating_profit: f64 = optima.iter().map(|&(_, profit)| profit).sum();
    let operate = operating_profit >= 0.0;
    if operate {
        ProducerPlan {
            outputs: optima.iter().map(|&(y, _)| y).collect(),
            period_profits: optima.iter().map(|&(_, p)| p).collect(),
            operate,
            operating_profit,
            total_profit: operating_profit,
        }
    } else {
        ProducerPlan {
            outputs: vec![0.0; model.horizon()],
            period_profits: vec![0.0; model.horizon()],
            operate,
            operating_profit,
            total_profit: 0.0,
        }
    }
}
