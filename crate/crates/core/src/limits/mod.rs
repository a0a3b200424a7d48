//! Closed-form limit shapes and rates, the isodynamic predicate, residual
//! diagnostics, and empirical convergence-order estimation.

mod order;
mod predict;

pub use order::{estimate_order, fit_constant, OrderEstimate};
pub use predict::{
    is_isodynamic, is_isodynamic_within, predict_limit, quad_limit, residual_diagnostics,
    tetra_limit, triangle_limit, LimitPrediction, LimitRegime, Residuals,
};
