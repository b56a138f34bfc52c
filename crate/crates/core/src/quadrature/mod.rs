//! Numerical integration and the numeric expectation-value oracles.

pub mod adaptive;
mod expectation;
pub mod rules;

pub use expectation::{
    check_moment, double_integral_rep, expectation_f, inv_p_numeric, knu_integral, moment_exponents,
    x_form_prefactor, ExpectationResult, InvPNumeric, Method, MomentumFunction, QuadratureSpec, Rule,
    Substitution,
};
pub use rules::GaussRule;
