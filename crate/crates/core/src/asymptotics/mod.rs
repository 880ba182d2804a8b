//! Large-`n` behaviour of `s_n`, `r_n` and `ν_n`.

mod lemr;
mod logspace;
mod omega;
mod residuals;
mod zeros;

pub use lemr::{lemr_check, LemrReport, DEFAULT_EXACT_LIMIT};
pub use logspace::{log_nu, log_sn, LogSeries, LOG_SERIES_CAP};
pub use omega::{
    level_term, nu_omega, omega_direct, omega_level_formula, omega_over_n, omega_solve, omega_tree_sum, x_of, zeta,
    OmegaProblem, OmegaSolution, ToDouble,
};
pub use residuals::{
    log_rn, moews_residual, period_collapse, rn_linear_bound, sumit_correction, sumit_correction_checked, w_n,
    wb_leading_terms, LinearBound, PeriodicSample,
};
pub use zeros::{
    find_g_zero, find_g_zero_with, probe_open_questions, property5_check, GZero, OpenQuestionProbe, Property5Report,
};
