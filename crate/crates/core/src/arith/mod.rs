//! Exact scalar, polynomial, rational-function and truncated power-series
//! arithmetic shared by every other module.

mod field;
mod poly;
mod ratfunc;
mod rational;
mod series;

pub use field::Field;
pub use poly::IntPolynomial;
pub use ratfunc::RationalFunction;
pub use rational::{binom2, log_q_rational, q_pow, rat, rational_to_f64, Rational};
pub use series::PowerSeries;
