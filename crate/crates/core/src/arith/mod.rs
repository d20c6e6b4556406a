//! Exact arithmetic: rationals, polynomials in the angle variable, polynomials
//! on phase space `(x¹..x^d, p₁..p_d)` and truncated `ε`-series of them.

mod phasepoly;
mod rational;
mod series;
mod unipoly;

pub use phasepoly::{PhasePoly, Var};
pub use rational::{factorial, format_rational, parse_rational, rat, Rational};
pub use series::{series_compose, truncated_product, FormalSeries};
pub use unipoly::UniPoly;
