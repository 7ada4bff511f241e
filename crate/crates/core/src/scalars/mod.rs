//! Exact coefficient arithmetic: Gaussian rationals, Laurent polynomials in
//! commuting symbols, rational functions, and truncated series in `h`.

mod gauss;
mod poly;
mod ratfn;
mod series;
mod symbol;

pub use gauss::{rat, rat_int, GaussQ, Rational};
pub use poly::{Mono, Poly};
pub use ratfn::RationalFn;
pub use series::{series_exp, series_log1p, HSeries};
pub use symbol::Sym;
