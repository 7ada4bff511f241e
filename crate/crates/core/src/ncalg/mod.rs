//! Noncommutative polynomial algebras given by generators and oriented
//! relations, with PBW normal ordering over tensor products.

mod confluence;
mod ctx;
mod element;
mod ortho;
mod presentation;
mod subst;

pub use confluence::confluence_check;
pub use ctx::{invert_grouplike_monomial, render, render_word, Ctx};
pub use element::{Element, GenId, Letter, Word};
pub use ortho::{cayley_matrix, vanishes_mod_orthogonal};
pub use presentation::{Family, GenInfo, Presentation};
pub use subst::{exp_series, h_expand, substitute};
