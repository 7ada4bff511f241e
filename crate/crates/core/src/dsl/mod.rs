//! The `.hopf` description language for presentations, Hopf structures,
//! bicrossproducts, comodules and Lie algebras.
//!
//! ```text
//! presentation two_d {
//!   generators: v a tau;
//!   order: v a tau;
//!   relation tau*a - a*tau = I*h*a;
//!   ...
//! }
//! ```
//!
//! Expressions use `I` for the imaginary unit, `h` for the deformation
//! parameter (`kappa` means `h^-1`), `eps(i,j,k)`, `delta(i,j)`, `[x, y]`
//! for commutators and `(x)` between tensor factors. Repeated indices are
//! summed.

mod ast;
mod build;
mod diag;
mod eval;
mod lexer;
mod parser;
mod print;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use ast::{Decl, DeclKind, Expr};
pub use build::{
    build_document, ActionSpec, BicrossKind, BicrossSpec, ComoduleSpec, Document, ElementSet, FactorGen, LieSpec,
};
pub use diag::Diagnostic;
pub use eval::{Env, Evaluator};
pub use parser::{parse_expr, parse_file};
pub use print::print_presentation;

use crate::error::{Error, Result};
use crate::ncalg::{Element, Presentation};

/// Parses and validates a whole file.
pub fn parse_document(text: &str, known: &BTreeMap<String, Arc<Presentation>>) -> Result<Document> {
    let decls = parse_file(text).map_err(|d| Error::Parse(vec![d]))?;
    build_document(&decls, known).map_err(Error::Parse)
}

/// Parses a file expected to hold exactly one presentation.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let doc = parse_document(text, &BTreeMap::new())?;
    match doc.presentations.as_slice() {
        [p] => Ok((**p).clone()),
        other => Err(Error::Parse(vec![Diagnostic::new(
            1,
            1,
            format!("expected exactly one presentation, found {}", other.len()),
        )])),
    }
}

/// Evaluates an expression (no free indices) in a tensor context.
pub fn eval_in(text: &str, slots: &[Arc<Presentation>]) -> Result<Element> {
    eval_with(text, slots, &[])
}

/// As [`eval_in`], with extra commuting symbols besides the presentations'
/// parameters.
pub fn eval_with(text: &str, slots: &[Arc<Presentation>], symbols: &[&str]) -> Result<Element> {
    let e = parse_expr(text).map_err(|d| Error::Parse(vec![d]))?;
    let ev = Evaluator::new(slots.to_vec(), false).with_params(symbols);
    ev.eval(&e, &Env::new()).map_err(|d| Error::Parse(vec![d]))
}
