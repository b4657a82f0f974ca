//! The session language: declarations of spaces, forms, charts,
//! resolutions, maps, graphs and dependence relations.

pub mod ast;
mod eval;
pub mod lexer;
mod load;
pub mod parser;
pub mod printer;

pub use ast::*;
pub use eval::{eval_form, eval_poly};
pub use load::{LoadOptions, Session};
pub use parser::{parse_expr, parse_session};
pub use printer::{print_expr, print_session};

use crate::error::Result;
use crate::poly::{Ctx, Poly};

/// Parses and evaluates a polynomial expression over `ctx`.
pub fn parse_polynomial(ctx: &Ctx, text: &str) -> Result<Poly> {
    eval_poly(ctx, &parse_expr(text)?)
}

/// Parses and evaluates a form expression on `space` (no named forms).
pub fn parse_form(space: &crate::forms::SpaceRef, text: &str) -> Result<crate::forms::MeroForm> {
    eval_form(space, &parse_expr(text)?, &|_| None)
}
