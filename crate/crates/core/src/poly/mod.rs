//! Exact sparse multivariate polynomials.

mod context;
mod gcd;
mod matrix;
mod monomial;
mod order;
mod polynomial;
mod resultant;
mod scalar;

pub use context::{is_identifier, same_ctx, Ctx, VarContext};
pub use gcd::{content_in, gcd, is_squarefree, lcm, primitive_part_in, pseudo_remainder, squarefree_part};
pub use matrix::determinant;
pub use monomial::Monomial;
pub use order::{ModuleOrder, OrderKind, OrderSpec};
pub use polynomial::{ArithOp, Polynomial};
pub use resultant::{resultant, sylvester_matrix};
pub use scalar::{Field, Rational, Zp};

/// Polynomials over the rationals, the engine's working type.
pub type Poly = Polynomial<Rational>;

impl Poly {
    /// Parses `text` as a polynomial expression in the variables of `ctx`.
    pub fn parse(ctx: &Ctx, text: &str) -> crate::error::Result<Poly> {
        crate::session::parse_polynomial(ctx, text)
    }
}
