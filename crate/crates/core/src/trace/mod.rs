//! Branched coverings given by a monic equation: traces, inverses of `P'`
//! and the traced-holomorphy test for forms.

mod covering;
mod graph;

pub use covering::{reduce_fraction, BezoutInverse, Covering};
pub use graph::{MultiformGraph, OmegaReport, Shear};

use serde::Serialize;

use crate::error::Result;
use crate::poly::{determinant, Field, Polynomial, VarContext};

/// `z^k + a_(k-1) z^(k-1) + ... + a_0` with symbolic coefficients, in the
/// variables `a0, ..., a(k-1), z`.
pub fn generic_monic<C: Field>(k: usize) -> Result<Polynomial<C>> {
    let mut names: Vec<String> = (0..k).map(|i| format!("a{i}")).collect();
    names.push("z".into());
    let ctx = VarContext::new(&names)?;
    let z = Polynomial::var(&ctx, k);
    let mut p = z.pow(k as u32);
    for i in 0..k {
        p = &p + &(&Polynomial::var(&ctx, i) * &z.pow(i as u32));
    }
    Ok(p)
}

/// The Hankel matrix `Trace(z^(j+h) / P')`, `0 <= j, h < k`.
pub fn trace_matrix<C: Field>(cover: &Covering<C>) -> Vec<Vec<Polynomial<C>>> {
    let k = cover.k();
    let z = Polynomial::var(cover.ctx(), cover.fiber());
    let entries: Vec<Polynomial<C>> = (0..2 * k - 1).map(|m| cover.trace_over_pprime(&z.pow(m as u32))).collect();
    (0..k).map(|j| (0..k).map(|h| entries[j + h].clone()).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminantCheck {
    pub k: usize,
    pub determinant: String,
    pub expected: i64,
    pub holds: bool,
}

/// Checks `det Trace(z^(j+h) / P') = (-1)^(k(k-1)/2)` for one covering.
pub fn check_trace_determinant<C: Field>(cover: &Covering<C>) -> DeterminantCheck {
    let k = cover.k();
    let det = determinant(trace_matrix(cover));
    let expected = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
    DeterminantCheck {
        k,
        determinant: det.to_string(),
        expected,
        holds: det == Polynomial::from_i64(cover.ctx(), expected),
    }
}

/// The determinant identity with symbolic coefficients for `1 <= k <= kmax`.
pub fn trace_determinant<C: Field>(kmax: usize) -> Result<Vec<DeterminantCheck>> {
    (1..=kmax)
        .map(|k| {
            let p = generic_monic::<C>(k)?;
            Ok(check_trace_determinant(&Covering::new(&p, k)?))
        })
        .collect()
}
