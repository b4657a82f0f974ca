//! Resultants by the subresultant polynomial remainder sequence.

use super::gcd::pseudo_remainder;
use super::{Field, Polynomial};
use crate::error::{Error, Result};

/// Resultant of `a` and `b` with respect to variable `v`.
///
/// Sign convention: the Sylvester determinant with the coefficients of `a`
/// in the first `deg b` rows, leading coefficient first.
pub fn resultant<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>, v: usize) -> Result<Polynomial<C>> {
    let (da, db) = match (a.degree_in(v), b.degree_in(v)) {
        (Some(x), Some(y)) if x > 0 && y > 0 => (x, y),
        _ => {
            return Err(Error::InvalidInput(format!(
                "resultant needs positive degree in `{}`",
                a.ctx().name(v)
            )))
        }
    };
    let ctx = a.ctx().clone();
    let one = Polynomial::one(&ctx);
    let (mut f, mut g) = (a.clone(), b.clone());
    let mut sign = false;
    if da < db {
        std::mem::swap(&mut f, &mut g);
        sign = (da * db) % 2 == 1;
    }
    let mut gg = one.clone();
    let mut h = one.clone();
    loop {
        let df = f.degree_in(v).unwrap();
        let dg = g.degree_in(v).unwrap();
        let delta = df - dg;
        if df % 2 == 1 && dg % 2 == 1 {
            sign = !sign;
        }
        let r = pseudo_remainder(&f, &g, v);
        f = g;
        let divisor = &gg * &h.pow(delta);
        g = r.div_exact(&divisor).expect("subresultant division is exact");
        gg = lead_in(&f, v);
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
        if g.is_zero() {
            return Ok(Polynomial::zero(&ctx));
        }
        if !g.involves(v) {
            let df = f.degree_in(v).unwrap();
            let out = if df == 0 { h } else { g.pow(df).div_exact(&h.pow(df - 1)).expect("exact") };
            return Ok(if sign { -out } else { out });
        }
    }
}

fn lead_in<C: Field>(p: &Polynomial<C>, v: usize) -> Polynomial<C> {
    p.coeffs_in(v).pop().unwrap_or_else(|| Polynomial::zero(p.ctx()))
}

/// Sylvester matrix of `a` and `b` in `v`.
pub fn sylvester_matrix<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>, v: usize) -> Vec<Vec<Polynomial<C>>> {
    let ac = a.coeffs_in(v);
    let bc = b.coeffs_in(v);
    let (m, n) = (ac.len() - 1, bc.len() - 1);
    let size = m + n;
    let zero = Polynomial::zero(a.ctx());
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in ac.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in bc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{determinant, gcd, Ctx, Poly, VarContext};

    fn ctx() -> Ctx {
        VarContext::new(&["z", "t", "a", "b"]).unwrap()
    }

    fn p(c: &Ctx, s: &str) -> Poly {
        Poly::parse(c, s).unwrap()
    }

    #[test]
    fn golden_values() {
        let c = ctx();
        assert_eq!(resultant(&p(&c, "z^2 - t"), &p(&c, "z"), 0).unwrap(), p(&c, "-t"));
        assert_eq!(resultant(&p(&c, "z^2 - t"), &p(&c, "2*z"), 0).unwrap(), p(&c, "-4*t"));
        assert_eq!(resultant(&p(&c, "z - a"), &p(&c, "z - b"), 0).unwrap(), p(&c, "a - b"));
    }

    #[test]
    fn degenerate_degree_is_an_error() {
        let c = ctx();
        assert!(resultant(&p(&c, "t"), &p(&c, "z"), 0).is_err());
    }

    #[test]
    fn agrees_with_sylvester_determinant() {
        let c = ctx();
        let cases = [
            ("z^3 + t*z + a", "3*z^2 + t"),
            ("z^2 - t*z + a", "z^4 - b"),
            ("a*z^3 - 2*z + t", "b*z^2 + z - 1"),
            ("z^5 - t", "5*z^4"),
            ("t*z^2 + z + 1", "a*z^2 + b"),
        ];
        for (f, g) in cases {
            let (f, g) = (p(&c, f), p(&c, g));
            let r = resultant(&f, &g, 0).unwrap();
            assert_eq!(r, determinant(sylvester_matrix(&f, &g, 0)), "{f} / {g}");
        }
    }

    #[test]
    fn vanishes_exactly_on_common_factors() {
        let c = ctx();
        let shared = [p(&c, "z - t"), p(&c, "z^2 + a*z + b")];
        let others = [p(&c, "z + 1"), p(&c, "z^2 - a"), p(&c, "t*z - b")];
        for s in &shared {
            for (i, u) in others.iter().enumerate() {
                let w = &others[(i + 1) % others.len()];
                let (f, g) = (s * u, s * w);
                assert!(resultant(&f, &g, 0).unwrap().is_zero());
                assert!(gcd(&f, &g).involves(0));
                assert!(!resultant(u, w, 0).unwrap().is_zero());
                assert!(!gcd(u, w).involves(0));
            }
        }
    }
}
