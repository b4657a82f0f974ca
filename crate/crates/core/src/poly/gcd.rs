//! Multivariate gcd by recursive primitive polynomial remainder sequences.

use super::{Field, Polynomial};
use crate::error::{Error, Result};

/// Pseudo-remainder of `a` by `b` as polynomials in `v`:
/// `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn pseudo_remainder<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>, v: usize) -> Polynomial<C> {
    let ctx = a.ctx().clone();
    let db = b.degree_in(v).expect("nonzero divisor") as usize;
    let bc = b.coeffs_in(v);
    let lb = &bc[db];
    let mut r = a.coeffs_in(v);
    if r.len() <= db {
        return a.clone();
    }
    let mut e = (r.len() - db) as u32;
    while r.len() > db {
        let top = r.pop().unwrap();
        let shift = r.len() - db;
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, c) in bc.iter().enumerate().take(db) {
            r[shift + i] = &r[shift + i] - &(&top * c);
        }
        e -= 1;
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    Polynomial::from_coeffs_in(&ctx, v, &r) * lb.pow(e)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in<C: Field>(p: &Polynomial<C>, v: usize) -> Polynomial<C> {
    let mut g = Polynomial::zero(p.ctx());
    for c in p.coeffs_in(v) {
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            return Polynomial::one(p.ctx());
        }
    }
    g
}

pub fn primitive_part_in<C: Field>(p: &Polynomial<C>, v: usize) -> Polynomial<C> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").normalized()
}

/// Normalized greatest common divisor (primitive, positive leading
/// coefficient in degrevlex over the rationals; monic over other fields).
pub fn gcd<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ctx());
    }
    let v = match (0..a.nvars()).rev().find(|&v| a.involves(v) || b.involves(v)) {
        Some(v) => v,
        None => return Polynomial::one(a.ctx()),
    };
    match (a.involves(v), b.involves(v)) {
        (true, false) => return gcd(&content_in(a, v), b),
        (false, true) => return gcd(a, &content_in(b, v)),
        _ => {}
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).unwrap().normalized();
    let mut g = b.div_exact(&cb).unwrap().normalized();
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() && g.involves(v) {
        let r = pseudo_remainder(&f, &g, v);
        f = g;
        g = if r.is_zero() { r } else { primitive_part_in(&r, v) };
    }
    let h = if g.is_zero() { f } else { Polynomial::one(a.ctx()) };
    (&c * &h).normalized()
}

pub fn lcm<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(a.ctx());
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).unwrap()).normalized()
}

/// True iff `f` has no repeated factor of positive degree.
pub fn is_squarefree<C: Field>(f: &Polynomial<C>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::InvalidInput("squarefree test on the zero polynomial".into()));
    }
    let mut g = f.clone();
    for v in f.support() {
        g = gcd(&g, &f.derivative(v));
        if g.is_constant() {
            return Ok(true);
        }
    }
    Ok(g.is_constant())
}

/// Squarefree part `f / gcd(f, df)`, normalized.
pub fn squarefree_part<C: Field>(f: &Polynomial<C>) -> Polynomial<C> {
    if f.is_constant() {
        return f.normalized();
    }
    let mut g = f.clone();
    for v in f.support() {
        g = gcd(&g, &f.derivative(v));
    }
    f.div_exact(&g).unwrap().normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Ctx, Poly, VarContext};

    fn ctx() -> Ctx {
        VarContext::new(&["x", "y", "z"]).unwrap()
    }

    fn p(c: &Ctx, s: &str) -> Poly {
        Poly::parse(c, s).unwrap()
    }

    #[test]
    fn small_gcds() {
        let c = ctx();
        assert_eq!(gcd(&p(&c, "x*y"), &p(&c, "x*z")), p(&c, "x"));
        assert_eq!(gcd(&p(&c, "-2*x*y + 4"), &Poly::zero(&c)), p(&c, "x*y - 2"));
        assert_eq!(gcd(&p(&c, "x^2-y^2"), &p(&c, "x-y")), p(&c, "x-y"));
        assert_eq!(gcd(&p(&c, "x^2-y^2"), &p(&c, "y-x")), p(&c, "x-y"));
        assert!(gcd(&p(&c, "x*y - z^2"), &p(&c, "x")).is_one());
    }

    #[test]
    fn gcd_of_products() {
        let c = ctx();
        let g = p(&c, "x*z^2 - 3*y + 1/2");
        let a = &g * &p(&c, "x^3 + y*z");
        let b = &g * &p(&c, "x - y^2*z + 7");
        assert_eq!(gcd(&a, &b), g.normalized());
    }

    #[test]
    fn pseudo_remainder_identity() {
        let c = ctx();
        let a = p(&c, "x^3*y + x + z");
        let b = p(&c, "y*x + 1");
        let r = pseudo_remainder(&a, &b, 0);
        assert!(r.degree_in(0).unwrap_or(0) < 1);
        // lc(b)^3 * a - r is divisible by b
        let lhs = &(&p(&c, "y^3") * &a) - &r;
        assert!(lhs.div_exact(&b).is_some());
    }

    #[test]
    fn squarefree() {
        let c = ctx();
        assert!(is_squarefree(&p(&c, "x*y - z^5")).unwrap());
        assert!(!is_squarefree(&p(&c, "x^2*y")).unwrap());
        assert!(is_squarefree(&p(&c, "x*y")).unwrap());
        assert!(!is_squarefree(&p(&c, "(x*y - z)^2*(x+1)")).unwrap());
        assert!(is_squarefree(&Poly::zero(&c)).is_err());
        assert_eq!(squarefree_part(&p(&c, "x^3*(y+1)^2")), p(&c, "x*y + x"));
    }
}
