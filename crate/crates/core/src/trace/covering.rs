use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::{determinant, gcd, is_squarefree, Ctx, Field, Polynomial};

/// `A` with `A * P' = r` modulo `P`, where `r` is the norm of `P'`
/// (the resultant of `P` and `P'` in the fiber variable).
#[derive(Clone, Debug)]
pub struct BezoutInverse<C: Field> {
    pub a: Polynomial<C>,
    pub r: Polynomial<C>,
}

/// The ring `B[z] / (P)` for a monic `P` of degree `k` in the fiber
/// variable `z`, `B` the polynomials in the remaining variables. Elements
/// are reduced to coefficient vectors on `1, z, ..., z^(k-1)`.
#[derive(Debug)]
pub struct Covering<C: Field> {
    ctx: Ctx,
    fiber: usize,
    p: Polynomial<C>,
    dp: Polynomial<C>,
    low: Vec<Polynomial<C>>,
    power_sums: OnceLock<Vec<Polynomial<C>>>,
    bezout: OnceLock<Option<BezoutInverse<C>>>,
}

impl<C: Field> Covering<C> {
    /// `p` must have a constant leading coefficient in `fiber`; it is made
    /// monic. Rejects `p` that is not squarefree over the base fraction field.
    pub fn new(p: &Polynomial<C>, fiber: usize) -> Result<Self> {
        let coeffs = p.coeffs_in(fiber);
        let k = coeffs.len().saturating_sub(1);
        if k == 0 {
            return Err(Error::NoMonicDirection(format!("{p} has degree 0 in the fiber")));
        }
        let lead = match coeffs[k].constant_value() {
            Some(c) => c,
            None => return Err(Error::NoMonicDirection(format!("{p} is not monic in the fiber"))),
        };
        let inv = lead.inv();
        let low: Vec<_> = coeffs[..k].iter().map(|c| c.scale(&inv)).collect();
        let p = p.scale(&inv);
        let dp = p.derivative(fiber);
        let cov = Covering {
            ctx: p.ctx().clone(),
            fiber,
            p,
            dp,
            low,
            power_sums: OnceLock::new(),
            bezout: OnceLock::new(),
        };
        if !cov.is_reduced() {
            return Err(Error::NonReduced(format!("{} is not squarefree in the fiber", cov.p)));
        }
        Ok(cov)
    }

    /// Squarefree over the base fraction field. A squarefree specialization
    /// of the base variables settles it; otherwise fall back to a gcd.
    fn is_reduced(&self) -> bool {
        if self.k() == 1 {
            return true;
        }
        let n = self.ctx.len();
        for attempt in 0..4i64 {
            let images: Vec<Polynomial<C>> = (0..n)
                .map(|i| {
                    if i == self.fiber {
                        Polynomial::var(&self.ctx, i)
                    } else {
                        Polynomial::from_i64(&self.ctx, 3 + (i as i64 + 1) * (2 * attempt + 5) % 17)
                    }
                })
                .collect();
            let s = self.p.substitute(&images);
            if is_squarefree(&s).unwrap_or(false) {
                return true;
            }
        }
        gcd(&self.p, &self.dp).degree_in(self.fiber).unwrap_or(0) == 0
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn fiber(&self) -> usize {
        self.fiber
    }

    /// Number of sheets.
    pub fn k(&self) -> usize {
        self.low.len()
    }

    /// The monic equation.
    pub fn p(&self) -> &Polynomial<C> {
        &self.p
    }

    pub fn dp(&self) -> &Polynomial<C> {
        &self.dp
    }

    /// Coefficients of `g mod P` on `1, z, ..., z^(k-1)`.
    pub fn rem(&self, g: &Polynomial<C>) -> Vec<Polynomial<C>> {
        let k = self.k();
        let mut c = g.coeffs_in(self.fiber);
        while c.len() > k {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = c.len() - k;
            for (i, a) in self.low.iter().enumerate() {
                c[base + i] = &c[base + i] - &(&top * a);
            }
        }
        c.resize(k, Polynomial::zero(&self.ctx));
        c
    }

    /// Multiplication by `z` on a reduced vector.
    pub fn mul_z(&self, v: &mut Vec<Polynomial<C>>) {
        let top = v.pop().unwrap();
        v.insert(0, Polynomial::zero(&self.ctx));
        if !top.is_zero() {
            for (i, a) in self.low.iter().enumerate() {
                v[i] = &v[i] - &(&top * a);
            }
        }
    }

    pub fn lift(&self, v: &[Polynomial<C>]) -> Polynomial<C> {
        Polynomial::from_coeffs_in(&self.ctx, self.fiber, v)
    }

    /// `Trace(z^i)` for `i < k` by Newton's identities.
    pub fn power_sums(&self) -> &[Polynomial<C>] {
        self.power_sums.get_or_init(|| {
            let k = self.k();
            // elementary symmetric functions e_j = (-1)^j a_(k-j)
            let e: Vec<Polynomial<C>> = (0..=k)
                .map(|j| match j {
                    0 => Polynomial::one(&self.ctx),
                    _ if j % 2 == 0 => self.low[k - j].clone(),
                    _ => -&self.low[k - j],
                })
                .collect();
            let mut ps = vec![Polynomial::from_i64(&self.ctx, k as i64)];
            for m in 1..k {
                let mut s = &e[m] * &Polynomial::from_i64(&self.ctx, m as i64);
                if m % 2 == 0 {
                    s = -s;
                }
                for i in 1..m {
                    let t = &e[i] * &ps[m - i];
                    s = if i % 2 == 1 { &s + &t } else { &s - &t };
                }
                ps.push(s);
            }
            ps
        })
    }

    /// Trace of a reduced vector.
    pub fn trace_vec(&self, v: &[Polynomial<C>]) -> Polynomial<C> {
        let ps = self.power_sums();
        let mut t = Polynomial::zero(&self.ctx);
        for (c, s) in v.iter().zip(ps) {
            if !c.is_zero() {
                t = &t + &(c * s);
            }
        }
        t
    }

    /// Trace of multiplication by `g` on `B[z] / (P)`.
    pub fn trace_element(&self, g: &Polynomial<C>) -> Polynomial<C> {
        self.trace_vec(&self.rem(g))
    }

    /// `Trace(h / P')`: the coefficient of `z^(k-1)` in `h mod P`.
    pub fn trace_over_pprime(&self, h: &Polynomial<C>) -> Polynomial<C> {
        self.rem(h).pop().unwrap()
    }

    /// Matrix of multiplication by `e`; column `i` holds `e z^i mod P`.
    pub fn mult_matrix(&self, e: &Polynomial<C>) -> Vec<Vec<Polynomial<C>>> {
        let k = self.k();
        let mut col = self.rem(e);
        let mut cols = Vec::with_capacity(k);
        for _ in 0..k {
            cols.push(col.clone());
            self.mul_z(&mut col);
        }
        (0..k).map(|r| (0..k).map(|i| cols[i][r].clone()).collect()).collect()
    }

    /// `(A, N)` with `A e = N mod P` and `N` the norm of `e`, from the
    /// adjugate of the multiplication matrix.
    pub fn norm_inverse(&self, e: &Polynomial<C>) -> (Polynomial<C>, Polynomial<C>) {
        let k = self.k();
        let m = self.mult_matrix(e);
        let norm = determinant(m.clone());
        if k == 1 {
            return (Polynomial::one(&self.ctx), norm);
        }
        let coords: Vec<Polynomial<C>> = (0..k)
            .map(|i| {
                let minor: Vec<Vec<Polynomial<C>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.clone()).collect())
                    .collect();
                let d = determinant(minor);
                if i % 2 == 1 {
                    -d
                } else {
                    d
                }
            })
            .collect();
        let a = self.lift(&coords);
        debug_assert!(self.rem(&(&(&a * e) - &norm)).iter().all(|c| c.is_zero()));
        (a, norm)
    }

    /// The inverse of `P'` up to its norm; `None` if that norm vanishes.
    pub fn bezout(&self) -> Option<&BezoutInverse<C>> {
        self.bezout
            .get_or_init(|| {
                let (a, r) = self.norm_inverse(&self.dp);
                if r.is_zero() {
                    return None;
                }
                let check = self.rem(&(&(&a * &self.dp) - &r));
                assert!(check.iter().all(|c| c.is_zero()), "A P' = r mod P");
                Some(BezoutInverse { a, r })
            })
            .as_ref()
    }

    /// `Trace(h / P'^m)` as a reduced fraction `(num, den)` of base
    /// polynomials with `den` dividing `r^m`.
    pub fn trace_rational(&self, h: &Polynomial<C>, m: u32) -> Result<(Polynomial<C>, Polynomial<C>)> {
        let b = self.bezout().ok_or_else(|| Error::NonReduced(format!("{} has zero discriminant", self.p)))?;
        let mut v = self.rem(h);
        for _ in 0..m {
            v = self.rem(&(&self.lift(&v) * &b.a));
        }
        let num = self.trace_vec(&v);
        let den = b.r.pow(m);
        Ok(reduce_fraction(num, den))
    }
}

/// Cancels the gcd and makes the denominator normalized.
pub fn reduce_fraction<C: Field>(num: Polynomial<C>, den: Polynomial<C>) -> (Polynomial<C>, Polynomial<C>) {
    if num.is_zero() {
        return (num, Polynomial::one(den.ctx()));
    }
    let g = gcd(&num, &den);
    let (mut num, den) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
    let dn = den.normalized();
    let (m, c) = den.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let s = c.div_ref(&dn.coeff(&m));
    num = num.scale(&s.inv());
    (num, dn)
}
