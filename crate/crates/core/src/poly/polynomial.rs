use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::context::{same_ctx, Ctx};
use super::{Field, Monomial, OrderSpec};
use crate::error::{Error, Result};

/// Sparse polynomial: a map from exponent vectors to non-zero coefficients.
#[derive(Clone)]
pub struct Polynomial<C: Field> {
    ctx: Ctx,
    terms: BTreeMap<Monomial, C>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl<C: Field> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ctx(&self.ctx, &other.ctx)
    }
}

impl<C: Field> Eq for Polynomial<C> {}

impl<C: Field> Hash for Polynomial<C> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<C: Field> Polynomial<C> {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &Ctx, c: C) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn from_i64(ctx: &Ctx, n: i64) -> Self {
        Self::constant(ctx, C::from_i64(n))
    }

    pub fn var(ctx: &Ctx, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), i, 1), C::one())
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.var(name)?))
    }

    pub fn monomial(ctx: &Ctx, m: Monomial, c: C) -> Self {
        debug_assert_eq!(m.len(), ctx.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(ctx: &Ctx, it: I) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.involves(v)).collect()
    }

    pub fn leading_term(&self, ord: &OrderSpec) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn leading_coeff(&self, ord: &OrderSpec) -> C {
        self.leading_term(ord).map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    /// Terms sorted descending in `ord`.
    pub fn sorted_terms(&self, ord: &OrderSpec) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)))
        }
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul_ref(c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[v] -= 1;
            out.add_term(n, c.mul_ref(&C::from_i64(e as i64)));
        }
        out
    }

    pub fn partial(&self, name: &str) -> Result<Self> {
        Ok(self.derivative(self.ctx.var(name)?))
    }

    /// Substitutes `images[i]` (all in one target context) for variable `i`.
    pub fn substitute(&self, images: &[Polynomial<C>]) -> Self {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = match images.first() {
            Some(p) => p.ctx.clone(),
            None => self.ctx.clone(),
        };
        let mut powers: Vec<Vec<Polynomial<C>>> = images.iter().map(|p| vec![Self::one(&p.ctx), p.clone()]).collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[v];
                while pw.len() <= e as usize {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            out = out + t;
        }
        out
    }

    /// Substitutes `value` for variable `v`, staying in the same context.
    pub fn substitute_var(&self, v: usize, value: &Polynomial<C>) -> Self {
        let images: Vec<_> =
            (0..self.nvars()).map(|i| if i == v { value.clone() } else { Self::var(&self.ctx, i) }).collect();
        self.substitute(&images)
    }

    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul_ref(&point[v]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Moves the polynomial into `ctx`, sending variable `i` to `map[i]`.
    pub fn embed(&self, ctx: &Ctx, map: &[usize]) -> Self {
        let n = ctx.len();
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(n);
            for (i, &x) in m.exps().iter().enumerate() {
                e.0[map[i]] += x;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Moves the polynomial into a context with the same variable names
    /// (in any order, possibly with extras). Fails on a missing variable.
    pub fn to_ctx(&self, ctx: &Ctx) -> Result<Self> {
        if same_ctx(&self.ctx, ctx) {
            return Ok(Polynomial { ctx: ctx.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.ctx.names().iter().enumerate() {
            match ctx.index_of(name) {
                Some(j) => map.push(j),
                None if !self.involves(i) => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(name.clone())),
            }
        }
        let n = ctx.len();
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(n);
            for (i, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    e.0[map[i]] += x;
                }
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to `v`: `self = sum_i out[i] * v^i`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.ctx); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let mut n = m.clone();
            let e = n.0[v] as usize;
            n.0[v] = 0;
            out[e].terms.insert(n, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(ctx: &Ctx, v: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(ctx);
        for (i, c) in coeffs.iter().enumerate() {
            let vm = Monomial::var(ctx.len(), v, i as u32);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&vm), a.clone());
            }
        }
        out
    }

    /// Exact quotient `self / q`, or `None` if `q` does not divide `self`.
    pub fn div_exact(&self, q: &Self) -> Option<Self> {
        assert!(!q.is_zero(), "division by zero polynomial");
        if let Some(c) = q.constant_value() {
            return Some(self.scale(&c.inv()));
        }
        let (qm, qc) = q.terms.iter().next_back().map(|(m, c)| (m.clone(), c.inv())).unwrap();
        let mut r = self.clone();
        let mut quot = Self::zero(&self.ctx);
        while let Some((m, c)) = r.terms.iter().next_back() {
            let t = m.checked_div(&qm)?;
            let tc = c.mul_ref(&qc);
            r = r - q.mul_term(&t, &tc);
            quot.add_term(t, tc);
        }
        Some(quot)
    }

    /// The associate fixed by the field's normalizer, using degrevlex for the
    /// leading term. Over the rationals: primitive with positive lead.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading_coeff(&OrderSpec::degrevlex());
        let n = C::normalizer(&lead, &mut self.terms.values());
        self.scale(&n.inv())
    }

    pub fn monic(&self, ord: &OrderSpec) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff(ord).inv())
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::<D>::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.ctx.name(i).to_string()),
                _ => parts.push(format!("{}^{}", self.ctx.name(i), e)),
            }
        }
        parts.join("*")
    }
}

fn fmt_term<C: Field>(p: &Polynomial<C>, m: &Monomial, c: &C) -> String {
    if m.is_one() {
        return c.to_string();
    }
    let mono = p.fmt_monomial(m);
    if c.is_one() {
        mono
    } else if (-c.clone()).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

/// Canonical text: terms in descending degrevlex order.
impl<C: Field> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms(&OrderSpec::degrevlex()).into_iter().enumerate() {
            if i == 0 {
                write!(f, "{}", fmt_term(self, m, c))?;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_term(self, m, &-c.clone()))?;
            } else {
                write!(f, " + {}", fmt_term(self, m, c))?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Field> Add<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        debug_assert!(same_ctx(&self.ctx, &rhs.ctx), "context mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Field> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(mut self, rhs: Polynomial<C>) -> Polynomial<C> {
        debug_assert!(same_ctx(&self.ctx, &rhs.ctx), "context mismatch");
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Field> Sub<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        debug_assert!(same_ctx(&self.ctx, &rhs.ctx), "context mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Field> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(mut self, rhs: Polynomial<C>) -> Polynomial<C> {
        debug_assert!(same_ctx(&self.ctx, &rhs.ctx), "context mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<C: Field> Mul<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        debug_assert!(same_ctx(&self.ctx, &rhs.ctx), "context mismatch");
        let mut out = Polynomial::zero(&self.ctx);
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a.mul_ref(b));
            }
        }
        out
    }
}

impl<C: Field> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Field> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(mut self) -> Polynomial<C> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<C: Field> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, Rational, VarContext};

    fn ctx() -> Ctx {
        VarContext::new(&["x", "y", "z"]).unwrap()
    }

    fn p(c: &Ctx, s: &str) -> Poly {
        Poly::parse(c, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx();
        assert_eq!(&p(&c, "x+y") * &p(&c, "x-y"), p(&c, "x^2-y^2"));
        assert_eq!(&p(&c, "x*y - z^3") + &Poly::zero(&c), p(&c, "x*y - z^3"));
        assert_eq!(&p(&c, "x*y - z^3") * &Poly::one(&c), p(&c, "x*y - z^3"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Poly::var(&ctx(), 0);
        let b = Poly::var(&VarContext::new(&["u"]).unwrap(), 0);
        assert!(a.arith(&b, ArithOp::Add).is_err());
    }

    #[test]
    fn derivatives() {
        let c = ctx();
        assert_eq!(p(&c, "x*y - z^5").partial("z").unwrap(), p(&c, "-5*z^4"));
        assert_eq!(p(&c, "x^3+y^3+z^3").partial("x").unwrap(), p(&c, "3*x^2"));
        assert!(p(&c, "7/3").partial("x").unwrap().is_zero());
        assert!(p(&c, "x").partial("w").is_err());
    }

    #[test]
    fn canonical_text() {
        let c = ctx();
        assert_eq!(p(&c, "3/2*y*x^2 - z^5").to_string(), "-z^5 + 3/2*x^2*y");
        assert_eq!(p(&c, "3/2*y*x^2 - z^3").to_string(), "3/2*x^2*y - z^3");
        assert_eq!(p(&c, "-x + 1").to_string(), "-x + 1");
        assert_eq!(Poly::zero(&c).to_string(), "0");
    }

    #[test]
    fn exact_division_and_substitution() {
        let c = ctx();
        let f = p(&c, "x^2*y - y^3");
        assert_eq!(f.div_exact(&p(&c, "x-y")).unwrap(), p(&c, "x*y + y^2"));
        assert!(f.div_exact(&p(&c, "x-z")).is_none());
        let g = f.substitute(&[p(&c, "z"), p(&c, "z"), p(&c, "z")]);
        assert!(g.is_zero());
        let h = p(&c, "x*y").substitute_var(1, &p(&c, "x + 1"));
        assert_eq!(h, p(&c, "x^2 + x"));
        assert_eq!(p(&c, "x^2 + y").eval(&[Rational::from_i64(3), Rational::from_i64(1), Rational::from_i64(0)]), Rational::from_i64(10));
    }

    #[test]
    fn coefficient_views_round_trip() {
        let c = ctx();
        let f = p(&c, "x^2*z + 3*x*y - z + 2");
        let cs = f.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], p(&c, "3*y"));
        assert_eq!(Poly::from_coeffs_in(&c, 0, &cs), f);
    }

    #[test]
    fn huge_coefficients_stay_exact() {
        let c = ctx();
        let big = p(&c, &format!("{}*x + 1", "9".repeat(1000)));
        let sq = &big * &big;
        let back = sq.div_exact(&big).unwrap();
        assert_eq!(back, big);
    }
}
