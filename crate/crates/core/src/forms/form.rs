use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::space::SpaceRef;
use super::subsets::{bits, wedge_sign};
use crate::error::{Error, Result};
use crate::groebner::{Certificate, ModElem};
use crate::poly::{gcd, lcm, Poly, Rational};

/// A meromorphic p-form `sum_H num[H] dx^H / den` on a space.
#[derive(Clone)]
pub struct MeroForm {
    space: SpaceRef,
    p: usize,
    num: BTreeMap<u64, Poly>,
    den: Poly,
}

pub fn same_space(a: &SpaceRef, b: &SpaceRef) -> bool {
    Arc::ptr_eq(a, b)
}

impl MeroForm {
    /// Builds and canonicalizes a form, checking that the denominator is a
    /// non-zero-divisor on the space.
    pub fn new(space: &SpaceRef, p: usize, num: BTreeMap<u64, Poly>, den: Poly) -> Result<Self> {
        space.check_degree(p)?;
        if num.keys().any(|&h| h.count_ones() as usize != p || h >> space.dim_ambient() != 0) {
            return Err(Error::InvalidInput(format!("form components do not have degree {p}")));
        }
        if !space.is_nonzerodivisor(&den) {
            return Err(Error::ZeroDivisor(format!("denominator {den} on `{}`", space.name())));
        }
        Ok(Self::raw(space, p, num, den))
    }

    /// Canonicalizes without checking the denominator.
    pub(crate) fn raw(space: &SpaceRef, p: usize, num: BTreeMap<u64, Poly>, den: Poly) -> Self {
        let mut f = MeroForm { space: space.clone(), p, num, den };
        f.canonicalize();
        f
    }

    fn canonicalize(&mut self) {
        self.num.retain(|_, c| !c.is_zero());
        if self.num.is_empty() {
            self.den = Poly::one(self.space.ctx());
            return;
        }
        let mut g = self.den.clone();
        for c in self.num.values() {
            if g.is_constant() {
                break;
            }
            g = gcd(&g, c);
        }
        // fold the scalar factor so the denominator is normalized
        let dn = self.den.normalized();
        let scalar = self.den.terms().next().map(|(m, c)| c / dn.coeff(m)).unwrap();
        let g = if g.is_constant() { Poly::one(self.space.ctx()) } else { g };
        self.den = dn.div_exact(&g).expect("gcd divides");
        let factor = Poly::constant(self.space.ctx(), scalar);
        for c in self.num.values_mut() {
            *c = c.div_exact(&(&g * &factor)).expect("gcd divides");
        }
    }

    pub fn zero(space: &SpaceRef, p: usize) -> Self {
        Self::raw(space, p, BTreeMap::new(), Poly::one(space.ctx()))
    }

    pub fn function(space: &SpaceRef, f: Poly) -> Self {
        Self::raw(space, 0, BTreeMap::from([(0, f)]), Poly::one(space.ctx()))
    }

    pub fn dvar(space: &SpaceRef, i: usize) -> Self {
        Self::raw(space, 1, BTreeMap::from([(1u64 << i, Poly::one(space.ctx()))]), Poly::one(space.ctx()))
    }

    /// `dx^H` for a set of variable indices.
    pub fn basis(space: &SpaceRef, h: &[usize]) -> Self {
        let mask = h.iter().fold(0u64, |m, &i| m | (1 << i));
        Self::raw(space, h.len(), BTreeMap::from([(mask, Poly::one(space.ctx()))]), Poly::one(space.ctx()))
    }

    /// Numerator from a module element in the p-form basis.
    pub fn from_elem(space: &SpaceRef, p: usize, e: &ModElem<Rational>, den: Poly) -> Self {
        let subs = space.subsets(p);
        let num = subs.masks().iter().zip(e.comps()).map(|(&m, c)| (m, c.clone())).collect();
        Self::raw(space, p, num, den)
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn numerators(&self) -> &BTreeMap<u64, Poly> {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The numerator as an element of the free module on `dx^H`.
    pub fn numerator_elem(&self) -> ModElem<Rational> {
        let subs = self.space.subsets(self.p);
        let zero = Poly::zero(self.space.ctx());
        ModElem::new(subs.masks().iter().map(|m| self.num.get(m).cloned().unwrap_or_else(|| zero.clone())).collect())
    }

    /// For a 0-form: the numerator polynomial.
    pub fn as_function_num(&self) -> Poly {
        self.num.get(&0).cloned().unwrap_or_else(|| Poly::zero(self.space.ctx()))
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if !same_space(&self.space, &o.space) {
            return Err(Error::ContextMismatch(format!(
                "forms on `{}` and `{}`",
                self.space.name(),
                o.space.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        if self.p != o.p && !self.is_zero() && !o.is_zero() {
            return Err(Error::InvalidInput(format!("cannot add forms of degrees {} and {}", self.p, o.p)));
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let l = if self.den == o.den { self.den.clone() } else { lcm(&self.den, &o.den) };
        let fa = l.div_exact(&self.den).unwrap();
        let fb = l.div_exact(&o.den).unwrap();
        let mut num = BTreeMap::new();
        for (h, c) in &self.num {
            num.insert(*h, c * &fa);
        }
        for (h, c) in &o.num {
            let t = c * &fb;
            let e = num.entry(*h).or_insert_with(|| Poly::zero(self.space.ctx()));
            *e = &*e + &t;
        }
        Ok(Self::raw(&self.space, self.p, num, l))
    }

    pub fn neg(&self) -> Self {
        let num = self.num.iter().map(|(h, c)| (*h, -c)).collect();
        Self::raw(&self.space, self.p, num, self.den.clone())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul_poly(&self, h: &Poly) -> Self {
        let num = self.num.iter().map(|(k, c)| (*k, c * h)).collect();
        Self::raw(&self.space, self.p, num, self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_poly(&Poly::constant(self.space.ctx(), c.clone()))
    }

    /// Division by a non-zero-divisor.
    pub fn div_poly(&self, h: &Poly) -> Result<Self> {
        if !self.space.is_nonzerodivisor(h) {
            return Err(Error::ZeroDivisor(format!("{h} on `{}`", self.space.name())));
        }
        Ok(Self::raw(&self.space, self.p, self.num.clone(), &self.den * h))
    }

    /// Product with a 0-form `f = a / b` (`b` must be a non-zero-divisor).
    pub fn mul_function(&self, f: &MeroForm) -> Result<Self> {
        self.check_same(f)?;
        assert_eq!(f.p, 0);
        Ok(Self::raw(
            &self.space,
            self.p,
            self.num.iter().map(|(k, c)| (*k, c * &f.as_function_num())).collect(),
            &self.den * &f.den,
        ))
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let p = self.p + o.p;
        self.space.check_degree(p)?;
        let mut num: BTreeMap<u64, Poly> = BTreeMap::new();
        for (a, ca) in &self.num {
            for (b, cb) in &o.num {
                if a & b != 0 {
                    continue;
                }
                let t = ca * cb;
                let e = num.entry(a | b).or_insert_with(|| Poly::zero(self.space.ctx()));
                *e = if wedge_sign(*a, *b) { &*e - &t } else { &*e + &t };
            }
        }
        Ok(Self::raw(&self.space, p, num, &self.den * &o.den))
    }

    fn d_num(&self) -> BTreeMap<u64, Poly> {
        let n = self.space.dim_ambient();
        let mut out: BTreeMap<u64, Poly> = BTreeMap::new();
        for (h, c) in &self.num {
            for j in 0..n {
                if h & (1 << j) != 0 {
                    continue;
                }
                let d = c.derivative(j);
                if d.is_zero() {
                    continue;
                }
                let e = out.entry(h | (1 << j)).or_insert_with(|| Poly::zero(self.space.ctx()));
                *e = if wedge_sign(1 << j, *h) { &*e - &d } else { &*e + &d };
            }
        }
        out
    }

    /// `d(num / g) = (g d(num) - dg ^ num) / g^2`.
    pub fn exterior_derivative(&self) -> Result<Self> {
        let p = self.p + 1;
        self.space.check_degree(p)?;
        let poly_part = Self::raw(&self.space, p, self.d_num(), Poly::one(self.space.ctx()));
        if self.den.is_constant() {
            return Ok(Self::raw(&self.space, p, poly_part.num, self.den.clone()));
        }
        let dg = Self::raw(
            &self.space,
            0,
            BTreeMap::from([(0, self.den.clone())]),
            Poly::one(self.space.ctx()),
        );
        let dg = Self::raw(&self.space, 1, dg.d_num(), Poly::one(self.space.ctx()));
        let numpart = Self::raw(&self.space, self.p, self.num.clone(), Poly::one(self.space.ctx()));
        let top = poly_part.mul_poly(&self.den).sub(&dg.wedge(&numpart)?)?;
        Ok(Self::raw(&self.space, p, top.num, &self.den * &self.den))
    }

    /// Membership in Omega^p / torsion with a certificate: the numerator
    /// lies in `den * F + R_p^sat`.
    pub fn in_omega_mod_torsion(&self) -> Result<(bool, Certificate<Rational>)> {
        let m = self.space.pole_module(self.p, &self.den)?;
        let cert = m.membership(&self.numerator_elem())?;
        Ok((cert.is_member(), cert))
    }

    pub fn is_torsion_free_zero(&self) -> Result<bool> {
        Ok(self.space.torsion_relations(self.p)?.contains(&self.numerator_elem()))
    }

    /// Equality as sections of the forms modulo torsion.
    pub fn equals_mod_torsion(&self, o: &Self) -> Result<bool> {
        self.check_same(o)?;
        if self.p != o.p {
            return Ok(self.is_zero() && o.is_zero());
        }
        let d = self.numerator_elem().mul_poly(&o.den).sub(&o.numerator_elem().mul_poly(&self.den));
        Ok(self.space.torsion_relations(self.p)?.contains(&d))
    }

    /// Text in the session syntax.
    pub fn to_text(&self) -> String {
        let ctx = self.space.ctx();
        if self.num.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .num
            .iter()
            .map(|(h, c)| {
                if *h == 0 {
                    return format!("({c})");
                }
                let w: Vec<String> = bits(*h).iter().map(|&i| format!("d{}", ctx.name(i))).collect();
                let w = w.join("^");
                if c.is_one() {
                    w
                } else {
                    format!("({c})*{w}")
                }
            })
            .collect();
        let body = parts.join(" + ");
        if self.den.is_one() {
            body
        } else {
            format!("({body})/({})", self.den)
        }
    }
}

impl PartialEq for MeroForm {
    fn eq(&self, o: &Self) -> bool {
        same_space(&self.space, &o.space) && (self.p == o.p || self.is_zero() && o.is_zero()) && self.num == o.num && self.den == o.den
    }
}

impl fmt::Display for MeroForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for MeroForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.to_text(), self.space.name())
    }
}
