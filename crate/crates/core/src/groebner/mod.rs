//! Groebner bases of submodules of free modules over polynomial rings.

mod buchberger;
mod ops;
mod svec;

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{same_ctx, Ctx, Field, ModuleOrder, Monomial, OrderSpec, Polynomial};
use svec::SVec;

pub use ops::{eliminate, krull_dimension, VDim};

/// An element of the free module of rank `comps.len()`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModElem<C: Field> {
    comps: Vec<Polynomial<C>>,
}

impl<C: Field> ModElem<C> {
    pub fn new(comps: Vec<Polynomial<C>>) -> Self {
        assert!(!comps.is_empty(), "rank must be positive");
        ModElem { comps }
    }

    pub fn zero(ctx: &Ctx, rank: usize) -> Self {
        ModElem::new(vec![Polynomial::zero(ctx); rank])
    }

    pub fn unit(ctx: &Ctx, rank: usize, i: usize) -> Self {
        let mut e = Self::zero(ctx, rank);
        e.comps[i] = Polynomial::one(ctx);
        e
    }

    pub fn scalar(p: Polynomial<C>) -> Self {
        ModElem::new(vec![p])
    }

    pub fn ctx(&self) -> &Ctx {
        self.comps[0].ctx()
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Polynomial<C>] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Polynomial<C> {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<Polynomial<C>> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        ModElem::new(self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        ModElem::new(self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect())
    }

    pub fn mul_poly(&self, p: &Polynomial<C>) -> Self {
        ModElem::new(self.comps.iter().map(|a| a * p).collect())
    }

    fn to_svec(&self, ord: &ModuleOrder) -> SVec<C> {
        let mut t = Vec::new();
        for (i, p) in self.comps.iter().enumerate() {
            for (m, c) in p.terms() {
                t.push((m.clone(), i, c.clone()));
            }
        }
        SVec::from_terms(t, ord)
    }

    fn from_svec(v: &SVec<C>, ctx: &Ctx, rank: usize) -> Self {
        let mut comps = vec![Polynomial::zero(ctx); rank];
        for (m, p, c) in &v.t {
            comps[*p].add_term(m.clone(), c.clone());
        }
        ModElem { comps }
    }
}

/// Text form: `(p0)*e0 + (p1)*e1`, zero components omitted.
impl<C: Field> fmt::Display for ModElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| if p.nterms() == 1 { format!("{p}*e{i}") } else { format!("({p})*e{i}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<C: Field> fmt::Debug for ModElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `element = sum cofactors[i] * basis[i] + remainder`.
#[derive(Clone, Debug)]
pub struct Certificate<C: Field> {
    pub cofactors: Vec<Polynomial<C>>,
    pub remainder: ModElem<C>,
}

impl<C: Field> Certificate<C> {
    pub fn is_member(&self) -> bool {
        self.remainder.is_zero()
    }
}

/// A submodule of a free module given by generators, possibly flagged as a
/// reduced Groebner basis for its order.
#[derive(Clone)]
pub struct Submodule<C: Field> {
    ctx: Ctx,
    rank: usize,
    order: ModuleOrder,
    gens: Vec<SVec<C>>,
    groebner: bool,
}

impl<C: Field> Submodule<C> {
    pub fn new(ctx: &Ctx, rank: usize, gens: &[ModElem<C>], order: ModuleOrder) -> Self {
        for g in gens {
            assert_eq!(g.rank(), rank, "generator rank");
            assert!(same_ctx(g.ctx(), ctx), "generator context");
        }
        Submodule {
            ctx: ctx.clone(),
            rank,
            gens: gens.iter().map(|g| g.to_svec(&order)).filter(|g| !g.is_zero()).collect(),
            order,
            groebner: false,
        }
    }

    pub fn ideal(ctx: &Ctx, gens: &[Polynomial<C>], mono: OrderSpec) -> Self {
        let gens: Vec<_> = gens.iter().map(|p| ModElem::scalar(p.clone())).collect();
        Self::new(ctx, 1, &gens, ModuleOrder::pot(mono))
    }

    /// Groebner basis of the ideal generated by `gens` (degrevlex).
    pub fn ideal_gb(ctx: &Ctx, gens: &[Polynomial<C>]) -> Self {
        Self::ideal(ctx, gens, OrderSpec::degrevlex()).groebner()
    }

    pub fn zero(ctx: &Ctx, rank: usize, order: ModuleOrder) -> Self {
        Submodule { ctx: ctx.clone(), rank, order, gens: vec![], groebner: true }
    }

    pub fn free(ctx: &Ctx, rank: usize, order: ModuleOrder) -> Self {
        let gens: Vec<_> = (0..rank).map(|i| ModElem::unit(ctx, rank, i)).collect();
        let mut s = Self::new(ctx, rank, &gens, order);
        s.groebner = true;
        s
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn is_groebner(&self) -> bool {
        self.groebner
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> Vec<ModElem<C>> {
        self.gens.iter().map(|g| ModElem::from_svec(g, &self.ctx, self.rank)).collect()
    }

    /// For rank one: the generators as polynomials.
    pub fn polys(&self) -> Vec<Polynomial<C>> {
        assert_eq!(self.rank, 1, "not an ideal");
        self.generators().into_iter().map(|g| g.comps.into_iter().next().unwrap()).collect()
    }

    /// Leading terms `(monomial, position)` of the generators.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.gens.iter().map(|g| (g.t[0].0.clone(), g.t[0].1)).collect()
    }

    pub fn groebner(&self) -> Self {
        if self.groebner {
            return self.clone();
        }
        Submodule {
            ctx: self.ctx.clone(),
            rank: self.rank,
            order: self.order.clone(),
            gens: buchberger::groebner(self.gens.clone(), &self.order, self.rank),
            groebner: true,
        }
    }

    /// The same submodule under another order.
    pub fn with_order(&self, order: ModuleOrder) -> Self {
        Submodule::new(&self.ctx, self.rank, &self.generators(), order)
    }

    /// Checks every S-pair: used to validate bases handed in from outside.
    pub fn verify_groebner(&self) -> bool {
        buchberger::is_groebner(&self.gens, &self.order)
    }

    fn require_gb(&self) -> Result<()> {
        if self.groebner {
            Ok(())
        } else {
            Err(Error::NotGroebner)
        }
    }

    pub fn normal_form(&self, m: &ModElem<C>) -> Result<ModElem<C>> {
        self.require_gb()?;
        let d = buchberger::reduce(m.to_svec(&self.order), &self.gens, &self.order, true, false, None);
        Ok(ModElem::from_svec(&d.remainder, &self.ctx, self.rank))
    }

    pub fn normal_form_poly(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        Ok(self.normal_form(&ModElem::scalar(p.clone()))?.comps.remove(0))
    }

    pub fn membership(&self, m: &ModElem<C>) -> Result<Certificate<C>> {
        self.require_gb()?;
        let d = buchberger::reduce(m.to_svec(&self.order), &self.gens, &self.order, true, true, None);
        let cofactors = d
            .quotients
            .unwrap()
            .into_iter()
            .map(|q| Polynomial::from_terms(&self.ctx, q))
            .collect();
        Ok(Certificate { cofactors, remainder: ModElem::from_svec(&d.remainder, &self.ctx, self.rank) })
    }

    pub fn contains(&self, m: &ModElem<C>) -> bool {
        let gb = self.groebner();
        let d = buchberger::reduce(m.to_svec(&gb.order), &gb.gens, &gb.order, false, false, None);
        d.remainder.is_zero()
    }

    pub fn contains_poly(&self, p: &Polynomial<C>) -> bool {
        self.contains(&ModElem::scalar(p.clone()))
    }

    pub fn contains_all(&self, other: &Self) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn same_module(&self, other: &Self) -> bool {
        self.contains_all(other) && other.contains_all(self)
    }

    /// True iff the submodule is the whole free module.
    pub fn is_whole(&self) -> bool {
        let gb = self.groebner();
        (0..self.rank).all(|p| gb.gens.iter().any(|g| g.t[0].1 == p && g.t[0].0.is_one()))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut gens = self.generators();
        gens.extend(other.generators());
        Submodule::new(&self.ctx, self.rank, &gens, self.order.clone())
    }

    pub fn add_generators(&self, extra: &[ModElem<C>]) -> Self {
        let mut gens = self.generators();
        gens.extend(extra.iter().cloned());
        Submodule::new(&self.ctx, self.rank, &gens, self.order.clone())
    }

    /// Text form, one generator per line.
    pub fn to_text(&self) -> String {
        self.generators().iter().map(|g| format!("{g}\n")).collect()
    }
}

impl<C: Field> fmt::Debug for Submodule<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule(rank {}, {:?}) [", self.rank, self.ctx)?;
        for g in self.generators() {
            write!(f, "{g}; ")?;
        }
        write!(f, "]")
    }
}
