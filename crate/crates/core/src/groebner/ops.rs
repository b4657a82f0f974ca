use serde::Serialize;

use super::{ModElem, Submodule};
use crate::poly::{Ctx, Field, ModuleOrder, Monomial, OrderSpec, Polynomial, VarContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VDim {
    Finite(u64),
    Infinite,
}

impl<C: Field> Submodule<C> {
    /// `N : g = { m : g m in N }`, via a Groebner basis of
    /// `{(g e_i, e_i)} + {(n, 0)}` in a position-over-term order on twice
    /// the rank.
    pub fn colon(&self, g: &Polynomial<C>) -> Self {
        let r = self.rank;
        let ctx = &self.ctx;
        if g.is_zero() {
            return Submodule::free(ctx, r, self.order.clone());
        }
        let mut gens = Vec::new();
        for i in 0..r {
            let mut c = vec![Polynomial::zero(ctx); 2 * r];
            c[i] = g.clone();
            c[r + i] = Polynomial::one(ctx);
            gens.push(ModElem::new(c));
        }
        for n in self.generators() {
            let mut c = n.into_comps();
            c.extend(std::iter::repeat_n(Polynomial::zero(ctx), r));
            gens.push(ModElem::new(c));
        }
        let big = Submodule::new(ctx, 2 * r, &gens, ModuleOrder::pot(self.order.mono.clone())).groebner();
        let out: Vec<ModElem<C>> = big
            .generators()
            .into_iter()
            .filter(|e| e.comps[..r].iter().all(Polynomial::is_zero))
            .map(|e| ModElem::new(e.comps[r..].to_vec()))
            .collect();
        Submodule::new(ctx, r, &out, self.order.clone()).groebner()
    }

    /// The ideal `{ h : h m in N }`.
    pub fn colon_elem(&self, m: &ModElem<C>) -> Submodule<C> {
        let r = self.rank;
        let ctx = &self.ctx;
        let mut c = m.comps.clone();
        c.push(Polynomial::one(ctx));
        let mut gens = vec![ModElem::new(c)];
        for n in self.generators() {
            let mut c = n.into_comps();
            c.push(Polynomial::zero(ctx));
            gens.push(ModElem::new(c));
        }
        let big = Submodule::new(ctx, r + 1, &gens, ModuleOrder::pot(self.order.mono.clone())).groebner();
        let out: Vec<Polynomial<C>> = big
            .generators()
            .into_iter()
            .filter(|e| e.comps[..r].iter().all(Polynomial::is_zero))
            .map(|e| e.comps[r].clone())
            .collect();
        Submodule::ideal(ctx, &out, self.order.mono.clone()).groebner()
    }

    /// `N : g^inf` by iterated colon until the module stops growing.
    pub fn saturate(&self, g: &Polynomial<C>) -> Self {
        let mut cur = self.groebner();
        loop {
            let next = cur.colon(g);
            if cur.contains_all(&next) {
                return cur;
            }
            cur = next;
        }
    }

    /// `N : g^inf` by adjoining `w` with `1 - w g` and eliminating `w`.
    pub fn saturate_extra_var(&self, g: &Polynomial<C>) -> Self {
        let r = self.rank;
        let n = self.ctx.len();
        let w = self.ctx.fresh_name("w", &[]);
        let mut names: Vec<String> = self.ctx.names().to_vec();
        names.push(w);
        let big_ctx = VarContext::new(&names).expect("fresh name is valid");
        let map: Vec<usize> = (0..n).collect();
        let lift = |p: &Polynomial<C>| p.embed(&big_ctx, &map);
        let wg = &Polynomial::var(&big_ctx, n) * &lift(g);
        let one_minus = &Polynomial::one(&big_ctx) - &wg;
        let mut gens: Vec<ModElem<C>> =
            self.generators().iter().map(|e| ModElem::new(e.comps.iter().map(lift).collect())).collect();
        for i in 0..r {
            let mut c = vec![Polynomial::zero(&big_ctx); r];
            c[i] = one_minus.clone();
            gens.push(ModElem::new(c));
        }
        let ord = ModuleOrder::pot(OrderSpec::eliminating(&[n], n + 1));
        let big = Submodule::new(&big_ctx, r, &gens, ord).groebner();
        let back: Vec<usize> = (0..n).collect();
        let out: Vec<ModElem<C>> = big
            .generators()
            .into_iter()
            .filter(|e| e.comps.iter().all(|p| !p.involves(n)))
            .map(|e| ModElem::new(e.comps.iter().map(|p| restrict(p, &self.ctx, &back)).collect()))
            .collect();
        Submodule::new(&self.ctx, r, &out, self.order.clone()).groebner()
    }

    /// Number of standard monomials (times basis symbols) of the quotient.
    pub fn vspace_dimension(&self) -> VDim {
        let gb = self.groebner();
        let n = self.ctx.len();
        let leads = gb.leading_terms();
        let mut total = 0u64;
        for p in 0..self.rank {
            let lp: Vec<&Monomial> = leads.iter().filter(|(_, q)| *q == p).map(|(m, _)| m).collect();
            if lp.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = Vec::with_capacity(n);
            for v in 0..n {
                let pure = lp
                    .iter()
                    .filter(|m| (0..n).all(|u| u == v || m.exp(u) == 0))
                    .map(|m| m.exp(v))
                    .min();
                match pure {
                    Some(e) => bounds.push(e),
                    None => return VDim::Infinite,
                }
            }
            let mut cur = Monomial::one(n);
            total += count_standard(&lp, &bounds, &mut cur, 0);
        }
        VDim::Finite(total)
    }
}

fn count_standard(leads: &[&Monomial], bounds: &[u32], cur: &mut Monomial, v: usize) -> u64 {
    if v == bounds.len() {
        return u64::from(!leads.iter().any(|m| m.divides(cur)));
    }
    let mut total = 0;
    for e in 0..bounds[v] {
        cur.0[v] = e;
        // prune: if the partial monomial (with zeros after v) is already a
        // multiple of a leading term, so are all its extensions
        if leads.iter().any(|m| m.divides(cur)) {
            break;
        }
        total += count_standard(leads, bounds, cur, v + 1);
    }
    cur.0[v] = 0;
    total
}

fn restrict<C: Field>(p: &Polynomial<C>, ctx: &Ctx, keep: &[usize]) -> Polynomial<C> {
    let mut out = Polynomial::zero(ctx);
    for (m, c) in p.terms() {
        out.add_term(Monomial(keep.iter().map(|&v| m.exp(v)).collect()), c.clone());
    }
    out
}

/// `I` intersected with the subring without the variables in `elim`,
/// returned as a Groebner basis (degrevlex) in the same context.
pub fn eliminate<C: Field>(ctx: &Ctx, gens: &[Polynomial<C>], elim: &[usize]) -> Submodule<C> {
    let n = ctx.len();
    let ord = OrderSpec::eliminating(elim, n);
    let gb = Submodule::ideal(ctx, gens, ord.clone()).groebner();
    let kept: Vec<Polynomial<C>> =
        gb.polys().into_iter().filter(|p| elim.iter().all(|&v| !p.involves(v))).collect();
    Submodule::ideal(ctx, &kept, OrderSpec::degrevlex()).groebner()
}

/// Krull dimension of `R / I` for an ideal `I`, `None` if `I` is the unit
/// ideal. Uses maximal subsets of variables independent modulo the
/// leading-term ideal.
pub fn krull_dimension<C: Field>(ideal: &Submodule<C>) -> Option<usize> {
    assert_eq!(ideal.rank(), 1);
    let gb = if ideal.order().mono.kind == crate::poly::OrderKind::DegRevLex { ideal.groebner() } else {
        ideal.with_order(ModuleOrder::default()).groebner()
    };
    let leads: Vec<Monomial> = gb.leading_terms().into_iter().map(|(m, _)| m).collect();
    if leads.iter().any(Monomial::is_one) {
        return None;
    }
    let n = ideal.ctx().len();
    let supports: Vec<u64> = leads
        .iter()
        .map(|m| (0..n).filter(|&v| m.exp(v) > 0).fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Some(best)
}
