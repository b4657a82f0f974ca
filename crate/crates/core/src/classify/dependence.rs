use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{same_space, MeroForm, SpaceRef};
use crate::groebner::Submodule;
use crate::poly::{Ctx, OrderSpec, Poly, Rational, VarContext};
use crate::session::{eval_form, parse_expr, BinOp, Expr};

/// A relation `sum_j a_j W^(m-j) = 0` with `a_0` a non-zero constant and
/// `a_j` of degree `j` in the symbols `e_H` standing for `dx^H`, stored in
/// the ring of base variables, the `e_H` and `W`.
#[derive(Clone, Debug)]
pub struct DependenceRelation {
    name: String,
    space: SpaceRef,
    p: usize,
    m: u32,
    ctx: Ctx,
    num: Poly,
    den: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct DependenceReport {
    pub relation: String,
    pub holds: bool,
    pub degree: u32,
    /// Whether the saturated ideal was needed.
    pub saturated: bool,
    /// Normal form of the cleared relation; `0` when it holds.
    pub remainder: String,
}

enum Val {
    Form(MeroForm),
    Sym(Poly, Poly),
}

struct SymEval<'a> {
    space: &'a SpaceRef,
    p: usize,
    ctx: &'a Ctx,
    symbol: &'a str,
    named: &'a dyn Fn(&str) -> Option<MeroForm>,
}

fn lift(ctx: &Ctx, f: &Poly) -> Poly {
    let map: Vec<usize> = (0..f.nvars()).collect();
    f.embed(ctx, &map)
}

impl SymEval<'_> {
    fn n(&self) -> usize {
        self.space.dim_ambient()
    }

    fn w(&self) -> Poly {
        Poly::var(self.ctx, self.ctx.len() - 1)
    }

    fn to_sym(&self, v: Val, at: &Expr) -> Result<(Poly, Poly)> {
        match v {
            Val::Sym(a, b) => Ok((a, b)),
            Val::Form(f) if f.degree() == 0 => Ok((lift(self.ctx, &f.as_function_num()), lift(self.ctx, f.den()))),
            Val::Form(f) if f.degree() == self.p => {
                let mut s = Poly::zero(self.ctx);
                for (i, c) in f.numerator_elem().comps().iter().enumerate() {
                    if !c.is_zero() {
                        s = &s + &(&lift(self.ctx, c) * &Poly::var(self.ctx, self.n() + i));
                    }
                }
                Ok((s, lift(self.ctx, f.den())))
            }
            Val::Form(f) => Err(at.pos().error(format!("form of degree {} in a relation among {}-forms", f.degree(), self.p))),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Val> {
        Ok(match e {
            Expr::Name(s, _) if s == self.symbol => Val::Sym(self.w(), Poly::one(self.ctx)),
            Expr::Num(_) | Expr::Name(..) => Val::Form(eval_form(self.space, e, self.named)?),
            Expr::Neg(a) => match self.eval(a)? {
                Val::Form(f) => Val::Form(f.neg()),
                Val::Sym(a, b) => Val::Sym(-a, b),
            },
            Expr::Bin(op, a, b) => {
                let x = self.eval(a)?;
                if *op == BinOp::Caret {
                    if let Expr::Num(k) = b.as_ref() {
                        let k: u32 = k.try_into().map_err(|_| b.pos().error("exponent out of range"))?;
                        return Ok(match x {
                            Val::Form(f) if f.degree() == 0 || k == 1 => Val::Form(eval_form(self.space, e, self.named)?),
                            v => {
                                let (n, d) = self.to_sym(v, a)?;
                                Val::Sym(n.pow(k), d.pow(k))
                            }
                        });
                    }
                }
                let y = self.eval(b)?;
                match (op, x, y) {
                    (BinOp::Caret, Val::Form(f), Val::Form(g)) => Val::Form(f.wedge(&g)?),
                    (BinOp::Caret, ..) => return Err(b.pos().error("wedge of a symmetric product")),
                    (BinOp::Add | BinOp::Sub, Val::Form(f), Val::Form(g)) if f.degree() == g.degree() => {
                        Val::Form(if *op == BinOp::Add { f.add(&g)? } else { f.sub(&g)? })
                    }
                    (BinOp::Mul, Val::Form(f), Val::Form(g)) if f.degree() == 0 || g.degree() == 0 => {
                        Val::Form(if g.degree() == 0 { f.mul_function(&g)? } else { g.mul_function(&f)? })
                    }
                    (BinOp::Div, x, Val::Form(g)) => {
                        if g.degree() != 0 || g.is_zero() {
                            return Err(b.pos().error("can only divide by a non-zero function"));
                        }
                        let (gn, gd) = (lift(self.ctx, &g.as_function_num()), lift(self.ctx, g.den()));
                        match x {
                            Val::Form(f) => Val::Form(f.mul_poly(g.den()).div_poly(&g.as_function_num())?),
                            Val::Sym(n, d) => Val::Sym(&n * &gd, &d * &gn),
                        }
                    }
                    (BinOp::Div, ..) => return Err(b.pos().error("can only divide by a non-zero function")),
                    (op, x, y) => {
                        let (xn, xd) = self.to_sym(x, a)?;
                        let (yn, yd) = self.to_sym(y, b)?;
                        match op {
                            BinOp::Add => Val::Sym(&(&xn * &yd) + &(&yn * &xd), &xd * &yd),
                            BinOp::Sub => Val::Sym(&(&xn * &yd) - &(&yn * &xd), &xd * &yd),
                            _ => Val::Sym(&xn * &yn, &xd * &yd),
                        }
                    }
                }
            }
        })
    }
}

impl DependenceRelation {
    /// Builds the relation `expr = 0` of degree `m` satisfied by the
    /// `p`-form named `symbol`. Products of `p`-forms with `*` and powers
    /// of `p`-forms are symmetric products; `^` between forms is the wedge.
    pub fn new(
        name: &str,
        space: &SpaceRef,
        p: usize,
        symbol: &str,
        m: u32,
        expr: &Expr,
        named: &dyn Fn(&str) -> Option<MeroForm>,
    ) -> Result<Self> {
        space.check_degree(p)?;
        let base = space.ctx();
        let mut names: Vec<String> = base.names().to_vec();
        let fresh = |want: String, names: &[String]| if names.contains(&want) { base.fresh_name(&want, names) } else { want };
        for h in space.subsets(p).lists() {
            let parts: Vec<&str> = h.iter().map(|&i| base.name(i)).collect();
            let want = if parts.is_empty() { "e_".to_string() } else { format!("e_{}", parts.join("_")) };
            let n = fresh(want, &names);
            names.push(n);
        }
        let w = fresh("W".into(), &names);
        names.push(w);
        let ctx = VarContext::new(&names)?;
        let ev = SymEval { space, p, ctx: &ctx, symbol, named };
        let (num, den) = ev.to_sym(ev.eval(expr)?, expr)?;
        let rel = DependenceRelation { name: name.to_string(), space: space.clone(), p, m, ctx, num, den };
        rel.check_shape()?;
        Ok(rel)
    }

    /// Parses `text` as the left side of `... = 0`, the unknown being
    /// `sigma` under the name `symbol`.
    pub fn parse(name: &str, sigma: &MeroForm, symbol: &str, m: u32, text: &str) -> Result<Self> {
        let expr = parse_expr(text)?;
        DependenceRelation::new(name, sigma.space(), sigma.degree(), symbol, m, &expr, &|_| None)
    }

    fn symbolic(&self) -> std::ops::Range<usize> {
        self.space.dim_ambient()..self.ctx.len()
    }

    /// Every term has degree `m` in `W` and the `e_H`; the `W^m`
    /// coefficient is a non-zero constant.
    fn check_shape(&self) -> Result<()> {
        if self.num.is_zero() {
            return Ok(());
        }
        let sym = self.symbolic();
        for (mono, _) in self.num.terms() {
            let d: u32 = mono.exps()[sym.clone()].iter().sum();
            if d != self.m {
                return Err(Error::Inhomogeneous(format!(
                    "`{}` has a term of degree {d} in the unknown and the forms, expected {}",
                    self.name, self.m
                )));
            }
        }
        let top = self.num.coeffs_in(self.ctx.len() - 1);
        let lead = top.get(self.m as usize).and_then(|c| c.div_exact(&self.den)).filter(|c| c.is_constant() && !c.is_zero());
        if lead.is_none() {
            return Err(Error::Inhomogeneous(format!("`{}` is not monic of degree {} in the unknown", self.name, self.m)));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn form_degree(&self) -> usize {
        self.p
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    /// Coefficient `a_j` of `W^(m-j)`, as a polynomial in the base
    /// variables and the `e_H`, over the common denominator.
    pub fn coefficient(&self, j: u32) -> Poly {
        let c = self.num.coeffs_in(self.ctx.len() - 1);
        c.get((self.m - j) as usize).cloned().unwrap_or_else(|| Poly::zero(&self.ctx))
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        DependenceRelation { num: self.num.scale(c), ..self.clone() }
    }
}

/// Tests that `sigma` satisfies `rel` in the symmetric algebra of the
/// `p`-forms modulo torsion: with `sigma = N / g`, the polynomial
/// `sum_d c_d N^d g^(m-d)` must vanish modulo the equations and the
/// linear relations, saturated by the non-zero-divisors involved.
pub fn verify_dependence(sigma: &MeroForm, rel: &DependenceRelation) -> Result<DependenceReport> {
    if !same_space(sigma.space(), &rel.space) || sigma.degree() != rel.p {
        return Err(Error::ContextMismatch(format!(
            "{}-form on `{}` for a relation among {}-forms on `{}`",
            sigma.degree(),
            sigma.space().name(),
            rel.p,
            rel.space.name()
        )));
    }
    let ctx = &rel.ctx;
    let n = rel.space.dim_ambient();
    let e = |i: usize| Poly::var(ctx, n + i);
    let linear = |comps: &[Poly]| {
        comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Poly::zero(ctx), |s, (i, c)| &s + &(&lift(ctx, c) * &e(i)))
    };
    let big_n = linear(sigma.numerator_elem().comps());
    let g = lift(ctx, sigma.den());
    let coeffs = rel.num.coeffs_in(ctx.len() - 1);
    let mut cleared = Poly::zero(ctx);
    for (d, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            cleared = &cleared + &(&(c * &big_n.pow(d as u32)) * &g.pow(rel.m - d as u32));
        }
    }
    let mut gens: Vec<Poly> = rel.space.equations().iter().map(|f| lift(ctx, f)).collect();
    for row in rel.space.torsion_relations(rel.p)?.generators() {
        gens.push(linear(row.comps()));
    }
    let plain = Submodule::ideal(ctx, &gens, OrderSpec::degrevlex()).groebner();
    let rem = plain.normal_form_poly(&cleared)?;
    let report = |holds: bool, saturated: bool, rem: &Poly| DependenceReport {
        relation: rel.name.clone(),
        holds,
        degree: rel.m,
        saturated,
        remainder: rem.to_string(),
    };
    if rem.is_zero() {
        return Ok(report(true, false, &rem));
    }
    // Rabinowitsch: adjoin s with s h = 1
    let mut names = ctx.names().to_vec();
    let s_name = rel.space.ctx().fresh_name("s", &names);
    names.push(s_name);
    let sctx = VarContext::new(&names)?;
    let h = &(&lift(ctx, rel.space.nzd()) * &g) * &rel.den;
    let mut sgens: Vec<Poly> = gens.iter().map(|p| lift(&sctx, p)).collect();
    let s = Poly::var(&sctx, sctx.len() - 1);
    sgens.push(&Poly::one(&sctx) - &(&s * &lift(&sctx, &h)));
    let sat = Submodule::ideal(&sctx, &sgens, OrderSpec::degrevlex()).groebner();
    let srem = sat.normal_form_poly(&lift(&sctx, &cleared))?;
    Ok(report(srem.is_zero(), true, &srem))
}
