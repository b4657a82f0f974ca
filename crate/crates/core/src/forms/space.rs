use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::subsets::Subsets;
use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, ModElem, Submodule};
use crate::poly::{gcd, is_squarefree, Ctx, ModuleOrder, OrderSpec, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Smoothness {
    Smooth,
    Singular,
    Unknown,
}

/// An affine variety: ambient coordinates and a reduced defining ideal.
pub struct Space {
    name: String,
    ctx: Ctx,
    eqs: Vec<Poly>,
    nzd: Poly,
    order: OrderSpec,
    ideal: OnceLock<Submodule<Rational>>,
    smooth: OnceLock<Smoothness>,
    relations: Vec<OnceLock<Submodule<Rational>>>,
    saturated: Vec<OnceLock<Submodule<Rational>>>,
    subsets: Vec<OnceLock<Arc<Subsets>>>,
}

pub type SpaceRef = Arc<Space>;

impl std::fmt::Debug for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Space {} {:?} {:?}", self.name, self.ctx, self.eqs)
    }
}

impl Space {
    /// Validates the equations (non-zero, squarefree, not the unit ideal)
    /// and picks or checks the non-zero-divisor used for torsion.
    pub fn new(name: &str, ctx: &Ctx, eqs: Vec<Poly>, nzd: Option<Poly>) -> Result<SpaceRef> {
        Self::with_order(name, ctx, eqs, nzd, OrderSpec::degrevlex())
    }

    pub fn with_order(name: &str, ctx: &Ctx, eqs: Vec<Poly>, nzd: Option<Poly>, order: OrderSpec) -> Result<SpaceRef> {
        let mut clean = Vec::new();
        for e in eqs {
            if e.is_zero() {
                continue;
            }
            if !crate::poly::same_ctx(e.ctx(), ctx) {
                return Err(Error::ContextMismatch(format!("equation {e} of `{name}`")));
            }
            if !is_squarefree(&e)? {
                return Err(Error::InvalidInput(format!("equation {e} of `{name}` is not squarefree")));
            }
            clean.push(e);
        }
        let n = ctx.len();
        let space = Space {
            name: name.to_string(),
            ctx: ctx.clone(),
            eqs: clean,
            nzd: Poly::one(ctx),
            order,
            ideal: OnceLock::new(),
            smooth: OnceLock::new(),
            relations: (0..=n).map(|_| OnceLock::new()).collect(),
            saturated: (0..=n).map(|_| OnceLock::new()).collect(),
            subsets: (0..=n).map(|_| OnceLock::new()).collect(),
        };
        if space.ideal().is_whole() {
            return Err(Error::InvalidInput(format!("`{name}` is empty: its ideal is the unit ideal")));
        }
        let nzd = match nzd {
            Some(g) => {
                if !space.is_nonzerodivisor(&g) {
                    return Err(Error::ZeroDivisor(format!("{g} on `{name}`")));
                }
                g
            }
            None => space.default_nzd()?,
        };
        Ok(Arc::new(Space { nzd, ..space }))
    }

    /// Affine space with no equations.
    pub fn affine(name: &str, ctx: &Ctx) -> SpaceRef {
        Self::new(name, ctx, vec![], None).expect("affine space is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn dim_ambient(&self) -> usize {
        self.ctx.len()
    }

    pub fn equations(&self) -> &[Poly] {
        &self.eqs
    }

    pub fn nzd(&self) -> &Poly {
        &self.nzd
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn module_order(&self) -> ModuleOrder {
        ModuleOrder::pot(self.order.clone())
    }

    pub fn is_hypersurface(&self) -> bool {
        self.eqs.len() == 1
    }

    pub fn poly(&self, text: &str) -> Result<Poly> {
        Poly::parse(&self.ctx, text)
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        Poly::var_named(&self.ctx, name)
    }

    pub fn ideal(&self) -> &Submodule<Rational> {
        self.ideal.get_or_init(|| Submodule::ideal(&self.ctx, &self.eqs, self.order.clone()).groebner())
    }

    pub fn subsets(&self, p: usize) -> Arc<Subsets> {
        self.subsets[p].get_or_init(|| Arc::new(Subsets::new(self.ctx.len(), p))).clone()
    }

    pub fn check_degree(&self, p: usize) -> Result<()> {
        if p > self.ctx.len() {
            Err(Error::DegreeOutOfRange { p, n: self.ctx.len() })
        } else {
            Ok(())
        }
    }

    /// `g` is a non-zero-divisor modulo the ideal. For a hypersurface this
    /// is coprimality with the equation; otherwise `I : g = I`.
    pub fn is_nonzerodivisor(&self, g: &Poly) -> bool {
        if g.is_zero() {
            return false;
        }
        match self.eqs.len() {
            0 => true,
            1 => gcd(g, &self.eqs[0]).is_constant(),
            _ => {
                let i = self.ideal();
                i.contains_all(&i.colon(g))
            }
        }
    }

    fn default_nzd(&self) -> Result<Poly> {
        if self.eqs.is_empty() {
            return Ok(Poly::one(&self.ctx));
        }
        let n = self.ctx.len();
        let mut candidates: Vec<Poly> = Vec::new();
        if self.eqs.len() == 1 {
            let f = &self.eqs[0];
            candidates.extend((0..n).map(|v| f.derivative(v)).filter(|d| !d.is_zero()));
            let mut mix = Poly::zero(&self.ctx);
            for (k, d) in (0..n).map(|v| f.derivative(v)).enumerate() {
                mix = mix + d.scale(&Rational::from_integer((k as i64 + 1).into()));
            }
            candidates.push(mix);
        } else {
            let c = self.codim();
            candidates.extend(self.jacobian_minors(c));
        }
        candidates
            .into_iter()
            .find(|g| !g.is_zero() && !self.ideal().contains_poly(g) && self.is_nonzerodivisor(g))
            .ok_or_else(|| Error::ZeroDivisor(format!("no default non-zero-divisor found on `{}`; declare one with `nzd`", self.name)))
    }

    /// Codimension of the space in its ambient affine space.
    pub fn codim(&self) -> usize {
        let d = krull_dimension(self.ideal()).expect("space is non-empty");
        self.ctx.len() - d
    }

    /// All `c x c` minors of the Jacobian of the equations.
    pub fn jacobian_minors(&self, c: usize) -> Vec<Poly> {
        let n = self.ctx.len();
        if c == 0 {
            return vec![Poly::one(&self.ctx)];
        }
        let jac: Vec<Vec<Poly>> = self.eqs.iter().map(|f| (0..n).map(|v| f.derivative(v)).collect()).collect();
        let rows = Subsets::new(self.eqs.len(), c);
        let cols = Subsets::new(n, c);
        let mut out = Vec::new();
        for r in rows.lists() {
            for cl in cols.lists() {
                let m: Vec<Vec<Poly>> = r.iter().map(|&i| cl.iter().map(|&j| jac[i][j].clone()).collect()).collect();
                let d = crate::poly::determinant(m);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Jacobian criterion: smooth iff the ideal plus the maximal minors is
    /// the unit ideal. Singular only with the origin as a rational witness.
    pub fn smoothness(&self) -> Smoothness {
        *self.smooth.get_or_init(|| {
            if self.eqs.is_empty() {
                return Smoothness::Smooth;
            }
            let c = self.codim();
            let mut gens = self.eqs.clone();
            gens.extend(self.jacobian_minors(c));
            let sing = Submodule::ideal(&self.ctx, &gens, self.order.clone()).groebner();
            if sing.is_whole() {
                return Smoothness::Smooth;
            }
            let origin = vec![Rational::from_integer(0.into()); self.ctx.len()];
            if gens.iter().all(|g| g.eval(&origin) == Rational::from_integer(0.into())) {
                Smoothness::Singular
            } else {
                Smoothness::Unknown
            }
        })
    }

    /// Generators of `R_p`: `f dx^H` for every equation `f` and `df ^ dx^K`.
    pub fn relation_generators(&self, p: usize) -> Result<Vec<ModElem<Rational>>> {
        self.check_degree(p)?;
        let subs = self.subsets(p);
        let rank = subs.len();
        let n = self.ctx.len();
        let mut gens = Vec::new();
        for f in &self.eqs {
            for h in 0..rank {
                let mut c = vec![Poly::zero(&self.ctx); rank];
                c[h] = f.clone();
                gens.push(ModElem::new(c));
            }
        }
        if p >= 1 {
            let lower = self.subsets(p - 1);
            for f in &self.eqs {
                let df: Vec<Poly> = (0..n).map(|v| f.derivative(v)).collect();
                for &k in lower.masks() {
                    let mut c = vec![Poly::zero(&self.ctx); rank];
                    for (j, d) in df.iter().enumerate() {
                        if d.is_zero() || k & (1 << j) != 0 {
                            continue;
                        }
                        let sign = (k & ((1u64 << j) - 1)).count_ones() % 2 == 1;
                        let idx = subs.index(k | (1 << j));
                        c[idx] = if sign { &c[idx] - d } else { &c[idx] + d };
                    }
                    let e = ModElem::new(c);
                    if !e.is_zero() {
                        gens.push(e);
                    }
                }
            }
        }
        Ok(gens)
    }

    /// Groebner basis of the relation module `R_p` presenting the p-forms.
    pub fn omega_relations(&self, p: usize) -> Result<&Submodule<Rational>> {
        self.check_degree(p)?;
        if let Some(r) = self.relations[p].get() {
            return Ok(r);
        }
        let gens = self.relation_generators(p)?;
        let rank = self.subsets(p).len();
        Ok(self.relations[p]
            .get_or_init(|| Submodule::new(&self.ctx, rank, &gens, self.module_order()).groebner()))
    }

    /// Groebner basis of `R_p : g^inf`, which presents the p-forms modulo
    /// torsion. Smooth spaces have torsion-free forms, so nothing is done.
    pub fn torsion_relations(&self, p: usize) -> Result<&Submodule<Rational>> {
        self.check_degree(p)?;
        if let Some(r) = self.saturated[p].get() {
            return Ok(r);
        }
        let r = self.omega_relations(p)?;
        Ok(self.saturated[p].get_or_init(|| {
            if self.nzd.is_constant() || self.smoothness() == Smoothness::Smooth {
                r.clone()
            } else {
                r.saturate(&self.nzd)
            }
        }))
    }

    /// `den * F + R_p^sat`: numerators of `p`-forms with denominator `den`
    /// that are holomorphic modulo torsion.
    pub fn pole_module(&self, p: usize, den: &Poly) -> Result<Submodule<Rational>> {
        let sat = self.torsion_relations(p)?;
        if den.is_constant() {
            return Ok(Submodule::free(&self.ctx, sat.rank(), sat.order().clone()));
        }
        let rank = sat.rank();
        let extra: Vec<ModElem<Rational>> = (0..rank).map(|i| ModElem::unit(&self.ctx, rank, i).mul_poly(den)).collect();
        Ok(sat.add_generators(&extra).groebner())
    }

    /// Same module computed with the extra-variable method, for cross-checks.
    pub fn torsion_relations_extra_var(&self, p: usize) -> Result<Submodule<Rational>> {
        Ok(self.omega_relations(p)?.saturate_extra_var(&self.nzd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarContext;

    fn space(vars: &[&str], eqs: &[&str]) -> SpaceRef {
        let c = VarContext::new(vars).unwrap();
        let e = eqs.iter().map(|s| Poly::parse(&c, s).unwrap()).collect();
        Space::new("X", &c, e, None).unwrap()
    }

    #[test]
    fn rejects_bad_spaces() {
        let c = VarContext::new(&["x", "y"]).unwrap();
        assert!(Space::new("X", &c, vec![Poly::parse(&c, "x^2*y").unwrap()], None).is_err());
        assert!(Space::new("X", &c, vec![Poly::parse(&c, "3").unwrap()], None).is_err());
        let err = Space::new("X", &c, vec![Poly::parse(&c, "x*y").unwrap()], Some(Poly::parse(&c, "x").unwrap()));
        assert_eq!(err.unwrap_err().code(), "zero_divisor");
    }

    #[test]
    fn default_nonzerodivisors() {
        let s = space(&["x", "y", "z"], &["x*y - z^5"]);
        assert_eq!(s.nzd().to_string(), "y");
        // reducible node: the partials are zero divisors, their mix is not
        let node = space(&["x", "y"], &["x*y"]);
        assert_eq!(node.nzd().to_string(), "2*x + y");
    }

    #[test]
    fn relation_rows_of_a_surface() {
        let s = space(&["x", "y", "z"], &["x*y - z^3"]);
        let gens = s.relation_generators(1).unwrap();
        assert_eq!(gens.len(), 4);
        assert_eq!(gens[3].to_string(), "y*e0 + x*e1 + -3*z^2*e2");
        assert!(s.omega_relations(0).unwrap().same_module(s.ideal()));
        let a = space(&["x", "y"], &[]);
        assert!(a.omega_relations(1).unwrap().is_empty());
        assert!(s.omega_relations(4).is_err());
    }

    #[test]
    fn torsion_on_the_node() {
        let node = space(&["x", "y"], &["x*y"]);
        let xdy = ModElem::new(vec![Poly::zero(node.ctx()), node.poly("x").unwrap()]);
        assert!(!node.omega_relations(1).unwrap().contains(&xdy));
        assert!(node.torsion_relations(1).unwrap().contains(&xdy));
    }

    #[test]
    fn smoothness_certificates() {
        assert_eq!(space(&["a", "b"], &["a^3 + b^3 + 1"]).smoothness(), Smoothness::Smooth);
        assert_eq!(space(&["a", "b", "z"], &["a*b - z^2"]).smoothness(), Smoothness::Singular);
        assert_eq!(space(&["x", "c"], &[]).smoothness(), Smoothness::Smooth);
        assert_eq!(space(&["x", "y"], &["y^2 - (x - 1)^3"]).smoothness(), Smoothness::Unknown);
    }

    #[test]
    fn saturation_methods_agree_on_surface_forms() {
        let s = space(&["x", "y", "z"], &["x*y - z^3"]);
        for p in 0..=3 {
            let a = s.torsion_relations(p).unwrap();
            assert!(a.same_module(&s.torsion_relations_extra_var(p).unwrap()), "p = {p}");
            assert!(a.same_module(&a.saturate(s.nzd())));
        }
    }
}
