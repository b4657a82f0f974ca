use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::forms::{MeroForm, PolyMap, Smoothness, Space, SpaceRef};
use crate::groebner::{Certificate, ModElem, Submodule};
use crate::poly::{Field, Poly, Rational, VarContext};

/// A chart of a modification of a root space: its own space, the map to
/// its parent and the composed map to the root.
#[derive(Debug)]
pub struct Chart {
    name: String,
    parent: Option<String>,
    space: SpaceRef,
    local: PolyMap,
    total: PolyMap,
    exceptional: Vec<Poly>,
    depth: usize,
    tau: Vec<OnceLock<Submodule<Rational>>>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    fn assemble(name: String, parent: Option<&Chart>, space: SpaceRef, local: PolyMap, exceptional: Vec<Poly>) -> Result<Self> {
        let total = match parent {
            Some(p) => p.total.after(&local)?,
            None => local.clone(),
        };
        let tau = (0..=space.dim_ambient()).map(|_| OnceLock::new()).collect();
        Ok(Chart {
            name,
            parent: parent.map(|p| p.name.clone()),
            depth: parent.map_or(0, |p| p.depth + 1),
            space,
            local,
            total,
            exceptional,
            tau,
        })
    }

    /// The identity chart of a space.
    pub fn root(space: &SpaceRef) -> Self {
        let id = PolyMap::identity(space);
        Self::assemble(space.name().to_string(), None, space.clone(), id, vec![]).expect("identity composes")
    }

    /// A chart given explicitly: `images` expresses the parent coordinates
    /// in the chart coordinates. Checks that the chart ideal is the strict
    /// transform, the parent ideal pulled back and saturated by the
    /// exceptional equations.
    pub fn declared(name: &str, parent: &Chart, space: &SpaceRef, images: Vec<Poly>, exceptional: Vec<Poly>) -> Result<Self> {
        let local = PolyMap::new(space, &parent.space, images)?;
        let pulled: Vec<Poly> = parent.space.equations().iter().map(|f| local.pull_poly(f)).collect();
        let mut strict = Submodule::ideal(space.ctx(), &pulled, space.order().clone()).groebner();
        let mut exc: Vec<Poly> = parent.exceptional.iter().map(|e| local.pull_poly(e)).collect();
        exc.extend(exceptional.iter().cloned());
        for e in &exc {
            if e.is_zero() {
                return Err(Error::InvalidMap(format!("exceptional equation of `{name}` vanishes identically")));
            }
            strict = strict.saturate(e);
        }
        if !strict.same_module(space.ideal()) {
            return Err(Error::InvalidMap(format!(
                "equations of `{name}` are not the strict transform of `{}`",
                parent.name
            )));
        }
        Self::assemble(name.to_string(), Some(parent), space.clone(), local, exc)
    }

    /// A chart of an arbitrary modification: only the map is checked.
    pub fn modification(name: &str, parent: &Chart, space: &SpaceRef, images: Vec<Poly>, exceptional: Vec<Poly>) -> Result<Self> {
        let local = PolyMap::new(space, &parent.space, images)?;
        Self::assemble(name.to_string(), Some(parent), space.clone(), local, exceptional)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parent(&self) -> Option<&str> {
        self.parent.as_deref()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    /// Map to the parent chart.
    pub fn local_map(&self) -> &PolyMap {
        &self.local
    }

    /// Map to the root space.
    pub fn total_map(&self) -> &PolyMap {
        &self.total
    }

    pub fn root_space(&self) -> &SpaceRef {
        self.total.target()
    }

    pub fn exceptional(&self) -> &[Poly] {
        &self.exceptional
    }

    pub fn is_smooth(&self) -> Smoothness {
        self.space.smoothness()
    }

    fn require_smooth(&self) -> Result<()> {
        match self.is_smooth() {
            Smoothness::Smooth => Ok(()),
            s => Err(Error::Unresolved(format!("chart `{}` is not certified smooth ({s:?})", self.name))),
        }
    }

    /// The image of the pulled-back `p`-forms of the root in the chart's
    /// forms modulo torsion: pull-backs of every `dx^H` plus the chart's
    /// saturated relations.
    pub fn tau_module(&self, p: usize) -> Result<&Submodule<Rational>> {
        self.require_smooth()?;
        self.space.check_degree(p)?;
        if let Some(m) = self.tau[p].get() {
            return Ok(m);
        }
        let root = self.root_space();
        let sat = self.space.torsion_relations(p)?;
        let mut gens: Vec<ModElem<Rational>> = Vec::new();
        if p <= root.dim_ambient() {
            for h in root.subsets(p).lists() {
                let w = self.total.pullback_form(&MeroForm::basis(root, &h))?;
                gens.push(w.numerator_elem());
            }
        }
        let m = sat.add_generators(&gens).groebner();
        Ok(self.tau[p].get_or_init(|| m))
    }

    /// `den * T + R^sat` for the tau module `T` in degree `p`.
    pub fn tau_pole_module(&self, p: usize, den: &Poly) -> Result<Submodule<Rational>> {
        let tau = self.tau_module(p)?;
        if den.is_constant() {
            return Ok(tau.clone());
        }
        let sat = self.space.torsion_relations(p)?;
        let scaled: Vec<ModElem<Rational>> =
            tau.generators().iter().filter(|g| !sat.contains(g)).map(|g| g.mul_poly(den)).collect();
        Ok(sat.add_generators(&scaled).groebner())
    }

    /// Pulls a root form back and tests membership in the tau module:
    /// the numerator must lie in `den * T + R^sat`.
    pub fn in_tau_star(&self, w: &MeroForm) -> Result<(bool, Certificate<Rational>)> {
        let v = self.total.pullback_form(w)?;
        let m = self.tau_pole_module(v.degree(), v.den())?;
        let cert = m.membership(&v.numerator_elem())?;
        Ok((cert.is_member(), cert))
    }

    /// Blow-up chart where `center[pos]` stays and the other center
    /// variables `u` become `v * u'`.
    pub fn blowup_chart(&self, center: &[usize], pos: usize) -> Result<Chart> {
        let ctx = self.space.ctx();
        let v = center[pos];
        let mut names: Vec<String> = ctx.names().to_vec();
        for (i, &u) in center.iter().enumerate() {
            if i == pos {
                continue;
            }
            let want = char::from(b'a' + (i as u8 % 26)).to_string();
            let clash = names.iter().enumerate().any(|(j, n)| j != u && *n == want);
            names[u] = if clash { ctx.fresh_name(&want, &names) } else { want };
        }
        let cctx = VarContext::new(&names)?;
        let vv = Poly::var(&cctx, v);
        let images: Vec<Poly> = (0..ctx.len())
            .map(|i| {
                let x = Poly::var(&cctx, i);
                if center.contains(&i) && i != v {
                    &x * &vv
                } else {
                    x
                }
            })
            .collect();
        let mut eqs: Vec<Poly> = Vec::new();
        for f in self.space.equations() {
            let mut g = f.substitute(&images);
            while let Some(q) = g.div_exact(&vv) {
                if q.is_zero() {
                    break;
                }
                g = q;
            }
            eqs.push(g);
        }
        let chart_name = format!("{}_{}", self.name, ctx.name(v));
        if eqs.len() > 1 {
            let ideal = Submodule::ideal(&cctx, &eqs, self.space.order().clone()).saturate(&vv);
            eqs = ideal.polys();
        }
        if eqs.iter().any(|e| e.is_constant() && !e.is_zero()) {
            return Err(Error::EmptyStrictTransform(format!("chart `{chart_name}`")));
        }
        let mut exc: Vec<Poly> = self.exceptional.iter().map(|e| e.substitute(&images)).collect();
        exc.push(vv);
        let (cctx, images, eqs, exc) = eliminate_linear(cctx, images, eqs, exc);
        let space = Space::new(&chart_name, &cctx, eqs, None)?;
        let local = PolyMap::new(&space, &self.space, images)?;
        Self::assemble(chart_name, Some(self), space, local, exc)
    }

    /// All charts of the blow-up along the coordinate subspace `center`.
    /// Charts missing the strict transform are skipped.
    pub fn blowup_point(&self, center: &[&str]) -> Result<Vec<Chart>> {
        let ctx = self.space.ctx();
        let idx: Vec<usize> = center.iter().map(|c| ctx.var(c)).collect::<Result<_>>()?;
        if idx.is_empty() {
            return Err(Error::InvalidInput("empty center".into()));
        }
        let mut out = Vec::new();
        for pos in 0..idx.len() {
            match self.blowup_chart(&idx, pos) {
                Ok(c) => out.push(c),
                Err(Error::EmptyStrictTransform(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        if out.is_empty() {
            return Err(Error::EmptyStrictTransform(format!("center {center:?} misses `{}`", self.name)));
        }
        Ok(out)
    }
}

/// Repeatedly removes a variable occurring in some equation as `c w + g`
/// with `c` constant and `g` free of `w`.
fn eliminate_linear(
    mut ctx: crate::poly::Ctx,
    mut images: Vec<Poly>,
    mut eqs: Vec<Poly>,
    mut exc: Vec<Poly>,
) -> (crate::poly::Ctx, Vec<Poly>, Vec<Poly>, Vec<Poly>) {
    loop {
        let found = eqs.iter().enumerate().find_map(|(k, e)| {
            (0..ctx.len()).find_map(|w| {
                let c = e.coeffs_in(w);
                (c.len() == 2 && c[1].is_constant()).then(|| (k, w, c))
            })
        });
        let Some((k, w, c)) = found else { break };
        let value = -&c[0].scale(&Field::inv(&c[1].constant_value().unwrap()));
        let n = ctx.len();
        let names: Vec<String> = (0..n).filter(|&i| i != w).map(|i| ctx.name(i).to_string()).collect();
        let small = VarContext::new(&names).expect("subset of valid names");
        let mut sub: Vec<Poly> = Vec::with_capacity(n);
        let mut j = 0;
        for i in 0..n {
            if i == w {
                sub.push(Poly::zero(&small));
            } else {
                sub.push(Poly::var(&small, j));
                j += 1;
            }
        }
        sub[w] = value.substitute(&sub);
        images = images.iter().map(|p| p.substitute(&sub)).collect();
        exc = exc.iter().map(|p| p.substitute(&sub)).collect();
        eqs = eqs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, e)| e.substitute(&sub))
            .filter(|e| !e.is_zero())
            .collect();
        ctx = small;
    }
    (ctx, images, eqs, exc)
}
