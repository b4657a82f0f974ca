use std::collections::BTreeMap;

use serde::Serialize;

use super::covering::Covering;
use crate::error::{Error, Result};
use crate::forms::{bits, same_space, wedge_sign, MeroForm, PolyMap, Space, SpaceRef};
use crate::poly::{Poly, Rational};

/// The linear change of coordinates `x_var -> x_var + c * x_by`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shear {
    pub var: usize,
    pub by: usize,
    pub c: i64,
}

const SHEAR_BUDGET: [i64; 6] = [1, -1, 2, -2, 3, -3];

/// A hypersurface presented as a `k`-sheeted branched covering of the
/// coordinate space of the non-fiber variables, possibly after a shear.
#[derive(Debug)]
pub struct MultiformGraph {
    space: SpaceRef,
    chart: SpaceRef,
    to_space: PolyMap,
    from_space: PolyMap,
    shear: Option<Shear>,
    cover: Covering<Rational>,
}

/// Outcome of the traced-holomorphy test.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaReport {
    pub member: bool,
    pub degree: usize,
    pub fiber: String,
    pub sheets: usize,
    pub shear: Option<String>,
    /// Traces found with a pole, as `z^j * <coefficient>` or `z^j dz * <coefficient>`.
    pub failures: Vec<String>,
    /// Set for `0 < p < n`, where only the generator family `z^j`, `z^j dz`
    /// is tested.
    pub criterion_as_implemented: bool,
}

fn monic_degree(f: &Poly, v: usize) -> Option<usize> {
    let c = f.coeffs_in(v);
    (c.len() >= 2 && c.last().unwrap().is_constant()).then(|| c.len() - 1)
}

impl MultiformGraph {
    /// Graph over the given fiber variable, or the first monic direction:
    /// variables from last to first, then shears with `|c| <= 3`.
    pub fn new(space: &SpaceRef, fiber: Option<usize>) -> Result<Self> {
        if !space.is_hypersurface() {
            return Err(Error::Unsupported(format!("`{}` is not a hypersurface", space.name())));
        }
        let f = &space.equations()[0];
        let n = space.dim_ambient();
        if let Some(v) = fiber {
            if monic_degree(f, v).is_none() {
                return Err(Error::NoMonicDirection(format!(
                    "{f} is not monic in `{}`",
                    space.ctx().name(v)
                )));
            }
            return Self::build(space, v, None);
        }
        if let Some(v) = (0..n).rev().find(|&v| monic_degree(f, v).is_some()) {
            return Self::build(space, v, None);
        }
        for c in SHEAR_BUDGET {
            for by in (0..n).rev() {
                for var in (0..n).filter(|&i| i != by) {
                    let s = Shear { var, by, c };
                    if monic_degree(&shear_poly(f, s), by).is_some() {
                        return Self::build(space, by, Some(s));
                    }
                }
            }
        }
        Err(Error::NoMonicDirection(format!("{f} within shears |c| <= 3")))
    }

    fn build(space: &SpaceRef, fiber: usize, shear: Option<Shear>) -> Result<Self> {
        let ctx = space.ctx();
        let (chart, to_space, from_space) = match shear {
            None => (space.clone(), PolyMap::identity(space), PolyMap::identity(space)),
            Some(s) => {
                let f = shear_poly(&space.equations()[0], s);
                let chart = Space::new(&format!("{}_sheared", space.name()), ctx, vec![f], None)?;
                let there = shear_images(ctx.len(), s, ctx);
                let back = shear_images(ctx.len(), Shear { c: -s.c, ..s }, ctx);
                (chart.clone(), PolyMap::new(&chart, space, there)?, PolyMap::new(space, &chart, back)?)
            }
        };
        let cover = Covering::new(&chart.equations()[0], fiber)?;
        Ok(MultiformGraph { space: space.clone(), chart, to_space, from_space, shear, cover })
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    /// The space in the coordinates where the equation is monic.
    pub fn chart(&self) -> &SpaceRef {
        &self.chart
    }

    pub fn shear(&self) -> Option<Shear> {
        self.shear
    }

    pub fn cover(&self) -> &Covering<Rational> {
        &self.cover
    }

    pub fn fiber_name(&self) -> &str {
        self.chart.ctx().name(self.cover.fiber())
    }

    pub fn sheets(&self) -> usize {
        self.cover.k()
    }

    pub fn describe_shear(&self) -> Option<String> {
        self.shear.map(|s| {
            let ctx = self.chart.ctx();
            format!("{} -> {} + {}*{}", ctx.name(s.var), ctx.name(s.var), s.c, ctx.name(s.by))
        })
    }

    /// A form on the space, in the monic coordinates.
    pub fn to_chart(&self, w: &MeroForm) -> Result<MeroForm> {
        self.to_space.pullback_form(w)
    }

    /// A form in the monic coordinates, back on the space.
    pub fn to_space(&self, w: &MeroForm) -> Result<MeroForm> {
        self.from_space.pullback_form(w)
    }

    /// Rewrites a form on the chart over the base differentials with
    /// `P' dz = -sum_h dP/dt_h dt_h`. Keys are masks of base variables.
    fn over_base(&self, w: &MeroForm) -> (BTreeMap<u64, Poly>, Poly) {
        let z = self.cover.fiber();
        let zm = 1u64 << z;
        let p = self.cover.p();
        let dp = self.cover.dp();
        let has_dz = w.numerators().keys().any(|h| h & zm != 0);
        let mut out: BTreeMap<u64, Poly> = BTreeMap::new();
        let mut push = |h: u64, t: Poly| {
            let e = out.entry(h).or_insert_with(|| Poly::zero(p.ctx()));
            *e = &*e + &t;
        };
        for (&h, c) in w.numerators() {
            if h & zm == 0 {
                push(h, if has_dz { c * dp } else { c.clone() });
                continue;
            }
            let k = h & !zm;
            let c = if wedge_sign(zm, k) { -c } else { c.clone() };
            for t in 0..self.chart.dim_ambient() {
                if t == z || k & (1 << t) != 0 {
                    continue;
                }
                let dpt = p.derivative(t);
                if dpt.is_zero() {
                    continue;
                }
                let term = &c * &dpt;
                push(k | (1 << t), if wedge_sign(1 << t, k) { term } else { -term });
            }
        }
        out.retain(|_, c| !c.is_zero());
        let den = if has_dz { w.den() * dp } else { w.den().clone() };
        (out, den)
    }

    /// Tests that every trace of `z^j w` and `z^j dz ^ w` is holomorphic on
    /// the base, `j < k`.
    pub fn omega_membership(&self, w: &MeroForm) -> Result<OmegaReport> {
        if !same_space(w.space(), &self.space) {
            return Err(Error::ContextMismatch(format!(
                "form on `{}`, graph of `{}`",
                w.space().name(),
                self.space.name()
            )));
        }
        let v = self.to_chart(w)?;
        let q = v.degree();
        let nbase = self.chart.dim_ambient() - 1;
        let mut families = vec![("", v.clone())];
        if q < self.chart.dim_ambient() {
            families.push(("dz ", MeroForm::dvar(&self.chart, self.cover.fiber()).wedge(&v)?));
        }
        let mut failures = Vec::new();
        for (label, form) in families {
            let (num, den) = self.over_base(&form);
            if num.is_empty() {
                continue;
            }
            let (a, norm) = self.cover.norm_inverse(&den);
            for (h, c) in &num {
                let mut vec = self.cover.rem(&(c * &a));
                for j in 0..self.cover.k() {
                    let t = self.cover.trace_vec(&vec);
                    if !norm.is_constant() && !t.is_zero() && t.div_exact(&norm).is_none() {
                        failures.push(format!("z^{j} {label}* {}", self.mask_text(*h)));
                    }
                    self.cover.mul_z(&mut vec);
                }
            }
        }
        Ok(OmegaReport {
            member: failures.is_empty(),
            degree: q,
            fiber: self.fiber_name().to_string(),
            sheets: self.cover.k(),
            shear: self.describe_shear(),
            failures,
            criterion_as_implemented: q > 0 && q < nbase,
        })
    }

    fn mask_text(&self, h: u64) -> String {
        if h == 0 {
            return "1".into();
        }
        let ctx = self.chart.ctx();
        bits(h).iter().map(|&i| format!("d{}", ctx.name(i))).collect::<Vec<_>>().join("^")
    }

    /// `z^j / P' dt_1 ^ ... ^ dt_n` for `j < k`, on the original space.
    pub fn omega_top_generators(&self) -> Result<Vec<MeroForm>> {
        let z = self.cover.fiber();
        let base: Vec<usize> = (0..self.chart.dim_ambient()).filter(|&i| i != z).collect();
        let top = MeroForm::basis(&self.chart, &base);
        let zv = Poly::var(self.chart.ctx(), z);
        (0..self.cover.k() as u32)
            .map(|j| self.to_space(&top.mul_poly(&zv.pow(j)).div_poly(self.cover.dp())?))
            .collect()
    }
}

fn shear_images(n: usize, s: Shear, ctx: &crate::poly::Ctx) -> Vec<Poly> {
    (0..n)
        .map(|i| {
            let x = Poly::var(ctx, i);
            if i == s.var {
                &x + &Poly::var(ctx, s.by).scale(&Rational::from_integer(s.c.into()))
            } else {
                x
            }
        })
        .collect()
}

fn shear_poly(f: &Poly, s: Shear) -> Poly {
    f.substitute(&shear_images(f.nvars(), s, f.ctx()))
}
