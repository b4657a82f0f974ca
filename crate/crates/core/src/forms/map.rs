use std::collections::BTreeMap;

use super::form::{same_space, MeroForm};
use super::space::SpaceRef;
use super::subsets::bits;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// A polynomial map `source -> target`: one image per target variable.
#[derive(Clone, Debug)]
pub struct PolyMap {
    source: SpaceRef,
    target: SpaceRef,
    images: Vec<Poly>,
}

impl PolyMap {
    /// Checks that every target equation pulls back into the source ideal.
    pub fn new(source: &SpaceRef, target: &SpaceRef, images: Vec<Poly>) -> Result<Self> {
        let m = Self::unchecked(source, target, images)?;
        for f in target.equations() {
            let pulled = f.substitute(&m.images);
            if !source.ideal().contains_poly(&pulled) {
                return Err(Error::InvalidMap(format!(
                    "equation {f} of `{}` does not vanish on `{}`",
                    target.name(),
                    source.name()
                )));
            }
        }
        Ok(m)
    }

    /// Builds the map without the well-definedness check.
    pub fn unchecked(source: &SpaceRef, target: &SpaceRef, images: Vec<Poly>) -> Result<Self> {
        if images.len() != target.dim_ambient() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} target variables",
                images.len(),
                target.dim_ambient()
            )));
        }
        let images = images.into_iter().map(|p| p.to_ctx(source.ctx())).collect::<Result<Vec<_>>>()?;
        Ok(PolyMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(space: &SpaceRef) -> Self {
        let images = (0..space.dim_ambient()).map(|i| Poly::var(space.ctx(), i)).collect();
        PolyMap { source: space.clone(), target: space.clone(), images }
    }

    /// Inclusion of `source` into `target` through shared coordinate names.
    pub fn identity_between(source: &SpaceRef, target: &SpaceRef) -> Result<Self> {
        let images = target
            .ctx()
            .names()
            .iter()
            .map(|v| source.var(v).map_err(|_| Error::InvalidMap(format!("`{v}` is not a coordinate of `{}`", source.name()))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &SpaceRef {
        &self.source
    }

    pub fn target(&self) -> &SpaceRef {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn pull_poly(&self, f: &Poly) -> Poly {
        f.substitute(&self.images)
    }

    /// `self` after `inner`: `inner.source -> self.target`.
    pub fn after(&self, inner: &PolyMap) -> Result<PolyMap> {
        if !same_space(inner.target(), self.source()) {
            return Err(Error::InvalidMap(format!(
                "cannot compose: `{}` is not `{}`",
                inner.target().name(),
                self.source().name()
            )));
        }
        let images = self.images.iter().map(|p| inner.pull_poly(p)).collect();
        Ok(PolyMap { source: inner.source.clone(), target: self.target.clone(), images })
    }

    fn pull_differentials(&self) -> Vec<MeroForm> {
        let n = self.source.dim_ambient();
        self.images
            .iter()
            .map(|img| {
                let num: BTreeMap<u64, Poly> = (0..n).map(|j| (1u64 << j, img.derivative(j))).collect();
                MeroForm::raw(&self.source, 1, num, Poly::one(self.source.ctx()))
            })
            .collect()
    }

    /// Pull-back of a meromorphic form. The pulled-back denominator must be
    /// a non-zero-divisor on the source.
    pub fn pullback_form(&self, w: &MeroForm) -> Result<MeroForm> {
        if !same_space(w.space(), &self.target) {
            return Err(Error::ContextMismatch(format!(
                "form lives on `{}`, map targets `{}`",
                w.space().name(),
                self.target.name()
            )));
        }
        let p = w.degree();
        self.source.check_degree(p)?;
        let den = self.pull_poly(w.den());
        if !self.source.is_nonzerodivisor(&den) {
            return Err(Error::PullbackUndefined(format!(
                "denominator {} pulls back to {den}, a zero divisor on `{}`",
                w.den(),
                self.source.name()
            )));
        }
        let dif = self.pull_differentials();
        let mut acc = MeroForm::zero(&self.source, p);
        for (h, c) in w.numerators() {
            let mut term = MeroForm::function(&self.source, self.pull_poly(c));
            for i in bits(*h) {
                term = term.wedge(&dif[i])?;
            }
            acc = acc.add(&term)?;
        }
        let num = acc.numerators().clone();
        Ok(MeroForm::raw(&self.source, p, num, &den * acc.den()))
    }
}

/// Restriction of a form to a subvariety along its inclusion map.
pub fn restrict_form(w: &MeroForm, inclusion: &PolyMap) -> Result<MeroForm> {
    if !inclusion.target().ideal().generators().iter().all(|g| {
        let p = inclusion.pull_poly(g.comp(0));
        inclusion.source().ideal().contains_poly(&p)
    }) {
        return Err(Error::InvalidMap("not an inclusion of a subvariety".into()));
    }
    inclusion.pullback_form(w)
}
