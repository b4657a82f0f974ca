//! Term-list representation of free module elements used by the reduction
//! loops: terms sorted descending in a fixed module order.

use std::cmp::Ordering;

use crate::poly::{Field, ModuleOrder, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SVec<C: Field> {
    pub t: Vec<(Monomial, usize, C)>,
}

impl<C: Field> SVec<C> {
    pub fn zero() -> Self {
        SVec { t: Vec::new() }
    }

    pub fn from_terms(mut t: Vec<(Monomial, usize, C)>, ord: &ModuleOrder) -> Self {
        t.retain(|x| !x.2.is_zero());
        t.sort_by(|a, b| ord.cmp(&b.0, b.1, &a.0, a.1));
        // merge equal terms
        let mut out: Vec<(Monomial, usize, C)> = Vec::with_capacity(t.len());
        for (m, p, c) in t {
            match out.last_mut() {
                Some(last) if last.0 == m && last.1 == p => {
                    last.2 = last.2.add_ref(&c);
                    if last.2.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((m, p, c)),
            }
        }
        SVec { t: out }
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, usize, C)> {
        self.t.first()
    }

    pub fn monic(mut self) -> Self {
        if let Some(l) = self.t.first() {
            if !l.2.is_one() {
                let inv = l.2.inv();
                for x in &mut self.t {
                    x.2 = x.2.mul_ref(&inv);
                }
            }
        }
        self
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        SVec { t: self.t.iter().map(|(n, p, a)| (n.mul(m), *p, a.mul_ref(c))).collect() }
    }

    /// `self[from..] - c * m * g`.
    pub fn sub_mul_from(&self, from: usize, c: &C, m: &Monomial, g: &SVec<C>, ord: &ModuleOrder) -> Self {
        let a = &self.t[from..];
        let mut out = Vec::with_capacity(a.len() + g.t.len());
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<(Monomial, usize)> = None;
        while i < a.len() || j < g.t.len() {
            let gm = if j < g.t.len() {
                match &pending {
                    Some(p) => Some(p),
                    None => {
                        pending = Some((g.t[j].0.mul(m), g.t[j].1));
                        pending.as_ref()
                    }
                }
            } else {
                None
            };
            let take = match (a.get(i), gm) {
                (Some(x), Some(y)) => ord.cmp(&x.0, x.1, &y.0, y.1),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (mm, p) = pending.take().unwrap();
                    out.push((mm, p, -g.t[j].2.mul_ref(c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let (mm, p) = pending.take().unwrap();
                    let v = a[i].2.sub_ref(&g.t[j].2.mul_ref(c));
                    if !v.is_zero() {
                        out.push((mm, p, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SVec { t: out }
    }
}
