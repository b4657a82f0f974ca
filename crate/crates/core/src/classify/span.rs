use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::level::{level_module, level_passes, SheafLevel};
use crate::blowup::{Chart, ChartRef, ResolutionTree};
use crate::error::{Error, Result};
use crate::forms::{same_space, MeroForm};
use crate::poly::{lcm, Field, Monomial, Poly, Rational};
use crate::trace::MultiformGraph;

type Key = (usize, usize, Monomial);

/// Normal forms of the numerators over a common denominator on one chart.
fn chart_rows(level: SheafLevel, chart: &ChartRef, forms: &[MeroForm]) -> Result<Vec<BTreeMap<(usize, Monomial), Rational>>> {
    let pulled: Vec<MeroForm> = match level {
        SheafLevel::OmegaModTorsion => forms.to_vec(),
        _ => forms.iter().map(|w| chart.total_map().pullback_form(w)).collect::<Result<_>>()?,
    };
    let p = forms[0].degree();
    let den = pulled.iter().fold(Poly::one(chart.space().ctx()), |d, w| lcm(&d, w.den()));
    let m = level_module(level, chart, p, &den)?;
    pulled
        .iter()
        .map(|w| {
            let scale = den.div_exact(w.den()).expect("lcm is a multiple");
            let nf = m.normal_form(&w.numerator_elem().mul_poly(&scale))?;
            let mut row = BTreeMap::new();
            for (i, c) in nf.comps().iter().enumerate() {
                for (mono, a) in c.terms() {
                    row.insert((i, mono.clone()), a.clone());
                }
            }
            Ok(row)
        })
        .collect()
}

/// Rank over the rationals of sparse rows.
fn rank(mut rows: Vec<BTreeMap<Key, Rational>>) -> usize {
    let mut r = 0;
    while let Some(i) = rows.iter().position(|row| !row.is_empty()) {
        let pivot = rows.swap_remove(i);
        let (key, c) = pivot.iter().next().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        for row in rows.iter_mut() {
            let Some(a) = row.get(&key).cloned() else { continue };
            let f = a.div_ref(&c);
            for (k, v) in &pivot {
                let e = row.entry(k.clone()).or_insert_with(Rational::zero);
                *e = e.sub_ref(&f.mul_ref(v));
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the span of `forms` modulo `level`, the forms sharing a
/// space and a degree.
pub fn span_dim_mod(forms: &[MeroForm], level: SheafLevel, tree: &ResolutionTree) -> Result<usize> {
    let Some(first) = forms.first() else { return Ok(0) };
    if forms.iter().any(|w| !same_space(w.space(), first.space()) || w.degree() != first.degree()) {
        return Err(Error::InvalidInput("forms must share a space and a degree".into()));
    }
    if !same_space(first.space(), tree.root_space()) {
        return Err(Error::ContextMismatch(format!("forms on `{}`, resolution of `{}`", first.space().name(), tree.root_space().name())));
    }
    let charts: Vec<ChartRef> = match level {
        SheafLevel::OmegaModTorsion => vec![std::sync::Arc::new(Chart::root(first.space()))],
        SheafLevel::Alpha | SheafLevel::L => {
            tree.check_resolved()?;
            tree.leaves()
        }
        _ => return Err(Error::Unsupported(format!("span dimension modulo {level}"))),
    };
    let per_chart = charts.par_iter().map(|c| chart_rows(level, c, forms)).collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<BTreeMap<Key, Rational>> = vec![BTreeMap::new(); forms.len()];
    for (ci, chart) in per_chart.into_iter().enumerate() {
        for (row, part) in rows.iter_mut().zip(chart) {
            row.extend(part.into_iter().map(|((i, m), c)| ((ci, i, m), c)));
        }
    }
    Ok(rank(rows))
}

/// For each probe `h`, whether `h * gen` lies in `level`. `None` marks an
/// undecided omega test.
pub fn annihilator_probe(
    gen: &MeroForm,
    level: SheafLevel,
    probes: &[Poly],
    tree: &ResolutionTree,
    graph: Option<&MultiformGraph>,
) -> Result<Vec<Option<bool>>> {
    probes.iter().map(|h| level_passes(level, &gen.mul_poly(h), tree, graph)).collect()
}
