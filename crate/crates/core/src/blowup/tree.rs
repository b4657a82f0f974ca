use std::collections::BTreeMap;
use std::sync::Arc;

use super::chart::{Chart, ChartRef};
use crate::error::{Error, Result};
use crate::forms::{same_space, Smoothness, SpaceRef};

/// A tree of charts over a root space. The leaves are the charts used for
/// classification; coverage of the exceptional fiber is trusted input.
#[derive(Debug, Clone)]
pub struct ResolutionTree {
    name: String,
    root: ChartRef,
    charts: BTreeMap<String, ChartRef>,
    leaves: Vec<String>,
}

impl ResolutionTree {
    pub fn new(name: &str, root: &SpaceRef) -> Self {
        let root = Arc::new(Chart::root(root));
        let charts = BTreeMap::from([(root.name().to_string(), root.clone())]);
        ResolutionTree { name: name.into(), root, charts, leaves: vec![] }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn root_space(&self) -> &SpaceRef {
        self.root.space()
    }

    pub fn root_chart(&self) -> &ChartRef {
        &self.root
    }

    pub fn chart(&self, name: &str) -> Result<&ChartRef> {
        self.charts
            .get(name)
            .ok_or_else(|| Error::UnknownName { kind: "chart".into(), name: name.into() })
    }

    pub fn charts(&self) -> impl Iterator<Item = &ChartRef> {
        self.charts.values()
    }

    /// Adds a chart whose parent is already in the tree.
    pub fn add(&mut self, chart: Chart) -> Result<ChartRef> {
        self.add_ref(Arc::new(chart))
    }

    pub fn add_ref(&mut self, c: ChartRef) -> Result<ChartRef> {
        let parent = c.parent().ok_or_else(|| Error::InvalidInput(format!("chart `{}` has no parent", c.name())))?;
        let pc = self.chart(parent)?;
        if !same_space(pc.space(), c.local_map().target()) {
            return Err(Error::InvalidMap(format!("chart `{}` does not map to `{parent}`", c.name())));
        }
        if self.charts.contains_key(c.name()) {
            return Err(Error::Duplicate { kind: "chart".into(), name: c.name().into() });
        }
        self.charts.insert(c.name().to_string(), c.clone());
        Ok(c)
    }

    /// Marks charts as leaves, in the given order.
    pub fn set_leaves(&mut self, names: &[String]) -> Result<()> {
        for n in names {
            self.chart(n)?;
        }
        self.leaves = names.to_vec();
        Ok(())
    }

    /// Charts with no children, in name order.
    pub fn childless(&self) -> Vec<String> {
        self.charts
            .values()
            .filter(|c| !self.charts.values().any(|d| d.parent() == Some(c.name())))
            .map(|c| c.name().to_string())
            .collect()
    }

    pub fn leaves(&self) -> Vec<ChartRef> {
        let names = if self.leaves.is_empty() { self.childless() } else { self.leaves.clone() };
        names.iter().map(|n| self.charts[n].clone()).collect()
    }

    /// Every leaf must be certified smooth before use.
    pub fn check_resolved(&self) -> Result<()> {
        for c in self.leaves() {
            if c.is_smooth() != Smoothness::Smooth {
                return Err(Error::Unresolved(format!("leaf `{}` of `{}` is not certified smooth", c.name(), self.name)));
            }
        }
        Ok(())
    }

    /// Blows up `center` on chart `name` and adds every chart.
    pub fn blowup(&mut self, name: &str, center: &[&str]) -> Result<Vec<ChartRef>> {
        let c = self.chart(name)?.clone();
        c.blowup_point(center)?.into_iter().map(|ch| self.add(ch)).collect()
    }

    /// Blows up the origin of every non-smooth childless chart, up to
    /// `depth` rounds. Useful for surfaces with isolated singularities.
    pub fn blowup_origins(&mut self, depth: usize) -> Result<()> {
        for _ in 0..depth {
            let todo: Vec<ChartRef> = self
                .childless()
                .iter()
                .map(|n| self.charts[n].clone())
                .filter(|c| c.is_smooth() != Smoothness::Smooth)
                .collect();
            if todo.is_empty() {
                break;
            }
            for c in todo {
                let names: Vec<String> = c.space().ctx().names().to_vec();
                let center: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                self.blowup(c.name(), &center)?;
            }
        }
        Ok(())
    }
}
