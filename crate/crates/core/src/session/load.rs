use std::collections::BTreeMap;
use std::sync::Arc;

use super::ast::*;
use super::eval::{eval_form, eval_poly};
use super::parser::parse_session;
use crate::blowup::{Chart, ChartRef, ResolutionTree};
use crate::classify::DependenceRelation;
use crate::error::{Error, Result};
use crate::forms::{MeroForm, PolyMap, Space, SpaceRef};
use crate::poly::{OrderSpec, Poly, VarContext};
use crate::trace::MultiformGraph;

/// Overrides applied while loading.
#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    /// Monomial order for every space; degrevlex by default.
    pub order: Option<OrderSpec>,
    /// Non-zero-divisor per space name, as polynomial text.
    pub nzd: BTreeMap<String, String>,
}

/// A loaded session: every declaration evaluated and checked.
pub struct Session {
    file: SessionFile,
    spaces: BTreeMap<String, SpaceRef>,
    roots: BTreeMap<String, ChartRef>,
    charts: BTreeMap<String, ChartRef>,
    forms: BTreeMap<String, MeroForm>,
    resolutions: BTreeMap<String, ResolutionTree>,
    maps: BTreeMap<String, PolyMap>,
    graphs: BTreeMap<String, MultiformGraph>,
    relations: BTreeMap<String, (String, DependenceRelation)>,
}

fn unknown(kind: &'static str, name: &str) -> Error {
    Error::UnknownName { kind, name: name.to_string() }
}

fn lookup<'a, T>(m: &'a BTreeMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T> {
    m.get(name).ok_or_else(|| unknown(kind, name))
}

/// Images of the target variables, each assigned exactly once.
fn images(source: &SpaceRef, target: &SpaceRef, assigned: &[(String, Expr)], what: &str) -> Result<Vec<Poly>> {
    let tctx = target.ctx();
    let mut out: Vec<Option<Poly>> = vec![None; tctx.len()];
    for (v, e) in assigned {
        let i = tctx.index_of(v).ok_or_else(|| Error::UnknownVariable(format!("{v} in {what}")))?;
        if out[i].is_some() {
            return Err(Error::InvalidMap(format!("`{v}` assigned twice in {what}")));
        }
        out[i] = Some(eval_poly(source.ctx(), e)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::InvalidMap(format!("no image for `{}` in {what}", tctx.name(i)))))
        .collect()
}

impl Session {
    pub fn parse(text: &str) -> Result<Self> {
        Self::load(parse_session(text)?, &LoadOptions::default())
    }

    pub fn parse_with(text: &str, opts: &LoadOptions) -> Result<Self> {
        Self::load(parse_session(text)?, opts)
    }

    pub fn load(file: SessionFile, opts: &LoadOptions) -> Result<Self> {
        let mut s = Session {
            file: SessionFile::default(),
            spaces: BTreeMap::new(),
            roots: BTreeMap::new(),
            charts: BTreeMap::new(),
            forms: BTreeMap::new(),
            resolutions: BTreeMap::new(),
            maps: BTreeMap::new(),
            graphs: BTreeMap::new(),
            relations: BTreeMap::new(),
        };
        let order = opts.order.clone().unwrap_or_else(OrderSpec::degrevlex);
        for name in opts.nzd.keys() {
            if !file.decls.iter().any(|d| matches!(d, Decl::Space(sd) if &sd.name == name)) {
                return Err(unknown("space", name));
            }
        }
        for d in &file.decls {
            match d {
                Decl::Space(d) => s.add_space(d, &order, opts.nzd.get(&d.name))?,
                Decl::Chart(d) => s.add_chart(d, &order)?,
                Decl::Form(d) => {
                    let space = lookup(&s.spaces, "space", &d.space)?.clone();
                    let forms = &s.forms;
                    let w = eval_form(&space, &d.expr, &|n| forms.get(n).cloned())?;
                    s.forms.insert(d.name.clone(), w);
                }
                Decl::Resolution(d) => s.add_resolution(d)?,
                Decl::Map(d) => {
                    let source = lookup(&s.spaces, "space", &d.source)?;
                    let target = lookup(&s.spaces, "space", &d.target)?;
                    let img = images(source, target, &d.images, &format!("map `{}`", d.name))?;
                    let m = PolyMap::new(source, target, img)?;
                    s.maps.insert(d.name.clone(), m);
                }
                Decl::Graph(d) => {
                    let space = lookup(&s.spaces, "space", &d.space)?;
                    let fiber = d.fiber.as_deref().map(|f| space.ctx().var(f)).transpose()?;
                    s.graphs.insert(d.name.clone(), MultiformGraph::new(space, fiber)?);
                }
                Decl::Relation(d) => {
                    let sigma = lookup(&s.forms, "form", &d.form)?;
                    let forms = &s.forms;
                    let rel = DependenceRelation::new(
                        &d.name,
                        sigma.space(),
                        sigma.degree(),
                        &d.form,
                        d.degree,
                        &d.expr,
                        &|n| forms.get(n).cloned(),
                    )?;
                    s.relations.insert(d.name.clone(), (d.form.clone(), rel));
                }
            }
        }
        s.file = file;
        Ok(s)
    }

    fn add_space(&mut self, d: &SpaceDecl, order: &OrderSpec, nzd: Option<&String>) -> Result<()> {
        let ctx = VarContext::new(&d.vars)?;
        let eqs = d.eqs.iter().map(|e| eval_poly(&ctx, e)).collect::<Result<Vec<_>>>()?;
        let nzd = match (nzd, &d.nzd) {
            (Some(t), _) => Some(super::parse_polynomial(&ctx, t)?),
            (None, Some(e)) => Some(eval_poly(&ctx, e)?),
            (None, None) => None,
        };
        let space = Space::with_order(&d.name, &ctx, eqs, nzd, order.clone())?;
        self.roots.insert(d.name.clone(), Arc::new(Chart::root(&space)));
        self.spaces.insert(d.name.clone(), space);
        Ok(())
    }

    fn chart_or_root(&self, name: &str) -> Result<&ChartRef> {
        self.charts.get(name).or_else(|| self.roots.get(name)).ok_or_else(|| unknown("space", name))
    }

    fn add_chart(&mut self, d: &ChartDecl, order: &OrderSpec) -> Result<()> {
        let parent = self.chart_or_root(&d.parent)?.clone();
        let ctx = VarContext::new(&d.vars)?;
        let eqs = d.eqs.iter().map(|e| eval_poly(&ctx, e)).collect::<Result<Vec<_>>>()?;
        let space = Space::with_order(&d.name, &ctx, eqs, None, order.clone())?;
        let img = images(&space, parent.space(), &d.map, &format!("chart `{}`", d.name))?;
        let exc = d.exceptional.iter().map(|e| eval_poly(&ctx, e)).collect::<Result<Vec<_>>>()?;
        let chart = Chart::declared(&d.name, &parent, &space, img, exc)?;
        self.spaces.insert(d.name.clone(), space);
        self.charts.insert(d.name.clone(), Arc::new(chart));
        Ok(())
    }

    fn add_resolution(&mut self, d: &ResolutionDecl) -> Result<()> {
        let space = lookup(&self.spaces, "space", &d.space)?;
        let mut tree = ResolutionTree::new(&d.name, space);
        for leaf in &d.charts {
            let mut chain = Vec::new();
            let mut cur = lookup(&self.charts, "chart", leaf)?.clone();
            loop {
                let parent = cur.parent().map(str::to_string);
                chain.push(cur);
                match parent {
                    Some(p) if p == d.space => break,
                    Some(p) => cur = lookup(&self.charts, "chart", &p)?.clone(),
                    None => break,
                }
            }
            if chain.last().and_then(|c| c.parent()) != Some(d.space.as_str()) {
                return Err(Error::InvalidInput(format!("chart `{leaf}` does not descend from `{}`", d.space)));
            }
            for c in chain.into_iter().rev() {
                if tree.chart(c.name()).is_err() {
                    tree.add_ref(c)?;
                }
            }
        }
        tree.set_leaves(&d.charts)?;
        self.resolutions.insert(d.name.clone(), tree);
        Ok(())
    }

    pub fn file(&self) -> &SessionFile {
        &self.file
    }

    /// A declared space or chart space.
    pub fn space(&self, name: &str) -> Result<&SpaceRef> {
        lookup(&self.spaces, "space", name)
    }

    pub fn space_names(&self) -> Vec<&str> {
        self.file.decls.iter().filter_map(|d| matches!(d, Decl::Space(_)).then(|| d.name())).collect()
    }

    /// The root chart of a space or a declared chart.
    pub fn chart(&self, name: &str) -> Result<&ChartRef> {
        self.chart_or_root(name)
    }

    pub fn form(&self, name: &str) -> Result<&MeroForm> {
        lookup(&self.forms, "form", name)
    }

    /// Form names in declaration order.
    pub fn form_names(&self) -> Vec<&str> {
        self.file.decls.iter().filter_map(|d| matches!(d, Decl::Form(_)).then(|| d.name())).collect()
    }

    pub fn resolution(&self, name: &str) -> Result<&ResolutionTree> {
        lookup(&self.resolutions, "resolution", name)
    }

    /// Resolutions of a space, in name order.
    pub fn resolutions_of(&self, space: &str) -> Vec<&ResolutionTree> {
        self.resolutions.values().filter(|r| r.root_space().name() == space).collect()
    }

    pub fn map(&self, name: &str) -> Result<&PolyMap> {
        lookup(&self.maps, "map", name)
    }

    pub fn map_names(&self) -> Vec<&str> {
        self.maps.keys().map(String::as_str).collect()
    }

    pub fn graph(&self, name: &str) -> Result<&MultiformGraph> {
        lookup(&self.graphs, "graph", name)
    }

    /// Graphs of a space, in name order.
    pub fn graphs_of(&self, space: &str) -> Vec<&MultiformGraph> {
        self.graphs.values().filter(|g| g.space().name() == space).collect()
    }

    /// A relation and the form it is stated for.
    pub fn relation(&self, name: &str) -> Result<(&MeroForm, &DependenceRelation)> {
        let (f, r) = lookup(&self.relations, "relation", name)?;
        Ok((self.form(f)?, r))
    }

    pub fn relation_names(&self) -> Vec<&str> {
        self.relations.keys().map(String::as_str).collect()
    }

    /// Evaluates a form expression on a declared space, declared forms
    /// being available by name.
    pub fn eval_form_text(&self, space: &str, text: &str) -> Result<MeroForm> {
        let space = self.space(space)?;
        eval_form(space, &super::parse_expr(text)?, &|n| self.forms.get(n).cloned())
    }
}
