use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::blowup::{ChartRef, ResolutionTree};
use crate::error::{Error, Result};
use crate::forms::{same_space, MeroForm};
use crate::groebner::{Certificate, Submodule};
use crate::poly::Rational;
use crate::trace::MultiformGraph;

/// Levels of the chain, from the strongest condition to none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SheafLevel {
    OmegaModTorsion,
    Alpha,
    L,
    OmegaBig,
    None,
}

impl SheafLevel {
    pub const TESTED: [SheafLevel; 4] = [SheafLevel::OmegaModTorsion, SheafLevel::Alpha, SheafLevel::L, SheafLevel::OmegaBig];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "omegamodtorsion" | "omega_mod_torsion" | "torsion" => SheafLevel::OmegaModTorsion,
            "alpha" => SheafLevel::Alpha,
            "l" => SheafLevel::L,
            "omegabig" | "omega" => SheafLevel::OmegaBig,
            "none" => SheafLevel::None,
            _ => return Err(Error::InvalidInput(format!("unknown level `{s}`"))),
        })
    }
}

impl fmt::Display for SheafLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Outcome on one chart. Members carry the nonzero cofactors against the
/// membership module, non-members the normal form left over.
#[derive(Clone, Debug, Serialize)]
pub struct ChartResult {
    pub chart: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ChartResult {
    fn from_cert(chart: &str, cert: &Certificate<Rational>) -> Self {
        let pass = cert.is_member();
        ChartResult {
            chart: chart.to_string(),
            pass,
            certificate: pass.then(|| {
                cert.cofactors
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| format!("g{i}: {c}"))
                    .collect()
            }),
            witness: (!pass).then(|| cert.remainder.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelTest {
    pub level: SheafLevel,
    pub pass: bool,
    pub charts: Vec<ChartResult>,
}

impl LevelTest {
    fn from_charts(level: SheafLevel, charts: Vec<ChartResult>) -> Self {
        LevelTest { level, pass: charts.iter().all(|c| c.pass), charts }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReportFlags {
    /// The omega test only checked the traced generator family.
    pub omega_criterion_as_implemented: bool,
    /// The leaves are taken to cover the resolution.
    pub chart_coverage_trusted: bool,
    /// No graph presentation was available, so omega was not tested.
    pub undecided_above_l: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub space: String,
    pub form: String,
    pub degree: usize,
    pub verdict: SheafLevel,
    pub level_tests: Vec<LevelTest>,
    pub flags: ReportFlags,
}

impl ClassificationReport {
    pub fn test(&self, level: SheafLevel) -> Option<&LevelTest> {
        self.level_tests.iter().find(|t| t.level == level)
    }
}

fn leaves_of(tree: &ResolutionTree, w: &MeroForm) -> Result<Vec<ChartRef>> {
    if !same_space(w.space(), tree.root_space()) {
        return Err(Error::ContextMismatch(format!(
            "form on `{}`, resolution of `{}`",
            w.space().name(),
            tree.root_space().name()
        )));
    }
    tree.check_resolved()?;
    Ok(tree.leaves())
}

fn torsion_test(w: &MeroForm) -> Result<LevelTest> {
    let (_, cert) = w.in_omega_mod_torsion()?;
    Ok(LevelTest::from_charts(SheafLevel::OmegaModTorsion, vec![ChartResult::from_cert(w.space().name(), &cert)]))
}

fn leaf_test(level: SheafLevel, w: &MeroForm, leaves: &[ChartRef]) -> Result<LevelTest> {
    let charts = leaves
        .par_iter()
        .map(|c| {
            let cert = match level {
                SheafLevel::Alpha => c.in_tau_star(w)?.1,
                _ => c.total_map().pullback_form(w)?.in_omega_mod_torsion()?.1,
            };
            Ok(ChartResult::from_cert(c.name(), &cert))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelTest::from_charts(level, charts))
}

fn omega_test(w: &MeroForm, graph: &MultiformGraph) -> Result<(LevelTest, bool)> {
    let r = graph.omega_membership(w)?;
    let chart = ChartResult {
        chart: graph.chart().name().to_string(),
        pass: r.member,
        certificate: r.member.then(|| {
            let mut c = vec![format!("fiber {} with {} sheets", r.fiber, r.sheets)];
            c.extend(r.shear.clone().map(|s| format!("shear {s}")));
            c
        }),
        witness: (!r.member).then(|| r.failures.join("; ")),
    };
    Ok((LevelTest::from_charts(SheafLevel::OmegaBig, vec![chart]), r.criterion_as_implemented))
}

/// The automatic graph of a hypersurface, if one exists.
fn auto_graph(w: &MeroForm) -> Option<MultiformGraph> {
    MultiformGraph::new(w.space(), None).ok()
}

/// Classifies `w` with the leaves of `tree` and an automatic graph.
pub fn classify(w: &MeroForm, tree: &ResolutionTree) -> Result<ClassificationReport> {
    classify_with(w, tree, None)
}

/// Classifies `w`; `graph` overrides the automatic graph presentation.
pub fn classify_with(w: &MeroForm, tree: &ResolutionTree, graph: Option<&MultiformGraph>) -> Result<ClassificationReport> {
    let leaves = leaves_of(tree, w)?;
    let mut tests = vec![
        torsion_test(w)?,
        leaf_test(SheafLevel::Alpha, w, &leaves)?,
        leaf_test(SheafLevel::L, w, &leaves)?,
    ];
    let mut flags = ReportFlags { chart_coverage_trusted: true, ..Default::default() };
    let owned;
    let graph = match graph {
        Some(g) => Some(g),
        None => {
            owned = auto_graph(w);
            owned.as_ref()
        }
    };
    match graph {
        Some(g) => {
            let (t, as_implemented) = omega_test(w, g)?;
            flags.omega_criterion_as_implemented = as_implemented;
            tests.push(t);
        }
        None => flags.undecided_above_l = true,
    }
    let passes: Vec<bool> = tests.iter().map(|t| t.pass).collect();
    if let Some(first) = passes.iter().position(|&p| p) {
        assert!(passes[first..].iter().all(|&p| p), "chain monotonicity violated for {}: {passes:?}", w.to_text());
    }
    let verdict = tests.iter().find(|t| t.pass).map_or(SheafLevel::None, |t| t.level);
    if verdict != SheafLevel::None {
        flags.undecided_above_l = false;
    }
    Ok(ClassificationReport {
        space: w.space().name().to_string(),
        form: w.to_text(),
        degree: w.degree(),
        verdict,
        level_tests: tests,
        flags,
    })
}

/// Whether `w` lies in `level`; `None` when omega cannot be decided.
pub fn level_passes(level: SheafLevel, w: &MeroForm, tree: &ResolutionTree, graph: Option<&MultiformGraph>) -> Result<Option<bool>> {
    Ok(Some(match level {
        SheafLevel::OmegaModTorsion => w.in_omega_mod_torsion()?.0,
        SheafLevel::Alpha | SheafLevel::L => leaf_test(level, w, &leaves_of(tree, w)?)?.pass,
        SheafLevel::OmegaBig => {
            let owned;
            let g = match graph {
                Some(g) => g,
                None => match auto_graph(w) {
                    Some(g) => {
                        owned = g;
                        &owned
                    }
                    None => return Ok(None),
                },
            };
            g.omega_membership(w)?.member
        }
        SheafLevel::None => true,
    }))
}

/// Membership module of a level on one chart for numerators over `den`.
pub(crate) fn level_module(level: SheafLevel, chart: &ChartRef, p: usize, den: &crate::poly::Poly) -> Result<Submodule<Rational>> {
    match level {
        SheafLevel::Alpha => chart.tau_pole_module(p, den),
        SheafLevel::L | SheafLevel::OmegaModTorsion => chart.space().pole_module(p, den),
        _ => Err(Error::Unsupported(format!("no membership module for {level}"))),
    }
}
