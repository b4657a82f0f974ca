use std::fmt::Write;

use serde_json::{json, Map, Value};
use sheafchain::blowup::{Chart, ResolutionTree};
use sheafchain::classify::{annihilator_probe, classify_with, nash_charts, span_dim_mod, verify_dependence, SheafLevel};
use sheafchain::forms::MeroForm;
use sheafchain::session::{parse_polynomial, Session};
use sheafchain::trace::MultiformGraph;
use sheafchain::{Error, Result};

use crate::{Cli, Command, Outcome};

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::InvalidInput(format!("missing --{flag}")))
}

macro_rules! to_json {
    ($v:expr) => {
        serde_json::to_value($v).expect("serializable")
    };
}

fn list(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// A declared form, or an expression on `--space`.
fn form_of(cli: &Cli, s: &Session, text: &str) -> Result<MeroForm> {
    let declared = s.form(text);
    if let Ok(w) = declared {
        if let Some(sp) = &cli.space {
            if w.space().name() != sp {
                return Err(Error::ContextMismatch(format!("form `{text}` lives on `{}`", w.space().name())));
            }
        }
        return Ok(w.clone());
    }
    match cli.space.as_deref() {
        Some(space) => s.eval_form_text(space, text),
        None => declared.cloned(),
    }
}

fn tree_for<'a>(cli: &Cli, s: &'a Session, space: &str) -> Result<&'a ResolutionTree> {
    if let Some(r) = &cli.resolution {
        let t = s.resolution(r)?;
        if t.root_space().name() != space {
            return Err(Error::ContextMismatch(format!("resolution `{r}` is of `{}`, not `{space}`", t.root_space().name())));
        }
        return Ok(t);
    }
    match s.resolutions_of(space).as_slice() {
        [t] => Ok(t),
        [] => Err(Error::InvalidInput(format!("no resolution of `{space}` in the session"))),
        _ => Err(Error::InvalidInput(format!("several resolutions of `{space}`; pass --resolution"))),
    }
}

fn graph_for<'a>(cli: &Cli, s: &'a Session, space: &str) -> Result<Option<&'a MultiformGraph>> {
    match &cli.graph {
        Some(g) => Ok(Some(s.graph(g)?)),
        None => Ok(s.graphs_of(space).into_iter().next()),
    }
}

fn level(cli: &Cli, default: SheafLevel) -> Result<SheafLevel> {
    cli.level.as_deref().map_or(Ok(default), SheafLevel::parse)
}

fn chart_json(c: &Chart) -> Value {
    let sp = c.space();
    let target = c.local_map().target().ctx();
    let map: Vec<String> = c.local_map().images().iter().enumerate().map(|(i, p)| format!("{} = {p}", target.name(i))).collect();
    json!({
        "name": c.name(),
        "parent": c.parent(),
        "vars": sp.ctx().names(),
        "equations": sp.equations().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "map": map,
        "exceptional": c.exceptional().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "smooth": to_json!(&c.is_smooth()),
    })
}

fn outcome(space: Option<&str>, form: Option<String>, verdict: Value, text: String) -> Outcome {
    Outcome {
        space: space.map(str::to_string),
        form,
        verdict,
        certificates: Value::Null,
        flags: Value::Object(Map::new()),
        text,
        undecided: false,
    }
}

pub fn run(cli: &Cli, s: &Session) -> Result<Outcome> {
    match cli.command {
        Command::Classify => classify(cli, s),
        Command::SpanDim => span_dim(cli, s),
        Command::Annihilate => annihilate(cli, s),
        Command::Trace => trace(cli, s),
        Command::OmegaBasis => omega_basis(cli, s),
        Command::Blowup => blowup(cli, s),
        Command::Nash => nash(cli, s),
        Command::VerifyDependence => dependence(cli, s),
        Command::CheckResolution => check_resolution(cli, s),
    }
}

fn classify(cli: &Cli, s: &Session) -> Result<Outcome> {
    let targets: Vec<(String, MeroForm)> = match &cli.form {
        Some(f) => vec![(f.clone(), form_of(cli, s, f)?)],
        None => s
            .form_names()
            .into_iter()
            .map(|n| (n.to_string(), s.form(n).unwrap().clone()))
            .filter(|(_, w)| cli.space.as_deref().is_none_or(|sp| w.space().name() == sp))
            .filter(|(_, w)| cli.resolution.is_some() || !s.resolutions_of(w.space().name()).is_empty())
            .collect(),
    };
    let mut verdicts = Map::new();
    let mut certs = Map::new();
    let mut flags = Map::new();
    let mut text = String::new();
    let mut undecided = false;
    for (name, w) in &targets {
        let space = w.space().name();
        let r = classify_with(w, tree_for(cli, s, space)?, graph_for(cli, s, space)?)?;
        undecided |= r.flags.undecided_above_l;
        let _ = writeln!(text, "{name} on {space}: {}", r.verdict);
        for t in &r.level_tests {
            let _ = writeln!(text, "  {:<16} {}", t.level.to_string(), if t.pass { "pass" } else { "fail" });
        }
        verdicts.insert(name.clone(), json!(r.verdict.to_string()));
        certs.insert(name.clone(), to_json!(&r.level_tests));
        flags.insert(name.clone(), to_json!(&r.flags));
    }
    if let [(name, w)] = targets.as_slice() {
        let mut o = outcome(Some(w.space().name()), Some(w.to_text()), verdicts.remove(name).unwrap(), text);
        o.certificates = certs.remove(name).unwrap();
        o.flags = flags.remove(name).unwrap();
        o.undecided = undecided;
        return Ok(o);
    }
    let mut o = outcome(cli.space.as_deref(), None, Value::Object(verdicts), text);
    o.certificates = Value::Object(certs);
    o.flags = Value::Object(flags);
    o.undecided = undecided;
    Ok(o)
}

fn span_dim(cli: &Cli, s: &Session) -> Result<Outcome> {
    let forms = list(need(&cli.form, "form")?).into_iter().map(|f| form_of(cli, s, f)).collect::<Result<Vec<_>>>()?;
    let first = forms.first().ok_or_else(|| Error::InvalidInput("empty --form list".into()))?;
    let space = first.space().name().to_string();
    let lv = level(cli, SheafLevel::Alpha)?;
    let d = span_dim_mod(&forms, lv, tree_for(cli, s, &space)?)?;
    let texts: Vec<String> = forms.iter().map(MeroForm::to_text).collect();
    let text = format!("dim span modulo {lv}: {d}\n");
    let mut o = outcome(Some(&space), Some(texts.join(", ")), json!(d), text);
    o.flags = json!({ "level": lv.to_string() });
    Ok(o)
}

fn annihilate(cli: &Cli, s: &Session) -> Result<Outcome> {
    let w = form_of(cli, s, need(&cli.form, "form")?)?;
    let space = w.space().name().to_string();
    let probes = list(need(&cli.probes, "probes")?);
    let polys = probes.iter().map(|p| w.space().poly(p)).collect::<Result<Vec<_>>>()?;
    let lv = level(cli, SheafLevel::OmegaModTorsion)?;
    let r = annihilator_probe(&w, lv, &polys, tree_for(cli, s, &space)?, graph_for(cli, s, &space)?)?;
    let mut text = String::new();
    for (p, b) in probes.iter().zip(&r) {
        let v = b.map_or("undecided", |b| if b { "in" } else { "not in" });
        let _ = writeln!(text, "{p} * form: {v} {lv}");
    }
    let mut o = outcome(Some(&space), Some(w.to_text()), to_json!(&r), text);
    o.flags = json!({ "level": lv.to_string() });
    o.undecided = r.iter().any(Option::is_none);
    Ok(o)
}

fn trace(cli: &Cli, s: &Session) -> Result<Outcome> {
    let g = s.graph(need(&cli.graph, "graph")?)?;
    let cover = g.cover();
    let h = parse_polynomial(cover.ctx(), need(&cli.h, "h")?)?;
    let t = if cli.over_pprime { cover.trace_over_pprime(&h) } else { cover.trace_element(&h) };
    let what = if cli.over_pprime { format!("({h})/P'") } else { h.to_string() };
    let text = format!("Trace {what} = {t}\n");
    let mut o = outcome(Some(g.space().name()), None, json!(t.to_string()), text);
    o.flags = json!({ "fiber": g.fiber_name(), "sheets": g.sheets(), "shear": g.describe_shear() });
    Ok(o)
}

fn omega_basis(cli: &Cli, s: &Session) -> Result<Outcome> {
    let g = s.graph(need(&cli.graph, "graph")?)?;
    let gens: Vec<String> = g.omega_top_generators()?.iter().map(MeroForm::to_text).collect();
    let text = gens.iter().map(|f| format!("{f}\n")).collect();
    let mut o = outcome(Some(g.space().name()), None, json!(gens), text);
    o.flags = json!({ "fiber": g.fiber_name(), "sheets": g.sheets(), "shear": g.describe_shear() });
    Ok(o)
}

fn charts_text(charts: &[Chart]) -> String {
    let mut text = String::new();
    for c in charts {
        let eqs: Vec<String> = c.space().equations().iter().map(|e| e.to_string()).collect();
        let _ = writeln!(text, "{} [{}] {{{}}}: {:?}", c.name(), c.space().ctx().names().join(" "), eqs.join(", "), c.is_smooth());
    }
    text
}

fn blowup(cli: &Cli, s: &Session) -> Result<Outcome> {
    let name = need(&cli.space, "space")?;
    let chart = s.chart(name)?;
    let names = chart.space().ctx().names();
    let center: Vec<&str> = match &cli.center {
        Some(c) => list(c),
        None => names.iter().map(String::as_str).collect(),
    };
    let charts = chart.blowup_point(&center)?;
    let json: Vec<Value> = charts.iter().map(chart_json).collect();
    let mut o = outcome(Some(name), None, json!(json), charts_text(&charts));
    o.flags = json!({ "center": center });
    Ok(o)
}

fn nash(cli: &Cli, s: &Session) -> Result<Outcome> {
    let name = need(&cli.space, "space")?;
    let charts = nash_charts(s.space(name)?)?;
    let json: Vec<Value> = charts.iter().map(chart_json).collect();
    Ok(outcome(Some(name), None, json!(json), charts_text(&charts)))
}

fn dependence(cli: &Cli, s: &Session) -> Result<Outcome> {
    let names: Vec<&str> = match &cli.relation {
        Some(r) => vec![r.as_str()],
        None => s.relation_names(),
    };
    let mut verdicts = Map::new();
    let mut reports = Map::new();
    let mut text = String::new();
    let mut space = None;
    let mut form = None;
    for name in &names {
        let (sigma, rel) = s.relation(name)?;
        let r = verify_dependence(sigma, rel)?;
        let _ = writeln!(text, "{name}: {}", if r.holds { "holds" } else { "fails" });
        space = Some(sigma.space().name().to_string());
        form = Some(sigma.to_text());
        verdicts.insert(name.to_string(), json!(r.holds));
        reports.insert(name.to_string(), to_json!(&r));
    }
    if cli.relation.is_some() {
        let name = names[0];
        let mut o = outcome(space.as_deref(), form, verdicts.remove(name).unwrap(), text);
        o.certificates = reports.remove(name).unwrap();
        return Ok(o);
    }
    let mut o = outcome(None, None, Value::Object(verdicts), text);
    o.certificates = Value::Object(reports);
    Ok(o)
}

fn check_resolution(cli: &Cli, s: &Session) -> Result<Outcome> {
    let trees: Vec<&ResolutionTree> = match (&cli.resolution, &cli.space) {
        (Some(r), _) => vec![s.resolution(r)?],
        (None, Some(sp)) => s.resolutions_of(sp),
        (None, None) => s.space_names().into_iter().flat_map(|sp| s.resolutions_of(sp)).collect(),
    };
    let mut verdicts = Map::new();
    let mut leaves = Map::new();
    let mut text = String::new();
    for t in &trees {
        let ok = t.check_resolved().is_ok();
        let _ = writeln!(text, "{} of {}: {}", t.name(), t.root_space().name(), if ok { "resolved" } else { "not resolved" });
        let per: Map<String, Value> = t.leaves().iter().map(|c| (c.name().to_string(), to_json!(&c.is_smooth()))).collect();
        for (c, v) in &per {
            let _ = writeln!(text, "  {c}: {}", v.as_str().unwrap_or(""));
        }
        verdicts.insert(t.name().to_string(), json!(ok));
        leaves.insert(t.name().to_string(), Value::Object(per));
    }
    if let (Some(_), [t]) = (&cli.resolution, trees.as_slice()) {
        let mut o = outcome(Some(t.root_space().name()), None, verdicts.remove(t.name()).unwrap(), text);
        o.certificates = leaves.remove(t.name()).unwrap();
        return Ok(o);
    }
    let mut o = outcome(cli.space.as_deref(), None, Value::Object(verdicts), text);
    o.certificates = Value::Object(leaves);
    Ok(o)
}
