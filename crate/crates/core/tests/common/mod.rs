#![allow(dead_code)]

use std::sync::OnceLock;

use sheafchain::blowup::ResolutionTree;
use sheafchain::classify::{classify, ClassificationReport, SheafLevel};
use sheafchain::forms::{restrict_form, MeroForm, PolyMap, Smoothness, SpaceRef};
use sheafchain::session::{parse_form, Session};

pub type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}
#[allow(unused_imports)]
pub(crate) use ensure;

pub fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every corpus session, by file stem, in name order.
pub fn corpus() -> &'static [(String, Session)] {
    static CORPUS: OnceLock<Vec<(String, Session)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut files: Vec<_> = std::fs::read_dir(corpus_dir()).unwrap().map(|e| e.unwrap().path()).collect();
        files.retain(|f| f.extension().is_some_and(|e| e == "session"));
        files.sort();
        files
            .into_iter()
            .map(|f| {
                let text = std::fs::read_to_string(&f).unwrap();
                let s = Session::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
                (f.file_stem().unwrap().to_string_lossy().into_owned(), s)
            })
            .collect()
    })
}

pub fn session(stem: &str) -> &'static Session {
    corpus().iter().find(|(n, _)| n == stem).map(|(_, s)| s).unwrap_or_else(|| panic!("no corpus file {stem}"))
}

pub fn form(x: &SpaceRef, text: &str) -> MeroForm {
    parse_form(x, text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// The unique resolution of a space in a session.
pub fn resolution<'a>(s: &'a Session, space: &str) -> &'a ResolutionTree {
    let r = s.resolutions_of(space);
    assert_eq!(r.len(), 1, "resolutions of {space}");
    r[0]
}

pub fn verdict(w: &MeroForm, tree: &ResolutionTree) -> Result<SheafLevel, String> {
    classify(w, tree).map(|r| r.verdict).map_err(err)
}

pub fn blown_up(x: &SpaceRef, depth: usize) -> ResolutionTree {
    let mut t = ResolutionTree::new("B", x);
    t.blowup_origins(depth).unwrap();
    t.check_resolved().unwrap();
    t
}

/// Runs a check, turning a panic into a failure.
pub fn run(f: impl FnOnce() -> Check) -> Check {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    }
}

/// A level test result consistent with the chain: once a level passes,
/// every higher tested level passes, and the verdict is the lowest pass.
pub fn check_monotone(r: &ClassificationReport) -> Check {
    let mut seen = false;
    for t in &r.level_tests {
        ensure!(!seen || t.pass, "{}: {} fails above a passing level", r.form, t.level);
        seen |= t.pass;
    }
    let lowest = r.level_tests.iter().find(|t| t.pass).map(|t| t.level).unwrap_or(SheafLevel::None);
    ensure!(lowest == r.verdict || r.flags.undecided_above_l, "{}: verdict {} but lowest pass {lowest}", r.form, r.verdict);
    Ok(String::new())
}

/// S-pair closure of the relation modules, agreement of the two saturation
/// methods, normal forms and membership certificates on every corpus space
/// and form.
pub fn groebner_invariants() -> Check {
    let mut modules = 0;
    let mut certs = 0;
    for (file, s) in corpus() {
        for name in s.space_names() {
            let x = s.space(name).map_err(err)?;
            for p in 0..=x.dim_ambient() {
                let r = x.omega_relations(p).map_err(err)?;
                let t = x.torsion_relations(p).map_err(err)?;
                ensure!(r.verify_groebner() && t.verify_groebner(), "{file}/{name}: p = {p} not closed under S-pairs");
                ensure!(t.contains_all(r), "{file}/{name}: p = {p} relations not inside their saturation");
                if x.dim_ambient() <= 3 {
                    let e = x.torsion_relations_extra_var(p).map_err(err)?;
                    ensure!(e.same_module(t), "{file}/{name}: p = {p} saturation methods differ");
                }
                for g in r.generators().iter().chain(t.generators().iter()) {
                    ensure!(t.normal_form(g).map_err(err)?.is_zero(), "{file}/{name}: generator not reduced to zero");
                }
                modules += 2;
            }
        }
        for name in s.form_names() {
            let w = s.form(name).map_err(err)?;
            let m = w.space().pole_module(w.degree(), w.den()).map_err(err)?;
            let (_, cert) = w.in_omega_mod_torsion().map_err(err)?;
            let mut sum = cert.remainder.clone();
            for (c, g) in cert.cofactors.iter().zip(m.generators()) {
                sum = sum.add(&g.mul_poly(c));
            }
            ensure!(sum == w.numerator_elem(), "{file}/{name}: certificate does not recombine");
            let nf = m.normal_form(&cert.remainder).map_err(err)?;
            ensure!(nf == cert.remainder, "{file}/{name}: remainder is not reduced");
            certs += 1;
        }
    }
    Ok(format!("{modules} modules, {certs} certificates"))
}

/// `(g after f)^* w = f^* g^* w` modulo torsion.
pub fn functoriality() -> Check {
    let pairs: [(&str, &str, &str); 7] = [
        ("xyz_t3", "cyc", "cyc"),
        ("xyz_t3", "cyc", "slice"),
        ("xyz_t3", "slice", "chart:S3T1"),
        ("xyz_t3", "slice", "chart:S3T2"),
        ("fermat_cubic", "cyc", "cyc"),
        ("fermat_cubic", "cyc", "chart:Fx"),
        ("quadric3fold", "flip", "chart:Qu"),
    ];
    let mut checked = 0;
    for (file, outer, inner) in pairs {
        let s = session(file);
        let g = s.map(outer).map_err(err)?;
        let f: PolyMap = match inner.strip_prefix("chart:") {
            Some(c) => s.chart(c).map_err(err)?.local_map().clone(),
            None => s.map(inner).map_err(err)?.clone(),
        };
        let gf = g.after(&f).map_err(err)?;
        let mut n = 0;
        for name in s.form_names() {
            let w = s.form(name).map_err(err)?;
            if w.space().name() != g.target().name() {
                continue;
            }
            let Ok(gw) = g.pullback_form(w) else { continue };
            let Ok(seq) = f.pullback_form(&gw) else { continue };
            let direct = gf.pullback_form(w).map_err(err)?;
            ensure!(direct.equals_mod_torsion(&seq).map_err(err)?, "{file}: {outer} after {inner} on {name}");
            n += 1;
        }
        ensure!(n > 0, "{file}: no form pulls back along {outer} after {inner}");
        checked += n;
    }
    Ok(format!("{} composed maps, {checked} forms", pairs.len()))
}

/// Torsion forms built from saturated relations not in the plain relation
/// module.
pub fn torsion_forms(x: &SpaceRef, limit: usize) -> Result<Vec<MeroForm>, String> {
    let mut out = Vec::new();
    for p in 1..=x.dim_ambient() {
        let r = x.omega_relations(p).map_err(err)?;
        let t = x.torsion_relations(p).map_err(err)?;
        let one = sheafchain::Poly::one(x.ctx());
        for g in t.generators().into_iter().filter(|g| !r.contains(g)).take(limit) {
            out.push(MeroForm::from_elem(x, p, &g, one.clone()));
        }
    }
    Ok(out)
}

/// Restrictions of torsion forms to subvarieties are torsion.
pub fn torsion_restriction() -> Check {
    let pairs = [
        ("xyz_t3", "incl_z1"),
        ("xyz_t3", "incl_diag"),
        ("fermat_cubic", "incl_line"),
        ("quadric3fold", "incl_slice"),
        ("s_6", "incl_diag"),
    ];
    let mut total = 0;
    for (file, incl) in pairs {
        let s = session(file);
        let i = s.map(incl).map_err(err)?;
        let forms = torsion_forms(i.target(), 3)?;
        ensure!(!forms.is_empty(), "{file}: no torsion on {}", i.target().name());
        for w in &forms {
            ensure!(!w.is_zero(), "{file}: empty torsion form");
            ensure!(w.is_torsion_free_zero().map_err(err)?, "{file}: {} is not torsion", w.to_text());
            let r = restrict_form(w, i).map_err(err)?;
            ensure!(r.is_torsion_free_zero().map_err(err)?, "{file}: {} restricts to {}", w.to_text(), r.to_text());
        }
        total += forms.len();
    }
    Ok(format!("{} pairs, {total} torsion forms", pairs.len()))
}

/// The toric resolution and iterated point blow-ups give equal verdicts.
pub fn resolution_independence() -> Check {
    let mut n = 0;
    for k in 2..=5usize {
        let s = session(&format!("s_{k}"));
        let x = s.space(&format!("S{k}")).map_err(err)?;
        let toric = resolution(s, &format!("S{k}"));
        let points = blown_up(x, k);
        let mut forms: Vec<MeroForm> = s.form_names().iter().map(|f| s.form(f).unwrap().clone()).collect();
        forms.extend((0..k).map(|q| form(x, &format!("dx^dy/z^{q}"))));
        forms.push(form(x, "dx/z"));
        for w in &forms {
            let a = verdict(w, toric)?;
            let b = verdict(w, &points)?;
            ensure!(a == b, "S{k}: {} is {a} on {} and {b} on {}", w.to_text(), toric.name(), points.name());
            n += 1;
        }
    }
    Ok(format!("{n} forms on S2..S5"))
}

/// Every corpus classification respects the chain.
pub fn monotonicity() -> Check {
    let mut n = 0;
    for (file, s) in corpus() {
        for name in s.form_names() {
            let w = s.form(name).map_err(err)?;
            for tree in s.resolutions_of(w.space().name()) {
                let r = classify(w, tree).map_err(|e| format!("{file}/{name}: {e}"))?;
                check_monotone(&r)?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} classifications"))
}

/// Sections of the middle sheaf pull back along the slice into the same
/// sheaf, and also into it on an intermediate blow-up chart.
pub fn alpha_stability() -> Check {
    let s = session("xyz_t3");
    let slice = s.map("slice").map_err(err)?;
    let tree = resolution(s, "S3");
    let target = resolution(s, "X");
    let mut n = 0;
    for name in s.form_names() {
        let w = s.form(name).map_err(err)?;
        if w.space().name() != "X" || verdict(w, target)? > SheafLevel::Alpha {
            continue;
        }
        let v = verdict(&slice.pullback_form(w).map_err(err)?, tree)?;
        ensure!(v <= SheafLevel::Alpha, "slice pull-back of {name} is {v}");
        n += 1;
    }
    ensure!(n >= 3, "only {n} sections tested");
    let om1 = slice.pullback_form(s.form("om1").map_err(err)?).map_err(err)?;
    ensure!(verdict(&om1, tree)? > SheafLevel::Alpha, "pull-back of om1 should leave the middle sheaf");
    // intermediate chart of the first blow-up of S5
    let x = session("s_5").space("S5").map_err(err)?;
    let mut first = ResolutionTree::new("B1", x);
    first.blowup_origins(1).map_err(err)?;
    let chart = first.leaves().into_iter().find(|c| c.is_smooth() != Smoothness::Smooth).ok_or("no singular chart")?;
    let sub = blown_up(chart.space(), 4);
    for q in 1..=2 {
        let w = form(x, &format!("x*dy/z^{q}"));
        ensure!(verdict(&w, &blown_up(x, 5))? == SheafLevel::Alpha, "x dy/z^{q} on S5");
        let v = verdict(&chart.total_map().pullback_form(&w).map_err(err)?, &sub)?;
        ensure!(v <= SheafLevel::Alpha, "x dy/z^{q} on {} is {v}", chart.name());
        n += 1;
    }
    Ok(format!("{n} sections"))
}
