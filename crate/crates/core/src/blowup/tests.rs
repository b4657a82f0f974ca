use super::*;
use crate::forms::{MeroForm, Smoothness, Space, SpaceRef};
use crate::poly::{Poly, VarContext};
use crate::session::parse_form;

fn space(name: &str, vars: &[&str], eqs: &[&str]) -> SpaceRef {
    let ctx = VarContext::new(vars).unwrap();
    let eqs = eqs.iter().map(|e| Poly::parse(&ctx, e).unwrap()).collect();
    Space::new(name, &ctx, eqs, None).unwrap()
}

fn s_k(k: u32) -> SpaceRef {
    space(&format!("S{k}"), &["x", "y", "z"], &[&format!("x*y - z^{k}")])
}

fn form(x: &SpaceRef, t: &str) -> MeroForm {
    parse_form(x, t).unwrap()
}

fn images(c: &Chart) -> Vec<String> {
    c.total_map().images().iter().map(|p| p.to_string()).collect()
}

#[test]
fn charts_of_s_k() {
    for k in 4..=6 {
        let root = Chart::root(&s_k(k));
        let charts = root.blowup_point(&["x", "y", "z"]).unwrap();
        assert_eq!(charts.len(), 3);
        let cz = &charts[2];
        assert_eq!(cz.space().ctx().names(), &["a", "b", "z"]);
        assert_eq!(cz.space().equations()[0], Poly::parse(cz.space().ctx(), &format!("a*b - z^{}", k - 2)).unwrap());
        assert_eq!(images(cz), vec!["a*z", "b*z", "z"]);
        assert_eq!(cz.exceptional()[0].to_string(), "z");
        assert_ne!(cz.is_smooth(), Smoothness::Smooth);
        assert_eq!(charts[0].is_smooth(), Smoothness::Smooth);
    }
}

#[test]
fn chart_x_of_s_2_eliminates_a_variable() {
    let root = Chart::root(&s_k(2));
    let charts = root.blowup_point(&["x", "y", "z"]).unwrap();
    let cx = &charts[0];
    assert_eq!(cx.space().ctx().names(), &["x", "c"]);
    assert!(cx.space().equations().is_empty());
    assert_eq!(images(cx), vec!["x", "x*c^2", "x*c"]);
    assert_eq!(cx.is_smooth(), Smoothness::Smooth);
    // the other chart of S_2 is smooth too
    assert!(charts.iter().all(|c| c.is_smooth() == Smoothness::Smooth));
}

#[test]
fn fermat_cone_chart() {
    let x = space("F", &["x", "y", "z"], &["x^3 + y^3 + z^3"]);
    let root = Chart::root(&x);
    let charts = root.blowup_point(&["x", "y", "z"]).unwrap();
    let cz = &charts[2];
    assert_eq!(cz.space().equations()[0].to_string(), "a^3 + b^3 + 1");
    assert_eq!(images(cz), vec!["a*z", "b*z", "z"]);
    assert!(charts.iter().all(|c| c.is_smooth() == Smoothness::Smooth));
}

#[test]
fn empty_strict_transforms() {
    let line = space("L", &["x", "y"], &["x"]);
    let root = Chart::root(&line);
    let charts = root.blowup_point(&["x", "y"]).unwrap();
    assert_eq!(charts.len(), 1);
    assert!(matches!(root.blowup_chart(&[0, 1], 0), Err(crate::Error::EmptyStrictTransform(_))));
    let off = space("O", &["x", "y"], &["x - 1"]);
    let c = Chart::root(&off).blowup_point(&["x", "y"]).unwrap();
    assert_eq!(c.len(), 2);
}

#[test]
fn tau_module_of_s_2() {
    let root = Chart::root(&s_k(2));
    let cx = &root.blowup_point(&["x", "y", "z"]).unwrap()[0];
    let t = cx.tau_module(2).unwrap();
    assert_eq!(t.generators().len(), 1);
    assert_eq!(t.generators()[0].to_string(), "x*e0");
    assert!(cx.tau_module(0).unwrap().is_whole());
    let w = form(root.space(), "dx^dy/z");
    let (ok, _) = cx.in_tau_star(&w).unwrap();
    assert!(!ok);
    assert!(cx.in_tau_star(&form(root.space(), "dx^dy + x*dy^dz")).unwrap().0);
    let pulled = cx.total_map().pullback_form(&w).unwrap();
    assert!(pulled.is_polynomial());
}

#[test]
fn tau_requires_smooth_chart() {
    let root = Chart::root(&s_k(4));
    let cz = &root.blowup_point(&["x", "y", "z"]).unwrap()[2];
    assert!(matches!(cz.tau_module(1), Err(crate::Error::Unresolved(_))));
}

#[test]
fn fermat_alpha_in_tau() {
    let x = space("F", &["x", "y", "z"], &["x^3 + y^3 + z^3"]);
    let root = Chart::root(&x);
    let w = form(&x, "(x*dy - y*dx)/z");
    for c in root.blowup_point(&["x", "y", "z"]).unwrap() {
        assert!(c.in_tau_star(&w).unwrap().0, "{}", c.name());
    }
}

#[test]
fn composite_chart_of_s_5() {
    let mut tree = ResolutionTree::new("R", &s_k(5));
    tree.blowup("S5", &["x", "y", "z"]).unwrap();
    tree.blowup("S5_z", &["a", "b", "z"]).unwrap();
    let c = tree.chart("S5_z_z").unwrap();
    assert_eq!(c.space().ctx().names(), &["a", "b"]);
    assert_eq!(images(c), vec!["a^3*b^2", "a^2*b^3", "a*b"]);
    assert_eq!(c.depth(), 2);
    // composing pairwise in either order gives the same total map
    let p = tree.chart("S5_z").unwrap();
    let direct = p.total_map().after(c.local_map()).unwrap();
    let other = tree.root_chart().total_map().after(&p.local_map().after(c.local_map()).unwrap()).unwrap();
    let a: Vec<String> = direct.images().iter().map(|p| p.to_string()).collect();
    let b: Vec<String> = other.images().iter().map(|p| p.to_string()).collect();
    assert_eq!(a, b);
    assert_eq!(a, images(c));
}

#[test]
fn s_k_resolves_by_origin_blowups() {
    for k in 2..=7 {
        let mut tree = ResolutionTree::new("R", &s_k(k));
        tree.blowup_origins(k as usize).unwrap();
        tree.check_resolved().unwrap();
        let leaves = tree.leaves();
        assert!(leaves.len() >= 2, "k = {k}");
        for l in &leaves {
            // strict transform: pulling back the root equation lands in the chart ideal
            let f = &tree.root_space().equations()[0];
            assert!(l.space().ideal().contains_poly(&l.total_map().pull_poly(f)));
        }
    }
}

#[test]
fn declared_charts_are_checked() {
    let s4 = s_k(4);
    let root = Chart::root(&s4);
    let c = space("G", &["a", "b", "z"], &["a*b - z^2"]);
    let img = |t: &str| Poly::parse(c.ctx(), t).unwrap();
    let z = Poly::parse(c.ctx(), "z").unwrap();
    let ok = Chart::declared("G", &root, &c, vec![img("a*z"), img("b*z"), img("z")], vec![z.clone()]).unwrap();
    assert_eq!(ok.parent(), Some("S4"));
    let bad = space("H", &["a", "b", "z"], &["a*b - z^3"]);
    let img = |t: &str| Poly::parse(bad.ctx(), t).unwrap();
    let zb = img("z");
    assert!(Chart::declared("H", &root, &bad, vec![img("a*z"), img("b*z"), img("z")], vec![zb]).is_err());
}

#[test]
fn multi_equation_blowup() {
    // the z-axis inside the 3-space, cut by two equations
    let x = space("C", &["x", "y", "z"], &["x", "y - z^2"]);
    let root = Chart::root(&x);
    let charts = root.blowup_point(&["y", "z"]).unwrap();
    assert!(!charts.is_empty());
    for c in &charts {
        assert_eq!(c.is_smooth(), Smoothness::Smooth);
    }
}
