use proptest::prelude::*;

use super::*;
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

fn quadric() -> SpaceRef {
    space("Q", &["x", "y", "u", "v"], &["x*y - u*v"])
}

fn form(x: &SpaceRef, text: &str) -> MeroForm {
    parse_form(x, text).unwrap()
}

#[test]
fn relation_rows_of_s_k() {
    let x = s_k(4);
    let rows = x.relation_generators(1).unwrap();
    assert_eq!(rows.len(), 4);
    let texts: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
    assert!(texts.contains(&"y*e0 + x*e1 + -4*z^3*e2".to_string()), "{texts:?}");
    let i0 = x.relation_generators(0).unwrap();
    assert_eq!(i0.len(), 1);
    let plane = space("A2", &["x", "y"], &[]);
    assert!(plane.omega_relations(1).unwrap().is_empty());
    assert!(plane.torsion_relations(2).unwrap().is_empty());
}

#[test]
fn node_torsion() {
    let x = space("N", &["x", "y"], &["x*y"]);
    let w = form(&x, "x*dy");
    assert!(!x.omega_relations(1).unwrap().contains(&w.numerator_elem()));
    assert!(w.is_torsion_free_zero().unwrap());
}

#[test]
fn torsion_is_idempotent() {
    let x = s_k(3);
    for p in 0..=3 {
        let sat = x.torsion_relations(p).unwrap();
        let again = sat.saturate(x.nzd());
        assert!(again.same_module(sat));
    }
}

#[test]
fn membership_examples() {
    for k in 2..=5 {
        let x = s_k(k);
        let w = form(&x, &format!("x*dy/z^{}", k - 1));
        assert!(!w.in_omega_mod_torsion().unwrap().0, "k = {k}");
        assert!(parse_form(&x, "x^2*dy^dz + z").is_err());
        assert!(form(&x, "x^2*dy^dz").in_omega_mod_torsion().unwrap().0);
    }
    let q = quadric();
    assert!(!form(&q, "u*dv^dx/x").in_omega_mod_torsion().unwrap().0);
}

#[test]
fn wedge_rules() {
    let x = s_k(3);
    let (dx, dy) = (form(&x, "dx"), form(&x, "dy"));
    assert_eq!(dx.wedge(&dy).unwrap(), dy.wedge(&dx).unwrap().neg());
    assert!(dx.wedge(&dx).unwrap().is_zero());
    assert_eq!(form(&x, "(x*dy/z)^dz"), form(&x, "x*dy^dz/z"));
    assert!(matches!(
        form(&x, "dx^dy^dz").wedge(&dx),
        Err(crate::Error::DegreeOutOfRange { .. })
    ));
    assert_eq!(form(&x, "dz^dx").to_text(), "(-1)*dx^dz");
}

#[test]
fn exterior_derivative_examples() {
    let x = s_k(3);
    assert_eq!(form(&x, "x*dy").exterior_derivative().unwrap(), form(&x, "dx^dy"));
    for t in ["x^2*y*z", "x*dy/z^2", "(x*dy - y*dx)/z^2", "x/(y+z)", "z*dx/(x+1)"] {
        let w = form(&x, t);
        let dd = w.exterior_derivative().unwrap().exterior_derivative().unwrap();
        assert!(dd.is_zero(), "{t}");
    }
    let q = quadric();
    let lhs = form(&q, "u*dv^dx/x - v*du^dx/x").exterior_derivative().unwrap();
    let rhs = form(&q, "-2*dy^du^dv/y");
    assert!(lhs.equals_mod_torsion(&rhs).unwrap());
}

#[test]
fn torsion_identities() {
    for k in 2..=6 {
        let x = s_k(k);
        let a = form(&x, "x*dy + y*dx");
        let b = form(&x, &format!("{k}*z^{}*dz", k - 1));
        assert!(a.equals_mod_torsion(&b).unwrap(), "k = {k}");
        assert!(a.equals_mod_torsion(&a).unwrap());
        assert!(!a.equals_mod_torsion(&form(&x, "x*dy")).unwrap());
        let c = form(&x, &format!("dx/x + dy/y - {k}*dz/z"));
        assert!(c.is_torsion_free_zero().unwrap());
    }
    let q = quadric();
    let a = form(&q, "u*dv^dy/y + v*du^dy/y");
    assert!(a.equals_mod_torsion(&form(&q, "dx^dy")).unwrap());
}

#[test]
fn pullback_examples() {
    let s2 = s_k(2);
    let chart = space("C", &["x", "c"], &[]);
    let ctx = chart.ctx().clone();
    let img = |t: &str| Poly::parse(&ctx, t).unwrap();
    let phi = PolyMap::new(&chart, &s2, vec![img("x"), img("x*c^2"), img("x*c")]).unwrap();
    let w = phi.pullback_form(&form(&s2, "dx^dy/z")).unwrap();
    assert_eq!(w, form(&chart, "2*dx^dc"));

    let id = PolyMap::identity(&s2);
    let v = form(&s2, "(x*dy - y*dx)/z");
    assert_eq!(id.pullback_form(&v).unwrap(), v);

    // chart {gamma != 0} of S_k: x = a z, y = b z on a b = z^(k-2)
    for k in 3..=6u32 {
        let sk = s_k(k);
        let c = space("G", &["a", "b", "z"], &[&format!("a*b - z^{}", k - 2)]);
        let ctx = c.ctx().clone();
        let img = |t: &str| Poly::parse(&ctx, t).unwrap();
        let phi = PolyMap::new(&c, &sk, vec![img("a*z"), img("b*z"), img("z")]).unwrap();
        for q in 2..k {
            let w = phi.pullback_form(&form(&sk, &format!("x*dy/z^{q}"))).unwrap();
            let expect = form(&c, &format!("a*db/z^{} + z^{}*dz", q - 2, k - q - 1));
            assert!(w.equals_mod_torsion(&expect).unwrap(), "k = {k}, q = {q}");
        }
    }
}

#[test]
fn pullback_errors() {
    let s2 = s_k(2);
    let line = space("L", &["t"], &[]);
    let ctx = line.ctx().clone();
    let zero = Poly::zero(&ctx);
    let t = Poly::var(&ctx, 0);
    let phi = PolyMap::new(&line, &s2, vec![t.clone(), zero.clone(), zero]).unwrap();
    assert!(matches!(phi.pullback_form(&form(&s2, "dx/z")), Err(crate::Error::PullbackUndefined(_))));
    assert!(matches!(
        PolyMap::new(&line, &s2, vec![t.clone(), t, Poly::one(&ctx)]),
        Err(crate::Error::InvalidMap(_))
    ));
}

#[test]
fn restriction_examples() {
    let node = space("N", &["x", "y"], &["x*y"]);
    let axis = space("A", &["x", "y"], &["y"]);
    let inc = PolyMap::identity_between(&axis, &node).unwrap();
    let r = restrict_form(&form(&node, "x*dy"), &inc).unwrap();
    assert!(r.is_torsion_free_zero().unwrap());
    let line = space("L", &["x"], &[]);
    let ctx = line.ctx().clone();
    let inc = PolyMap::new(&line, &node, vec![Poly::var(&ctx, 0), Poly::zero(&ctx)]).unwrap();
    assert!(restrict_form(&form(&node, "x*dy"), &inc).unwrap().is_zero());

    // torsion restricts to torsion
    let x = space("X", &["x", "y", "z", "t"], &["x*y*z - t^3"]);
    let slice = space("Z1", &["x", "y", "z", "t"], &["x*y*z - t^3", "z - 1"]);
    let inc = PolyMap::identity_between(&slice, &x).unwrap();
    let w = form(&x, "x*dy/t^2");
    let r = restrict_form(&w, &inc).unwrap();
    assert_eq!(r.degree(), 1);
    let tors = form(&x, "y*z*dx + x*z*dy + x*y*dz - 3*t^2*dt");
    assert!(tors.is_torsion_free_zero().unwrap());
    assert!(restrict_form(&tors, &inc).unwrap().is_torsion_free_zero().unwrap());
}

#[test]
fn composition_of_maps() {
    let s2 = s_k(2);
    let s4 = s_k(4);
    let ctx2 = s2.ctx().clone();
    let img = |t: &str| Poly::parse(&ctx2, t).unwrap();
    let g = PolyMap::new(&s2, &s4, vec![img("x*z"), img("y*z"), img("z")]).unwrap();
    let chart = space("C", &["x", "c"], &[]);
    let ctxc = chart.ctx().clone();
    let imc = |t: &str| Poly::parse(&ctxc, t).unwrap();
    let f = PolyMap::new(&chart, &s2, vec![imc("x"), imc("x*c^2"), imc("x*c")]).unwrap();
    let gf = g.after(&f).unwrap();
    for t in ["x*dy/z^2", "dx^dy/z^3", "(x*dy - y*dx)/z", "x*y"] {
        let w = form(&s4, t);
        let two = f.pullback_form(&g.pullback_form(&w).unwrap()).unwrap();
        let one = gf.pullback_form(&w).unwrap();
        assert!(two.equals_mod_torsion(&one).unwrap(), "{t}");
    }
}

fn small_poly() -> impl Strategy<Value = String> {
    prop::collection::vec((-3i32..=3, 0u32..=2, 0u32..=2, 0u32..=2), 1..4).prop_map(|ts| {
        ts.iter()
            .map(|(c, a, b, e)| format!("({c})*x^{a}*y^{b}*z^{e}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leibniz_and_ring_laws(f in small_poly(), g in small_poly(), h in small_poly()) {
        let x = s_k(3);
        let a = form(&x, &format!("({f})*dx + ({g})*dz"));
        let b = form(&x, &format!("({h})*dy/z"));
        let da = a.exterior_derivative().unwrap();
        let db = b.exterior_derivative().unwrap();
        let lhs = a.wedge(&b).unwrap().exterior_derivative().unwrap();
        let rhs = da.wedge(&b).unwrap().sub(&a.wedge(&db).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().neg());
        let s = a.add(&b.mul_poly(&Poly::parse(x.ctx(), "z").unwrap())).unwrap();
        prop_assert_eq!(s.sub(&a).unwrap(), form(&x, &format!("({h})*dy")));
        prop_assert!(a.equals_mod_torsion(&a).unwrap());
        let c = form(&x, &format!("({g})*dy"));
        if a.equals_mod_torsion(&c).unwrap() {
            prop_assert!(c.equals_mod_torsion(&a).unwrap());
        }
        let e = form(&x, &format!("({f})*dx + ({g})*dz + x*dy + y*dx - 3*z^2*dz"));
        prop_assert!(a.equals_mod_torsion(&e).unwrap());
        let w = form(&x, "dx");
        prop_assert!(a.wedge(&w).unwrap().equals_mod_torsion(&e.wedge(&w).unwrap()).unwrap());
    }
}
