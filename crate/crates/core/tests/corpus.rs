mod common;

use common::{corpus, resolution, session, verdict};
use sheafchain::classify::{verify_dependence, SheafLevel};
use sheafchain::forms::Smoothness;
use sheafchain::session::{parse_session, print_session};

#[test]
fn every_file_loads_and_round_trips() {
    let names: Vec<&str> = corpus().iter().map(|(n, _)| n.as_str()).collect();
    for want in ["s_2", "s_3", "s_4", "s_5", "s_6", "s_7", "fermat_cubic", "quadric3fold", "xyz_t3", "traces"] {
        assert!(names.contains(&want), "missing {want}");
    }
    for (name, s) in corpus() {
        let printed = print_session(s.file());
        let again = parse_session(&printed).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
        assert_eq!(&again, s.file(), "{name}");
        assert_eq!(print_session(&again), printed, "{name}");
    }
}

#[test]
fn s_5_file_shape() {
    let f = session("s_5").file();
    assert_eq!(f.count("space"), 1);
    assert_eq!(f.count("form"), 6);
    assert_eq!(f.count("resolution"), 1);
    // the toric resolution of an A_4 point needs five charts
    assert_eq!(f.count("chart"), 5);
}

#[test]
fn expected_verdicts() {
    use SheafLevel::*;
    let mut table = vec![
        ("fermat_cubic", "alpha", L),
        ("fermat_cubic", "alpha_z", Alpha),
        ("fermat_cubic", "om", OmegaBig),
        ("fermat_cubic", "xom", L),
        ("fermat_cubic", "yom", L),
        ("fermat_cubic", "zom", L),
        ("fermat_cubic", "hol", OmegaModTorsion),
        ("quadric3fold", "eta3", L),
        ("quadric3fold", "a", Alpha),
        ("quadric3fold", "b", OmegaModTorsion),
        ("quadric3fold", "c", None),
        ("quadric3fold", "hol", OmegaModTorsion),
        ("quadric3fold", "eta", Alpha),
        ("quadric3fold", "radial", OmegaModTorsion),
        ("quadric3fold", "rot", None),
        ("xyz_t3", "om1", L),
        ("xyz_t3", "om2", L),
        ("xyz_t3", "om3", L),
        ("xyz_t3", "u", Alpha),
        ("xyz_t3", "v", Alpha),
        ("xyz_t3", "w", Alpha),
        ("xyz_t3", "tu", OmegaModTorsion),
    ];
    let files = ["s_2", "s_3", "s_4", "s_5", "s_6", "s_7"];
    let names: Vec<Vec<String>> = (2..=7).map(|k| (1..k).map(|q| format!("w{q}")).collect()).collect();
    for (k, file) in (2..=7).zip(files) {
        for q in 1..k {
            let v = if q <= k / 2 { Alpha } else { L };
            table.push((file, names[k - 2][q - 1].as_str(), v));
        }
        table.push((file, "top", L));
        table.push((file, "hol", OmegaModTorsion));
        if k % 2 == 0 {
            table.push((file, "wq", Alpha));
        }
    }
    for (file, name, want) in table {
        let s = session(file);
        let w = s.form(name).unwrap();
        let tree = resolution(s, w.space().name());
        assert_eq!(verdict(w, tree).unwrap(), want, "{file}/{name}");
    }
}

#[test]
fn resolutions_have_smooth_leaves() {
    for (file, s) in corpus() {
        for name in s.space_names() {
            for tree in s.resolutions_of(name) {
                tree.check_resolved().unwrap();
                for leaf in tree.leaves() {
                    assert_eq!(leaf.is_smooth(), Smoothness::Smooth, "{file}/{}", leaf.name());
                }
            }
        }
    }
}

#[test]
fn relations_hold_for_their_sections() {
    let mut n = 0;
    for (file, s) in corpus() {
        for name in s.relation_names() {
            let (w, rel) = s.relation(name).unwrap();
            let tree = resolution(s, w.space().name());
            assert!(verdict(w, tree).unwrap() <= SheafLevel::Alpha, "{file}/{name}");
            assert!(verify_dependence(w, rel).unwrap().holds, "{file}/{name}");
            n += 1;
        }
    }
    assert!(n >= 6);
}

#[test]
fn forms_in_the_chain_pass_the_trace_test() {
    for (file, s) in corpus() {
        for name in s.form_names() {
            let w = s.form(name).unwrap();
            let space = w.space().name();
            let (Some(g), Some(tree)) = (s.graphs_of(space).into_iter().next(), s.resolutions_of(space).into_iter().next()) else {
                continue;
            };
            if verdict(w, tree).unwrap() <= SheafLevel::L {
                assert!(g.omega_membership(w).unwrap().member, "{file}/{name}");
            }
        }
    }
}
