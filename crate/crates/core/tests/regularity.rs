use coxkit::group::DEFAULT_CAP;
use coxkit::invariants::field_of_definition;
use coxkit::regularity::{
    charpoly_field_check, check_simply_transitive, coxeter_elements, eigenvalue_of_order_h,
    galois_action_on_classes, is_coxeter_element, is_regular_for, is_zeta_regular, regular_classes,
    springer_checks, Root,
};
use coxkit::{CycloNum, Group, GroupSpec};
use proptest::prelude::*;

fn group(name: &str) -> Group {
    Group::from_spec(&name.parse::<GroupSpec>().unwrap(), DEFAULT_CAP).unwrap()
}

fn coxeter_product(g: &Group) -> usize {
    g.table.product(g.table.generators().iter().copied())
}

#[test]
fn dihedral_regularity() {
    let g = group("I2(5)");
    let t = &g.table;
    let c = coxeter_product(&g);
    let c2 = t.pow(c, 2);
    let l = t.conductor();
    let zeta = |k: i64| CycloNum::root_of_unity(l, k * l as i64 / 5);
    let regular = |w, k| is_zeta_regular(t, w, &zeta(k)).unwrap();
    // c is regular for one of zeta, zeta^4 and so for both
    assert!(regular(c, 1) && regular(c, 4));
    assert!(!regular(c2, 1));
    assert!(regular(c2, 2) && regular(c2, 3));
    assert!(is_zeta_regular(t, t.identity_index(), &CycloNum::one(l)).unwrap());
    // a zeta of smaller conductor is promoted
    assert!(is_zeta_regular(t, c, &CycloNum::root_of_unity(5, 1)).unwrap());
    // no two roots are orthogonal when m is odd
    for &r in t.reflections() {
        assert!(is_regular_for(t, r, Root::new(2, 1)));
    }
    for w in [c, c2, t.pow(c, 3), t.pow(c, 4)] {
        assert!(is_coxeter_element(&g.table, &g.degrees, w));
        assert!(eigenvalue_of_order_h(t, &g.degrees, w));
    }
    for &r in t.reflections() {
        assert!(!is_coxeter_element(t, &g.degrees, r));
    }
    assert!(!is_coxeter_element(t, &g.degrees, t.identity_index()));
}

#[test]
fn reflections_are_not_regular_in_even_dihedral_group() {
    // the root of each reflection lies on the mirror orthogonal to it
    let g = group("I2(6)");
    let t = &g.table;
    assert!(t
        .reflections()
        .iter()
        .all(|&r| !is_regular_for(t, r, Root::new(2, 1))));
}

#[test]
fn standard_coxeter_products() {
    for name in ["A3", "B3", "D4", "H3", "G(3,1,2)", "G(3,3,3)", "G4"] {
        let g = group(name);
        assert!(
            is_coxeter_element(&g.table, &g.degrees, coxeter_product(&g)),
            "{name}"
        );
    }
    let b3 = group("B3");
    for &r in b3.table.reflections() {
        assert!(!eigenvalue_of_order_h(&b3.table, &b3.degrees, r));
    }
}

#[test]
fn d4_counterexample_has_no_eigenvalue_of_order_h() {
    let g = group("D4");
    let t = &g.table;
    let [s, tt, u, v] = t.generators() else {
        panic!("four generators")
    };
    let w = t.product([*s, *u, *v, *u, *tt, *u]);
    assert_eq!(t.order_of(w), 4);
    assert!(!eigenvalue_of_order_h(t, &g.degrees, w));
    assert!(!is_coxeter_element(t, &g.degrees, w));
}

#[test]
fn regular_class_counts() {
    for (name, d, count) in [
        ("I2(5)", 5, 2),
        ("B3", 6, 1),
        ("H3", 10, 2),
        ("G(3,1,2)", 6, 2),
        ("G4", 6, 2),
    ] {
        let g = group(name);
        let set = regular_classes(&g.table, &g.degrees, d).unwrap();
        assert_eq!(set.len(), count, "{name}");
        let mut roots: Vec<u64> = set
            .classes
            .iter()
            .flat_map(|c| c.eigenvalues.iter().map(|e| e.exponent))
            .collect();
        roots.sort_unstable();
        let units: Vec<u64> = (1..d).filter(|&k| num_integer::gcd(k, d) == 1).collect();
        assert_eq!(roots, units, "{name}");
    }
    let g = group("I2(5)");
    assert!(regular_classes(&g.table, &g.degrees, 3).is_err());
}

#[test]
fn springer_eigenvalues() {
    let g = group("I2(5)");
    let c = coxeter_product(&g);
    let root = if is_regular_for(&g.table, c, Root::new(5, 1)) {
        Root::new(5, 1)
    } else {
        Root::new(5, 4)
    };
    let report = springer_checks(&g.table, &g.degrees, c, root).unwrap();
    assert!(report.ok());
    let mut exps: Vec<u64> = report
        .eigenvalues
        .iter()
        .map(|(r, _)| r.exponent * 5 / r.order)
        .collect();
    exps.sort_unstable();
    assert_eq!(exps, [1, 4]);

    let b3 = group("B3");
    let c = coxeter_product(&b3);
    let root = [1, 5]
        .into_iter()
        .map(|k| Root::new(6, k))
        .find(|&r| is_regular_for(&b3.table, c, r))
        .unwrap();
    let report = springer_checks(&b3.table, &b3.degrees, c, root).unwrap();
    assert!(report.ok());
    // zeta^-1, zeta^-3, zeta^-5 are the three eigenvalues
    let mut sixths: Vec<u64> = report
        .eigenvalues
        .iter()
        .map(|(r, _)| r.exponent * 6 / r.order)
        .collect();
    sixths.sort_unstable();
    assert_eq!(sixths, [1, 3, 5]);

    let e = b3.table.identity_index();
    let report = springer_checks(&b3.table, &b3.degrees, e, Root::new(1, 0)).unwrap();
    assert_eq!(report.eigenvalues, [(Root::new(1, 0), 3)]);
    assert!(report.ok());
    assert!(springer_checks(
        &b3.table,
        &b3.degrees,
        b3.table.reflections()[0],
        Root::new(6, 1)
    )
    .is_err());
}

#[test]
fn galois_action() {
    let g = group("I2(5)");
    let set = regular_classes(&g.table, &g.degrees, 5).unwrap();
    assert_eq!(galois_action_on_classes(&g.table, &set, 1).unwrap(), [0, 1]);
    assert_eq!(galois_action_on_classes(&g.table, &set, 6).unwrap(), [0, 1]);
    assert_eq!(galois_action_on_classes(&g.table, &set, 2).unwrap(), [1, 0]);
    assert!(galois_action_on_classes(&g.table, &set, 5).is_err());

    let b3 = group("B3");
    let set = regular_classes(&b3.table, &b3.degrees, 6).unwrap();
    assert_eq!(galois_action_on_classes(&b3.table, &set, 5).unwrap(), [0]);
}

#[test]
fn simply_transitive_powering() {
    for name in [
        "I2(5)", "A3", "B3", "D4", "H3", "G4", "G(3,3,3)", "G(4,2,2)",
    ] {
        let g = group(name);
        let f = field_of_definition(&g.table);
        assert!(
            check_simply_transitive(&g.table, &g.degrees, &f).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn char_poly_coefficients_generate_trace_field() {
    for name in ["B3", "I2(5)", "H3", "G4"] {
        let g = group(name);
        let f = field_of_definition(&g.table);
        for c in coxeter_elements(&g.table, &g.degrees) {
            assert!(charpoly_field_check(&g.table, &f, c), "{name} {c}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regularity_is_conjugation_invariant(w in 0usize..120, x in 0usize..120, k in 1u64..10) {
        let g = group("H3");
        let t = &g.table;
        let k = [1, 3, 7, 9][k as usize % 4];
        let root = Root::new(10, k);
        prop_assert_eq!(is_regular_for(t, w, root), is_regular_for(t, t.conjugate(x, w), root));
    }

    #[test]
    fn coxeter_elements_closed_under_coprime_powers(p in 1u64..30) {
        let g = group("H3");
        let t = &g.table;
        prop_assume!(num_integer::gcd(p, 10) == 1);
        let cox = coxeter_elements(t, &g.degrees);
        for &c in &cox {
            prop_assert!(cox.binary_search(&t.pow(c, p)).is_ok());
        }
    }
}
