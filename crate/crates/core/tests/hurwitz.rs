use std::collections::{BTreeSet, VecDeque};

use coxkit::group::DEFAULT_CAP;
use coxkit::hurwitz::{
    hurwitz_move, hurwitz_orbit, hurwitz_transitive, reduced_factorizations, Factorization, Move,
};
use coxkit::noncrossing::absolute_lengths;
use coxkit::regularity::coxeter_elements;
use coxkit::{Group, GroupSpec, GroupTable};
use proptest::prelude::*;

fn group(name: &str) -> Group {
    Group::from_spec(&name.parse::<GroupSpec>().unwrap(), DEFAULT_CAP).unwrap()
}

/// All `k`-tuples of reflections multiplying to `w`.
fn tuples_oracle(t: &GroupTable, w: usize, k: usize) -> BTreeSet<Vec<usize>> {
    let mut partial = vec![(t.identity_index(), Vec::new())];
    for _ in 0..k {
        partial = partial
            .into_iter()
            .flat_map(|(x, f)| {
                t.reflections().iter().map(move |&r| {
                    let mut g = f.clone();
                    g.push(r);
                    (t.mult(x, r), g)
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .filter(|(x, _)| *x == w)
        .map(|(_, f)| f)
        .collect()
}

/// Orbit under the moves `(a, b) -> (a b a^-1, a)` and their inverses.
fn orbit_oracle(t: &GroupTable, start: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(f) = queue.pop_front() {
        for i in 0..f.len().saturating_sub(1) {
            let (a, b) = (f[i], f[i + 1]);
            for (x, y) in [
                (t.product([a, b, t.inv(a)]), a),
                (b, t.product([t.inv(b), a, b])),
            ] {
                let mut g = f.clone();
                g[i] = x;
                g[i + 1] = y;
                if seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
    }
    seen
}

fn factors(fs: &[Factorization]) -> BTreeSet<Vec<usize>> {
    fs.iter().map(|f| f.factors.clone()).collect()
}

#[test]
fn identity_has_one_empty_factorization() {
    let g = group("A3");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    let e = t.identity_index();
    let fs = reduced_factorizations(t, &lengths, e);
    assert_eq!(fs.len(), 1);
    assert!(fs[0].factors.is_empty());
    assert!(hurwitz_transitive(t, &lengths, e).unwrap());
}

#[test]
fn factorization_counts() {
    for (name, count) in [
        ("A2", 3),
        ("I2(5)", 5),
        ("A3", 16),
        ("B3", 27),
        ("G(3,1,2)", 4),
    ] {
        let g = group(name);
        let t = &g.table;
        let lengths = absolute_lengths(t);
        let c = t.product(t.generators().iter().copied());
        let fs = reduced_factorizations(t, &lengths, c);
        assert_eq!(fs.len(), count, "{name}");
        assert_eq!(factors(&fs), tuples_oracle(t, c, lengths.len(c)), "{name}");
        let mut sorted = fs.clone();
        sorted.sort();
        assert_eq!(sorted, fs);
    }
}

#[test]
fn dihedral_factorizations_start_with_each_reflection() {
    let g = group("I2(5)");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    let c = t.product(t.generators().iter().copied());
    let first: BTreeSet<usize> = reduced_factorizations(t, &lengths, c)
        .iter()
        .map(|f| f.factors[0])
        .collect();
    assert_eq!(first, t.reflections().iter().copied().collect());
}

#[test]
fn orbit_of_a2_factorization() {
    let g = group("A2");
    let t = &g.table;
    let [s, r] = t.generators() else {
        panic!("two generators")
    };
    let f = Factorization {
        target: t.mult(*s, *r),
        factors: vec![*s, *r],
    };
    let orbit = hurwitz_orbit(t, &f).unwrap();
    assert_eq!(orbit.len(), 3);
    assert_eq!(factors(&orbit), orbit_oracle(t, &f.factors));
}

#[test]
fn moves() {
    let g = group("B3");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    let c = t.product(t.generators().iter().copied());
    for f in reduced_factorizations(t, &lengths, c) {
        for i in 0..2 {
            let forward = hurwitz_move(t, &f, i, Move::Forward).unwrap();
            assert_eq!(hurwitz_move(t, &forward, i, Move::Backward).unwrap(), f);
            assert_eq!(t.product(forward.factors.iter().copied()), c);
            let (a, b) = (f.factors[i], f.factors[i + 1]);
            if t.mult(a, b) == t.mult(b, a) {
                assert_eq!(forward.factors[i], b);
                assert_eq!(forward.factors[i + 1], a);
            }
        }
        assert!(hurwitz_move(t, &f, 2, Move::Forward).is_err());
    }
}

#[test]
fn transitivity_on_coxeter_elements() {
    for name in ["I2(5)", "A2", "A3", "B3", "G(3,1,2)", "G4", "G(3,3,3)"] {
        let g = group(name);
        let t = &g.table;
        let lengths = absolute_lengths(t);
        for c in coxeter_elements(t, &g.degrees) {
            assert!(hurwitz_transitive(t, &lengths, c).unwrap(), "{name} {c}");
        }
    }
    let g = group("I2(5)");
    let t = &g.table;
    let c = t.product(t.generators().iter().copied());
    assert!(hurwitz_transitive(t, &absolute_lengths(t), t.pow(c, 2)).unwrap());
}

#[test]
fn transitivity_fails_below_a_product_of_commuting_reflections_in_even_dihedral_groups() {
    // in I2(4) the element -1 = s * s' for each commuting pair of reflections,
    // and the two orbits are the two pairs
    let g = group("I2(4)");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    let minus_one = (0..t.order())
        .find(|&w| t.fixed_dim(w) == 0 && t.order_of(w) == 2)
        .unwrap();
    assert_eq!(reduced_factorizations(t, &lengths, minus_one).len(), 4);
    assert!(!hurwitz_transitive(t, &lengths, minus_one).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbits_match_brute_force(w in 0usize..48) {
        let g = group("B3");
        let t = &g.table;
        let lengths = absolute_lengths(t);
        let fs = reduced_factorizations(t, &lengths, w);
        prop_assert_eq!(factors(&fs), tuples_oracle(t, w, lengths.len(w)));
        let orbit = hurwitz_orbit(t, &fs[0]).unwrap();
        prop_assert_eq!(factors(&orbit), orbit_oracle(t, &fs[0].factors));
        prop_assert_eq!(hurwitz_transitive(t, &lengths, w).unwrap(), orbit.len() == fs.len());
    }
}
