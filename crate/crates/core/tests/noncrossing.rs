use coxkit::group::DEFAULT_CAP;
use coxkit::noncrossing::{
    absolute_lengths, export_text, is_lattice, is_self_dual, leq_abs, nc_interval,
    poset_isomorphic, rank_sizes_palindromic, Poset,
};
use coxkit::regularity::{coxeter_elements, regular_classes};
use coxkit::{Group, GroupSpec};
use proptest::prelude::*;

fn group(name: &str) -> Group {
    Group::from_spec(&name.parse::<GroupSpec>().unwrap(), DEFAULT_CAP).unwrap()
}

fn coxeter_product(g: &Group) -> usize {
    g.table.product(g.table.generators().iter().copied())
}

/// The permutation of a permutation matrix.
fn permutation(g: &Group, w: usize) -> Vec<usize> {
    let m = g.table.matrix(w);
    (0..m.dim())
        .map(|i| (0..m.dim()).find(|&j| !m.get(i, j).is_zero()).unwrap())
        .collect()
}

fn cycles(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for i in 0..p.len() {
        if !seen[i] {
            count += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    count
}

/// Brute-force lattice check by explicit joins and meets.
fn lattice_oracle(p: &Poset) -> bool {
    let n = p.len();
    let bounds = |x: usize, y: usize, upper: bool| -> Vec<usize> {
        (0..n)
            .filter(|&z| {
                if upper {
                    p.leq[x][z] && p.leq[y][z]
                } else {
                    p.leq[z][x] && p.leq[z][y]
                }
            })
            .collect()
    };
    (0..n).all(|x| {
        (0..n).all(|y| {
            let ub = bounds(x, y, true);
            let lb = bounds(x, y, false);
            ub.iter().any(|&j| ub.iter().all(|&z| p.leq[j][z]))
                && lb.iter().any(|&m| lb.iter().all(|&z| p.leq[z][m]))
        })
    })
}

#[test]
fn symmetric_group_lengths_from_cycle_type() {
    let g = group("G(1,1,4)");
    let lengths = absolute_lengths(&g.table);
    for w in 0..g.table.order() {
        assert_eq!(
            lengths.len(w),
            4 - cycles(&permutation(&g, w)),
            "element {w}"
        );
    }
    assert_eq!(lengths.max_len(), 3);
}

#[test]
fn length_table_axioms() {
    let g = group("H3");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    assert_eq!(lengths.len(t.identity_index()), 0);
    for w in 0..t.order() {
        assert_eq!(lengths.len(w) == 1, t.is_reflection(w));
        assert_eq!(lengths.len(w), lengths.len(t.inv(w)));
        // bounded below by the codimension of the fixed space
        assert!(lengths.len(w) >= t.rank() - t.fixed_dim(w));
    }
}

#[test]
fn dihedral_absolute_order() {
    let g = group("I2(5)");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    let [s, r] = t.generators() else {
        panic!("two generators")
    };
    let c = t.mult(*s, *r);
    assert_eq!(lengths.len(c), 2);
    assert!(leq_abs(t, &lengths, *r, c));
    let sts = t.product([*s, *r, *s]);
    assert_eq!(t.mult(sts, *r), t.pow(c, 2));
    assert!(leq_abs(t, &lengths, sts, t.pow(c, 2)));
    for w in 0..t.order() {
        assert!(leq_abs(t, &lengths, t.identity_index(), w));
        assert!(leq_abs(t, &lengths, w, w));
    }
}

#[test]
fn interval_sizes_and_shape() {
    for (name, size, ranks) in [
        ("I2(5)", 7, vec![1, 5, 1]),
        ("A3", 14, vec![1, 6, 6, 1]),
        ("B3", 20, vec![1, 9, 9, 1]),
        ("H3", 32, vec![1, 15, 15, 1]),
        ("G(3,1,2)", 6, vec![1, 4, 1]),
        ("G4", 5, vec![1, 3, 1]),
    ] {
        let g = group(name);
        let t = &g.table;
        let lengths = absolute_lengths(t);
        let c = coxeter_product(&g);
        let p = nc_interval(t, &lengths, c);
        let h = g.h();
        let catalan: u64 = g.degrees.degrees.iter().map(|d| d + h).product::<u64>()
            / g.degrees.degrees.iter().product::<u64>();
        assert_eq!(catalan, size as u64, "{name}");
        assert_eq!(p.len(), size, "{name}");
        assert_eq!(p.rank_sizes(), ranks, "{name}");
        assert!(p.contains(t.identity_index()) && p.contains(c));
        assert!(is_lattice(&p) && lattice_oracle(p.poset()), "{name}");
        assert!(is_self_dual(&p), "{name}");
        assert!(rank_sizes_palindromic(&p));
        assert!(poset_isomorphic(&p, &p));
        // members are exactly the brute-force interval
        let brute: Vec<usize> = (0..t.order())
            .filter(|&w| leq_abs(t, &lengths, w, c))
            .collect();
        let mut members = p.members.clone();
        members.sort_unstable();
        assert_eq!(members, brute);
    }
}

#[test]
fn coxeter_classes_give_isomorphic_lattices() {
    for name in ["I2(5)", "H3", "G(3,1,2)", "G4"] {
        let g = group(name);
        let t = &g.table;
        let lengths = absolute_lengths(t);
        let set = regular_classes(t, &g.degrees, g.h()).unwrap();
        assert_eq!(set.len(), 2, "{name}");
        let a = nc_interval(t, &lengths, set.classes[0].representative);
        let b = nc_interval(t, &lengths, set.classes[1].representative);
        assert!(poset_isomorphic(&a, &b), "{name}");
        let iso = a.poset().isomorphism(b.poset()).unwrap();
        for x in 0..a.len() {
            for y in 0..a.len() {
                assert_eq!(a.poset().leq[x][y], b.poset().leq[iso[x]][iso[y]]);
            }
        }
    }
}

#[test]
fn non_isomorphic_posets_are_distinguished() {
    let g = group("A3");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    let nc = nc_interval(t, &lengths, coxeter_product(&g));
    // a 3-cycle spans a smaller interval
    let small = nc_interval(t, &lengths, t.mult(t.generators()[0], t.generators()[1]));
    assert_eq!(small.len(), 5);
    assert!(!poset_isomorphic(&nc, &small));
    // same size, different shape: the interval below a product of two commuting reflections
    let b = group("B3");
    let bl = absolute_lengths(&b.table);
    let a2 = nc_interval(
        &b.table,
        &bl,
        b.table
            .mult(b.table.generators()[1], b.table.generators()[2]),
    );
    let mut commuting = None;
    for &r in b.table.reflections() {
        for &s in b.table.reflections() {
            if r < s && b.table.mult(r, s) == b.table.mult(s, r) {
                commuting.get_or_insert(b.table.mult(r, s));
            }
        }
    }
    let a1a1 = nc_interval(&b.table, &bl, commuting.unwrap());
    assert_eq!(a1a1.len(), 4);
    assert!(a2.len() != a1a1.len() || !poset_isomorphic(&a2, &a1a1));
}

#[test]
fn text_export() {
    let g = group("A2");
    let t = &g.table;
    let p = nc_interval(t, &absolute_lengths(t), coxeter_product(&g));
    let text = export_text(&p);
    assert_eq!(text.lines().filter(|l| l.starts_with("node ")).count(), 5);
    assert_eq!(
        text.lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("node "))
            .count(),
        6
    );
}

#[test]
fn intervals_of_all_coxeter_elements_have_catalan_size() {
    let g = group("B3");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    for c in coxeter_elements(t, &g.degrees) {
        assert_eq!(nc_interval(t, &lengths, c).len(), 20);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn length_triangle_inequality(u in 0usize..192, w in 0usize..192) {
        let g = group("D4");
        let t = &g.table;
        let lengths = absolute_lengths(t);
        let (lu, lw, luw) = (lengths.len(u) as i64, lengths.len(w) as i64, lengths.len(t.mult(u, w)) as i64);
        prop_assert!((luw - lu).abs() <= lw);
        prop_assert!(luw <= lu + lw);
    }
}

#[test]
fn b6_elements_of_full_length_without_eigenvalue() {
    let g = group("B6");
    let t = &g.table;
    let lengths = absolute_lengths(t);
    let twelve = coxkit::noncrossing::elements_without_eigenvalue(t, &lengths, 6, 12, 12);
    let six = coxkit::noncrossing::elements_without_eigenvalue(t, &lengths, 6, 12, 6);
    // witnesses exist for either eigenvalue order
    assert!(!twelve.is_empty() && !six.is_empty());
    // Coxeter elements have order 12 and a primitive 12th root eigenvalue
    for &w in &twelve {
        assert!(!coxkit::regularity::is_coxeter_element(t, &g.degrees, w));
    }
}
