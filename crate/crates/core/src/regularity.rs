//! Springer regularity, Coxeter elements and the powering action on classes of
//! regular elements.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, modulo, units};
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::invariants::{phi, phi_w, DegreeData, FieldData};

/// The root of unity `zeta_order^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Root {
    pub order: u64,
    pub exponent: u64,
}

impl Root {
    pub fn new(order: u64, exponent: u64) -> Self {
        assert!(order >= 1);
        Root {
            order,
            exponent: exponent % order,
        }
    }

    pub fn is_primitive(&self) -> bool {
        gcd(self.exponent, self.order) == 1
    }

    /// The root as an element of `Q(zeta_conductor)`, if it lives there.
    pub fn to_cyclo(&self, conductor: u32) -> Option<CycloNum> {
        let l = conductor as u64;
        l.is_multiple_of(self.order)
            .then(|| CycloNum::root_of_unity(conductor, (self.exponent * (l / self.order)) as i64))
    }

    pub fn pow(&self, p: u64) -> Root {
        Root::new(self.order, self.exponent * p)
    }
}

/// A regular eigenvalue `zeta_order^exponent` with its eigenspace dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegEig {
    pub order: u64,
    pub exponent: u64,
    pub eigenspace_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularClass {
    /// Least element of the class.
    pub representative: usize,
    pub class: usize,
    /// Primitive `d`-th roots for which the class is regular, ascending.
    pub eigenvalues: Vec<RegEig>,
}

/// The classes of regular elements of order `d`, partitioning the primitive
/// `d`-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularClassSet {
    pub order: u64,
    pub classes: Vec<RegularClass>,
}

impl RegularClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn position_of_class(&self, class: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.class == class)
    }
}

/// Whether `w` has a `zeta`-eigenvector off every reflecting hyperplane.
///
/// `zeta` may have any conductor dividing the ambient conductor. The
/// eigenspace is tested as a whole: it avoids the union of the hyperplanes iff
/// it lies inside none of them.
pub fn is_zeta_regular(table: &GroupTable, w: usize, zeta: &CycloNum) -> Result<bool> {
    let zeta = zeta.promote(table.conductor())?;
    let eig = table.ambient_matrix(w).eigenspace(&zeta)?;
    Ok(eigenspace_is_regular(table, &eig))
}

fn eigenspace_is_regular(table: &GroupTable, eig: &crate::CycloSubspace) -> bool {
    !eig.is_zero()
        && table.hyperplanes().iter().all(|h| {
            eig.basis().iter().any(|v| {
                let value = h
                    .ambient_form
                    .iter()
                    .zip(v)
                    .fold(CycloNum::zero(table.conductor()), |acc, (a, x)| {
                        &acc + &(a * x)
                    });
                !value.is_zero()
            })
        })
}

/// Dimension of the `root`-eigenspace of `w` (0 when `root` is not in the
/// ambient field, in which case it cannot be an eigenvalue).
pub fn eigenspace_dim(table: &GroupTable, w: usize, root: Root) -> usize {
    match root.to_cyclo(table.conductor()) {
        Some(z) => table
            .ambient_matrix(w)
            .eigenspace(&z)
            .expect("same conductor")
            .dim(),
        None => 0,
    }
}

/// [`is_zeta_regular`] for `zeta = zeta_d^k`.
pub fn is_regular_for(table: &GroupTable, w: usize, root: Root) -> bool {
    let Some(z) = root.to_cyclo(table.conductor()) else {
        return false;
    };
    let eig = table
        .ambient_matrix(w)
        .eigenspace(&z)
        .expect("same conductor");
    eigenspace_is_regular(table, &eig)
}

/// Regular eigenvalue data of `w` for `root`, if `w` is `root`-regular.
fn regular_eig(table: &GroupTable, w: usize, root: Root) -> Option<RegEig> {
    let z = root.to_cyclo(table.conductor())?;
    let eig = table
        .ambient_matrix(w)
        .eigenspace(&z)
        .expect("same conductor");
    eigenspace_is_regular(table, &eig).then(|| RegEig {
        order: root.order,
        exponent: root.exponent,
        eigenspace_dim: eig.dim(),
    })
}

/// Regular of order `h` for some primitive `h`-th root of unity.
pub fn is_coxeter_element(table: &GroupTable, degrees: &DegreeData, w: usize) -> bool {
    let h = degrees.coxeter_number;
    table.order_of(w) == h
        && units(h)
            .into_iter()
            .any(|k| is_regular_for(table, w, Root::new(h, k)))
}

/// Some primitive `h`-th root of unity is an eigenvalue of `w`.
pub fn eigenvalue_of_order_h(table: &GroupTable, degrees: &DegreeData, w: usize) -> bool {
    let h = degrees.coxeter_number;
    units(h)
        .into_iter()
        .any(|k| eigenspace_dim(table, w, Root::new(h, k)) > 0)
}

/// All Coxeter elements, ascending.
pub fn coxeter_elements(table: &GroupTable, degrees: &DegreeData) -> Vec<usize> {
    let coxeter: Vec<bool> = table
        .classes()
        .classes
        .par_iter()
        .map(|members| is_coxeter_element(table, degrees, members[0]))
        .collect();
    let mut out: Vec<usize> = table
        .classes()
        .classes
        .iter()
        .zip(coxeter)
        .filter(|(_, keep)| *keep)
        .flat_map(|(members, _)| members.iter().copied())
        .collect();
    out.sort_unstable();
    out
}

/// Classes of `zeta`-regular elements for the primitive `d`-th roots `zeta`.
pub fn regular_classes(
    table: &GroupTable,
    degrees: &DegreeData,
    d: u64,
) -> Result<RegularClassSet> {
    let mut classes: Vec<RegularClass> = Vec::new();
    let roots = units(d);
    for &k in &roots {
        let root = Root::new(d, k);
        let mut found = table
            .classes()
            .classes
            .iter()
            .enumerate()
            .filter_map(|(c, members)| {
                regular_eig(table, members[0], root).map(|e| (c, members[0], e))
            });
        let Some((class, representative, eig)) = found.next() else {
            continue;
        };
        if let Some((other, _, _)) = found.next() {
            return Err(Error::integrity(format!(
                "classes {class} and {other} are both regular for zeta_{d}^{k}"
            )));
        }
        match classes.iter_mut().find(|c| c.class == class) {
            Some(entry) => entry.eigenvalues.push(eig),
            None => classes.push(RegularClass {
                representative,
                class,
                eigenvalues: vec![eig],
            }),
        }
    }
    if classes.is_empty() {
        return Err(Error::NoRegularElement(d));
    }
    let covered: usize = classes.iter().map(|c| c.eigenvalues.len()).sum();
    if covered != roots.len() {
        return Err(Error::integrity(format!(
            "only {covered} of the {} primitive {d}-th roots have regular elements",
            roots.len()
        )));
    }
    let block = phi_w(d, &degrees.exponents) as usize;
    if let Some(c) = classes.iter().find(|c| c.eigenvalues.len() != block) {
        return Err(Error::integrity(format!(
            "class {} is regular for {} primitive {d}-th roots, expected {block}",
            c.class,
            c.eigenvalues.len()
        )));
    }
    Ok(RegularClassSet { order: d, classes })
}

/// Outcome of the two Springer checks for a `zeta`-regular element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpringerReport {
    pub element: usize,
    pub root: Root,
    /// `zeta`-regular elements outside the class of `element`.
    pub nonconjugate: Vec<usize>,
    /// Eigenvalue multiplicities as `(root, multiplicity)`, ascending.
    pub eigenvalues: Vec<(Root, usize)>,
    pub expected_eigenvalues: Vec<(Root, usize)>,
}

impl SpringerReport {
    pub fn conjugacy_ok(&self) -> bool {
        self.nonconjugate.is_empty()
    }

    pub fn eigenvalues_ok(&self) -> bool {
        self.eigenvalues == self.expected_eigenvalues
    }

    pub fn ok(&self) -> bool {
        self.conjugacy_ok() && self.eigenvalues_ok()
    }
}

/// Checks that the `zeta`-regular elements form one class and that the
/// eigenvalues of `w` are `zeta^(-m_1), ..., zeta^(-m_n)`.
pub fn springer_checks(
    table: &GroupTable,
    degrees: &DegreeData,
    w: usize,
    root: Root,
) -> Result<SpringerReport> {
    if !is_regular_for(table, w, root) {
        return Err(Error::usage(format!(
            "element {w} is not regular for zeta_{}^{}",
            root.order, root.exponent
        )));
    }
    let own = table.class_of(w);
    let nonconjugate: Vec<usize> = table
        .classes()
        .classes
        .iter()
        .enumerate()
        .filter(|&(c, members)| c != own && is_regular_for(table, members[0], root))
        .flat_map(|(_, members)| members.iter().copied())
        .collect();

    let m = crate::arith::lcm(table.order_of(w), root.order);
    let mut eigenvalues = Vec::new();
    let mut total = 0;
    for j in 0..m {
        if total == table.rank() {
            break;
        }
        let dim = eigenspace_dim(table, w, Root::new(m, j));
        if dim > 0 {
            eigenvalues.push((Root::new(m, j), dim));
            total += dim;
        }
    }
    let scale = m / root.order;
    let mut expected = std::collections::BTreeMap::new();
    for &e in &degrees.exponents {
        let j = modulo(-((root.exponent * scale * e) as i64), m);
        *expected.entry(Root::new(m, j)).or_insert(0) += 1;
    }
    Ok(SpringerReport {
        element: w,
        root,
        nonconjugate,
        eigenvalues,
        expected_eigenvalues: expected.into_iter().collect(),
    })
}

/// The permutation `C -> class of c^p` on a set of regular classes, as
/// positions within `class_set.classes`.
pub fn galois_action_on_classes(
    table: &GroupTable,
    class_set: &RegularClassSet,
    p: u64,
) -> Result<Vec<usize>> {
    let d = class_set.order;
    if gcd(p % d, d) != 1 {
        return Err(Error::usage(format!("{p} is not coprime to {d}")));
    }
    class_set
        .classes
        .iter()
        .map(|c| {
            let image = table.class_of(table.pow(c.representative, p));
            class_set.position_of_class(image).ok_or_else(|| {
                Error::integrity(format!("power {p} leaves the regular classes of order {d}"))
            })
        })
        .collect()
}

/// Whether the powering action on the Coxeter classes is transitive and the
/// number of classes equals `[K_W : Q]` (so the action is free).
pub fn check_simply_transitive(
    table: &GroupTable,
    degrees: &DegreeData,
    field: &FieldData,
) -> Result<bool> {
    let h = degrees.coxeter_number;
    let set = regular_classes(table, degrees, h)?;
    Ok(powering_is_transitive(table, &set)? && set.len() as u64 == field.field_degree)
}

/// Whether the classes of `class_set` form a single orbit under powering.
pub fn powering_is_transitive(table: &GroupTable, class_set: &RegularClassSet) -> Result<bool> {
    let mut orbit = BTreeSet::from([0usize]);
    for p in units(class_set.order) {
        let perm = galois_action_on_classes(table, class_set, p)?;
        orbit.insert(perm[0]);
    }
    Ok(orbit.len() == class_set.len())
}

/// Whether the coefficients of the characteristic polynomial of `c` have the
/// same Galois stabilizer as the traces.
pub fn charpoly_field_check(table: &GroupTable, field: &FieldData, c: usize) -> bool {
    let coeffs = table.ambient_matrix(c).char_poly();
    let stabilizer: Vec<u64> = units(table.conductor() as u64)
        .into_iter()
        .filter(|&k| {
            coeffs
                .iter()
                .all(|x| &x.galois(k as i64).expect("k is a unit") == x)
        })
        .collect();
    stabilizer == field.trace_stabilizer
}

/// `{ w^p : w regular for exp(2 pi i / h), gcd(p, h) = 1 }`, ascending.
pub fn primitive_powers_of_regular(table: &GroupTable, degrees: &DegreeData) -> Vec<usize> {
    let h = degrees.coxeter_number;
    let base = Root::new(h, 1);
    let mut out = BTreeSet::new();
    for members in &table.classes().classes {
        if !is_regular_for(table, members[0], base) {
            continue;
        }
        for &w in members {
            for p in units(h) {
                out.insert(table.pow(w, p));
            }
        }
    }
    out.into_iter().collect()
}

/// `phi(d) / phi_W(d)`, the predicted number of classes of regular elements.
pub fn predicted_class_count(degrees: &DegreeData, d: u64) -> Option<u64> {
    let pw = phi_w(d, &degrees.exponents);
    (pw > 0 && phi(d).is_multiple_of(pw)).then(|| phi(d) / pw)
}
