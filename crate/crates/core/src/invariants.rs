//! Degrees, exponents, the Coxeter number, Euler-type counting functions and
//! the field of definition.

use serde::Serialize;

use crate::arith::{gcd, units};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::regularity::{is_regular_for, Root};

pub use crate::arith::phi;

/// Degrees `d_1 <= ... <= d_n`, exponents `m_i = d_i - 1` and `h = d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeData {
    pub degrees: Vec<u64>,
    pub exponents: Vec<u64>,
    pub coxeter_number: u64,
}

impl DegreeData {
    pub fn from_degrees(mut degrees: Vec<u64>) -> Self {
        degrees.sort_unstable();
        DegreeData {
            exponents: degrees.iter().map(|d| d - 1).collect(),
            coxeter_number: degrees.last().copied().unwrap_or(1),
            degrees,
        }
    }
}

/// Field of definition `K_W` through the Galois group of the ambient field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldData {
    pub ambient_conductor: u32,
    /// Units `k mod L` whose automorphism `zeta_L -> zeta_L^k` fixes every trace.
    pub trace_stabilizer: Vec<u64>,
    /// `[K_W : Q] = phi(L) / |trace_stabilizer|`.
    pub field_degree: u64,
}

/// Degrees from the factorization `sum_w t^(dim V^w) = prod (t + m_i)`.
pub fn degrees_and_exponents(table: &GroupTable) -> Result<DegreeData> {
    if !table.generated_by_reflections() {
        return Err(Error::integrity(
            "group is not generated by its reflections",
        ));
    }
    let n = table.rank();
    // poly[k] = number of elements with a k-dimensional fixed space
    let mut poly = vec![0i128; n + 1];
    for (c, members) in table.classes().classes.iter().enumerate() {
        poly[table.class_fixed_dim(c)] += members.len() as i128;
    }
    let mut exponents = Vec::with_capacity(n);
    let bound = table.reflections().len() as i128;
    let mut m = 0i128;
    while exponents.len() < n && m <= bound {
        match divide_by_linear(&poly, m) {
            Some(q) => {
                poly = q;
                exponents.push(m as u64);
            }
            None => m += 1,
        }
    }
    if exponents.len() != n || poly != [1] {
        return Err(Error::integrity(format!(
            "fixed-space polynomial does not split as prod (t + m_i); left with {poly:?}"
        )));
    }
    Ok(DegreeData::from_degrees(
        exponents.iter().map(|m| m + 1).collect(),
    ))
}

/// `p(t) / (t + m)` if the division is exact.
fn divide_by_linear(p: &[i128], m: i128) -> Option<Vec<i128>> {
    if p.len() < 2 {
        return None;
    }
    let deg = p.len() - 1;
    let mut q = vec![0i128; deg];
    // synthetic division from the top: q[k-1] = p[k] - m * q[k]
    q[deg - 1] = p[deg];
    for k in (1..deg).rev() {
        q[k - 1] = p[k] - m * q[k];
    }
    (p[0] == m * q[0]).then_some(q)
}

/// Number of distinct residues `m_i mod j` that are coprime to `j`.
///
/// For `j = h` of a well-generated group this is the number of exponents
/// coprime to `h`; in general it is the number of distinct primitive `j`-th
/// roots among the eigenvalues `zeta^(-m_i)` of a `zeta`-regular element.
pub fn phi_w(j: u64, exponents: &[u64]) -> u64 {
    assert!(j >= 1);
    let mut residues: Vec<u64> = exponents
        .iter()
        .map(|m| m % j)
        .filter(|&r| gcd(r, j) == 1)
        .collect();
    residues.sort_unstable();
    residues.dedup();
    residues.len() as u64
}

pub fn field_of_definition(table: &GroupTable) -> FieldData {
    let l = table.conductor();
    let traces = table.class_traces();
    let trace_stabilizer: Vec<u64> = units(l as u64)
        .into_iter()
        .filter(|&k| {
            traces
                .iter()
                .all(|t| &t.galois(k as i64).expect("k is a unit") == t)
        })
        .collect();
    FieldData {
        ambient_conductor: l,
        field_degree: phi(l as u64) / trace_stabilizer.len() as u64,
        trace_stabilizer,
    }
}

/// Units `k mod h` with `{k m_i mod h} = {m_i mod h}` as multisets.
pub fn gw_stabilizer(exponents: &[u64], h: u64) -> Vec<u64> {
    let mut base: Vec<u64> = exponents.iter().map(|m| m % h).collect();
    base.sort_unstable();
    units(h)
        .into_iter()
        .filter(|&k| {
            let mut moved: Vec<u64> = exponents.iter().map(|m| (k * m) % h).collect();
            moved.sort_unstable();
            moved == base
        })
        .collect()
}

/// `G_W = { -m_i mod h : gcd(m_i, h) = 1 }` and `|G_W| = phi_W(h)`.
pub fn gw_matches_lemma(exponents: &[u64], h: u64) -> bool {
    let stab = gw_stabilizer(exponents, h);
    let mut lemma: Vec<u64> = exponents
        .iter()
        .filter(|&&m| gcd(m, h) == 1)
        .map(|&m| (h - m % h) % h)
        .collect();
    lemma.sort_unstable();
    lemma.dedup();
    stab == lemma && stab.len() as u64 == phi_w(h, exponents)
}

/// Integers `d` admitting a `zeta`-regular element for a primitive `d`-th
/// root of unity `zeta`, ascending. Only element orders can occur.
pub fn regular_numbers(table: &GroupTable) -> Vec<u64> {
    table
        .element_orders()
        .into_iter()
        .filter(|&d| {
            units(d).into_iter().any(|k| {
                let root = Root::new(d, k);
                table
                    .classes()
                    .representatives()
                    .any(|w| is_regular_for(table, w, root))
            })
        })
        .collect()
}

/// `prod (d_i + h) / d_i`, which must be an integer.
pub fn catalan_number(degrees: &DegreeData) -> Result<u64> {
    let h = degrees.coxeter_number as u128;
    let (num, den) = degrees.degrees.iter().fold((1u128, 1u128), |(a, b), &d| {
        (a * (d as u128 + h), b * d as u128)
    });
    if num % den != 0 {
        return Err(Error::integrity(format!(
            "Catalan number {num}/{den} is not an integer"
        )));
    }
    Ok((num / den) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_division() {
        // (t + 1)(t + 4) = t^2 + 5t + 4
        assert_eq!(divide_by_linear(&[4, 5, 1], 1), Some(vec![4, 1]));
        assert_eq!(divide_by_linear(&[4, 5, 1], 2), None);
        assert_eq!(divide_by_linear(&[0, 1], 0), Some(vec![1]));
    }

    #[test]
    fn totients() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(5), 4);
        assert_eq!(phi(10), 4);
        assert_eq!(phi_w(5, &[1, 4]), 2);
        assert_eq!(phi_w(10, &[1, 5, 9]), 2);
        assert_eq!(phi_w(30, &[1, 11, 19, 29]), 4);
        // residues are counted once: A3 at d = 2, G(4,2,2) at d = 4
        assert_eq!(phi_w(2, &[1, 2, 3]), 1);
        assert_eq!(phi_w(4, &[3, 3]), 1);
    }

    #[test]
    fn galois_stabilizers() {
        assert_eq!(gw_stabilizer(&[1, 4], 5), vec![1, 4]);
        assert_eq!(gw_stabilizer(&[1, 5, 9], 10), vec![1, 9]);
        assert_eq!(gw_stabilizer(&[1, 3, 5], 6), vec![1, 5]);
        assert!(gw_matches_lemma(&[1, 4], 5));
        assert!(gw_matches_lemma(&[1, 3, 5], 6));
        assert!(gw_matches_lemma(&[1, 11, 19, 29], 30));
        assert_eq!(gw_stabilizer(&[1, 11, 19, 29], 30).len(), 4);
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!(
            catalan_number(&DegreeData::from_degrees(vec![2, 5])).unwrap(),
            7
        );
        assert_eq!(
            catalan_number(&DegreeData::from_degrees(vec![2, 6, 10])).unwrap(),
            32
        );
        assert_eq!(
            catalan_number(&DegreeData::from_degrees(vec![2, 3, 4])).unwrap(),
            14
        );
        assert!(catalan_number(&DegreeData::from_degrees(vec![2, 3, 5])).is_err());
    }
}
