//! Reduced reflection factorizations and the Hurwitz action on them.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::noncrossing::LengthTable;

/// A reduced factorization `target = factors[0] * ... * factors[k-1]` into
/// reflections, with `k` the absolute length of `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factorization {
    pub target: usize,
    pub factors: Vec<usize>,
}

/// All reduced factorizations of `w`, in lexicographic order of the factor
/// indices.
pub fn reduced_factorizations(
    table: &GroupTable,
    lengths: &LengthTable,
    w: usize,
) -> Vec<Factorization> {
    let k = lengths.len(w);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    extend(table, lengths, w, k, 0, &mut prefix, &mut out);
    out
}

fn extend(
    table: &GroupTable,
    lengths: &LengthTable,
    w: usize,
    k: usize,
    product: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Factorization>,
) {
    let depth = prefix.len();
    if depth == k {
        if product == w {
            out.push(Factorization {
                target: w,
                factors: prefix.clone(),
            });
        }
        return;
    }
    for &r in table.reflections() {
        let next = table.mult(product, r);
        if lengths.len(next) != depth + 1 {
            continue;
        }
        let rest = table.mult(table.inv(next), w);
        if lengths.len(rest) != k - depth - 1 {
            continue;
        }
        prefix.push(r);
        extend(table, lengths, w, k, next, prefix, out);
        prefix.pop();
    }
}

/// Direction of a Hurwitz move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `(a, b) -> (a b a^-1, a)`
    Forward,
    /// `(a, b) -> (b, b^-1 a b)`
    Backward,
}

/// Applies the Hurwitz move at positions `i, i + 1` (0-based).
pub fn hurwitz_move(
    table: &GroupTable,
    f: &Factorization,
    i: usize,
    dir: Move,
) -> Result<Factorization> {
    if i + 1 >= f.factors.len() {
        return Err(Error::usage(format!(
            "move position {i} out of range for {} factors",
            f.factors.len()
        )));
    }
    let (a, b) = (f.factors[i], f.factors[i + 1]);
    let (x, y) = match dir {
        Move::Forward => (table.conjugate(a, b), a),
        Move::Backward => (b, table.conjugate(table.inv(b), a)),
    };
    if !table.is_reflection(x) || !table.is_reflection(y) {
        return Err(Error::integrity("Hurwitz move produced a non-reflection"));
    }
    let mut factors = f.factors.clone();
    factors[i] = x;
    factors[i + 1] = y;
    Ok(Factorization {
        target: f.target,
        factors,
    })
}

/// The orbit of `f` under all Hurwitz moves, sorted.
pub fn hurwitz_orbit(table: &GroupTable, f: &Factorization) -> Result<Vec<Factorization>> {
    let mut seen = HashSet::from([f.clone()]);
    let mut queue = VecDeque::from([f.clone()]);
    while let Some(g) = queue.pop_front() {
        for i in 0..g.factors.len().saturating_sub(1) {
            for dir in [Move::Forward, Move::Backward] {
                let h = hurwitz_move(table, &g, i, dir)?;
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
    }
    let mut orbit: Vec<Factorization> = seen.into_iter().collect();
    orbit.sort();
    Ok(orbit)
}

/// Whether the Hurwitz action on the reduced factorizations of `w` is
/// transitive.
pub fn hurwitz_transitive(table: &GroupTable, lengths: &LengthTable, w: usize) -> Result<bool> {
    let all = reduced_factorizations(table, lengths, w);
    match all.first() {
        Some(first) => Ok(hurwitz_orbit(table, first)? == all),
        None => Ok(false),
    }
}
