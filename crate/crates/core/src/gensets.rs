//! Regular generating sets, Coxeter graphs, generalized Coxeter presentations
//! and searches for Coxeter generating sets of a given element.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;

use crate::arith::units;
use crate::coset::{self, Presentation};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::invariants::DegreeData;
use crate::regularity::{is_coxeter_element, is_regular_for, Root};

/// Largest generating set whose `n!` orderings are scanned.
pub const MAX_ORDERING_RANK: usize = 6;

/// Rows per group element allowed in coset enumeration.
pub const COSET_ROWS_PER_ELEMENT: usize = 50;

/// Evidence of a failed property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A reflection not conjugate to any power of a member of the set.
    Reflection(usize),
    /// An ordering of the set whose product is not a Coxeter element.
    Ordering {
        ordering: Vec<usize>,
        product: usize,
        order: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenSetReport {
    pub genset: Vec<usize>,
    pub generates_w: bool,
    pub power_conjugacy_ok: bool,
    pub all_orderings_coxeter: bool,
    pub witness_failures: Vec<Witness>,
}

impl GenSetReport {
    pub fn is_regular(&self, rank: usize) -> bool {
        self.genset.len() == rank
            && self.generates_w
            && self.power_conjugacy_ok
            && self.all_orderings_coxeter
    }
}

fn require_reflections(table: &GroupTable, s: &[usize]) -> Result<()> {
    match s.iter().find(|&&x| !table.is_reflection(x)) {
        Some(x) => Err(Error::usage(format!("element {x} is not a reflection"))),
        None => Ok(()),
    }
}

fn orderings(s: &[usize]) -> Result<impl Iterator<Item = Vec<usize>> + '_> {
    if s.len() > MAX_ORDERING_RANK {
        return Err(Error::CapExceeded(format!(
            "ordering scans are limited to {MAX_ORDERING_RANK} generators"
        )));
    }
    Ok(s.iter().copied().permutations(s.len()))
}

/// Checks that `s` generates `W`, that every reflection is conjugate to a
/// power of a member of `s`, and that every ordering of `s` multiplies to a
/// Coxeter element.
pub fn check_regular_generating_set(
    table: &GroupTable,
    degrees: &DegreeData,
    s: &[usize],
) -> Result<GenSetReport> {
    require_reflections(table, s)?;
    if s.len() != table.rank() {
        return Err(Error::usage(format!(
            "expected {} reflections, got {}",
            table.rank(),
            s.len()
        )));
    }
    let generates_w = table.generated_order(s) == table.order();

    let power_classes: BTreeSet<usize> = s
        .iter()
        .flat_map(|&x| (1..table.order_of(x)).map(move |k| (x, k)))
        .map(|(x, k)| table.class_of(table.pow(x, k)))
        .collect();
    let mut witness_failures: Vec<Witness> = table
        .reflections()
        .iter()
        .filter(|&&r| !power_classes.contains(&table.class_of(r)))
        .map(|&r| Witness::Reflection(r))
        .collect();
    let power_conjugacy_ok = witness_failures.is_empty();

    let mut all_orderings_coxeter = true;
    for ordering in orderings(s)? {
        let product = table.product(ordering.iter().copied());
        if !is_coxeter_element(table, degrees, product) {
            all_orderings_coxeter = false;
            witness_failures.push(Witness::Ordering {
                order: table.order_of(product),
                ordering,
                product,
            });
        }
    }
    Ok(GenSetReport {
        genset: s.to_vec(),
        generates_w,
        power_conjugacy_ok,
        all_orderings_coxeter,
        witness_failures,
    })
}

/// For one ordering of a generating set: its product and the exponents `k`
/// for which the product is `zeta_h^k`-regular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderingProfile {
    pub ordering: Vec<usize>,
    pub product: usize,
    pub regular_for: Vec<u64>,
}

/// Which primitive `h`-th roots each ordered product of `s` is regular for,
/// orderings in lexicographic order of positions in `s`.
pub fn orderings_regularity_profile(
    table: &GroupTable,
    degrees: &DegreeData,
    s: &[usize],
) -> Result<Vec<OrderingProfile>> {
    let h = degrees.coxeter_number;
    orderings(s)?
        .map(|ordering| {
            let product = table.product(ordering.iter().copied());
            let regular_for = units(h)
                .into_iter()
                .filter(|&k| is_regular_for(table, product, Root::new(h, k)))
                .collect();
            Ok(OrderingProfile {
                ordering,
                product,
                regular_for,
            })
        })
        .collect()
}

/// Whether every ordering is regular for `zeta` or `zeta^-1`, where `zeta` is
/// the least root the first ordering is regular for.
pub fn profile_is_zeta_or_inverse(profile: &[OrderingProfile], h: u64) -> bool {
    let Some(&k) = profile.first().and_then(|p| p.regular_for.first()) else {
        return false;
    };
    let inverse = (h - k) % h;
    profile
        .iter()
        .all(|p| p.regular_for.contains(&k) || p.regular_for.contains(&inverse))
}

/// Vertex labels `p_s` (generator orders) and braid lengths `m_{s,t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterGraph {
    pub labels: Vec<u64>,
    /// `m[i][j]`, with `m[i][i] = 1`.
    pub m: Vec<Vec<u64>>,
}

impl CoxeterGraph {
    /// Edges `(i, j, m_ij)` with `i < j` and `m_ij >= 3`.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let n = self.labels.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.m[i][j] >= 3)
            .map(|(i, j)| (i, j, self.m[i][j]))
            .collect()
    }

    /// `p_s = p_t` whenever `m_{s,t}` is odd, and all labels are at least 2.
    pub fn is_valid(&self) -> bool {
        let n = self.labels.len();
        self.labels.iter().all(|&p| p >= 2)
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    i == j || self.m[i][j].is_multiple_of(2) || self.labels[i] == self.labels[j]
                })
            })
    }

    /// A vertex bijection preserving labels and edge labels, if any.
    pub fn isomorphism(&self, other: &CoxeterGraph) -> Option<Vec<usize>> {
        let n = self.labels.len();
        if n != other.labels.len() {
            return None;
        }
        (0..n).permutations(n).find(|perm| {
            (0..n).all(|i| {
                self.labels[i] == other.labels[perm[i]]
                    && (0..n).all(|j| self.m[i][j] == other.m[perm[i]][perm[j]])
            })
        })
    }
}

/// `a b a b ...` with `m` factors.
fn alternating_product(table: &GroupTable, a: usize, b: usize, m: u64) -> usize {
    (0..m).fold(0, |acc, i| table.mult(acc, if i % 2 == 0 { a } else { b }))
}

pub fn coxeter_graph_of(table: &GroupTable, s: &[usize]) -> Result<CoxeterGraph> {
    require_reflections(table, s)?;
    let n = s.len();
    let mut m = vec![vec![1u64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (s[i], s[j]);
            let found = (2..=table.order() as u64)
                .find(|&k| {
                    alternating_product(table, a, b, k) == alternating_product(table, b, a, k)
                })
                .ok_or_else(|| {
                    Error::NotCoxeterLike(format!("no braid relation between {a} and {b}"))
                })?;
            m[i][j] = found;
            m[j][i] = found;
        }
    }
    Ok(CoxeterGraph {
        labels: s.iter().map(|&x| table.order_of(x)).collect(),
        m,
    })
}

/// The presentation `<S | s^{p_s}, (s t s ...)_m = (t s t ...)_m>`.
pub fn presentation_of(graph: &CoxeterGraph) -> Presentation {
    let n = graph.labels.len();
    let mut relators: Vec<Vec<usize>> = graph
        .labels
        .iter()
        .enumerate()
        .map(|(i, &p)| vec![coset::gen(i); p as usize])
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let m = graph.m[i][j] as usize;
            let alt = |a: usize, b: usize| -> Vec<usize> {
                (0..m)
                    .map(|k| coset::gen(if k % 2 == 0 { a } else { b }))
                    .collect()
            };
            let mut word = alt(i, j);
            word.extend(coset::inverse_word(&alt(j, i)));
            relators.push(word);
        }
    }
    Presentation {
        generators: n,
        relators,
    }
}

/// Whether `(W, S)` is a generalized Coxeter system: `S` generates `W` and the
/// abstract group with the braid-like presentation read off `S` has order
/// `|W|`.
pub fn verify_generalized_coxeter_presentation(table: &GroupTable, s: &[usize]) -> Result<bool> {
    let graph = coxeter_graph_of(table, s)?;
    if table.generated_order(s) != table.order() {
        return Ok(false);
    }
    let order = coset::group_order(
        &presentation_of(&graph),
        COSET_ROWS_PER_ELEMENT * table.order(),
    )?;
    Ok(order == table.order())
}

/// What a candidate set must satisfy in [`find_coxeter_genset_for`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GensetCriterion {
    /// `(W, S)` is a generalized Coxeter system.
    Presentation,
    /// `S` generates `W` and has the same labelled Coxeter graph as the given
    /// reference set.
    GraphOf(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GensetWitness {
    /// Reflections, ascending.
    pub set: Vec<usize>,
    /// An ordering of `set` whose product is the target.
    pub ordering: Vec<usize>,
}

/// Searches the `n`-subsets of reflections, in lexicographic order, for a set
/// meeting `criterion` with some ordering multiplying to `c`.
pub struct GensetSearch<'a> {
    table: &'a GroupTable,
    criterion: GensetCriterion,
    reference: Option<CoxeterGraph>,
    budget: usize,
    verdicts: HashMap<Vec<usize>, bool>,
}

impl<'a> GensetSearch<'a> {
    pub fn new(table: &'a GroupTable, criterion: GensetCriterion, budget: usize) -> Result<Self> {
        let reference = match &criterion {
            GensetCriterion::GraphOf(s0) => {
                if s0.len() != table.rank() {
                    return Err(Error::usage(
                        "reference set must have one reflection per dimension",
                    ));
                }
                Some(coxeter_graph_of(table, s0)?)
            }
            GensetCriterion::Presentation => None,
        };
        Ok(GensetSearch {
            table,
            criterion,
            reference,
            budget,
            verdicts: HashMap::new(),
        })
    }

    fn accepts(&mut self, set: &[usize]) -> Result<bool> {
        if let Some(&v) = self.verdicts.get(set) {
            return Ok(v);
        }
        let table = self.table;
        let verdict = match &self.criterion {
            GensetCriterion::Presentation => {
                match verify_generalized_coxeter_presentation(table, set) {
                    Ok(v) => v,
                    Err(Error::NotCoxeterLike(_) | Error::CapExceeded(_)) => false,
                    Err(e) => return Err(e),
                }
            }
            GensetCriterion::GraphOf(_) => {
                table.generated_order(set) == table.order()
                    && coxeter_graph_of(table, set)
                        .ok()
                        .zip(self.reference.as_ref())
                        .is_some_and(|(g, r)| g.isomorphism(r).is_some())
            }
        };
        self.verdicts.insert(set.to_vec(), verdict);
        Ok(verdict)
    }

    pub fn find(&mut self, c: usize) -> Result<Option<GensetWitness>> {
        let table = self.table;
        let n = table.rank();
        let mut examined = 0usize;
        for set in table.reflections().iter().copied().combinations(n) {
            let Some(ordering) = set
                .iter()
                .copied()
                .permutations(n)
                .find(|o| table.product(o.iter().copied()) == c)
            else {
                continue;
            };
            examined += 1;
            if examined > self.budget {
                return Err(Error::CapExceeded(format!(
                    "generating-set search exceeds {} candidates",
                    self.budget
                )));
            }
            if self.accepts(&set)? {
                return Ok(Some(GensetWitness { set, ordering }));
            }
        }
        Ok(None)
    }
}

/// Default number of candidate sets examined per search.
pub const DEFAULT_SEARCH_BUDGET: usize = 100_000;

/// A set `S` of reflections and an ordering with product `c`, where `S`
/// meets `criterion`; `None` if no such set exists.
pub fn find_coxeter_genset_for(
    table: &GroupTable,
    c: usize,
    criterion: GensetCriterion,
    budget: usize,
) -> Result<Option<GensetWitness>> {
    GensetSearch::new(table, criterion, budget)?.find(c)
}

/// `n` reflections generating `W`, if any: the first generating `n`-subset
/// of the reflections in lexicographic order. Fails with
/// [`Error::CapExceeded`] after `budget` subsets.
pub fn generating_reflections(table: &GroupTable, budget: usize) -> Result<Option<Vec<usize>>> {
    let gens = table.generators();
    if gens.len() == table.rank() && gens.iter().all(|&g| table.is_reflection(g)) {
        return Ok(Some(gens.to_vec()));
    }
    for (i, set) in table
        .reflections()
        .iter()
        .copied()
        .combinations(table.rank())
        .enumerate()
    {
        if i >= budget {
            return Err(Error::CapExceeded(format!(
                "well-generation search exceeds {budget} subsets"
            )));
        }
        if table.generated_order(&set) == table.order() {
            return Ok(Some(set));
        }
    }
    Ok(None)
}
