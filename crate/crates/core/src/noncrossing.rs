//! Absolute length, absolute order and the noncrossing partition lattice
//! `NC(W, c) = [1, c]`.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::group::GroupTable;
use crate::regularity::{eigenspace_dim, Root};

pub use crate::invariants::catalan_number;

/// Absolute length of every element: distance from the identity in the
/// Cayley graph with respect to all reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthTable {
    len: Vec<u32>,
}

impl LengthTable {
    pub fn len(&self, w: usize) -> usize {
        self.len[w] as usize
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.len
    }

    pub fn max_len(&self) -> usize {
        self.len.iter().copied().max().unwrap_or(0) as usize
    }
}

pub fn absolute_lengths(table: &GroupTable) -> LengthTable {
    let mut len = vec![u32::MAX; table.order()];
    len[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &r in table.reflections() {
            let y = table.mult(x, r);
            if len[y] == u32::MAX {
                len[y] = len[x] + 1;
                queue.push_back(y);
            }
        }
    }
    LengthTable { len }
}

/// `x <=_R y` iff `l(x) + l(x^-1 y) = l(y)`.
pub fn leq_abs(table: &GroupTable, lengths: &LengthTable, x: usize, y: usize) -> bool {
    lengths.len(x) + lengths.len(table.mult(table.inv(x), y)) == lengths.len(y)
}

/// A finite graded poset on `0..len`, with the full order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub rank: Vec<usize>,
    /// `leq[i][j]` iff `i <= j`.
    pub leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// Cover pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.leq[i][j]
                    && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j])
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The opposite order, ranked from the top.
    pub fn dual(&self) -> Poset {
        let top = self.rank.iter().copied().max().unwrap_or(0);
        let n = self.len();
        Poset {
            rank: self.rank.iter().map(|r| top - r).collect(),
            leq: (0..n)
                .map(|i| (0..n).map(|j| self.leq[j][i]).collect())
                .collect(),
        }
    }

    /// Number of elements of each rank.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let top = self.rank.iter().copied().max().map_or(0, |r| r + 1);
        let mut sizes = vec![0; top];
        for &r in &self.rank {
            sizes[r] += 1;
        }
        sizes
    }

    /// Every pair has a least upper bound and a greatest lower bound.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        // a least upper bound has the least rank among the upper bounds
        let unique_extremum = |bounds: Vec<usize>, below: bool| {
            let pick = if below {
                bounds.iter().max_by_key(|&&b| self.rank[b])
            } else {
                bounds.iter().min_by_key(|&&b| self.rank[b])
            };
            pick.is_some_and(|&b| {
                bounds.iter().all(|&o| {
                    if below {
                        self.leq[o][b]
                    } else {
                        self.leq[b][o]
                    }
                })
            })
        };
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                let upper: Vec<usize> = (0..n)
                    .filter(|&u| self.leq[a][u] && self.leq[b][u])
                    .collect();
                let lower: Vec<usize> = (0..n)
                    .filter(|&l| self.leq[l][a] && self.leq[l][b])
                    .collect();
                unique_extremum(upper, false) && unique_extremum(lower, true)
            })
        })
    }

    /// Upward and downward cover neighbours of every element.
    fn adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut up = vec![Vec::new(); self.len()];
        let mut down = vec![Vec::new(); self.len()];
        for (i, j) in self.covers() {
            up[i].push(j);
            down[j].push(i);
        }
        (up, down)
    }

    /// An order isomorphism `self -> other` preserving ranks, if one exists.
    ///
    /// Elements are first coloured by iterated refinement of (rank, colours of
    /// upper covers, colours of lower covers), jointly on both posets; the
    /// backtracking search then only pairs equally coloured elements and
    /// extends the map along cover edges.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.rank_sizes() != other.rank_sizes() {
            return None;
        }
        let (up_a, down_a) = self.adjacency();
        let (up_b, down_b) = other.adjacency();
        let (colour_a, colour_b) = refine_jointly(
            [&self.rank, &other.rank],
            [(&up_a, &down_a), (&up_b, &down_b)],
        );
        let mut sorted_a = colour_a.clone();
        let mut sorted_b = colour_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }

        let neighbours = |up: &[Vec<usize>], down: &[Vec<usize>], i: usize| -> Vec<usize> {
            up[i].iter().chain(&down[i]).copied().collect()
        };
        let nb_a: Vec<Vec<usize>> = (0..n).map(|i| neighbours(&up_a, &down_a, i)).collect();
        let nb_b: Vec<Vec<usize>> = (0..n).map(|i| neighbours(&up_b, &down_b, i)).collect();

        // most-constrained-first: next is the element with most placed neighbours
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        for _ in 0..n {
            let next = (0..n)
                .filter(|&i| !placed[i])
                .max_by_key(|&i| (links[i], std::cmp::Reverse((self.rank[i], i))))
                .expect("unplaced element remains");
            placed[next] = true;
            order.push(next);
            for &j in &nb_a[next] {
                links[j] += 1;
            }
        }

        let search = Search {
            a: self,
            b: other,
            colour_a: &colour_a,
            colour_b: &colour_b,
            nb_a: &nb_a,
            nb_b: &nb_b,
            order: &order,
        };
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        search.extend(0, &mut map, &mut used).then_some(map)
    }
}

/// Upper and lower covers of each element.
type Adjacency<'a> = (&'a [Vec<usize>], &'a [Vec<usize>]);
/// Own colour with the sorted colours above and below.
type ColourKey = (usize, Vec<usize>, Vec<usize>);

/// Iterated colour refinement run on two graded posets at once, so that
/// equal colours mean the same thing on both sides.
fn refine_jointly(ranks: [&[usize]; 2], adjacency: [Adjacency<'_>; 2]) -> (Vec<usize>, Vec<usize>) {
    let mut colours: [Vec<usize>; 2] = [ranks[0].to_vec(), ranks[1].to_vec()];
    let mut classes = usize::MAX;
    loop {
        let keys: Vec<Vec<ColourKey>> = (0..2)
            .map(|side| {
                let (up, down) = adjacency[side];
                let c = &colours[side];
                (0..c.len())
                    .map(|i| {
                        let mut u: Vec<usize> = up[i].iter().map(|&j| c[j]).collect();
                        let mut d: Vec<usize> = down[i].iter().map(|&j| c[j]).collect();
                        u.sort_unstable();
                        d.sort_unstable();
                        (c[i], u, d)
                    })
                    .collect()
            })
            .collect();
        let ids: std::collections::BTreeMap<&(usize, Vec<usize>, Vec<usize>), usize> = keys
            .iter()
            .flatten()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(id, k)| (k, id))
            .collect();
        let next: [Vec<usize>; 2] = [0, 1].map(|side| keys[side].iter().map(|k| ids[k]).collect());
        colours = next;
        if ids.len() == classes {
            break;
        }
        classes = ids.len();
    }
    let [a, b] = colours;
    (a, b)
}

struct Search<'a> {
    a: &'a Poset,
    b: &'a Poset,
    colour_a: &'a [usize],
    colour_b: &'a [usize],
    nb_a: &'a [Vec<usize>],
    nb_b: &'a [Vec<usize>],
    order: &'a [usize],
}

impl Search<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&x) = self.order.get(depth) else {
            return true;
        };
        let anchor = self.nb_a[x].iter().find(|&&p| map[p] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(&p) => self.nb_b[map[p]].clone(),
            None => (0..self.b.len()).collect(),
        };
        for y in candidates {
            if used[y] || self.colour_a[x] != self.colour_b[y] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&p| {
                let q = map[p];
                self.a.leq[p][x] == self.b.leq[q][y] && self.a.leq[x][p] == self.b.leq[y][q]
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
}

/// The interval `[1, c]` in absolute order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NCLattice {
    pub coxeter_element: usize,
    /// Element indices, ascending.
    pub members: Vec<usize>,
    /// Absolute length of each member (aligned with `members`).
    pub rank: Vec<usize>,
    /// Cover pairs `(lower, upper)` as element indices, sorted.
    pub covers: Vec<(usize, usize)>,
    #[serde(skip)]
    poset: Poset,
    #[serde(skip)]
    kreweras: Option<Vec<usize>>,
}

impl NCLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        self.poset.rank_sizes()
    }

    pub fn contains(&self, w: usize) -> bool {
        self.members.binary_search(&w).is_ok()
    }
}

pub fn nc_interval(table: &GroupTable, lengths: &LengthTable, c: usize) -> NCLattice {
    let members: Vec<usize> = (0..table.order())
        .into_par_iter()
        .filter(|&w| leq_abs(table, lengths, w, c))
        .collect();
    let position: HashMap<usize, usize> =
        members.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let rank: Vec<usize> = members.iter().map(|&w| lengths.len(w)).collect();
    let leq: Vec<Vec<bool>> = members
        .par_iter()
        .map(|&x| {
            members
                .iter()
                .map(|&y| leq_abs(table, lengths, x, y))
                .collect()
        })
        .collect();
    let mut covers = Vec::new();
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            if leq[i][j] && rank[j] == rank[i] + 1 {
                covers.push((x, y));
            }
        }
    }
    // w -> w^-1 c, as positions
    let kreweras = members
        .iter()
        .map(|&w| position.get(&table.mult(table.inv(w), c)).copied())
        .collect();
    NCLattice {
        coxeter_element: c,
        members,
        rank: rank.clone(),
        covers,
        poset: Poset { rank, leq },
        kreweras,
    }
}

pub fn is_lattice(p: &NCLattice) -> bool {
    p.poset.is_lattice()
}

/// Whether `w -> w^-1 c` is an order-reversing bijection of the interval,
/// falling back to a search for an isomorphism with the dual poset.
pub fn is_self_dual(p: &NCLattice) -> bool {
    if let Some(k) = &p.kreweras {
        let mut seen = vec![false; k.len()];
        let bijective = k.iter().all(|&j| !std::mem::replace(&mut seen[j], true));
        let reversing = bijective
            && (0..k.len())
                .all(|i| (0..k.len()).all(|j| p.poset.leq[i][j] == p.poset.leq[k[j]][k[i]]));
        if reversing {
            return true;
        }
    }
    p.poset.isomorphism(&p.poset.dual()).is_some()
}

pub fn poset_isomorphic(p: &NCLattice, q: &NCLattice) -> bool {
    p.poset.isomorphism(&q.poset).is_some()
}

/// Rank-size vector reads the same in both directions.
pub fn rank_sizes_palindromic(p: &NCLattice) -> bool {
    let sizes = p.rank_sizes();
    sizes.iter().eq(sizes.iter().rev())
}

/// Line-based export: `node <index> <rank>` lines, then `<lower> <upper>`
/// cover lines.
pub fn export_text(p: &NCLattice) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# nc coxeter_element={} size={}\n",
        p.coxeter_element,
        p.len()
    ));
    out.push_str("# index rank\n");
    for (w, r) in p.members.iter().zip(&p.rank) {
        out.push_str(&format!("node {w} {r}\n"));
    }
    out.push_str("# lower upper\n");
    for (a, b) in &p.covers {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Elements of absolute length `length` and order `order` that have no
/// primitive `eigen_order`-th root of unity as an eigenvalue.
pub fn elements_without_eigenvalue(
    table: &GroupTable,
    lengths: &LengthTable,
    length: usize,
    order: u64,
    eigen_order: u64,
) -> Vec<usize> {
    let mut out: Vec<usize> = table
        .classes()
        .classes
        .iter()
        .filter(|members| {
            let w = members[0];
            lengths.len(w) == length
                && table.order_of(w) == order
                && crate::arith::units(eigen_order)
                    .into_iter()
                    .all(|k| eigenspace_dim(table, w, Root::new(eigen_order, k)) == 0)
        })
        .flatten()
        .copied()
        .collect();
    out.sort_unstable();
    out
}
