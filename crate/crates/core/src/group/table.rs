use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::arith::lcm;
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::{CycloMatrix, CycloSubspace};

pub const DEFAULT_CAP: usize = 100_000;

type Perm = Box<[u32]>;

/// A reflecting hyperplane together with the reflections fixing it.
/// Orbit points and their positions.
type PointOrbit = (Vec<Vec<CycloNum>>, HashMap<Vec<CycloNum>, u32>);

#[derive(Clone, Debug)]
pub struct Hyperplane {
    /// Linear form with kernel `H`, leading coefficient 1 (base conductor).
    pub form: Vec<CycloNum>,
    /// `form` promoted to the ambient conductor.
    pub ambient_form: Vec<CycloNum>,
    /// Canonical basis of `H` (base conductor).
    pub subspace: CycloSubspace,
    /// Reflections with fixed space `H`, ascending.
    pub reflections: Vec<usize>,
}

impl Hyperplane {
    /// Order of the pointwise stabilizer `W_H`: the identity plus the
    /// reflections fixing `H`.
    pub fn e_h(&self) -> usize {
        self.reflections.len() + 1
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    /// Classes in order of their least element; each class is sorted.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c[0])
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// A fully enumerated finite matrix group.
///
/// Elements are numbered in breadth-first discovery order from the identity
/// (index 0), right-multiplying by the generators in the given order. Group
/// multiplication runs on a faithful permutation action on a finite orbit of
/// vectors; matrices are materialized on demand along the discovery tree.
pub struct GroupTable {
    rank: usize,
    base_conductor: u32,
    conductor: u32,
    generator_matrices: Vec<CycloMatrix>,
    generators: Vec<usize>,
    perms: Vec<Perm>,
    index: HashMap<Perm, u32>,
    parent: Vec<(u32, u32)>,
    points: Vec<Vec<CycloNum>>,
    point_index: HashMap<Vec<CycloNum>, u32>,
    matrices: Vec<OnceLock<CycloMatrix>>,
    ambient: Vec<OnceLock<CycloMatrix>>,
    inverse: Vec<u32>,
    order_of: Vec<u32>,
    exponent: u64,
    classes: ConjugacyClasses,
    class_fixed_dims: Vec<usize>,
    reflections: Vec<usize>,
    hyperplanes: Vec<Hyperplane>,
    hyperplane_of: HashMap<usize, usize>,
    class_traces: OnceLock<Vec<CycloNum>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("rank", &self.rank)
            .field("order", &self.perms.len())
            .field("conductor", &self.conductor)
            .field("reflections", &self.reflections.len())
            .field("classes", &self.classes.len())
            .finish()
    }
}

fn is_reflection(m: &CycloMatrix) -> bool {
    m.shift(&m.get(0, 0).one_like()).rank() == 1
}

fn perm_order(p: &[u32]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

impl GroupTable {
    /// Enumerates the group generated by `generators` (breadth-first closure),
    /// failing with [`Error::CapExceeded`] beyond `cap` elements.
    pub fn enumerate(generators: &[CycloMatrix], cap: usize) -> Result<GroupTable> {
        let first = generators
            .first()
            .ok_or_else(|| Error::usage("at least one generator is required"))?;
        let rank = first.dim();
        let base_conductor = first.get(0, 0).conductor();
        for g in generators {
            if g.dim() != rank || g.get(0, 0).conductor() != base_conductor {
                return Err(Error::Shape(
                    "generators differ in size or conductor".into(),
                ));
            }
            if g.det().is_zero() {
                return Err(Error::usage("generator is not invertible"));
            }
        }

        let (points, point_index) = Self::point_orbit(generators, rank, cap)?;
        let gen_perms: Vec<Perm> = generators
            .iter()
            .map(|g| {
                points
                    .iter()
                    .map(|p| point_index[&g.apply(p)])
                    .collect::<Vec<_>>()
                    .into_boxed_slice()
            })
            .collect();

        let identity: Perm = (0..points.len() as u32).collect();
        let mut perms = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let mut parent = vec![(0u32, u32::MAX)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, gp) in gen_perms.iter().enumerate() {
                let y: Perm = gp.iter().map(|&i| perms[x][i as usize]).collect();
                if index.contains_key(&y) {
                    continue;
                }
                if perms.len() >= cap {
                    return Err(Error::CapExceeded(format!("group order exceeds {cap}")));
                }
                let id = perms.len();
                index.insert(y.clone(), id as u32);
                perms.push(y);
                parent.push((x as u32, gi as u32));
                queue.push_back(id);
            }
        }

        let order = perms.len();
        let generator_indices = gen_perms.iter().map(|p| index[p] as usize).collect();
        let mut inverse = vec![0u32; order];
        let mut order_of = vec![0u32; order];
        let mut exponent = 1u64;
        for (i, p) in perms.iter().enumerate() {
            let mut inv = vec![0u32; p.len()];
            for (a, &b) in p.iter().enumerate() {
                inv[b as usize] = a as u32;
            }
            inverse[i] = index[&inv.into_boxed_slice()];
            let o = perm_order(p);
            order_of[i] = o as u32;
            exponent = lcm(exponent, o);
        }
        let conductor = lcm(base_conductor as u64, exponent) as u32;

        let mut table = GroupTable {
            rank,
            base_conductor,
            conductor,
            generator_matrices: generators.to_vec(),
            generators: generator_indices,
            perms,
            index,
            parent,
            points,
            point_index,
            matrices: (0..order).map(|_| OnceLock::new()).collect(),
            ambient: (0..order).map(|_| OnceLock::new()).collect(),
            inverse,
            order_of,
            exponent,
            classes: ConjugacyClasses {
                classes: Vec::new(),
                class_of: Vec::new(),
            },
            class_fixed_dims: Vec::new(),
            reflections: Vec::new(),
            hyperplanes: Vec::new(),
            hyperplane_of: HashMap::new(),
            class_traces: OnceLock::new(),
        };
        table.classes = table.compute_classes();
        table.classify_reflections()?;
        Ok(table)
    }

    /// Finite set of vectors on which the group acts faithfully: the orbit of
    /// the roots of the reflection generators (which span a subspace outside
    /// of which every element acts trivially), or of the standard basis when
    /// some generator is not a reflection.
    fn point_orbit(generators: &[CycloMatrix], rank: usize, cap: usize) -> Result<PointOrbit> {
        let one = generators[0].get(0, 0).one_like();
        let mut seeds = Vec::new();
        let mut all_reflections = true;
        for g in generators {
            if g.is_identity() {
                continue;
            }
            if !is_reflection(g) {
                all_reflections = false;
                break;
            }
            let d = g.shift(&one);
            let col = (0..rank)
                .find(|&j| (0..rank).any(|i| !d.get(i, j).is_zero()))
                .expect("reflection has a nonzero column");
            seeds.push((0..rank).map(|i| d.get(i, col).clone()).collect::<Vec<_>>());
        }
        if !all_reflections || seeds.is_empty() {
            seeds = CycloMatrix::identity(rank, &one)
                .rows()
                .map(<[CycloNum]>::to_vec)
                .collect();
        }

        let limit = cap.saturating_mul(seeds.len()).max(seeds.len());
        let mut points = Vec::new();
        let mut point_index = HashMap::new();
        for s in seeds {
            if !point_index.contains_key(&s) {
                point_index.insert(s.clone(), points.len() as u32);
                points.push(s);
            }
        }
        let mut next = 0;
        while next < points.len() {
            for g in generators {
                let image = g.apply(&points[next]);
                if !point_index.contains_key(&image) {
                    if points.len() >= limit {
                        return Err(Error::CapExceeded(format!("group order exceeds {cap}")));
                    }
                    point_index.insert(image.clone(), points.len() as u32);
                    points.push(image);
                }
            }
            next += 1;
        }
        Ok((points, point_index))
    }

    fn compute_classes(&self) -> ConjugacyClasses {
        let order = self.order();
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut next = 0;
            while next < members.len() {
                let x = members[next];
                for &g in &self.generators {
                    let y = self.conjugate(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                next += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    fn classify_reflections(&mut self) -> Result<()> {
        let n = self.rank;
        let mut dims = Vec::with_capacity(self.classes.len());
        let mut reflections = Vec::new();
        for (c, members) in self.classes.classes.iter().enumerate() {
            let w = self.matrix(self.classes.representative(c));
            let r = w.shift(&w.get(0, 0).one_like()).rank();
            dims.push(n - r);
            if r == 1 {
                reflections.extend_from_slice(members);
            }
        }
        reflections.sort_unstable();

        let mut hyperplanes: Vec<Hyperplane> = Vec::new();
        let mut by_form: HashMap<Vec<CycloNum>, usize> = HashMap::new();
        let mut hyperplane_of = HashMap::new();
        for &r in &reflections {
            let m = self.matrix(r);
            let d = m.shift(&m.get(0, 0).one_like());
            let row = d
                .rows()
                .find(|row| row.iter().any(|x| !x.is_zero()))
                .expect("reflection minus identity is nonzero");
            let lead = row.iter().find(|x| !x.is_zero()).expect("nonzero row");
            let scale = lead.inv().expect("nonzero");
            let form: Vec<CycloNum> = row.iter().map(|x| x * &scale).collect();
            let h = match by_form.get(&form) {
                Some(&h) => h,
                None => {
                    let ambient_form = form
                        .iter()
                        .map(|x| x.promote(self.conductor))
                        .collect::<Result<Vec<_>>>()?;
                    hyperplanes.push(Hyperplane {
                        form: form.clone(),
                        ambient_form,
                        subspace: d.kernel(),
                        reflections: Vec::new(),
                    });
                    by_form.insert(form, hyperplanes.len() - 1);
                    hyperplanes.len() - 1
                }
            };
            hyperplanes[h].reflections.push(r);
            hyperplane_of.insert(r, h);
        }
        self.class_fixed_dims = dims;
        self.reflections = reflections;
        self.hyperplanes = hyperplanes;
        self.hyperplane_of = hyperplane_of;
        Ok(())
    }

    /// Dimension of the ambient space.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `|W|`.
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Conductor of the generator entries.
    pub fn base_conductor(&self) -> u32 {
        self.base_conductor
    }

    /// Ambient conductor `lcm(base conductor, exponent of the group)`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> &[CycloMatrix] {
        &self.generator_matrices
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (&self.perms[a], &self.perms[b]);
        let prod: Perm = pb.iter().map(|&i| pa[i as usize]).collect();
        self.index[&prod] as usize
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, elements: impl IntoIterator<Item = usize>) -> usize {
        elements.into_iter().fold(0, |acc, x| self.mult(acc, x))
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g a g^-1`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mult(self.mult(g, a), self.inv(g))
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let e = e % self.order_of(a);
        (0..e).fold(0, |acc, _| self.mult(acc, a))
    }

    pub fn order_of(&self, a: usize) -> u64 {
        self.order_of[a] as u64
    }

    /// Element orders that occur, ascending.
    pub fn element_orders(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.order_of.iter().map(|&o| o as u64).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Generators (as indices) along the discovery path of `a`.
    pub fn word(&self, mut a: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while a != 0 {
            let (p, g) = self.parent[a];
            w.push(g as usize);
            a = p as usize;
        }
        w.reverse();
        w
    }

    /// Matrix of element `a` over the base conductor.
    pub fn matrix(&self, a: usize) -> &CycloMatrix {
        if let Some(m) = self.matrices[a].get() {
            return m;
        }
        let mut chain = vec![a];
        let mut cur = a;
        while cur != 0 && self.matrices[cur].get().is_none() {
            cur = self.parent[cur].0 as usize;
            chain.push(cur);
        }
        for &x in chain.iter().rev() {
            if self.matrices[x].get().is_some() {
                continue;
            }
            let m = if x == 0 {
                let one = CycloNum::one(self.base_conductor);
                CycloMatrix::identity(self.rank, &one)
            } else {
                let (p, g) = self.parent[x];
                let pm = self.matrices[p as usize]
                    .get()
                    .expect("parent computed first");
                pm.mul_unchecked(&self.generator_matrices[g as usize])
            };
            let _ = self.matrices[x].set(m);
        }
        self.matrices[a].get().expect("just computed")
    }

    /// Matrix of element `a` over the ambient conductor.
    pub fn ambient_matrix(&self, a: usize) -> &CycloMatrix {
        self.ambient[a].get_or_init(|| {
            self.matrix(a)
                .try_map(|x| x.promote(self.conductor))
                .expect("ambient conductor is a multiple of the base conductor")
        })
    }

    /// Index of the element with matrix `m`, if it belongs to the group.
    pub fn locate(&self, m: &CycloMatrix) -> Option<usize> {
        if m.dim() != self.rank || m.get(0, 0).conductor() != self.base_conductor {
            return None;
        }
        let perm: Option<Perm> = self
            .points
            .iter()
            .map(|p| self.point_index.get(&m.apply(p)).copied())
            .collect();
        let idx = *self.index.get(&perm?)? as usize;
        (self.matrix(idx) == m).then_some(idx)
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.classes.class_of[a]
    }

    /// `dim ker(w - 1)` for every element of class `c`.
    pub fn class_fixed_dim(&self, c: usize) -> usize {
        self.class_fixed_dims[c]
    }

    pub fn fixed_dim(&self, a: usize) -> usize {
        self.class_fixed_dims[self.class_of(a)]
    }

    /// Reflections, ascending.
    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn is_reflection(&self, a: usize) -> bool {
        self.hyperplane_of.contains_key(&a)
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// The hyperplane of reflection `r`.
    pub fn hyperplane_of(&self, r: usize) -> Option<&Hyperplane> {
        self.hyperplane_of.get(&r).map(|&h| &self.hyperplanes[h])
    }

    /// Traces of the class representatives over the ambient conductor.
    pub fn class_traces(&self) -> &[CycloNum] {
        self.class_traces.get_or_init(|| {
            self.classes
                .representatives()
                .map(|r| self.ambient_matrix(r).trace())
                .collect()
        })
    }

    /// Order of the subgroup generated by `elements`.
    pub fn generated_order(&self, elements: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0usize];
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            for &g in elements {
                let y = self.mult(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            next += 1;
        }
        members.len()
    }

    /// Whether the reflections generate the whole group.
    pub fn generated_by_reflections(&self) -> bool {
        self.generated_order(&self.reflections) == self.order()
    }

    /// Character-norm criterion: the natural representation is irreducible iff
    /// `(1/|W|) sum_w tr(w) conj(tr(w)) = 1`.
    pub fn is_irreducible(&self) -> bool {
        let l = self.conductor;
        let total = self.class_traces().iter().zip(&self.classes.classes).fold(
            CycloNum::zero(l),
            |acc, (t, members)| {
                let size = CycloNum::from_int(l, members.len() as i64);
                &acc + &(&size * &(t * &t.conj()))
            },
        );
        total == CycloNum::from_int(l, self.order() as i64)
    }

    /// Brute-force count of the elements acting trivially on `h`, which must
    /// be one of the reflecting hyperplanes (base-conductor basis).
    pub fn pointwise_stabilizer_order(&self, h: &CycloSubspace) -> Result<usize> {
        if !self.hyperplanes.iter().any(|hp| &hp.subspace == h) {
            return Err(Error::usage("not a reflecting hyperplane of the group"));
        }
        Ok((0..self.order())
            .filter(|&w| {
                let m = self.matrix(w);
                h.basis().iter().all(|v| &m.apply(v) == v)
            })
            .count())
    }
}
