//! Exact square matrices and subspaces over a [`Field`].
//!
//! Elimination always pivots on the first nonzero entry found scanning down
//! the current column, so every derived object (rank, kernel basis, echelon
//! form) is deterministic. Subspaces are kept in reduced row echelon form,
//! which makes them canonical: equal subspaces have identical bases.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A square `n x n` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    /// Builds a matrix from rows; all rows must have length `rows.len()` and
    /// all entries must be compatible with each other.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row of length {} in {n}x{n} matrix",
                    row.len()
                )));
            }
            data.extend(row);
        }
        if data.iter().any(|x| !x.compatible(&data[0])) {
            return Err(Error::Shape("entries from different fields".into()));
        }
        Ok(Matrix { n, data })
    }

    /// `n x n` identity built from a representative `one`.
    pub fn identity(n: usize, one: &F) -> Self {
        let zero = one.zero_like();
        let one = one.one_like();
        let data = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    one.clone()
                } else {
                    zero.clone()
                }
            })
            .collect();
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        self.data.chunks(self.n)
    }

    /// Applies `f` to every entry.
    pub fn map<G: Field>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field>(&self, f: impl FnMut(&F) -> Result<G>) -> Result<Matrix<G>> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Shape(format!("{}x{0} vs {}x{1}", self.n, other.n)));
        }
        if !self.data[0].compatible(&other.data[0]) {
            return Err(Error::Shape("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let zero = self.data[0].zero_like();
        let mut data = vec![zero; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = if a.is_one() { b.clone() } else { a.mul(b) };
                    let slot = &mut data[i * n + j];
                    *slot = slot.add(&prod);
                }
            }
        }
        Matrix { n, data }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: &F) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            out.data[i * n + i] = out.data[i * n + i].sub(lambda);
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(self.data[0].zero_like(), |acc, (a, b)| {
                        if a.is_zero() || b.is_zero() {
                            acc
                        } else {
                            acc.add(&a.mul(b))
                        }
                    })
            })
            .collect()
    }

    pub fn trace(&self) -> F {
        (0..self.n).fold(self.data[0].zero_like(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.data.iter().enumerate().all(|(k, x)| {
            if k / n == k % n {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.n, &self.data[0]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Least `m >= 1` with `A^m = I`, by repeated multiplication.
    pub fn order(&self, cap: u64) -> Result<u64> {
        let mut acc = self.clone();
        for m in 1..=cap {
            if acc.is_identity() {
                return Ok(m);
            }
            acc = acc.mul_unchecked(self);
        }
        Err(Error::CapExceeded(format!("matrix order exceeds {cap}")))
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<F>> = self.rows().map(<[F]>::to_vec).collect();
        rref(rows, self.n).1.len()
    }

    /// Canonical basis of the null space.
    pub fn kernel(&self) -> Subspace<F> {
        let n = self.n;
        let rows: Vec<Vec<F>> = self.rows().map(<[F]>::to_vec).collect();
        let (reduced, pivots) = rref(rows, n);
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![zero.clone(); n];
            v[free] = one.clone();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = reduced[r][free].neg();
            }
            basis.push(v);
        }
        Subspace::span(n, basis)
    }

    pub fn eigenspace(&self, lambda: &F) -> Result<Subspace<F>> {
        if !lambda.compatible(&self.data[0]) {
            return Err(Error::Shape("eigenvalue outside the matrix field".into()));
        }
        Ok(self.shift(lambda).kernel())
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F {
        let n = self.n;
        let mut m: Vec<Vec<F>> = self.rows().map(<[F]>::to_vec).collect();
        let mut det = self.data[0].one_like();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return self.data[0].zero_like();
            };
            if p != col {
                m.swap(p, col);
                det = det.neg();
            }
            det = det.mul(&m[col][col]);
            let inv = m[col][col].inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].mul(&inv);
                let (top, bottom) = m.split_at_mut(r);
                for (x, p) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let one = self.data[0].one_like();
        let zero = self.data[0].zero_like();
        let rows: Vec<Vec<F>> = self
            .rows()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.to_vec();
                r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
                r
            })
            .collect();
        let (reduced, pivots) = rref(rows, n);
        if pivots.len() != n {
            return Err(Error::DivisionByZero);
        }
        Ok(Matrix {
            n,
            data: reduced
                .into_iter()
                .flat_map(|r| r.into_iter().skip(n))
                .collect(),
        })
    }

    /// Characteristic polynomial `det(X I - A)`, coefficients lowest degree
    /// first (`n + 1` entries, last one is `1`).
    ///
    /// Faddeev-LeVerrier: the only divisions are by the integers `1..=n`.
    pub fn char_poly(&self) -> Vec<F> {
        let n = self.n;
        let one = self.data[0].one_like();
        let mut coeffs = vec![self.data[0].zero_like(); n + 1];
        coeffs[n] = one.clone();
        let mut m = Matrix::identity(n, &one).map(|x| x.zero_like());
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
            let mut next = self.mul_unchecked(&m);
            for i in 0..n {
                next.data[i * n + i] = next.data[i * n + i].add(&coeffs[n - k + 1]);
            }
            let tr = self.mul_unchecked(&next).trace();
            let k_inv = one.int_like(k as i64).inv().expect("k > 0");
            coeffs[n - k] = tr.mul(&k_inv).neg();
            m = next;
        }
        coeffs
    }

    /// Matrix of `self` restricted to an invariant subspace, in the given
    /// basis (columns of the result are coordinates of `A b_j`).
    pub fn restrict_to(&self, basis: &[Vec<F>]) -> Result<Self> {
        let k = basis.len();
        if k == 0 {
            return Err(Error::Shape("restriction to the zero subspace".into()));
        }
        let mut data = vec![self.data[0].zero_like(); k * k];
        for (j, b) in basis.iter().enumerate() {
            let image = self.apply(b);
            let coords = solve_in_span(basis, &image)
                .ok_or_else(|| Error::Shape("subspace is not invariant".into()))?;
            for (i, c) in coords.into_iter().enumerate() {
                data[i * k + j] = c;
            }
        }
        Ok(Matrix { n: k, data })
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}

/// Reduced row echelon form of `rows` (each of length at least `ncols`),
/// eliminating only within the first `ncols` columns. Returns the nonzero
/// reduced rows and their pivot columns.
fn rref<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Coordinates of `v` in terms of the (independent) vectors `basis`, if `v`
/// lies in their span.
fn solve_in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    let k = basis.len();
    let n = v.len();
    let zero = v[0].zero_like();
    // Augmented system: n equations, k unknowns, stored as rows of length k+1.
    let rows: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row: Vec<F> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![zero; k];
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// A subspace of `F^n` with a canonical reduced-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    /// Span of arbitrary vectors of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<F>>) -> Self {
        let (basis, _) = rref(vectors, ambient_dim);
        Subspace { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize, one: &F) -> Self {
        let basis = Matrix::identity(ambient_dim, one)
            .rows()
            .map(<[F]>::to_vec)
            .collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if v.iter().all(Field::is_zero) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        // Reduce v by the echelon basis; it lies in the span iff it vanishes.
        let mut w = v.to_vec();
        for row in &self.basis {
            let lead = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            if w[lead].is_zero() {
                continue;
            }
            let f = w[lead].clone();
            for (x, b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = x.sub(&f.mul(b));
                }
            }
        }
        w.iter().all(Field::is_zero)
    }

    /// `self ⊆ other`.
    pub fn contained_in(&self, other: &Subspace<F>) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Shape(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    pub fn try_map<G: Field>(&self, mut f: impl FnMut(&F) -> Result<G>) -> Result<Subspace<G>> {
        let basis = self
            .basis
            .iter()
            .map(|v| v.iter().map(&mut f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        // Entry-wise field embeddings preserve reduced echelon form.
        Ok(Subspace {
            ambient_dim: self.ambient_dim,
            basis,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloNum;
    use num_rational::BigRational;

    fn rat(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    /// Rotation by 2 pi / 5 in a rational basis: companion matrix of
    /// `X^2 - 2cos(2pi/5) X + 1`.
    fn rotation5() -> Matrix<CycloNum> {
        let z = |k| CycloNum::root_of_unity(5, k);
        Matrix::from_rows(vec![
            vec![CycloNum::zero(5), CycloNum::from_int(5, -1)],
            vec![CycloNum::one(5), &z(1) + &z(4)],
        ])
        .unwrap()
    }

    #[test]
    fn products_and_identity() {
        let a = rat(&[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(2, a.get(0, 0));
        assert_eq!(a.mul(&i).unwrap(), a);
        // permutation matrices compose like their permutations
        let p = rat(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let q = rat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let pq = p.mul(&q).unwrap();
        assert_eq!(pq, rat(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        assert!(matches!(a.mul(&p), Err(Error::Shape(_))));
    }

    #[test]
    fn rank_and_kernel() {
        let zero = rat(&[&[0, 0], &[0, 0]]);
        assert_eq!(zero.rank(), 0);
        assert_eq!(zero.kernel().dim(), 2);
        let i3 = Matrix::identity(3, &BigRational::from_integer(1.into()));
        assert_eq!(i3.rank(), 3);
        assert!(i3.kernel().is_zero());
        let a = rat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.dim(), 1);
        assert!(a.apply(&k.basis()[0]).iter().all(Field::is_zero));
    }

    #[test]
    fn char_poly_of_rotation() {
        let c = rotation5();
        let p = c.char_poly();
        let tau = &CycloNum::root_of_unity(5, 1) + &CycloNum::root_of_unity(5, 4);
        assert_eq!(p, vec![CycloNum::one(5), -&tau, CycloNum::one(5)]);
        assert_eq!(c.order(100).unwrap(), 5);
        let e = c.eigenspace(&CycloNum::root_of_unity(5, 1)).unwrap();
        assert_eq!(e.dim(), 1);
        let e2 = c.pow(2).eigenspace(&CycloNum::root_of_unity(5, 2)).unwrap();
        assert_eq!(e2.dim(), 1);
        assert!(c
            .pow(2)
            .eigenspace(&CycloNum::root_of_unity(5, 1))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn inverse_and_restriction() {
        let a = rat(&[&[2, 1], &[1, 1]]);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).unwrap().is_identity());
        assert!(rat(&[&[1, 2], &[2, 4]]).inverse().is_err());
        // the swap of coordinates restricted to the sum-zero line is -1
        let swap = rat(&[&[0, 1], &[1, 0]]);
        let line = vec![vec![
            BigRational::from_integer(1.into()),
            BigRational::from_integer((-1).into()),
        ]];
        assert_eq!(swap.restrict_to(&line).unwrap(), rat(&[&[-1]]));
    }

    #[test]
    fn subspace_containment() {
        let one = BigRational::from_integer(1.into());
        let full = Subspace::full(3, &one);
        let zero = Subspace::<BigRational>::zero(3);
        let a = rat(&[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]).kernel();
        assert!(a.contained_in(&full).unwrap());
        assert!(zero.contained_in(&a).unwrap());
        assert!(!full.contained_in(&a).unwrap());
        assert!(a.contained_in(&Subspace::full(2, &one)).is_err());
    }
}
