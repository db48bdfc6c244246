//! Exact linear algebra over prime fields.
//!
//! Vectors are plain `Vec<u32>` of residues. Matrices are dense and row-major.
//! Over F_2 the elimination kernel packs rows into 64-bit words; every other
//! prime uses residue arrays. Both paths produce the same reduced row echelon
//! form, which is the canonical representation of a [`Subspace`].

use std::fmt;

use crate::error::{Error, Result};

/// A prime modulus `p` with `2 <= p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldPrime(u32);

impl FieldPrime {
    pub const TWO: FieldPrime = FieldPrime(2);

    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 16).contains(&p) {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(FieldPrime(p as u32))
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.0 != 0, "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }

    /// `(-1)^k` as a residue.
    #[inline]
    pub fn sign(self, k: usize) -> u32 {
        if k % 2 == 0 {
            1 % self.0
        } else {
            self.0 - 1
        }
    }
}

impl fmt::Display for FieldPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0)
    }
}

/// Dense row-major matrix of residues.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R], cols: usize, field: FieldPrime) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| x % field.p()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul(&self, other: &Matrix, field: FieldPrime) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let p = field.p() as u64;
        let mut out = Matrix::zeros(self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot = (*slot + a as u64 * b as u64) % p;
                }
            }
            for (dst, &a) in out.row_mut(r).iter_mut().zip(&acc) {
                *dst = a as u32;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[u32], field: FieldPrime) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v, field)).collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]))
    }

    pub fn rank(&self, field: FieldPrime) -> usize {
        rref(self, field).rank
    }
}

#[inline]
pub fn dot(a: &[u32], b: &[u32], field: FieldPrime) -> u32 {
    let p = field.p() as u64;
    let mut acc = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        acc = (acc + x as u64 * y as u64) % p;
    }
    acc as u32
}

/// `a + c * b` in place.
#[inline]
pub fn axpy(a: &mut [u32], c: u32, b: &[u32], field: FieldPrime) {
    if c == 0 {
        return;
    }
    let p = field.p() as u64;
    for (x, &y) in a.iter_mut().zip(b) {
        *x = ((*x as u64 + c as u64 * y as u64) % p) as u32;
    }
}

pub fn scale(a: &mut [u32], c: u32, field: FieldPrime) {
    for x in a.iter_mut() {
        *x = field.mul(*x, c);
    }
}

/// Reduced row echelon form together with pivot columns and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix, field: FieldPrime) -> Echelon {
    let mut matrix = m.clone();
    let pivots = eliminate(&mut matrix, field, m.cols);
    let rank = pivots.len();
    Echelon {
        matrix,
        pivots,
        rank,
    }
}

/// Gauss-Jordan elimination in place, choosing pivots only in columns
/// `< pivot_limit`. Returns the pivot columns; pivot rows come first.
fn eliminate(m: &mut Matrix, field: FieldPrime, pivot_limit: usize) -> Vec<usize> {
    if field.p() == 2 {
        eliminate_f2(m, pivot_limit)
    } else {
        eliminate_fp(m, field, pivot_limit)
    }
}

fn eliminate_fp(m: &mut Matrix, field: FieldPrime, pivot_limit: usize) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit.min(cols) {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                m.data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = field.inv(m.get(r, c));
        scale(m.row_mut(r), inv, field);
        let pivot_row: Vec<u32> = m.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c);
            if f != 0 {
                axpy(m.row_mut(i), field.neg(f), &pivot_row, field);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn eliminate_f2(m: &mut Matrix, pivot_limit: usize) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let words = cols.div_ceil(64).max(1);
    let mut packed = vec![0u64; rows * words];
    for r in 0..rows {
        for c in 0..cols {
            if m.get(r, c) & 1 == 1 {
                packed[r * words + c / 64] |= 1 << (c % 64);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit.min(cols) {
        if r == rows {
            break;
        }
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (r..rows).find(|&i| packed[i * words + w] & bit != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..words {
                packed.swap(pr * words + k, r * words + k);
            }
        }
        for i in 0..rows {
            if i != r && packed[i * words + w] & bit != 0 {
                for k in w..words {
                    let v = packed[r * words + k];
                    packed[i * words + k] ^= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, ((packed[r * words + c / 64] >> (c % 64)) & 1) as u32);
        }
    }
    pivots
}

/// Null space `{v : m v = 0}`.
pub fn kernel(m: &Matrix, field: FieldPrime) -> Subspace {
    let ech = rref(m, field);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut rows = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; n];
        v[f] = 1;
        for (i, &pc) in ech.pivots.iter().enumerate() {
            v[pc] = field.neg(ech.matrix.get(i, f));
        }
        rows.push(v);
    }
    Subspace::from_rows_unchecked(n, &rows, field)
}

/// Solves `a y = b` for a column vector `y`, free variables fixed to zero.
pub fn solve_columns(a: &Matrix, b: &[u32], field: FieldPrime) -> Result<Option<Vec<u32>>> {
    Ok(ColumnSolver::new(a, field).solve(b)?)
}

/// Solves `x a = rhs` for a row vector `x`: a combination of the rows of `a`
/// equal to `rhs`, or `None` if `rhs` lies outside the row space.
pub fn solve(a: &Matrix, rhs: &[u32], field: FieldPrime) -> Result<Option<Vec<u32>>> {
    if rhs.len() != a.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.cols(),
            found: rhs.len(),
        });
    }
    solve_columns(&a.transpose(), rhs, field)
}

/// Factored form of `a` for repeated solves of `a y = b`.
#[derive(Clone, Debug)]
pub struct ColumnSolver {
    field: FieldPrime,
    rows: usize,
    cols: usize,
    /// `transform * a` is the RREF of `a`.
    transform: Matrix,
    pivots: Vec<usize>,
}

impl ColumnSolver {
    pub fn new(a: &Matrix, field: FieldPrime) -> Self {
        let (rows, cols) = (a.rows(), a.cols());
        let mut aug = Matrix::from_fn(rows, cols + rows, |r, c| {
            if c < cols {
                a.get(r, c)
            } else if c - cols == r {
                1
            } else {
                0
            }
        });
        let pivots = eliminate(&mut aug, field, cols);
        let transform = Matrix::from_fn(rows, rows, |r, c| aug.get(r, cols + c));
        ColumnSolver {
            field,
            rows,
            cols,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let c = self.transform.apply(b, self.field)?;
        if c[self.pivots.len()..].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let mut y = vec![0u32; self.cols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            y[pc] = c[i];
        }
        Ok(Some(y))
    }
}

/// Linear subspace of F_p^N held in reduced row echelon form.
///
/// Two subspaces are equal iff their fields compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldPrime,
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, field: FieldPrime) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize, field: FieldPrime) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span<R: AsRef<[u32]>>(ambient_dim: usize, vectors: &[R], field: FieldPrime) -> Result<Self> {
        let m = Matrix::from_rows(vectors, ambient_dim, field)?;
        Ok(Self::from_matrix(&m, field))
    }

    pub fn from_matrix(m: &Matrix, field: FieldPrime) -> Self {
        let ech = rref(m, field);
        let basis = Matrix::from_fn(ech.rank, m.cols(), |r, c| ech.matrix.get(r, c));
        Subspace {
            field,
            ambient_dim: m.cols(),
            basis,
            pivots: ech.pivots,
        }
    }

    fn from_rows_unchecked(ambient_dim: usize, rows: &[Vec<u32>], field: FieldPrime) -> Self {
        let m = Matrix::from_fn(rows.len(), ambient_dim, |r, c| rows[r][c]);
        Self::from_matrix(&m, field)
    }

    #[inline]
    pub fn field(&self) -> FieldPrime {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.basis.iter_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if n != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: n,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        self.check_ambient(other.ambient_dim)
    }

    /// Coefficients of `v` in the RREF basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coeffs: Vec<u32> = self.pivots.iter().map(|&c| v[c] % self.field.p()).collect();
        let mut rest: Vec<u32> = v.iter().map(|&x| x % self.field.p()).collect();
        for (i, &c) in coeffs.iter().enumerate() {
            axpy(&mut rest, self.field.neg(c), self.basis.row(i), self.field);
        }
        rest.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    /// The vector with the given coefficients in the RREF basis.
    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.ambient_dim];
        for (i, &c) in coeffs.iter().enumerate() {
            axpy(&mut v, c, self.basis.row(i), self.field);
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.field == other.field
            && self.ambient_dim == other.ambient_dim
            && self.basis_vectors().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let m = self.basis.vstack(&other.basis)?;
        Ok(Subspace::from_matrix(&m, self.field))
    }

    /// Intersection by the kernel method: solve `c A = d B`, map back through `A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim, f));
        }
        let neg_b = Matrix::from_fn(other.dim(), self.ambient_dim, |r, c| f.neg(other.basis.get(r, c)));
        let stacked = self.basis.vstack(&neg_b)?;
        let relations = kernel(&stacked.transpose(), f);
        let a = self.dim();
        let rows: Vec<Vec<u32>> = relations
            .basis_vectors()
            .map(|rel| self.combine(&rel[..a]))
            .collect();
        Ok(Subspace::from_rows_unchecked(self.ambient_dim, &rows, f))
    }

    /// Subspace of vectors supported on the given coordinates.
    pub fn coordinate(ambient_dim: usize, coords: &[usize], field: FieldPrime) -> Subspace {
        let rows: Vec<Vec<u32>> = coords
            .iter()
            .map(|&c| {
                let mut v = vec![0; ambient_dim];
                v[c] = 1;
                v
            })
            .collect();
        Subspace::from_rows_unchecked(ambient_dim, &rows, field)
    }

    /// `self ∩ span{e_c : c ∈ coords}`; `outside` lists the complementary coordinates.
    pub fn restrict_support(&self, outside: &[usize]) -> Subspace {
        let f = self.field;
        if outside.is_empty() {
            return self.clone();
        }
        let proj = self.basis.select_columns(outside);
        let rel = kernel(&proj.transpose(), f);
        let rows: Vec<Vec<u32>> = rel.basis_vectors().map(|c| self.combine(c)).collect();
        Subspace::from_rows_unchecked(self.ambient_dim, &rows, f)
    }

    /// Re-embeds through a coordinate map: old coordinate `c` becomes `map[c]`
    /// in an ambient space of dimension `new_dim`.
    pub fn remap(&self, map: &[usize], new_dim: usize) -> Subspace {
        let rows: Vec<Vec<u32>> = self
            .basis_vectors()
            .map(|v| {
                let mut w = vec![0u32; new_dim];
                for (c, &x) in v.iter().enumerate() {
                    w[map[c]] = x;
                }
                w
            })
            .collect();
        Subspace::from_rows_unchecked(new_dim, &rows, self.field)
    }

    /// Projects onto the listed coordinates, in order.
    pub fn project(&self, coords: &[usize]) -> Subspace {
        let m = self.basis.select_columns(coords);
        Subspace::from_matrix(&m, self.field)
    }

    /// Extends a basis of `sub` (which must lie inside `self`) to a basis of
    /// `self`, returning only the added vectors.
    pub fn complement_basis(&self, sub: &Subspace) -> Result<Vec<Vec<u32>>> {
        self.check_compatible(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(Error::NotContained);
        }
        let mut acc = sub.clone();
        let mut added = Vec::new();
        for v in self.basis_vectors() {
            if acc.dim() == self.dim() {
                break;
            }
            if !acc.contains(v) {
                added.push(v.to_vec());
                acc = acc.sum(&Subspace::span(self.ambient_dim, &[v], self.field)?)?;
            }
        }
        Ok(added)
    }
}

/// Determinant of a square matrix.
pub fn determinant(m: &Matrix, field: FieldPrime) -> u32 {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a = m.clone();
    let mut det = 1u32 % field.p();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&r| a.get(r, c) != 0) else {
            return 0;
        };
        if pr != c {
            for k in 0..n {
                let (x, y) = (a.get(pr, k), a.get(c, k));
                a.set(pr, k, y);
                a.set(c, k, x);
            }
            det = field.neg(det);
        }
        let pivot = a.get(c, c);
        det = field.mul(det, pivot);
        let inv = field.inv(pivot);
        for r in c + 1..n {
            let f = a.get(r, c);
            if f != 0 {
                let factor = field.neg(field.mul(f, inv));
                let pivot_row: Vec<u32> = a.row(c).to_vec();
                axpy(a.row_mut(r), factor, &pivot_row, field);
            }
        }
    }
    det
}
