//! Local cohomology of exterior powers of the partition sheaf.
//!
//! The punctured partition space `W = X \ {•}` is covered by the opens `U_p`,
//! `p ∈ P`, and every finite intersection is some `U_S`. The Čech complex of
//! `Λ^k FL` on that cover has, in degree `i`, one block `Λ^k(L ∩ G_S)` per
//! subset `S` with `|S| = i + 1`. Local cohomology is read off with a degree
//! shift: `H_•^j = H^{j-1}(W)` for `j >= 1` and `k >= 1`.
//!
//! Party subsets are enumerated size first, then lexicographically. Exterior
//! coordinates use lexicographic order of k-subsets.

use crate::error::{Error, Result};
use crate::ffla::{determinant, kernel, solve, FieldPrime, Matrix, Subspace};
use crate::symplectic::{PartySet, PartyStructure};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Nonempty subsets of `l` parties with `size` elements, lexicographic.
pub fn party_subsets(l: usize, size: usize) -> Vec<PartySet> {
    k_subsets(l, size)
        .into_iter()
        .map(|s| s.iter().fold(0, |acc, &p| acc | 1 << p))
        .collect()
}

pub fn members(s: PartySet) -> Vec<usize> {
    (0..32).filter(|&p| s >> p & 1 == 1).collect()
}

/// Bijection between sorted k-subsets of `0..n` and coordinates of `Λ^k F^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExteriorBasisMap {
    n: usize,
    k: usize,
}

impl ExteriorBasisMap {
    pub fn new(n: usize, k: usize) -> Self {
        ExteriorBasisMap { n, k }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        binomial(self.n, self.k)
    }

    /// Lexicographic rank of a strictly increasing k-subset.
    pub fn index(&self, subset: &[usize]) -> usize {
        let (n, k) = (self.n, self.k);
        let mut rank = 0;
        let mut prev = 0;
        for (i, &c) in subset.iter().enumerate() {
            for x in prev..c {
                rank += binomial(n - 1 - x, k - 1 - i);
            }
            prev = c + 1;
        }
        rank
    }

    pub fn subset(&self, mut index: usize) -> Vec<usize> {
        let (n, k) = (self.n, self.k);
        let mut out = Vec::with_capacity(k);
        let mut x = 0;
        for i in 0..k {
            loop {
                let block = binomial(n - 1 - x, k - 1 - i);
                if index < block {
                    break;
                }
                index -= block;
                x += 1;
            }
            out.push(x);
            x += 1;
        }
        out
    }
}

/// `v_1 ∧ ... ∧ v_k` in the lexicographic basis of `Λ^k F^n`: the coordinate at
/// `I` is the minor of the stacked vectors on columns `I`.
pub fn wedge_embed<R: AsRef<[u32]>>(vectors: &[R], map: &ExteriorBasisMap, field: FieldPrime) -> Result<Vec<u32>> {
    if vectors.len() != map.k {
        return Err(Error::DimensionMismatch {
            expected: map.k,
            found: vectors.len(),
        });
    }
    if let Some(v) = vectors.iter().find(|v| v.as_ref().len() != map.n) {
        return Err(Error::DimensionMismatch {
            expected: map.n,
            found: v.as_ref().len(),
        });
    }
    let stacked = Matrix::from_rows(vectors, map.n, field)?;
    Ok(k_subsets(map.n, map.k)
        .iter()
        .map(|cols| determinant(&stacked.select_columns(cols), field))
        .collect())
}

/// k-th compound matrix: entry `(I, J)` is the minor of `a` on rows `I`, columns `J`.
pub fn compound(a: &Matrix, k: usize, field: FieldPrime) -> Matrix {
    let rows = k_subsets(a.rows(), k);
    let cols = k_subsets(a.cols(), k);
    if k == 1 {
        return a.clone();
    }
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (ri, r) in rows.iter().enumerate() {
        let sub = Matrix::from_fn(k, a.cols(), |i, c| a.get(r[i], c));
        if sub.rank(field) < k {
            continue;
        }
        for (ci, c) in cols.iter().enumerate() {
            out.set(ri, ci, determinant(&sub.select_columns(c), field));
        }
    }
    out
}

/// `Λ^k(L ∩ G_S)` inside `Λ^k G`.
pub fn section_space(l: &Subspace, structure: &PartyStructure, s: PartySet, k: usize) -> Result<Subspace> {
    if s == 0 {
        return Err(Error::Precondition("section spaces need a nonempty party set".into()));
    }
    let f = structure.field();
    let sec = structure.restrict(l, s);
    if k == 1 {
        return Ok(sec);
    }
    let map = ExteriorBasisMap::new(structure.ambient_dim(), k);
    let basis: Vec<&[u32]> = sec.basis_vectors().collect();
    let rows = k_subsets(basis.len(), k)
        .iter()
        .map(|idx| {
            let vs: Vec<&[u32]> = idx.iter().map(|&i| basis[i]).collect();
            wedge_embed(&vs, &map, f)
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(map.dim(), &rows, f)
}

/// One cochain block: the open `U_S` and where its coordinates live.
#[derive(Clone, Debug)]
pub struct Block {
    pub parties: PartySet,
    pub offset: usize,
    pub dim: usize,
    /// `L ∩ G_S`, present for complexes of exterior powers of `FL`.
    pub section: Option<Subspace>,
}

/// Čech complex on the cover `(U_p)` of the punctured partition space.
#[derive(Clone, Debug)]
pub struct CechComplex {
    field: FieldPrime,
    num_parties: usize,
    degree: usize,
    blocks: Vec<Vec<Block>>,
    coboundaries: Vec<Matrix>,
}

impl CechComplex {
    /// Assembles the complex from per-subset block data and inclusion maps.
    ///
    /// `inclusion(sub, sup)` is the `dim(sup) x dim(sub)` matrix of the
    /// restriction-inverse map from the block at `sub` into the block at `sup`.
    fn assemble(
        field: FieldPrime,
        num_parties: usize,
        degree: usize,
        mut block_data: impl FnMut(PartySet) -> (usize, Option<Subspace>),
        mut inclusion: impl FnMut(PartySet, PartySet, &Block, &Block) -> Matrix,
    ) -> Self {
        let blocks: Vec<Vec<Block>> = (0..num_parties)
            .map(|i| {
                let mut offset = 0;
                party_subsets(num_parties, i + 1)
                    .into_iter()
                    .map(|s| {
                        let (dim, section) = block_data(s);
                        let b = Block {
                            parties: s,
                            offset,
                            dim,
                            section,
                        };
                        offset += dim;
                        b
                    })
                    .collect()
            })
            .collect();
        let mut coboundaries = Vec::new();
        for i in 0..num_parties.saturating_sub(1) {
            let src = &blocks[i];
            let dst = &blocks[i + 1];
            let rows: usize = dst.iter().map(|b| b.dim).sum();
            let cols: usize = src.iter().map(|b| b.dim).sum();
            let mut d = Matrix::zeros(rows, cols);
            for tb in dst {
                let elems = members(tb.parties);
                for (alpha, &omit) in elems.iter().enumerate() {
                    let sub = tb.parties & !(1 << omit);
                    let sb = src.iter().find(|b| b.parties == sub).expect("face block exists");
                    if sb.dim == 0 || tb.dim == 0 {
                        continue;
                    }
                    let m = inclusion(sub, tb.parties, sb, tb);
                    let sign = field.sign(alpha);
                    for r in 0..tb.dim {
                        for c in 0..sb.dim {
                            let v = m.get(r, c);
                            if v != 0 {
                                d.set(tb.offset + r, sb.offset + c, field.mul(sign, v));
                            }
                        }
                    }
                }
            }
            coboundaries.push(d);
        }
        CechComplex {
            field,
            num_parties,
            degree,
            blocks,
            coboundaries,
        }
    }

    pub fn field(&self) -> FieldPrime {
        self.field
    }

    pub fn num_parties(&self) -> usize {
        self.num_parties
    }

    /// Exterior degree `k` of the coefficient sheaf.
    pub fn exterior_degree(&self) -> usize {
        self.degree
    }

    /// Blocks of cochain degree `i`.
    pub fn blocks(&self, i: usize) -> &[Block] {
        &self.blocks[i]
    }

    pub fn block(&self, i: usize, s: PartySet) -> Option<&Block> {
        self.blocks.get(i)?.iter().find(|b| b.parties == s)
    }

    pub fn cochain_dim(&self, i: usize) -> usize {
        self.blocks.get(i).map_or(0, |bs| bs.iter().map(|b| b.dim).sum())
    }

    /// `D^i : C^i -> C^{i+1}` as a `dim C^{i+1} x dim C^i` matrix.
    pub fn coboundary(&self, i: usize) -> Option<&Matrix> {
        self.coboundaries.get(i)
    }

    fn coboundary_rank(&self, i: usize) -> usize {
        self.coboundaries.get(i).map_or(0, |d| d.rank(self.field))
    }

    /// `dim H^i(W)` for `i = 0 .. |P|-1`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.num_parties).map(|i| self.coboundary_rank(i)).collect();
        (0..self.num_parties)
            .map(|i| self.cochain_dim(i) - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 })
            .collect()
    }

    /// Cocycles of degree `i`.
    pub fn cocycles(&self, i: usize) -> Subspace {
        let n = self.cochain_dim(i);
        match self.coboundaries.get(i) {
            Some(d) => kernel(d, self.field),
            None => Subspace::full(n, self.field),
        }
    }

    /// Coboundaries of degree `i`.
    pub fn coboundaries(&self, i: usize) -> Subspace {
        let n = self.cochain_dim(i);
        if i == 0 {
            return Subspace::zero(n, self.field);
        }
        Subspace::from_matrix(&self.coboundaries[i - 1].transpose(), self.field)
    }

    /// Cocycles spanning a complement of the coboundaries in degree `i`.
    pub fn cohomology_representatives(&self, i: usize) -> Result<Vec<Vec<u32>>> {
        let z = self.cocycles(i);
        let b = self.coboundaries(i);
        let mut acc = b;
        let mut reps = Vec::new();
        for v in z.basis_vectors() {
            if !acc.contains(v) {
                reps.push(v.to_vec());
                acc = acc.sum(&Subspace::span(acc.ambient_dim(), &[v], self.field)?)?;
            }
        }
        Ok(reps)
    }

    /// Splits a degree-`i` cochain into the vector of each block (k = 1 only):
    /// block coordinates are expanded through the RREF basis of `L ∩ G_S`.
    pub fn block_vectors(&self, i: usize, cochain: &[u32]) -> Vec<(PartySet, Vec<u32>)> {
        self.blocks[i]
            .iter()
            .map(|b| {
                let sec = b.section.as_ref().expect("block carries its section space");
                (b.parties, sec.combine(&cochain[b.offset..b.offset + b.dim]))
            })
            .collect()
    }
}

fn sections_of(l: &Subspace, structure: &PartyStructure) -> Vec<Subspace> {
    // indexed by party mask
    let n = 1usize << structure.num_parties();
    (0..n).map(|s| structure.restrict(l, s as PartySet)).collect()
}

/// The Čech complex of `Λ^k FL`.
pub fn cech_complex(l: &Subspace, structure: &PartyStructure, k: usize) -> Result<CechComplex> {
    if structure.num_parties() == 0 {
        return Err(Error::Precondition("the Čech complex needs at least one party".into()));
    }
    let f = structure.field();
    let sections = sections_of(l, structure);
    Ok(CechComplex::assemble(
        f,
        structure.num_parties(),
        k,
        |s| {
            let sec = &sections[s as usize];
            (binomial(sec.dim(), k), Some(sec.clone()))
        },
        |sub, sup, _, _| {
            let small = &sections[sub as usize];
            let big = &sections[sup as usize];
            // rows: basis of the smaller section in coordinates of the larger one
            let a = Matrix::from_fn(small.dim(), big.dim(), |r, c| {
                let v = small.basis().row(r);
                v[big.pivots()[c]]
            });
            compound(&a, k, f).transpose()
        },
    ))
}

/// Čech complex of the quotient sheaf `FL / FM`, with `M ⊆ L`.
pub fn cech_complex_rel(l: &Subspace, m: &Subspace, structure: &PartyStructure) -> Result<CechComplex> {
    if structure.num_parties() == 0 {
        return Err(Error::Precondition("the Čech complex needs at least one party".into()));
    }
    if !m.is_subspace_of(l) {
        return Err(Error::NotContained);
    }
    let f = structure.field();
    let ls = sections_of(l, structure);
    let ms = sections_of(m, structure);
    // per subset: rows [basis of M_S; complement vectors], and the complement count
    let mut quotient: Vec<(Matrix, usize)> = Vec::with_capacity(ls.len());
    for (lsec, msec) in ls.iter().zip(&ms) {
        let extra = lsec.complement_basis(msec)?;
        let mrows: Vec<&[u32]> = msec.basis_vectors().collect();
        let mut rows: Vec<&[u32]> = mrows.clone();
        rows.extend(extra.iter().map(|v| v.as_slice()));
        let mat = Matrix::from_rows(&rows, l.ambient_dim(), f)?;
        quotient.push((mat, extra.len()));
    }
    Ok(CechComplex::assemble(
        f,
        structure.num_parties(),
        1,
        |s| (quotient[s as usize].1, None),
        |sub, sup, _, _| {
            let (small, small_q) = &quotient[sub as usize];
            let (big, big_q) = &quotient[sup as usize];
            let m_dim = big.rows() - big_q;
            let mut out = Matrix::zeros(*big_q, *small_q);
            for c in 0..*small_q {
                let v = small.row(small.rows() - small_q + c);
                let x = solve(big, v, f)
                    .expect("dimensions agree")
                    .expect("section of a smaller open lies in the larger one");
                for r in 0..*big_q {
                    out.set(r, c, x[m_dim + r]);
                }
            }
            out
        },
    ))
}

/// Shifts `dim H^{j-1}(W)` into the local degrees `0..=|P|`.
fn local_row(w_dims: &[usize]) -> Vec<usize> {
    let mut row = vec![0];
    row.extend_from_slice(w_dims);
    row
}

/// `(h^{k,0}, ..., h^{k,|P|})`.
pub fn local_invariants(l: &Subspace, structure: &PartyStructure, k: usize) -> Result<Vec<usize>> {
    let parties = structure.num_parties();
    if parties == 0 {
        return Ok(vec![usize::from(k == 0)]);
    }
    if k == 0 || k > l.dim() {
        return Ok(vec![0; parties + 1]);
    }
    Ok(local_row(&cech_complex(l, structure, k)?.cohomology_dims()))
}

/// `(h^0, ..., h^{|P|})` of `FL / FM`.
pub fn local_invariants_rel(l: &Subspace, m: &Subspace, structure: &PartyStructure) -> Result<Vec<usize>> {
    let parties = structure.num_parties();
    if !m.is_subspace_of(l) {
        return Err(Error::NotContained);
    }
    if parties == 0 {
        return Ok(vec![0]);
    }
    Ok(local_row(&cech_complex_rel(l, m, structure)?.cohomology_dims()))
}

/// The matrix of dimensions `h^{ij}(L)`, rows `i = 0..=dim L`, columns `j = 0..=|P|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantTable {
    num_parties: usize,
    rows: Vec<Vec<usize>>,
}

impl InvariantTable {
    pub fn from_rows(num_parties: usize, rows: Vec<Vec<usize>>) -> Self {
        InvariantTable { num_parties, rows }
    }

    pub fn num_parties(&self) -> usize {
        self.num_parties
    }

    /// `h^{ij}`, zero outside the stored range.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.rows.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Vec<usize> {
        (0..=self.num_parties).map(|j| self.get(i, j)).collect()
    }

    /// `h^j = h^{1j}`.
    pub fn first_order(&self) -> Vec<usize> {
        self.row(1)
    }

    pub fn max_degree(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }
}

pub fn invariant_table(l: &Subspace, structure: &PartyStructure) -> Result<InvariantTable> {
    invariant_table_upto(l, structure, l.dim())
}

/// Rows `k = 0..=min(kmax, dim L)`.
pub fn invariant_table_upto(l: &Subspace, structure: &PartyStructure, kmax: usize) -> Result<InvariantTable> {
    let rows = (0..=kmax.min(l.dim()))
        .map(|k| local_invariants(l, structure, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantTable::from_rows(structure.num_parties(), rows))
}

/// Representatives of `H_•^j(X; Λ^k FL)` as Čech cocycles in W-degree `j - 1`.
#[derive(Clone, Debug)]
pub struct CohomologyClasses {
    pub degree: usize,
    pub representatives: Vec<Vec<u32>>,
}

pub fn cohomology_basis(l: &Subspace, structure: &PartyStructure, k: usize, j: usize) -> Result<CohomologyClasses> {
    let parties = structure.num_parties();
    if j == 0 || j > parties {
        return Err(Error::DegreeOutOfRange { degree: j, parties });
    }
    if k == 0 {
        return Ok(CohomologyClasses {
            degree: j,
            representatives: Vec::new(),
        });
    }
    let c = cech_complex(l, structure, k)?;
    Ok(CohomologyClasses {
        degree: j,
        representatives: c.cohomology_representatives(j - 1)?,
    })
}
