//! Party structures, the block-diagonal symplectic form, and graph lagrangians.
//!
//! Coordinates: party `p` owns a contiguous block of width `2 n_p`, blocks in
//! party order; within a block coordinates alternate `e_1, f_1, e_2, f_2, ...`
//! with `ω(e_i, f_i) = 1 = -ω(f_i, e_i)`.

use std::collections::BTreeSet;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffla::{kernel, FieldPrime, Matrix, Subspace};

/// A set of parties as a bitmask over party indices.
pub type PartySet = u32;

pub const MAX_PARTIES: usize = 24;

/// Parties `0..l`, their qudit counts, and the prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartyStructure {
    qudits: Vec<usize>,
    offsets: Vec<usize>,
    field: FieldPrime,
}

impl PartyStructure {
    pub fn new(qudits: Vec<usize>, field: FieldPrime) -> Result<Self> {
        if qudits.len() > MAX_PARTIES {
            return Err(Error::Precondition(format!(
                "at most {MAX_PARTIES} parties are supported, got {}",
                qudits.len()
            )));
        }
        let mut offsets = Vec::with_capacity(qudits.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &n in &qudits {
            acc += 2 * n;
            offsets.push(acc);
        }
        Ok(PartyStructure {
            qudits,
            offsets,
            field,
        })
    }

    /// `l` parties with `n` qudits each.
    pub fn uniform(parties: usize, n: usize, field: FieldPrime) -> Result<Self> {
        Self::new(vec![n; parties], field)
    }

    pub fn field(&self) -> FieldPrime {
        self.field
    }

    pub fn num_parties(&self) -> usize {
        self.qudits.len()
    }

    pub fn qudits(&self) -> &[usize] {
        &self.qudits
    }

    pub fn ambient_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn all_parties(&self) -> PartySet {
        ((1u64 << self.num_parties()) - 1) as PartySet
    }

    /// Coordinate range owned by party `p`.
    pub fn block(&self, p: usize) -> Range<usize> {
        self.offsets[p]..self.offsets[p + 1]
    }

    /// Party owning coordinate `c`.
    pub fn party_of(&self, c: usize) -> usize {
        self.offsets.partition_point(|&o| o <= c) - 1
    }

    /// Coordinates of `G_S`, ascending.
    pub fn coords(&self, s: PartySet) -> Vec<usize> {
        (0..self.num_parties())
            .filter(|&p| s >> p & 1 == 1)
            .flat_map(|p| self.block(p))
            .collect()
    }

    pub fn subset_dim(&self, s: PartySet) -> usize {
        (0..self.num_parties())
            .filter(|&p| s >> p & 1 == 1)
            .map(|p| 2 * self.qudits[p])
            .sum()
    }

    /// The coordinate subspace `G_S`.
    pub fn coordinate_subspace(&self, s: PartySet) -> Subspace {
        Subspace::coordinate(self.ambient_dim(), &self.coords(s), self.field)
    }

    /// `L ∩ G_S`.
    pub fn restrict(&self, l: &Subspace, s: PartySet) -> Subspace {
        let outside = self.coords(self.all_parties() & !s);
        l.restrict_support(&outside)
    }

    /// Component of `v` in party `p`'s block, zero elsewhere.
    pub fn component(&self, v: &[u32], p: usize) -> Vec<u32> {
        let mut w = vec![0; v.len()];
        for c in self.block(p) {
            w[c] = v[c];
        }
        w
    }

    /// Parties on whose blocks `v` is nonzero.
    pub fn support(&self, v: &[u32]) -> PartySet {
        (0..self.num_parties())
            .filter(|&p| self.block(p).any(|c| v[c] != 0))
            .fold(0, |acc, p| acc | 1 << p)
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    fn check_subspace(&self, l: &Subspace) -> Result<()> {
        if l.field() != self.field {
            return Err(Error::FieldMismatch(self.field.p(), l.field().p()));
        }
        if l.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: l.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `ω(u, v) = Σ_i (u_{e_i} v_{f_i} - u_{f_i} v_{e_i})`.
    pub fn omega(&self, u: &[u32], v: &[u32]) -> Result<u32> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(omega_range(self.field, u, v, 0..self.ambient_dim()))
    }

    /// `ω_p`: the form restricted to party `p`'s block.
    pub fn omega_party(&self, p: usize, u: &[u32], v: &[u32]) -> u32 {
        omega_range(self.field, u, v, self.block(p))
    }

    /// `J v`, chosen so that `ω(u, v) = <u, J v>`.
    pub fn dual_vector(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut w = vec![0; v.len()];
        for i in (0..v.len()).step_by(2) {
            w[i] = v[i + 1];
            w[i + 1] = f.neg(v[i]);
        }
        w
    }

    /// Gram matrix of ω on the standard basis.
    pub fn gram(&self) -> Matrix {
        let n = self.ambient_dim();
        let f = self.field;
        Matrix::from_fn(n, n, |r, c| {
            if r % 2 == 0 && c == r + 1 {
                1
            } else if r % 2 == 1 && c + 1 == r {
                f.neg(1)
            } else {
                0
            }
        })
    }

    /// `L^⊥ = {v : ω(b, v) = 0 for all b in L}`.
    pub fn orthogonal_complement(&self, l: &Subspace) -> Result<Subspace> {
        self.check_subspace(l)?;
        let f = self.field;
        let n = self.ambient_dim();
        // ω(b, v) = -<J b, v> so the rows J b cut out the same kernel
        let rows: Vec<Vec<u32>> = l.basis_vectors().map(|b| self.dual_vector(b)).collect();
        let m = Matrix::from_rows(&rows, n, f)?;
        Ok(kernel(&m, f))
    }

    pub fn is_isotropic(&self, l: &Subspace) -> Result<bool> {
        Ok(self.isotropy_violation(l)?.is_none())
    }

    /// First basis pair on which ω does not vanish.
    pub fn isotropy_violation(&self, l: &Subspace) -> Result<Option<(usize, usize)>> {
        self.check_subspace(l)?;
        let b: Vec<&[u32]> = l.basis_vectors().collect();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if omega_range(self.field, b[i], b[j], 0..self.ambient_dim()) != 0 {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_lagrangian(&self, l: &Subspace) -> Result<bool> {
        Ok(2 * l.dim() == self.ambient_dim() && self.is_isotropic(l)?)
    }
}

fn omega_range(f: FieldPrime, u: &[u32], v: &[u32], r: Range<usize>) -> u32 {
    let p = f.p() as u64;
    let mut acc = 0u64;
    for i in r.step_by(2) {
        acc += u[i] as u64 * v[i + 1] as u64;
        acc += (p - v[i] as u64 % p) * u[i + 1] as u64 % p;
        acc %= p;
    }
    acc as u32
}

/// A simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) outside 0..{n}")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("repeated edge ({a},{b})")));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn family(family: GraphFamily, n: usize) -> Result<Graph> {
        family.build(n)
    }
}

/// Named graph families, vertices laid out as documented on each variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    /// `A_n`: edges `(i, i+1)`.
    Path,
    /// `GHZ_n`: center `0` joined to every other vertex.
    Star,
    /// `Â_{n-1}`: the path plus `(n-1, 0)`.
    Cycle,
    /// `D_n`: path `0..=n-2` plus `(1, n-1)`.
    D,
    /// `E_6`: path `0..=4` plus `(2, 5)`.
    E6,
    /// `E_7`: path `0..=5` plus `(2, 6)`.
    E7,
    /// `D̂_{n-1}` on `n` vertices, layout in [`GraphFamily::build`].
    AffineD,
    /// `Ê_6`: center `0` with three arms of length two.
    AffineE6,
}

impl GraphFamily {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name.to_ascii_lowercase().as_str() {
            "path" | "a" => GraphFamily::Path,
            "star" | "ghz" => GraphFamily::Star,
            "cycle" | "ahat" => GraphFamily::Cycle,
            "d" => GraphFamily::D,
            "e6" => GraphFamily::E6,
            "e7" => GraphFamily::E7,
            "dhat" => GraphFamily::AffineD,
            "e6hat" | "ehat6" => GraphFamily::AffineE6,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Path => "path",
            GraphFamily::Star => "star",
            GraphFamily::Cycle => "cycle",
            GraphFamily::D => "d",
            GraphFamily::E6 => "e6",
            GraphFamily::E7 => "e7",
            GraphFamily::AffineD => "dhat",
            GraphFamily::AffineE6 => "e6hat",
        }
    }

    /// Builds the family member on `n` vertices.
    ///
    /// `AffineD` on `n >= 5` vertices is the chain `1..=n-4` with leaves
    /// `0, n-3` on vertex `1` and leaves `n-2, n-1` on vertex `n-4`
    /// (for `n = 5` both leaf pairs hang off vertex 1).
    pub fn build(self, n: usize) -> Result<Graph> {
        let bad = || Error::InvalidFamilySize {
            family: self.name().to_string(),
            size: n,
        };
        let edges: Vec<(usize, usize)> = match self {
            GraphFamily::Path => {
                if n == 0 {
                    return Err(bad());
                }
                (1..n).map(|i| (i - 1, i)).collect()
            }
            GraphFamily::Star => {
                if n == 0 {
                    return Err(bad());
                }
                (1..n).map(|i| (0, i)).collect()
            }
            GraphFamily::Cycle => {
                if n < 3 {
                    return Err(bad());
                }
                let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                e.push((n - 1, 0));
                e
            }
            GraphFamily::D => {
                if n < 4 {
                    return Err(bad());
                }
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((1, n - 1));
                e
            }
            GraphFamily::E6 | GraphFamily::E7 => {
                let k = if self == GraphFamily::E6 { 6 } else { 7 };
                if n != k {
                    return Err(bad());
                }
                let mut e: Vec<_> = (1..k - 1).map(|i| (i - 1, i)).collect();
                e.push((2, k - 1));
                e
            }
            GraphFamily::AffineD => {
                if n < 5 {
                    return Err(bad());
                }
                let last = n - 4;
                let mut e: Vec<_> = (2..=last).map(|i| (i - 1, i)).collect();
                e.push((0, 1));
                e.push((1, n - 3));
                e.push((last, n - 2));
                e.push((last, n - 1));
                e
            }
            GraphFamily::AffineE6 => {
                if n != 7 {
                    return Err(bad());
                }
                vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
            }
        };
        Graph::new(n, edges)
    }
}

/// Lagrangian of the graph state: `g_v = e_v + Σ_{u ~ v} f_u`.
///
/// Vertices are the qudits in global order, so a party may hold several.
pub fn graph_lagrangian(g: &Graph, structure: &PartyStructure) -> Result<Subspace> {
    if 2 * g.num_vertices() != structure.ambient_dim() {
        return Err(Error::Precondition(format!(
            "graph has {} vertices but the parties hold {} qudits",
            g.num_vertices(),
            structure.ambient_dim() / 2
        )));
    }
    let n = g.num_vertices();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|p| {
            let mut v = vec![0u32; 2 * n];
            v[2 * p] = 1;
            for q in g.neighbors(p) {
                v[2 * q + 1] = 1;
            }
            v
        })
        .collect();
    Subspace::span(2 * n, &rows, structure.field())
}

/// Graph lagrangian together with its one-qudit-per-vertex structure.
pub fn graph_state(g: &Graph, field: FieldPrime) -> Result<(Subspace, PartyStructure)> {
    let s = PartyStructure::uniform(g.num_vertices(), 1, field)?;
    Ok((graph_lagrangian(g, &s)?, s))
}

/// Seed-deterministic lagrangian.
///
/// Starts from a weighted graph lagrangian on all qudits (random symmetric
/// weights, each edge present with probability 1/2), then applies random
/// transvections `x ↦ x + c ω(x, w) w` with `w` inside a single party block
/// and random qudit swaps within parties.
pub fn random_lagrangian(structure: &PartyStructure, seed: u64) -> Subspace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = structure.field();
    let p = f.p();
    let n = structure.ambient_dim();
    let q = n / 2;
    let mut weights = vec![vec![0u32; q]; q];
    for a in 0..q {
        for b in a + 1..q {
            if rng.gen_bool(0.5) {
                let w = rng.gen_range(1..p);
                weights[a][b] = w;
                weights[b][a] = w;
            }
        }
    }
    let mut basis: Vec<Vec<u32>> = (0..q)
        .map(|a| {
            let mut v = vec![0u32; n];
            v[2 * a] = 1;
            for b in 0..q {
                v[2 * b + 1] = weights[a][b];
            }
            v
        })
        .collect();
    for party in 0..structure.num_parties() {
        let block = structure.block(party);
        if block.is_empty() {
            continue;
        }
        let steps = 2 * block.len() + 2;
        for _ in 0..steps {
            if block.len() >= 4 && rng.gen_bool(0.25) {
                let width = block.len() / 2;
                let (i, j) = (rng.gen_range(0..width), rng.gen_range(0..width));
                let (ci, cj) = (block.start + 2 * i, block.start + 2 * j);
                for v in basis.iter_mut() {
                    v.swap(ci, cj);
                    v.swap(ci + 1, cj + 1);
                }
                continue;
            }
            let mut w = vec![0u32; n];
            for c in block.clone() {
                w[c] = rng.gen_range(0..p);
            }
            let c = rng.gen_range(1..p);
            for v in basis.iter_mut() {
                let t = f.mul(c, structure.omega_party(party, v, &w));
                if t != 0 {
                    crate::ffla::axpy(v, t, &w, f);
                }
            }
        }
    }
    Subspace::span(n, &basis, f).expect("basis rows have ambient length")
}

/// Seed-deterministic subspace of `l` of the given dimension.
pub fn random_subspace(l: &Subspace, dim: usize, seed: u64) -> Subspace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = l.field();
    let dim = dim.min(l.dim());
    loop {
        let rows: Vec<Vec<u32>> = (0..dim)
            .map(|_| {
                let coeffs: Vec<u32> = (0..l.dim()).map(|_| rng.gen_range(0..f.p())).collect();
                l.combine(&coeffs)
            })
            .collect();
        let s = Subspace::span(l.ambient_dim(), &rows, f).expect("rows have ambient length");
        if s.dim() == dim {
            return s;
        }
    }
}
