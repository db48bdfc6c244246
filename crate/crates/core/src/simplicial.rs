//! Simplicial complexes on a party set, relative cohomology, and the
//! combinatorial oracle for codimension-one quotients.

use std::collections::BTreeSet;

use crate::cohomology::{members, party_subsets};
use crate::error::{Error, Result};
use crate::ffla::{FieldPrime, Matrix, Subspace};
use crate::symplectic::{PartySet, PartyStructure, MAX_PARTIES};

/// A downward closed family of nonempty subsets of `0..num_vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    num_vertices: usize,
    faces: BTreeSet<PartySet>,
}

impl Polyhedron {
    /// Downward closure of the given faces.
    pub fn from_faces(num_vertices: usize, faces: impl IntoIterator<Item = PartySet>) -> Result<Self> {
        if num_vertices > MAX_PARTIES {
            return Err(Error::Precondition(format!("at most {MAX_PARTIES} vertices")));
        }
        let full = full_mask(num_vertices);
        let mut closed = BTreeSet::new();
        for f in faces {
            if f & !full != 0 {
                return Err(Error::Precondition(format!("face {f:#b} uses vertices outside 0..{num_vertices}")));
            }
            if f == 0 || closed.contains(&f) {
                continue;
            }
            // all nonempty submasks
            let mut sub = f;
            while sub != 0 {
                closed.insert(sub);
                sub = (sub - 1) & f;
            }
        }
        Ok(Polyhedron {
            num_vertices,
            faces: closed,
        })
    }

    pub fn empty(num_vertices: usize) -> Self {
        Polyhedron {
            num_vertices,
            faces: BTreeSet::new(),
        }
    }

    /// The full simplex `Δ_P`.
    pub fn simplex(num_vertices: usize) -> Self {
        Polyhedron::from_faces(num_vertices, [full_mask(num_vertices)]).expect("full simplex")
    }

    /// `∂Δ_P`: every proper nonempty face.
    pub fn boundary(num_vertices: usize) -> Self {
        let full = full_mask(num_vertices);
        Polyhedron::from_faces(num_vertices, (0..num_vertices).map(|v| full & !(1 << v))).expect("boundary")
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn faces(&self) -> impl Iterator<Item = PartySet> + '_ {
        self.faces.iter().copied()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: PartySet) -> bool {
        self.faces.contains(&face)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.num_vertices > 0 && self.contains(full_mask(self.num_vertices))
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces
            .iter()
            .all(|&f| members(f).iter().all(|&v| f == 1 << v || self.contains(f & !(1 << v))))
    }

    /// Faces not contained in any larger face.
    pub fn maximal_faces(&self) -> Vec<PartySet> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| (0..self.num_vertices).all(|v| f >> v & 1 == 1 || !self.contains(f | 1 << v)))
            .collect()
    }

    pub fn union(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check_same(other)?;
        Ok(Polyhedron {
            num_vertices: self.num_vertices,
            faces: self.faces.union(&other.faces).copied().collect(),
        })
    }

    pub fn intersection(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check_same(other)?;
        Ok(Polyhedron {
            num_vertices: self.num_vertices,
            faces: self.faces.intersection(&other.faces).copied().collect(),
        })
    }

    pub fn is_subcomplex_of(&self, other: &Polyhedron) -> bool {
        self.num_vertices == other.num_vertices && self.faces.is_subset(&other.faces)
    }

    fn check_same(&self, other: &Polyhedron) -> Result<()> {
        if self.num_vertices != other.num_vertices {
            return Err(Error::DimensionMismatch {
                expected: self.num_vertices,
                found: other.num_vertices,
            });
        }
        Ok(())
    }

    /// `χ = Σ (-1)^{|S|-1}` over faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.count_ones() % 2 == 1 { 1 } else { -1 })
            .sum()
    }
}

fn full_mask(n: usize) -> PartySet {
    if n == 0 {
        0
    } else {
        PartySet::MAX >> (32 - n)
    }
}

/// The polyhedron of the closed set `Y = ∪ X_{S_i}`: faces are the nonempty
/// `S` disjoint from at least one `S_i`.
pub fn polyhedron_of_closed(num_vertices: usize, s_list: &[PartySet]) -> Result<Polyhedron> {
    let full = full_mask(num_vertices);
    let faces: Vec<PartySet> = s_list.iter().map(|&s| full & !s).collect();
    let p = Polyhedron::from_faces(num_vertices, faces)?;
    debug_assert!(p.is_downward_closed());
    Ok(p)
}

/// The dual `Γˇ = {∅ ≠ S | ∅ ≠ P∖S ∉ Γ}`.
pub fn dual(gamma: &Polyhedron) -> Result<Polyhedron> {
    let n = gamma.num_vertices;
    if gamma.is_simplex() {
        return Err(Error::Precondition("the full simplex has no dual".into()));
    }
    let full = full_mask(n);
    let faces = (1..full).filter(|&s| !gamma.contains(full & !s)).collect();
    Ok(Polyhedron {
        num_vertices: n,
        faces,
    })
}

/// `Γ ∗ Θ` on the disjoint union of the vertex sets, `Θ`'s vertices shifted up.
pub fn join(gamma: &Polyhedron, theta: &Polyhedron) -> Result<Polyhedron> {
    let n = gamma.num_vertices + theta.num_vertices;
    if n > MAX_PARTIES {
        return Err(Error::Precondition(format!("at most {MAX_PARTIES} vertices")));
    }
    let shift = gamma.num_vertices;
    let left: Vec<PartySet> = std::iter::once(0).chain(gamma.faces()).collect();
    let right: Vec<PartySet> = std::iter::once(0).chain(theta.faces().map(|t| t << shift)).collect();
    let faces = left
        .iter()
        .flat_map(|&s| right.iter().map(move |&t| s | t))
        .filter(|&f| f != 0)
        .collect();
    Ok(Polyhedron {
        num_vertices: n,
        faces,
    })
}

/// Faces `S + T` of `Δ_{P+P}` with `S ∩ T = ∅`; a sphere of dimension `|P| - 1`.
pub fn gamma_sphere(parties: usize) -> Result<Polyhedron> {
    let n = 2 * parties;
    if n > MAX_PARTIES {
        return Err(Error::Precondition(format!("at most {} parties", MAX_PARTIES / 2)));
    }
    let low = full_mask(parties);
    let faces = (1..=full_mask(n))
        .filter(|&f| (f & low) & (f >> parties) == 0)
        .collect();
    Ok(Polyhedron {
        num_vertices: n,
        faces,
    })
}

/// Relative simplicial cochains of `(Δ_P, Γ)` with coefficients `F^d`.
#[derive(Clone, Debug)]
pub struct RelativeCochainComplex {
    field: FieldPrime,
    coeff_dim: usize,
    /// faces of each degree outside `Γ`
    faces: Vec<Vec<PartySet>>,
    coboundaries: Vec<Matrix>,
}

impl RelativeCochainComplex {
    pub fn new(gamma: &Polyhedron, coeff_dim: usize, field: FieldPrime) -> Self {
        let n = gamma.num_vertices;
        let faces: Vec<Vec<PartySet>> = (0..n)
            .map(|i| party_subsets(n, i + 1).into_iter().filter(|&s| !gamma.contains(s)).collect())
            .collect();
        let d = coeff_dim;
        let mut coboundaries = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut m = Matrix::zeros(faces[i + 1].len() * d, faces[i].len() * d);
            for (r, &t) in faces[i + 1].iter().enumerate() {
                for (alpha, &v) in members(t).iter().enumerate() {
                    let s = t & !(1 << v);
                    // faces inside Γ carry no cochains
                    if let Ok(c) = faces[i].binary_search_by(|x| cmp_lex(*x, s)) {
                        for e in 0..d {
                            m.set(r * d + e, c * d + e, field.sign(alpha));
                        }
                    }
                }
            }
            coboundaries.push(m);
        }
        RelativeCochainComplex {
            field,
            coeff_dim,
            faces,
            coboundaries,
        }
    }

    pub fn coeff_dim(&self) -> usize {
        self.coeff_dim
    }

    pub fn cochain_dim(&self, i: usize) -> usize {
        self.faces.get(i).map_or(0, |f| f.len() * self.coeff_dim)
    }

    pub fn coboundary(&self, i: usize) -> Option<&Matrix> {
        self.coboundaries.get(i)
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let n = self.faces.len();
        let ranks: Vec<usize> = (0..n)
            .map(|i| self.coboundaries.get(i).map_or(0, |d| d.rank(self.field)))
            .collect();
        (0..n)
            .map(|i| self.cochain_dim(i) - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 })
            .collect()
    }
}

/// Lexicographic order of the sorted member lists of equal-size masks.
fn cmp_lex(a: PartySet, b: PartySet) -> std::cmp::Ordering {
    // for masks of equal popcount, lex order of members equals reversed bit order
    b.reverse_bits().cmp(&a.reverse_bits())
}

/// `dim H^i(Δ_P, Γ; F^d)` for `i = 0 .. |P|-1`.
pub fn relative_cohomology_dims(gamma: &Polyhedron, coeff_dim: usize, field: FieldPrime) -> Vec<usize> {
    RelativeCochainComplex::new(gamma, coeff_dim, field).cohomology_dims()
}

/// Unreduced `dim H^i(Γ; F)` for `i = 0 .. |P|-1`.
pub fn absolute_cohomology_dims(gamma: &Polyhedron, field: FieldPrime) -> Vec<usize> {
    let n = gamma.num_vertices;
    // cochains on Γ are cochains on Δ_P modulo those vanishing on Γ; use the complement
    let faces: Vec<Vec<PartySet>> = (0..n)
        .map(|i| party_subsets(n, i + 1).into_iter().filter(|&s| gamma.contains(s)).collect())
        .collect();
    let mut ranks = vec![0; n];
    for i in 0..n.saturating_sub(1) {
        let mut m = Matrix::zeros(faces[i + 1].len(), faces[i].len());
        for (r, &t) in faces[i + 1].iter().enumerate() {
            for (alpha, &v) in members(t).iter().enumerate() {
                let c = faces[i]
                    .binary_search_by(|x| cmp_lex(*x, t & !(1 << v)))
                    .expect("Γ is downward closed");
                m.set(r, c, field.sign(alpha));
            }
        }
        ranks[i] = m.rank(field);
    }
    (0..n)
        .map(|i| faces[i].len() - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 })
        .collect()
}

/// `Γ = {∅ ≠ S | L ∩ G_S ⊆ M}`.
pub fn section_polyhedron(l: &Subspace, m: &Subspace, structure: &PartyStructure) -> Result<Polyhedron> {
    let n = structure.num_parties();
    let full = structure.all_parties();
    let mut faces = Vec::new();
    for s in 1..=full {
        if structure.restrict(l, s).is_subspace_of(m) {
            faces.push(s);
        }
    }
    Polyhedron::from_faces(n, faces)
}

/// Result of the simplicial model of `FL / FM` for `M ⊂ L` of codimension one.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub gamma: Polyhedron,
    /// `dim H^i(Δ_P, Γ)`, `i = 0 .. |P|-1`.
    pub dims: Vec<usize>,
}

impl OracleReport {
    /// The same data placed at local degrees `j = i + 1`, with `j = 0` empty.
    pub fn local_degrees(&self) -> Vec<usize> {
        let mut v = vec![0];
        v.extend_from_slice(&self.dims);
        v
    }
}

pub fn codim1_oracle(l: &Subspace, m: &Subspace, structure: &PartyStructure) -> Result<OracleReport> {
    if !m.is_subspace_of(l) {
        return Err(Error::NotContained);
    }
    if l.dim() != m.dim() + 1 {
        return Err(Error::Precondition(format!(
            "expected codimension one, found {}",
            l.dim() - m.dim()
        )));
    }
    let gamma = section_polyhedron(l, m, structure)?;
    let dims = relative_cohomology_dims(&gamma, 1, structure.field());
    Ok(OracleReport { gamma, dims })
}

/// `Γ′ = {∅ ≠ S | M^⊥ ∩ G_S ⊆ L^⊥}`, which coincides with `Γˇ`.
pub fn perp_polyhedron(l: &Subspace, m: &Subspace, structure: &PartyStructure) -> Result<Polyhedron> {
    let lp = structure.orthogonal_complement(l)?;
    let mp = structure.orthogonal_complement(m)?;
    section_polyhedron(&mp, &lp, structure)
}
