//! The duality pairing `ω̂` between local cohomology of `FL` and `FM` for
//! `ω`-orthogonal `L`, `M`, evaluated through Čech cochains.
//!
//! Both classes are lifted to cochains `u`, `v` with values in the full
//! partition sheaf `FG`, which has no cohomology on `W` once `|P| >= 2`. The
//! pairing of `x = δu` in W-degree `a` with `y = δv` in W-degree `b`,
//! `a + b = |P|`, is
//!
//! ```text
//! Σ  sgn(s, t) (-1)^β ω_0(u_{0 s}, v_{0 t'})
//! ```
//!
//! over disjoint `S, T' ⊆ P∖{0}` with `|S| = a - 1`, `|T'| = b - 1`, where `r`
//! is the remaining party, `T = T' + {r}`, `β` is the position of `r` in the
//! sorted tuple `(0, t_1, ...)`, and `sgn(s, t)` is the sign of the shuffle
//! sorting the concatenation of `S` and `T`.

use std::collections::HashMap;

use crate::cohomology::{cech_complex, members, CechComplex};
use crate::error::{Error, Result};
use crate::ffla::{ColumnSolver, FieldPrime, Matrix, Subspace};
use crate::symplectic::{PartySet, PartyStructure};

/// Ordering of `P` and the base party used to evaluate the fundamental class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    ordering: Vec<usize>,
    base_party: usize,
}

impl Orientation {
    /// Ascending order with base party `0`.
    pub fn standard(num_parties: usize) -> Self {
        Orientation {
            ordering: (0..num_parties).collect(),
            base_party: 0,
        }
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn base_party(&self) -> usize {
        self.base_party
    }
}

/// A cochain with values in `G`, one ambient vector per subset.
pub type GCochain = HashMap<PartySet, Vec<u32>>;

/// Lifts cocycles of `FL`-complexes through the Čech complex of `FG`.
pub struct Lifter<'a> {
    structure: &'a PartyStructure,
    fg: CechComplex,
    solvers: Vec<ColumnSolver>,
}

impl<'a> Lifter<'a> {
    pub fn new(structure: &'a PartyStructure) -> Result<Self> {
        if structure.num_parties() < 2 {
            return Err(Error::Precondition("duality needs at least two parties".into()));
        }
        let f = structure.field();
        let full = Subspace::full(structure.ambient_dim(), f);
        let fg = cech_complex(&full, structure, 1)?;
        let solvers = (0..structure.num_parties() - 1)
            .map(|i| ColumnSolver::new(fg.coboundary(i).expect("coboundary in range"), f))
            .collect();
        Ok(Lifter { structure, fg, solvers })
    }

    /// Re-expresses a cochain of `complex` (degree `d`) in the coordinates of `FG`.
    fn to_fg(&self, complex: &CechComplex, d: usize, x: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.fg.cochain_dim(d)];
        for (s, v) in complex.block_vectors(d, x) {
            let b = self.fg.block(d, s).expect("same cover");
            for (i, c) in self.structure.coords(s).into_iter().enumerate() {
                out[b.offset + i] = v[c];
            }
        }
        out
    }

    fn from_fg(&self, d: usize, u: &[u32]) -> GCochain {
        self.fg
            .block_vectors(d, u)
            .into_iter()
            .filter(|(_, v)| v.iter().any(|&c| c != 0))
            .collect()
    }

    /// `u` with `δu = x`, for a cocycle `x` of W-degree `d >= 1`.
    pub fn lift(&self, complex: &CechComplex, d: usize, x: &[u32]) -> Result<GCochain> {
        let l = self.structure.num_parties();
        if d == 0 || d >= l {
            return Err(Error::DegreeOutOfRange { degree: d, parties: l });
        }
        if x.len() != complex.cochain_dim(d) {
            return Err(Error::DimensionMismatch {
                expected: complex.cochain_dim(d),
                found: x.len(),
            });
        }
        if let Some(dx) = complex.coboundary(d) {
            if dx.apply(x, self.structure.field())?.iter().any(|&c| c != 0) {
                return Err(Error::Precondition("only cocycles can be lifted".into()));
            }
        }
        let xg = self.to_fg(complex, d, x);
        let u = self.solvers[d - 1]
            .solve(&xg)?
            .expect("FG has no cohomology on W, so every cocycle is a coboundary");
        let check = self.fg.coboundary(d - 1).expect("in range").apply(&u, self.structure.field())?;
        assert_eq!(check, xg, "lift does not reproduce the cocycle");
        Ok(self.from_fg(d - 1, &u))
    }

    /// The block vectors of a cochain of `complex` in degree `d`, keyed by subset.
    pub fn cochain_vectors(&self, complex: &CechComplex, d: usize, x: &[u32]) -> GCochain {
        complex.block_vectors(d, x).into_iter().collect()
    }
}

/// Sign of the permutation sorting the concatenation of two sorted tuples.
pub fn shuffle_sign(s: &[usize], t: &[usize], field: FieldPrime) -> u32 {
    let inversions: usize = s.iter().map(|&a| t.iter().filter(|&&b| b < a).count()).sum();
    field.sign(inversions)
}

fn get<'c>(c: &'c GCochain, s: PartySet) -> Option<&'c Vec<u32>> {
    c.get(&s)
}

/// `ω̂` from lifts `u` (W-degree `a`, so `u` has degree `a - 1`) and `v` (W-degree `b`).
pub fn pair_lifts(u: &GCochain, a: usize, v: &GCochain, b: usize, structure: &PartyStructure) -> u32 {
    let l = structure.num_parties();
    let f = structure.field();
    let base = 0usize;
    let rest = structure.all_parties() & !(1 << base);
    let mut total = 0u32;
    let others = members(rest);
    for s in subsets_of(&others, a - 1) {
        let s_mask = mask(&s);
        let Some(us) = get(u, s_mask | 1 << base) else {
            continue;
        };
        let remaining: Vec<usize> = others.iter().copied().filter(|q| s_mask >> q & 1 == 0).collect();
        for t_prime in subsets_of(&remaining, b - 1) {
            let t_mask = mask(&t_prime);
            let Some(vt) = get(v, t_mask | 1 << base) else {
                continue;
            };
            let r = remaining
                .iter()
                .copied()
                .find(|q| t_mask >> q & 1 == 0)
                .expect("exactly one party left over");
            let t = members(t_mask | 1 << r);
            let beta = 1 + t.iter().position(|&q| q == r).expect("r in T");
            let sign = f.mul(shuffle_sign(&s, &t, f), f.sign(beta));
            let w = structure.omega_party(base, us, vt);
            total = f.add(total, f.mul(sign, w));
        }
    }
    debug_assert_eq!(a + b, l);
    total
}

/// The same value computed from `u` and the cocycle `y` itself.
pub fn pair_single_lift(u: &GCochain, a: usize, y: &GCochain, b: usize, structure: &PartyStructure) -> u32 {
    let f = structure.field();
    let base = 0usize;
    let others = members(structure.all_parties() & !(1 << base));
    let mut total = 0u32;
    for s in subsets_of(&others, a - 1) {
        let s_mask = mask(&s);
        let t: Vec<usize> = others.iter().copied().filter(|q| s_mask >> q & 1 == 0).collect();
        debug_assert_eq!(t.len(), b);
        let (Some(us), Some(yt)) = (get(u, s_mask | 1 << base), get(y, mask(&t) | 1 << base)) else {
            continue;
        };
        let w = structure.omega_party(base, us, yt);
        total = f.add(total, f.mul(shuffle_sign(&s, &t, f), w));
    }
    total
}

fn mask(v: &[usize]) -> PartySet {
    v.iter().fold(0, |acc, &p| acc | 1 << p)
}

fn subsets_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    crate::cohomology::k_subsets(items.len(), k)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| items[i]).collect())
        .collect()
}

/// Pairing of `x` (a cocycle of the `FL` complex in local degree `i`) with `y`
/// (a cocycle of the `FM` complex in local degree `j`), `i + j = |P| + 2`.
#[allow(clippy::too_many_arguments)]
pub fn pair_classes(
    lifter: &Lifter<'_>,
    fl: &CechComplex,
    x: &[u32],
    i: usize,
    fm: &CechComplex,
    y: &[u32],
    j: usize,
    orientation: &Orientation,
) -> Result<u32> {
    let l = lifter.structure.num_parties();
    check_degrees(i, j, l)?;
    if orientation.base_party() != 0 || orientation.ordering().len() != l {
        return Err(Error::Precondition("only the standard orientation is supported".into()));
    }
    let u = lifter.lift(fl, i - 1, x)?;
    let v = lifter.lift(fm, j - 1, y)?;
    Ok(pair_lifts(&u, i - 1, &v, j - 1, lifter.structure))
}

fn check_degrees(i: usize, j: usize, l: usize) -> Result<()> {
    if i + j != l + 2 {
        return Err(Error::Precondition(format!(
            "local degrees {i} and {j} do not add up to {}",
            l + 2
        )));
    }
    for d in [i, j] {
        if !(2..=l).contains(&d) {
            return Err(Error::DegreeOutOfRange { degree: d, parties: l });
        }
    }
    Ok(())
}

fn check_orthogonal(l: &Subspace, m: &Subspace, structure: &PartyStructure) -> Result<()> {
    for (a, u) in l.basis_vectors().enumerate() {
        for (b, v) in m.basis_vectors().enumerate() {
            if structure.omega(u, v)? != 0 {
                return Err(Error::NotIsotropic(a, b));
            }
        }
    }
    Ok(())
}

/// Gram matrix of `ω̂` between cohomology bases in local degrees `i` and `|P| + 2 - i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub left_degree: usize,
    pub right_degree: usize,
    pub entries: Matrix,
}

impl PairingMatrix {
    pub fn is_square(&self) -> bool {
        self.entries.rows() == self.entries.cols()
    }

    pub fn rank(&self, field: FieldPrime) -> usize {
        self.entries.rank(field)
    }

    pub fn is_perfect(&self, field: FieldPrime) -> bool {
        self.is_square() && self.rank(field) == self.entries.rows()
    }
}

/// Lifted cohomology bases of one sheaf, reusable across pairings.
struct LiftedBasis {
    lifts: Vec<GCochain>,
}

fn lifted_basis(lifter: &Lifter<'_>, complex: &CechComplex, w_degree: usize) -> Result<LiftedBasis> {
    let reps = complex.cohomology_representatives(w_degree)?;
    let lifts = reps
        .iter()
        .map(|x| lifter.lift(complex, w_degree, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftedBasis { lifts })
}

fn gram(
    left: &LiftedBasis,
    a: usize,
    right: &LiftedBasis,
    b: usize,
    structure: &PartyStructure,
) -> Matrix {
    Matrix::from_fn(left.lifts.len(), right.lifts.len(), |r, c| {
        pair_lifts(&left.lifts[r], a, &right.lifts[c], b, structure)
    })
}

pub fn pairing_matrix(
    l: &Subspace,
    m: &Subspace,
    structure: &PartyStructure,
    i: usize,
    orientation: &Orientation,
) -> Result<PairingMatrix> {
    let parties = structure.num_parties();
    if parties < 2 {
        return Err(Error::Precondition("duality needs at least two parties".into()));
    }
    let j = parties + 2 - i.min(parties + 2);
    check_degrees(i, j, parties)?;
    check_orthogonal(l, m, structure)?;
    if orientation.base_party() != 0 {
        return Err(Error::Precondition("only the standard orientation is supported".into()));
    }
    let lifter = Lifter::new(structure)?;
    let fl = cech_complex(l, structure, 1)?;
    let fm = cech_complex(m, structure, 1)?;
    let left = lifted_basis(&lifter, &fl, i - 1)?;
    let right = lifted_basis(&lifter, &fm, j - 1)?;
    Ok(PairingMatrix {
        left_degree: i,
        right_degree: j,
        entries: gram(&left, i - 1, &right, j - 1, structure),
    })
}

/// Per-degree outcome of the perfectness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub left_degree: usize,
    pub right_degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

impl DegreeReport {
    pub fn is_perfect(&self) -> bool {
        self.rows == self.cols && self.rank == self.rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub degrees: Vec<DegreeReport>,
    /// `h^j(L)` and `h^{|P|+2-j}(L^⊥)` for `j = 0..=|P|`.
    pub dims: Vec<(usize, usize)>,
}

impl PerfectnessReport {
    pub fn is_perfect(&self) -> bool {
        self.degrees.iter().all(DegreeReport::is_perfect) && self.dims.iter().all(|(a, b)| a == b)
    }
}

/// Pairs `FL` against `FL^⊥` in every local degree `2..=|P|`.
pub fn check_perfect(l: &Subspace, structure: &PartyStructure) -> Result<PerfectnessReport> {
    let parties = structure.num_parties();
    if parties < 2 {
        return Err(Error::Precondition("duality needs at least two parties".into()));
    }
    let f = structure.field();
    let lp = structure.orthogonal_complement(l)?;
    let lifter = Lifter::new(structure)?;
    let fl = cech_complex(l, structure, 1)?;
    let fm = if lp == *l { fl.clone() } else { cech_complex(&lp, structure, 1)? };
    let left: Vec<LiftedBasis> = (1..parties).map(|d| lifted_basis(&lifter, &fl, d)).collect::<Result<_>>()?;
    let right: Vec<LiftedBasis> = (1..parties).map(|d| lifted_basis(&lifter, &fm, d)).collect::<Result<_>>()?;
    let mut degrees = Vec::new();
    for i in 2..=parties {
        let j = parties + 2 - i;
        let (lb, rb) = (&left[i - 2], &right[j - 2]);
        let g = gram(lb, i - 1, rb, j - 1, structure);
        degrees.push(DegreeReport {
            left_degree: i,
            right_degree: j,
            rows: g.rows(),
            cols: g.cols(),
            rank: g.rank(f),
        });
    }
    let hl = local_row(&fl);
    let hm = local_row(&fm);
    let dims = (0..=parties)
        .map(|j| {
            let dual = (parties + 2).checked_sub(j).and_then(|k| hm.get(k)).copied().unwrap_or(0);
            (hl[j], dual)
        })
        .collect();
    Ok(PerfectnessReport { degrees, dims })
}

fn local_row(c: &CechComplex) -> Vec<usize> {
    let mut v = vec![0];
    v.extend(c.cohomology_dims());
    v
}

/// `ω̂` on the self-paired local degree `j* = (|P| + 2) / 2` of a char-2 lagrangian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleForm {
    pub degree: usize,
    pub gram: Matrix,
    pub rank: usize,
}

impl MiddleForm {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_alternating(&self) -> bool {
        let n = self.gram.rows();
        (0..n).all(|i| self.gram.get(i, i) == 0) && self.gram == self.gram.transpose()
    }

    pub fn is_symplectic(&self) -> bool {
        self.is_alternating() && self.rank == self.dim()
    }
}

pub fn middle_symplectic(l: &Subspace, structure: &PartyStructure) -> Result<MiddleForm> {
    let parties = structure.num_parties();
    let f = structure.field();
    if f.p() != 2 {
        return Err(Error::Precondition("the middle form needs characteristic two".into()));
    }
    if parties < 2 || parties % 2 == 1 {
        return Err(Error::Precondition(format!("the middle form needs an even number of parties, got {parties}")));
    }
    if !structure.is_lagrangian(l)? {
        return Err(Error::NotLagrangian);
    }
    let degree = (parties + 2) / 2;
    let lifter = Lifter::new(structure)?;
    let fl = cech_complex(l, structure, 1)?;
    let basis = lifted_basis(&lifter, &fl, degree - 1)?;
    let gram = gram(&basis, degree - 1, &basis, degree - 1, structure);
    let rank = gram.rank(f);
    Ok(MiddleForm { degree, gram, rank })
}

/// Local-degree `i` cohomology basis of `FL` with its lifts; used by tests
/// and tools that need to pair explicit classes.
pub fn classes_with_lifts(
    lifter: &Lifter<'_>,
    complex: &CechComplex,
    i: usize,
) -> Result<Vec<(Vec<u32>, GCochain)>> {
    let reps = complex.cohomology_representatives(i - 1)?;
    reps.into_iter()
        .map(|x| {
            let u = lifter.lift(complex, i - 1, &x)?;
            Ok((x, u))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{graph_state, Graph, GraphFamily};

    fn named(f: GraphFamily, n: usize) -> (Subspace, PartyStructure) {
        graph_state(&Graph::family(f, n).unwrap(), FieldPrime::TWO).unwrap()
    }

    #[test]
    fn shuffle_signs() {
        let f = FieldPrime::new(5).unwrap();
        assert_eq!(shuffle_sign(&[1, 2], &[3], f), 1);
        assert_eq!(shuffle_sign(&[3], &[1, 2], f), 1);
        assert_eq!(shuffle_sign(&[2], &[1, 3], f), 4);
        assert_eq!(shuffle_sign(&[], &[1, 3], f), 1);
    }

    #[test]
    fn epr_lift_and_pairing() {
        let (l, s) = named(GraphFamily::Path, 2);
        let lifter = Lifter::new(&s).unwrap();
        let fl = cech_complex(&l, &s, 1).unwrap();
        let zero = lifter.lift(&fl, 1, &[0, 0]).unwrap();
        assert!(zero.is_empty());
        let x = vec![1, 0];
        let u = lifter.lift(&fl, 1, &x).unwrap();
        // δu on {0,1} is u_1 - u_0; with the local supports this recovers x
        let xv = fl.block_vectors(1, &x)[0].1.clone();
        let mut diff = u.get(&0b10).cloned().unwrap_or(vec![0; 4]);
        let u0 = u.get(&0b01).cloned().unwrap_or(vec![0; 4]);
        for (d, a) in diff.iter_mut().zip(&u0) {
            *d = s.field().sub(*d, *a);
        }
        assert_eq!(diff, xv);
        let pm = pairing_matrix(&l, &l, &s, 2, &Orientation::standard(2)).unwrap();
        assert_eq!(pm.entries.rows(), 2);
        assert!(pm.is_perfect(s.field()));
    }

    #[test]
    fn ghz5_pairs_nontrivially() {
        let (l, s) = named(GraphFamily::Star, 5);
        let pm = pairing_matrix(&l, &l, &s, 2, &Orientation::standard(5)).unwrap();
        assert_eq!((pm.entries.rows(), pm.entries.cols()), (1, 1));
        assert_eq!(pm.entries.get(0, 0), 1);
    }

    #[test]
    fn degree_errors() {
        let (l, s) = named(GraphFamily::Path, 3);
        assert!(pairing_matrix(&l, &l, &s, 1, &Orientation::standard(3)).is_err());
        assert!(pairing_matrix(&l, &l, &s, 4, &Orientation::standard(3)).is_err());
        let g = Subspace::full(s.ambient_dim(), s.field());
        assert!(matches!(
            pairing_matrix(&l, &g, &s, 2, &Orientation::standard(3)),
            Err(Error::NotIsotropic(..))
        ));
    }

    #[test]
    fn single_and_double_lift_agree() {
        let (l, s) = named(GraphFamily::Cycle, 5);
        let lifter = Lifter::new(&s).unwrap();
        let fl = cech_complex(&l, &s, 1).unwrap();
        for i in 2..=5 {
            let j = 7 - i;
            let xs = classes_with_lifts(&lifter, &fl, i).unwrap();
            let ys = classes_with_lifts(&lifter, &fl, j).unwrap();
            for (_, u) in &xs {
                for (y, v) in &ys {
                    let yv = lifter.cochain_vectors(&fl, j - 1, y);
                    assert_eq!(
                        pair_lifts(u, i - 1, v, j - 1, &s),
                        pair_single_lift(u, i - 1, &yv, j - 1, &s)
                    );
                }
            }
        }
    }

    #[test]
    fn middle_forms() {
        let (l, s) = named(GraphFamily::Cycle, 6);
        let m = middle_symplectic(&l, &s).unwrap();
        assert_eq!(m.degree, 4);
        assert_eq!(m.dim(), 4);
        assert!(m.is_symplectic());
        let (l, s) = named(GraphFamily::Star, 6);
        assert_eq!(middle_symplectic(&l, &s).unwrap().dim(), 0);
        let (l, s) = named(GraphFamily::Star, 5);
        assert!(middle_symplectic(&l, &s).is_err());
    }
}
