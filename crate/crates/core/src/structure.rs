//! Splitting off local and GHZ summands, sums of states, coarsening and discarding.

use crate::cohomology::{local_invariants, members, party_subsets};
use crate::error::{Error, Result};
use crate::ffla::{kernel, Matrix, Subspace};
use crate::symplectic::{PartySet, PartyStructure};

/// An orthogonal splitting `G = G′ ⊕ G″` with `L = L′ ⊕ L″`.
///
/// The remainder `L″` is also given in coordinates of `G″`, whose party blocks
/// are `G″ ∩ G_q` with symplectic bases found by Gram–Schmidt.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub g_prime: Subspace,
    pub g_doubleprime: Subspace,
    pub l_prime: Subspace,
    pub l_doubleprime: Subspace,
    pub remainder: Subspace,
    pub remainder_structure: PartyStructure,
    /// For each new coordinate, the vector of `G` it stands for.
    pub remainder_basis: Vec<Vec<u32>>,
}

/// Symplectic basis `(e_1, f_1, e_2, f_2, ...)` of a nondegenerate subspace.
///
/// The standard basis of a coordinate block is returned unchanged.
pub fn symplectic_basis(v: &Subspace, structure: &PartyStructure) -> Result<Vec<Vec<u32>>> {
    let f = structure.field();
    let mut pool: Vec<Vec<u32>> = v.basis_vectors().map(<[u32]>::to_vec).collect();
    // work from the sparse end so coordinate blocks keep their order
    pool.sort_by_key(|w| w.iter().position(|&x| x != 0));
    let mut out = Vec::with_capacity(pool.len());
    while let Some(e) = take_first(&mut pool) {
        let Some(k) = pool.iter().position(|w| structure.omega(&e, w).map_or(false, |x| x != 0)) else {
            return Err(Error::Precondition("form is degenerate on the subspace".into()));
        };
        let mut fv = pool.remove(k);
        let c = f.inv(structure.omega(&e, &fv)?);
        fv.iter_mut().for_each(|x| *x = f.mul(*x, c));
        for w in pool.iter_mut() {
            let a = structure.omega(w, &fv)?;
            let b = structure.omega(w, &e)?;
            crate::ffla::axpy(w, f.neg(a), &e, f);
            crate::ffla::axpy(w, b, &fv, f);
        }
        pool.retain(|w| w.iter().any(|&x| x != 0));
        out.push(e);
        out.push(fv);
    }
    Ok(out)
}

fn take_first(pool: &mut Vec<Vec<u32>>) -> Option<Vec<u32>> {
    if pool.is_empty() {
        None
    } else {
        Some(pool.remove(0))
    }
}

/// Coordinates of `x` in a symplectic basis `(e_i, f_i)`: `(ω(x, f_i), -ω(x, e_i))`.
fn symplectic_coords(x: &[u32], basis: &[Vec<u32>], structure: &PartyStructure) -> Result<Vec<u32>> {
    let f = structure.field();
    let mut out = Vec::with_capacity(basis.len());
    for pair in basis.chunks(2) {
        out.push(structure.omega(x, &pair[1])?);
        out.push(f.neg(structure.omega(x, &pair[0])?));
    }
    Ok(out)
}

/// Completes a splitting from its symplectic summand `G′ = ⊕_s (G′ ∩ G_s)`.
fn splitting_from(l: &Subspace, structure: &PartyStructure, g_prime: Subspace) -> Result<Splitting> {
    let g2 = structure.orthogonal_complement(&g_prime)?;
    if g_prime.dim() + g2.dim() != structure.ambient_dim() || !g_prime.intersect(&g2)?.is_zero() {
        return Err(Error::Precondition("summand is not symplectic".into()));
    }
    let l1 = l.intersect(&g_prime)?;
    let l2 = l.intersect(&g2)?;
    if l1.dim() + l2.dim() != l.dim() {
        return Err(Error::Precondition("L does not split along the summand".into()));
    }
    let mut qudits = Vec::with_capacity(structure.num_parties());
    let mut basis = Vec::new();
    for q in 0..structure.num_parties() {
        let block = g2.intersect(&structure.coordinate_subspace(1 << q))?;
        let b = symplectic_basis(&block, structure)?;
        qudits.push(b.len() / 2);
        basis.extend(b);
    }
    if basis.len() != g2.dim() {
        return Err(Error::Precondition("complement is not a sum of party blocks".into()));
    }
    let rs = PartyStructure::new(qudits, structure.field())?;
    let rows = l2
        .basis_vectors()
        .map(|x| symplectic_coords(x, &basis, structure))
        .collect::<Result<Vec<_>>>()?;
    let remainder = Subspace::span(rs.ambient_dim(), &rows, structure.field())?;
    Ok(Splitting {
        g_prime,
        g_doubleprime: g2,
        l_prime: l1,
        l_doubleprime: l2,
        remainder,
        remainder_structure: rs,
        remainder_basis: basis,
    })
}

fn check_isotropic(l: &Subspace, structure: &PartyStructure) -> Result<()> {
    if let Some((i, j)) = structure.isotropy_violation(l)? {
        return Err(Error::NotIsotropic(i, j));
    }
    Ok(())
}

fn check_lagrangian(l: &Subspace, structure: &PartyStructure) -> Result<()> {
    if !structure.is_lagrangian(l)? {
        return Err(Error::NotLagrangian);
    }
    Ok(())
}

/// Splits off `L ∩ G_p` together with a symplectic partner space inside `G_p`.
pub fn split_local(l: &Subspace, structure: &PartyStructure, p: usize) -> Result<Option<Splitting>> {
    check_isotropic(l, structure)?;
    if p >= structure.num_parties() {
        return Err(Error::Precondition(format!("no party {p}")));
    }
    let f = structure.field();
    let local = structure.restrict(l, 1 << p);
    if local.is_zero() {
        return Ok(None);
    }
    let mut targets: Vec<Vec<u32>> = local.basis_vectors().map(<[u32]>::to_vec).collect();
    let units: Vec<Vec<u32>> = structure
        .block(p)
        .map(|c| {
            let mut v = vec![0; structure.ambient_dim()];
            v[c] = 1;
            v
        })
        .collect();
    let mut partners: Vec<Vec<u32>> = Vec::new();
    for i in 0..targets.len() {
        let a = targets[i].clone();
        let w = units
            .iter()
            .find(|w| structure.omega(&a, w).map_or(false, |x| x != 0))
            .expect("ω_p is nondegenerate");
        let mut b = w.clone();
        let c = f.inv(structure.omega(&a, &b)?);
        b.iter_mut().for_each(|x| *x = f.mul(*x, c));
        for (aj, bj) in targets[..i].iter().zip(&partners) {
            let k = structure.omega(aj, &b)?;
            crate::ffla::axpy(&mut b, f.neg(k), bj, f);
        }
        for aj in targets[i + 1..].iter_mut() {
            let k = structure.omega(aj, &b)?;
            crate::ffla::axpy(aj, f.neg(k), &a, f);
        }
        partners.push(b);
    }
    let mut span = targets;
    span.extend(partners);
    let g_prime = Subspace::span(structure.ambient_dim(), &span, f)?;
    splitting_from(l, structure, g_prime).map(Some)
}

/// A compatible family `(f_s)` and a vector `h ∈ L ∩ G_{P′}` pairing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhzWitness {
    pub parties: PartySet,
    /// `f_s ∈ G_s` for each `s ∈ P′`, in increasing party order, as vectors of `G`.
    pub f: Vec<Vec<u32>>,
    pub h: Vec<u32>,
}

impl GhzWitness {
    pub fn validate(&self, l: &Subspace, structure: &PartyStructure) -> Result<()> {
        let ps = members(self.parties);
        let bad = |msg: &str| Err(Error::Precondition(format!("invalid GHZ witness: {msg}")));
        if ps.len() != self.f.len() || ps.len() < 2 {
            return bad("wrong number of vectors");
        }
        if !structure.restrict(l, self.parties).contains(&self.h) {
            return bad("h is not a section over the parties");
        }
        for (s, fs) in ps.iter().zip(&self.f) {
            if structure.support(fs) & !(1 << s) != 0 {
                return bad("f_s leaves its block");
            }
            if structure.omega(fs, &self.h)? != 1 {
                return bad("ω(f_s, h) ≠ 1");
            }
        }
        let f = structure.field();
        for w in self.f.windows(2) {
            let d: Vec<u32> = w[0].iter().zip(&w[1]).map(|(&a, &b)| f.sub(a, b)).collect();
            if !l.contains(&d) {
                return bad("f_s - f_t ∉ L");
            }
        }
        Ok(())
    }
}

/// Compatible families on `P′`: tuples `(f_s ∈ G_s)` with `f_s - f_t ∈ L`,
/// i.e. `ω_s(f_s, ℓ)` independent of `s` for every `ℓ ∈ L`.
fn compatible_families(l: &Subspace, structure: &PartyStructure, parties: &[usize]) -> Vec<Vec<Vec<u32>>> {
    let f = structure.field();
    let coords: Vec<Vec<usize>> = parties.iter().map(|&s| structure.block(s).collect()).collect();
    let width: usize = coords.iter().map(Vec::len).sum();
    let mut eqs: Vec<Vec<u32>> = Vec::new();
    for ell in l.basis_vectors() {
        // the functional f ↦ ω(f, ℓ) on each block
        let jl = structure.dual_vector(ell);
        let functional: Vec<Vec<u32>> = coords.iter().map(|cs| cs.iter().map(|&c| jl[c]).collect()).collect();
        for k in 1..parties.len() {
            let mut row = vec![0u32; width];
            let mut off = 0;
            for (i, fun) in functional.iter().enumerate() {
                for (t, &x) in fun.iter().enumerate() {
                    if i == 0 {
                        row[off + t] = x;
                    } else if i == k {
                        row[off + t] = f.neg(x);
                    }
                }
                off += fun.len();
            }
            eqs.push(row);
        }
    }
    let sol = if eqs.is_empty() {
        Subspace::full(width, f)
    } else {
        kernel(&Matrix::from_rows(&eqs, width, f).expect("rows have the block width"), f)
    };
    sol.basis_vectors()
        .map(|v| {
            let mut off = 0;
            coords
                .iter()
                .map(|cs| {
                    let mut w = vec![0u32; structure.ambient_dim()];
                    for &c in cs {
                        w[c] = v[off];
                        off += 1;
                    }
                    w
                })
                .collect()
        })
        .collect()
}

/// Vectors of `L ∩ G_{P′}` spanning a complement of the sections over proper subsets.
fn top_representatives(l: &Subspace, structure: &PartyStructure, parties: PartySet) -> Result<Vec<Vec<u32>>> {
    let top = structure.restrict(l, parties);
    let mut lower = Subspace::zero(structure.ambient_dim(), structure.field());
    for s in members(parties) {
        lower = lower.sum(&structure.restrict(l, parties & !(1 << s)))?;
    }
    top.complement_basis(&lower)
}

/// Witness for a GHZ summand over all parties.
pub fn find_ghz_witness(l: &Subspace, structure: &PartyStructure) -> Result<Option<GhzWitness>> {
    find_ghz_witness_on(l, structure, structure.all_parties())
}

/// Witness for a GHZ summand supported on the parties `P′`.
pub fn find_ghz_witness_on(l: &Subspace, structure: &PartyStructure, parties: PartySet) -> Result<Option<GhzWitness>> {
    check_lagrangian(l, structure)?;
    let ps = members(parties);
    if ps.len() < 2 || parties & !structure.all_parties() != 0 {
        return Err(Error::Precondition("a GHZ witness needs at least two existing parties".into()));
    }
    if let Some(p) = (0..structure.num_parties()).find(|&p| !structure.restrict(l, 1 << p).is_zero()) {
        return Err(Error::Precondition(format!("L has a local summand at party {p}; split it first")));
    }
    let f = structure.field();
    let families = compatible_families(l, structure, &ps);
    for h in top_representatives(l, structure, parties)? {
        for fam in &families {
            let w = structure.omega(&fam[0], &h)?;
            if w == 0 {
                continue;
            }
            let c = f.inv(w);
            let scaled: Vec<Vec<u32>> = fam
                .iter()
                .map(|v| v.iter().map(|&x| f.mul(x, c)).collect())
                .collect();
            let witness = GhzWitness {
                parties,
                f: scaled,
                h,
            };
            witness.validate(l, structure)?;
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Splits off the GHZ lagrangian spanned by `{f_s - f_t} ∪ {h}`.
pub fn split_ghz(l: &Subspace, structure: &PartyStructure, w: &GhzWitness) -> Result<Splitting> {
    w.validate(l, structure)?;
    let f = structure.field();
    let ps = members(w.parties);
    let mut planes = Vec::new();
    for (s, fs) in ps.iter().zip(&w.f) {
        planes.push(fs.clone());
        planes.push(structure.component(&w.h, *s));
    }
    let g_prime = Subspace::span(structure.ambient_dim(), &planes, f)?;
    let split = splitting_from(l, structure, g_prime)?;
    let mut gens: Vec<Vec<u32>> = w
        .f
        .windows(2)
        .map(|p| p[0].iter().zip(&p[1]).map(|(&a, &b)| f.sub(a, b)).collect())
        .collect();
    gens.push(w.h.clone());
    let expected = Subspace::span(structure.ambient_dim(), &gens, f)?;
    if expected != split.l_prime || expected.dim() != ps.len() {
        return Err(Error::Precondition("split summand is not a GHZ lagrangian".into()));
    }
    Ok(split)
}

/// One step of a decomposition transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitStep {
    /// A local summand of the given dimension at one party.
    Local { party: usize, dim: usize },
    /// A GHZ lagrangian over the given parties, with the witness that split
    /// it off, in the coordinates of the state at that step.
    Ghz { parties: PartySet, witness: GhzWitness },
}

/// Result of repeatedly splitting summands off a lagrangian.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub steps: Vec<SplitStep>,
    pub remainder: Subspace,
    pub remainder_structure: PartyStructure,
}

impl Decomposition {
    pub fn ghz_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, SplitStep::Ghz { .. })).count()
    }

    /// True when nothing is left over.
    pub fn is_complete(&self) -> bool {
        self.remainder.is_zero()
    }
}

fn exhaust_local(state: &mut (Subspace, PartyStructure), steps: &mut Vec<SplitStep>) -> Result<()> {
    loop {
        let (l, s) = &*state;
        let mut found = None;
        for p in 0..s.num_parties() {
            if let Some(sp) = split_local(l, s, p)? {
                found = Some((p, sp));
                break;
            }
        }
        let Some((party, sp)) = found else {
            return Ok(());
        };
        steps.push(SplitStep::Local {
            party,
            dim: sp.l_prime.dim(),
        });
        *state = (sp.remainder, sp.remainder_structure);
    }
}

/// Splits off local summands, then all-party GHZ summands until none remain.
pub fn ghz_extraction(l: &Subspace, structure: &PartyStructure) -> Result<Decomposition> {
    check_lagrangian(l, structure)?;
    let mut state = (l.clone(), structure.clone());
    let mut steps = Vec::new();
    loop {
        exhaust_local(&mut state, &mut steps)?;
        let (l, s) = &state;
        if s.num_parties() < 2 {
            break;
        }
        let Some(w) = find_ghz_witness(l, s)? else {
            break;
        };
        let sp = split_ghz(l, s, &w)?;
        steps.push(SplitStep::Ghz {
            parties: w.parties,
            witness: w,
        });
        state = (sp.remainder, sp.remainder_structure);
    }
    Ok(Decomposition {
        steps,
        remainder: state.0,
        remainder_structure: state.1,
    })
}

/// Number of all-party GHZ lagrangians that split off `L`.
pub fn ghz_count(l: &Subspace, structure: &PartyStructure) -> Result<usize> {
    Ok(ghz_extraction(l, structure)?.ghz_count())
}

/// `(L ∩ G_{P′}) + Σ_{P′ ⊄ Q} (L ∩ G_Q) = L`.
pub fn ghz_reduction_applies(l: &Subspace, structure: &PartyStructure, parties: PartySet) -> Result<bool> {
    let mut acc = structure.restrict(l, parties);
    for p in members(parties) {
        // the maximal Q missing p
        acc = acc.sum(&structure.restrict(l, structure.all_parties() & !(1 << p)))?;
    }
    Ok(acc == *l)
}

fn ghz_split_on(
    l: &Subspace,
    structure: &PartyStructure,
    parties: PartySet,
) -> Result<Option<(Splitting, GhzWitness)>> {
    let sub = structure.restrict(l, parties);
    let sub_structure_parties = members(parties).len();
    if sub.is_zero() || !ghz_reduction_applies(l, structure, parties)? {
        return Ok(None);
    }
    let (sub_l, sub_s) = discard(&sub, structure, structure.all_parties() & !parties)?;
    debug_assert_eq!(sub_s.num_parties(), sub_structure_parties);
    if local_invariants(&sub_l, &sub_s, 1)?[2] == 0 {
        return Ok(None);
    }
    match find_ghz_witness_on(l, structure, parties)? {
        Some(w) => Ok(Some((split_ghz(l, structure, &w)?, w))),
        None => Ok(None),
    }
}

/// Decides decomposability of a three-party lagrangian.
pub fn is_decomposable_3party(l: &Subspace, structure: &PartyStructure) -> Result<bool> {
    if structure.num_parties() != 3 {
        return Err(Error::Precondition(format!(
            "expected three parties, found {}",
            structure.num_parties()
        )));
    }
    check_lagrangian(l, structure)?;
    if l.is_zero() {
        return Ok(true);
    }
    for p in 0..3 {
        if let Some(sp) = split_local(l, structure, p)? {
            if !sp.l_doubleprime.is_zero() {
                return Ok(true);
            }
        }
    }
    for pair in party_subsets(3, 2) {
        if ghz_split_on(l, structure, pair)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Best-effort decomposition by local and GHZ splits over every subset of at
/// least two parties. A nonzero remainder does not prove indecomposability.
pub fn try_decompose(l: &Subspace, structure: &PartyStructure) -> Result<Decomposition> {
    check_lagrangian(l, structure)?;
    let mut state = (l.clone(), structure.clone());
    let mut steps = Vec::new();
    'outer: loop {
        exhaust_local(&mut state, &mut steps)?;
        let (l, s) = &state;
        if l.is_zero() {
            break;
        }
        for size in 2..=s.num_parties() {
            for parties in party_subsets(s.num_parties(), size) {
                if let Some((sp, witness)) = ghz_split_on(l, s, parties)? {
                    // a GHZ summand equal to the whole state is no decomposition
                    if sp.l_doubleprime.is_zero() && steps.is_empty() {
                        continue;
                    }
                    steps.push(SplitStep::Ghz { parties, witness });
                    state = (sp.remainder, sp.remainder_structure);
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(Decomposition {
        steps,
        remainder: state.0,
        remainder_structure: state.1,
    })
}

fn check_field(a: &PartyStructure, b: &PartyStructure) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().p(), b.field().p()));
    }
    Ok(())
}

/// `L + M` over the same parties, party `q` owning `G_q ⊕ H_q` in that order.
pub fn internal_sum(
    l: &Subspace,
    m: &Subspace,
    structure_l: &PartyStructure,
    structure_m: &PartyStructure,
) -> Result<(Subspace, PartyStructure)> {
    check_field(structure_l, structure_m)?;
    if structure_l.num_parties() != structure_m.num_parties() {
        return Err(Error::DimensionMismatch {
            expected: structure_l.num_parties(),
            found: structure_m.num_parties(),
        });
    }
    let qudits: Vec<usize> = structure_l
        .qudits()
        .iter()
        .zip(structure_m.qudits())
        .map(|(a, b)| a + b)
        .collect();
    let s = PartyStructure::new(qudits, structure_l.field())?;
    let mut map_l = vec![0; structure_l.ambient_dim()];
    let mut map_m = vec![0; structure_m.ambient_dim()];
    for q in 0..s.num_parties() {
        let start = s.block(q).start;
        let gl = structure_l.block(q);
        for (i, c) in gl.clone().enumerate() {
            map_l[c] = start + i;
        }
        for (i, c) in structure_m.block(q).enumerate() {
            map_m[c] = start + gl.len() + i;
        }
    }
    let sum = l.remap(&map_l, s.ambient_dim()).sum(&m.remap(&map_m, s.ambient_dim()))?;
    Ok((sum, s))
}

/// `L ⊕ M` over the concatenated party sets.
pub fn external_sum(
    l: &Subspace,
    m: &Subspace,
    structure_l: &PartyStructure,
    structure_m: &PartyStructure,
) -> Result<(Subspace, PartyStructure)> {
    check_field(structure_l, structure_m)?;
    let mut qudits = structure_l.qudits().to_vec();
    qudits.extend_from_slice(structure_m.qudits());
    let s = PartyStructure::new(qudits, structure_l.field())?;
    let n = structure_l.ambient_dim();
    let map_l: Vec<usize> = (0..n).collect();
    let map_m: Vec<usize> = (0..structure_m.ambient_dim()).map(|c| n + c).collect();
    let sum = l.remap(&map_l, s.ambient_dim()).sum(&m.remap(&map_m, s.ambient_dim()))?;
    Ok((sum, s))
}

/// Regroups the parties along `phi: P -> Q`, `Q = 0..target_parties`.
pub fn coarsen(
    l: &Subspace,
    structure: &PartyStructure,
    phi: &[usize],
    target_parties: usize,
) -> Result<(Subspace, PartyStructure)> {
    if phi.len() != structure.num_parties() {
        return Err(Error::DimensionMismatch {
            expected: structure.num_parties(),
            found: phi.len(),
        });
    }
    if let Some(&q) = phi.iter().find(|&&q| q >= target_parties) {
        return Err(Error::Precondition(format!("party {q} is outside the target range")));
    }
    let qudits: Vec<usize> = (0..target_parties)
        .map(|q| (0..phi.len()).filter(|&p| phi[p] == q).map(|p| structure.qudits()[p]).sum())
        .collect();
    let s = PartyStructure::new(qudits, structure.field())?;
    let mut map = vec![0; structure.ambient_dim()];
    let mut next: Vec<usize> = (0..target_parties).map(|q| s.block(q).start).collect();
    for (p, &q) in phi.iter().enumerate() {
        for c in structure.block(p) {
            map[c] = next[q];
            next[q] += 1;
        }
    }
    Ok((l.remap(&map, s.ambient_dim()), s))
}

/// Discards the parties in `p_prime`: `L ∩ G_{P∖P′}` on the remaining blocks.
pub fn discard(l: &Subspace, structure: &PartyStructure, p_prime: PartySet) -> Result<(Subspace, PartyStructure)> {
    if p_prime & !structure.all_parties() != 0 {
        return Err(Error::Precondition("discarded parties must exist".into()));
    }
    let keep = structure.all_parties() & !p_prime;
    let kept = members(keep);
    let s = PartyStructure::new(kept.iter().map(|&p| structure.qudits()[p]).collect(), structure.field())?;
    let sec = structure.restrict(l, keep);
    Ok((sec.project(&structure.coords(keep)), s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffla::FieldPrime;
    use crate::symplectic::{graph_state, random_lagrangian, Graph, GraphFamily};

    fn named(f: GraphFamily, n: usize) -> (Subspace, PartyStructure) {
        graph_state(&Graph::family(f, n).unwrap(), FieldPrime::TWO).unwrap()
    }

    fn check_splitting(sp: &Splitting, l: &Subspace, s: &PartyStructure) {
        assert_eq!(sp.g_prime.dim() + sp.g_doubleprime.dim(), s.ambient_dim());
        assert!(sp.g_prime.intersect(&sp.g_doubleprime).unwrap().is_zero());
        assert_eq!(sp.l_prime.dim() + sp.l_doubleprime.dim(), l.dim());
        assert!(sp.remainder_structure.is_lagrangian(&sp.remainder).unwrap());
    }

    #[test]
    fn product_state_splits_locally() {
        let (l, s) = graph_state(&Graph::empty(3), FieldPrime::TWO).unwrap();
        for p in 0..3 {
            let sp = split_local(&l, &s, p).unwrap().unwrap();
            check_splitting(&sp, &l, &s);
            let mut e = vec![0; 6];
            e[2 * p] = 1;
            assert_eq!(sp.l_prime, Subspace::span(6, &[e], FieldPrime::TWO).unwrap());
            assert_eq!(sp.remainder_structure.qudits()[p], 0);
        }
    }

    #[test]
    fn ghz_has_no_local_split() {
        let (l, s) = named(GraphFamily::Star, 4);
        for p in 0..4 {
            assert!(split_local(&l, &s, p).unwrap().is_none());
        }
    }

    #[test]
    fn local_split_with_several_qudits() {
        let f = FieldPrime::new(3).unwrap();
        for seed in 0..30 {
            let s = PartyStructure::new(vec![3, 2, 1], f).unwrap();
            let l = random_lagrangian(&s, seed);
            for p in 0..3 {
                if let Some(sp) = split_local(&l, &s, p).unwrap() {
                    check_splitting(&sp, &l, &s);
                    assert_eq!(sp.g_prime.dim(), 2 * sp.l_prime.dim());
                }
            }
        }
    }

    #[test]
    fn ghz_witness_and_split() {
        for n in 3..=7 {
            let (l, s) = named(GraphFamily::Star, n);
            let w = find_ghz_witness(&l, &s).unwrap().unwrap();
            let sp = split_ghz(&l, &s, &w).unwrap();
            assert!(sp.l_doubleprime.is_zero());
            assert_eq!(sp.remainder_structure.ambient_dim(), 0);
        }
        let (l, s) = named(GraphFamily::Path, 4);
        assert!(find_ghz_witness(&l, &s).unwrap().is_none());
    }

    #[test]
    fn counts() {
        let (l, s) = named(GraphFamily::Star, 7);
        assert_eq!(ghz_count(&l, &s).unwrap(), 1);
        let (l, s) = named(GraphFamily::Path, 2);
        assert_eq!(ghz_count(&l, &s).unwrap(), 1);
        let (g3, s3) = named(GraphFamily::Star, 3);
        let (prod, ps) = external_sum(&g3, &g3, &s3, &s3).unwrap();
        assert_eq!(ghz_count(&prod, &ps).unwrap(), 0);
        let (g4, s4) = named(GraphFamily::Star, 4);
        let (dbl, ds) = internal_sum(&g4, &g4, &s4, &s4).unwrap();
        assert!(ds.is_lagrangian(&dbl).unwrap());
        assert_eq!(ghz_count(&dbl, &ds).unwrap(), 2);
    }

    #[test]
    fn three_party_decomposability() {
        let (l, s) = named(GraphFamily::Star, 3);
        assert!(!is_decomposable_3party(&l, &s).unwrap());
        let (l, s) = graph_state(&Graph::empty(3), FieldPrime::TWO).unwrap();
        assert!(is_decomposable_3party(&l, &s).unwrap());
        // an EPR pair next to a product qubit
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let (l, s) = graph_state(&g, FieldPrime::TWO).unwrap();
        assert!(is_decomposable_3party(&l, &s).unwrap());
    }

    #[test]
    fn sums_and_regroupings() {
        let (a2, s2) = named(GraphFamily::Path, 2);
        let (l, s) = external_sum(&a2, &a2, &s2, &s2).unwrap();
        assert!(s.is_lagrangian(&l).unwrap());
        assert_eq!(s.num_parties(), 4);
        let (c, cs) = coarsen(&l, &s, &[0, 0, 1, 1], 2).unwrap();
        assert_eq!(cs.qudits(), &[2, 2]);
        assert_eq!(c.dim(), 4);
        let (d, ds) = discard(&l, &s, 0b0011).unwrap();
        assert_eq!(ds.num_parties(), 2);
        assert_eq!(d, a2);
        let (e, es) = discard(&l, &s, 0b1111).unwrap();
        assert_eq!((e.ambient_dim(), es.num_parties()), (0, 0));
        let (id, ids) = coarsen(&l, &s, &[0, 1, 2, 3], 4).unwrap();
        assert_eq!((id, ids), (l.clone(), s.clone()));
        let (_, gap) = coarsen(&l, &s, &[0, 0, 2, 2], 4).unwrap();
        assert_eq!(gap.qudits(), &[2, 0, 2, 0]);
    }

    #[test]
    fn ghz_leaf_discard() {
        let (l, s) = named(GraphFamily::Star, 4);
        let (d, ds) = discard(&l, &s, 0b1000).unwrap();
        assert_eq!(ds.num_parties(), 3);
        // generators avoiding the leaf: g_1 and g_2 (the leaves' own generators)
        assert_eq!(d.dim(), 2);
    }
}
