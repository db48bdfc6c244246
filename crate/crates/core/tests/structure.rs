use stabhom_core::cohomology::{binomial, invariant_table, local_invariants};
use stabhom_core::structure::{
    coarsen, discard, external_sum, ghz_count, ghz_extraction, internal_sum, is_decomposable_3party, try_decompose,
};
use stabhom_core::symplectic::{graph_state, random_lagrangian};
use stabhom_core::{FieldPrime, Graph, GraphFamily, PartyStructure, Subspace};

fn named(f: GraphFamily, n: usize) -> (Subspace, PartyStructure) {
    graph_state(&Graph::family(f, n).unwrap(), FieldPrime::TWO).unwrap()
}

fn named_instances() -> Vec<(GraphFamily, usize)> {
    use GraphFamily::*;
    vec![
        (Path, 3), (Star, 3), (Star, 4), (Cycle, 4), (Star, 5), (D, 5), (Path, 5), (Cycle, 5),
        (Star, 6), (AffineD, 6), (D, 6), (E6, 6), (Path, 6), (Cycle, 6),
        (Star, 7), (AffineD, 7), (D, 7), (E7, 7), (AffineE6, 7), (Path, 7), (Cycle, 7),
    ]
}

#[test]
fn ghz_count_matches_h2() {
    for (fam, n) in named_instances() {
        let (l, s) = named(fam, n);
        let h2 = local_invariants(&l, &s, 1).unwrap()[2];
        let d = ghz_extraction(&l, &s).unwrap();
        assert_eq!(d.ghz_count(), h2, "{} {n}", fam.name());
        let rest = local_invariants(&d.remainder, &d.remainder_structure, 1).unwrap();
        assert_eq!(rest[2], 0);
    }
}

#[test]
fn ghz_count_on_random_lagrangians() {
    for seed in 0..40u64 {
        let p = [2, 3, 5][(seed % 3) as usize];
        let parties = 2 + (seed % 4) as usize;
        let qudits = (0..parties).map(|q| 1 + ((seed >> q) & 1) as usize).collect();
        let s = PartyStructure::new(qudits, FieldPrime::new(p).unwrap()).unwrap();
        let l = random_lagrangian(&s, seed);
        let h = local_invariants(&l, &s, 1).unwrap();
        let want = if parties == 2 { h[2] / 2 } else { h[2] };
        assert_eq!(ghz_count(&l, &s).unwrap(), want, "seed {seed}");
    }
}

#[test]
fn ghz_plus_path_extracts_one() {
    let (g, gs) = named(GraphFamily::Star, 4);
    let (a, as_) = named(GraphFamily::Path, 4);
    let (l, s) = internal_sum(&g, &a, &gs, &as_).unwrap();
    let d = ghz_extraction(&l, &s).unwrap();
    assert_eq!(d.ghz_count(), 1);
    assert_eq!(
        invariant_table(&d.remainder, &d.remainder_structure).unwrap().first_order(),
        local_invariants(&a, &as_, 1).unwrap()
    );
}

fn kunneth(a: &[Vec<usize>], b: &[Vec<usize>], k: usize, j: usize) -> usize {
    let mut total = 0;
    for (k1, ra) in a.iter().enumerate() {
        for (j1, &x) in ra.iter().enumerate() {
            if k1 > k || j1 > j {
                continue;
            }
            let y = b.get(k - k1).and_then(|r| r.get(j - j1)).copied().unwrap_or(0);
            total += x * y;
        }
    }
    total
}

#[test]
fn kunneth_on_small_states() {
    let states = [
        named(GraphFamily::Path, 2),
        named(GraphFamily::Path, 3),
        named(GraphFamily::Star, 3),
        named(GraphFamily::Star, 4),
        named(GraphFamily::Cycle, 4),
    ];
    for (la, sa) in &states {
        for (lb, sb) in &states {
            let (l, s) = external_sum(la, lb, sa, sb).unwrap();
            let ta = invariant_table(la, sa).unwrap();
            let tb = invariant_table(lb, sb).unwrap();
            let t = invariant_table(&l, &s).unwrap();
            for k in 0..=l.dim() {
                for j in 0..=s.num_parties() {
                    assert_eq!(t.get(k, j), kunneth(ta.rows(), tb.rows(), k, j), "k={k} j={j}");
                }
            }
        }
    }
}

#[test]
fn epr_squared() {
    let (a, s) = named(GraphFamily::Path, 2);
    let (l, ps) = external_sum(&a, &a, &s, &s).unwrap();
    let t = invariant_table(&l, &ps).unwrap();
    assert!(t.first_order().iter().all(|&x| x == 0));
    assert_eq!(t.get(2, 4), 4);
    let empty = PartyStructure::new(vec![], FieldPrime::TWO).unwrap();
    let (u, us) = external_sum(&a, &Subspace::zero(0, FieldPrime::TWO), &s, &empty).unwrap();
    assert_eq!(invariant_table(&u, &us).unwrap(), invariant_table(&a, &s).unwrap());
}

#[test]
fn internal_sums_add() {
    for seed in 0..50u64 {
        let p = [2, 3][(seed % 2) as usize];
        let parties = 2 + (seed % 3) as usize;
        let s = PartyStructure::uniform(parties, 1, FieldPrime::new(p).unwrap()).unwrap();
        let l = random_lagrangian(&s, seed);
        let m = random_lagrangian(&s, seed + 500);
        let (sum, ss) = internal_sum(&l, &m, &s, &s).unwrap();
        let a = local_invariants(&l, &s, 1).unwrap();
        let b = local_invariants(&m, &s, 1).unwrap();
        let c = local_invariants(&sum, &ss, 1).unwrap();
        assert_eq!(c, a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>());
    }
}

#[test]
fn coarsening_the_six_cycle() {
    let (l, s) = named(GraphFamily::Cycle, 6);
    let mut hits = 0;
    // merge two disjoint pairs into parties 0 and 1, the rest become 2 and 3
    for a in 0..6usize {
        for b in a + 1..6 {
            for c in 0..6usize {
                for d in c + 1..6 {
                    let pair = [a, b, c, d];
                    if c <= a || pair.iter().collect::<std::collections::BTreeSet<_>>().len() < 4 {
                        continue;
                    }
                    let mut phi = vec![usize::MAX; 6];
                    phi[a] = 0;
                    phi[b] = 0;
                    phi[c] = 1;
                    phi[d] = 1;
                    let mut next = 2;
                    for v in phi.iter_mut().filter(|v| **v == usize::MAX) {
                        *v = next;
                        next += 1;
                    }
                    let (cl, cs) = coarsen(&l, &s, &phi, 4).unwrap();
                    if local_invariants(&cl, &cs, 1).unwrap()[3] == 4 {
                        hits += 1;
                    }
                }
            }
        }
    }
    assert!(hits > 0);
}

#[test]
fn one_party_coarsening_gives_exterior_powers() {
    let (l, s) = named(GraphFamily::D, 5);
    let (cl, cs) = coarsen(&l, &s, &[0; 5], 1).unwrap();
    let t = invariant_table(&cl, &cs).unwrap();
    for k in 1..=l.dim() {
        assert_eq!(t.row(k), vec![0, binomial(l.dim(), k)]);
    }
}

#[test]
fn discard_and_coarsen_commute() {
    for seed in 0..20u64 {
        let s = PartyStructure::uniform(5, 1, FieldPrime::new(3).unwrap()).unwrap();
        let l = random_lagrangian(&s, seed);
        // drop party 4, then merge 0 and 1; or merge first, then drop the image of 4
        let (d, ds) = discard(&l, &s, 1 << 4).unwrap();
        let (a, a_s) = coarsen(&d, &ds, &[0, 0, 1, 2], 3).unwrap();
        let (c, cs) = coarsen(&l, &s, &[0, 0, 1, 2, 3], 4).unwrap();
        let (b, bs) = discard(&c, &cs, 1 << 3).unwrap();
        assert_eq!((a, a_s), (b, bs));
    }
}

#[test]
fn three_party_states_without_invariants_decompose() {
    let mut seen = 0;
    for seed in 0..200u64 {
        let p = [2, 3][(seed % 2) as usize];
        let qudits = vec![1 + (seed % 2) as usize, 1, 1 + (seed / 2 % 2) as usize];
        let s = PartyStructure::new(qudits, FieldPrime::new(p).unwrap()).unwrap();
        let l = random_lagrangian(&s, seed);
        if local_invariants(&l, &s, 1).unwrap().iter().all(|&x| x == 0) {
            seen += 1;
            assert!(is_decomposable_3party(&l, &s).unwrap(), "seed {seed}");
        }
    }
    assert!(seen > 0);
}

#[test]
fn best_effort_decomposition() {
    let (a, s) = named(GraphFamily::Path, 2);
    let (l, ps) = external_sum(&a, &a, &s, &s).unwrap();
    let d = try_decompose(&l, &ps).unwrap();
    assert!(d.is_complete());
    assert_eq!(d.ghz_count(), 2);
    let (g, gs) = named(GraphFamily::Star, 4);
    assert!(!try_decompose(&g, &gs).unwrap().is_complete());
}
