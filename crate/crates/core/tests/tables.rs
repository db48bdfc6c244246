use stabhom_core::symplectic::graph_state;
use stabhom_core::{invariant_table, local_invariants, FieldPrime, Graph, GraphFamily};

fn table(family: GraphFamily, n: usize) -> Vec<Vec<usize>> {
    let (l, s) = graph_state(&Graph::family(family, n).unwrap(), FieldPrime::TWO).unwrap();
    invariant_table(&l, &s).unwrap().rows().to_vec()
}

fn check_table_one(family: GraphFamily, n: usize, expected: &[&[usize]]) {
    let rows = table(family, n);
    assert_eq!(rows.len(), n + 1);
    assert!(rows[0].iter().all(|&x| x == 0));
    for (k, want) in expected.iter().enumerate() {
        assert_eq!(&rows[k + 1], want, "{} {} row {}", family.name(), n, k + 1);
    }
    let mut top = vec![0; n + 1];
    top[n] = 1;
    assert_eq!(rows[n], top);
}

#[test]
fn four_or_fewer_parties() {
    check_table_one(GraphFamily::Path, 2, &[&[0, 0, 2]]);
    check_table_one(GraphFamily::Path, 3, &[&[0, 0, 1, 1], &[0, 0, 0, 3]]);
    check_table_one(GraphFamily::Star, 4, &[&[0, 0, 1, 0, 1], &[0, 0, 0, 1, 3], &[0, 0, 0, 0, 4]]);
    check_table_one(GraphFamily::Cycle, 4, &[&[0, 0, 0, 2, 0], &[0, 0, 0, 1, 3], &[0, 0, 0, 0, 4]]);
}

#[test]
fn five_parties() {
    let rest: [&[usize]; 2] = [&[0, 0, 0, 0, 1, 6], &[0, 0, 0, 0, 0, 5]];
    let cases: [(GraphFamily, [&[usize]; 2]); 4] = [
        (GraphFamily::Star, [&[0, 0, 1, 0, 0, 1], &[0, 0, 0, 1, 0, 4]]),
        (GraphFamily::D, [&[0, 0, 0, 1, 1, 0], &[0, 0, 0, 0, 3, 2]]),
        (GraphFamily::Path, [&[0, 0, 0, 1, 1, 0], &[0, 0, 0, 0, 4, 1]]),
        (GraphFamily::Cycle, [&[0, 0, 0, 1, 1, 0], &[0, 0, 0, 0, 5, 0]]),
    ];
    for (fam, head) in cases {
        let rows: Vec<&[usize]> = head.iter().chain(rest.iter()).copied().collect();
        check_table_one(fam, 5, &rows);
    }
}

fn first_order(family: GraphFamily, n: usize) -> Vec<usize> {
    let (l, s) = graph_state(&Graph::family(family, n).unwrap(), FieldPrime::TWO).unwrap();
    local_invariants(&l, &s, 1).unwrap()
}

fn sparse(n: usize, nonzero: &[(usize, usize)]) -> Vec<usize> {
    let mut v = vec![0; n + 1];
    for &(j, h) in nonzero {
        v[j] = h;
    }
    v
}

#[test]
fn six_and_seven_parties() {
    let cases: &[(GraphFamily, usize, &[(usize, usize)])] = &[
        (GraphFamily::Star, 6, &[(2, 1), (6, 1)]),
        (GraphFamily::AffineD, 6, &[(4, 2)]),
        (GraphFamily::D, 6, &[(3, 1), (5, 1)]),
        (GraphFamily::E6, 6, &[(4, 2)]),
        (GraphFamily::Path, 6, &[(4, 2)]),
        (GraphFamily::Cycle, 6, &[(4, 4)]),
        (GraphFamily::Star, 7, &[(2, 1), (7, 1)]),
        (GraphFamily::AffineD, 7, &[(3, 1), (6, 1)]),
        (GraphFamily::D, 7, &[(4, 1), (5, 1)]),
        (GraphFamily::E7, 7, &[(4, 1), (5, 1)]),
        (GraphFamily::AffineE6, 7, &[(4, 1), (5, 1)]),
        (GraphFamily::Path, 7, &[(4, 1), (5, 1)]),
        (GraphFamily::Cycle, 7, &[(4, 1), (5, 1)]),
    ];
    for &(fam, n, nz) in cases {
        assert_eq!(first_order(fam, n), sparse(n, nz), "{} {}", fam.name(), n);
    }
}
