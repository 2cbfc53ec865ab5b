//! Shared fixtures for the integration suites.

use exlab::complex::SimplicialComplex;
use exlab::scenarios::{
    complete_graph_complex, cycle_complex, full_simplex_complex, pentachoron, pentagon, pentagram,
};

/// A mixed bag of valid complexes exercising every construction path.
pub fn corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> = vec![
        ("pentagon".into(), pentagon()),
        ("pentagram".into(), pentagram()),
        ("pentachoron".into(), pentachoron()),
        (
            "path".into(),
            SimplicialComplex::from_maximal_sets(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]),
        ),
        (
            "two edges and an isolated vertex".into(),
            SimplicialComplex::from_maximal_sets(5, vec![vec![0, 1], vec![2, 3]]),
        ),
        (
            "mixed facet sizes".into(),
            SimplicialComplex::from_maximal_sets(
                5,
                vec![vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
            ),
        ),
        (
            "two-copy pentagon".into(),
            pentagon().or_product(&pentagon()),
        ),
    ];
    for n in 3..=8 {
        out.push((format!("cycle {n}"), cycle_complex(n).unwrap()));
    }
    for n in 1..=6 {
        out.push((format!("complete {n}"), complete_graph_complex(n).unwrap()));
        out.push((format!("simplex {n}"), full_simplex_complex(n).unwrap()));
    }
    out
}

/// Every valid complex on exactly `n` vertices: antichains of nonempty
/// subsets whose union covers the vertex set. Practical for n ≤ 4.
#[allow(dead_code)] // not every test target that includes this module needs it
pub fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    assert!((1..=4).contains(&n), "exhaustive enumeration is for n <= 4");
    let subsets: Vec<u32> = (1..(1u32 << n)).collect();
    let full = (1u32 << n) - 1;
    let mut out = Vec::new();
    for family in 1u64..(1 << subsets.len()) {
        let members: Vec<u32> = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| family >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let mut cover = 0u32;
        let antichain = members.iter().enumerate().all(|(i, &a)| {
            cover |= a;
            members[i + 1..].iter().all(|&b| a & b != a && a & b != b)
        });
        if !antichain || cover != full {
            continue;
        }
        let facets: Vec<Vec<usize>> = members
            .iter()
            .map(|&mask| (0..n).filter(|v| mask >> v & 1 == 1).collect())
            .collect();
        let complex = SimplicialComplex::from_maximal_sets(n, facets);
        debug_assert!(complex.is_valid());
        out.push(complex);
    }
    out
}
