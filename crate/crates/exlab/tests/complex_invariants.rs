//! Structural invariants of complexes and their operations, checked on a
//! corpus of named complexes and exhaustively on all small complexes.

mod common;

use common::{all_complexes, corpus};
use exlab::complex::SimplicialComplex;
use exlab::scenarios::{complete_graph_complex, pentagon};
use proptest::prelude::*;

#[test]
fn clique_complex_is_idempotent() {
    for (name, complex) in corpus() {
        let once = complex.clique_complex();
        let twice = once.clique_complex();
        assert_eq!(once, twice, "{name}: clique complex is not a fixed point");
    }
}

#[test]
fn clique_complex_contains_the_original() {
    for (name, complex) in corpus() {
        let promoted = complex.clique_complex();
        for facet in complex.facets() {
            if facet.len() < 2 {
                continue;
            }
            assert!(
                promoted.is_exclusive_set(facet).unwrap(),
                "{name}: facet {facet:?} lost under clique promotion"
            );
        }
    }
}

#[test]
fn clique_complex_preserves_the_skeleton() {
    for (name, complex) in corpus() {
        assert_eq!(
            complex.clique_complex().skeleton(),
            complex.skeleton(),
            "{name}: skeleton changed under clique promotion"
        );
    }
}

/// The joint skeleton must agree with the co-normal product of the factor
/// skeletons on every pair of joint vertices; checked for every ordered
/// pair of complexes on up to 4 vertices.
#[test]
fn or_product_skeleton_is_the_conormal_product() {
    let families: Vec<Vec<SimplicialComplex>> = (1..=4).map(all_complexes).collect();
    let all: Vec<&SimplicialComplex> = families.iter().flatten().collect();
    for a in &all {
        let sa = a.skeleton();
        let na = a.n_vertices();
        for b in &all {
            let sb = b.skeleton();
            let nb = b.n_vertices();
            let joint = a.or_product(b).skeleton();
            for i in 0..na {
                for ip in 0..na {
                    for j in 0..nb {
                        for jp in 0..nb {
                            if (i, j) == (ip, jp) {
                                continue;
                            }
                            let expected = sa.has_edge(i, ip) || sb.has_edge(j, jp);
                            assert_eq!(
                                joint.has_edge(i * nb + j, ip * nb + jp),
                                expected,
                                "conormal mismatch at ({i},{j})-({ip},{jp}) \
                                 for factors {:?} and {:?}",
                                a.facets(),
                                b.facets()
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Swapping factors corresponds to the coordinate bijection
/// (i,j) ↦ (j,i); checked on every ordered pair with ≤ 3 vertices.
#[test]
fn or_product_commutes_up_to_coordinate_swap() {
    let families: Vec<Vec<SimplicialComplex>> = (1..=3).map(all_complexes).collect();
    let all: Vec<&SimplicialComplex> = families.iter().flatten().collect();
    for a in &all {
        for b in &all {
            let ab = a.or_product(b);
            let ba = b.or_product(a);
            let (na, nb) = (a.n_vertices(), b.n_vertices());
            let swap = |v: usize| (v % nb) * na + v / nb;
            let mut mapped: Vec<Vec<usize>> = ab
                .facets()
                .iter()
                .map(|facet| {
                    let mut image: Vec<usize> = facet.iter().map(|&v| swap(v)).collect();
                    image.sort_unstable();
                    image
                })
                .collect();
            mapped.sort();
            assert_eq!(
                mapped,
                ba.facets(),
                "swap failed for factors {:?} and {:?}",
                a.facets(),
                b.facets()
            );
        }
    }
}

/// Flattened indices make (a⊗b)⊗c and a⊗(b⊗c) literally equal complexes;
/// checked on every ordered triple with ≤ 3 vertices.
#[test]
fn or_product_is_associative_under_index_flattening() {
    let families: Vec<Vec<SimplicialComplex>> = (1..=3).map(all_complexes).collect();
    let all: Vec<&SimplicialComplex> = families.iter().flatten().collect();
    for a in &all {
        for b in &all {
            let ab = a.or_product(b);
            for c in &all {
                let left = ab.or_product(c);
                let right = a.or_product(&b.or_product(c));
                assert_eq!(
                    left.facets(),
                    right.facets(),
                    "associativity failed for {:?}, {:?}, {:?}",
                    a.facets(),
                    b.facets(),
                    c.facets()
                );
            }
        }
    }
}

#[test]
fn induced_subcomplex_on_all_vertices_is_the_identity() {
    for (name, complex) in corpus() {
        let everything: Vec<usize> = (0..complex.n_vertices()).collect();
        assert_eq!(
            complex.induced_subcomplex(&everything).unwrap(),
            complex,
            "{name}: induced on the full vertex set changed the complex"
        );
    }
}

#[test]
fn disjoint_clique_search_finds_and_refutes() {
    let pentagon = pentagon();
    let pair = pentagon.find_disjoint_cliques(2, 2).unwrap();
    assert_eq!(pair.len(), 2);
    assert!(pair[0].iter().all(|v| !pair[1].contains(v)));
    let skeleton = pentagon.skeleton();
    assert!(pair.iter().all(|c| skeleton.is_clique(c)));
    // C5 is triangle-free.
    assert!(pentagon.find_disjoint_cliques(3, 1).is_none());
    // K6 splits into two triangles.
    let k6 = complete_graph_complex(6).unwrap();
    let triangles = k6.find_disjoint_cliques(3, 2).unwrap();
    assert_eq!(triangles.len(), 2);
}

#[test]
fn single_edge_factors_give_a_complete_joint_skeleton() {
    let k2 = complete_graph_complex(2).unwrap();
    let joint = k2.or_product(&k2).skeleton();
    // All six joint pairs are exclusive: one side always repeats a
    // coordinate only when the other side's coordinates differ.
    assert_eq!(joint.n_edges(), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Canonicalization is a fixed point: rebuilding a complex from its
    /// own facets changes nothing, and clique promotion stays idempotent
    /// on arbitrary small facet families.
    #[test]
    fn canonical_form_is_stable(
        facets in proptest::collection::vec(
            proptest::collection::btree_set(0usize..5, 1..=4),
            1..=5,
        )
    ) {
        let facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect();
        let complex = SimplicialComplex::from_maximal_sets(5, facets);
        prop_assert!(complex.is_valid());
        let rebuilt = SimplicialComplex::from_maximal_sets(5, complex.facets().to_vec());
        prop_assert_eq!(&rebuilt, &complex);
        let once = complex.clique_complex();
        prop_assert_eq!(once.clique_complex(), once);
    }
}
