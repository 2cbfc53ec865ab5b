//! Order relations and self-consistency of the three bound classes,
//! checked across the shared corpus.

mod common;

use std::cmp::Ordering;

use common::corpus;
use exlab::bounds::{
    ce_bound, ce_product_bound, check_assignment, e_bound, nchv_bound, verify_bound_certificate,
    ModelClass, RootValue,
};
use exlab::complex::SimplicialComplex;
use exlab::rational::{rat, rat_int};
use exlab::scenarios::{pentagon, pentagram};

#[test]
fn bound_classes_are_ordered() {
    for (name, complex) in corpus() {
        let nchv = nchv_bound(&complex).value;
        let ce = ce_bound(&complex).value;
        let e = e_bound(&complex).value;
        assert!(nchv <= ce, "{name}: NCHV {nchv} > CE {ce}");
        assert!(ce <= e, "{name}: CE {ce} > E {e}");
        assert!(
            e <= rat_int(complex.n_vertices() as i64),
            "{name}: E {e} exceeds the vertex count"
        );
    }
}

#[test]
fn the_five_event_structures_separate_the_classes() {
    let pentagram = pentagram();
    assert_eq!(nchv_bound(&pentagram).value, rat_int(1));
    assert_eq!(ce_bound(&pentagram).value, rat_int(1));
    assert_eq!(e_bound(&pentagram).value, rat(5, 2));

    let pentagon = pentagon();
    assert_eq!(nchv_bound(&pentagon).value, rat_int(2));
    // The 5-cycle is triangle-free, so clique promotion changes nothing.
    assert_eq!(ce_bound(&pentagon).value, rat(5, 2));
    assert_eq!(e_bound(&pentagon).value, rat(5, 2));
}

/// 2 < √5 < 5/2, compared exactly by squaring.
#[test]
fn the_quantum_value_sits_between_nchv_and_e() {
    let root5 = RootValue::new(rat_int(5), 2).unwrap();
    assert_eq!(root5.cmp_rational(&rat_int(2)), Ordering::Greater);
    assert_eq!(root5.cmp_rational(&rat(5, 2)), Ordering::Less);
}

#[test]
fn e_bound_never_grows_when_exclusivity_is_added() {
    for (name, complex) in corpus() {
        let e = e_bound(&complex).value;
        let promoted = e_bound(&complex.clique_complex()).value;
        assert!(
            promoted <= e,
            "{name}: clique promotion raised E from {e} to {promoted}"
        );
        if complex.n_vertices() < 2 {
            continue;
        }
        // Declaring one extra exclusive pair can only cut the polytope.
        let mut facets = complex.facets().to_vec();
        facets.push(vec![0, 1]);
        let tightened = SimplicialComplex::from_maximal_sets(complex.n_vertices(), facets);
        let after = e_bound(&tightened).value;
        assert!(
            after <= e,
            "{name}: adding an exclusive pair raised E from {e} to {after}"
        );
    }
}

#[test]
fn e_witnesses_are_admissible_assignments() {
    for (name, complex) in corpus() {
        let result = e_bound(&complex);
        let violations = check_assignment(&complex, &result.witness, ModelClass::E).unwrap();
        assert!(
            violations.is_empty(),
            "{name}: E witness violates its own constraints: {:?}",
            violations
        );
        assert_eq!(
            result.witness.total(),
            result.value,
            "{name}: witness total"
        );
    }
}

#[test]
fn certificates_reverify_for_every_class() {
    for (name, complex) in corpus() {
        for result in [e_bound(&complex), ce_bound(&complex), nchv_bound(&complex)] {
            verify_bound_certificate(&complex, &result).unwrap_or_else(|why| {
                panic!("{name}: {} certificate rejected: {why}", result.class)
            });
        }
    }
}

#[test]
fn single_copy_product_bound_collapses_to_ce() {
    for (name, complex) in corpus() {
        let one_copy = ce_product_bound(&complex, 1).unwrap();
        let ce = ce_bound(&complex).value;
        assert_eq!(one_copy.value.degree(), 1, "{name}: degree after one copy");
        assert_eq!(
            one_copy.value.as_rational(),
            Some(&ce),
            "{name}: one-copy bound disagrees with CE"
        );
    }
}
