//! The built-in claim table: every headline number of the five-cycle
//! family and the PR-box scenarios, recomputed and compared against its
//! expected exact value. The `paper-check` CLI verb wraps [`paper_check`].

use std::fmt;

use crate::bounds::{
    ce_bound, ce_product_bound, check_assignment, e_bound, find_ce_violation, nchv_bound,
    Assignment, ModelClass, RootValue, Violation,
};
use crate::complex::SimplicialComplex;
use crate::rational::{pow10_inv, rat, rat_int};
use crate::scenarios::{
    assignment_from_behavior, lo_complex, no_signaling_check, pentachoron, pentagon, pentagram,
    pr_box_behavior,
};
use crate::theta::theta_odd_cycle;

/// One recomputed quantity next to its expected value.
#[derive(Debug, Clone)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// The outcome of [`paper_check`]: all claims, in a fixed order.
#[derive(Debug, Clone)]
pub struct ClaimReport {
    claims: Vec<Claim>,
}

impl ClaimReport {
    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

fn claim_eq<T: PartialEq + fmt::Display>(name: &str, expected: &T, computed: &T) -> Claim {
    Claim {
        name: name.to_string(),
        expected: expected.to_string(),
        computed: computed.to_string(),
        pass: expected == computed,
    }
}

fn claim_that(name: &str, expected: &str, computed: String, pass: bool) -> Claim {
    Claim {
        name: name.to_string(),
        expected: expected.to_string(),
        computed,
        pass,
    }
}

fn describe_violations(violations: &[Violation]) -> String {
    match violations.first() {
        None => "no violations".to_string(),
        Some(first) => format!("{} violation(s), first: {first}", violations.len()),
    }
}

/// True iff the complex is a 5-cycle: five 2-element facets covering five
/// vertices twice each. (A 2-regular graph on five vertices is a single
/// cycle, so no connectivity check is needed.)
fn is_pentagon_complex(complex: &SimplicialComplex) -> bool {
    if complex.n_vertices() != 5 || complex.facets().len() != 5 {
        return false;
    }
    if !complex.facets().iter().all(|f| f.len() == 2) {
        return false;
    }
    let skeleton = complex.skeleton();
    (0..5).all(|v| skeleton.degree(v) == 2)
}

/// True iff the complex has exactly the ten 2-element facets of K5 — all
/// pairs exclusive, no joint set.
fn is_pentagram_complex(complex: &SimplicialComplex) -> bool {
    complex.n_vertices() == 5 && complex.facets() == pentagram().facets()
}

/// All k-element subsets of 0..n, lexicographically.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        // Advance the rightmost index that still has room.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < n - (k - i) {
                break;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Recomputes the full claim table. Every claim is exact (rational or
/// structural) except the five-cycle quantum maximum, which is checked to
/// 25 decimal digits against the exact root it should equal.
pub fn paper_check() -> ClaimReport {
    let mut claims = Vec::new();

    // The three five-event structures and their bounds.
    let pentagon = pentagon();
    let pentagram = pentagram();
    claims.push(claim_eq(
        "pentagon E bound",
        &rat(5, 2),
        &e_bound(&pentagon).value,
    ));
    let pentagon_half = Assignment::uniform(5, rat(1, 2)).expect("1/2 is admissible");
    let pentagon_half_violations = check_assignment(&pentagon, &pentagon_half, ModelClass::E)
        .expect("E is checkable on any valid complex");
    claims.push(claim_that(
        "pentagon attains its E bound at the uniform 1/2 assignment",
        "admissible, total 5/2",
        format!(
            "{}, total {}",
            describe_violations(&pentagon_half_violations),
            pentagon_half.total()
        ),
        pentagon_half_violations.is_empty() && pentagon_half.total() == rat(5, 2),
    ));
    claims.push(claim_eq(
        "pentagon NCHV bound",
        &rat_int(2),
        &nchv_bound(&pentagon).value,
    ));
    claims.push(claim_eq(
        "pentagram NCHV bound",
        &rat_int(1),
        &nchv_bound(&pentagram).value,
    ));
    claims.push(claim_eq(
        "pentagram E bound",
        &rat(5, 2),
        &e_bound(&pentagram).value,
    ));
    let half = Assignment::uniform(5, rat(1, 2)).expect("1/2 is admissible");
    let half_violations = check_assignment(&pentagram, &half, ModelClass::E)
        .expect("E is checkable on any valid complex");
    claims.push(claim_that(
        "pentagram accepts the uniform 1/2 assignment under E",
        "no violations",
        describe_violations(&half_violations),
        half_violations.is_empty(),
    ));
    let pentachoron = pentachoron();
    claims.push(claim_eq(
        "pentachoron E bound",
        &rat_int(1),
        &e_bound(&pentachoron).value,
    ));
    let fifth = Assignment::uniform(5, rat(1, 5)).expect("1/5 is admissible");
    let fifth_violations = check_assignment(&pentachoron, &fifth, ModelClass::E)
        .expect("E is checkable on any valid complex");
    claims.push(claim_that(
        "pentachoron attains its E bound at the uniform 1/5 assignment",
        "admissible, total 1",
        format!(
            "{}, total {}",
            describe_violations(&fifth_violations),
            fifth.total()
        ),
        fifth_violations.is_empty() && fifth.total() == rat_int(1),
    ));
    claims.push(claim_eq(
        "pentagram CE bound",
        &rat_int(1),
        &ce_bound(&pentagram).value,
    ));

    // Two independent copies of the pentagon experiment.
    let product = pentagon.or_product(&pentagon);
    claims.push(claim_eq(
        "two-copy product vertex count",
        &25usize,
        &product.n_vertices(),
    ));
    let parts = product.find_disjoint_cliques(5, 5);
    claims.push(claim_that(
        "two-copy product splits into five disjoint 5-cliques",
        "five disjoint 5-cliques",
        match &parts {
            Some(parts) => format!("{} disjoint 5-cliques", parts.len()),
            None => "no such partition".to_string(),
        },
        parts.is_some(),
    ));
    if let Some(parts) = &parts {
        let induced: Vec<SimplicialComplex> = parts
            .iter()
            .map(|part| {
                product
                    .induced_subcomplex(part)
                    .expect("partition vertices are in range")
            })
            .collect();
        let all_pentagrams = induced.iter().all(is_pentagram_complex);
        let none_joint = induced.iter().all(|c| {
            !c.is_exclusive_set(&[0, 1, 2, 3, 4])
                .expect("vertices in range")
        });
        claims.push(claim_that(
            "each 5-clique induces a pentagram with no joint 5-set",
            "five pentagrams, no joint exclusivity",
            format!(
                "{} pentagrams, joint 5-sets {}",
                induced.iter().filter(|c| is_pentagram_complex(c)).count(),
                if none_joint { "absent" } else { "present" }
            ),
            all_pentagrams && none_joint,
        ));
    }
    let two_copy = ce_product_bound(&pentagon, 2).expect("two copies is valid");
    let root5 = RootValue::new(rat_int(5), 2).expect("5 is a positive base");
    claims.push(claim_eq("two-copy CE bound", &root5, &two_copy.value));
    claims.push(claim_eq(
        "squared two-copy CE bound (E on the product clique complex)",
        &rat_int(5),
        &two_copy.product.value,
    ));

    // The quantum maximum of the five-cycle, to 25 digits.
    let theta = theta_odd_cycle(5, 30).expect("5 is an odd length >= 3");
    let distance = theta.distance_to_root(&root5);
    claims.push(claim_that(
        "five-cycle quantum maximum",
        "5^(1/2) to 25 digits",
        theta.to_string(),
        distance < pow10_inv(25) && theta.agrees_with(&root5),
    ));

    // One PR box: no-signaling, and a pentagon among its live events.
    let pr = pr_box_behavior();
    let pr_defects = no_signaling_check(&pr);
    claims.push(claim_that(
        "PR box no-signaling",
        "no defects",
        match pr_defects.first() {
            None => "no defects".to_string(),
            Some(first) => format!("{} defect(s), first: {first}", pr_defects.len()),
        },
        pr_defects.is_empty(),
    ));
    let pr_support = pr.nonzero_events();
    claims.push(claim_eq(
        "PR box nonzero events",
        &8usize,
        &pr_support.len(),
    ));
    let pr_complex =
        lo_complex(pr.scenario(), Some(&pr_support)).expect("support events are valid");
    let pr_assignment =
        assignment_from_behavior(&pr_complex, &pr).expect("labels come from the same scenario");
    let found_pentagon = k_subsets(pr_complex.n_vertices(), 5)
        .into_iter()
        .find(|subset| {
            let induced = pr_complex
                .induced_subcomplex(subset)
                .expect("subset vertices are in range");
            is_pentagon_complex(&induced)
        });
    let pentagon_is_half = found_pentagon.as_ref().is_some_and(|subset| {
        subset
            .iter()
            .all(|&v| pr_assignment.values()[v] == rat(1, 2))
    });
    claims.push(claim_that(
        "five PR events form a pentagon of exclusive pairs, each at 1/2",
        "an induced 5-cycle with all probabilities 1/2",
        match &found_pentagon {
            Some(subset) => {
                let names: Vec<&str> = subset
                    .iter()
                    .map(|&v| pr_complex.label(v).expect("LO complexes are labeled"))
                    .collect();
                format!("events {{{}}}", names.join(", "))
            }
            None => "no induced 5-cycle".to_string(),
        },
        found_pentagon.is_some() && pentagon_is_half,
    ));

    // Two PR boxes side by side: E holds, consistent exclusivity fails.
    let two = pr.product(&pr);
    let two_defects = no_signaling_check(&two);
    claims.push(claim_that(
        "two PR boxes no-signaling",
        "no defects",
        format!("{} defect(s)", two_defects.len()),
        two_defects.is_empty(),
    ));
    let two_support = two.nonzero_events();
    claims.push(claim_eq(
        "two-PR-box nonzero events",
        &64usize,
        &two_support.len(),
    ));
    let two_complex =
        lo_complex(two.scenario(), Some(&two_support)).expect("support events are valid");
    let two_assignment =
        assignment_from_behavior(&two_complex, &two).expect("labels come from the same scenario");
    let two_violations = check_assignment(&two_complex, &two_assignment, ModelClass::E)
        .expect("E is checkable on any valid complex");
    claims.push(claim_that(
        "two PR boxes satisfy E",
        "no violations",
        describe_violations(&two_violations),
        two_violations.is_empty(),
    ));
    let ce_violation =
        find_ce_violation(&two_complex, &two_assignment).expect("the assignment satisfies E");
    claims.push(claim_that(
        "two PR boxes violate consistent exclusivity",
        "5 events totalling 5/4",
        match &ce_violation {
            Some(v) => format!("{} events totalling {}", v.clique.len(), v.total),
            None => "no violation".to_string(),
        },
        ce_violation
            .as_ref()
            .is_some_and(|v| v.clique.len() == 5 && v.total == rat(5, 4)),
    ));
    if let Some(v) = &ce_violation {
        let induced = two_complex
            .induced_subcomplex(&v.clique)
            .expect("clique vertices are in range");
        let joint = induced
            .is_exclusive_set(&[0, 1, 2, 3, 4])
            .expect("vertices in range");
        claims.push(claim_that(
            "the violating events form a pentagram, not a pentachoron",
            "ten exclusive pairs, no joint 5-set",
            format!(
                "{} facets of size 2, joint 5-set {}",
                induced.facets().iter().filter(|f| f.len() == 2).count(),
                if joint { "present" } else { "absent" }
            ),
            is_pentagram_complex(&induced) && !joint,
        ));
    }

    ClaimReport { claims }
}
