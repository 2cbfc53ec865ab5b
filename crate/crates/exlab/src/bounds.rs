//! Bounds on the total event probability under three model classes.
//!
//! For a complex Γ with an assignment of probabilities to vertices, the
//! quantity of interest is the total Σ P(i). Three families of constraints
//! give three bounds:
//!
//! * **NCHV** — noncontextual deterministic models: the best total over
//!   {0,1} assignments with at most one 1 per facet, which is the
//!   independence number of the skeleton.
//! * **E** — exclusivity only: P(i) ∈ [0,1] with Σ P ≤ 1 on every facet
//!   (hence on every exclusive set); the optimum of an exact packing LP,
//!   also known as the fractional packing number.
//! * **CE** — consistent exclusivity: E applied to the clique complex,
//!   i.e. the sum conditions are imposed on every clique of the skeleton
//!   whether or not it is an exclusive set.
//!
//! Iterating CE over OR powers of the complex gives the strictly stronger
//! CE^k bound, whose value is a k-th root of a rational and is represented
//! exactly by [`RootValue`].

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::complex::{Graph, SimplicialComplex};
use crate::error::Error;
use crate::lp::{self, LinearConstraint};
use crate::rational::{in_unit_interval, Rational};

/// The model classes a bound or a consistency check can refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelClass {
    Nchv,
    E,
    Ce,
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelClass::Nchv => "NCHV",
            ModelClass::E => "E",
            ModelClass::Ce => "CE",
        })
    }
}

/// A probability assignment: one exact rational in [0,1] per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Rational>,
}

impl Assignment {
    pub fn new(values: Vec<Rational>) -> Result<Assignment, Error> {
        for (index, v) in values.iter().enumerate() {
            if !in_unit_interval(v) {
                return Err(Error::ProbabilityOutOfRange {
                    index,
                    value: v.to_string(),
                });
            }
        }
        Ok(Assignment { values })
    }

    /// The same probability on every vertex.
    pub fn uniform(n: usize, p: Rational) -> Result<Assignment, Error> {
        Assignment::new(vec![p; n])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The total event probability Σ P(i).
    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }
}

/// A clique (or facet) whose probabilities sum past 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clique: Vec<usize>,
    pub total: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clique {:?} sums to {}", self.clique, self.total)
    }
}

/// An exact bound together with what certifies it.
///
/// `witness` is an assignment attaining `value`. For E and CE the
/// `certificate` holds one dual multiplier per facet of the solved complex
/// (for CE, the clique complex) and certifies optimality via
/// [`verify_bound_certificate`]; for NCHV the witness is a 0/1 assignment
/// and the certificate is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub class: ModelClass,
    pub value: Rational,
    pub witness: Assignment,
    pub certificate: Vec<Rational>,
}

/// An exact k-th root of a nonnegative rational, kept in the canonical
/// form with the smallest possible degree (so perfect powers collapse to
/// degree 1 and `as_rational` recovers them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootValue {
    base: Rational,
    degree: u32,
}

impl RootValue {
    pub fn new(base: Rational, degree: u32) -> Result<RootValue, Error> {
        if base.is_negative() {
            return Err(Error::NegativeRootBase(base.to_string()));
        }
        if degree == 0 {
            return Err(Error::InvalidRootDegree);
        }
        for reduced in 1..=degree {
            if degree.is_multiple_of(reduced) {
                if let Some(b) = exact_root(&base, degree / reduced) {
                    return Ok(RootValue {
                        base: b,
                        degree: reduced,
                    });
                }
            }
        }
        unreachable!("reduced = degree always succeeds");
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The exact rational value, when the root collapses to one.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.degree == 1).then_some(&self.base)
    }

    /// Compares `base^(1/degree)` with a rational exactly, by comparing
    /// `degree`-th powers. No decimal approximations are involved.
    pub fn cmp_rational(&self, other: &Rational) -> Ordering {
        if other.is_negative() {
            return Ordering::Greater;
        }
        self.base.cmp(&other.pow(self.degree as i32))
    }
}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^(1/{})", self.base, self.degree)
        }
    }
}

fn exact_root(r: &Rational, k: u32) -> Option<Rational> {
    if k == 1 {
        return Some(r.clone());
    }
    let numer = r.numer();
    let denom = r.denom();
    let nr = numer.nth_root(k);
    let dr = denom.nth_root(k);
    (nr.pow(k) == *numer && dr.pow(k) == *denom).then(|| Rational::new(nr, dr))
}

/// The CE^k bound: the k-th root of the CE bound of the k-fold OR product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCeBound {
    pub copies: u32,
    /// The bound itself, `product.value ^ (1/copies)`.
    pub value: RootValue,
    /// The underlying CE result on the `copies`-fold OR product; its
    /// witness and certificate live on the product complex.
    pub product: BoundResult,
}

fn require_valid(complex: &SimplicialComplex) {
    assert!(
        complex.is_valid(),
        "bound computations require a valid complex; run validate() first"
    );
}

fn indicator(n: usize, set: &[usize]) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n];
    for &v in set {
        row[v] = Rational::one();
    }
    row
}

fn packing_lp(
    n: usize,
    sets: &[Vec<usize>],
) -> (Vec<Rational>, Vec<LinearConstraint>, Vec<Option<Rational>>) {
    let objective = vec![Rational::one(); n];
    let rows = sets
        .iter()
        .map(|s| LinearConstraint::new(indicator(n, s), Rational::one()))
        .collect();
    let bounds = vec![Some(Rational::one()); n];
    (objective, rows, bounds)
}

fn solve_packing(class: ModelClass, n: usize, sets: &[Vec<usize>]) -> BoundResult {
    let (objective, rows, bounds) = packing_lp(n, sets);
    let solution = lp::maximize(&objective, &rows, &bounds)
        .into_optimal()
        .expect("packing LP over [0,1]^n is feasible and bounded");
    lp::verify_certificate(&objective, &rows, &bounds, &solution)
        .expect("solver certificate must verify");
    BoundResult {
        class,
        value: solution.value,
        witness: Assignment::new(solution.witness).expect("LP witness respects the [0,1] box"),
        certificate: solution.constraint_duals,
    }
}

/// The E bound: max Σ P(i) over assignments with Σ P ≤ 1 on every facet.
/// Exact LP optimum with witness and facet duals.
///
/// Panics if the complex is invalid.
pub fn e_bound(complex: &SimplicialComplex) -> BoundResult {
    require_valid(complex);
    solve_packing(ModelClass::E, complex.n_vertices(), complex.facets())
}

/// The NCHV bound: the maximum number of vertices a deterministic
/// noncontextual model can make certain, i.e. the independence number of
/// the skeleton. Computed by exact branch and bound; the witness is the
/// 0/1 indicator of a maximum independent set.
///
/// Panics if the complex is invalid.
pub fn nchv_bound(complex: &SimplicialComplex) -> BoundResult {
    require_valid(complex);
    let skeleton = complex.skeleton();
    let independent = maximum_clique(&skeleton.complement());
    let mut values = vec![Rational::zero(); complex.n_vertices()];
    for &v in &independent {
        values[v] = Rational::one();
    }
    BoundResult {
        class: ModelClass::Nchv,
        value: Rational::from_integer(independent.len().into()),
        witness: Assignment::new(values).expect("indicator vector is in [0,1]"),
        certificate: Vec::new(),
    }
}

/// The CE bound: the E bound of the clique complex, so the sum conditions
/// apply to every clique of the skeleton. Witness and certificate refer to
/// the clique complex (same vertices; facets are its maximal cliques).
///
/// Panics if the complex is invalid.
pub fn ce_bound(complex: &SimplicialComplex) -> BoundResult {
    require_valid(complex);
    let cliques = complex.clique_complex();
    solve_packing(ModelClass::Ce, cliques.n_vertices(), cliques.facets())
}

/// The CE^k bound: CE applied to the k-fold OR product of the complex with
/// itself, re-normalized by taking the k-th root. With one copy this is
/// exactly the CE bound.
///
/// Panics if the complex is invalid.
pub fn ce_product_bound(complex: &SimplicialComplex, copies: u32) -> Result<ProductCeBound, Error> {
    if copies == 0 {
        return Err(Error::InvalidCopies);
    }
    require_valid(complex);
    let mut product = complex.clone();
    for _ in 1..copies {
        product = product.or_product(complex);
    }
    let result = ce_bound(&product);
    let value = RootValue::new(result.value.clone(), copies)?;
    Ok(ProductCeBound {
        copies,
        value,
        product: result,
    })
}

/// Lists every facet (class E) or maximal clique (class CE) on which the
/// assignment's probabilities sum past 1. Empty means the assignment
/// satisfies the class. NCHV is not an inequality system, so it is not a
/// valid class here.
///
/// Panics if the complex is invalid.
pub fn check_assignment(
    complex: &SimplicialComplex,
    assignment: &Assignment,
    class: ModelClass,
) -> Result<Vec<Violation>, Error> {
    require_valid(complex);
    if assignment.len() != complex.n_vertices() {
        return Err(Error::AssignmentSizeMismatch {
            expected: complex.n_vertices(),
            found: assignment.len(),
        });
    }
    let sets: Vec<Vec<usize>> = match class {
        ModelClass::E => complex.facets().to_vec(),
        ModelClass::Ce => complex.clique_complex().facets().to_vec(),
        ModelClass::Nchv => {
            return Err(Error::InvalidField {
                field: "class".into(),
                reason: "consistency checks are defined for classes E and CE".into(),
            })
        }
    };
    let one = Rational::one();
    Ok(sets
        .into_iter()
        .filter_map(|clique| {
            let total: Rational = clique.iter().map(|&v| &assignment.values()[v]).sum();
            (total > one).then_some(Violation { clique, total })
        })
        .collect())
}

/// For an assignment already satisfying E, finds the maximal clique with
/// the largest total, and returns it as a violation when that total
/// exceeds 1 — i.e. a witness that the assignment fails CE. `None` means
/// the assignment satisfies CE as well.
///
/// Errors if the assignment does not satisfy E in the first place.
/// Panics if the complex is invalid.
pub fn find_ce_violation(
    complex: &SimplicialComplex,
    assignment: &Assignment,
) -> Result<Option<Violation>, Error> {
    let e_violations = check_assignment(complex, assignment, ModelClass::E)?;
    if let Some(v) = e_violations.first() {
        return Err(Error::violates_e(v));
    }
    let one = Rational::one();
    let mut worst: Option<Violation> = None;
    for clique in complex.clique_complex().facets() {
        let total: Rational = clique.iter().map(|&v| &assignment.values()[v]).sum();
        if total <= one {
            continue;
        }
        let replace = match &worst {
            None => true,
            Some(w) => total > w.total || (total == w.total && *clique < w.clique),
        };
        if replace {
            worst = Some(Violation {
                clique: clique.clone(),
                total,
            });
        }
    }
    Ok(worst)
}

/// Re-derives the LP data for a bound and checks its certificate by weak
/// duality, independently of how the bound was computed. For NCHV results
/// the witness is checked to be a 0/1 independent set attaining the value.
pub fn verify_bound_certificate(
    complex: &SimplicialComplex,
    result: &BoundResult,
) -> Result<(), String> {
    let n = complex.n_vertices();
    if result.witness.len() != n {
        return Err(format!(
            "witness has {} entries, complex has {n} vertices",
            result.witness.len()
        ));
    }
    match result.class {
        ModelClass::Nchv => {
            let mut support = Vec::new();
            for (v, p) in result.witness.values().iter().enumerate() {
                if p.is_one() {
                    support.push(v);
                } else if !p.is_zero() {
                    return Err(format!("NCHV witness entry {v} = {p} is not 0 or 1"));
                }
            }
            if !complex.skeleton().is_independent_set(&support) {
                return Err("NCHV witness is not an independent set".into());
            }
            if Rational::from_integer(support.len().into()) != result.value {
                return Err(format!(
                    "NCHV witness has {} vertices, value claims {}",
                    support.len(),
                    result.value
                ));
            }
            Ok(())
        }
        ModelClass::E | ModelClass::Ce => {
            let sets = match result.class {
                ModelClass::E => complex.facets().to_vec(),
                _ => complex.clique_complex().facets().to_vec(),
            };
            let (objective, rows, bounds) = packing_lp(n, &sets);
            let solution = lp::LpSolution {
                value: result.value.clone(),
                witness: result.witness.values().to_vec(),
                constraint_duals: result.certificate.clone(),
            };
            lp::verify_certificate(&objective, &rows, &bounds, &solution)
        }
    }
}

/// Maximum clique by branch and bound with greedy coloring: candidates are
/// colored so that no color class contains an edge, the color count bounds
/// any clique inside the candidate set, and branches that cannot beat the
/// incumbent are cut.
fn maximum_clique(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    let candidates: Vec<usize> = (0..g.n_vertices()).collect();
    expand_clique(g, candidates, &mut current, &mut best);
    best.sort_unstable();
    best
}

fn expand_clique(
    g: &Graph,
    candidates: Vec<usize>,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    // Greedy coloring; classes are independent sets, so a clique takes at
    // most one vertex per class.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &candidates {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&u| !g.has_edge(u, v)))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut ordered: Vec<(usize, usize)> = Vec::with_capacity(candidates.len());
    for (color, class) in classes.iter().enumerate() {
        for &v in class {
            ordered.push((v, color + 1));
        }
    }
    // Process high colors first; once the color bound cannot beat the
    // incumbent, nothing earlier can either.
    for idx in (0..ordered.len()).rev() {
        let (v, color) = ordered[idx];
        if current.len() + color <= best.len() {
            return;
        }
        current.push(v);
        let next: Vec<usize> = ordered[..idx]
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| g.has_edge(u, v))
            .collect();
        expand_clique(g, next, current, best);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn cycle(n: usize) -> SimplicialComplex {
        let facets = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        SimplicialComplex::from_maximal_sets(n, facets)
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_maximal_sets(3, vec![vec![0, 1, 2]])
    }

    #[test]
    fn bounds_tell_a_triangle_from_a_three_cycle() {
        // Full triangle: one facet, all bounds collapse to 1.
        let t = triangle();
        assert_eq!(e_bound(&t).value, rat_int(1));
        assert_eq!(ce_bound(&t).value, rat_int(1));
        assert_eq!(nchv_bound(&t).value, rat_int(1));

        // Three pairwise exclusivities without the joint facet: E sees
        // only the edges and reaches 3/2, CE adds the triangle clique.
        let c3 = cycle(3);
        assert_eq!(e_bound(&c3).value, rat(3, 2));
        assert_eq!(ce_bound(&c3).value, rat_int(1));
        assert_eq!(nchv_bound(&c3).value, rat_int(1));
    }

    #[test]
    fn path_bounds_and_witnesses() {
        let p3 = SimplicialComplex::from_maximal_sets(3, vec![vec![0, 1], vec![1, 2]]);
        let e = e_bound(&p3);
        assert_eq!(e.value, rat_int(2));
        assert_eq!(e.witness.values(), &[rat_int(1), rat_int(0), rat_int(1)]);
        let n = nchv_bound(&p3);
        assert_eq!(n.value, rat_int(2));
        verify_bound_certificate(&p3, &e).unwrap();
        verify_bound_certificate(&p3, &n).unwrap();
    }

    #[test]
    fn results_verify_and_tampering_is_caught() {
        let c5 = cycle(5);
        for result in [e_bound(&c5), ce_bound(&c5), nchv_bound(&c5)] {
            verify_bound_certificate(&c5, &result).unwrap();
            let mut forged = result.clone();
            forged.value += rat_int(1);
            assert!(verify_bound_certificate(&c5, &forged).is_err());
        }
    }

    #[test]
    fn assignment_rejects_out_of_range() {
        assert!(Assignment::new(vec![rat(1, 2), rat_int(1)]).is_ok());
        assert!(Assignment::new(vec![rat(3, 2)]).is_err());
        assert!(Assignment::new(vec![rat_int(-1)]).is_err());
        assert_eq!(
            Assignment::uniform(4, rat(1, 4)).unwrap().total(),
            rat_int(1)
        );
    }

    #[test]
    fn check_assignment_lists_offending_sets() {
        let c3 = cycle(3);
        let half = Assignment::uniform(3, rat(1, 2)).unwrap();
        assert!(check_assignment(&c3, &half, ModelClass::E)
            .unwrap()
            .is_empty());
        let ce = check_assignment(&c3, &half, ModelClass::Ce).unwrap();
        assert_eq!(
            ce,
            vec![Violation {
                clique: vec![0, 1, 2],
                total: rat(3, 2)
            }]
        );
        let heavy = Assignment::uniform(3, rat(2, 3)).unwrap();
        assert_eq!(
            check_assignment(&c3, &heavy, ModelClass::E).unwrap().len(),
            3
        );
        assert!(check_assignment(&c3, &half, ModelClass::Nchv).is_err());
        let short = Assignment::uniform(2, rat(1, 2)).unwrap();
        assert!(check_assignment(&c3, &short, ModelClass::E).is_err());
    }

    #[test]
    fn ce_violation_search_demands_e_first() {
        let c3 = cycle(3);
        let half = Assignment::uniform(3, rat(1, 2)).unwrap();
        let v = find_ce_violation(&c3, &half).unwrap().unwrap();
        assert_eq!(v.clique, vec![0, 1, 2]);
        assert_eq!(v.total, rat(3, 2));

        let third = Assignment::uniform(3, rat(1, 3)).unwrap();
        assert!(find_ce_violation(&c3, &third).unwrap().is_none());

        let heavy = Assignment::uniform(3, rat(2, 3)).unwrap();
        assert!(find_ce_violation(&c3, &heavy).is_err());
    }

    #[test]
    fn root_values_canonicalize_and_compare_exactly() {
        let root5 = RootValue::new(rat_int(5), 2).unwrap();
        assert_eq!(root5.degree(), 2);
        assert!(root5.as_rational().is_none());
        assert_eq!(root5.cmp_rational(&rat_int(2)), Ordering::Greater);
        assert_eq!(root5.cmp_rational(&rat(5, 2)), Ordering::Less);
        assert_eq!(root5.cmp_rational(&rat_int(-7)), Ordering::Greater);

        // Perfect powers collapse.
        assert_eq!(
            RootValue::new(rat(4, 9), 2).unwrap().as_rational(),
            Some(&rat(2, 3))
        );
        assert_eq!(
            RootValue::new(rat_int(1), 6).unwrap().as_rational(),
            Some(&rat_int(1))
        );
        // Fourth root of 25 is the square root of 5.
        assert_eq!(RootValue::new(rat_int(25), 4).unwrap(), root5);

        assert!(RootValue::new(rat_int(-1), 2).is_err());
        assert!(RootValue::new(rat_int(5), 0).is_err());
    }

    #[test]
    fn product_bound_with_one_copy_is_ce() {
        let c3 = cycle(3);
        let product = ce_product_bound(&c3, 1).unwrap();
        assert_eq!(product.value.as_rational(), Some(&ce_bound(&c3).value));
        assert!(ce_product_bound(&c3, 0).is_err());
    }

    #[test]
    fn product_of_simplices_stays_trivial() {
        // K3 ⊗ K3 has a complete skeleton, so CE² is still 1.
        let product = ce_product_bound(&triangle(), 2).unwrap();
        assert_eq!(product.value.as_rational(), Some(&rat_int(1)));
        assert_eq!(product.product.value, rat_int(1));
    }

    #[test]
    #[should_panic(expected = "valid complex")]
    fn bounds_refuse_invalid_complexes() {
        let broken = SimplicialComplex::new(3, vec![vec![0, 1]]);
        let _ = e_bound(&broken);
    }
}
