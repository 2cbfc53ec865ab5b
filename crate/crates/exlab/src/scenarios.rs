//! Concrete exclusivity structures: named small complexes, cycles, and
//! Bell-box scenarios whose exclusivity is derived from no-signaling.
//!
//! A box scenario fixes parties, settings, and outcomes; a behavior adds
//! an exact probability table. Two events of a scenario are *locally
//! orthogonal* when some party uses the same setting in both but gets a
//! different outcome; that relation, together with the per-context outcome
//! sets, generates the exclusivity complex of the scenario. Deliberately,
//! no larger cross-context facets are added: nothing in the no-signaling
//! structure forces joint exclusivity beyond pairs, and that weakness is
//! exactly what the bounds machinery probes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::bounds::Assignment;
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::rational::{in_unit_interval, rat, Rational};

/// The n-cycle complex: facets {i, i+1 mod n}. Requires n ≥ 3.
pub fn cycle_complex(n: usize) -> Result<SimplicialComplex, Error> {
    if n < 3 {
        return Err(Error::InvalidField {
            field: "n".into(),
            reason: format!("a cycle needs at least 3 vertices, got {n}"),
        });
    }
    let facets = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Ok(SimplicialComplex::from_maximal_sets(n, facets))
}

/// All pairs exclusive, but no larger sets: facets are the edges of K_n.
/// Requires n ≥ 1; a single vertex has no pairs and stays isolated.
pub fn complete_graph_complex(n: usize) -> Result<SimplicialComplex, Error> {
    if n == 0 {
        return Err(Error::InvalidField {
            field: "n".into(),
            reason: "need at least one vertex".into(),
        });
    }
    let mut facets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            facets.push(vec![i, j]);
        }
    }
    Ok(SimplicialComplex::from_maximal_sets(n, facets))
}

/// Every subset exclusive: the single facet {0..n-1}. Requires n ≥ 1.
pub fn full_simplex_complex(n: usize) -> Result<SimplicialComplex, Error> {
    if n == 0 {
        return Err(Error::InvalidField {
            field: "n".into(),
            reason: "need at least one vertex".into(),
        });
    }
    Ok(SimplicialComplex::from_maximal_sets(
        n,
        vec![(0..n).collect()],
    ))
}

/// Five events, consecutive pairs exclusive: the 5-cycle.
pub fn pentagon() -> SimplicialComplex {
    cycle_complex(5).expect("5 >= 3")
}

/// Five events, all pairs exclusive but no joint set: edges of K5.
pub fn pentagram() -> SimplicialComplex {
    complete_graph_complex(5).expect("5 >= 1")
}

/// Five events, jointly exclusive: the full 4-simplex.
pub fn pentachoron() -> SimplicialComplex {
    full_simplex_complex(5).expect("5 >= 1")
}

/// A measurement scenario: each party has some settings, each setting some
/// outcomes. Parties are grouped into boxes purely for labeling — the
/// label grammar separates boxes by `;` and parties within a box by `,`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxScenario {
    /// outcomes[party][setting] = number of outcomes.
    outcomes: Vec<Vec<usize>>,
    /// Parties per box; sums to the party count.
    groups: Vec<usize>,
}

impl BoxScenario {
    /// A scenario whose parties all belong to one box.
    pub fn new(outcomes: Vec<Vec<usize>>) -> Result<BoxScenario, Error> {
        let parties = outcomes.len();
        BoxScenario::with_groups(outcomes, vec![parties])
    }

    /// A scenario with an explicit box grouping for labels.
    pub fn with_groups(
        outcomes: Vec<Vec<usize>>,
        groups: Vec<usize>,
    ) -> Result<BoxScenario, Error> {
        if outcomes.is_empty() {
            return Err(Error::InvalidScenario("need at least one party".into()));
        }
        for (party, settings) in outcomes.iter().enumerate() {
            if settings.is_empty() {
                return Err(Error::InvalidScenario(format!(
                    "party {party} has no settings"
                )));
            }
            for (setting, &count) in settings.iter().enumerate() {
                if count == 0 {
                    return Err(Error::InvalidScenario(format!(
                        "party {party} setting {setting} has no outcomes"
                    )));
                }
            }
        }
        if groups.contains(&0) || groups.iter().sum::<usize>() != outcomes.len() {
            return Err(Error::InvalidScenario(format!(
                "groups {groups:?} do not partition {} parties",
                outcomes.len()
            )));
        }
        Ok(BoxScenario { outcomes, groups })
    }

    pub fn n_parties(&self) -> usize {
        self.outcomes.len()
    }

    pub fn n_settings(&self, party: usize) -> usize {
        self.outcomes[party].len()
    }

    pub fn n_outcomes(&self, party: usize, setting: usize) -> usize {
        self.outcomes[party][setting]
    }

    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    /// All full settings tuples, in lexicographic order.
    pub fn contexts(&self) -> Vec<Vec<usize>> {
        let radixes: Vec<usize> = self.outcomes.iter().map(Vec::len).collect();
        odometer(&radixes)
    }

    /// Every event of the scenario, in canonical order (see [`BoxEvent`]).
    pub fn events(&self) -> Vec<BoxEvent> {
        let mut out = Vec::new();
        for settings in self.contexts() {
            let radixes: Vec<usize> = settings
                .iter()
                .enumerate()
                .map(|(p, &s)| self.outcomes[p][s])
                .collect();
            for outcomes in odometer(&radixes) {
                out.push(BoxEvent {
                    settings: settings.clone(),
                    outcomes,
                });
            }
        }
        out.sort();
        out
    }

    /// Checks that an event's shape and indices fit this scenario.
    fn validate_event(&self, event: &BoxEvent) -> Result<(), String> {
        let parties = self.n_parties();
        if event.settings.len() != parties || event.outcomes.len() != parties {
            return Err(format!(
                "event has {} settings and {} outcomes, scenario has {parties} parties",
                event.settings.len(),
                event.outcomes.len()
            ));
        }
        for p in 0..parties {
            let s = event.settings[p];
            if s >= self.n_settings(p) {
                return Err(format!("party {p} has no setting {s}"));
            }
            if event.outcomes[p] >= self.outcomes[p][s] {
                return Err(format!(
                    "party {p} setting {s} has no outcome {}",
                    event.outcomes[p]
                ));
            }
        }
        Ok(())
    }
}

/// One event: a full settings tuple and a full outcomes tuple.
///
/// The canonical order compares outcome tuples first, then settings — the
/// lexicographic order of the labels `outcomes|settings` whenever all
/// indices are single digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxEvent {
    pub settings: Vec<usize>,
    pub outcomes: Vec<usize>,
}

impl BoxEvent {
    pub fn new(settings: Vec<usize>, outcomes: Vec<usize>) -> BoxEvent {
        BoxEvent { settings, outcomes }
    }

    /// The canonical label, e.g. `"0,1;1,0|0,0;1,1"`: outcomes `|`
    /// settings, boxes separated by `;`, parties within a box by `,`.
    pub fn label(&self, scenario: &BoxScenario) -> String {
        format!(
            "{}|{}",
            render_groups(&self.outcomes, &scenario.groups),
            render_groups(&self.settings, &scenario.groups)
        )
    }

    /// Strict inverse of [`label`](Self::label): the shape must match the
    /// scenario's grouping exactly and all indices must be in range.
    pub fn parse(text: &str, scenario: &BoxScenario) -> Result<BoxEvent, Error> {
        let malformed = |reason: String| Error::MalformedLabel {
            label: text.to_string(),
            reason,
        };
        let mut halves = text.split('|');
        let (out_part, set_part) = match (halves.next(), halves.next(), halves.next()) {
            (Some(o), Some(s), None) => (o, s),
            _ => return Err(malformed("expected exactly one '|'".into())),
        };
        let outcomes = parse_groups(out_part, &scenario.groups).map_err(&malformed)?;
        let settings = parse_groups(set_part, &scenario.groups).map_err(&malformed)?;
        let event = BoxEvent { settings, outcomes };
        scenario
            .validate_event(&event)
            .map_err(|reason| Error::UnresolvedLabel {
                label: text.to_string(),
                reason,
            })?;
        Ok(event)
    }
}

impl Ord for BoxEvent {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.outcomes, &self.settings).cmp(&(&other.outcomes, &other.settings))
    }
}

impl PartialOrd for BoxEvent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn render_groups(values: &[usize], groups: &[usize]) -> String {
    let mut parts = Vec::with_capacity(groups.len());
    let mut start = 0;
    for &g in groups {
        let chunk: Vec<String> = values[start..start + g]
            .iter()
            .map(usize::to_string)
            .collect();
        parts.push(chunk.join(","));
        start += g;
    }
    parts.join(";")
}

fn parse_groups(text: &str, groups: &[usize]) -> Result<Vec<usize>, String> {
    let chunks: Vec<&str> = text.split(';').collect();
    if chunks.len() != groups.len() {
        return Err(format!(
            "expected {} box group(s), found {}",
            groups.len(),
            chunks.len()
        ));
    }
    let mut values = Vec::new();
    for (chunk, &size) in chunks.iter().zip(groups) {
        let fields: Vec<&str> = chunk.split(',').collect();
        if fields.len() != size {
            return Err(format!(
                "box group {chunk:?} has {} part(ies), expected {size}",
                fields.len()
            ));
        }
        for field in fields {
            let v: usize = field
                .parse()
                .map_err(|_| format!("{field:?} is not an index"))?;
            values.push(v);
        }
    }
    Ok(values)
}

/// All tuples with `digit[i] < radixes[i]`, in lexicographic order.
fn odometer(radixes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; radixes.len()];
    'all: loop {
        out.push(current.clone());
        for i in (0..radixes.len()).rev() {
            current[i] += 1;
            if current[i] < radixes[i] {
                continue 'all;
            }
            current[i] = 0;
        }
        return out;
    }
}

/// An exact behavior: probabilities for every event of a scenario, stored
/// sparsely (absent events have probability zero) and normalized to 1 on
/// every context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Behavior {
    scenario: BoxScenario,
    table: BTreeMap<BoxEvent, Rational>,
}

impl Behavior {
    /// Validates entries (shape, range, uniqueness, [0,1]) and the
    /// per-context normalization, dropping explicit zeros.
    pub fn new(
        scenario: BoxScenario,
        entries: impl IntoIterator<Item = (BoxEvent, Rational)>,
    ) -> Result<Behavior, Error> {
        let mut table = BTreeMap::new();
        for (event, p) in entries {
            scenario
                .validate_event(&event)
                .map_err(Error::InvalidBehavior)?;
            if !in_unit_interval(&p) {
                return Err(Error::InvalidBehavior(format!(
                    "probability {p} of event {} is outside [0,1]",
                    event.label(&scenario)
                )));
            }
            if table.contains_key(&event) {
                return Err(Error::InvalidBehavior(format!(
                    "duplicate entry for event {}",
                    event.label(&scenario)
                )));
            }
            if !p.is_zero() {
                table.insert(event, p);
            }
        }
        let behavior = Behavior { scenario, table };
        for context in behavior.scenario.contexts() {
            let total: Rational = behavior
                .table
                .iter()
                .filter(|(e, _)| e.settings == context)
                .map(|(_, p)| p)
                .sum();
            if !total.is_one() {
                return Err(Error::InvalidBehavior(format!(
                    "context {context:?} sums to {total}, expected 1"
                )));
            }
        }
        Ok(behavior)
    }

    pub fn scenario(&self) -> &BoxScenario {
        &self.scenario
    }

    /// The probability of an event; zero when not in the table.
    pub fn probability(&self, event: &BoxEvent) -> Rational {
        self.table
            .get(event)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Events with nonzero probability, in canonical order.
    pub fn nonzero_events(&self) -> Vec<BoxEvent> {
        self.table.keys().cloned().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BoxEvent, &Rational)> {
        self.table.iter()
    }

    /// The product behavior of two independent experiments: parties are
    /// concatenated (box groups preserved) and probabilities multiply.
    pub fn product(&self, other: &Behavior) -> Behavior {
        let scenario = joint_scenario(&self.scenario, &other.scenario);
        let entries = self.table.iter().flat_map(|(e1, p1)| {
            other.table.iter().map(move |(e2, p2)| {
                let mut settings = e1.settings.clone();
                settings.extend_from_slice(&e2.settings);
                let mut outcomes = e1.outcomes.clone();
                outcomes.extend_from_slice(&e2.outcomes);
                (BoxEvent { settings, outcomes }, p1 * p2)
            })
        });
        Behavior::new(scenario, entries.collect::<Vec<_>>())
            .expect("product of normalized behaviors is normalized")
    }

    /// P(outcome at `party` under `context`), where `context` is a full
    /// settings tuple whose entry at `party` is the setting in question.
    pub fn marginal(&self, party: usize, outcome: usize, context: &[usize]) -> Rational {
        self.table
            .iter()
            .filter(|(e, _)| e.settings == context && e.outcomes[party] == outcome)
            .map(|(_, p)| p)
            .sum()
    }
}

/// The scenario of two experiments run side by side.
pub fn joint_scenario(a: &BoxScenario, b: &BoxScenario) -> BoxScenario {
    let mut outcomes = a.outcomes.clone();
    outcomes.extend_from_slice(&b.outcomes);
    let mut groups = a.groups.clone();
    groups.extend_from_slice(&b.groups);
    BoxScenario::with_groups(outcomes, groups).expect("two valid scenarios concatenate")
}

/// The PR box: two parties, binary settings and outcomes, P(a,b|x,y) = 1/2
/// when a ⊕ b = x·y and 0 otherwise. Exactly eight events carry
/// probability 1/2.
pub fn pr_box_behavior() -> Behavior {
    let scenario = BoxScenario::new(vec![vec![2, 2], vec![2, 2]]).expect("shape is valid");
    let mut entries = Vec::new();
    for x in 0..2usize {
        for y in 0..2usize {
            for a in 0..2usize {
                for b in 0..2usize {
                    if a ^ b == x & y {
                        entries.push((BoxEvent::new(vec![x, y], vec![a, b]), rat(1, 2)));
                    }
                }
            }
        }
    }
    Behavior::new(scenario, entries).expect("PR box is normalized")
}

/// A marginal of one party that depends on another party's setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalingDefect {
    pub party: usize,
    pub setting: usize,
    pub outcome: usize,
    pub context_a: Vec<usize>,
    pub marginal_a: Rational,
    pub context_b: Vec<usize>,
    pub marginal_b: Rational,
}

impl fmt::Display for SignalingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "party {} (setting {}, outcome {}): marginal {} under settings {:?} but {} under {:?}",
            self.party,
            self.setting,
            self.outcome,
            self.marginal_a,
            self.context_a,
            self.marginal_b,
            self.context_b
        )
    }
}

/// Checks that each party's marginals are independent of everyone else's
/// settings. Empty means no-signaling holds; otherwise one defect is
/// reported per (party, setting, outcome) whose marginal varies.
pub fn no_signaling_check(behavior: &Behavior) -> Vec<SignalingDefect> {
    let scenario = behavior.scenario();
    let mut defects = Vec::new();
    for party in 0..scenario.n_parties() {
        for setting in 0..scenario.n_settings(party) {
            for outcome in 0..scenario.n_outcomes(party, setting) {
                let contexts: Vec<Vec<usize>> = scenario
                    .contexts()
                    .into_iter()
                    .filter(|c| c[party] == setting)
                    .collect();
                let first = &contexts[0];
                let reference = behavior.marginal(party, outcome, first);
                for context in &contexts[1..] {
                    let m = behavior.marginal(party, outcome, context);
                    if m != reference {
                        defects.push(SignalingDefect {
                            party,
                            setting,
                            outcome,
                            context_a: first.clone(),
                            marginal_a: reference.clone(),
                            context_b: context.clone(),
                            marginal_b: m,
                        });
                        break;
                    }
                }
            }
        }
    }
    defects
}

/// True iff some party uses the same setting in both events but gets a
/// different outcome (local orthogonality). Symmetric and irreflexive.
pub fn are_locally_orthogonal(a: &BoxEvent, b: &BoxEvent) -> bool {
    a.settings
        .iter()
        .zip(&b.settings)
        .zip(a.outcomes.iter().zip(&b.outcomes))
        .any(|((sa, sb), (oa, ob))| sa == sb && oa != ob)
}

/// The exclusivity complex of a scenario: vertices are the given events
/// (all events when `support` is `None`), in canonical order, labeled by
/// their event labels. Facets are the per-context outcome sets plus all
/// locally orthogonal pairs, antichain-reduced — no larger cross-context
/// sets are added, since no-signaling alone never forces them.
pub fn lo_complex(
    scenario: &BoxScenario,
    support: Option<&[BoxEvent]>,
) -> Result<SimplicialComplex, Error> {
    let events: Vec<BoxEvent> = match support {
        None => scenario.events(),
        Some(given) => {
            for event in given {
                scenario
                    .validate_event(event)
                    .map_err(|reason| Error::UnresolvedLabel {
                        label: event.label(scenario),
                        reason,
                    })?;
            }
            let set: BTreeSet<BoxEvent> = given.iter().cloned().collect();
            set.into_iter().collect()
        }
    };
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut contexts: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    for (i, event) in events.iter().enumerate() {
        contexts.entry(&event.settings).or_default().push(i);
    }
    facets.extend(contexts.into_values());
    for (i, a) in events.iter().enumerate() {
        for (j, b) in events.iter().enumerate().skip(i + 1) {
            if are_locally_orthogonal(a, b) {
                facets.push(vec![i, j]);
            }
        }
    }
    let labels: Vec<String> = events.iter().map(|e| e.label(scenario)).collect();
    Ok(SimplicialComplex::from_maximal_sets(events.len(), facets).with_labels(labels))
}

/// Reads the complex's vertex labels as event labels and assigns each
/// vertex its probability under the behavior. The complex must carry
/// labels that parse in the behavior's scenario (as built by
/// [`lo_complex`]).
pub fn assignment_from_behavior(
    complex: &SimplicialComplex,
    behavior: &Behavior,
) -> Result<Assignment, Error> {
    let labels = complex.labels().ok_or(Error::MissingLabels)?;
    let mut values = Vec::with_capacity(labels.len());
    for label in labels {
        let event = BoxEvent::parse(label, behavior.scenario())?;
        values.push(behavior.probability(&event));
    }
    Assignment::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn named_complexes_have_expected_facets() {
        assert_eq!(
            pentagon().facets(),
            &[vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]
        );
        assert_eq!(pentagram().facets().len(), 10);
        assert!(pentagram().facets().iter().all(|f| f.len() == 2));
        assert_eq!(pentachoron().facets(), &[vec![0, 1, 2, 3, 4]]);
        assert!(cycle_complex(2).is_err());
        // K2 and the 1-simplex coincide.
        assert_eq!(
            complete_graph_complex(2).unwrap(),
            full_simplex_complex(2).unwrap()
        );
        assert_eq!(complete_graph_complex(1).unwrap().facets(), &[vec![0]]);
    }

    #[test]
    fn scenario_validation_catches_bad_shapes() {
        assert!(BoxScenario::new(vec![]).is_err());
        assert!(BoxScenario::new(vec![vec![]]).is_err());
        assert!(BoxScenario::new(vec![vec![2, 0]]).is_err());
        assert!(BoxScenario::with_groups(vec![vec![2], vec![2]], vec![1]).is_err());
        assert!(BoxScenario::with_groups(vec![vec![2], vec![2]], vec![1, 1]).is_ok());
    }

    #[test]
    fn labels_round_trip() {
        let pr = pr_box_behavior();
        let scenario = pr.scenario();
        let event = BoxEvent::new(vec![1, 0], vec![0, 1]);
        assert_eq!(event.label(scenario), "0,1|1,0");
        assert_eq!(BoxEvent::parse("0,1|1,0", scenario).unwrap(), event);

        let joint = joint_scenario(scenario, scenario);
        let joint_event = BoxEvent::new(vec![0, 0, 1, 1], vec![1, 1, 0, 1]);
        assert_eq!(joint_event.label(&joint), "1,1;0,1|0,0;1,1");
        assert_eq!(
            BoxEvent::parse("1,1;0,1|0,0;1,1", &joint).unwrap(),
            joint_event
        );

        for bad in [
            "0,1",       // no settings half
            "0,1|1,0|1", // two bars
            "0;1|1,0",   // wrong grouping
            "0,1,0|1,0", // too many parties
            "a,b|0,0",   // not indices
        ] {
            assert!(BoxEvent::parse(bad, scenario).is_err(), "{bad:?} parsed");
        }
        // Well-formed but out of range.
        assert!(matches!(
            BoxEvent::parse("0,2|0,0", scenario),
            Err(Error::UnresolvedLabel { .. })
        ));
    }

    #[test]
    fn pr_box_table_is_the_expected_eighth() {
        let pr = pr_box_behavior();
        assert_eq!(pr.scenario().events().len(), 16);
        let nonzero = pr.nonzero_events();
        assert_eq!(nonzero.len(), 8);
        assert!(nonzero.iter().all(|e| pr.probability(e) == rat(1, 2)));
        // a ⊕ b = xy decides membership.
        assert_eq!(
            pr.probability(&BoxEvent::new(vec![0, 0], vec![0, 0])),
            rat(1, 2)
        );
        assert_eq!(
            pr.probability(&BoxEvent::new(vec![0, 0], vec![0, 1])),
            rat_int(0)
        );
        assert_eq!(
            pr.probability(&BoxEvent::new(vec![1, 1], vec![0, 1])),
            rat(1, 2)
        );
        assert!(no_signaling_check(&pr).is_empty());
    }

    #[test]
    fn behavior_validation_enforces_normalization() {
        let scenario = BoxScenario::new(vec![vec![2, 2]]).unwrap();
        let short = Behavior::new(
            scenario.clone(),
            vec![(BoxEvent::new(vec![0], vec![0]), rat(1, 2))],
        );
        assert!(short.is_err());
        let ok = Behavior::new(
            scenario.clone(),
            vec![
                (BoxEvent::new(vec![0], vec![0]), rat(1, 2)),
                (BoxEvent::new(vec![0], vec![1]), rat(1, 2)),
                (BoxEvent::new(vec![1], vec![0]), rat_int(1)),
                (BoxEvent::new(vec![1], vec![1]), rat_int(0)),
            ],
        )
        .unwrap();
        // Explicit zeros are dropped from the sparse table.
        assert_eq!(ok.nonzero_events().len(), 3);
        let dup = Behavior::new(
            scenario,
            vec![
                (BoxEvent::new(vec![0], vec![0]), rat(1, 2)),
                (BoxEvent::new(vec![0], vec![0]), rat(1, 2)),
            ],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn signaling_is_detected() {
        // Party 0's outcome under x=0 copies party 1's setting: blatant
        // signaling from the second party to the first.
        let scenario = BoxScenario::new(vec![vec![2, 2], vec![2, 2]]).unwrap();
        let mut entries = Vec::new();
        for x in 0..2usize {
            for y in 0..2usize {
                let a = if x == 0 { y } else { 0 };
                entries.push((BoxEvent::new(vec![x, y], vec![a, 0]), rat_int(1)));
            }
        }
        let behavior = Behavior::new(scenario, entries).unwrap();
        let defects = no_signaling_check(&behavior);
        assert!(!defects.is_empty());
        let d = &defects[0];
        assert_eq!((d.party, d.setting), (0, 0));
        assert_ne!(d.marginal_a, d.marginal_b);
    }

    #[test]
    fn product_multiplies_tables() {
        let pr = pr_box_behavior();
        let joint = pr.product(&pr);
        assert_eq!(joint.scenario().n_parties(), 4);
        assert_eq!(joint.scenario().groups(), &[2, 2]);
        let nonzero = joint.nonzero_events();
        assert_eq!(nonzero.len(), 64);
        assert!(nonzero.iter().all(|e| joint.probability(e) == rat(1, 4)));
        let named = BoxEvent::parse("1,1;1,1|0,0;0,0", joint.scenario()).unwrap();
        assert_eq!(joint.probability(&named), rat(1, 4));
        assert!(no_signaling_check(&joint).is_empty());
    }

    #[test]
    fn product_with_deterministic_box_keeps_the_table() {
        let pr = pr_box_behavior();
        // One party, one setting, one outcome: certain.
        let point = Behavior::new(
            BoxScenario::new(vec![vec![1]]).unwrap(),
            vec![(BoxEvent::new(vec![0], vec![0]), rat_int(1))],
        )
        .unwrap();
        let joint = pr.product(&point);
        assert_eq!(joint.nonzero_events().len(), 8);
        for event in pr.nonzero_events() {
            let mut settings = event.settings.clone();
            settings.push(0);
            let mut outcomes = event.outcomes.clone();
            outcomes.push(0);
            assert_eq!(
                joint.probability(&BoxEvent::new(settings, outcomes)),
                pr.probability(&event)
            );
        }
    }

    #[test]
    fn local_orthogonality_relation() {
        let a = BoxEvent::new(vec![0, 1], vec![0, 0]);
        let b = BoxEvent::new(vec![0, 0], vec![1, 1]);
        // Party 0 shares setting 0 and differs in outcome.
        assert!(are_locally_orthogonal(&a, &b));
        assert!(are_locally_orthogonal(&b, &a));
        assert!(!are_locally_orthogonal(&a, &a));
        // Same settings, same outcomes at the shared setting.
        let c = BoxEvent::new(vec![0, 0], vec![0, 1]);
        assert!(are_locally_orthogonal(&b, &c)); // party 1: setting 0, outcomes differ
        let d = BoxEvent::new(vec![1, 0], vec![0, 1]);
        assert!(!are_locally_orthogonal(&c, &d)); // party 0 settings differ; party 1 agrees
    }

    #[test]
    fn lo_complex_of_one_context_is_its_outcome_set() {
        let scenario = BoxScenario::new(vec![vec![3]]).unwrap();
        let complex = lo_complex(&scenario, None).unwrap();
        assert_eq!(complex.n_vertices(), 3);
        assert_eq!(complex.facets(), &[vec![0, 1, 2]]);
        assert_eq!(complex.label(0), Some("0|0"));
    }

    #[test]
    fn lo_complex_respects_support_and_labels() {
        let pr = pr_box_behavior();
        let support = pr.nonzero_events();
        let complex = lo_complex(pr.scenario(), Some(&support)).unwrap();
        assert_eq!(complex.n_vertices(), 8);
        assert!(complex.is_valid());
        // Context facets carry two (not four) events inside the support.
        assert!(complex.facets().iter().all(|f| f.len() == 2));
        let assignment = assignment_from_behavior(&complex, &pr).unwrap();
        assert!(assignment.values().iter().all(|p| *p == rat(1, 2)));

        // The full event universe keeps four-outcome context facets.
        let full = lo_complex(pr.scenario(), None).unwrap();
        assert_eq!(full.n_vertices(), 16);
        assert!(full.facets().iter().any(|f| f.len() == 4));
        let full_assignment = assignment_from_behavior(&full, &pr).unwrap();
        assert_eq!(full_assignment.total(), rat_int(4));
    }

    #[test]
    fn assignment_requires_labels() {
        let pr = pr_box_behavior();
        let unlabeled = SimplicialComplex::from_maximal_sets(2, vec![vec![0, 1]]);
        assert!(matches!(
            assignment_from_behavior(&unlabeled, &pr),
            Err(Error::MissingLabels)
        ));
    }
}
