//! Persistent JSON formats for complexes, behaviors, and bound results.
//!
//! Canonical internal ordering plus fixed field order makes serialization
//! deterministic: loading a written file and writing it again reproduces
//! the bytes. Rationals are carried as decimal strings (numerator and
//! denominator separately for bound results, `"p/q"` for behavior tables)
//! so no integer-width assumption leaks into the files.

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundResult, ProductCeBound};
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::rational::{parse_rational, Rational};
use crate::scenarios::{Behavior, BoxEvent, BoxScenario};

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n_vertices: usize,
    facets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
}

/// Renders a complex in the canonical file format.
pub fn complex_to_json(complex: &SimplicialComplex) -> String {
    let doc = ComplexJson {
        n_vertices: complex.n_vertices(),
        facets: complex.facets().to_vec(),
        labels: complex.labels().map(<[String]>::to_vec),
    };
    pretty(&doc)
}

/// Parses a complex file. Structural defects (nested facets, stray
/// indices, label mismatches) are preserved for [`SimplicialComplex::validate`]
/// rather than rejected here, so a `validate` command can report them.
pub fn complex_from_json(text: &str) -> Result<SimplicialComplex, Error> {
    let doc: ComplexJson = serde_json::from_str(text).map_err(|e| Error::InvalidField {
        field: "complex".into(),
        reason: e.to_string(),
    })?;
    let complex = SimplicialComplex::new(doc.n_vertices, doc.facets);
    Ok(match doc.labels {
        Some(labels) => complex.with_labels(labels),
        None => complex,
    })
}

#[derive(Serialize, Deserialize)]
struct RationalJson {
    num: String,
    den: String,
}

fn rational_to_json(r: &Rational) -> RationalJson {
    RationalJson {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
}

#[cfg(test)]
fn rational_from_json(r: &RationalJson) -> Result<Rational, Error> {
    use num_traits::Zero;
    use std::str::FromStr;

    let malformed = || Error::MalformedRational {
        input: format!("{}/{}", r.num, r.den),
    };
    let num = num_bigint::BigInt::from_str(r.num.trim()).map_err(|_| malformed())?;
    let den = num_bigint::BigInt::from_str(r.den.trim()).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(malformed());
    }
    Ok(Rational::new(num, den))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BoundValueJson {
    Root { base: RationalJson, root: u32 },
    Plain(RationalJson),
}

#[derive(Serialize, Deserialize)]
struct BoundJson {
    class: String,
    value: BoundValueJson,
    witness: Vec<RationalJson>,
    certificate: Vec<RationalJson>,
}

/// Renders an E/CE/NCHV bound result.
pub fn bound_to_json(result: &BoundResult) -> String {
    let doc = BoundJson {
        class: result.class.to_string(),
        value: BoundValueJson::Plain(rational_to_json(&result.value)),
        witness: result
            .witness
            .values()
            .iter()
            .map(rational_to_json)
            .collect(),
        certificate: result.certificate.iter().map(rational_to_json).collect(),
    };
    pretty(&doc)
}

/// Renders a k-copy CE bound: class `CEk`, value `{base, root}` in its
/// canonical form (the degree divides the copy count and may be 1), and
/// the witness/certificate of the underlying product-complex LP.
pub fn product_bound_to_json(bound: &ProductCeBound) -> String {
    let doc = BoundJson {
        class: "CEk".to_string(),
        value: BoundValueJson::Root {
            base: rational_to_json(bound.value.base()),
            root: bound.value.degree(),
        },
        witness: bound
            .product
            .witness
            .values()
            .iter()
            .map(rational_to_json)
            .collect(),
        certificate: bound
            .product
            .certificate
            .iter()
            .map(rational_to_json)
            .collect(),
    };
    pretty(&doc)
}

#[derive(Serialize, Deserialize)]
struct BehaviorEntryJson {
    settings: Vec<usize>,
    outcomes: Vec<usize>,
    p: String,
}

#[derive(Serialize, Deserialize)]
struct BehaviorJson {
    parties: usize,
    settings: Vec<usize>,
    outcomes: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    groups: Option<Vec<usize>>,
    table: Vec<BehaviorEntryJson>,
}

/// Renders a behavior: scenario shape, box grouping, and the nonzero
/// table entries in canonical event order. Omitted events are zero.
pub fn behavior_to_json(behavior: &Behavior) -> String {
    let scenario = behavior.scenario();
    let doc = BehaviorJson {
        parties: scenario.n_parties(),
        settings: (0..scenario.n_parties())
            .map(|p| scenario.n_settings(p))
            .collect(),
        outcomes: (0..scenario.n_parties())
            .map(|p| {
                (0..scenario.n_settings(p))
                    .map(|s| scenario.n_outcomes(p, s))
                    .collect()
            })
            .collect(),
        groups: Some(scenario.groups().to_vec()),
        table: behavior
            .entries()
            .map(|(event, p)| BehaviorEntryJson {
                settings: event.settings.clone(),
                outcomes: event.outcomes.clone(),
                p: p.to_string(),
            })
            .collect(),
    };
    pretty(&doc)
}

/// Parses a behavior file, rebuilding and re-validating the scenario and
/// the normalization. A missing `groups` field means one box of all
/// parties.
pub fn behavior_from_json(text: &str) -> Result<Behavior, Error> {
    let doc: BehaviorJson = serde_json::from_str(text).map_err(|e| Error::InvalidField {
        field: "behavior".into(),
        reason: e.to_string(),
    })?;
    if doc.outcomes.len() != doc.parties {
        return Err(Error::InvalidField {
            field: "outcomes".into(),
            reason: format!(
                "{} parties declared but {} outcome rows",
                doc.parties,
                doc.outcomes.len()
            ),
        });
    }
    for (party, (declared, row)) in doc.settings.iter().zip(&doc.outcomes).enumerate() {
        if *declared != row.len() {
            return Err(Error::InvalidField {
                field: "settings".into(),
                reason: format!(
                    "party {party} declares {declared} settings but lists {} outcome counts",
                    row.len()
                ),
            });
        }
    }
    if doc.settings.len() != doc.parties {
        return Err(Error::InvalidField {
            field: "settings".into(),
            reason: format!(
                "{} parties declared but {} setting counts",
                doc.parties,
                doc.settings.len()
            ),
        });
    }
    let groups = doc.groups.unwrap_or_else(|| vec![doc.parties]);
    let scenario = BoxScenario::with_groups(doc.outcomes, groups)?;
    let mut entries = Vec::with_capacity(doc.table.len());
    for entry in doc.table {
        entries.push((
            BoxEvent::new(entry.settings, entry.outcomes),
            parse_rational(&entry.p)?,
        ));
    }
    Behavior::new(scenario, entries)
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("plain data serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use std::str::FromStr;

    use num_bigint::BigInt;

    use super::*;
    use crate::bounds::e_bound;
    use crate::rational::{rat, rat_int};
    use crate::scenarios::{pentagon, pr_box_behavior};

    #[test]
    fn complex_round_trip_is_byte_stable() {
        let complex = pentagon().with_labels((0..5).map(|i| format!("e{i}")).collect::<Vec<_>>());
        let text = complex_to_json(&complex);
        let reloaded = complex_from_json(&text).unwrap();
        assert_eq!(reloaded, complex);
        assert_eq!(complex_to_json(&reloaded), text);
    }

    #[test]
    fn unlabeled_complex_omits_the_labels_field() {
        let text = complex_to_json(&pentagon());
        assert!(!text.contains("labels"));
        let reloaded = complex_from_json(&text).unwrap();
        assert_eq!(reloaded, pentagon());
    }

    #[test]
    fn invalid_complexes_load_for_diagnosis() {
        let text = r#"{"n_vertices": 2, "facets": [[0, 5]]}"#;
        let complex = complex_from_json(text).unwrap();
        assert!(!complex.is_valid());
        assert!(complex_from_json("{").is_err());
    }

    #[test]
    fn behavior_round_trip_is_byte_stable() {
        let pr = pr_box_behavior();
        let text = behavior_to_json(&pr);
        let reloaded = behavior_from_json(&text).unwrap();
        assert_eq!(reloaded, pr);
        assert_eq!(behavior_to_json(&reloaded), text);

        let product = pr.product(&pr);
        let text = behavior_to_json(&product);
        assert_eq!(behavior_from_json(&text).unwrap(), product);
    }

    #[test]
    fn behavior_json_rejects_shape_mismatches() {
        let bad_rows = r#"{"parties": 2, "settings": [2, 2], "outcomes": [[2, 2]], "table": []}"#;
        assert!(behavior_from_json(bad_rows).is_err());
        let bad_settings = r#"{"parties": 1, "settings": [1], "outcomes": [[2, 2]], "table": []}"#;
        assert!(behavior_from_json(bad_settings).is_err());
        let unnormalized = r#"{"parties": 1, "settings": [1], "outcomes": [[2]],
            "table": [{"settings": [0], "outcomes": [0], "p": "1/3"}]}"#;
        assert!(behavior_from_json(unnormalized).is_err());
    }

    #[test]
    fn bound_json_carries_exact_rationals() {
        let result = e_bound(&pentagon());
        let text = bound_to_json(&result);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["class"], "E");
        assert_eq!(doc["value"]["num"], "5");
        assert_eq!(doc["value"]["den"], "2");
        assert_eq!(doc["witness"].as_array().unwrap().len(), 5);
        assert!(!doc["certificate"].as_array().unwrap().is_empty());
    }

    #[test]
    fn product_bound_json_uses_base_and_root() {
        let bound = crate::bounds::ce_product_bound(&pentagon(), 2).unwrap();
        let text = product_bound_to_json(&bound);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["class"], "CEk");
        assert_eq!(doc["value"]["base"]["num"], "5");
        assert_eq!(doc["value"]["base"]["den"], "1");
        assert_eq!(doc["value"]["root"], 2);
    }

    #[test]
    fn rational_strings_survive_width_and_sign() {
        let big = Rational::new(
            BigInt::from_str("123456789012345678901234567890").unwrap(),
            BigInt::from_str("7").unwrap(),
        );
        let json = rational_to_json(&big);
        assert_eq!(rational_from_json(&json).unwrap(), big);
        let negative = rational_from_json(&RationalJson {
            num: "-3".into(),
            den: "6".into(),
        })
        .unwrap();
        assert_eq!(negative, rat(-1, 2));
        assert!(rational_from_json(&RationalJson {
            num: "1".into(),
            den: "0".into(),
        })
        .is_err());
        let denominator_sign = rational_from_json(&RationalJson {
            num: "1".into(),
            den: "-2".into(),
        })
        .unwrap();
        assert_eq!(denominator_sign, rat(-1, 2));
        assert_eq!(
            rational_from_json(&rational_to_json(&rat_int(0))).unwrap(),
            rat_int(0)
        );
    }
}
