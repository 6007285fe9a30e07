//! JSON model documents: points, order pairs, named events, spreads and
//! n-spreads. Maps are ordered so serialization is byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::causal::CausalModel;
use crate::error::{Error, Result};
use crate::event::{Event, NSpread, Spread};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadSpec {
    pub initial: String,
    pub outcomes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub version: u32,
    pub points: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default)]
    pub events: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub spreads: BTreeMap<String, SpreadSpec>,
    #[serde(default)]
    pub nspreads: BTreeMap<String, Vec<String>>,
}

/// A document after every name has been bound to model objects.
#[derive(Debug, Clone)]
pub struct ResolvedModel {
    pub model: CausalModel,
    pub events: BTreeMap<String, Event>,
    pub spreads: BTreeMap<String, Spread>,
    pub nspreads: BTreeMap<String, NSpread>,
}

impl ModelDocument {
    pub fn new(points: Vec<String>, order: Vec<(String, String)>) -> ModelDocument {
        ModelDocument {
            version: SCHEMA_VERSION,
            points,
            order,
            events: BTreeMap::new(),
            spreads: BTreeMap::new(),
            nspreads: BTreeMap::new(),
        }
    }

    /// Builds the model and binds every name. Errors from `CausalModel::build`
    /// pass through unchanged; dangling names in events, spreads and n-spreads
    /// become [`Error::UnknownReference`].
    pub fn resolve(&self) -> Result<ResolvedModel> {
        if self.version != SCHEMA_VERSION {
            return Err(Error::UnsupportedVersion(self.version));
        }
        let model = CausalModel::build(&self.points, &self.order)?;

        let mut events = BTreeMap::new();
        for (name, labels) in &self.events {
            let points = labels
                .iter()
                .map(|l| {
                    model
                        .resolve(l)
                        .map_err(|_| Error::UnknownReference(l.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            events.insert(name.clone(), Event::new(&model, name.clone(), &points)?);
        }

        let lookup = |name: &String| {
            events
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnknownReference(name.clone()))
        };
        let mut spreads = BTreeMap::new();
        for (name, spec) in &self.spreads {
            let initial = lookup(&spec.initial)?;
            let outcomes = spec.outcomes.iter().map(lookup).collect::<Result<Vec<_>>>()?;
            spreads.insert(name.clone(), Spread::new(name.clone(), initial, outcomes)?);
        }

        let mut nspreads = BTreeMap::new();
        for (name, members) in &self.nspreads {
            let list = members
                .iter()
                .map(|s| {
                    spreads
                        .get(s)
                        .cloned()
                        .ok_or_else(|| Error::UnknownReference(s.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            nspreads.insert(name.clone(), NSpread::new(name.clone(), list)?);
        }

        Ok(ResolvedModel {
            model,
            events,
            spreads,
            nspreads,
        })
    }
}

impl ResolvedModel {
    pub fn event(&self, name: &str) -> Result<&Event> {
        self.events
            .get(name)
            .ok_or_else(|| Error::UnknownReference(name.to_string()))
    }

    pub fn spread(&self, name: &str) -> Result<&Spread> {
        self.spreads
            .get(name)
            .ok_or_else(|| Error::UnknownReference(name.to_string()))
    }

    pub fn nspread(&self, name: &str) -> Result<&NSpread> {
        self.nspreads
            .get(name)
            .ok_or_else(|| Error::UnknownReference(name.to_string()))
    }
}

/// The two-station decay model: a point `d` branches to `d+`/`d-`, and each
/// branch forces an anticorrelated pair of station outcomes. `(a+_1, a+_2)`
/// and `(a-_1, a-_2)` are the inconsistent vectors of `Sigma_12`.
pub fn toy_decay_document() -> ModelDocument {
    let pts = [
        "d", "d+", "d-", "I_1", "a+_1", "a-_1", "I_2", "a+_2", "a-_2", "T+", "T-",
    ];
    let order = [
        ("d", "d+"),
        ("d", "d-"),
        ("I_1", "a+_1"),
        ("I_1", "a-_1"),
        ("I_2", "a+_2"),
        ("I_2", "a-_2"),
        ("d+", "a+_1"),
        ("d+", "a-_2"),
        ("d-", "a-_1"),
        ("d-", "a+_2"),
        ("a+_1", "T+"),
        ("a-_2", "T+"),
        ("a-_1", "T-"),
        ("a+_2", "T-"),
    ];
    let mut doc = ModelDocument::new(
        pts.iter().map(|s| s.to_string()).collect(),
        order
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    );
    for p in ["d", "d+", "d-", "I_1", "a+_1", "a-_1", "I_2", "a+_2", "a-_2"] {
        doc.events.insert(p.to_string(), vec![p.to_string()]);
    }
    let spread = |i: &str, os: &[&str]| SpreadSpec {
        initial: i.to_string(),
        outcomes: os.iter().map(|s| s.to_string()).collect(),
    };
    doc.spreads.insert("decay".into(), spread("d", &["d+", "d-"]));
    doc.spreads.insert("sigma_1".into(), spread("I_1", &["a+_1", "a-_1"]));
    doc.spreads.insert("sigma_2".into(), spread("I_2", &["a+_2", "a-_2"]));
    doc.nspreads
        .insert("Sigma_12".into(), vec!["sigma_1".into(), "sigma_2".into()]);
    doc
}
