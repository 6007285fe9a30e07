//! Necessary conditions CC1-CC3 for a spread to be a common cause of an
//! inconsistent outcome vector, checked on concrete models.
//!
//! Passing all three conditions never certifies a common cause; the
//! conditions are necessary only.

use serde::Serialize;

use crate::causal::CausalModel;
use crate::error::{Error, Result};
use crate::event::{
    atomic_spreads_at, consistency_grade, consistent_unchecked, is_spacelike,
    is_vector_consistent, validate_spread, NSpread, OutcomeVector, Spread,
};

/// Largest cover set expanded into atomic candidates.
pub const MAX_CANDIDATE_COVERS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl Condition {
    fn from_witnesses(witnesses: Vec<String>) -> Condition {
        Condition {
            pass: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Which term of the vector an outcome of the candidate is inconsistent with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Screening {
    pub outcome: String,
    pub screened_by: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommonCauseReport {
    pub spread: String,
    pub nspread: String,
    pub vector: Vec<String>,
    /// Failures are `initial-point !< outcome-point` pairs.
    pub cc1: Condition,
    /// Failures name outcomes inconsistent with the initials.
    pub cc2: Condition,
    /// Failures name outcomes screening off no term.
    pub cc3: Condition,
    pub screening: Vec<Screening>,
    pub pass: bool,
}

fn check_target(model: &CausalModel, ns: &NSpread, c: &OutcomeVector) -> Result<()> {
    if !is_spacelike(model, ns)? {
        return Err(Error::PreconditionFailed(format!(
            "{} is not space-like",
            ns.name()
        )));
    }
    if !consistency_grade(model, ns)?.one_consistent {
        return Err(Error::PreconditionFailed(format!(
            "{} is not 1-consistent",
            ns.name()
        )));
    }
    if c.indices().len() != ns.len() {
        return Err(Error::PreconditionFailed("vector length mismatch".into()));
    }
    if is_vector_consistent(model, ns, c) {
        return Err(Error::NotInconsistencyType(c.names(ns).join(", ")));
    }
    Ok(())
}

fn evaluate(model: &CausalModel, sigma: &Spread, ns: &NSpread, c: &OutcomeVector) -> CommonCauseReport {
    let mut cc1 = Vec::new();
    for s in ns.spreads() {
        for o in s.outcomes() {
            for &p in sigma.initial().points() {
                for &q in o.points() {
                    if !model.less(p, q) {
                        cc1.push(format!("{} !< {}", model.label(p), model.label(q)));
                    }
                }
            }
        }
    }
    cc1.dedup();

    let initials = ns.initials();
    let cc2: Vec<String> = sigma
        .outcomes()
        .iter()
        .filter(|o| !consistent_unchecked(model, &initials, &[o]))
        .map(|o| o.name().to_string())
        .collect();

    let terms = c.terms(ns);
    let screening: Vec<Screening> = sigma
        .outcomes()
        .iter()
        .map(|o| Screening {
            outcome: o.name().to_string(),
            screened_by: terms
                .iter()
                .find(|t| !consistent_unchecked(model, &[], &[o, t]))
                .map(|t| t.name().to_string()),
        })
        .collect();
    let cc3: Vec<String> = screening
        .iter()
        .filter(|s| s.screened_by.is_none())
        .map(|s| s.outcome.clone())
        .collect();

    let cc1 = Condition::from_witnesses(cc1);
    let cc2 = Condition::from_witnesses(cc2);
    let cc3 = Condition::from_witnesses(cc3);
    CommonCauseReport {
        spread: sigma.name().to_string(),
        nspread: ns.name().to_string(),
        vector: c.names(ns),
        pass: cc1.pass && cc2.pass && cc3.pass,
        cc1,
        cc2,
        cc3,
        screening,
    }
}

/// Checks CC1 (causal priority), CC2 (consistency with the initials) and
/// CC3 (screening off) for `sigma` against the inconsistent vector `c`.
pub fn check_common_cause(
    model: &CausalModel,
    sigma: &Spread,
    ns: &NSpread,
    c: &OutcomeVector,
) -> Result<CommonCauseReport> {
    check_target(model, ns, c)?;
    Ok(evaluate(model, sigma, ns, c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub targets: usize,
    pub candidates_examined: usize,
    pub passing: Vec<String>,
    pub skipped_points: Vec<String>,
    /// True when no target vectors were supplied, so every candidate passes.
    pub vacuous: bool,
}

/// Every valid atomic spread of the model, in point order.
pub fn atomic_candidates(model: &CausalModel) -> (Vec<Spread>, Vec<String>) {
    let mut candidates = Vec::new();
    let mut skipped = Vec::new();
    for p in model.points() {
        match atomic_spreads_at(model, p, MAX_CANDIDATE_COVERS) {
            Some(found) => candidates.extend(
                found
                    .into_iter()
                    .filter(|s| validate_spread(model, s).passed()),
            ),
            None => skipped.push(model.label(p).to_string()),
        }
    }
    (candidates, skipped)
}

/// Scans atomic spreads (point initial, point outcomes among its covers) for
/// ones meeting CC1-CC3 against every target.
pub fn search_common_causes(
    model: &CausalModel,
    targets: &[(&NSpread, OutcomeVector)],
) -> Result<SearchReport> {
    for (ns, c) in targets {
        check_target(model, ns, c)?;
    }
    let (candidates, skipped) = atomic_candidates(model);
    let passing = candidates
        .iter()
        .filter(|s| targets.iter().all(|(ns, c)| evaluate(model, s, ns, c).pass))
        .map(|s| s.name().to_string())
        .collect();
    Ok(SearchReport {
        targets: targets.len(),
        candidates_examined: candidates.len(),
        passing,
        skipped_points: skipped,
        vacuous: targets.is_empty(),
    })
}

/// Every inconsistent outcome vector of each n-spread, paired with it.
pub fn inconsistent_targets<'a>(
    model: &CausalModel,
    nspreads: &[&'a NSpread],
) -> Vec<(&'a NSpread, OutcomeVector)> {
    nspreads
        .iter()
        .flat_map(|ns| {
            crate::event::enumerate_outcome_vectors(ns)
                .into_iter()
                .filter(|v| !is_vector_consistent(model, ns, v))
                .map(move |v| (*ns, v))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// A single history.
    Deterministic,
    Indeterministic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelEvidence {
    pub label: String,
    pub inconsistent_vectors: usize,
    pub candidates_examined: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: Level,
    pub histories: usize,
    pub evidence: Option<LevelEvidence>,
}

/// Level I when there is one history. Otherwise indeterministic, with
/// evidence for strange correlations attached when the supplied n-spreads
/// have inconsistent vectors and no atomic candidate meets CC1-CC3 for all of
/// them. The evidence is not a proof of membership.
pub fn classify_determinism(model: &CausalModel, nspreads: &[&NSpread]) -> Result<LevelReport> {
    let histories = model.histories().len();
    if histories == 1 {
        return Ok(LevelReport {
            level: Level::Deterministic,
            histories,
            evidence: None,
        });
    }
    let targets = inconsistent_targets(model, nspreads);
    let evidence = if targets.is_empty() {
        None
    } else {
        let search = search_common_causes(model, &targets)?;
        search.passing.is_empty().then(|| LevelEvidence {
            label: "level III evidence (not proof): no atomic spread meets CC1-CC3 for every inconsistent vector".into(),
            inconsistent_vectors: targets.len(),
            candidates_examined: search.candidates_examined,
        })
    };
    Ok(LevelReport {
        level: Level::Indeterministic,
        histories,
        evidence,
    })
}
