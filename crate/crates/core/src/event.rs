//! Events, spreads and n-spreads over a [`CausalModel`], with the
//! history-based consistency notions built on them.
//!
//! Initial events enter a consistency question by being *contained* in the
//! witnessing history; outcome events only need to *overlap* it.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::Serialize;

use crate::causal::{CausalModel, Point};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::report::{ValidationReport, Violation};

/// A named nonempty set of point events of one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    name: String,
    points: Vec<Point>,
    members: FixedBitSet,
}

impl Event {
    pub fn new(model: &CausalModel, name: impl Into<String>, points: &[Point]) -> Result<Event> {
        let name = name.into();
        if points.is_empty() {
            return Err(Error::EmptyEvent(name));
        }
        let mut points = points.to_vec();
        points.sort();
        points.dedup();
        Ok(Event {
            members: model.set_of(&points),
            name,
            points,
        })
    }

    pub fn from_labels<S: AsRef<str>>(
        model: &CausalModel,
        name: impl Into<String>,
        labels: &[S],
    ) -> Result<Event> {
        let points = model.resolve_all(labels)?;
        Event::new(model, name, &points)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EventClassification {
    pub is_initial: bool,
    pub is_outcome: bool,
    pub is_stable: bool,
}

/// Initial: nonempty upper-bounded chain. Outcome: nonempty lower-bounded
/// chain. Stable: both, and contained in every history it overlaps.
///
/// A finite nonempty chain is bounded above by its maximum and below by its
/// minimum, so both roles reduce to being a chain.
pub fn classify_event(model: &CausalModel, event: &Event) -> EventClassification {
    let chain = model.is_chain(event.points());
    let stable = chain
        && model
            .histories()
            .iter()
            .filter(|h| h.overlaps(event.members()))
            .all(|h| h.contains_all(event.members()));
    EventClassification {
        is_initial: chain,
        is_outcome: chain,
        is_stable: stable,
    }
}

/// True iff some history contains every initial and overlaps every outcome.
/// No role checks; see [`is_consistent`].
pub fn consistent_unchecked(model: &CausalModel, initials: &[&Event], outcomes: &[&Event]) -> bool {
    model.histories().iter().any(|h| {
        initials.iter().all(|e| h.contains_all(e.members()))
            && outcomes.iter().all(|e| h.overlaps(e.members()))
    })
}

pub fn is_consistent(model: &CausalModel, initials: &[&Event], outcomes: &[&Event]) -> Result<bool> {
    for e in initials {
        if !classify_event(model, e).is_initial {
            return Err(Error::MisclassifiedEvent {
                event: e.name().to_string(),
                role: "an initial event",
            });
        }
    }
    for e in outcomes {
        if !classify_event(model, e).is_outcome {
            return Err(Error::MisclassifiedEvent {
                event: e.name().to_string(),
                role: "an outcome event",
            });
        }
    }
    Ok(consistent_unchecked(model, initials, outcomes))
}

/// An initial event with its alternative outcomes, in declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spread {
    name: String,
    initial: Event,
    outcomes: Vec<Event>,
}

impl Spread {
    pub fn new(name: impl Into<String>, initial: Event, outcomes: Vec<Event>) -> Result<Spread> {
        let name = name.into();
        if outcomes.is_empty() {
            return Err(Error::EmptySpread(name));
        }
        Ok(Spread {
            name,
            initial,
            outcomes,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn initial(&self) -> &Event {
        &self.initial
    }

    pub fn outcomes(&self) -> &[Event] {
        &self.outcomes
    }
}

/// Checks role classification and conditions i-iii.
///
/// Condition i is read strictly: every point of the initial lies below every
/// point of each outcome.
pub fn validate_spread(model: &CausalModel, spread: &Spread) -> ValidationReport {
    let mut violations = Vec::new();
    let init = spread.initial();

    if !classify_event(model, init).is_initial {
        violations.push(Violation::new(
            "initial is not an initial event",
            vec![init.name().to_string()],
        ));
    }
    for o in spread.outcomes() {
        if !classify_event(model, o).is_outcome {
            violations.push(Violation::new(
                "outcome is not an outcome event",
                vec![o.name().to_string()],
            ));
        }
    }

    for o in spread.outcomes() {
        for &p in init.points() {
            if let Some(&q) = o.points().iter().find(|&&q| !model.less(p, q)) {
                violations.push(Violation::new(
                    "condition i: initial does not causally precede outcome",
                    vec![
                        o.name().to_string(),
                        model.label(p).to_string(),
                        model.label(q).to_string(),
                    ],
                ));
                break;
            }
        }
    }

    for h in model.histories() {
        if !h.contains_all(init.members()) {
            continue;
        }
        let hit: Vec<&Event> = spread
            .outcomes()
            .iter()
            .filter(|o| h.overlaps(o.members()))
            .collect();
        let top = format!("history:{}", model.label(h.top()));
        if hit.is_empty() {
            violations.push(Violation::new(
                "condition ii: history containing the initial overlaps no outcome",
                vec![top],
            ));
        }
    }
    for h in model.histories() {
        let hit: Vec<&Event> = spread
            .outcomes()
            .iter()
            .filter(|o| h.overlaps(o.members()))
            .collect();
        if hit.len() > 1 {
            let mut w = vec![format!("history:{}", model.label(h.top()))];
            w.extend(hit.iter().map(|o| o.name().to_string()));
            violations.push(Violation::new(
                "condition iii: history overlaps two distinct outcomes",
                w,
            ));
        }
    }

    ValidationReport::from_violations(format!("spread:{}", spread.name()), violations)
}

/// A nonempty finite sequence of spreads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSpread {
    name: String,
    spreads: Vec<Spread>,
}

impl NSpread {
    pub fn new(name: impl Into<String>, spreads: Vec<Spread>) -> Result<NSpread> {
        let name = name.into();
        if spreads.is_empty() {
            return Err(Error::EmptyNSpread(name));
        }
        Ok(NSpread { name, spreads })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spreads(&self) -> &[Spread] {
        &self.spreads
    }

    pub fn len(&self) -> usize {
        self.spreads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spreads.is_empty()
    }

    pub fn initials(&self) -> Vec<&Event> {
        self.spreads.iter().map(|s| s.initial()).collect()
    }
}

/// One outcome per spread, stored as indices into each spread's outcomes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeVector(Vec<usize>);

impl OutcomeVector {
    pub fn new(indices: Vec<usize>) -> OutcomeVector {
        OutcomeVector(indices)
    }

    /// Looks terms up by event name; term `i` must name an outcome of spread `i`.
    pub fn from_names<S: AsRef<str>>(ns: &NSpread, names: &[S]) -> Result<OutcomeVector> {
        if names.len() != ns.len() {
            return Err(Error::PreconditionFailed(format!(
                "vector has {} terms but {} has {} spreads",
                names.len(),
                ns.name(),
                ns.len()
            )));
        }
        names
            .iter()
            .zip(ns.spreads())
            .map(|(n, s)| {
                s.outcomes()
                    .iter()
                    .position(|o| o.name() == n.as_ref())
                    .ok_or_else(|| Error::UnknownReference(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(OutcomeVector)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn terms<'a>(&self, ns: &'a NSpread) -> Vec<&'a Event> {
        self.0
            .iter()
            .zip(ns.spreads())
            .map(|(&i, s)| &s.outcomes()[i])
            .collect()
    }

    pub fn names(&self, ns: &NSpread) -> Vec<String> {
        self.terms(ns).iter().map(|e| e.name().to_string()).collect()
    }
}

/// The full product of outcome sets, lexicographic in declared outcome order.
pub fn enumerate_outcome_vectors(ns: &NSpread) -> Vec<OutcomeVector> {
    ns.spreads()
        .iter()
        .map(|s| 0..s.outcomes().len())
        .multi_cartesian_product()
        .map(OutcomeVector)
        .collect()
}

pub fn is_vector_consistent(model: &CausalModel, ns: &NSpread, v: &OutcomeVector) -> bool {
    consistent_unchecked(model, &[], &v.terms(ns))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradeReport {
    pub nspread: String,
    pub minimal: bool,
    pub one_consistent: bool,
    pub maximal: bool,
    pub vector_count: usize,
    pub inconsistent_vectors: Vec<Vec<String>>,
}

fn ensure_valid(model: &CausalModel, ns: &NSpread) -> Result<()> {
    for s in ns.spreads() {
        let r = validate_spread(model, s);
        if !r.passed() {
            return Err(Error::InvalidSpread {
                name: s.name().to_string(),
                reason: r.violations[0].message.clone(),
            });
        }
    }
    Ok(())
}

pub fn consistency_grade(model: &CausalModel, ns: &NSpread) -> Result<GradeReport> {
    consistency_grade_with(model, ns, Execution::default())
}

pub fn consistency_grade_with(
    model: &CausalModel,
    ns: &NSpread,
    exec: Execution,
) -> Result<GradeReport> {
    ensure_valid(model, ns)?;
    let initials = ns.initials();
    let minimal = consistent_unchecked(model, &initials, &[]);
    let one_consistent = ns.spreads().iter().all(|s| {
        s.outcomes()
            .iter()
            .all(|o| consistent_unchecked(model, &initials, &[o]))
    });
    let vectors = enumerate_outcome_vectors(ns);
    let verdicts = exec.map(&vectors, |v| is_vector_consistent(model, ns, v));
    let inconsistent_vectors: Vec<Vec<String>> = vectors
        .iter()
        .zip(&verdicts)
        .filter(|(_, &ok)| !ok)
        .map(|(v, _)| v.names(ns))
        .collect();
    let maximal = inconsistent_vectors.is_empty();

    assert!(!maximal || one_consistent, "maximal consistency without 1-consistency");
    assert!(!one_consistent || minimal, "1-consistency without minimal consistency");

    Ok(GradeReport {
        nspread: ns.name().to_string(),
        minimal,
        one_consistent,
        maximal,
        vector_count: vectors.len(),
        inconsistent_vectors,
    })
}

/// Minimally consistent, and no initial lies below an outcome of a
/// different spread.
pub fn is_spacelike(model: &CausalModel, ns: &NSpread) -> Result<bool> {
    ensure_valid(model, ns)?;
    if !consistent_unchecked(model, &ns.initials(), &[]) {
        return Ok(false);
    }
    for (i, si) in ns.spreads().iter().enumerate() {
        for (j, sj) in ns.spreads().iter().enumerate() {
            if i == j {
                continue;
            }
            for &p in si.initial().points() {
                for o in sj.outcomes() {
                    if o.points().iter().any(|&q| model.less(p, q)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Atomic spread candidates rooted at `p`: a point initial with outcomes
/// drawn from the covers of `p`, pairwise incompatible and jointly covering
/// every history through `p`. Returns `None` when `p` has more covers than
/// `max_covers`.
pub fn atomic_spreads_at(model: &CausalModel, p: Point, max_covers: usize) -> Option<Vec<Spread>> {
    let covers = model.covers(p);
    if covers.len() > max_covers {
        return None;
    }
    if covers.is_empty() {
        return Some(Vec::new());
    }
    let through: Vec<_> = model.histories().iter().filter(|h| h.contains(p)).collect();
    let shares_history =
        |a: Point, b: Point| through.iter().any(|h| h.contains(a) && h.contains(b));
    let initial = Event::new(model, model.label(p), &[p]).expect("singleton");
    let mut found = Vec::new();
    for mask in 1u64..(1u64 << covers.len()) {
        let chosen: Vec<Point> = covers
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &q)| q)
            .collect();
        let exclusive = chosen
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| !shares_history(a, b));
        let exhaustive = through
            .iter()
            .all(|h| chosen.iter().any(|&q| h.contains(q)));
        if exclusive && exhaustive {
            let outcomes = chosen
                .iter()
                .map(|&q| Event::new(model, model.label(q), &[q]).expect("singleton"))
                .collect();
            let name = format!(
                "{}->{{{}}}",
                model.label(p),
                chosen.iter().map(|&q| model.label(q)).join(",")
            );
            found.push(Spread::new(name, initial.clone(), outcomes).expect("nonempty"));
        }
    }
    Some(found)
}
