//! Exhaustive refutation of a single joint common cause for the GHZ
//! correlations, over consistency profiles of one hypothetical cause outcome.
//!
//! A profile records, for each of the twelve outcome events, whether the
//! cause outcome `O` is consistent with it. For each listed context a profile
//! must satisfy
//!
//! * (A) some parity-consistent vector has every term flagged, because `O`
//!   is consistent with the context's initials and hence with some
//!   consistent vector;
//! * (B) no parity-inconsistent vector has every term flagged, because `O`
//!   must be inconsistent with one term of each inconsistent vector.
//!
//! Causal priority plays no role here. The profile space only uses
//! consequences of the consistency and screening conditions, so zero
//! survivors refutes a joint common cause, while a survivor does not
//! establish that one exists.

use std::fmt;

use serde::Serialize;

use crate::exec::Execution;
use crate::ghz::{
    format_signs, parity_consistent, stable_name, Context, GhzStructure, GhzVector, OutcomeEvent,
    Sign,
};

pub const PROFILE_COUNT: u64 = 1 << OutcomeEvent::COUNT;

/// Anchor signs tried first when the leading context accepts them.
pub const DEFAULT_ANCHOR: [Sign; 3] = [Sign::Plus, Sign::Minus, Sign::Plus];

/// Consistency flags of one cause outcome against the twelve outcome events.
///
/// Event `i` (in [`OutcomeEvent::index`] order) is bit `11 - i`, so numeric
/// order on the raw value is lexicographic order on the flag vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateProfile(u16);

impl CandidateProfile {
    pub fn from_raw(raw: u16) -> CandidateProfile {
        assert!((raw as u64) < PROFILE_COUNT);
        CandidateProfile(raw)
    }

    pub fn from_events(events: &[OutcomeEvent]) -> CandidateProfile {
        let mut p = CandidateProfile(0);
        for &e in events {
            p.set(e, true);
        }
        p
    }

    pub fn raw(self) -> u16 {
        self.0
    }

    fn bit(e: OutcomeEvent) -> u16 {
        1 << (OutcomeEvent::COUNT - 1 - e.index())
    }

    pub fn flag(self, e: OutcomeEvent) -> bool {
        self.0 & Self::bit(e) != 0
    }

    pub fn set(&mut self, e: OutcomeEvent, value: bool) {
        if value {
            self.0 |= Self::bit(e);
        } else {
            self.0 &= !Self::bit(e);
        }
    }

    pub fn flagged(self) -> Vec<OutcomeEvent> {
        OutcomeEvent::all().filter(|&e| self.flag(e)).collect()
    }

    fn covers(self, v: &GhzVector) -> bool {
        v.terms().iter().all(|&t| self.flag(t))
    }

    /// Conditions A and B for one context under the structure's oracle.
    pub fn admits(self, structure: &GhzStructure, c: Context) -> bool {
        let mut has_consistent = false;
        for v in c.vectors() {
            if self.covers(&v) {
                if structure.consistent(&v) {
                    has_consistent = true;
                } else {
                    return false;
                }
            }
        }
        has_consistent
    }
}

impl fmt::Display for CandidateProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.flagged().iter().map(|e| e.name()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl Serialize for CandidateProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.flagged().iter().map(|e| e.name()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// A chosen consistent vector of the first context.
    Anchor,
    /// Screening off: `O` inconsistent with one term of an inconsistent vector.
    Cc3Screening,
    /// `O` consistent with a stable event hence with one of its outcomes.
    Cc2Existence,
    /// Branch on which outcome of a stable event `O` is consistent with.
    CaseSplit,
    /// Assumption opening one branch of a case split.
    Case,
    Contradiction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fact {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub id: usize,
    pub depth: usize,
    pub rule: Rule,
    pub context: Option<Context>,
    pub vector: Option<GhzVector>,
    /// Events the step concludes about (the stable event for a contradiction).
    pub events: Vec<String>,
    pub fact: Option<Fact>,
    pub premises: Vec<usize>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductioTrace {
    pub anchor: GhzVector,
    pub steps: Vec<TraceStep>,
}

impl ReductioTrace {
    pub fn last(&self) -> &TraceStep {
        self.steps.last().expect("trace is nonempty")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let indent = "  ".repeat(s.depth);
            out.push_str(&format!("{indent}{:>2}. {}\n", s.id + 1, s.text));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationResult {
    pub contexts: Vec<Context>,
    pub total: u64,
    pub survivors: usize,
    /// Lexicographically least survivors, at most `witness_limit` of them.
    pub witnesses: Vec<CandidateProfile>,
    pub trace: Option<ReductioTrace>,
    pub note: String,
}

#[derive(Debug, Clone, Copy)]
pub struct RefuteOptions {
    pub exec: Execution,
    pub anchor: Option<[Sign; 3]>,
    pub witness_limit: usize,
}

impl Default for RefuteOptions {
    fn default() -> Self {
        RefuteOptions {
            exec: Execution::default(),
            anchor: None,
            witness_limit: 16,
        }
    }
}

pub fn refute_joint_common_cause(structure: &GhzStructure, contexts: &[Context]) -> RefutationResult {
    refute_with(structure, contexts, RefuteOptions::default())
}

pub fn refute_with(
    structure: &GhzStructure,
    contexts: &[Context],
    opts: RefuteOptions,
) -> RefutationResult {
    let survives = |raw: u64| {
        let p = CandidateProfile(raw as u16);
        contexts.iter().all(|&c| p.admits(structure, c))
    };
    let survivors = opts.exec.count(0..PROFILE_COUNT, survives);
    let witnesses: Vec<CandidateProfile> = (0..PROFILE_COUNT)
        .filter(|&r| survives(r))
        .take(opts.witness_limit)
        .map(|r| CandidateProfile(r as u16))
        .collect();

    let (trace, note) = if survivors == 0 && !contexts.is_empty() {
        let trace = build_trace(structure, contexts, opts.anchor);
        let note = if trace.is_some() {
            "no profile survives; a joint common cause is refuted".to_string()
        } else {
            "no profile survives; no linear derivation found from any anchor".to_string()
        };
        (trace, note)
    } else {
        (
            None,
            "surviving profiles satisfy necessary conditions only; they do not show a common cause exists"
                .to_string(),
        )
    };

    RefutationResult {
        contexts: contexts.to_vec(),
        total: PROFILE_COUNT,
        survivors,
        witnesses,
        trace,
        note,
    }
}

/// Derivation engine replaying the reductio from a chosen anchor vector.
struct Engine<'a> {
    structure: &'a GhzStructure,
    contexts: &'a [Context],
    steps: Vec<TraceStep>,
}

type State = [Option<(Fact, usize)>; OutcomeEvent::COUNT];

enum Progress {
    Derived,
    Closed,
    Stuck,
}

impl<'a> Engine<'a> {
    fn push(
        &mut self,
        depth: usize,
        rule: Rule,
        context: Option<Context>,
        vector: Option<GhzVector>,
        events: Vec<String>,
        fact: Option<Fact>,
        premises: Vec<usize>,
        text: String,
    ) -> usize {
        let id = self.steps.len();
        self.steps.push(TraceStep {
            id,
            depth,
            rule,
            context,
            vector,
            events,
            fact,
            premises,
            text,
        });
        id
    }

    fn first_context_using(&self, e: OutcomeEvent) -> Context {
        *self
            .contexts
            .iter()
            .find(|c| c.axis(e.station) == e.axis)
            .expect("event belongs to a listed context")
    }

    fn stable_of(e: OutcomeEvent) -> String {
        stable_name(e.station, e.axis)
    }

    /// One screening step, possibly preceded by existence steps, or a
    /// contradiction.
    fn propagate(&mut self, state: &mut State, depth: usize) -> Progress {
        for &ctx in self.contexts {
            for v in ctx.vectors() {
                if self.structure.consistent(&v) {
                    continue;
                }
                let terms = v.terms();
                if terms
                    .iter()
                    .any(|t| matches!(state[t.index()], Some((Fact::Inconsistent, _))))
                {
                    continue;
                }
                let unknown: Vec<OutcomeEvent> = terms
                    .iter()
                    .copied()
                    .filter(|t| state[t.index()].is_none())
                    .collect();
                let forced = |t: &OutcomeEvent| {
                    matches!(state[t.sibling().index()], Some((Fact::Inconsistent, _)))
                };
                let free: Vec<OutcomeEvent> =
                    unknown.iter().copied().filter(|t| !forced(t)).collect();
                let available: Vec<OutcomeEvent> =
                    unknown.iter().copied().filter(|t| forced(t)).collect();

                if unknown.is_empty() {
                    let premises = terms.iter().map(|t| state[t.index()].unwrap().1).collect();
                    self.push(
                        depth,
                        Rule::Contradiction,
                        Some(ctx),
                        Some(v),
                        v.term_names(),
                        None,
                        premises,
                        format!(
                            "[CC3 {ctx}] {v} is inconsistent, yet O is consistent with every term: contradiction"
                        ),
                    );
                    return Progress::Closed;
                }
                if free.len() > 1 {
                    continue;
                }
                let target = free.first().copied().unwrap_or_else(|| available[0]);
                for &t in available.iter().filter(|&&t| t != target) {
                    let sib = state[t.sibling().index()].unwrap().1;
                    let c2 = self.first_context_using(t);
                    let id = self.push(
                        depth,
                        Rule::Cc2Existence,
                        Some(c2),
                        None,
                        vec![t.name()],
                        Some(Fact::Consistent),
                        vec![sib],
                        format!(
                            "[CC2 {c2}] O is consistent with {}, not with {}, so O is consistent with {}",
                            Self::stable_of(t),
                            t.sibling().name(),
                            t.name()
                        ),
                    );
                    state[t.index()] = Some((Fact::Consistent, id));
                }
                let premises: Vec<usize> = terms
                    .iter()
                    .filter(|&&t| t != target)
                    .map(|t| state[t.index()].unwrap().1)
                    .collect();
                let others: Vec<String> = terms
                    .iter()
                    .filter(|&&t| t != target)
                    .map(|t| t.name())
                    .collect();
                let id = self.push(
                    depth,
                    Rule::Cc3Screening,
                    Some(ctx),
                    Some(v),
                    vec![target.name()],
                    Some(Fact::Inconsistent),
                    premises,
                    format!(
                        "[CC3 {ctx}] {v} is inconsistent and O is consistent with {}, so O is inconsistent with {}",
                        others.join(" and "),
                        target.name()
                    ),
                );
                state[target.index()] = Some((Fact::Inconsistent, id));

                if let Some((Fact::Inconsistent, sib)) = state[target.sibling().index()] {
                    let (minus, plus) = if target.sign == Sign::Minus {
                        (target, target.sibling())
                    } else {
                        (target.sibling(), target)
                    };
                    let stable = Self::stable_of(target);
                    self.push(
                        depth,
                        Rule::Contradiction,
                        Some(ctx),
                        None,
                        vec![stable.clone()],
                        None,
                        vec![sib, id],
                        format!(
                            "[CC2 {ctx}] O is inconsistent with both {} and {}, hence with {stable}, \
                             yet must be consistent with it: contradiction at {stable}",
                            plus.name(),
                            minus.name()
                        ),
                    );
                    return Progress::Closed;
                }
                return Progress::Derived;
            }
        }
        Progress::Stuck
    }

    fn close(&mut self, mut state: State, depth: usize) -> bool {
        loop {
            match self.propagate(&mut state, depth) {
                Progress::Derived => continue,
                Progress::Closed => return true,
                Progress::Stuck => break,
            }
        }
        let split = self.contexts.iter().find_map(|&c| {
            crate::ghz::Station::ALL.iter().find_map(|&st| {
                let minus = OutcomeEvent {
                    station: st,
                    axis: c.axis(st),
                    sign: Sign::Minus,
                };
                (state[minus.index()].is_none() && state[minus.sibling().index()].is_none())
                    .then_some((c, minus))
            })
        });
        let Some((ctx, minus)) = split else {
            return false;
        };
        let stable = Self::stable_of(minus);
        let split_id = self.push(
            depth,
            Rule::CaseSplit,
            Some(ctx),
            None,
            vec![stable.clone()],
            None,
            Vec::new(),
            format!(
                "[CC2 {ctx}] O is consistent with {stable}, so with {} or {}",
                minus.name(),
                minus.sibling().name()
            ),
        );
        for e in [minus, minus.sibling()] {
            let mut branch = state;
            let id = self.push(
                depth + 1,
                Rule::Case,
                Some(ctx),
                None,
                vec![e.name()],
                Some(Fact::Consistent),
                vec![split_id],
                format!("case: O is consistent with {}", e.name()),
            );
            branch[e.index()] = Some((Fact::Consistent, id));
            if !self.close(branch, depth + 1) {
                return false;
            }
        }
        true
    }
}

fn build_trace(
    structure: &GhzStructure,
    contexts: &[Context],
    anchor: Option<[Sign; 3]>,
) -> Option<ReductioTrace> {
    let lead = contexts[0];
    let mut candidates: Vec<GhzVector> = Vec::new();
    let preferred = anchor.unwrap_or(DEFAULT_ANCHOR);
    let first = GhzVector::new(lead, preferred);
    if structure.consistent(&first) {
        candidates.push(first);
    } else if anchor.is_some() {
        return None;
    }
    let rest: Vec<GhzVector> = lead
        .vectors()
        .filter(|v| structure.consistent(v) && !candidates.contains(v))
        .collect();
    candidates.extend(rest);

    for v in candidates {
        let mut engine = Engine {
            structure,
            contexts,
            steps: Vec::new(),
        };
        let names = v.term_names();
        let id = engine.push(
            0,
            Rule::Anchor,
            Some(lead),
            Some(v),
            names.clone(),
            Some(Fact::Consistent),
            Vec::new(),
            format!(
                "[CC2 {lead}] O is consistent with the initials of Sigma_{lead}, hence with a consistent vector; take {v}: O is consistent with each of {}",
                names.join(", ")
            ),
        );
        let mut state: State = [None; OutcomeEvent::COUNT];
        for t in v.terms() {
            state[t.index()] = Some((Fact::Consistent, id));
        }
        if engine.close(state, 0) {
            return Some(ReductioTrace {
                anchor: v,
                steps: slice(engine.steps),
            });
        }
    }
    None
}

/// Drops steps that no contradiction depends on, renumbering the rest.
fn slice(steps: Vec<TraceStep>) -> Vec<TraceStep> {
    let mut keep = vec![false; steps.len()];
    let mut stack: Vec<usize> = steps
        .iter()
        .filter(|s| matches!(s.rule, Rule::Contradiction | Rule::CaseSplit | Rule::Case))
        .map(|s| s.id)
        .collect();
    while let Some(i) = stack.pop() {
        if keep[i] {
            continue;
        }
        keep[i] = true;
        stack.extend(steps[i].premises.iter().copied());
    }
    let mut renumber = vec![usize::MAX; steps.len()];
    let mut out = Vec::new();
    for s in steps {
        if !keep[s.id] {
            continue;
        }
        renumber[s.id] = out.len();
        let mut s = s;
        s.id = out.len();
        s.premises = s.premises.iter().map(|&p| renumber[p]).collect();
        out.push(s);
    }
    out
}

/// Consistent-vector signs of a context, for display.
pub fn consistent_sign_patterns(c: Context) -> Vec<String> {
    c.vectors()
        .filter(parity_consistent)
        .map(|v| format_signs(&v.signs))
        .collect()
}
