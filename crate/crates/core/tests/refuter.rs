use std::collections::BTreeMap;

use bst_core::common_cause::{check_common_cause, inconsistent_targets, search_common_causes};
use bst_core::document::{ModelDocument, SpreadSpec};
use bst_core::event::consistent_unchecked;
use bst_core::ghz::{
    build_abstract_structure, build_concrete_model, Context, OutcomeEvent,
};
use bst_core::refute::{refute_with, CandidateProfile, RefuteOptions, Rule, PROFILE_COUNT};
use bst_core::Execution;

const NAMES: [&str; 12] = [
    "x-_1", "x+_1", "y-_1", "y+_1", "x-_2", "x+_2", "y-_2", "y+_2", "x-_3", "x+_3", "y-_3", "y+_3",
];

fn bit(name: &str) -> u16 {
    1 << NAMES.iter().position(|n| *n == name).unwrap()
}

/// Each vector of a context as (term mask, parity verdict), built from
/// strings rather than the crate's encodings.
fn context_vectors(ctx: &str) -> Vec<(u16, bool)> {
    let axes: Vec<char> = ctx.chars().collect();
    let mixed = axes.iter().any(|&a| a != axes[0]);
    let mut out = Vec::new();
    for signs in 0..8 {
        let mut mask = 0;
        let mut minuses = 0;
        for (st, &a) in axes.iter().enumerate() {
            let plus = signs >> (2 - st) & 1 == 1;
            minuses += usize::from(!plus);
            mask |= bit(&format!("{a}{}_{}", if plus { '+' } else { '-' }, st + 1));
        }
        out.push((mask, if mixed { minuses % 2 == 0 } else { minuses % 2 == 1 }));
    }
    out
}

fn survives(flags: u16, contexts: &[Vec<(u16, bool)>]) -> bool {
    contexts.iter().all(|vs| {
        let covered = |m: u16| flags & m == m;
        vs.iter().any(|&(m, ok)| ok && covered(m)) && !vs.iter().any(|&(m, ok)| !ok && covered(m))
    })
}

fn to_local(p: CandidateProfile) -> u16 {
    p.flagged().iter().map(|e| bit(&e.name())).fold(0, |a, b| a | b)
}

fn subset(mask: usize) -> Vec<Context> {
    Context::all()
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, c)| c)
        .collect()
}

#[test]
fn counts_match_independent_sweep_and_are_monotone() {
    let s = build_abstract_structure();
    let opts = RefuteOptions {
        witness_limit: 4096,
        ..RefuteOptions::default()
    };
    let mut counts = vec![0usize; 256];
    for mask in 0..256 {
        let ctxs = subset(mask);
        let r = refute_with(&s, &ctxs, opts);
        let local: Vec<_> = ctxs.iter().map(|c| context_vectors(&c.to_string())).collect();
        let expected = (0..PROFILE_COUNT as u32).filter(|&f| survives(f as u16, &local)).count();
        assert_eq!(r.survivors, expected, "{ctxs:?}");
        assert_eq!(r.witnesses.len(), r.survivors);
        for w in &r.witnesses {
            assert!(survives(to_local(*w), &local));
        }
        assert!(r.witnesses.windows(2).all(|w| w[0] < w[1]));
        if r.survivors == 0 && !ctxs.is_empty() {
            let t = r.trace.as_ref().expect("refuted subsets carry a trace");
            assert_eq!(t.last().rule, Rule::Contradiction);
        } else {
            assert!(r.trace.is_none());
        }
        counts[mask] = r.survivors;
    }
    for mask in 0..256 {
        for extra in 0..8 {
            assert!(counts[mask | 1 << extra] <= counts[mask]);
        }
    }
}

#[test]
fn theorem_trace_follows_the_proof() {
    let s = build_abstract_structure();
    let r = refute_with(&s, &Context::theorem_family(), RefuteOptions::default());
    assert_eq!((r.survivors, r.total), (0, 4096));
    let t = r.trace.unwrap();
    let rules: Vec<Rule> = t.steps.iter().map(|s| s.rule).collect();
    assert_eq!(
        rules,
        [
            Rule::Anchor,
            Rule::Cc3Screening,
            Rule::Cc2Existence,
            Rule::Cc3Screening,
            Rule::Cc3Screening,
            Rule::Contradiction
        ]
    );
    let events: Vec<String> = t.steps.iter().map(|s| s.events.join(",")).collect();
    assert_eq!(events, ["x+_1,x-_2,x+_3", "y+_3", "y-_3", "y+_2", "y-_2", "y_2"]);
    assert!(t.render().trim_end().ends_with("contradiction at y_2"));
    for step in &t.steps {
        assert!(step.premises.iter().all(|&p| p < step.id));
    }
}

#[test]
fn execution_strategies_agree() {
    let s = build_abstract_structure();
    for mask in [0b1111_1111usize, 0b0000_0001, 0b1001_0110] {
        let ctxs = subset(mask);
        let seq = refute_with(&s, &ctxs, RefuteOptions { exec: Execution::Sequential, ..Default::default() });
        let par = refute_with(&s, &ctxs, RefuteOptions { exec: Execution::Parallel, ..Default::default() });
        assert_eq!(seq, par);
    }
}

#[test]
fn history_cells_never_survive() {
    let g = build_concrete_model();
    let m = g.model();
    let overlaps: Vec<u16> = m
        .histories()
        .iter()
        .map(|h| {
            NAMES
                .iter()
                .filter(|n| h.contains(m.resolve(n).unwrap()))
                .map(|n| bit(n))
                .fold(0, |a, b| a | b)
        })
        .collect();
    assert_eq!(overlaps.len(), 32);
    let family: Vec<_> = ["xxx", "xxy", "xyy", "xyx"].iter().map(|c| context_vectors(c)).collect();
    let mut cases = 0;
    for i in 0..32 {
        for j in i..32 {
            let flags = overlaps[i] | overlaps[j];
            assert!(!survives(flags, &family), "cells {i},{j}");
            let events: Vec<OutcomeEvent> = OutcomeEvent::all()
                .filter(|e| flags & bit(&e.name()) != 0)
                .collect();
            let p = CandidateProfile::from_events(&events);
            assert!(!Context::theorem_family().iter().all(|&c| p.admits(&g.structure, c)));
            cases += 1;
        }
    }
    assert_eq!(cases, 32 + 496);
}

/// Three x-only stations plus a decay point whose four branches each fix one
/// consistent xxx vector.
fn decay_ghz_document() -> ModelDocument {
    let mut points = vec!["d".to_string()];
    let mut order = Vec::new();
    let mut events = BTreeMap::new();
    let mut spreads = BTreeMap::new();
    for st in 1..=3 {
        let (i, x) = (format!("I_{st}"), format!("x_{st}"));
        points.extend([i.clone(), x.clone()]);
        order.push((i.clone(), x.clone()));
        events.insert(x.clone(), vec![x.clone()]);
        let mut outs = Vec::new();
        for s in ['+', '-'] {
            let o = format!("x{s}_{st}");
            points.push(o.clone());
            order.push((x.clone(), o.clone()));
            order.push(("d".to_string(), o.clone()));
            events.insert(o.clone(), vec![o.clone()]);
            outs.push(o);
        }
        spreads.insert(format!("sigma^x_{st}"), SpreadSpec { initial: x, outcomes: outs });
    }
    for signs in ["+-+", "-++", "++-", "---"] {
        let (dv, t) = (format!("d_{signs}"), format!("T_{signs}"));
        points.extend([dv.clone(), t.clone()]);
        order.push(("d".to_string(), dv.clone()));
        order.push((dv, t.clone()));
        for (st, s) in signs.chars().enumerate() {
            order.push((format!("x{s}_{}", st + 1), t.clone()));
        }
    }
    let mut doc = ModelDocument::new(points, order);
    doc.events = events;
    doc.spreads = spreads;
    doc.nspreads
        .insert("Sigma_xxx".into(), (1..=3).map(|s| format!("sigma^x_{s}")).collect());
    doc
}

#[test]
fn passing_concrete_cause_induces_surviving_profile() {
    let r = decay_ghz_document().resolve().unwrap();
    let m = &r.model;
    assert_eq!(m.histories().len(), 4);
    let ns = r.nspread("Sigma_xxx").unwrap();
    let targets = inconsistent_targets(m, &[ns]);
    assert_eq!(targets.len(), 4);
    let search = search_common_causes(m, &targets).unwrap();
    assert!(search.passing.iter().any(|n| n.starts_with("d->")), "{search:?}");

    let (candidates, _) = bst_core::common_cause::atomic_candidates(m);
    let xxx = vec![context_vectors("xxx")];
    let structure = build_abstract_structure();
    let mut checked = 0;
    for sigma in candidates.iter().filter(|s| search.passing.iter().any(|n| n == s.name())) {
        for (ns, c) in &targets {
            assert!(check_common_cause(m, sigma, ns, c).unwrap().pass);
        }
        for o in sigma.outcomes() {
            let flags = NAMES
                .iter()
                .filter(|n| r.events.get(**n).is_some_and(|e| consistent_unchecked(m, &[], &[o, e])))
                .map(|n| bit(n))
                .fold(0, |a, b| a | b);
            assert!(survives(flags, &xxx), "{}", o.name());
            let p = CandidateProfile::from_events(
                &OutcomeEvent::all().filter(|e| flags & bit(&e.name()) != 0).collect::<Vec<_>>(),
            );
            assert!(p.admits(&structure, "xxx".parse().unwrap()));
            checked += 1;
        }
    }
    assert!(checked >= 4);
}
