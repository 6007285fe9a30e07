use bst_core::common_cause::atomic_candidates;
use bst_core::event::{
    consistency_grade, consistent_unchecked, enumerate_outcome_vectors, Event, NSpread, Spread,
};
use bst_core::ghz::build_concrete_model;
use bst_core::CausalModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Singletons plus every two-point chain.
fn small_events(m: &CausalModel) -> Vec<Event> {
    let pts: Vec<_> = m.points().collect();
    let mut out: Vec<Event> = pts
        .iter()
        .map(|&p| Event::new(m, m.label(p), &[p]).unwrap())
        .collect();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            if m.comparable(a, b) {
                out.push(Event::new(m, format!("{}|{}", m.label(a), m.label(b)), &[a, b]).unwrap());
            }
        }
    }
    out
}

fn bullet_one(m: &CausalModel, spreads: &[Spread], events: &[Event]) -> usize {
    let mut violations = 0;
    for s in spreads {
        for e in events {
            let with_initial = consistent_unchecked(m, &[s.initial()], &[e]);
            let with_outcome = s.outcomes().iter().any(|o| consistent_unchecked(m, &[], &[e, o]));
            violations += usize::from(with_initial != with_outcome);
        }
    }
    violations
}

fn bullet_two(m: &CausalModel, nspreads: &[NSpread], events: &[Event]) -> usize {
    let mut violations = 0;
    for ns in nspreads {
        let vectors = enumerate_outcome_vectors(ns);
        for e in events {
            let with_initials = consistent_unchecked(m, &ns.initials(), &[e]);
            let with_vector = vectors.iter().any(|v| {
                let mut terms = v.terms(ns);
                terms.push(e);
                consistent_unchecked(m, &[], &terms)
            });
            violations += usize::from(with_initials != with_vector);
        }
    }
    violations
}

/// Every subset of a consistent (initials, outcomes) pair is consistent.
fn bullet_three(m: &CausalModel, initials: &[&Event], outcomes: &[&Event]) -> usize {
    if !consistent_unchecked(m, initials, outcomes) {
        return 0;
    }
    let k = initials.len() + outcomes.len();
    let mut violations = 0;
    for mask in 0u32..(1 << k) {
        let ini: Vec<&Event> = (0..initials.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| initials[i])
            .collect();
        let out: Vec<&Event> = (0..outcomes.len())
            .filter(|i| mask >> (initials.len() + i) & 1 == 1)
            .map(|i| outcomes[i])
            .collect();
        violations += usize::from(!consistent_unchecked(m, &ini, &out));
    }
    violations
}

fn bullet_four(m: &CausalModel, nspreads: &[NSpread]) -> usize {
    nspreads
        .iter()
        .map(|ns| {
            let g = consistency_grade(m, ns).unwrap();
            usize::from((g.maximal && !g.one_consistent) || (g.one_consistent && !g.minimal))
        })
        .sum()
}

#[test]
fn fact_one_on_ghz_model() {
    let ghz = build_concrete_model();
    let m = ghz.model();
    let spreads: Vec<Spread> = ghz.resolved.spreads.values().cloned().collect();
    let nspreads: Vec<NSpread> = ghz.resolved.nspreads.values().cloned().collect();
    let events = small_events(m);

    assert_eq!(bullet_one(m, &spreads, &events), 0);
    assert_eq!(bullet_two(m, &nspreads, &events), 0);
    assert_eq!(bullet_four(m, &nspreads), 0);

    let named: Vec<&Event> = ghz.resolved.events.values().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut violations = 0;
    for _ in 0..500 {
        let ni = rng.gen_range(0..=2);
        let no = rng.gen_range(0..=3);
        let ini: Vec<&Event> = (0..ni).map(|_| named[rng.gen_range(0..named.len())]).collect();
        let out: Vec<&Event> = (0..no).map(|_| named[rng.gen_range(0..named.len())]).collect();
        violations += bullet_three(m, &ini, &out);
    }
    assert_eq!(violations, 0);
}

#[test]
fn fact_one_on_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut graded = 0;
    for _ in 0..120 {
        let n = rng.gen_range(2..=10);
        let density = rng.gen_range(0.15..0.6);
        let m = CausalModel::random(&mut rng, n, density);
        let (spreads, _) = atomic_candidates(&m);
        let events = small_events(&m);
        assert_eq!(bullet_one(&m, &spreads, &events), 0);

        let mut nspreads = Vec::new();
        for (i, a) in spreads.iter().enumerate() {
            for b in &spreads[i..] {
                let name = format!("{}&{}", a.name(), b.name());
                nspreads.push(NSpread::new(name, vec![a.clone(), b.clone()]).unwrap());
            }
        }
        assert_eq!(bullet_two(&m, &nspreads, &events), 0);
        assert_eq!(bullet_four(&m, &nspreads), 0);
        graded += nspreads.len();

        let refs: Vec<&Event> = events.iter().collect();
        for _ in 0..20 {
            let ini: Vec<&Event> = (0..rng.gen_range(0..=2))
                .map(|_| refs[rng.gen_range(0..refs.len())])
                .collect();
            let out: Vec<&Event> = (0..rng.gen_range(0..=3))
                .map(|_| refs[rng.gen_range(0..refs.len())])
                .collect();
            assert_eq!(bullet_three(&m, &ini, &out), 0);
        }
    }
    assert!(graded > 100);
}
