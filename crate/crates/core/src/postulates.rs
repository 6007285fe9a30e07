//! Structural postulate checks on a finished model.

use fixedbitset::FixedBitSet;

use crate::causal::{CausalModel, Point};
use crate::report::{Status, ValidationReport, Violation};

/// Upper bound on the number of maximal chains scanned by
/// [`check_infima_suprema`].
pub const MAX_CHAINS: usize = 200_000;

/// Prior choice: for distinct histories `h1`, `h2` and every point `e` in
/// `h1 - h2`, some choice point of the pair lies strictly below `e`.
///
/// Only singleton chains are examined. Every finite chain has a minimum, and a
/// choice point below the minimum is below the whole chain.
pub fn check_prior_choice(model: &CausalModel) -> ValidationReport {
    let hs = model.histories();
    let mut violations = Vec::new();
    for (i, h1) in hs.iter().enumerate() {
        for (j, h2) in hs.iter().enumerate() {
            if i == j {
                continue;
            }
            let choices = model
                .choice_points(h1, h2)
                .expect("distinct histories");
            let mut diff = h1.members().clone();
            diff.difference_with(h2.members());
            for e in diff.ones().map(Point::from_index_unchecked) {
                if !choices.iter().any(|&c| model.less(c, e)) {
                    violations.push(Violation::new(
                        "no choice point below point of h1 - h2",
                        vec![
                            model.label(h1.top()).to_string(),
                            model.label(h2.top()).to_string(),
                            model.label(e).to_string(),
                        ],
                    ));
                }
            }
        }
    }
    ValidationReport::from_violations("prior-choice", violations)
        .with_note("chains reduced to singletons: every finite chain has a minimum")
}

/// Every nonempty chain has an infimum, and a supremum inside each history
/// containing it. Scans all maximal chains.
pub fn check_infima_suprema(model: &CausalModel) -> ValidationReport {
    let chains = maximal_chains(model, MAX_CHAINS);
    let truncated = chains.len() >= MAX_CHAINS;
    let mut violations = Vec::new();
    for chain in &chains {
        let witness = || chain.iter().map(|&p| model.label(p).to_string()).collect();

        let mut lower = FixedBitSet::with_capacity(model.len());
        lower.insert_range(..);
        for &c in chain {
            lower.intersect_with(&model.down_closure(c));
        }
        if greatest(model, &lower).is_none() {
            violations.push(Violation::new("chain has no infimum", witness()));
        }

        for h in model.histories() {
            if !chain.iter().all(|&c| h.contains(c)) {
                continue;
            }
            let mut upper = h.members().clone();
            for &c in chain {
                let mut up = model.strictly_above(c).clone();
                up.insert(c.index());
                upper.intersect_with(&up);
            }
            if least(model, &upper).is_none() {
                let mut w: Vec<String> = witness();
                w.push(format!("history:{}", model.label(h.top())));
                violations.push(Violation::new("chain has no supremum in history", w));
            }
        }
    }
    let mut report = ValidationReport::from_violations("infima-suprema", violations)
        .with_note(format!("{} maximal chains scanned", chains.len()));
    if truncated {
        report = report.with_note(format!("scan truncated at {MAX_CHAINS} chains"));
    }
    report
}

/// Density has no nontrivial finite realization: any covering pair `a < b`
/// is a counterexample. Such models are reported as waived.
pub fn check_density(model: &CausalModel) -> ValidationReport {
    let gap = model.order_pairs().into_iter().find(|&(a, b)| {
        model
            .strictly_above(a)
            .intersection(model.strictly_below(b))
            .next()
            .is_none()
    });
    match gap {
        None => ValidationReport::from_violations("density", Vec::new())
            .with_note("no order pair lacks a midpoint"),
        Some((a, b)) => ValidationReport {
            check: "density".into(),
            status: Status::Waived,
            violations: vec![Violation::new(
                "no point strictly between",
                vec![model.label(a).to_string(), model.label(b).to_string()],
            )],
            notes: vec!["density cannot hold in a finite model with a nonempty order".into()],
        },
    }
}

fn greatest(model: &CausalModel, set: &FixedBitSet) -> Option<Point> {
    set.ones()
        .map(Point::from_index_unchecked)
        .find(|&g| set.ones().all(|x| model.leq(Point::from_index_unchecked(x), g)))
}

fn least(model: &CausalModel, set: &FixedBitSet) -> Option<Point> {
    set.ones()
        .map(Point::from_index_unchecked)
        .find(|&l| set.ones().all(|x| model.leq(l, Point::from_index_unchecked(x))))
}

/// Saturated chains from a minimal to a maximal point, depth-first in index
/// order, stopping after `limit` chains.
pub fn maximal_chains(model: &CausalModel, limit: usize) -> Vec<Vec<Point>> {
    let all = {
        let mut s = model.empty_set();
        s.insert_range(..);
        s
    };
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in model.minimal_within(&all) {
        walk(model, start, &mut stack, &mut out, limit);
        if out.len() >= limit {
            break;
        }
    }
    out
}

fn walk(
    model: &CausalModel,
    p: Point,
    stack: &mut Vec<Point>,
    out: &mut Vec<Vec<Point>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    stack.push(p);
    let covers = model.covers(p);
    if covers.is_empty() {
        out.push(stack.clone());
    } else {
        for q in covers {
            walk(model, q, stack, out, limit);
        }
    }
    stack.pop();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(points: &[&str], order: &[(&str, &str)]) -> CausalModel {
        CausalModel::build(points, order).unwrap()
    }

    #[test]
    fn fork_passes_prior_choice() {
        let m = model(&["r", "a", "b"], &[("r", "a"), ("r", "b")]);
        assert_eq!(check_prior_choice(&m).status, Status::Pass);
        assert_eq!(check_infima_suprema(&m).status, Status::Pass);
    }

    #[test]
    fn isolated_points_violate_prior_choice() {
        let m = model(&["a", "b"], &[]);
        let r = check_prior_choice(&m);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.violations.len(), 2);
        assert_eq!(r.violations[0].witness, vec!["a", "b", "a"]);
    }

    #[test]
    fn total_order_has_bounds() {
        let m = model(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        let r = check_infima_suprema(&m);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(maximal_chains(&m, 10).len(), 1);
    }

    #[test]
    fn density_cases() {
        let anti = model(&["a", "b"], &[]);
        assert_eq!(check_density(&anti).status, Status::Pass);

        let chain = model(&["a", "b"], &[("a", "b")]);
        let r = check_density(&chain);
        assert_eq!(r.status, Status::Waived);
        assert_eq!(r.violations[0].witness, vec!["a", "b"]);
        assert!(r.passed());
    }

    #[test]
    fn diamond_chains() {
        let m = model(
            &["r", "a", "b", "t"],
            &[("r", "a"), ("r", "b"), ("a", "t"), ("b", "t")],
        );
        assert_eq!(maximal_chains(&m, 10).len(), 2);
        assert_eq!(check_infima_suprema(&m).status, Status::Pass);
    }
}
