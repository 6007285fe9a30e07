use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context as _, Result};
use bst_core::assign::{
    contextual_assignment_search, ghz_product_constraints, value_assignment_search,
    ProductConstraint,
};
use bst_core::common_cause::{check_common_cause, inconsistent_targets, search_common_causes};
use bst_core::document::{ModelDocument, ResolvedModel};
use bst_core::event::{consistency_grade, validate_spread, OutcomeVector};
use bst_core::ghz::{concrete_document, format_signs, parse_signs, Context, Sign};
use bst_core::postulates::{check_density, check_infima_suprema, check_prior_choice};
use bst_core::quantum::{compare_with_stipulation, omega_eigencheck, outcome_probability};
use bst_core::refute::{refute_with, RefuteOptions};
use bst_core::report::{Status, ValidationReport};
use bst_core::Error;
use serde::Serialize;
use serde_json::json;

use crate::report::{status_word, to_json, Report};

pub fn load(path: &Path) -> Result<ResolvedModel> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc: ModelDocument = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(doc.resolve()?)
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(", ")
    }
}

fn push_check(findings: &mut Vec<String>, r: &ValidationReport) {
    findings.push(format!("{}: {}", r.check, status_word(r.status)));
    for v in &r.violations {
        findings.push(format!("  {} [{}]", v.message, v.witness.join(" ")));
    }
    for n in &r.notes {
        findings.push(format!("  note: {n}"));
    }
}

pub fn validate(path: &Path) -> Result<Report> {
    let r = load(path)?;
    let m = &r.model;
    let mut checks = vec![check_prior_choice(m), check_infima_suprema(m), check_density(m)];
    checks.extend(r.spreads.values().map(|s| validate_spread(m, s)));

    let mut findings = vec![
        format!("points: {}", m.len()),
        format!("histories: {}", m.histories().len()),
    ];
    for c in &checks {
        push_check(&mut findings, c);
    }
    let spreads_ok = checks.iter().all(|c| c.passed());
    let mut grades = Vec::new();
    if spreads_ok {
        for ns in r.nspreads.values() {
            let g = consistency_grade(m, ns)?;
            let grade = if g.maximal {
                "maximally consistent"
            } else if g.one_consistent {
                "1-consistent"
            } else if g.minimal {
                "minimally consistent"
            } else {
                "inconsistent initials"
            };
            findings.push(format!(
                "nspread:{}: {grade}, {} of {} vectors inconsistent",
                g.nspread,
                g.inconsistent_vectors.len(),
                g.vector_count
            ));
            grades.push(g);
        }
    }
    let status = if spreads_ok { Status::Pass } else { Status::Fail };
    let payload = json!({
        "points": m.len(),
        "histories": m.histories().len(),
        "checks": checks,
        "grades": grades,
    });
    Ok(Report::new("validate", status, findings, payload))
}

#[derive(Serialize)]
struct HistoryRow {
    top: String,
    members: Vec<String>,
}

pub fn histories(path: &Path) -> Result<Report> {
    let r = load(path)?;
    let m = &r.model;
    let rows: Vec<HistoryRow> = m
        .histories()
        .iter()
        .map(|h| HistoryRow {
            top: m.label(h.top()).to_string(),
            members: h.points().map(|p| m.label(p).to_string()).collect(),
        })
        .collect();
    let mut findings = vec![format!("histories: {}", rows.len())];
    findings.extend(rows.iter().map(|h| format!("{}: {}", h.top, h.members.join(" "))));
    Ok(Report::new("histories", Status::Pass, findings, json!({ "histories": rows })))
}

pub enum BuildOutput {
    Document(String),
    Report(Report),
}

pub fn ghz_build(out: Option<&Path>) -> Result<BuildOutput> {
    let doc = concrete_document();
    let text = to_json(&doc);
    match out {
        None => Ok(BuildOutput::Document(text)),
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            let resolved = doc.resolve()?;
            let findings = vec![
                format!("wrote {}", path.display()),
                format!("points: {}", resolved.model.len()),
                format!("histories: {}", resolved.model.histories().len()),
            ];
            let payload = json!({
                "path": path.display().to_string(),
                "points": resolved.model.len(),
                "histories": resolved.model.histories().len(),
            });
            Ok(BuildOutput::Report(Report::new("ghz build", Status::Pass, findings, payload)))
        }
    }
}

pub fn ghz_refute(contexts: &str, trace: bool, anchor: Option<&str>) -> Result<Report> {
    let contexts = Context::parse_list(contexts)?;
    let anchor = anchor.map(parse_signs).transpose()?;
    let structure = bst_core::ghz::build_abstract_structure();
    let mut result = refute_with(
        &structure,
        &contexts,
        RefuteOptions {
            anchor,
            ..RefuteOptions::default()
        },
    );
    let names: Vec<String> = contexts.iter().map(|c| c.to_string()).collect();
    let mut findings = vec![
        format!("contexts: {}", names.join(", ")),
        format!("survivors: {} of {}", result.survivors, result.total),
        format!("note: {}", result.note),
    ];
    findings.extend(result.witnesses.iter().map(|w| format!("witness: {w}")));
    if trace {
        match &result.trace {
            Some(t) => {
                findings.push("trace:".to_string());
                findings.extend(t.render().lines().map(|l| format!("  {l}")));
            }
            None => findings.push("trace: none".to_string()),
        }
    } else {
        result.trace = None;
    }
    Ok(Report::new("ghz refute", Status::Pass, findings, result))
}

fn parse_constraints(text: Option<&str>) -> Result<Vec<ProductConstraint>> {
    let Some(text) = text else {
        return Ok(ghz_product_constraints());
    };
    text.split(',')
        .map(|item| {
            let (ctx, sign) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(item.to_string()))?;
            let target = match sign {
                "+" | "+1" => Sign::Plus,
                "-" | "-1" => Sign::Minus,
                _ => return Err(Error::Parse(item.to_string()).into()),
            };
            Ok(ProductConstraint {
                context: ctx.parse()?,
                target,
            })
        })
        .collect()
}

fn describe(ks: &[ProductConstraint]) -> String {
    ks.iter()
        .map(|k| format!("{}:{}", k.context, k.target.symbol()))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn ghz_values(constraints: Option<&str>) -> Result<Report> {
    let ks = parse_constraints(constraints)?;
    let r = value_assignment_search(&ks);
    let mut findings = vec![
        format!("constraints: {}", describe(&ks)),
        format!("satisfying: {} of {}", r.satisfying, r.total),
    ];
    for w in &r.witnesses {
        let signs: Vec<String> = w
            .values
            .iter()
            .enumerate()
            .map(|(st, v)| format!("x_{0}={1} y_{0}={2}", st + 1, v[0].symbol(), v[1].symbol()))
            .collect();
        findings.push(format!("witness: {}", signs.join(" ")));
    }
    Ok(Report::new("ghz values", Status::Pass, findings, r))
}

pub fn ghz_contextual(constraints: Option<&str>) -> Result<Report> {
    let ks = parse_constraints(constraints)?;
    let r = contextual_assignment_search(&ks);
    let mut findings = vec![
        format!("constraints: {}", describe(&ks)),
        format!("satisfying: {} of {}", r.satisfying, r.total),
    ];
    if let Some(w) = &r.witness {
        let parts: Vec<String> = w.triples.iter().map(|(c, s)| format!("{c}={s}")).collect();
        findings.push(format!("witness: {}", parts.join(" ")));
    }
    Ok(Report::new("ghz contextual", Status::Pass, findings, r))
}

#[derive(Serialize)]
struct ProbabilityRow {
    context: Context,
    signs: String,
    probability: f64,
}

pub fn ghz_oracle(context: Option<&str>, threshold: f64) -> Result<Report> {
    let contexts: Vec<Context> = match context {
        Some(c) => vec![c.parse()?],
        None => Context::all().to_vec(),
    };
    let eigen = omega_eigencheck()?;
    let mut discrepancy = compare_with_stipulation(threshold)?;
    discrepancy
        .disagreements
        .retain(|d| contexts.contains(&d.vector.context));

    let mut findings = Vec::new();
    for (i, e) in eigen.entries.iter().enumerate() {
        findings.push(format!("Omega_{} {}: eigenvalue {:.12}", i + 1, e.observable, e.eigenvalue));
    }
    findings.push(format!("Omega product: eigenvalue {:.12}", eigen.product_eigenvalue));
    findings.push(format!("pairwise commute: {}", eigen.pairwise_commute));

    let mut rows = Vec::new();
    for &c in &contexts {
        for v in c.vectors() {
            let p = outcome_probability(c, v.signs);
            findings.push(format!("P({c}; {}) = {p:.6}", format_signs(&v.signs)));
            rows.push(ProbabilityRow {
                context: c,
                signs: format_signs(&v.signs),
                probability: p,
            });
        }
    }
    for &c in &contexts {
        findings.push(format!("disagreements {c}: {}", discrepancy.for_context(c).len()));
    }
    for d in &discrepancy.disagreements {
        findings.push(format!(
            "  {} {}: parity rule says {}, probability {:.6}",
            d.vector.context,
            d.signs,
            if d.parity_consistent { "consistent" } else { "inconsistent" },
            d.probability
        ));
    }
    findings.push(format!("threshold: {threshold:e}"));
    if discrepancy.threshold_sensitive {
        findings.push("threshold sensitive: nonzero probabilities fall at or below the threshold".into());
    }
    let payload = json!({
        "eigencheck": eigen,
        "probabilities": rows,
        "discrepancy": discrepancy,
    });
    Ok(Report::new("ghz oracle", Status::Pass, findings, payload))
}

pub struct CheckArgs<'a> {
    pub file: &'a Path,
    pub spread: Option<&'a str>,
    pub nspread: &'a str,
    pub vector: Option<&'a str>,
    pub search: bool,
}

fn split(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).collect()
}

pub fn check_cc(args: CheckArgs<'_>) -> Result<Report> {
    let r = load(args.file)?;
    let m = &r.model;
    let ns_names = split(args.nspread);
    let nspreads = ns_names
        .iter()
        .map(|n| r.nspread(n))
        .collect::<bst_core::Result<Vec<_>>>()?;

    if args.search {
        let targets = match args.vector {
            Some(v) => {
                let [ns] = nspreads.as_slice() else {
                    return Err(anyhow!("--vector with --search takes a single n-spread"));
                };
                vec![(*ns, OutcomeVector::from_names(ns, &split(v))?)]
            }
            None => inconsistent_targets(m, &nspreads),
        };
        let rep = search_common_causes(m, &targets)?;
        let mut findings = vec![
            format!("nspreads: {}", ns_names.join(", ")),
            format!("targets: {}", rep.targets),
            format!("candidates examined: {}", rep.candidates_examined),
            format!("passing: {}", list(&rep.passing)),
        ];
        if rep.vacuous {
            findings.push("vacuous: no target vectors, every candidate passes".into());
        }
        if !rep.skipped_points.is_empty() {
            findings.push(format!("skipped points: {}", rep.skipped_points.join(", ")));
        }
        findings.push("note: CC1-CC3 are necessary conditions only".into());
        return Ok(Report::new("check-cc --search", Status::Pass, findings, rep));
    }

    let spread_name = args
        .spread
        .ok_or_else(|| anyhow!("--spread is required unless --search is given"))?;
    let vector = args
        .vector
        .ok_or_else(|| anyhow!("--vector is required unless --search is given"))?;
    let [ns] = nspreads.as_slice() else {
        return Err(anyhow!("--nspread takes a single n-spread without --search"));
    };
    let sigma = r.spread(spread_name)?;
    let c = OutcomeVector::from_names(ns, &split(vector))?;
    let rep = check_common_cause(m, sigma, ns, &c)?;
    let mut findings = vec![
        format!("spread: {}", rep.spread),
        format!("nspread: {}", rep.nspread),
        format!("vector: ({})", rep.vector.join(", ")),
    ];
    for (label, cond) in [("cc1", &rep.cc1), ("cc2", &rep.cc2), ("cc3", &rep.cc3)] {
        let word = if cond.pass { "pass" } else { "fail" };
        findings.push(format!("{label}: {word}"));
        findings.extend(cond.witnesses.iter().map(|w| format!("  {w}")));
    }
    for s in &rep.screening {
        match &s.screened_by {
            Some(t) => findings.push(format!("screening: {} inconsistent with {t}", s.outcome)),
            None => findings.push(format!("screening: {} screens off no term", s.outcome)),
        }
    }
    if rep.pass {
        findings.push("note: CC1-CC3 are necessary conditions only".into());
    }
    let status = if rep.pass { Status::Pass } else { Status::Fail };
    Ok(Report::new("check-cc", status, findings, rep))
}
