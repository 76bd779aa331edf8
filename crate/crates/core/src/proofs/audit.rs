//! Semantic audit of checked scripts against small finite models.
//!
//! Every step without open assumptions must hold in every model of the
//! hypotheses. Schematic steps are tested at every `k` in [`AUDIT_VALUES`],
//! which covers `k = n!` for `n = 1..=4`.

use rayon::prelude::*;

use super::check::CheckedScript;
use super::ProofScript;
use crate::exponents::PowerExp;
use crate::semigroups::{
    adjoin_identity_if_needed, enumerate_monoids, standard_catalog, FinSemigroup, Satisfaction,
};
use crate::terms::{Pseudoidentity, Term};
use crate::Signature;

/// Parameter values tried for schematic steps.
pub const AUDIT_VALUES: [u64; 7] = [1, 2, 3, 4, 5, 6, 24];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub model: String,
    pub step: String,
    /// Parameter value, for schematic steps.
    pub k: Option<u64>,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub models: usize,
    /// Models satisfying every hypothesis.
    pub relevant_models: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Monoids of order at most 4 and the standard catalog with an identity
/// adjoined; for the semigroup signature the raw catalog is added.
pub fn audit_pool(sig: Signature) -> Vec<(String, FinSemigroup)> {
    let mut pool: Vec<(String, FinSemigroup)> = enumerate_monoids(4)
        .expect("order 4 is within range")
        .into_iter()
        .enumerate()
        .map(|(i, m)| (format!("M{}#{i}", m.order()), m))
        .collect();
    for (name, s) in standard_catalog() {
        pool.push((format!("{name}^1"), adjoin_identity_if_needed(&s)));
        if sig == Signature::Semigroup {
            pool.push((name, s));
        }
    }
    pool
}

/// Evaluates the parameter at `k` in every exponent.
fn at(id: &Pseudoidentity, k: u64) -> Option<Pseudoidentity> {
    let side = |t: &Term| {
        t.try_map_exponents(&mut |e| match e {
            PowerExp::Const(_) => Ok(e.clone()),
            PowerExp::Sym(s) => s.evaluate_at_value(k, id.signature).map(PowerExp::Const),
        })
        .ok()
    };
    Some(Pseudoidentity::new(
        side(&id.lhs)?,
        side(&id.rhs)?,
        id.signature,
    ))
}

fn fails(model: &FinSemigroup, id: &Pseudoidentity) -> Option<String> {
    match model.satisfies(id) {
        Ok(Satisfaction::Fails(phi)) => Some(model.format_assignment(&phi)),
        _ => None,
    }
}

pub fn audit_soundness(
    script: &ProofScript,
    checked: &CheckedScript,
    pool: &[(String, FinSemigroup)],
) -> AuditReport {
    let results: Vec<(bool, usize, Vec<Violation>)> = pool
        .par_iter()
        .map(|(name, model)| {
            if !script.hypotheses.iter().all(|(_, h)| model.holds(h)) {
                return (false, 0, Vec::new());
            }
            let mut checks = 0;
            let mut found = Vec::new();
            for step in checked.steps.iter().filter(|s| s.assumptions.is_empty()) {
                if step.is_schematic() {
                    for k in AUDIT_VALUES {
                        let Some(id) = at(&step.claim, k) else {
                            continue;
                        };
                        checks += 1;
                        if let Some(w) = fails(model, &id) {
                            found.push(Violation {
                                model: name.clone(),
                                step: step.id.clone(),
                                k: Some(k),
                                witness: w,
                            });
                        }
                    }
                } else {
                    checks += 1;
                    if let Some(w) = fails(model, &step.claim) {
                        found.push(Violation {
                            model: name.clone(),
                            step: step.id.clone(),
                            k: None,
                            witness: w,
                        });
                    }
                }
            }
            (true, checks, found)
        })
        .collect();
    let mut report = AuditReport {
        models: pool.len(),
        ..AuditReport::default()
    };
    for (relevant, checks, found) in results {
        report.relevant_models += relevant as usize;
        report.checks += checks;
        report.violations.extend(found);
    }
    report
}
