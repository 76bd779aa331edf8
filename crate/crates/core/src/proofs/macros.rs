//! Expansion of derived rules into primitive steps.
//!
//! - `iterate j left=A right=B`, with `j: u = A u B`, becomes an induction
//!   whose step case frames the hypothesis `u = A^k u B^k` by `A _ B`.
//! - `mul j k`, with `j: u = v` and `k: u' = v'`, becomes two context steps
//!   joined by `trans`.

use std::collections::BTreeSet;

use super::check::{check_script, CheckedScript, Rejection};
use super::{Justification, ProofScript, Step};
use crate::terms::{Context, Pseudoidentity, Term, HOLE};

/// Rewrites every macro step into primitive steps. The script must check.
pub fn expand_macros(script: &ProofScript) -> Result<ProofScript, Rejection> {
    let checked = check_script(script)?;
    let mut taken: BTreeSet<String> = script.steps.iter().map(|s| s.id.clone()).collect();
    let mut steps = Vec::new();
    for step in &script.steps {
        match &step.justification {
            Justification::Iterate { of, left, right } => {
                steps.extend(expand_iterate(step, of, left, right, &checked, &mut taken));
            }
            Justification::Mul(j, k) => steps.extend(expand_mul(step, j, k, &checked, &mut taken)),
            _ => steps.push(step.clone()),
        }
    }
    Ok(ProofScript {
        steps,
        ..script.clone()
    })
}

fn fresh(base: &str, n: usize, taken: &mut BTreeSet<String>) -> String {
    let mut id = format!("{base}.{n}");
    while taken.contains(&id) {
        id.push('\'');
    }
    taken.insert(id.clone());
    id
}

fn context(left: Term, right: Term) -> Context {
    Context::new(Term::concat([left, Term::Letter(HOLE), right])).expect("one hole")
}

fn primitive(id: String, justification: Justification, line: usize) -> Step {
    Step {
        id,
        justification,
        annotation: None,
        line,
    }
}

fn expand_iterate(
    step: &Step,
    of: &str,
    left: &Term,
    right: &Term,
    checked: &CheckedScript,
    taken: &mut BTreeSet<String>,
) -> Vec<Step> {
    let claim = &checked.step(&step.id).expect("checked").claim;
    let premise = &checked.step(of).expect("checked").claim;
    let hyp = Pseudoidentity::new(premise.lhs.clone(), claim.rhs.clone(), claim.signature);
    let (a, framed, joined) = (
        fresh(&step.id, 1, taken),
        fresh(&step.id, 2, taken),
        fresh(&step.id, 3, taken),
    );
    vec![
        primitive(a.clone(), Justification::Assume(hyp), step.line),
        primitive(
            framed.clone(),
            Justification::Ctx(a, context(left.clone(), right.clone())),
            step.line,
        ),
        primitive(
            joined.clone(),
            Justification::Trans(of.to_string(), framed),
            step.line,
        ),
        Step {
            id: step.id.clone(),
            justification: Justification::Induction {
                base: of.to_string(),
                step: joined,
            },
            annotation: step.annotation.clone(),
            line: step.line,
        },
    ]
}

fn expand_mul(
    step: &Step,
    j: &str,
    k: &str,
    checked: &CheckedScript,
    taken: &mut BTreeSet<String>,
) -> Vec<Step> {
    let p = &checked.step(j).expect("checked").claim;
    let q = &checked.step(k).expect("checked").claim;
    let (a, b) = (fresh(&step.id, 1, taken), fresh(&step.id, 2, taken));
    vec![
        primitive(
            a.clone(),
            Justification::Ctx(j.to_string(), context(Term::Unit, q.lhs.clone())),
            step.line,
        ),
        primitive(
            b.clone(),
            Justification::Ctx(k.to_string(), context(p.rhs.clone(), Term::Unit)),
            step.line,
        ),
        Step {
            id: step.id.clone(),
            justification: Justification::Trans(a, b),
            annotation: step.annotation.clone(),
            line: step.line,
        },
    ]
}
