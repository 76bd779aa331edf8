//! The proof checker.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Justification, ProofScript, Step, Substitution};
use crate::exponents::{PowerExp, SymExponent};
use crate::terms::{normalize_ambient, Pseudoidentity, Term};
use crate::Signature;

/// The identity derived by a step together with the `assume` steps it
/// still depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedStep {
    pub id: String,
    pub claim: Pseudoidentity,
    pub assumptions: BTreeSet<String>,
}

impl CheckedStep {
    pub fn is_schematic(&self) -> bool {
        !self.claim.is_closed()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedScript {
    pub steps: Vec<CheckedStep>,
    /// The step that establishes the goal.
    pub goal_step: String,
}

impl CheckedScript {
    pub fn step(&self, id: &str) -> Option<&CheckedStep> {
        self.steps.iter().find(|s| s.id == id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RejectReason {
    UnknownStep(String),
    UnknownHypothesis(String),
    SchematicHypothesis(String),
    InvalidExponent(String),
    AnnotationMismatch { derived: String, annotated: String },
    TransMismatch { left: String, right: String },
    OpenAssumptions(Vec<String>),
    NotSchematic,
    Exponent(String),
    InductionBase { expected: String, found: String },
    InductionStep { expected: String, found: String },
    InductionAssumption(String),
    IterateShape(String),
    MissingGoal,
    GoalNotDerived(String),
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RejectReason::*;
        match self {
            UnknownStep(s) => write!(f, "unknown step `{s}`"),
            UnknownHypothesis(s) => write!(f, "unknown hypothesis `{s}`"),
            SchematicHypothesis(s) => write!(f, "hypothesis `{s}` contains the parameter k"),
            InvalidExponent(e) => write!(f, "exponent `{e}` is not valid for every k >= 1"),
            AnnotationMismatch { derived, annotated } => {
                write!(f, "derived `{derived}` but annotated `{annotated}`")
            }
            TransMismatch { left, right } => write!(f, "cannot chain: `{left}` is not `{right}`"),
            OpenAssumptions(a) => write!(f, "depends on open assumptions {}", a.join(", ")),
            NotSchematic => write!(f, "premise does not contain the parameter k"),
            Exponent(e) => write!(f, "{e}"),
            InductionBase { expected, found } => {
                write!(f, "base case should be `{expected}`, found `{found}`")
            }
            InductionStep { expected, found } => {
                write!(f, "step case should be `{expected}`, found `{found}`")
            }
            InductionAssumption(a) => write!(f, "assumption `{a}` is not the induction hypothesis"),
            IterateShape(s) => write!(f, "{s}"),
            MissingGoal => write!(f, "script has no goal"),
            GoalNotDerived(g) => write!(f, "no step derives `{g}` without assumptions"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// Step id, or `goal`.
    pub step: String,
    pub line: usize,
    pub reason: RejectReason,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rejected at {} (line {}): {}",
            self.step, self.line, self.reason
        )
    }
}

impl std::error::Error for Rejection {}

/// Normal form of both sides.
pub fn normal(id: &Pseudoidentity) -> (Term, Term) {
    (normalize_ambient(&id.lhs), normalize_ambient(&id.rhs))
}

/// Equality of identities modulo ambient normalization, same orientation.
pub fn same_identity(a: &Pseudoidentity, b: &Pseudoidentity) -> bool {
    normal(a) == normal(b)
}

fn same_term(a: &Term, b: &Term) -> bool {
    normalize_ambient(a) == normalize_ambient(b)
}

/// Checks every step and the goal.
pub fn check_script(script: &ProofScript) -> Result<CheckedScript, Rejection> {
    let mut checker = Checker {
        script,
        done: BTreeMap::new(),
        order: Vec::new(),
    };
    for step in &script.steps {
        let checked = checker.step(step).map_err(|reason| Rejection {
            step: step.id.clone(),
            line: step.line,
            reason,
        })?;
        checker.order.push(step.id.clone());
        checker.done.insert(step.id.clone(), checked);
    }
    let goal_line = script.steps.last().map_or(0, |s| s.line);
    let reject = |reason| Rejection {
        step: "goal".into(),
        line: goal_line,
        reason,
    };
    let goal = script
        .goal
        .as_ref()
        .ok_or_else(|| reject(RejectReason::MissingGoal))?;
    let goal_step = checker
        .order
        .iter()
        .find(|id| {
            let c = &checker.done[*id];
            c.assumptions.is_empty() && !c.is_schematic() && same_identity(&c.claim, goal)
        })
        .cloned()
        .ok_or_else(|| reject(RejectReason::GoalNotDerived(goal.to_string())))?;
    let mut done = checker.done;
    let steps = checker
        .order
        .iter()
        .map(|id| done.remove(id).expect("checked"))
        .collect();
    Ok(CheckedScript { steps, goal_step })
}

struct Checker<'a> {
    script: &'a ProofScript,
    done: BTreeMap<String, CheckedStep>,
    order: Vec<String>,
}

type Res<T> = Result<T, RejectReason>;

impl Checker<'_> {
    fn sig(&self) -> Signature {
        self.script.signature
    }

    fn premise(&self, id: &str) -> Res<&CheckedStep> {
        self.done
            .get(id)
            .ok_or_else(|| RejectReason::UnknownStep(id.to_string()))
    }

    fn closed_premise(&self, id: &str) -> Res<&CheckedStep> {
        let p = self.premise(id)?;
        if !p.assumptions.is_empty() {
            return Err(RejectReason::OpenAssumptions(
                p.assumptions.iter().cloned().collect(),
            ));
        }
        Ok(p)
    }

    fn step(&self, step: &Step) -> Res<CheckedStep> {
        let (claim, assumptions, either_way) = self.derive(step)?;
        self.validate(&claim)?;
        let claim = match &step.annotation {
            None => claim,
            Some(a) => {
                let fits =
                    same_identity(&claim, a) || (either_way && same_identity(&claim.flipped(), a));
                if !fits {
                    return Err(RejectReason::AnnotationMismatch {
                        derived: claim.to_string(),
                        annotated: a.to_string(),
                    });
                }
                self.validate(a)?;
                a.clone()
            }
        };
        Ok(CheckedStep {
            id: step.id.clone(),
            claim,
            assumptions,
        })
    }

    // Every schematic exponent must denote a legal exponent for all k >= 1.
    fn validate(&self, id: &Pseudoidentity) -> Res<()> {
        let sig = self.sig();
        for t in [&id.lhs, &id.rhs] {
            let mut bad = None;
            let _ = t.try_map_exponents::<()>(&mut |e| {
                let ok = match e {
                    PowerExp::Const(c) => c.valid_in(sig),
                    PowerExp::Sym(s) => s.valid_for_all_positive(sig),
                };
                if !ok && bad.is_none() {
                    bad = Some(e.to_string());
                }
                Ok(e.clone())
            });
            if let Some(e) = bad {
                return Err(RejectReason::InvalidExponent(e));
            }
        }
        Ok(())
    }

    // Returns the raw claim, its open assumptions and whether an annotation
    // may match it in either orientation.
    fn derive(&self, step: &Step) -> Res<(Pseudoidentity, BTreeSet<String>, bool)> {
        let sig = self.sig();
        let none = BTreeSet::new;
        Ok(match &step.justification {
            Justification::Hyp { name, subst, ctx } => {
                let h = self
                    .script
                    .hypothesis(name)
                    .ok_or_else(|| RejectReason::UnknownHypothesis(name.clone()))?;
                if !h.is_closed() {
                    return Err(RejectReason::SchematicHypothesis(name.clone()));
                }
                (frame(h, subst, ctx.as_ref()), none(), true)
            }
            Justification::Assume(id) => (id.clone(), BTreeSet::from([step.id.clone()]), false),
            Justification::Refl(t) => (
                Pseudoidentity::new(t.clone(), t.clone(), sig),
                none(),
                false,
            ),
            Justification::Sym(j) => {
                let p = self.premise(j)?;
                (p.claim.flipped(), p.assumptions.clone(), false)
            }
            Justification::Trans(j, k) => {
                let (p, q) = (self.premise(j)?, self.premise(k)?);
                if !same_term(&p.claim.rhs, &q.claim.lhs) {
                    return Err(RejectReason::TransMismatch {
                        left: p.claim.rhs.to_string(),
                        right: q.claim.lhs.to_string(),
                    });
                }
                let claim = Pseudoidentity::new(p.claim.lhs.clone(), q.claim.rhs.clone(), sig);
                (claim, union(p, q), false)
            }
            Justification::Ctx(j, c) => {
                let p = self.premise(j)?;
                let claim = Pseudoidentity::new(c.plug(&p.claim.lhs), c.plug(&p.claim.rhs), sig);
                (claim, p.assumptions.clone(), false)
            }
            Justification::Subst(j, s) => {
                let p = self.premise(j)?;
                (frame(&p.claim, s, None), p.assumptions.clone(), false)
            }
            Justification::Ambient {
                schema,
                a,
                b,
                subst,
                ctx,
            } => {
                let inst = schema.instance(a, b, sig);
                (frame(&inst, subst, ctx.as_ref()), none(), false)
            }
            Justification::Induction {
                base,
                step: inductive,
            } => {
                let claim = self.induction(step, base, inductive)?;
                (claim, none(), false)
            }
            Justification::Limit(j) => {
                let p = self.closed_premise(j)?;
                if !p.is_schematic() {
                    return Err(RejectReason::NotSchematic);
                }
                let lim = |t: &Term| t.limit().map_err(|e| RejectReason::Exponent(e.to_string()));
                (
                    Pseudoidentity::new(lim(&p.claim.lhs)?, lim(&p.claim.rhs)?, sig),
                    none(),
                    false,
                )
            }
            Justification::Inst(j, n) => {
                let p = self.closed_premise(j)?;
                if !p.is_schematic() {
                    return Err(RejectReason::NotSchematic);
                }
                let inst = |t: &Term| {
                    t.instantiate(*n, sig)
                        .map_err(|e| RejectReason::Exponent(e.to_string()))
                };
                // The threshold check lives in `SymExponent::instantiate`.
                for e in p
                    .claim
                    .lhs
                    .sym_exponents()
                    .into_iter()
                    .chain(p.claim.rhs.sym_exponents())
                {
                    e.instantiate(*n, sig)
                        .map_err(|e| RejectReason::Exponent(e.to_string()))?;
                }
                (
                    Pseudoidentity::new(inst(&p.claim.lhs)?, inst(&p.claim.rhs)?, sig),
                    none(),
                    false,
                )
            }
            Justification::Iterate { of, left, right } => {
                let p = self.closed_premise(of)?;
                (iterate_claim(p, left, right, sig)?, none(), false)
            }
            Justification::Mul(j, k) => {
                let (p, q) = (self.premise(j)?, self.premise(k)?);
                let claim = Pseudoidentity::new(
                    Term::concat([p.claim.lhs.clone(), q.claim.lhs.clone()]),
                    Term::concat([p.claim.rhs.clone(), q.claim.rhs.clone()]),
                    sig,
                );
                (claim, union(p, q), false)
            }
        })
    }

    fn induction(&self, step: &Step, base: &str, inductive: &str) -> Res<Pseudoidentity> {
        let b = self.closed_premise(base)?;
        let s = self.premise(inductive)?;
        let assumed: Vec<&CheckedStep> = s.assumptions.iter().map(|a| &self.done[a]).collect();
        let statement = match (&step.annotation, assumed.first()) {
            (Some(a), _) => a.clone(),
            (None, Some(first)) => first.claim.clone(),
            (None, None) => b.claim.clone(),
        };
        if statement.is_closed() {
            return Err(RejectReason::NotSchematic);
        }
        for a in &assumed {
            if !same_identity(&a.claim, &statement) {
                return Err(RejectReason::InductionAssumption(a.id.clone()));
            }
        }
        let at = |e: SymExponent| {
            Pseudoidentity::new(
                statement.lhs.replace_nu(&e),
                statement.rhs.replace_nu(&e),
                statement.signature,
            )
        };
        let expected_base = at(SymExponent::int(1));
        if !same_identity(&b.claim, &expected_base) {
            return Err(RejectReason::InductionBase {
                expected: expected_base.to_string(),
                found: b.claim.to_string(),
            });
        }
        let expected_step = at(SymExponent::sum(SymExponent::nu(), SymExponent::int(1)));
        if !same_identity(&s.claim, &expected_step) {
            return Err(RejectReason::InductionStep {
                expected: expected_step.to_string(),
                found: s.claim.to_string(),
            });
        }
        Ok(statement)
    }
}

fn union(p: &CheckedStep, q: &CheckedStep) -> BTreeSet<String> {
    p.assumptions.union(&q.assumptions).cloned().collect()
}

fn frame(
    id: &Pseudoidentity,
    subst: &Substitution,
    ctx: Option<&crate::terms::Context>,
) -> Pseudoidentity {
    let side = |t: &Term| {
        let t = t.substitute(subst);
        match ctx {
            Some(c) => c.plug(&t),
            None => t,
        }
    };
    Pseudoidentity::new(side(&id.lhs), side(&id.rhs), id.signature)
}

/// `u = A u B` gives `u = A^k u B^k`.
pub(crate) fn iterate_claim(
    p: &CheckedStep,
    left: &Term,
    right: &Term,
    sig: Signature,
) -> Res<Pseudoidentity> {
    if p.is_schematic() {
        return Err(RejectReason::IterateShape(
            "iterated step must not contain k".into(),
        ));
    }
    let u = &p.claim.lhs;
    let framed = Term::concat([left.clone(), u.clone(), right.clone()]);
    if !same_term(&p.claim.rhs, &framed) {
        return Err(RejectReason::IterateShape(format!(
            "`{}` is not `{framed}`",
            p.claim.rhs
        )));
    }
    let k = || PowerExp::Sym(SymExponent::nu());
    Ok(Pseudoidentity::new(
        u.clone(),
        Term::concat([
            Term::power(left.clone(), k()),
            u.clone(),
            Term::power(right.clone(), k()),
        ]),
        sig,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::parse_script;

    fn check(text: &str) -> Result<CheckedScript, Rejection> {
        check_script(&parse_script(text).unwrap())
    }

    const IDEMPOTENT: &str = "\
hyp h: x = xx
step s1 = hyp h : x = x x
step s2 = assume x = x x^k
step s3 = ctx s2 _ x
step s4 = trans s1 s3 : x = x x^(k+1)
step s5 = induction base=s1 step=s4
step s6 = limit s5
goal: x = x x^w
";

    #[test]
    fn induction_then_limit() {
        let c = check(IDEMPOTENT).unwrap();
        assert_eq!(c.goal_step, "s6");
        assert!(c.step("s5").unwrap().assumptions.is_empty());
        assert_eq!(
            c.step("s3").unwrap().assumptions,
            BTreeSet::from(["s2".to_string()])
        );
    }

    #[test]
    fn open_assumptions_cannot_reach_the_goal() {
        let text = "hyp h: x = xx\nstep a = assume x = x^w\ngoal: x = x^w\n";
        assert_eq!(
            check(text).unwrap_err().reason,
            RejectReason::GoalNotDerived("x = x^w".into())
        );
    }

    #[test]
    fn limit_needs_discharged_premise() {
        let text = "step a = assume x = x^k\nstep b = limit a\ngoal: x = x^w\n";
        let r = check(text).unwrap_err();
        assert_eq!(r.step, "b");
        assert!(matches!(r.reason, RejectReason::OpenAssumptions(_)));
    }

    #[test]
    fn bad_base_case_is_rejected() {
        let text = IDEMPOTENT
            .replace("step s2 =", "step s0 = refl x\nstep s2 =")
            .replace("base=s1", "base=s0");
        let r = check(&text).unwrap_err();
        assert!(
            matches!(r.reason, RejectReason::InductionBase { .. }),
            "{r}"
        );
    }

    #[test]
    fn hypotheses_may_be_used_in_reverse() {
        let text = "hyp h: xy = yx\nstep a = hyp h subst x->y, y->x : xy = yx\ngoal: xy = yx\n";
        assert!(check(text).is_ok());
    }

    #[test]
    fn annotations_are_checked() {
        let text = "hyp h: xy = yx\nstep a = hyp h : xx = yy\ngoal: xy = yx\n";
        assert!(matches!(
            check(text).unwrap_err().reason,
            RejectReason::AnnotationMismatch { .. }
        ));
    }

    #[test]
    fn trans_requires_matching_middle() {
        let text = "hyp h: xy = yx\nstep a = hyp h\nstep b = trans a a\ngoal: xy = xy\n";
        assert!(matches!(
            check(text).unwrap_err().reason,
            RejectReason::TransMismatch { .. }
        ));
    }

    #[test]
    fn ambient_exponents_must_be_valid() {
        let semi = "sig semigroup\nstep a = ambient A3 a=k-1 b=1\ngoal: x = x\n";
        assert!(matches!(
            check(semi).unwrap_err().reason,
            RejectReason::InvalidExponent(_)
        ));
        let mono = "step a = ambient A3 a=k-1 b=1\ngoal: x = x\n";
        assert!(matches!(
            check(mono).unwrap_err().reason,
            RejectReason::GoalNotDerived(_)
        ));
    }

    #[test]
    fn schematic_hypotheses_are_refused() {
        let text = "hyp h: x^k = x\nstep a = hyp h\ngoal: x = x\n";
        assert_eq!(
            check(text).unwrap_err().reason,
            RejectReason::SchematicHypothesis("h".into())
        );
    }

    #[test]
    fn iterate_and_mul() {
        let text = "\
hyp h: x = y x z
step a = hyp h
step b = iterate a left=y right=z : x = y^k x z^k
step c = limit b
step d = mul a a : x x = y x z y x z
goal: x = y^w x z^w
";
        let c = check(text).unwrap();
        assert_eq!(c.goal_step, "c");
    }

    #[test]
    fn inst_respects_threshold() {
        let text = "step a = ambient A3 a=k b=k-2\nstep b = inst a n=1\ngoal: x = x\n";
        assert!(matches!(
            check(text).unwrap_err().reason,
            RejectReason::InvalidExponent(_) | RejectReason::Exponent(_)
        ));
    }
}
