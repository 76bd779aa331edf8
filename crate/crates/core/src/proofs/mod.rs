//! Proof scripts for pseudoidentities and their checker.
//!
//! A script lists hypotheses and a sequence of steps. Each step derives an
//! identity from earlier steps by one rule; the checker recomputes every
//! claim and compares identities modulo [`normalize_ambient`]. Schematic
//! steps carry the parameter `k` (read as `n!`) and are statements for all
//! values `k ≥ 1`; `limit` passes to `k → ω`.
//!
//! ```text
//! sig monoid
//! hyp h: x = xx
//! step s1 = hyp h : x = x x
//! step s2 = assume x = x x^k
//! step s3 = ctx s2 _ x
//! step s4 = trans s1 s3 : x = x x^(k+1)
//! step s5 = induction base=s1 step=s4
//! step s6 = limit s5
//! goal: x = x x^w
//! ```
//!
//! [`normalize_ambient`]: crate::terms::normalize_ambient

pub mod audit;
pub mod check;
pub mod macros;
pub mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::exponents::PowerExp;
use crate::terms::{Context, Pseudoidentity, Term};
use crate::Signature;

pub use audit::{audit_pool, audit_soundness, AuditReport, Violation};
pub use check::{check_script, CheckedScript, CheckedStep, RejectReason, Rejection};
pub use macros::expand_macros;
pub use parse::{parse_script, ScriptParseError};

pub type Substitution = BTreeMap<char, Term>;

/// Fixed identities valid in every finite monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schema {
    /// `x^a x^b = x^(a+b)`
    A3,
    /// `(x^a)^b = x^(ab)`
    A4,
    /// `(xy)^a x = x(yx)^a`
    A6,
}

impl Schema {
    pub fn all() -> [Schema; 3] {
        [Schema::A3, Schema::A4, Schema::A6]
    }

    /// The schema instance for the given exponents, before any substitution.
    pub fn instance(self, a: &PowerExp, b: &PowerExp, sig: Signature) -> Pseudoidentity {
        let (x, y) = (Term::Letter('x'), Term::Letter('y'));
        let (lhs, rhs) = match self {
            Schema::A3 => (
                Term::concat([
                    Term::power(x.clone(), a.clone()),
                    Term::power(x.clone(), b.clone()),
                ]),
                Term::power(x, raw_sum(a, b)),
            ),
            Schema::A4 => (
                Term::power(Term::power(x.clone(), a.clone()), b.clone()),
                Term::power(x, raw_product(a, b)),
            ),
            Schema::A6 => (
                Term::concat([
                    Term::power(Term::concat([x.clone(), y.clone()]), a.clone()),
                    x.clone(),
                ]),
                Term::concat([x.clone(), Term::power(Term::concat([y, x]), a.clone())]),
            ),
        };
        Pseudoidentity::new(lhs, rhs, sig)
    }
}

// Uncanonicalized combinations, so that validity is judged on the
// expression as written.
fn raw_sum(a: &PowerExp, b: &PowerExp) -> PowerExp {
    match (a, b) {
        (PowerExp::Const(x), PowerExp::Const(y)) => match x.checked_add(*y) {
            Some(s) => PowerExp::Const(s),
            None => a.add(b),
        },
        _ => PowerExp::Sym(crate::exponents::SymExponent::sum(to_sym(a), to_sym(b))),
    }
}

fn raw_product(a: &PowerExp, b: &PowerExp) -> PowerExp {
    match (a, b) {
        (PowerExp::Const(x), PowerExp::Const(y)) => match x.checked_mul(*y) {
            Some(s) => PowerExp::Const(s),
            None => a.mul(b),
        },
        _ => PowerExp::Sym(crate::exponents::SymExponent::prod(to_sym(a), to_sym(b))),
    }
}

fn to_sym(e: &PowerExp) -> crate::exponents::SymExponent {
    match e {
        PowerExp::Const(c) => crate::exponents::SymExponent::Const(*c),
        PowerExp::Sym(s) => s.clone(),
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Each schema instantiated with `a = b = w`.
pub fn ambient_schemas() -> Vec<(Schema, Pseudoidentity)> {
    let w = PowerExp::Const(crate::Exponent::OMEGA);
    Schema::all()
        .into_iter()
        .map(|s| (s, s.instance(&w, &w, Signature::Monoid)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Hyp {
        name: String,
        subst: Substitution,
        ctx: Option<Context>,
    },
    Assume(Pseudoidentity),
    Refl(Term),
    Sym(String),
    Trans(String, String),
    Ctx(String, Context),
    Subst(String, Substitution),
    Ambient {
        schema: Schema,
        a: PowerExp,
        b: PowerExp,
        subst: Substitution,
        ctx: Option<Context>,
    },
    Induction {
        base: String,
        step: String,
    },
    Limit(String),
    Inst(String, u32),
    Iterate {
        of: String,
        left: Term,
        right: Term,
    },
    Mul(String, String),
}

impl Justification {
    /// Step ids this justification refers to.
    pub fn premises(&self) -> Vec<&str> {
        match self {
            Justification::Hyp { .. }
            | Justification::Assume(_)
            | Justification::Refl(_)
            | Justification::Ambient { .. } => vec![],
            Justification::Sym(j)
            | Justification::Ctx(j, _)
            | Justification::Subst(j, _)
            | Justification::Limit(j)
            | Justification::Inst(j, _)
            | Justification::Iterate { of: j, .. } => vec![j],
            Justification::Trans(j, k) | Justification::Mul(j, k) => vec![j, k],
            Justification::Induction { base, step } => vec![base, step],
        }
    }

    pub fn is_macro(&self) -> bool {
        matches!(self, Justification::Iterate { .. } | Justification::Mul(..))
    }
}

fn fmt_subst(s: &Substitution) -> String {
    s.iter()
        .map(|(c, t)| format!("{c}->{t}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = |subst: &Substitution, ctx: &Option<Context>| {
            let mut out = String::new();
            if !subst.is_empty() {
                out.push_str(&format!(" subst {}", fmt_subst(subst)));
            }
            if let Some(c) = ctx {
                out.push_str(&format!(" ctx {c}"));
            }
            out
        };
        match self {
            Justification::Hyp { name, subst, ctx } => write!(f, "hyp {name}{}", tail(subst, ctx)),
            Justification::Assume(id) => write!(f, "assume {id}"),
            Justification::Refl(t) => write!(f, "refl {t}"),
            Justification::Sym(j) => write!(f, "sym {j}"),
            Justification::Trans(j, k) => write!(f, "trans {j} {k}"),
            Justification::Ctx(j, c) => write!(f, "ctx {j} {c}"),
            Justification::Subst(j, s) => write!(f, "subst {j} {}", fmt_subst(s)),
            Justification::Ambient {
                schema,
                a,
                b,
                subst,
                ctx,
            } => {
                write!(f, "ambient {schema} a={a} b={b}{}", tail(subst, ctx))
            }
            Justification::Induction { base, step } => {
                write!(f, "induction base={base} step={step}")
            }
            Justification::Limit(j) => write!(f, "limit {j}"),
            Justification::Inst(j, n) => write!(f, "inst {j} n={n}"),
            Justification::Iterate { of, left, right } => {
                write!(f, "iterate {of} left={left} right={right}")
            }
            Justification::Mul(j, k) => write!(f, "mul {j} {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: String,
    pub justification: Justification,
    /// Optional `: lhs = rhs` the derived identity must match.
    pub annotation: Option<Pseudoidentity>,
    pub line: usize,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {} = {}", self.id, self.justification)?;
        if let Some(a) = &self.annotation {
            write!(f, " : {a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub signature: Signature,
    pub hypotheses: Vec<(String, Pseudoidentity)>,
    pub steps: Vec<Step>,
    pub goal: Option<Pseudoidentity>,
}

impl ProofScript {
    pub fn hypothesis(&self, name: &str) -> Option<&Pseudoidentity> {
        self.hypotheses
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, h)| h)
    }

    /// The same script with every hypothesis written the other way round.
    pub fn with_flipped_hypotheses(&self) -> ProofScript {
        ProofScript {
            hypotheses: self
                .hypotheses
                .iter()
                .map(|(n, h)| (n.clone(), h.flipped()))
                .collect(),
            ..self.clone()
        }
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sig {}", self.signature)?;
        for (name, h) in &self.hypotheses {
            writeln!(f, "hyp {name}: {h}")?;
        }
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        if let Some(g) = &self.goal {
            writeln!(f, "goal: {g}")?;
        }
        Ok(())
    }
}
