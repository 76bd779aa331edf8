//! Normalization modulo equalities valid in every finite monoid.
//!
//! Rules, applied bottom-up until nothing changes:
//!
//! - `1^e → 1`, `t^1 → t`, `t^0 → 1`
//! - `(t^a)^b → t^(ab)`
//! - `t^a t^b → t^(a+b)`, and a bare run equal to the base of a neighbouring
//!   power is absorbed into it: `t t^a → t^(1+a)`, `t^a t → t^(a+1)`
//! - `x x → x^2` for letters
//! - finite powers of products are written out, `(xy)^2 → xyxy`, as long as
//!   the result stays below [`EXPANSION_LIMIT`] factors
//!
//! Writing out finite powers of products gives `(xy)^2` and `xyxy` the same
//! normal form without having to search for repeated blocks.

use crate::exponents::{Exponent, PowerExp};
use crate::terms::Term;

/// Largest number of factors a finite power of a product is expanded into.
pub const EXPANSION_LIMIT: usize = 4096;

const MAX_ROUNDS: usize = 256;

/// Normal form of `t` under the ambient rewrite rules.
pub fn normalize_ambient(t: &Term) -> Term {
    let mut cur = t.clone();
    for _ in 0..MAX_ROUNDS {
        let next = pass(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
    cur
}

fn pass(t: &Term) -> Term {
    match t {
        Term::Letter(_) | Term::Unit => t.clone(),
        Term::Concat(parts) => merge_runs(parts.iter().map(pass)),
        Term::Power(b, e) => power(pass(b), e.canonical()),
    }
}

fn power(base: Term, e: PowerExp) -> Term {
    if e.is_zero() || base == Term::Unit {
        return Term::Unit;
    }
    if e.is_one() {
        return base;
    }
    match base {
        Term::Power(inner, a) => match a.try_mul(&e) {
            Some(ae) => power(*inner, ae),
            None => Term::power(Term::Power(inner, a), e),
        },
        Term::Concat(parts) => match e {
            PowerExp::Const(Exponent::Finite(n))
                if (n as usize).saturating_mul(parts.len()) <= EXPANSION_LIMIT =>
            {
                let copies = (0..n)
                    .flat_map(|_| parts.iter().cloned())
                    .collect::<Vec<_>>();
                merge_runs(copies)
            }
            e => Term::power(Term::Concat(parts), e),
        },
        base => Term::power(base, e),
    }
}

fn merge_runs(items: impl IntoIterator<Item = Term>) -> Term {
    let mut stack: Vec<Term> = Vec::new();
    for item in items {
        match item {
            Term::Unit => {}
            Term::Concat(inner) => {
                for p in inner {
                    push(&mut stack, p);
                }
            }
            other => push(&mut stack, other),
        }
    }
    Term::concat(stack)
}

fn push(stack: &mut Vec<Term>, item: Term) {
    stack.push(item);
    while collapse_top(stack) {}
}

// Tries one merge involving the top of the stack.
fn collapse_top(stack: &mut Vec<Term>) -> bool {
    let len = stack.len();
    if len < 2 {
        return false;
    }
    let one = PowerExp::Const(Exponent::ONE);
    // Two powers of the same base.
    if let (Term::Power(b1, e1), Term::Power(b2, e2)) = (&stack[len - 2], &stack[len - 1]) {
        if b1 == b2 {
            let merged = power((**b1).clone(), e1.add(e2));
            stack.truncate(len - 2);
            push_merged(stack, merged);
            return true;
        }
    }
    // Two equal letters.
    if let (Term::Letter(a), Term::Letter(b)) = (&stack[len - 2], &stack[len - 1]) {
        if a == b {
            let merged = Term::power(Term::Letter(*a), Exponent::Finite(2));
            stack.truncate(len - 2);
            push_merged(stack, merged);
            return true;
        }
    }
    // A power on top absorbs the run of its base just below it.
    if let Term::Power(b, e) = &stack[len - 1] {
        let run = b.factors();
        if !run.is_empty() && run.len() < len && stack[len - 1 - run.len()..len - 1] == *run {
            let merged = power((**b).clone(), one.add(e));
            stack.truncate(len - 1 - run.len());
            push_merged(stack, merged);
            return true;
        }
    }
    // A power absorbs the run of its base that follows it.
    for run_len in 1..len {
        if let Term::Power(b, e) = &stack[len - 1 - run_len] {
            let run = b.factors();
            if run.len() == run_len && stack[len - run_len..] == *run {
                let merged = power((**b).clone(), e.add(&one));
                stack.truncate(len - 1 - run_len);
                push_merged(stack, merged);
                return true;
            }
        }
    }
    false
}

fn push_merged(stack: &mut Vec<Term>, merged: Term) {
    match merged {
        Term::Unit => {}
        Term::Concat(parts) => stack.extend(parts),
        other => stack.push(other),
    }
}
