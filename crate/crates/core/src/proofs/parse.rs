//! Line-oriented parser for proof scripts.

use thiserror::Error;

use super::{Justification, ProofScript, Schema, Step, Substitution};
use crate::exponents::{parse_exponent, Exponent, PowerExp};
use crate::terms::{parse_pseudoidentity, parse_term, Context, Pseudoidentity, Term};
use crate::Signature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ScriptParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ScriptParseError {
    ScriptParseError {
        line,
        message: message.into(),
    }
}

/// Parses a script. Lines starting with `#` and blank lines are ignored.
pub fn parse_script(text: &str) -> Result<ProofScript, ScriptParseError> {
    let mut script = ProofScript {
        signature: Signature::Monoid,
        hypotheses: Vec::new(),
        steps: Vec::new(),
        goal: None,
    };
    let mut seen_body = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (head, rest) = split_head(l);
        match head {
            "sig" => {
                if seen_body {
                    return Err(err(line, "sig must come before hypotheses and steps"));
                }
                script.signature = match rest.trim() {
                    "monoid" => Signature::Monoid,
                    "semigroup" => Signature::Semigroup,
                    other => return Err(err(line, format!("unknown signature `{other}`"))),
                };
            }
            "hyp" => {
                seen_body = true;
                let (name, body) = rest
                    .split_once(':')
                    .ok_or_else(|| err(line, "expected `hyp <name>: <lhs> = <rhs>`"))?;
                let name = ident(name.trim(), line)?;
                if script.hypothesis(&name).is_some() {
                    return Err(err(line, format!("duplicate hypothesis `{name}`")));
                }
                let id = identity(body, script.signature, line)?;
                script.hypotheses.push((name, id));
            }
            "step" => {
                seen_body = true;
                let step = parse_step(rest, script.signature, line)?;
                if script.steps.iter().any(|s| s.id == step.id) {
                    return Err(err(line, format!("duplicate step `{}`", step.id)));
                }
                script.steps.push(step);
            }
            "goal" | "goal:" => {
                seen_body = true;
                if script.goal.is_some() {
                    return Err(err(line, "more than one goal"));
                }
                let body = l["goal".len()..].trim_start();
                let body = body
                    .strip_prefix(':')
                    .ok_or_else(|| err(line, "expected `goal: <lhs> = <rhs>`"))?;
                script.goal = Some(identity(body, script.signature, line)?);
            }
            _ => return Err(err(line, format!("unknown directive `{head}`"))),
        }
    }
    Ok(script)
}

fn split_head(l: &str) -> (&str, &str) {
    match l.find(|c: char| c.is_whitespace()) {
        Some(i) => (&l[..i], &l[i..]),
        None => (l, ""),
    }
}

fn ident(s: &str, line: usize) -> Result<String, ScriptParseError> {
    let ok = !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-');
    if ok {
        Ok(s.to_string())
    } else {
        Err(err(line, format!("bad identifier `{s}`")))
    }
}

fn identity(s: &str, sig: Signature, line: usize) -> Result<Pseudoidentity, ScriptParseError> {
    parse_pseudoidentity(s.trim(), sig).map_err(|e| err(line, e.to_string()))
}

fn term(s: &str, sig: Signature, line: usize) -> Result<Term, ScriptParseError> {
    parse_term(s.trim(), sig).map_err(|e| err(line, e.to_string()))
}

fn context(s: &str, sig: Signature, line: usize) -> Result<Context, ScriptParseError> {
    Context::parse(s.trim(), sig).map_err(|e| err(line, e.to_string()))
}

fn exponent(s: &str, line: usize) -> Result<PowerExp, ScriptParseError> {
    parse_exponent(s.trim()).map_err(|e| err(line, e.to_string()))
}

fn parse_step(rest: &str, sig: Signature, line: usize) -> Result<Step, ScriptParseError> {
    let (id, body) = rest
        .split_once('=')
        .ok_or_else(|| err(line, "expected `step <id> = <justification>`"))?;
    let id = ident(id.trim(), line)?;
    let (just, annotation) = match body.split_once(':') {
        Some((j, a)) => (j, Some(identity(a, sig, line)?)),
        None => (body, None),
    };
    let justification = parse_justification(just.trim(), sig, line)?;
    Ok(Step {
        id,
        justification,
        annotation,
        line,
    })
}

type Keywords<'a> = Vec<(&'static str, &'a str)>;

/// Splits `text` at whitespace-delimited keywords. A keyword ending in `=`
/// matches as a token prefix, any other keyword matches a whole token.
/// Returns the text before the first keyword and each keyword's value.
fn keywords<'a>(
    text: &'a str,
    keys: &[&'static str],
    line: usize,
) -> Result<(&'a str, Keywords<'a>), ScriptParseError> {
    let mut hits: Vec<(usize, usize, &'static str)> = Vec::new();
    let mut pos = 0;
    for tok in text.split_whitespace() {
        let start = pos + text[pos..].find(tok).expect("token comes from the text");
        pos = start + tok.len();
        for &k in keys {
            let matched = if k.ends_with('=') {
                tok.starts_with(k)
            } else {
                tok == k
            };
            if matched {
                hits.push((start, start + k.len(), k));
                break;
            }
        }
    }
    let lead = &text[..hits.first().map_or(text.len(), |h| h.0)];
    let mut out = Vec::new();
    for (i, &(_, value_start, k)) in hits.iter().enumerate() {
        if out.iter().any(|(seen, _)| *seen == k) {
            return Err(err(line, format!("`{k}` given twice")));
        }
        let end = hits.get(i + 1).map_or(text.len(), |h| h.0);
        out.push((k, text[value_start..end].trim()));
    }
    Ok((lead.trim(), out))
}

fn get<'a>(kv: &[(&'static str, &'a str)], k: &str) -> Option<&'a str> {
    kv.iter().find(|(key, _)| *key == k).map(|(_, v)| *v)
}

fn require<'a>(
    kv: &[(&'static str, &'a str)],
    k: &str,
    line: usize,
) -> Result<&'a str, ScriptParseError> {
    get(kv, k).ok_or_else(|| err(line, format!("missing `{k}`")))
}

fn substitution(s: &str, sig: Signature, line: usize) -> Result<Substitution, ScriptParseError> {
    let mut out = Substitution::new();
    for part in s.split(',') {
        let (var, image) = part
            .split_once("->")
            .ok_or_else(|| err(line, format!("bad substitution `{}`", part.trim())))?;
        let mut chars = var.trim().chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_lowercase() => c,
            _ => {
                return Err(err(
                    line,
                    format!("bad substitution variable `{}`", var.trim()),
                ))
            }
        };
        if out.insert(c, term(image, sig, line)?).is_some() {
            return Err(err(line, format!("variable `{c}` substituted twice")));
        }
    }
    Ok(out)
}

fn single_id(s: &str, line: usize) -> Result<String, ScriptParseError> {
    let mut toks = s.split_whitespace();
    match (toks.next(), toks.next()) {
        (Some(t), None) => ident(t, line),
        _ => Err(err(line, format!("expected one step id, found `{s}`"))),
    }
}

fn two_ids(s: &str, line: usize) -> Result<(String, String), ScriptParseError> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    match toks.as_slice() {
        [a, b] => Ok((ident(a, line)?, ident(b, line)?)),
        _ => Err(err(line, format!("expected two step ids, found `{s}`"))),
    }
}

fn first_and_rest(s: &str, line: usize) -> Result<(String, &str), ScriptParseError> {
    let (head, rest) = split_head(s.trim());
    Ok((ident(head, line)?, rest.trim()))
}

fn optional_tail(
    kv: &[(&'static str, &str)],
    sig: Signature,
    line: usize,
) -> Result<(Substitution, Option<Context>), ScriptParseError> {
    let subst = match get(kv, "subst") {
        Some(s) => substitution(s, sig, line)?,
        None => Substitution::new(),
    };
    let ctx = get(kv, "ctx").map(|c| context(c, sig, line)).transpose()?;
    Ok((subst, ctx))
}

fn parse_justification(
    text: &str,
    sig: Signature,
    line: usize,
) -> Result<Justification, ScriptParseError> {
    let (rule, rest) = split_head(text);
    let rest = rest.trim();
    Ok(match rule {
        "hyp" => {
            let (lead, kv) = keywords(rest, &["subst", "ctx"], line)?;
            let (subst, ctx) = optional_tail(&kv, sig, line)?;
            Justification::Hyp {
                name: single_id(lead, line)?,
                subst,
                ctx,
            }
        }
        "assume" => Justification::Assume(identity(rest, sig, line)?),
        "refl" => Justification::Refl(term(rest, sig, line)?),
        "sym" => Justification::Sym(single_id(rest, line)?),
        "trans" => {
            let (a, b) = two_ids(rest, line)?;
            Justification::Trans(a, b)
        }
        "ctx" => {
            let (j, c) = first_and_rest(rest, line)?;
            Justification::Ctx(j, context(c, sig, line)?)
        }
        "subst" => {
            let (j, s) = first_and_rest(rest, line)?;
            Justification::Subst(j, substitution(s, sig, line)?)
        }
        "ambient" => {
            let (lead, kv) = keywords(rest, &["a=", "b=", "subst", "ctx"], line)?;
            let schema = match lead {
                "A3" => Schema::A3,
                "A4" => Schema::A4,
                "A6" => Schema::A6,
                other => return Err(err(line, format!("unknown schema `{other}`"))),
            };
            let a = exponent(require(&kv, "a=", line)?, line)?;
            let b = match get(&kv, "b=") {
                Some(b) => exponent(b, line)?,
                None if schema == Schema::A6 => PowerExp::Const(Exponent::ONE),
                None => return Err(err(line, "missing `b=`")),
            };
            let (subst, ctx) = optional_tail(&kv, sig, line)?;
            Justification::Ambient {
                schema,
                a,
                b,
                subst,
                ctx,
            }
        }
        "induction" => {
            let (lead, kv) = keywords(rest, &["base=", "step="], line)?;
            if !lead.is_empty() {
                return Err(err(line, format!("unexpected `{lead}`")));
            }
            Justification::Induction {
                base: single_id(require(&kv, "base=", line)?, line)?,
                step: single_id(require(&kv, "step=", line)?, line)?,
            }
        }
        "limit" => Justification::Limit(single_id(rest, line)?),
        "inst" => {
            let (lead, kv) = keywords(rest, &["n="], line)?;
            let n = require(&kv, "n=", line)?;
            let n: u32 = n
                .parse()
                .map_err(|_| err(line, format!("bad instance `{n}`")))?;
            if n == 0 {
                return Err(err(line, "instances start at n=1"));
            }
            Justification::Inst(single_id(lead, line)?, n)
        }
        "iterate" => {
            let (lead, kv) = keywords(rest, &["left=", "right="], line)?;
            let side = |k: &str| -> Result<Term, ScriptParseError> {
                match get(&kv, k) {
                    Some(t) => term(t, sig, line),
                    None if sig == Signature::Monoid => Ok(Term::Unit),
                    None => Err(err(line, format!("missing `{k}`"))),
                }
            };
            Justification::Iterate {
                of: single_id(lead, line)?,
                left: side("left=")?,
                right: side("right=")?,
            }
        }
        "mul" => {
            let (a, b) = two_ids(rest, line)?;
            Justification::Mul(a, b)
        }
        other => return Err(err(line, format!("unknown rule `{other}`"))),
    })
}
