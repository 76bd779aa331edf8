//! Plain-text table format.
//!
//! ```text
//! order 3 monoid identity=2
//! 0 1 0
//! 0 1 1
//! 0 1 2
//! names: a b 1
//! ```
//!
//! Row `i` lists the products `i·j`. Blank lines and lines starting with `#`
//! are ignored when reading.

use super::{FinSemigroup, SemigroupError};
use crate::Signature;

pub fn write_semigroup(s: &FinSemigroup) -> String {
    let mut out = format!("order {} {}", s.order(), s.signature());
    if s.signature() == Signature::Monoid {
        out.push_str(&format!(
            " identity={}",
            s.identity().expect("monoids have an identity")
        ));
    }
    out.push('\n');
    for a in 0..s.order() {
        let row: Vec<String> = s.row(a).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(names) = s.names() {
        out.push_str("names: ");
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_semigroup(text: &str) -> Result<FinSemigroup, SemigroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: &str| SemigroupError::Format {
        line,
        message: message.to_string(),
    };

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() < 3 || words.len() > 4 || words[0] != "order" {
        return Err(err(
            hline,
            "expected 'order N monoid|semigroup [identity=i]'",
        ));
    }
    let order: usize = words[1]
        .parse()
        .map_err(|_| err(hline, "order must be a number"))?;
    let signature = match words[2] {
        "monoid" => Signature::Monoid,
        "semigroup" => Signature::Semigroup,
        _ => return Err(err(hline, "signature must be 'monoid' or 'semigroup'")),
    };
    let declared = match words.get(3) {
        None => None,
        Some(w) => Some(
            w.strip_prefix("identity=")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| err(hline, "expected identity=<index>"))?,
        ),
    };

    let mut rows = Vec::with_capacity(order);
    for _ in 0..order {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| err(hline, "fewer rows than the declared order"))?;
        let row = l
            .split_whitespace()
            .map(|x| x.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err(ln, "row entries must be numbers"))?;
        if row.len() != order {
            return Err(err(ln, "row length differs from the order"));
        }
        rows.push(row);
    }
    let names = match lines.next() {
        None => None,
        Some((ln, l)) => {
            let rest = l
                .strip_prefix("names:")
                .ok_or_else(|| err(ln, "expected 'names:' or end of file"))?;
            Some(rest.split_whitespace().map(str::to_string).collect())
        }
    };
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "unexpected trailing line"));
    }
    let s = FinSemigroup::new(rows, names, signature)?;
    if let Some(i) = declared {
        if s.identity() != Some(i) {
            return Err(SemigroupError::BadIdentity(i));
        }
    }
    Ok(s)
}
