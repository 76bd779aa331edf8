use crate::exponents::{ExpParser, Exponent, PowerExp};
use crate::terms::{Pseudoidentity, Term, HOLE};
use crate::{ParseError, Signature};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    sig: Signature,
    allow_hole: bool,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            factors.push(self.factor()?);
        }
        if factors.is_empty() {
            return Err(self.err("expected a term"));
        }
        Ok(Term::concat(factors))
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let atom = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.pos += 1;
        let start = self.pos;
        let mut ep = ExpParser::new(self.src, self.pos);
        let exp = ep.power_exp()?;
        self.pos = ep.pos;
        if self.sig == Signature::Semigroup && exp == PowerExp::Const(Exponent::ZERO) {
            return Err(ParseError::new(
                start,
                "exponent 0 is not allowed in semigroup signature",
            ));
        }
        Ok(Term::power(atom, exp))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            '1' => {
                if self.sig == Signature::Semigroup {
                    return Err(self.err("the empty word 1 is not allowed in semigroup signature"));
                }
                self.pos += 1;
                Ok(Term::Unit)
            }
            'w' | 'k' => Err(self.err(format!("'{c}' is reserved for exponents"))),
            c if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(Term::Letter(c))
            }
            HOLE if self.allow_hole => {
                self.pos += 1;
                Ok(Term::Letter(HOLE))
            }
            _ => Err(self.err(format!("unexpected character '{c}'"))),
        }
    }

    fn finish(mut self) -> Result<Term, ParseError> {
        let t = self.term()?;
        if self.peek().is_some() {
            return Err(self.err("unbalanced ')'"));
        }
        Ok(t)
    }
}

/// Parses an omega-term such as `(xy)^w x` or `x^(k-1) y`.
pub fn parse_term(text: &str, sig: Signature) -> Result<Term, ParseError> {
    Parser {
        src: text,
        pos: 0,
        sig,
        allow_hole: false,
    }
    .finish()
}

pub(crate) fn parse_term_with_hole(text: &str, sig: Signature) -> Result<Term, ParseError> {
    Parser {
        src: text,
        pos: 0,
        sig,
        allow_hole: true,
    }
    .finish()
}

/// Parses `u = v`.
pub fn parse_pseudoidentity(text: &str, sig: Signature) -> Result<Pseudoidentity, ParseError> {
    let Some((l, r)) = text.split_once('=') else {
        return Err(ParseError::new(0, "expected '=' between the two sides"));
    };
    if r.contains('=') {
        return Err(ParseError::new(
            l.len() + 1 + r.find('=').unwrap(),
            "more than one '='",
        ));
    }
    let lhs = parse_term(l, sig)?;
    let rhs =
        parse_term(r, sig).map_err(|e| ParseError::new(e.position + l.len() + 1, e.message))?;
    Ok(Pseudoidentity::new(lhs, rhs, sig))
}
