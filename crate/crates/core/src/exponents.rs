//! Exponents of omega-terms.
//!
//! Two kinds live here. [`Exponent`] is a constant drawn from the part of the
//! profinite naturals reachable by kappa-terms: either a natural number `n` or
//! `ω+z` for an integer `z`. [`SymExponent`] is an arithmetic expression over
//! integer constants, constant exponents and one schematic parameter `ν`,
//! which stands for `n!` when instantiated and tends to `ω` in the limit.

use std::fmt;
use std::ops::{Add, Mul};

use thiserror::Error;

use crate::{ParseError, Signature};

/// A constant exponent: a natural number or `ω+z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u64),
    OmegaPlus(i64),
}

impl Exponent {
    pub const ZERO: Exponent = Exponent::Finite(0);
    pub const ONE: Exponent = Exponent::Finite(1);
    pub const OMEGA: Exponent = Exponent::OmegaPlus(0);
    pub const OMEGA_MINUS_ONE: Exponent = Exponent::OmegaPlus(-1);

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::OmegaPlus(_))
    }

    /// Whether the exponent may appear in the given signature.
    pub fn valid_in(self, sig: Signature) -> bool {
        !(sig == Signature::Semigroup && self == Exponent::ZERO)
    }

    pub fn checked_add(self, other: Exponent) -> Option<Exponent> {
        use Exponent::*;
        Some(match (self, other) {
            (Finite(m), Finite(n)) => Finite(m.checked_add(n)?),
            (Finite(n), OmegaPlus(z)) | (OmegaPlus(z), Finite(n)) => {
                OmegaPlus(z.checked_add(i64::try_from(n).ok()?)?)
            }
            (OmegaPlus(z), OmegaPlus(w)) => OmegaPlus(z.checked_add(w)?),
        })
    }

    pub fn checked_mul(self, other: Exponent) -> Option<Exponent> {
        use Exponent::*;
        Some(match (self, other) {
            (Finite(m), Finite(n)) => Finite(m.checked_mul(n)?),
            (Finite(0), OmegaPlus(_)) | (OmegaPlus(_), Finite(0)) => Finite(0),
            (Finite(n), OmegaPlus(z)) | (OmegaPlus(z), Finite(n)) => {
                OmegaPlus(z.checked_mul(i64::try_from(n).ok()?)?)
            }
            (OmegaPlus(z), OmegaPlus(w)) => OmegaPlus(z.checked_mul(w)?),
        })
    }
}

impl Add for Exponent {
    type Output = Exponent;

    fn add(self, other: Exponent) -> Exponent {
        self.checked_add(other).expect("exponent overflow")
    }
}

impl Mul for Exponent {
    type Output = Exponent;

    fn mul(self, other: Exponent) -> Exponent {
        self.checked_mul(other).expect("exponent overflow")
    }
}

/// Sum of two exponents in the profinite semiring.
pub fn exp_add(a: Exponent, b: Exponent) -> Exponent {
    a + b
}

/// Product of two exponents in the profinite semiring.
pub fn exp_mul(a: Exponent, b: Exponent) -> Exponent {
    a * b
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::OmegaPlus(0) => write!(f, "w"),
            Exponent::OmegaPlus(z) if z > 0 => write!(f, "w+{z}"),
            Exponent::OmegaPlus(z) => write!(f, "w-{}", z.unsigned_abs()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExponentError {
    #[error("instantiation at n={n} yields the negative exponent {value}")]
    NegativeInstantiation { n: u32, value: i128 },
    #[error("instantiation at n={n} yields exponent 0, which the semigroup signature forbids")]
    ZeroInSemigroup { n: u32 },
    #[error("instantiation at n={n} is below the well-formedness threshold {threshold}")]
    BelowThreshold { n: u32, threshold: u32 },
    #[error("schematic exponent {0} is not well-formed")]
    IllFormed(String),
    #[error("limit of {0} is not a valid exponent")]
    InvalidLimit(String),
    #[error("exponent arithmetic overflow")]
    Overflow,
}

/// A schematic exponent expression over the parameter `ν` (written `k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymExponent {
    IntConst(i64),
    Nu,
    Sum(Box<SymExponent>, Box<SymExponent>),
    Prod(Box<SymExponent>, Box<SymExponent>),
    Const(Exponent),
}

// Intermediate values during evaluation; integers may be negative here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Value {
    Int(i128),
    Omega(i128),
}

impl Value {
    fn add(self, other: Value) -> Option<Value> {
        use Value::*;
        Some(match (self, other) {
            (Int(a), Int(b)) => Int(a.checked_add(b)?),
            (Int(a), Omega(b)) | (Omega(b), Int(a)) | (Omega(a), Omega(b)) => {
                Omega(a.checked_add(b)?)
            }
        })
    }

    fn mul(self, other: Value) -> Option<Value> {
        use Value::*;
        Some(match (self, other) {
            (Int(a), Int(b)) => Int(a.checked_mul(b)?),
            (Int(0), Omega(_)) | (Omega(_), Int(0)) => Int(0),
            (Int(a), Omega(b)) | (Omega(b), Int(a)) | (Omega(a), Omega(b)) => {
                Omega(a.checked_mul(b)?)
            }
        })
    }

    fn of(e: Exponent) -> Value {
        match e {
            Exponent::Finite(n) => Value::Int(n as i128),
            Exponent::OmegaPlus(z) => Value::Omega(z as i128),
        }
    }
}

fn factorial(n: u32) -> Option<i128> {
    (1..=n as i128).try_fold(1i128, |acc, k| acc.checked_mul(k))
}

/// Integer polynomial in `ν`, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly(Vec<i128>);

impl Poly {
    fn constant(c: i128) -> Poly {
        Poly(vec![c]).trimmed()
    }

    fn trimmed(mut self) -> Poly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn coeff(&self, d: usize) -> i128 {
        self.0.get(d).copied().unwrap_or(0)
    }

    fn leading(&self) -> i128 {
        self.0.last().copied().unwrap_or(0)
    }

    fn add(&self, other: &Poly) -> Option<Poly> {
        let len = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(len);
        for d in 0..len {
            out.push(self.coeff(d).checked_add(other.coeff(d))?);
        }
        Some(Poly(out).trimmed())
    }

    fn mul(&self, other: &Poly) -> Option<Poly> {
        if self.is_zero() || other.is_zero() {
            return Some(Poly(Vec::new()));
        }
        let mut out = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(a.checked_mul(*b)?)?;
            }
        }
        Some(Poly(out).trimmed())
    }

    fn eval(&self, m: i128) -> Option<i128> {
        self.0
            .iter()
            .rev()
            .try_fold(0i128, |acc, c| acc.checked_mul(m)?.checked_add(*c))
    }

    /// Every root of a nonzero polynomial has absolute value below this bound.
    fn root_bound(&self) -> i128 {
        if self.degree() == 0 {
            return 0;
        }
        let lead = self.leading().abs();
        let worst = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| (c.abs() + lead - 1) / lead)
            .max()
            .unwrap_or(0);
        worst.saturating_add(1)
    }

    fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }
}

/// Normal form of a schematic exponent: either an integer polynomial in `ν`
/// or `ω` plus an integer polynomial in `ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SymForm {
    Int(Poly),
    Omega(Poly),
}

struct Analysis {
    form: SymForm,
    // Integer factors multiplied into an omega value; the result is only
    // faithful at parameter values where none of them vanishes.
    multipliers: Vec<Poly>,
}

impl SymExponent {
    pub fn nu() -> SymExponent {
        SymExponent::Nu
    }

    pub fn int(k: i64) -> SymExponent {
        SymExponent::IntConst(k)
    }

    pub fn sum(a: SymExponent, b: SymExponent) -> SymExponent {
        SymExponent::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: SymExponent, b: SymExponent) -> SymExponent {
        SymExponent::Prod(Box::new(a), Box::new(b))
    }

    pub fn contains_nu(&self) -> bool {
        match self {
            SymExponent::Nu => true,
            SymExponent::IntConst(_) | SymExponent::Const(_) => false,
            SymExponent::Sum(a, b) | SymExponent::Prod(a, b) => a.contains_nu() || b.contains_nu(),
        }
    }

    /// Replaces `ν` by the given expression.
    pub fn replace_nu(&self, by: &SymExponent) -> SymExponent {
        match self {
            SymExponent::Nu => by.clone(),
            SymExponent::IntConst(_) | SymExponent::Const(_) => self.clone(),
            SymExponent::Sum(a, b) => SymExponent::sum(a.replace_nu(by), b.replace_nu(by)),
            SymExponent::Prod(a, b) => SymExponent::prod(a.replace_nu(by), b.replace_nu(by)),
        }
    }

    fn eval_with(&self, nu: Value) -> Option<Value> {
        match self {
            SymExponent::IntConst(k) => Some(Value::Int(*k as i128)),
            SymExponent::Nu => Some(nu),
            SymExponent::Const(e) => Some(Value::of(*e)),
            SymExponent::Sum(a, b) => a.eval_with(nu)?.add(b.eval_with(nu)?),
            SymExponent::Prod(a, b) => a.eval_with(nu)?.mul(b.eval_with(nu)?),
        }
    }

    fn value_to_exponent(v: Value, n: u32, sig: Signature) -> Result<Exponent, ExponentError> {
        match v {
            Value::Int(k) if k < 0 => Err(ExponentError::NegativeInstantiation { n, value: k }),
            Value::Int(0) if sig == Signature::Semigroup => {
                Err(ExponentError::ZeroInSemigroup { n })
            }
            Value::Int(k) => u64::try_from(k)
                .map(Exponent::Finite)
                .map_err(|_| ExponentError::Overflow),
            Value::Omega(z) => i64::try_from(z)
                .map(Exponent::OmegaPlus)
                .map_err(|_| ExponentError::Overflow),
        }
    }

    /// Evaluates at `ν = n!` without any threshold check.
    pub fn evaluate_at(&self, n: u32, sig: Signature) -> Result<Exponent, ExponentError> {
        let nu = factorial(n).ok_or(ExponentError::Overflow)?;
        let v = self
            .eval_with(Value::Int(nu))
            .ok_or(ExponentError::Overflow)?;
        Self::value_to_exponent(v, n, sig)
    }

    /// Evaluates at an arbitrary positive integer value of `ν` (not a factorial).
    pub fn evaluate_at_value(&self, nu: u64, sig: Signature) -> Result<Exponent, ExponentError> {
        let v = self
            .eval_with(Value::Int(nu as i128))
            .ok_or(ExponentError::Overflow)?;
        Self::value_to_exponent(v, 0, sig)
    }

    fn analyse(&self) -> Option<Analysis> {
        let mut multipliers = Vec::new();
        let form = self.analyse_into(&mut multipliers)?;
        Some(Analysis { form, multipliers })
    }

    fn analyse_into(&self, multipliers: &mut Vec<Poly>) -> Option<SymForm> {
        Some(match self {
            SymExponent::IntConst(k) => SymForm::Int(Poly::constant(*k as i128)),
            SymExponent::Nu => SymForm::Int(Poly(vec![0, 1])),
            SymExponent::Const(Exponent::Finite(n)) => SymForm::Int(Poly::constant(*n as i128)),
            SymExponent::Const(Exponent::OmegaPlus(z)) => {
                SymForm::Omega(Poly::constant(*z as i128))
            }
            SymExponent::Sum(a, b) => {
                let (a, b) = (a.analyse_into(multipliers)?, b.analyse_into(multipliers)?);
                match (a, b) {
                    (SymForm::Int(p), SymForm::Int(q)) => SymForm::Int(p.add(&q)?),
                    (SymForm::Int(p), SymForm::Omega(q))
                    | (SymForm::Omega(p), SymForm::Int(q))
                    | (SymForm::Omega(p), SymForm::Omega(q)) => SymForm::Omega(p.add(&q)?),
                }
            }
            SymExponent::Prod(a, b) => {
                let (a, b) = (a.analyse_into(multipliers)?, b.analyse_into(multipliers)?);
                match (a, b) {
                    (SymForm::Int(p), SymForm::Int(q)) => SymForm::Int(p.mul(&q)?),
                    (SymForm::Int(p), SymForm::Omega(q)) | (SymForm::Omega(q), SymForm::Int(p)) => {
                        if p.is_zero() {
                            SymForm::Int(p)
                        } else {
                            let r = p.mul(&q)?;
                            multipliers.push(p);
                            SymForm::Omega(r)
                        }
                    }
                    (SymForm::Omega(p), SymForm::Omega(q)) => SymForm::Omega(p.mul(&q)?),
                }
            }
        })
    }

    pub(crate) fn form(&self) -> Option<SymForm> {
        self.analyse().map(|a| a.form)
    }

    /// The least `N₀ ≥ 1` such that instantiation at every `n ≥ N₀` yields a
    /// valid exponent of the signature.
    pub fn threshold(&self, sig: Signature) -> Result<u32, ExponentError> {
        let analysis = self.analyse().ok_or(ExponentError::Overflow)?;
        let min: i128 = if sig == Signature::Semigroup { 1 } else { 0 };
        let mut bound: i128 = 0;
        match &analysis.form {
            SymForm::Int(p) => {
                if p.is_constant() {
                    if p.coeff(0) < min {
                        return Err(ExponentError::IllFormed(self.to_string()));
                    }
                } else {
                    if p.leading() <= 0 {
                        return Err(ExponentError::IllFormed(self.to_string()));
                    }
                    let shifted = p
                        .add(&Poly::constant(-min))
                        .ok_or(ExponentError::Overflow)?;
                    bound = bound.max(shifted.root_bound());
                }
            }
            SymForm::Omega(_) => {}
        }
        for m in &analysis.multipliers {
            bound = bound.max(m.root_bound());
        }
        // Past `safe`, n! exceeds every root bound, so instantiation is valid.
        let mut safe = 1u32;
        while factorial(safe).ok_or(ExponentError::Overflow)? <= bound {
            safe += 1;
        }
        let mut n0 = safe;
        while n0 > 1 && self.evaluate_at(n0 - 1, sig).is_ok() {
            n0 -= 1;
        }
        Ok(n0)
    }

    /// Instantiates `ν` at `n!`, rejecting `n` below the well-formedness threshold.
    pub fn instantiate(&self, n: u32, sig: Signature) -> Result<Exponent, ExponentError> {
        let threshold = self.threshold(sig)?;
        if n < threshold {
            return Err(ExponentError::BelowThreshold { n, threshold });
        }
        self.evaluate_at(n, sig)
    }

    /// The value of `ν ↦ ω` obtained by letting `n → ∞` in the `n!` instantiation.
    pub fn limit(&self) -> Result<Exponent, ExponentError> {
        let form = self.form().ok_or(ExponentError::Overflow)?;
        let to_i64 = |c: i128| i64::try_from(c).map_err(|_| ExponentError::Overflow);
        match form {
            SymForm::Int(p) if p.is_constant() => {
                let c = p.coeff(0);
                if c < 0 {
                    Err(ExponentError::InvalidLimit(self.to_string()))
                } else {
                    u64::try_from(c)
                        .map(Exponent::Finite)
                        .map_err(|_| ExponentError::Overflow)
                }
            }
            SymForm::Int(p) => {
                if p.leading() < 0 {
                    Err(ExponentError::InvalidLimit(self.to_string()))
                } else {
                    Ok(Exponent::OmegaPlus(to_i64(p.coeff(0))?))
                }
            }
            SymForm::Omega(p) => Ok(Exponent::OmegaPlus(to_i64(p.coeff(0))?)),
        }
    }

    /// Rebuilds the canonical expression tree from the polynomial normal form.
    pub(crate) fn from_form(form: &SymForm) -> Option<SymExponent> {
        fn monomial(c: i128, d: usize) -> Option<SymExponent> {
            let c = i64::try_from(c).ok()?;
            if d == 0 {
                return Some(SymExponent::IntConst(c));
            }
            let mut mono = SymExponent::Nu;
            for _ in 1..d {
                mono = SymExponent::prod(mono, SymExponent::Nu);
            }
            Some(if c == 1 {
                mono
            } else {
                SymExponent::prod(SymExponent::IntConst(c), mono)
            })
        }
        fn sum_of(p: &Poly, skip_constant: bool) -> Option<Option<SymExponent>> {
            let mut acc: Option<SymExponent> = None;
            for d in (0..p.0.len()).rev() {
                let c = p.coeff(d);
                if c == 0 || (d == 0 && skip_constant) {
                    continue;
                }
                let m = monomial(c, d)?;
                acc = Some(match acc {
                    None => m,
                    Some(a) => SymExponent::sum(a, m),
                });
            }
            Some(acc)
        }
        match form {
            SymForm::Int(p) => Some(sum_of(p, false)?.unwrap_or(SymExponent::IntConst(0))),
            SymForm::Omega(p) => {
                let head = SymExponent::Const(Exponent::OmegaPlus(i64::try_from(p.coeff(0)).ok()?));
                Some(match sum_of(p, true)? {
                    None => head,
                    Some(rest) => SymExponent::sum(head, rest),
                })
            }
        }
    }

    /// Whether the expression evaluates to a valid exponent at every
    /// integer value `ν ≥ 1`, with no vanishing multiplier of an `ω` value.
    /// Schematic proof lines are read as statements for all such `ν`.
    pub fn valid_for_all_positive(&self, sig: Signature) -> bool {
        let Some(analysis) = self.analyse() else {
            return false;
        };
        let min: i128 = if sig == Signature::Semigroup { 1 } else { 0 };
        let positive_from_one = |p: &Poly, floor: i128| -> bool {
            if p.is_constant() {
                return p.coeff(0) >= floor;
            }
            if p.leading() <= 0 {
                return false;
            }
            let Some(shifted) = p.add(&Poly::constant(-floor)) else {
                return false;
            };
            let bound = shifted.root_bound().max(1);
            (1..=bound).all(|m| p.eval(m).is_some_and(|v| v >= floor))
        };
        let base_ok = match &analysis.form {
            SymForm::Int(p) => positive_from_one(p, min),
            SymForm::Omega(_) => true,
        };
        base_ok && self.is_faithful()
    }

    /// Whether no integer factor multiplied into an `ω` value vanishes at
    /// any `ν ≥ 1`, so that the polynomial normal form is exact there.
    pub fn is_faithful(&self) -> bool {
        let Some(analysis) = self.analyse() else {
            return false;
        };
        analysis.multipliers.iter().all(|m| {
            if m.is_constant() {
                return m.coeff(0) != 0;
            }
            (1..=m.root_bound().max(1)).all(|k| m.eval(k).is_some_and(|v| v != 0))
        })
    }

    fn fmt_sum(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymExponent::Sum(a, b) => {
                a.fmt_sum(f)?;
                match b.as_ref() {
                    SymExponent::IntConst(c) if *c < 0 => write!(f, "-{}", c.unsigned_abs()),
                    SymExponent::Prod(m, x) if **m == SymExponent::IntConst(-1) => {
                        write!(f, "-")?;
                        x.fmt_atomic(f)
                    }
                    SymExponent::Sum(..) => {
                        write!(f, "+(")?;
                        b.fmt_sum(f)?;
                        write!(f, ")")
                    }
                    _ => {
                        write!(f, "+")?;
                        b.fmt_prod(f)
                    }
                }
            }
            _ => self.fmt_prod(f),
        }
    }

    fn fmt_prod(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymExponent::Prod(m, x) if **m == SymExponent::IntConst(-1) => {
                write!(f, "-")?;
                x.fmt_atomic(f)
            }
            SymExponent::Prod(a, b) => {
                match a.as_ref() {
                    SymExponent::Sum(..) => a.fmt_atomic(f)?,
                    _ => a.fmt_prod(f)?,
                }
                write!(f, "*")?;
                match b.as_ref() {
                    SymExponent::Prod(m, _) if **m == SymExponent::IntConst(-1) => b.fmt_prod(f),
                    SymExponent::Sum(..) | SymExponent::Prod(..) => b.fmt_atomic(f),
                    _ => b.fmt_prod(f),
                }
            }
            SymExponent::IntConst(c) => write!(f, "{c}"),
            SymExponent::Nu => write!(f, "k"),
            SymExponent::Const(e @ Exponent::Finite(_))
            | SymExponent::Const(e @ Exponent::OmegaPlus(0)) => {
                write!(f, "{e}")
            }
            SymExponent::Const(e) => write!(f, "({e})"),
            SymExponent::Sum(..) => self.fmt_atomic(f),
        }
    }

    fn fmt_atomic(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymExponent::Nu | SymExponent::Const(_) => self.fmt_prod(f),
            SymExponent::IntConst(c) if *c >= 0 => self.fmt_prod(f),
            _ => {
                write!(f, "(")?;
                self.fmt_sum(f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for SymExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_sum(f)
    }
}

/// Evaluates `e` at `ν = n!`; threshold-checked.
pub fn sym_instantiate(e: &SymExponent, n: u32, sig: Signature) -> Result<Exponent, ExponentError> {
    e.instantiate(n, sig)
}

pub fn sym_limit(e: &SymExponent) -> Result<Exponent, ExponentError> {
    e.limit()
}

/// The exponent attached to a power: constant or schematic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PowerExp {
    Const(Exponent),
    Sym(SymExponent),
}

impl PowerExp {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, PowerExp::Sym(_))
    }

    pub fn as_const(&self) -> Option<Exponent> {
        match self {
            PowerExp::Const(e) => Some(*e),
            PowerExp::Sym(_) => None,
        }
    }

    fn to_sym(&self) -> SymExponent {
        match self {
            PowerExp::Const(e) => SymExponent::Const(*e),
            PowerExp::Sym(s) => s.clone(),
        }
    }

    /// Canonical representative: constants stay constants, schematic
    /// expressions are rebuilt from their polynomial form, and schematic
    /// expressions without `ν` collapse to constants when valid.
    pub fn canonical(&self) -> PowerExp {
        match self {
            PowerExp::Const(_) => self.clone(),
            PowerExp::Sym(s) => match s.form() {
                Some(SymForm::Int(p)) if p.is_constant() => match u64::try_from(p.coeff(0)) {
                    Ok(n) => PowerExp::Const(Exponent::Finite(n)),
                    Err(_) => PowerExp::Sym(SymExponent::IntConst(p.coeff(0) as i64)),
                },
                Some(SymForm::Omega(p)) if p.is_constant() => match i64::try_from(p.coeff(0)) {
                    Ok(z) => PowerExp::Const(Exponent::OmegaPlus(z)),
                    Err(_) => self.clone(),
                },
                Some(form) => {
                    PowerExp::Sym(SymExponent::from_form(&form).unwrap_or_else(|| s.clone()))
                }
                None => self.clone(),
            },
        }
    }

    pub fn add(&self, other: &PowerExp) -> PowerExp {
        match (self, other) {
            (PowerExp::Const(a), PowerExp::Const(b)) => match a.checked_add(*b) {
                Some(c) => PowerExp::Const(c),
                None => PowerExp::Sym(SymExponent::sum(self.to_sym(), other.to_sym())),
            },
            _ => PowerExp::Sym(SymExponent::sum(self.to_sym(), other.to_sym())).canonical(),
        }
    }

    pub fn mul(&self, other: &PowerExp) -> PowerExp {
        match (self, other) {
            (PowerExp::Const(a), PowerExp::Const(b)) => match a.checked_mul(*b) {
                Some(c) => PowerExp::Const(c),
                None => PowerExp::Sym(SymExponent::prod(self.to_sym(), other.to_sym())),
            },
            _ => PowerExp::Sym(SymExponent::prod(self.to_sym(), other.to_sym())).canonical(),
        }
    }

    /// Product that refuses schematic results whose normal form would be
    /// wrong for some `ν ≥ 1`.
    pub fn try_mul(&self, other: &PowerExp) -> Option<PowerExp> {
        match (self, other) {
            (PowerExp::Const(a), PowerExp::Const(b)) => a.checked_mul(*b).map(PowerExp::Const),
            _ => {
                let raw = SymExponent::prod(self.to_sym(), other.to_sym());
                raw.is_faithful().then(|| PowerExp::Sym(raw).canonical())
            }
        }
    }

    pub fn is_one(&self) -> bool {
        *self == PowerExp::Const(Exponent::ONE)
    }

    pub fn is_zero(&self) -> bool {
        *self == PowerExp::Const(Exponent::ZERO)
    }

    /// Instantiates `ν` at `n!` (no threshold check; used for auditing).
    pub fn evaluate_at(&self, n: u32, sig: Signature) -> Result<Exponent, ExponentError> {
        match self {
            PowerExp::Const(e) => Ok(*e),
            PowerExp::Sym(s) => s.evaluate_at(n, sig),
        }
    }
}

impl From<Exponent> for PowerExp {
    fn from(e: Exponent) -> Self {
        PowerExp::Const(e)
    }
}

impl From<SymExponent> for PowerExp {
    fn from(e: SymExponent) -> Self {
        PowerExp::Sym(e)
    }
}

impl fmt::Display for PowerExp {
    /// Renders the text that follows `^` in the term syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerExp::Const(Exponent::Finite(n)) => write!(f, "{n}"),
            PowerExp::Const(Exponent::OmegaPlus(0)) => write!(f, "w"),
            PowerExp::Const(e) => write!(f, "({e})"),
            PowerExp::Sym(SymExponent::Nu) => write!(f, "k"),
            PowerExp::Sym(s) => write!(f, "({s})"),
        }
    }
}

/// Recursive-descent parser for exponent expressions over ASCII input.
pub(crate) struct ExpParser<'a> {
    src: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> ExpParser<'a> {
    pub(crate) fn new(src: &'a str, pos: usize) -> Self {
        ExpParser {
            src: src.as_bytes(),
            pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| ParseError::new(start, "number too large"))
    }

    /// Parses the exponent that follows `^`: `nat`, `w`, `k` or `( sexp )`.
    pub(crate) fn power_exp(&mut self) -> Result<PowerExp, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(PowerExp::Const(Exponent::Finite(self.number()?))),
            Some(b'w') => {
                self.pos += 1;
                Ok(PowerExp::Const(Exponent::OMEGA))
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(PowerExp::Sym(SymExponent::Nu))
            }
            Some(b'(') => {
                let start = self.pos;
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')' closing exponent"));
                }
                self.pos += 1;
                Self::finish(e).map_err(|msg| ParseError::new(start, msg))
            }
            _ => Err(self.err("expected exponent: number, 'w', 'k' or '('")),
        }
    }

    /// Parses a complete exponent expression (whole input).
    pub(crate) fn full(mut self) -> Result<PowerExp, ParseError> {
        let e = self.sum()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input in exponent"));
        }
        Self::finish(e).map_err(|msg| ParseError::new(0, msg))
    }

    fn finish(e: SymExponent) -> Result<PowerExp, String> {
        if e.contains_nu() {
            return Ok(PowerExp::Sym(e));
        }
        match e {
            SymExponent::IntConst(k) if k >= 0 => Ok(PowerExp::Const(Exponent::Finite(k as u64))),
            SymExponent::IntConst(k) => Err(format!("negative exponent {k}")),
            SymExponent::Const(c) => Ok(PowerExp::Const(c)),
            other => Err(format!("cannot evaluate exponent {other}")),
        }
    }

    // Collapses subtrees without ν to a single constant leaf.
    fn fold(e: SymExponent) -> SymExponent {
        if e.contains_nu() {
            return e;
        }
        match e.eval_with(Value::Int(0)) {
            Some(Value::Int(k)) => match i64::try_from(k) {
                Ok(k) => SymExponent::IntConst(k),
                Err(_) => e,
            },
            Some(Value::Omega(z)) => match i64::try_from(z) {
                Ok(z) => SymExponent::Const(Exponent::OmegaPlus(z)),
                Err(_) => e,
            },
            None => e,
        }
    }

    fn negate(e: SymExponent) -> SymExponent {
        match e {
            SymExponent::IntConst(c) => SymExponent::IntConst(-c),
            other => Self::fold(SymExponent::prod(SymExponent::IntConst(-1), other)),
        }
    }

    fn sum(&mut self) -> Result<SymExponent, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc = Self::fold(SymExponent::sum(acc, rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    acc = Self::fold(SymExponent::sum(acc, Self::negate(rhs)));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<SymExponent, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = Self::fold(SymExponent::prod(acc, rhs));
                }
                Some(c) if c.is_ascii_digit() || c == b'w' || c == b'k' || c == b'(' => {
                    let rhs = self.unary()?;
                    acc = Self::fold(SymExponent::prod(acc, rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SymExponent, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Self::negate(inner));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<SymExponent, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n = self.number()?;
                i64::try_from(n)
                    .map(SymExponent::IntConst)
                    .map_err(|_| ParseError::new(start, "number too large"))
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(SymExponent::Const(Exponent::OMEGA))
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(SymExponent::Nu)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected number, 'w', 'k' or '('")),
        }
    }
}

/// Parses a bare exponent expression such as `w-1`, `(k*k)` or `5`.
pub fn parse_exponent(text: &str) -> Result<PowerExp, ParseError> {
    ExpParser::new(text, 0).full()
}
