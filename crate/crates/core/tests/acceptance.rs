//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Every random draw uses a fixed seed from `common`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use pseudoeq::deciders::{
    com_base_pool, com_product_pool, decide_com, decide_group, find_witness, group_pool_large,
    group_pool_small,
};
use pseudoeq::exponents::{exp_add, exp_mul, Exponent, PowerExp, SymExponent};
use pseudoeq::proofs::{
    audit_pool, audit_soundness, check_script, parse_script, CheckedScript, ProofScript,
};
use pseudoeq::rees::{
    congruence_from_triple, enumerate_triples, triple_from_congruence, ReesMatrix,
};
use pseudoeq::semigroups::{
    adjoin_identity_if_needed, catalog_by_name, enumerate_congruences, enumerate_monoids,
    standard_catalog, FinSemigroup,
};
use pseudoeq::terms::{
    first_occurrence_order, parse_pseudoidentity, Direction, Pseudoidentity, Term,
};
use pseudoeq::Signature;

use common::{naive_eval, naive_holds, naive_power, random_term, ExpRange};

/// Minimum number of scripts in the corpus.
const MIN_SCRIPTS: usize = 14;
/// Random pairs drawn for the first-occurrence criterion, per direction.
const SYNTACTIC_PAIRS: usize = 10_000;
/// Random identities kept for each decider.
const DECIDER_IDENTITIES: usize = 10_000;
/// Identities re-checked against the pairwise product pool.
const PRODUCT_SUBSAMPLE: usize = 300;
/// Exponent ranges of the decider criterion.
const DECIDER_RANGE: ExpRange = ExpRange {
    max_finite: 6,
    max_shift: 4,
    allow_zero: true,
};
/// Commutative totals the monogenic pool separates: finite totals below
/// this bound, and shifts of `ω` below half of it in absolute value.
const COM_WINDOW: i128 = 60;
/// Time budget for the Rees criterion.
const REES_BUDGET: Duration = Duration::from_secs(60);
/// Minimum number of broken corpus variants.
const MIN_NEGATIVE: usize = 10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn id(text: &str) -> Pseudoidentity {
    parse_pseudoidentity(text, Signature::Monoid).expect("identity parses")
}

type Checked = Result<(ProofScript, CheckedScript), String>;

fn corpus_checked() -> Vec<(String, Checked)> {
    common::corpus()
        .into_iter()
        .map(|(name, text)| {
            let r = parse_script(&text)
                .map_err(|e| e.to_string())
                .and_then(|s| check_script(&s).map(|c| (s, c)).map_err(|r| r.to_string()));
            (name, r)
        })
        .collect()
}

fn corpus_replay() -> Outcome {
    let results = corpus_checked();
    let failed: Vec<String> = results
        .iter()
        .filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}")))
        .collect();
    let total = results.len();
    let pass = failed.is_empty() && total >= MIN_SCRIPTS;
    outcome(
        pass,
        format!(
            "{}/{} scripts accepted (need >= {MIN_SCRIPTS}) {}",
            total - failed.len(),
            total,
            failed.join("; ")
        ),
    )
}

fn soundness_audit() -> Outcome {
    let monoids = audit_pool(Signature::Monoid);
    let semigroups = audit_pool(Signature::Semigroup);
    let exhaustive = enumerate_monoids(4).expect("order 4").len();
    let catalog = standard_catalog().len();
    let mut violations = Vec::new();
    let (mut checks, mut relevant) = (0, 0);
    let mut scripts = 0;
    for (name, r) in corpus_checked() {
        let Ok((script, checked)) = r else {
            violations.push(format!("{name}: not accepted"));
            continue;
        };
        let pool = if script.signature == Signature::Monoid {
            &monoids
        } else {
            &semigroups
        };
        let report = audit_soundness(&script, &checked, pool);
        scripts += 1;
        checks += report.checks;
        relevant += report.relevant_models;
        violations.extend(
            report
                .violations
                .iter()
                .map(|v| format!("{name}/{} in {}: {}", v.step, v.model, v.witness)),
        );
    }
    let pool_ok = monoids.len() == exhaustive + catalog && exhaustive == 45;
    outcome(
        violations.is_empty() && pool_ok,
        format!(
            "{scripts} scripts, pool {} ({exhaustive} monoids of order <= 4 + {catalog} catalog^1), {relevant} model/script pairs, {checks} checks, {} violations {}",
            monoids.len(),
            violations.len(),
            violations.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn excluded_monoids() -> Outcome {
    // (monoid, identity, expected to hold)
    let facts: &[(&str, &str, bool)] = &[
        ("Sl2", "(xy)^w x = x", false),
        ("Sl2", "x^w = 1", false),
        ("C(2,1)^1", "x^(w+1) = x", false),
        ("C(2,1)^1", "x^(w+1) = x^w", true),
        ("C2", "x^(w+1) = x^w", false),
        ("C3", "x^(w+1) = x^w", false),
        ("C5", "x^(w+1) = x^w", false),
        ("B(1,2)^1", "(x^w y)^w x^w = (x^w y)^w", false),
        ("B(2,1)^1", "(x^w y)^w x^w = (x^w y)^w", true),
        ("B2^1", "((xy)^w x (xy)^w)^w = (xy)^w", false),
        ("N^1", "xy = yx", false),
        ("B(1,2)^1", "xy = yx", false),
        ("B(2,1)^1", "xy = yx", false),
        ("T^1", "x^w y = y x^w", false),
    ];
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for &(name, text, expected) in facts {
        let s = catalog_by_name(name).expect("catalog entry");
        let e = id(text);
        let sat = s.satisfies(&e).expect("closed identity");
        if sat.holds() != expected || naive_holds(&s, &e) != expected {
            bad.push(format!("{name} |= {text}"));
            continue;
        }
        if let Some(phi) = sat.witness() {
            // The witness must separate the sides under independent evaluation.
            if naive_eval(&s, &e.lhs, phi) == naive_eval(&s, &e.rhs, phi) {
                bad.push(format!(
                    "{name}: witness {} does not separate {text}",
                    s.format_assignment(phi)
                ));
            }
            shown.push(format!(
                "{name} fails [{text}] at {}",
                s.format_assignment(phi)
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{}/{} facts agree; {} {}",
            facts.len() - bad.len(),
            facts.len(),
            shown.join(", "),
            bad.join("; ")
        ),
    )
}

/// `v = w u` (or `u w`) with `w` over the letters of `u` keeps the
/// first-occurrence order read from the right (or left).
fn syntactic_pair(rng: &mut ChaCha8Rng, dir: Direction) -> Pseudoidentity {
    let letters = ['x', 'y', 'z'];
    let u = random_term(rng, &letters, 3, DECIDER_RANGE);
    let v = if rng.gen_bool(0.5) {
        let own: Vec<char> = u.letters().into_iter().collect();
        if own.is_empty() {
            random_term(rng, &letters, 3, DECIDER_RANGE)
        } else {
            let w = random_term(rng, &own, 2, DECIDER_RANGE);
            match dir {
                Direction::Right => Term::concat([w, u.clone()]),
                Direction::Left => Term::concat([u.clone(), w]),
            }
        }
    } else {
        random_term(rng, &letters, 3, DECIDER_RANGE)
    };
    Pseudoidentity::new(u, v, Signature::Monoid)
}

fn first_occurrence_criterion() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, dir, stream) in [
        ("B(1,2)^1", Direction::Right, 4),
        ("B(2,1)^1", Direction::Left, 5),
    ] {
        let s = catalog_by_name(name).expect("catalog entry");
        let mut rng = common::rng(stream);
        let pairs: Vec<Pseudoidentity> = (0..SYNTACTIC_PAIRS)
            .map(|_| syntactic_pair(&mut rng, dir))
            .collect();
        let results: Vec<(bool, bool)> = pairs
            .par_iter()
            .map(|e| {
                let syntactic = first_occurrence_order(&e.lhs, dir).unwrap()
                    == first_occurrence_order(&e.rhs, dir).unwrap();
                (syntactic, s.holds(e))
            })
            .collect();
        let mismatches = results.iter().filter(|(a, b)| a != b).count();
        let equal = results.iter().filter(|(a, _)| *a).count();
        pass &= mismatches == 0 && equal > SYNTACTIC_PAIRS / 10 && equal < SYNTACTIC_PAIRS * 9 / 10;
        lines.push(format!(
            "{name}: {} pairs, {equal} with equal order, {mismatches} mismatches",
            pairs.len()
        ));
    }
    outcome(pass, lines.join("; "))
}

fn map_exponents(t: &Term, f: &mut impl FnMut(Exponent) -> Exponent) -> Term {
    match t {
        Term::Letter(_) | Term::Unit => t.clone(),
        Term::Concat(parts) => Term::Concat(parts.iter().map(|p| map_exponents(p, f)).collect()),
        Term::Power(b, PowerExp::Const(e)) => {
            Term::Power(Box::new(map_exponents(b, f)), PowerExp::Const(f(*e)))
        }
        Term::Power(..) => t.clone(),
    }
}

/// Rewrites that every finite group validates: `x^(w+n) = x^n` and
/// inserting `x^w` next to a letter.
fn group_variant(rng: &mut ChaCha8Rng, t: &Term) -> Term {
    match t {
        Term::Letter(c) if rng.gen_bool(0.15) => {
            let other = ['x', 'y', 'z'][rng.gen_range(0..3)];
            Term::concat([
                Term::Letter(*c),
                Term::Power(
                    Box::new(Term::Letter(other)),
                    PowerExp::Const(Exponent::OMEGA),
                ),
            ])
        }
        Term::Letter(_) | Term::Unit => t.clone(),
        Term::Concat(parts) => Term::Concat(parts.iter().map(|p| group_variant(rng, p)).collect()),
        Term::Power(b, PowerExp::Const(e)) => {
            let e = match *e {
                Exponent::Finite(n) if n >= 1 && rng.gen_bool(0.3) => Exponent::OmegaPlus(n as i64),
                Exponent::OmegaPlus(z) if z >= 0 && rng.gen_bool(0.3) => Exponent::Finite(z as u64),
                e => e,
            };
            Term::Power(Box::new(group_variant(rng, b)), PowerExp::Const(e))
        }
        Term::Power(..) => t.clone(),
    }
}

/// Rewrites that every commutative monoid validates: reordering factors
/// and unfolding `b^n` into `b b^(n-1)`.
fn com_variant(rng: &mut ChaCha8Rng, t: &Term) -> Term {
    match t {
        Term::Letter(_) | Term::Unit => t.clone(),
        Term::Concat(parts) => {
            let mut parts: Vec<Term> = parts.iter().map(|p| com_variant(rng, p)).collect();
            parts.shuffle(rng);
            Term::Concat(parts)
        }
        Term::Power(b, PowerExp::Const(Exponent::Finite(n))) if *n >= 2 && rng.gen_bool(0.3) => {
            let b = com_variant(rng, b);
            Term::concat([
                b.clone(),
                Term::Power(Box::new(b), PowerExp::Const(Exponent::Finite(n - 1))),
            ])
        }
        Term::Power(b, e) => Term::Power(Box::new(com_variant(rng, b)), e.clone()),
    }
}

/// Shifts one exponent by one, which usually breaks validity.
fn perturb(rng: &mut ChaCha8Rng, t: &Term) -> Term {
    let mut remaining = rng.gen_range(0..4);
    map_exponents(t, &mut |e| {
        let out = if remaining == 0 {
            match e {
                Exponent::Finite(n) => Exponent::Finite(n + 1),
                Exponent::OmegaPlus(z) => Exponent::OmegaPlus(z + 1),
            }
        } else {
            e
        };
        remaining -= 1;
        out
    })
}

fn decider_identity(
    rng: &mut ChaCha8Rng,
    variant: fn(&mut ChaCha8Rng, &Term) -> Term,
) -> Pseudoidentity {
    let letters = ['x', 'y', 'z'];
    let u = random_term(rng, &letters, 3, DECIDER_RANGE);
    let v = match rng.gen_range(0..3) {
        0 => random_term(rng, &letters, 3, DECIDER_RANGE),
        1 => variant(rng, &u),
        _ => {
            let v = variant(rng, &u);
            perturb(rng, &v)
        }
    };
    Pseudoidentity::new(u, v, Signature::Monoid)
}

/// Per-letter commutative totals as `(is ω-form, value)`, computed without
/// the library's exponent arithmetic.
fn com_totals(t: &Term) -> BTreeMap<char, (bool, i128)> {
    fn mul(a: (bool, i128), b: (bool, i128)) -> (bool, i128) {
        match (a, b) {
            ((false, 0), _) | (_, (false, 0)) => (false, 0),
            ((false, m), (false, n)) => (false, m * n),
            ((true, z), (false, n)) | ((false, n), (true, z)) => (true, z * n),
            ((true, z), (true, y)) => (true, z * y),
        }
    }
    fn walk(t: &Term, m: (bool, i128), acc: &mut BTreeMap<char, (bool, i128)>) {
        match t {
            Term::Letter(c) => {
                let cur = acc.entry(*c).or_insert((false, 0));
                *cur = (cur.0 || m.0, cur.1 + m.1);
            }
            Term::Unit => {}
            Term::Concat(parts) => parts.iter().for_each(|p| walk(p, m, acc)),
            Term::Power(b, PowerExp::Const(e)) => {
                let e = match *e {
                    Exponent::Finite(n) => (false, n as i128),
                    Exponent::OmegaPlus(z) => (true, z as i128),
                };
                walk(b, mul(m, e), acc)
            }
            Term::Power(..) => unreachable!("constant terms only"),
        }
    }
    let mut acc = BTreeMap::new();
    walk(t, (false, 1), &mut acc);
    acc.retain(|_, v| *v != (false, 0));
    acc
}

fn in_com_window(e: &Pseudoidentity) -> bool {
    [com_totals(&e.lhs), com_totals(&e.rhs)]
        .iter()
        .flat_map(|m| m.values())
        .all(|&(omega, v)| {
            if omega {
                v.abs() < COM_WINDOW / 2
            } else {
                v < COM_WINDOW
            }
        })
}

fn holds_in_all(pool: &[(String, FinSemigroup)], e: &Pseudoidentity) -> bool {
    pool.iter().all(|(_, s)| s.holds(e))
}

fn witness_separates(pool: &[(String, FinSemigroup)], e: &Pseudoidentity) -> bool {
    match find_witness(pool, e) {
        None => false,
        Some((name, phi)) => {
            let s = &pool
                .iter()
                .find(|(n, _)| *n == name)
                .expect("pool member")
                .1;
            naive_eval(s, &e.lhs, &phi) != naive_eval(s, &e.rhs, &phi)
        }
    }
}

fn decider_criterion() -> Outcome {
    let mut rng = common::rng(5);
    let group: Vec<Pseudoidentity> = (0..DECIDER_IDENTITIES)
        .map(|_| decider_identity(&mut rng, group_variant))
        .collect();
    let (small, large) = (group_pool_small(), group_pool_large());
    let g_results: Vec<(bool, bool)> = group
        .par_iter()
        .map(|e| {
            let d = decide_group(&e.lhs, &e.rhs).expect("constant identity");
            let agrees = if d {
                holds_in_all(&small, e)
            } else {
                witness_separates(&large, e)
            };
            (d, agrees)
        })
        .collect();
    let g_valid = g_results.iter().filter(|r| r.0).count();
    let g_mismatch = g_results.iter().filter(|r| !r.1).count();

    let mut com = Vec::new();
    let mut drawn = 0;
    while com.len() < DECIDER_IDENTITIES {
        drawn += 1;
        let e = decider_identity(&mut rng, com_variant);
        if in_com_window(&e) {
            com.push(e);
        }
    }
    let base = com_base_pool();
    let c_results: Vec<(bool, bool, bool)> = com
        .par_iter()
        .map(|e| {
            let d = decide_com(&e.lhs, &e.rhs).expect("constant identity");
            let agrees = if d {
                holds_in_all(&base, e)
            } else {
                witness_separates(&base, e)
            };
            let oracle = com_totals(&e.lhs) == com_totals(&e.rhs);
            (d, agrees, oracle == d)
        })
        .collect();
    let c_valid = c_results.iter().filter(|r| r.0).count();
    let c_mismatch = c_results.iter().filter(|r| !r.1 || !r.2).count();

    // Products are checked on a subsample with at most two letters.
    let products = com_product_pool();
    let sample: Vec<&Pseudoidentity> = com
        .iter()
        .filter(|e| e.letters().len() <= 2)
        .step_by(7)
        .take(PRODUCT_SUBSAMPLE)
        .collect();
    let p_mismatch = sample
        .par_iter()
        .filter(|e| {
            let d = decide_com(&e.lhs, &e.rhs).unwrap();
            d != holds_in_all(&products, e)
        })
        .count();

    let pass =
        g_mismatch == 0 && c_mismatch == 0 && p_mismatch == 0 && sample.len() == PRODUCT_SUBSAMPLE;
    outcome(
        pass,
        format!(
            "G: {} identities ({g_valid} valid), {g_mismatch} mismatches; Com: {} identities ({c_valid} valid, {drawn} drawn), {c_mismatch} mismatches; Com products: {} identities x {} monoids, {p_mismatch} mismatches",
            group.len(),
            com.len(),
            sample.len(),
            products.len()
        ),
    )
}

fn rees_criterion() -> Outcome {
    let start = Instant::now();
    let mut matrices = 0;
    let mut triples = 0;
    let mut bad = Vec::new();
    for g in ["C2", "C3", "C4", "C2xC2", "S3"] {
        let group = catalog_by_name(g).expect("catalog group");
        for i in 1..=2 {
            for l in 1..=2 {
                for r in ReesMatrix::all_normalized(i, l, &group).expect("small") {
                    matrices += 1;
                    let ts = enumerate_triples(&r).expect("small");
                    triples += ts.len();
                    let from_triples: BTreeSet<_> = ts
                        .iter()
                        .map(|t| congruence_from_triple(&r, t).expect("valid triple"))
                        .collect();
                    let congruences: BTreeSet<_> = enumerate_congruences(&r.build())
                        .expect("small")
                        .into_iter()
                        .collect();
                    let round_trip = ts.iter().all(|t| {
                        triple_from_congruence(&r, &congruence_from_triple(&r, t).unwrap()).as_ref()
                            == Ok(t)
                    });
                    if from_triples.len() != ts.len() || from_triples != congruences || !round_trip
                    {
                        bad.push(format!("{g} {i}x{l} {:?}", r));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed <= REES_BUDGET,
        format!(
            "{matrices} matrices, {triples} triples, {} failures, {:.1}s (budget {}s)",
            bad.len(),
            elapsed.as_secs_f64(),
            REES_BUDGET.as_secs()
        ),
    )
}

fn exponent_criterion() -> Outcome {
    let grid: Vec<Exponent> = (0..=10)
        .map(Exponent::Finite)
        .chain((-5..=5).map(Exponent::OmegaPlus))
        .collect();
    let pool: Vec<(String, FinSemigroup)> = standard_catalog()
        .into_iter()
        .flat_map(|(n, s)| {
            let m = adjoin_identity_if_needed(&s);
            [(n.clone(), s), (format!("{n}^1"), m)]
        })
        .collect();
    let mut checks = 0u64;
    let mut bad: Vec<String> = Vec::new();
    for (name, s) in &pool {
        for x in 0..s.order() {
            for &a in &grid {
                let Ok(pa) = s.power(x, a) else { continue };
                if Some(pa) != naive_power(s, x, a) {
                    bad.push(format!("{name}: {x}^{a}"));
                }
                for &b in &grid {
                    let Ok(pb) = s.power(x, b) else { continue };
                    checks += 2;
                    if s.power(x, exp_add(a, b)).ok() != Some(s.mul(pa, pb)) {
                        bad.push(format!("{name}: {x}^({a}+{b})"));
                    }
                    if s.power(x, exp_mul(a, b)).ok() != s.power(pa, b).ok() {
                        bad.push(format!("{name}: {x}^({a}*{b})"));
                    }
                }
            }
        }
    }
    // Limit stabilization over a fixed grid of schematic exponents.
    let nu = SymExponent::nu;
    let int = SymExponent::int;
    let sym_grid = [
        nu(),
        SymExponent::sum(nu(), int(-1)),
        SymExponent::sum(nu(), int(3)),
        SymExponent::prod(int(2), nu()),
        SymExponent::sum(SymExponent::prod(int(2), nu()), int(-3)),
        SymExponent::prod(nu(), nu()),
        SymExponent::prod(SymExponent::Const(Exponent::OmegaPlus(3)), nu()),
        SymExponent::prod(SymExponent::Const(Exponent::OmegaPlus(-2)), nu()),
        SymExponent::sum(SymExponent::Const(Exponent::OMEGA), nu()),
    ];
    for e in &sym_grid {
        let lim = e.limit().expect("grid limits exist");
        for (name, s) in &pool {
            for n in 4..=8 {
                let inst = e.instantiate(n, s.signature()).expect("above threshold");
                for x in 0..s.order() {
                    checks += 1;
                    if s.power(x, inst).ok() != s.power(x, lim).ok() {
                        bad.push(format!("{name}: {e} at n={n}"));
                    }
                }
            }
        }
    }
    // Named cases.
    let omega_plus_omega = exp_add(Exponent::OMEGA, Exponent::OMEGA) == Exponent::OMEGA;
    let inverse_inverse =
        exp_mul(Exponent::OMEGA_MINUS_ONE, Exponent::OMEGA_MINUS_ONE) == Exponent::OmegaPlus(1);
    let minus_two_at_two = SymExponent::prod(SymExponent::Const(Exponent::OmegaPlus(-2)), nu())
        .evaluate_at(2, Signature::Monoid)
        == Ok(Exponent::OmegaPlus(-4));
    let evaluated = pool.iter().all(|(_, s)| {
        (0..s.order()).all(|x| {
            let inv = naive_power(s, x, Exponent::OMEGA_MINUS_ONE).unwrap();
            naive_power(s, inv, Exponent::OMEGA_MINUS_ONE)
                == naive_power(s, x, Exponent::OmegaPlus(1))
                && naive_power(
                    s,
                    naive_power(s, x, Exponent::OMEGA).unwrap(),
                    Exponent::Finite(2),
                ) == naive_power(s, x, Exponent::OMEGA)
        })
    });
    let named = omega_plus_omega && inverse_inverse && minus_two_at_two && evaluated;
    if !named {
        bad.push(format!(
            "named cases: w+w=w {omega_plus_omega}, (w-1)(w-1)=w+1 {inverse_inverse}, (w-2)k at n=2 {minus_two_at_two}, evaluation {evaluated}"
        ));
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} semigroups, {checks} checks, {} violations; w+w=w and (w-1)(w-1)=w+1 hold {}",
            pool.len(),
            bad.len(),
            bad.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn negative_controls() -> Outcome {
    let controls = common::negative_controls();
    let mut bad = Vec::new();
    for (file, id, what, text) in &controls {
        match parse_script(text).map(|s| check_script(&s)) {
            Ok(Err(r)) if r.step == *id => {}
            Ok(Err(r)) => bad.push(format!(
                "{file} ({what}): rejected at {} instead of {id}",
                r.step
            )),
            Ok(Ok(_)) => bad.push(format!("{file} ({what}): accepted")),
            Err(e) => bad.push(format!("{file} ({what}): parse error {e}")),
        }
    }
    outcome(
        bad.is_empty() && controls.len() >= MIN_NEGATIVE,
        format!(
            "{}/{} mutants rejected at the mutated step (need >= {MIN_NEGATIVE}) {}",
            controls.len() - bad.len(),
            controls.len(),
            bad.join("; ")
        ),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("proof corpus replay", corpus_replay),
        ("soundness audit", soundness_audit),
        ("excluded-monoid facts", excluded_monoids),
        (
            "first-occurrence criterion for B(1,2)^1 and B(2,1)^1",
            first_occurrence_criterion,
        ),
        ("decider-oracle equivalence", decider_criterion),
        ("Rees congruence bijection", rees_criterion),
        ("exponent/evaluation coherence", exponent_criterion),
        ("negative controls", negative_controls),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failures += usize::from(!o.pass);
        println!(
            "criterion {} ({title}): {} - {} [{:.1}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail.trim_end(),
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
