//! Shared fixtures for the integration tests: corpus access, seeded random
//! term generators and naive evaluation oracles that do not go through the
//! library's power cache.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use pseudoeq::exponents::{Exponent, PowerExp};
use pseudoeq::semigroups::{Assignment, FinSemigroup};
use pseudoeq::terms::{Pseudoidentity, Term};
use pseudoeq::Signature;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_0001;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every `.psf` file in the corpus as `(file name, contents)`, sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "psf"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).expect("readable script"))
        })
        .collect();
    out.sort();
    out
}

pub fn corpus_file(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).expect("corpus file")
}

/// Ranges for randomly drawn constant exponents.
#[derive(Clone, Copy, Debug)]
pub struct ExpRange {
    pub max_finite: u64,
    pub max_shift: i64,
    pub allow_zero: bool,
}

pub const DEFAULT_RANGE: ExpRange = ExpRange {
    max_finite: 6,
    max_shift: 4,
    allow_zero: true,
};

pub fn random_exponent(rng: &mut ChaCha8Rng, r: ExpRange) -> Exponent {
    if rng.gen_bool(0.5) {
        let lo = if r.allow_zero { 0 } else { 1 };
        Exponent::Finite(rng.gen_range(lo..=r.max_finite))
    } else {
        Exponent::OmegaPlus(rng.gen_range(-r.max_shift..=r.max_shift))
    }
}

/// A random constant term over `letters` with powers nested at most `depth` deep.
pub fn random_term(rng: &mut ChaCha8Rng, letters: &[char], depth: u32, r: ExpRange) -> Term {
    let leaf = |rng: &mut ChaCha8Rng| Term::Letter(letters[rng.gen_range(0..letters.len())]);
    if depth == 0 {
        return leaf(rng);
    }
    let len = rng.gen_range(1..=3);
    let parts: Vec<Term> = (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => leaf(rng),
            1 => {
                let base = random_term(rng, letters, depth - 1, r);
                Term::Power(Box::new(base), PowerExp::Const(random_exponent(rng, r)))
            }
            _ => random_term(rng, letters, depth - 1, r),
        })
        .collect();
    Term::concat(parts)
}

pub fn random_identity(
    rng: &mut ChaCha8Rng,
    letters: &[char],
    depth: u32,
    r: ExpRange,
) -> Pseudoidentity {
    let lhs = random_term(rng, letters, depth, r);
    let rhs = random_term(rng, letters, depth, r);
    Pseudoidentity::new(lhs, rhs, Signature::Monoid)
}

/// Index and period of `x`, found by walking the powers of `x` directly.
pub fn naive_index_period(s: &FinSemigroup, x: usize) -> (u64, u64) {
    let mut seen: BTreeMap<usize, u64> = BTreeMap::new();
    let mut cur = x;
    let mut k = 1;
    loop {
        if let Some(&first) = seen.get(&cur) {
            return (first, k - first);
        }
        seen.insert(cur, k);
        cur = s.mul(cur, x);
        k += 1;
    }
}

fn naive_finite_power(s: &FinSemigroup, x: usize, n: u64) -> Option<usize> {
    if n == 0 {
        return s.identity();
    }
    let (i, p) = naive_index_period(s, x);
    let n = if n < i { n } else { i + (n - i) % p };
    let mut acc = x;
    for _ in 1..n {
        acc = s.mul(acc, x);
    }
    Some(acc)
}

/// `x^e` computed from index and period by repeated multiplication.
pub fn naive_power(s: &FinSemigroup, x: usize, e: Exponent) -> Option<usize> {
    match e {
        Exponent::Finite(n) => naive_finite_power(s, x, n),
        Exponent::OmegaPlus(z) => {
            let (i, p) = naive_index_period(s, x);
            // A multiple of the period far enough past the index that `N + z`
            // stays inside the cycle.
            let mut n = p;
            while (n as i64) + z < i as i64 {
                n += p;
            }
            naive_finite_power(s, x, (n as i64 + z) as u64)
        }
    }
}

pub fn naive_eval(s: &FinSemigroup, t: &Term, phi: &Assignment) -> Option<usize> {
    match t {
        Term::Letter(c) => phi.get(c).copied(),
        Term::Unit => s.identity(),
        Term::Concat(parts) => {
            let mut vals = parts.iter().map(|p| naive_eval(s, p, phi));
            let first = vals.next()??;
            vals.try_fold(first, |acc, v| Some(s.mul(acc, v?)))
        }
        Term::Power(b, PowerExp::Const(e)) => naive_power(s, naive_eval(s, b, phi)?, *e),
        Term::Power(_, PowerExp::Sym(_)) => None,
    }
}

/// Exhaustive check of `id` in `s` using [`naive_eval`].
pub fn naive_holds(s: &FinSemigroup, id: &Pseudoidentity) -> bool {
    let letters: Vec<char> = id.letters().into_iter().collect();
    let n = s.order();
    let total = n.pow(letters.len() as u32);
    (0..total).all(|mut idx| {
        let mut phi = Assignment::new();
        for &c in letters.iter().rev() {
            phi.insert(c, idx % n);
            idx /= n;
        }
        naive_eval(s, &id.lhs, &phi) == naive_eval(s, &id.rhs, &phi)
    })
}

/// Applies `f` to the line declaring step `id`; panics if there is none.
pub fn mutate_step(text: &str, id: &str, f: impl Fn(&str) -> String) -> String {
    let prefix = format!("step {id} =");
    let mut found = false;
    let out: Vec<String> = text
        .lines()
        .map(|l| {
            if l.starts_with(&prefix) {
                found = true;
                f(l)
            } else {
                l.to_string()
            }
        })
        .collect();
    assert!(found, "no step {id}");
    out.join("\n") + "\n"
}

/// Broken corpus variants: `(file, mutated step, description, mutation)`.
pub fn negative_controls() -> Vec<(&'static str, &'static str, &'static str, String)> {
    let cases: Vec<(&str, &str, &str, &str, &str)> = vec![
        (
            "tA_basis.psf",
            "s2",
            "wrong ambient exponent",
            "a=1 b=w",
            "a=2 b=w",
        ),
        (
            "tG_inversion.psf",
            "a6",
            "ambient parameter off by one",
            "a=w-1",
            "a=w",
        ),
        (
            "tG_inversion.psf",
            "g3",
            "wrong hypothesis substitution",
            "x->yx",
            "x->xy",
        ),
        (
            "tJ_gamma_commutation.psf",
            "s3",
            "substitution dropped",
            "hyp g1 subst x->y, y->x",
            "hyp g1",
        ),
        (
            "tJ_sigma_to_xy_omega.psf",
            "a4",
            "context on the wrong side",
            "ctx x _ y",
            "ctx y _ x",
        ),
        (
            "tJ_sigma_to_xy_omega.psf",
            "jcl",
            "limit annotated with k left in",
            "x^w y^w (xy)^w x^w y^w",
            "x^k y^k (xy)^w x^w y^w",
        ),
        (
            "tDA_sigma_to_gamma.psf",
            "b2",
            "transitivity in the wrong order",
            "trans b1 a1",
            "trans a1 b1",
        ),
        (
            "tDA_gamma_to_sigma.psf",
            "da2",
            "context multiplies on the left",
            "ctx _ y (xy)^(w-1)",
            "ctx y (xy)^(w-1) _",
        ),
        (
            "tstrong_iv_ER.psf",
            "pn",
            "induction base swapped for step",
            "base=h1 step=ps",
            "base=ps step=h1",
        ),
        (
            "tstrong_vi_DS.psf",
            "it",
            "iterate with the factors exchanged",
            "left=(xy)^w x right=(xy)^w y",
            "left=(xy)^w y right=(xy)^w x",
        ),
        (
            "tstrong_x_R.psf",
            "a2",
            "sym annotated with the original orientation",
            "((xy)^w x)^w = ((xy)^w x)^(w+1)",
            "((xy)^w x)^(w+1) = ((xy)^w x)^w",
        ),
        (
            "tstrong_xii_CS.psf",
            "c6",
            "hypothesis used inside the wrong factor",
            "ctx (_ y)^w x^(w+1)",
            "ctx (x y)^w _",
        ),
    ];
    cases
        .into_iter()
        .map(|(file, id, what, from, to)| {
            let text = mutate_step(&corpus_file(file), id, |l| {
                assert!(l.contains(from), "{file}:{id} lacks `{from}`");
                l.replacen(from, to, 1)
            });
            (file, id, what, text)
        })
        .collect()
}
