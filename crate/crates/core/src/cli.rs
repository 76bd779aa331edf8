//! The `pseudoeq` command line.
//!
//! Exit codes: 0 for success, a valid identity or an accepted proof; 1 for
//! a failing identity or a rejected proof; 2 for usage and input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::deciders::{
    self, com_base_pool, com_product_pool, find_witness, group_pool_large, Variety,
};
use crate::proofs::{audit_pool, audit_soundness, check_script, expand_macros, parse_script};
use crate::rees::{enumerate_triples, ReesMatrix};
use crate::semigroups::io::{read_semigroup, write_semigroup};
use crate::semigroups::{
    catalog_by_name, enumerate_congruences, enumerate_monoids, standard_catalog, Assignment,
    FinSemigroup, Satisfaction,
};
use crate::terms::{normalize_ambient, parse_pseudoidentity, parse_term};
use crate::Signature;

#[derive(Parser, Debug)]
#[command(
    name = "pseudoeq",
    version,
    about = "Omega-terms, finite semigroups and pseudoidentity proofs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a term or identity and print its ambient normal form.
    Parse {
        /// Read terms over semigroups (no empty word, no zero exponents).
        #[arg(long = "semigroup-sig")]
        semigroup_sig: bool,
        text: String,
    },
    /// Evaluate a closed term in a finite semigroup.
    Eval {
        /// Catalog name (e.g. `C(2,1)^1`) or table file.
        #[arg(long)]
        semigroup: String,
        /// Letter assignment such as `x=a`; repeatable.
        #[arg(long = "assign", short = 'a', value_name = "LETTER=ELEMENT")]
        assign: Vec<String>,
        term: String,
    },
    /// Model-check an identity; prints the least failing assignment.
    Satisfies {
        /// Catalog name (e.g. `C(2,1)^1`) or table file.
        #[arg(long)]
        semigroup: String,
        identity: String,
    },
    /// Decide a constant identity in the pseudovariety G or Com.
    Decide {
        #[arg(long, value_name = "G|Com")]
        variety: String,
        /// On `invalid`, also search the test pool for a failing monoid.
        #[arg(long)]
        witness: bool,
        identity: String,
    },
    /// Check a proof script.
    CheckProof {
        file: PathBuf,
        /// Model-check every step: `default`, or comma-separated catalog names and table files.
        #[arg(long, value_name = "POOL")]
        audit: Option<String>,
        /// Print the script with derived rules rewritten into primitive steps.
        #[arg(long = "expand-macros")]
        expand_macros: bool,
    },
    /// List the catalog, or print one entry as a table.
    Catalog { name: Option<String> },
    /// Build a Rees matrix semigroup and list its congruence triples.
    Rees {
        /// Structure group: catalog name or table file.
        #[arg(long)]
        group: String,
        /// Sandwich matrix, rows indexed by Λ separated by `;`, entries by spaces.
        #[arg(long, value_name = "ROWS")]
        matrix: String,
        /// Print the multiplication table instead of the triples.
        #[arg(long)]
        table: bool,
    },
    /// List the congruences of a finite semigroup.
    Congruences {
        #[arg(long)]
        semigroup: String,
    },
    /// Count monoids up to isomorphism and anti-isomorphism.
    Enumerate {
        #[arg(long = "max-order", default_value_t = 4)]
        max_order: usize,
        /// Print every table.
        #[arg(long)]
        tables: bool,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(stdout: String) -> Outcome {
        Outcome {
            code: 1,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: impl Into<String>) -> Outcome {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command).unwrap_or_else(Outcome::usage),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::usage(text),
            }
        }
    }
}

type Res = Result<Outcome, String>;

fn execute(cmd: Command) -> Res {
    match cmd {
        Command::Parse {
            semigroup_sig,
            text,
        } => parse_cmd(&text, semigroup_sig),
        Command::Eval {
            semigroup,
            assign,
            term,
        } => eval_cmd(&semigroup, &assign, &term),
        Command::Satisfies {
            semigroup,
            identity,
        } => satisfies_cmd(&semigroup, &identity),
        Command::Decide {
            variety,
            witness,
            identity,
        } => decide_cmd(&variety, witness, &identity),
        Command::CheckProof {
            file,
            audit,
            expand_macros,
        } => check_cmd(&file, audit.as_deref(), expand_macros),
        Command::Catalog { name } => catalog_cmd(name.as_deref()),
        Command::Rees {
            group,
            matrix,
            table,
        } => rees_cmd(&group, &matrix, table),
        Command::Congruences { semigroup } => congruences_cmd(&semigroup),
        Command::Enumerate { max_order, tables } => enumerate_cmd(max_order, tables),
    }
}

/// A catalog name, or the path of a table file.
pub fn load_semigroup(spec: &str) -> Result<FinSemigroup, String> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
        return read_semigroup(&text).map_err(|e| format!("{spec}: {e}"));
    }
    catalog_by_name(spec).map_err(|e| e.to_string())
}

fn parse_cmd(text: &str, semigroup_sig: bool) -> Res {
    let sig = if semigroup_sig {
        Signature::Semigroup
    } else {
        Signature::Monoid
    };
    let out = if text.contains('=') {
        let id = parse_pseudoidentity(text, sig).map_err(|e| e.to_string())?;
        format!(
            "{} = {}",
            normalize_ambient(&id.lhs),
            normalize_ambient(&id.rhs)
        )
    } else {
        normalize_ambient(&parse_term(text, sig).map_err(|e| e.to_string())?).to_string()
    };
    Ok(Outcome::ok(out + "\n"))
}

fn eval_cmd(spec: &str, assign: &[String], term: &str) -> Res {
    let s = load_semigroup(spec)?;
    let t = parse_term(term, s.signature()).map_err(|e| e.to_string())?;
    let mut phi = Assignment::new();
    for a in assign {
        let (letter, element) = a
            .split_once('=')
            .ok_or_else(|| format!("bad assignment `{a}`"))?;
        let mut chars = letter.trim().chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(format!("bad letter in `{a}`")),
        };
        let e = element.trim();
        let v = s
            .element(e)
            .or_else(|| e.parse::<usize>().ok().filter(|&v| v < s.order()))
            .ok_or_else(|| format!("no element `{e}`"))?;
        phi.insert(c, v);
    }
    let v = s.eval(&t, &phi).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(format!("{}\n", s.name(v))))
}

fn satisfies_cmd(spec: &str, identity: &str) -> Res {
    let s = load_semigroup(spec)?;
    let id = parse_pseudoidentity(identity, s.signature()).map_err(|e| e.to_string())?;
    match s.satisfies(&id).map_err(|e| e.to_string())? {
        Satisfaction::Holds => Ok(Outcome::ok("true\n".into())),
        Satisfaction::Fails(phi) => Ok(Outcome::fail(format!(
            "false witness: {}\n",
            s.format_assignment(&phi)
        ))),
    }
}

fn decide_cmd(variety: &str, witness: bool, identity: &str) -> Res {
    let variety: Variety = variety
        .parse()
        .map_err(|e: deciders::DecideError| e.to_string())?;
    let id = parse_pseudoidentity(identity, Signature::Monoid).map_err(|e| e.to_string())?;
    if deciders::decide(variety, &id).map_err(|e| e.to_string())? {
        return Ok(Outcome::ok("valid\n".into()));
    }
    let mut out = String::from("invalid\n");
    if witness {
        let pools = match variety {
            Variety::G => vec![group_pool_large()],
            Variety::Com => vec![com_base_pool(), com_product_pool()],
        };
        let found = pools.iter().find_map(|pool| {
            let (name, phi) = find_witness(pool, &id)?;
            let model = &pool.iter().find(|(n, _)| *n == name)?.1;
            Some(format!("{name} {}", model.format_assignment(&phi)))
        });
        match found {
            Some(w) => {
                let _ = writeln!(out, "witness: {w}");
            }
            None => out.push_str("witness: none in pool\n"),
        }
    }
    Ok(Outcome::fail(out))
}

fn audit_models(spec: &str, sig: Signature) -> Result<Vec<(String, FinSemigroup)>, String> {
    if spec == "default" {
        return Ok(audit_pool(sig));
    }
    spec.split(',')
        .map(|n| load_semigroup(n.trim()).map(|s| (n.trim().to_string(), s)))
        .collect()
}

fn check_cmd(file: &Path, audit: Option<&str>, expand: bool) -> Res {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let script = parse_script(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let checked = match check_script(&script) {
        Ok(c) => c,
        Err(r) => return Ok(Outcome::fail(format!("{r}\n"))),
    };
    let mut out = String::new();
    let mut code = 0;
    if expand {
        let expanded = expand_macros(&script).map_err(|r| r.to_string())?;
        out.push_str(&expanded.to_string());
    }
    let _ = writeln!(
        out,
        "accepted: goal derived at step {} ({} steps)",
        checked.goal_step,
        checked.steps.len()
    );
    if let Some(spec) = audit {
        let pool = audit_models(spec, script.signature)?;
        let report = audit_soundness(&script, &checked, &pool);
        let _ = writeln!(
            out,
            "audit: {} of {} models satisfy the hypotheses, {} checks, {} violations",
            report.relevant_models,
            report.models,
            report.checks,
            report.violations.len()
        );
        for v in &report.violations {
            let at = v.k.map(|k| format!(" k={k}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "violation: step {}{at} fails in {} at {}",
                v.step, v.model, v.witness
            );
        }
        if !report.is_clean() {
            code = 1;
        }
    }
    Ok(Outcome {
        code,
        stdout: out,
        stderr: String::new(),
    })
}

fn catalog_cmd(name: Option<&str>) -> Res {
    match name {
        Some(n) => Ok(Outcome::ok(write_semigroup(&load_semigroup(n)?))),
        None => {
            let mut out = String::new();
            for (n, s) in standard_catalog() {
                let _ = writeln!(out, "{n}\torder {}\t{}", s.order(), s.signature());
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn rees_cmd(group: &str, matrix: &str, table: bool) -> Res {
    let g = load_semigroup(group)?;
    let rows = matrix
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|e| {
                    g.element(e)
                        .or_else(|| e.parse::<usize>().ok())
                        .ok_or_else(|| format!("no group element `{e}`"))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let i = rows.first().map_or(0, Vec::len);
    let r = ReesMatrix::new(i, rows.len(), g, rows).map_err(|e| e.to_string())?;
    let s = r.build();
    if table {
        return Ok(Outcome::ok(write_semigroup(&s)));
    }
    let mut out = format!("order {} normalized {}\n", s.order(), r.is_normalized());
    let r = r.normalized();
    let triples = enumerate_triples(&r).map_err(|e| e.to_string())?;
    let _ = writeln!(out, "{} congruence triples", triples.len());
    for t in triples {
        let _ = writeln!(out, "{t}");
    }
    Ok(Outcome::ok(out))
}

fn congruences_cmd(spec: &str) -> Res {
    let s = load_semigroup(spec)?;
    let all = enumerate_congruences(&s).map_err(|e| e.to_string())?;
    let mut out = format!("{} congruences\n", all.len());
    for p in all {
        let blocks: Vec<String> = p
            .blocks()
            .iter()
            .map(|b| {
                format!(
                    "{{{}}}",
                    b.iter().map(|&x| s.name(x)).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        let _ = writeln!(out, "{}", blocks.concat());
    }
    Ok(Outcome::ok(out))
}

fn enumerate_cmd(max_order: usize, tables: bool) -> Res {
    let all = enumerate_monoids(max_order).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for n in 1..=max_order {
        let of_n: Vec<&FinSemigroup> = all.iter().filter(|m| m.order() == n).collect();
        let _ = writeln!(out, "order {n}: {}", of_n.len());
        if tables {
            for m in of_n {
                out.push_str(&write_semigroup(m));
            }
        }
    }
    Ok(Outcome::ok(out))
}
