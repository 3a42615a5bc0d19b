//! Command-line front end.
//!
//! Every command produces an [`Envelope`] with the fields `command`, `inputs`,
//! `result` and `status`. JSON mode prints it as pretty JSON; text mode prints
//! the same tree flattened to one `path: value` line per leaf. The exit code is
//! determined by the status alone.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{as_pow2, inth_root, ipow, two_adic_split, Nat};
use crate::certificate::check_certificate;
use crate::error::Error;
use crate::powersum::{odd_cofactor, pow2_representable, search, Pow2Decision, DEFAULT_SEARCH_CAP};
use crate::primes::{is_prime, primes_up_to, PrimeSet};
use crate::solver::{enumerate_natural_k, fermat_variant_k, solve_real_k, DEFAULT_MAX_ITER};
use crate::theorem::{make_witness, verify_certificate, witness_representation, Mode};

/// Environment variable overriding the default `--cap`.
pub const CAP_ENV: &str = "EXPSEL_CAP";

#[derive(Debug, Parser)]
#[command(name = "expsel", version, about = "Exponent-selective sums of two like powers")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Structural,
    Exhaustive,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Structural => Mode::Structural,
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build x = 2^(m+1) for a prime set and show its representations.
    Witness {
        /// Comma-separated primes, e.g. 2,3,5. Empty for the empty set.
        #[arg(short = 'p', long = "primes", allow_hyphen_values = true)]
        primes: String,
    },
    /// List every n = a^e + b^e with 1 <= a <= b.
    Represent {
        #[arg(short = 'n')]
        n: Nat,
        #[arg(short = 'e', long = "exponent")]
        exponent: u32,
        #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
    },
    /// Build and evaluate a certificate for a prime set.
    Verify {
        #[arg(short = 'p', long = "primes", allow_hyphen_values = true)]
        primes: String,
        #[arg(long = "prime-bound")]
        prime_bound: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[arg(long, env = CAP_ENV, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a serialized certificate (file path, or - for stdin).
    Check { path: String },
    /// Solve a^k + b^k = c for real k.
    SolveK {
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: f64,
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: f64,
        #[arg(short = 'c', allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITER)]
        max_iter: u64,
    },
    /// All natural k <= k-max with a^k + b^k = c.
    NatK {
        #[arg(short = 'a')]
        a: Nat,
        #[arg(short = 'b')]
        b: Nat,
        #[arg(short = 'c')]
        c: Nat,
        #[arg(long = "k-max", default_value_t = 1000)]
        k_max: u64,
    },
    /// All natural k <= k-max with a^k + b^k = c^k.
    FermatK {
        #[arg(short = 'a')]
        a: Nat,
        #[arg(short = 'b')]
        b: Nat,
        #[arg(short = 'c')]
        c: Nat,
        #[arg(long = "k-max", default_value_t = 100)]
        k_max: u64,
    },
    /// Decide whether 2^t is a sum of two q-th powers.
    Pow2 {
        #[arg(short = 't')]
        t: u64,
        #[arg(short = 'q')]
        q: u64,
    },
    /// The odd cofactor (c^p + d^p) / (c + d).
    Cofactor {
        #[arg(short = 'c')]
        c: Nat,
        #[arg(short = 'd')]
        d: Nat,
        #[arg(short = 'p')]
        p: u64,
    },
    /// Deterministic primality test for a 64-bit integer.
    IsPrime { n: u64 },
    /// Primes up to a bound.
    Primes { bound: u64 },
    /// base^exp.
    Pow { base: Nat, exp: u64 },
    /// Integer k-th root with exactness flag.
    Root { n: Nat, k: u32 },
    /// 2-adic split n = 2^k * odd.
    Split { n: Nat },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailed,
    Infeasible,
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::UsageError => 2,
            Status::Infeasible => 3,
        }
    }

    fn of_error(e: &Error) -> Status {
        match e {
            Error::SearchTooLarge { .. }
            | Error::ExhaustiveInfeasible { .. }
            | Error::BitCapExceeded { .. }
            | Error::WitnessTooLarge { .. }
            | Error::SieveBoundTooLarge { .. }
            | Error::NoConvergence { .. } => Status::Infeasible,
            Error::InconsistentEvidence { .. } | Error::CofactorMismatch { .. } | Error::CertificateRejected(_) => {
                Status::VerificationFailed
            }
            _ => Status::UsageError,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub status: Status,
}

impl Envelope {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn render(&self, format: Format) -> String {
        let tree = serde_json::to_value(self).expect("envelope serializes");
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&tree).expect("envelope serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                flatten(&mut out, "", &tree);
                out
            }
        }
    }
}

fn flatten(out: &mut String, path: &str, v: &Value) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(out, &p, child);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                flatten(out, &format!("{path}[{i}]"), child);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{path}: {s}");
        }
        other => {
            let _ = writeln!(out, "{path}: {other}");
        }
    }
}

fn rep_pairs<'a>(reps: impl IntoIterator<Item = &'a crate::powersum::Representation>) -> Value {
    reps.into_iter().map(|r| json!({ "a": r.a, "b": r.b })).collect()
}

/// Runs a parsed command. Errors become envelopes; nothing here exits the process.
pub fn execute(cli: &Cli) -> Envelope {
    let (name, inputs, outcome) = dispatch(&cli.command);
    let (result, status) = match outcome {
        Ok((result, status)) => (result, status),
        Err(e) => {
            eprintln!("expsel {name}: {e}");
            (json!({ "error": e.to_string() }), Status::of_error(&e))
        }
    };
    Envelope {
        command: name.to_string(),
        inputs,
        result,
        status,
    }
}

type Outcome = Result<(Value, Status), Error>;

fn ok(v: Value) -> Outcome {
    Ok((v, Status::Ok))
}

fn dispatch(cmd: &Command) -> (&'static str, Value, Outcome) {
    match cmd {
        Command::Witness { primes } => ("witness", json!({ "primes": primes }), cmd_witness(primes)),
        Command::Represent { n, exponent, cap } => (
            "represent",
            json!({ "n": n, "exponent": exponent, "cap": cap }),
            search(n, *exponent, *cap).and_then(|out| {
                ok(json!({
                    "representations": rep_pairs(&out.representations),
                    "iterations": out.iterations,
                }))
            }),
        ),
        Command::Verify {
            primes,
            prime_bound,
            mode,
            cap,
            out,
        } => {
            let mode = Mode::from(*mode);
            (
                "verify",
                json!({ "primes": primes, "prime_bound": prime_bound, "mode": mode, "cap": cap }),
                cmd_verify(primes, *prime_bound, mode, *cap, out.as_deref()),
            )
        }
        Command::Check { path } => ("check", json!({ "path": path }), cmd_check(path)),
        Command::SolveK { a, b, c, tol, max_iter } => (
            "solve-k",
            json!({ "a": a, "b": b, "c": c, "tol": tol, "max_iter": max_iter }),
            solve_real_k(*a, *b, *c, *tol, *max_iter).and_then(|r| {
                ok(json!({
                    "k": r.k,
                    "residual": r.residual,
                    "bracket": [r.bracket.0, r.bracket.1],
                    "iterations": r.iterations,
                    "zero_root": r.zero_root,
                }))
            }),
        ),
        Command::NatK { a, b, c, k_max } => (
            "nat-k",
            json!({ "a": a, "b": b, "c": c, "k_max": k_max }),
            enumerate_natural_k(a, b, c, *k_max).and_then(|ks| ok(json!({ "k": ks }))),
        ),
        Command::FermatK { a, b, c, k_max } => (
            "fermat-k",
            json!({ "a": a, "b": b, "c": c, "k_max": k_max }),
            fermat_variant_k(a, b, c, *k_max).and_then(|ks| ok(json!({ "k": ks }))),
        ),
        Command::Pow2 { t, q } => (
            "pow2",
            json!({ "t": t, "q": q }),
            pow2_representable(*t, *q).and_then(|d| match d {
                Pow2Decision::Representable(r) => ok(json!({ "representable": true, "a": r.a, "b": r.b })),
                Pow2Decision::NotRepresentable { remainder } => {
                    ok(json!({ "representable": false, "remainder": remainder }))
                }
            }),
        ),
        Command::Cofactor { c, d, p } => (
            "cofactor",
            json!({ "c": c, "d": d, "p": p }),
            odd_cofactor(c, d, *p).and_then(|q| ok(json!({ "cofactor": q }))),
        ),
        Command::IsPrime { n } => ("is-prime", json!({ "n": n }), ok(json!({ "prime": is_prime(*n) }))),
        Command::Primes { bound } => (
            "primes",
            json!({ "bound": bound }),
            primes_up_to(*bound).and_then(|ps| ok(json!({ "count": ps.len(), "primes": ps }))),
        ),
        Command::Pow { base, exp } => (
            "pow",
            json!({ "base": base, "exp": exp }),
            ipow(base, *exp).and_then(|v| ok(json!({ "value": v, "pow2_exponent": as_pow2(&v) }))),
        ),
        Command::Root { n, k } => (
            "root",
            json!({ "n": n, "k": k }),
            inth_root(n, *k).and_then(|(r, exact)| ok(json!({ "root": r, "exact": exact }))),
        ),
        Command::Split { n } => (
            "split",
            json!({ "n": n }),
            two_adic_split(n).and_then(|(k, odd)| ok(json!({ "k": k, "odd": odd }))),
        ),
    }
}

fn cmd_witness(primes: &str) -> Outcome {
    let set = PrimeSet::parse(primes)?;
    let w = make_witness(&set)?;
    let reps = set
        .iter()
        .map(|p| {
            let r = witness_representation(&w, p)?;
            Ok(json!({ "p": p, "a": r.a, "b": r.b }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut result = json!({
        "primes": w.primes,
        "m": w.m,
        "t": w.t,
        "x": { "base": 2, "exponent": w.t },
    });
    if let Some(dec) = w.x_decimal() {
        result["x_decimal"] = json!(dec);
    }
    result["representations"] = Value::Array(reps);
    ok(result)
}

fn cmd_verify(primes: &str, prime_bound: u64, mode: Mode, cap: u64, out: Option<&std::path::Path>) -> Outcome {
    let set = PrimeSet::parse(primes)?;
    let cert = verify_certificate(&set, prime_bound, mode, cap)?;
    if let Some(path) = out {
        let mut text = cert.to_json_pretty();
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Error::InvalidInput(format!("writing {}: {e}", path.display())))?;
    }
    let status = if cert.verified {
        Status::Ok
    } else {
        Status::VerificationFailed
    };
    Ok((serde_json::to_value(&cert).expect("certificate serializes"), status))
}

fn cmd_check(path: &str) -> Outcome {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")))?
    };
    let cert = check_certificate(&text)?;
    ok(json!({ "verified": true, "digest": cert.digest() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Envelope {
        let mut full = vec!["expsel"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn witness_envelope() {
        let env = run(&["witness", "-p", "2,3"]);
        assert_eq!(env.status, Status::Ok);
        assert_eq!(env.result["m"], "6");
        assert_eq!(env.result["x_decimal"], "128");
        assert_eq!(env.result["representations"][0], json!({ "p": 2, "a": "8", "b": "8" }));
        assert_eq!(env.result["representations"][1], json!({ "p": 3, "a": "4", "b": "4" }));
    }

    #[test]
    fn witness_rejects_composite() {
        let env = run(&["witness", "-p", "4,3"]);
        assert_eq!(env.status, Status::UsageError);
        assert_eq!(env.exit_code(), 2);
    }

    #[test]
    fn text_render_flattens() {
        let env = run(&["represent", "-n", "1729", "-e", "3"]);
        let text = env.render(Format::Text);
        assert!(text.contains("result.representations[0].a: 1\n"), "{text}");
        assert!(text.contains("result.representations[1].b: 10\n"));
        assert!(text.ends_with("status: ok\n"));
        let empty = run(&["represent", "-n", "128", "-e", "5"]).render(Format::Text);
        assert!(empty.contains("result.representations: []\n"), "{empty}");
    }

    #[test]
    fn status_mapping() {
        assert_eq!(Status::Ok.exit_code(), 0);
        assert_eq!(Status::VerificationFailed.exit_code(), 1);
        assert_eq!(Status::UsageError.exit_code(), 2);
        assert_eq!(Status::Infeasible.exit_code(), 3);
        assert_eq!(
            run(&["nat-k", "-a", "1", "-b", "1", "-c", "2"]).status,
            Status::UsageError
        );
        assert_eq!(
            run(&["represent", "-n", "1099511627776", "-e", "2", "--cap", "10"]).status,
            Status::Infeasible
        );
    }
}
