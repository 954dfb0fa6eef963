use std::collections::HashMap;

use clap::Subcommand;
use exactgrp::circle::{
    cocycle_identity_check, cocycle_sweep, euler_cocycle, fixed_point_from_primitive, parse_lift, primitive_at, rotation_number, FixedPointVerdict,
};
use exactgrp::freegroup::ReducedWord;
use exactgrp::{CircleLift, Error};
use num_bigint::BigInt;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::input;
use crate::report::{usage, CliError, Report, Status};
use crate::Global;

#[derive(Subcommand)]
pub enum CircleCmd {
    /// Euler cocycle of two normalized lifts, or a seeded sweep with --pairs.
    Cocycle {
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Four-term cocycle identity on a triple, or a seeded sweep with --triples.
    Identity {
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        triples: Option<usize>,
    },
    /// Recover a common fixed point from a primitive of the Euler cocycle.
    Fixpoint {
        /// JSON list of map literals.
        #[arg(long)]
        gens: String,
        /// `zero`, `based:<p>` (lifts fixing p), `translation` (for rotations),
        /// or a JSON object from words to integers (missing words map to 0).
        #[arg(long, default_value = "zero")]
        phi: String,
    },
    /// Rotation number: an interval from f^N(0), exact when a short periodic orbit exists.
    Rotnum {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 100)]
        iterations: u32,
        #[arg(long, default_value_t = 12)]
        max_period: u32,
    },
}

const SWEEP_BREAKPOINTS: usize = 4;
const SWEEP_DEN: i64 = 24;

fn lift(arg: &str) -> Result<CircleLift, CliError> {
    Ok(parse_lift(&input::json(arg)?)?)
}

fn need<'a>(arg: &'a Option<String>, name: &str) -> Result<&'a str, CliError> {
    arg.as_deref().ok_or_else(|| usage(format!("--{name} is required without a sweep option")))
}

/// Normalizes and notes whether the input already was.
fn normalized(f: CircleLift) -> (CircleLift, bool) {
    let n = f.normalize();
    let was = n == f;
    (n, was)
}

fn phi_table(spec: &str, gens: &[CircleLift], radius: usize) -> Result<HashMap<ReducedWord, i64>, CliError> {
    let rank = gens.len();
    let s = input::resolve(spec)?;
    if s.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&s).map_err(|e| usage(format!("invalid phi JSON: {e}")))?;
        let obj = v.as_object().ok_or_else(|| usage("phi must be a JSON object"))?;
        let mut out = HashMap::new();
        for (w, n) in obj {
            let n = n.as_i64().ok_or_else(|| usage(format!("phi value for {w:?} must be an integer")))?;
            out.insert(ReducedWord::parse(rank, w)?, n);
        }
        return Ok(out);
    }
    match input::kind(&s) {
        ("zero", None) => Ok(HashMap::new()),
        ("based", Some(p)) => {
            let p: Ratio<BigInt> = p.parse().map_err(|_| usage(format!("invalid point {p:?}")))?;
            Ok(primitive_at(gens, &p, radius)?)
        }
        ("translation", None) => {
            let alphas = gens
                .iter()
                .map(|g| g.normalize().as_rotation().cloned().ok_or_else(|| usage(format!("{g} is not a rotation"))))
                .collect::<Result<Vec<_>, _>>()?;
            let words = exactgrp::freegroup::ball(rank, radius, usize::MAX)?;
            let mut out = HashMap::new();
            for w in words {
                let t: Ratio<BigInt> = w.syllables().iter().map(|&(i, e)| &alphas[i] * Ratio::from_integer(BigInt::from(e))).sum();
                let n = t.floor().to_integer();
                out.insert(w, i64::try_from(n).map_err(|_| usage("phi value overflows"))?);
            }
            Ok(out)
        }
        _ => Err(usage(format!("unknown phi {s:?}"))),
    }
}

pub fn run(g: &Global, cmd: &CircleCmd) -> Result<Report, CliError> {
    match cmd {
        CircleCmd::Cocycle { g: gg, h, pairs } => {
            if let Some(n) = pairs {
                let r = cocycle_sweep(g.seed, *n, 0, SWEEP_BREAKPOINTS, SWEEP_DEN)?;
                let text = format!("{} seeded pairs: c = 0 on {}, c = 1 on {}", r.pairs, r.zeros, r.ones);
                return Ok(Report::ok(json!(r), text));
            }
            let (gl, g_was) = normalized(lift(need(gg, "g")?)?);
            let (hl, h_was) = normalized(lift(need(h, "h")?)?);
            let c = euler_cocycle(&gl, &hl)?;
            let text = format!("c({gl}, {hl}) = {c}");
            Ok(Report::ok(json!({"g": gl, "h": hl, "g_was_normalized": g_was, "h_was_normalized": h_was, "cocycle": c}), text))
        }
        CircleCmd::Identity { g: gg, h, k, triples } => {
            if let Some(n) = triples {
                let r = cocycle_sweep(g.seed, 0, *n, SWEEP_BREAKPOINTS, SWEEP_DEN)?;
                let text = format!("{} seeded triples: {} identity failures", r.triples, r.identity_failures);
                return Ok(Report::verdict(r.passed, json!(r), text));
            }
            let gl = lift(need(gg, "g")?)?.normalize();
            let hl = lift(need(h, "h")?)?.normalize();
            let kl = lift(need(k, "k")?)?.normalize();
            let r = cocycle_identity_check(&gl, &hl, &kl)?;
            let text = format!("c(h,k) - c(gh,k) + c(g,hk) - c(g,h) = {} - {} + {} - {} = {}", r.c_hk, r.c_gh_k, r.c_g_hk, r.c_gh, r.value);
            Ok(Report::ok(json!(r), text))
        }
        CircleCmd::Fixpoint { gens, phi } => {
            let gens: Vec<CircleLift> = match input::json(gens)? {
                Value::Array(v) => v.iter().map(parse_lift).collect::<Result<_, Error>>()?,
                v @ Value::Object(_) => vec![parse_lift(&v)?],
                _ => return Err(usage("--gens must be a map literal or a JSON list of them")),
            };
            if gens.is_empty() {
                return Err(usage("--gens is empty"));
            }
            let radius = g.radius.unwrap_or(8);
            let table = phi_table(phi, &gens, radius)?;
            let r = fixed_point_from_primitive(&gens, |w| table.get(w).copied().unwrap_or(0), radius)?;
            let detail = match &r.verdict {
                FixedPointVerdict::Fixed { point, sampled_sup, .. } => format!("fixed point {point} (sampled orbit sup {sampled_sup})"),
                FixedPointVerdict::NoFixedPoint { sampled_sup } => format!("no common fixed point; sampled orbit reaches {sampled_sup}"),
                FixedPointVerdict::PrimitiveMismatch { x, y, cocycle, coboundary } => {
                    format!("phi is not a primitive: c({x}, {y}) = {cocycle} but delta phi = {coboundary}")
                }
                FixedPointVerdict::BoundViolation { word, value, bound } => format!("|g^(0)| = {value} > {bound} at {word}"),
            };
            let text = format!("{detail}\ncertificate covers words of length <= {} ({} words, {} pairs)", r.radius, r.words, r.pairs_checked);
            Ok(Report::verdict(r.verdict.is_fixed(), json!(r), text))
        }
        CircleCmd::Rotnum { map, iterations, max_period } => {
            let f = lift(map)?;
            let r = rotation_number(&f, *iterations, *max_period)?;
            let text = match &r.exact {
                Some(x) => format!("rotation number {x}, periodic orbit {{{}}}", r.orbit.join(", ")),
                None => format!("rotation number in [{}, {}]; no periodic orbit of period <= {max_period}", r.lo, r.hi),
            };
            let status = if r.exact.is_some() { Status::Success } else { Status::Inconclusive };
            Ok(Report::new(status, json!(r), text))
        }
    }
}
