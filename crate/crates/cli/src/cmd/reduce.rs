use clap::Subcommand;
use exactgrp::matred::{
    artin_instance, bounded_reduce_with, carter_keller_bound, diag_conjugation, diag_power, elementary_word_length_stats, euclid_reduce,
    multiplicative_order, parse_int_matrix, parse_pinv_matrix, power_list, primitive_root_check, random_sl2z, PInvScalar, Unipotent,
};
use exactgrp::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, to_value};
use std::fmt::Write as _;

use crate::input;
use crate::report::{usage, CliError, Report, Status};
use crate::Global;

const DEFAULT_CAP: u64 = 2000;

#[derive(Subcommand)]
pub enum ReduceCmd {
    /// Reduce an SL(2,Z) matrix to the identity with the Euclidean algorithm.
    Euclid {
        /// `[[a, c], [b, d]]`
        #[arg(long)]
        matrix: String,
    },
    /// Reduce an SL(2,Z[1/p]) matrix in at most five row operations.
    Bounded {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Fail instead of using a unit-residue pivot when no suitable prime is found.
        #[arg(long)]
        strict: bool,
    },
    /// Compare Euclidean and bounded op counts on seeded random matrices.
    Stats {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 6)]
        factors: usize,
        #[arg(long, default_value_t = 4)]
        max_coeff: i64,
    },
    /// Conjugate a unipotent by diag(p, 1/p)^n and compare with the closed form.
    Conj {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        lower: bool,
    },
}

pub fn run(g: &Global, cmd: &ReduceCmd) -> Result<Report, CliError> {
    match cmd {
        ReduceCmd::Euclid { matrix } => {
            let m = parse_int_matrix(&input::json(matrix)?)?;
            let steps = euclid_reduce(&m)?;
            let mut text = format!("{m} reduces in {} ops\n", steps.len());
            for s in &steps {
                writeln!(text, "  {}: {} -> {}", s.step, s.op, s.intermediate).unwrap();
            }
            Ok(Report::ok(json!({"matrix": m, "ops": steps.len(), "steps": steps}), text))
        }
        ReduceCmd::Bounded { matrix, p, strict } => {
            let m = parse_pinv_matrix(&input::json(matrix)?, *p)?;
            let r = bounded_reduce_with(&m, g.cap.unwrap_or(DEFAULT_CAP), *strict)?;
            let mut text = format!("{m} over Z[1/{p}] reduces in {} ops ({})\n", r.steps.len(), to_value(&r.path).unwrap()["kind"]);
            for s in &r.steps {
                writeln!(text, "  {}: {} -> {}", s.step, s.op, s.intermediate).unwrap();
            }
            Ok(Report::ok(json!({"matrix": m, "ops": r.steps.len(), "report": r}), text))
        }
        ReduceCmd::Stats { samples, p, factors, max_coeff } => {
            if *max_coeff < 1 {
                return Err(usage("--max-coeff must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let ms: Vec<_> = (0..*samples).map(|_| random_sl2z(&mut rng, *factors, *max_coeff)).collect();
            let r = elementary_word_length_stats(&ms, *p, g.cap.unwrap_or(DEFAULT_CAP))?;
            let text = format!(
                "{} samples over Z[1/{p}]: euclid max {} ops, bounded max {} ops, {} not found, {} unit-residue pivots\nCarter-Keller bound for n = 3: {}",
                r.samples, r.euclid_max, r.bounded_max, r.not_found, r.fallbacks, r.carter_keller_n3
            );
            let status = if r.not_found == 0 { Status::Success } else { Status::Inconclusive };
            Ok(Report::new(status, json!({"seed": g.seed, "report": r}), text))
        }
        ReduceCmd::Conj { p, n, u, lower } => {
            let u = PInvScalar::parse(&input::resolve(u)?, *p)?;
            let kind = if *lower { Unipotent::Lower } else { Unipotent::Upper };
            let (one, zero) = (PInvScalar::one(*p), PInvScalar::zero(*p));
            let e = match kind {
                Unipotent::Upper => exactgrp::matred::PInvMat2::new(one.clone(), u.clone(), zero, one)?,
                Unipotent::Lower => exactgrp::matred::PInvMat2::new(one.clone(), zero, u.clone(), one)?,
            };
            let product = diag_power(*p, *n).mul(&e).mul(&diag_power(*p, -n));
            let closed = diag_conjugation(&u, *n, kind);
            let agree = product == closed;
            let text = format!("diag({p}^{n}) {e} diag({p}^{}) = {product}; closed form {closed}: {}", -n, if agree { "agree" } else { "DIFFER" });
            Ok(Report::verdict(agree, json!({"product": product, "closed_form": closed, "agree": agree}), text))
        }
    }
}

pub fn artin(g: &Global, a: &str, b: &str, r: &str) -> Result<Report, CliError> {
    let (a, b, r) = (input::bigint(a)?, input::bigint(b)?, input::bigint(r)?);
    let cap = g.cap.unwrap_or(DEFAULT_CAP);
    let hit = artin_instance(&a, &b, &r, cap)?;
    let text = format!("q = {} = {a} + {}*({b}) has {r} as a primitive root ({} candidates tried)", hit.q, hit.k, hit.candidates_tried);
    Ok(Report::ok(json!({"a": a.to_string(), "b": b.to_string(), "r": r.to_string(), "cap": cap, "hit": hit}), text))
}

const POWER_LIST_MAX: u64 = 100_000;

pub fn primroot(r: &str, q: u64) -> Result<Report, CliError> {
    let r = input::bigint(r)?;
    let primitive = primitive_root_check(&r, q)?;
    let order = multiplicative_order(&r, q)?;
    let powers = if q <= POWER_LIST_MAX { Some(power_list(&r, q)?) } else { None };
    let mut text = format!("{r} has order {order} mod {q}: {}primitive root", if primitive { "" } else { "not a " });
    if let Some(ps) = &powers {
        let shown: Vec<String> = ps.iter().take(40).map(|x| x.to_string()).collect();
        write!(text, "\npowers: {}{}", shown.join(","), if ps.len() > 40 { ",..." } else { "" }).unwrap();
    }
    Ok(Report::verdict(primitive, json!({"r": r.to_string(), "q": q, "order": order, "primitive": primitive, "powers": powers}), text))
}

pub fn carter_keller(n: u64) -> Result<Report, CliError> {
    if n < 2 {
        return Err(CliError::Core(Error::Precondition("n must be at least 2".into())));
    }
    let b = carter_keller_bound(n);
    Ok(Report::ok(json!({"n": n, "bound": b}), format!("(3*{n}^2 - {n})/2 + 36 = {b}")))
}
