use clap::Subcommand;
use exactgrp::heisenberg::{verify_identities, HeisOrder};
use exactgrp::{Error, Heis};
use serde_json::json;
use std::fmt::Write as _;

use crate::input;
use crate::report::{CliError, Report};

#[derive(Subcommand)]
pub enum HeisCmd {
    /// Multiply two elements in normal form and check against matrices.
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// For each lexicographic order, decide z ≪ x or z ≪ y.
    Lemma {
        /// One order such as `zxy:+-+`; all sixteen when omitted.
        #[arg(long)]
        order: Option<String>,
        /// Range of powers for the sampled archimedean check.
        #[arg(long, default_value_t = 100)]
        n: i64,
    },
    /// Verify commutation, power-word and matrix identities.
    Identity {
        #[arg(long, default_value_t = 10)]
        kl: i64,
        #[arg(long, default_value_t = 20)]
        power: i64,
        #[arg(long, default_value_t = 2)]
        grid: i64,
    },
}

pub fn run(cmd: &HeisCmd) -> Result<Report, CliError> {
    match cmd {
        HeisCmd::Mul { g, h } => {
            let g = Heis::parse(&input::resolve(g)?)?;
            let h = Heis::parse(&input::resolve(h)?)?;
            let gh = g.mul(&h);
            let agree = gh.to_matrix() == g.to_matrix().mul_ref(&h.to_matrix());
            let text = format!("({g}) ({h}) = {gh}{}", if agree { "" } else { "  [matrix product DIFFERS]" });
            Ok(Report::verdict(agree, json!({"g": g, "h": h, "product": gh, "matrix": gh.to_matrix(), "matrix_agrees": agree}), text))
        }
        HeisCmd::Lemma { order, n } => {
            let orders = match order {
                Some(o) => vec![input::resolve(o)?.parse::<HeisOrder>()?],
                None => HeisOrder::all(),
            };
            let (x, y, z) = (Heis::x(), Heis::y(), Heis::z());
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut passed = true;
            for o in &orders {
                let verdict = o.verify_lemma();
                let agree = [&x, &y].iter().all(|h| o.archimedean_lt(&z, h) == o.archimedean_lt_sampled(&z, h, *n));
                passed &= verdict.is_ok() && agree;
                let v = match &verdict {
                    Ok(v) => json!(v),
                    Err(Error::Violation(m)) => json!({"violation": m}),
                    Err(e) => return Err(e.clone().into()),
                };
                writeln!(text, "{o}: {} (sampled check at N = {n} {})", v, if agree { "agrees" } else { "DISAGREES" }).unwrap();
                rows.push(json!({"order": o, "verdict": v, "sampled_agrees": agree}));
            }
            Ok(Report::verdict(passed, json!({"n": n, "orders": rows, "passed": passed}), text))
        }
        HeisCmd::Identity { kl, power, grid } => {
            let r = verify_identities(*kl, *power, *grid);
            let text = format!(
                "central: {}; commutation {} cases; power word {} cases; matrix products {} pairs; {} failures",
                r.central,
                r.commutation_cases,
                r.power_word_cases,
                r.matrix_pairs,
                r.failures.len()
            );
            Ok(Report::verdict(r.passed(), json!(r), text))
        }
    }
}
