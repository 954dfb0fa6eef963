use clap::Subcommand;
use exactgrp::amenability::{build_paradoxical_f2, build_ponzi_free, folner_box, free_folner_obstruction, growth_obstruction, ponzi_table, GrowthBackend};
use exactgrp::group::ZVec;
use exactgrp::Error;
use serde_json::{json, Value};

use crate::input;
use crate::report::{usage, CliError, Report, Status};
use crate::Global;

#[derive(Subcommand)]
pub enum AmenCmd {
    /// Smallest Følner cube in Z^d, or the counting obstruction in F_2 with --free.
    Folner {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value = "1/10")]
        eps: String,
        /// JSON list of test vectors; unit vectors when omitted.
        #[arg(long)]
        gens: Option<String>,
        /// Test random subsets of a ball in F_2 instead.
        #[arg(long)]
        free: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// One round of the Ponzi scheme on a ball in F_k.
    Ponzi {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Print the full wealth table.
        #[arg(long)]
        table: bool,
    },
    /// Check the paradoxical decomposition of F_2 on a ball.
    Paradox,
    /// Ball growth: polynomial doubling for abelian:<d>, exponential for free:<k>.
    Growth {
        #[arg(long, default_value = "abelian:2")]
        group: String,
    },
}

pub fn run(g: &Global, cmd: &AmenCmd) -> Result<Report, CliError> {
    match cmd {
        AmenCmd::Folner { dim, eps, gens, free, samples } => {
            let eps = input::rational(eps)?;
            if *free {
                let r = free_folner_obstruction(g.radius.unwrap_or(4), *samples, &eps, g.seed)?;
                let text = format!(
                    "F_2 ball of radius {}: {} of {} sampled sets pass at eps = {}; counting bound violated {} times\nno Følner set exists for eps <= 1/2",
                    r.radius, r.passing, r.samples, r.epsilon, r.bound_violations
                );
                if r.passing > 0 || r.bound_violations > 0 {
                    return Err(Error::Violation(format!("a sampled set passes or breaks the counting bound: {text}")).into());
                }
                return Ok(Report::new(Status::Negative, json!(r), text));
            }
            let s: Vec<ZVec> = match gens {
                Some(v) => match input::json(v)? {
                    Value::Array(xs) => xs
                        .iter()
                        .map(|x| serde_json::from_value::<Vec<i64>>(x.clone()).map(ZVec).map_err(|e| usage(format!("bad vector {x}: {e}"))))
                        .collect::<Result<_, _>>()?,
                    _ => return Err(usage("--gens must be a JSON list of integer vectors")),
                },
                None => (0..*dim).map(|i| ZVec::unit(*dim, i)).collect(),
            };
            let max_n = g.cap.unwrap_or(10_000) as i64;
            let b = folner_box(*dim, &s, &eps, max_n)?;
            let text = format!("[0,{})^{} is Følner for eps = {}: size {}, threshold {}", b.n, b.dim, b.report.epsilon, b.report.size, b.report.threshold);
            Ok(Report::ok(json!(b), text))
        }
        AmenCmd::Ponzi { rank, table } => {
            let r = build_ponzi_free(*rank, g.radius.unwrap_or(6))?;
            let mut text = format!(
                "F_{} ball of radius {} ({} words): wealth {} at e, {:?} inside, {:?} on the boundary; total {} ({})",
                r.rank,
                r.radius,
                r.ball_size,
                r.wealth_identity,
                r.wealth_interior,
                r.wealth_boundary,
                r.total_wealth,
                if r.conserved { "conserved" } else { "NOT conserved" }
            );
            if *table {
                text.push('\n');
                text.push_str(&ponzi_table(&r));
            }
            let mut v = json!(r);
            if !*table {
                v.as_object_mut().expect("object").remove("rows");
            }
            Ok(Report::verdict(r.passed, v, text))
        }
        AmenCmd::Paradox => {
            let (_, r) = build_paradoxical_f2(g.radius.unwrap_or(4))?;
            let text = format!(
                "ball of radius {} ({} words): disjoint {}, covers {}, a-cover {}, b-cover {}",
                r.radius, r.ball_size, r.disjoint, r.covers_ball, r.a_cover, r.b_cover
            );
            Ok(Report::verdict(r.passed, json!(r), text))
        }
        AmenCmd::Growth { group } => {
            let (kind, n) = input::kind_usize(&input::resolve(group)?, 2)?;
            let backend = match kind.as_str() {
                "abelian" => GrowthBackend::Abelian(n),
                "free" => GrowthBackend::Free(n),
                other => return Err(usage(format!("unknown group {other:?}; use abelian:<d> or free:<k>"))),
            };
            let r = growth_obstruction(backend, g.radius.unwrap_or(6))?;
            let text = format!("{} ball sizes {:?}: {:?} growth", r.backend, r.sizes, r.kind);
            Ok(Report::verdict(r.passed, json!(r), text))
        }
    }
}
