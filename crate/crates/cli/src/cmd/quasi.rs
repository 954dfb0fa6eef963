use clap::Subcommand;
use exactgrp::freegroup::{commutator_bound_check, defect_scan, separation_witness, PairSpec, Quasimorphism, ReducedWord};
use serde_json::json;
use std::fmt::Write as _;

use crate::input;
use crate::report::{CliError, Report};
use crate::Global;

#[derive(Subcommand)]
pub enum QuasiCmd {
    /// Evaluate hom:<g> or brooks:<word> on a word.
    Eval {
        #[arg(long)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Largest |φ(xy) − φ(x) − φ(y)| over all pairs from a ball, or random pairs.
    Defect {
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Sample this many random pairs instead of the whole ball.
        #[arg(long)]
        random: Option<usize>,
        /// Report a negative result when the defect exceeds this.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Words separating φ_{a^k} from higher powers and from homomorphisms.
    Separate {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        extra: u32,
    },
    /// Check |φ([x,y])| ≤ 2|φ(e)| + 5C on a ball.
    Commutator {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        c: i64,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
}

fn pairs(g: &Global, rank: usize, random: Option<usize>, default_radius: usize) -> PairSpec {
    let radius = g.radius.unwrap_or(default_radius);
    match random {
        Some(count) => PairSpec::Random { rank, max_len: radius, count, seed: g.seed },
        None => PairSpec::Exhaustive { rank, radius },
    }
}

pub fn run(g: &Global, cmd: &QuasiCmd) -> Result<Report, CliError> {
    match cmd {
        QuasiCmd::Eval { phi, word, rank } => {
            let phi = Quasimorphism::parse(*rank, &input::resolve(phi)?)?;
            let w = ReducedWord::parse(*rank, &input::resolve(word)?)?;
            let v = phi.eval(&w);
            Ok(Report::ok(json!({"phi": phi.to_string(), "word": w, "value": v}), format!("{phi}({w}) = {v}")))
        }
        QuasiCmd::Defect { phi, rank, random, bound } => {
            let phi = Quasimorphism::parse(*rank, &input::resolve(phi)?)?;
            let spec = pairs(g, *rank, *random, 3);
            let r = defect_scan(&phi, &spec)?;
            let passed = bound.map_or(true, |b| r.defect_max <= b);
            let mut text = format!("{phi}: max defect {} over {} pairs", r.defect_max, r.pairs_checked);
            if let Some((x, y)) = &r.witness {
                write!(text, ", attained at ({x}, {y})").unwrap();
            }
            if let Some(b) = bound {
                write!(text, "; bound {b} {}", if passed { "holds" } else { "FAILS" }).unwrap();
            }
            Ok(Report::verdict(passed, json!({"report": r, "bound": bound, "passed": passed}), text))
        }
        QuasiCmd::Separate { k, n, extra } => {
            let w = separation_witness(*k, *n, *extra)?;
            let mut text = format!("word {}\n", w.word);
            for e in &w.table {
                writeln!(text, "  {} = {}", e.phi, e.value).unwrap();
            }
            Ok(Report::ok(json!(w), text))
        }
        QuasiCmd::Commutator { phi, c, rank } => {
            let phi = Quasimorphism::parse(*rank, &input::resolve(phi)?)?;
            let r = commutator_bound_check(&phi, *c, &pairs(g, *rank, None, 2))?;
            let text = format!("{phi}: max |phi([x,y])| = {} <= {} over {} pairs", r.max_abs_value, r.bound, r.pairs_checked);
            Ok(Report::ok(json!(r), text))
        }
    }
}
