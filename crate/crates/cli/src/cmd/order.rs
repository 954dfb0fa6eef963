use std::cmp::Ordering;
use std::fmt::Write as _;

use clap::Subcommand;
use exactgrp::group::{word_ball, FreeAbelian, FreeGroup, GroupBackend, Heisenberg, IntMatrixGroup, ZVec};
use exactgrp::heisenberg::HeisOrder;
use exactgrp::matred::parse_int_matrix;
use exactgrp::orders::{check_trace, cone_search, order_axiom_check, sl3_contradiction, verify_heis_triples, ConeOutcome, ConeSearchConfig, DerivationTrace, LlFact};
use exactgrp::{freegroup::ReducedWord, BigIntMat, Error, Heis};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input;
use crate::report::{usage, CliError, Report, Status};
use crate::Global;

#[derive(Subcommand)]
pub enum OrderCmd {
    /// Search for a positive cone on a word ball.
    Search {
        /// free:<k>, abelian:<d>, heis, or matrix (with --gens).
        #[arg(long)]
        group: String,
        /// JSON list of integer matrices generating the group.
        #[arg(long)]
        gens: Option<String>,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = 200_000)]
        nodes: usize,
    },
    /// Derive i ≪ i in SL(3,Z) from one branch of the first case split.
    Sl3 {
        /// `2<<1` or `2<<3`
        #[arg(long)]
        branch: String,
    },
    /// Check the left-order axioms for a comparison on a word ball.
    Axioms {
        /// A Heisenberg order such as `zxy:+-+`, or `lex:<d>` / `shortlex:<d>` on Z^d.
        #[arg(long)]
        order: String,
        #[arg(long, default_value_t = 20_000)]
        triples: usize,
    },
    /// Check a saved derivation trace independently of the engine.
    Replay {
        #[arg(long)]
        trace: String,
    },
    /// Verify the six Heisenberg triples of elementary matrices in SL(3,Z).
    Triples,
}

fn search<G: GroupBackend>(group: &G, gens: &[G::Elem], cfg: ConeSearchConfig) -> Result<Report, CliError>
where
    G::Elem: Serialize,
{
    let out = cone_search(group, gens, cfg)?;
    let (status, text) = match &out {
        ConeOutcome::OrderableUpToRadius { cone, nodes } => (
            Status::Success,
            format!(
                "{}: consistent cone with {} positives on a ball of {} elements (radius {}, {nodes} nodes); bounded certificate only",
                group.name(),
                cone.positives.len(),
                cone.ball_size,
                cone.radius
            ),
        ),
        ConeOutcome::NotLeftOrderable { certificate, nodes } => (
            Status::Negative,
            format!("{}: not left-orderable, refutation with {} leaves ({nodes} nodes)", group.name(), certificate.leaves()),
        ),
    };
    Ok(Report::new(status, json!({"group": group.name(), "radius": cfg.radius, "outcome": out}), text))
}

fn axioms<G: GroupBackend>(g: &Global, group: &G, gens: &[G::Elem], cmp: impl Fn(&G::Elem, &G::Elem) -> Ordering, triples: usize, name: &str) -> Result<Report, CliError> {
    let radius = g.radius.unwrap_or(2);
    let samples: Vec<G::Elem> = word_ball(group, gens, radius, 4096)?.into_iter().map(|(e, _)| e).collect();
    let r = order_axiom_check(group, cmp, &samples, triples, g.seed);
    let mut text = format!("{name} on {} (radius {radius}): {} triples, ", group.name(), r.triples_checked);
    if r.passed() {
        text.push_str("all axioms hold");
    } else {
        let names: Vec<&str> = r.violations.iter().map(|v| v.axiom).collect();
        write!(text, "violated: {}", names.join(", ")).unwrap();
    }
    Ok(Report::verdict(r.passed(), json!({"order": name, "samples": samples.len(), "report": r}), text))
}

fn lex(a: &ZVec, b: &ZVec) -> Ordering {
    a.0.cmp(&b.0)
}

fn shortlex(a: &ZVec, b: &ZVec) -> Ordering {
    a.l1().cmp(&b.l1()).then_with(|| a.0.cmp(&b.0))
}

fn trace_json(trace: &DerivationTrace) -> Value {
    serde_json::to_value(trace).expect("serializable")
}

pub fn run(g: &Global, cmd: &OrderCmd) -> Result<Report, CliError> {
    match cmd {
        OrderCmd::Search { group, gens, nodes } => {
            let mut cfg = ConeSearchConfig::new(g.radius.unwrap_or(2));
            cfg.node_cap = *nodes;
            if let Some(c) = g.cap {
                cfg.ball_cap = c as usize;
            }
            let (kind, n) = input::kind_usize(group, 2)?;
            match kind.as_str() {
                "free" => search(&FreeGroup { rank: n }, &(0..n).map(|i| ReducedWord::generator(n, i)).collect::<Result<Vec<_>, _>>()?, cfg),
                "abelian" => search(&FreeAbelian { dim: n }, &(0..n).map(|i| ZVec::unit(n, i)).collect::<Vec<_>>(), cfg),
                "heis" => search(&Heisenberg, &[Heis::x(), Heis::y()], cfg),
                "matrix" => {
                    let gens = gens.as_deref().ok_or_else(|| usage("matrix groups need --gens"))?;
                    let ms = match input::json(gens)? {
                        Value::Array(v) => v.iter().map(parse_int_matrix).collect::<Result<Vec<BigIntMat>, Error>>()?,
                        _ => return Err(usage("--gens must be a JSON list of matrices")),
                    };
                    let dim = ms.first().map(|m| m.dim()).ok_or_else(|| usage("--gens is empty"))?;
                    let grp = IntMatrixGroup::new(dim, ms.clone())?;
                    search(&grp, &ms, cfg)
                }
                other => Err(usage(format!("unknown group {other:?}"))),
            }
        }
        OrderCmd::Sl3 { branch } => {
            let initial: LlFact = input::resolve(branch)?.parse()?;
            let trace = sl3_contradiction(initial)?;
            let check = check_trace(&trace)?;
            let mut text = format!("assume {initial}\n");
            for (i, s) in trace.steps.iter().enumerate() {
                let rule = serde_json::to_value(s.rule).unwrap();
                writeln!(text, "  {i}: {} [{} {:?}]", s.conclusion, rule.as_str().unwrap_or_default(), s.premises).unwrap();
            }
            write!(
                text,
                "{} lemma applications; contradiction {}; independent check passed\nSL(3,Z) is not left-orderable",
                trace.lemma_applications(),
                check.contradiction.as_deref().unwrap_or("none")
            )
            .unwrap();
            let status = if check.contradiction.is_some() { Status::Negative } else { Status::Inconclusive };
            Ok(Report::new(status, json!({"trace": trace_json(&trace), "check": check}), text))
        }
        OrderCmd::Axioms { order, triples } => {
            let spec = input::resolve(order)?;
            let (kind, arg) = input::kind(&spec);
            match kind {
                "lex" | "shortlex" => {
                    let d: usize = arg.unwrap_or("2").parse().map_err(|_| usage(format!("invalid dimension in {spec:?}")))?;
                    let grp = FreeAbelian { dim: d };
                    let gens: Vec<ZVec> = (0..d).map(|i| ZVec::unit(d, i)).collect();
                    let cmp = if kind == "lex" { lex } else { shortlex };
                    axioms(g, &grp, &gens, cmp, *triples, &spec)
                }
                _ => {
                    let o: HeisOrder = spec.parse()?;
                    axioms(g, &Heisenberg, &[Heis::x(), Heis::y()], |a, b| o.compare(a, b), *triples, &spec)
                }
            }
        }
        OrderCmd::Replay { trace } => {
            let mut v = input::json(trace)?;
            // a saved `order sl3 --json` report carries the trace inside
            if let Some(t) = v.pointer("/result/trace") {
                v = t.clone();
            }
            let trace: DerivationTrace = serde_json::from_value(v).map_err(|e| usage(format!("not a derivation trace: {e}")))?;
            let check = check_trace(&trace)?;
            let text = format!(
                "trace from {} checks: {} steps, {} lemma applications, contradiction {}",
                trace.initial.0,
                check.steps,
                check.lemma_applications,
                check.contradiction.as_deref().unwrap_or("none")
            );
            Ok(Report::ok(json!(check), text))
        }
        OrderCmd::Triples => {
            let ts = verify_heis_triples()?;
            let mut text = String::new();
            for t in &ts {
                writeln!(text, "[<{}>, <{}>] = <{}>^{} central, {} homomorphism pairs", t.x, t.y, t.z, t.sign, t.homomorphism_pairs).unwrap();
            }
            Ok(Report::ok(json!(ts), text))
        }
    }
}
