//! Independent checker for [`DerivationTrace`]s. It shares only the data
//! types with the engine and re-derives every lemma instance from the
//! position adjacency.

use serde::Serialize;

use super::sl3::{neighbours, DerivationTrace, LlFact, Rule, Statement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub steps: usize,
    pub lemma_applications: usize,
    pub assumption: Option<String>,
    /// The reflexive fact `i ≪ i` reached, if any.
    pub contradiction: Option<String>,
}

fn bad(i: usize, msg: impl Into<String>) -> Error {
    Error::Violation(format!("step {i}: {}", msg.into()))
}

fn is_lemma_instance(a: LlFact, b: LlFact) -> bool {
    if a.lhs != b.lhs || !(1..=6).contains(&a.lhs) {
        return false;
    }
    let (p, n) = neighbours(a.lhs);
    (a.rhs == p && b.rhs == n) || (a.rhs == n && b.rhs == p)
}

/// Validates every step of `trace` and reports whether it ends in `i ≪ i`.
///
/// Premises must point at earlier steps. At most one assumption is allowed
/// and it must pick a disjunct of a lemma instance.
pub fn check_trace(trace: &DerivationTrace) -> Result<CheckReport> {
    let steps = &trace.steps;
    let mut lemma_applications = 0;
    let mut assumption = None;
    let mut contradiction = None;
    let fact_at = |i: usize, p: usize| -> Result<LlFact> {
        if p >= i {
            return Err(bad(i, format!("premise {p} is not earlier")));
        }
        match steps[p].conclusion {
            Statement::Fact(f) => Ok(f),
            Statement::Or(..) => Err(bad(i, format!("premise {p} is a disjunction"))),
        }
    };
    let or_at = |i: usize, p: usize| -> Result<(LlFact, LlFact)> {
        if p >= i {
            return Err(bad(i, format!("premise {p} is not earlier")));
        }
        match steps[p].conclusion {
            Statement::Or(a, b) => Ok((a, b)),
            Statement::Fact(_) => Err(bad(i, format!("premise {p} is not a disjunction"))),
        }
    };
    for (i, step) in steps.iter().enumerate() {
        match step.rule {
            Rule::LemmaDisjunction => {
                if !step.premises.is_empty() {
                    return Err(bad(i, "lemma takes no premises"));
                }
                match step.conclusion {
                    Statement::Or(a, b) if is_lemma_instance(a, b) => lemma_applications += 1,
                    _ => return Err(bad(i, format!("{} is not a lemma instance", step.conclusion))),
                }
            }
            Rule::Assumption => {
                let [p] = step.premises[..] else { return Err(bad(i, "assumption takes one premise")) };
                if assumption.is_some() {
                    return Err(bad(i, "second assumption"));
                }
                let (a, b) = or_at(i, p)?;
                match step.conclusion {
                    Statement::Fact(f) if f == a || f == b => assumption = Some(f.to_string()),
                    _ => return Err(bad(i, "assumption is not a disjunct of its premise")),
                }
            }
            Rule::AsymmetryPruning => {
                let [p, q] = step.premises[..] else { return Err(bad(i, "pruning takes two premises")) };
                let (a, b) = or_at(i, p)?;
                let refuter = fact_at(i, q)?;
                let Statement::Fact(c) = step.conclusion else { return Err(bad(i, "pruning concludes a fact")) };
                let ok = (refuter == a.reversed() && c == b) || (refuter == b.reversed() && c == a);
                if !ok {
                    return Err(bad(i, format!("{refuter} does not refute the other disjunct of {}", steps[p].conclusion)));
                }
            }
            Rule::Transitivity => {
                let [p, q] = step.premises[..] else { return Err(bad(i, "transitivity takes two premises")) };
                let (f, g) = (fact_at(i, p)?, fact_at(i, q)?);
                if f.rhs != g.lhs || step.conclusion != Statement::Fact(LlFact { lhs: f.lhs, rhs: g.rhs }) {
                    return Err(bad(i, format!("{f}, {g} do not compose to {}", step.conclusion)));
                }
            }
        }
        if let Statement::Fact(f) = step.conclusion {
            if f.is_reflexive() && contradiction.is_none() {
                contradiction = Some(f.to_string());
            }
        }
    }
    Ok(CheckReport { steps: steps.len(), lemma_applications, assumption, contradiction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::sl3::{sl3_contradiction, DerivationStep};

    fn both() -> [DerivationTrace; 2] {
        [sl3_contradiction(LlFact::new(2, 3).unwrap()).unwrap(), sl3_contradiction(LlFact::new(2, 1).unwrap()).unwrap()]
    }

    #[test]
    fn engine_traces_check() {
        for t in both() {
            let r = check_trace(&t).unwrap();
            assert_eq!(r.lemma_applications, 6);
            assert!(r.contradiction.is_some());
        }
    }

    #[test]
    fn tampered_lemma_is_rejected() {
        let mut t = both()[0].clone();
        let i = t.steps.iter().rposition(|s| s.rule == Rule::LemmaDisjunction).unwrap();
        t.steps[i].conclusion = "4<<3 | 4<<6".parse().unwrap();
        assert!(check_trace(&t).is_err());
    }

    #[test]
    fn forward_premise_is_rejected() {
        let mut t = both()[1].clone();
        t.steps.insert(
            0,
            DerivationStep { rule: Rule::Transitivity, premises: vec![1, 2], conclusion: "2<<2".parse().unwrap() },
        );
        assert!(check_trace(&t).is_err());
    }

    #[test]
    fn bare_lemmas_reach_no_contradiction() {
        let t = DerivationTrace {
            schema: 1,
            initial: both()[0].initial,
            steps: vec![DerivationStep { rule: Rule::LemmaDisjunction, premises: vec![], conclusion: "2<<1 | 2<<3".parse().unwrap() }],
        };
        assert_eq!(check_trace(&t).unwrap().contradiction, None);
    }
}
