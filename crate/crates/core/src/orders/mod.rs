//! Left-order machinery over word-problem backends.

pub mod axioms;
pub mod checker;
pub mod cone;
pub mod extension;
pub mod sl3;

pub use axioms::{order_axiom_check, AxiomReport, AxiomViolation};
pub use checker::{check_trace, CheckReport};
pub use cone::{cone_search, verify_refutation, ConeOutcome, ConeSearchConfig, ConeState, Conflict, DerivStep, Refutation};
pub use extension::ExtensionOrder;
pub use sl3::{check_triple, sl3_contradiction, verify_heis_triples, LlFactString, DerivationStep, DerivationTrace, LlFact, Rule, Statement, TripleCheck};
