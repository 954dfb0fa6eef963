//! Bounded-radius positive-cone search.
//!
//! A group is left-orderable iff every finite list of nontrivial elements
//! admits signs whose semigroup avoids `e`. The search restricts that test to
//! a word ball: it assigns signs depth-first (shortest elements first),
//! closes the positive set under products that stay in the ball, and prunes
//! on `e ≻ e` or `g, g⁻¹ ≻ e`.
//!
//! A refutation is a complete case split with a product derivation closing
//! every leaf. Because products of positives are positive in any left order,
//! a refutation is a proof of non-orderability regardless of the ball. The
//! converse verdict is only a bounded certificate.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{word_ball, GroupBackend};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConeSearchConfig {
    pub radius: usize,
    /// Maximum number of ball elements.
    pub ball_cap: usize,
    /// Maximum number of search nodes (sign decisions) explored.
    pub node_cap: usize,
}

impl ConeSearchConfig {
    pub fn new(radius: usize) -> Self {
        Self { radius, ball_cap: 4096, node_cap: 200_000 }
    }
}

/// Positive cone restricted to a ball: closed under in-ball products,
/// never containing `e` or both `g` and `g⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeState<E> {
    pub radius: usize,
    pub ball_size: usize,
    pub positives: Vec<E>,
}

impl<E: PartialEq> ConeState<E> {
    pub fn contains(&self, g: &E) -> bool {
        self.positives.contains(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivStep<E> {
    Assumption { element: E },
    Product { element: E, left: E, right: E },
}

impl<E> DerivStep<E> {
    pub fn element(&self) -> &E {
        match self {
            Self::Assumption { element } | Self::Product { element, .. } => element,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conflict<E> {
    /// The identity was derived positive.
    IdentityPositive,
    /// Both `element` and its inverse were derived positive.
    BothSigns { element: E },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Refutation<E> {
    /// Case split on `element ≻ e` versus `element⁻¹ ≻ e`.
    Split { element: E, positive: Box<Refutation<E>>, negative: Box<Refutation<E>> },
    /// Contradiction reached from the assumptions on the current path.
    Closed { derivation: Vec<DerivStep<E>>, conflict: Conflict<E> },
}

impl<E> Refutation<E> {
    pub fn leaves(&self) -> usize {
        match self {
            Self::Split { positive, negative, .. } => positive.leaves() + negative.leaves(),
            Self::Closed { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConeOutcome<E> {
    OrderableUpToRadius { cone: ConeState<E>, nodes: usize },
    NotLeftOrderable { certificate: Refutation<E>, nodes: usize },
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reason {
    Assumed,
    Product(u32, u32),
}

struct Ball<E> {
    elems: Vec<E>,
    inv: Vec<u32>,
    table: Vec<u32>,
}

impl<E> Ball<E> {
    fn n(&self) -> usize {
        self.elems.len()
    }

    fn prod(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n() + b as usize]
    }
}

#[derive(Clone)]
struct State {
    reason: Vec<Option<Reason>>,
    positives: Vec<u32>,
}

enum Clash {
    Identity,
    Both(u32),
}

struct Search<'a, E> {
    ball: &'a Ball<E>,
    nodes: usize,
    node_cap: usize,
}

enum Found {
    Cone(State),
    Refuted(Refutation<u32>),
}

impl<E> Search<'_, E> {
    /// Marks `start` positive and closes; returns the conflicting fact on failure.
    fn assume(&self, st: &mut State, start: u32) -> std::result::Result<(), Clash> {
        let mut queue = VecDeque::new();
        self.mark(st, start, Reason::Assumed, &mut queue)?;
        while let Some(p) = queue.pop_front() {
            let mut i = 0;
            while i < st.positives.len() {
                let q = st.positives[i];
                for (l, r) in [(p, q), (q, p)] {
                    let prod = self.ball.prod(l, r);
                    if prod != NONE && st.reason[prod as usize].is_none() {
                        self.mark(st, prod, Reason::Product(l, r), &mut queue)?;
                    }
                }
                i += 1;
            }
        }
        Ok(())
    }

    fn mark(&self, st: &mut State, g: u32, why: Reason, queue: &mut VecDeque<u32>) -> std::result::Result<(), Clash> {
        st.reason[g as usize] = Some(why);
        st.positives.push(g);
        if g == 0 {
            return Err(Clash::Identity);
        }
        if st.reason[self.ball.inv[g as usize] as usize].is_some() {
            return Err(Clash::Both(g));
        }
        queue.push_back(g);
        Ok(())
    }

    fn derivation(&self, st: &State, clash: &Clash) -> (Vec<DerivStep<u32>>, Conflict<u32>) {
        let mut order = Vec::new();
        let mut seen = vec![false; self.ball.n()];
        let roots: Vec<u32> = match clash {
            Clash::Identity => vec![0],
            Clash::Both(g) => vec![*g, self.ball.inv[*g as usize]],
        };
        for r in roots {
            self.collect(st, r, &mut seen, &mut order);
        }
        let steps = order
            .into_iter()
            .map(|g| match st.reason[g as usize].expect("derived") {
                Reason::Assumed => DerivStep::Assumption { element: g },
                Reason::Product(l, r) => DerivStep::Product { element: g, left: l, right: r },
            })
            .collect();
        let conflict = match clash {
            Clash::Identity => Conflict::IdentityPositive,
            Clash::Both(g) => Conflict::BothSigns { element: *g },
        };
        (steps, conflict)
    }

    fn collect(&self, st: &State, g: u32, seen: &mut [bool], order: &mut Vec<u32>) {
        // iterative post-order to avoid deep recursion on long product chains
        let mut stack = vec![(g, false)];
        while let Some((x, expanded)) = stack.pop() {
            if seen[x as usize] {
                continue;
            }
            if expanded {
                seen[x as usize] = true;
                order.push(x);
                continue;
            }
            stack.push((x, true));
            if let Some(Reason::Product(l, r)) = st.reason[x as usize] {
                stack.push((r, false));
                stack.push((l, false));
            }
        }
    }

    fn dfs(&mut self, st: State) -> Result<Found> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::ResourceCap { needed: self.nodes as u128, cap: self.node_cap as u128 });
        }
        let undecided = (1..self.ball.n() as u32)
            .find(|&i| st.reason[i as usize].is_none() && st.reason[self.ball.inv[i as usize] as usize].is_none());
        let Some(i) = undecided else {
            return Ok(Found::Cone(st));
        };
        let mut branches = Vec::with_capacity(2);
        for target in [i, self.ball.inv[i as usize]] {
            let mut s = st.clone();
            match self.assume(&mut s, target) {
                Err(clash) => {
                    let (derivation, conflict) = self.derivation(&s, &clash);
                    branches.push(Refutation::Closed { derivation, conflict });
                }
                Ok(()) => match self.dfs(s)? {
                    Found::Cone(c) => return Ok(Found::Cone(c)),
                    Found::Refuted(r) => branches.push(r),
                },
            }
        }
        let negative = Box::new(branches.pop().expect("two branches"));
        let positive = Box::new(branches.pop().expect("two branches"));
        Ok(Found::Refuted(Refutation::Split { element: i, positive, negative }))
    }
}

fn map_refutation<E: Clone>(r: Refutation<u32>, elems: &[E]) -> Refutation<E> {
    let el = |i: u32| elems[i as usize].clone();
    match r {
        Refutation::Split { element, positive, negative } => Refutation::Split {
            element: el(element),
            positive: Box::new(map_refutation(*positive, elems)),
            negative: Box::new(map_refutation(*negative, elems)),
        },
        Refutation::Closed { derivation, conflict } => Refutation::Closed {
            derivation: derivation
                .into_iter()
                .map(|s| match s {
                    DerivStep::Assumption { element } => DerivStep::Assumption { element: el(element) },
                    DerivStep::Product { element, left, right } => DerivStep::Product { element: el(element), left: el(left), right: el(right) },
                })
                .collect(),
            conflict: match conflict {
                Conflict::IdentityPositive => Conflict::IdentityPositive,
                Conflict::BothSigns { element } => Conflict::BothSigns { element: el(element) },
            },
        },
    }
}

/// Searches for a sign assignment on the ball of radius `cfg.radius` whose
/// product closure stays consistent.
///
/// Exceeding either cap is reported as [`Error::ResourceCap`], distinct from
/// both verdicts.
pub fn cone_search<G: GroupBackend>(group: &G, generators: &[G::Elem], cfg: ConeSearchConfig) -> Result<ConeOutcome<G::Elem>> {
    if cfg.radius == 0 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    if generators.is_empty() {
        return Err(Error::Precondition("generator list must be nonempty".into()));
    }
    if generators.iter().any(|g| group.is_identity(g)) {
        return Err(Error::Precondition("generators must be nontrivial".into()));
    }
    let ball = word_ball(group, generators, cfg.radius, cfg.ball_cap)?;
    let elems: Vec<G::Elem> = ball.into_iter().map(|(e, _)| e).collect();
    let n = elems.len();
    let index: HashMap<&G::Elem, u32> = elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
    let inv: Vec<u32> = elems.iter().map(|e| index[&group.invert(e)]).collect();
    let mut table = vec![NONE; n * n];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            if let Some(&k) = index.get(&group.multiply(a, b)) {
                table[i * n + j] = k;
            }
        }
    }
    let ball = Ball { elems, inv, table };
    let mut search = Search { ball: &ball, nodes: 0, node_cap: cfg.node_cap };
    let start = State { reason: vec![None; n], positives: Vec::new() };
    match search.dfs(start)? {
        Found::Cone(st) => {
            let mut positives: Vec<u32> = st.positives.clone();
            positives.sort_unstable();
            Ok(ConeOutcome::OrderableUpToRadius {
                cone: ConeState {
                    radius: cfg.radius,
                    ball_size: n,
                    positives: positives.into_iter().map(|i| ball.elems[i as usize].clone()).collect(),
                },
                nodes: search.nodes,
            })
        }
        Found::Refuted(r) => Ok(ConeOutcome::NotLeftOrderable { certificate: map_refutation(r, &ball.elems), nodes: search.nodes }),
    }
}

/// Replays a refutation using only the backend's multiplication: every
/// split is on a nontrivial element, every leaf derives a conflict from the
/// path's assumptions by products.
pub fn verify_refutation<G: GroupBackend>(group: &G, r: &Refutation<G::Elem>) -> bool {
    fn go<G: GroupBackend>(group: &G, r: &Refutation<G::Elem>, assumed: &mut Vec<G::Elem>) -> bool {
        match r {
            Refutation::Split { element, positive, negative } => {
                if group.is_identity(element) {
                    return false;
                }
                assumed.push(element.clone());
                let ok_pos = go(group, positive, assumed);
                assumed.pop();
                assumed.push(group.invert(element));
                let ok_neg = go(group, negative, assumed);
                assumed.pop();
                ok_pos && ok_neg
            }
            Refutation::Closed { derivation, conflict } => {
                let mut facts: Vec<G::Elem> = Vec::new();
                for step in derivation {
                    match step {
                        DerivStep::Assumption { element } => {
                            if !assumed.contains(element) {
                                return false;
                            }
                        }
                        DerivStep::Product { element, left, right } => {
                            if !facts.contains(left) || !facts.contains(right) || group.multiply(left, right) != *element {
                                return false;
                            }
                        }
                    }
                    facts.push(step.element().clone());
                }
                match conflict {
                    Conflict::IdentityPositive => facts.iter().any(|f| group.is_identity(f)),
                    Conflict::BothSigns { element } => facts.contains(element) && facts.contains(&group.invert(element)),
                }
            }
        }
    }
    go(group, r, &mut Vec::new())
}
