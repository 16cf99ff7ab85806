//! Bounded rewriting search deciding equality of braided diagrams in one
//! direction: `Equal` comes with a replayable move script, `NotEqual` with a
//! separating unbraided invariant, and everything else is `Unknown`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use num_bigint::BigInt;

use super::{multiply_raw, Move, Side, Spraige};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of non-reduction moves along a path.
    pub depth: usize,
    /// Maximum number of distinct states visited.
    pub states: usize,
    /// How many leaves beyond the start state expansions may add.
    pub extra_leaves: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { depth: 12, states: 100_000, extra_leaves: 4 }
    }
}

impl Budget {
    pub fn with_states(states: usize) -> Self {
        Budget { states, ..Budget::default() }
    }
}

/// Moves witnessing an equality. `sigma_moves` and `tau_moves` normalize
/// each side to a common diagram; `product_moves`, when present, rewrite
/// `τ⁻¹ ∗ σ` (unreduced product) to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub sigma_moves: Vec<Move>,
    pub tau_moves: Vec<Move>,
    pub product_moves: Option<Vec<Move>>,
}

impl Certificate {
    pub fn moves(&self) -> impl Iterator<Item = &Move> {
        self.sigma_moves
            .iter()
            .chain(&self.tau_moves)
            .chain(self.product_moves.iter().flatten())
    }

    /// Move counts by kind, e.g. `3 reductions, 1 cross removal`.
    pub fn summary(&self) -> String {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for m in self.moves() {
            *counts.entry(m.kind()).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return "no moves".into();
        }
        counts
            .into_iter()
            .map(|(k, n)| if n == 1 { format!("1 {k}") } else { format!("{n} {k}s") })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal(Certificate),
    NotEqual,
    Unknown,
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<Move>),
    /// Every state within the depth bound was visited.
    Exhausted,
    BudgetExceeded,
}

type Key = (String, String, Vec<BigInt>);

fn key(x: &Spraige) -> Key {
    // Coordinates determine the braid element, so equal braids share a key.
    (x.f_minus.to_string(), x.f_plus.to_string(), x.braid.dynnikov_coordinates())
}

struct Node {
    state: Spraige,
    parent: Option<usize>,
    moves: Vec<Move>,
}

fn candidate_moves(x: &Spraige, max_leaves: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for i in 1..=x.leaves().saturating_sub(3) {
        if x.cross_remove(i).is_ok() {
            out.push(Move::CrossRemove { leaf: i });
        }
    }
    for side in [Side::Minus, Side::Plus] {
        for (root, path) in x.exchange_sites(side) {
            out.push(Move::RootExchange { side, root, path });
        }
    }
    if x.leaves() < max_leaves {
        for i in 1..=x.leaves() {
            for c in 1..=x.colors as u32 {
                out.push(Move::Expand { leaf: i, color: c });
            }
        }
    }
    out
}

/// Best-first search (fewest carets, then shortest braid, then depth) from
/// `start` to a state satisfying `goal`. Every state is reduced fully after
/// each move; the returned script includes those reductions.
pub fn search_for(start: &Spraige, goal: impl Fn(&Spraige) -> bool, budget: Budget) -> SearchOutcome {
    let (x0, log0) = start.reduce_fully_logged();
    if goal(&x0) {
        return SearchOutcome::Found(log0);
    }
    let max_leaves = start.leaves() + budget.extra_leaves;
    let mut visited: HashSet<Key> = HashSet::new();
    visited.insert(key(&x0));
    let mut nodes = vec![Node { state: x0, parent: None, moves: log0 }];
    let mut heap = BinaryHeap::new();
    let prio = |x: &Spraige, depth: usize, id: usize| Reverse((x.carets(), x.braid.len(), depth, id));
    heap.push(prio(&nodes[0].state, 0, 0));
    while let Some(Reverse((_, _, depth, id))) = heap.pop() {
        if depth >= budget.depth {
            continue;
        }
        let x = nodes[id].state.clone();
        for m in candidate_moves(&x, max_leaves) {
            let Ok(y) = x.apply(&m) else { continue };
            let (y, log) = y.reduce_fully_logged();
            if !visited.insert(key(&y)) {
                continue;
            }
            let mut moves = vec![m];
            moves.extend(log);
            let found = goal(&y);
            let nid = nodes.len();
            heap.push(prio(&y, depth + 1, nid));
            nodes.push(Node { state: y, parent: Some(id), moves });
            if found {
                return SearchOutcome::Found(script_to(&nodes, nid));
            }
            if nodes.len() >= budget.states {
                return SearchOutcome::BudgetExceeded;
            }
        }
    }
    SearchOutcome::Exhausted
}

fn script_to(nodes: &[Node], mut id: usize) -> Vec<Move> {
    let mut chunks = Vec::new();
    loop {
        chunks.push(nodes[id].moves.clone());
        match nodes[id].parent {
            Some(p) => id = p,
            None => break,
        }
    }
    chunks.into_iter().rev().flatten().collect()
}

fn same_diagram(a: &Spraige, b: &Spraige) -> bool {
    a.f_minus == b.f_minus && a.f_plus == b.f_plus && a.braid.equal(&b.braid).unwrap_or(false)
}

/// Three-valued equality in the braided groupoid.
pub fn svbr_equal(sigma: &Spraige, tau: &Spraige, budget: Budget) -> Verdict {
    if sigma.colors != tau.colors || sigma.heads() != tau.heads() || sigma.feet() != tau.feet() {
        return Verdict::NotEqual;
    }
    if !sigma.sv_equal(tau) {
        return Verdict::NotEqual;
    }
    let (s, sigma_moves) = sigma.reduce_fully_logged();
    let (t, tau_moves) = tau.reduce_fully_logged();
    if same_diagram(&s, &t) {
        return Verdict::Equal(Certificate { sigma_moves, tau_moves, product_moves: None });
    }
    let Ok(x) = multiply_raw(&tau.inverse(), sigma) else { return Verdict::Unknown };
    match search_for(&x, Spraige::is_identity, budget) {
        SearchOutcome::Found(moves) => Verdict::Equal(Certificate {
            sigma_moves: Vec::new(),
            tau_moves: Vec::new(),
            product_moves: Some(moves),
        }),
        _ => Verdict::Unknown,
    }
}

fn replay(start: &Spraige, moves: &[Move]) -> Result<Spraige, String> {
    let mut x = start.clone();
    for (k, m) in moves.iter().enumerate() {
        let y = x.apply(m).map_err(|e| format!("move {} ({m}) failed: {e}", k + 1))?;
        if !y.sv_equal(&x) {
            return Err(format!("move {} ({m}) changed the brick map", k + 1));
        }
        x = y;
    }
    Ok(x)
}

/// Replays a certificate, checking that every move applies and preserves
/// the brick semantics, and that the script ends where it claims.
pub fn audit(sigma: &Spraige, tau: &Spraige, cert: &Certificate) -> Result<(), String> {
    let s = replay(sigma, &cert.sigma_moves)?;
    let t = replay(tau, &cert.tau_moves)?;
    match &cert.product_moves {
        None => {
            if !same_diagram(&s, &t) {
                return Err("normalized diagrams differ".into());
            }
        }
        Some(moves) => {
            let x = multiply_raw(&tau.inverse(), sigma).map_err(|e| e.to_string())?;
            let expected = tau.inverse().brick_map().then(&sigma.brick_map());
            if !x.brick_map().equivalent(&expected) {
                return Err("product does not match the composed brick maps".into());
            }
            let end = replay(&x, moves)?;
            if !end.is_identity() {
                return Err("script does not end at the identity".into());
            }
        }
    }
    Ok(())
}
