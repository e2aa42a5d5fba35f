//! Bounded bidirectional breadth-first search for Hurwitz equivalence.
//!
//! No algorithm decides Hurwitz equivalence in general, so the search first
//! tries cheap invariants that can refute equivalence, then explores the
//! Hurwitz orbit up to a state budget. States are identified by
//! [`canonical_key`](super::canonical_key), so re-spelled factors collapse.

use std::collections::HashMap;
use std::fmt;

use crate::braid::{braid_equal, braid_perm, check_strands, is_central, BraidWord};
use crate::error::Result;

use super::{factor_key, global_conjugate, hurwitz_move, key_from_parts, product, Direction, Factorization};

pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Forward(usize),
    Backward(usize),
    Conjugate(BraidWord),
}

impl fmt::Display for Move {
    /// Positions are printed 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Forward(p) => write!(f, "forward@{}", p + 1),
            Move::Backward(p) => write!(f, "backward@{}", p + 1),
            Move::Conjugate(b) => {
                let l: Vec<String> = b.letters().iter().map(i32::to_string).collect();
                write!(f, "conjugate[{}]", l.join(" "))
            }
        }
    }
}

pub fn apply_move(f: &Factorization, m: &Move) -> Result<Factorization> {
    match m {
        Move::Forward(p) => hurwitz_move(f, *p, Direction::Forward),
        Move::Backward(p) => hurwitz_move(f, *p, Direction::Backward),
        Move::Conjugate(b) => global_conjugate(f, b),
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_states: usize,
    pub allow_conjugation: bool,
    /// Conjugating braids tried at each state when conjugation is allowed.
    /// `None` means every `X_i` and `X_i⁻¹`.
    pub conjugators: Option<Vec<BraidWord>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_states: DEFAULT_MAX_STATES,
            allow_conjugation: false,
            conjugators: None,
        }
    }
}

/// Why two factorizations cannot be equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    FactorCount { left: usize, right: usize },
    ExponentMultiset,
    Product,
    /// The whole orbit of the left side was enumerated without meeting the right side.
    OrbitClosed { states: usize },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::FactorCount { left, right } => write!(f, "factor_count ({left} vs {right})"),
            Refutation::ExponentMultiset => write!(f, "exponent_multiset"),
            Refutation::Product => write!(f, "product"),
            Refutation::OrbitClosed { states } => write!(f, "orbit_closed ({states} states)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Moves taking the left factorization to one factorwise equal to the right.
    Found(Vec<Move>),
    Refuted(Refutation),
    /// Budget reached without a verdict.
    Exhausted { states: usize },
}

fn invariant_multiset(f: &Factorization) -> Vec<(i32, Vec<usize>)> {
    let mut v: Vec<(i32, Vec<usize>)> = f
        .factors()
        .iter()
        .map(|x| (x.exponent().value(), x.permutation().cycle_type()))
        .collect();
    v.sort();
    v
}

fn refute(a: &Factorization, b: &Factorization, allow_conjugation: bool) -> Result<Option<Refutation>> {
    if a.len() != b.len() {
        return Ok(Some(Refutation::FactorCount {
            left: a.len(),
            right: b.len(),
        }));
    }
    if invariant_multiset(a) != invariant_multiset(b) {
        return Ok(Some(Refutation::ExponentMultiset));
    }
    let (pa, pb) = (product(a), product(b));
    let differs = if !allow_conjugation {
        !braid_equal(&pa, &pb)?
    } else if is_central(&pa) {
        // A central braid is alone in its conjugacy class.
        !braid_equal(&pa, &pb)?
    } else {
        pa.exponent_sum() != pb.exponent_sum() || braid_perm(&pa).cycle_type() != braid_perm(&pb).cycle_type()
    };
    Ok(differs.then_some(Refutation::Product))
}

struct Node {
    f: Factorization,
    keys: Vec<String>,
    parent: Option<(usize, Move)>,
}

/// One direction of the search: nodes reached from a root and the frontier
/// still to expand.
struct Side {
    nodes: Vec<Node>,
    seen: HashMap<Vec<u8>, usize>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(f: &Factorization) -> Self {
        let keys: Vec<String> = f.factors().iter().map(factor_key).collect();
        Side {
            seen: HashMap::from([(key_from_parts(f.degree(), &keys), 0)]),
            nodes: vec![Node {
                f: f.clone(),
                keys,
                parent: None,
            }],
            frontier: vec![0],
        }
    }

    fn path(&self, mut idx: usize) -> Vec<Move> {
        let mut path = Vec::new();
        while let Some((parent, mv)) = &self.nodes[idx].parent {
            path.push(mv.clone());
            idx = *parent;
        }
        path.reverse();
        path
    }
}

fn inverse_move(m: &Move) -> Move {
    match m {
        Move::Forward(p) => Move::Backward(*p),
        Move::Backward(p) => Move::Forward(*p),
        Move::Conjugate(b) => Move::Conjugate(b.inverse()),
    }
}

/// Children of a node with their factor keys; only factors touched by a move
/// are re-keyed.
fn children(node: &Node, conjugators: &[BraidWord]) -> Result<Vec<(Move, Factorization, Vec<String>)>> {
    let m = node.f.len();
    let moves = (0..m.saturating_sub(1))
        .map(Move::Forward)
        .chain((0..m.saturating_sub(1)).map(Move::Backward))
        .chain(conjugators.iter().cloned().map(Move::Conjugate));
    let mut out = Vec::new();
    for mv in moves {
        let g = apply_move(&node.f, &mv)?;
        let keys = match mv {
            Move::Forward(p) | Move::Backward(p) => {
                let mut k = node.keys.clone();
                k[p] = factor_key(&g.factors()[p]);
                k[p + 1] = factor_key(&g.factors()[p + 1]);
                k
            }
            Move::Conjugate(_) => g.factors().iter().map(factor_key).collect(),
        };
        out.push((mv, g, keys));
    }
    Ok(out)
}

/// Searches for a sequence of Hurwitz moves (and optionally global
/// conjugations) taking `a` to `b`.
///
/// The orbits of both sides are explored breadth-first, one whole layer at a
/// time from the side with the smaller frontier (the left side on ties), until
/// they meet. Moves are tried in the order forward `0..m-1`, backward
/// `0..m-1`, then conjugators in order, so the result is deterministic. If
/// either orbit is exhausted without meeting the other, the pair is refuted.
pub fn hurwitz_equivalent(a: &Factorization, b: &Factorization, options: &SearchOptions) -> Result<SearchOutcome> {
    check_strands(a.degree(), b.degree())?;
    if let Some(r) = refute(a, b, options.allow_conjugation)? {
        return Ok(SearchOutcome::Refuted(r));
    }
    let d = a.degree();

    let words: Vec<BraidWord> = if options.allow_conjugation {
        options.conjugators.clone().unwrap_or_else(|| {
            (1..d as i32)
                .flat_map(|i| [i, -i])
                .map(|l| BraidWord::new(d, vec![l]).expect("generator in range"))
                .collect()
        })
    } else {
        Vec::new()
    };
    for w in &words {
        check_strands(d, w.strands())?;
    }
    let inverses: Vec<BraidWord> = words.iter().map(BraidWord::inverse).collect();

    if super::canonical_key(a) == super::canonical_key(b) {
        return Ok(SearchOutcome::Found(Vec::new()));
    }
    let mut sides = [Side::new(a), Side::new(b)];
    let conj = [&words, &inverses];

    loop {
        let s = if sides[1].frontier.len() < sides[0].frontier.len() { 1 } else { 0 };
        if sides[s].frontier.is_empty() {
            let states = sides[0].nodes.len() + sides[1].nodes.len();
            return Ok(SearchOutcome::Refuted(Refutation::OrbitClosed { states }));
        }
        let layer = std::mem::take(&mut sides[s].frontier);
        for idx in layer {
            for (mv, f, keys) in children(&sides[s].nodes[idx], conj[s])? {
                let key = key_from_parts(d, &keys);
                if sides[s].seen.contains_key(&key) {
                    continue;
                }
                let side = &mut sides[s];
                let child = side.nodes.len();
                side.nodes.push(Node {
                    f,
                    keys,
                    parent: Some((idx, mv)),
                });
                if let Some(&other) = sides[1 - s].seen.get(&key) {
                    let (from_a, from_b) = if s == 0 {
                        (sides[0].path(child), sides[1].path(other))
                    } else {
                        (sides[0].path(other), sides[1].path(child))
                    };
                    let mut path = from_a;
                    path.extend(from_b.iter().rev().map(inverse_move));
                    return Ok(SearchOutcome::Found(path));
                }
                let side = &mut sides[s];
                side.seen.insert(key, child);
                side.frontier.push(child);
                let states = sides[0].nodes.len() + sides[1].nodes.len();
                if states >= options.max_states {
                    return Ok(SearchOutcome::Exhausted { states });
                }
            }
        }
    }
}
