//! Braid monodromy factorizations and their Hurwitz calculus.
//!
//! Order convention: factors are listed from the base point outward and the
//! product is read left to right, `product = f_1 · f_2 ⋯ f_m`. A factor is a
//! band `Q · X_iᵏ · Q⁻¹` with `k ∈ {1, 2, -2, 3}` (tangency, positive node,
//! negative node, cusp).
//!
//! Hurwitz moves use the handedness
//! `(…, f_p, f_{p+1}, …) ↦ (…, f_p f_{p+1} f_p⁻¹, f_p, …)` for
//! [`Direction::Forward`]; the mirror convention is [`Direction::Backward`].
//! Positions are 0-based: a move at `p` acts on factors `p` and `p + 1`.

mod search;

use std::fmt;

use crate::braid::{artin_action, band_generator, braid_equal, braid_perm, check_strands, full_twist, left_normal_form, BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::word::FreeAutomorphism;

pub use search::{apply_move, hurwitz_equivalent, Move, Refutation, SearchOptions, SearchOutcome, DEFAULT_MAX_STATES};

/// Local type of a special point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Tangency,
    PositiveNode,
    NegativeNode,
    Cusp,
}

impl Exponent {
    pub fn value(self) -> i32 {
        match self {
            Exponent::Tangency => 1,
            Exponent::PositiveNode => 2,
            Exponent::NegativeNode => -2,
            Exponent::Cusp => 3,
        }
    }

    pub fn from_value(k: i32) -> Result<Self> {
        match k {
            1 => Ok(Exponent::Tangency),
            2 => Ok(Exponent::PositiveNode),
            -2 => Ok(Exponent::NegativeNode),
            3 => Ok(Exponent::Cusp),
            _ => Err(Error::InvalidFactor(format!("exponent {k} not in {{1, 2, -2, 3}}"))),
        }
    }

    pub fn is_node(self) -> bool {
        matches!(self, Exponent::PositiveNode | Exponent::NegativeNode)
    }
}

/// One factor `Q · X_iᵏ · Q⁻¹` of a braid monodromy factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    conjugator: BraidWord,
    base: usize,
    exponent: Exponent,
}

impl Factor {
    pub fn new(conjugator: BraidWord, base: usize, exponent: Exponent) -> Result<Self> {
        let d = conjugator.strands();
        if base == 0 || base >= d {
            return Err(Error::InvalidFactor(format!("base {base} out of range for B{d}")));
        }
        Ok(Factor {
            conjugator,
            base,
            exponent,
        })
    }

    /// The plain half-twist power `X_iᵏ`.
    pub fn simple(d: usize, base: usize, exponent: Exponent) -> Result<Self> {
        Self::new(BraidWord::identity(d), base, exponent)
    }

    pub fn conjugator(&self) -> &BraidWord {
        &self.conjugator
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn strands(&self) -> usize {
        self.conjugator.strands()
    }

    /// The braid word `Q · X_iᵏ · Q⁻¹`.
    pub fn word(&self) -> BraidWord {
        band_generator(self.strands(), &self.conjugator, self.base, self.exponent.value())
            .expect("factor invariants checked at construction")
    }

    pub fn automorphism(&self) -> FreeAutomorphism {
        artin_action(&self.word())
    }

    pub fn permutation(&self) -> Permutation {
        braid_perm(&self.word())
    }

    /// Same exponent, new conjugator, shortened from the right by identities
    /// that fix the band: trailing letters commuting with `X_i` are dropped,
    /// and `Q X_a X_b` (or `Q X_a⁻¹ X_b⁻¹`) on base `a` becomes `Q` on base `b`
    /// when `|a - b| = 1`.
    fn with_conjugator(&self, conjugator: BraidWord) -> Factor {
        let strands = conjugator.strands();
        let mut letters = conjugator.freely_reduced().letters().to_vec();
        let mut base = self.base as i32;
        while let Some(&last) = letters.last() {
            if last.abs() == base || (last.abs() - base).abs() >= 2 {
                letters.pop();
                continue;
            }
            let n = letters.len();
            if n >= 2 && letters[n - 2] == base * last.signum() {
                letters.truncate(n - 2);
                base = last.abs();
                continue;
            }
            break;
        }
        Factor {
            conjugator: BraidWord::new(strands, letters).expect("letters were in range"),
            base: base as usize,
            exponent: self.exponent,
        }
    }
}

/// An ordered list of factors in `B_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    degree: usize,
    factors: Vec<Factor>,
}

impl Factorization {
    pub fn new(degree: usize, factors: Vec<Factor>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Malformed("factorization degree must be at least 1".into()));
        }
        for f in &factors {
            check_strands(degree, f.strands())?;
        }
        Ok(Factorization { degree, factors })
    }

    pub fn empty(degree: usize) -> Result<Self> {
        Self::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponents(&self) -> Vec<Exponent> {
        self.factors.iter().map(Factor::exponent).collect()
    }

    pub fn automorphisms(&self) -> Vec<FreeAutomorphism> {
        self.factors.iter().map(Factor::automorphism).collect()
    }

    /// Factorwise equality in `B_d`.
    pub fn factorwise_equal(&self, other: &Factorization) -> Result<bool> {
        check_strands(self.degree, other.degree)?;
        if self.len() != other.len() {
            return Ok(false);
        }
        for (a, b) in self.factors.iter().zip(&other.factors) {
            if a.exponent != b.exponent || !braid_equal(&a.word(), &b.word())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_pair_position(&self, p: usize) -> Result<()> {
        if p + 1 >= self.factors.len() {
            return Err(Error::PositionOutOfRange {
                position: p,
                len: self.factors.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::print_factorization(self))
    }
}

/// `f_1 · f_2 ⋯ f_m` as a single braid word.
pub fn product(f: &Factorization) -> BraidWord {
    let mut letters = Vec::new();
    for factor in &f.factors {
        letters.extend_from_slice(factor.word().letters());
    }
    BraidWord::new(f.degree, letters).expect("factor letters are in range")
}

/// Outcome of [`validate`]; failures are entries, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub degree: usize,
    pub factor_count: usize,
    pub product_is_full_twist: bool,
    pub tangencies: usize,
    pub positive_nodes: usize,
    pub negative_nodes: usize,
    pub cusps: usize,
    pub exponent_sum: i64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.product_is_full_twist
    }

    pub fn nodes(&self) -> usize {
        self.positive_nodes + self.negative_nodes
    }
}

/// Checks that the product is the full twist and tallies special points.
///
/// Exponent legality is enforced by the [`Exponent`] type, so every factor of a
/// constructed [`Factorization`] is legal.
pub fn validate(f: &Factorization) -> ValidationReport {
    let prod = product(f);
    let count = |e: Exponent| f.factors.iter().filter(|x| x.exponent == e).count();
    ValidationReport {
        degree: f.degree,
        factor_count: f.len(),
        product_is_full_twist: braid_equal(&prod, &full_twist(f.degree)).unwrap_or(false),
        tangencies: count(Exponent::Tangency),
        positive_nodes: count(Exponent::PositiveNode),
        negative_nodes: count(Exponent::NegativeNode),
        cusps: count(Exponent::Cusp),
        exponent_sum: prod.exponent_sum(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// Elementary Hurwitz move on factors `p` and `p + 1`.
///
/// Forward: `(f_p, f_{p+1}) ↦ (f_p f_{p+1} f_p⁻¹, f_p)`, the new factor keeping
/// the base and exponent of `f_{p+1}` with conjugator `f_p · Q_{p+1}`.
/// Backward: `(g, h) ↦ (h, h⁻¹ g h)`.
pub fn hurwitz_move(f: &Factorization, p: usize, direction: Direction) -> Result<Factorization> {
    f.check_pair_position(p)?;
    let mut out = f.clone();
    let (a, b) = (&f.factors[p], &f.factors[p + 1]);
    match direction {
        Direction::Forward => {
            let conj = a.word().concat(&b.conjugator)?;
            out.factors[p] = b.with_conjugator(conj);
            out.factors[p + 1] = a.clone();
        }
        Direction::Backward => {
            let conj = b.word().inverse().concat(&a.conjugator)?;
            out.factors[p] = b.clone();
            out.factors[p + 1] = a.with_conjugator(conj);
        }
    }
    Ok(out)
}

/// Simultaneous conjugation: every conjugator `Q ↦ b · Q`.
pub fn global_conjugate(f: &Factorization, b: &BraidWord) -> Result<Factorization> {
    check_strands(f.degree, b.strands())?;
    let factors = f
        .factors
        .iter()
        .map(|x| Ok(x.with_conjugator(b.concat(&x.conjugator)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Factorization {
        degree: f.degree,
        factors,
    })
}

/// Inserts `(Q X_i² Q⁻¹, Q X_i⁻² Q⁻¹)` before index `position` (0..=len).
pub fn insert_node_pair(f: &Factorization, position: usize, q: &BraidWord, i: usize) -> Result<Factorization> {
    check_strands(f.degree, q.strands())?;
    if position > f.len() {
        return Err(Error::PositionOutOfRange {
            position,
            len: f.len(),
        });
    }
    let pos = Factor::new(q.freely_reduced(), i, Exponent::PositiveNode)?;
    let neg = Factor::new(q.freely_reduced(), i, Exponent::NegativeNode)?;
    let mut out = f.clone();
    out.factors.insert(position, neg);
    out.factors.insert(position, pos);
    Ok(out)
}

/// Removes factors `position` and `position + 1` when they form a cancelling
/// pair of opposite nodes (product trivial in `B_d`).
pub fn delete_node_pair(f: &Factorization, position: usize) -> Result<Factorization> {
    f.check_pair_position(position)?;
    let (a, b) = (&f.factors[position], &f.factors[position + 1]);
    let opposite = matches!(
        (a.exponent, b.exponent),
        (Exponent::PositiveNode, Exponent::NegativeNode) | (Exponent::NegativeNode, Exponent::PositiveNode)
    );
    if !opposite || !braid_equal(&a.word().concat(&b.word())?, &BraidWord::identity(f.degree))? {
        return Err(Error::NotCancellingPair(position));
    }
    let mut out = f.clone();
    out.factors.drain(position..position + 2);
    Ok(out)
}

/// Key equal exactly for factorwise equal factorizations.
pub fn canonical_key(f: &Factorization) -> Vec<u8> {
    let keys: Vec<String> = f.factors.iter().map(factor_key).collect();
    key_from_parts(f.degree, &keys)
}

/// Exponent and left normal form of one factor.
pub(crate) fn factor_key(x: &Factor) -> String {
    let (power, simples) = left_normal_form(&x.word());
    let mut s = format!("{}:{power}", x.exponent.value());
    for p in simples {
        s.push('/');
        for j in 1..=p.degree() {
            s.push_str(&format!("{},", p.apply(j)));
        }
    }
    s
}

pub(crate) fn key_from_parts(degree: usize, parts: &[String]) -> Vec<u8> {
    format!("d{degree};{}", parts.join(";")).into_bytes()
}
