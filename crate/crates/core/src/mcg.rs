//! Symplectic images of Dehn twists.
//!
//! Classes live in `Z^{2g}` with basis `(a_1, b_1, a_2, b_2, …)` and the
//! standard form `J₀` with `⟨a_i, b_i⟩ = 1`. The twist along `c` acts by the
//! transvection `x ↦ x + ⟨c, x⟩ c`, which reproduces
//! `τ_a = [[1, 1], [0, 1]]` and `τ_b = [[1, 0], [-1, 1]]` at genus 1.
//!
//! For `g = 1` the map `Map_1 → SL(2, Z)` is an isomorphism, so matrix
//! equality decides relations. For `g ≥ 2` it is only a quotient:
//! [`verify_relation`] returning `true` is necessary, not sufficient.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::zlinalg::{standard_alternating, IntMatrix};

/// A `2g × 2g` integer matrix preserving `J₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpMatrix {
    genus: usize,
    matrix: IntMatrix,
}

pub(crate) fn pairing(u: &[BigInt], v: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for k in 0..u.len() / 2 {
        s += &u[2 * k] * &v[2 * k + 1] - &u[2 * k + 1] * &v[2 * k];
    }
    s
}

pub(crate) fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl SpMatrix {
    pub fn new(genus: usize, matrix: IntMatrix) -> Result<Self> {
        let n = 2 * genus;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n}x{n}, found {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let j = standard_alternating(genus);
        if matrix.transpose().mul(&j)?.mul(&matrix)? != j {
            return Err(Error::DimensionMismatch("matrix does not preserve the symplectic form".into()));
        }
        Ok(SpMatrix { genus, matrix })
    }

    pub fn from_rows<R: AsRef<[i64]>>(genus: usize, rows: &[R]) -> Result<Self> {
        Self::new(genus, IntMatrix::from_rows(rows)?)
    }

    pub fn identity(genus: usize) -> Self {
        SpMatrix {
            genus,
            matrix: IntMatrix::identity(2 * genus),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn mul(&self, other: &SpMatrix) -> Result<SpMatrix> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(SpMatrix {
            genus: self.genus,
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// `M⁻¹ = -J₀ Mᵀ J₀`.
    pub fn inverse(&self) -> SpMatrix {
        let j = standard_alternating(self.genus);
        let m = j.mul(&self.matrix.transpose()).and_then(|x| x.mul(&j)).expect("square");
        SpMatrix {
            genus: self.genus,
            matrix: m.neg(),
        }
    }

    pub fn neg(&self) -> SpMatrix {
        SpMatrix {
            genus: self.genus,
            matrix: self.matrix.neg(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(2 * self.genus)
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<BigInt>> {
        self.matrix.mul_vec(&to_big(v))
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// `I + c · (cᵀ J₀)`, the homological action of the positive twist along `c`.
pub fn transvection(c: &[i64], genus: usize) -> Result<SpMatrix> {
    transvection_big(&to_big(c), genus)
}

pub(crate) fn transvection_big(c: &[BigInt], genus: usize) -> Result<SpMatrix> {
    let n = 2 * genus;
    if c.len() != n {
        return Err(Error::DimensionMismatch(format!("class of length {} in genus {genus}", c.len())));
    }
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        if c[i].is_zero() {
            continue;
        }
        for k in 0..genus {
            // (cᵀ J₀)_{2k} = -c_{2k+1}, (cᵀ J₀)_{2k+1} = c_{2k}
            let (ra, rb) = (-&c[2 * k + 1], c[2 * k].clone());
            let x = m.get(i, 2 * k) + &c[i] * ra;
            m.set(i, 2 * k, x);
            let y = m.get(i, 2 * k + 1) + &c[i] * rb;
            m.set(i, 2 * k + 1, y);
        }
    }
    Ok(SpMatrix { genus, matrix: m })
}

/// Classes of a chain of curves `c_1, …, c_k` with `⟨c_i, c_{i+1}⟩ = ±1` and
/// all other pairings zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSystem {
    genus: usize,
    classes: Vec<Vec<i64>>,
}

impl ChainSystem {
    pub fn new(genus: usize, classes: Vec<Vec<i64>>) -> Result<Self> {
        for (k, c) in classes.iter().enumerate() {
            if c.len() != 2 * genus {
                return Err(Error::InvalidChain(format!("class {} has length {}", k + 1, c.len())));
            }
        }
        let big: Vec<Vec<BigInt>> = classes.iter().map(|c| to_big(c)).collect();
        for i in 0..big.len() {
            for j in i + 1..big.len() {
                let p = pairing(&big[i], &big[j]);
                let ok = if j == i + 1 { p.abs().is_one() } else { p.is_zero() };
                if !ok {
                    return Err(Error::InvalidChain(format!("<c{}, c{}> = {p}", i + 1, j + 1)));
                }
            }
        }
        Ok(ChainSystem { genus, classes })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn classes(&self) -> &[Vec<i64>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The standard chain on the genus-`g` surface.
///
/// `g = 1` gives `[a, b]`. For `g ≥ 2` the `2g + 1` classes are
/// `a_1, b_1, a_1 + a_2, b_2, a_2 + a_3, …, b_g, a_g`.
pub fn standard_chain(genus: usize) -> Result<ChainSystem> {
    if genus == 0 {
        return Err(Error::InvalidChain("genus must be at least 1".into()));
    }
    let n = 2 * genus;
    let unit = |k: usize| {
        let mut v = vec![0i64; n];
        v[k] = 1;
        v
    };
    let a = |i: usize| unit(2 * (i - 1));
    let b = |i: usize| unit(2 * (i - 1) + 1);
    let classes = if genus == 1 {
        vec![a(1), b(1)]
    } else {
        let mut cs = vec![a(1)];
        for k in 1..=genus {
            cs.push(b(k));
            if k < genus {
                cs.push(a(k).iter().zip(a(k + 1)).map(|(x, y)| x + y).collect());
            }
        }
        cs.push(a(genus));
        cs
    };
    ChainSystem::new(genus, classes)
}

/// Product `τ_{w_1} τ_{w_2} ⋯` of chain twists, multiplied left to right.
/// Letter `k` is `τ_k` (1-based), `-k` its inverse.
pub fn sp_word(word: &[i32], system: &ChainSystem) -> Result<SpMatrix> {
    let twists: Vec<SpMatrix> = system
        .classes
        .iter()
        .map(|c| transvection(c, system.genus))
        .collect::<Result<_>>()?;
    let inverses: Vec<SpMatrix> = twists.iter().map(SpMatrix::inverse).collect();
    let mut acc = SpMatrix::identity(system.genus);
    for &l in word {
        let k = l.unsigned_abs() as usize;
        if l == 0 || k > twists.len() {
            return Err(Error::Malformed(format!("twist index {l} out of range 1..={}", twists.len())));
        }
        let t = if l > 0 { &twists[k - 1] } else { &inverses[k - 1] };
        acc = acc.mul(t)?;
    }
    Ok(acc)
}

/// Equality of the symplectic images of two twist words.
pub fn verify_relation(w1: &[i32], w2: &[i32], system: &ChainSystem) -> Result<bool> {
    Ok(sp_word(w1, system)? == sp_word(w2, system)?)
}
