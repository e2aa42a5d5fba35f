//! Branched covers of the plane given by transposition monodromy.
//!
//! A covering is `θ: F_d → S_N` with `θ(x_j)` a transposition. Words act on
//! sheets by following letters left to right, so
//! `θ(u · v) = θ(u).then(θ(v))`. An inverse letter contributes the same
//! transposition as the letter itself.

mod lift;
mod surface;

use std::collections::VecDeque;

use crate::braid::{artin_action, check_strands, BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::factor::{Exponent, Factorization};
use crate::word::FreeWord;

pub use lift::{lift_homology, FiberLift};
pub use surface::{build_fiber_surface, surface_h1, CombSurface, FiberHomology};

/// `θ`: one transposition of `S_N` per geometric generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoveringData {
    sheets: usize,
    labels: Vec<Permutation>,
}

impl CoveringData {
    pub fn new(sheets: usize, labels: Vec<Permutation>) -> Result<Self> {
        if sheets == 0 {
            return Err(Error::Malformed("a covering needs at least one sheet".into()));
        }
        for (k, l) in labels.iter().enumerate() {
            if l.degree() != sheets || !l.is_transposition() {
                return Err(Error::Malformed(format!("label {} = {l} is not a transposition in S{sheets}", k + 1)));
            }
        }
        Ok(CoveringData { sheets, labels })
    }

    /// From 1-based transposition pairs.
    pub fn from_pairs(sheets: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let labels = pairs
            .iter()
            .map(|&(a, b)| Permutation::transposition(sheets, a, b))
            .collect::<Result<_>>()?;
        Self::new(sheets, labels)
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    /// Number of geometric generators `d`.
    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Permutation] {
        &self.labels
    }

    /// Sheet reached from 0-based sheet `s` along the letters.
    pub(crate) fn walk(&self, mut s: usize, letters: &[i32]) -> usize {
        for &l in letters {
            s = self.labels[l.unsigned_abs() as usize - 1].apply0(s);
        }
        s
    }

    /// `θ(w)` as a permutation.
    pub fn image(&self, w: &FreeWord) -> Result<Permutation> {
        check_strands(self.degree(), w.rank())?;
        Ok(self.image_letters(w.letters()))
    }

    pub(crate) fn image_letters(&self, letters: &[i32]) -> Permutation {
        let images: Vec<usize> = (0..self.sheets).map(|s| self.walk(s, letters) + 1).collect();
        Permutation::from_images(&images).expect("walk is a bijection")
    }

    /// `θ(x_1 x_2 ⋯ x_d)`, the monodromy around infinity.
    pub fn product(&self) -> Permutation {
        let letters: Vec<i32> = (1..=self.degree() as i32).collect();
        self.image_letters(&letters)
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.sheets];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for l in &self.labels {
                let t = l.apply0(s);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Every label conjugate `g t g⁻¹` with `g` in the monodromy group.
    pub fn label_orbit(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        for l in &self.labels {
            if !out.contains(l) {
                out.push(l.clone());
                queue.push_back(l.clone());
            }
        }
        while let Some(t) = queue.pop_front() {
            for g in &self.labels {
                let c = g.compose(&t).compose(g);
                if !out.contains(&c) {
                    out.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        out.sort();
        out
    }
}

pub(crate) fn disjoint(a: &Permutation, b: &Permutation) -> bool {
    let sb = b.support();
    a.support().iter().all(|x| !sb.contains(x))
}

fn shared_points(a: &Permutation, b: &Permutation) -> usize {
    let sb = b.support();
    a.support().iter().filter(|x| sb.contains(x)).count()
}

/// Whether the local labels `a`, `b` at a factor fit its exponent: equal for
/// tangencies, disjoint for nodes, sharing exactly one point for cusps.
pub fn local_condition(exponent: Exponent, a: &Permutation, b: &Permutation) -> bool {
    match exponent {
        Exponent::Tangency => a == b,
        Exponent::PositiveNode | Exponent::NegativeNode => disjoint(a, b),
        Exponent::Cusp => shared_points(a, b) == 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// 0-based factors whose automorphism does not preserve `θ`.
    pub global_failures: Vec<usize>,
    /// 0-based factors whose local labels do not fit the exponent.
    pub local_failures: Vec<usize>,
    pub transitive: bool,
}

impl CompatibilityReport {
    pub fn is_compatible(&self) -> bool {
        self.global_failures.is_empty() && self.local_failures.is_empty() && self.transitive
    }
}

/// The two labels meeting at the factor `Q X_iᵏ Q⁻¹`:
/// `θ(φ_Q(x_i))` and `θ(φ_Q(x_{i+1}))`.
pub fn local_labels(theta: &CoveringData, conjugator: &BraidWord, base: usize) -> Result<(Permutation, Permutation)> {
    check_strands(theta.degree(), conjugator.strands())?;
    let phi = artin_action(conjugator);
    let a = theta.image_letters(&phi.apply_letters(&[base as i32]));
    let b = theta.image_letters(&phi.apply_letters(&[base as i32 + 1]));
    Ok((a, b))
}

/// `θ` is preserved by the Artin action of `b`.
pub fn is_liftable(theta: &CoveringData, b: &BraidWord) -> Result<bool> {
    check_strands(theta.degree(), b.strands())?;
    let phi = artin_action(b);
    Ok(preserves(theta, &phi))
}

fn preserves(theta: &CoveringData, phi: &crate::word::FreeAutomorphism) -> bool {
    (1..=theta.degree() as i32).all(|j| theta.image_letters(&phi.apply_letters(&[j])) == theta.labels[j as usize - 1])
}

pub fn check_compatibility(theta: &CoveringData, f: &Factorization) -> Result<CompatibilityReport> {
    if theta.degree() != f.degree() {
        return Err(Error::DimensionMismatch(format!(
            "covering has {} labels, factorization has degree {}",
            theta.degree(),
            f.degree()
        )));
    }
    let mut global_failures = Vec::new();
    let mut local_failures = Vec::new();
    for (k, factor) in f.factors().iter().enumerate() {
        if !preserves(theta, &factor.automorphism()) {
            global_failures.push(k);
        }
        let (a, b) = local_labels(theta, factor.conjugator(), factor.base())?;
        if !local_condition(factor.exponent(), &a, &b) {
            local_failures.push(k);
        }
    }
    Ok(CompatibilityReport {
        global_failures,
        local_failures,
        transitive: theta.is_transitive(),
    })
}

/// Whether the node pair `(Q X_i² Q⁻¹, Q X_i⁻² Q⁻¹)` is admissible for `θ`.
pub fn admissible_node_pair(theta: &CoveringData, q: &BraidWord, i: usize) -> Result<bool> {
    let (a, b) = local_labels(theta, q, i)?;
    Ok(disjoint(&a, &b))
}

/// Euler characteristic `2N - d` of the closed fiber.
pub fn fiber_euler(theta: &CoveringData) -> Result<i64> {
    let p = theta.product();
    if !p.is_identity() {
        return Err(Error::NotClosedOverInfinity(p.to_string()));
    }
    if !theta.is_transitive() {
        return Err(Error::NotConnected);
    }
    Ok(2 * theta.sheets as i64 - theta.degree() as i64)
}

/// Genus `(d - 2N + 2) / 2` of the connected fiber.
pub fn fiber_genus(theta: &CoveringData) -> Result<usize> {
    let chi = fiber_euler(theta)?;
    if chi % 2 != 0 {
        return Err(Error::OddEuler(chi));
    }
    Ok(((2 - chi) / 2) as usize)
}
