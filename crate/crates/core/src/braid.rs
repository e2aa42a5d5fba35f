//! Braid groups `B_d`, their faithful Artin action on the free group of rank
//! `d`, and the permutation quotient `B_d → S_d`.
//!
//! Orientation: the half-twist `X_i` acts by `x_i ↦ x_i x_{i+1} x_i⁻¹`,
//! `x_{i+1} ↦ x_i`, and a word acts by composition read left to right,
//! `artin_action(b₁·b₂) = artin_action(b₁) ∘ artin_action(b₂)`. Under this
//! convention every braid fixes the boundary word `x_1 x_2 ⋯ x_d`.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{invert_letters, reduce_letters, FreeAutomorphism, FreeWord};

/// A word in the standard half-twists `X_1 … X_{d-1}`; `-i` is `X_i⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Malformed("braid group needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::Malformed(format!(
                    "half-twist {l} out of range for B{strands}"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    pub fn generator(strands: usize, i: usize) -> Result<Self> {
        Self::new(strands, vec![i as i32])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: invert_letters(&self.letters),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        check_strands(self.strands, other.strands)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Cancels adjacent `X_i X_i⁻¹` pairs. Same braid, shorter word.
    pub fn freely_reduced(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: reduce_letters(self.letters.iter().copied()),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.repeat(n),
        }
    }

    /// Total exponent (the abelianization `B_d → Z`).
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| i64::from(l.signum())).sum()
    }
}

impl fmt::Display for BraidWord {
    /// Text form `B<d>: <signed ints>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_strands(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::StrandMismatch { expected, found });
    }
    Ok(())
}

/// A permutation of `{1, …, degree}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            map: (0..degree).collect(),
        }
    }

    /// From 1-based images: `images[k-1]` is the image of `k`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut map = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Malformed(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
            map.push(x - 1);
        }
        Ok(Permutation { map })
    }

    /// The transposition `(a b)` in `S_degree`, 1-based.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 || a > degree || b > degree {
            return Err(Error::Malformed(format!(
                "({a} {b}) is not a transposition in S{degree}"
            )));
        }
        let mut p = Self::identity(degree);
        p.map.swap(a - 1, b - 1);
        Ok(p)
    }

    /// Product of cycles, 1-based, applied right to left as usual for cycle notation.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut seen = std::collections::BTreeSet::new();
            for &x in cycle {
                if x == 0 || x > degree || !seen.insert(x) {
                    return Err(Error::Malformed(format!("bad cycle {cycle:?} in S{degree}")));
                }
            }
            let mut c = Self::identity(degree);
            for k in 0..cycle.len() {
                c.map[cycle[k] - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            p = c.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.map[x - 1] + 1
    }

    pub(crate) fn apply0(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Permutation) -> Permutation {
        other.compose(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            map[x] = i;
        }
        Permutation { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Points moved by the permutation, 1-based and sorted.
    pub fn support(&self) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i != x)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_transposition(&self) -> bool {
        let s = self.support();
        s.len() == 2 && self.map[s[0] - 1] == s[1] - 1
    }

    /// Nontrivial cycles, each starting at its smallest point, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.map[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 1;
        if odd {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Artin action of a braid on the free group of rank `d`.
pub fn artin_action(b: &BraidWord) -> FreeAutomorphism {
    let d = b.strands;
    let mut acc = FreeAutomorphism::identity(d);
    for &l in b.letters.iter().rev() {
        let g = FreeAutomorphism::artin_generator(d, l.unsigned_abs() as usize, l < 0)
            .expect("letters validated at construction");
        acc = g.compose_unchecked(&acc);
    }
    acc
}

/// Exact equality in `B_d`, decided by comparing left normal forms.
pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    check_strands(a.strands, b.strands)?;
    if a.letters == b.letters {
        return Ok(true);
    }
    // Equal braids have equal exponent sums and permutations: cheap early exits.
    if a.exponent_sum() != b.exponent_sum() || braid_perm(a) != braid_perm(b) {
        return Ok(false);
    }
    Ok(left_normal_form(a) == left_normal_form(b))
}

/// Garside left normal form `Δᵖ A₁ ⋯ A_r`: each `A_j` a permutation braid
/// other than `1` and `Δ`, every pair `(A_j, A_{j+1})` left-weighted.
/// Unique per braid, so two words are equal iff their forms are.
///
/// Permutation braids are stored as 0-based image arrays with
/// `X_{i1} ⋯ X_{ik} ↦ s_{i1} ∘ ⋯ ∘ s_{ik}`.
pub fn left_normal_form(b: &BraidWord) -> (i64, Vec<Permutation>) {
    let d = b.strands;
    let flip = |p: &[usize]| -> Vec<usize> { (0..d).map(|j| d - 1 - p[d - 1 - j]).collect() };
    let mut power = 0i64;
    let mut factors: Vec<Vec<usize>> = Vec::new();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize - 1;
        let mut s: Vec<usize> = (0..d).collect();
        s.swap(i, i + 1);
        if l > 0 {
            factors.push(s);
        } else {
            // X_i⁻¹ = Δ⁻¹ (Δ X_i⁻¹), and A Δ⁻¹ = Δ⁻¹ τ(A).
            power -= 1;
            for f in factors.iter_mut() {
                *f = flip(f);
            }
            factors.push(s.iter().map(|&x| d - 1 - x).collect());
        }
        settle(&mut power, &mut factors, d);
    }
    (power, factors.into_iter().map(|map| Permutation { map }).collect())
}

/// Restores the normal form after a simple factor was appended.
fn settle(power: &mut i64, factors: &mut Vec<Vec<usize>>, d: usize) {
    let is_delta = |p: &[usize]| p.iter().enumerate().all(|(j, &x)| x == d - 1 - j);
    let is_id = |p: &[usize]| p.iter().enumerate().all(|(j, &x)| x == j);
    loop {
        let mut changed = false;
        for j in (0..factors.len().saturating_sub(1)).rev() {
            let (head, tail) = factors.split_at_mut(j + 1);
            let (a, b) = (&mut head[j], &mut tail[0]);
            loop {
                // A left descent of B that is not a right descent of A moves left.
                let mut inv = vec![0; d];
                for (k, &x) in b.iter().enumerate() {
                    inv[x] = k;
                }
                let Some(i) = (0..d - 1).find(|&i| inv[i] > inv[i + 1] && a[i] < a[i + 1]) else {
                    break;
                };
                a.swap(i, i + 1);
                for x in b.iter_mut() {
                    if *x == i {
                        *x = i + 1;
                    } else if *x == i + 1 {
                        *x = i;
                    }
                }
                changed = true;
            }
        }
        let before = factors.len();
        factors.retain(|p| !is_id(p));
        while factors.first().is_some_and(|p| is_delta(p)) {
            factors.remove(0);
            *power += 1;
        }
        if !changed && factors.len() == before {
            return;
        }
    }
}

/// Image in `S_d`: `X_i ↦ (i i+1)`, with `braid_perm(b₁b₂) = braid_perm(b₁) ∘ braid_perm(b₂)`.
///
/// `artin_action(b)` sends `x_j` to a conjugate of `x_{braid_perm(b)(j)}`.
pub fn braid_perm(b: &BraidWord) -> Permutation {
    let mut p = Permutation::identity(b.strands);
    for &l in b.letters.iter().rev() {
        let i = l.unsigned_abs() as usize - 1;
        for x in p.map.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }
    p
}

/// The full twist `Δ² = (X_1 ⋯ X_{d-1})^d`.
pub fn full_twist(d: usize) -> BraidWord {
    let d = d.max(1);
    let row: Vec<i32> = (1..d as i32).collect();
    BraidWord {
        strands: d,
        letters: row.repeat(d),
    }
}

/// Whether `b` commutes with every standard generator.
pub fn is_central(b: &BraidWord) -> bool {
    let phi = artin_action(b);
    (1..b.strands).all(|i| {
        let g = FreeAutomorphism::artin_generator(b.strands, i, false).unwrap();
        phi.compose_unchecked(&g) == g.compose_unchecked(&phi)
    })
}

pub const ALLOWED_EXPONENTS: [i32; 4] = [1, 2, -2, 3];

/// The band word `Q · X_iᵏ · Q⁻¹` with `k ∈ {1, 2, -2, 3}`.
pub fn band_generator(d: usize, conjugator: &BraidWord, i: usize, k: i32) -> Result<BraidWord> {
    check_strands(d, conjugator.strands)?;
    if !ALLOWED_EXPONENTS.contains(&k) {
        return Err(Error::InvalidFactor(format!("exponent {k} not in {{1, 2, -2, 3}}")));
    }
    if i == 0 || i >= d {
        return Err(Error::InvalidFactor(format!("base {i} out of range for B{d}")));
    }
    let mut letters = conjugator.letters.clone();
    let x = if k > 0 { i as i32 } else { -(i as i32) };
    letters.extend(std::iter::repeat_n(x, k.unsigned_abs() as usize));
    letters.extend(invert_letters(&conjugator.letters));
    Ok(BraidWord { strands: d, letters })
}

/// Boundary word `x_1 x_2 ⋯ x_d`, fixed by every braid.
pub fn boundary_word(d: usize) -> FreeWord {
    FreeWord::from_reduced(d, (1..=d as i32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(d: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(d, l.to_vec()).unwrap()
    }

    #[test]
    fn empty_word_acts_trivially() {
        assert!(artin_action(&BraidWord::identity(4)).is_identity());
    }

    #[test]
    fn generator_action() {
        let f = artin_action(&b(2, &[1]));
        assert_eq!(f.image(1).letters(), &[1, 2, -1]);
        assert_eq!(f.image(2).letters(), &[1]);
    }

    #[test]
    fn braid_relation_in_b3() {
        assert!(braid_equal(&b(3, &[1, 2, 1]), &b(3, &[2, 1, 2])).unwrap());
        assert!(!braid_equal(&b(3, &[1]), &b(3, &[2])).unwrap());
        assert!(!braid_equal(&b(2, &[1]), &b(2, &[-1])).unwrap());
    }

    #[test]
    fn far_commutation() {
        assert!(braid_equal(&b(4, &[1, 3]), &b(4, &[3, 1])).unwrap());
    }

    #[test]
    fn full_twist_words() {
        assert_eq!(full_twist(2).letters(), &[1, 1]);
        assert!(full_twist(1).is_empty());
        let t = full_twist(4);
        assert!(braid_equal(&t.concat(&b(4, &[1])).unwrap(), &b(4, &[1]).concat(&t).unwrap()).unwrap());
        assert!(is_central(&full_twist(3)));
        assert!(!is_central(&b(3, &[1])));
    }

    #[test]
    fn permutations() {
        assert_eq!(braid_perm(&b(3, &[1])).cycles(), vec![vec![1, 2]]);
        assert_eq!(braid_perm(&b(3, &[-1])).cycles(), vec![vec![1, 2]]);
        assert!(braid_perm(&full_twist(3)).is_identity());
        // X1 X2: apply X2 first, then X1: 3 ↦ 2 ↦ 1.
        assert_eq!(braid_perm(&b(3, &[1, 2])).apply(3), 1);
    }

    #[test]
    fn perm_tracks_artin_conjugacy_class() {
        let w = b(4, &[1, -2, 3, 3, 2, -1, 2]);
        let phi = artin_action(&w);
        let p = braid_perm(&w);
        for j in 1..=4 {
            let img = phi.image(j);
            let sums = img.exponent_sums();
            let target = p.apply(j);
            assert_eq!(sums.iter().sum::<i64>(), 1);
            assert_eq!(sums[target - 1], 1, "x{j} should map to a conjugate of x{target}");
        }
    }

    #[test]
    fn bands() {
        assert_eq!(band_generator(3, &BraidWord::identity(3), 1, 1).unwrap().letters(), &[1]);
        assert_eq!(band_generator(3, &b(3, &[2]), 1, 2).unwrap().letters(), &[2, 1, 1, -2]);
        assert!(matches!(
            band_generator(3, &BraidWord::identity(3), 1, 4),
            Err(Error::InvalidFactor(_))
        ));
    }

    #[test]
    fn boundary_is_fixed() {
        let w = b(5, &[1, 3, -2, 4, 4, -1]);
        let bw = boundary_word(5);
        assert_eq!(artin_action(&w).apply(&bw).unwrap(), bw);
    }

    #[test]
    fn cycle_notation() {
        let p = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(p.sign(), 1);
        assert_eq!(p.cycle_type(), vec![2, 2]);
        let t = Permutation::transposition(3, 1, 3).unwrap();
        assert!(t.is_transposition());
        assert_eq!(t.sign(), -1);
        assert!(Permutation::transposition(3, 2, 2).is_err());
    }

    #[test]
    fn normal_forms() {
        assert_eq!(left_normal_form(&full_twist(4)), (2, vec![]));
        assert_eq!(left_normal_form(&b(3, &[1, -1])), (0, vec![]));
        let (p, f) = left_normal_form(&b(3, &[-1]));
        assert_eq!((p, f.len()), (-1, 1));
        // Agreement with the Artin action on short random words.
        let mut seed = 7u64;
        let mut next = |m: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % m
        };
        for _ in 0..400 {
            let d = 2 + next(3) as usize;
            let mut word = |n: u64| {
                let len = next(n) as usize;
                let letters = (0..len)
                    .map(|_| {
                        let i = 1 + next(d as u64 - 1) as i32;
                        if next(2) == 0 { i } else { -i }
                    })
                    .collect();
                BraidWord::new(d, letters).unwrap()
            };
            let (x, y) = (word(7), word(7));
            let artin = artin_action(&x).equals(&artin_action(&y)).unwrap();
            assert_eq!(left_normal_form(&x) == left_normal_form(&y), artin, "{x} vs {y}");
            if d >= 3 {
                // Insert a braid relator between x and y.
                let i = 1 + next(d as u64 - 2) as i32;
                let rel = b(d, &[i, i + 1, i, -(i + 1), -i, -(i + 1)]);
                let lhs = x.concat(&rel).unwrap().concat(&y).unwrap();
                assert_eq!(left_normal_form(&lhs), left_normal_form(&x.concat(&y).unwrap()));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(b(4, &[1, 3, -2]).to_string(), "B4: 1 3 -2");
    }
}
