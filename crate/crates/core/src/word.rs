//! Free groups: reduced words and automorphisms that carry their inverses.
//!
//! Letters are nonzero signed integers; `j` is the generator `x_j` and `-j`
//! its inverse. Composition convention, used by every other module:
//! `compose(f, g)` is the automorphism `w ↦ f(g(w))`.

use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word in the free group of the given rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

fn check_letters(letters: &[i32], rank: usize) -> Result<()> {
    for &l in letters {
        if l == 0 || l.unsigned_abs() as usize > rank {
            return Err(Error::Malformed(format!(
                "letter {l} out of range for rank {rank}"
            )));
        }
    }
    Ok(())
}

/// Appends `l` to a reduced stack, cancelling against the top when possible.
#[inline]
fn push_reduced(out: &mut Vec<i32>, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

pub(crate) fn reduce_letters(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

pub(crate) fn invert_letters(letters: &[i32]) -> Vec<i32> {
    letters.iter().rev().map(|&l| -l).collect()
}

impl FreeWord {
    /// Freely reduces a raw letter list.
    pub fn reduce(letters: &[i32], rank: usize) -> Result<Self> {
        check_letters(letters, rank)?;
        Ok(FreeWord {
            rank,
            letters: reduce_letters(letters.iter().copied()),
        })
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_j`, 1-based.
    pub fn generator(rank: usize, j: usize) -> Result<Self> {
        Self::reduce(&[j as i32], rank)
    }

    /// Wraps letters already known to be reduced and in range.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<i32>) -> Self {
        debug_assert!(check_letters(&letters, rank).is_ok());
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        FreeWord { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
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
        FreeWord {
            rank: self.rank,
            letters: invert_letters(&self.letters),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(FreeWord {
            rank: self.rank,
            letters,
        })
    }

    /// `self · other · self⁻¹`
    pub fn conjugate(&self, other: &FreeWord) -> Result<Self> {
        self.concat(other)?.concat(&self.inverse())
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank];
        for &l in &self.letters {
            sums[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
        }
        sums
    }

    /// Removes matching letters from both ends (cyclic reduction).
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let (mut a, mut b) = (0, l.len());
        while b > a + 1 && l[a] == -l[b - 1] {
            a += 1;
            b -= 1;
        }
        FreeWord {
            rank: self.rank,
            letters: l[a..b].to_vec(),
        }
    }
}

impl fmt::Display for FreeWord {
    /// Canonical form: space-separated signed integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An automorphism of a free group, stored with its inverse.
///
/// Only invertible elementary moves can be built (identity, Artin generators,
/// inner automorphisms) and closed under [`compose`](FreeAutomorphism::compose)
/// and [`inverse`](FreeAutomorphism::inverse).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<Vec<i32>>,
    inverse_images: Vec<Vec<i32>>,
}

/// Substitutes each letter by its image (inverse letters by inverted images), reducing as it goes.
pub(crate) fn substitute(images: &[Vec<i32>], letters: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        let img = &images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            for &x in img {
                push_reduced(&mut out, x);
            }
        } else {
            for &x in img.iter().rev() {
                push_reduced(&mut out, -x);
            }
        }
    }
    out
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        let images: Vec<Vec<i32>> = (1..=rank as i32).map(|j| vec![j]).collect();
        FreeAutomorphism {
            rank,
            inverse_images: images.clone(),
            images,
        }
    }

    /// The Artin generator `X_i` (sign +1) or its inverse (sign -1) on rank `rank`:
    /// `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i`, all other generators fixed.
    pub fn artin_generator(rank: usize, i: usize, inverse: bool) -> Result<Self> {
        if i == 0 || i >= rank {
            return Err(Error::Malformed(format!(
                "Artin generator {i} out of range for rank {rank}"
            )));
        }
        let id = Self::identity(rank);
        let mut fwd = id.images.clone();
        let a = i as i32;
        let b = a + 1;
        fwd[i - 1] = vec![a, b, -a];
        fwd[i] = vec![a];
        let mut bwd = id.images;
        bwd[i - 1] = vec![b];
        bwd[i] = vec![-b, a, b];
        let (images, inverse_images) = if inverse { (bwd, fwd) } else { (fwd, bwd) };
        Ok(FreeAutomorphism {
            rank,
            images,
            inverse_images,
        })
    }

    /// Inner automorphism `x ↦ w x w⁻¹`.
    pub fn inner(w: &FreeWord) -> Self {
        let rank = w.rank();
        let winv = w.inverse();
        let conj = |a: &FreeWord, j: i32| {
            let mut v = a.letters.clone();
            push_reduced(&mut v, j);
            for &l in &a.inverse().letters {
                push_reduced(&mut v, l);
            }
            v
        };
        FreeAutomorphism {
            rank,
            images: (1..=rank as i32).map(|j| conj(w, j)).collect(),
            inverse_images: (1..=rank as i32).map(|j| conj(&winv, j)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn image(&self, j: usize) -> FreeWord {
        FreeWord::from_reduced(self.rank, self.images[j - 1].clone())
    }

    pub fn images(&self) -> Vec<FreeWord> {
        (1..=self.rank).map(|j| self.image(j)).collect()
    }

    pub fn inverse_images(&self) -> Vec<FreeWord> {
        self.inverse_images
            .iter()
            .map(|w| FreeWord::from_reduced(self.rank, w.clone()))
            .collect()
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        Ok(FreeWord::from_reduced(self.rank, self.apply_letters(w.letters())))
    }

    pub(crate) fn apply_letters(&self, letters: &[i32]) -> Vec<i32> {
        substitute(&self.images, letters)
    }

    /// `w ↦ self(other(w))`.
    pub fn compose(&self, other: &FreeAutomorphism) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &FreeAutomorphism) -> Self {
        let images = other
            .images
            .iter()
            .map(|w| substitute(&self.images, w))
            .collect();
        // (f∘g)⁻¹ = g⁻¹∘f⁻¹
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| substitute(&other.inverse_images, w))
            .collect();
        FreeAutomorphism {
            rank: self.rank,
            images,
            inverse_images,
        }
    }

    pub fn inverse(&self) -> Self {
        FreeAutomorphism {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// Generatorwise equality of images.
    pub fn equals(&self, other: &FreeAutomorphism) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(self.images == other.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, w)| w.len() == 1 && w[0] == k as i32 + 1)
    }

    /// Checks that the stored images and inverse images are mutually inverse.
    pub fn check_inverse(&self) -> bool {
        (1..=self.rank as i32).all(|j| {
            substitute(&self.inverse_images, &substitute(&self.images, &[j])) == [j]
                && substitute(&self.images, &substitute(&self.inverse_images, &[j])) == [j]
        })
    }

    /// Canonical serialization of the images, e.g. `"1 2 -1|1"`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        self.write_key(&mut out);
        out
    }

    pub(crate) fn write_key(&self, out: &mut String) {
        use std::fmt::Write;
        for (k, img) in self.images.iter().enumerate() {
            if k > 0 {
                out.push('|');
            }
            for (n, l) in img.iter().enumerate() {
                if n > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{l}");
            }
        }
    }
}

/// Free function form of [`FreeAutomorphism::apply`].
pub fn apply(f: &FreeAutomorphism, w: &FreeWord) -> Result<FreeWord> {
    f.apply(w)
}

/// Free function form of [`FreeAutomorphism::compose`]: `w ↦ f(g(w))`.
pub fn compose(f: &FreeAutomorphism, g: &FreeAutomorphism) -> Result<FreeAutomorphism> {
    f.compose(g)
}

pub fn auto_equal(f: &FreeAutomorphism, g: &FreeAutomorphism) -> Result<bool> {
    f.equals(g)
}
