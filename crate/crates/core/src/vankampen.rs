//! Zariski–van Kampen presentations of curve complements and their finite
//! shadows: abelianization, homomorphism counts, stabilized quotients.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::braid::{boundary_word, Permutation};
use crate::cover::{disjoint, CoveringData};
use crate::error::{Error, Result};
use crate::factor::{validate, Factorization};
use crate::word::{invert_letters, reduce_letters, FreeWord};
use crate::zlinalg::{cokernel, AbelianGroup, IntMatrix};

/// Finite presentation `⟨x_1, …, x_n | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: usize,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<FreeWord>) -> Result<Self> {
        for r in &relators {
            if r.rank() != generators {
                return Err(Error::RankMismatch {
                    expected: generators,
                    found: r.rank(),
                });
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn from_letters(generators: usize, relators: &[Vec<i32>]) -> Result<Self> {
        let rs = relators
            .iter()
            .map(|r| FreeWord::reduce(r, generators))
            .collect::<Result<_>>()?;
        Self::new(generators, rs)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::print_presentation(self))
    }
}

/// Relators `φ(x_j) x_j⁻¹` for every factor automorphism `φ` and every `j` it
/// moves, plus `x_1 x_2 ⋯ x_d` in the projective case.
///
/// The boundary word `x_1 ⋯ x_d` is the one fixed by every braid under the
/// Artin action, so it is the loop around infinity.
pub fn presentation(f: &Factorization, projective: bool) -> Result<Presentation> {
    if projective && !validate(f).is_valid() {
        return Err(Error::InvalidFactorization("product is not the full twist".into()));
    }
    let d = f.degree();
    let mut relators = Vec::new();
    for phi in f.automorphisms() {
        for j in 1..=d {
            let image = phi.image(j);
            if image.letters() != [j as i32] {
                let mut letters = image.letters().to_vec();
                letters.push(-(j as i32));
                relators.push(FreeWord::reduce(&letters, d)?);
            }
        }
    }
    if projective {
        relators.push(boundary_word(d));
    }
    Presentation::new(d, relators)
}

/// Cokernel of the `generators × relators` exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianGroup {
    let columns: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| r.exponent_sums().into_iter().map(BigInt::from).collect())
        .collect();
    cokernel(&IntMatrix::from_columns(p.generators, &columns).expect("relator ranks checked"))
}

/// Smallest rotation of `w` or its inverse, for a cyclically reduced `w`.
fn cyclic_canonical(w: &[i32]) -> Vec<i32> {
    let mut best: Option<Vec<i32>> = None;
    for cand in [w.to_vec(), invert_letters(w)] {
        for k in 0..cand.len().max(1) {
            let mut r = cand[k..].to_vec();
            r.extend_from_slice(&cand[..k]);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

fn cyclic_reduce(w: Vec<i32>) -> Vec<i32> {
    let w = reduce_letters(w);
    let (mut i, mut j) = (0, w.len());
    while j - i >= 2 && w[i] == -w[j - 1] {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

/// Tietze simplification that preserves the group: drop trivial and repeated
/// relators (up to rotation and inversion) and eliminate generators defined by
/// relators of length one or two.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut alive: Vec<bool> = vec![true; p.generators];
    // Each generator maps to a word over the original generators.
    let mut rels: Vec<Vec<i32>> = p.relators.iter().map(|r| r.letters().to_vec()).collect();
    loop {
        let mut seen = BTreeSet::new();
        rels = rels
            .into_iter()
            .map(cyclic_reduce)
            .filter(|r| !r.is_empty())
            .filter(|r| seen.insert(cyclic_canonical(r)))
            .collect();
        let pick = rels
            .iter()
            .enumerate()
            .filter(|(_, r)| r.len() == 1 || (r.len() == 2 && r[0].abs() != r[1].abs()))
            .min_by_key(|(k, r)| (r.len(), *k))
            .map(|(k, _)| k);
        let Some(k) = pick else { break };
        let r = rels.remove(k);
        let a = r[0].unsigned_abs() as usize;
        // x_a^e = (rest)^-1, so x_a = ((rest)^-1)^e.
        let rest_inv = invert_letters(&r[1..]);
        let image: Vec<i32> = if r[0] > 0 { rest_inv } else { invert_letters(&rest_inv) };
        alive[a - 1] = false;
        rels = rels
            .into_iter()
            .map(|w| {
                let mut out = Vec::with_capacity(w.len());
                for l in w {
                    if l.unsigned_abs() as usize == a {
                        if l > 0 {
                            out.extend_from_slice(&image);
                        } else {
                            out.extend(invert_letters(&image));
                        }
                    } else {
                        out.push(l);
                    }
                }
                out
            })
            .collect();
    }
    let mut renumber = vec![0i32; p.generators + 1];
    let mut next = 0;
    for g in 1..=p.generators {
        if alive[g - 1] {
            next += 1;
            renumber[g] = next;
        }
    }
    let relators = rels
        .into_iter()
        .map(|r| {
            let letters: Vec<i32> = r.iter().map(|&l| l.signum() * renumber[l.unsigned_abs() as usize]).collect();
            FreeWord::reduce(&letters, next as usize).expect("renumbered letters are in range")
        })
        .collect();
    Presentation {
        generators: next as usize,
        relators,
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    description: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: u32,
}

/// Largest target order accepted by [`count_homs`] unless overridden.
pub const DEFAULT_TARGET_BOUND: usize = 120;

/// Groups are closed by breadth-first search up to this order.
const CLOSURE_LIMIT: usize = 50_000;

impl FiniteGroup {
    /// The subgroup of `S_degree` generated by the given permutations.
    pub fn from_permutations(degree: usize, generators: &[Permutation]) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Malformed(format!("generator not in S{degree}")));
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in generators {
                let x = elements[k].then(g);
                if !index.contains_key(&x) {
                    if elements.len() >= CLOSURE_LIMIT {
                        return Err(Error::BoundExceeded {
                            order: elements.len(),
                            bound: CLOSURE_LIMIT,
                        });
                    }
                    index.insert(x.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(x);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[&a.then(b)] as u32;
            }
        }
        let parts: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        Self::from_parts(format!("perm {degree}: {}", parts.join(" ")), n, table)
    }

    /// From a table with `table[i][j] = i · j` over elements `0..n`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Malformed("multiplication table is not square over its elements".into()));
            }
            flat.extend(row.iter().map(|&x| x as u32));
        }
        Self::from_parts(format!("table {n}"), n, flat)
    }

    fn from_parts(description: String, n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("empty group".into()));
        }
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::Malformed("table has no identity".into()))?;
        let mut inverse = vec![0u32; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            let b = (0..n)
                .find(|&b| mul(a, b) == identity)
                .ok_or_else(|| Error::Malformed(format!("element {a} has no inverse")))?;
            *inv = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::Malformed("table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            description,
            order: n,
            table,
            inverse,
            identity: identity as u32,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    fn eval(&self, images: &[u32], word: &[i32]) -> u32 {
        word.iter().fold(self.identity, |acc, &l| {
            let g = images[l.unsigned_abs() as usize - 1];
            self.mul(acc, if l > 0 { g } else { self.inverse[g as usize] })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCount {
    pub target: String,
    pub target_order: usize,
    pub count: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomOptions {
    pub bound: usize,
    pub threads: usize,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions {
            bound: DEFAULT_TARGET_BOUND,
            threads: 1,
        }
    }
}

/// Number of homomorphisms `⟨P⟩ → G`, by backtracking over generator images
/// after [`simplify`]. Each relator is checked as soon as its largest
/// generator is assigned; generators in no relator contribute a factor `|G|`.
pub fn count_homs(p: &Presentation, target: &FiniteGroup, options: &HomOptions) -> Result<HomCount> {
    if target.order > options.bound {
        return Err(Error::BoundExceeded {
            order: target.order,
            bound: options.bound,
        });
    }
    let s = simplify(p);
    let mut used = vec![false; s.generators];
    for r in &s.relators {
        for &l in r.letters() {
            used[l.unsigned_abs() as usize - 1] = true;
        }
    }
    let free = used.iter().filter(|&&u| !u).count();
    let mut renumber = vec![0i32; s.generators + 1];
    let mut n = 0;
    for g in 1..=s.generators {
        if used[g - 1] {
            n += 1;
            renumber[g] = n;
        }
    }
    let n = n as usize;
    let mut checks: Vec<Vec<Vec<i32>>> = vec![Vec::new(); n];
    for r in &s.relators {
        let w: Vec<i32> = r.letters().iter().map(|&l| l.signum() * renumber[l.unsigned_abs() as usize]).collect();
        let top = w.iter().map(|l| l.unsigned_abs() as usize).max().expect("relators are nonempty");
        checks[top - 1].push(w);
    }
    let mut count: u128 = if n == 0 {
        1
    } else {
        let threads = options.threads.clamp(1, target.order);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let checks = &checks;
                    scope.spawn(move || {
                        let mut images = vec![0u32; n];
                        let mut total = 0u128;
                        for first in (t..target.order).step_by(threads) {
                            images[0] = first as u32;
                            if checks[0].iter().all(|w| target.eval(&images, w) == target.identity) {
                                total += extend(target, checks, &mut images, 1);
                            }
                        }
                        total
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
        })
    };
    for _ in 0..free {
        count *= target.order as u128;
    }
    Ok(HomCount {
        target: target.description.clone(),
        target_order: target.order,
        count,
    })
}

fn extend(g: &FiniteGroup, checks: &[Vec<Vec<i32>>], images: &mut [u32], k: usize) -> u128 {
    if k == images.len() {
        return 1;
    }
    let mut total = 0;
    for x in 0..g.order as u32 {
        images[k] = x;
        if checks[k].iter().all(|w| g.eval(images, w) == g.identity) {
            total += extend(g, checks, images, k + 1);
        }
    }
    total
}

/// Output of [`stabilized`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizedPresentation {
    pub presentation: Presentation,
    pub conjugator_bound: usize,
    pub added_relators: usize,
    /// True when no two geometric generators have disjoint images, so no
    /// commutator is ever needed and the bound does not matter.
    pub exact: bool,
}

fn reduced_words(generators: usize, max_len: usize) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 1..=generators as i32 {
                for l in [g, -g] {
                    if w.last() != Some(&-l) {
                        let mut v: Vec<i32> = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Adds `[w x_a w⁻¹, v x_b v⁻¹]` for every pair of geometric generators with
/// conjugators of length at most `conjugator_bound` whose `θ`-images are
/// disjoint transpositions.
pub fn stabilized(p: &Presentation, theta: &CoveringData, conjugator_bound: usize) -> Result<StabilizedPresentation> {
    if theta.degree() != p.generators {
        return Err(Error::DimensionMismatch(format!(
            "covering has {} labels, presentation has {} generators",
            theta.degree(),
            p.generators
        )));
    }
    let orbit = theta.label_orbit();
    let exact = !orbit.iter().enumerate().any(|(i, a)| orbit[i + 1..].iter().any(|b| disjoint(a, b)));
    let mut geometric: Vec<(Vec<i32>, Permutation)> = Vec::new();
    let mut seen = BTreeSet::new();
    for w in reduced_words(p.generators, conjugator_bound) {
        for a in 1..=p.generators as i32 {
            let mut g = w.clone();
            g.push(a);
            g.extend(invert_letters(&w));
            let g = reduce_letters(g);
            if seen.insert(g.clone()) {
                let image = theta.image_letters(&g);
                geometric.push((g, image));
            }
        }
    }
    let mut relators = p.relators.clone();
    let mut added = BTreeSet::new();
    for (i, (g1, s1)) in geometric.iter().enumerate() {
        for (g2, s2) in &geometric[i + 1..] {
            if !disjoint(s1, s2) {
                continue;
            }
            let mut c = g1.clone();
            c.extend_from_slice(g2);
            c.extend(invert_letters(g1));
            c.extend(invert_letters(g2));
            let c = cyclic_reduce(c);
            if !c.is_empty() && added.insert(cyclic_canonical(&c)) {
                relators.push(FreeWord::reduce(&c, p.generators)?);
            }
        }
    }
    Ok(StabilizedPresentation {
        added_relators: added.len(),
        presentation: Presentation::new(p.generators, relators)?,
        conjugator_bound,
        exact,
    })
}

/// Abelian-level consistency of `(P, θ)` with the sequence
/// `1 → G⁰ → Ḡ → S_N × Z_d → Z₂ → 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// 0-based relators with `θ(r) ≠ 1`.
    pub failing_relators: Vec<usize>,
    /// Every relator has total exponent `≡ 0 (mod d)`.
    pub linking_well_defined: bool,
    /// `sign(σ) · (-1)^k` is a character of `S_N × Z_d` (needs `d` even) and
    /// is trivial on the image of every generator `(θ(x_i), 1)`.
    pub parity_consistent: bool,
    /// Order of `⟨(θ(x_i), 1)⟩ ⊂ S_N × Z_d`, when `N ≤ 7`.
    pub image_order: Option<usize>,
    /// `N! · d`.
    pub ambient_order: Option<usize>,
    /// `(Z² / Λ)^{N-1}` for user-supplied generators of `Λ`.
    pub lambda_quotient: Option<AbelianGroup>,
}

impl StructureReport {
    pub fn relators_in_kernel(&self) -> bool {
        self.failing_relators.is_empty()
    }

    pub fn image_index(&self) -> Option<usize> {
        Some(self.ambient_order? / self.image_order?)
    }

    pub fn passes(&self) -> bool {
        self.relators_in_kernel() && self.linking_well_defined && self.parity_consistent
    }
}

pub fn structure_check(p: &Presentation, theta: &CoveringData, lambda: Option<&[[i64; 2]]>) -> Result<StructureReport> {
    if theta.degree() != p.generators {
        return Err(Error::DimensionMismatch(format!(
            "covering has {} labels, presentation has {} generators",
            theta.degree(),
            p.generators
        )));
    }
    let d = theta.degree();
    let n = theta.sheets();
    let failing_relators = p
        .relators
        .iter()
        .enumerate()
        .filter(|(_, r)| !theta.image_letters(r.letters()).is_identity())
        .map(|(k, _)| k)
        .collect();
    let total = |r: &FreeWord| r.letters().iter().map(|l| l.signum() as i64).sum::<i64>();
    let linking_well_defined = d > 0 && p.relators.iter().all(|r| total(r).rem_euclid(d as i64) == 0);
    let parity_consistent = d.is_multiple_of(2) && theta.labels().iter().all(|l| l.sign() == -1);

    let (image_order, ambient_order) = if n <= 7 && d > 0 {
        let gens: Vec<(Permutation, usize)> = theta.labels().iter().map(|l| (l.clone(), 1 % d)).collect();
        let start = (Permutation::identity(n), 0usize);
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some((s, k)) = queue.pop_front() {
            for (g, j) in &gens {
                let x = (s.then(g), (k + j) % d);
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
        let factorial: usize = (1..=n).product();
        (Some(seen.len()), Some(factorial * d))
    } else {
        (None, None)
    };

    let lambda_quotient = match lambda {
        None => None,
        Some(gens) => {
            let cols: Vec<Vec<BigInt>> = gens.iter().map(|v| vec![BigInt::from(v[0]), BigInt::from(v[1])]).collect();
            let q = cokernel(&IntMatrix::from_columns(2, &cols)?);
            let mut acc = AbelianGroup::trivial();
            for _ in 1..n {
                acc = acc.direct_sum(&q);
            }
            Some(acc)
        }
    };
    Ok(StructureReport {
        failing_relators,
        linking_well_defined,
        parity_consistent,
        image_order,
        ambient_order,
        lambda_quotient,
    })
}
