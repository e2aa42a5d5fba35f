//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! The central routine is [`smith_normal_form`], which also returns the
//! inverses of both change-of-basis matrices so that homology computations
//! can move between chain coordinates and homology coordinates without a
//! second elimination pass.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must share a length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("subtraction of unequal shapes".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// Sub-block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack of unequal row counts".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    // Elementary operations used by the reductions below.

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let k = i * self.cols + j;
            self.entries[k] = -&self.entries[k];
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let k = i * self.cols + j;
            self.entries[k] = -&self.entries[k];
        }
    }

    /// `row[target] += c * row[source]`
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if !s.is_zero() {
                let delta = c * s;
                self.entries[target * self.cols + j] += delta;
            }
        }
    }

    /// `col[target] += c * col[source]`
    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + source];
            if !s.is_zero() {
                let delta = c * s;
                self.entries[i * self.cols + target] += delta;
            }
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
///
/// `u_inv` and `v_inv` are the exact inverses of `u` and `v`, maintained
/// alongside them during the reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/torsion[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => Self::free(1),
            1 => Self::trivial(),
            n => AbelianGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(n)],
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t))
    }

    /// Checks the divisibility chain and the `>= 2` bound on torsion coefficients.
    pub fn is_normalized(&self) -> bool {
        let two = BigInt::from(2);
        self.torsion.iter().all(|t| *t >= two)
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// Direct sum, renormalized to invariant-factor form.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let n = self.torsion.len() + other.torsion.len();
        let mut m = IntMatrix::zeros(n, n);
        for (k, t) in self.torsion.iter().chain(&other.torsion).enumerate() {
            m.set(k, k, t.clone());
        }
        let mut g = cokernel(&m);
        g.free_rank += self.free_rank + other.free_rank;
        g
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct Reduction {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reduction {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        self.d.add_row(target, source, c);
        self.u.add_row(target, source, c);
        self.u_inv.add_col(source, target, &-c);
    }

    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        self.d.add_col(target, source, c);
        self.v.add_col(target, source, c);
        self.v_inv.add_row(source, target, &-c);
    }

    /// Smallest nonzero |entry| in the trailing block, ties broken by lowest row then column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows {
            for j in t..self.d.cols {
                let x = self.d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.d.get(bi, bj).abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form with a deterministic pivot rule.
///
/// Pivot: smallest nonzero absolute value in the remaining block, then lowest
/// row, then lowest column. Diagonal entries are nonnegative and each divides
/// the next.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut r = Reduction {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let steps = m.min(n);
    for t in 0..steps {
        while let Some((pi, pj)) = r.pivot(t) {
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let p = r.d.get(t, t).clone();

            let mut clean = true;
            for i in t + 1..m {
                let x = r.d.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                r.add_row(i, t, &-q);
                if !r.d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let x = r.d.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                r.add_col(j, t, &-q);
                if !r.d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Row and column are clear; enforce the divisibility chain.
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !r.d.get(i, j).is_multiple_of(&p)));
            match offending {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.d.get(t, t).is_negative() {
            r.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|k| r.d.get(k, k).clone()).collect();
    SmithForm {
        u: r.u,
        d: r.d,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        diagonal,
    }
}

/// Cokernel `Z^rows / im(A)` in invariant-factor form.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    let nonzero = snf.rank();
    AbelianGroup {
        free_rank: a.rows - nonzero,
        torsion: snf
            .diagonal
            .into_iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect(),
    }
}

pub fn int_rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, val);
            }
        }
        prev = m.get(k, k).clone();
    }
    Ok(sign * m.get(n - 1, n - 1))
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
    }
    let snf = smith_normal_form(a);
    if snf.diagonal.iter().any(|x| !x.is_one()) {
        return Err(Error::DimensionMismatch("matrix is not unimodular".into()));
    }
    // u a v = I  =>  a^{-1} = v u
    snf.v.mul(&snf.u)
}

/// The standard alternating form: block diagonal with blocks `[[0, 1], [-1, 0]]`.
pub fn standard_alternating(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for k in 0..genus {
        j.set(2 * k, 2 * k + 1, BigInt::one());
        j.set(2 * k + 1, 2 * k, -BigInt::one());
    }
    j
}

pub fn is_alternating(a: &IntMatrix) -> bool {
    a.is_square()
        && (0..a.rows).all(|i| {
            a.get(i, i).is_zero() && (0..i).all(|j| *a.get(i, j) == -a.get(j, i))
        })
}

/// Symplectic frame for a unimodular alternating form.
///
/// Returns `(p, p_inv)` with `pᵀ · form · p` equal to [`standard_alternating`].
pub fn symplectic_frame(form: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    if !is_alternating(form) || !form.rows.is_multiple_of(2) {
        return Err(Error::DimensionMismatch(
            "symplectic frame needs an even-dimensional alternating form".into(),
        ));
    }
    let n = form.rows;
    let mut j = form.clone();
    let mut p = IntMatrix::identity(n);
    let mut p_inv = IntMatrix::identity(n);

    // Congruence moves: j <- fᵀ j f, p <- p f, p_inv <- f⁻¹ p_inv.
    let add = |j: &mut IntMatrix, p: &mut IntMatrix, p_inv: &mut IntMatrix, t: usize, s: usize, c: &BigInt| {
        j.add_col(t, s, c);
        j.add_row(t, s, c);
        p.add_col(t, s, c);
        p_inv.add_row(s, t, &-c);
    };
    let swap = |j: &mut IntMatrix, p: &mut IntMatrix, p_inv: &mut IntMatrix, a: usize, b: usize| {
        j.swap_cols(a, b);
        j.swap_rows(a, b);
        p.swap_cols(a, b);
        p_inv.swap_rows(a, b);
    };

    for k in 0..n / 2 {
        let r = 2 * k;
        loop {
            let pick = (r + 1..n)
                .filter(|&q| !j.get(r, q).is_zero())
                .min_by(|&a, &b| j.get(r, a).abs().cmp(&j.get(r, b).abs()).then(a.cmp(&b)));
            let Some(q) = pick else {
                return Err(Error::DimensionMismatch("alternating form is degenerate".into()));
            };
            swap(&mut j, &mut p, &mut p_inv, r + 1, q);
            let pivot = j.get(r, r + 1).clone();
            let mut done = true;
            for q in r + 2..n {
                let x = j.get(r, q).clone();
                if x.is_zero() {
                    continue;
                }
                let c = x.div_floor(&pivot);
                add(&mut j, &mut p, &mut p_inv, q, r + 1, &-c);
                if !j.get(r, q).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if j.get(r, r + 1).abs() != BigInt::one() {
            return Err(Error::DimensionMismatch("alternating form is not unimodular".into()));
        }
        if j.get(r, r + 1).is_negative() {
            j.negate_col(r + 1);
            j.negate_row(r + 1);
            p.negate_col(r + 1);
            p_inv.negate_row(r + 1);
        }
        for q in r + 2..n {
            let y = j.get(r + 1, q).clone();
            if !y.is_zero() {
                add(&mut j, &mut p, &mut p_inv, q, r, &y);
            }
        }
    }
    debug_assert_eq!(j, standard_alternating(n / 2));
    Ok((p, p_inv))
}
