//! Homological lifts of liftable braids to the covering fiber.
//!
//! `H₁` of the fiber is generated by the closed lifts (from sheet 1) of the
//! Schreier generators `u_t · x_j · u_{σ_j t}⁻¹` of the sheet graph. A liftable
//! braid `b` sends the lift of `γ` to the lift of `φ_b(γ)`; the matrix `M`
//! with `M · [γ] = [φ_b(γ)]` is solved exactly through a Smith form.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;

use super::surface::{build_fiber_surface, surface_h1, CombSurface, FiberHomology};
use super::{is_liftable, CoveringData};
use crate::braid::{artin_action, check_strands, BraidWord};
use crate::error::{Error, Result};
use crate::word::{invert_letters, reduce_letters};
use crate::zlinalg::{smith_normal_form, IntMatrix};

/// Precomputed data for lifting many braids against one covering.
#[derive(Clone, Debug)]
pub struct FiberLift {
    theta: CoveringData,
    surface: CombSurface,
    homology: FiberHomology,
    generators: Vec<Vec<i32>>,
    /// `M = (H' V)[:, ..2g] · U` where `U H V = [I | 0]`.
    v: IntMatrix,
    u: IntMatrix,
    h: IntMatrix,
}

impl FiberLift {
    pub fn new(theta: &CoveringData) -> Result<Self> {
        let surface = build_fiber_surface(theta)?;
        let homology = surface_h1(&surface)?;
        let generators = schreier_generators(theta);
        let mut lift = FiberLift {
            theta: theta.clone(),
            surface,
            homology,
            generators,
            v: IntMatrix::zeros(0, 0),
            u: IntMatrix::zeros(0, 0),
            h: IntMatrix::zeros(0, 0),
        };
        let h = lift.classes_of(&lift.generators)?;
        let snf = smith_normal_form(&h);
        let rank = lift.homology.rank();
        if snf.rank() != rank || snf.diagonal[..rank].iter().any(|x| !x.is_one()) {
            return Err(Error::Internal("Schreier lifts do not generate H1".into()));
        }
        lift.v = snf.v.block(0, h.cols(), 0, rank);
        lift.u = snf.u;
        lift.h = h;
        Ok(lift)
    }

    pub fn covering(&self) -> &CoveringData {
        &self.theta
    }

    pub fn surface(&self) -> &CombSurface {
        &self.surface
    }

    pub fn homology(&self) -> &FiberHomology {
        &self.homology
    }

    pub fn genus(&self) -> usize {
        self.homology.genus()
    }

    /// Edge chain of the lift of a word starting on 0-based sheet `start`.
    pub(crate) fn chain(&self, letters: &[i32], start: usize) -> Vec<i64> {
        let n = self.theta.sheets();
        let mut out = vec![0i64; self.surface.edge_count()];
        let sigma = |j: usize, t: usize| self.theta.labels()[j].apply0(t);
        let mut s = start;
        for &l in letters {
            let j = l.unsigned_abs() as usize - 1;
            let s2 = sigma(j, s);
            // P_j(s) - P_j(s2), where P_j(t) runs around slits 0..j on sheet t
            // and then out along slit j.
            for (t, sign) in [(s, 1i64), (s2, -1i64)] {
                for k in 0..j {
                    out[k * n + t] += sign;
                    out[k * n + sigma(k, t)] -= sign;
                }
                out[j * n + t] += sign;
            }
            s = s2;
        }
        out
    }

    /// `H₁` coordinates (columns) of the lifts of closed words from sheet 1.
    fn classes_of(&self, words: &[Vec<i32>]) -> Result<IntMatrix> {
        let rank = self.homology.rank();
        let mut columns = Vec::with_capacity(words.len());
        for w in words {
            if self.theta.walk(0, w) != 0 {
                return Err(Error::Internal("word does not lift to a closed loop".into()));
            }
            let c: Vec<BigInt> = self.chain(w, 0).into_iter().map(BigInt::from).collect();
            columns.push(self.homology.coordinates(&c)?);
        }
        IntMatrix::from_columns(rank, &columns)
    }

    /// Class in `H₁` of the closed lift from sheet 1 of a word.
    pub fn class_of_loop(&self, letters: &[i32]) -> Result<Vec<BigInt>> {
        Ok(self.classes_of(&[letters.to_vec()])?.column(0))
    }

    /// The action of a liftable braid on `H₁` of the fiber.
    pub fn lift(&self, b: &BraidWord) -> Result<IntMatrix> {
        check_strands(self.theta.degree(), b.strands())?;
        if !is_liftable(&self.theta, b)? {
            return Err(Error::NotLiftable);
        }
        let rank = self.homology.rank();
        if rank == 0 {
            return Ok(IntMatrix::identity(0));
        }
        let phi = artin_action(b);
        let images: Vec<Vec<i32>> = self.generators.iter().map(|g| phi.apply_letters(g)).collect();
        let h2 = self.classes_of(&images)?;
        let m = h2.mul(&self.v)?.mul(&self.u)?;
        if m.mul(&self.h)? != h2 {
            return Err(Error::Internal("lifted action is not linear on H1".into()));
        }
        Ok(m)
    }
}

/// Schreier generators of the sheet-1 stabilizer, in a fixed order.
fn schreier_generators(theta: &CoveringData) -> Vec<Vec<i32>> {
    let n = theta.sheets();
    let d = theta.degree();
    let mut path: Vec<Option<Vec<i32>>> = vec![None; n];
    path[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for j in 0..d {
            let t = theta.labels()[j].apply0(s);
            if path[t].is_none() {
                let mut w = path[s].clone().unwrap();
                w.push(j as i32 + 1);
                path[t] = Some(w);
                queue.push_back(t);
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..n {
        let Some(us) = &path[s] else { continue };
        for j in 0..d {
            let t = theta.labels()[j].apply0(s);
            let Some(ut) = &path[t] else { continue };
            let mut w = us.clone();
            w.push(j as i32 + 1);
            w.extend(invert_letters(ut));
            let w = reduce_letters(w);
            if !w.is_empty() {
                out.push(w);
            }
        }
    }
    out
}

/// Matrix of the lift of `b` on `H₁` of [`build_fiber_surface`]`(θ)`, in the
/// symplectic basis of [`surface_h1`].
pub fn lift_homology(theta: &CoveringData, b: &BraidWord) -> Result<IntMatrix> {
    FiberLift::new(theta)?.lift(b)
}
