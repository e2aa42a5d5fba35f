//! Lefschetz fibrations over the sphere described by vanishing-cycle classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cover::{check_compatibility, CoveringData, FiberLift};
use crate::error::{Error, Result};
use crate::factor::{Exponent, Factorization};
use crate::mcg::{to_big, transvection, transvection_big, SpMatrix};
use crate::zlinalg::{cokernel, AbelianGroup, IntMatrix};

/// Genus-`g` fibration with ordered vanishing cycles in `H₁` of the fiber.
///
/// A separating cycle is homologically trivial and must carry the zero class;
/// every other cycle must be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LFibration {
    genus: usize,
    cycles: Vec<Vec<i64>>,
    separating: Vec<bool>,
}

impl LFibration {
    pub fn new(genus: usize, cycles: Vec<Vec<i64>>, separating: Vec<bool>) -> Result<Self> {
        if cycles.len() != separating.len() {
            return Err(Error::DimensionMismatch("one separating flag per cycle".into()));
        }
        for (k, (c, &sep)) in cycles.iter().zip(&separating).enumerate() {
            if c.len() != 2 * genus {
                return Err(Error::DimensionMismatch(format!("cycle {} has length {}, expected {}", k + 1, c.len(), 2 * genus)));
            }
            let zero = c.iter().all(|&x| x == 0);
            if sep != zero {
                return Err(Error::Malformed(format!(
                    "cycle {}: {}",
                    k + 1,
                    if sep { "separating cycle with nonzero class" } else { "nonseparating cycle with zero class" }
                )));
            }
        }
        Ok(LFibration {
            genus,
            cycles,
            separating,
        })
    }

    /// All cycles nonseparating.
    pub fn from_cycles(genus: usize, cycles: Vec<Vec<i64>>) -> Result<Self> {
        let flags = vec![false; cycles.len()];
        Self::new(genus, cycles, flags)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn cycles(&self) -> &[Vec<i64>] {
        &self.cycles
    }

    pub fn separating(&self) -> &[bool] {
        &self.separating
    }

    /// Number of critical points.
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// The same cycles repeated `k` times: the untwisted sum of `k` copies.
    pub fn repeat(&self, k: usize) -> LFibration {
        LFibration {
            genus: self.genus,
            cycles: repeated(&self.cycles, k),
            separating: self.separating.repeat(k),
        }
    }

    fn cycle_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.cycles.iter().map(|c| to_big(c)).collect();
        IntMatrix::from_columns(2 * self.genus, &cols).expect("cycle lengths checked")
    }
}

/// `χ = 2(2 - 2g) + m`; every critical point adds one, separating or not.
pub fn euler_characteristic(l: &LFibration) -> i64 {
    2 * (2 - 2 * l.genus as i64) + l.len() as i64
}

/// `H₁(X) = H₁(F) / ⟨vanishing cycles⟩`.
pub fn total_space_h1(l: &LFibration) -> AbelianGroup {
    cokernel(&l.cycle_matrix())
}

/// Gluing map for a twisted fiber sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibSumTwist {
    pub matrix: SpMatrix,
}

/// Cycles of `l1` followed by the twisted cycles of `l2`.
pub fn fiber_sum(l1: &LFibration, l2: &LFibration, twist: Option<&FibSumTwist>) -> Result<LFibration> {
    if l1.genus != l2.genus {
        return Err(Error::GenusMismatch(l1.genus, l2.genus));
    }
    let mut cycles = l1.cycles.clone();
    for c in &l2.cycles {
        let image = match twist {
            None => c.clone(),
            Some(t) => {
                if t.matrix.genus() != l1.genus {
                    return Err(Error::GenusMismatch(l1.genus, t.matrix.genus()));
                }
                to_small(&t.matrix.apply(c)?)?
            }
        };
        cycles.push(image);
    }
    let mut separating = l1.separating.clone();
    separating.extend_from_slice(&l2.separating);
    LFibration::new(l1.genus, cycles, separating)
}

pub(crate) fn repeated<T: Clone>(v: &[T], k: usize) -> Vec<T> {
    v.iter().cloned().cycle().take(v.len() * k).collect()
}

fn to_small(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Internal(format!("class entry {x} exceeds 64 bits"))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpValidity {
    /// Product of the transvections in cycle order.
    pub monodromy: SpMatrix,
}

impl SpValidity {
    pub fn is_valid(&self) -> bool {
        self.monodromy.is_identity()
    }
}

/// Whether the product of all twists is trivial on `H₁`, a necessary
/// condition for a fibration over the sphere.
pub fn sp_validity(l: &LFibration) -> Result<SpValidity> {
    let mut acc = SpMatrix::identity(l.genus);
    for c in &l.cycles {
        acc = acc.mul(&transvection(c, l.genus)?)?;
    }
    Ok(SpValidity { monodromy: acc })
}

/// Primitive generator of the column space of `a`, first nonzero entry
/// positive, when that space has rank one.
fn rank_one_axis(a: &IntMatrix) -> Option<Vec<BigInt>> {
    let col = (0..a.cols()).map(|j| a.column(j)).find(|c| c.iter().any(|x| !x.is_zero()))?;
    let g = col.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut v: Vec<BigInt> = col.iter().map(|x| x / &g).collect();
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -&*x);
    }
    Some(v)
}

/// Vanishing cycles read off the lifts of the tangency factors of `f`.
///
/// Each tangency lifts to `I + k · c cᵀ J₀` for a primitive `c`; the class is
/// `√k · c` and must be a perfect square multiple. Nodes and cusps lift
/// trivially and contribute no critical point.
pub fn from_branch_data(f: &Factorization, theta: &CoveringData) -> Result<LFibration> {
    let report = check_compatibility(theta, f)?;
    if !report.is_compatible() {
        return Err(Error::Incompatible(format!("{report:?}")));
    }
    let lift = FiberLift::new(theta)?;
    let g = lift.genus();
    let n = 2 * g;
    let mut cycles = Vec::new();
    let mut flags = Vec::new();
    for factor in f.factors().iter().filter(|x| x.exponent() == Exponent::Tangency) {
        let m = lift.lift(&factor.word())?;
        let a = m.sub(&IntMatrix::identity(n))?;
        let Some(c) = rank_one_axis(&a) else {
            cycles.push(vec![0; n]);
            flags.push(true);
            continue;
        };
        let unit = transvection_big(&c, g)?;
        let base = unit.matrix().sub(&IntMatrix::identity(n))?;
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !base.get(i, j).is_zero())
            .ok_or_else(|| Error::Internal("transvection with isotropic axis".into()))?;
        let (k, rem) = a.get(i, j).div_rem(base.get(i, j));
        let root = if k.is_positive() { k.sqrt() } else { BigInt::zero() };
        if !rem.is_zero() || &root * &root != k || k.is_zero() {
            return Err(Error::Internal(format!("tangency lifts with rank(M - I) > 1 or negative twist: {m}")));
        }
        let class: Vec<BigInt> = c.iter().map(|x| x * &root).collect();
        if transvection_big(&class, g)?.matrix() != &m {
            return Err(Error::Internal(format!("tangency lift is not a transvection: {m}")));
        }
        cycles.push(to_small(&class)?);
        flags.push(false);
    }
    LFibration::new(g, cycles, flags)
}

/// Invariants compared when checking that two fibrations agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub genus: usize,
    pub critical_points: usize,
    pub separating: usize,
    pub euler_characteristic: i64,
    pub h1: AbelianGroup,
}

pub fn invariants(l: &LFibration) -> Invariants {
    Invariants {
        genus: l.genus,
        critical_points: l.len(),
        separating: l.separating.iter().filter(|&&s| s).count(),
        euler_characteristic: euler_characteristic(l),
        h1: total_space_h1(l),
    }
}
