//! The slit-sheet CW model of the covering fiber and its first homology.
//!
//! Base sphere: one vertex at infinity, one vertex per branch point `p_j`,
//! slit edges from infinity to each `p_j`, and the single complementary disk.
//! The cover takes `N` copies of the disk glued across slit `j` by `σ_j`.
//! Edge `ẽ(j, t)` is the slit `j` on sheet `t`, seen from the side it leaves
//! infinity on; the other side of slit `j` on sheet `t` is `ẽ(j, σ_j t)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{fiber_genus, CoveringData};
use crate::error::{Error, Result};
use crate::zlinalg::{smith_normal_form, symplectic_frame, unimodular_inverse, AbelianGroup, IntMatrix};

/// A closed oriented surface as a 2-dimensional CW complex.
///
/// Faces are closed edge paths `(edge, forward)`; the sum of all faces is the
/// fundamental class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombSurface {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<(usize, bool)>>,
    marked_points: Vec<usize>,
}

impl CombSurface {
    pub fn new(
        vertices: usize,
        edges: Vec<(usize, usize)>,
        faces: Vec<Vec<(usize, bool)>>,
        marked_points: Vec<usize>,
    ) -> Result<Self> {
        if edges.iter().any(|&(a, b)| a >= vertices || b >= vertices) || marked_points.iter().any(|&v| v >= vertices) {
            return Err(Error::Malformed("vertex index out of range".into()));
        }
        for (k, face) in faces.iter().enumerate() {
            let ends: Vec<(usize, usize)> = face
                .iter()
                .map(|&(e, fwd)| {
                    let (a, b) = *edges.get(e).ok_or_else(|| Error::Malformed(format!("face {k}: edge {e} out of range")))?;
                    Ok(if fwd { (a, b) } else { (b, a) })
                })
                .collect::<Result<_>>()?;
            for i in 0..ends.len() {
                if ends[i].1 != ends[(i + 1) % ends.len()].0 {
                    return Err(Error::Malformed(format!("face {k} is not a closed edge path")));
                }
            }
        }
        let s = CombSurface {
            vertices,
            edges,
            faces,
            marked_points,
        };
        if !s.boundary_1().mul(&s.boundary_2())?.is_zero() {
            return Err(Error::Internal("boundary of boundary is nonzero".into()));
        }
        Ok(s)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<(usize, bool)>] {
        &self.faces
    }

    /// Vertices lying over infinity.
    pub fn marked_points(&self) -> &[usize] {
        &self.marked_points
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// `∂₁`, vertices × edges.
    pub fn boundary_1(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertices, self.edges.len());
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a != b {
                m.set(a, e, -BigInt::one());
                m.set(b, e, BigInt::one());
            }
        }
        m
    }

    /// `∂₂`, edges × faces.
    pub fn boundary_2(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.edges.len(), self.faces.len());
        for (f, face) in self.faces.iter().enumerate() {
            for &(e, fwd) in face {
                let x = m.get(e, f) + if fwd { 1 } else { -1 };
                m.set(e, f, x);
            }
        }
        m
    }

    /// `⟨α ∪ β, [Σ]⟩` for edge cocycles, via the subdivision of each face
    /// into triangles (corner, edge midpoint, center) ordered by type.
    fn cup(&self, cocycles: &[Vec<BigInt>]) -> IntMatrix {
        let n = cocycles.len();
        let mut c = IntMatrix::zeros(n, n);
        for face in &self.faces {
            // Potentials at the corners v_0..v_K and midpoints m_0..m_{K-1},
            // with the tail half of each edge carrying the cocycle value.
            let mut corner = vec![vec![BigInt::zero()]; n];
            let mut mid = vec![Vec::with_capacity(face.len()); n];
            for (i, a) in cocycles.iter().enumerate() {
                let mut phi = BigInt::zero();
                for &(e, fwd) in face {
                    if fwd {
                        phi += &a[e];
                        mid[i].push(phi.clone());
                    } else {
                        mid[i].push(phi.clone());
                        phi -= &a[e];
                    }
                    corner[i].push(phi.clone());
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let mut s = BigInt::zero();
                    for k in 0..face.len() {
                        s -= &mid[j][k] * (&corner[i][k + 1] - &corner[i][k]);
                    }
                    let x = c.get(i, j) + s;
                    c.set(i, j, x);
                }
            }
        }
        c
    }
}

/// Sign relating the cup-product matrix of the dual basis to the
/// intersection form, `J = FORM_SIGN · C⁻¹`. Chosen so that lifted positive
/// half-twists act as `x ↦ x + ⟨c, x⟩ c`.
const FORM_SIGN: i64 = -1;

/// `H₁` of a closed surface with a symplectic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberHomology {
    pub group: AbelianGroup,
    /// Intersection form in the chosen basis; always the standard form.
    pub form: IntMatrix,
    basis: IntMatrix,
    coords: IntMatrix,
}

impl FiberHomology {
    pub fn rank(&self) -> usize {
        self.group.free_rank
    }

    pub fn genus(&self) -> usize {
        self.group.free_rank / 2
    }

    /// Basis cycles as columns over the edges.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Rows are cocycles dual to the basis: coordinates of an edge cycle.
    pub fn coordinate_map(&self) -> &IntMatrix {
        &self.coords
    }

    pub fn coordinates(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>> {
        self.coords.mul_vec(cycle)
    }
}

pub fn build_fiber_surface(theta: &CoveringData) -> Result<CombSurface> {
    fiber_genus(theta)?;
    let n = theta.sheets();
    let d = theta.degree();
    let sigma = |j: usize, t: usize| theta.labels()[j].apply0(t);

    let mut vertices = n;
    let mut branch_vertex = vec![vec![0usize; n]; d];
    for (j, row) in branch_vertex.iter_mut().enumerate() {
        let mut assigned = vec![usize::MAX; n];
        for t in 0..n {
            if assigned[t] == usize::MAX {
                assigned[t] = vertices;
                assigned[sigma(j, t)] = vertices;
                vertices += 1;
            }
        }
        *row = assigned;
    }
    let edge = |j: usize, t: usize| j * n + t;
    let mut edges = Vec::with_capacity(n * d);
    for j in 0..d {
        for t in 0..n {
            // The corner before slit j on sheet t is the vertex σ_0 ⋯ σ_{j-1}(t).
            let tail = (0..j).rev().fold(t, |s, k| sigma(k, s));
            edges.push((tail, branch_vertex[j][t]));
        }
    }
    let faces = (0..n)
        .map(|t| {
            (0..d)
                .flat_map(|j| [(edge(j, t), true), (edge(j, sigma(j, t)), false)])
                .collect()
        })
        .collect();
    let s = CombSurface::new(vertices, edges, faces, (0..n).collect())?;
    if s.euler_characteristic() != 2 * n as i64 - d as i64 {
        return Err(Error::Internal("slit model has the wrong Euler characteristic".into()));
    }
    Ok(s)
}

pub fn surface_h1(s: &CombSurface) -> Result<FiberHomology> {
    let e = s.edge_count();
    let d1 = smith_normal_form(&s.boundary_1());
    let r = d1.rank();
    // Coordinates on ker ∂₁ in the basis given by the last columns of V.
    let kernel_coords = d1.v_inv.block(r, e, 0, e);
    let kernel = d1.v.block(0, e, r, e);
    let rel = kernel_coords.mul(&s.boundary_2())?;
    let d2 = smith_normal_form(&rel);
    let rs = d2.rank();
    let torsion: Vec<BigInt> = d2.diagonal[..rs].iter().filter(|x| !x.is_one()).cloned().collect();
    if !torsion.is_empty() {
        return Err(Error::Internal(format!("surface homology has torsion {torsion:?}")));
    }
    let k = e - r;
    let coords = d2.u.mul(&kernel_coords)?.block(rs, k, 0, e);
    let basis = kernel.mul(&d2.u_inv)?.block(0, e, rs, k);
    let rank = k - rs;
    if rank == 0 {
        return Ok(FiberHomology {
            group: AbelianGroup::trivial(),
            form: IntMatrix::zeros(0, 0),
            basis,
            coords,
        });
    }
    let cocycles: Vec<Vec<BigInt>> = (0..rank).map(|i| coords.row(i)).collect();
    let cup = s.cup(&cocycles);
    let mut form = unimodular_inverse(&cup)?;
    if FORM_SIGN < 0 {
        form = form.neg();
    }
    let (p, p_inv) = symplectic_frame(&form)?;
    let basis = basis.mul(&p)?;
    let coords = p_inv.mul(&coords)?;
    let form = p.transpose().mul(&form)?.mul(&p)?;
    Ok(FiberHomology {
        group: AbelianGroup::free(rank),
        form,
        basis,
        coords,
    })
}
