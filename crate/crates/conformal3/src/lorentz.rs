//! The Lorentzian space `R^{1,4}`, its null cone, the 3-sphere as the
//! projectivised null cone, and the conformal `O(1,4)` action.
//!
//! Coordinates: `v1` is timelike, `v2..v5` are spacelike, and the
//! quadratic form is `q(v) = -v1^2 + v2^2 + v3^2 + v4^2 + v5^2`. A point
//! of the sphere is a null line; every null line meets the affine slice
//! `v1 = 1` exactly once, so sphere points are stored as null vectors with
//! first coordinate 1. The remaining four coordinates then form a unit
//! vector, identifying the projectivised null cone with the unit sphere
//! in `R^4`.

use nalgebra::{Matrix5, Vector4, Vector5};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LorentzError {
    #[error("vector is not null (q = {q}, |v|^2 = {norm_sq})")]
    NotNull { q: f64, norm_sq: f64 },
    #[error("cannot projectivise the zero vector")]
    ZeroVector,
    #[error("matrix does not preserve the form (|M^T J M - J| = {0})")]
    NotLorentz(f64),
    #[error("matrix is not in the Lorentz algebra (|M^T J + J M| = {0})")]
    NotLorentzAlgebra(f64),
}

/// The Gram matrix `J = diag(-1, 1, 1, 1, 1)` of the form.
pub fn metric() -> Matrix5<f64> {
    Matrix5::from_diagonal(&Vector5::new(-1.0, 1.0, 1.0, 1.0, 1.0))
}

/// Polarised form of signature (1,4):
/// `q(v, w) = -v1 w1 + v2 w2 + v3 w3 + v4 w4 + v5 w5`.
pub fn q_form(v: &Vector5<f64>, w: &Vector5<f64>) -> f64 {
    -v[0] * w[0] + v[1] * w[1] + v[2] * w[2] + v[3] * w[3] + v[4] * w[4]
}

/// The quadratic form `q(v, v)`.
pub fn q_quadratic(v: &Vector5<f64>) -> f64 {
    q_form(v, v)
}

/// Element of `O(1,4)`: a 5x5 matrix with `M^T J M = J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix {
    m: Matrix5<f64>,
}

impl LorentzMatrix {
    /// Checked construction.
    pub fn try_new(m: Matrix5<f64>, eps: f64) -> Result<Self, LorentzError> {
        let defect = (m.transpose() * metric() * m - metric()).norm();
        if defect > eps {
            return Err(LorentzError::NotLorentz(defect));
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix5::identity(),
        }
    }

    pub fn matrix(&self) -> &Matrix5<f64> {
        &self.m
    }

    pub fn compose(&self, other: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix {
            m: self.m * other.m,
        }
    }

    /// Deviation from the defining relation, `|M^T J M - J|`.
    pub fn form_defect(&self) -> f64 {
        (self.m.transpose() * metric() * self.m - metric()).norm()
    }

    /// Conformal action on the sphere: apply the matrix to the null
    /// representative and rescale back to the `v1 = 1` slice. Fails only
    /// on corrupted input.
    pub fn act(&self, s: &SpherePoint) -> Result<SpherePoint, LorentzError> {
        SpherePoint::from_null_vector(&(self.m * s.coords()), 1e-6)
    }
}

/// Element of the Lorentz algebra `so(1,4)`: `M^T J + J M = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzAlgElement {
    m: Matrix5<f64>,
}

impl LorentzAlgElement {
    /// Checked construction.
    pub fn try_new(m: Matrix5<f64>, eps: f64) -> Result<Self, LorentzError> {
        let defect = (m.transpose() * metric() + metric() * m).norm();
        if defect > eps {
            return Err(LorentzError::NotLorentzAlgebra(defect));
        }
        Ok(Self { m })
    }

    /// Unchecked construction for matrices that are q-skew by build.
    pub fn from_matrix_unchecked(m: Matrix5<f64>) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        Self { m: Matrix5::zeros() }
    }

    /// Boost generator pairing the timelike coordinate with spacelike
    /// coordinate `j` (1-based, `2 <= j <= 5`).
    pub fn boost(j: usize) -> Self {
        assert!((2..=5).contains(&j));
        let mut m = Matrix5::zeros();
        m[(0, j - 1)] = 1.0;
        m[(j - 1, 0)] = 1.0;
        Self { m }
    }

    /// Rotation generator in the spacelike coordinate plane `(j, k)`
    /// (1-based, `2 <= j < k <= 5`).
    pub fn rotation(j: usize, k: usize) -> Self {
        assert!((2..=5).contains(&j) && (2..=5).contains(&k) && j < k);
        let mut m = Matrix5::zeros();
        m[(j - 1, k - 1)] = 1.0;
        m[(k - 1, j - 1)] = -1.0;
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix5<f64> {
        &self.m
    }

    pub fn bracket(&self, other: &LorentzAlgElement) -> LorentzAlgElement {
        LorentzAlgElement {
            m: self.m * other.m - other.m * self.m,
        }
    }

    /// One-parameter subgroup through the identity.
    pub fn exp(&self, t: f64) -> LorentzMatrix {
        LorentzMatrix { m: (t * self.m).exp() }
    }

    pub fn scale(&self, c: f64) -> LorentzAlgElement {
        LorentzAlgElement { m: c * self.m }
    }

    pub fn add(&self, other: &LorentzAlgElement) -> LorentzAlgElement {
        LorentzAlgElement {
            m: self.m + other.m,
        }
    }
}

/// Point of the conformal 3-sphere: a null direction, normalised so the
/// first coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint {
    n: Vector5<f64>,
}

impl SpherePoint {
    /// Projectivises a null vector onto the `v1 = 1` slice.
    pub fn from_null_vector(v: &Vector5<f64>, eps: f64) -> Result<Self, LorentzError> {
        let norm_sq = v.norm_squared();
        if norm_sq < 1e-300 {
            return Err(LorentzError::ZeroVector);
        }
        let q = q_quadratic(v);
        if q.abs() > eps * norm_sq {
            return Err(LorentzError::NotNull { q, norm_sq });
        }
        // q = 0 forces v1 != 0 for nonzero v
        let mut n = v / v[0];
        // re-project the spatial part onto the unit sphere to absorb the
        // tolerated q-residual
        let spatial_norm = n.fixed_rows::<4>(1).norm();
        n.fixed_rows_mut::<4>(1).scale_mut(1.0 / spatial_norm);
        n[0] = 1.0;
        Ok(Self { n })
    }

    /// Builds the point `(1, u/|u|)` from a nonzero spatial 4-vector.
    pub fn from_spatial(u: &Vector4<f64>) -> Self {
        let u = u / u.norm();
        Self {
            n: Vector5::new(1.0, u[0], u[1], u[2], u[3]),
        }
    }

    /// The normalised null representative, first coordinate 1.
    pub fn coords(&self) -> &Vector5<f64> {
        &self.n
    }

    /// The unit 4-vector part.
    pub fn spatial(&self) -> Vector4<f64> {
        self.n.fixed_rows::<4>(1).into_owned()
    }

    /// Euclidean distance between slice representatives; a faithful metric
    /// for comparisons since representatives are unique.
    pub fn distance(&self, other: &SpherePoint) -> f64 {
        (self.n - other.n).norm()
    }
}

/// Dimension of the orbit through `s` of the connected group generated by
/// `gens`: the rank of `[n | M1 n | ... | Mk n]` minus one.
pub fn sphere_orbit_dim(gens: &[LorentzAlgElement], s: &SpherePoint, rank_tol: f64) -> usize {
    let mut cols: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(gens.len() + 1);
    let n = s.coords();
    cols.push(nalgebra::DVector::from_column_slice(n.as_slice()));
    for g in gens {
        let gn = g.matrix() * n;
        cols.push(nalgebra::DVector::from_column_slice(gn.as_slice()));
    }
    crate::linalg::subspace_rank(&cols, rank_tol) - 1
}

/// Standard basis of `so(1,4)`: the four boosts followed by the six
/// spacelike rotations, 10 generators in total.
pub fn so14_basis() -> Vec<LorentzAlgElement> {
    let mut out = Vec::with_capacity(10);
    for j in 2..=5 {
        out.push(LorentzAlgElement::boost(j));
    }
    for j in 2..=5 {
        for k in (j + 1)..=5 {
            out.push(LorentzAlgElement::rotation(j, k));
        }
    }
    out
}
