//! The similarity group of Euclidean 3-space and its Lie algebra.
//!
//! A similarity `x -> alpha * A x + v` is stored split as a homothety
//! factor `alpha` in `R*`, an orthogonal part `A` in `O(3)` and a
//! translation `v` in `R^3`; the group is the semidirect product
//! `(R* x O(3)) |x R^3`. Its Lie algebra is `(R (+) so(3)) (+) R^3` with
//! the scalar acting on translations as the identity. The distinguished
//! basis of `so(3)` is
//!
//! ```text
//!     X = [ 0 1 0]     Y = [ 0 0 1]     Z = [0  0 0]
//!         [-1 0 0]         [ 0 0 0]         [0  0 1]
//!         [ 0 0 0]         [-1 0 0]         [0 -1 0]
//! ```
//!
//! so that `[X,Y] = -Z`, `[X,Z] = Y`, `[Y,Z] = -X`, and `X` generates the
//! rotations of the `(e1,e2)`-plane.

use nalgebra::{Matrix3, Matrix4, Vector3};
use thiserror::Error;

/// Point of Euclidean 3-space in orthonormal coordinates.
pub type EuclidPoint = Vector3<f64>;

/// Error raised by similarity-group operations.
#[derive(Debug, Error, PartialEq)]
pub enum EuclidError {
    /// The linear block recovered from a matrix exponential was singular.
    /// This cannot happen for a true exponential and signals corruption.
    #[error("singular linear block in exponential decomposition (det = {0})")]
    SingularBlock(f64),
    /// A skew matrix was expected but the symmetric part was too large.
    #[error("matrix is not skew-symmetric (|V + V^T| = {0})")]
    NotSkew(f64),
}

/// Similarity transformation `x -> alpha * A x + v` of `E^3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfElement {
    /// Homothety factor, nonzero.
    pub alpha: f64,
    /// Orthogonal part.
    pub rotation: Matrix3<f64>,
    /// Translation part.
    pub translation: Vector3<f64>,
}

impl ConfElement {
    pub fn new(alpha: f64, rotation: Matrix3<f64>, translation: Vector3<f64>) -> Self {
        Self {
            alpha,
            rotation,
            translation,
        }
    }

    /// The neutral element `(1, Id, 0)`.
    pub fn identity() -> Self {
        Self::new(1.0, Matrix3::identity(), Vector3::zeros())
    }

    /// Pure translation by `v`.
    pub fn translation(v: Vector3<f64>) -> Self {
        Self::new(1.0, Matrix3::identity(), v)
    }

    /// Pure homothety by `alpha`.
    pub fn homothety(alpha: f64) -> Self {
        Self::new(alpha, Matrix3::identity(), Vector3::zeros())
    }

    /// Pure orthogonal transformation.
    pub fn rotation(a: Matrix3<f64>) -> Self {
        Self::new(1.0, a, Vector3::zeros())
    }

    /// Group law `(alpha,A,v).(beta,B,w) = (alpha beta, AB, alpha A w + v)`.
    pub fn compose(&self, other: &ConfElement) -> ConfElement {
        ConfElement::new(
            self.alpha * other.alpha,
            self.rotation * other.rotation,
            self.alpha * (self.rotation * other.translation) + self.translation,
        )
    }

    /// Group inverse `(1/alpha, A^T, -(1/alpha) A^T v)`.
    pub fn inverse(&self) -> ConfElement {
        let inv_alpha = 1.0 / self.alpha;
        let at = self.rotation.transpose();
        ConfElement::new(inv_alpha, at, -inv_alpha * (at * self.translation))
    }

    /// Action on a point: `alpha * A p + v`.
    pub fn act(&self, p: &EuclidPoint) -> EuclidPoint {
        self.alpha * (self.rotation * p) + self.translation
    }

    /// Adjoint action on the Lie algebra: for `g = (r, A, v)` and
    /// `xi = b + W + w`,
    /// `Ad_g xi = b + A W A^{-1} + (r A w - b v - A W A^{-1} v)`.
    pub fn adjoint(&self, xi: &ConfAlgElement) -> ConfAlgElement {
        let conj = self.rotation * xi.skew * self.rotation.transpose();
        let trans = self.alpha * (self.rotation * xi.translation)
            - xi.scalar * self.translation
            - conj * self.translation;
        ConfAlgElement::from_skew_parts(xi.scalar, conj, trans)
    }

    /// Deviation of the orthogonal part from orthogonality, `|A^T A - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.rotation.transpose() * self.rotation - Matrix3::identity()).norm()
    }
}

/// Element `a + V + w` of the similarity algebra: scalar homothety
/// coefficient, skew rotation generator and translation generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfAlgElement {
    pub scalar: f64,
    pub skew: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

impl ConfAlgElement {
    /// Builds an element from the scalar coefficient, the coefficients
    /// `(c1, c2, c3)` of `X, Y, Z`, and the translation generator.
    pub fn new(scalar: f64, rot_coeffs: Vector3<f64>, translation: Vector3<f64>) -> Self {
        Self {
            scalar,
            skew: skew_from_coeffs(&rot_coeffs),
            translation,
        }
    }

    /// Builds an element from an explicit skew matrix without validation;
    /// use [`ConfAlgElement::try_from_matrix`] for checked construction.
    pub fn from_skew_parts(scalar: f64, skew: Matrix3<f64>, translation: Vector3<f64>) -> Self {
        Self {
            scalar,
            skew,
            translation,
        }
    }

    /// Checked construction: fails when `V + V^T` is not negligible.
    pub fn try_from_matrix(
        scalar: f64,
        skew: Matrix3<f64>,
        translation: Vector3<f64>,
        eps: f64,
    ) -> Result<Self, EuclidError> {
        let defect = (skew + skew.transpose()).norm();
        if defect > eps {
            return Err(EuclidError::NotSkew(defect));
        }
        Ok(Self::from_skew_parts(scalar, skew, translation))
    }

    pub fn zero() -> Self {
        Self::from_skew_parts(0.0, Matrix3::zeros(), Vector3::zeros())
    }

    /// The homothety generator `lambda` (scalar 1).
    pub fn lambda() -> Self {
        Self::new(1.0, Vector3::zeros(), Vector3::zeros())
    }

    /// The rotation generator `X`.
    pub fn rot_x() -> Self {
        Self::new(0.0, Vector3::new(1.0, 0.0, 0.0), Vector3::zeros())
    }

    /// The rotation generator `Y`.
    pub fn rot_y() -> Self {
        Self::new(0.0, Vector3::new(0.0, 1.0, 0.0), Vector3::zeros())
    }

    /// The rotation generator `Z`.
    pub fn rot_z() -> Self {
        Self::new(0.0, Vector3::new(0.0, 0.0, 1.0), Vector3::zeros())
    }

    /// Pure translation generator.
    pub fn trans(w: Vector3<f64>) -> Self {
        Self::new(0.0, Vector3::zeros(), w)
    }

    /// Coefficients of `X, Y, Z` in the skew part.
    pub fn rot_coeffs(&self) -> Vector3<f64> {
        skew_coeffs(&self.skew)
    }

    /// Flattened coordinates `(a, c1, c2, c3, w1, w2, w3)`; the minimal
    /// faithful coordinates used for every rank decision.
    pub fn coords(&self) -> [f64; 7] {
        let c = self.rot_coeffs();
        let w = self.translation;
        [self.scalar, c[0], c[1], c[2], w[0], w[1], w[2]]
    }

    pub fn from_coords(c: &[f64; 7]) -> Self {
        Self::new(
            c[0],
            Vector3::new(c[1], c[2], c[3]),
            Vector3::new(c[4], c[5], c[6]),
        )
    }

    /// Lie bracket
    /// `[a + V + v, b + W + w] = [V,W] + (V w + a w - W v - b v)`.
    pub fn bracket(&self, other: &ConfAlgElement) -> ConfAlgElement {
        let skew = self.skew * other.skew - other.skew * self.skew;
        let trans = self.skew * other.translation + self.scalar * other.translation
            - other.skew * self.translation
            - other.scalar * self.translation;
        ConfAlgElement::from_skew_parts(0.0, skew, trans)
    }

    /// One-parameter subgroup through the identity: the matrix exponential
    /// of the homogeneous affine representation
    /// `[[a I + V, w], [0, 0]] * t`, decomposed back into `(alpha, A, v)`
    /// with `alpha = cbrt(det)` of the linear block.
    pub fn exp(&self, t: f64) -> ConfElement {
        self.try_exp(t).expect("exponential decomposition")
    }

    /// Fallible variant of [`ConfAlgElement::exp`].
    pub fn try_exp(&self, t: f64) -> Result<ConfElement, EuclidError> {
        let mut hom = Matrix4::zeros();
        let lin = Matrix3::from_diagonal_element(self.scalar) + self.skew;
        hom.fixed_view_mut::<3, 3>(0, 0).copy_from(&(t * lin));
        hom.fixed_view_mut::<3, 1>(0, 3)
            .copy_from(&(t * self.translation));
        let e = hom.exp();
        let block = e.fixed_view::<3, 3>(0, 0).into_owned();
        let det = block.determinant();
        if det.abs() < f64::EPSILON {
            return Err(EuclidError::SingularBlock(det));
        }
        let alpha = det.cbrt();
        Ok(ConfElement::new(
            alpha,
            block / alpha,
            e.fixed_view::<3, 1>(0, 3).into_owned(),
        ))
    }

    /// Value at `p` of the vector field generating the flow
    /// `t -> exp(t xi).p`, namely `a p + V p + w`.
    pub fn generator_field(&self, p: &EuclidPoint) -> Vector3<f64> {
        self.scalar * p + self.skew * p + self.translation
    }

    /// Projection `a + V + v -> a + V` onto the linear part.
    pub fn project_l(&self) -> ConfAlgElement {
        ConfAlgElement::from_skew_parts(self.scalar, self.skew, Vector3::zeros())
    }

    /// Projection `a + V + v -> V` onto the rotation part.
    pub fn project_li(&self) -> Matrix3<f64> {
        self.skew
    }

    /// Projection `a + V + v -> a` onto the homothety part.
    pub fn project_h(&self) -> f64 {
        self.scalar
    }

    pub fn scale(&self, c: f64) -> ConfAlgElement {
        ConfAlgElement::from_skew_parts(c * self.scalar, c * self.skew, c * self.translation)
    }

    pub fn add(&self, other: &ConfAlgElement) -> ConfAlgElement {
        ConfAlgElement::from_skew_parts(
            self.scalar + other.scalar,
            self.skew + other.skew,
            self.translation + other.translation,
        )
    }
}

/// Skew matrix `c1 X + c2 Y + c3 Z`.
pub fn skew_from_coeffs(c: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(
        0.0, c[0], c[1], //
        -c[0], 0.0, c[2], //
        -c[1], -c[2], 0.0,
    )
}

/// Coefficients of `X, Y, Z` in a skew matrix.
pub fn skew_coeffs(v: &Matrix3<f64>) -> Vector3<f64> {
    Vector3::new(v[(0, 1)], v[(0, 2)], v[(1, 2)])
}

/// Rotation axis of the skew matrix `c1 X + c2 Y + c3 Z`: the kernel
/// direction `(c3, -c2, c1)`. Equivariant under conjugation by `SO(3)`.
pub fn skew_axis(v: &Matrix3<f64>) -> Vector3<f64> {
    let c = skew_coeffs(v);
    Vector3::new(c[2], -c[1], c[0])
}

/// Rotation with the given axis direction and angle (Rodrigues formula).
pub fn rotation_about_axis(axis: &Vector3<f64>, angle: f64) -> Matrix3<f64> {
    let n = axis.norm();
    if n == 0.0 {
        return Matrix3::identity();
    }
    let u = axis / n;
    // hat(u) w.r.t. the cross product: hat(u) x = u x x
    let hat = Matrix3::new(
        0.0, -u[2], u[1], //
        u[2], 0.0, -u[0], //
        -u[1], u[0], 0.0,
    );
    Matrix3::identity() + angle.sin() * hat + (1.0 - angle.cos()) * (hat * hat)
}

/// Special-orthogonal matrix carrying the direction of `from` to the
/// direction of `to`. Both inputs must be nonzero.
pub fn rotation_between(from: &Vector3<f64>, to: &Vector3<f64>) -> Matrix3<f64> {
    let f = from / from.norm();
    let t = to / to.norm();
    let k = f.cross(&t);
    let s = k.norm();
    let c = f.dot(&t);
    if s < 1e-14 {
        if c > 0.0 {
            return Matrix3::identity();
        }
        // antipodal: half-turn about any axis orthogonal to f
        let helper = if f[0].abs() < 0.9 {
            Vector3::new(1.0, 0.0, 0.0)
        } else {
            Vector3::new(0.0, 1.0, 0.0)
        };
        let axis = f.cross(&helper);
        return rotation_about_axis(&axis, std::f64::consts::PI);
    }
    rotation_about_axis(&k, s.atan2(c))
}
