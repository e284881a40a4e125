//! Linear-algebra layer over algebra elements: spans, numerical rank,
//! bracket-closure checking, translation parts and projection images.

use nalgebra::{DVector, Vector3};
use thiserror::Error;

use crate::euclid::ConfAlgElement;
use crate::euclid::ConfElement;
use crate::linalg;
use crate::lorentz::LorentzAlgElement;

/// Which of the two models a subalgebra lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Euclid,
    Lorentz,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Model::Euclid => write!(f, "euclid"),
            Model::Lorentz => write!(f, "lorentz"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SubalgebraError {
    #[error("expected a {expected} subalgebra, got {got}")]
    ModelMismatch { expected: Model, got: Model },
    #[error("generators do not span or close under the bracket (max residual {residual:.3e})")]
    NotASubalgebra { residual: f64 },
    #[error("rotation projection has dimension 2, impossible for a subalgebra; tolerance failure")]
    InternalInconsistency,
}

/// Algebra element that can be flattened to coordinates for rank decisions.
pub trait AlgebraElement: Clone {
    const MODEL: Model;
    fn flat(&self) -> DVector<f64>;
    fn from_flat(v: &DVector<f64>) -> Self;
    fn bracket_with(&self, other: &Self) -> Self;
}

impl AlgebraElement for ConfAlgElement {
    const MODEL: Model = Model::Euclid;

    fn flat(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.coords())
    }

    fn from_flat(v: &DVector<f64>) -> Self {
        let mut c = [0.0; 7];
        c.copy_from_slice(v.as_slice());
        ConfAlgElement::from_coords(&c)
    }

    fn bracket_with(&self, other: &Self) -> Self {
        self.bracket(other)
    }
}

impl AlgebraElement for LorentzAlgElement {
    const MODEL: Model = Model::Lorentz;

    fn flat(&self) -> DVector<f64> {
        DVector::from_row_slice(self.matrix().transpose().as_slice())
    }

    fn from_flat(v: &DVector<f64>) -> Self {
        LorentzAlgElement::from_matrix_unchecked(nalgebra::Matrix5::from_row_slice(v.as_slice()))
    }

    fn bracket_with(&self, other: &Self) -> Self {
        self.bracket(other)
    }
}

/// Independence and bracket-closure diagnostics for a generator list.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    /// Number of generators supplied.
    pub generators: usize,
    /// Numerical rank of the flattened generator set.
    pub rank: usize,
    /// Largest distance of any bracket `[b_i, b_j]` from the span,
    /// normalised by `max(1, |bracket|)`.
    pub max_bracket_residual: f64,
}

impl ClosureReport {
    pub fn passes(&self, rank_tol: f64) -> bool {
        self.rank == self.generators && self.max_bracket_residual <= rank_tol
    }
}

/// Ordered basis of a Lie subalgebra in one of the two models.
#[derive(Clone, Debug)]
pub struct Subalgebra<T: AlgebraElement> {
    basis: Vec<T>,
}

pub type EuclidSubalgebra = Subalgebra<ConfAlgElement>;
pub type LorentzSubalgebra = Subalgebra<LorentzAlgElement>;

impl<T: AlgebraElement> Subalgebra<T> {
    pub fn new(basis: Vec<T>) -> Self {
        Self { basis }
    }

    pub fn model(&self) -> Model {
        T::MODEL
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[T] {
        &self.basis
    }

    pub fn flat_basis(&self) -> Vec<DVector<f64>> {
        self.basis.iter().map(|b| b.flat()).collect()
    }

    /// Independence rank and worst bracket residual of the generator set.
    pub fn closure_check(&self, rank_tol: f64) -> ClosureReport {
        let flats = self.flat_basis();
        let (onb, rank) = linalg::orthonormal_span(&flats, rank_tol);
        let mut max_res = 0.0f64;
        for i in 0..self.basis.len() {
            for j in (i + 1)..self.basis.len() {
                let br = self.basis[i].bracket_with(&self.basis[j]).flat();
                max_res = max_res.max(linalg::residual_from_span(&onb, &br));
            }
        }
        ClosureReport {
            generators: self.basis.len(),
            rank,
            max_bracket_residual: max_res,
        }
    }

    /// Errors unless the generators are independent and bracket-closed.
    pub fn require_closed(&self, rank_tol: f64) -> Result<(), SubalgebraError> {
        let report = self.closure_check(rank_tol);
        if report.passes(rank_tol) {
            Ok(())
        } else {
            Err(SubalgebraError::NotASubalgebra {
                residual: report.max_bracket_residual.max(
                    if report.rank < report.generators { 1.0 } else { 0.0 },
                ),
            })
        }
    }

    /// The element `sum_j c_j b_j`.
    pub fn combination(&self, coeffs: &DVector<f64>) -> T {
        let flats = self.flat_basis();
        let mut acc = DVector::zeros(flats[0].len());
        for (c, f) in coeffs.iter().zip(flats.iter()) {
            acc += *c * f;
        }
        T::from_flat(&acc)
    }
}

/// Which projection of the similarity algebra to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// `a + V + v -> a + V` (4 target coordinates).
    Linear,
    /// `a + V + v -> V` (3 target coordinates).
    Rotation,
    /// `a + V + v -> a` (1 target coordinate).
    Homothety,
}

/// Image of a subalgebra under one of the projections, in the coordinates
/// of the target.
#[derive(Clone, Debug)]
pub struct ProjectionImage {
    pub basis: Vec<DVector<f64>>,
    pub dim: usize,
}

impl EuclidSubalgebra {
    /// Applies `Ad_g` to every basis element.
    pub fn adjoint(&self, g: &ConfElement) -> EuclidSubalgebra {
        Subalgebra::new(self.basis.iter().map(|b| g.adjoint(b)).collect())
    }

    /// Basis of the translation part `T(g) = ker(p_l) ∩ g`, the ideal of
    /// pure translations.
    pub fn translation_part(&self, rank_tol: f64) -> Vec<Vector3<f64>> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        // linear-part coordinates (a, c1, c2, c3) of each generator,
        // as columns
        let lin = nalgebra::DMatrix::from_fn(4, self.basis.len(), |i, j| {
            let c = self.basis[j].coords();
            c[i]
        });
        let kernel = linalg::null_space(&lin, rank_tol);
        kernel
            .iter()
            .map(|coeffs| self.combination(coeffs).translation)
            .collect()
    }

    /// Image of the subalgebra under the chosen projection. Fails with
    /// `InternalInconsistency` when the rotation image has dimension 2,
    /// which is impossible for a genuine subalgebra.
    pub fn projection_image(
        &self,
        which: Projection,
        rank_tol: f64,
    ) -> Result<ProjectionImage, SubalgebraError> {
        let vectors: Vec<DVector<f64>> = self
            .basis
            .iter()
            .map(|b| {
                let c = b.coords();
                match which {
                    Projection::Linear => DVector::from_column_slice(&c[0..4]),
                    Projection::Rotation => DVector::from_column_slice(&c[1..4]),
                    Projection::Homothety => DVector::from_column_slice(&c[0..1]),
                }
            })
            .collect();
        let (onb, dim) = linalg::orthonormal_span(&vectors, rank_tol);
        if which == Projection::Rotation && dim == 2 {
            return Err(SubalgebraError::InternalInconsistency);
        }
        let basis = (0..dim).map(|j| onb.column(j).into_owned()).collect();
        Ok(ProjectionImage { basis, dim })
    }
}

/// Runtime-dispatched subalgebra for interfaces that accept either model.
#[derive(Clone, Debug)]
pub enum ModelSubalgebra {
    Euclid(EuclidSubalgebra),
    Lorentz(LorentzSubalgebra),
}

impl ModelSubalgebra {
    pub fn model(&self) -> Model {
        match self {
            ModelSubalgebra::Euclid(_) => Model::Euclid,
            ModelSubalgebra::Lorentz(_) => Model::Lorentz,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ModelSubalgebra::Euclid(s) => s.dim(),
            ModelSubalgebra::Lorentz(s) => s.dim(),
        }
    }

    pub fn closure_check(&self, rank_tol: f64) -> ClosureReport {
        match self {
            ModelSubalgebra::Euclid(s) => s.closure_check(rank_tol),
            ModelSubalgebra::Lorentz(s) => s.closure_check(rank_tol),
        }
    }

    pub fn as_euclid(&self) -> Result<&EuclidSubalgebra, SubalgebraError> {
        match self {
            ModelSubalgebra::Euclid(s) => Ok(s),
            ModelSubalgebra::Lorentz(_) => Err(SubalgebraError::ModelMismatch {
                expected: Model::Euclid,
                got: Model::Lorentz,
            }),
        }
    }

    pub fn as_lorentz(&self) -> Result<&LorentzSubalgebra, SubalgebraError> {
        match self {
            ModelSubalgebra::Lorentz(s) => Ok(s),
            ModelSubalgebra::Euclid(_) => Err(SubalgebraError::ModelMismatch {
                expected: Model::Lorentz,
                got: Model::Euclid,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::Vector3;

    fn e(i: usize) -> ConfAlgElement {
        let mut w = Vector3::zeros();
        w[i] = 1.0;
        ConfAlgElement::trans(w)
    }

    #[test]
    fn lambda_and_x_close() {
        let g = Subalgebra::new(vec![ConfAlgElement::lambda(), ConfAlgElement::rot_x()]);
        let report = g.closure_check(1e-8);
        assert!(report.passes(1e-8), "residual {}", report.max_bracket_residual);
    }

    #[test]
    fn x_and_y_do_not_close() {
        let g = Subalgebra::new(vec![ConfAlgElement::rot_x(), ConfAlgElement::rot_y()]);
        let report = g.closure_check(1e-8);
        assert!(!report.passes(1e-8));
        assert!(report.max_bracket_residual > 0.5);
    }

    #[test]
    fn translations_close() {
        let g = Subalgebra::new(vec![e(0), e(1), e(2)]);
        assert!(g.closure_check(1e-8).passes(1e-8));
    }

    #[test]
    fn translation_part_of_full_split_algebra() {
        let g = Subalgebra::new(vec![
            ConfAlgElement::lambda(),
            ConfAlgElement::rot_x(),
            e(0),
            e(1),
            e(2),
        ]);
        let t = g.translation_part(1e-8);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn translation_part_of_screw_homothety_line() {
        // span{a + X, e3}: the translation part is the line through e3
        let na = ConfAlgElement::new(1.0, Vector3::new(1.0, 0.0, 0.0), Vector3::zeros());
        let g = Subalgebra::new(vec![na, e(2)]);
        let t = g.translation_part(1e-8);
        assert_eq!(t.len(), 1);
        let dir = t[0] / t[0].norm();
        assert_relative_eq!(dir[2].abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn translation_part_trivial_for_graph_algebra() {
        // span{lambda + u, X + X(u)} has trivial translation part
        let u = Vector3::new(0.4, -0.2, 1.0);
        let xu = ConfAlgElement::rot_x().skew * u;
        let g = Subalgebra::new(vec![
            ConfAlgElement::new(1.0, Vector3::zeros(), u),
            ConfAlgElement::new(0.0, Vector3::new(1.0, 0.0, 0.0), xu),
        ]);
        assert!(g.closure_check(1e-8).passes(1e-8));
        assert_eq!(g.translation_part(1e-8).len(), 0);
    }

    #[test]
    fn projection_images() {
        let full_rot = Subalgebra::new(vec![
            ConfAlgElement::rot_x(),
            ConfAlgElement::rot_y(),
            ConfAlgElement::rot_z(),
            e(0),
            e(1),
            e(2),
        ]);
        assert_eq!(
            full_rot
                .projection_image(Projection::Rotation, 1e-8)
                .unwrap()
                .dim,
            3
        );

        let na = ConfAlgElement::new(2.0, Vector3::new(1.0, 0.0, 0.0), Vector3::zeros());
        let screw = Subalgebra::new(vec![na, e(2)]);
        assert_eq!(
            screw
                .projection_image(Projection::Homothety, 1e-8)
                .unwrap()
                .dim,
            1
        );

        let plane = Subalgebra::new(vec![e(0), e(1)]);
        for which in [Projection::Linear, Projection::Rotation, Projection::Homothety] {
            assert_eq!(plane.projection_image(which, 1e-8).unwrap().dim, 0);
        }
    }

    #[test]
    fn rotation_projection_of_dim_two_is_inconsistent() {
        // {X, Y} is not a subalgebra; the projection guard still fires
        let g = Subalgebra::new(vec![ConfAlgElement::rot_x(), ConfAlgElement::rot_y()]);
        assert!(matches!(
            g.projection_image(Projection::Rotation, 1e-8),
            Err(SubalgebraError::InternalInconsistency)
        ));
    }

    #[test]
    fn translation_ideal_property() {
        // [g, T(g)] lands back in T(g)
        let na = ConfAlgElement::new(1.5, Vector3::new(1.0, 0.0, 0.0), Vector3::zeros());
        let g = Subalgebra::new(vec![na, e(0), e(1)]);
        let t = g.translation_part(1e-8);
        assert_eq!(t.len(), 2);
        let t_flat: Vec<_> = t
            .iter()
            .map(|w| ConfAlgElement::trans(*w).flat())
            .collect();
        let (onb, _) = linalg::orthonormal_span(&t_flat, 1e-8);
        for b in g.basis() {
            for w in &t {
                let br = b.bracket(&ConfAlgElement::trans(*w));
                assert!(linalg::residual_from_span(&onb, &br.flat()) < 1e-8);
            }
        }
    }

    #[test]
    fn linear_projection_image_is_bracket_closed() {
        // the image of a closed subalgebra under a morphism closes too
        for label in crate::catalog::EuclidLabel::all() {
            let alg = Subalgebra::new(crate::catalog::euclid_generators(label, 1.0));
            let img = alg.projection_image(Projection::Linear, 1e-8).unwrap();
            let lifted: Vec<ConfAlgElement> = img
                .basis
                .iter()
                .map(|c| {
                    ConfAlgElement::new(
                        c[0],
                        Vector3::new(c[1], c[2], c[3]),
                        Vector3::zeros(),
                    )
                })
                .collect();
            if lifted.is_empty() {
                continue;
            }
            let image_alg = Subalgebra::new(lifted);
            let report = image_alg.closure_check(1e-8);
            assert!(
                report.passes(1e-8),
                "{label}: image closure residual {:.3e}",
                report.max_bracket_residual
            );
        }
    }

    #[test]
    fn model_mismatch_is_reported() {
        let g = ModelSubalgebra::Euclid(Subalgebra::new(vec![e(0), e(1)]));
        assert!(matches!(
            g.as_lorentz(),
            Err(SubalgebraError::ModelMismatch { .. })
        ));
    }
}
