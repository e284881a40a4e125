//! Conjugacy classification of subalgebras of the similarity algebra.
//!
//! Given a bracket-closed subalgebra `g` of `(R (+) so(3)) (+) R^3` with
//! `dim g >= 2`, [`classify`] decides which of the twenty catalog classes
//! it belongs to and returns an explicit group element `h` with
//! `Ad_h(g)` equal to the catalog representative, plus the achieved
//! subspace residual.
//!
//! The decision tree branches on the dimension `d` of the rotation
//! projection (3, 1 or 0; 2 is impossible), the translation part, and the
//! dimensions of the linear and homothety projections, conjugating as it
//! goes: a rotation aligning the rotation axis (or the translation part)
//! with the standard position, a translation killing the residual
//! translation twists, and a homothety normalising the screw pitch. The
//! screw parameter is reported as `|a| > 0`: conjugation by the
//! reflection `diag(1,-1,1)` identifies the parameter with its negative.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use thiserror::Error;

use crate::catalog::{euclid_generators, EuclidLabel};
use crate::euclid::{
    rotation_between, skew_axis, skew_from_coeffs, ConfAlgElement, ConfElement,
};
use crate::linalg;
use crate::subalgebra::{EuclidSubalgebra, Projection, Subalgebra, SubalgebraError};

#[derive(Debug, Error, PartialEq)]
pub enum ClassifyError {
    #[error("generators do not form a subalgebra (residual {residual:.3e})")]
    NotASubalgebra { residual: f64 },
    #[error("classification needs dimension >= 2, got {dim}")]
    DimensionTooSmall { dim: usize },
    #[error("internal inconsistency: {0}; indicates a tolerance failure")]
    InternalInconsistency(String),
    #[error("cannot align the axis of a vanishing rotation generator")]
    ZeroInput,
    #[error("the translation normalizer needs a != 0")]
    SingularCase,
}

/// Outcome of a classification.
#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub label: EuclidLabel,
    /// Screw parameter `|a|`, present exactly for the `Na` family.
    pub parameter: Option<f64>,
    /// Group element with `Ad_h(input) = catalog representative`.
    pub conjugator: ConfElement,
    /// Largest principal-angle sine between the conjugated span and the
    /// catalog span.
    pub residual: f64,
}

/// Special-orthogonal `R` with `R W R^T = c X`, `c > 0`, for a nonzero
/// skew matrix `W`: rotates the axis of `W` onto `e3`.
pub fn align_rotation_axis(w: &Matrix3<f64>, tol: f64) -> Result<Matrix3<f64>, ClassifyError> {
    let axis = skew_axis(w);
    if axis.norm() <= tol {
        return Err(ClassifyError::ZeroInput);
    }
    let r = rotation_between(&axis, &Vector3::z());
    // conjugation equivariance guarantees a positive X-coefficient
    let aligned = r * w * r.transpose();
    let off_axis = aligned[(0, 2)].abs().max(aligned[(1, 2)].abs());
    if aligned[(0, 1)] <= 0.0 || off_axis > 1e-9 * axis.norm() {
        return Err(ClassifyError::InternalInconsistency(
            "axis alignment failed".into(),
        ));
    }
    Ok(r)
}

/// Unique solution of `u - a x - X(x) = 0` for `a != 0`:
/// `x = ((a u1 - u2)/(a^2+1), (a u2 + u1)/(a^2+1), u3/a)`.
pub fn solve_translation_normalizer(a: f64, u: &Vector3<f64>) -> Result<Vector3<f64>, ClassifyError> {
    if a == 0.0 {
        return Err(ClassifyError::SingularCase);
    }
    let d = a * a + 1.0;
    Ok(Vector3::new(
        (a * u[0] - u[1]) / d,
        (a * u[1] + u[0]) / d,
        u[2] / a,
    ))
}

/// Working state: the partially conjugated algebra and the accumulated
/// conjugator.
struct Normalizer {
    alg: EuclidSubalgebra,
    conjugator: ConfElement,
    tol: f64,
}

impl Normalizer {
    fn apply(&mut self, c: ConfElement) {
        self.alg = self.alg.adjoint(&c);
        self.conjugator = c.compose(&self.conjugator);
    }

    fn translation_dim(&self) -> usize {
        self.alg.translation_part(self.tol).len()
    }

    fn projection_dim(&self, which: Projection) -> Result<usize, ClassifyError> {
        match self.alg.projection_image(which, self.tol) {
            Ok(img) => Ok(img.dim),
            Err(SubalgebraError::InternalInconsistency) => Err(
                ClassifyError::InternalInconsistency("rotation projection has dimension 2".into()),
            ),
            Err(e) => Err(ClassifyError::InternalInconsistency(e.to_string())),
        }
    }

    /// The element of the algebra whose linear part `(a, c1, c2, c3)` is
    /// `target`, found by least squares over the basis.
    fn element_with_linear_part(
        &self,
        target: [f64; 4],
    ) -> Result<ConfAlgElement, ClassifyError> {
        let n = self.alg.dim();
        let lin = DMatrix::from_fn(4, n, |i, j| self.alg.basis()[j].coords()[i]);
        let rhs = DVector::from_column_slice(&target);
        let coeffs = linalg::solve_least_squares(&lin, &rhs, self.tol);
        let residual = (&lin * &coeffs - &rhs).norm();
        if residual > self.tol * 10.0 {
            return Err(ClassifyError::InternalInconsistency(format!(
                "no element with the required linear part (residual {residual:.3e})"
            )));
        }
        Ok(self.alg.combination(&coeffs))
    }

    /// Screw slope of the 1-dimensional linear projection: the ratio of
    /// the scalar part to the X-coefficient. Valid after axis alignment.
    fn screw_slope(&self) -> Result<f64, ClassifyError> {
        let img = self
            .alg
            .projection_image(Projection::Linear, self.tol)
            .map_err(|e| ClassifyError::InternalInconsistency(e.to_string()))?;
        if img.dim != 1 {
            return Err(ClassifyError::InternalInconsistency(format!(
                "expected a line as linear projection, got dimension {}",
                img.dim
            )));
        }
        let v = &img.basis[0];
        if v[1].abs() <= self.tol {
            return Err(ClassifyError::InternalInconsistency(
                "linear projection line carries no rotation".into(),
            ));
        }
        Ok(v[0] / v[1])
    }
}

/// Relation target for the translation-normalizer verification.
enum Remainder {
    InPlane,
    InLine,
}

fn verify_normalizer_relation(
    a: f64,
    u: &Vector3<f64>,
    x: &Vector3<f64>,
    target: Remainder,
    tol: f64,
) -> Result<(), ClassifyError> {
    let x_skew = skew_from_coeffs(&Vector3::new(1.0, 0.0, 0.0));
    let rel = u - a * x - x_skew * x;
    let scale = u.norm().max(1.0);
    let ok = match target {
        Remainder::InPlane => rel[2].abs() <= tol * scale,
        Remainder::InLine => rel.fixed_rows::<2>(0).norm() <= tol * scale,
    };
    if ok {
        Ok(())
    } else {
        Err(ClassifyError::InternalInconsistency(format!(
            "translation normalizer does not satisfy its defining relation (|rel| = {:.3e})",
            rel.norm()
        )))
    }
}

/// The reflection `diag(1,-1,1)` conjugating the screw parameter to its
/// absolute value.
fn parameter_reflection() -> ConfElement {
    ConfElement::rotation(Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0)))
}

/// Decides the conjugacy class of a closed subalgebra with `dim >= 2`.
pub fn classify(g: &EuclidSubalgebra, rank_tol: f64) -> Result<ClassificationResult, ClassifyError> {
    let report = g.closure_check(rank_tol);
    if !report.passes(rank_tol) {
        return Err(ClassifyError::NotASubalgebra {
            residual: report.max_bracket_residual,
        });
    }
    if g.dim() < 2 {
        return Err(ClassifyError::DimensionTooSmall { dim: g.dim() });
    }

    let mut state = Normalizer {
        alg: g.clone(),
        conjugator: ConfElement::identity(),
        tol: rank_tol,
    };

    let d = state.projection_dim(Projection::Rotation)?;
    let (label, parameter) = match d {
        3 => classify_full_rotation(&mut state)?,
        1 => classify_single_rotation(&mut state)?,
        0 => classify_no_rotation(&mut state)?,
        other => {
            return Err(ClassifyError::InternalInconsistency(format!(
                "rotation projection has impossible dimension {other}"
            )))
        }
    };

    // constructive verification: the conjugated span must equal the
    // catalog span
    let target = Subalgebra::new(euclid_generators(label, parameter.unwrap_or(1.0)));
    let residual = span_residual(&state.alg, &target, rank_tol)?;
    if residual > rank_tol {
        return Err(ClassifyError::InternalInconsistency(format!(
            "no branch matched: residual {residual:.3e} against {label}"
        )));
    }
    Ok(ClassificationResult {
        label,
        parameter,
        conjugator: state.conjugator,
        residual,
    })
}

fn span_residual(
    a: &EuclidSubalgebra,
    b: &EuclidSubalgebra,
    tol: f64,
) -> Result<f64, ClassifyError> {
    let (qa, ra) = linalg::orthonormal_span(&a.flat_basis(), tol);
    let (qb, rb) = linalg::orthonormal_span(&b.flat_basis(), tol);
    if ra != rb {
        return Err(ClassifyError::InternalInconsistency(format!(
            "no branch matched: dimension {ra} vs catalog dimension {rb}"
        )));
    }
    linalg::max_principal_sine(&qa, &qb).ok_or_else(|| {
        ClassifyError::InternalInconsistency("span comparison failed".into())
    })
}

/// `dim p_li = 3`: the rotation projection is all of `so(3)`.
fn classify_full_rotation(
    state: &mut Normalizer,
) -> Result<(EuclidLabel, Option<f64>), ClassifyError> {
    let t_dim = state.translation_dim();
    let pl_dim = state.projection_dim(Projection::Linear)?;
    match (t_dim, pl_dim) {
        (3, 4) => Ok((EuclidLabel::HomSo3R3, None)),
        (3, 3) => Ok((EuclidLabel::So3R3, None)),
        (0, 4) => {
            // kill the translation twist of the homothety generator; the
            // closure relations then clear the rotation twists too
            let u = state.element_with_linear_part([1.0, 0.0, 0.0, 0.0])?.translation;
            state.apply(ConfElement::translation(u));
            Ok((EuclidLabel::HomSo3, None))
        }
        (0, 3) => {
            // graph of a 1-cocycle over so(3); solve W(u) = v_W for the
            // three basis rotations at once
            let vx = state.element_with_linear_part([0.0, 1.0, 0.0, 0.0])?.translation;
            let vy = state.element_with_linear_part([0.0, 0.0, 1.0, 0.0])?.translation;
            let vz = state.element_with_linear_part([0.0, 0.0, 0.0, 1.0])?.translation;
            let mut stacked = DMatrix::zeros(9, 3);
            let mut rhs = DVector::zeros(9);
            let mats = [
                ConfAlgElement::rot_x().skew,
                ConfAlgElement::rot_y().skew,
                ConfAlgElement::rot_z().skew,
            ];
            let twists = [vx, vy, vz];
            for (k, (m, v)) in mats.iter().zip(twists.iter()).enumerate() {
                for i in 0..3 {
                    for j in 0..3 {
                        stacked[(3 * k + i, j)] = m[(i, j)];
                    }
                    rhs[3 * k + i] = v[i];
                }
            }
            let u = linalg::solve_least_squares(&stacked, &rhs, state.tol);
            state.apply(ConfElement::translation(Vector3::new(u[0], u[1], u[2])));
            Ok((EuclidLabel::So3, None))
        }
        _ => Err(ClassifyError::InternalInconsistency(format!(
            "no branch for rotation dimension 3 with T-dim {t_dim}, linear dim {pl_dim}"
        ))),
    }
}

/// `dim p_li = 1`: align the rotation axis with `e3`, then branch on the
/// translation part and the linear projection.
fn classify_single_rotation(
    state: &mut Normalizer,
) -> Result<(EuclidLabel, Option<f64>), ClassifyError> {
    // representative of the rotation line, from the projection image
    let img = state
        .alg
        .projection_image(Projection::Rotation, state.tol)
        .map_err(|e| ClassifyError::InternalInconsistency(e.to_string()))?;
    let c = &img.basis[0];
    let w_rep = skew_from_coeffs(&Vector3::new(c[0], c[1], c[2]));
    let r = align_rotation_axis(&w_rep, state.tol)?;
    state.apply(ConfElement::rotation(r));

    let t_dim = state.translation_dim();
    verify_aligned_translation_part(state, t_dim)?;
    let pl_dim = state.projection_dim(Projection::Linear)?;

    match (t_dim, pl_dim) {
        (3, 2) => Ok((EuclidLabel::HomSo2R3, None)),
        (3, 1) => {
            let a = state.screw_slope()?;
            if a.abs() <= state.tol {
                Ok((EuclidLabel::So2R3, None))
            } else {
                Ok((EuclidLabel::NaR3, Some(canonicalize_sign(state, a))))
            }
        }
        (2, 2) => {
            let u = state.element_with_linear_part([1.0, 0.0, 0.0, 0.0])?.translation;
            state.apply(ConfElement::translation(u));
            Ok((EuclidLabel::HomSo2P, None))
        }
        (2, 1) => {
            let a = state.screw_slope()?;
            let gen = state.element_with_linear_part([a, 1.0, 0.0, 0.0])?;
            let u = gen.translation;
            if a.abs() > state.tol {
                let x = solve_translation_normalizer(a, &u)?;
                verify_normalizer_relation(a, &u, &x, Remainder::InPlane, state.tol)?;
                state.apply(ConfElement::translation(x));
                Ok((EuclidLabel::NaP, Some(canonicalize_sign(state, a))))
            } else {
                // a = 0: clear the in-plane twist, then decide on the
                // residual pitch u3
                let x = Vector3::new(-u[1], u[0], 0.0);
                verify_normalizer_relation(0.0, &u, &x, Remainder::InLine, state.tol)?;
                state.apply(ConfElement::translation(x));
                let pitch = state
                    .element_with_linear_part([0.0, 1.0, 0.0, 0.0])?
                    .translation[2];
                if pitch.abs() <= state.tol {
                    Ok((EuclidLabel::So2P, None))
                } else {
                    state.apply(ConfElement::homothety(1.0 / pitch));
                    Ok((EuclidLabel::ScrewP, None))
                }
            }
        }
        (1, 2) => {
            let u = state.element_with_linear_part([1.0, 0.0, 0.0, 0.0])?.translation;
            state.apply(ConfElement::translation(u));
            Ok((EuclidLabel::HomSo2L, None))
        }
        (1, 1) => {
            let a = state.screw_slope()?;
            let u = state.element_with_linear_part([a, 1.0, 0.0, 0.0])?.translation;
            if a.abs() > state.tol {
                let x = solve_translation_normalizer(a, &u)?;
                verify_normalizer_relation(a, &u, &x, Remainder::InLine, state.tol)?;
                state.apply(ConfElement::translation(x));
                Ok((EuclidLabel::NaL, Some(canonicalize_sign(state, a))))
            } else {
                let x = Vector3::new(-u[1], u[0], 0.0);
                verify_normalizer_relation(0.0, &u, &x, Remainder::InLine, state.tol)?;
                state.apply(ConfElement::translation(x));
                Ok((EuclidLabel::So2L, None))
            }
        }
        (0, 2) => {
            // closure forces the rotation twist to equal X(u); killing u
            // normalises both generators at once
            let u = state.element_with_linear_part([1.0, 0.0, 0.0, 0.0])?.translation;
            state.apply(ConfElement::translation(u));
            Ok((EuclidLabel::HomSo2, None))
        }
        _ => Err(ClassifyError::InternalInconsistency(format!(
            "no branch for rotation dimension 1 with T-dim {t_dim}, linear dim {pl_dim}"
        ))),
    }
}

/// `dim p_li = 0`: the algebra sits inside `R (+) R^3`; align the
/// translation part, then branch on the homothety projection.
fn classify_no_rotation(
    state: &mut Normalizer,
) -> Result<(EuclidLabel, Option<f64>), ClassifyError> {
    let t = state.alg.translation_part(state.tol);
    match t.len() {
        1 => {
            let r = rotation_between(&t[0], &Vector3::z());
            state.apply(ConfElement::rotation(r));
        }
        2 => {
            let normal = t[0].cross(&t[1]);
            if normal.norm() <= state.tol {
                return Err(ClassifyError::InternalInconsistency(
                    "degenerate translation plane".into(),
                ));
            }
            let r = rotation_between(&normal, &Vector3::z());
            state.apply(ConfElement::rotation(r));
        }
        _ => {}
    }

    let t_dim = t.len();
    let ph_dim = state.projection_dim(Projection::Homothety)?;
    match (ph_dim, t_dim) {
        (0, 2) => Ok((EuclidLabel::P, None)),
        (0, 3) => Ok((EuclidLabel::R3, None)),
        (1, 3) => Ok((EuclidLabel::HomR3, None)),
        (1, 2) => {
            let u = state.element_with_linear_part([1.0, 0.0, 0.0, 0.0])?.translation;
            state.apply(ConfElement::translation(u));
            Ok((EuclidLabel::HomP, None))
        }
        (1, 1) => {
            let u = state.element_with_linear_part([1.0, 0.0, 0.0, 0.0])?.translation;
            state.apply(ConfElement::translation(u));
            Ok((EuclidLabel::HomL, None))
        }
        _ => Err(ClassifyError::InternalInconsistency(format!(
            "no branch for rotation dimension 0 with homothety dim {ph_dim}, T-dim {t_dim}"
        ))),
    }
}

/// After axis alignment the translation part must be one of the
/// X-invariant subspaces: 0, the line `L`, the plane `P`, or all of `R^3`.
fn verify_aligned_translation_part(state: &Normalizer, t_dim: usize) -> Result<(), ClassifyError> {
    let t = state.alg.translation_part(state.tol);
    let ok = match t_dim {
        0 | 3 => true,
        1 => {
            let dir = t[0] / t[0].norm();
            dir.fixed_rows::<2>(0).norm() <= state.tol
        }
        2 => t
            .iter()
            .all(|w| w[2].abs() <= state.tol * w.norm().max(1.0)),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(ClassifyError::InternalInconsistency(format!(
            "translation part of dimension {t_dim} is not X-invariant after alignment"
        )))
    }
}

/// Reports `|a|`, appending the reflection conjugation when `a < 0`.
fn canonicalize_sign(state: &mut Normalizer, a: f64) -> f64 {
    if a < 0.0 {
        state.apply(parameter_reflection());
    }
    a.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{euclid_generators, EuclidLabel};
    use approx::assert_relative_eq;

    const RHO: f64 = 1e-8;

    fn alg(label: EuclidLabel, a: f64) -> EuclidSubalgebra {
        Subalgebra::new(euclid_generators(label, a))
    }

    #[test]
    fn translation_normalizer_solves_its_relation() {
        // a = 1, u = (1,1,0): the unique solution of u - a x - X(x) = 0
        // is (0, 1, 0)
        let x = solve_translation_normalizer(1.0, &Vector3::new(1.0, 1.0, 0.0)).unwrap();
        assert_relative_eq!(x, Vector3::new(0.0, 1.0, 0.0), epsilon = 1e-14);
        let x_mat = skew_from_coeffs(&Vector3::new(1.0, 0.0, 0.0));
        let rel = Vector3::new(1.0, 1.0, 0.0) - 1.0 * x - x_mat * x;
        assert!(rel.norm() < 1e-14);

        assert_relative_eq!(
            solve_translation_normalizer(1.0, &Vector3::zeros()).unwrap(),
            Vector3::zeros()
        );
        assert_eq!(
            solve_translation_normalizer(0.0, &Vector3::x()),
            Err(ClassifyError::SingularCase)
        );
    }

    #[test]
    fn translation_normalizer_random_relation() {
        let mut val = 0.37f64;
        let mut next = || {
            val = (val * 977.0 + 0.123).fract();
            4.0 * val - 2.0
        };
        for _ in 0..50 {
            let a = {
                let mut a = next();
                if a.abs() < 0.1 {
                    a += 0.5;
                }
                a
            };
            let u = Vector3::new(next(), next(), next());
            let x = solve_translation_normalizer(a, &u).unwrap();
            let x_mat = skew_from_coeffs(&Vector3::new(1.0, 0.0, 0.0));
            let rel = u - a * x - x_mat * x;
            assert!(rel.norm() < 1e-12, "relation violated: {rel:?}");
        }
    }

    #[test]
    fn align_axis_anchors() {
        // X is already aligned
        let r = align_rotation_axis(&ConfAlgElement::rot_x().skew, RHO).unwrap();
        assert!((r - Matrix3::identity()).norm() < 1e-12);

        // Z has axis e1; conjugation must land on a positive multiple of X
        let r = align_rotation_axis(&ConfAlgElement::rot_z().skew, RHO).unwrap();
        let aligned = r * ConfAlgElement::rot_z().skew * r.transpose();
        assert!(aligned[(0, 1)] > 0.999);
        assert!(aligned[(0, 2)].abs() < 1e-12 && aligned[(1, 2)].abs() < 1e-12);

        // -X needs a half-turn
        let neg_x = ConfAlgElement::rot_x().scale(-1.0).skew;
        let r = align_rotation_axis(&neg_x, RHO).unwrap();
        let aligned = r * neg_x * r.transpose();
        assert!((aligned - ConfAlgElement::rot_x().skew).norm() < 1e-12);

        assert_eq!(
            align_rotation_axis(&Matrix3::zeros(), RHO),
            Err(ClassifyError::ZeroInput)
        );
    }

    #[test]
    fn catalog_entries_classify_to_themselves() {
        for label in EuclidLabel::all() {
            let res = classify(&alg(label, 1.0), RHO).unwrap();
            assert_eq!(res.label, label, "idempotence of {label}");
            assert!(res.residual <= RHO, "{label}: residual {}", res.residual);
            if label.needs_parameter() {
                assert_relative_eq!(res.parameter.unwrap(), 1.0, epsilon = 1e-10);
            } else {
                assert!(res.parameter.is_none());
            }
            // conjugator is the identity coset: applying it must not move
            // the span, which the residual already certifies
        }
    }

    #[test]
    fn spec_anchors() {
        // span{1 + X, e3} is the screw homothety over the axis, a = 1
        let res = classify(&alg(EuclidLabel::NaL, 1.0), RHO).unwrap();
        assert_eq!(res.label, EuclidLabel::NaL);
        assert_relative_eq!(res.parameter.unwrap(), 1.0, epsilon = 1e-12);

        // the full algebra
        let res = classify(&alg(EuclidLabel::HomSo3R3, 1.0), RHO).unwrap();
        assert_eq!(res.label, EuclidLabel::HomSo3R3);

        // span{X + e3, e1, e2}
        let res = classify(&alg(EuclidLabel::ScrewP, 1.0), RHO).unwrap();
        assert_eq!(res.label, EuclidLabel::ScrewP);
    }

    #[test]
    fn rejects_non_subalgebra_and_small_dimension() {
        let bad = Subalgebra::new(vec![ConfAlgElement::rot_x(), ConfAlgElement::rot_y()]);
        assert!(matches!(
            classify(&bad, RHO),
            Err(ClassifyError::NotASubalgebra { .. })
        ));

        let small = Subalgebra::new(vec![ConfAlgElement::trans(Vector3::x())]);
        assert!(matches!(
            classify(&small, RHO),
            Err(ClassifyError::DimensionTooSmall { dim: 1 })
        ));
    }

    #[test]
    fn negative_parameter_is_canonicalized() {
        let res = classify(&alg(EuclidLabel::NaL, -2.0), RHO).unwrap();
        assert_eq!(res.label, EuclidLabel::NaL);
        assert_relative_eq!(res.parameter.unwrap(), 2.0, epsilon = 1e-12);
        // the conjugator is constructive: it carries the input onto the
        // catalog representative with a = +2
        let conj = alg(EuclidLabel::NaL, -2.0).adjoint(&res.conjugator);
        let target = alg(EuclidLabel::NaL, 2.0);
        let r = span_residual(&conj, &target, RHO).unwrap();
        assert!(r <= RHO);
    }

    #[test]
    fn classification_is_conjugation_invariant() {
        // deterministic pseudo-random conjugators
        let mut val = 0.8121f64;
        let mut next = || {
            val = (val * 997.0 + 0.5432).fract();
            val * 2.0 - 1.0
        };
        for label in EuclidLabel::all() {
            for trial in 0..6 {
                let alpha = {
                    let a = 4.0 * next();
                    if a.abs() < 0.3 {
                        a + 1.0
                    } else {
                        a
                    }
                };
                let axis = Vector3::new(next() + 0.05, next(), next());
                let angle = 3.0 * next();
                let v = 5.0 * Vector3::new(next(), next(), next());
                let h = ConfElement::new(
                    alpha,
                    crate::euclid::rotation_about_axis(&axis, angle),
                    v,
                );
                let moved = alg(label, 1.0).adjoint(&h);
                let res = classify(&moved, RHO).unwrap_or_else(|e| {
                    panic!("{label} trial {trial}: {e}")
                });
                assert_eq!(res.label, label, "conjugation invariance of {label}");
                assert!(res.residual <= RHO, "{label}: residual {}", res.residual);
                if label.needs_parameter() {
                    assert_relative_eq!(res.parameter.unwrap(), 1.0, epsilon = 1e-6);
                }
                // the returned conjugator carries the moved span onto the
                // catalog span
                let back = moved.adjoint(&res.conjugator);
                let target = alg(label, res.parameter.unwrap_or(1.0));
                let r = span_residual(&back, &target, RHO).unwrap();
                assert!(r <= RHO, "{label}: constructive residual {r}");
            }
        }
    }

    #[test]
    fn reflection_flips_the_parameter_sign_only() {
        // conjugating by an orientation-reversing element flips a; the
        // reported |a| is unchanged
        let refl = ConfElement::rotation(Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0)));
        let moved = alg(EuclidLabel::NaP, 1.5).adjoint(&refl);
        let res = classify(&moved, RHO).unwrap();
        assert_eq!(res.label, EuclidLabel::NaP);
        assert_relative_eq!(res.parameter.unwrap(), 1.5, epsilon = 1e-10);
    }
}
