//! Conformal compactification dictionary between the two models.
//!
//! Euclidean 3-space embeds into the projectivised null cone through the
//! paraboloid section
//!
//! ```text
//!     iota(x) = ((1 + |x|^2)/2, x1, x2, x3, (1 - |x|^2)/2),
//! ```
//!
//! which is null for every `x`. In the light-cone coordinates
//! `u+ = v1 + v5`, `u- = v1 - v5` the form reads
//! `q = -u+ u- + v2^2 + v3^2 + v4^2` and the section is `u+ = 1`. The
//! missing point is the null direction `p0 = [1, 0, 0, 0, -1]`
//! (`u+ = 0`), the point at infinity. Similarities of `E^3` extend to the
//! Lorentz transformations fixing `p0`: rotations act on `(v2, v3, v4)`,
//! the homothety by `alpha` acts as `(u+, x, u-) -> (u+/alpha, x, alpha u-)`,
//! and the translation by `w` as
//! `(u+, x, u-) -> (u+, x + u+ w, u- + 2<x, w> + u+ |w|^2)`.

use nalgebra::{Matrix3, Matrix5, Vector3, Vector5};
use thiserror::Error;

use crate::euclid::{ConfAlgElement, ConfElement, EuclidPoint};
use crate::lorentz::{LorentzAlgElement, LorentzError, LorentzMatrix, SpherePoint};

#[derive(Debug, Error, PartialEq)]
pub enum BridgeError {
    #[error("only identity-component elements embed (alpha > 0, det A = 1); got alpha = {alpha}, det = {det}")]
    OutsideIdentityComponent { alpha: f64, det: f64 },
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
}

/// Image of a sphere point in the Euclidean chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChartPoint {
    Point(EuclidPoint),
    AtInfinity,
}

/// The fixed null direction `[1, 0, 0, 0, -1]`: the point at infinity of
/// the Euclidean chart.
pub fn infinity() -> SpherePoint {
    SpherePoint::from_null_vector(&Vector5::new(1.0, 0.0, 0.0, 0.0, -1.0), 1e-12)
        .expect("p0 is null")
}

/// Stereographic embedding of `E^3` into the sphere.
pub fn embed_point(x: &EuclidPoint) -> SpherePoint {
    let r2 = x.norm_squared();
    let raw = Vector5::new((1.0 + r2) / 2.0, x[0], x[1], x[2], (1.0 - r2) / 2.0);
    SpherePoint::from_null_vector(&raw, 1e-9).expect("paraboloid section is null")
}

/// Inverse of [`embed_point`] on its image; `p0` itself (and anything
/// within `eps` of the `u+ = 0` slice) maps to [`ChartPoint::AtInfinity`].
pub fn unembed(s: &SpherePoint, eps: f64) -> ChartPoint {
    let n = s.coords();
    let u_plus = n[0] + n[4];
    if u_plus.abs() <= eps {
        return ChartPoint::AtInfinity;
    }
    ChartPoint::Point(Vector3::new(n[1], n[2], n[3]) / u_plus)
}

fn homothety_matrix(alpha: f64) -> Matrix5<f64> {
    // boost in the (v1, v5)-plane: u+ -> u+/alpha, u- -> alpha u-
    let c = (alpha + 1.0 / alpha) / 2.0;
    let s = (1.0 / alpha - alpha) / 2.0;
    let mut m = Matrix5::identity();
    m[(0, 0)] = c;
    m[(0, 4)] = s;
    m[(4, 0)] = s;
    m[(4, 4)] = c;
    m
}

fn rotation_matrix(a: &Matrix3<f64>) -> Matrix5<f64> {
    let mut m = Matrix5::identity();
    m.fixed_view_mut::<3, 3>(1, 1).copy_from(a);
    m
}

fn translation_matrix(w: &Vector3<f64>) -> Matrix5<f64> {
    let q = w.norm_squared();
    let mut m = Matrix5::identity();
    m[(0, 0)] = 1.0 + q / 2.0;
    m[(0, 4)] = q / 2.0;
    m[(4, 0)] = -q / 2.0;
    m[(4, 4)] = 1.0 - q / 2.0;
    for i in 0..3 {
        m[(0, 1 + i)] = w[i];
        m[(4, 1 + i)] = -w[i];
        m[(1 + i, 0)] = w[i];
        m[(1 + i, 4)] = w[i];
    }
    m
}

/// Embeds an identity-component similarity into `SO0(1,4)` as the unique
/// extension fixing `p0`, factored as translation . rotation . homothety.
pub fn embed_conf(g: &ConfElement) -> Result<LorentzMatrix, BridgeError> {
    let det = g.rotation.determinant();
    if g.alpha <= 0.0 || det <= 0.0 {
        return Err(BridgeError::OutsideIdentityComponent {
            alpha: g.alpha,
            det,
        });
    }
    let m = translation_matrix(&g.translation)
        * rotation_matrix(&g.rotation)
        * homothety_matrix(g.alpha);
    Ok(LorentzMatrix::try_new(m, 1e-9)?)
}

/// Differential of [`embed_conf`] at the identity: a Lie algebra morphism
/// into the stabiliser algebra of the `p0` line.
pub fn embed_alg(xi: &ConfAlgElement) -> LorentzAlgElement {
    let mut m = Matrix5::zeros();
    // homothety generator: the (v1, v5) boost with weight -a
    m[(0, 4)] = -xi.scalar;
    m[(4, 0)] = -xi.scalar;
    // rotation generator: same skew block on (v2, v3, v4)
    m.fixed_view_mut::<3, 3>(1, 1).copy_from(&xi.skew);
    // translation generator
    let w = xi.translation;
    for i in 0..3 {
        m[(0, 1 + i)] += w[i];
        m[(4, 1 + i)] += -w[i];
        m[(1 + i, 0)] += w[i];
        m[(1 + i, 4)] += w[i];
    }
    LorentzAlgElement::from_matrix_unchecked(m)
}

/// Embeds a whole similarity subalgebra generator by generator.
pub fn embed_subalgebra(
    g: &crate::subalgebra::EuclidSubalgebra,
) -> crate::subalgebra::LorentzSubalgebra {
    crate::subalgebra::Subalgebra::new(g.basis().iter().map(embed_alg).collect())
}

/// Convenience: is the rotation part special-orthogonal within `eps`?
pub fn in_identity_component(g: &ConfElement, eps: f64) -> bool {
    g.alpha > 0.0 && (g.rotation.determinant() - 1.0).abs() <= eps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::rotation_about_axis;
    use crate::lorentz::q_quadratic;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn origin_embeds_to_antipode_of_infinity() {
        let s = embed_point(&Vector3::zeros());
        assert_relative_eq!(*s.coords(), Vector5::new(1.0, 0.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn unit_point_embeds_on_the_cone() {
        let s = embed_point(&Vector3::new(1.0, 0.0, 0.0));
        assert_relative_eq!(*s.coords(), Vector5::new(1.0, 1.0, 0.0, 0.0, 0.0));
        assert!(q_quadratic(s.coords()).abs() < 1e-14);
    }

    #[test]
    fn infinity_unembeds_to_infinity() {
        assert_eq!(unembed(&infinity(), 1e-9), ChartPoint::AtInfinity);
        let antipode = SpherePoint::from_null_vector(
            &Vector5::new(1.0, 0.0, 0.0, 0.0, 1.0),
            1e-12,
        )
        .unwrap();
        assert_eq!(unembed(&antipode, 1e-9), ChartPoint::Point(Vector3::zeros()));
    }

    #[test]
    fn embed_identity_is_identity() {
        let m = embed_conf(&ConfElement::identity()).unwrap();
        assert!((m.matrix() - Matrix5::identity()).norm() < 1e-12);
    }

    #[test]
    fn rotation_embeds_as_block() {
        let a = rotation_about_axis(&Vector3::new(0.0, 0.0, 1.0), 0.7);
        let m = embed_conf(&ConfElement::rotation(a)).unwrap();
        assert!((m.matrix().fixed_view::<3, 3>(1, 1) - a).norm() < 1e-12);
        assert!((m.matrix()[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((m.matrix()[(4, 4)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn embedding_rejects_other_components() {
        assert!(matches!(
            embed_conf(&ConfElement::homothety(-2.0)),
            Err(BridgeError::OutsideIdentityComponent { .. })
        ));
        let refl = ConfElement::rotation(Matrix3::from_diagonal(&Vector3::new(
            1.0, -1.0, 1.0,
        )));
        assert!(embed_conf(&refl).is_err());
    }

    #[test]
    fn embedded_matrices_fix_infinity() {
        let g = ConfElement::new(
            2.5,
            rotation_about_axis(&Vector3::new(1.0, 2.0, -0.5), 1.1),
            Vector3::new(0.4, -1.0, 0.9),
        );
        let m = embed_conf(&g).unwrap();
        let p0 = infinity();
        let image = m.matrix() * p0.coords();
        // proportional to p0
        let cross = image[0] * p0.coords()[4] - image[4] * p0.coords()[0];
        assert!(cross.abs() < 1e-12);
        assert!(image.fixed_rows::<3>(1).norm() < 1e-12);
    }

    #[test]
    fn algebra_embedding_is_flow_derivative() {
        let samples = [
            ConfAlgElement::lambda(),
            ConfAlgElement::rot_x(),
            ConfAlgElement::trans(Vector3::new(0.3, -0.7, 1.1)),
            ConfAlgElement::new(0.8, Vector3::new(0.5, -0.2, 0.1), Vector3::new(1.0, 0.0, -2.0)),
        ];
        let h = 1e-5;
        for xi in samples {
            let plus = embed_conf(&xi.exp(h)).unwrap();
            let minus = embed_conf(&xi.exp(-h)).unwrap();
            let central = (plus.matrix() - minus.matrix()) / (2.0 * h);
            assert!(
                (central - embed_alg(&xi).matrix()).norm() < 1e-8,
                "finite difference mismatch"
            );
        }
    }

    #[test]
    fn algebra_embedding_annihilates_infinity_direction() {
        let xi = ConfAlgElement::new(
            1.3,
            Vector3::new(0.2, 0.4, -0.6),
            Vector3::new(0.7, 0.1, -0.9),
        );
        let image = embed_alg(&xi).matrix() * infinity().coords();
        // M p0 must stay on the p0 line
        let p0 = infinity();
        let cross = image[0] * p0.coords()[4] - image[4] * p0.coords()[0];
        assert!(cross.abs() < 1e-12);
        assert!(image.fixed_rows::<3>(1).norm() < 1e-12);
    }

    #[test]
    fn orbit_dimensions_agree_pointwise_across_the_bridge() {
        // the consistency statement the whole toolkit leans on: the
        // infinitesimal orbit dimension of a similarity subalgebra at x
        // equals the sphere-side dimension of its embedding at iota(x)
        use crate::catalog::{euclid_generators, EuclidLabel};
        use crate::lorentz::sphere_orbit_dim;
        use crate::orbit::euclid_orbit_dim;
        use crate::subalgebra::Subalgebra;

        let points = [
            Vector3::new(0.37, -1.42, 0.85),
            Vector3::new(2.0, 1.0, -0.5),
            Vector3::zeros(),
            Vector3::new(0.0, 0.0, 1.3),
            Vector3::new(1.1, 0.7, 0.0),
        ];
        for label in EuclidLabel::all() {
            let alg = Subalgebra::new(euclid_generators(label, 1.0));
            let embedded = embed_subalgebra(&alg);
            for p in &points {
                let chart_dim = euclid_orbit_dim(&alg, p, 1e-8);
                let sphere_dim = sphere_orbit_dim(embedded.basis(), &embed_point(p), 1e-8);
                assert_eq!(chart_dim, sphere_dim, "{label} at {p:?}");
            }
        }
    }

    prop_compose! {
        fn arb_identity_component()(
            alpha in 0.2..4.0f64,
            axis in proptest::array::uniform3(-1.0..1.0f64),
            angle in -3.0..3.0f64,
            v in proptest::array::uniform3(-3.0..3.0f64),
        ) -> ConfElement {
            let axis = Vector3::from(axis) + Vector3::new(0.05, 0.0, 0.0);
            ConfElement::new(alpha, rotation_about_axis(&axis, angle), Vector3::from(v))
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn round_trip(x in proptest::array::uniform3(-8.0..8.0f64)) {
            let x = Vector3::from(x);
            match unembed(&embed_point(&x), 1e-12) {
                ChartPoint::Point(back) => prop_assert!((back - x).norm() < 1e-9),
                ChartPoint::AtInfinity => prop_assert!(false, "finite point mapped to infinity"),
            }
        }

        #[test]
        fn embedded_points_are_null(x in proptest::array::uniform3(-10.0..10.0f64)) {
            let s = embed_point(&Vector3::from(x));
            prop_assert!(q_quadratic(s.coords()).abs() < 1e-12);
        }

        #[test]
        fn equivariance(g in arb_identity_component(),
                        x in proptest::array::uniform3(-3.0..3.0f64)) {
            let x = Vector3::from(x);
            let lhs = embed_point(&g.act(&x));
            let gamma = embed_conf(&g).unwrap();
            let rhs = gamma.act(&embed_point(&x)).unwrap();
            prop_assert!(lhs.distance(&rhs) < 1e-8, "distance {}", lhs.distance(&rhs));
        }

        #[test]
        fn algebra_embedding_is_a_morphism(
            a in -1.0..1.0f64, c in proptest::array::uniform3(-1.0..1.0f64),
            w in proptest::array::uniform3(-1.0..1.0f64),
            a2 in -1.0..1.0f64, c2 in proptest::array::uniform3(-1.0..1.0f64),
            w2 in proptest::array::uniform3(-1.0..1.0f64),
        ) {
            let xi = ConfAlgElement::new(a, Vector3::from(c), Vector3::from(w));
            let eta = ConfAlgElement::new(a2, Vector3::from(c2), Vector3::from(w2));
            let lhs = embed_alg(&xi.bracket(&eta));
            let rhs = embed_alg(&xi).bracket(&embed_alg(&eta));
            prop_assert!((lhs.matrix() - rhs.matrix()).norm() < 1e-8);
        }

        #[test]
        fn embedded_generators_are_in_the_lorentz_algebra(
            a in -2.0..2.0f64, c in proptest::array::uniform3(-2.0..2.0f64),
            w in proptest::array::uniform3(-2.0..2.0f64),
        ) {
            let xi = ConfAlgElement::new(a, Vector3::from(c), Vector3::from(w));
            let m = embed_alg(&xi);
            let j = crate::lorentz::metric();
            prop_assert!((m.matrix().transpose() * j + j * m.matrix()).norm() < 1e-12);
        }
    }
}
