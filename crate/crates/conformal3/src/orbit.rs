//! Orbit dimensions, cohomogeneity, orbit equivalence, orbit point clouds
//! and conserved quantities, in both models.
//!
//! Orbit dimension at a point is the rank of the infinitesimal generator
//! evaluations there; cohomogeneity is 3 minus the maximum over a seeded
//! sample. Random sampling almost surely misses the measure-zero singular
//! strata (the origin, the z-axis, the plane `z = 0`, the distinguished
//! circles and the great sphere), so scans force-sample a fixed probe
//! list alongside the random points.

use std::collections::BTreeMap;

use nalgebra::{DVector, Vector3, Vector4, Vector5};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::catalog::{CatalogLabel, EuclidLabel, LorentzLabel};
use crate::euclid::ConfElement;
use crate::linalg;
use crate::lorentz::{sphere_orbit_dim, LorentzError, LorentzMatrix, SpherePoint};
use crate::subalgebra::{EuclidSubalgebra, LorentzSubalgebra, Model, ModelSubalgebra, SubalgebraError};

/// Default seed for orbit scans.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Default number of random sample points.
pub const DEFAULT_SAMPLES: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum OrbitError {
    #[error(transparent)]
    Subalgebra(#[from] SubalgebraError),
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error("point model does not match subalgebra model")]
    PointModelMismatch,
    #[error("no conserved quantity registered for `{0}`")]
    UnknownInvariant(String),
    #[error("cloud point left the orbit stratum (dimension {got}, expected {expected})")]
    CloudCorrupt { expected: usize, got: usize },
}

/// A sample point in either model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OrbitPoint {
    Euclid(Vector3<f64>),
    Lorentz(SpherePoint),
}

impl OrbitPoint {
    pub fn model(&self) -> Model {
        match self {
            OrbitPoint::Euclid(_) => Model::Euclid,
            OrbitPoint::Lorentz(_) => Model::Lorentz,
        }
    }
}

/// Scan parameters: seeded random samples plus the standard probe list.
#[derive(Clone, Copy, Debug)]
pub struct ScanConfig {
    pub samples: usize,
    pub seed: u64,
    /// Force-sample the known singular sets.
    pub include_probes: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            include_probes: true,
        }
    }
}

/// One observed orbit-dimension value with a witness.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub dim: usize,
    pub count: usize,
    pub witness: OrbitPoint,
}

/// Result of a cohomogeneity scan.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub max_dim: usize,
    pub cohomogeneity: usize,
    pub strata: Vec<Stratum>,
    pub seed: u64,
}

/// Orbit dimension of the Euclidean model at `p`: rank of the generator
/// fields.
pub fn euclid_orbit_dim(g: &EuclidSubalgebra, p: &Vector3<f64>, rank_tol: f64) -> usize {
    let fields: Vec<DVector<f64>> = g
        .basis()
        .iter()
        .map(|b| DVector::from_column_slice(b.generator_field(p).as_slice()))
        .collect();
    linalg::subspace_rank(&fields, rank_tol)
}

/// Orbit dimension at a point of either model.
pub fn orbit_dim_at(g: &ModelSubalgebra, p: &OrbitPoint, rank_tol: f64) -> Result<usize, OrbitError> {
    match (g, p) {
        (ModelSubalgebra::Euclid(g), OrbitPoint::Euclid(p)) => Ok(euclid_orbit_dim(g, p, rank_tol)),
        (ModelSubalgebra::Lorentz(g), OrbitPoint::Lorentz(s)) => {
            Ok(sphere_orbit_dim(g.basis(), s, rank_tol))
        }
        _ => Err(OrbitError::PointModelMismatch),
    }
}

/// Witnesses for the known singular sets of the catalog actions.
pub fn standard_probes(model: Model) -> Vec<OrbitPoint> {
    match model {
        Model::Euclid => vec![
            OrbitPoint::Euclid(Vector3::zeros()),
            OrbitPoint::Euclid(Vector3::new(0.0, 0.0, 1.25)),
            OrbitPoint::Euclid(Vector3::new(1.1, 0.7, 0.0)),
        ],
        Model::Lorentz => [
            // fixed points of the SO(3) block / circle in the (2,3)-plane
            Vector4::new(1.0, 0.0, 0.0, 0.0),
            Vector4::new(-1.0, 0.0, 0.0, 0.0),
            Vector4::new(0.6, 0.8, 0.0, 0.0),
            // circle in the (4,5)-plane
            Vector4::new(0.0, 0.0, 1.0, 0.0),
            Vector4::new(0.0, 0.0, 0.6, 0.8),
            // great sphere n5 = 0, generic point
            Vector4::new(0.48, 0.6, 0.64, 0.0),
            // the distinguished null direction and its antipode
            Vector4::new(0.0, 0.0, 0.0, -1.0),
            Vector4::new(0.0, 0.0, 0.0, 1.0),
        ]
        .iter()
        .map(|u| OrbitPoint::Lorentz(SpherePoint::from_spatial(u)))
        .collect(),
    }
}

/// Seeded random sample: standard Gaussian points of `E^3`, or uniform
/// points of the unit sphere in `R^4`.
pub fn sample_points(model: Model, samples: usize, seed: u64) -> Vec<OrbitPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        match model {
            Model::Euclid => {
                let p = Vector3::new(
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                );
                out.push(OrbitPoint::Euclid(p));
            }
            Model::Lorentz => {
                let mut u = Vector4::new(
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                    rng.sample(StandardNormal),
                );
                if u.norm() < 1e-6 {
                    u = Vector4::new(1.0, 0.0, 0.0, 0.0);
                }
                out.push(OrbitPoint::Lorentz(SpherePoint::from_spatial(&u)));
            }
        }
    }
    out
}

/// Cohomogeneity scan: max orbit dimension over the sample, observed
/// strata with witnesses, deterministic for a given seed.
pub fn cohomogeneity(
    g: &ModelSubalgebra,
    cfg: &ScanConfig,
    rank_tol: f64,
) -> Result<OrbitReport, OrbitError> {
    let mut points = Vec::new();
    if cfg.include_probes {
        points.extend(standard_probes(g.model()));
    }
    points.extend(sample_points(g.model(), cfg.samples, cfg.seed));

    let mut strata: BTreeMap<usize, (usize, OrbitPoint)> = BTreeMap::new();
    for p in &points {
        let dim = orbit_dim_at(g, p, rank_tol)?;
        strata
            .entry(dim)
            .and_modify(|(count, _)| *count += 1)
            .or_insert((1, *p));
    }
    let max_dim = *strata.keys().next_back().expect("at least one sample");
    Ok(OrbitReport {
        max_dim,
        cohomogeneity: 3 - max_dim,
        strata: strata
            .into_iter()
            .map(|(dim, (count, witness))| Stratum { dim, count, witness })
            .collect(),
        seed: cfg.seed,
    })
}

/// Result of the pointwise tangent-span comparison of two groups.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub points_checked: usize,
    /// First sample where the tangent spans differed.
    pub first_mismatch: Option<OrbitPoint>,
}

fn tangent_span(g: &ModelSubalgebra, p: &OrbitPoint) -> Result<Vec<DVector<f64>>, OrbitError> {
    match (g, p) {
        (ModelSubalgebra::Euclid(g), OrbitPoint::Euclid(p)) => Ok(g
            .basis()
            .iter()
            .map(|b| DVector::from_column_slice(b.generator_field(p).as_slice()))
            .collect()),
        (ModelSubalgebra::Lorentz(g), OrbitPoint::Lorentz(s)) => {
            let n = s.coords();
            let mut cols = vec![DVector::from_column_slice(n.as_slice())];
            for b in g.basis() {
                cols.push(DVector::from_column_slice((b.matrix() * n).as_slice()));
            }
            Ok(cols)
        }
        _ => Err(OrbitError::PointModelMismatch),
    }
}

/// Two groups induce the same orbits exactly when their tangent
/// distributions agree; this checks span equality at every sampled point
/// (random samples plus the singular-set probes).
pub fn orbits_equivalent(
    g1: &ModelSubalgebra,
    g2: &ModelSubalgebra,
    cfg: &ScanConfig,
    rank_tol: f64,
) -> Result<EquivalenceReport, OrbitError> {
    if g1.model() != g2.model() {
        return Err(OrbitError::PointModelMismatch);
    }
    let mut points = Vec::new();
    if cfg.include_probes {
        points.extend(standard_probes(g1.model()));
    }
    points.extend(sample_points(g1.model(), cfg.samples, cfg.seed));

    for p in &points {
        let s1 = tangent_span(g1, p)?;
        let s2 = tangent_span(g2, p)?;
        if !linalg::spans_equal(&s1, &s2, rank_tol) {
            return Ok(EquivalenceReport {
                equivalent: false,
                points_checked: points.len(),
                first_mismatch: Some(*p),
            });
        }
    }
    Ok(EquivalenceReport {
        equivalent: true,
        points_checked: points.len(),
        first_mismatch: None,
    })
}

/// Orbit sample cloud: points of one orbit, generated by a random walk of
/// group exponentials applied to the base point.
#[derive(Clone, Debug)]
pub struct PointCloud {
    pub label: String,
    pub base: OrbitPoint,
    pub seed: u64,
    pub points: CloudData,
}

#[derive(Clone, Debug)]
pub enum CloudData {
    Euclid(Vec<Vector3<f64>>),
    Lorentz(Vec<Vector5<f64>>),
}

impl CloudData {
    pub fn len(&self) -> usize {
        match self {
            CloudData::Euclid(v) => v.len(),
            CloudData::Lorentz(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Generates `steps` orbit points through `base` by composing group
/// exponentials of random algebra elements with parameters in
/// `[-t_max, t_max]`. Every emitted point is checked to keep the orbit
/// dimension of the base point.
pub fn orbit_cloud(
    g: &ModelSubalgebra,
    label: &str,
    base: &OrbitPoint,
    steps: usize,
    t_max: f64,
    seed: u64,
    rank_tol: f64,
) -> Result<PointCloud, OrbitError> {
    let expected_dim = orbit_dim_at(g, base, rank_tol)?;
    let t_max = t_max.abs().max(1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let points = match (g, base) {
        (ModelSubalgebra::Euclid(g), OrbitPoint::Euclid(p)) => {
            let mut acc = ConfElement::identity();
            let mut pts = Vec::with_capacity(steps + 1);
            pts.push(*p);
            for _ in 0..steps {
                let xi = random_combination_euclid(g, &mut rng);
                let t = rng.random_range(-t_max..t_max);
                acc = acc.compose(&xi.exp(t));
                let q = acc.act(p);
                let dim = euclid_orbit_dim(g, &q, rank_tol);
                if dim != expected_dim {
                    return Err(OrbitError::CloudCorrupt {
                        expected: expected_dim,
                        got: dim,
                    });
                }
                pts.push(q);
            }
            CloudData::Euclid(pts)
        }
        (ModelSubalgebra::Lorentz(g), OrbitPoint::Lorentz(s)) => {
            let mut acc = LorentzMatrix::identity();
            let mut pts = Vec::with_capacity(steps + 1);
            pts.push(*s.coords());
            for _ in 0..steps {
                let xi = random_combination_lorentz(g, &mut rng);
                let t = rng.random_range(-t_max..t_max);
                acc = acc.compose(&xi.exp(t));
                let q = acc.act(s)?;
                let dim = sphere_orbit_dim(g.basis(), &q, rank_tol);
                if dim != expected_dim {
                    return Err(OrbitError::CloudCorrupt {
                        expected: expected_dim,
                        got: dim,
                    });
                }
                pts.push(*q.coords());
            }
            CloudData::Lorentz(pts)
        }
        _ => return Err(OrbitError::PointModelMismatch),
    };

    Ok(PointCloud {
        label: label.to_string(),
        base: *base,
        seed,
        points,
    })
}

fn random_combination_euclid(
    g: &EuclidSubalgebra,
    rng: &mut ChaCha8Rng,
) -> crate::euclid::ConfAlgElement {
    let mut acc = crate::euclid::ConfAlgElement::zero();
    for b in g.basis() {
        acc = acc.add(&b.scale(rng.random_range(-1.0..1.0)));
    }
    acc
}

fn random_combination_lorentz(
    g: &LorentzSubalgebra,
    rng: &mut ChaCha8Rng,
) -> crate::lorentz::LorentzAlgElement {
    let mut acc = crate::lorentz::LorentzAlgElement::zero();
    for b in g.basis() {
        acc = acc.add(&b.scale(rng.random_range(-1.0..1.0)));
    }
    acc
}

/// Conserved-quantity evaluation over a cloud.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub quantity: &'static str,
    pub reference: f64,
    pub max_deviation: f64,
}

/// Evaluates the conserved quantity registered for `label` on every cloud
/// point and reports the worst deviation from the base-point value.
/// Transitive groups have no conserved quantity.
pub fn invariant_check(label: &CatalogLabel, cloud: &PointCloud) -> Result<InvariantReport, OrbitError> {
    match (label, &cloud.points) {
        (CatalogLabel::Euclid(EuclidLabel::So3), CloudData::Euclid(pts)) => {
            Ok(deviation_report("|p|", pts, |p| p.norm()))
        }
        (CatalogLabel::Euclid(EuclidLabel::So2L), CloudData::Euclid(pts)) => {
            Ok(deviation_report("x^2 + y^2", pts, |p| p[0] * p[0] + p[1] * p[1]))
        }
        (CatalogLabel::Euclid(EuclidLabel::P), CloudData::Euclid(pts)) => {
            Ok(deviation_report("z", pts, |p| p[2]))
        }
        (CatalogLabel::Lorentz(LorentzLabel::So2xSo2), CloudData::Lorentz(pts)) => Ok(
            deviation_report("n2^2 + n3^2", pts, |n| n[1] * n[1] + n[2] * n[2]),
        ),
        (CatalogLabel::Lorentz(LorentzLabel::So13), CloudData::Lorentz(pts)) => {
            // the fifth coordinate vanishes on the invariant great sphere
            // and keeps its sign off it
            let reference = pts[0][4];
            if reference.abs() < 1e-9 {
                Ok(deviation_report("n5", pts, |n| n[4]))
            } else {
                let sign_flips = pts
                    .iter()
                    .filter(|n| n[4].signum() != reference.signum())
                    .count();
                Ok(InvariantReport {
                    quantity: "sign(n5)",
                    reference: reference.signum(),
                    max_deviation: if sign_flips == 0 { 0.0 } else { 1.0 },
                })
            }
        }
        _ => Err(OrbitError::UnknownInvariant(label.canonical().to_string())),
    }
}

fn deviation_report<P>(
    quantity: &'static str,
    pts: &[P],
    f: impl Fn(&P) -> f64,
) -> InvariantReport {
    let reference = f(&pts[0]);
    let max_deviation = pts
        .iter()
        .map(|p| (f(p) - reference).abs())
        .fold(0.0f64, f64::max);
    InvariantReport {
        quantity,
        reference,
        max_deviation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{entry, get, Filter};

    const RHO: f64 = 1e-8;

    fn gens(label: &str) -> ModelSubalgebra {
        get(label, Some(1.0)).unwrap().generators
    }

    #[test]
    fn orbit_dims_at_anchor_points() {
        // S |x P acts transitively
        let screw = get("SxP", None).unwrap().generators;
        for p in [Vector3::zeros(), Vector3::new(0.3, -2.0, 5.0)] {
            assert_eq!(
                orbit_dim_at(&screw, &OrbitPoint::Euclid(p), RHO).unwrap(),
                3
            );
        }
        // Na |x P: rank drops on the plane z = 0
        let nap = gens("NaxP");
        assert_eq!(
            orbit_dim_at(&nap, &OrbitPoint::Euclid(Vector3::new(1.0, 2.0, 0.0)), RHO).unwrap(),
            2
        );
        assert_eq!(
            orbit_dim_at(&nap, &OrbitPoint::Euclid(Vector3::new(1.0, 2.0, 0.5)), RHO).unwrap(),
            3
        );
        // SO(3) fixes the origin
        let so3 = gens("SO(3)");
        assert_eq!(
            orbit_dim_at(&so3, &OrbitPoint::Euclid(Vector3::zeros()), RHO).unwrap(),
            0
        );
    }

    #[test]
    fn cohomogeneity_of_plane_and_translations() {
        let p = cohomogeneity(&gens("P"), &ScanConfig::default(), RHO).unwrap();
        assert_eq!(p.max_dim, 2);
        assert_eq!(p.cohomogeneity, 1);

        let r3 = cohomogeneity(&gens("R3"), &ScanConfig::default(), RHO).unwrap();
        assert_eq!(r3.cohomogeneity, 0);
        assert_eq!(r3.strata.len(), 1);
    }

    #[test]
    fn cohomogeneity_matches_claims_for_all_entries() {
        for e in crate::catalog::list(Filter::default()) {
            let report = cohomogeneity(&e.generators, &ScanConfig::default(), RHO).unwrap();
            assert_eq!(
                report.cohomogeneity, e.claimed_cohomogeneity,
                "{}: computed {} vs claimed {}",
                e.label, report.cohomogeneity, e.claimed_cohomogeneity
            );
        }
    }

    #[test]
    fn forced_probes_reveal_singular_strata() {
        let so3 = cohomogeneity(&gens("SO(3)"), &ScanConfig::default(), RHO).unwrap();
        let dims: Vec<usize> = so3.strata.iter().map(|s| s.dim).collect();
        assert!(dims.contains(&0), "origin stratum: {dims:?}");
        assert!(dims.contains(&2));

        let torus = cohomogeneity(&gens("SO(2)xSO(2)"), &ScanConfig::default(), RHO).unwrap();
        let dims: Vec<usize> = torus.strata.iter().map(|s| s.dim).collect();
        assert!(dims.contains(&1), "circle strata: {dims:?}");
        assert!(dims.contains(&2));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = cohomogeneity(&gens("NaxL"), &ScanConfig::default(), RHO).unwrap();
        let b = cohomogeneity(&gens("NaxL"), &ScanConfig::default(), RHO).unwrap();
        assert_eq!(a.max_dim, b.max_dim);
        assert_eq!(a.strata.len(), b.strata.len());
        for (x, y) in a.strata.iter().zip(b.strata.iter()) {
            assert_eq!(x.dim, y.dim);
            assert_eq!(x.count, y.count);
        }
    }

    #[test]
    fn plane_equivalences() {
        let cfg = ScanConfig::default();
        let p = gens("P");
        let so2p = gens("SO(2)xP");
        assert!(orbits_equivalent(&p, &so2p, &cfg, RHO).unwrap().equivalent);

        let homp = gens("R+*xP");
        let nap = gens("NaxP");
        assert!(orbits_equivalent(&homp, &nap, &cfg, RHO).unwrap().equivalent);

        // P and SO(2)xL have different orbits
        let so2l = gens("SO(2)xL");
        let rep = orbits_equivalent(&p, &so2l, &cfg, RHO).unwrap();
        assert!(!rep.equivalent);
        assert!(rep.first_mismatch.is_some());
    }

    #[test]
    fn so3_cloud_stays_on_the_sphere() {
        let so3 = gens("SO(3)");
        let base = OrbitPoint::Euclid(Vector3::new(1.0, 0.0, 0.0));
        let cloud = orbit_cloud(&so3, "SO(3)", &base, 100, 1.5, DEFAULT_SEED, RHO).unwrap();
        let label = CatalogLabel::Euclid(EuclidLabel::So3);
        let report = invariant_check(&label, &cloud).unwrap();
        assert!(report.max_deviation < 1e-10, "{}", report.max_deviation);
        assert_eq!(cloud.points.len(), 101);
    }

    #[test]
    fn cylinder_cloud_preserves_radius() {
        let g = gens("SO(2)xL");
        let base = OrbitPoint::Euclid(Vector3::new(1.0, 0.0, 0.0));
        let cloud = orbit_cloud(&g, "SO(2)xL", &base, 100, 2.0, 7, RHO).unwrap();
        let label = CatalogLabel::Euclid(EuclidLabel::So2L);
        let report = invariant_check(&label, &cloud).unwrap();
        assert!(report.max_deviation < 1e-10);
    }

    #[test]
    fn half_plane_cloud_of_homothety_line_group() {
        // R+* |x L orbit through (1,0,0): y = 0, x > 0
        let g = gens("R+*xL");
        let base = OrbitPoint::Euclid(Vector3::new(1.0, 0.0, 0.0));
        let cloud = orbit_cloud(&g, "R+*xL", &base, 200, 1.0, 11, RHO).unwrap();
        if let CloudData::Euclid(pts) = &cloud.points {
            for p in pts {
                assert!(p[1].abs() < 1e-10);
                assert!(p[0] > 0.0);
            }
        } else {
            panic!("wrong model");
        }
    }

    #[test]
    fn great_sphere_cloud_keeps_fifth_coordinate_zero() {
        let e = get("SO0(1,3)", None).unwrap();
        let base = OrbitPoint::Lorentz(SpherePoint::from_spatial(&Vector4::new(
            0.48, 0.6, 0.64, 0.0,
        )));
        let cloud = orbit_cloud(&e.generators, "SO0(1,3)", &base, 120, 0.8, 3, RHO).unwrap();
        let report = invariant_check(&e.label, &cloud).unwrap();
        assert!(report.max_deviation < 1e-9, "{}", report.max_deviation);
    }

    #[test]
    fn transitive_groups_have_no_registered_invariant() {
        let e = entry(CatalogLabel::Euclid(EuclidLabel::R3), None).unwrap();
        let base = OrbitPoint::Euclid(Vector3::zeros());
        let cloud = orbit_cloud(&e.generators, "R3", &base, 10, 1.0, 1, RHO).unwrap();
        assert!(matches!(
            invariant_check(&e.label, &cloud),
            Err(OrbitError::UnknownInvariant(_))
        ));
    }

    #[test]
    fn orbit_dim_conjugation_invariance_euclid() {
        let g = get("NaxP", Some(1.0)).unwrap().generators;
        let alg = g.as_euclid().unwrap();
        let h = ConfElement::new(
            1.7,
            crate::euclid::rotation_about_axis(&Vector3::new(0.2, -1.0, 0.4), 0.9),
            Vector3::new(0.5, 1.5, -0.25),
        );
        let moved = alg.adjoint(&h);
        for p in [
            Vector3::new(0.3, 0.1, 0.9),
            Vector3::new(1.0, 2.0, 0.0),
            Vector3::zeros(),
        ] {
            let before = euclid_orbit_dim(alg, &p, RHO);
            let after = euclid_orbit_dim(&moved, &h.act(&p), RHO);
            assert_eq!(before, after);
        }
    }

    #[test]
    fn model_mismatch_is_an_error() {
        let g = gens("P");
        let s = OrbitPoint::Lorentz(SpherePoint::from_spatial(&Vector4::new(1.0, 0.0, 0.0, 0.0)));
        assert_eq!(
            orbit_dim_at(&g, &s, RHO),
            Err(OrbitError::PointModelMismatch)
        );
    }
}
