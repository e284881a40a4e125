//! The table-verification harness: recomputes every claimed invariant of
//! the catalog and renders a deterministic pass/fail report.
//!
//! Sections, in order:
//!
//! * (a) cohomogeneity of every catalog entry against its claim;
//! * (b) the orbit-equivalence groupings, plus deliberately mismatched
//!   pairs that must come out inequivalent;
//! * (c) classification round-trips of the twenty classes under random
//!   conjugation;
//! * (d) equivariance of the compactification and agreement of the two
//!   models' cohomogeneities;
//! * (e) invariant-subspace reductions of the sphere-side entries;
//! * (f) conserved quantities along generated orbit clouds.
//!
//! The report is byte-identical across runs with the same seed, sample
//! count and tolerances.

use std::fmt::Write as _;

use nalgebra::{Vector3, Vector4};

use conformal3::bridge::{embed_conf, embed_point, embed_subalgebra};
use conformal3::catalog::{self, CatalogLabel, EuclidLabel, Filter, LorentzLabel};
use conformal3::classifier::classify;
use conformal3::euclid::{rotation_about_axis, ConfElement};
use conformal3::lorentz::SpherePoint;
use conformal3::orbit::{
    cohomogeneity, invariant_check, orbit_cloud, orbits_equivalent, OrbitPoint, ScanConfig,
};
use conformal3::reduction::{reduction_scan, ReductionBranch};
use conformal3::subalgebra::{Model, ModelSubalgebra};
use conformal3::Tolerances;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Harness parameters.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub tol: Tolerances,
    /// Conjugation trials per class in section (c).
    pub conjugations: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 24221,
            samples: 64,
            tol: Tolerances::default(),
            conjugations: 100,
        }
    }
}

/// Accumulates check results and renders the report.
struct Harness {
    report: String,
    checks: usize,
    failures: usize,
    section: &'static str,
    first_failing_section: Option<&'static str>,
}

impl Harness {
    fn new(cfg: &VerifyConfig) -> Self {
        let mut report = String::new();
        let _ = writeln!(report, "table verification report");
        let _ = writeln!(
            report,
            "seed={} samples={} eps={:e} rank_tol={:e}",
            cfg.seed, cfg.samples, cfg.tol.eps, cfg.tol.rank_tol
        );
        Self {
            report,
            checks: 0,
            failures: 0,
            section: "",
            first_failing_section: None,
        }
    }

    fn section(&mut self, tag: &'static str, title: &str) {
        self.section = tag;
        let _ = writeln!(self.report, "\n[{tag}] {title}");
    }

    fn check(&mut self, name: &str, pass: bool, detail: &str) {
        self.checks += 1;
        if !pass {
            self.failures += 1;
            if self.first_failing_section.is_none() {
                self.first_failing_section = Some(self.section);
            }
        }
        let _ = writeln!(
            self.report,
            "  {} {name}: {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
    }
}

/// Harness outcome: the rendered report and the overall verdict.
pub struct VerifyOutcome {
    pub report: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub first_failing_section: Option<&'static str>,
}

/// The eight transitive classes.
const TRANSITIVE: [EuclidLabel; 8] = [
    EuclidLabel::HomR3,
    EuclidLabel::HomSo3R3,
    EuclidLabel::So3R3,
    EuclidLabel::NaR3,
    EuclidLabel::R3,
    EuclidLabel::So2R3,
    EuclidLabel::HomSo2R3,
    EuclidLabel::ScrewP,
];

/// The half-space-foliation classes sharing their orbits.
const HALF_SPACE_GROUP: [EuclidLabel; 3] =
    [EuclidLabel::HomP, EuclidLabel::NaP, EuclidLabel::HomSo2P];

/// Pairs with genuinely different orbit foliations.
const MISMATCHED: [(EuclidLabel, EuclidLabel); 10] = [
    (EuclidLabel::P, EuclidLabel::R3),
    (EuclidLabel::P, EuclidLabel::So3),
    (EuclidLabel::P, EuclidLabel::So2L),
    (EuclidLabel::P, EuclidLabel::NaL),
    (EuclidLabel::So3, EuclidLabel::So2L),
    (EuclidLabel::So3, EuclidLabel::HomSo2),
    (EuclidLabel::So2L, EuclidLabel::HomL),
    (EuclidLabel::NaL, EuclidLabel::HomL),
    (EuclidLabel::HomSo2, EuclidLabel::So2L),
    (EuclidLabel::R3, EuclidLabel::So3),
];

fn generators(label: EuclidLabel) -> ModelSubalgebra {
    catalog::euclid_entry(label, Some(1.0))
        .expect("catalog entry")
        .generators
}

/// Runs the full harness.
pub fn run(cfg: &VerifyConfig) -> VerifyOutcome {
    let mut h = Harness::new(cfg);
    let scan = ScanConfig {
        samples: cfg.samples,
        seed: cfg.seed,
        include_probes: true,
    };

    section_cohomogeneity(&mut h, cfg, &scan);
    section_equivalence(&mut h, cfg, &scan);
    section_classification(&mut h, cfg);
    section_bridge(&mut h, cfg, &scan);
    section_reduction(&mut h, cfg);
    section_invariants(&mut h, cfg);

    let passed = h.failures == 0;
    let _ = writeln!(
        h.report,
        "\nsummary: {} checks, {} failed -> {}",
        h.checks,
        h.failures,
        if passed { "PASS" } else { "FAIL" }
    );
    if let Some(s) = h.first_failing_section {
        let _ = writeln!(h.report, "first failing section: [{s}]");
    }
    VerifyOutcome {
        report: h.report,
        passed,
        checks: h.checks,
        failures: h.failures,
        first_failing_section: h.first_failing_section,
    }
}

fn section_cohomogeneity(h: &mut Harness, cfg: &VerifyConfig, scan: &ScanConfig) {
    h.section("a", "cohomogeneity of every catalog entry");
    for entry in catalog::list(Filter::default()) {
        match cohomogeneity(&entry.generators, scan, cfg.tol.rank_tol) {
            Ok(report) => {
                let strata: Vec<String> =
                    report.strata.iter().map(|s| format!("{}", s.dim)).collect();
                h.check(
                    entry.label.canonical(),
                    report.cohomogeneity == entry.claimed_cohomogeneity,
                    &format!(
                        "computed {} claimed {} strata {{{}}}",
                        report.cohomogeneity,
                        entry.claimed_cohomogeneity,
                        strata.join(",")
                    ),
                );
            }
            Err(e) => h.check(entry.label.canonical(), false, &e.to_string()),
        }
    }
}

fn section_equivalence(h: &mut Harness, cfg: &VerifyConfig, scan: &ScanConfig) {
    h.section("b", "orbit-equivalence groupings");
    let expect = |h: &mut Harness, a: EuclidLabel, b: EuclidLabel, want: bool| {
        let name = format!("{} ~ {}", a.canonical(), b.canonical());
        match orbits_equivalent(&generators(a), &generators(b), scan, cfg.tol.rank_tol) {
            Ok(rep) => h.check(
                &name,
                rep.equivalent == want,
                &format!(
                    "equivalent={} expected={} over {} points",
                    rep.equivalent, want, rep.points_checked
                ),
            ),
            Err(e) => h.check(&name, false, &e.to_string()),
        }
    };

    expect(h, EuclidLabel::P, EuclidLabel::So2P, true);
    for (i, &a) in HALF_SPACE_GROUP.iter().enumerate() {
        for &b in HALF_SPACE_GROUP.iter().skip(i + 1) {
            expect(h, a, b, true);
        }
    }
    for (i, &a) in TRANSITIVE.iter().enumerate() {
        for &b in TRANSITIVE.iter().skip(i + 1) {
            expect(h, a, b, true);
        }
    }
    for (a, b) in MISMATCHED {
        expect(h, a, b, false);
    }
}

fn random_conjugator(rng: &mut ChaCha8Rng) -> ConfElement {
    let alpha = loop {
        let a: f64 = rng.random_range(-5.0..5.0);
        if a.abs() >= 0.2 {
            break a;
        }
    };
    let axis = Vector3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ) + Vector3::new(0.01, 0.0, 0.0);
    let angle = rng.random_range(-3.2..3.2);
    let v = Vector3::new(
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
    );
    ConfElement::new(alpha, rotation_about_axis(&axis, angle), v)
}

fn section_classification(h: &mut Harness, cfg: &VerifyConfig) {
    h.section("c", "classification round-trips under random conjugation");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xC1A5);
    for label in EuclidLabel::all() {
        let base = catalog::euclid_generators(label, 1.0);
        let alg = conformal3::subalgebra::Subalgebra::new(base);
        let mut recovered = 0usize;
        let mut worst_residual = 0.0f64;
        let mut worst_param = 0.0f64;
        let mut first_error = String::new();
        for _ in 0..cfg.conjugations {
            let conj = random_conjugator(&mut rng);
            let moved = alg.adjoint(&conj);
            match classify(&moved, cfg.tol.rank_tol) {
                Ok(res) if res.label == label => {
                    recovered += 1;
                    worst_residual = worst_residual.max(res.residual);
                    if label.needs_parameter() {
                        worst_param =
                            worst_param.max((res.parameter.unwrap_or(f64::NAN) - 1.0).abs());
                    }
                }
                Ok(res) => {
                    if first_error.is_empty() {
                        first_error = format!("misclassified as {}", res.label);
                    }
                }
                Err(e) => {
                    if first_error.is_empty() {
                        first_error = e.to_string();
                    }
                }
            }
        }
        let pass = recovered == cfg.conjugations
            && worst_residual <= cfg.tol.rank_tol
            && worst_param <= 1e-6;
        h.check(
            label.canonical(),
            pass,
            &if pass {
                format!(
                    "{recovered}/{} recovered, residual <= {worst_residual:.3e}",
                    cfg.conjugations
                )
            } else {
                format!(
                    "{recovered}/{} recovered, residual {worst_residual:.3e}, |a|-error {worst_param:.3e} {first_error}",
                    cfg.conjugations
                )
            },
        );
    }
}

fn section_bridge(h: &mut Harness, cfg: &VerifyConfig, scan: &ScanConfig) {
    h.section("d", "compactification equivariance and model agreement");

    // pointwise equivariance over random similarities and points
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xB41D);
    let mut worst = 0.0f64;
    let trials = 1000;
    for _ in 0..trials {
        let g = ConfElement::new(
            rng.random_range(0.2..4.0),
            rotation_about_axis(
                &Vector3::new(
                    rng.random_range(-1.0..1.0) + 0.01,
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ),
                rng.random_range(-3.2..3.2),
            ),
            Vector3::new(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            ),
        );
        let x = Vector3::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
        );
        let lhs = embed_point(&g.act(&x));
        let rhs = embed_conf(&g)
            .expect("identity component")
            .act(&embed_point(&x))
            .expect("null image");
        worst = worst.max(lhs.distance(&rhs));
    }
    h.check(
        "equivariance",
        worst <= 1e-8,
        &format!("max deviation {worst:.3e} over {trials} random (g, x)"),
    );

    // cohomogeneity agreement for the entries of the two main tables
    for entry in catalog::list(Filter {
        model: Some(Model::Euclid),
        ..Default::default()
    }) {
        if !entry.source.contains("Table 1") && !entry.source.contains("Table 2") {
            continue;
        }
        let euclid_report = cohomogeneity(&entry.generators, scan, cfg.tol.rank_tol);
        let embedded = embed_subalgebra(
            entry
                .generators
                .as_euclid()
                .expect("euclid entry"),
        );
        let sphere_report = cohomogeneity(
            &ModelSubalgebra::Lorentz(embedded),
            scan,
            cfg.tol.rank_tol,
        );
        match (euclid_report, sphere_report) {
            (Ok(e), Ok(s)) => h.check(
                &format!("model agreement {}", entry.label.canonical()),
                e.cohomogeneity == s.cohomogeneity,
                &format!("euclid {} sphere {}", e.cohomogeneity, s.cohomogeneity),
            ),
            (e, s) => h.check(
                &format!("model agreement {}", entry.label.canonical()),
                false,
                &format!("{:?} / {:?}", e.err(), s.err()),
            ),
        }
    }
}

fn section_reduction(h: &mut Harness, cfg: &VerifyConfig) {
    h.section("e", "invariant-subspace reductions of the sphere-side entries");
    use ReductionBranch::*;
    for label in LorentzLabel::all() {
        let entry = catalog::lorentz_entry(label);
        let alg = entry.generators.as_lorentz().expect("lorentz entry");
        match reduction_scan(alg, cfg.tol.rank_tol) {
            Ok(report) => {
                let branches: Vec<String> =
                    report.branches.iter().map(|b| b.to_string()).collect();
                let pass = match label {
                    LorentzLabel::So14 => report.is_irreducible(),
                    LorentzLabel::So4 | LorentzLabel::So3Block | LorentzLabel::So2xSo2 => {
                        report.has_branch(FixedHyperbolicPoint) && !report.is_irreducible()
                    }
                    LorentzLabel::So13 => {
                        report.positive_definite_dims() == vec![1] && !report.is_irreducible()
                    }
                    LorentzLabel::So12xSo2 => {
                        report.positive_definite_dims() == vec![2] && !report.is_irreducible()
                    }
                    LorentzLabel::So12 => {
                        report.has_branch(InvariantPositiveDefinite(2)) && !report.is_irreducible()
                    }
                };
                h.check(
                    label.canonical(),
                    pass,
                    &format!("branches: {}", branches.join("; ")),
                );
            }
            Err(e) => h.check(label.canonical(), false, &e.to_string()),
        }
    }
}

fn section_invariants(h: &mut Harness, cfg: &VerifyConfig) {
    h.section("f", "conserved quantities along orbit clouds");
    let steps = 150;
    let cases: Vec<(CatalogLabel, OrbitPoint, f64)> = vec![
        (
            CatalogLabel::Euclid(EuclidLabel::So3),
            OrbitPoint::Euclid(Vector3::new(2.0, 0.0, 0.0)),
            1e-8,
        ),
        (
            CatalogLabel::Euclid(EuclidLabel::So2L),
            OrbitPoint::Euclid(Vector3::new(1.0, 0.0, 0.0)),
            1e-8,
        ),
        (
            CatalogLabel::Euclid(EuclidLabel::P),
            OrbitPoint::Euclid(Vector3::new(0.3, -0.4, 0.7)),
            1e-8,
        ),
        (
            CatalogLabel::Lorentz(LorentzLabel::So2xSo2),
            OrbitPoint::Lorentz(SpherePoint::from_spatial(&Vector4::new(0.6, 0.0, 0.8, 0.0))),
            1e-8,
        ),
        (
            CatalogLabel::Lorentz(LorentzLabel::So13),
            OrbitPoint::Lorentz(SpherePoint::from_spatial(&Vector4::new(
                0.48, 0.6, 0.64, 0.0,
            ))),
            1e-8,
        ),
    ];
    for (label, base, bound) in cases {
        let entry = catalog::entry(label, Some(1.0)).expect("catalog entry");
        let name = label.canonical();
        match orbit_cloud(
            &entry.generators,
            name,
            &base,
            steps,
            1.0,
            cfg.seed,
            cfg.tol.rank_tol,
        ) {
            Ok(cloud) => match invariant_check(&label, &cloud) {
                Ok(rep) => h.check(
                    name,
                    rep.max_deviation <= bound,
                    &format!(
                        "{} deviates by {:.3e} over {} points",
                        rep.quantity,
                        rep.max_deviation,
                        cloud.points.len()
                    ),
                ),
                Err(e) => h.check(name, false, &e.to_string()),
            },
            Err(e) => h.check(name, false, &e.to_string()),
        }
    }
}
