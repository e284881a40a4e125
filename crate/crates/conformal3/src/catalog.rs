//! Registry of the named groups: the twenty conjugacy classes of connected
//! subgroups of the similarity group with dimension at least two, and the
//! principal sphere-side subgroups of `SO0(1,4)`, each with concrete
//! generators and claimed invariants.
//!
//! Labels are fixed ASCII strings (see [`EuclidLabel::canonical`] and
//! [`LorentzLabel::canonical`]); parsing is case-insensitive and tolerant
//! of a few notational substitutes.

use nalgebra::Vector3;
use thiserror::Error;

use crate::euclid::ConfAlgElement;
use crate::lorentz::{so14_basis, LorentzAlgElement};
use crate::subalgebra::{Model, ModelSubalgebra, Subalgebra};

/// The twenty conjugacy classes, in table reading order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EuclidLabel {
    /// `R+* |x R^3` — homotheties and all translations.
    HomR3,
    /// `(R+* x SO(3)) |x R^3` — the full identity component.
    HomSo3R3,
    /// `SO(3) |x R^3` — orientation-preserving rigid motions.
    So3R3,
    /// `N_a |x R^3` — screw homothety-rotations over all translations.
    NaR3,
    /// `R^3` — all translations.
    R3,
    /// `SO(2) |x R^3`.
    So2R3,
    /// `(R+* x SO(2)) |x R^3`.
    HomSo2R3,
    /// `S |x P` — screw rotation-translations over plane translations.
    ScrewP,
    /// `SO(2) |x P`.
    So2P,
    /// `(R+* x SO(2)) |x P`.
    HomSo2P,
    /// `R+* |x P`.
    HomP,
    /// `N_a |x P`.
    NaP,
    /// `P` — translations of the `(e1,e2)`-plane.
    P,
    /// `SO(2) x L` — axis rotations and axis translations.
    So2L,
    /// `(R+* x SO(2)) |x L`.
    HomSo2L,
    /// `N_a |x L`.
    NaL,
    /// `R+* |x L`.
    HomL,
    /// `R+* x SO(3)`.
    HomSo3,
    /// `SO(3)` — rotations about the origin.
    So3,
    /// `R+* x SO(2)`.
    HomSo2,
}

impl EuclidLabel {
    /// All twenty labels in table reading order.
    pub fn all() -> [EuclidLabel; 20] {
        use EuclidLabel::*;
        [
            HomR3, HomSo3R3, So3R3, NaR3, //
            R3, So2R3, HomSo2R3, ScrewP, //
            So2P, HomSo2P, HomP, NaP, //
            P, So2L, HomSo2L, NaL, //
            HomL, HomSo3, So3, HomSo2,
        ]
    }

    /// Canonical ASCII label. `x` stands for both direct and semidirect
    /// products; `R+*` is the positive homothety factor; `Na` is the
    /// screw homothety-rotation one-parameter family with parameter `a`.
    pub fn canonical(&self) -> &'static str {
        use EuclidLabel::*;
        match self {
            HomR3 => "R+*xR3",
            HomSo3R3 => "(R+*xSO(3))xR3",
            So3R3 => "SO(3)xR3",
            NaR3 => "NaxR3",
            R3 => "R3",
            So2R3 => "SO(2)xR3",
            HomSo2R3 => "(R+*xSO(2))xR3",
            ScrewP => "SxP",
            So2P => "SO(2)xP",
            HomSo2P => "(R+*xSO(2))xP",
            HomP => "R+*xP",
            NaP => "NaxP",
            P => "P",
            So2L => "SO(2)xL",
            HomSo2L => "(R+*xSO(2))xL",
            NaL => "NaxL",
            HomL => "R+*xL",
            HomSo3 => "R+*xSO(3)",
            So3 => "SO(3)",
            HomSo2 => "R+*xSO(2)",
        }
    }

    /// Whether the label carries the screw parameter `a`.
    pub fn needs_parameter(&self) -> bool {
        matches!(self, EuclidLabel::NaR3 | EuclidLabel::NaP | EuclidLabel::NaL)
    }
}

impl std::fmt::Display for EuclidLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.canonical())
    }
}

/// The principal sphere-side groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LorentzLabel {
    /// `SO0(1,2)` acting on coordinates `(v1, v2, v3)`.
    So12,
    /// `SO0(1,3)` acting on coordinates `(v1, .., v4)`.
    So13,
    /// `SO0(1,2) x SO(2)` acting on `(v1, v2, v3)` and `(v4, v5)`.
    So12xSo2,
    /// The full identity component `SO0(1,4)`.
    So14,
    /// `SO(3)` block rotating coordinates `(v3, v4, v5)`.
    So3Block,
    /// `SO(2) x SO(2)` rotating `(v2, v3)` and `(v4, v5)`.
    So2xSo2,
    /// `SO(4)` rotating all four spacelike coordinates.
    So4,
}

impl LorentzLabel {
    pub fn all() -> [LorentzLabel; 7] {
        use LorentzLabel::*;
        [So12, So13, So12xSo2, So14, So3Block, So2xSo2, So4]
    }

    pub fn canonical(&self) -> &'static str {
        use LorentzLabel::*;
        match self {
            So12 => "SO0(1,2)",
            So13 => "SO0(1,3)",
            So12xSo2 => "SO0(1,2)xSO(2)",
            So14 => "SO0(1,4)",
            So3Block => "SO(3)-block",
            So2xSo2 => "SO(2)xSO(2)",
            So4 => "SO(4)",
        }
    }
}

impl std::fmt::Display for LorentzLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.canonical())
    }
}

/// Label of any catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogLabel {
    Euclid(EuclidLabel),
    Lorentz(LorentzLabel),
}

impl CatalogLabel {
    pub fn canonical(&self) -> &'static str {
        match self {
            CatalogLabel::Euclid(l) => l.canonical(),
            CatalogLabel::Lorentz(l) => l.canonical(),
        }
    }

    pub fn model(&self) -> Model {
        match self {
            CatalogLabel::Euclid(_) => Model::Euclid,
            CatalogLabel::Lorentz(_) => Model::Lorentz,
        }
    }
}

impl std::fmt::Display for CatalogLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.canonical())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("unknown group label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` needs a nonzero parameter a")]
    MissingParameter(String),
}

/// A named group with generators and claimed metadata.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: CatalogLabel,
    pub model: Model,
    pub generators: ModelSubalgebra,
    /// Screw parameter for the `Na` family.
    pub parameter: Option<f64>,
    /// Group dimension (= generator count).
    pub dim: usize,
    pub claimed_cohomogeneity: usize,
    /// Whether the group is compact; stands in for properness of the
    /// sphere action.
    pub compact: bool,
    pub orbit_description: &'static str,
    /// Which table or section of the classification the entry comes from.
    pub source: &'static str,
    /// Metadata-only named subgroups (label, description).
    pub sub_entries: &'static [(&'static str, &'static str)],
}

fn lam() -> ConfAlgElement {
    ConfAlgElement::lambda()
}
fn rx() -> ConfAlgElement {
    ConfAlgElement::rot_x()
}
fn ry() -> ConfAlgElement {
    ConfAlgElement::rot_y()
}
fn rz() -> ConfAlgElement {
    ConfAlgElement::rot_z()
}
fn tr(i: usize) -> ConfAlgElement {
    let mut w = Vector3::zeros();
    w[i] = 1.0;
    ConfAlgElement::trans(w)
}
fn screw_hom(a: f64) -> ConfAlgElement {
    // a + X
    ConfAlgElement::new(a, Vector3::new(1.0, 0.0, 0.0), Vector3::zeros())
}
fn screw_trans() -> ConfAlgElement {
    // X + e3
    ConfAlgElement::new(0.0, Vector3::new(1.0, 0.0, 0.0), Vector3::z())
}

/// Generator basis of a Euclidean catalog entry; `a` is used only by the
/// `Na` family.
pub fn euclid_generators(label: EuclidLabel, a: f64) -> Vec<ConfAlgElement> {
    use EuclidLabel::*;
    match label {
        HomR3 => vec![lam(), tr(0), tr(1), tr(2)],
        HomSo3R3 => vec![lam(), rx(), ry(), rz(), tr(0), tr(1), tr(2)],
        So3R3 => vec![rx(), ry(), rz(), tr(0), tr(1), tr(2)],
        NaR3 => vec![screw_hom(a), tr(0), tr(1), tr(2)],
        R3 => vec![tr(0), tr(1), tr(2)],
        So2R3 => vec![rx(), tr(0), tr(1), tr(2)],
        HomSo2R3 => vec![lam(), rx(), tr(0), tr(1), tr(2)],
        ScrewP => vec![screw_trans(), tr(0), tr(1)],
        So2P => vec![rx(), tr(0), tr(1)],
        HomSo2P => vec![lam(), rx(), tr(0), tr(1)],
        HomP => vec![lam(), tr(0), tr(1)],
        NaP => vec![screw_hom(a), tr(0), tr(1)],
        P => vec![tr(0), tr(1)],
        So2L => vec![rx(), tr(2)],
        HomSo2L => vec![lam(), rx(), tr(2)],
        NaL => vec![screw_hom(a), tr(2)],
        HomL => vec![lam(), tr(2)],
        HomSo3 => vec![lam(), rx(), ry(), rz()],
        So3 => vec![rx(), ry(), rz()],
        HomSo2 => vec![lam(), rx()],
    }
}

/// Generator basis of a sphere-side catalog entry, in the fixed coordinate
/// blocks documented on [`LorentzLabel`].
pub fn lorentz_generators(label: LorentzLabel) -> Vec<LorentzAlgElement> {
    use LorentzLabel::*;
    let b = LorentzAlgElement::boost;
    let r = LorentzAlgElement::rotation;
    match label {
        So12 => vec![b(2), b(3), r(2, 3)],
        So13 => vec![b(2), b(3), b(4), r(2, 3), r(2, 4), r(3, 4)],
        So12xSo2 => vec![b(2), b(3), r(2, 3), r(4, 5)],
        So14 => so14_basis(),
        So3Block => vec![r(3, 4), r(3, 5), r(4, 5)],
        So2xSo2 => vec![r(2, 3), r(4, 5)],
        So4 => vec![r(2, 3), r(2, 4), r(2, 5), r(3, 4), r(3, 5), r(4, 5)],
    }
}

fn euclid_metadata(label: EuclidLabel) -> (usize, bool, &'static str, &'static str) {
    use EuclidLabel::*;
    // (claimed cohomogeneity, compact, orbit description, source)
    match label {
        HomR3 => (0, false, "transitive", "Table 5"),
        HomSo3R3 => (0, false, "transitive", "Table 5"),
        So3R3 => (0, false, "transitive", "Table 5"),
        NaR3 => (0, false, "transitive", "Table 5"),
        R3 => (0, false, "transitive", "Table 5, Table 2"),
        So2R3 => (0, false, "transitive", "Table 5"),
        HomSo2R3 => (0, false, "transitive", "Table 5"),
        ScrewP => (0, false, "transitive", "Table 5"),
        So2P => (1, false, "parallel planes z = c (same orbits as P)", "Table 5"),
        HomSo2P => (
            0,
            false,
            "plane z = 0 and the two open half-spaces",
            "Table 5",
        ),
        HomP => (
            0,
            false,
            "plane z = 0 and the two open half-spaces",
            "Table 5, Table 2",
        ),
        NaP => (
            0,
            false,
            "plane z = 0 and the two open half-spaces",
            "Table 5",
        ),
        P => (1, false, "parallel planes z = c", "Table 5, Table 1"),
        So2L => (
            1,
            false,
            "z-axis and concentric cylinders about it",
            "Table 5, Table 1",
        ),
        HomSo2L => (0, false, "z-axis and its complement", "Table 5, Table 2"),
        NaL => (
            1,
            false,
            "z-axis and 2-dimensional leaves in its complement",
            "Table 5, Table 1",
        ),
        HomL => (
            1,
            false,
            "z-axis and affine half-plane leaves in its complement",
            "Table 5, Table 1",
        ),
        HomSo3 => (0, false, "origin and its complement", "Table 5, Table 2"),
        So3 => (
            1,
            true,
            "fixed origin and concentric spheres",
            "Table 5, Table 1",
        ),
        HomSo2 => (
            1,
            false,
            "origin, two z-axis rays, and cylinder-like 2-dimensional leaves",
            "Table 5, Table 1",
        ),
    }
}

/// Named one-parameter and two-dimensional subgroups of `SO0(1,2)`,
/// recorded as metadata only.
const SO12_SUBGROUPS: &[(&str, &str)] = &[
    (
        "Aff",
        "unique 2-dimensional connected subgroup; preserves a null line",
    ),
    ("E", "elliptic 1-parameter subgroup; preserves a timelike line"),
    (
        "H",
        "hyperbolic 1-parameter subgroup; preserves two null lines",
    ),
    ("Par", "parabolic 1-parameter subgroup; preserves one null line"),
];

fn lorentz_metadata(
    label: LorentzLabel,
) -> (usize, bool, &'static str, &'static str, &'static [(&'static str, &'static str)]) {
    use LorentzLabel::*;
    match label {
        So12 => (
            1,
            false,
            "invariant great circle; codimension-1 foliation of its complement",
            "Table 1",
            SO12_SUBGROUPS,
        ),
        So13 => (
            0,
            false,
            "invariant great 2-sphere and two complementary open cells",
            "Table 2",
            &[],
        ),
        So12xSo2 => (
            0,
            false,
            "invariant great circle and its complement",
            "Table 2",
            &[],
        ),
        So14 => (0, false, "transitive", "Table 2", &[]),
        So3Block => (
            1,
            true,
            "two fixed points and 2-sphere leaves between them",
            "Table 1, Sec. 2",
            &[],
        ),
        So2xSo2 => (
            1,
            true,
            "two circle orbits and torus leaves between them",
            "Table 1, Sec. 2",
            &[],
        ),
        So4 => (0, true, "transitive", "Sec. 2", &[]),
    }
}

/// Builds the entry for a Euclidean label; `a` defaults to 1 for the `Na`
/// family when verification needs a concrete instance.
pub fn euclid_entry(label: EuclidLabel, a: Option<f64>) -> Result<CatalogEntry, CatalogError> {
    let parameter = if label.needs_parameter() {
        let a = a.unwrap_or(1.0);
        if a == 0.0 {
            return Err(CatalogError::MissingParameter(label.canonical().into()));
        }
        Some(a)
    } else {
        None
    };
    let generators = euclid_generators(label, parameter.unwrap_or(1.0));
    let dim = generators.len();
    let (coh, compact, orbits, source) = euclid_metadata(label);
    Ok(CatalogEntry {
        label: CatalogLabel::Euclid(label),
        model: Model::Euclid,
        generators: ModelSubalgebra::Euclid(Subalgebra::new(generators)),
        parameter,
        dim,
        claimed_cohomogeneity: coh,
        compact,
        orbit_description: orbits,
        source,
        sub_entries: &[],
    })
}

/// Builds the entry for a sphere-side label.
pub fn lorentz_entry(label: LorentzLabel) -> CatalogEntry {
    let generators = lorentz_generators(label);
    let dim = generators.len();
    let (coh, compact, orbits, source, subs) = lorentz_metadata(label);
    CatalogEntry {
        label: CatalogLabel::Lorentz(label),
        model: Model::Lorentz,
        generators: ModelSubalgebra::Lorentz(Subalgebra::new(generators)),
        parameter: None,
        dim,
        claimed_cohomogeneity: coh,
        compact,
        orbit_description: orbits,
        source,
        sub_entries: subs,
    }
}

/// Entry for any label.
pub fn entry(label: CatalogLabel, a: Option<f64>) -> Result<CatalogEntry, CatalogError> {
    match label {
        CatalogLabel::Euclid(l) => euclid_entry(l, a),
        CatalogLabel::Lorentz(l) => Ok(lorentz_entry(l)),
    }
}

/// Looks an entry up by label string. `a` is required exactly for the
/// `Na` family (`NaxR3`, `NaxP`, `NaxL`) and must be nonzero there.
pub fn get(label: &str, a: Option<f64>) -> Result<CatalogEntry, CatalogError> {
    let parsed = parse_label(label).ok_or_else(|| CatalogError::UnknownLabel(label.into()))?;
    if let CatalogLabel::Euclid(l) = parsed {
        if l.needs_parameter() && a.is_none() {
            return Err(CatalogError::MissingParameter(label.into()));
        }
    }
    entry(parsed, a)
}

/// Optional filters for [`list`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Filter {
    pub model: Option<Model>,
    pub cohomogeneity: Option<usize>,
}

/// All entries in deterministic table order, optionally filtered. The
/// `Na` family appears with the default parameter `a = 1`.
pub fn list(filter: Filter) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for l in EuclidLabel::all() {
        out.push(euclid_entry(l, Some(1.0)).expect("default parameter is nonzero"));
    }
    for l in LorentzLabel::all() {
        out.push(lorentz_entry(l));
    }
    out.retain(|e| {
        filter.model.is_none_or(|m| e.model == m)
            && filter
                .cohomogeneity
                .is_none_or(|c| e.claimed_cohomogeneity == c)
    });
    out
}

fn normalize_strict(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .flat_map(|c| c.to_lowercase())
        .collect()
}

fn normalize_loose(s: &str) -> String {
    normalize_strict(s)
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | '+' | '*' | '-'))
        .map(|c| if c == '|' { 'x' } else { c })
        .collect()
}

/// Parses a label string: canonical forms case-insensitively, plus loose
/// forms that drop brackets and decorations (`so0(1,2)`, `na|l`, ...).
pub fn parse_label(s: &str) -> Option<CatalogLabel> {
    let strict = normalize_strict(s);
    let loose = normalize_loose(s);
    for l in EuclidLabel::all() {
        if normalize_strict(l.canonical()) == strict {
            return Some(CatalogLabel::Euclid(l));
        }
    }
    for l in LorentzLabel::all() {
        if normalize_strict(l.canonical()) == strict {
            return Some(CatalogLabel::Lorentz(l));
        }
    }
    for l in EuclidLabel::all() {
        if normalize_loose(l.canonical()) == loose {
            return Some(CatalogLabel::Euclid(l));
        }
    }
    for l in LorentzLabel::all() {
        if normalize_loose(l.canonical()) == loose {
            return Some(CatalogLabel::Lorentz(l));
        }
    }
    None
}
