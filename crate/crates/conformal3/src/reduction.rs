//! Invariant-subspace scanner for subalgebras of `so(1,4)`.
//!
//! Every proper connected subgroup of `SO0(1,4)` preserves a nontrivial
//! subspace of `R^{1,4}`, and taking orthogonal complements it suffices to
//! search dimensions one and two. The scanner reports which of the
//! resulting reductions apply:
//!
//! * an invariant null line — the group fixes a point of the sphere;
//! * an invariant timelike line — the group fixes a point of hyperbolic
//!   4-space (it is conjugate into `SO(4)`);
//! * an invariant positive definite line or plane;
//! * none of the above — the algebra acts irreducibly, so the group is
//!   all of `SO0(1,4)`.
//!
//! Invariant non-null lines are automatically killed pointwise (a q-skew
//! matrix with `M v = c v` and `q(v) != 0` forces `c = 0`), so those come
//! out of the common kernel; null lines and 2-planes are found from
//! eigenvector candidates of generic random combinations of the
//! generators, then confirmed by testing invariance under every generator.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix5, Vector5};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg;
use crate::lorentz::q_form;
use crate::subalgebra::{LorentzSubalgebra, SubalgebraError};

/// How many random generic combinations feed the eigen-candidate search.
const GENERIC_COMBINATIONS: usize = 4;

/// Internal seed for the candidate search; the scan is deterministic.
const SCAN_SEED: u64 = 0x5EED;

/// One applicable reduction of Lemma-style trichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReductionBranch {
    /// An invariant null line: a fixed point on the sphere.
    FixedSpherePoint,
    /// An invariant timelike line: a fixed point of hyperbolic 4-space.
    FixedHyperbolicPoint,
    /// An invariant positive definite subspace of the given dimension.
    InvariantPositiveDefinite(usize),
    /// No invariant subspace of dimension at most two.
    Irreducible,
}

impl std::fmt::Display for ReductionBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReductionBranch::FixedSpherePoint => write!(f, "fixed sphere point"),
            ReductionBranch::FixedHyperbolicPoint => write!(f, "fixed hyperbolic point"),
            ReductionBranch::InvariantPositiveDefinite(d) => {
                write!(f, "invariant positive definite subspace of dim {d}")
            }
            ReductionBranch::Irreducible => write!(f, "irreducible"),
        }
    }
}

/// An invariant subspace with the signature of the restricted form,
/// counted as `(negative, null, positive)` directions.
#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    pub basis: Vec<Vector5<f64>>,
    pub signature: (usize, usize, usize),
}

impl InvariantSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.0 == 0 && self.signature.1 == 0
    }

    pub fn is_timelike_line(&self) -> bool {
        self.dim() == 1 && self.signature.0 == 1
    }

    pub fn is_null_line(&self) -> bool {
        self.dim() == 1 && self.signature.1 == 1
    }
}

/// Outcome of the invariant-subspace scan.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    /// Dimension of the common kernel of the generators.
    pub kernel_dim: usize,
    /// Invariant lines found (deduplicated).
    pub lines: Vec<InvariantSubspace>,
    /// Invariant 2-planes found (deduplicated).
    pub planes: Vec<InvariantSubspace>,
    /// All applicable branches, in trichotomy order; `[Irreducible]` when
    /// nothing was found.
    pub branches: Vec<ReductionBranch>,
}

impl ReductionReport {
    pub fn has_branch(&self, b: ReductionBranch) -> bool {
        self.branches.contains(&b)
    }

    pub fn is_irreducible(&self) -> bool {
        self.branches == [ReductionBranch::Irreducible]
    }

    /// Dimensions (sorted, unique) of invariant positive definite
    /// subspaces.
    pub fn positive_definite_dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self
            .branches
            .iter()
            .filter_map(|b| match b {
                ReductionBranch::InvariantPositiveDefinite(d) => Some(*d),
                _ => None,
            })
            .collect();
        dims.sort_unstable();
        dims
    }
}

/// Scans a bracket-closed subalgebra of `so(1,4)` for invariant subspaces
/// of dimension at most two and reports the applicable reductions.
pub fn reduction_scan(
    alg: &LorentzSubalgebra,
    rank_tol: f64,
) -> Result<ReductionReport, SubalgebraError> {
    alg.require_closed(rank_tol)?;
    let gens: Vec<Matrix5<f64>> = alg.basis().iter().map(|g| *g.matrix()).collect();
    let scale = gens.iter().map(|m| m.norm()).fold(0.0f64, f64::max).max(1.0);

    // common kernel
    let kernel = common_kernel(&gens, rank_tol);
    let kernel_dim = kernel.len();

    let mut line_candidates: Vec<Vector5<f64>> = Vec::new();
    line_candidates.extend(kernel_line_candidates(&kernel, rank_tol));

    // generic combinations for eigen candidates
    let mut rng = ChaCha8Rng::seed_from_u64(SCAN_SEED);
    let mut combos: Vec<Matrix5<f64>> = Vec::new();
    for _ in 0..GENERIC_COMBINATIONS {
        let mut m = Matrix5::zeros();
        for g in &gens {
            m += rng.random_range(-1.0..1.0) * g;
        }
        combos.push(m);
    }

    let mut plane_candidates: Vec<[Vector5<f64>; 2]> = Vec::new();
    for m in &combos {
        let (lines, planes) = eigen_candidates(m, scale, rank_tol);
        line_candidates.extend(lines);
        plane_candidates.extend(planes);
    }
    // kernels of composed operators
    for i in 0..combos.len() {
        for j in 0..combos.len() {
            if i == j {
                continue;
            }
            let prod = combos[i] * combos[j];
            let ker = matrix_kernel(&prod, rank_tol);
            match ker.len() {
                1 => line_candidates.push(ker[0]),
                2 => plane_candidates.push([ker[0], ker[1]]),
                _ => {}
            }
        }
    }

    // confirm line candidates under every generator
    let mut lines: Vec<Vector5<f64>> = Vec::new();
    for v in line_candidates {
        if is_invariant_line(&gens, &v, scale, rank_tol) {
            push_unique_line(&mut lines, v);
        }
    }

    // planes: spans of invariant-line pairs, plus eigen candidates
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            plane_candidates.push([lines[i], lines[j]]);
        }
    }
    let mut planes: Vec<[Vector5<f64>; 2]> = Vec::new();
    for pair in plane_candidates {
        if let Some(onb) = orthonormal_pair(&pair, rank_tol) {
            if is_invariant_plane(&gens, &onb, scale, rank_tol)
                && !planes
                    .iter()
                    .any(|p| same_plane(p, &onb, rank_tol))
            {
                planes.push(onb);
            }
        }
    }

    // invariant non-positive-definite planes contain invariant null lines
    for p in &planes {
        for v in null_directions_in_plane(p, rank_tol) {
            if is_invariant_line(&gens, &v, scale, rank_tol) {
                push_unique_line(&mut lines, v);
            }
        }
    }

    let lines: Vec<InvariantSubspace> = lines
        .into_iter()
        .map(|v| InvariantSubspace {
            signature: subspace_signature(&[v], rank_tol),
            basis: vec![v],
        })
        .collect();
    let planes: Vec<InvariantSubspace> = planes
        .into_iter()
        .map(|p| InvariantSubspace {
            signature: subspace_signature(&p, rank_tol),
            basis: p.to_vec(),
        })
        .collect();

    let mut branches = Vec::new();
    if lines.iter().any(InvariantSubspace::is_null_line) {
        branches.push(ReductionBranch::FixedSpherePoint);
    }
    if lines.iter().any(InvariantSubspace::is_timelike_line) {
        branches.push(ReductionBranch::FixedHyperbolicPoint);
    }
    if lines
        .iter()
        .any(|l| l.is_positive_definite())
    {
        branches.push(ReductionBranch::InvariantPositiveDefinite(1));
    }
    if planes.iter().any(InvariantSubspace::is_positive_definite) {
        branches.push(ReductionBranch::InvariantPositiveDefinite(2));
    }
    if branches.is_empty() && lines.is_empty() && planes.is_empty() && kernel_dim == 0 {
        branches.push(ReductionBranch::Irreducible);
    }

    Ok(ReductionReport {
        kernel_dim,
        lines,
        planes,
        branches,
    })
}

fn common_kernel(gens: &[Matrix5<f64>], tol: f64) -> Vec<Vector5<f64>> {
    let stacked = DMatrix::from_fn(5 * gens.len(), 5, |i, j| gens[i / 5][(i % 5, j)]);
    linalg::null_space(&stacked, tol)
        .into_iter()
        .map(|v| Vector5::from_column_slice(v.as_slice()))
        .collect()
}

fn matrix_kernel(m: &Matrix5<f64>, tol: f64) -> Vec<Vector5<f64>> {
    let dm = DMatrix::from_fn(5, 5, |i, j| m[(i, j)]);
    linalg::null_space(&dm, tol)
        .into_iter()
        .map(|v| Vector5::from_column_slice(v.as_slice()))
        .collect()
}

/// Distinguished directions inside the common kernel: eigen-directions of
/// the restricted form, plus the null mixtures of timelike/spacelike
/// pairs. Every vector of the kernel spans an invariant line.
fn kernel_line_candidates(kernel: &[Vector5<f64>], tol: f64) -> Vec<Vector5<f64>> {
    if kernel.is_empty() {
        return Vec::new();
    }
    let m = kernel.len();
    let gram = DMatrix::from_fn(m, m, |i, j| q_form(&kernel[i], &kernel[j]));
    let eig = gram.symmetric_eigen();
    let dirs: Vec<(f64, Vector5<f64>)> = (0..m)
        .map(|k| {
            let mut v = Vector5::zeros();
            for (i, ker) in kernel.iter().enumerate() {
                v += eig.eigenvectors[(i, k)] * ker;
            }
            (eig.eigenvalues[k], v.normalize())
        })
        .collect();
    let mut out: Vec<Vector5<f64>> = dirs.iter().map(|(_, v)| *v).collect();
    for (li, vi) in &dirs {
        for (lj, vj) in &dirs {
            if *li < -tol && *lj > tol {
                let (a, b) = (lj.sqrt(), (-li).sqrt());
                out.push((a * vi + b * vj).normalize());
                out.push((a * vi - b * vj).normalize());
            }
        }
    }
    out
}

/// Candidate invariant lines (real eigenvectors) and 2-planes
/// (complex-pair root spaces) of a single generic combination.
fn eigen_candidates(
    m: &Matrix5<f64>,
    scale: f64,
    tol: f64,
) -> (Vec<Vector5<f64>>, Vec<[Vector5<f64>; 2]>) {
    let mut lines = Vec::new();
    let mut planes = Vec::new();
    let eigenvalues = m.complex_eigenvalues();
    for ev in eigenvalues.iter() {
        if ev.im.abs() <= tol * scale {
            let shifted = m - Matrix5::from_diagonal_element(ev.re);
            for v in matrix_kernel(&shifted, tol) {
                lines.push(v);
            }
        } else if ev.im > 0.0 {
            // real root space of the conjugate pair:
            // ker(M^2 - 2 Re M + |ev|^2)
            let quad = m * m - 2.0 * ev.re * m
                + Matrix5::from_diagonal_element(ev.re * ev.re + ev.im * ev.im);
            let ker = matrix_kernel(&quad, tol);
            if ker.len() == 2 {
                planes.push([ker[0], ker[1]]);
            }
        }
    }
    (lines, planes)
}

fn is_invariant_line(gens: &[Matrix5<f64>], v: &Vector5<f64>, scale: f64, tol: f64) -> bool {
    let v = v.normalize();
    gens.iter().all(|g| {
        let gv = g * v;
        let proj = v.dot(&gv) * v;
        (gv - proj).norm() <= tol * scale * 10.0
    })
}

fn orthonormal_pair(pair: &[Vector5<f64>; 2], tol: f64) -> Option<[Vector5<f64>; 2]> {
    let u = pair[0].normalize();
    let mut w = pair[1] - pair[1].dot(&u) * u;
    let n = w.norm();
    if n <= tol {
        return None;
    }
    w /= n;
    Some([u, w])
}

fn is_invariant_plane(
    gens: &[Matrix5<f64>],
    onb: &[Vector5<f64>; 2],
    scale: f64,
    tol: f64,
) -> bool {
    gens.iter().all(|g| {
        onb.iter().all(|v| {
            let gv = g * v;
            let proj = onb[0].dot(&gv) * onb[0] + onb[1].dot(&gv) * onb[1];
            (gv - proj).norm() <= tol * scale * 10.0
        })
    })
}

fn same_plane(a: &[Vector5<f64>; 2], b: &[Vector5<f64>; 2], tol: f64) -> bool {
    let to_d = |p: &[Vector5<f64>; 2]| {
        vec![
            DVector::from_column_slice(p[0].as_slice()),
            DVector::from_column_slice(p[1].as_slice()),
        ]
    };
    linalg::spans_equal(&to_d(a), &to_d(b), tol.max(1e-7))
}

fn push_unique_line(lines: &mut Vec<Vector5<f64>>, v: Vector5<f64>) {
    let v = v.normalize();
    if !lines.iter().any(|u| u.dot(&v).abs() > 1.0 - 1e-7) {
        lines.push(v);
    }
}

/// Signature `(negative, null, positive)` of the form restricted to the
/// span of a Euclidean-orthonormal basis.
fn subspace_signature(basis: &[Vector5<f64>], tol: f64) -> (usize, usize, usize) {
    let m = basis.len();
    let gram = DMatrix::from_fn(m, m, |i, j| q_form(&basis[i], &basis[j]));
    let eig = gram.symmetric_eigen();
    let mut sig = (0, 0, 0);
    for &l in eig.eigenvalues.iter() {
        if l < -tol {
            sig.0 += 1;
        } else if l > tol {
            sig.2 += 1;
        } else {
            sig.1 += 1;
        }
    }
    sig
}

/// Null directions of the form restricted to an invariant plane: for a
/// Lorentzian plane the two null lines, for a degenerate plane its
/// radical. Positive definite planes have none.
fn null_directions_in_plane(onb: &[Vector5<f64>; 2], tol: f64) -> Vec<Vector5<f64>> {
    let g = Matrix2::new(
        q_form(&onb[0], &onb[0]),
        q_form(&onb[0], &onb[1]),
        q_form(&onb[0], &onb[1]),
        q_form(&onb[1], &onb[1]),
    );
    // q(a u + b w) = g11 a^2 + 2 g12 a b + g22 b^2
    let (g11, g12, g22) = (g[(0, 0)], g[(0, 1)], g[(1, 1)]);
    let mut out = Vec::new();
    if g11.abs() <= tol && g22.abs() <= tol {
        // both basis vectors are null
        out.push(onb[0]);
        out.push(onb[1]);
        return out;
    }
    // solve for b/a or a/b on the dominant coefficient
    if g11.abs() >= g22.abs() {
        let disc = g12 * g12 - g11 * g22;
        if disc >= -tol {
            let root = disc.max(0.0).sqrt();
            for r in [(-g12 + root) / g11, (-g12 - root) / g11] {
                out.push((onb[0] + r * onb[1]).normalize());
            }
        }
    } else {
        let disc = g12 * g12 - g22 * g11;
        if disc >= -tol {
            let root = disc.max(0.0).sqrt();
            for r in [(-g12 + root) / g22, (-g12 - root) / g22] {
                out.push((r * onb[0] + onb[1]).normalize());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lorentz_generators, LorentzLabel};
    use crate::lorentz::LorentzAlgElement;
    use crate::subalgebra::Subalgebra;

    const RHO: f64 = 1e-8;

    fn scan(label: LorentzLabel) -> ReductionReport {
        let alg = Subalgebra::new(lorentz_generators(label));
        reduction_scan(&alg, RHO).unwrap()
    }

    #[test]
    fn so3_block_fixes_a_hyperbolic_point_and_a_positive_line() {
        let report = scan(LorentzLabel::So3Block);
        assert_eq!(report.kernel_dim, 2);
        assert!(report.has_branch(ReductionBranch::FixedHyperbolicPoint));
        assert!(report.has_branch(ReductionBranch::InvariantPositiveDefinite(1)));
        // the kernel also contains null vectors, so the block fixes two
        // sphere points as well
        assert!(report.has_branch(ReductionBranch::FixedSpherePoint));
    }

    #[test]
    fn so12_block_preserves_positive_definite_plane() {
        let report = scan(LorentzLabel::So12);
        assert!(report.has_branch(ReductionBranch::InvariantPositiveDefinite(2)));
        assert!(!report.has_branch(ReductionBranch::FixedSpherePoint));
        assert!(!report.has_branch(ReductionBranch::FixedHyperbolicPoint));
    }

    #[test]
    fn full_algebra_is_irreducible() {
        let report = scan(LorentzLabel::So14);
        assert!(report.is_irreducible(), "branches: {:?}", report.branches);
    }

    #[test]
    fn so13_preserves_exactly_a_positive_line() {
        let report = scan(LorentzLabel::So13);
        assert_eq!(report.positive_definite_dims(), vec![1]);
        assert!(!report.has_branch(ReductionBranch::FixedSpherePoint));
        assert!(!report.has_branch(ReductionBranch::FixedHyperbolicPoint));
    }

    #[test]
    fn so12_x_so2_preserves_exactly_a_positive_plane() {
        let report = scan(LorentzLabel::So12xSo2);
        assert_eq!(report.positive_definite_dims(), vec![2]);
        assert_eq!(report.kernel_dim, 0);
    }

    #[test]
    fn compact_blocks_fix_hyperbolic_points() {
        for label in [LorentzLabel::So4, LorentzLabel::So2xSo2] {
            let report = scan(label);
            assert!(
                report.has_branch(ReductionBranch::FixedHyperbolicPoint),
                "{label}: {:?}",
                report.branches
            );
            assert!(!report.is_irreducible());
        }
    }

    #[test]
    fn parabolic_affine_algebra_fixes_a_sphere_point() {
        // boost in (v1,v2) plus a parabolic element: preserves the null
        // line through e1 + e2
        let h = LorentzAlgElement::boost(2);
        let p = LorentzAlgElement::boost(3).add(&LorentzAlgElement::rotation(2, 3));
        let alg = Subalgebra::new(vec![h, p]);
        let report = reduction_scan(&alg, RHO).unwrap();
        assert!(
            report.has_branch(ReductionBranch::FixedSpherePoint),
            "branches: {:?}",
            report.branches
        );
    }

    #[test]
    fn rejects_non_closed_generators() {
        // a boost and a rotation that do not close
        let alg = Subalgebra::new(vec![
            LorentzAlgElement::boost(2),
            LorentzAlgElement::rotation(2, 3),
        ]);
        assert!(matches!(
            reduction_scan(&alg, RHO),
            Err(SubalgebraError::NotASubalgebra { .. })
        ));
    }
}
