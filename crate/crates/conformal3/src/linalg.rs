//! Shared numerical linear algebra: SVD-based rank decisions, orthonormal
//! spans, projections and principal angles between subspaces.
//!
//! Everything here works on dynamically sized vectors so the same code
//! serves the 7-coordinate similarity algebra and the 25-coordinate
//! Lorentz algebra.

use nalgebra::{DMatrix, DVector};

/// Number of singular values above `tol * s_max`. When even the largest
/// singular value is below `tol` the rank is 0, which gives the absolute
/// floor for all-tiny inputs.
pub fn rank_from_singular_values(singular: &[f64], tol: f64) -> usize {
    let s_max = singular.iter().cloned().fold(0.0f64, f64::max);
    if s_max <= tol {
        return 0;
    }
    singular.iter().filter(|&&s| s > tol * s_max).count()
}

/// Numerical rank of the span of `vectors` at relative tolerance `tol`.
pub fn subspace_rank(vectors: &[DVector<f64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = columns_matrix(vectors);
    let svd = m.svd(false, false);
    rank_from_singular_values(svd.singular_values.as_slice(), tol)
}

/// Matrix whose columns are the given vectors.
pub fn columns_matrix(vectors: &[DVector<f64>]) -> DMatrix<f64> {
    let rows = vectors[0].len();
    DMatrix::from_fn(rows, vectors.len(), |i, j| vectors[j][i])
}

/// Orthonormal basis of the span of `vectors`, as matrix columns, together
/// with the numerical rank that produced it.
pub fn orthonormal_span(vectors: &[DVector<f64>], tol: f64) -> (DMatrix<f64>, usize) {
    if vectors.is_empty() {
        return (DMatrix::zeros(0, 0), 0);
    }
    let m = columns_matrix(vectors);
    let svd = m.clone().svd(true, false);
    let rank = rank_from_singular_values(svd.singular_values.as_slice(), tol);
    let u = svd.u.expect("left singular vectors requested");
    (u.columns(0, rank).into_owned(), rank)
}

/// Orthonormal basis of the null space of `m` (right singular vectors with
/// singular value below the relative threshold). Wide matrices are padded
/// with zero rows so the thin SVD still carries the full right factor.
pub fn null_space(m: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let n = m.ncols();
    let padded = if m.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let rank = rank_from_singular_values(svd.singular_values.as_slice(), tol);
    let vt = svd.v_t.expect("right singular vectors requested");
    (rank..n).map(|i| vt.row(i).transpose()).collect()
}

/// Distance of `v` from the span of the orthonormal columns `onb`,
/// normalised by `max(1, |v|)`.
pub fn residual_from_span(onb: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    let norm = v.norm();
    if onb.ncols() == 0 {
        return norm / norm.max(1.0);
    }
    let coeffs = onb.transpose() * v;
    let proj = onb * coeffs;
    (v - proj).norm() / norm.max(1.0)
}

/// Largest sine of a principal angle between two subspaces given by
/// orthonormal columns, computed as `|(I - Qa Qa^T) Qb|_2`, which stays
/// accurate for tiny angles. Returns `None` when the dimensions differ
/// (the subspaces cannot be equal). Zero dimensions are equal by
/// convention.
pub fn max_principal_sine(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Option<f64> {
    if a.ncols() != b.ncols() {
        return None;
    }
    if a.ncols() == 0 {
        return Some(0.0);
    }
    let residual = b - a * (a.transpose() * b);
    let svd = residual.svd(false, false);
    let s = svd
        .singular_values
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    Some(s.min(1.0))
}

/// Subspace equality test: equal ranks and largest principal angle below
/// `tol` (measured by its sine).
pub fn spans_equal(a: &[DVector<f64>], b: &[DVector<f64>], tol: f64) -> bool {
    let (qa, ra) = orthonormal_span(a, tol);
    let (qb, rb) = orthonormal_span(b, tol);
    if ra != rb {
        return false;
    }
    match max_principal_sine(&qa, &qb) {
        Some(s) => s <= tol,
        None => false,
    }
}

/// Least-squares solution of `A x = b` via the SVD pseudoinverse.
pub fn solve_least_squares(a: &DMatrix<f64>, b: &DVector<f64>, tol: f64) -> DVector<f64> {
    let svd = a.clone().svd(true, true);
    svd.solve(b, tol).expect("SVD solve")
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    #[test]
    fn rank_of_plane_basis() {
        let v = vec![dvector![1.0, 0.0, 0.0], dvector![0.0, 1.0, 0.0]];
        assert_eq!(subspace_rank(&v, 1e-8), 2);
    }

    #[test]
    fn rank_collapses_near_dependence() {
        let v = vec![
            dvector![1.0, 0.0, 0.0],
            dvector![1.0 + 1e-12, 0.0, 0.0],
        ];
        assert_eq!(subspace_rank(&v, 1e-8), 1);
    }

    #[test]
    fn rank_of_empty_set_is_zero() {
        assert_eq!(subspace_rank(&[], 1e-8), 0);
    }

    #[test]
    fn rank_of_tiny_vectors_is_zero() {
        let v = vec![dvector![1e-14, 0.0, 0.0]];
        assert_eq!(subspace_rank(&v, 1e-8), 0);
    }

    #[test]
    fn rank_invariant_under_permutation_and_rotation() {
        let v = vec![dvector![1.0, 2.0, 3.0], dvector![0.0, 1.0, -1.0]];
        let w = vec![v[1].clone(), v[0].clone()];
        assert_eq!(subspace_rank(&v, 1e-8), subspace_rank(&w, 1e-8));
        // rotate coordinates by a fixed orthogonal map
        let c = 0.6f64;
        let s = 0.8f64;
        let rot = |x: &DVector<f64>| dvector![c * x[0] - s * x[1], s * x[0] + c * x[1], x[2]];
        let r: Vec<_> = v.iter().map(rot).collect();
        assert_eq!(subspace_rank(&v, 1e-8), subspace_rank(&r, 1e-8));
    }

    #[test]
    fn null_space_of_projection() {
        // projection on the first coordinate: kernel is the (e2, e3)-plane
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let ker = null_space(&m, 1e-10);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(v[0].abs() < 1e-12);
        }
    }

    #[test]
    fn principal_angle_detects_equality_and_difference() {
        let e1 = dvector![1.0, 0.0, 0.0];
        let e2 = dvector![0.0, 1.0, 0.0];
        let e3 = dvector![0.0, 0.0, 1.0];
        let mixed = dvector![1.0, 1.0, 0.0];
        assert!(spans_equal(
            &[e1.clone(), e2.clone()],
            &[mixed, e2.clone()],
            1e-9
        ));
        assert!(!spans_equal(&[e1.clone(), e2], &[e1, e3], 1e-9));
    }
}
