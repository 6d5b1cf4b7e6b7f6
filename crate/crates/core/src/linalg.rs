//! Small dense linear-algebra helpers on coefficient vectors.

use nalgebra::{DMatrix, DVector};

/// Pads `m` with zero rows so that a thin SVD returns a full right basis.
fn padded(m: &DMatrix<f64>) -> DMatrix<f64> {
    let (r, c) = m.shape();
    if r >= c {
        m.clone()
    } else {
        DMatrix::from_fn(c, c, |i, j| if i < r { m[(i, j)] } else { 0.0 })
    }
}

/// Orthonormal basis (as columns) of the null space of `m`; singular values
/// below `tol` times the largest (or `tol` itself) count as zero.
pub fn kernel(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = m.ncols();
    if m.nrows() == 0 || m.amax() == 0.0 {
        return DMatrix::identity(n, n);
    }
    let svd = padded(m).svd(false, true);
    let vt = svd.v_t.expect("requested Vᵀ");
    let cut = tol * svd.singular_values.max().max(1.0);
    let cols: Vec<DVector<f64>> =
        (0..n).filter(|&k| svd.singular_values[k] <= cut).map(|k| vt.row(k).transpose()).collect();
    columns(n, &cols)
}

/// Orthonormal basis of the column span of `a`.
pub fn orth(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = a.nrows();
    if a.ncols() == 0 || a.amax() == 0.0 {
        return DMatrix::zeros(n, 0);
    }
    let at = padded(&a.transpose());
    let svd = at.svd(false, true);
    let vt = svd.v_t.expect("requested Vᵀ");
    let cut = tol * svd.singular_values.max().max(1.0);
    let mut idx: Vec<usize> = (0..n).filter(|&k| svd.singular_values[k] > cut).collect();
    idx.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let cols: Vec<DVector<f64>> = idx.iter().map(|&k| vt.row(k).transpose()).collect();
    columns(n, &cols)
}

/// Orthonormal basis of the orthogonal complement of the span of `a`.
pub fn complement(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    kernel(&a.transpose(), tol)
}

/// Numerical rank.
pub fn rank(a: &DMatrix<f64>, tol: f64) -> usize {
    orth(a, tol).ncols()
}

/// Assembles columns into a matrix with `n` rows (possibly zero columns).
pub fn columns(n: usize, cols: &[DVector<f64>]) -> DMatrix<f64> {
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_wide_matrix() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let k = kernel(&m, 1e-9);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).amax() < 1e-12);
    }

    #[test]
    fn complement_dimensions() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(orth(&a, 1e-9).ncols(), 2);
        let c = complement(&a, 1e-9);
        assert_eq!(c.ncols(), 1);
        assert!((a.transpose() * c).amax() < 1e-12);
    }
}
