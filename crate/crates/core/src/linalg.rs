//! Small dense complex-matrix helpers: adjoints, Hermiticity checks, and an
//! eigenvalue bound for the positive-semidefiniteness guard.
//!
//! The eigenvalue routine maps the complex Hermitian matrix H = X + iY to its
//! real symmetric embedding [[X, -Y], [Y, X]] (same spectrum, each eigenvalue
//! doubled) and runs a cyclic Jacobi sweep. Dimensions here are small state
//! spaces, so the O(n^3)-per-sweep cost is irrelevant; in exchange there is no
//! external LAPACK dependency to carry.

use ndarray::Array2;
use num_complex::Complex64;

/// Conjugate transpose.
pub fn adjoint(m: &Array2<Complex64>) -> Array2<Complex64> {
    m.t().mapv(|z| z.conj())
}

/// Largest absolute entry.
pub fn max_abs_entry(m: &Array2<Complex64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest absolute entry of m - m^H; zero for Hermitian matrices.
pub fn hermitian_defect(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Smallest eigenvalue of a Hermitian matrix.
///
/// The caller is responsible for `m` being (numerically) Hermitian; only the
/// Hermitian part enters via the symmetric embedding.
pub fn min_hermitian_eigenvalue(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix required");
    if n == 0 {
        return 0.0;
    }
    let mut a = Array2::<f64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            a[(i, j)] = z.re;
            a[(i + n, j + n)] = z.re;
            a[(i, j + n)] = -z.im;
            a[(i + n, j)] = z.im;
        }
    }
    symmetric_eigenvalues(a)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
/// Unsorted; accurate to ~machine precision times the matrix scale.
pub fn symmetric_eigenvalues(mut a: Array2<f64>) -> Vec<f64> {
    let n = a.nrows();
    let scale = a.iter().fold(0.0_f64, |acc, v| acc.max(v.abs())).max(1e-300);
    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= 1e-15 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- J^T A J with the (p,q) rotation [[c, s], [-s, c]].
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip - s * aiq;
                    a[(i, q)] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[(p, i)];
                    let aqi = a[(q, i)];
                    a[(p, i)] = c * api - s * aqi;
                    a[(q, i)] = s * api + c * aqi;
                }
            }
        }
    }
    (0..n).map(|i| a[(i, i)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn jacobi_matches_hand_computed_2x2() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let a = ndarray::array![[2.0, 1.0], [1.0, 2.0]];
        let mut eigs = symmetric_eigenvalues(a);
        eigs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(eigs[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_matches_hand_computed_3x3() {
        // Circulant [[0,1,1],[1,0,1],[1,1,0]]: eigenvalues 2, -1, -1.
        let a = ndarray::array![[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]];
        let mut eigs = symmetric_eigenvalues(a);
        eigs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(eigs[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[1], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[2], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn min_eigenvalue_of_complex_hermitian() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let m = ndarray::array![[c(1.0, 0.0), c(0.0, 1.0)], [c(0.0, -1.0), c(1.0, 0.0)]];
        assert_abs_diff_eq!(min_hermitian_eigenvalue(&m), 0.0, epsilon = 1e-12);
        // Pauli Z plus identity scaled: [[3, 0], [0, -1]].
        let d = ndarray::array![[c(3.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
        assert_abs_diff_eq!(min_hermitian_eigenvalue(&d), -1.0, epsilon = 1e-12);
    }

    #[test]
    fn rank_one_projector_spectrum() {
        // |v><v| for v = (1, i)/sqrt(2): eigenvalues 1 and 0.
        let v = [c(1.0, 0.0) / 2f64.sqrt(), c(0.0, 1.0) / 2f64.sqrt()];
        let mut m = Array2::<C>::zeros((2, 2));
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        assert_abs_diff_eq!(min_hermitian_eigenvalue(&m), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hermitian_defect(&m), 0.0, epsilon = 0.0);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = ndarray::array![[c(1.0, 2.0), c(3.0, -4.0)], [c(0.0, 1.0), c(5.0, 0.0)]];
        let a = adjoint(&m);
        assert_eq!(a[(0, 1)], c(0.0, -1.0));
        assert_eq!(a[(1, 0)], c(3.0, 4.0));
        assert_eq!(max_abs_entry(&m), 5.0);
    }
}
