//! Dense complex least squares by Householder QR with column pivoting.

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub(crate) struct LeastSquares {
    pub rank: usize,
    /// Basic solution: free variables (trailing pivot columns) set to zero.
    pub solution: Vec<Complex64>,
    /// Null space basis, one vector per rank deficiency, unit 2-norm.
    pub null_space: Vec<Vec<Complex64>>,
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn max_abs(matrix: &[Vec<Complex64>]) -> f64 {
    matrix.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `min ||M x - b||_2`, with numerical rank taken at `|R_kk| > threshold`.
pub(crate) fn least_squares(matrix: &[Vec<Complex64>], rhs: &[Complex64], threshold: f64) -> LeastSquares {
    let m = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Complex64>> = matrix.to_vec();
    let mut b = rhs.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let steps = m.min(n);
    let mut rank = 0;

    for k in 0..steps {
        // Pivot on the remaining column of largest norm.
        let (pivot, pivot_norm) = (k..n)
            .map(|j| (j, (k..m).map(|i| a[i][j].norm_sqr()).sum::<f64>()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("nonempty column range");
        if pivot_norm.sqrt() <= threshold {
            break;
        }
        if pivot != k {
            for row in a.iter_mut() {
                row.swap(k, pivot);
            }
            perm.swap(k, pivot);
        }
        let x: Vec<Complex64> = (k..m).map(|i| a[i][k]).collect();
        let xn = norm2(&x);
        let phase = if x[0].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let alpha = -phase * xn;
        let mut v = x;
        v[0] -= alpha;
        let vn2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vn2 > 0.0 {
            for j in k..n {
                let dot: Complex64 = (k..m).map(|i| v[i - k].conj() * a[i][j]).sum();
                let f = dot * (2.0 / vn2);
                for i in k..m {
                    a[i][j] -= v[i - k] * f;
                }
            }
            let dot: Complex64 = (k..m).map(|i| v[i - k].conj() * b[i]).sum();
            let f = dot * (2.0 / vn2);
            for i in k..m {
                b[i] -= v[i - k] * f;
            }
        }
        if a[k][k].norm() <= threshold {
            break;
        }
        rank = k + 1;
    }

    let back = |rhs_top: &[Complex64]| -> Vec<Complex64> {
        let mut y = vec![ZERO; rank];
        for i in (0..rank).rev() {
            let s: Complex64 = ((i + 1)..rank).map(|j| a[i][j] * y[j]).sum();
            y[i] = (rhs_top[i] - s) / a[i][i];
        }
        y
    };

    let y = back(&b[..rank]);
    let mut solution = vec![ZERO; n];
    for (i, &yi) in y.iter().enumerate() {
        solution[perm[i]] = yi;
    }

    let null_space = (rank..n)
        .map(|free| {
            let col: Vec<Complex64> = (0..rank).map(|i| -a[i][free]).collect();
            let y = back(&col);
            let mut v = vec![ZERO; n];
            for (i, &yi) in y.iter().enumerate() {
                v[perm[i]] = yi;
            }
            v[perm[free]] = Complex64::new(1.0, 0.0);
            let s = norm2(&v);
            v.iter().map(|c| c / s).collect()
        })
        .collect();

    LeastSquares { rank, solution, null_space }
}

pub(crate) fn residual_norm(matrix: &[Vec<Complex64>], x: &[Complex64], rhs: &[Complex64]) -> f64 {
    matrix
        .iter()
        .zip(rhs)
        .map(|(row, &bi)| {
            let r: Complex64 = row.iter().zip(x).map(|(a, b)| a * b).sum::<Complex64>() - bi;
            r.norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}
