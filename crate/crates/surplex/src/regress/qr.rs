//! Householder QR with column pivoting, specialized for least squares
//! with a handful of columns and many rows.

/// Least-squares solution of min ‖y − Xβ‖² together with the pieces of
/// the factorization that frequentist inference needs.
///
/// Columns are reported in pivot order: `perm[j]` is the original index
/// of the column that ended up in position `j`. Columns at positions
/// `rank..` were found linearly dependent on earlier ones and carry no
/// coefficient.
pub(crate) struct LeastSquares {
    pub rank: usize,
    pub perm: Vec<usize>,
    /// Coefficients for pivot positions `0..rank`.
    pub beta: Vec<f64>,
    /// Residual sum of squares.
    pub rss: f64,
    /// Diagonal of (XᵀX)⁻¹ restricted to the retained columns, in
    /// pivot order; multiplied by the residual variance this gives
    /// squared standard errors.
    pub xtx_inv_diag: Vec<f64>,
}

/// Factor the column-major matrix `columns` (each of length `y.len()`)
/// and solve the least-squares problem. Rank deficiency is detected by
/// comparing pivot column norms against the first pivot; dependent
/// columns are excluded rather than producing unstable coefficients.
pub(crate) fn solve(columns: &[Vec<f64>], y: &[f64]) -> LeastSquares {
    let n = y.len();
    let k = columns.len();
    debug_assert!(columns.iter().all(|c| c.len() == n));

    let mut a: Vec<Vec<f64>> = columns.to_vec();
    let mut qty = y.to_vec();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut rank = k.min(n);
    let mut first_norm = 0.0;

    for j in 0..k.min(n) {
        // Pivot on the largest remaining column norm, recomputed from
        // scratch each step; with this few columns exactness beats the
        // classical downdating trick.
        let mut best = j;
        let mut best_sq = -1.0;
        for c in j..k {
            let sq: f64 = a[c][j..].iter().map(|v| v * v).sum();
            if sq > best_sq {
                best_sq = sq;
                best = c;
            }
        }
        a.swap(j, best);
        perm.swap(j, best);

        let norm = best_sq.max(0.0).sqrt();
        if j == 0 {
            if norm == 0.0 {
                rank = 0;
                break;
            }
            first_norm = norm;
        } else if norm <= first_norm * f64::EPSILON * (n.max(k) as f64) {
            rank = j;
            break;
        }

        // Householder reflection v = x − α e₁ zeroing column j below
        // the diagonal; α keeps v well away from cancellation.
        let alpha = if a[j][j] >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[j][j..].to_vec();
        v[0] -= alpha;
        let vtv: f64 = v.iter().map(|x| x * x).sum();

        for c in (j + 1)..k {
            let dot: f64 = v.iter().zip(&a[c][j..]).map(|(vi, xi)| vi * xi).sum();
            let s = 2.0 * dot / vtv;
            for (vi, xi) in v.iter().zip(a[c][j..].iter_mut()) {
                *xi -= s * vi;
            }
        }
        let dot: f64 = v.iter().zip(&qty[j..]).map(|(vi, xi)| vi * xi).sum();
        let s = 2.0 * dot / vtv;
        for (vi, xi) in v.iter().zip(qty[j..].iter_mut()) {
            *xi -= s * vi;
        }

        a[j][j] = alpha;
        for r in (j + 1)..n {
            a[j][r] = 0.0;
        }
    }

    // Everything of Qᵀy beyond the rank is residual.
    let rss: f64 = qty[rank..].iter().map(|v| v * v).sum();

    // Back-substitute Rβ = (Qᵀy)[..rank]. R lives in the upper strip:
    // R[r][j] = a[j][r] for r ≤ j < rank.
    let mut beta = vec![0.0; rank];
    for i in (0..rank).rev() {
        let mut s = qty[i];
        for c in (i + 1)..rank {
            s -= a[c][i] * beta[c];
        }
        beta[i] = s / a[i][i];
    }

    // diag((XᵀX)⁻¹) = diag(R⁻¹ R⁻ᵀ): accumulate squared rows of R⁻¹ by
    // solving R z = e_j for each unit vector.
    let mut xtx_inv_diag = vec![0.0; rank];
    let mut z = vec![0.0; rank];
    for j in 0..rank {
        z[..j].iter_mut().for_each(|v| *v = 0.0);
        z[j] = 1.0 / a[j][j];
        for i in (0..j).rev() {
            let mut s = 0.0;
            for c in (i + 1)..=j {
                s -= a[c][i] * z[c];
            }
            z[i] = s / a[i][i];
        }
        for i in 0..=j {
            xtx_inv_diag[i] += z[i] * z[i];
        }
    }

    LeastSquares {
        rank,
        perm,
        beta,
        rss,
        xtx_inv_diag,
    }
}
