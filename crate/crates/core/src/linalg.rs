//! Exact Gaussian elimination over a quadratic field.

use crate::exactnum::QuadScalar;

/// Rank of a dense matrix with entries in one quadratic field. The matrix is
/// consumed; elimination is exact (no pivoting heuristics are needed over an
/// exact field, any nonzero pivot does).
pub(crate) fn rank(mut rows: Vec<Vec<QuadScalar>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in (rank + 1)..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            let pivot_row = rows[rank].clone();
            for (entry, lead) in rows[r][col..].iter_mut().zip(&pivot_row[col..]) {
                let delta = &factor * lead;
                *entry = &*entry - &delta;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
