//! Fixtures shared by the benchmarks.

use curcoh_core::SparseRatMatrix;

/// Dense pseudo-random integer matrix with entries in `-5..=5`.
pub fn sample_matrix(n: usize) -> SparseRatMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| ((i * 7 + j * 13) % 11) as i64 - 5).collect()).collect();
    SparseRatMatrix::from_dense_i64(&rows)
}
