//! Benchmark fixtures shared by the criterion targets.

use cocert_core::IntMatrix;

/// Deterministic dense test matrix with small entries.
pub fn dense_matrix(n: usize, seed: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((i as i64 * 7 + j as i64 * 13 + seed) % 19) - 9)
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}
