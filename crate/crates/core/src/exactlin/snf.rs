//! Smith normal form and integer linear systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::matrix::{IntMatrix, IntVector};

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    d: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    // V is stored transposed so column operations become row operations.
    vt: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.d.iter_mut() {
            row.swap(a, b);
        }
        self.vt.swap(a, b);
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        axpy(&mut self.d, dst, src, q);
        axpy(&mut self.u, dst, src, q);
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in self.d.iter_mut() {
            let t = q * &row[src];
            row[dst] -= t;
        }
        axpy(&mut self.vt, dst, src, q);
    }
}

fn axpy(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (s, d) = if src < dst {
        let (lo, hi) = rows.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.to_rows(),
        u: identity_rows(rows),
        vt: identity_rows(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let e = &w.d[i][j];
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.abs() < w.d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            if pi != t {
                w.swap_rows(t, pi);
            }
            if pj != t {
                w.swap_cols(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if w.d[i][t].is_zero() {
                    continue;
                }
                let q = w.d[i][t].div_floor(&w.d[t][t]);
                w.sub_row(i, t, &q);
                dirty |= !w.d[i][t].is_zero();
            }
            for j in t + 1..cols {
                if w.d[t][j].is_zero() {
                    continue;
                }
                let q = w.d[t][j].div_floor(&w.d[t][t]);
                w.sub_col(j, t, &q);
                dirty |= !w.d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.d[i][j].is_multiple_of(&w.d[t][t]));
            match bad {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    w.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.d[t][t].is_negative() {
            for x in w.d[t].iter_mut() {
                *x = -&*x;
            }
            for x in w.u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SnfResult {
        u: IntMatrix::new(rows, rows, w.u.into_iter().flatten().collect()).expect("shape"),
        d: IntMatrix::new(rows, cols, w.d.into_iter().flatten().collect()).expect("shape"),
        v: IntMatrix::new(cols, cols, w.vt.into_iter().flatten().collect())
            .expect("shape")
            .transpose(),
    }
}

/// Outcome of an integer linear solve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinearSolution {
    Solution {
        particular: IntVector,
        kernel: Vec<IntVector>,
    },
    NoSolution,
}

/// Solve `m x = b` over the integers.
pub fn solve_linear_integer(m: &IntMatrix, b: &IntVector) -> Result<LinearSolution> {
    if m.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            m.rows(),
            m.cols(),
            b.len()
        )));
    }
    let snf = smith_normal_form(m);
    let c = snf.u.mul_vec(b)?;
    let diag = snf.diagonal();
    let r = diag.iter().take_while(|x| !x.is_zero()).count();
    let mut y = IntVector::zeros(m.cols());
    for i in 0..m.rows() {
        if i < r {
            let (q, rem) = c.0[i].div_rem(&diag[i]);
            if !rem.is_zero() {
                return Ok(LinearSolution::NoSolution);
            }
            y.0[i] = q;
        } else if !c.0[i].is_zero() {
            return Ok(LinearSolution::NoSolution);
        }
    }
    let particular = snf.v.mul_vec(&y)?;
    let kernel = (r..m.cols()).map(|j| snf.v.column(j)).collect();
    Ok(LinearSolution::Solution { particular, kernel })
}

/// Basis of the integer kernel `{x : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols()).map(|j| snf.v.column(j)).collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SnfResult {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        let s = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn solve_examples() {
        let two = IntMatrix::from_rows(&[vec![2]]);
        match solve_linear_integer(&two, &IntVector::from_i64(&[4])).unwrap() {
            LinearSolution::Solution { particular, kernel } => {
                assert_eq!(particular, IntVector::from_i64(&[2]));
                assert!(kernel.is_empty());
            }
            LinearSolution::NoSolution => panic!("2x = 4 is solvable"),
        }
        assert_eq!(
            solve_linear_integer(&two, &IntVector::from_i64(&[3])).unwrap(),
            LinearSolution::NoSolution
        );
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]);
        match solve_linear_integer(&m, &IntVector::from_i64(&[3, 4])).unwrap() {
            LinearSolution::Solution { particular, .. } => {
                assert_eq!(particular, IntVector::from_i64(&[3, 2]))
            }
            LinearSolution::NoSolution => panic!(),
        }
        assert!(solve_linear_integer(&m, &IntVector::from_i64(&[1])).is_err());
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }
}
