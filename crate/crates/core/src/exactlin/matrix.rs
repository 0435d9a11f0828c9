//! Dense integer matrices and vectors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::poly::IntPolynomial;
use crate::intrepr::Int;

/// Integer column vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(#[serde(with = "crate::intrepr::vec")] pub Vec<BigInt>);

impl IntVector {
    pub fn zeros(n: usize) -> Self {
        IntVector(vec![BigInt::zero(); n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        IntVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn dot(&self, other: &Self) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        Self::identity(n).scale(&BigInt::from(c))
    }

    /// Build from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_big_rows(big).expect("ragged rows")
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn diag(values: &[BigInt]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// `1 + c E_ij` in dimension `n` (0-based indices).
    pub fn elementary(n: usize, i: usize, j: usize, c: &BigInt) -> Self {
        let mut m = Self::identity(n);
        m.entries[i * n + j] += c;
        m
    }

    /// Block diagonal `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    /// Assemble `[[a, b], [c, d]]` from equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        let mut m = Self::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, a.get(i, j).clone());
                m.set(i, n + j, b.get(i, j).clone());
                m.set(n + i, j, c.get(i, j).clone());
                m.set(n + i, n + j, d.get(i, j).clone());
            }
        }
        m
    }

    /// Sub-block of rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let mut m = Self::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &IntVector) -> Result<IntVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(IntVector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn trace(&self) -> Result<BigInt> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.get(i, i).clone()).sum())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Characteristic polynomial `det(xI - self)`.
    ///
    /// Bareiss elimination over `Z[x]`. The leading principal minors of
    /// `xI - A` are monic, so no pivoting is needed and every division is an
    /// exact division by a monic polynomial.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(IntPolynomial::one());
        }
        let mut a: Vec<Vec<IntPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = -self.get(i, j).clone();
                        if i == j {
                            IntPolynomial::new(vec![c, BigInt::one()])
                        } else {
                            IntPolynomial::constant(c)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut prev = IntPolynomial::one();
        for k in 0..n - 1 {
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = v
                        .div_exact_monic(&prev)?
                        .expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        Ok(a[n - 1][n - 1].clone())
    }

    /// Companion matrix of a monic polynomial `x^n + a_{n-1} x^{n-1} + ... + a_0`.
    ///
    /// Layout: first row `(-a_{n-1}, ..., -a_0)`, ones on the subdiagonal.
    /// For `x^4 + x + 1` this gives
    /// `[[0,0,-1,-1],[1,0,0,0],[0,1,0,0],[0,0,1,0]]`.
    pub fn companion(p: &IntPolynomial) -> Result<Self> {
        p.require_monic()?;
        let n = p.degree().unwrap_or(0);
        if n == 0 {
            return Err(Error::WrongDegree {
                expected: ">= 1".into(),
                got: 0,
            });
        }
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.set(0, j, -p.coeff(n - 1 - j));
        }
        for i in 1..n {
            m.set(i, i - 1, BigInt::one());
        }
        Ok(m)
    }

    /// Inverse over the rationals as `(adjugate-like numerator, denominator)`,
    /// with the denominator positive; `None` if singular.
    pub fn inverse_rational(&self) -> Result<Option<Vec<Vec<BigRational>>>> {
        let n = self.require_square()?;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self
                    .row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(None);
            };
            a.swap(c, p);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x /= &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..2 * n {
                        let t = &f * &a[c][k];
                        a[r][k] -= t;
                    }
                }
            }
        }
        Ok(Some(a.into_iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// Exact inverse of a matrix in `GL(n, Z)`.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let inv = self.inverse_rational()?.ok_or(Error::NotUnimodular)?;
        let mut rows = Vec::with_capacity(inv.len());
        for row in inv {
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                if !x.is_integer() {
                    return Err(Error::NotUnimodular);
                }
                r.push(x.to_integer());
            }
            rows.push(r);
        }
        Self::from_big_rows(rows)
    }

    /// `self^e`; negative exponents require a unimodular matrix.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let n = self.require_square()?;
        let base = if e < 0 {
            self.inverse_unimodular()?
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = Self::identity(n);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Regular commutator `a b a^{-1} b^{-1}`.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        let ai = a.inverse_unimodular()?;
        let bi = b.inverse_unimodular()?;
        a.try_mul(b)?.try_mul(&ai)?.try_mul(&bi)
    }
}

impl std::ops::Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

// Matrices serialize as nested row arrays.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Int>> = (0..self.rows)
            .map(|i| self.row(i).iter().cloned().map(Int).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Int>>::deserialize(d)?;
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        IntMatrix::from_big_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Solve a square nonsingular rational system `m x = b`.
pub fn solve_rational(m: &IntMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    let n = m.require_square()?;
    if b.len() != n {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = m
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(None);
        };
        a.swap(c, p);
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..=n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut s = a[i][n].clone();
        for k in i + 1..n {
            s -= &a[i][k] * &x[k];
        }
        x[i] = s / &a[i][i];
    }
    Ok(Some(x))
}

/// Determinant by cofactor expansion along the first row. Exponential; kept
/// as an independent reference route for small matrices.
pub fn det_cofactor(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square()?;
    Ok(cofactor_rec(&m.to_rows(), n))
}

fn cofactor_rec(a: &[Vec<BigInt>], n: usize) -> BigInt {
    match n {
        0 => BigInt::one(),
        1 => a[0][0].clone(),
        _ => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &a[0][j] * cofactor_rec(&minor, n - 1);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(3).det().unwrap(), BigInt::one());
        assert_eq!(m(&[vec![5, -1], vec![1, 0]]).det().unwrap(), BigInt::one());
        let c = IntMatrix::companion(&IntPolynomial::from_i64(&[1, 1, 0, 0, 1])).unwrap();
        assert_eq!(c.det().unwrap(), det_cofactor(&c).unwrap());
        assert_eq!(c.det().unwrap(), BigInt::one());
        assert!(m(&[vec![1, 2, 3]]).det().is_err());
        // needs a row swap
        assert_eq!(
            m(&[vec![0, 1], vec![1, 0]]).det().unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            m(&[vec![5, -1], vec![1, 0]]).char_poly().unwrap(),
            IntPolynomial::from_i64(&[1, -5, 1])
        );
        assert_eq!(
            IntMatrix::zeros(2, 2).char_poly().unwrap(),
            IntPolynomial::from_i64(&[0, 0, 1])
        );
        let a = m(&[
            vec![0, 0, -1, -1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
        ]);
        assert_eq!(
            a.char_poly().unwrap(),
            IntPolynomial::from_i64(&[1, 1, 0, 0, 1])
        );
    }

    #[test]
    fn companion_layout() {
        let a = IntMatrix::companion(&IntPolynomial::from_i64(&[1, 1, 0, 0, 1])).unwrap();
        assert_eq!(
            a,
            m(&[
                vec![0, 0, -1, -1],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
            ])
        );
        assert_eq!(
            IntMatrix::companion(&IntPolynomial::from_i64(&[-1, 1])).unwrap(),
            m(&[vec![1]])
        );
        assert!(IntMatrix::companion(&IntPolynomial::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn inverse_and_pow() {
        let a = m(&[vec![5, -1], vec![1, 0]]);
        let ai = a.inverse_unimodular().unwrap();
        assert!((&a * &ai).is_identity());
        assert_eq!(a.pow(-2).unwrap(), &ai * &ai);
        assert_eq!(a.pow(0).unwrap(), IntMatrix::identity(2));
        assert!(m(&[vec![2, 0], vec![0, 1]]).inverse_unimodular().is_err());
    }

    #[test]
    fn serde_nested_rows() {
        let a = m(&[vec![1, -2], vec![3, 4]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[1,-2],[3,4]]");
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let big: IntMatrix = serde_json::from_str("[[\"123456789012345678901234567890\"]]").unwrap();
        assert_eq!(big.get(0, 0).to_string(), "123456789012345678901234567890");
    }
}
