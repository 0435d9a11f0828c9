//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::matrix::IntMatrix;

/// Integer polynomial, coefficients in ascending degree order.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector and every other polynomial has a nonzero
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    #[serde(with = "crate::intrepr::vec")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn require_monic(&self) -> Result<()> {
        if self.is_monic() {
            Ok(())
        } else {
            Err(Error::NotMonic(self.to_string()))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Division with remainder by a monic divisor. Exact over the integers.
    pub fn divrem_monic(&self, d: &Self) -> Result<(Self, Self)> {
        d.require_monic()?;
        let dd = d.degree().unwrap_or(0);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].clone();
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c.clone();
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &c * dj;
            }
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem_monic(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem_monic(d)?.1)
    }

    /// Exact quotient by a monic divisor; `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, d: &Self) -> Result<Option<Self>> {
        let (q, r) = self.divrem_monic(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Resultant via the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return BigInt::zero(),
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut syl = IntMatrix::zeros(size, size);
        for r in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                syl.set(r, r + k, c.clone());
            }
        }
        for r in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                syl.set(n + r, r + k, c.clone());
            }
        }
        syl.det().expect("sylvester matrix is square")
    }

    /// Integer roots of a monic polynomial (rational roots of monic integer
    /// polynomials are integers).
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return roots;
        }
        // strip factors of x
        let mut p = self.clone();
        while p.coeff(0).is_zero() && !p.is_zero() {
            if !roots.contains(&BigInt::zero()) {
                roots.push(BigInt::zero());
            }
            p = Self::new(p.coeffs[1..].to_vec());
        }
        for d in divisors(&p.coeff(0)) {
            for cand in [d.clone(), -d] {
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
        roots.sort();
        roots
    }

    /// Rational roots via the rational root theorem.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return roots;
        }
        let mut p = self.clone();
        if p.coeff(0).is_zero() {
            roots.push(BigRational::zero());
            while p.coeff(0).is_zero() {
                p = Self::new(p.coeffs[1..].to_vec());
            }
        }
        let nums = divisors(&p.coeff(0));
        let dens = divisors(&p.leading());
        for a in &nums {
            for b in &dens {
                for s in [BigInt::one(), -BigInt::one()] {
                    let cand = BigRational::new(a * &s, b.clone());
                    if p.eval_rational(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Primitive integer polynomial proportional to the rational gcd.
    pub fn gcd_rational(&self, other: &Self) -> Self {
        let mut a = self.to_rational();
        let mut b = other.to_rational();
        trim_q(&mut a);
        trim_q(&mut b);
        while !b.is_empty() {
            let r = rem_q(&a, &b);
            a = b;
            b = r;
        }
        from_rational_primitive(&a)
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1;
        let c = &r[k] / &lb;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k - db + j] -= t;
        }
        r.pop();
        trim_q(&mut r);
    }
    trim_q(&mut r);
    r
}

fn from_rational_primitive(v: &[BigRational]) -> IntPolynomial {
    if v.is_empty() {
        return IntPolynomial::zero();
    }
    let lcm = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    IntPolynomial::new(ints).primitive_part()
}

/// Positive divisors of |n| (n = 0 yields an empty list).
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut result = m;
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All `m` with `totient(m) <= d`, ascending. Since `totient(m) >= sqrt(m/2)`,
/// searching `m <= 2 d^2 + 2` is exhaustive.
pub fn orders_with_totient_at_most(d: u64) -> Vec<u64> {
    (1..=2 * d * d + 2).filter(|&m| totient(m) <= d).collect()
}

/// The `m`-th cyclotomic polynomial, built from `x^m - 1` by exact division.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    let mut cache = BTreeMap::new();
    cyclotomic_cached(m, &mut cache)
}

fn cyclotomic_cached(m: u64, cache: &mut BTreeMap<u64, IntPolynomial>) -> IntPolynomial {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut p = IntPolynomial::monomial(BigInt::one(), m as usize).sub(&IntPolynomial::one());
    for d in 1..m {
        if m.is_multiple_of(d) {
            let f = cyclotomic_cached(d, cache);
            p = p
                .div_exact_monic(&f)
                .expect("cyclotomic factors are monic")
                .expect("cyclotomic factor divides x^m - 1");
        }
    }
    cache.insert(m, p.clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn display_and_trim() {
        assert_eq!(p(&[1, -5, 1, 0, 0]).to_string(), "x^2 - 5x + 1");
        assert_eq!(p(&[0, 0]).to_string(), "0");
        assert_eq!(p(&[-1, 0, 0, 1]).to_string(), "x^3 - 1");
    }

    #[test]
    fn divrem_by_monic() {
        // x^3 = x (x^2 - 3) + 3x
        let (q, r) = p(&[0, 0, 0, 1]).divrem_monic(&p(&[-3, 0, 1])).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[0, 3]));
        assert!(p(&[1, 2]).divrem_monic(&p(&[1, 2])).is_err());
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn totient_bounds() {
        assert_eq!(orders_with_totient_at_most(2), vec![1, 2, 3, 4, 6]);
        assert_eq!(
            orders_with_totient_at_most(4),
            vec![1, 2, 3, 4, 5, 6, 8, 10, 12]
        );
    }

    #[test]
    fn resultant_and_gcd() {
        // res(x^2 - 1, x - 1) = 0
        assert!(p(&[-1, 0, 1]).resultant(&p(&[-1, 1])).is_zero());
        assert_eq!(p(&[-1, 0, 1]).gcd_rational(&p(&[2, -2])), p(&[-1, 1]));
        assert_eq!(p(&[1, 1, 1]).gcd_rational(&p(&[1, 2])), p(&[1]));
    }

    #[test]
    fn rational_roots() {
        assert_eq!(p(&[-6, 1, 1]).integer_roots(), vec![BigInt::from(-3), BigInt::from(2)]);
        assert_eq!(
            p(&[-1, 2]).rational_roots(),
            vec![BigRational::new(1.into(), 2.into())]
        );
        assert!(p(&[1, 1, 0, 1]).integer_roots().is_empty());
    }
}
