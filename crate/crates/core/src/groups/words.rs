//! Words over a generating set and elementary-matrix decompositions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::groups::ambient::{AmbientGroupSpec, Family};
use crate::groups::element::GroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(generator: usize) -> Self {
        Word(vec![Letter::new(generator, false)])
    }

    /// `g^e` for a single generator.
    pub fn power_of(generator: usize, e: i64) -> Self {
        Word(vec![Letter::new(generator, e < 0); e.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        Word(
            std::iter::repeat_n(base.0, e.unsigned_abs() as usize)
                .flatten()
                .collect(),
        )
    }

    /// `a b a^{-1} b^{-1}`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Free reduction.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; generators];
        for l in &self.0 {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Evaluate through generator images.
    pub fn evaluate(&self, images: &[GroupElement], identity: &GroupElement) -> Result<GroupElement> {
        let inverses: Vec<Option<GroupElement>> = {
            let mut used = vec![false; images.len()];
            for l in &self.0 {
                if l.generator >= images.len() {
                    return Err(Error::InvalidInput(format!(
                        "letter {} outside {} generators",
                        l.generator,
                        images.len()
                    )));
                }
                used[l.generator] |= l.inverse;
            }
            images
                .iter()
                .zip(used)
                .map(|(g, u)| if u { g.invert().ok() } else { None })
                .collect()
        };
        let mut acc = identity.clone();
        for l in &self.0 {
            let g = if l.inverse {
                inverses[l.generator]
                    .as_ref()
                    .ok_or(Error::NotUnimodular)?
            } else {
                &images[l.generator]
            };
            acc = acc.compose(g)?;
        }
        Ok(acc)
    }

    /// Parse tokens such as `s^3 f^-2` or `a b^-1`.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if token.is_empty() || token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent in {token:?}")))?,
                ),
                None => (token, 1),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name:?}")))?;
            letters.extend(Word::power_of(g, exp).0);
        }
        Ok(Word(letters))
    }

    /// Render with run-length exponents, e.g. `s^3 f^-2`.
    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            let name = names
                .get(l.generator)
                .cloned()
                .unwrap_or_else(|| format!("g{}", l.generator));
            let e = if l.inverse { -(run as i64) } else { run as i64 };
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = Vec::new();
        write!(f, "{}", self.display(&names))
    }
}

/// Index of `1 + E_ij` in the elementary generator list of size `n`.
fn elementary_index(n: usize, i: usize, j: usize) -> usize {
    i * (n - 1) + if j < i { j } else { j - 1 }
}

fn small(c: &BigInt) -> Result<i64> {
    c.to_i64()
        .ok_or_else(|| Error::Unsupported("elementary exponent beyond 64 bits".into()))
}

/// Express an element of `GL(n,Z)` / `SL(n,Z)` (or their affine extensions) as
/// a word in the standard generators of `ambient`.
pub fn decompose(g: &GroupElement, ambient: &AmbientGroupSpec) -> Result<Word> {
    ambient.check_member(g)?;
    let n = ambient.dim();
    let lin_family = ambient
        .family
        .linear()
        .ok_or_else(|| Error::Unsupported("decomposition without linear part".into()))?;
    if !matches!(lin_family, Family::Gl | Family::Sl) {
        return Err(Error::Unsupported(format!("decomposition in {ambient}")));
    }
    let offset = if ambient.family.is_affine() { n } else { 0 };
    let mut word = Word::empty();
    if let Some(x) = g.translation() {
        for (i, c) in x.0.iter().enumerate() {
            word = word.concat(&Word::power_of(i, small(c)?));
        }
    }
    let lin = decompose_linear(g.linear(), lin_family == Family::Gl)?;
    word = word.concat(&Word(
        lin.0
            .into_iter()
            .map(|l| Letter::new(l.generator + offset, l.inverse))
            .collect(),
    ));
    Ok(word)
}

/// Row reduction to a signed diagonal by elementary operations.
fn decompose_linear(g: &IntMatrix, allow_reflection: bool) -> Result<Word> {
    let n = g.rows();
    let mut a = g.to_rows();
    // ops[k] = (r, p, q) meaning row_r += q row_p, i.e. left multiplication by e_rp^q
    let mut ops: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut apply = |a: &mut Vec<Vec<BigInt>>, r: usize, p: usize, q: BigInt| {
        if q.is_zero() {
            return;
        }
        let src = a[p].clone();
        for (x, y) in a[r].iter_mut().zip(src.iter()) {
            *x += &q * y;
        }
        ops.push((r, p, q));
    };
    for c in 0..n {
        loop {
            let nz: Vec<usize> = (c..n).filter(|&r| !a[r][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&r| a[r][c].abs())
                .expect("nonempty");
            for &r in &nz {
                if r != p {
                    let q = a[r][c].div_floor(&a[p][c]);
                    apply(&mut a, r, p, -q);
                }
            }
        }
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or(Error::NotUnimodular)?;
        if p != c {
            apply(&mut a, c, p, BigInt::one());
            let q = -(&a[p][c] / &a[c][c]);
            apply(&mut a, p, c, q);
        }
        if !a[c][c].abs().is_one() {
            return Err(Error::NotUnimodular);
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let q = -(&a[r][c] * &a[c][c]);
                apply(&mut a, r, c, q);
            }
        }
    }
    // g = E_1^{-1} ... E_k^{-1} D
    let mut word = Word::empty();
    for (r, p, q) in &ops {
        word = word.concat(&Word::power_of(elementary_index(n, *r, *p), -small(q)?));
    }
    let mut signs: Vec<bool> = (0..n).map(|i| a[i][i].is_negative()).collect();
    if signs.iter().filter(|&&s| s).count() % 2 == 1 {
        if !allow_reflection {
            return Err(Error::NotInAmbient("odd number of sign flips in SL".into()));
        }
        word = word.concat(&Word::letter(n * (n - 1)));
        signs[0] = !signs[0];
    }
    let neg: Vec<usize> = (0..n).filter(|&i| signs[i]).collect();
    for pair in neg.chunks(2) {
        let (i, j) = (pair[0], pair[1]);
        let eij = Word::letter(elementary_index(n, i, j));
        let eji = Word::letter(elementary_index(n, j, i));
        let w = eij.concat(&eji.inverse()).concat(&eij);
        word = word.concat(&w.pow(2));
    }
    Ok(word.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_display() {
        let n = names(&["s", "f"]);
        let w = Word::parse("s^3 f^-2", &n).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.display(&n), "s^3 f^-2");
        assert_eq!(w.exponent_sums(2), vec![3, -2]);
        assert!(Word::parse("q", &n).is_err());
        assert_eq!(Word::parse("1", &n).unwrap(), Word::empty());
    }

    #[test]
    fn reduction_and_inverse() {
        let w = Word(vec![Letter::new(0, false), Letter::new(1, false)]);
        assert!(w.concat(&w.inverse()).reduced().is_empty());
    }

    #[test]
    fn decompose_examples() {
        let sl4 = AmbientGroupSpec::standard(Family::Sl, 4).unwrap();
        let a = IntMatrix::from_rows(&[
            vec![0, 0, -1, -1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
        ]);
        for m in [a.clone(), a.neg(), a.pow(3).unwrap()] {
            let g = GroupElement::matrix(m);
            let w = decompose(&g, &sl4).unwrap();
            assert_eq!(w.evaluate(&sl4.generators, &sl4.identity()).unwrap(), g);
        }
        let gl2 = AmbientGroupSpec::standard(Family::Gl, 2).unwrap();
        let swap = GroupElement::matrix(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        let w = decompose(&swap, &gl2).unwrap();
        assert_eq!(w.evaluate(&gl2.generators, &gl2.identity()).unwrap(), swap);

        let aff = AmbientGroupSpec::standard(Family::AffineSl, 4).unwrap();
        let g = GroupElement::semidirect(crate::exactlin::IntVector::from_i64(&[1, -2, 0, 3]), a).unwrap();
        let w = decompose(&g, &aff).unwrap();
        assert_eq!(w.evaluate(&aff.generators, &aff.identity()).unwrap(), g);
    }
}
