//! Exhaustive checks for `GL(n,F_2)` acting on `F_2^n`.
//!
//! Vectors are bitmasks, bit `i` being coordinate `i`. Matrices store their
//! rows as bitmasks.

use std::collections::{BTreeSet, VecDeque};

use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::dynamics::atomic::{compose, invert, Perm};
use crate::error::{Error, Result};
use crate::groups::registry::Registry;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Matrix {
    rows: Vec<u32>,
}

impl F2Matrix {
    pub fn identity(n: usize) -> Self {
        F2Matrix {
            rows: (0..n).map(|i| 1 << i).collect(),
        }
    }

    /// `1 + E_ij`.
    pub fn transvection(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.rows[i] |= 1 << j;
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r & v).count_ones() & 1) << i))
    }

    pub fn mul(&self, other: &Self) -> Self {
        // row i of the product is sum over k of self[i][k] * other row k
        let rows = self
            .rows
            .iter()
            .map(|r| {
                other
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| r >> k & 1 == 1)
                    .fold(0, |acc, (_, o)| acc ^ o)
            })
            .collect();
        F2Matrix { rows }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let rows = (0..n)
            .map(|j| (0..n).fold(0, |acc, i| acc | ((self.rows[i] >> j & 1) << i)))
            .collect();
        F2Matrix { rows }
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut b = Self::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    b[r] ^= b[col];
                }
            }
        }
        Some(F2Matrix { rows: b })
    }

    /// The outer twist `g ↦ (g^{-1})^t`.
    pub fn transpose_inverse(&self) -> Self {
        self.inverse().expect("invertible").transpose()
    }

    /// The permutation of `F_2^n` induced by the matrix.
    pub fn permutation(&self) -> Perm {
        (0..1u32 << self.dim()).map(|v| self.apply(v) as usize).collect()
    }
}

/// Largest `n` for which the group is enumerated.
pub const MAX_RIGIDITY_DIM: usize = 4;

/// Largest `n` for which all permutations of `F_2^n` are enumerated.
const MAX_PERMUTATION_DIM: usize = 3;

pub fn gl_f2_generators(n: usize) -> Vec<F2Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(F2Matrix::transvection(n, i, j));
            }
        }
    }
    out
}

fn closure(generators: &[F2Matrix], n: usize) -> BTreeSet<F2Matrix> {
    let id = F2Matrix::identity(n);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.mul(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// `prod_{i<n} (2^n - 2^i)`.
pub fn gl_f2_order(n: usize) -> u64 {
    (0..n).map(|i| (1u64 << n) - (1u64 << i)).product()
}

/// Every element of `GL(n,F_2)`, generated from the transvections.
pub fn gl_f2(n: usize) -> Vec<F2Matrix> {
    closure(&gl_f2_generators(n), n).into_iter().collect()
}

/// Common fixed vectors of a set of matrices.
fn fixed_vectors<'a>(n: usize, group: impl Iterator<Item = &'a F2Matrix> + Clone) -> Vec<u32> {
    (0..1u32 << n)
        .filter(|&v| group.clone().all(|g| g.apply(v) == v))
        .collect()
}

/// Whether the derived subgroup is everything, computed as the normal closure
/// of the commutators of the generators.
fn is_perfect(generators: &[F2Matrix], n: usize, order: usize) -> bool {
    let mut normal_gens: Vec<F2Matrix> = Vec::new();
    for a in generators {
        for b in generators {
            let c = a.mul(b).mul(&a.inverse().expect("invertible")).mul(&b.inverse().expect("invertible"));
            normal_gens.push(c);
        }
    }
    loop {
        let h = closure(&normal_gens, n);
        let missing: Vec<F2Matrix> = generators
            .iter()
            .flat_map(|g| {
                let gi = g.inverse().expect("invertible");
                normal_gens.iter().map(move |c| g.mul(c).mul(&gi))
            })
            .filter(|c| !h.contains(c))
            .collect();
        if missing.is_empty() {
            return h.len() == order;
        }
        normal_gens.extend(missing);
    }
}

fn all_permutations(len: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = (0..len).collect();
    heap_permutations(len, &mut p, &mut out);
    out
}

fn heap_permutations(k: usize, p: &mut Perm, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, p, out);
}

/// Permutations `σ` with `σ(g x) = δ(g) σ(x)` for every generator `g`, where
/// `twisted` lists the permutations induced by `δ(g)`.
fn intertwiners(candidates: &[Perm], plain: &[Perm], twisted: &[Perm]) -> Vec<Perm> {
    candidates
        .iter()
        .filter(|s| plain.iter().zip(twisted).all(|(g, t)| compose(s, g) == compose(t, s)))
        .cloned()
        .collect()
}

fn bits(v: &[u32]) -> Vec<String> {
    v.iter().map(|x| format!("{x:b}")).collect()
}

/// Verifies that `GL(n,F_2) ↷ F_2^n` has no outer symmetries and no characters.
///
/// Clause (i): each stabilizer `Stab e` fixes only `e` besides `0`, so only
/// the identity commutes with the action. Clause (ii): the fixed vectors of the transpose
/// inverse image of `Stab e_1` are `{0}`, so that twist is not realized by any
/// permutation. Both are checked on the enumerated group, and for `n <= 3`
/// also against every permutation of `F_2^n`, which additionally computes the
/// normalizer of the image directly.
pub fn finite_action_rigidity(n: usize) -> Result<CertifiedClaim> {
    if !(2..=MAX_RIGIDITY_DIM).contains(&n) {
        return Err(Error::InvalidInput(format!("need 2 <= n <= {MAX_RIGIDITY_DIM}, got {n}")));
    }
    let group = gl_f2(n);
    let generators = gl_f2_generators(n);
    let order = CertifiedClaim::decided(format!("|GL({n},F_2)| = {}", gl_f2_order(n)), group.len() as u64 == gl_f2_order(n))
        .with_data(json!({ "enumerated": group.len() }));

    let points = 1u32 << n;
    let mut stabilizer_fixes = Vec::new();
    let mut clause_one_ok = true;
    for e in 0..points {
        let stab: Vec<&F2Matrix> = group.iter().filter(|g| g.apply(e) == e).collect();
        let fixed = fixed_vectors(n, stab.iter().copied());
        // 0 is fixed by everything and is the only globally fixed vector
        let expected: Vec<u32> = if e == 0 { vec![0] } else { vec![0, e] };
        clause_one_ok &= fixed == expected;
        stabilizer_fixes.push(json!({ "e": format!("{e:b}"), "fixed": bits(&fixed) }));
    }
    let mut clause_one = CertifiedClaim::decided(format!("Stab e fixes only 0 and e, for every e in F_2^{n}"), clause_one_ok)
        .with_data(json!({ "stabilizers": stabilizer_fixes }));

    let e1 = 1u32;
    let twisted_stab: Vec<F2Matrix> = group
        .iter()
        .filter(|g| g.apply(e1) == e1)
        .map(F2Matrix::transpose_inverse)
        .collect();
    let twisted_fixed = fixed_vectors(n, twisted_stab.iter());
    let global_fixed = fixed_vectors(n, group.iter());
    // σ(0) is fixed by the whole group, so σ(e_1) must be a nonzero fixed vector
    let clause_two_ok = twisted_fixed == [0] && global_fixed == [0];
    let mut clause_two = CertifiedClaim::decided(
        format!("no permutation of F_2^{n} intertwines the action with its transpose-inverse twist"),
        clause_two_ok,
    )
    .with_data(json!({
        "fixed_by_twisted_stabilizer": bits(&twisted_fixed),
        "fixed_by_group": bits(&global_fixed),
    }));

    let perfect = is_perfect(&generators, n, group.len());
    let characters = CertifiedClaim::decided(format!("GL({n},F_2) is perfect, so Char = {{1}}"), perfect);

    let mut children = vec![order];
    let mut normalizer_claim = None;
    if n <= MAX_PERMUTATION_DIM {
        let perms = all_permutations(points as usize);
        let plain: Vec<Perm> = generators.iter().map(F2Matrix::permutation).collect();
        let twisted: Vec<Perm> = generators.iter().map(|g| g.transpose_inverse().permutation()).collect();
        let commuting = intertwiners(&perms, &plain, &plain);
        let twisted_maps = intertwiners(&perms, &plain, &twisted);
        let image: BTreeSet<Perm> = group.iter().map(F2Matrix::permutation).collect();
        let normalizer = perms
            .iter()
            .filter(|s| {
                let si = invert(s);
                plain.iter().all(|g| image.contains(&compose(&compose(s, g), &si)))
            })
            .count();
        let identity: Perm = (0..points as usize).collect();
        clause_one = clause_one.with_children(vec![CertifiedClaim::decided(
            "the identity is the only permutation commuting with the action",
            commuting == [identity],
        )
        .with_data(json!({ "permutations": perms.len(), "commuting": commuting.len() }))]);
        clause_one = clause_one.weaken_to_children();
        clause_two = clause_two.with_children(vec![CertifiedClaim::decided(
            "exhaustive search finds no twisted intertwiner",
            twisted_maps.is_empty(),
        )
        .with_data(json!({ "permutations": perms.len(), "witness": twisted_maps.first() }))]);
        clause_two = clause_two.weaken_to_children();
        normalizer_claim = Some(
            CertifiedClaim::decided(
                format!("the normalizer of GL({n},F_2) in Sym(F_2^{n}) is GL({n},F_2)"),
                normalizer == group.len(),
            )
            .with_data(json!({ "normalizer_order": normalizer })),
        );
    }
    children.push(clause_one);
    children.push(clause_two);
    match normalizer_claim {
        Some(c) => children.push(c),
        None => {
            let ax = Registry::bundled().axiom("gl-f2-automorphisms")?;
            children.push(CertifiedClaim::axiom(ax.statement.clone(), ax.citation.clone())?);
        }
    }
    children.push(characters);
    Ok(CertifiedClaim::aggregate(
        format!("Aut*(GL({n},F_2) acting on F_2^{n}) = GL({n},F_2) and Char GL({n},F_2) = {{1}}"),
        children,
    )
    .with_data(json!({ "n": n, "group_order": group.len() })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_arithmetic() {
        for g in gl_f2(3) {
            let gi = g.inverse().unwrap();
            assert_eq!(g.mul(&gi), F2Matrix::identity(3));
            assert_eq!(g.transpose().transpose(), g);
            for v in 0..8 {
                assert_eq!(gi.apply(g.apply(v)), v);
            }
        }
        let t = F2Matrix::transvection(2, 0, 1);
        assert_eq!(t.apply(0b10), 0b11);
        assert!(F2Matrix { rows: vec![1, 1] }.inverse().is_none());
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_f2(2).len(), 6);
        assert_eq!(gl_f2(3).len(), 168);
        assert_eq!(gl_f2_order(4), 20160);
    }

    #[test]
    fn rank_three_is_rigid() {
        let c = finite_action_rigidity(3).unwrap();
        assert!(c.fully_computed(), "{}", c.render_text());
    }

    #[test]
    fn rank_two_twist_is_inner() {
        // S_3 has a sign character and transpose-inverse is inner there
        let c = finite_action_rigidity(2).unwrap();
        let labels: Vec<&str> = c.children.iter().map(|k| k.status.label()).collect();
        assert_eq!(labels, ["COMPUTED", "COMPUTED", "REFUTED", "COMPUTED", "REFUTED"]);
        assert!(finite_action_rigidity(5).is_err());
    }
}
