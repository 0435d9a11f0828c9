//! 1-cocycles of `Sp(2n,Z)` on `Z^{2n}` from the block generators.
//!
//! Unknowns are the values of `δ` on `P(A) = diag(A, A^{-t})` for the standard
//! generators `A` of `GL(n,Z)`, on `U(B) = [[1,B],[0,1]]` and on
//! `L(C) = [[1,0],[C,1]]` for `B`, `C` in the symmetric basis. Every constraint
//! is the free-differential expansion of a relation that holds in `Sp(2n,Z)`:
//!
//! * `U(B) U(C) = U(C) U(B)`, giving `B δ₂(C) = C δ₂(B)`,
//! * `P(A) U(B) P(A)^{-1} = U(A B A^t)`, the covariance of `δ₁`,
//! * the same two families for `L`, with `P(A) L(C) P(A)^{-1} = L(A^{-t} C A^{-1})`.
//!
//! Cocycles of the group satisfy every such relation, so if the solutions of
//! this system are coboundaries then so is every cocycle. The only outside
//! input is that the three families generate.

use num_bigint::BigInt;
use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::cohom::h1::{h1, OneCohomology, PresentationAction};
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::groups::ambient::{symmetric_basis, AmbientGroupSpec, Family};
use crate::groups::registry::Registry;
use crate::groups::words::Word;

/// Generator layout of [`AmbientGroupSpec::standard`] for `Sp`.
struct Layout {
    n: usize,
    gl: usize,
    sym: usize,
}

impl Layout {
    fn new(n: usize) -> Self {
        Layout {
            n,
            gl: n * (n - 1) + 1,
            sym: n * (n + 1) / 2,
        }
    }

    fn upper(&self, b: usize) -> usize {
        self.gl + b
    }

    fn lower(&self, c: usize) -> usize {
        self.gl + self.sym + c
    }

    /// Product of basis generators equal to `U(S)` or `L(S)`.
    fn symmetric_word(&self, s: &IntMatrix, lower: bool) -> Result<Word> {
        let mut coeffs = Vec::with_capacity(self.sym);
        for i in 0..self.n {
            coeffs.push(s.get(i, i).clone());
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                coeffs.push(s.get(i, j).clone());
            }
        }
        let mut w = Word::empty();
        for (k, c) in coeffs.iter().enumerate() {
            let e: i64 = c
                .try_into()
                .map_err(|_| Error::InvalidInput("symmetric coefficient out of range".into()))?;
            let g = if lower { self.lower(k) } else { self.upper(k) };
            w = w.concat(&Word::power_of(g, e));
        }
        Ok(w)
    }
}

/// Relator words for the commutation relations of one unipotent family.
pub fn symmetry_relators(n: usize, lower: bool) -> Vec<Word> {
    let layout = Layout::new(n);
    let idx = |k| if lower { layout.lower(k) } else { layout.upper(k) };
    let mut out = Vec::new();
    for b in 0..layout.sym {
        for c in b + 1..layout.sym {
            out.push(Word::commutator(&Word::letter(idx(b)), &Word::letter(idx(c))));
        }
    }
    out
}

/// Relator words `P(A) X P(A)^{-1} X'^{-1}` for both unipotent families.
pub fn covariance_relators(n: usize) -> Result<Vec<Word>> {
    let layout = Layout::new(n);
    let amb = AmbientGroupSpec::standard(Family::Sp, n)?;
    let basis = symmetric_basis(n);
    let mut out = Vec::new();
    for a in 0..layout.gl {
        let pa = amb.generators[a].linear();
        let m = pa.block(0, 0, n, n);
        let mit = pa.block(n, n, n, n);
        let pw = Word::letter(a);
        for (k, (_, b)) in basis.iter().enumerate() {
            let upper = m.try_mul(b)?.try_mul(&m.transpose())?;
            let lhs = pw.concat(&Word::letter(layout.upper(k))).concat(&pw.inverse());
            out.push(lhs.concat(&layout.symmetric_word(&upper, false)?.inverse()));

            let lower = mit.try_mul(b)?.try_mul(&mit.transpose())?;
            let lhs = pw.concat(&Word::letter(layout.lower(k))).concat(&pw.inverse());
            out.push(lhs.concat(&layout.symmetric_word(&lower, true)?.inverse()));
        }
    }
    Ok(out)
}

/// The constraint system as a presentation action on `Z^{2n}`.
pub fn sp_constraint_system(n: usize) -> Result<PresentationAction> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2, got {n}")));
    }
    let amb = AmbientGroupSpec::standard(Family::Sp, n)?;
    let mut relators = symmetry_relators(n, false);
    relators.extend(symmetry_relators(n, true));
    relators.extend(covariance_relators(n)?);
    PresentationAction::new(
        amb.generator_names.clone(),
        relators,
        amb.generators.iter().map(|g| g.linear().clone()).collect(),
    )
}

/// Solves the constraint system and compares the solutions with the coboundaries.
pub fn h1_sp_structured(n: usize) -> Result<CertifiedClaim> {
    let pa = sp_constraint_system(n)?;
    let cohomology: OneCohomology = h1(&pa)?;
    let solver = CertifiedClaim::decided(
        format!("every solution of the Sp({},Z) cocycle constraints is a coboundary", 2 * n),
        cohomology.is_zero(),
    )
    .with_data(json!({
        "unknowns": pa.rank * pa.action.len(),
        "relations": pa.relators.len(),
        "z1_rank": cohomology.z1_basis.len(),
        "b1_generators": cohomology.b1_generators.len(),
        "quotient": cohomology.describe(),
    }));
    let gen = Registry::bundled().axiom("sp-generation")?;
    let generation = CertifiedClaim::axiom(gen.statement.clone(), gen.citation.clone())?;
    Ok(CertifiedClaim::aggregate(
        format!("H^1(Sp({},Z), Z^{}) = 0", 2 * n, 2 * n),
        vec![solver, generation],
    ))
}

/// `[1 + m E_ij, 1 + E_jk] = 1 + m E_ik` for distinct `i, j, k` (0-based).
pub fn verify_steinberg_commutator(n: usize, i: usize, j: usize, k: usize, m: i64) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n >= 3, got {n}")));
    }
    if i == j || j == k || i == k {
        return Err(Error::InvalidInput(format!("indices {i}, {j}, {k} are not distinct")));
    }
    if i.max(j).max(k) >= n {
        return Err(Error::InvalidInput(format!("index out of range for n = {n}")));
    }
    let m = BigInt::from(m);
    let a = IntMatrix::elementary(n, i, j, &m);
    let b = IntMatrix::elementary(n, j, k, &BigInt::from(1));
    Ok(IntMatrix::commutator(&a, &b)? == IntMatrix::elementary(n, i, k, &m))
}
