//! Infinite-conjugacy-class certificates for affine groups `Z^n ⋊ Γ`.

use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntVector};
use crate::groups::ambient::{AmbientGroupSpec, Family};
use crate::groups::ball::word_ball_from;
use crate::groups::element::GroupElement;

/// Column `j` such that `g - 1` is nonzero only in column `j` and squares to zero.
fn transvection_column(g: &IntMatrix) -> Result<Option<usize>> {
    let n = g.rows();
    let d = g.try_sub(&IntMatrix::identity(n))?;
    if d.is_zero() || !d.try_mul(&d)?.is_zero() {
        return Ok(None);
    }
    let cols: Vec<usize> = (0..n).filter(|&j| !d.column(j).is_zero()).collect();
    Ok(if cols.len() == 1 { Some(cols[0]) } else { None })
}

/// Sizes of the truncated orbit of `x` under the linear generators, by radius.
fn orbit_growth(gens: &[IntMatrix], x: &IntVector, radius: usize) -> Result<Vec<usize>> {
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(x.clone());
    let mut frontier = vec![x.clone()];
    let mut sizes = vec![1];
    let inverses = gens.iter().map(|g| g.inverse_unimodular()).collect::<Result<Vec<_>>>()?;
    for _ in 0..radius {
        let mut next = Vec::new();
        for y in &frontier {
            for g in gens.iter().chain(&inverses) {
                let z = g.mul_vec(y)?;
                if seen.insert(z.clone()) {
                    next.push(z);
                }
            }
        }
        frontier = next;
        sizes.push(seen.len());
    }
    Ok(sizes)
}

/// Certifies that every nontrivial conjugacy class of `Z^n ⋊ Γ` is infinite.
///
/// Elements `(x, g)` with `g != 1` are conjugate to `(x + (1 - g) y, g)` for every
/// `y`, which is an infinite family. Translations `(x, 1)` have class `{(h x, 1)}`,
/// which is infinite as soon as, for every coordinate `j`, some generator is a
/// transvection `1 + N` with `N^2 = 0` supported on column `j`: then
/// `(1 + N)^k x = x + k x_j N e_j`.
pub fn icc_certificate(ambient: &AmbientGroupSpec, radius: usize) -> Result<CertifiedClaim> {
    if !ambient.family.is_affine() {
        return Err(Error::Unsupported(format!("{ambient} is not a semidirect product")));
    }
    let statement = format!("{ambient} has infinite conjugacy classes");
    let n = ambient.dim();
    if ambient.family == Family::AffineTrivial {
        let t = GroupElement::translation_only(IntVector::unit(n, 0));
        let mut orbit = std::collections::BTreeSet::new();
        for g in &ambient.generators {
            orbit.insert(t.conjugate(g)?);
        }
        let class = CertifiedClaim::decided(
            format!("the class of {t} is a single element"),
            orbit.len() == 1,
        );
        return Ok(CertifiedClaim::refuted(statement)
            .with_children(vec![class])
            .with_data(json!({ "reason": "abelian group: every conjugacy class is a singleton" })));
    }
    let linear: Vec<IntMatrix> = ambient
        .generators
        .iter()
        .filter(|g| g.translation().is_none_or(|t| t.is_zero()))
        .map(|g| g.linear().clone())
        .collect();

    let identity = GroupElement::matrix(IntMatrix::identity(n));
    let wrapped: Vec<GroupElement> = linear.iter().cloned().map(GroupElement::matrix).collect();
    let ball = word_ball_from(&wrapped, &identity, radius)?;
    let mut nontrivial = 0usize;
    let mut all_move = true;
    for g in ball.elements.iter().filter(|g| !g.is_identity()) {
        nontrivial += 1;
        all_move &= !IntMatrix::identity(n).try_sub(g.linear())?.is_zero();
    }
    let nonlinear = CertifiedClaim::decided(
        "classes of (x, g) with g != 1 contain (x + (1 - g) y, g) for all y",
        all_move,
    )
    .with_data(json!({ "checked_linear_elements": nontrivial, "radius": radius }));

    let mut columns = vec![None; n];
    for (idx, g) in linear.iter().enumerate() {
        if let Some(j) = transvection_column(g)? {
            columns[j].get_or_insert(idx);
        }
    }
    let growth = orbit_growth(&linear, &IntVector::unit(n, 0), radius)?;
    let translations = if columns.iter().all(Option::is_some) {
        CertifiedClaim::computed("every nonzero translation has an infinite linear orbit").with_data(json!({
            "transvection_generators": columns.iter().map(|c| ambient.generator_names
                [ambient.generators.len() - linear.len() + c.unwrap()].clone()).collect::<Vec<_>>(),
            "orbit_growth_e1": growth,
        }))
    } else {
        CertifiedClaim::evidence(
            "every nonzero translation has an infinite linear orbit",
            [("radius", json!(radius)), ("orbit_growth_e1", json!(growth))],
        )
    };
    Ok(CertifiedClaim::aggregate(statement, vec![nonlinear, translations]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_groups_are_icc() {
        for (family, n) in [(Family::AffineGl, 2), (Family::AffineSl, 4), (Family::AffineSp, 2)] {
            let amb = AmbientGroupSpec::standard(family, n).unwrap();
            let c = icc_certificate(&amb, 2).unwrap();
            assert!(c.status.is_computed(), "{family:?}: {}", c.render_text());
        }
    }

    #[test]
    fn bare_translations_are_not_icc() {
        let amb = AmbientGroupSpec::standard(Family::AffineTrivial, 2).unwrap();
        assert!(icc_certificate(&amb, 2).unwrap().status.is_refuted());
        let gl = AmbientGroupSpec::standard(Family::Gl, 2).unwrap();
        assert!(icc_certificate(&gl, 1).is_err());
    }
}
