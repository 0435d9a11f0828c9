//! Clause-by-clause reports for the two hypothesis bundles on `G_0 ⊂ G`.
//!
//! Kind B asks for an infinite `G_0` in a group without finite normal
//! subgroups, a quasi-normalizer equal to `G_0`, cosets moved by every `g != 1`
//! and an infinite normal subgroup with the relative property (T) meeting `G_0`
//! in infinite index. Kind D asks for an infinite `G_0` in an ICC group, almost
//! malnormality and property (T) of a normal subgroup, and the Haagerup
//! property of `G_0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::dynamics::coset::moves_cosets_scan;
use crate::error::{Error, Result};
use crate::exactlin::{orders_with_totient_at_most, IntMatrix, IntVector};
use crate::groups::element::GroupElement;
use crate::groups::icc::icc_certificate;
use crate::groups::registry::GroupPair;
use crate::groups::subgroup::SubgroupSpec;
use crate::malnorm::scan::malnormal_scan;
use crate::numfield::is_cyclotomic_product;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionKind {
    B,
    D,
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionKind::B => write!(f, "B"),
            ConditionKind::D => write!(f, "D"),
        }
    }
}

impl FromStr for ConditionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(ConditionKind::B),
            "D" | "d" => Ok(ConditionKind::D),
            _ => Err(Error::InvalidInput(format!("unknown condition {s:?}"))),
        }
    }
}

/// Search bounds of the bounded clauses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    /// Word ball radius of the malnormality scan.
    pub radius: usize,
    pub exp_bound: u64,
    /// Word ball radius of the elements tested for moving cosets.
    pub coset_radius: usize,
    /// Coset windows, as ball radii or lattice bounds.
    pub schedule: Vec<usize>,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            radius: 2,
            exp_bound: 20,
            coset_radius: 1,
            schedule: vec![1, 2],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub pair: String,
    pub kind: ConditionKind,
    pub truncation: Truncation,
    /// One child per clause, in the order (a) to (d).
    pub claim: CertifiedClaim,
}

impl ConditionReport {
    pub fn clauses(&self) -> &[CertifiedClaim] {
        &self.claim.children
    }

    pub fn any_refuted(&self) -> bool {
        self.claim.any_refuted()
    }
}

/// `lcm{m : φ(m) <= n}`, a multiple of the order of every finite-order element
/// of `GL(n,Z)` and of `Z^n ⋊ GL(n,Z)`.
fn finite_order_exponent(n: usize) -> i64 {
    orders_with_totient_at_most(n as u64)
        .into_iter()
        .fold(1i64, |acc, m| {
            let m = m as i64;
            acc / num_integer::gcd(acc, m) * m
        })
}

/// Exact test for infinite order.
///
/// A non-cyclotomic characteristic polynomial has an eigenvalue off the unit
/// roots. Otherwise a finite order divides the exponent above, so `g^L != 1`
/// settles it.
pub fn has_infinite_order(g: &GroupElement) -> Result<bool> {
    if !is_cyclotomic_product(&g.linear().char_poly()?)? {
        return Ok(true);
    }
    Ok(!g.pow(finite_order_exponent(g.dim()))?.is_identity())
}

fn clause_infinite(pair: &GroupPair, kind: ConditionKind) -> Result<CertifiedClaim> {
    let gens = pair.subgroup_generators()?;
    let mut witness = None;
    for g in &gens {
        if has_infinite_order(g)? {
            witness = Some(g.clone());
            break;
        }
    }
    let infinite = match &witness {
        Some(g) => CertifiedClaim::computed(format!("G0 is infinite: {g} has infinite order")),
        None => CertifiedClaim::evidence(
            "G0 is infinite",
            [("note", json!("no generator of infinite order"))],
        ),
    };
    let statement = match kind {
        ConditionKind::B => "(a) G0 is infinite and G has no finite normal subgroups",
        ConditionKind::D => "(a) G0 is infinite",
    };
    let mut children = vec![infinite];
    if kind == ConditionKind::B {
        children.push(icc_claim(pair)?);
    }
    Ok(CertifiedClaim::aggregate(statement, children))
}

/// ICC for semidirect products, refuted by a central `-1` otherwise.
///
/// In an ICC group every finite normal subgroup is trivial, and a central
/// `-1` spans a finite normal subgroup, so the same claim serves both kinds.
fn icc_claim(pair: &GroupPair) -> Result<CertifiedClaim> {
    if pair.is_affine() {
        return icc_certificate(&pair.ambient, 2);
    }
    let minus = GroupElement::matrix(IntMatrix::scalar(pair.ambient.dim(), -1));
    if pair.ambient.check_member(&minus).is_ok() {
        return Ok(CertifiedClaim::refuted(format!("{} is ICC", pair.ambient)).with_children(vec![
            CertifiedClaim::computed("-1 is central, so {1, -1} is a finite normal subgroup"),
        ]));
    }
    Ok(CertifiedClaim::evidence(
        format!("{} is ICC", pair.ambient),
        [("note", json!("no structural certificate for this ambient group"))],
    ))
}

fn clause_malnormal(pair: &GroupPair, kind: ConditionKind, t: &Truncation) -> Result<CertifiedClaim> {
    let statement = match kind {
        ConditionKind::B => "(b) the quasi-normalizer of G0 is G0",
        ConditionKind::D => "(b) G0 is almost malnormal",
    };
    let child = match &pair.subgroup {
        SubgroupSpec::PointStabilizer => {
            let n = pair.ambient.dim();
            // 1 + E_01 only touches the second coordinate, so it fixes e_0
            let tv = GroupElement::linear_only(IntMatrix::elementary(n, 0, 1, &1.into()));
            let e0 = IntVector::unit(n, 0);
            let fixes = tv.act(&e0)? == e0 && has_infinite_order(&tv)? && pair.ambient.check_member(&tv).is_ok();
            match kind {
                ConditionKind::B => CertifiedClaim::decided(
                    "g G0 g^-1 ∩ G0 = Stab(x) for g = (x, h), of infinite index since the orbit of x != 0 is infinite",
                    icc_certificate(&pair.ambient, 1)?.status.is_computed(),
                ),
                ConditionKind::D => CertifiedClaim::decided(
                    "Stab(0) ∩ Stab(e_1) is finite",
                    !fixes,
                )
                .with_data(json!({ "x": e0, "infinite_order_stabilizer_element": tv })),
            }
        }
        SubgroupSpec::Translations => {
            let gens = pair.subgroup_generators()?;
            let oracle = pair.subgroup.oracle()?;
            let mut normal = true;
            for g in &pair.ambient.generators {
                for s in &gens {
                    normal &= oracle.decide(&s.conjugate(g)?)?.is_member();
                }
            }
            CertifiedClaim::decided("G0 is not normal in G", !normal)
                .with_data(json!({ "normal": normal }))
        }
        _ => malnormal_scan(pair, t.radius, t.exp_bound)?,
    };
    Ok(CertifiedClaim::aggregate(statement, vec![child]))
}

fn clause_moves(pair: &GroupPair, t: &Truncation) -> Result<CertifiedClaim> {
    let scan = moves_cosets_scan(pair, t.coset_radius, &t.schedule)?;
    Ok(CertifiedClaim::aggregate("(c) every g != 1 moves infinitely many cosets", vec![scan]))
}

fn axioms_with_prefix(pair: &GroupPair, prefix: &str) -> Result<Vec<CertifiedClaim>> {
    pair.axioms
        .iter()
        .filter(|a| a.id.starts_with(prefix))
        .map(|a| CertifiedClaim::axiom(a.statement.clone(), a.citation.clone()))
        .collect()
}

fn unregistered(what: &str) -> CertifiedClaim {
    CertifiedClaim::evidence(what, [("note", json!("no registry axiom covers this pair"))])
}

fn clause_rigidity(pair: &GroupPair, kind: ConditionKind) -> Result<CertifiedClaim> {
    let mut children = Vec::new();
    match kind {
        ConditionKind::B => {
            let rel = axioms_with_prefix(pair, "relative-t")?;
            if rel.is_empty() {
                children.push(unregistered("G has an infinite normal subgroup with the relative property (T)"));
            } else {
                children.extend(rel);
                // the registry axioms name H = Z^n, the translations
                let meets = pair.is_affine() && !matches!(pair.subgroup, SubgroupSpec::Translations);
                children.push(CertifiedClaim::decided(
                    "H = Z^n meets G0 trivially, so in infinite index",
                    meets,
                ));
            }
        }
        ConditionKind::D => {
            let t = axioms_with_prefix(pair, "property-t")?;
            if t.is_empty() {
                children.push(unregistered("G has an infinite normal subgroup with property (T)"));
            } else {
                children.extend(t);
            }
            children.push(haagerup_claim(pair)?);
            children.push(icc_claim(pair)?);
        }
    }
    let statement = match kind {
        ConditionKind::B => "(d) relative property (T) of an infinite normal subgroup",
        ConditionKind::D => "(d) property (T), Haagerup property of G0, ICC",
    };
    Ok(CertifiedClaim::aggregate(statement, children))
}

fn haagerup_claim(pair: &GroupPair) -> Result<CertifiedClaim> {
    let gens = pair.subgroup_generators()?;
    let mut abelian = true;
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            abelian &= a.compose(b)? == b.compose(a)?;
        }
    }
    let map = pair.axiom_map();
    let children = if abelian {
        let ax = match map.get("haagerup-abelian") {
            Some(a) => CertifiedClaim::axiom(a.statement.clone(), a.citation.clone())?,
            None => unregistered("abelian groups have the Haagerup property"),
        };
        vec![CertifiedClaim::computed("the generators of G0 commute"), ax]
    } else {
        match map.iter().find(|(id, _)| id.starts_with("haagerup-")) {
            Some((_, a)) => vec![CertifiedClaim::axiom(a.statement.clone(), a.citation.clone())?],
            None => vec![unregistered("G0 has the Haagerup property")],
        }
    };
    Ok(CertifiedClaim::aggregate("G0 has the Haagerup property", children))
}

/// Builds the report for one pair and bundle.
pub fn condition_report(pair: &GroupPair, kind: ConditionKind, truncation: &Truncation) -> Result<ConditionReport> {
    let clauses = vec![
        clause_infinite(pair, kind)?,
        clause_malnormal(pair, kind, truncation)?,
        clause_moves(pair, truncation)?,
        clause_rigidity(pair, kind)?,
    ];
    let claim = CertifiedClaim::aggregate(format!("{} satisfies condition {kind}", pair.id), clauses).with_data(json!({
        "pair": pair.id,
        "kind": kind,
        "truncation": truncation,
    }));
    Ok(ConditionReport {
        pair: pair.id.clone(),
        kind,
        truncation: truncation.clone(),
        claim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Registry;

    fn report(id: &str, kind: ConditionKind) -> ConditionReport {
        let pair = Registry::bundled().build_example(id).unwrap();
        condition_report(&pair, kind, &Truncation::default()).unwrap()
    }

    fn labels(r: &ConditionReport) -> Vec<&'static str> {
        r.clauses().iter().map(|c| c.status.label()).collect()
    }

    #[test]
    fn orders() {
        assert_eq!(finite_order_exponent(2), 12);
        let rot = GroupElement::matrix(IntMatrix::from_rows(&[vec![0, -1], vec![1, 1]]));
        assert!(!has_infinite_order(&rot).unwrap());
        let shear = GroupElement::matrix(IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert!(has_infinite_order(&shear).unwrap());
        let golden = GroupElement::matrix(IntMatrix::from_rows(&[vec![5, -1], vec![1, 0]]));
        assert!(has_infinite_order(&golden).unwrap());
        // (x, -1) squares to the identity
        let flip = GroupElement::semidirect(IntVector::from_i64(&[3, 1]), IntMatrix::scalar(2, -1)).unwrap();
        assert!(!has_infinite_order(&flip).unwrap());
    }

    #[test]
    fn affine_gl_passes_b() {
        let r = report("zn-gln", ConditionKind::B);
        assert!(!r.any_refuted(), "{}", r.claim.render_text());
        assert_eq!(labels(&r), ["COMPUTED", "COMPUTED", "COMPUTED", "AXIOM"]);
    }

    #[test]
    fn affine_gl_point_stabilizer_is_not_malnormal() {
        let r = report("zn-gln", ConditionKind::D);
        assert!(r.clauses()[1].status.is_refuted());
    }

    #[test]
    fn normal_translations_fail_b() {
        let r = report("zn-translations", ConditionKind::B);
        assert!(r.clauses()[1].status.is_refuted(), "{}", r.claim.render_text());
    }

    #[test]
    fn affine_sl4_condition_d() {
        let r = report("z4-sl4", ConditionKind::D);
        assert!(!r.any_refuted(), "{}", r.claim.render_text());
        assert_eq!(r.clauses()[0].status.label(), "COMPUTED");
        let d = &r.clauses()[3];
        assert!(d.children.iter().any(|c| c.statement.contains("property (T)")));
        assert!(r.claim.axioms_cited());
    }

    #[test]
    fn linear_ambient_has_central_sign() {
        let r = report("gl2-golden", ConditionKind::B);
        assert!(r.clauses()[0].status.is_refuted());
    }
}
