//! Truncated actions on `G / G_0`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntVector};
use crate::groups::ambient::doubling;
use crate::groups::ball::word_ball;
use crate::groups::element::GroupElement;
use crate::groups::registry::GroupPair;
use crate::groups::subgroup::{MembershipOracle, SubgroupSpec};
use crate::groups::words::Word;
use crate::numfield::NumberFieldElement;

/// Which cosets are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CosetWindow {
    /// Point stabilizers: cosets are the vectors with `|x|_∞ <= bound`.
    Lattice { bound: u32 },
    /// Cosets met by the word ball of the given radius.
    Ball { radius: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CosetImage {
    Coset(usize),
    OutOfWindow,
}

/// A finite window of `G / G_0` with canonical representatives. Index 0 is `G_0`.
pub struct CosetSpace<'a> {
    pair: &'a GroupPair,
    oracle: MembershipOracle<'a>,
    window: CosetWindow,
    reps: Vec<GroupElement>,
    keyed: HashMap<GroupElement, usize>,
    buckets: Option<Buckets>,
}

/// Candidate lookup for subgroups with a finite-index abelian part `A_0`.
///
/// `g ↦ g T g^{-1}` is constant on cosets of `A_0` when `T` commutes with `A_0`,
/// so `g G_0` can only equal `r G_0` if `g T g^{-1} = (r t) T (r t)^{-1}` for some
/// `t` in a transversal of `A_0` in `G_0`. Candidates are confirmed by membership.
struct Buckets {
    test: GroupElement,
    transversal: Vec<GroupElement>,
    map: HashMap<GroupElement, Vec<usize>>,
}

impl Buckets {
    fn for_pair(pair: &GroupPair) -> Result<Option<Self>> {
        let (test, transversal) = match &pair.subgroup {
            SubgroupSpec::SignedCyclic { a } => (a.clone(), vec![IntMatrix::identity(a.rows())]),
            SubgroupSpec::UnitEmbedding { embedding } => (
                embedding.unit_matrix(&NumberFieldElement::generator(embedding.field()))?,
                embedding.galois_matrices().to_vec(),
            ),
            SubgroupSpec::DoubledUnits { embedding, transversal } => {
                let x = NumberFieldElement::generator(embedding.field());
                let mut ts = Vec::new();
                for j in transversal {
                    for s in embedding.galois_matrices() {
                        ts.push(j.try_mul(&doubling(s)?)?);
                    }
                }
                (doubling(&embedding.unit_matrix(&x)?)?, ts)
            }
            _ => return Ok(None),
        };
        let wrap = |m: IntMatrix| {
            if pair.is_affine() {
                GroupElement::linear_only(m)
            } else {
                GroupElement::matrix(m)
            }
        };
        Ok(Some(Buckets {
            test: wrap(test),
            transversal: transversal.into_iter().map(wrap).collect(),
            map: HashMap::new(),
        }))
    }

    fn key(&self, g: &GroupElement) -> Result<GroupElement> {
        self.test.conjugate(g)
    }

    fn insert(&mut self, rep: &GroupElement, index: usize) -> Result<()> {
        for t in &self.transversal {
            let key = self.key(&rep.compose(t)?)?;
            self.map.entry(key).or_default().push(index);
        }
        Ok(())
    }
}

/// Canonical representative when `G_0` is a point stabilizer or the translations.
fn canonical(spec: &SubgroupSpec, g: &GroupElement) -> Option<GroupElement> {
    let n = g.dim();
    match spec {
        // (x, h) G_0 = (x, 1) G_0
        SubgroupSpec::PointStabilizer => Some(GroupElement::translation_only(
            g.translation().cloned().unwrap_or_else(|| IntVector::zeros(n)),
        )),
        // (x, h) Z^n = (0, h) Z^n
        SubgroupSpec::Translations => Some(GroupElement::linear_only(g.linear().clone())),
        _ => None,
    }
}

/// Vectors of `[-bound, bound]^n`, ordered by sup norm and then lexicographically.
fn lattice_box(n: usize, bound: u32) -> Vec<IntVector> {
    let b = bound as i64;
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().map(|c| c.abs()).max().unwrap_or(0), v.clone()));
    out.iter().map(|v| IntVector::from_i64(v)).collect()
}

impl<'a> CosetSpace<'a> {
    pub fn new(pair: &'a GroupPair, window: CosetWindow) -> Result<Self> {
        let oracle = pair.subgroup.oracle()?;
        let mut space = CosetSpace {
            pair,
            oracle,
            window,
            reps: Vec::new(),
            keyed: HashMap::new(),
            buckets: Buckets::for_pair(pair)?,
        };
        match window {
            CosetWindow::Lattice { bound } => {
                if !matches!(pair.subgroup, SubgroupSpec::PointStabilizer) {
                    return Err(Error::KindMismatch(format!(
                        "lattice windows need a point stabilizer, {} has {}",
                        pair.id,
                        pair.subgroup.label()
                    )));
                }
                for x in lattice_box(pair.ambient.dim(), bound) {
                    space.push(GroupElement::translation_only(x))?;
                }
            }
            CosetWindow::Ball { radius } => {
                let ball = word_ball(&pair.ambient, radius)?;
                for g in ball.elements {
                    if space.find(&g)?.is_none() {
                        let rep = canonical(&pair.subgroup, &g).unwrap_or(g);
                        space.push(rep)?;
                    }
                }
            }
        }
        if space.reps.is_empty() || !space.oracle.decide(&space.reps[0])?.is_member() {
            return Err(Error::Precondition("the window does not contain the identity coset".into()));
        }
        Ok(space)
    }

    /// Lattice window for point stabilizers, ball window otherwise.
    pub fn truncated(pair: &'a GroupPair, truncation: usize) -> Result<Self> {
        let window = match pair.subgroup {
            SubgroupSpec::PointStabilizer => CosetWindow::Lattice {
                bound: u32::try_from(truncation).map_err(|_| Error::InvalidInput("truncation too large".into()))?,
            },
            _ => CosetWindow::Ball { radius: truncation },
        };
        Self::new(pair, window)
    }

    fn push(&mut self, rep: GroupElement) -> Result<()> {
        let index = self.reps.len();
        if canonical(&self.pair.subgroup, &rep).is_some() {
            self.keyed.insert(rep.clone(), index);
        } else if let Some(b) = &mut self.buckets {
            b.insert(&rep, index)?;
        }
        self.reps.push(rep);
        Ok(())
    }

    pub fn pair(&self) -> &GroupPair {
        self.pair
    }

    pub fn window(&self) -> CosetWindow {
        self.window
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[GroupElement] {
        &self.reps
    }

    /// Index of the coset `g G_0`, if it is in the window.
    pub fn find(&self, g: &GroupElement) -> Result<Option<usize>> {
        if let Some(key) = canonical(&self.pair.subgroup, g) {
            return Ok(self.keyed.get(&key).copied());
        }
        let same = |i: usize| -> Result<bool> {
            Ok(self.oracle.decide(&self.reps[i].invert()?.compose(g)?)?.is_member())
        };
        if let Some(b) = &self.buckets {
            for &i in b.map.get(&b.key(g)?).into_iter().flatten() {
                if same(i)? {
                    return Ok(Some(i));
                }
            }
            return Ok(None);
        }
        for i in 0..self.reps.len() {
            if same(i)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// The coset of a lattice point, for point stabilizers.
    pub fn find_point(&self, x: &IntVector) -> Result<Option<usize>> {
        self.find(&GroupElement::translation_only(x.clone()))
    }

    pub fn act(&self, g: &GroupElement, coset: usize) -> Result<CosetImage> {
        let rep = self
            .reps
            .get(coset)
            .ok_or_else(|| Error::InvalidInput(format!("coset {coset} outside a window of {}", self.len())))?;
        Ok(match self.find(&g.compose(rep)?)? {
            Some(i) => CosetImage::Coset(i),
            None => CosetImage::OutOfWindow,
        })
    }
}

/// The coset space of `pair` at the given truncation.
pub fn coset_action(pair: &GroupPair, truncation: usize) -> Result<CosetSpace<'_>> {
    CosetSpace::truncated(pair, truncation)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeakMixing {
    Found { element: GroupElement, word: String },
    NotFound { radius: usize },
}

/// First `g` of the word ball with `g·A ∩ B = ∅`, skipping any `g` that sends a
/// coset of `A` out of the window.
pub fn weak_mixing_witness(space: &CosetSpace<'_>, a: &[usize], b: &[usize], radius: usize) -> Result<WeakMixing> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("coset sets must be nonempty".into()));
    }
    if let Some(&bad) = a.iter().chain(b).find(|&&c| c >= space.len()) {
        return Err(Error::InvalidInput(format!("coset {bad} outside a window of {}", space.len())));
    }
    let ball = word_ball(&space.pair.ambient, radius)?;
    let hit = ball
        .elements
        .par_iter()
        .enumerate()
        .map(|(i, g)| -> Result<Option<usize>> {
            for &c in a {
                match space.act(g, c)? {
                    CosetImage::OutOfWindow => return Ok(None),
                    CosetImage::Coset(d) if b.contains(&d) => return Ok(None),
                    CosetImage::Coset(_) => {}
                }
            }
            Ok(Some(i))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(match hit {
        Some(i) => WeakMixing::Found {
            element: ball.elements[i].clone(),
            word: ball.words[i].display(&space.pair.ambient.generator_names),
        },
        None => WeakMixing::NotFound { radius },
    })
}

/// One row of a growth table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovedCount {
    pub truncation: usize,
    pub window: usize,
    pub moved: usize,
    pub out_of_window: usize,
}

fn moved_count(space: &CosetSpace<'_>, g: &GroupElement, truncation: usize) -> Result<MovedCount> {
    let mut row = MovedCount {
        truncation,
        window: space.len(),
        moved: 0,
        out_of_window: 0,
    };
    for c in 0..space.len() {
        match space.act(g, c)? {
            CosetImage::Coset(d) if d == c => {}
            CosetImage::Coset(_) => row.moved += 1,
            CosetImage::OutOfWindow => {
                row.moved += 1;
                row.out_of_window += 1;
            }
        }
    }
    Ok(row)
}

/// Exact answer when the coset space has a closed form.
///
/// For point stabilizers `(y, h)` fixes `x` iff `(h - 1) x = -y`, a proper affine
/// sublattice unless `(y, h)` is trivial. For the translations, `(y, h)` sends
/// the coset of `k` to that of `h k`, so it moves every coset iff `h != 1`.
fn structural(pair: &GroupPair, g: &GroupElement) -> Option<CertifiedClaim> {
    match pair.subgroup {
        SubgroupSpec::PointStabilizer => Some(
            CertifiedClaim::computed("the fixed points of a nontrivial affine map form a proper affine sublattice")
                .with_data(json!({ "fixed_set": "{x : (h - 1) x = -y}" })),
        ),
        SubgroupSpec::Translations => {
            let n = g.dim();
            Some(CertifiedClaim::decided(
                "the linear part is nontrivial, so every coset is moved",
                *g.linear() != IntMatrix::identity(n),
            ))
        }
        _ => None,
    }
}

fn moves_claim(pair: &GroupPair, g: &GroupElement, table: Vec<MovedCount>) -> CertifiedClaim {
    let statement = format!("{g} moves infinitely many cosets of {}", pair.id);
    let all_fixed = table.iter().all(|r| r.moved == 0);
    let data = json!({ "growth": table });
    match structural(pair, g) {
        Some(s) if s.status.is_computed() => CertifiedClaim::computed(statement).with_children(vec![s]),
        Some(s) => CertifiedClaim::refuted(statement).with_children(vec![s]),
        None if all_fixed => CertifiedClaim::evidence(
            format!("{g} fixes every coset of {} in the window", pair.id),
            [("schedule", json!(table.iter().map(|r| r.truncation).collect::<Vec<_>>()))],
        ),
        None => CertifiedClaim::evidence(
            statement,
            [("schedule", json!(table.iter().map(|r| r.truncation).collect::<Vec<_>>()))],
        ),
    }
    .with_data(data)
}

/// Counts cosets moved by `g` at each truncation of the schedule.
pub fn moves_cosets_evidence(pair: &GroupPair, g: &GroupElement, schedule: &[usize]) -> Result<CertifiedClaim> {
    pair.ambient.check_member(g)?;
    if g.is_identity() {
        return Err(Error::InvalidInput("the identity moves no coset".into()));
    }
    let mut table = Vec::with_capacity(schedule.len());
    for &t in schedule {
        let space = CosetSpace::truncated(pair, t)?;
        table.push(moved_count(&space, g, t)?);
    }
    Ok(moves_claim(pair, g, table))
}

/// [`moves_cosets_evidence`] for every nontrivial `g` of a word ball.
pub fn moves_cosets_scan(pair: &GroupPair, radius: usize, schedule: &[usize]) -> Result<CertifiedClaim> {
    let spaces = schedule
        .iter()
        .map(|&t| CosetSpace::truncated(pair, t))
        .collect::<Result<Vec<_>>>()?;
    let ball = word_ball(&pair.ambient, radius)?;
    let claims: Vec<(Word, CertifiedClaim)> = ball
        .iter()
        .filter(|(g, _)| !g.is_identity())
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(g, w)| {
            let table = spaces
                .iter()
                .zip(schedule)
                .map(|(s, &t)| moved_count(s, g, t))
                .collect::<Result<Vec<_>>>()?;
            Ok(((*w).clone(), moves_claim(pair, g, table)))
        })
        .collect::<Result<_>>()?;
    let statement = format!("every g != 1 moves infinitely many cosets of {}", pair.id);
    let mut open: Vec<&(Word, CertifiedClaim)> = claims.iter().filter(|(_, c)| !c.status.is_computed()).collect();
    open.sort_by_key(|(_, c)| c.status.strength());
    let failures: Vec<CertifiedClaim> = open
        .into_iter()
        .take(20)
        .map(|(w, c)| {
            let mut data = c.data.clone();
            data["word"] = json!(w.display(&pair.ambient.generator_names));
            c.clone().with_data(data)
        })
        .collect();
    let closed_form = matches!(pair.subgroup, SubgroupSpec::PointStabilizer | SubgroupSpec::Translations);
    let bounds = [("radius", json!(radius)), ("schedule", json!(schedule))];
    let claim = if claims.iter().any(|(_, c)| c.status.is_refuted()) {
        CertifiedClaim::refuted(statement)
    } else if closed_form {
        // the closed form covers every g, not only the ball
        CertifiedClaim::computed(statement)
    } else {
        CertifiedClaim::evidence(statement, bounds)
    };
    Ok(claim.with_children(failures).with_data(json!({
        "checked": claims.len(),
        "radius": radius,
        "schedule": schedule,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Registry;

    fn zn() -> GroupPair {
        Registry::bundled().build_example("zn-gln").unwrap()
    }

    #[test]
    fn point_stabilizer_cosets_are_vectors() {
        let pair = zn();
        let space = CosetSpace::truncated(&pair, 2).unwrap();
        assert_eq!(space.len(), 25);
        let t = GroupElement::translation_only(IntVector::from_i64(&[1, 0]));
        let origin = space.find_point(&IntVector::zeros(2)).unwrap().unwrap();
        assert_eq!(origin, 0);
        let e1 = space.find_point(&IntVector::from_i64(&[1, 0])).unwrap().unwrap();
        assert_eq!(space.act(&t, 0).unwrap(), CosetImage::Coset(e1));
        let far = space.find_point(&IntVector::from_i64(&[2, 0])).unwrap().unwrap();
        assert_eq!(space.act(&t, far).unwrap(), CosetImage::OutOfWindow);
        let id = pair.ambient.identity();
        for c in 0..space.len() {
            assert_eq!(space.act(&id, c).unwrap(), CosetImage::Coset(c));
        }
    }

    #[test]
    fn golden_ball_collapses() {
        let pair = Registry::bundled().build_example("gl2-golden").unwrap();
        let space = CosetSpace::truncated(&pair, 3).unwrap();
        let ball = word_ball(&pair.ambient, 3).unwrap();
        assert!(space.len() < ball.len(), "{} vs {}", space.len(), ball.len());
    }

    #[test]
    fn weak_mixing_on_the_plane() {
        let pair = zn();
        let space = CosetSpace::truncated(&pair, 4).unwrap();
        let p = |v: &[i64]| space.find_point(&IntVector::from_i64(v)).unwrap().unwrap();
        for (a, b) in [(vec![p(&[0, 0])], vec![p(&[0, 0])]), (vec![p(&[0, 0]), p(&[1, 0])], vec![p(&[0, 0]), p(&[1, 0])]), (vec![p(&[0, 0])], vec![p(&[1, 0])])] {
            match weak_mixing_witness(&space, &a, &b, 2).unwrap() {
                WeakMixing::Found { element, .. } => {
                    for &c in &a {
                        match space.act(&element, c).unwrap() {
                            CosetImage::Coset(d) => assert!(!b.contains(&d)),
                            CosetImage::OutOfWindow => panic!("witness left the window"),
                        }
                    }
                }
                WeakMixing::NotFound { .. } => panic!("no witness"),
            }
        }
        assert!(weak_mixing_witness(&space, &[], &[0], 1).is_err());
    }

    #[test]
    fn moved_cosets() {
        let pair = zn();
        let t = GroupElement::translation_only(IntVector::from_i64(&[1, 0]));
        let c = moves_cosets_evidence(&pair, &t, &[1, 2, 3]).unwrap();
        assert!(c.status.is_computed());
        for row in c.data["growth"].as_array().unwrap() {
            assert_eq!(row["moved"], row["window"]);
        }
        let h = GroupElement::linear_only(IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        let c = moves_cosets_evidence(&pair, &h, &[1, 2, 3]).unwrap();
        let moved: Vec<u64> = c.data["growth"].as_array().unwrap().iter().map(|r| r["moved"].as_u64().unwrap()).collect();
        assert!(moved.windows(2).all(|w| w[0] < w[1]), "{moved:?}");
        assert!(moves_cosets_evidence(&pair, &pair.ambient.identity(), &[1]).is_err());
    }

    #[test]
    fn normal_translations_fix_everything() {
        let pair = Registry::bundled().build_example("zn-translations").unwrap();
        let t = GroupElement::translation_only(IntVector::from_i64(&[0, 1]));
        assert!(moves_cosets_evidence(&pair, &t, &[1, 2]).unwrap().status.is_refuted());
    }
}
