//! Lifting problems and bounded certification of horn, boundary and
//! isomorphism lifting.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::cert::{CertSummary, Exactness, Verdict};
use crate::degeneracy::DegeneracyWord;
use crate::error::{Error, Result};
use crate::hom::search::{to_map, Extension, Over, SimplexIndex};
use crate::limit::category::FiniteCategory;
use crate::schema::{parse_versioned, to_canonical};
use crate::simplicial::io::{images_from_json, images_json, SimplexJson};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::nerve::nerve;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};
use crate::simplicial::standard::{boundary, horn, std_simplex};

pub const CERT_FORMAT: &str = "cert/1";

/// A commutative square `p ∘ top = bottom ∘ i`.
#[derive(Clone, Debug)]
pub struct Square {
    pub i: SimplicialMap,
    pub p: SimplicialMap,
    pub top: SimplicialMap,
    pub bottom: SimplicialMap,
}

/// A diagonal filler `V -> E`, if any.
pub fn find_lift(sq: &Square) -> Result<Option<SimplicialMap>> {
    let Square { i, p, top, bottom } = sq;
    if **i.source() != **top.source()
        || **i.target() != **bottom.source()
        || **top.target() != **p.source()
        || **bottom.target() != **p.target()
    {
        return Err(Error::Mismatch("lifting square has incompatible objects".into()));
    }
    if !top.then(p)?.same_as(&i.then(bottom)?) {
        return Err(Error::NonCommuting("p ∘ top differs from bottom ∘ i".into()));
    }
    let index = SimplexIndex::new(p.source().clone());
    lift_with(&index, i, p, top, bottom)
}

fn lift_with(
    index: &SimplexIndex,
    i: &SimplicialMap,
    p: &SimplicialMap,
    top: &SimplicialMap,
    bottom: &SimplicialMap,
) -> Result<Option<SimplicialMap>> {
    let mut ext = Extension::new(i.target().clone(), index);
    ext.fix_along(i, top)?.over(Over::new(p, bottom));
    match ext.first()? {
        Some(imgs) => Ok(Some(to_map(i.target(), p.source(), imgs)?)),
        None => Ok(None),
    }
}

/// The unique map to the point.
pub fn terminal_map(x: Arc<SimplicialSet>) -> SimplicialMap {
    let pt = Arc::new(std_simplex(0));
    let images = x
        .counts()
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            let word = DegeneracyWord::from_surjection(&vec![0; n + 1]);
            vec![Simplex { gen: GenId::new(0, 0), word }; c]
        })
        .collect();
    SimplicialMap::new_unchecked(x, pt, images).expect("terminal map")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SquareKind {
    /// `Λ^{n,k} ↪ Δⁿ`.
    Horn { n: usize, k: usize },
    /// `∂Δⁿ ↪ Δⁿ`.
    Boundary { n: usize },
    /// `Δ⁰ ↪ J`, the walking isomorphism truncated at `dim`.
    Iso { dim: usize },
}

impl SquareKind {
    pub fn inclusion(self) -> Result<SimplicialMap> {
        match self {
            SquareKind::Horn { n, k } => Ok(horn(n, k)?.1),
            SquareKind::Boundary { n: 0 } => {
                let empty = Arc::new(SimplicialSet::empty());
                SimplicialMap::new(empty, Arc::new(std_simplex(0)), vec![])
            }
            SquareKind::Boundary { n } => Ok(boundary(n)?.1),
            SquareKind::Iso { dim } => {
                let j = nerve(Arc::new(FiniteCategory::walking_iso()), Some(dim))?;
                let pt = Arc::new(std_simplex(0));
                SimplicialMap::new(pt, j.sset().clone(), vec![vec![j.object(0)]])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub square: SquareKind,
    pub top: IndexMap<String, SimplexJson>,
    pub bottom: IndexMap<String, SimplexJson>,
}

impl Witness {
    /// Rebuilds the square against `p`.
    pub fn square_for(&self, p: &SimplicialMap) -> Result<Square> {
        let i = self.square.inclusion()?;
        let top = images_from_json(i.source().clone(), p.source().clone(), &self.top, "witness.top")?;
        let bottom = images_from_json(i.target().clone(), p.target().clone(), &self.bottom, "witness.bottom")?;
        Ok(Square { i, p: p.clone(), top, bottom })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRecord {
    pub dim: usize,
    pub squares: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingCertificate {
    pub format: String,
    pub property: String,
    pub verdict: Verdict,
    pub bound: usize,
    /// Highest dimension actually tested; below `bound` when the inputs are
    /// truncated.
    pub tested: usize,
    pub exactness: Exactness,
    pub exhausted: Vec<DimRecord>,
    pub witness: Option<Witness>,
}

impl LiftingCertificate {
    pub fn summary(&self) -> CertSummary {
        CertSummary { verdict: self.verdict, bound: self.bound, exactness: self.exactness }
    }

    /// Checks that the recorded witness has no filler against `p`.
    pub fn replay(&self, p: &SimplicialMap) -> Result<bool> {
        match &self.witness {
            None => Ok(false),
            Some(w) => Ok(find_lift(&w.square_for(p)?)?.is_none()),
        }
    }

    pub fn to_json(&self) -> String {
        to_canonical(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        parse_versioned(text, CERT_FORMAT)
    }
}

/// `max(3, dim source + 1, dim target + 1)`.
pub fn default_bound(p: &SimplicialMap) -> usize {
    let d = |x: &SimplicialSet| x.dim().map_or(0, |d| d + 1);
    3.max(d(p.source())).max(d(p.target()))
}

struct Checker<'a> {
    p: &'a SimplicialMap,
    ie: SimplexIndex,
    ib: SimplexIndex,
}

impl Checker<'_> {
    /// Squares checked and the first one without a filler.
    fn family(&self, kind: SquareKind) -> Result<(usize, Option<Square>)> {
        let i = kind.inclusion()?;
        let (u, v) = (i.source().clone(), i.target().clone());
        let mut count = 0;
        let mut failure = None;
        let mut err = None;
        Extension::new(u.clone(), &self.ie).for_each(|top_imgs| {
            let mut step = || -> Result<bool> {
                let top = to_map(&u, self.p.source(), top_imgs.clone())?;
                let pb = top.then(self.p)?;
                let mut bottoms = Extension::new(v.clone(), &self.ib);
                bottoms.fix_along(&i, &pb)?;
                let mut keep_going = true;
                let mut inner_err = None;
                bottoms.for_each(|bot_imgs| {
                    count += 1;
                    let res = to_map(&v, self.p.target(), bot_imgs.clone())
                        .and_then(|bottom| Ok((lift_with(&self.ie, &i, self.p, &top, &bottom)?, bottom)));
                    match res {
                        Ok((Some(_), _)) => true,
                        Ok((None, bottom)) => {
                            failure = Some(Square { i: i.clone(), p: self.p.clone(), top: top.clone(), bottom });
                            keep_going = false;
                            false
                        }
                        Err(e) => {
                            inner_err = Some(e);
                            keep_going = false;
                            false
                        }
                    }
                })?;
                if let Some(e) = inner_err {
                    return Err(e);
                }
                Ok(keep_going)
            };
            match step() {
                Ok(go) => go,
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        Ok((count, failure))
    }
}

fn truncation(p: &SimplicialMap) -> Option<usize> {
    match (p.source().truncation(), p.target().truncation()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Runs the families for dimensions `lo..=bound` (capped by truncation).
fn certify(
    property: &str,
    p: &SimplicialMap,
    bound: usize,
    lo: usize,
    kinds: impl Fn(usize) -> Vec<SquareKind>,
    iso: bool,
) -> Result<LiftingCertificate> {
    let tested = truncation(p).map_or(bound, |t| t.min(bound));
    let checker = Checker {
        p,
        ie: SimplexIndex::new(p.source().clone()),
        ib: SimplexIndex::new(p.target().clone()),
    };
    let mut exhausted = Vec::new();
    let mut witness = None;
    let mut families: Vec<(usize, SquareKind)> =
        (lo..=tested).flat_map(|n| kinds(n).into_iter().map(move |k| (n, k))).collect();
    if iso {
        families.push((tested.max(1), SquareKind::Iso { dim: tested.max(1) }));
    }
    for (n, kind) in families {
        let (count, failure) = checker.family(kind)?;
        match exhausted.last_mut() {
            Some(DimRecord { dim, squares }) if *dim == n => *squares += count,
            _ => exhausted.push(DimRecord { dim: n, squares: count }),
        }
        if let Some(sq) = failure {
            if find_lift(&sq)?.is_some() {
                return Err(Error::Hypothesis("witness square unexpectedly has a filler".into()));
            }
            witness = Some(Witness { square: kind, top: images_json(&sq.top), bottom: images_json(&sq.bottom) });
            break;
        }
    }
    let verdict = if witness.is_some() {
        Verdict::No
    } else if tested < bound {
        Verdict::Inconclusive
    } else {
        Verdict::Yes
    };
    let nerves = p.source().is_nerve() && p.target().is_nerve();
    let exactness = match verdict {
        Verdict::No => Exactness::Exact,
        Verdict::Yes if nerves && bound >= 3 => Exactness::Exact,
        _ => Exactness::Bounded,
    };
    Ok(LiftingCertificate {
        format: CERT_FORMAT.into(),
        property: property.into(),
        verdict,
        bound,
        tested,
        exactness,
        exhausted,
        witness,
    })
}

/// Inner horn filling for `2 <= n <= bound`.
pub fn is_quasi_category(x: &Arc<SimplicialSet>, bound: usize) -> Result<LiftingCertificate> {
    let p = terminal_map(x.clone());
    certify("quasi-category", &p, bound, 2, |n| (1..n).map(|k| SquareKind::Horn { n, k }).collect(), false)
}

/// Filling of all horns for `1 <= n <= bound`.
pub fn is_kan(x: &Arc<SimplicialSet>, bound: usize) -> Result<LiftingCertificate> {
    let p = terminal_map(x.clone());
    certify("kan", &p, bound, 1, |n| (0..=n).map(|k| SquareKind::Horn { n, k }).collect(), false)
}

/// Lifting against `∂Δⁿ ↪ Δⁿ` for `0 <= n <= bound`.
pub fn is_trivial_fibration(p: &SimplicialMap, bound: usize) -> Result<LiftingCertificate> {
    certify("trivial-fibration", p, bound, 0, |n| vec![SquareKind::Boundary { n }], false)
}

/// Inner horn lifting plus lifting against `Δ⁰ ↪ J`.
pub fn is_isofibration(p: &SimplicialMap, bound: usize) -> Result<LiftingCertificate> {
    certify("isofibration", p, bound, 2, |n| (1..n).map(|k| SquareKind::Horn { n, k }).collect(), true)
}
