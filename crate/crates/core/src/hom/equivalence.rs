//! Equivalences between nerves of categories, decided on homotopy
//! categories: fully faithful and essentially surjective.

use std::collections::HashMap;

use serde::Serialize;

use crate::cert::Verdict;
use crate::error::{Error, Result};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{Simplex, SimplicialSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivalenceWitness {
    /// Two distinct arrows with the same image.
    NotFaithful { first: String, second: String },
    /// An arrow between images that is not hit.
    NotFull { arrow: String },
    /// An object not isomorphic to any image.
    NotEssentiallySurjective { object: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceCheck {
    pub verdict: Verdict,
    pub witness: Option<EquivalenceWitness>,
}

/// Arrows of a nerve, keyed by their endpoints, with composition read off
/// the 2-simplices.
struct Arrows<'a> {
    x: &'a SimplicialSet,
    between: HashMap<(usize, usize), Vec<Simplex>>,
    compose: HashMap<(Simplex, Simplex), Simplex>,
}

impl<'a> Arrows<'a> {
    fn new(x: &'a SimplicialSet) -> Self {
        let mut between: HashMap<(usize, usize), Vec<Simplex>> = HashMap::new();
        for e in x.simplices(1) {
            between.entry(ends(x, e)).or_default().push(e);
        }
        let mut compose = HashMap::new();
        for s in x.simplices(2) {
            compose.insert((x.face(s, 2), x.face(s, 0)), x.face(s, 1));
        }
        Arrows { x, between, compose }
    }

    fn hom(&self, a: usize, b: usize) -> &[Simplex] {
        self.between.get(&(a, b)).map_or(&[], |v| v.as_slice())
    }

    fn identity(&self, a: usize) -> Simplex {
        self.x.degeneracy(self.x.vertex(a), 0)
    }

    fn is_iso(&self, e: Simplex) -> bool {
        let (a, b) = ends(self.x, e);
        self.hom(b, a).iter().any(|&g| {
            self.compose.get(&(e, g)) == Some(&self.identity(a)) && self.compose.get(&(g, e)) == Some(&self.identity(b))
        })
    }
}

fn ends(x: &SimplicialSet, e: Simplex) -> (usize, usize) {
    (x.face(e, 1).gen.index(), x.face(e, 0).gen.index())
}

fn name(x: &SimplicialSet, s: Simplex) -> String {
    if s.is_degenerate() {
        format!("id({})", x.id_of(s.gen))
    } else {
        x.id_of(s.gen).to_string()
    }
}

/// Decides whether `p` is an equivalence of quasi-categories. Both ends
/// must be nerves of categories, where this is an equivalence of the
/// underlying categories.
pub fn is_equivalence_of_nerves(p: &SimplicialMap) -> Result<EquivalenceCheck> {
    let (x, y) = (p.source(), p.target());
    for (side, s) in [("source", x), ("target", y)] {
        if !s.is_nerve() {
            return Err(Error::Hypothesis(format!("the {side} is not a nerve")));
        }
        if s.truncation().is_some_and(|t| t < 2) {
            return Err(Error::Hypothesis(format!("the {side} is truncated below dimension 2")));
        }
    }
    let (ax, ay) = (Arrows::new(x), Arrows::new(y));
    let nx = x.generators(0).len();
    let image: Vec<usize> = (0..nx).map(|v| p.apply(x.vertex(v)).gen.index()).collect();
    let no = |witness| Ok(EquivalenceCheck { verdict: Verdict::No, witness: Some(witness) });
    for a in 0..nx {
        for b in 0..nx {
            let mut hit: HashMap<Simplex, Simplex> = HashMap::new();
            for &e in ax.hom(a, b) {
                if let Some(&prev) = hit.get(&p.apply(e)) {
                    return no(EquivalenceWitness::NotFaithful { first: name(x, prev), second: name(x, e) });
                }
                hit.insert(p.apply(e), e);
            }
            if let Some(&f) = ay.hom(image[a], image[b]).iter().find(|f| !hit.contains_key(f)) {
                return no(EquivalenceWitness::NotFull { arrow: name(y, f) });
            }
        }
    }
    for v in 0..y.generators(0).len() {
        let reached = image.iter().any(|&w| w == v || ay.hom(w, v).iter().any(|&e| ay.is_iso(e)));
        if !reached {
            return no(EquivalenceWitness::NotEssentiallySurjective { object: y.id_of(y.vertex(v).gen).to_string() });
        }
    }
    Ok(EquivalenceCheck { verdict: Verdict::Yes, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::limit::category::{FiniteCategory, Functor};
    use crate::simplicial::nerve::nerve;

    fn check(src: FiniteCategory, tgt: FiniteCategory, f: impl Fn(&FiniteCategory, &FiniteCategory) -> Functor) -> EquivalenceCheck {
        let (src, tgt) = (Arc::new(src), Arc::new(tgt));
        let functor = f(&src, &tgt);
        let a = nerve(src, Some(3)).unwrap();
        let b = nerve(tgt, Some(3)).unwrap();
        is_equivalence_of_nerves(&a.functor_map(&b, &functor).unwrap()).unwrap()
    }

    #[test]
    fn point_into_walking_iso_is_an_equivalence() {
        let c = check(FiniteCategory::discrete(1), FiniteCategory::walking_iso(), |_, t| {
            Functor::new(&FiniteCategory::discrete(1), t, vec![0], vec![t.identity(0)]).unwrap()
        });
        assert_eq!(c.verdict, Verdict::Yes);
    }

    #[test]
    fn failures_are_located() {
        let c = check(FiniteCategory::discrete(1), FiniteCategory::discrete(2), |s, t| {
            Functor::new(s, t, vec![0], vec![t.identity(0)]).unwrap()
        });
        assert!(matches!(c.witness, Some(EquivalenceWitness::NotEssentiallySurjective { .. })));
        let c = check(FiniteCategory::cyclic_group(4), FiniteCategory::cyclic_group(2), |s, t| {
            Functor::group_hom(s, t, vec![0, 1, 0, 1]).unwrap()
        });
        assert!(matches!(c.witness, Some(EquivalenceWitness::NotFaithful { .. })));
        let c = check(FiniteCategory::cyclic_group(1), FiniteCategory::cyclic_group(2), |s, t| {
            Functor::group_hom(s, t, vec![0]).unwrap()
        });
        assert!(matches!(c.witness, Some(EquivalenceWitness::NotFull { .. })));
        let c = check(FiniteCategory::cyclic_group(3), FiniteCategory::cyclic_group(3), |s, t| {
            Functor::group_hom(s, t, vec![0, 2, 1]).unwrap()
        });
        assert_eq!(c.verdict, Verdict::Yes);
    }
}
