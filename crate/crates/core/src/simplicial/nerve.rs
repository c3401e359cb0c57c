//! Nerves of finite categories.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limit::category::{FiniteCategory, Functor};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::model::{materialize, CellModel, Materialized};
use crate::simplicial::sset::{Simplex, SimplicialSet};

/// A chain `start -> · -> ... -> ·` of composable morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Chain {
    /// Object at position `i`.
    pub fn object(&self, c: &FiniteCategory, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            c.tgt(self.arrows[i - 1])
        }
    }
}

#[derive(Clone, Debug)]
pub struct NerveModel {
    pub category: Arc<FiniteCategory>,
}

impl CellModel for NerveModel {
    type Cell = Chain;

    fn candidates(&self, n: usize) -> Result<Vec<Chain>> {
        let c = &self.category;
        let mut out = Vec::new();
        let mut stack: Vec<Chain> = (0..c.num_objects()).map(|a| Chain { start: a, arrows: vec![] }).collect();
        while let Some(ch) = stack.pop() {
            if ch.arrows.len() == n {
                out.push(ch);
                continue;
            }
            let a = ch.object(c, ch.arrows.len());
            for b in 0..c.num_objects() {
                for &f in c.hom(a, b) {
                    if !c.is_identity(f) {
                        let mut next = ch.clone();
                        next.arrows.push(f);
                        stack.push(next);
                    }
                }
            }
        }
        out.reverse();
        Ok(out)
    }

    fn act(&self, cell: &Chain, theta: &[usize]) -> Chain {
        let c = &self.category;
        let start = cell.object(c, theta[0]);
        let arrows = theta
            .windows(2)
            .map(|w| {
                let from = cell.object(c, w[0]);
                c.compose_path(from, &cell.arrows[w[0]..w[1]]).expect("composable chain")
            })
            .collect();
        Chain { start, arrows }
    }

    fn label(&self, cell: &Chain, n: usize, _k: usize) -> String {
        let c = &self.category;
        if n == 0 {
            c.objects()[cell.start].clone()
        } else {
            let names: Vec<&str> = cell.arrows.iter().map(|&f| c.morphism(f).name.as_str()).collect();
            format!("[{}]", names.join("|"))
        }
    }
}

/// The nerve of a finite category with the chain behind every generator.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub model: NerveModel,
    pub mat: Materialized<Chain>,
}

impl Nerve {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.mat.sset
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.model.category
    }

    /// The simplex named by a chain (identities allowed).
    pub fn simplex(&self, chain: &Chain) -> Result<Simplex> {
        self.mat.locate(&self.model, chain, chain.arrows.len())
    }

    pub fn chain(&self, s: Simplex) -> Chain {
        self.mat.cell_of(&self.model, s)
    }

    /// The vertex for object `a`.
    pub fn object(&self, a: usize) -> Simplex {
        self.simplex(&Chain { start: a, arrows: vec![] }).expect("every object is a vertex")
    }

    /// The edge for morphism `f`.
    pub fn arrow(&self, f: usize) -> Result<Simplex> {
        let c = self.category();
        self.simplex(&Chain { start: c.src(f), arrows: vec![f] })
    }

    /// The simplicial map induced by a functor into another nerve.
    pub fn functor_map(&self, target: &Nerve, f: &Functor) -> Result<SimplicialMap> {
        self.mat.map_cells(&target.mat, &target.model, |_, ch| Chain {
            start: f.on_objects[ch.start],
            arrows: ch.arrows.iter().map(|&a| f.on_morphisms[a]).collect(),
        })
    }
}

/// Length of the longest identity-free chain, `None` if unbounded.
pub fn nerve_dimension(c: &FiniteCategory) -> Option<usize> {
    if !c.has_finite_nerve() {
        return None;
    }
    let n = c.num_objects();
    // longest[a]: longest identity-free chain starting at a
    let mut longest = vec![0usize; n];
    for _ in 0..n {
        for a in 0..n {
            for b in 0..n {
                if c.hom(a, b).iter().any(|&f| !c.is_identity(f)) {
                    longest[a] = longest[a].max(longest[b] + 1);
                }
            }
        }
    }
    Some(longest.into_iter().max().unwrap_or(0))
}

/// The nerve of `c`. If the nerve is infinite a `bound` is required and the
/// result is truncated there; a bound below the nerve's dimension also
/// truncates.
pub fn nerve(c: Arc<FiniteCategory>, bound: Option<usize>) -> Result<Nerve> {
    let natural = nerve_dimension(&c);
    let (max_dim, truncated) = match (natural, bound) {
        (Some(d), None) => (d, false),
        (Some(d), Some(b)) => (d.min(b), b < d),
        (None, Some(b)) => (b, true),
        (None, None) => {
            return Err(Error::BoundExceeded(
                "the nerve has simplices in every dimension; a bound is required".into(),
            ))
        }
    };
    let model = NerveModel { category: c };
    let mut mat = materialize(&model, max_dim, truncated)?;
    mat.sset = Arc::new((*mat.sset).clone().mark_nerve());
    Ok(Nerve { model, mat })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nerve_of_chain_is_simplex() {
        let n = nerve(Arc::new(FiniteCategory::chain(2)), None).unwrap();
        assert_eq!(n.sset().counts(), vec![3, 3, 1]);
        assert!(n.sset().validate().is_ok());
        assert!(crate::simplicial::iso::is_isomorphic(n.sset(), &crate::simplicial::standard::std_simplex(2)));
    }

    #[test]
    fn group_nerve_needs_bound() {
        let c = Arc::new(FiniteCategory::cyclic_group(2));
        assert!(nerve(c.clone(), None).is_err());
        let n = nerve(c, Some(3)).unwrap();
        assert_eq!(n.sset().counts(), vec![1, 1, 1, 1]);
        assert_eq!(n.sset().truncation(), Some(3));
        assert!(n.sset().validate().is_ok());
    }

    #[test]
    fn faces_compose() {
        let c = Arc::new(FiniteCategory::cyclic_group(3));
        let n = nerve(c.clone(), Some(2)).unwrap();
        let s = n.simplex(&Chain { start: 0, arrows: vec![1, 1] }).unwrap();
        let d1 = n.sset().face(s, 1);
        assert_eq!(n.chain(d1).arrows, vec![2]);
        let d0 = n.sset().face(s, 0);
        assert_eq!(n.chain(d0).arrows, vec![1]);
        let t = n.simplex(&Chain { start: 0, arrows: vec![1, 0] }).unwrap();
        assert!(t.is_degenerate());
    }
}
