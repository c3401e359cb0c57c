//! Joins of simplicial sets.

use std::sync::Arc;

use crate::error::Result;
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::model::{materialize, CellModel, Materialized};
use crate::simplicial::product::simplex_label;
use crate::simplicial::sset::{Simplex, SimplicialSet};

/// A simplex of `X ⋆ Y`: entirely in `X`, entirely in `Y`, or a pair
/// `(σ, τ)` spanning `dim σ + dim τ + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JoinCell {
    Left(Simplex),
    Right(Simplex),
    Both(Simplex, Simplex),
}

#[derive(Clone, Debug)]
pub struct JoinModel {
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
}

impl CellModel for JoinModel {
    type Cell = JoinCell;

    fn candidates(&self, n: usize) -> Result<Vec<JoinCell>> {
        let mut out: Vec<JoinCell> = self.left.gen_ids(n).map(|g| JoinCell::Left(Simplex::nondegenerate(g))).collect();
        out.extend(self.right.gen_ids(n).map(|g| JoinCell::Right(Simplex::nondegenerate(g))));
        for p in 0..n {
            let q = n - 1 - p;
            for a in self.left.gen_ids(p) {
                for b in self.right.gen_ids(q) {
                    out.push(JoinCell::Both(Simplex::nondegenerate(a), Simplex::nondegenerate(b)));
                }
            }
        }
        Ok(out)
    }

    fn act(&self, cell: &JoinCell, theta: &[usize]) -> JoinCell {
        match *cell {
            JoinCell::Left(s) => JoinCell::Left(self.left.act(s, theta)),
            JoinCell::Right(t) => JoinCell::Right(self.right.act(t, theta)),
            JoinCell::Both(s, t) => {
                let p = s.dim();
                let lo: Vec<usize> = theta.iter().copied().filter(|&v| v <= p).collect();
                let hi: Vec<usize> = theta.iter().filter(|&&v| v > p).map(|&v| v - p - 1).collect();
                match (lo.is_empty(), hi.is_empty()) {
                    (true, _) => JoinCell::Right(self.right.act(t, &hi)),
                    (_, true) => JoinCell::Left(self.left.act(s, &lo)),
                    _ => JoinCell::Both(self.left.act(s, &lo), self.right.act(t, &hi)),
                }
            }
        }
    }

    fn label(&self, cell: &JoinCell, _n: usize, _k: usize) -> String {
        match *cell {
            JoinCell::Left(s) => format!("L:{}", simplex_label(&self.left, s)),
            JoinCell::Right(t) => format!("R:{}", simplex_label(&self.right, t)),
            JoinCell::Both(s, t) => format!("{}*{}", simplex_label(&self.left, s), simplex_label(&self.right, t)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct JoinSet {
    pub model: JoinModel,
    pub mat: Materialized<JoinCell>,
}

impl JoinSet {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.mat.sset
    }

    pub fn locate(&self, cell: JoinCell) -> Result<Simplex> {
        let n = match cell {
            JoinCell::Left(s) | JoinCell::Right(s) => s.dim(),
            JoinCell::Both(s, t) => s.dim() + t.dim() + 1,
        };
        self.mat.locate(&self.model, &cell, n)
    }

    pub fn left_inclusion(&self) -> Result<SimplicialMap> {
        let images = (0..self.model.left.counts().len())
            .map(|n| {
                self.model.left.gen_ids(n).map(|g| self.locate(JoinCell::Left(Simplex::nondegenerate(g)))).collect()
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        SimplicialMap::new_unchecked(self.model.left.clone(), self.sset().clone(), images)
    }

    pub fn right_inclusion(&self) -> Result<SimplicialMap> {
        let images = (0..self.model.right.counts().len())
            .map(|n| {
                self.model.right.gen_ids(n).map(|g| self.locate(JoinCell::Right(Simplex::nondegenerate(g)))).collect()
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        SimplicialMap::new_unchecked(self.model.right.clone(), self.sset().clone(), images)
    }
}

pub fn join(x: Arc<SimplicialSet>, y: Arc<SimplicialSet>) -> Result<JoinSet> {
    let dx = x.dim().map_or(-1, |d| d as i64);
    let dy = y.dim().map_or(-1, |d| d as i64);
    let max_dim = (dx + dy + 1).max(0) as usize;
    let model = JoinModel { left: x, right: y };
    let mat = materialize(&model, max_dim, false)?;
    Ok(JoinSet { model, mat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::iso::is_isomorphic;
    use crate::simplicial::standard::std_simplex;

    #[test]
    fn join_of_simplices() {
        let j = join(Arc::new(std_simplex(1)), Arc::new(std_simplex(0))).unwrap();
        assert!(j.sset().validate().is_ok());
        assert!(is_isomorphic(j.sset(), &std_simplex(2)));
        let j = join(Arc::new(std_simplex(0)), Arc::new(SimplicialSet::empty())).unwrap();
        assert_eq!(j.sset().counts(), vec![1]);
    }
}
