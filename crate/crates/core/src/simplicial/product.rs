//! Binary products and pullbacks, with simplices represented as pairs.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::model::{materialize, materialize_until_empty, CellModel, Materialized};
use crate::simplicial::sset::{Simplex, SimplicialSet};

pub type Pair = (Simplex, Simplex);

pub(crate) fn simplex_label(x: &SimplicialSet, s: Simplex) -> String {
    let id = x.id_of(s.gen);
    if s.word.is_empty() {
        id.to_string()
    } else {
        let idx: Vec<String> = s.word.indices().iter().map(usize::to_string).collect();
        format!("s{}({id})", idx.join(""))
    }
}

/// Simplices of `X × Y`, optionally restricted to `f(x) = g(y)`.
#[derive(Clone)]
pub struct PairModel {
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
    over: Option<(SimplicialMap, SimplicialMap)>,
}

impl CellModel for PairModel {
    type Cell = Pair;

    fn candidates(&self, n: usize) -> Result<Vec<Pair>> {
        let xs = self.left.simplices(n);
        let ys = self.right.simplices(n);
        let mut out = Vec::new();
        match &self.over {
            None => {
                for &x in &xs {
                    for &y in &ys {
                        if x.word.bits() & y.word.bits() == 0 {
                            out.push((x, y));
                        }
                    }
                }
            }
            Some((f, g)) => {
                let mut by_image: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
                for &y in &ys {
                    by_image.entry(g.apply(y)).or_default().push(y);
                }
                for &x in &xs {
                    if let Some(matches) = by_image.get(&f.apply(x)) {
                        for &y in matches {
                            if x.word.bits() & y.word.bits() == 0 {
                                out.push((x, y));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn act(&self, c: &Pair, theta: &[usize]) -> Pair {
        (self.left.act(c.0, theta), self.right.act(c.1, theta))
    }

    fn label(&self, c: &Pair, _n: usize, _k: usize) -> String {
        format!("({},{})", simplex_label(&self.left, c.0), simplex_label(&self.right, c.1))
    }
}

/// A product or pullback together with its two projections.
#[derive(Clone)]
pub struct PairSet {
    pub model: PairModel,
    pub mat: Materialized<Pair>,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
}

impl PairSet {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.mat.sset
    }

    /// Locates the pair `(x, y)` of equal-dimensional simplices.
    pub fn locate(&self, x: Simplex, y: Simplex) -> Result<Simplex> {
        self.mat.locate(&self.model, &(x, y), x.dim())
    }

    /// The map induced on pairs by `f` and `g`, into another pair set.
    pub fn pair_map(&self, target: &PairSet, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        self.mat
            .map_cells(&target.mat, &target.model, |_, c| (f.apply(c.0), g.apply(c.1)))
    }

    /// The map into this pair set with components `f` and `g`.
    pub fn pairing(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        if *f.source() != *g.source() {
            return Err(Error::Mismatch("pairing needs a common source".into()));
        }
        let src = f.source().clone();
        let images = (0..src.dim().map_or(0, |d| d + 1))
            .map(|n| {
                src.gen_ids(n)
                    .map(|gid| self.locate(f.image(gid), g.image(gid)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new_unchecked(src, self.sset().clone(), images)
    }
}

fn truncation_of(a: &SimplicialSet, b: &SimplicialSet) -> Option<usize> {
    match (a.truncation(), b.truncation()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

fn build(model: PairModel, max_dim: Option<usize>) -> Result<PairSet> {
    let trunc = truncation_of(&model.left, &model.right);
    let mat = match max_dim {
        None => Materialized { sset: Arc::new(SimplicialSet::empty()), cells: vec![] },
        Some(d) => {
            let nerves = model.left.is_nerve()
                && model.right.is_nerve()
                && model.over.as_ref().is_none_or(|(f, _)| f.target().is_nerve());
            // non-degenerate simplices of a nerve have non-degenerate last faces
            let m = if nerves { materialize_until_empty(&model, d)? } else { materialize(&model, d, false)? };
            let mut s = (*m.sset).clone().with_truncation(trunc);
            if nerves {
                s = s.mark_nerve();
            }
            Materialized { sset: Arc::new(s), cells: m.cells }
        }
    };
    let proj = |first: bool| {
        let target = if first { model.left.clone() } else { model.right.clone() };
        let images = mat
            .cells
            .iter()
            .map(|l| l.iter().map(|c| if first { c.0 } else { c.1 }).collect())
            .collect();
        SimplicialMap::new_unchecked(mat.sset.clone(), target, images)
    };
    let proj_left = proj(true)?;
    let proj_right = proj(false)?;
    Ok(PairSet { model, mat, proj_left, proj_right })
}

/// The categorical product `X × Y`; generators are the jointly
/// non-degenerate pairs.
pub fn product(x: Arc<SimplicialSet>, y: Arc<SimplicialSet>) -> Result<PairSet> {
    let max_dim = match (x.dim(), y.dim()) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    build(PairModel { left: x, right: y, over: None }, max_dim)
}

/// The pullback `X ×_Z Y` of `f : X -> Z` and `g : Y -> Z`.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Result<PairSet> {
    if **f.target() != **g.target() {
        return Err(Error::Mismatch("pullback legs must share a codomain".into()));
    }
    let (x, y) = (f.source().clone(), g.source().clone());
    let max_dim = match (x.dim(), y.dim()) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    build(PairModel { left: x, right: y, over: Some((f.clone(), g.clone())) }, max_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, std_simplex};

    #[test]
    fn square_counts() {
        let d1 = Arc::new(std_simplex(1));
        let p = product(d1.clone(), d1).unwrap();
        assert_eq!(p.sset().counts(), vec![4, 5, 2]);
        p.sset().validate().unwrap();
    }

    #[test]
    fn unit_and_distributivity() {
        let d1 = Arc::new(std_simplex(1));
        let pt = Arc::new(std_simplex(0));
        assert_eq!(product(d1.clone(), pt).unwrap().sset().counts(), vec![2, 1]);
        let two = Arc::new(boundary(1).unwrap().0);
        let d2 = Arc::new(std_simplex(2));
        assert_eq!(product(two, d2).unwrap().sset().counts(), vec![6, 6, 2]);
    }
}
