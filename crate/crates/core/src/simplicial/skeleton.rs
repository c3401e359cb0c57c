//! Skeleta and the presentation of a simplicial set as a tower of cell
//! attachments `sk_{n-1}X ↪ sk_nX`, each a pushout of `⊔ ∂Δⁿ ↪ ⊔ Δⁿ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::colimits::{coproduct, pushout, Colimit};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet, SsetBuilder};
use crate::simplicial::standard::{boundary, std_simplex, vertices_of};

/// `sk_nX` with its inclusion into `X`.
pub fn skeleton(x: &Arc<SimplicialSet>, n: usize) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    let mut b = SsetBuilder::new();
    for d in 0..=n.min(x.dim().unwrap_or(0)) {
        b.ensure_dim(d);
        for g in x.gen_ids(d) {
            let gen = x.generator(g);
            b.push_unchecked(d, gen.id.clone(), gen.faces.clone());
        }
    }
    let trunc = x.truncation().filter(|&t| t < n);
    let sk = Arc::new(b.finish_unchecked().with_truncation(trunc));
    let images = (0..sk.dim().map_or(0, |d| d + 1))
        .map(|d| sk.gen_ids(d).map(Simplex::nondegenerate).collect())
        .collect();
    let incl = SimplicialMap::new_unchecked(sk.clone(), x.clone(), images)?;
    Ok((sk, incl))
}

/// The non-degenerate `n`-simplices `L_nX`, in generator order.
pub fn nondegenerate(x: &SimplicialSet, n: usize) -> Vec<GenId> {
    x.gen_ids(n).collect()
}

/// The characteristic map `Δⁿ -> X` of an `n`-simplex.
pub fn characteristic_map(x: &Arc<SimplicialSet>, s: Simplex) -> Result<SimplicialMap> {
    let n = s.dim();
    let delta = Arc::new(std_simplex(n));
    let images = (0..=n)
        .map(|d| {
            delta
                .gen_ids(d)
                .map(|g| x.act(s, &vertices_of(&delta, Simplex::nondegenerate(g))))
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(delta, x.clone(), images)
}

/// One cell-attachment stage.
#[derive(Clone, Debug)]
pub struct FiltrationStage {
    pub dim: usize,
    /// `L_nX`.
    pub cells: Vec<GenId>,
    /// `⊔ ∂Δⁿ ↪ ⊔ Δⁿ`, one summand per cell.
    pub boundary_inclusion: SimplicialMap,
    /// `⊔ ∂Δⁿ -> sk_{n-1}` (the previous stage's colimit).
    pub attaching: SimplicialMap,
    /// The pushout square's colimit; `legs[0]` from `⊔ Δⁿ`, `legs[1]` the
    /// inclusion of the previous stage.
    pub pushout: Colimit,
}

impl FiltrationStage {
    pub fn inclusion(&self) -> &SimplicialMap {
        &self.pushout.legs[1]
    }
}

#[derive(Clone, Debug)]
pub struct FiltrationPresentation {
    pub source: Arc<SimplicialSet>,
    pub base: Arc<SimplicialSet>,
    pub stages: Vec<FiltrationStage>,
    /// `colim -> X`.
    pub colimit_iso: SimplicialMap,
}

pub fn skeletal_filtration(x: &Arc<SimplicialSet>) -> Result<FiltrationPresentation> {
    let (base, _) = skeleton(x, 0)?;
    let mut current = base.clone();
    let mut stages = Vec::new();
    for n in 1..=x.dim().unwrap_or(0) {
        let cells = nondegenerate(x, n);
        let (bd, bd_incl) = boundary(n)?;
        let bd = Arc::new(bd);
        let delta = bd_incl.target().clone();
        let bd_sum = coproduct(&vec![bd.clone(); cells.len()])?;
        let delta_sum = coproduct(&vec![delta.clone(); cells.len()])?;
        let incl_images = (0..n)
            .map(|d| {
                bd_sum.sset.gen_ids(d).map(|g| {
                    // summand k of ∂Δⁿ goes to summand k of Δⁿ, ids "k.<face>"
                    let id = bd_sum.sset.id_of(g);
                    Simplex::nondegenerate(delta_sum.sset.lookup(id).expect("same face ids"))
                })
                .collect()
            })
            .collect();
        let boundary_inclusion =
            SimplicialMap::new_unchecked(bd_sum.sset.clone(), delta_sum.sset.clone(), incl_images)?;
        // The previous colimit has the generator positions of sk_{n-1}X.
        let mut att_images: Vec<Vec<Simplex>> = vec![Vec::new(); n];
        // summand-major within each dimension, matching the coproduct order
        for &c in &cells {
            let chi = characteristic_map(x, Simplex::nondegenerate(c))?;
            for d in 0..n {
                for g in bd.gen_ids(d) {
                    let in_delta = bd_incl.image(g);
                    att_images[d].push(chi.apply(in_delta));
                }
            }
        }
        let attaching = SimplicialMap::new(bd_sum.sset.clone(), current.clone(), att_images)?;
        let po = pushout(&boundary_inclusion, &attaching)?;
        current = po.sset.clone();
        stages.push(FiltrationStage { dim: n, cells, boundary_inclusion, attaching, pushout: po });
    }
    let images = (0..current.dim().map_or(0, |d| d + 1))
        .map(|d| current.gen_ids(d).map(Simplex::nondegenerate).collect())
        .collect();
    let colimit_iso = SimplicialMap::new(current, x.clone(), images)?;
    if !colimit_iso.is_iso() {
        return Err(Error::Mismatch("filtration colimit is not isomorphic to the input".into()));
    }
    Ok(FiltrationPresentation { source: x.clone(), base, stages, colimit_iso })
}

impl FiltrationPresentation {
    /// Replays the stages: checks every stage square is a pushout of a
    /// monomorphism (by recomputation) and returns the colimit relabelled
    /// through `colimit_iso`, which must equal the input exactly.
    pub fn recompose(&self) -> Result<SimplicialSet> {
        let mut current = self.base.clone();
        for st in &self.stages {
            if **st.attaching.target() != *current {
                return Err(Error::Mismatch(format!("stage {} attaches to the wrong object", st.dim)));
            }
            let again = pushout(&st.boundary_inclusion, &st.attaching)?;
            if *again.sset != *st.pushout.sset || !again.legs[1].is_mono() {
                return Err(Error::Mismatch(format!("stage {} is not the recorded pushout", st.dim)));
            }
            current = again.sset;
        }
        if **self.colimit_iso.source() != *current {
            return Err(Error::Mismatch("colimit differs from the recorded one".into()));
        }
        let target = self.colimit_iso.target().clone();
        current.relabel(|g, _| target.id_of(self.colimit_iso.image(g).gen).to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::std_simplex;

    #[test]
    fn skeleton_of_triangle() {
        let d2 = Arc::new(std_simplex(2));
        let (sk, incl) = skeleton(&d2, 1).unwrap();
        assert_eq!(sk.counts(), vec![3, 3]);
        assert!(incl.is_mono());
        let (all, _) = skeleton(&d2, 2).unwrap();
        assert_eq!(*all, *d2);
    }

    #[test]
    fn filtration_of_triangle() {
        let d2 = Arc::new(std_simplex(2));
        let f = skeletal_filtration(&d2).unwrap();
        assert_eq!(f.base.counts(), vec![3]);
        assert_eq!(f.stages.len(), 2);
        assert_eq!(f.stages[0].cells.len(), 3);
        assert_eq!(f.stages[1].cells.len(), 1);
        assert_eq!(f.stages[1].attaching.target().counts(), vec![3, 3]);
        assert_eq!(f.recompose().unwrap(), *d2);
    }

    #[test]
    fn discrete_has_no_stages() {
        let (b, _) = crate::simplicial::standard::boundary(1).unwrap();
        let f = skeletal_filtration(&Arc::new(b)).unwrap();
        assert!(f.stages.is_empty());
    }
}
