//! The pseudo-limit weight `W_X(x) = 𝔠[Δ⁰ ⋆ X](⊥, x)` and its canonical
//! cell presentation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::simplicial::join::{join, JoinCell, JoinSet};
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};
use crate::simplicial::standard::std_simplex;
use crate::weights::realization::{realization_hom, Bead, Necklace, RealizationHom};
use crate::weights::{surjections, CellAttachment, IndexCategory, Variance, Weight};

/// The realization data behind a pseudo weight: the cone `Δ⁰ ⋆ X`, the
/// values as hom-spaces out of the cone point, and cached representables
/// `𝔠[X](y, x)`.
pub struct PseudoData {
    pub shape: Arc<SimplicialSet>,
    pub cone: JoinSet,
    pub bottom: usize,
    /// Vertex of the cone for each vertex of `X`.
    pub vertices: Vec<usize>,
    pub values: Vec<Arc<RealizationHom>>,
    reps: Mutex<HashMap<(usize, usize), Arc<RealizationHom>>>,
}

impl std::fmt::Debug for PseudoData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PseudoData({:?})", self.shape)
    }
}

impl PseudoData {
    /// `𝔠[X](y, x)`, computed inside the cone where no necklace from `y`
    /// passes through `⊥`.
    pub fn representable(&self, y: usize, x: usize) -> Result<Arc<RealizationHom>> {
        if let Some(h) = self.reps.lock().expect("cache lock").get(&(y, x)) {
            return Ok(h.clone());
        }
        let h = Arc::new(realization_hom(self.cone.sset().clone(), self.vertices[y], self.vertices[x])?);
        self.reps.lock().expect("cache lock").insert((y, x), h.clone());
        Ok(h)
    }

    /// Images of the interior of `Δᵐ × 𝔠[X](y, −)` under the cell with core
    /// `c`, as non-degenerate simplices of the values.
    pub(crate) fn interior(&self, y: usize, c: Simplex) -> Result<Vec<(usize, Simplex)>> {
        let wy = &self.values[y];
        let core = wy.cell_of(c);
        let m = c.dim();
        let mut out = Vec::new();
        for x in 0..self.values.len() {
            let h = self.representable(y, x)?;
            let hs = h.sset();
            let Some(top) = hs.dim() else { continue };
            for p in m..=m + top {
                for alpha in surjections(p, m) {
                    let w = crate::simplicial::model::CellModel::act(&*wy.model, &core, &alpha);
                    for hsimp in hs.simplices(p) {
                        if (0..p).any(|j| alpha[j] == alpha[j + 1] && hsimp.word.contains(j)) {
                            continue;
                        }
                        let img = w.concat(&h.cell_of(hsimp));
                        out.push((x, self.values[x].locate(&img)?));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The weight for pseudo limits of `X`-shaped diagrams, with its canonical
/// presentation: for each non-degenerate `σ` of `X` and each strict chain
/// `∅ ⊊ S₁ ⊊ … ⊊ Sₘ = {σ₀, …, σ_{k-1}}`, one projective `m`-cell at the
/// last vertex of `σ`.
pub fn pseudo_weight(x: &Arc<SimplicialSet>) -> Result<Weight> {
    let cone = join(Arc::new(std_simplex(0)), x.clone())?;
    let pt = Simplex::nondegenerate(GenId::new(0, 0));
    let bottom = cone.locate(JoinCell::Left(pt))?.gen.index();
    let vertices: Vec<usize> = x
        .gen_ids(0)
        .map(|v| cone.locate(JoinCell::Right(Simplex::nondegenerate(v))).map(|s| s.gen.index()))
        .collect::<Result<_>>()?;
    let values: Vec<Arc<RealizationHom>> = vertices
        .iter()
        .map(|&v| realization_hom(cone.sset().clone(), bottom, v).map(Arc::new))
        .collect::<Result<_>>()?;
    let index = IndexCategory::from_sset(x);
    let mut action = Vec::new();
    for (e, a) in x.gen_ids(1).zip(&index.arrows) {
        let bead = cone.locate(JoinCell::Right(Simplex::nondegenerate(e)))?.gen;
        let (src, tgt) = (&values[a.src], &values[a.tgt]);
        action.push(src.mat.map_cells(&tgt.mat, &*tgt.model, |_, cell| cell.concat(&Necklace::edge(bead, cell.n)))?);
    }
    let mut cells = Vec::new();
    for d in 0..x.counts().len() {
        for s in x.gen_ids(d) {
            let verts = x.vertices_of(Simplex::nondegenerate(s));
            let object = verts[d].gen.index();
            let bead = cone.locate(JoinCell::Both(pt, Simplex::nondegenerate(s)))?.gen;
            let ends = 1u32 | 1 << (d + 1);
            for m in (if d == 0 { 0 } else { 1 })..=d {
                for blocks in super::realization::ordered_partitions(d, m) {
                    let flag = (0..=m)
                        .map(|j| blocks.iter().enumerate().filter(|&(_, &b)| b <= j).fold(ends, |acc, (i, _)| acc | 1 << (i + 1)))
                        .collect();
                    let cell = Necklace { n: m, beads: vec![Bead { gen: bead, flag }] };
                    cells.push(CellAttachment { object, core: values[object].locate(&cell)? });
                }
            }
        }
    }
    let data = Arc::new(PseudoData {
        shape: x.clone(),
        cone,
        bottom,
        vertices,
        values: values.clone(),
        reps: Mutex::new(HashMap::new()),
    });
    let w = Weight {
        index,
        values: values.iter().map(|v| v.sset().clone()).collect(),
        action,
        variance: Variance::Covariant,
        cells: Some(cells),
        realization: Some(data),
    };
    w.validate()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::iso::is_isomorphic;
    use crate::simplicial::standard::{boundary, horn};
    use crate::weights::check_flexible_presentation;

    fn cospan_shape() -> Arc<SimplicialSet> {
        // 0 -> 1 <- 2 is the horn Λ^{2,2} read with vertex 2 as apex
        Arc::new(horn(2, 2).unwrap().0)
    }

    #[test]
    fn discrete_shape_gives_terminal_weight() {
        let (pts, _) = boundary(1).unwrap();
        let w = pseudo_weight(&Arc::new(pts)).unwrap();
        assert!(w.is_terminal());
        assert!(check_flexible_presentation(&w).unwrap().valid);
    }

    #[test]
    fn interval_shape() {
        let w = pseudo_weight(&Arc::new(std_simplex(1))).unwrap();
        assert!(is_isomorphic(&w.values[0], &std_simplex(0)));
        assert!(is_isomorphic(&w.values[1], &std_simplex(1)));
        assert!(check_flexible_presentation(&w).unwrap().valid);
    }

    #[test]
    fn cospan_middle_value_is_a_span() {
        let x = cospan_shape();
        let w = pseudo_weight(&x).unwrap();
        // the apex of Λ^{2,2} is the last vertex
        let counts: Vec<Vec<usize>> = w.values.iter().map(|v| v.counts()).collect();
        assert_eq!(counts, vec![vec![1], vec![1], vec![3, 2]]);
        let mid = &w.values[2];
        let sources: Vec<Simplex> = mid.gen_ids(1).map(|e| mid.generator(e).faces[1]).collect();
        assert_eq!(sources[0], sources[1]);
        let direct = w.realization.as_ref().unwrap().values[2].cell_of(sources[0]);
        assert_eq!(direct.beads.len(), 1);
        assert_eq!(direct.beads[0].gen.dim(), 1);
        let check = check_flexible_presentation(&w).unwrap();
        assert!(check.valid, "{check:?}");
        assert_eq!(w.cells.as_ref().unwrap().len(), 5);
    }

    #[test]
    fn coherent_shapes_are_flexible() {
        for n in 1..=3 {
            let w = pseudo_weight(&Arc::new(std_simplex(n))).unwrap();
            let check = check_flexible_presentation(&w).unwrap();
            assert!(check.valid, "Δ{n}: {check:?}");
        }
        let w = pseudo_weight(&Arc::new(boundary(2).unwrap().0)).unwrap();
        assert!(check_flexible_presentation(&w).unwrap().valid);
    }
}
