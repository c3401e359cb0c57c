//! Arrow objects, comma objects and the maps induced between them.

mod cones;

pub use cones::*;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hom::mapping::{mapping_space, MapCell, MappingModel, MappingSpace};
use crate::hom::search::Extension;
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::model::{materialize, materialize_until_empty, CellModel, Materialized};
use crate::simplicial::product::{product, pullback, PairSet};
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};
use crate::simplicial::standard::{std_simplex, vertices_of};

/// `f ↓ g` for `f : B -> A`, `g : C -> A`, built as the pullback of
/// `(p₁, p₀) : A^𝟚 -> A × A` along `g × f`.
pub struct CommaObject {
    pub f: SimplicialMap,
    pub g: SimplicialMap,
    pub arrow: Arc<MappingSpace>,
    /// `C × B`.
    pub base: Arc<PairSet>,
    /// `A^𝟚 ×_{A×A} (C × B)`.
    pub pullback: PairSet,
    /// `(p₁, p₀) : f↓g -> C × B`.
    pub projection: SimplicialMap,
    pub p0: SimplicialMap,
    pub p1: SimplicialMap,
    /// The map `f↓g -> A^𝟚`.
    pub canonical_2cell: SimplicialMap,
}

impl CommaObject {
    pub fn total(&self) -> &Arc<SimplicialSet> {
        self.pullback.sset()
    }
}

/// `A^𝟚` up to dimension `max_dim`.
pub fn arrow_space(a: Arc<SimplicialSet>, max_dim: usize) -> Result<Arc<MappingSpace>> {
    Ok(Arc::new(mapping_space(Arc::new(std_simplex(1)), a, max_dim)?))
}

/// `(p₁, p₀) : A^𝟚 -> A × A`.
pub fn endpoints(arrow: &MappingSpace) -> Result<(PairSet, SimplicialMap)> {
    let a = arrow.target().clone();
    let aa = product(a.clone(), a)?;
    let ev0 = arrow.evaluate(GenId::new(0, 0))?;
    let ev1 = arrow.evaluate(GenId::new(0, 1))?;
    let p = aa.pairing(&ev1, &ev0)?;
    Ok((aa, p))
}

pub fn comma(f: &SimplicialMap, g: &SimplicialMap, max_dim: usize) -> Result<CommaObject> {
    if **f.target() != **g.target() {
        return Err(Error::Mismatch("comma needs a shared codomain".into()));
    }
    comma_with(f, g, arrow_space(f.target().clone(), max_dim)?)
}

/// [`comma`] reusing a computed `A^𝟚`.
pub fn comma_with(f: &SimplicialMap, g: &SimplicialMap, arrow: Arc<MappingSpace>) -> Result<CommaObject> {
    if **f.target() != **g.target() || **f.target() != **arrow.target() {
        return Err(Error::Mismatch("comma needs a shared codomain".into()));
    }
    let (aa, ends) = endpoints(&arrow)?;
    let base = Arc::new(product(g.source().clone(), f.source().clone())?);
    let gf = base.pair_map(&aa, g, f)?;
    let pb = pullback(&ends, &gf)?;
    let projection = pb.proj_right.clone();
    let p0 = projection.then(&base.proj_right)?;
    let p1 = projection.then(&base.proj_left)?;
    let canonical_2cell = pb.proj_left.clone();
    Ok(CommaObject { f: f.clone(), g: g.clone(), arrow, base, pullback: pb, projection, p0, p1, canonical_2cell })
}

/// `A^𝟚` with `(p₁, p₀)`, as `id ↓ id`.
pub fn arrow_object(a: Arc<SimplicialSet>, max_dim: usize) -> Result<CommaObject> {
    let id = SimplicialMap::identity(a);
    comma(&id, &id, max_dim)
}

/// The map `f↓g -> f'↓g'` induced by `c : C -> C'`, `a : A -> A'`,
/// `b : B -> B'` with `a f = f' b` and `a g = g' c`.
pub fn comma_map(
    src: &CommaObject,
    tgt: &CommaObject,
    c: &SimplicialMap,
    a: &SimplicialMap,
    b: &SimplicialMap,
) -> Result<SimplicialMap> {
    if !src.f.then(a)?.same_as(&b.then(&tgt.f)?) {
        return Err(Error::NonCommuting("a ∘ f differs from f' ∘ b".into()));
    }
    if !src.g.then(a)?.same_as(&c.then(&tgt.g)?) {
        return Err(Error::NonCommuting("a ∘ g differs from g' ∘ c".into()));
    }
    let a_star = src.arrow.postcompose(a, &tgt.arrow)?;
    let cb = src.base.pair_map(&tgt.base, c, b)?;
    src.pullback
        .mat
        .map_cells(&tgt.pullback.mat, &tgt.pullback.model, |_, &(phi, y)| (a_star.apply(phi), cb.apply(y)))
}

/// Simplices of `f↓g` enumerated directly as triples `(c, b, φ)` with
/// `φ : Δⁿ × Δ¹ -> A` restricting to `f b` and `g c`.
pub struct DirectCommaModel {
    pub f: SimplicialMap,
    pub g: SimplicialMap,
    pub arrow: Arc<MappingModel>,
}

pub type DirectCell = (Simplex, Simplex, MapCell);

/// Fixed images for the generators of `Δⁿ × Y` whose `Y`-component lies
/// over a constant vertex, as chosen by `fixed_at`.
pub(crate) fn fix_ends(
    ext: &mut Extension<'_>,
    model: &MappingModel,
    n: usize,
    mut fixed_at: impl FnMut(&[usize], Simplex) -> Option<Simplex>,
) {
    let pn = model.product(n);
    let delta = pn.model.left.clone();
    for (d, level) in pn.mat.cells.iter().enumerate() {
        for (k, &(u, y)) in level.iter().enumerate() {
            if let Some(s) = fixed_at(&vertices_of(&delta, u), y) {
                ext.fix(GenId::new(d, k), s);
            }
        }
    }
}

impl CellModel for DirectCommaModel {
    type Cell = DirectCell;

    fn candidates(&self, n: usize) -> Result<Vec<DirectCell>> {
        let a = self.f.target();
        let one = self.arrow.source.clone();
        let pn = self.arrow.product(n);
        let mut out = Vec::new();
        for c in self.g.source().simplices(n) {
            let gc = self.g.apply(c);
            for b in self.f.source().simplices(n) {
                let fb = self.f.apply(b);
                let mut ext = Extension::new(pn.sset().clone(), self.arrow.index());
                fix_ends(&mut ext, &self.arrow, n, |verts, e| {
                    let ev = vertices_of(&one, e);
                    if ev.iter().all(|&v| v == 0) {
                        Some(a.act(fb, verts))
                    } else if ev.iter().all(|&v| v == 1) {
                        Some(a.act(gc, verts))
                    } else {
                        None
                    }
                });
                ext.for_each(|imgs| {
                    out.push((c, b, MapCell { n, images: imgs.iter().flatten().copied().collect() }));
                    true
                })?;
            }
        }
        Ok(out)
    }

    fn act(&self, cell: &DirectCell, theta: &[usize]) -> DirectCell {
        (
            self.g.source().act(cell.0, theta),
            self.f.source().act(cell.1, theta),
            self.arrow.act(&cell.2, theta),
        )
    }
}

pub struct DirectComma {
    pub model: DirectCommaModel,
    pub mat: Materialized<DirectCell>,
}

/// `f↓g` by direct enumeration, sharing the cell conventions of `arrow`.
pub fn comma_direct(
    f: &SimplicialMap,
    g: &SimplicialMap,
    arrow: &MappingSpace,
    max_dim: usize,
) -> Result<DirectComma> {
    let model = DirectCommaModel { f: f.clone(), g: g.clone(), arrow: arrow.model.clone() };
    let nerves = [f.source(), g.source(), f.target()].iter().all(|x| x.is_nerve() && x.truncation().is_none());
    let mat = if nerves { materialize_until_empty(&model, max_dim)? } else { materialize(&model, max_dim, true)? };
    Ok(DirectComma { model, mat })
}

impl DirectComma {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.mat.sset
    }

    /// The comparison map into the pullback construction.
    pub fn compare(&self, comma: &CommaObject) -> Result<SimplicialMap> {
        let images = self
            .mat
            .cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(c, b, phi)| {
                        let x = comma.arrow.locate(phi)?;
                        let y = comma.base.locate(*c, *b)?;
                        comma.pullback.locate(x, y)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(self.sset().clone(), comma.total().clone(), images)
    }
}

/// A map `Δ⁰ -> X` picking a vertex.
pub fn point(x: &Arc<SimplicialSet>, v: GenId) -> Result<SimplicialMap> {
    SimplicialMap::new(Arc::new(std_simplex(0)), x.clone(), vec![vec![Simplex::nondegenerate(v)]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::category::FiniteCategory;
    use crate::simplicial::iso::is_isomorphic;
    use crate::simplicial::nerve::nerve;

    fn chain_nerve(n: usize) -> Arc<SimplicialSet> {
        nerve(Arc::new(FiniteCategory::chain(n)), None).unwrap().sset().clone()
    }

    #[test]
    fn comma_of_points_in_interval() {
        let a = chain_nerve(1);
        let f = point(&a, GenId::new(0, 0)).unwrap();
        let g = point(&a, GenId::new(0, 1)).unwrap();
        let c = comma(&f, &g, 6).unwrap();
        assert!(is_isomorphic(c.total(), &std_simplex(0)));
        let c = comma(&g, &f, 6).unwrap();
        assert!(c.total().is_empty());
    }

    #[test]
    fn routes_agree_on_arrow_object() {
        let a = chain_nerve(2);
        let ao = arrow_object(a.clone(), 6).unwrap();
        let arr = nerve(Arc::new(FiniteCategory::chain(2).arrow_category()), None).unwrap();
        assert!(is_isomorphic(ao.total(), arr.sset()));
        let direct = comma_direct(&ao.f, &ao.g, &ao.arrow, 6).unwrap();
        assert!(direct.compare(&ao).unwrap().is_iso());
    }

    #[test]
    fn identity_transformation_gives_identity() {
        let a = chain_nerve(1);
        let ao = arrow_object(a.clone(), 6).unwrap();
        let ao2 = arrow_object(a.clone(), 6).unwrap();
        let id = SimplicialMap::identity(a);
        let m = comma_map(&ao, &ao2, &id, &id, &id).unwrap();
        assert!(m.is_iso());
        assert!(m.same_as(&SimplicialMap::identity(ao.total().clone())));
    }
}
