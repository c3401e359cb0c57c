//! Cotensors `A^X`: the simplicial set whose `n`-simplices are maps
//! `Δⁿ × X -> A`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::hom::search::{Extension, SimplexIndex};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::model::{materialize, materialize_until_empty, CellModel, Materialized};
use crate::simplicial::product::{product, pullback, PairSet};
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};
use crate::simplicial::standard::{std_map, std_simplex, vertices_of};

/// An `n`-simplex of `A^X`: the images of the generators of `Δⁿ × X`, in
/// flat generator order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapCell {
    pub n: usize,
    pub images: Vec<Simplex>,
}

pub struct MappingModel {
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    index: Arc<SimplexIndex>,
    products: Mutex<HashMap<usize, Arc<PairSet>>>,
    tables: Mutex<HashMap<(usize, Vec<usize>), Arc<Vec<Simplex>>>>,
}

impl MappingModel {
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> Self {
        let index = Arc::new(SimplexIndex::new(target.clone()));
        Self::with_index(source, index)
    }

    /// Shares a boundary index of the target between several cotensors.
    pub fn with_index(source: Arc<SimplicialSet>, index: Arc<SimplexIndex>) -> Self {
        MappingModel {
            source,
            target: index.target().clone(),
            index,
            products: Mutex::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
        }
    }

    pub fn index(&self) -> &Arc<SimplexIndex> {
        &self.index
    }

    /// `Δⁿ × X` with its projections.
    pub fn product(&self, n: usize) -> Arc<PairSet> {
        let mut cache = self.products.lock().expect("cache lock");
        cache
            .entry(n)
            .or_insert_with(|| Arc::new(product(Arc::new(std_simplex(n)), self.source.clone()).expect("finite product")))
            .clone()
    }

    fn table(&self, n: usize, theta: &[usize]) -> Arc<Vec<Simplex>> {
        let key = (n, theta.to_vec());
        if let Some(t) = self.tables.lock().expect("cache lock").get(&key) {
            return t.clone();
        }
        let m = theta.len() - 1;
        let (pm, pn) = (self.product(m), self.product(n));
        let f = std_map(m, n, theta).expect("monotone operator");
        let map = pm.pair_map(&pn, &f, &SimplicialMap::identity(self.source.clone())).expect("θ × id");
        let t: Arc<Vec<Simplex>> = Arc::new(map.images().iter().flatten().copied().collect());
        self.tables.lock().expect("cache lock").insert(key, t.clone());
        t
    }

    /// `φ(s)` for a simplex `s` of `Δⁿ × X`.
    pub fn apply(&self, cell: &MapCell, s: Simplex) -> Simplex {
        let pn = self.product(cell.n);
        let img = cell.images[pn.sset().flat_index(s.gen)];
        if s.word.is_empty() {
            img
        } else {
            self.target.act(img, &s.word.surjection(s.dim()))
        }
    }

    /// The map `Δⁿ × X -> A` of a cell.
    pub fn to_map(&self, cell: &MapCell) -> Result<SimplicialMap> {
        let pn = self.product(cell.n);
        let src = pn.sset().clone();
        let images = (0..src.counts().len())
            .map(|d| src.gen_ids(d).map(|g| cell.images[src.flat_index(g)]).collect())
            .collect();
        SimplicialMap::new_unchecked(src, self.target.clone(), images)
    }

    pub fn from_map(&self, n: usize, f: &SimplicialMap) -> MapCell {
        MapCell { n, images: f.images().iter().flatten().copied().collect() }
    }

    /// The simplex of `Δⁿ × X` given by a vertex list in `Δⁿ` and a simplex
    /// of `X` of matching dimension.
    pub fn locate_pair(&self, n: usize, verts: &[usize], x: Simplex) -> Result<Simplex> {
        let pn = self.product(n);
        let delta = pn.model.left.clone();
        let u = crate::simplicial::standard::simplex_from_vertices(&delta, n, verts);
        pn.locate(u, x)
    }
}

impl CellModel for MappingModel {
    type Cell = MapCell;

    fn candidates(&self, n: usize) -> Result<Vec<MapCell>> {
        let pn = self.product(n);
        let ext = Extension::new(pn.sset().clone(), &self.index);
        let mut out = Vec::new();
        ext.for_each(|imgs| {
            out.push(MapCell { n, images: imgs.iter().flatten().copied().collect() });
            true
        })?;
        Ok(out)
    }

    fn act(&self, cell: &MapCell, theta: &[usize]) -> MapCell {
        let table = self.table(cell.n, theta);
        MapCell { n: theta.len() - 1, images: table.iter().map(|&s| self.apply(cell, s)).collect() }
    }
}

/// `A^X` with the concrete map behind every generator.
pub struct MappingSpace {
    pub model: Arc<MappingModel>,
    pub mat: Materialized<MapCell>,
}

impl MappingSpace {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.mat.sset
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.model.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.model.target
    }

    pub fn cell_of(&self, s: Simplex) -> MapCell {
        self.mat.cell_of(&*self.model, s)
    }

    pub fn locate(&self, cell: &MapCell) -> Result<Simplex> {
        self.mat.locate(&*self.model, cell, cell.n)
    }

    /// Builds the map `self -> other` from a cell transformation.
    fn map_to(&self, other: &MappingSpace, f: impl Fn(&MapCell) -> MapCell) -> Result<SimplicialMap> {
        self.mat.map_cells(&other.mat, &*other.model, |_, c| f(c))
    }

    /// Postcomposition `g_* : A^X -> B^X` for `g : A -> B`.
    pub fn postcompose(&self, g: &SimplicialMap, other: &MappingSpace) -> Result<SimplicialMap> {
        if **g.source() != **self.target() || **g.target() != **other.target() || **self.source() != **other.source() {
            return Err(Error::Mismatch("postcomposition needs A^X, g : A -> B and B^X".into()));
        }
        self.map_to(other, |c| MapCell { n: c.n, images: c.images.iter().map(|&s| g.apply(s)).collect() })
    }

    /// Evaluation `A^X -> A` at a vertex `x` of `X`.
    pub fn evaluate(&self, x: GenId) -> Result<SimplicialMap> {
        let a = self.target().clone();
        let src = self.sset().clone();
        let images = (0..src.counts().len())
            .map(|n| {
                src.gen_ids(n)
                    .map(|g| {
                        let cell = self.mat.cell(g);
                        let xs = self.source().act(Simplex::nondegenerate(x), &vec![0; n + 1]);
                        let verts: Vec<usize> = (0..=n).collect();
                        Ok(self.model.apply(cell, self.model.locate_pair(n, &verts, xs)?))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new_unchecked(src, a, images)
    }

    /// The constant-map embedding `A -> A^X`.
    pub fn constant(&self) -> Result<SimplicialMap> {
        let a = self.target().clone();
        let images = (0..a.counts().len())
            .map(|n| {
                let pn = self.model.product(n);
                let delta = pn.model.left.clone();
                a.gen_ids(n)
                    .map(|g| {
                        let images = pn
                            .mat
                            .cells
                            .iter()
                            .flat_map(|l| l.iter())
                            .map(|&(u, _)| a.act(Simplex::nondegenerate(g), &vertices_of(&delta, u)))
                            .collect();
                        self.locate(&MapCell { n, images })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new_unchecked(a, self.sset().clone(), images)
    }

    /// The transpose `P -> A^X` of a map `P × X -> A`, where `px` is the
    /// product `P × X`.
    pub fn transpose(&self, px: &PairSet, f: &SimplicialMap) -> Result<SimplicialMap> {
        let p = px.model.left.clone();
        let images = (0..p.counts().len())
            .map(|n| {
                let pn = self.model.product(n);
                let delta = pn.model.left.clone();
                p.gen_ids(n)
                    .map(|g| {
                        let images = pn
                            .mat
                            .cells
                            .iter()
                            .flat_map(|l| l.iter())
                            .map(|&(u, x)| {
                                let pu = p.act(Simplex::nondegenerate(g), &vertices_of(&delta, u));
                                Ok(f.apply(px.locate(pu, x)?))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        self.locate(&MapCell { n, images })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new_unchecked(p, self.sset().clone(), images)
    }
}

/// Cap on the dimensions of `A^X` that can be computed from `A`.
pub(crate) fn cap_for(x: &SimplicialSet, a: &SimplicialSet, max_dim: usize) -> Result<usize> {
    let dx = x.dim().unwrap_or(0);
    match a.truncation() {
        Some(b) if b < dx => Err(Error::BoundExceeded(format!(
            "target known up to dimension {b}, source has dimension {dx}"
        ))),
        Some(b) => Ok(max_dim.min(b - dx)),
        None => Ok(max_dim),
    }
}

/// `A^X` up to dimension `max_dim`. When `A` is an untruncated nerve the
/// result is exact once a dimension has no non-degenerate simplices;
/// otherwise it is marked truncated at the computed ceiling.
pub fn mapping_space(x: Arc<SimplicialSet>, a: Arc<SimplicialSet>, max_dim: usize) -> Result<MappingSpace> {
    let index = Arc::new(SimplexIndex::new(a));
    mapping_space_with(x, index, max_dim)
}

pub fn mapping_space_with(x: Arc<SimplicialSet>, index: Arc<SimplexIndex>, max_dim: usize) -> Result<MappingSpace> {
    let a = index.target().clone();
    let cap = cap_for(&x, &a, max_dim)?;
    let model = Arc::new(MappingModel::with_index(x, index));
    let mut mat = if a.is_nerve() && a.truncation().is_none() {
        materialize_until_empty(&*model, cap)?
    } else {
        materialize(&*model, cap, true)?
    };
    if a.is_nerve() {
        mat.sset = Arc::new((*mat.sset).clone().mark_nerve());
    }
    Ok(MappingSpace { model, mat })
}

/// Restriction `A^f : A^Y -> A^X` along `f : X -> Y`.
pub fn restriction(f: &SimplicialMap, ay: &MappingSpace, ax: &MappingSpace) -> Result<SimplicialMap> {
    if **f.source() != **ax.source() || **f.target() != **ay.source() || **ax.target() != **ay.target() {
        return Err(Error::Mismatch("restriction needs f : X -> Y, A^Y and A^X".into()));
    }
    let mut images = Vec::new();
    for (n, level) in ay.mat.cells.iter().enumerate() {
        let (px, py) = (ax.model.product(n), ay.model.product(n));
        let id = SimplicialMap::identity(px.model.left.clone());
        let t = &px.pair_map(&py, &id, f)?;
        let mut row = Vec::with_capacity(level.len());
        for cell in level {
            let imgs = t.images().iter().flatten().map(|&s| ay.model.apply(cell, s)).collect();
            row.push(ax.locate(&MapCell { n, images: imgs })?);
        }
        images.push(row);
    }
    SimplicialMap::new_unchecked(ay.sset().clone(), ax.sset().clone(), images)
}

/// The Leibniz cotensor `E^V -> E^U ×_{B^U} B^V` of a mono `i : U -> V`
/// and `p : E -> B`.
pub struct LeibnizCotensor {
    pub ev: MappingSpace,
    pub eu: MappingSpace,
    pub bu: MappingSpace,
    pub bv: MappingSpace,
    pub corner: PairSet,
    pub map: SimplicialMap,
}

pub fn leibniz_cotensor(i: &SimplicialMap, p: &SimplicialMap, max_dim: usize) -> Result<LeibnizCotensor> {
    if !i.is_mono() {
        return Err(Error::NotMono("the Leibniz cotensor needs a monomorphism".into()));
    }
    let (u, v) = (i.source().clone(), i.target().clone());
    let (e, b) = (p.source().clone(), p.target().clone());
    let ie = Arc::new(SimplexIndex::new(e));
    let ib = Arc::new(SimplexIndex::new(b));
    let ev = mapping_space_with(v.clone(), ie.clone(), max_dim)?;
    let eu = mapping_space_with(u.clone(), ie, max_dim)?;
    let bu = mapping_space_with(u, ib.clone(), max_dim)?;
    let bv = mapping_space_with(v, ib, max_dim)?;
    let pu = eu.postcompose(p, &bu)?;
    let iv = restriction(i, &bv, &bu)?;
    let corner = pullback(&pu, &iv)?;
    let ie_map = restriction(i, &ev, &eu)?;
    let pv = ev.postcompose(p, &bv)?;
    let map = corner.pairing(&ie_map, &pv)?;
    Ok(LeibnizCotensor { ev, eu, bu, bv, corner, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::category::FiniteCategory;
    use crate::simplicial::iso::is_isomorphic;
    use crate::simplicial::nerve::nerve;
    use crate::simplicial::standard::boundary;

    #[test]
    fn unit_and_pair() {
        let a = nerve(Arc::new(FiniteCategory::chain(2)), None).unwrap();
        let a = a.sset().clone();
        let m = mapping_space(Arc::new(std_simplex(0)), a.clone(), 6).unwrap();
        assert!(is_isomorphic(m.sset(), &a));
        assert_eq!(m.sset().truncation(), None);
        let c = m.constant().unwrap();
        assert!(c.is_iso());
        let two = Arc::new(boundary(1).unwrap().0);
        let m2 = mapping_space(two, a.clone(), 6).unwrap();
        let aa = product(a.clone(), a).unwrap();
        assert!(is_isomorphic(m2.sset(), aa.sset()));
    }

    #[test]
    fn arrow_space_of_chain() {
        let c = Arc::new(FiniteCategory::chain(1));
        let a = nerve(c.clone(), None).unwrap();
        let m = mapping_space(Arc::new(std_simplex(1)), a.sset().clone(), 6).unwrap();
        let arr = nerve(Arc::new(c.arrow_category()), None).unwrap();
        assert!(is_isomorphic(m.sset(), arr.sset()));
    }
}
