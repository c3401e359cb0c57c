//! Weighted limits `{W, F}` computed as ends: an `n`-simplex is a family
//! of maps `φ_c : Δⁿ × W(c) -> F(c)` with `F(f) ∘ φ_c = φ_{c'} ∘ (Δⁿ × W(f))`
//! for every generator `f : c -> c'`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cert::Verdict;
use crate::degeneracy;
use crate::error::{Error, Result};
use crate::hom::lifting::{is_isofibration, terminal_map, LiftingCertificate};
use crate::hom::mapping::{cap_for, MapCell, MappingModel};
use crate::hom::search::{Extension, Over};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::model::{materialize, materialize_until_empty, CellModel, Materialized};
use crate::simplicial::product::{product, PairSet};
use crate::simplicial::sset::{Simplex, SimplicialSet};
use crate::weights::{pseudo_weight, terminal_weight, Diagram, IndexCategory, Variance, Weight};

pub type EndCell = Vec<MapCell>;

pub struct EndModel {
    pub weight: Weight,
    pub diagram: Diagram,
    pub maps: Vec<Arc<MappingModel>>,
    tables: Mutex<HashMap<(usize, usize), Arc<Vec<Simplex>>>>,
}

impl EndModel {
    fn new(weight: &Weight, diagram: &Diagram) -> Result<Self> {
        if weight.variance != Variance::Covariant || diagram.variance != Variance::Covariant {
            return Err(Error::Mismatch("weighted limits need a covariant weight and diagram".into()));
        }
        if weight.is_coherent() {
            return Err(Error::Hypothesis("the weight is indexed by a simplicial category, not a 1-category".into()));
        }
        let (wi, di) = (&weight.index, &diagram.index);
        let same_shape = wi.objects.len() == di.objects.len()
            && wi.arrows.len() == di.arrows.len()
            && wi.arrows.iter().zip(&di.arrows).all(|(a, b)| a.src == b.src && a.tgt == b.tgt);
        if !same_shape {
            return Err(Error::Mismatch("weight and diagram are indexed differently".into()));
        }
        let maps = weight
            .values
            .iter()
            .zip(&diagram.values)
            .map(|(w, f)| Arc::new(MappingModel::new(w.clone(), f.clone())))
            .collect();
        Ok(EndModel { weight: weight.clone(), diagram: diagram.clone(), maps, tables: Mutex::new(HashMap::new()) })
    }

    fn index(&self) -> &IndexCategory {
        &self.weight.index
    }

    /// `Δⁿ × W(f)` on the generators of `Δⁿ × W(src f)`, in flat order.
    fn table(&self, arrow: usize, n: usize) -> Arc<Vec<Simplex>> {
        if let Some(t) = self.tables.lock().expect("cache lock").get(&(arrow, n)) {
            return t.clone();
        }
        let a = &self.index().arrows[arrow];
        let (ps, pt) = (self.maps[a.src].product(n), self.maps[a.tgt].product(n));
        let id = SimplicialMap::identity(ps.model.left.clone());
        let map = ps.pair_map(&pt, &id, &self.weight.action[arrow]).expect("Δⁿ × W(f)");
        let t: Arc<Vec<Simplex>> = Arc::new(map.images().iter().flatten().copied().collect());
        self.tables.lock().expect("cache lock").insert((arrow, n), t.clone());
        t
    }

    fn compatible(&self, n: usize, cells: &[MapCell]) -> bool {
        self.index().arrows.iter().enumerate().all(|(ai, a)| {
            let table = self.table(ai, n);
            let ps = self.maps[a.src].product(n);
            ps.sset().all_gen_ids().into_iter().enumerate().all(|(flat, t)| {
                let lhs = self.diagram.action[ai].apply(self.maps[a.src].apply(&cells[a.src], Simplex::nondegenerate(t)));
                lhs == self.maps[a.tgt].apply(&cells[a.tgt], table[flat])
            })
        })
    }

    fn extend(&self, n: usize, partial: &mut Vec<MapCell>, out: &mut Vec<EndCell>) -> Result<()> {
        let c = partial.len();
        if c == self.maps.len() {
            if self.compatible(n, partial) {
                out.push(partial.clone());
            }
            return Ok(());
        }
        let model = &self.maps[c];
        let src = model.product(n).sset().clone();
        let target = model.target.clone();
        let mut fixed: Vec<Vec<Option<Simplex>>> = src.counts().iter().map(|&k| vec![None; k]).collect();
        let arrows = &self.index().arrows;
        for (ai, a) in arrows.iter().enumerate().filter(|(_, a)| a.tgt == c && a.src < c) {
            let table = self.table(ai, n);
            let ps = self.maps[a.src].product(n);
            for (flat, t) in ps.sset().all_gen_ids().into_iter().enumerate() {
                let v = self.diagram.action[ai].apply(self.maps[a.src].apply(&partial[a.src], Simplex::nondegenerate(t)));
                let s = table[flat];
                let val = if s.word.is_empty() { v } else { target.act(v, &degeneracy::section(s.word, s.dim())) };
                let slot = &mut fixed[s.gen.dim()][s.gen.index()];
                match slot {
                    Some(old) if *old != val => return Ok(()),
                    _ => *slot = Some(val),
                }
            }
        }
        let mut ext = Extension::new(src.clone(), model.index());
        for (d, row) in fixed.iter().enumerate() {
            for (i, f) in row.iter().enumerate() {
                if let Some(v) = f {
                    ext.fix(crate::simplicial::sset::GenId::new(d, i), *v);
                }
            }
        }
        for (ai, a) in arrows.iter().enumerate().filter(|(_, a)| a.src == c && a.tgt < c) {
            let table = self.table(ai, n);
            let mut images: Vec<Vec<Simplex>> = Vec::new();
            for d in 0..src.counts().len() {
                images.push(
                    src.gen_ids(d).map(|g| self.maps[a.tgt].apply(&partial[a.tgt], table[src.flat_index(g)])).collect(),
                );
            }
            ext.over(Over { map: &self.diagram.action[ai], images });
        }
        let mut err = None;
        ext.for_each(|imgs| {
            partial.push(MapCell { n, images: imgs.iter().flatten().copied().collect() });
            if let Err(e) = self.extend(n, partial, out) {
                err = Some(e);
            }
            partial.pop();
            err.is_none()
        })?;
        err.map_or(Ok(()), Err)
    }
}

impl CellModel for EndModel {
    type Cell = EndCell;

    fn candidates(&self, n: usize) -> Result<Vec<EndCell>> {
        let mut out = Vec::new();
        self.extend(n, &mut Vec::new(), &mut out)?;
        Ok(out)
    }

    fn act(&self, cell: &EndCell, theta: &[usize]) -> EndCell {
        cell.iter().zip(&self.maps).map(|(c, m)| m.act(c, theta)).collect()
    }
}

/// `{W, F}` with the family of maps behind every generator.
pub struct WeightedLimit {
    pub model: Arc<EndModel>,
    pub mat: Materialized<EndCell>,
}

impl WeightedLimit {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.mat.sset
    }

    pub fn cell_of(&self, s: Simplex) -> EndCell {
        self.mat.cell_of(&*self.model, s)
    }

    pub fn locate(&self, cell: &EndCell) -> Result<Simplex> {
        let n = cell.first().map_or(0, |c| c.n);
        self.mat.locate(&*self.model, cell, n)
    }

    /// The component `{W, F} × W(c) -> F(c)` of the universal cone.
    pub fn leg(&self, c: usize) -> Result<(PairSet, SimplicialMap)> {
        let m = &self.model.maps[c];
        let px = product(self.sset().clone(), m.source.clone())?;
        let mut images = Vec::new();
        for (n, level) in px.mat.cells.iter().enumerate() {
            let verts: Vec<usize> = (0..=n).collect();
            let mut row = Vec::with_capacity(level.len());
            for &(e, w) in level {
                let phi = &self.cell_of(e)[c];
                row.push(m.apply(phi, m.locate_pair(n, &verts, w)?));
            }
            images.push(row);
        }
        let map = SimplicialMap::new_unchecked(px.sset().clone(), m.target.clone(), images)?;
        Ok((px, map))
    }

    /// The map `{W, F} -> {V, F}` induced by a natural transformation
    /// `ν : V ⇒ W`, given by its components.
    pub fn restrict(&self, nu: &[SimplicialMap], to: &WeightedLimit) -> Result<SimplicialMap> {
        let (from_m, to_m) = (&self.model, &to.model);
        if nu.len() != from_m.maps.len() || to_m.maps.len() != nu.len() {
            return Err(Error::Mismatch("one component per object is required".into()));
        }
        let mut images = Vec::new();
        for (n, level) in self.mat.cells.iter().enumerate() {
            let tables = nu
                .iter()
                .enumerate()
                .map(|(c, f)| {
                    let (pv, pw) = (to_m.maps[c].product(n), from_m.maps[c].product(n));
                    let id = SimplicialMap::identity(pv.model.left.clone());
                    pv.pair_map(&pw, &id, f)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut row = Vec::with_capacity(level.len());
            for cell in level {
                let restricted: EndCell = cell
                    .iter()
                    .enumerate()
                    .map(|(c, phi)| MapCell {
                        n,
                        images: tables[c].images().iter().flatten().map(|&s| from_m.maps[c].apply(phi, s)).collect(),
                    })
                    .collect();
                row.push(to.mat.locate(&*to.model, &restricted, n)?);
            }
            images.push(row);
        }
        SimplicialMap::new_unchecked(self.sset().clone(), to.sset().clone(), images)
    }
}

/// `{W, F}` up to dimension `max_dim`, exact when every `F(c)` is an
/// untruncated nerve and otherwise truncated at the computable ceiling.
/// Only generator arrows are equalized; the relations hold in both `W`
/// and `F`, so this is the end.
pub fn weighted_limit(w: &Weight, f: &Diagram, max_dim: usize) -> Result<WeightedLimit> {
    let model = Arc::new(EndModel::new(w, f)?);
    let mut cap = max_dim;
    for (wc, fc) in w.values.iter().zip(&f.values) {
        cap = cap.min(cap_for(wc, fc, max_dim)?);
    }
    let nerves = f.values.iter().all(|v| v.is_nerve());
    let exact = nerves && f.values.iter().all(|v| v.truncation().is_none());
    let mut mat = if exact { materialize_until_empty(&*model, cap)? } else { materialize(&*model, cap, true)? };
    if nerves {
        mat.sset = Arc::new((*mat.sset).clone().mark_nerve());
    }
    Ok(WeightedLimit { model, mat })
}

/// The strict limit: the end against the terminal weight.
pub fn strict_limit(f: &Diagram, max_dim: usize) -> Result<WeightedLimit> {
    weighted_limit(&terminal_weight(&f.index), f, max_dim)
}

/// The comparison `lim F -> {W, F}` restricting along `W ⇒ 1`.
pub fn comparison_map(limit: &WeightedLimit, pseudo: &WeightedLimit) -> Result<SimplicialMap> {
    if !limit.model.weight.is_terminal() {
        return Err(Error::Mismatch("the source must be the strict limit".into()));
    }
    let nu: Vec<SimplicialMap> = pseudo.model.weight.values.iter().map(|v| terminal_map(v.clone())).collect();
    limit.restrict(&nu, pseudo)
}

/// Which free shape a 1-skeletal diagram has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeShape {
    Discrete,
    Cospan,
    Tower,
}

fn classify(ix: &IndexCategory) -> Option<FreeShape> {
    let k = ix.objects.len();
    let arrows = &ix.arrows;
    if arrows.is_empty() {
        return Some(FreeShape::Discrete);
    }
    if k == 3 && arrows.len() == 2 && arrows[0].tgt == arrows[1].tgt && arrows[0].src != arrows[1].src {
        let apex = arrows[0].tgt;
        if arrows.iter().all(|a| a.src != apex) {
            return Some(FreeShape::Cospan);
        }
    }
    let mut out_deg = vec![0; k];
    let mut in_deg = vec![0; k];
    for a in arrows {
        out_deg[a.src] += 1;
        in_deg[a.tgt] += 1;
    }
    let linear = arrows.len() + 1 == k && out_deg.iter().all(|&d| d <= 1) && in_deg.iter().all(|&d| d <= 1);
    if linear {
        // a linear forest with k - 1 edges and no cycle is a single chain
        let start = (0..k).find(|&v| in_deg[v] == 0)?;
        let mut seen = 1;
        let mut at = start;
        while let Some(a) = arrows.iter().find(|a| a.src == at) {
            at = a.tgt;
            seen += 1;
        }
        if seen == k {
            return Some(FreeShape::Tower);
        }
    }
    None
}

/// The strict limit, the pseudo limit, and the comparison between them,
/// with the isofibration certificates the free shape requires.
pub struct StrictPseudo {
    pub shape: FreeShape,
    pub weight: Weight,
    pub limit: WeightedLimit,
    pub pseudo: WeightedLimit,
    pub comparison: SimplicialMap,
    pub hypotheses: Vec<LiftingCertificate>,
}

/// Restricts the strict limit cone of `F : X -> sSet` to a pseudo cone.
/// `X` must be discrete, a cospan with an isofibration leg, or a finite
/// tower of isofibrations.
pub fn strict_pseudo_cone(f: &Diagram, x: &Arc<SimplicialSet>, bound: usize, max_dim: usize) -> Result<StrictPseudo> {
    if x.counts().len() > 2 {
        return Err(Error::Hypothesis("the shape must be 1-skeletal".into()));
    }
    let weight = pseudo_weight(x)?;
    let shape = classify(&weight.index)
        .ok_or_else(|| Error::Hypothesis("the shape is not discrete, a cospan or a finite tower".into()))?;
    let mut hypotheses = Vec::new();
    match shape {
        FreeShape::Discrete => {}
        FreeShape::Cospan => {
            for leg in &f.action {
                hypotheses.push(is_isofibration(leg, bound)?);
            }
            if hypotheses.iter().all(|c| c.verdict == Verdict::No) {
                return Err(Error::Hypothesis("neither leg of the cospan is an isofibration".into()));
            }
        }
        FreeShape::Tower => {
            for (a, leg) in f.index.arrows.iter().zip(&f.action) {
                let cert = is_isofibration(leg, bound)?;
                if cert.verdict == Verdict::No {
                    return Err(Error::Hypothesis(format!("tower map `{}` is not an isofibration", a.name)));
                }
                hypotheses.push(cert);
            }
        }
    }
    let limit = strict_limit(f, max_dim)?;
    let pseudo = weighted_limit(&weight, f, max_dim)?;
    let comparison = comparison_map(&limit, &pseudo)?;
    Ok(StrictPseudo { shape, weight, limit, pseudo, comparison, hypotheses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::category::{FiniteCategory, Functor};
    use crate::simplicial::iso::is_isomorphic;
    use crate::simplicial::nerve::nerve;
    use crate::simplicial::product::pullback;
    use crate::simplicial::standard::{horn, std_simplex};

    fn poset_nerve(n: usize, leq: impl Fn(usize, usize) -> bool) -> (Arc<FiniteCategory>, Arc<SimplicialSet>) {
        let c = Arc::new(FiniteCategory::poset((0..n).map(|i| i.to_string()).collect(), leq).unwrap());
        let x = nerve(c.clone(), None).unwrap().sset().clone();
        (c, x)
    }

    /// `C -> A <- B` over the chain 0 < 1 < 2 with `C = {0,1}`, `B = {1,2}`.
    fn cospan_diagram() -> Diagram {
        let a = Arc::new(std_simplex(2));
        let c = Arc::new(std_simplex(1));
        let f = SimplicialMap::new(c.clone(), a.clone(), vec![vec![a.vertex(0), a.vertex(1)], vec![a.face(Simplex::nondegenerate(crate::simplicial::standard::top_cell(2)), 2)]]).unwrap();
        let g = SimplicialMap::new(c.clone(), a.clone(), vec![vec![a.vertex(1), a.vertex(2)], vec![a.face(Simplex::nondegenerate(crate::simplicial::standard::top_cell(2)), 0)]]).unwrap();
        Weight::new(IndexCategory::cospan(), vec![c.clone(), a, c], vec![f, g], Variance::Covariant).unwrap()
    }

    #[test]
    fn terminal_weight_gives_the_pullback() {
        let f = cospan_diagram();
        let lim = strict_limit(&f, 4).unwrap();
        let pb = pullback(&f.action[0], &f.action[1]).unwrap();
        assert!(is_isomorphic(lim.sset(), pb.sset()));
    }

    #[test]
    fn discrete_terminal_is_product() {
        let d1 = Arc::new(std_simplex(1));
        let f = Weight::new(IndexCategory::discrete(2), vec![d1.clone(), d1.clone()], vec![], Variance::Covariant).unwrap();
        let lim = strict_limit(&f, 4).unwrap();
        let p = product(d1.clone(), d1).unwrap();
        assert!(is_isomorphic(lim.sset(), p.sset()));
    }

    #[test]
    fn constant_diagram_gives_cotensor_of_colimit() {
        // colim of the span weight over the cospan is its middle value
        // glued to points: W_⌟ has colimit Δ¹ ∪ Δ¹ (a span of edges)
        let (_, a) = poset_nerve(2, |i, j| i <= j);
        let x = Arc::new(horn(2, 2).unwrap().0);
        let w = pseudo_weight(&x).unwrap();
        let id = SimplicialMap::identity(a.clone());
        let f = Weight::new(IndexCategory::from_sset(&x), vec![a.clone(); 3], vec![id.clone(), id], Variance::Covariant).unwrap();
        let lim = weighted_limit(&w, &f, 4).unwrap();
        let colim = w.values[2].clone();
        let direct = crate::hom::mapping::mapping_space(colim, a, 4).unwrap();
        assert!(is_isomorphic(lim.sset(), direct.sset()));
    }

    #[test]
    fn pseudo_pullback_of_group_nerves() {
        let g = Arc::new(FiniteCategory::cyclic_group(2));
        let h = Arc::new(FiniteCategory::cyclic_group(4));
        let k = Arc::new(FiniteCategory::cyclic_group(1));
        let ng = nerve(g.clone(), Some(5)).unwrap();
        let nh = nerve(h.clone(), Some(5)).unwrap();
        let nk = nerve(k.clone(), Some(5)).unwrap();
        let p = ng_map(&nh, &ng, &Functor::group_hom(&h, &g, (0..4).map(|x| x % 2).collect()).unwrap());
        let i = ng_map(&nk, &ng, &Functor::group_hom(&k, &g, vec![0]).unwrap());
        let x = Arc::new(horn(2, 2).unwrap().0);
        // objects of Λ^{2,2} are 0, 1 and the apex 2; arrows 0->2, 1->2
        let f = Weight::new(
            IndexCategory::from_sset(&x),
            vec![nk.sset().clone(), nh.sset().clone(), ng.sset().clone()],
            vec![i, p],
            Variance::Covariant,
        )
        .unwrap();
        let sp = strict_pseudo_cone(&f, &x, 3, 4).unwrap();
        assert_eq!(sp.shape, FreeShape::Cospan);
        // the pseudo limit has a vertex for every pair of elements of G
        assert_eq!(sp.pseudo.sset().counts()[0], 4);
        let cert = crate::hom::lifting::is_trivial_fibration(&sp.comparison, 3).unwrap();
        assert_eq!(cert.verdict, Verdict::No);
        assert!(cert.replay(&sp.comparison).unwrap());
        let eq = crate::hom::equivalence::is_equivalence_of_nerves(&sp.comparison).unwrap();
        assert_eq!(eq.verdict, Verdict::Yes, "{eq:?}");
    }

    fn ng_map(a: &crate::simplicial::nerve::Nerve, b: &crate::simplicial::nerve::Nerve, f: &Functor) -> SimplicialMap {
        a.functor_map(b, f).unwrap()
    }
}
