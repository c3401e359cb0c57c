//! Objects of cones `Δ↓d` and `d↓Δ`, representable modules and the
//! limit-cone test.

use std::sync::Arc;

use crate::cert::Verdict;
use crate::error::{Error, Result};
use crate::hom::lifting::{is_kan, is_trivial_fibration, LiftingCertificate};
use crate::hom::mapping::{MapCell, MappingModel, MappingSpace};
use crate::hom::search::Extension;
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::model::{materialize, materialize_until_empty, CellModel, Materialized};
use crate::simplicial::product::{product, pullback, PairSet};
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};
use crate::simplicial::standard::{simplex_from_vertices, std_simplex, vertices_of};

use super::{comma, fix_ends, point, CommaObject};

/// Cells `(a, φ)` with `a ∈ Aₙ` and `φ : Δⁿ × (Δ¹ × X) -> A` restricting
/// to the constant family at `a` on one end and to `d` on the other. Over
/// cones have `a` at `0`, under cones at `1`.
pub struct ConeModel {
    pub a: Arc<SimplicialSet>,
    pub x: Arc<SimplicialSet>,
    pub d: SimplicialMap,
    pub under: bool,
    /// `Δ¹ × X`.
    pub inner: Arc<PairSet>,
    pub maps: Arc<MappingModel>,
}

pub type ConeCell = (Simplex, MapCell);

impl ConeModel {
    fn new(a: Arc<SimplicialSet>, x: Arc<SimplicialSet>, d: SimplicialMap, under: bool) -> Result<Self> {
        if **d.source() != *x || **d.target() != *a {
            return Err(Error::Mismatch("diagram must be a map X -> A".into()));
        }
        let inner = Arc::new(product(Arc::new(std_simplex(1)), x.clone())?);
        let maps = Arc::new(MappingModel::new(inner.sset().clone(), a.clone()));
        Ok(ConeModel { a, x, d, under, inner, maps })
    }

    fn apex_end(&self) -> usize {
        usize::from(self.under)
    }
}

impl CellModel for ConeModel {
    type Cell = ConeCell;

    fn candidates(&self, n: usize) -> Result<Vec<ConeCell>> {
        let pn = self.maps.product(n);
        let one = self.inner.model.left.clone();
        let apex_end = self.apex_end();
        let mut out = Vec::new();
        for s in self.a.simplices(n) {
            let mut ext = Extension::new(pn.sset().clone(), self.maps.index());
            fix_ends(&mut ext, &self.maps, n, |verts, y| {
                let (e, xs) = self.inner.mat.cell_of(&self.inner.model, y);
                let ev = vertices_of(&one, e);
                if ev.iter().all(|&v| v == apex_end) {
                    Some(self.a.act(s, verts))
                } else if ev.iter().all(|&v| v == 1 - apex_end) {
                    Some(self.d.apply(xs))
                } else {
                    None
                }
            });
            ext.for_each(|imgs| {
                out.push((s, MapCell { n, images: imgs.iter().flatten().copied().collect() }));
                true
            })?;
        }
        Ok(out)
    }

    fn act(&self, cell: &ConeCell, theta: &[usize]) -> ConeCell {
        (self.a.act(cell.0, theta), self.maps.act(&cell.1, theta))
    }
}

/// `Δ↓d` (or `d↓Δ`) with its projection to `A`.
pub struct ConeObject {
    pub model: ConeModel,
    pub mat: Materialized<ConeCell>,
    pub p0: SimplicialMap,
}

fn build_cones(model: ConeModel, max_dim: usize) -> Result<ConeObject> {
    let exact = model.a.is_nerve() && model.a.truncation().is_none();
    let mut mat = if exact { materialize_until_empty(&model, max_dim)? } else { materialize(&model, max_dim, true)? };
    if model.a.is_nerve() {
        mat.sset = Arc::new((*mat.sset).clone().mark_nerve());
    }
    let images = mat.cells.iter().map(|l| l.iter().map(|c| c.0).collect()).collect();
    let p0 = SimplicialMap::new_unchecked(mat.sset.clone(), model.a.clone(), images)?;
    Ok(ConeObject { model, mat, p0 })
}

/// The object of cones over `d : X -> A`.
pub fn cones_over(a: Arc<SimplicialSet>, x: Arc<SimplicialSet>, d: &SimplicialMap, max_dim: usize) -> Result<ConeObject> {
    build_cones(ConeModel::new(a, x, d.clone(), false)?, max_dim)
}

/// The object of cones under `d : X -> A`.
pub fn cones_under(a: Arc<SimplicialSet>, x: Arc<SimplicialSet>, d: &SimplicialMap, max_dim: usize) -> Result<ConeObject> {
    build_cones(ConeModel::new(a, x, d.clone(), true)?, max_dim)
}

impl ConeObject {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.mat.sset
    }

    pub fn locate(&self, cell: &ConeCell) -> Result<Simplex> {
        self.mat.locate(&self.model, cell, cell.0.dim())
    }

    pub fn cell_of(&self, s: Simplex) -> ConeCell {
        self.mat.cell_of(&self.model, s)
    }

    /// The vertex `(a, φ)`: the apex and the leg at every vertex of `X`.
    pub fn legs(&self, v: Simplex) -> Vec<Simplex> {
        let (_, phi) = self.cell_of(v);
        let one = &self.model.inner.model.left;
        self.model
            .x
            .gen_ids(0)
            .map(|x| {
                let e = simplex_from_vertices(one, 1, &[0, 1]);
                let y = self.model.inner.locate(e, Simplex::nondegenerate(x)).expect("edge of Δ¹ × X");
                let s = self.model.maps.locate_pair_simplex(0, &[0], y).expect("Δ⁰ × (Δ¹ × X)");
                self.model.maps.apply(&phi, s)
            })
            .collect()
    }

    /// The comma map induced by restricting along `j : Y -> X`, into the
    /// cone object of `d ∘ j`.
    pub fn restrict(&self, j: &SimplicialMap, target: &ConeObject) -> Result<SimplicialMap> {
        let (src, tgt) = (&self.model, &target.model);
        if **j.target() != *src.x || **j.source() != *tgt.x || *src.a != *tgt.a || src.under != tgt.under {
            return Err(Error::Mismatch("restriction needs j : Y -> X and the cone object of d ∘ j".into()));
        }
        if !j.then(&src.d)?.same_as(&tgt.d) {
            return Err(Error::NonCommuting("target diagram is not d ∘ j".into()));
        }
        let id1 = SimplicialMap::identity(tgt.inner.model.left.clone());
        let inner = tgt.inner.pair_map(&src.inner, &id1, j)?;
        let mut tables = Vec::new();
        self.mat.map_cells(&target.mat, &target.model, |g, (s, phi)| {
            let n = g.dim();
            while tables.len() <= n {
                let k = tables.len();
                let (pt, ps) = (tgt.maps.product(k), src.maps.product(k));
                let idn = SimplicialMap::identity(pt.model.left.clone());
                tables.push(pt.pair_map(&ps, &idn, &inner).expect("Δⁿ × (Δ¹ × j)"));
            }
            let images = tables[n].images().iter().flatten().map(|&t| src.maps.apply(phi, t)).collect();
            (*s, MapCell { n, images })
        })
    }

    /// Comparison with `comma(Δ, d)` built from `A^X` and its arrow
    /// object; `ax` must be the `A^X` used to build `general`.
    pub fn compare_general(&self, general: &CommaObject, ax: &MappingSpace) -> Result<SimplicialMap> {
        let m = &self.model;
        if m.under {
            return Err(Error::Mismatch("comparison is implemented for cones over".into()));
        }
        let arrow = &general.arrow;
        let mut images = Vec::new();
        for (n, level) in self.mat.cells.iter().enumerate() {
            let pn = m.maps.product(n);
            let arrow_pn = arrow.model.product(n);
            let delta_n = pn.model.left.clone();
            let mut row = Vec::new();
            for (s, phi) in level {
                // ψ : Δⁿ × Δ¹ -> A^X, one image per generator (u, e)
                let mut psi = Vec::new();
                for &(u, e) in arrow_pn.mat.cells.iter().flatten() {
                    let mdim = u.dim();
                    let pm = ax.model.product(mdim);
                    let delta_m = pm.model.left.clone();
                    let mut cell = Vec::new();
                    for &(w, xs) in pm.mat.cells.iter().flatten() {
                        let wv = vertices_of(&delta_m, w);
                        let uv = vertices_of(&delta_n, u);
                        let ev = vertices_of(&arrow_pn.model.right, e);
                        let uw: Vec<usize> = wv.iter().map(|&i| uv[i]).collect();
                        let ew: Vec<usize> = wv.iter().map(|&i| ev[i]).collect();
                        let one = &m.inner.model.left;
                        let y = m.inner.locate(simplex_from_vertices(one, 1, &ew), xs)?;
                        let t = pn.locate(simplex_from_vertices(&delta_n, n, &uw), y)?;
                        cell.push(m.maps.apply(phi, t));
                    }
                    psi.push(ax.locate(&MapCell { n: mdim, images: cell })?);
                }
                let xpsi = arrow.locate(&MapCell { n, images: psi })?;
                let pt = Simplex { gen: GenId::new(0, 0), word: crate::degeneracy::DegeneracyWord::from_surjection(&vec![0; n + 1]) };
                let y = general.base.locate(pt, *s)?;
                row.push(general.pullback.locate(xpsi, y)?);
            }
            images.push(row);
        }
        SimplicialMap::new(self.sset().clone(), general.total().clone(), images)
    }
}

impl MappingModel {
    /// The simplex of `Δⁿ × Y` with `Δⁿ`-part given by vertices and
    /// `Y`-part `y`.
    pub fn locate_pair_simplex(&self, n: usize, verts: &[usize], y: Simplex) -> Result<Simplex> {
        self.locate_pair(n, verts, y)
    }
}

/// `comma(Δ, d)` for `Δ : A -> A^X` and `d : Δ⁰ -> A^X`, with the `A^X`
/// it was built from.
pub fn cones_as_comma(d: &SimplicialMap, max_dim: usize) -> Result<(Arc<MappingSpace>, CommaObject)> {
    let (x, a) = (d.source().clone(), d.target().clone());
    let ax = Arc::new(crate::hom::mapping::mapping_space(x, a, max_dim)?);
    let diag = ax.constant()?;
    let p0 = ax.model.product(0);
    let images = p0.mat.cells.iter().flatten().map(|&(_, xs)| d.apply(xs)).collect();
    let dv = ax.locate(&MapCell { n: 0, images })?;
    let dpt = point(ax.sset(), dv.gen)?;
    let c = comma(&diag, &dpt, max_dim)?;
    Ok((ax, c))
}

/// `A↓a` with `p₀` and Kan certificates for the fibres of `p₀`.
pub struct RepresentableModule {
    pub comma: CommaObject,
    pub fibres: Vec<LiftingCertificate>,
}

pub fn representable_module(a: &Arc<SimplicialSet>, v: GenId, bound: usize, max_dim: usize) -> Result<RepresentableModule> {
    if v.dim() != 0 || v.index() >= a.generators(0).len() {
        return Err(Error::OutOfRange(format!("{v:?} is not a vertex")));
    }
    let id = SimplicialMap::identity(a.clone());
    let c = comma(&id, &point(a, v)?, max_dim)?;
    let mut fibres = Vec::new();
    for x in a.gen_ids(0) {
        let fib = pullback(&c.p0, &point(a, x)?)?;
        fibres.push(is_kan(fib.sset(), bound)?);
    }
    Ok(RepresentableModule { comma: c, fibres })
}

/// Outcome of [`is_limit_cone`].
pub struct ConeCheck {
    /// `A↓ℓ -> Δ↓d` over `A`.
    pub comparison: SimplicialMap,
    pub certificate: LiftingCertificate,
}

impl ConeCheck {
    pub fn verdict(&self) -> Verdict {
        self.certificate.verdict
    }
}

/// Builds `A↓ℓ -> Δ↓d` by composing with the cone `λ` (a vertex of
/// `cones` over `ℓ`) and certifies it a trivial fibration up to `bound`.
pub fn is_limit_cone(cones: &ConeObject, lambda: Simplex, bound: usize, max_dim: usize) -> Result<ConeCheck> {
    let m = &cones.model;
    if m.under {
        return Err(Error::Mismatch("limit cones live in the object of cones over".into()));
    }
    if lambda.dim() != 0 || lambda.is_degenerate() {
        return Err(Error::Mismatch("the cone must be a vertex of Δ↓d".into()));
    }
    let (ell, lam) = cones.cell_of(lambda);
    let a = m.a.clone();
    let pt = Arc::new(std_simplex(0));
    let slice = cones_over(a.clone(), pt.clone(), &point(&a, ell.gen)?, max_dim)?;
    let two = product(Arc::new(std_simplex(2)), m.x.clone())?;
    let fill = MappingModel::with_index(two.sset().clone(), m.maps.index().clone());
    let one = m.inner.model.left.clone();
    let delta2 = two.model.left.clone();
    let pt_inner = &slice.model.inner;
    let mut images = Vec::new();
    for (n, level) in slice.mat.cells.iter().enumerate() {
        let pn = fill.product(n);
        let delta_n = pn.model.left.clone();
        let mut row = Vec::new();
        for (s, psi) in level {
            let mut ext = Extension::new(pn.sset().clone(), fill.index());
            fix_ends(&mut ext, &fill, n, |uv, y| {
                let (e, xs) = two.mat.cell_of(&two.model, y);
                let ev = vertices_of(&delta2, e);
                let k = uv.len() - 1;
                if ev.iter().all(|&v| v <= 1) {
                    let e1 = simplex_from_vertices(&one, 1, &ev);
                    let ptk = pt.act(Simplex::nondegenerate(GenId::new(0, 0)), &vec![0; k + 1]);
                    let y1 = pt_inner.locate(e1, ptk).ok()?;
                    let t = slice.model.maps.locate_pair(n, uv, y1).ok()?;
                    Some(slice.model.maps.apply(psi, t))
                } else if ev.iter().all(|&v| v >= 1) {
                    let shifted: Vec<usize> = ev.iter().map(|v| v - 1).collect();
                    let y1 = m.inner.locate(simplex_from_vertices(&one, 1, &shifted), xs).ok()?;
                    let t = m.maps.locate_pair(0, &vec![0; k + 1], y1).ok()?;
                    Some(m.maps.apply(&lam, t))
                } else {
                    None
                }
            });
            let sols = {
                let mut v = Vec::new();
                ext.for_each(|imgs| {
                    v.push(imgs.clone());
                    v.len() < 2
                })?;
                v
            };
            let filler = match sols.len() {
                0 => return Err(Error::MissingLimit { kind: "composite", stage: format!("dimension {n}"), detail: "no filler".into() }),
                1 => MapCell { n, images: sols[0].iter().flatten().copied().collect() },
                _ => return Err(Error::NonUnique(format!("composite with the cone in dimension {n}"))),
            };
            // restrict the filler to the edge {0,2}
            let target_pn = m.maps.product(n);
            let mut chi = Vec::new();
            for &(u, y) in target_pn.mat.cells.iter().flatten() {
                let (e, xs) = m.inner.mat.cell_of(&m.inner.model, y);
                let ev: Vec<usize> = vertices_of(&one, e).iter().map(|&v| 2 * v).collect();
                let y2 = two.locate(simplex_from_vertices(&delta2, 2, &ev), xs)?;
                let t = pn.locate(simplex_from_vertices(&delta_n, n, &vertices_of(&delta_n, u)), y2)?;
                chi.push(fill.apply(&filler, t));
            }
            row.push(cones.locate(&(*s, MapCell { n, images: chi }))?);
        }
        images.push(row);
    }
    let comparison = SimplicialMap::new(slice.sset().clone(), cones.sset().clone(), images)?;
    let certificate = is_trivial_fibration(&comparison, bound)?;
    Ok(ConeCheck { comparison, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::category::FiniteCategory;
    use crate::simplicial::iso::is_isomorphic;
    use crate::simplicial::nerve::nerve;
    use crate::simplicial::standard::boundary;

    fn diamond() -> Arc<SimplicialSet> {
        // 0 < 1, 0 < 2, 1 < 3, 2 < 3
        let leq = |i: usize, j: usize| i == j || i == 0 || j == 3;
        let c = FiniteCategory::poset((0..4).map(|i| i.to_string()).collect(), leq).unwrap();
        nerve(Arc::new(c), None).unwrap().sset().clone()
    }

    fn pair_diagram(a: &Arc<SimplicialSet>, x: usize, y: usize) -> (Arc<SimplicialSet>, SimplicialMap) {
        let two = Arc::new(boundary(1).unwrap().0);
        let d = SimplicialMap::new(two.clone(), a.clone(), vec![vec![a.vertex(x), a.vertex(y)]]).unwrap();
        (two, d)
    }

    #[test]
    fn cones_over_pair_are_lower_bounds() {
        let a = diamond();
        let (two, d) = pair_diagram(&a, 1, 2);
        let c = cones_over(a.clone(), two, &d, 6).unwrap();
        assert_eq!(c.sset().counts()[0], 1);
        let (two, d) = pair_diagram(&a, 1, 3);
        let c = cones_over(a, two, &d, 6).unwrap();
        assert_eq!(c.sset().counts()[0], 2);
    }

    #[test]
    fn empty_shape_gives_a() {
        let a = diamond();
        let e = Arc::new(SimplicialSet::empty());
        let d = SimplicialMap::new(e.clone(), a.clone(), vec![]).unwrap();
        let c = cones_over(a.clone(), e, &d, 6).unwrap();
        assert!(is_isomorphic(c.sset(), &a));
    }

    #[test]
    fn direct_cones_match_general_comma() {
        let c = FiniteCategory::chain(2);
        let a = nerve(Arc::new(c), None).unwrap().sset().clone();
        let (_, d) = pair_diagram(&a, 1, 2);
        let direct = cones_over(a.clone(), d.source().clone(), &d, 3).unwrap();
        let (ax, general) = cones_as_comma(&d, 3).unwrap();
        let cmp = direct.compare_general(&general, &ax).unwrap();
        assert!(cmp.is_iso());
    }

    #[test]
    fn meet_is_limit_cone() {
        let a = diamond();
        let (two, d) = pair_diagram(&a, 1, 2);
        let c = cones_over(a.clone(), two.clone(), &d, 6).unwrap();
        let v = Simplex::nondegenerate(GenId::new(0, 0));
        assert_eq!(c.p0.apply(v), a.vertex(0));
        let check = is_limit_cone(&c, v, 3, 6).unwrap();
        assert_eq!(check.verdict(), Verdict::Yes);
        // with 1 and 3 the cones have apex 0 or 1; 0 is not a limit
        let (two, d) = pair_diagram(&a, 1, 3);
        let c = cones_over(a.clone(), two, &d, 6).unwrap();
        let at0 = c.sset().gen_ids(0).map(Simplex::nondegenerate).find(|&v| c.p0.apply(v) == a.vertex(0)).unwrap();
        let check = is_limit_cone(&c, at0, 3, 6).unwrap();
        assert_eq!(check.verdict(), Verdict::No);
        assert!(check.certificate.replay(&check.comparison).unwrap());
        let at1 = c.sset().gen_ids(0).map(Simplex::nondegenerate).find(|&v| c.p0.apply(v) == a.vertex(1)).unwrap();
        assert_eq!(is_limit_cone(&c, at1, 3, 6).unwrap().verdict(), Verdict::Yes);
    }

    #[test]
    fn representable_of_poset() {
        let a = diamond();
        let m = representable_module(&a, GenId::new(0, 1), 3, 6).unwrap();
        // principal downset of 1 is {0, 1}
        assert!(is_isomorphic(m.comma.total(), &std_simplex(1)));
        assert!(m.fibres.iter().all(|c| c.verdict == Verdict::Yes));
    }
}
