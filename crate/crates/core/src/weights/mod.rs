//! Weights on finitely presented index categories, pseudo-limit weights,
//! flexible presentations and weighted limits.

pub mod end;
pub mod pseudo;
pub mod realization;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limit::category::FiniteCategory;
use crate::schema::{parse_versioned, schema_err, to_canonical};
use crate::simplicial::io::{images_from_json, images_json, SimplexJson, SsetJson};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};
use crate::simplicial::standard::std_simplex;

pub use end::{comparison_map, strict_limit, strict_pseudo_cone, weighted_limit, StrictPseudo, WeightedLimit};
pub use pseudo::{pseudo_weight, PseudoData};
pub use realization::{realization_hom, RealizationHom};

pub const WEIGHT_FORMAT: &str = "weight/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A composable path of generator arrows, first arrow applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

/// A category presented by a finite graph and relations between parallel
/// paths. Free iff there are no relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<(Path, Path)>,
}

impl IndexCategory {
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, relations: Vec<(Path, Path)>) -> Result<Self> {
        let c = IndexCategory { objects, arrows, relations };
        for a in &c.arrows {
            if a.src >= c.objects.len() || a.tgt >= c.objects.len() {
                return Err(Error::InvalidCategory(format!("arrow `{}` has an unknown endpoint", a.name)));
            }
        }
        for (l, r) in &c.relations {
            let (el, er) = (c.end_of(l)?, c.end_of(r)?);
            if l.start != r.start || el != er {
                return Err(Error::InvalidCategory("a relation equates non-parallel paths".into()));
            }
        }
        Ok(c)
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn discrete(n: usize) -> Self {
        IndexCategory { objects: (0..n).map(|i| i.to_string()).collect(), arrows: vec![], relations: vec![] }
    }

    /// The free category on `0 -> 1 <- 2`.
    pub fn cospan() -> Self {
        let arrows = vec![Arrow { name: "f".into(), src: 0, tgt: 1 }, Arrow { name: "p".into(), src: 2, tgt: 1 }];
        IndexCategory { objects: vec!["0".into(), "1".into(), "2".into()], arrows, relations: vec![] }
    }

    /// The free category on `len -> … -> 1 -> 0`.
    pub fn tower(len: usize) -> Self {
        let arrows =
            (0..len).map(|k| Arrow { name: format!("{}>{}", k + 1, k), src: k + 1, tgt: k }).collect();
        IndexCategory { objects: (0..=len).map(|i| i.to_string()).collect(), arrows, relations: vec![] }
    }

    /// Generators: non-degenerate edges of `x`; one relation `d₁σ ~ d₂σ · d₀σ`
    /// for each non-degenerate 2-simplex `σ`, degenerate edges read as
    /// identities.
    pub fn from_sset(x: &SimplicialSet) -> Self {
        let objects = x.gen_ids(0).map(|g| x.id_of(g).to_string()).collect();
        let arrows = x
            .gen_ids(1)
            .map(|g| {
                let f = &x.generator(g).faces;
                Arrow { name: x.id_of(g).to_string(), src: f[1].gen.index(), tgt: f[0].gen.index() }
            })
            .collect();
        let edge = |s: Simplex| if s.is_degenerate() { vec![] } else { vec![s.gen.index()] };
        let relations = x
            .gen_ids(2)
            .map(|g| {
                let f = &x.generator(g).faces;
                let start = x.face(f[2], 1).gen.index();
                let lhs = Path { start, arrows: edge(f[1]) };
                let mut rhs = edge(f[2]);
                rhs.extend(edge(f[0]));
                (lhs, Path { start, arrows: rhs })
            })
            .collect();
        IndexCategory { objects, arrows, relations }
    }

    /// Generators: non-identity morphisms; relations: the composition table.
    pub fn from_category(c: &FiniteCategory) -> Self {
        let objects = c.objects().to_vec();
        let gens: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
        let pos: HashMap<usize, usize> = gens.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let arrows =
            gens.iter().map(|&f| Arrow { name: c.morphism(f).name.clone(), src: c.src(f), tgt: c.tgt(f) }).collect();
        let as_path = |f: usize| if c.is_identity(f) { vec![] } else { vec![pos[&f]] };
        let mut relations = Vec::new();
        for (g, f, h) in c.composition_triples() {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            relations.push((Path { start: c.src(f), arrows: vec![pos[&f], pos[&g]] }, Path { start: c.src(f), arrows: as_path(h) }));
        }
        IndexCategory { objects, arrows, relations }
    }

    pub fn end_of(&self, p: &Path) -> Result<usize> {
        let mut at = p.start;
        if at >= self.objects.len() {
            return Err(Error::InvalidCategory(format!("path starts at unknown object {at}")));
        }
        for &a in &p.arrows {
            let arrow = self.arrows.get(a).ok_or_else(|| Error::InvalidCategory(format!("unknown arrow {a}")))?;
            if arrow.src != at {
                return Err(Error::InvalidCategory(format!("path is not composable at `{}`", arrow.name)));
            }
            at = arrow.tgt;
        }
        Ok(at)
    }

    /// Paths from `a` to `b` of length at most `max_len`.
    pub fn paths(&self, a: usize, b: usize, max_len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut frontier = vec![Path { start: a, arrows: vec![] }];
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for p in frontier {
                let end = self.end_of(&p).expect("composable by construction");
                if end == b {
                    out.push(p.clone());
                }
                if p.arrows.len() < max_len {
                    for (i, ar) in self.arrows.iter().enumerate() {
                        if ar.src == end {
                            let mut q = p.clone();
                            q.arrows.push(i);
                            next.push(q);
                        }
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Path length bound used for non-free presentations.
    pub fn diameter(&self) -> usize {
        let rel = self.relations.iter().map(|(l, r)| l.arrows.len().max(r.arrows.len())).max().unwrap_or(0);
        self.objects.len() + rel
    }

    /// Morphisms `a -> b`: classes of paths of length at most `max_len`
    /// under the relations, each represented by its first path.
    pub fn hom_classes(&self, a: usize, b: usize, max_len: usize) -> Vec<Path> {
        let paths = self.paths(a, b, max_len);
        if self.is_free() {
            return paths;
        }
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut parent: Vec<usize> = (0..paths.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        for (i, p) in paths.iter().enumerate() {
            let objs: Vec<usize> = std::iter::once(p.start).chain(p.arrows.iter().map(|&x| self.arrows[x].tgt)).collect();
            for (l, r) in &self.relations {
                for (from, to) in [(l, r), (r, l)] {
                    let k = from.arrows.len();
                    for pos in 0..=p.arrows.len() {
                        if pos + k > p.arrows.len() || objs[pos] != from.start || p.arrows[pos..pos + k] != from.arrows[..] {
                            continue;
                        }
                        let mut arrows = p.arrows[..pos].to_vec();
                        arrows.extend(&to.arrows);
                        arrows.extend(&p.arrows[pos + k..]);
                        if let Some(&j) = index.get(&Path { start: p.start, arrows }) {
                            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                    }
                }
            }
        }
        (0..paths.len()).filter(|&i| find(&mut parent, i) == i).map(|i| paths[i].clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A projective cell `∂Δᵐ × J(object, −) ↪ Δᵐ × J(object, −)`, recorded by
/// the image `core` of the generic simplex, an `m`-simplex of the value at
/// `object`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellAttachment {
    pub object: usize,
    pub core: Simplex,
}

/// A functor from an index category to simplicial sets, given by its value
/// on objects and generator arrows. Weights and the diagrams they weight
/// share this structure.
#[derive(Clone, Debug)]
pub struct Weight {
    pub index: IndexCategory,
    pub values: Vec<Arc<SimplicialSet>>,
    pub action: Vec<SimplicialMap>,
    pub variance: Variance,
    pub cells: Option<Vec<CellAttachment>>,
    /// Realization data of a pseudo weight. When its shape has 2-simplices
    /// the index is really `𝔠[X]` and relations hold only up to its higher
    /// cells.
    pub realization: Option<Arc<PseudoData>>,
}

pub type Diagram = Weight;

impl Weight {
    pub fn new(
        index: IndexCategory,
        values: Vec<Arc<SimplicialSet>>,
        action: Vec<SimplicialMap>,
        variance: Variance,
    ) -> Result<Self> {
        let w = Weight { index, values, action, variance, cells: None, realization: None };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let ix = &self.index;
        if self.values.len() != ix.objects.len() || self.action.len() != ix.arrows.len() {
            return Err(Error::InvalidWeight("one value per object and one map per arrow are required".into()));
        }
        for (a, f) in ix.arrows.iter().zip(&self.action) {
            let (s, t) = self.oriented(a);
            if **f.source() != *self.values[s] || **f.target() != *self.values[t] {
                return Err(Error::InvalidWeight(format!("map for `{}` does not match the values", a.name)));
            }
        }
        if !self.is_coherent() {
            for (k, (l, r)) in ix.relations.iter().enumerate() {
                let x = &self.values[l.start];
                for g in x.all_gen_ids() {
                    let s = Simplex::nondegenerate(g);
                    if self.transport(l, s) != self.transport(r, s) {
                        return Err(Error::InvalidWeight(format!("relation {k} fails on `{}`", x.id_of(g))));
                    }
                }
            }
        }
        Ok(())
    }

    fn oriented(&self, a: &Arrow) -> (usize, usize) {
        match self.variance {
            Variance::Covariant => (a.src, a.tgt),
            Variance::Contravariant => (a.tgt, a.src),
        }
    }

    /// The action of a path on a simplex of the value at its start
    /// (covariant weights).
    pub fn transport(&self, p: &Path, s: Simplex) -> Simplex {
        match self.variance {
            Variance::Covariant => p.arrows.iter().fold(s, |s, &a| self.action[a].apply(s)),
            Variance::Contravariant => p.arrows.iter().rev().fold(s, |s, &a| self.action[a].apply(s)),
        }
    }

    pub fn with_cells(mut self, cells: Vec<CellAttachment>) -> Self {
        self.cells = Some(cells);
        self
    }

    /// Whether the index is a simplicial category rather than a 1-category.
    pub fn is_coherent(&self) -> bool {
        self.realization.as_ref().is_some_and(|d| d.shape.counts().len() > 2)
    }

    pub fn is_terminal(&self) -> bool {
        self.values.iter().all(|v| v.counts() == [1])
    }
}

/// The weight constant at `Δ⁰`.
pub fn terminal_weight(index: &IndexCategory) -> Weight {
    let pt = Arc::new(std_simplex(0));
    let action = index.arrows.iter().map(|_| SimplicialMap::identity(pt.clone())).collect();
    Weight {
        index: index.clone(),
        values: vec![pt; index.objects.len()],
        action,
        variance: Variance::Covariant,
        cells: None,
        realization: None,
    }
}

/// Result of replaying a cell presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub valid: bool,
    pub location: Option<String>,
}

impl PresentationCheck {
    fn fail(location: String) -> Self {
        PresentationCheck { valid: false, location: Some(location) }
    }
}

/// Monotone surjections `[p] -> [m]`.
fn surjections(p: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let repeats = p - m;
    for mask in 0u32..(1 << p) {
        if mask.count_ones() as usize != repeats {
            continue;
        }
        let mut s = vec![0];
        for j in 0..p {
            let last = s[j];
            s.push(if mask >> j & 1 == 1 { last } else { last + 1 });
        }
        out.push(s);
    }
    out
}

/// Replays the projective-cell attachments of a weight from the empty
/// weight and confirms the pushouts rebuild every value exactly: each
/// cell's boundary lies in the earlier stages, and the interior simplices
/// of `Δᵐ × J(object, x)` land bijectively on the remaining non-degenerate
/// simplices of the value at `x`.
pub fn check_flexible_presentation(w: &Weight) -> Result<PresentationCheck> {
    let Some(cells) = &w.cells else {
        return Err(Error::InvalidWeight("no cell presentation supplied".into()));
    };
    if w.variance != Variance::Covariant {
        return Err(Error::InvalidWeight("cell presentations are replayed for covariant weights".into()));
    }
    let k = w.values.len();
    let mut covered: Vec<HashSet<GenId>> = vec![HashSet::new(); k];
    let bound = w.index.diameter();
    for (ci, cell) in cells.iter().enumerate() {
        let (y, c) = (cell.object, cell.core);
        if y >= k || c.gen.dim() >= w.values[y].counts().len() || c.gen.index() >= w.values[y].generators(c.gen.dim()).len() {
            return Err(Error::InvalidWeight(format!("cell {ci} refers to a missing simplex")));
        }
        if c.is_degenerate() {
            return Ok(PresentationCheck::fail(format!("cell {ci}: core is degenerate")));
        }
        let m = c.dim();
        if m > 0 {
            for (i, f) in w.values[y].boundary(c).into_iter().enumerate() {
                if !covered[y].contains(&f.gen) {
                    return Ok(PresentationCheck::fail(format!(
                        "cell {ci}: face d{i} is not attached at object `{}`",
                        w.index.objects[y]
                    )));
                }
            }
        }
        let images = match &w.realization {
            None => interior_discrete(w, y, c, bound),
            Some(data) => data.interior(y, c)?,
        };
        for (x, s) in images {
            if s.is_degenerate() {
                return Ok(PresentationCheck::fail(format!(
                    "cell {ci}: an interior simplex is degenerate at object `{}`",
                    w.index.objects[x]
                )));
            }
            if !covered[x].insert(s.gen) {
                return Ok(PresentationCheck::fail(format!(
                    "cell {ci}: simplex `{}` at object `{}` is attached twice",
                    w.values[x].id_of(s.gen),
                    w.index.objects[x]
                )));
            }
        }
    }
    for x in 0..k {
        if let Some(g) = w.values[x].all_gen_ids().into_iter().find(|g| !covered[x].contains(g)) {
            return Ok(PresentationCheck::fail(format!(
                "simplex `{}` at object `{}` is never attached",
                w.values[x].id_of(g),
                w.index.objects[x]
            )));
        }
    }
    Ok(PresentationCheck { valid: true, location: None })
}

// With discrete homs only `(id, h)` is interior in `Δᵐ × J(y, x)`.
fn interior_discrete(w: &Weight, y: usize, c: Simplex, bound: usize) -> Vec<(usize, Simplex)> {
    let mut out = Vec::new();
    for x in 0..w.values.len() {
        for p in w.index.hom_classes(y, x, bound) {
            out.push((x, w.transport(&p, c)));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub start: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellJson {
    pub object: String,
    pub core: SimplexJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightJson {
    pub format: String,
    pub variance: Variance,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationJson>,
    pub values: IndexMap<String, SsetJson>,
    pub action: IndexMap<String, IndexMap<String, SimplexJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<CellJson>>,
    /// The shape `X` of a pseudo weight; the weight is rebuilt
    /// from it and compared on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<SsetJson>,
}

impl WeightJson {
    pub fn from_weight(w: &Weight) -> Self {
        let ix = &w.index;
        let name = |o: usize| ix.objects[o].clone();
        let arrow_names = |p: &Path| p.arrows.iter().map(|&a| ix.arrows[a].name.clone()).collect();
        WeightJson {
            format: WEIGHT_FORMAT.into(),
            variance: w.variance,
            objects: ix.objects.clone(),
            arrows: ix.arrows.iter().map(|a| ArrowJson { name: a.name.clone(), src: name(a.src), tgt: name(a.tgt) }).collect(),
            relations: ix
                .relations
                .iter()
                .map(|(l, r)| RelationJson { start: name(l.start), lhs: arrow_names(l), rhs: arrow_names(r) })
                .collect(),
            values: ix.objects.iter().zip(&w.values).map(|(o, v)| (o.clone(), SsetJson::from_sset(v))).collect(),
            action: ix.arrows.iter().zip(&w.action).map(|(a, f)| (a.name.clone(), images_json(f))).collect(),
            cells: w.cells.as_ref().map(|cs| {
                cs.iter()
                    .map(|c| CellJson {
                        object: name(c.object),
                        core: SimplexJson { t: w.values[c.object].id_of(c.core.gen).to_string(), w: c.core.word.indices() },
                    })
                    .collect()
            }),
            shape: w.realization.as_ref().map(|d| SsetJson::from_sset(&d.shape)),
        }
    }

    pub fn to_weight(&self) -> Result<Weight> {
        if self.format != WEIGHT_FORMAT {
            return Err(schema_err("format", format!("unsupported format `{}`", self.format)));
        }
        let obj = |name: &str, path: String| {
            self.objects.iter().position(|o| o == name).ok_or_else(|| schema_err(path, format!("unknown object `{name}`")))
        };
        let mut arrows = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            arrows.push(Arrow {
                name: a.name.clone(),
                src: obj(&a.src, format!("arrows[{i}].src"))?,
                tgt: obj(&a.tgt, format!("arrows[{i}].tgt"))?,
            });
        }
        let arrow = |name: &str, path: String| {
            arrows.iter().position(|a| a.name == name).ok_or_else(|| schema_err(path, format!("unknown arrow `{name}`")))
        };
        let mut relations = Vec::new();
        for (i, r) in self.relations.iter().enumerate() {
            let start = obj(&r.start, format!("relations[{i}].start"))?;
            let side = |names: &[String], key: &str| {
                names
                    .iter()
                    .enumerate()
                    .map(|(j, n)| arrow(n, format!("relations[{i}].{key}[{j}]")))
                    .collect::<Result<Vec<_>>>()
            };
            relations.push((Path { start, arrows: side(&r.lhs, "lhs")? }, Path { start, arrows: side(&r.rhs, "rhs")? }));
        }
        let index = IndexCategory::new(self.objects.clone(), arrows, relations).map_err(|e| schema_err("relations", e.to_string()))?;
        if self.values.keys().ne(self.objects.iter()) {
            return Err(schema_err("values", "expected one value per object, in object order"));
        }
        let values = self
            .values
            .iter()
            .map(|(o, v)| v.to_sset().map(Arc::new).map_err(|e| schema_err(format!("values.{o}"), e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if self.action.keys().ne(index.arrows.iter().map(|a| &a.name)) {
            return Err(schema_err("action", "expected one map per arrow, in arrow order"));
        }
        let mut w = Weight { index, values, action: vec![], variance: self.variance, cells: None, realization: None };
        for (a, (name, imgs)) in w.index.arrows.clone().iter().zip(&self.action) {
            let (s, t) = w.oriented(a);
            w.action.push(images_from_json(w.values[s].clone(), w.values[t].clone(), imgs, &format!("action.{name}"))?);
        }
        if let Some(cells) = &self.cells {
            let mut out = Vec::new();
            for (i, c) in cells.iter().enumerate() {
                let object = obj(&c.object, format!("cells[{i}].object"))?;
                let v = &w.values[object];
                let gen = v.lookup(&c.core.t).ok_or_else(|| schema_err(format!("cells[{i}].core.t"), "unknown simplex"))?;
                let word = crate::degeneracy::DegeneracyWord::from_indices(&c.core.w)
                    .map_err(|e| schema_err(format!("cells[{i}].core.w"), e.to_string()))?;
                out.push(CellAttachment { object, core: Simplex { gen, word } });
            }
            w.cells = Some(out);
        }
        if let Some(shape) = &self.shape {
            let x = Arc::new(shape.to_sset().map_err(|e| schema_err("shape", e.to_string()))?);
            let rebuilt = pseudo_weight(&x)?;
            let same = rebuilt.index == w.index
                && rebuilt.values.iter().zip(&w.values).all(|(a, b)| a == b)
                && rebuilt.action.iter().zip(&w.action).all(|(a, b)| a.same_as(b));
            if !same {
                return Err(schema_err("shape", "values do not match the pseudo weight of the shape"));
            }
            w.realization = rebuilt.realization;
        }
        w.validate().map_err(|e| schema_err("$", e.to_string()))?;
        Ok(w)
    }
}

pub fn weight_to_json(w: &Weight) -> String {
    to_canonical(&WeightJson::from_weight(w))
}

pub fn weight_from_json(text: &str) -> Result<Weight> {
    parse_versioned::<WeightJson>(text, WEIGHT_FORMAT)?.to_weight()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_classes_respect_relations() {
        // commutative square 0 -> 1 -> 3, 0 -> 2 -> 3
        let leq = |i: usize, j: usize| i == j || i == 0 || j == 3;
        let c = FiniteCategory::poset((0..4).map(|i| i.to_string()).collect(), leq).unwrap();
        let ix = IndexCategory::from_category(&c);
        assert!(!ix.is_free());
        assert_eq!(ix.hom_classes(0, 3, ix.diameter()).len(), 1);
        assert_eq!(ix.hom_classes(1, 2, ix.diameter()).len(), 0);
        let free = IndexCategory::cospan();
        assert_eq!(free.hom_classes(0, 1, 3).len(), 1);
    }

    #[test]
    fn terminal_weight_on_discrete_is_flexible() {
        let ix = IndexCategory::discrete(3);
        let w = terminal_weight(&ix);
        let cells = (0..3).map(|o| CellAttachment { object: o, core: Simplex::nondegenerate(GenId::new(0, 0)) }).collect();
        let w = w.with_cells(cells);
        assert!(check_flexible_presentation(&w).unwrap().valid);
    }

    #[test]
    fn bad_attachment_is_located() {
        let ix = IndexCategory::cospan();
        let cells = (0..3).map(|o| CellAttachment { object: o, core: Simplex::nondegenerate(GenId::new(0, 0)) }).collect();
        // the apex value is hit by both outer cells and its own
        let w = terminal_weight(&ix).with_cells(cells);
        let check = check_flexible_presentation(&w).unwrap();
        assert!(!check.valid);
        assert!(check.location.unwrap().contains("attached twice"));
    }

    #[test]
    fn weight_json_round_trip() {
        let w = terminal_weight(&IndexCategory::tower(2));
        let text = weight_to_json(&w);
        let back = weight_from_json(&text).unwrap();
        assert_eq!(weight_to_json(&back), text);
        let bad = text.replace("weight/1", "weight/2");
        assert!(weight_from_json(&bad).is_err());
    }
}
