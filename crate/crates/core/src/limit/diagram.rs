//! Diagrams `X -> C` from a simplicial set into a finite category, given on
//! a presentation of the fundamental category of `X`.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limit::category::FiniteCategory;
use crate::schema::{parse_versioned, schema_err, to_canonical};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::nerve::{Chain, Nerve};
use crate::simplicial::sset::{Simplex, SimplicialSet};
use crate::weights::{IndexCategory, Path};

pub const DIAG_FORMAT: &str = "diag/1";

/// Objects are the vertices of `X`, generators its non-degenerate edges,
/// and every non-degenerate 2-simplex `σ` relates `d₁σ` to `d₀σ ∘ d₂σ`.
/// Degenerate edges appear as empty paths.
pub type FundamentalCategoryPresentation = IndexCategory;

pub fn tau1(x: &SimplicialSet) -> FundamentalCategoryPresentation {
    IndexCategory::from_sset(x)
}

/// A functor `τ₁X -> C`: an object per vertex and a morphism per
/// non-degenerate edge, satisfying the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramInCat {
    pub x: Arc<SimplicialSet>,
    pub shape: FundamentalCategoryPresentation,
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl DiagramInCat {
    pub fn new(c: &FiniteCategory, x: Arc<SimplicialSet>, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        let shape = tau1(&x);
        let bad = |s: String| Err(Error::InvalidDiagram(s));
        if objects.len() != shape.objects.len() || arrows.len() != shape.arrows.len() {
            return bad(format!(
                "{} objects and {} arrows for a shape with {} vertices and {} edges",
                objects.len(),
                arrows.len(),
                shape.objects.len(),
                shape.arrows.len()
            ));
        }
        if let Some(&o) = objects.iter().find(|&&o| o >= c.num_objects()) {
            return bad(format!("object {o} out of range"));
        }
        for (a, &f) in shape.arrows.iter().zip(&arrows) {
            if f >= c.num_morphisms() || c.src(f) != objects[a.src] || c.tgt(f) != objects[a.tgt] {
                return bad(format!("edge `{}` is not sent to a morphism between its endpoints' objects", a.name));
            }
        }
        let d = DiagramInCat { x, shape, objects, arrows };
        for (l, r) in &d.shape.relations {
            if d.path_morphism(c, l) != d.path_morphism(c, r) {
                return bad(format!("relation at `{}` is not satisfied", d.shape.objects[l.start]));
            }
        }
        Ok(d)
    }

    pub fn path_morphism(&self, c: &FiniteCategory, p: &Path) -> usize {
        p.arrows
            .iter()
            .fold(c.identity(self.objects[p.start]), |acc, &a| c.compose(self.arrows[a], acc).expect("typed by validation"))
    }

    pub fn object(&self, v: Simplex) -> usize {
        self.objects[v.gen.index()]
    }

    /// The morphism assigned to an edge; degenerate edges give identities.
    pub fn edge(&self, c: &FiniteCategory, e: Simplex) -> usize {
        if e.is_degenerate() {
            c.identity(self.objects[e.gen.index()])
        } else {
            self.arrows[e.gen.index()]
        }
    }

    /// `d ∘ j` for `j : Y -> X`.
    pub fn restrict(&self, c: &FiniteCategory, j: &SimplicialMap) -> Result<DiagramInCat> {
        if **j.target() != *self.x {
            return Err(Error::Mismatch("restriction along a map into another shape".into()));
        }
        let y = j.source().clone();
        let objects = y.gen_ids(0).map(|v| self.object(j.image(v))).collect();
        let arrows = y.gen_ids(1).map(|e| self.edge(c, j.image(e))).collect();
        DiagramInCat::new(c, y, objects, arrows)
    }

    /// `dᵒᵖ : Xᵒᵖ -> Cᵒᵖ`; `c_op` must be `c.opposite()`.
    pub fn opposite(&self, c_op: &FiniteCategory) -> Result<DiagramInCat> {
        DiagramInCat::new(c_op, Arc::new(self.x.opposite()), self.objects.clone(), self.arrows.clone())
    }

    /// The classifying map `X -> N(C)`; `n` must be the nerve of `c`.
    pub fn nerve_map(&self, c: &FiniteCategory, n: &Nerve) -> Result<SimplicialMap> {
        if **n.category() != *c {
            return Err(Error::Mismatch("the nerve of another category".into()));
        }
        let x = &self.x;
        let images = (0..x.counts().len())
            .map(|k| {
                x.gen_ids(k)
                    .map(|g| {
                        let s = Simplex::nondegenerate(g);
                        let start = self.object(x.vertices_of(s)[0]);
                        let arrows = (0..k).map(|i| self.edge(c, x.act(s, &[i, i + 1]))).collect();
                        n.simplex(&Chain { start, arrows })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(x.clone(), n.sset().clone(), images)
    }

    pub fn to_json(&self, c: &FiniteCategory) -> String {
        let x = &self.x;
        to_canonical(&DiagramJson {
            format: DIAG_FORMAT.into(),
            objects: x.gen_ids(0).map(|v| (x.id_of(v).to_string(), c.objects()[self.object(Simplex::nondegenerate(v))].clone())).collect(),
            arrows: x
                .gen_ids(1)
                .zip(&self.arrows)
                .map(|(e, &f)| (x.id_of(e).to_string(), c.morphism(f).name.clone()))
                .collect(),
        })
    }

    pub fn from_json(c: &FiniteCategory, x: Arc<SimplicialSet>, text: &str) -> Result<DiagramInCat> {
        let j: DiagramJson = parse_versioned(text, DIAG_FORMAT)?;
        let mut objects = Vec::new();
        for v in x.gen_ids(0) {
            let id = x.id_of(v);
            let name = j.objects.get(id).ok_or_else(|| schema_err(format!("objects.{id}"), "missing vertex"))?;
            objects.push(c.object_index(name).ok_or_else(|| schema_err(format!("objects.{id}"), format!("unknown object `{name}`")))?);
        }
        let mut arrows = Vec::new();
        for e in x.gen_ids(1) {
            let id = x.id_of(e);
            let name = j.arrows.get(id).ok_or_else(|| schema_err(format!("arrows.{id}"), "missing edge"))?;
            arrows.push(c.morphism_index(name).ok_or_else(|| schema_err(format!("arrows.{id}"), format!("unknown morphism `{name}`")))?);
        }
        if j.objects.len() != objects.len() || j.arrows.len() != arrows.len() {
            return Err(schema_err("$", "entries for simplices outside the shape"));
        }
        DiagramInCat::new(c, x, objects, arrows)
    }
}

/// `diag/1`: object names by vertex id and morphism names by edge id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub format: String,
    pub objects: IndexMap<String, String>,
    pub arrows: IndexMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::nerve::nerve;
    use crate::simplicial::standard::{boundary, horn, std_simplex};

    #[test]
    fn tau1_examples() {
        let t = tau1(&std_simplex(2));
        assert_eq!((t.objects.len(), t.arrows.len(), t.relations.len()), (3, 3, 1));
        let t = tau1(&horn(2, 1).unwrap().0);
        assert!(t.is_free());
        assert_eq!(t.arrows.len(), 2);
        let mut b = crate::simplicial::sset::SsetBuilder::new();
        let v = b.push(0, "v".into(), vec![]).unwrap();
        b.push(1, "e".into(), vec![Simplex::nondegenerate(v); 2]).unwrap();
        let circle = b.finish().unwrap();
        let t = tau1(&circle);
        assert_eq!((t.objects.len(), t.arrows.len()), (1, 1));
        assert!(t.is_free());
        assert_eq!(t.hom_classes(0, 0, 3).len(), 4);
    }

    #[test]
    fn tau1_of_a_nerve_recovers_the_category() {
        for c in [FiniteCategory::chain(2), FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into(), "d".into()], |i, j| i == j || i == 0 || j == 3).unwrap()] {
            let n = nerve(Arc::new(c.clone()), None).unwrap();
            let t = tau1(n.sset());
            let bound = t.diameter();
            for a in 0..c.num_objects() {
                for b in 0..c.num_objects() {
                    assert_eq!(t.hom_classes(a, b, bound).len(), c.hom(a, b).len());
                }
            }
        }
    }

    #[test]
    fn relations_are_checked_and_json_round_trips() {
        let c = FiniteCategory::chain(2);
        let x = Arc::new(std_simplex(2));
        let arrow = |a: usize, b: usize| c.hom(a, b)[0];
        let t = tau1(&x);
        let ends: Vec<(usize, usize)> = t.arrows.iter().map(|a| (a.src, a.tgt)).collect();
        let d = DiagramInCat::new(&c, x.clone(), vec![0, 1, 2], ends.iter().map(|&(a, b)| arrow(a, b)).collect()).unwrap();
        let text = d.to_json(&c);
        let back = DiagramInCat::from_json(&c, x.clone(), &text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(&c), text);
        let g = FiniteCategory::cyclic_group(2);
        let r = DiagramInCat::new(&g, x.clone(), vec![0; 3], vec![1, 1, 1]);
        assert!(matches!(r, Err(Error::InvalidDiagram(_))));
        let (b, _) = boundary(2).unwrap();
        assert!(DiagramInCat::new(&g, Arc::new(b), vec![0; 3], vec![1, 1, 1]).is_ok());
    }
}
