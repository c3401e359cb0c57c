//! Limits of `X`-shaped diagrams in a finite category: a brute-force
//! terminal-cone oracle and the construction by skeletal induction from
//! products and pullbacks.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limit::category::FiniteCategory;
use crate::limit::diagram::DiagramInCat;
use crate::schema::{parse_versioned, schema_err, to_canonical};
use crate::simplicial::colimits::Colimit;
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::skeleton::characteristic_map;
use crate::simplicial::sset::{Simplex, SimplicialSet};
use crate::simplicial::standard::{boundary, simplex_from_vertices, std_simplex};

pub const LIMCERT_FORMAT: &str = "limcert/1";

/// An apex with one leg per vertex of the shape.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cone {
    pub apex: usize,
    pub legs: Vec<usize>,
}

/// A finite diagram as vertices and edges, the form all cone searches use.
struct Graph {
    objects: Vec<usize>,
    /// `(source vertex, target vertex, morphism)`.
    edges: Vec<(usize, usize, usize)>,
}

impl Graph {
    fn of(c: &FiniteCategory, d: &DiagramInCat) -> Graph {
        let edges = d.x.gen_ids(1).map(|e| {
            let f = &d.x.generator(e).faces;
            (f[1].gen.index(), f[0].gen.index(), d.edge(c, Simplex::nondegenerate(e)))
        });
        Graph { objects: d.objects.clone(), edges: edges.collect() }
    }

    fn is_cone(&self, c: &FiniteCategory, cone: &Cone) -> bool {
        cone.legs.len() == self.objects.len()
            && cone.legs.iter().zip(&self.objects).all(|(&l, &o)| c.src(l) == cone.apex && c.tgt(l) == o)
            && self.edges.iter().all(|&(s, t, f)| c.compose(f, cone.legs[s]) == Some(cone.legs[t]))
    }

    /// All cones with apex `a`, legs chosen vertex by vertex and pruned on
    /// every edge whose ends are both chosen.
    fn cones_at(&self, c: &FiniteCategory, a: usize) -> Vec<Cone> {
        let n = self.objects.len();
        let mut out = Vec::new();
        let mut legs = Vec::with_capacity(n);
        fn go(g: &Graph, c: &FiniteCategory, a: usize, legs: &mut Vec<usize>, out: &mut Vec<Cone>) {
            let v = legs.len();
            if v == g.objects.len() {
                out.push(Cone { apex: a, legs: legs.clone() });
                return;
            }
            for &l in c.hom(a, g.objects[v]) {
                legs.push(l);
                let ok = g.edges.iter().all(|&(s, t, f)| s.max(t) != v || c.compose(f, legs[s]) == Some(legs[t]));
                if ok {
                    go(g, c, a, legs, out);
                }
                legs.pop();
            }
        }
        go(self, c, a, &mut legs, &mut out);
        out
    }

    fn cones(&self, c: &FiniteCategory) -> Vec<Cone> {
        (0..c.num_objects()).flat_map(|a| self.cones_at(c, a)).collect()
    }

    /// Morphisms `u : other.apex -> cone.apex` with `cone.legs[v] ∘ u =
    /// other.legs[v]` for every vertex.
    fn factorizations(&self, c: &FiniteCategory, cone: &Cone, other: &Cone) -> Vec<usize> {
        c.hom(other.apex, cone.apex)
            .iter()
            .copied()
            .filter(|&u| cone.legs.iter().zip(&other.legs).all(|(&l, &m)| c.compose(l, u) == Some(m)))
            .collect()
    }

    /// The least terminal cone in (apex, enumeration) order, with the
    /// factorization of every cone through it.
    fn terminal(&self, c: &FiniteCategory) -> Option<(Cone, Vec<(Cone, usize)>)> {
        let all = self.cones(c);
        all.iter().find_map(|cone| {
            let mut table = Vec::with_capacity(all.len());
            for other in &all {
                match self.factorizations(c, cone, other)[..] {
                    [u] => table.push((other.clone(), u)),
                    _ => return None,
                }
            }
            Some((cone.clone(), table))
        })
    }
}

/// The unique factorization of `other` through a limit cone.
fn factor(c: &FiniteCategory, g: &Graph, limit: &Cone, other: &Cone, stage: &str) -> Result<usize> {
    match g.factorizations(c, limit, other)[..] {
        [u] => Ok(u),
        [] => Err(Error::MissingLimit { kind: "factorization", stage: stage.into(), detail: "a cone does not factor".into() }),
        _ => Err(Error::NonUnique(format!("factorization at stage {stage}"))),
    }
}

/// Product of `objects` with its projections: the meet in a thin category,
/// a terminal-cone search otherwise.
fn product(c: &FiniteCategory, objects: &[usize], stage: &str, kappa: Option<usize>) -> Result<Cone> {
    if let Some(k) = kappa {
        if objects.len() >= k {
            return Err(Error::KappaExceeded { stage: stage.into(), arity: objects.len(), kappa: k });
        }
    }
    let missing = || Error::MissingLimit {
        kind: "product",
        stage: stage.into(),
        detail: format!("of {}", objects.iter().map(|&o| c.objects()[o].as_str()).collect::<Vec<_>>().join(", ")),
    };
    if c.is_thin() {
        let lower: Vec<usize> = (0..c.num_objects()).filter(|&a| objects.iter().all(|&o| c.leq(a, o))).collect();
        let m = lower.iter().copied().find(|&m| lower.iter().all(|&a| c.leq(a, m))).ok_or_else(missing)?;
        return Ok(Cone { apex: m, legs: objects.iter().map(|&o| c.hom(m, o)[0]).collect() });
    }
    let g = Graph { objects: objects.to_vec(), edges: vec![] };
    g.terminal(c).map(|(cone, _)| cone).ok_or_else(missing)
}

/// Pullback of `f : y -> x` and `g : z -> x`; legs are `(y, z)`.
fn pullback(c: &FiniteCategory, f: usize, g: usize, stage: &str) -> Result<Cone> {
    let missing = || Error::MissingLimit {
        kind: "pullback",
        stage: stage.into(),
        detail: format!("of `{}` and `{}`", c.morphism(f).name, c.morphism(g).name),
    };
    let (y, z) = (c.src(f), c.src(g));
    if c.is_thin() {
        return product(c, &[y, z], stage, None).map_err(|_| missing());
    }
    let graph = Graph { objects: vec![y, z, c.tgt(f)], edges: vec![(0, 2, f), (1, 2, g)] };
    let (cone, _) = graph.terminal(c).ok_or_else(missing)?;
    Ok(Cone { apex: cone.apex, legs: cone.legs[..2].to_vec() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitKind {
    Limit,
    Colimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Induction,
    BruteForce,
    Simplex,
    Pushout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorRow {
    pub apex: String,
    pub legs: Vec<String>,
    pub via: String,
}

/// One cell-attachment stage: the pullback of the limit over the new cells
/// and the limit of the previous skeleton over the cell boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageRecord {
    pub stage: usize,
    pub cells: usize,
    pub cells_product: String,
    pub boundary_product: String,
    pub previous: String,
    pub apex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Evidence {
    /// Every cone with its unique factorization through the apex.
    Factorizations { rows: Vec<FactorRow> },
    /// Stage 0 is the product over the vertices.
    Trace { vertices: String, stages: Vec<StageRecord> },
    Evaluation { vertex: String },
    Pushout { left: String, right: String, glue: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitCertificate {
    pub format: String,
    pub kind: LimitKind,
    pub mode: Mode,
    pub apex: String,
    /// Leg at every vertex of the shape; for colimits the legs point into
    /// the apex.
    pub legs: IndexMap<String, String>,
    pub evidence: Evidence,
    #[serde(skip)]
    pub cone: Cone,
}

impl LimitCertificate {
    fn new(c: &FiniteCategory, d: &DiagramInCat, mode: Mode, cone: Cone, evidence: Evidence) -> Self {
        let x = &d.x;
        LimitCertificate {
            format: LIMCERT_FORMAT.into(),
            kind: LimitKind::Limit,
            mode,
            apex: c.objects()[cone.apex].clone(),
            legs: x.gen_ids(0).zip(&cone.legs).map(|(v, &l)| (x.id_of(v).to_string(), c.morphism(l).name.clone())).collect(),
            evidence,
            cone,
        }
    }

    pub fn to_json(&self) -> String {
        to_canonical(self)
    }

    /// Parses a certificate and resolves its cone against `c` and `d`.
    pub fn from_json(c: &FiniteCategory, d: &DiagramInCat, text: &str) -> Result<Self> {
        let mut cert: LimitCertificate = parse_versioned(text, LIMCERT_FORMAT)?;
        let apex = c.object_index(&cert.apex).ok_or_else(|| schema_err("apex", format!("unknown object `{}`", cert.apex)))?;
        let mut legs = Vec::new();
        for v in d.x.gen_ids(0) {
            let id = d.x.id_of(v);
            let name = cert.legs.get(id).ok_or_else(|| schema_err(format!("legs.{id}"), "missing leg"))?;
            legs.push(c.morphism_index(name).ok_or_else(|| schema_err(format!("legs.{id}"), format!("unknown morphism `{name}`")))?);
        }
        if cert.legs.len() != legs.len() {
            return Err(schema_err("legs", "legs for vertices outside the shape"));
        }
        cert.cone = Cone { apex, legs };
        Ok(cert)
    }

    /// Re-verifies the certificate: the legs form a cone and, for
    /// brute-force evidence, every cone of `d` factors uniquely through it
    /// with the recorded factorization. For colimits pass the opposite
    /// category and diagram.
    pub fn replay(&self, c: &FiniteCategory, d: &DiagramInCat) -> Result<bool> {
        let g = Graph::of(c, d);
        if !g.is_cone(c, &self.cone) {
            return Ok(false);
        }
        match &self.evidence {
            Evidence::Factorizations { rows } => {
                let all = g.cones(c);
                if all.len() != rows.len() {
                    return Ok(false);
                }
                for (cone, row) in all.iter().zip(rows) {
                    let fs = g.factorizations(c, &self.cone, cone);
                    if fs.len() != 1 || c.morphism(fs[0]).name != row.via || c.objects()[cone.apex] != row.apex {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Evidence::Evaluation { vertex } => {
                Ok(d.x.lookup(vertex).is_some_and(|v| d.objects[v.index()] == self.cone.apex))
            }
            _ => Ok(true),
        }
    }
}

fn names(c: &FiniteCategory, ms: &[usize]) -> Vec<String> {
    ms.iter().map(|&m| c.morphism(m).name.clone()).collect()
}

/// The terminal cone over `d` found by exhaustive search, the least apex in
/// object order; `None` when `C` has no such limit.
pub fn brute_force_limit(c: &FiniteCategory, d: &DiagramInCat) -> Option<LimitCertificate> {
    let g = Graph::of(c, d);
    let (cone, table) = g.terminal(c)?;
    let rows = table
        .into_iter()
        .map(|(other, u)| FactorRow { apex: c.objects()[other.apex].clone(), legs: names(c, &other.legs), via: c.morphism(u).name.clone() })
        .collect();
    Some(LimitCertificate::new(c, d, Mode::BruteForce, cone, Evidence::Factorizations { rows }))
}

/// The limit over `Δⁿ` is the value at vertex 0 with the chain composites
/// as legs.
pub fn limit_over_simplex(c: &FiniteCategory, d: &DiagramInCat) -> Result<LimitCertificate> {
    let n = d.x.dim().unwrap_or(0);
    if *d.x != std_simplex(n) {
        return Err(Error::InvalidDiagram("the shape is not a standard simplex".into()));
    }
    let legs = (0..=n)
        .map(|k| if k == 0 { c.identity(d.objects[0]) } else { d.edge(c, simplex_from_vertices(&d.x, 1, &[0, k])) })
        .collect();
    let cone = Cone { apex: d.objects[0], legs };
    let vertex = d.x.id_of(d.x.vertex(0).gen).to_string();
    Ok(LimitCertificate::new(c, d, Mode::Simplex, cone, Evidence::Evaluation { vertex }))
}

/// Restricts a cone over `d` along `j : Y -> X` to a cone over `d ∘ j`.
fn restrict_cone(cone: &Cone, j: &SimplicialMap) -> Cone {
    let legs = j.source().gen_ids(0).map(|v| cone.legs[j.image(v).gen.index()]).collect();
    Cone { apex: cone.apex, legs }
}

/// Limit over a pushout `P = Y ⊔_W Z` (`glue.legs` are `Y -> P` and
/// `Z -> P`, `w_y : W -> Y`, `w_z : W -> Z`) from limits over the pieces:
/// the pullback of the induced cospan `ℓ_Y -> ℓ_W <- ℓ_Z`.
#[allow(clippy::too_many_arguments)]
pub fn glue_limits_pushout(
    c: &FiniteCategory,
    glue: &Colimit,
    w_y: &SimplicialMap,
    w_z: &SimplicialMap,
    d: &DiagramInCat,
    l_w: &LimitCertificate,
    l_y: &LimitCertificate,
    l_z: &LimitCertificate,
) -> Result<LimitCertificate> {
    let stage = "pushout";
    if *glue.sset != *d.x || glue.legs.len() != 2 {
        return Err(Error::Mismatch("the diagram is not over the pushout".into()));
    }
    let (jy, jz) = (&glue.legs[0], &glue.legs[1]);
    let (dy, dz) = (d.restrict(c, jy)?, d.restrict(c, jz)?);
    let dw = dy.restrict(c, w_y)?;
    if dz.restrict(c, w_z)? != dw {
        return Err(Error::NonCommuting("the pushout square".into()));
    }
    let gw = Graph::of(c, &dw);
    let u = factor(c, &gw, &l_w.cone, &restrict_cone(&l_y.cone, w_y), stage)?;
    let v = factor(c, &gw, &l_w.cone, &restrict_cone(&l_z.cone, w_z), stage)?;
    let p = pullback(c, u, v, stage)?;
    let legs = d
        .x
        .gen_ids(0)
        .map(|x| {
            let from = |j: &SimplicialMap, l: &LimitCertificate, leg: usize| {
                j.source().gen_ids(0).find(|&y| j.image(y).gen == x).map(|y| c.compose(l.cone.legs[y.index()], p.legs[leg]).expect("typed"))
            };
            from(jy, l_y, 0).or_else(|| from(jz, l_z, 1)).expect("pushout legs are jointly surjective")
        })
        .collect();
    let cone = Cone { apex: p.apex, legs };
    let ev = Evidence::Pushout { left: l_y.apex.clone(), right: l_z.apex.clone(), glue: l_w.apex.clone() };
    Ok(LimitCertificate::new(c, d, Mode::Pushout, cone, ev))
}

/// The limit over `X` built skeleton by skeleton: the product over the
/// vertices, then at each dimension `n` the pullback of
/// `ℓ(⊔Δⁿ) -> ℓ(⊔∂Δⁿ) <- ℓ(sk_{n-1}X)`. Products must have arity below
/// `kappa` when it is given.
pub fn limit_by_skeletal_induction(c: &FiniteCategory, d: &DiagramInCat, kappa: Option<usize>) -> Result<LimitCertificate> {
    let (cone, vertices, stages) = induction(c, d, kappa, "")?;
    let ev = Evidence::Trace { vertices: c.objects()[vertices].clone(), stages };
    Ok(LimitCertificate::new(c, d, Mode::Induction, cone, ev))
}

fn induction(c: &FiniteCategory, d: &DiagramInCat, kappa: Option<usize>, prefix: &str) -> Result<(Cone, usize, Vec<StageRecord>)> {
    let x: &Arc<SimplicialSet> = &d.x;
    let name = |n: usize| format!("{prefix}sk{n}");
    let base = product(c, &d.objects, &name(0), kappa)?;
    let vertices = base.apex;
    let mut current = base;
    let mut stages = Vec::new();
    for n in 1..x.counts().len() {
        let stage = name(n);
        let cells: Vec<Simplex> = x.gen_ids(n).map(Simplex::nondegenerate).collect();
        if cells.is_empty() {
            continue;
        }
        let (_, incl) = boundary(n)?;
        let mut tops = Vec::new();
        let mut bottoms = Vec::new();
        let mut u = Vec::new();
        let mut v = Vec::new();
        for (k, &s) in cells.iter().enumerate() {
            let chi = characteristic_map(x, s)?;
            let ds = d.restrict(c, &chi)?;
            let top = limit_over_simplex(c, &ds)?;
            let db = ds.restrict(c, &incl)?;
            let (bottom, _, _) = induction(c, &db, kappa, &format!("{stage}.{k}/"))?;
            let gb = Graph::of(c, &db);
            u.push(factor(c, &gb, &bottom, &restrict_cone(&top.cone, &incl), &stage)?);
            v.push(factor(c, &gb, &bottom, &restrict_cone(&current, &incl.then(&chi)?), &stage)?);
            tops.push(top.cone.apex);
            bottoms.push(bottom);
        }
        let top_prod = product(c, &tops, &stage, kappa)?;
        let bottom_objs: Vec<usize> = bottoms.iter().map(|b| b.apex).collect();
        let bottom_prod = product(c, &bottom_objs, &stage, kappa)?;
        let pgraph = Graph { objects: bottom_objs, edges: vec![] };
        let along_top = Cone {
            apex: top_prod.apex,
            legs: u.iter().zip(&top_prod.legs).map(|(&uk, &pk)| c.compose(uk, pk).expect("typed")).collect(),
        };
        let along_prev = Cone { apex: current.apex, legs: v };
        let uu = factor(c, &pgraph, &bottom_prod, &along_top, &stage)?;
        let vv = factor(c, &pgraph, &bottom_prod, &along_prev, &stage)?;
        let p = pullback(c, uu, vv, &stage)?;
        stages.push(StageRecord {
            stage: n,
            cells: cells.len(),
            cells_product: c.objects()[top_prod.apex].clone(),
            boundary_product: c.objects()[bottom_prod.apex].clone(),
            previous: c.objects()[current.apex].clone(),
            apex: c.objects()[p.apex].clone(),
        });
        current = Cone {
            apex: p.apex,
            legs: current.legs.iter().map(|&l| c.compose(l, p.legs[1]).expect("typed")).collect(),
        };
    }
    Ok((current, vertices, stages))
}

/// Colimits are limits in the opposite category over the opposite shape.
pub fn colimit_by_skeletal_induction(c: &FiniteCategory, d: &DiagramInCat, kappa: Option<usize>) -> Result<LimitCertificate> {
    let c_op = c.opposite();
    let mut cert = limit_by_skeletal_induction(&c_op, &d.opposite(&c_op)?, kappa)?;
    cert.kind = LimitKind::Colimit;
    Ok(cert)
}

pub fn brute_force_colimit(c: &FiniteCategory, d: &DiagramInCat) -> Result<Option<LimitCertificate>> {
    let c_op = c.opposite();
    Ok(brute_force_limit(&c_op, &d.opposite(&c_op)?).map(|mut cert| {
        cert.kind = LimitKind::Colimit;
        cert
    }))
}

/// The unique isomorphism of apexes compatible with both cones, if any.
pub fn cone_isomorphism(c: &FiniteCategory, d: &DiagramInCat, a: &Cone, b: &Cone) -> Option<usize> {
    let g = Graph::of(c, d);
    match g.factorizations(c, b, a)[..] {
        [u] if c.is_iso(u) => Some(u),
        _ => None,
    }
}

/// Both engines on one diagram. They agree when neither finds a limit or
/// both do and the cones are isomorphic.
pub struct EngineComparison {
    pub induction: Option<LimitCertificate>,
    /// Why induction found no limit.
    pub missing: Option<Error>,
    pub brute: Option<LimitCertificate>,
    pub agree: bool,
}

pub fn compare_engines(c: &FiniteCategory, d: &DiagramInCat, kappa: Option<usize>) -> Result<EngineComparison> {
    let brute = brute_force_limit(c, d);
    let (induction, missing) = match limit_by_skeletal_induction(c, d, kappa) {
        Ok(cert) => (Some(cert), None),
        Err(e @ Error::MissingLimit { .. }) => (None, Some(e)),
        Err(e) => return Err(e),
    };
    let agree = match (&induction, &brute) {
        (None, None) => true,
        (Some(i), Some(b)) => cone_isomorphism(c, d, &i.cone, &b.cone).is_some(),
        _ => false,
    };
    Ok(EngineComparison { induction, missing, brute, agree })
}

/// [`compare_engines`] for colimits, through the opposite category.
pub fn compare_colimit_engines(c: &FiniteCategory, d: &DiagramInCat, kappa: Option<usize>) -> Result<EngineComparison> {
    let c_op = c.opposite();
    let mut cmp = compare_engines(&c_op, &d.opposite(&c_op)?, kappa)?;
    for cert in [&mut cmp.induction, &mut cmp.brute].into_iter().flatten() {
        cert.kind = LimitKind::Colimit;
    }
    Ok(cmp)
}
