//! Finite categories given by composition tables.

use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schema::{parse_versioned, schema_err, to_canonical};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category. Associativity and unit laws are checked exhaustively
/// on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    // comp[g * m + f] = g ∘ f
    comp: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

impl FiniteCategory {
    /// `compose` lists triples `(g, f, g∘f)` for every composable pair.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = morphisms.len();
        let n = objects.len();
        let bad = |s: String| Err(Error::InvalidCategory(s));
        if identities.len() != n {
            return bad(format!("{} identities for {n} objects", identities.len()));
        }
        for f in &morphisms {
            if f.src >= n || f.tgt >= n {
                return bad(format!("morphism `{}` has an unknown endpoint", f.name));
            }
        }
        for (a, &id) in identities.iter().enumerate() {
            if id >= m || morphisms[id].src != a || morphisms[id].tgt != a {
                return bad(format!("identity of `{}` is not an endomorphism of it", objects[a]));
            }
        }
        let mut comp = vec![None; m * m];
        for &(g, f, h) in compose {
            if g >= m || f >= m || h >= m {
                return bad(format!("composition triple ({g}, {f}, {h}) out of range"));
            }
            if morphisms[f].tgt != morphisms[g].src {
                return bad(format!("`{}` ∘ `{}` is not composable", morphisms[g].name, morphisms[f].name));
            }
            if morphisms[h].src != morphisms[f].src || morphisms[h].tgt != morphisms[g].tgt {
                return bad(format!("`{}` ∘ `{}` has the wrong type", morphisms[g].name, morphisms[f].name));
            }
            if comp[g * m + f].is_some_and(|old| old != h) {
                return bad(format!("`{}` ∘ `{}` given twice", morphisms[g].name, morphisms[f].name));
            }
            comp[g * m + f] = Some(h);
        }
        let mut homs = vec![Vec::new(); n * n];
        for (k, f) in morphisms.iter().enumerate() {
            homs[f.src * n + f.tgt].push(k);
        }
        let c = FiniteCategory { objects, morphisms, identities, comp, homs };
        c.check_laws()?;
        Ok(c)
    }

    fn check_laws(&self) -> Result<()> {
        let m = self.morphisms.len();
        for g in 0..m {
            for f in 0..m {
                let composable = self.morphisms[f].tgt == self.morphisms[g].src;
                if composable != self.comp[g * m + f].is_some() {
                    return Err(Error::InvalidCategory(format!(
                        "composite `{}` ∘ `{}` missing",
                        self.morphisms[g].name, self.morphisms[f].name
                    )));
                }
            }
        }
        for f in 0..m {
            let Morphism { src, tgt, .. } = self.morphisms[f];
            if self.compose(f, self.identities[src]) != Some(f)
                || self.compose(self.identities[tgt], f) != Some(f)
            {
                return Err(Error::InvalidCategory(format!("unit law fails at `{}`", self.morphisms[f].name)));
            }
        }
        for f in 0..m {
            for g in self.out_of(self.morphisms[f].tgt) {
                for h in self.out_of(self.morphisms[g].tgt) {
                    let gf = self.compose(g, f).expect("composable");
                    let hg = self.compose(h, g).expect("composable");
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(Error::InvalidCategory(format!(
                            "associativity fails at ({}, {}, {})",
                            self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn out_of(&self, a: usize) -> Vec<usize> {
        (0..self.objects.len()).flat_map(|b| self.hom(a, b).iter().copied()).collect()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphisms.len() + f]
    }

    /// Composite of a path given in diagrammatic order (first arrow first).
    pub fn compose_path(&self, start: usize, path: &[usize]) -> Option<usize> {
        let mut acc = self.identity(start);
        for &f in path {
            acc = self.compose(f, acc)?;
        }
        Some(acc)
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let Morphism { src, tgt, .. } = self.morphisms[f];
        self.hom(tgt, src).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity(src)) && self.compose(f, g) == Some(self.identity(tgt))
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// All composition triples, for serialization.
    pub fn composition_triples(&self) -> Vec<(usize, usize, usize)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.comp[g * m + f] {
                    out.push((g, f, h));
                }
            }
        }
        out
    }

    /// Whether the nerve is finite: no identity-free chain of length
    /// `|Ob| + 1` exists.
    pub fn has_finite_nerve(&self) -> bool {
        let n = self.objects.len();
        // longest[a] = longest identity-free chain starting at a, capped
        let mut frontier: Vec<usize> = (0..n).collect();
        for _ in 0..=n {
            let mut next = Vec::new();
            for &a in &frontier {
                for b in 0..n {
                    if self.hom(a, b).iter().any(|&f| !self.is_identity(f)) && !next.contains(&b) {
                        next.push(b);
                    }
                }
            }
            if next.is_empty() {
                return true;
            }
            frontier = next;
        }
        false
    }

    /// The poset on `0..n` with `i ≤ j` iff `leq(i, j)`; the relation must
    /// be a partial order (reflexive and transitive are checked).
    pub fn poset(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    index.insert((i, j), morphisms.len());
                    morphisms.push(Morphism { name: format!("{}<={}", names[i], names[j]), src: i, tgt: j });
                }
            }
        }
        let identities = (0..n)
            .map(|i| index.get(&(i, i)).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidCategory("order relation is not reflexive".into()))?;
        let mut triples = Vec::new();
        for (&(i, j), &f) in &index {
            for k in 0..n {
                if let Some(&g) = index.get(&(j, k)) {
                    let h = index
                        .get(&(i, k))
                        .ok_or_else(|| Error::InvalidCategory("order relation is not transitive".into()))?;
                    triples.push((g, f, *h));
                }
            }
        }
        triples.sort_unstable();
        Self::new(names, morphisms, identities, &triples)
    }

    /// Two objects and a pair of inverse isomorphisms between them.
    pub fn walking_iso() -> Self {
        let objects = vec!["0".to_string(), "1".to_string()];
        let m = |name: &str, src, tgt| Morphism { name: name.into(), src, tgt };
        let morphisms = vec![m("id0", 0, 0), m("id1", 1, 1), m("f", 0, 1), m("g", 1, 0)];
        let triples = [
            (0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2), (3, 1, 3), (0, 3, 3), (3, 2, 0), (2, 3, 1),
        ];
        Self::new(objects, morphisms, vec![0, 1], &triples).expect("walking isomorphism")
    }

    /// The total order `0 < 1 < ... < n`.
    pub fn chain(n: usize) -> Self {
        Self::poset((0..=n).map(|i| i.to_string()).collect(), |i, j| i <= j).expect("total order")
    }

    pub fn discrete(n: usize) -> Self {
        Self::poset((0..n).map(|i| i.to_string()).collect(), |i, j| i == j).expect("discrete")
    }

    /// A one-object category from a group multiplication table
    /// (`mul[a][b] = a·b`, element 0 the unit). Composition `g ∘ f = g·f`.
    pub fn group(elements: Vec<String>, mul: &[Vec<usize>]) -> Result<Self> {
        let m = elements.len();
        let morphisms = elements
            .into_iter()
            .map(|name| Morphism { name, src: 0, tgt: 0 })
            .collect();
        let mut triples = Vec::new();
        for g in 0..m {
            for f in 0..m {
                triples.push((g, f, mul[g][f]));
            }
        }
        let c = Self::new(vec!["*".into()], morphisms, vec![0], &triples)?;
        if (0..m).any(|g| c.inverse(g).is_none()) {
            return Err(Error::InvalidCategory("group table has a non-invertible element".into()));
        }
        Ok(c)
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic_group(n: usize) -> Self {
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::group((0..n).map(|k| k.to_string()).collect(), &mul).expect("cyclic group")
    }

    /// Product of two categories.
    pub fn product(&self, other: &FiniteCategory) -> Self {
        let (n2, m2) = (other.objects.len(), other.morphisms.len());
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .flat_map(|f| {
                other.morphisms.iter().map(move |g| Morphism {
                    name: format!("({},{})", f.name, g.name),
                    src: f.src * n2 + g.src,
                    tgt: f.tgt * n2 + g.tgt,
                })
            })
            .collect();
        let identities = (0..self.objects.len())
            .flat_map(|a| (0..n2).map(move |b| (a, b)))
            .map(|(a, b)| self.identity(a) * m2 + other.identity(b))
            .collect();
        let mut triples = Vec::new();
        for (g1, f1, h1) in self.composition_triples() {
            for (g2, f2, h2) in other.composition_triples() {
                triples.push((g1 * m2 + g2, f1 * m2 + f2, h1 * m2 + h2));
            }
        }
        Self::new(objects, morphisms, identities, &triples).expect("product of categories")
    }

    pub fn opposite(&self) -> Self {
        let morphisms = self
            .morphisms
            .iter()
            .map(|f| Morphism { name: f.name.clone(), src: f.tgt, tgt: f.src })
            .collect();
        let triples: Vec<_> = self.composition_triples().into_iter().map(|(g, f, h)| (f, g, h)).collect();
        Self::new(self.objects.clone(), morphisms, self.identities.clone(), &triples)
            .expect("opposite category")
    }

    /// The arrow category: objects are morphisms, morphisms are commuting
    /// squares `(u, v) : f -> g` with `g ∘ u = v ∘ f`.
    pub fn arrow_category(&self) -> Self {
        let objects: Vec<String> = self.morphisms.iter().map(|f| f.name.clone()).collect();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for (fi, f) in self.morphisms.iter().enumerate() {
            for (gi, g) in self.morphisms.iter().enumerate() {
                for &u in self.hom(f.src, g.src) {
                    for &v in self.hom(f.tgt, g.tgt) {
                        if self.compose(gi, u) == self.compose(v, fi) {
                            index.insert((u, v), morphisms.len());
                            morphisms.push((
                                Morphism {
                                    name: format!("[{},{}]", self.morphisms[u].name, self.morphisms[v].name),
                                    src: fi,
                                    tgt: gi,
                                },
                                u,
                                v,
                            ));
                        }
                    }
                }
            }
        }
        let find = |src: usize, tgt: usize, u: usize, v: usize| {
            morphisms
                .iter()
                .position(|(m, mu, mv)| m.src == src && m.tgt == tgt && *mu == u && *mv == v)
                .expect("square exists")
        };
        let identities = (0..self.morphisms.len())
            .map(|f| find(f, f, self.identity(self.src(f)), self.identity(self.tgt(f))))
            .collect();
        let mut triples = Vec::new();
        for (a, (ma, ua, va)) in morphisms.iter().enumerate() {
            for (b, (mb, ub, vb)) in morphisms.iter().enumerate() {
                if ma.tgt == mb.src {
                    let u = self.compose(*ub, *ua).expect("composable");
                    let v = self.compose(*vb, *va).expect("composable");
                    triples.push((b, a, find(ma.src, mb.tgt, u, v)));
                }
            }
        }
        let morphisms = morphisms.into_iter().map(|(m, _, _)| m).collect();
        Self::new(objects, morphisms, identities, &triples).expect("arrow category")
    }

    /// The full subcategory on the given objects (in the given order).
    pub fn full_subcategory(&self, objs: &[usize]) -> Self {
        let pos: HashMap<usize, usize> = objs.iter().enumerate().map(|(k, &o)| (o, k)).collect();
        let keep: Vec<usize> = (0..self.morphisms.len())
            .filter(|&f| pos.contains_key(&self.src(f)) && pos.contains_key(&self.tgt(f)))
            .collect();
        let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &f)| (f, k)).collect();
        let morphisms = keep
            .iter()
            .map(|&f| Morphism { name: self.morphisms[f].name.clone(), src: pos[&self.src(f)], tgt: pos[&self.tgt(f)] })
            .collect();
        let identities = objs.iter().map(|&o| new_index[&self.identity(o)]).collect();
        let triples: Vec<_> = self
            .composition_triples()
            .into_iter()
            .filter_map(|(g, f, h)| Some((*new_index.get(&g)?, *new_index.get(&f)?, new_index[&h])))
            .collect();
        let names = objs.iter().map(|&o| self.objects[o].clone()).collect();
        Self::new(names, morphisms, identities, &triples).expect("full subcategory")
    }

    /// Whether `a ≤ b` in a thin category.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        !self.hom(a, b).is_empty()
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl Functor {
    pub fn new(src: &FiniteCategory, tgt: &FiniteCategory, on_objects: Vec<usize>, on_morphisms: Vec<usize>) -> Result<Self> {
        let bad = |s: &str| Err(Error::InvalidCategory(format!("not a functor: {s}")));
        if on_objects.len() != src.num_objects() || on_morphisms.len() != src.num_morphisms() {
            return bad("wrong arity");
        }
        for (f, &ff) in on_morphisms.iter().enumerate() {
            if ff >= tgt.num_morphisms()
                || tgt.src(ff) != on_objects[src.src(f)]
                || tgt.tgt(ff) != on_objects[src.tgt(f)]
            {
                return bad("morphism typing");
            }
        }
        for (a, &fa) in on_objects.iter().enumerate() {
            if on_morphisms[src.identity(a)] != tgt.identity(fa) {
                return bad("identities");
            }
        }
        for (g, f, h) in src.composition_triples() {
            if tgt.compose(on_morphisms[g], on_morphisms[f]) != Some(on_morphisms[h]) {
                return bad("composition");
            }
        }
        Ok(Functor { on_objects, on_morphisms })
    }

    /// A group homomorphism as a functor between one-object categories.
    pub fn group_hom(src: &FiniteCategory, tgt: &FiniteCategory, on_elements: Vec<usize>) -> Result<Self> {
        Self::new(src, tgt, vec![0], on_elements)
    }
}

pub const CAT_FORMAT: &str = "cat/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// `cat/1`: objects, morphisms, identities, and the composition triples
/// `[g, f, g∘f]` of non-identity pairs. Unit triples are implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub format: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: IndexMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

impl FiniteCategory {
    pub fn to_json_value(&self) -> Result<CategoryJson> {
        let mut seen = HashSet::new();
        for name in self.objects.iter() {
            if !seen.insert(name) {
                return Err(schema_err("objects", format!("duplicate object name `{name}`")));
            }
        }
        seen.clear();
        for f in &self.morphisms {
            if !seen.insert(&f.name) {
                return Err(schema_err("morphisms", format!("duplicate morphism name `{}`", f.name)));
            }
        }
        let name = |f: usize| self.morphisms[f].name.clone();
        Ok(CategoryJson {
            format: CAT_FORMAT.into(),
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|f| MorphismJson {
                    name: f.name.clone(),
                    src: self.objects[f.src].clone(),
                    tgt: self.objects[f.tgt].clone(),
                })
                .collect(),
            identities: self.objects.iter().cloned().zip(self.identities.iter().map(|&f| name(f))).collect(),
            compose: self
                .composition_triples()
                .into_iter()
                .filter(|&(g, f, _)| !self.is_identity(g) && !self.is_identity(f))
                .map(|(g, f, h)| [name(g), name(f), name(h)])
                .collect(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(to_canonical(&self.to_json_value()?))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: CategoryJson = parse_versioned(text, CAT_FORMAT)?;
        Self::from_json_value(&j)
    }

    pub fn from_json_value(j: &CategoryJson) -> Result<Self> {
        let obj: HashMap<&str, usize> = j.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj.len() != j.objects.len() {
            return Err(schema_err("objects", "duplicate object name"));
        }
        let find_obj = |o: &str, path: String| obj.get(o).copied().ok_or_else(|| schema_err(path, format!("unknown object `{o}`")));
        let mut morphisms = Vec::new();
        for (k, m) in j.morphisms.iter().enumerate() {
            let src = find_obj(&m.src, format!("morphisms[{k}].src"))?;
            let tgt = find_obj(&m.tgt, format!("morphisms[{k}].tgt"))?;
            morphisms.push(Morphism { name: m.name.clone(), src, tgt });
        }
        let mor: HashMap<&str, usize> = j.morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect();
        if mor.len() != j.morphisms.len() {
            return Err(schema_err("morphisms", "duplicate morphism name"));
        }
        let find = |f: &str, path: String| mor.get(f).copied().ok_or_else(|| schema_err(path, format!("unknown morphism `{f}`")));
        let mut identities = vec![usize::MAX; j.objects.len()];
        for (o, f) in &j.identities {
            identities[find_obj(o, format!("identities.{o}"))?] = find(f, format!("identities.{o}"))?;
        }
        if let Some(a) = identities.iter().position(|&f| f == usize::MAX) {
            return Err(schema_err("identities", format!("no identity for `{}`", j.objects[a])));
        }
        let mut triples = Vec::new();
        for (k, t) in j.compose.iter().enumerate() {
            let path = format!("compose[{k}]");
            triples.push((find(&t[0], path.clone())?, find(&t[1], path.clone())?, find(&t[2], path)?));
        }
        for (f, m) in morphisms.iter().enumerate() {
            triples.push((f, identities[m.src], f));
            if identities[m.tgt] != f {
                triples.push((identities[m.tgt], f, f));
            }
        }
        Self::new(j.objects.clone(), morphisms, identities, &triples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_group_laws() {
        let c = FiniteCategory::chain(2);
        assert_eq!(c.num_morphisms(), 6);
        assert!(c.is_thin());
        let z3 = FiniteCategory::cyclic_group(3);
        assert_eq!(z3.compose(1, 2), Some(0));
        assert!(!z3.has_finite_nerve());
        assert!(c.has_finite_nerve());
    }

    #[test]
    fn rejects_broken_tables() {
        let objs = vec!["a".to_string()];
        let ms = vec![
            Morphism { name: "1".into(), src: 0, tgt: 0 },
            Morphism { name: "e".into(), src: 0, tgt: 0 },
        ];
        // e∘e missing
        let r = FiniteCategory::new(objs.clone(), ms.clone(), vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1)]);
        assert!(r.is_err());
        // idempotent e is fine
        let r = FiniteCategory::new(objs, ms, vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
        assert!(r.is_ok());
        assert!(FiniteCategory::poset(vec!["a".into(), "b".into()], |i, j| i != j).is_err());
    }

    #[test]
    fn arrow_category_of_chain() {
        let c = FiniteCategory::chain(1);
        let a = c.arrow_category();
        // arrows 0≤0, 0≤1, 1≤1 form a chain of three objects
        assert_eq!(a.num_objects(), 3);
        assert!(a.is_thin());
        assert_eq!(a.num_morphisms(), 6);
    }

    #[test]
    fn category_json_round_trip() {
        for c in [FiniteCategory::chain(2), FiniteCategory::walking_iso(), FiniteCategory::cyclic_group(3)] {
            let text = c.to_json().unwrap();
            let back = FiniteCategory::from_json(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json().unwrap(), text);
        }
        let bad = FiniteCategory::chain(1).to_json().unwrap().replace("cat/1", "cat/2");
        assert!(FiniteCategory::from_json(&bad).is_err());
    }
}
