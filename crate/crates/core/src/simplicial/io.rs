//! The `sset/1` and `map/1` JSON schemas and DOT export.

use std::fmt::Write;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::degeneracy::DegeneracyWord;
use crate::error::Result;
use crate::schema::{from_versioned, parse_versioned, schema_err, to_canonical};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{Simplex, SimplicialSet, SsetBuilder};

pub const SSET_FORMAT: &str = "sset/1";
pub const MAP_FORMAT: &str = "map/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexJson {
    pub t: String,
    pub w: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub id: String,
    pub faces: Vec<SimplexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SsetJson {
    pub format: String,
    pub dim: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub nerve: bool,
    pub generators: IndexMap<String, Vec<GeneratorJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub format: String,
    pub source: SsetJson,
    pub target: SsetJson,
    pub images: IndexMap<String, SimplexJson>,
}

fn simplex_json(x: &SimplicialSet, s: Simplex) -> SimplexJson {
    SimplexJson { t: x.id_of(s.gen).to_string(), w: s.word.indices() }
}

fn parse_simplex(lookup: impl Fn(&str) -> Option<crate::simplicial::sset::GenId>, s: &SimplexJson, path: &str) -> Result<Simplex> {
    let gen = lookup(&s.t).ok_or_else(|| schema_err(format!("{path}.t"), format!("unknown generator `{}`", s.t)))?;
    let word = DegeneracyWord::from_indices(&s.w).map_err(|e| schema_err(format!("{path}.w"), e.to_string()))?;
    if !word.fits(gen.dim()) {
        return Err(schema_err(format!("{path}.w"), "word does not apply to the generator's dimension"));
    }
    Ok(Simplex { gen, word })
}

impl SsetJson {
    pub fn from_sset(x: &SimplicialSet) -> Self {
        let mut generators = IndexMap::new();
        for n in 0..x.counts().len() {
            let level = x
                .gen_ids(n)
                .map(|g| GeneratorJson {
                    id: x.id_of(g).to_string(),
                    faces: x.generator(g).faces.iter().map(|&f| simplex_json(x, f)).collect(),
                })
                .collect();
            generators.insert(n.to_string(), level);
        }
        SsetJson {
            format: SSET_FORMAT.into(),
            dim: x.dim().map_or(-1, |d| d as i64),
            bound: x.truncation(),
            nerve: x.is_nerve(),
            generators,
        }
    }

    pub fn to_sset(&self) -> Result<SimplicialSet> {
        if self.format != SSET_FORMAT {
            return Err(schema_err("format", format!("unsupported format `{}`", self.format)));
        }
        let mut b = SsetBuilder::new();
        let levels = usize::try_from(self.dim + 1).map_err(|_| schema_err("dim", "must be at least -1"))?;
        if self.generators.len() != levels {
            return Err(schema_err("generators", format!("expected {levels} dimensions, found {}", self.generators.len())));
        }
        for (n, (key, gens)) in self.generators.iter().enumerate() {
            if *key != n.to_string() {
                return Err(schema_err(format!("generators.{key}"), format!("expected key `{n}`")));
            }
            if n as i64 == self.dim && gens.is_empty() {
                return Err(schema_err(format!("generators.{key}"), "top dimension has no generators"));
            }
            b.ensure_dim(n);
            for (k, g) in gens.iter().enumerate() {
                let path = format!("generators.{key}[{k}]");
                let faces = g
                    .faces
                    .iter()
                    .enumerate()
                    .map(|(i, f)| parse_simplex(|id| b.lookup(id), f, &format!("{path}.faces[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                b.push(n, g.id.clone(), faces).map_err(|e| schema_err(path, e.to_string()))?;
            }
        }
        let mut x = b.finish()?.with_truncation(self.bound);
        if self.nerve {
            x = x.mark_nerve();
        }
        Ok(x)
    }
}

pub fn sset_to_json(x: &SimplicialSet) -> String {
    to_canonical(&SsetJson::from_sset(x))
}

pub fn sset_from_json(text: &str) -> Result<SimplicialSet> {
    parse_versioned::<SsetJson>(text, SSET_FORMAT)?.to_sset()
}

pub fn sset_from_value(value: serde_json::Value) -> Result<SimplicialSet> {
    from_versioned::<SsetJson>(value, SSET_FORMAT)?.to_sset()
}

/// Generator images of a map keyed by source ids.
pub fn images_json(f: &SimplicialMap) -> IndexMap<String, SimplexJson> {
    let (x, y) = (f.source(), f.target());
    x.all_gen_ids()
        .into_iter()
        .map(|g| (x.id_of(g).to_string(), simplex_json(y, f.image(g))))
        .collect()
}

/// Rebuilds a map between known sets from its keyed images.
pub fn images_from_json(
    x: Arc<SimplicialSet>,
    y: Arc<SimplicialSet>,
    images_in: &IndexMap<String, SimplexJson>,
    path: &str,
) -> Result<SimplicialMap> {
    let order = x.all_gen_ids();
    if images_in.len() != order.len() {
        return Err(schema_err(path, format!("expected {} images, found {}", order.len(), images_in.len())));
    }
    let mut images: Vec<Vec<Simplex>> = x.counts().iter().map(|&c| Vec::with_capacity(c)).collect();
    for (g, (key, img)) in order.iter().zip(images_in) {
        if key != x.id_of(*g) {
            return Err(schema_err(format!("{path}.{key}"), format!("expected generator `{}`", x.id_of(*g))));
        }
        let s = parse_simplex(|id| y.lookup(id), img, &format!("{path}.{key}"))?;
        if s.dim() != g.dim() {
            return Err(schema_err(format!("{path}.{key}"), "image has the wrong dimension"));
        }
        images[g.dim()].push(s);
    }
    SimplicialMap::new(x, y, images)
}

impl MapJson {
    pub fn from_map(f: &SimplicialMap) -> Self {
        let (x, y) = (f.source(), f.target());
        let images = images_json(f);
        MapJson {
            format: MAP_FORMAT.into(),
            source: SsetJson::from_sset(x),
            target: SsetJson::from_sset(y),
            images,
        }
    }

    pub fn to_map(&self) -> Result<SimplicialMap> {
        if self.format != MAP_FORMAT {
            return Err(schema_err("format", format!("unsupported format `{}`", self.format)));
        }
        let x = Arc::new(self.source.to_sset()?);
        let y = Arc::new(self.target.to_sset()?);
        images_from_json(x, y, &self.images, "images")
    }
}

pub fn map_to_json(f: &SimplicialMap) -> String {
    to_canonical(&MapJson::from_map(f))
}

pub fn map_from_json(text: &str) -> Result<SimplicialMap> {
    parse_versioned::<MapJson>(text, MAP_FORMAT)?.to_map()
}

/// DOT digraph of the 1-skeleton; higher generators are listed as comments.
pub fn to_dot(x: &SimplicialSet) -> String {
    let mut out = String::from("digraph sset {\n");
    for g in x.gen_ids(0) {
        writeln!(out, "  {:?};", x.id_of(g)).unwrap();
    }
    for g in x.gen_ids(1) {
        let f = &x.generator(g).faces;
        writeln!(
            out,
            "  {:?} -> {:?} [label={:?}];",
            x.id_of(f[1].gen),
            x.id_of(f[0].gen),
            x.id_of(g)
        )
        .unwrap();
    }
    for n in 2..x.counts().len() {
        for g in x.gen_ids(n) {
            writeln!(out, "  // {n}-cell {}", x.id_of(g)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, std_simplex};

    #[test]
    fn round_trip_is_byte_exact() {
        let x = std_simplex(3);
        let text = sset_to_json(&x);
        let y = sset_from_json(&text).unwrap();
        assert_eq!(x, y);
        assert_eq!(sset_to_json(&y), text);
        let (b, inc) = boundary(2).unwrap();
        let t = map_to_json(&inc);
        let back = map_from_json(&t).unwrap();
        assert_eq!(back, inc);
        assert_eq!(map_to_json(&back), t);
        assert_eq!(sset_to_json(&b), sset_to_json(&b));
    }

    #[test]
    fn rejects_unknown_version() {
        let text = sset_to_json(&std_simplex(1)).replace("sset/1", "sset/2");
        let err = sset_from_json(&text).unwrap_err();
        assert!(err.to_string().contains("sset/2"));
    }

    #[test]
    fn reports_bad_face_path() {
        let text = sset_to_json(&std_simplex(1)).replacen("\"t\": \"0\"", "\"t\": \"zz\"", 1);
        let err = sset_from_json(&text).unwrap_err().to_string();
        assert!(err.contains("generators.1[0].faces"), "{err}");
    }

    #[test]
    fn dot_of_boundary() {
        let (b, _) = boundary(2).unwrap();
        let d = to_dot(&b);
        assert_eq!(d.matches("->").count(), 3);
    }
}
