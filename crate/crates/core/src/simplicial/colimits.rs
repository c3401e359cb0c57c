//! Coproducts, pushouts along monomorphisms and finite sequential composites.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet, SsetBuilder};

/// A colimit with its cocone legs.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub sset: Arc<SimplicialSet>,
    pub legs: Vec<SimplicialMap>,
}

/// Disjoint union; the generators of summand `k` are renamed `k.<id>`.
pub fn coproduct(parts: &[Arc<SimplicialSet>]) -> Result<Colimit> {
    let mut b = SsetBuilder::new();
    let top = parts.iter().filter_map(|p| p.dim()).max();
    // positions[k][g] = generator of the coproduct
    let mut positions: Vec<HashMap<GenId, GenId>> = vec![HashMap::new(); parts.len()];
    if let Some(top) = top {
        for n in 0..=top {
            b.ensure_dim(n);
            for (k, p) in parts.iter().enumerate() {
                for g in p.gen_ids(n) {
                    let faces = p
                        .generator(g)
                        .faces
                        .iter()
                        .map(|f| Simplex { gen: positions[k][&f.gen], word: f.word })
                        .collect();
                    let new = b.push(n, format!("{k}.{}", p.id_of(g)), faces)?;
                    positions[k].insert(g, new);
                }
            }
        }
    }
    let sset = Arc::new(b.finish_unchecked());
    let legs = parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let images = (0..p.dim().map_or(0, |d| d + 1))
                .map(|n| p.gen_ids(n).map(|g| Simplex::nondegenerate(positions[k][&g])).collect())
                .collect();
            SimplicialMap::new_unchecked(p.clone(), sset.clone(), images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Colimit { sset, legs })
}

/// The pushout of `i : X ↪ Y` along `g : X -> Z`.
///
/// Generators of the result are those of `Z` (same positions, same ids)
/// followed, in each dimension, by the generators of `Y` outside the image
/// of `i`. `legs[0]` is `Y -> P`, `legs[1]` is `Z -> P`.
pub fn pushout(i: &SimplicialMap, g: &SimplicialMap) -> Result<Colimit> {
    if !i.is_mono() {
        return Err(Error::NotMono("the first leg of a pushout".into()));
    }
    if **i.source() != **g.source() {
        return Err(Error::Mismatch("pushout legs must share a domain".into()));
    }
    let (y, z) = (i.target().clone(), g.target().clone());
    // preimage under i of each hit generator of Y
    let mut pre: HashMap<GenId, GenId> = HashMap::new();
    for x in i.source().all_gen_ids() {
        pre.insert(i.image(x).gen, x);
    }
    let top = y.dim().max(z.dim());
    let mut b = SsetBuilder::new();
    let mut fresh: HashMap<GenId, GenId> = HashMap::new();
    let mut leg_y: Vec<Vec<Simplex>> = Vec::new();
    if let Some(top) = top {
        for n in 0..=top {
            b.ensure_dim(n);
            for zg in z.gen_ids(n) {
                let gen = z.generator(zg);
                b.push_unchecked(n, gen.id.clone(), gen.faces.clone());
            }
            let mut row = Vec::new();
            for yg in y.gen_ids(n) {
                if let Some(&x) = pre.get(&yg) {
                    row.push(g.image(x));
                    continue;
                }
                let faces: Vec<Simplex> = y
                    .generator(yg)
                    .faces
                    .iter()
                    .map(|&f| send(f, &pre, &fresh, g, b.current()))
                    .collect();
                let id = y.id_of(yg);
                let id = if z.lookup(id).is_some() || b.lookup(id).is_some() {
                    format!("y.{id}")
                } else {
                    id.to_string()
                };
                let new = b.push(n, id, faces)?;
                fresh.insert(yg, new);
                row.push(Simplex::nondegenerate(new));
            }
            leg_y.push(row);
        }
    }
    let sset = Arc::new(b.finish_unchecked());
    let leg_y = SimplicialMap::new_unchecked(y, sset.clone(), leg_y)?;
    let leg_z_images = (0..z.dim().map_or(0, |d| d + 1))
        .map(|n| z.gen_ids(n).map(Simplex::nondegenerate).collect())
        .collect();
    let leg_z = SimplicialMap::new_unchecked(z, sset.clone(), leg_z_images)?;
    Ok(Colimit { sset, legs: vec![leg_y, leg_z] })
}

fn send(
    f: Simplex,
    pre: &HashMap<GenId, GenId>,
    fresh: &HashMap<GenId, GenId>,
    g: &SimplicialMap,
    partial: &SimplicialSet,
) -> Simplex {
    match pre.get(&f.gen) {
        Some(&x) => {
            let img = g.image(x);
            if f.word.is_empty() {
                img
            } else {
                // Z's generators sit at the same positions in the pushout.
                partial.act(img, &f.word.surjection(f.dim()))
            }
        }
        None => Simplex { gen: fresh[&f.gen], word: f.word },
    }
}

/// The colimit of a finite chain of monomorphisms `X0 ↪ X1 ↪ ... ↪ Xk`,
/// which is `Xk`; `legs[j]` is the composite `Xj -> Xk`.
pub fn seq_composite(chain: &[SimplicialMap]) -> Result<Colimit> {
    let last = chain.last().ok_or_else(|| Error::Mismatch("empty chain".into()))?;
    for (k, m) in chain.iter().enumerate() {
        if !m.is_mono() {
            return Err(Error::NotMono(format!("link {k} of the chain")));
        }
        if k > 0 && **chain[k - 1].target() != **m.source() {
            return Err(Error::Mismatch(format!("links {} and {k} do not compose", k - 1)));
        }
    }
    let top = last.target().clone();
    let mut legs = vec![SimplicialMap::identity(top.clone())];
    for m in chain.iter().rev() {
        let next = m.then(legs.last().expect("nonempty"))?;
        legs.push(next);
    }
    legs.reverse();
    Ok(Colimit { sset: top, legs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::iso::is_isomorphic;
    use crate::simplicial::standard::{boundary, std_simplex};

    fn to_point(x: Arc<SimplicialSet>) -> SimplicialMap {
        let pt = Arc::new(std_simplex(0));
        let images = (0..x.dim().map_or(0, |d| d + 1))
            .map(|n| {
                x.gen_ids(n)
                    .map(|_| {
                        let w = crate::degeneracy::DegeneracyWord::from_surjection(&vec![0; n + 1]);
                        Simplex { gen: GenId::new(0, 0), word: w }
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(x, pt, images).unwrap()
    }

    #[test]
    fn circle_from_collapsed_endpoints() {
        let (b, incl) = boundary(1).unwrap();
        let p = pushout(&incl, &to_point(Arc::new(b))).unwrap();
        assert_eq!(p.sset.counts(), vec![1, 1]);
        p.sset.validate().unwrap();
        assert!(p.legs[1].is_mono());
    }

    #[test]
    fn two_points_make_a_boundary() {
        let pt = Arc::new(std_simplex(0));
        let c = coproduct(&[pt.clone(), pt]).unwrap();
        assert!(is_isomorphic(&c.sset, &boundary(1).unwrap().0));
    }

    #[test]
    fn wedge_of_edges() {
        let d1 = Arc::new(std_simplex(1));
        let pt = Arc::new(std_simplex(0));
        let at = |v: usize| {
            SimplicialMap::new(pt.clone(), d1.clone(), vec![vec![d1.vertex(v)]]).unwrap()
        };
        let p = pushout(&at(1), &at(0)).unwrap();
        assert_eq!(p.sset.counts(), vec![3, 2]);
        assert!(p.legs.iter().all(SimplicialMap::is_mono));
    }

    #[test]
    fn rejects_non_mono() {
        let (b, _) = boundary(1).unwrap();
        let b = Arc::new(b);
        let collapse = to_point(b.clone());
        assert!(matches!(pushout(&collapse, &collapse), Err(Error::NotMono(_))));
    }
}
