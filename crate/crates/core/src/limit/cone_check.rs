//! The object of cones over a glued diagram as a strict limit of the cone
//! objects over the pieces.

use std::sync::Arc;

use crate::cert::Verdict;
use crate::comma::{cones_over, ConeObject};
use crate::error::{Error, Result};
use crate::simplicial::colimits::Colimit;
use crate::simplicial::iso::is_isomorphic;
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::product::pullback;
use crate::simplicial::sset::SimplicialSet;

/// How `X` is glued from pieces.
pub enum Presentation {
    /// `X = Y ⊔ Z` with its two injections.
    Coproduct(Colimit),
    /// `X = Y ⊔_W Z`: the pushout with legs `Y -> X`, `Z -> X` and the
    /// spans `W -> Y`, `W -> Z`.
    Pushout { glue: Colimit, w_y: SimplicialMap, w_z: SimplicialMap },
    /// `X` the colimit of a chain of monomorphisms `X0 ↪ … ↪ Xk`.
    Composite { chain: Vec<SimplicialMap> },
}

pub struct ConeLimitCheck {
    pub verdict: Verdict,
    /// `Δ↓d` computed directly.
    pub direct: Arc<SimplicialSet>,
    /// The strict limit of the restricted cone objects.
    pub limit: Arc<SimplicialSet>,
    /// The induced comparison `Δ↓d -> limit`; an isomorphism on success.
    pub comparison: SimplicialMap,
}

fn cones(a: &Arc<SimplicialSet>, d: &SimplicialMap, max_dim: usize) -> Result<ConeObject> {
    cones_over(a.clone(), d.source().clone(), d, max_dim)
}

/// Compares `Δ↓d` with the strict limit of the cone objects over the
/// pieces of the presentation, joined along restriction maps.
pub fn cone_limit_check(a: &Arc<SimplicialSet>, presentation: &Presentation, d: &SimplicialMap, max_dim: usize) -> Result<ConeLimitCheck> {
    let whole = cones(a, d, max_dim)?;
    let (limit, comparison) = match presentation {
        Presentation::Coproduct(glue) => {
            if glue.legs.len() != 2 {
                return Err(Error::Mismatch("a coproduct presentation has two summands".into()));
            }
            let empty = Arc::new(SimplicialSet::empty());
            let w_y = SimplicialMap::new(empty.clone(), glue.legs[0].source().clone(), vec![])?;
            let w_z = SimplicialMap::new(empty, glue.legs[1].source().clone(), vec![])?;
            glued(a, &whole, glue, &w_y, &w_z, d, max_dim)?
        }
        Presentation::Pushout { glue, w_y, w_z } => glued(a, &whole, glue, w_y, w_z, d, max_dim)?,
        Presentation::Composite { chain } => tower(a, &whole, chain, d, max_dim)?,
    };
    let exact = comparison.is_iso() && is_isomorphic(whole.sset(), &limit);
    let truncated = whole.sset().truncation().is_some() || limit.truncation().is_some();
    let verdict = match (exact, truncated) {
        (true, false) => Verdict::Yes,
        (true, true) => Verdict::Inconclusive,
        (false, _) => Verdict::No,
    };
    Ok(ConeLimitCheck { verdict, direct: whole.sset().clone(), limit, comparison })
}

fn glued(
    a: &Arc<SimplicialSet>,
    whole: &ConeObject,
    glue: &Colimit,
    w_y: &SimplicialMap,
    w_z: &SimplicialMap,
    d: &SimplicialMap,
    max_dim: usize,
) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    if *glue.sset != **d.source() || glue.legs.len() != 2 {
        return Err(Error::Mismatch("the diagram is not over the glued shape".into()));
    }
    let (jy, jz) = (&glue.legs[0], &glue.legs[1]);
    let (dy, dz) = (jy.then(d)?, jz.then(d)?);
    let dw = w_y.then(&dy)?;
    if !w_z.then(&dz)?.same_as(&dw) {
        return Err(Error::NonCommuting("the gluing square".into()));
    }
    let (cy, cz, cw) = (cones(a, &dy, max_dim)?, cones(a, &dz, max_dim)?, cones(a, &dw, max_dim)?);
    let ry = cy.restrict(w_y, &cw)?;
    let rz = cz.restrict(w_z, &cw)?;
    let p = pullback(&ry, &rz)?;
    let comparison = p.pairing(&whole.restrict(jy, &cy)?, &whole.restrict(jz, &cz)?)?;
    Ok((p.sset().clone(), comparison))
}

/// The limit of the tower of cone objects as iterated pullbacks
/// `L_{j+1} = C_{j+1} ×_{C_j} L_j`.
fn tower(
    a: &Arc<SimplicialSet>,
    whole: &ConeObject,
    chain: &[SimplicialMap],
    d: &SimplicialMap,
    max_dim: usize,
) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    let legs = crate::simplicial::colimits::seq_composite(chain)?.legs;
    if **legs[0].target() != **d.source() {
        return Err(Error::Mismatch("the diagram is not over the chain's colimit".into()));
    }
    let objs: Vec<ConeObject> = legs.iter().map(|j| cones(a, &j.then(d)?, max_dim)).collect::<Result<_>>()?;
    // limit so far, its projection to the last cone object, and the map from Δ↓d
    let mut lim = objs[0].sset().clone();
    let mut to_last = SimplicialMap::identity(lim.clone());
    let mut cmp = whole.restrict(&legs[0], &objs[0])?;
    for (k, link) in chain.iter().enumerate() {
        let r = objs[k + 1].restrict(link, &objs[k])?;
        let p = pullback(&r, &to_last)?;
        cmp = p.pairing(&whole.restrict(&legs[k + 1], &objs[k + 1])?, &cmp)?;
        lim = p.sset().clone();
        to_last = p.proj_left.clone();
    }
    Ok((lim, cmp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::category::FiniteCategory;
    use crate::limit::diagram::DiagramInCat;
    use crate::simplicial::colimits::{coproduct, pushout};
    use crate::simplicial::nerve::{nerve, Nerve};
    use crate::simplicial::standard::{std_map, std_simplex};

    /// a ≤ c, b ≤ c, and the nerve.
    fn vee() -> (FiniteCategory, Nerve) {
        let c = FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into()], |i, j| i == j || j == 2).unwrap();
        let n = nerve(Arc::new(c.clone()), None).unwrap();
        (c, n)
    }

    fn classify(c: &FiniteCategory, n: &Nerve, x: &Arc<SimplicialSet>, objects: Vec<usize>) -> SimplicialMap {
        let arrows = x
            .gen_ids(1)
            .map(|e| {
                let f = &x.generator(e).faces;
                c.hom(objects[f[1].gen.index()], objects[f[0].gen.index()])[0]
            })
            .collect();
        DiagramInCat::new(c, x.clone(), objects, arrows).unwrap().nerve_map(c, n).unwrap()
    }

    #[test]
    fn trivial_presentation_is_the_identity() {
        let (c, n) = vee();
        let pt = Arc::new(std_simplex(0));
        let d = classify(&c, &n, &pt, vec![2]);
        let chain = vec![SimplicialMap::identity(pt)];
        let r = cone_limit_check(n.sset(), &Presentation::Composite { chain }, &d, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        // cones over c are the objects below c
        assert_eq!(r.direct.counts(), vec![3, 2]);
    }

    #[test]
    fn coproducts() {
        let (c, n) = vee();
        let pt = Arc::new(std_simplex(0));
        for objects in [vec![0, 1], vec![0, 2], vec![2, 2]] {
            let glue = coproduct(&[pt.clone(), pt.clone()]).unwrap();
            let d = classify(&c, &n, &glue.sset.clone(), objects.clone());
            let r = cone_limit_check(n.sset(), &Presentation::Coproduct(glue), &d, 4).unwrap();
            assert_eq!(r.verdict, Verdict::Yes, "{objects:?}");
        }
    }

    #[test]
    fn wedge_of_intervals() {
        let (c, n) = vee();
        // Δ¹ ⊔_{Δ⁰} Δ¹ glued at the far ends: a -> c <- b
        let pt = std_map(0, 1, &[1]).unwrap();
        let glue = pushout(&pt, &pt).unwrap();
        let d = classify(&c, &n, &glue.sset.clone(), vec![0, 2, 1]);
        let r = cone_limit_check(n.sset(), &Presentation::Pushout { glue, w_y: pt.clone(), w_z: pt }, &d, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert!(r.direct.is_empty());
    }

    #[test]
    fn filtration_as_a_composite() {
        let (c, n) = vee();
        let x = Arc::new(std_simplex(1));
        let d = classify(&c, &n, &x, vec![0, 2]);
        let (skel, incl) = crate::simplicial::skeleton::skeleton(&x, 0).unwrap();
        let _ = skel;
        let r = cone_limit_check(n.sset(), &Presentation::Composite { chain: vec![incl] }, &d, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.direct.counts()[0], 1);
    }
}
