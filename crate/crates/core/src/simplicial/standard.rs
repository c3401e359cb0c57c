//! Standard simplices, their boundaries and horns.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet, SsetBuilder};
use crate::degeneracy::DegeneracyWord;

/// Generator id of the face of Δⁿ spanned by `vertices`.
pub fn face_id(vertices: &[usize], n: usize) -> String {
    let parts: Vec<String> = vertices.iter().map(usize::to_string).collect();
    if n < 10 {
        parts.concat()
    } else {
        parts.join(",")
    }
}

fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..(1u64 << (n + 1)))
        .map(|bits| (0..=n).filter(|&i| bits & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// The sub-simplicial set of Δⁿ on the faces accepted by `keep`, which
/// must be closed under taking faces.
fn sub_simplex(n: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    let mut b = SsetBuilder::new();
    for s in subsets_by_size(n) {
        if !keep(&s) {
            continue;
        }
        let k = s.len() - 1;
        let faces = if k == 0 {
            vec![]
        } else {
            (0..=k)
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    Simplex::nondegenerate(b.lookup(&face_id(&f, n)).expect("faces come first"))
                })
                .collect()
        };
        b.push_unchecked(k, face_id(&s, n), faces);
    }
    b.finish_unchecked()
}

/// The standard `n`-simplex.
pub fn std_simplex(n: usize) -> SimplicialSet {
    sub_simplex(n, |_| true).mark_nerve()
}

/// ∂Δⁿ with its inclusion into Δⁿ.
pub fn boundary(n: usize) -> Result<(SimplicialSet, SimplicialMap)> {
    if n == 0 {
        return Err(Error::OutOfRange("boundary requires n >= 1".into()));
    }
    let sub = sub_simplex(n, |s| s.len() <= n);
    let incl = inclusion_into_simplex(sub.clone(), n)?;
    Ok((sub, incl))
}

/// The horn Λ^{n,k} with its inclusion into Δⁿ.
pub fn horn(n: usize, k: usize) -> Result<(SimplicialSet, SimplicialMap)> {
    if n == 0 || k > n {
        return Err(Error::OutOfRange(format!("horn({n}, {k}) needs 0 <= k <= n, n >= 1")));
    }
    let sub = sub_simplex(n, |s| s.len() <= n && !(s.len() == n && !s.contains(&k)));
    let incl = inclusion_into_simplex(sub.clone(), n)?;
    Ok((sub, incl))
}

fn inclusion_into_simplex(sub: SimplicialSet, n: usize) -> Result<SimplicialMap> {
    let delta = Arc::new(std_simplex(n));
    let images = (0..sub.dim().map_or(0, |d| d + 1))
        .map(|d| {
            sub.generators(d)
                .iter()
                .map(|g| Simplex::nondegenerate(delta.lookup(&g.id).expect("sub-face")))
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(Arc::new(sub), delta, images)
}

/// The simplex of Δⁿ given by a monotone vertex list `[k] -> [n]`.
pub fn simplex_from_vertices(delta: &SimplicialSet, n: usize, vertices: &[usize]) -> Simplex {
    let mut image: Vec<usize> = vertices.to_vec();
    image.dedup();
    let gen = delta.lookup(&face_id(&image, n)).expect("face of the standard simplex");
    let mut surj = Vec::with_capacity(vertices.len());
    let mut pos = 0;
    for (j, &v) in vertices.iter().enumerate() {
        if j > 0 && v != vertices[j - 1] {
            pos += 1;
        }
        surj.push(pos);
    }
    Simplex { gen, word: DegeneracyWord::from_surjection(&surj) }
}

/// The vertex list of a simplex of Δⁿ.
pub fn vertices_of(delta: &SimplicialSet, s: Simplex) -> Vec<usize> {
    delta
        .vertices_of(s)
        .into_iter()
        .map(|v| v.gen.index())
        .collect()
}

/// The map Δᵐ → Δⁿ induced by a monotone `θ : [m] -> [n]`.
pub fn std_map(m: usize, n: usize, theta: &[usize]) -> Result<SimplicialMap> {
    if theta.len() != m + 1 || theta.iter().any(|&t| t > n) || !crate::degeneracy::is_monotone(theta) {
        return Err(Error::OutOfRange(format!("{theta:?} is not a monotone map [{m}] -> [{n}]")));
    }
    let src = Arc::new(std_simplex(m));
    let tgt = Arc::new(std_simplex(n));
    let images = (0..=m)
        .map(|d| {
            src.gen_ids(d)
                .map(|g| {
                    let vs = vertices_of(&src, Simplex::nondegenerate(g));
                    let img: Vec<usize> = vs.iter().map(|&v| theta[v]).collect();
                    simplex_from_vertices(&tgt, n, &img)
                })
                .collect()
        })
        .collect();
    SimplicialMap::new_unchecked(src, tgt, images)
}

/// The generator of Δⁿ for the top cell.
pub fn top_cell(n: usize) -> GenId {
    GenId::new(n, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        assert_eq!(std_simplex(0).counts(), vec![1]);
        assert_eq!(std_simplex(2).counts(), vec![3, 3, 1]);
        assert_eq!(std_simplex(3).counts(), vec![4, 6, 4, 1]);
        std_simplex(4).validate().unwrap();
    }

    #[test]
    fn boundary_and_horn_counts() {
        assert_eq!(boundary(2).unwrap().0.counts(), vec![3, 3]);
        assert_eq!(horn(2, 1).unwrap().0.counts(), vec![3, 2]);
        let (h, incl) = horn(2, 2).unwrap();
        // Λ^{2,2}: edges 02 and 12 meeting at 2, the cospan shape.
        let ids: Vec<_> = h.generators(1).iter().map(|g| g.id.as_str()).collect();
        assert_eq!(ids, vec!["02", "12"]);
        assert!(incl.is_mono());
        assert!(horn(2, 3).is_err());
        assert!(boundary(0).is_err());
    }

    #[test]
    fn vertices_round_trip() {
        let d = std_simplex(3);
        let s = simplex_from_vertices(&d, 3, &[0, 0, 2, 3]);
        assert_eq!(s.dim(), 3);
        assert_eq!(vertices_of(&d, s), vec![0, 0, 2, 3]);
        let m = std_map(1, 2, &[0, 2]).unwrap();
        assert_eq!(m.target().id_of(m.image(GenId::new(1, 0)).gen), "02");
    }
}
