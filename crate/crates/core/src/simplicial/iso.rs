//! Isomorphism testing by backtracking over generator bijections.

use std::collections::HashMap;
use std::sync::Arc;

use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};

/// Per-generator invariant: for each higher dimension and face position,
/// how many generators use it there.
fn profile(x: &SimplicialSet) -> Vec<Vec<Vec<usize>>> {
    let levels = x.dim().map_or(0, |d| d + 1);
    let width = levels + 1;
    let mut out: Vec<Vec<Vec<usize>>> = (0..levels)
        .map(|n| vec![vec![0; width * width]; x.generators(n).len()])
        .collect();
    for g in x.all_gen_ids() {
        for (i, f) in x.generator(g).faces.iter().enumerate() {
            if !f.is_degenerate() {
                out[f.gen.dim()][f.gen.index()][g.dim() * width + i] += 1;
            }
        }
    }
    out
}

struct Search<'a> {
    x: &'a SimplicialSet,
    y: &'a SimplicialSet,
    px: Vec<Vec<Vec<usize>>>,
    py: Vec<Vec<Vec<usize>>>,
    order: Vec<GenId>,
    fwd: HashMap<GenId, GenId>,
    used: Vec<Vec<bool>>,
}

impl Search<'_> {
    fn mapped(&self, f: Simplex) -> Simplex {
        Simplex { gen: self.fwd[&f.gen], word: f.word }
    }

    fn run(&mut self, k: usize) -> bool {
        let Some(&g) = self.order.get(k) else { return true };
        let n = g.dim();
        let want: Vec<Simplex> = self.x.generator(g).faces.iter().map(|&f| self.mapped(f)).collect();
        for h in self.y.gen_ids(n) {
            if self.used[n][h.index()]
                || self.y.generator(h).faces != want
                || self.px[n][g.index()] != self.py[n][h.index()]
            {
                continue;
            }
            self.used[n][h.index()] = true;
            self.fwd.insert(g, h);
            if self.run(k + 1) {
                return true;
            }
            self.fwd.remove(&g);
            self.used[n][h.index()] = false;
        }
        false
    }
}

/// An isomorphism `x -> y`, if one exists. Truncation markers are ignored.
pub fn find_isomorphism(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Option<SimplicialMap> {
    if x.counts() != y.counts() {
        return None;
    }
    let mut s = Search {
        x,
        y,
        px: profile(x),
        py: profile(y),
        order: x.all_gen_ids(),
        fwd: HashMap::new(),
        used: x.counts().iter().map(|&c| vec![false; c]).collect(),
    };
    if !s.run(0) {
        return None;
    }
    let images = (0..x.counts().len())
        .map(|n| x.gen_ids(n).map(|g| Simplex::nondegenerate(s.fwd[&g])).collect())
        .collect();
    SimplicialMap::new(x.clone(), y.clone(), images).ok()
}

pub fn is_isomorphic(x: &SimplicialSet, y: &SimplicialSet) -> bool {
    find_isomorphism(&Arc::new(x.clone()), &Arc::new(y.clone())).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, horn, std_simplex};

    #[test]
    fn horns_are_distinguished() {
        let (h0, _) = horn(2, 0).unwrap();
        let (h1, _) = horn(2, 1).unwrap();
        let (h2, _) = horn(2, 2).unwrap();
        // all three are paths of two edges but with different orientation
        assert!(!is_isomorphic(&h0, &h1));
        assert!(!is_isomorphic(&h1, &h2));
        assert!(is_isomorphic(&h0, &h2.opposite()));
        assert!(is_isomorphic(&h1, &h1.opposite()));
    }

    #[test]
    fn simplex_self_iso() {
        let d = std_simplex(3);
        assert!(is_isomorphic(&d, &d));
        let (b, _) = boundary(3).unwrap();
        assert!(!is_isomorphic(&d, &b));
    }
}
