//! Backtracking search for simplicial maps `S -> T` extending fixed data
//! and lying over prescribed maps.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::degeneracy::MAX_DIM;
use crate::error::{Error, Result};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};

/// Simplices of a target grouped by their boundary, built lazily per
/// dimension.
pub struct SimplexIndex {
    target: Arc<SimplicialSet>,
    levels: Vec<OnceLock<HashMap<Vec<Simplex>, Vec<Simplex>>>>,
}

impl SimplexIndex {
    pub fn new(target: Arc<SimplicialSet>) -> Self {
        SimplexIndex { target, levels: (0..=MAX_DIM).map(|_| OnceLock::new()).collect() }
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    /// Simplices of dimension `n >= 1` with the given faces.
    pub fn with_boundary(&self, n: usize, faces: &[Simplex]) -> Result<&[Simplex]> {
        self.check_dim(n)?;
        let level = self.levels[n].get_or_init(|| {
            let mut m: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
            for s in self.target.simplices(n) {
                m.entry(self.target.boundary(s)).or_default().push(s);
            }
            m
        });
        Ok(level.get(faces).map(Vec::as_slice).unwrap_or(&[]))
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        match self.target.truncation() {
            Some(b) if n > b => Err(Error::BoundExceeded(format!(
                "{n}-simplices requested from a set known only up to dimension {b}"
            ))),
            _ => Ok(()),
        }
    }
}

/// A constraint `p ∘ f = e`, with `e` given by its image of every source
/// generator.
pub struct Over<'a> {
    pub map: &'a SimplicialMap,
    pub images: Vec<Vec<Simplex>>,
}

impl<'a> Over<'a> {
    pub fn new(map: &'a SimplicialMap, expected: &SimplicialMap) -> Self {
        Over { map, images: expected.images().to_vec() }
    }
}

pub type Images = Vec<Vec<Simplex>>;

pub struct Extension<'a> {
    source: Arc<SimplicialSet>,
    index: &'a SimplexIndex,
    fixed: Vec<Vec<Option<Simplex>>>,
    over: Vec<Over<'a>>,
}

struct State<'s, 'a> {
    ext: &'s Extension<'a>,
    order: Vec<GenId>,
    assigned: Images,
    vertex_pool: Vec<Simplex>,
}

impl<'a> Extension<'a> {
    pub fn new(source: Arc<SimplicialSet>, index: &'a SimplexIndex) -> Self {
        let fixed = source.counts().iter().map(|&c| vec![None; c]).collect();
        Extension { source, index, fixed, over: Vec::new() }
    }

    pub fn fix(&mut self, g: GenId, s: Simplex) -> &mut Self {
        self.fixed[g.dim()][g.index()] = Some(s);
        self
    }

    /// Fixes `f ∘ i = top` for a monomorphism `i : U -> S`.
    pub fn fix_along(&mut self, i: &SimplicialMap, top: &SimplicialMap) -> Result<&mut Self> {
        if !i.is_mono() {
            return Err(Error::NotMono("fixed data must be given along a monomorphism".into()));
        }
        for g in i.source().all_gen_ids() {
            self.fix(i.image(g).gen, top.image(g));
        }
        Ok(self)
    }

    pub fn over(&mut self, o: Over<'a>) -> &mut Self {
        self.over.push(o);
        self
    }

    fn order(&self) -> Vec<GenId> {
        let s = &self.source;
        let mut placed: Vec<Vec<bool>> = s.counts().iter().map(|&c| vec![false; c]).collect();
        let mut order = Vec::with_capacity(s.num_generators());
        let mut pending: Vec<GenId> = (1..s.counts().len()).flat_map(|n| s.gen_ids(n)).collect();
        let nv = s.generators(0).len();
        let mut adj = vec![Vec::new(); nv];
        for e in s.gen_ids(1) {
            let f = &s.generator(e).faces;
            adj[f[0].gen.index()].push(f[1].gen.index());
            adj[f[1].gen.index()].push(f[0].gen.index());
        }
        let mut seen = vec![false; nv];
        for root in 0..nv {
            if seen[root] {
                continue;
            }
            let mut queue = VecDeque::from([root]);
            seen[root] = true;
            while let Some(v) = queue.pop_front() {
                placed[0][v] = true;
                order.push(GenId::new(0, v));
                loop {
                    let before = pending.len();
                    pending.retain(|&g| {
                        let ready = s.generator(g).faces.iter().all(|f| placed[f.gen.dim()][f.gen.index()]);
                        if ready {
                            placed[g.dim()][g.index()] = true;
                            order.push(g);
                        }
                        !ready
                    });
                    if pending.len() == before {
                        break;
                    }
                }
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        debug_assert!(pending.is_empty());
        order
    }

    fn start(&self) -> Result<State<'_, 'a>> {
        if let Some(d) = self.source.dim() {
            self.index.check_dim(d)?;
        }
        let t = self.index.target();
        let vertex_pool: Vec<Simplex> = t.gen_ids(0).map(Simplex::nondegenerate).collect();
        let dummy = Simplex::nondegenerate(GenId::new(0, 0));
        let assigned = self.source.counts().iter().map(|&c| vec![dummy; c]).collect();
        Ok(State { ext: self, order: self.order(), assigned, vertex_pool })
    }

    /// Visits solutions until `visit` returns `false`. Returns the number
    /// of solutions visited.
    pub fn for_each(&self, mut visit: impl FnMut(&Images) -> bool) -> Result<usize> {
        let mut st = self.start()?;
        let mut count = 0;
        st.dfs(0, &mut |imgs| {
            count += 1;
            visit(imgs)
        })?;
        Ok(count)
    }

    pub fn first(&self) -> Result<Option<Images>> {
        let mut out = None;
        self.for_each(|imgs| {
            out = Some(imgs.clone());
            false
        })?;
        Ok(out)
    }

    pub fn all(&self) -> Result<Vec<Images>> {
        let mut out = Vec::new();
        self.for_each(|imgs| {
            out.push(imgs.clone());
            true
        })?;
        Ok(out)
    }

    /// Counts solutions, stopping once `cap` are found.
    pub fn count_up_to(&self, cap: usize) -> Result<usize> {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            n < cap
        })?;
        Ok(n)
    }
}

impl State<'_, '_> {
    fn image_of(&self, s: Simplex) -> Simplex {
        let img = self.assigned[s.gen.dim()][s.gen.index()];
        if s.word.is_empty() {
            img
        } else {
            self.ext.index.target().act(img, &s.word.surjection(s.dim()))
        }
    }

    fn admissible(&self, g: GenId, cand: Simplex) -> bool {
        self.ext.over.iter().all(|o| o.map.apply(cand) == o.images[g.dim()][g.index()])
    }

    // Returns false once the visitor asks to stop.
    fn dfs(&mut self, k: usize, visit: &mut dyn FnMut(&Images) -> bool) -> Result<bool> {
        let Some(&g) = self.order.get(k) else { return Ok(visit(&self.assigned)) };
        let n = g.dim();
        let candidates: Vec<Simplex> = if n == 0 {
            self.vertex_pool.clone()
        } else {
            let faces: Vec<Simplex> =
                self.ext.source.generator(g).faces.iter().map(|&f| self.image_of(f)).collect();
            self.ext.index.with_boundary(n, &faces)?.to_vec()
        };
        let fixed = self.ext.fixed[n][g.index()];
        for cand in candidates {
            if fixed.is_some_and(|f| f != cand) || !self.admissible(g, cand) {
                continue;
            }
            self.assigned[n][g.index()] = cand;
            if !self.dfs(k + 1, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Wraps solution images as a map.
pub fn to_map(source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>, images: Images) -> Result<SimplicialMap> {
    SimplicialMap::new_unchecked(source.clone(), target.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{horn, std_simplex};

    #[test]
    fn counts_maps_between_simplices() {
        // monotone maps [1] -> [2]: 6
        let s = Arc::new(std_simplex(1));
        let idx = SimplexIndex::new(Arc::new(std_simplex(2)));
        assert_eq!(Extension::new(s, &idx).all().unwrap().len(), 6);
        // monotone maps [2] -> [1]: 4
        let s = Arc::new(std_simplex(2));
        let idx = SimplexIndex::new(Arc::new(std_simplex(1)));
        assert_eq!(Extension::new(s, &idx).all().unwrap().len(), 4);
    }

    #[test]
    fn inner_horn_in_itself_has_no_filler() {
        let (h, inc) = horn(2, 1).unwrap();
        let h = Arc::new(h);
        let idx = SimplexIndex::new(h.clone());
        let mut ext = Extension::new(inc.target().clone(), &idx);
        ext.fix_along(&inc, &SimplicialMap::identity(h)).unwrap();
        assert!(ext.first().unwrap().is_none());
    }
}
