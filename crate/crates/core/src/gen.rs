//! Seeded random instances: lattices, semilattices, posets, small
//! simplicial sets, monotone diagrams, gluing presentations and group
//! diagrams.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limit::category::{FiniteCategory, Functor};
use crate::limit::diagram::DiagramInCat;
use crate::simplicial::colimits::{pushout, Colimit};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet, SsetBuilder};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Names sets of atoms `{0, 2}` as `"02"` and the empty set as `"_"`.
fn set_name(s: u32) -> String {
    if s == 0 {
        return "_".into();
    }
    (0..32).filter(|i| s >> i & 1 == 1).map(|i| char::from_digit(i, 36).expect("small")).collect()
}

/// The poset of a family of sets under inclusion, ordered by size then
/// value.
fn inclusion_poset(family: &BTreeSet<u32>) -> FiniteCategory {
    let mut sets: Vec<u32> = family.iter().copied().collect();
    sets.sort_by_key(|&s| (s.count_ones(), s));
    FiniteCategory::poset(sets.iter().map(|&s| set_name(s)).collect(), |i, j| sets[i] & !sets[j] == 0)
        .expect("inclusion is a partial order")
}

/// Grows a family closed under `op` from random subsets of `atoms` until it
/// has `size` members or no addition fits.
fn closed_family(rng: &mut impl Rng, size: usize, atoms: u32, start: BTreeSet<u32>, op: fn(u32, u32) -> u32) -> BTreeSet<u32> {
    let mut family = start;
    let full = (1u32 << atoms) - 1;
    for _ in 0..400 {
        if family.len() >= size {
            break;
        }
        let s = rng.gen_range(0..=full);
        let mut next = family.clone();
        let mut frontier = vec![s];
        while let Some(t) = frontier.pop() {
            if next.insert(t) {
                frontier.extend(next.iter().map(|&u| op(t, u)).filter(|u| !next.contains(u)).collect::<Vec<_>>());
            }
        }
        if next.len() <= size {
            family = next;
        }
    }
    family
}

fn atoms_for(size: usize) -> u32 {
    (usize::BITS - size.max(2).leading_zeros()).clamp(2, 6) + 1
}

/// A finite lattice with at most `size` elements: an intersection-closed
/// family of sets containing the full set, ordered by inclusion.
pub fn lattice(rng: &mut impl Rng, size: usize) -> FiniteCategory {
    let atoms = atoms_for(size);
    let start = BTreeSet::from([(1u32 << atoms) - 1]);
    inclusion_poset(&closed_family(rng, size.max(1), atoms, start, |a, b| a & b))
}

/// A finite join-semilattice with at most `size` elements: a union-closed
/// family of non-empty sets. It need not have a least element.
pub fn join_semilattice(rng: &mut impl Rng, size: usize) -> FiniteCategory {
    let atoms = atoms_for(size);
    let mut start = BTreeSet::new();
    start.insert(1u32 << rng.gen_range(0..atoms));
    let family = closed_family(rng, size.max(1), atoms, start, |a, b| a | b);
    inclusion_poset(&family.into_iter().filter(|&s| s != 0).collect())
}

/// A random poset on `size` elements: a random order-compatible relation,
/// transitively closed.
pub fn poset(rng: &mut impl Rng, size: usize, density: f64) -> FiniteCategory {
    let mut leq = vec![vec![false; size]; size];
    for i in 0..size {
        leq[i][i] = true;
        for j in i + 1..size {
            leq[i][j] = rng.gen_bool(density);
        }
    }
    for k in 0..size {
        for i in 0..size {
            for j in 0..size {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    FiniteCategory::poset((0..size).map(|i| format!("p{i}")).collect(), |i, j| leq[i][j]).expect("closed order")
}

/// An ordered simplicial complex: simplices as sorted vertex lists, closed
/// under faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    pub simplices: BTreeSet<Vec<usize>>,
}

impl Complex {
    pub fn add(&mut self, s: &[usize]) {
        if s.is_empty() || !self.simplices.insert(s.to_vec()) {
            return;
        }
        if s.len() > 1 {
            for i in 0..s.len() {
                let mut f = s.to_vec();
                f.remove(i);
                self.add(&f);
            }
        }
    }

    pub fn union(&self, other: &Complex) -> Complex {
        Complex { simplices: self.simplices.union(&other.simplices).cloned().collect() }
    }

    pub fn intersection(&self, other: &Complex) -> Complex {
        Complex { simplices: self.simplices.intersection(&other.simplices).cloned().collect() }
    }

    /// The simplicial set with one generator per simplex, named by its
    /// vertices.
    pub fn sset(&self) -> (Arc<SimplicialSet>, HashMap<Vec<usize>, GenId>) {
        let mut b = SsetBuilder::new();
        let mut ids = HashMap::new();
        let mut by_dim: Vec<&Vec<usize>> = self.simplices.iter().collect();
        by_dim.sort_by_key(|s| (s.len(), (*s).clone()));
        for s in by_dim {
            let n = s.len() - 1;
            let faces = if n == 0 {
                vec![]
            } else {
                (0..=n)
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        Simplex::nondegenerate(ids[&f])
                    })
                    .collect()
            };
            let name = s.iter().map(|v| format!("v{v}")).collect::<Vec<_>>().join("");
            ids.insert(s.clone(), b.push(n, name, faces).expect("faces precede"));
        }
        (Arc::new(b.finish().expect("a complex is a simplicial set")), ids)
    }

    /// The inclusion of `self` into `sup`, built on their simplicial sets.
    pub fn inclusion(&self, sup: &Complex) -> Result<SimplicialMap> {
        let (a, ia) = self.sset();
        let (b, ib) = sup.sset();
        let mut images: Vec<Vec<Simplex>> = vec![Vec::new(); a.counts().len()];
        let mut inv: Vec<(&Vec<usize>, &GenId)> = ia.iter().collect();
        inv.sort_by_key(|(_, g)| (g.dim(), g.index()));
        for (s, g) in inv {
            let t = ib.get(s).ok_or_else(|| Error::Mismatch("not a subcomplex".into()))?;
            images[g.dim()].push(Simplex::nondegenerate(*t));
        }
        SimplicialMap::new(a, b, images)
    }
}

/// A random complex on `vertices` vertices with simplices of dimension at
/// most `max_dim` and at most `max_cells` simplices in total.
pub fn complex(rng: &mut impl Rng, vertices: usize, max_dim: usize, max_cells: usize) -> Complex {
    let mut c = Complex::default();
    for v in 0..vertices.min(max_cells) {
        c.add(&[v]);
    }
    for _ in 0..4 * max_cells {
        let k = rng.gen_range(2..=(max_dim + 1).min(vertices.max(1)).max(2));
        if k > vertices {
            break;
        }
        let mut vs: Vec<usize> = (0..vertices).collect();
        vs.shuffle(rng);
        let mut s = vs[..k].to_vec();
        s.sort_unstable();
        let mut next = c.clone();
        next.add(&s);
        if next.simplices.len() <= max_cells {
            c = next;
        }
    }
    c
}

/// A random simplicial set of dimension at most `max_dim` with at most
/// `max_cells` non-degenerate simplices: a random complex, sometimes with
/// a loop, a parallel edge, or a 2-simplex with a degenerate face added.
pub fn sset(rng: &mut impl Rng, max_dim: usize, max_cells: usize) -> SimplicialSet {
    let vertices = rng.gen_range(1..=max_cells.clamp(1, 6));
    let budget = max_cells.saturating_sub(2).max(vertices);
    let (base, _) = complex(rng, vertices, max_dim, budget).sset();
    let mut b = SsetBuilder::new();
    for g in base.all_gen_ids() {
        let gen = base.generator(g);
        b.push(g.dim(), gen.id.clone(), gen.faces.clone()).expect("copy");
    }
    let mut cells = base.num_generators();
    let nv = base.counts()[0];
    if cells < max_cells && max_dim >= 1 && rng.gen_bool(0.3) {
        let v = Simplex::nondegenerate(GenId::new(0, rng.gen_range(0..nv)));
        b.push(1, "loop".into(), vec![v, v]).expect("loop");
        cells += 1;
    }
    let edges: Vec<GenId> = b.current().gen_ids(1).collect();
    if cells + 2 <= max_cells && max_dim >= 2 && !edges.is_empty() && rng.gen_bool(0.3) {
        let e = *edges.choose(rng).expect("nonempty");
        let faces = b.current().generator(e).faces.clone();
        let twin = b.push(1, "twin".into(), faces.clone()).expect("parallel edge");
        let src = faces[1];
        let deg = b.current().degeneracy(src, 0);
        b.push(2, "pinch".into(), vec![Simplex::nondegenerate(e), Simplex::nondegenerate(twin), deg]).expect("pinched triangle");
    }
    b.finish().expect("valid by construction")
}

/// A random diagram in a thin category `c` sending every edge `u -> v` of
/// `x` to `d(u) ≤ d(v)`, found by backtracking over vertices with values
/// tried in random order. A constant diagram always exists.
pub fn monotone_diagram(rng: &mut impl Rng, c: &FiniteCategory, x: Arc<SimplicialSet>) -> Result<DiagramInCat> {
    if !c.is_thin() {
        return Err(Error::InvalidCategory("monotone diagrams need a poset".into()));
    }
    let n = c.num_objects();
    let edges: Vec<(usize, usize)> = x
        .gen_ids(1)
        .map(|e| {
            let f = &x.generator(e).faces;
            (f[1].gen.index(), f[0].gen.index())
        })
        .collect();
    let orders: Vec<Vec<usize>> = x
        .gen_ids(0)
        .map(|_| {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(rng);
            o
        })
        .collect();
    fn go(c: &FiniteCategory, edges: &[(usize, usize)], orders: &[Vec<usize>], values: &mut Vec<usize>) -> bool {
        let v = values.len();
        if v == orders.len() {
            return true;
        }
        for &a in &orders[v] {
            values.push(a);
            let ok = edges.iter().all(|&(s, t)| s.max(t) != v || c.leq(values[s], values[t]));
            if ok && go(c, edges, orders, values) {
                return true;
            }
            values.pop();
        }
        false
    }
    let mut values = Vec::new();
    if !go(c, &edges, &orders, &mut values) {
        return Err(Error::InvalidDiagram("no monotone assignment".into()));
    }
    let arrows = edges.iter().map(|&(u, v)| c.hom(values[u], values[v])[0]).collect();
    DiagramInCat::new(c, x, values, arrows)
}

/// `X = Y ∪ Z` for random subcomplexes covering a random complex, as the
/// pushout of `W = Y ∩ Z ↪ Y` along `W ↪ Z`. Returns the pushout and
/// the two inclusions of `W`.
pub fn pushout_presentation(rng: &mut impl Rng, vertices: usize, max_dim: usize, max_cells: usize) -> Result<(Colimit, SimplicialMap, SimplicialMap)> {
    let whole = complex(rng, vertices, max_dim, max_cells);
    let mut y = Complex::default();
    let mut z = Complex::default();
    let maximal: Vec<&Vec<usize>> = whole
        .simplices
        .iter()
        .filter(|s| !whole.simplices.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v))))
        .collect();
    for s in maximal {
        match rng.gen_range(0..3) {
            0 => y.add(s),
            1 => z.add(s),
            _ => {
                y.add(s);
                z.add(s);
            }
        }
    }
    if y.simplices.is_empty() {
        y.add(&[0]);
        z.add(&[0]);
    }
    let w = y.intersection(&z);
    let (wy, wz) = (w.inclusion(&y)?, w.inclusion(&z)?);
    Ok((pushout(&wy, &wz)?, wy, wz))
}

/// A pullback of cyclic groups `K -> G <- H` with `H -> G` reduction mod
/// `|G|`: `(G, H, K, k -> G multiplier)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCospan {
    pub g: usize,
    pub h: usize,
    pub k: usize,
    /// `K -> G` sends `x` to `x · mult mod |G|`.
    pub mult: usize,
}

impl GroupCospan {
    pub fn categories(&self) -> (FiniteCategory, FiniteCategory, FiniteCategory) {
        (FiniteCategory::cyclic_group(self.k), FiniteCategory::cyclic_group(self.h), FiniteCategory::cyclic_group(self.g))
    }

    /// The functors `K -> G` and `H -> G`.
    pub fn functors(&self) -> Result<(Functor, Functor)> {
        let (k, h, g) = self.categories();
        let f = Functor::group_hom(&k, &g, (0..self.k).map(|x| x * self.mult % self.g).collect())?;
        let p = Functor::group_hom(&h, &g, (0..self.h).map(|x| x % self.g).collect())?;
        Ok((f, p))
    }
}

/// Cyclic groups with `|G| ≤ max_g`, `H` a multiple of `G` of order at most
/// `max_h`, and `K` of order at most `max_k` with a homomorphism into `G`.
pub fn group_cospan(rng: &mut impl Rng, max_g: usize, max_h: usize, max_k: usize) -> GroupCospan {
    let g = rng.gen_range(1..=max_g);
    let hs: Vec<usize> = (1..=max_h / g).map(|m| m * g).collect();
    let h = *hs.choose(rng).unwrap_or(&g);
    let k = rng.gen_range(1..=max_k);
    // x ↦ x·mult is a homomorphism Z/k -> Z/g iff g divides k·mult
    let mults: Vec<usize> = (0..g).filter(|m| k * m % g == 0).collect();
    let mult = *mults.choose(rng).expect("0 always works");
    GroupCospan { g, h, k, mult }
}

/// Orders of a tower of cyclic groups `Z/n_m -> … -> Z/n_0` of reductions,
/// each order dividing the next.
pub fn group_tower(rng: &mut impl Rng, length: usize, max_order: usize) -> Vec<usize> {
    let mut orders = vec![rng.gen_range(1..=max_order.min(2))];
    for _ in 0..length {
        let last = *orders.last().expect("nonempty");
        let choices: Vec<usize> = (1..=max_order / last).map(|m| m * last).collect();
        orders.push(*choices.choose(rng).unwrap_or(&last));
    }
    orders
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattices_have_all_meets_and_joins() {
        for seed in 0..20 {
            let c = lattice(&mut rng(seed), 8);
            assert!(c.num_objects() <= 8);
            let n = c.num_objects();
            for a in 0..n {
                for b in 0..n {
                    let lower: Vec<usize> = (0..n).filter(|&m| c.leq(m, a) && c.leq(m, b)).collect();
                    assert!(lower.iter().any(|&m| lower.iter().all(|&l| c.leq(l, m))));
                    let upper: Vec<usize> = (0..n).filter(|&m| c.leq(a, m) && c.leq(b, m)).collect();
                    assert!(upper.iter().any(|&m| upper.iter().all(|&u| c.leq(m, u))));
                }
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(lattice(&mut rng(7), 8), lattice(&mut rng(7), 8));
        assert_eq!(lattice(&mut rng(7), 8).num_objects(), 8);
        assert_eq!(sset(&mut rng(3), 3, 12), sset(&mut rng(3), 3, 12));
    }

    #[test]
    fn random_ssets_respect_bounds() {
        for seed in 0..50 {
            let x = sset(&mut rng(seed), 3, 12);
            assert!(x.num_generators() <= 12, "{:?}", x.counts());
            assert!(x.counts().len() <= 4);
        }
    }

    #[test]
    fn monotone_diagrams_are_valid() {
        for seed in 0..20 {
            let mut r = rng(seed);
            let c = lattice(&mut r, 10);
            let x = Arc::new(sset(&mut r, 3, 12));
            monotone_diagram(&mut r, &c, x.clone()).unwrap();
            let p = poset(&mut r, 5, 0.4);
            monotone_diagram(&mut r, &p, x).unwrap();
        }
    }

    #[test]
    fn pushout_presentations_glue_back() {
        for seed in 0..10 {
            let (glue, wy, _) = pushout_presentation(&mut rng(seed), 5, 2, 14).unwrap();
            assert!(wy.is_mono());
            glue.sset.validate().unwrap();
        }
    }

    #[test]
    fn group_data_are_homomorphisms() {
        for seed in 0..20 {
            let gc = group_cospan(&mut rng(seed), 3, 6, 3);
            gc.functors().unwrap();
            let t = group_tower(&mut rng(seed), 2, 4);
            assert!(t.windows(2).all(|w| w[1] % w[0] == 0));
        }
    }
}
