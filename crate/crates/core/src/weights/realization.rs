//! Hom-spaces of the homotopy coherent realization `𝔠[X]`.
//!
//! An `n`-simplex of `𝔠[X](a, b)` is a necklace of non-degenerate simplices
//! of `X` running from `a` to `b` together with a flag of vertex sets
//! `J = F⁰ ⊆ F¹ ⊆ … ⊆ Fⁿ = V` from the joins to all vertices. On a single
//! bead `Δᵏ` this is the cube of subsets of `{0..k}` containing both ends;
//! necklaces glue the cubes along the presentation of `X` by its
//! non-degenerate simplices.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::model::{materialize, CellModel, Materialized};
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};

/// A bead: a non-degenerate simplex of dimension at least one with its
/// flag of vertex masks, one per dimension of the necklace cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bead {
    pub gen: GenId,
    pub flag: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Necklace {
    pub n: usize,
    pub beads: Vec<Bead>,
}

impl Necklace {
    /// Composite `self` then `next`, both of dimension `n`.
    pub fn concat(&self, next: &Necklace) -> Necklace {
        debug_assert_eq!(self.n, next.n);
        let mut beads = self.beads.clone();
        beads.extend(next.beads.iter().cloned());
        Necklace { n: self.n, beads }
    }

    /// The degenerate `n`-simplex on the necklace of a single edge.
    pub fn edge(gen: GenId, n: usize) -> Necklace {
        debug_assert_eq!(gen.dim(), 1);
        Necklace { n, beads: vec![Bead { gen, flag: vec![0b11; n + 1] }] }
    }
}

pub struct RealizationModel {
    pub x: Arc<SimplicialSet>,
    pub from: usize,
    pub to: usize,
    necklaces: Vec<Vec<GenId>>,
}

fn vertex_list(x: &SimplicialSet, g: GenId) -> Vec<usize> {
    x.vertices_of(Simplex::nondegenerate(g)).iter().map(|v| v.gen.index()).collect()
}

/// All necklaces of non-degenerate simplices from `a` to `b`.
fn necklaces(x: &SimplicialSet, a: usize, b: usize) -> Result<Vec<Vec<GenId>>> {
    let nv = x.generators(0).len();
    let mut out_beads: Vec<Vec<(GenId, usize)>> = vec![Vec::new(); nv];
    for d in 1..x.counts().len() {
        for g in x.gen_ids(d) {
            let vs = vertex_list(x, g);
            out_beads[vs[0]].push((g, vs[d]));
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(
        at: usize,
        b: usize,
        cap: usize,
        out_beads: &[Vec<(GenId, usize)>],
        stack: &mut Vec<GenId>,
        out: &mut Vec<Vec<GenId>>,
    ) -> Result<()> {
        if at == b {
            out.push(stack.clone());
        }
        if stack.len() == cap {
            if !out_beads[at].is_empty() {
                return Err(Error::BoundExceeded("necklaces of unbounded length: the shape has a cycle".into()));
            }
            return Ok(());
        }
        for &(g, next) in &out_beads[at] {
            stack.push(g);
            go(next, b, cap, out_beads, stack, out)?;
            stack.pop();
        }
        Ok(())
    }
    go(a, b, nv, &out_beads, &mut stack, &mut out)?;
    Ok(out)
}

impl RealizationModel {
    pub fn new(x: Arc<SimplicialSet>, from: usize, to: usize) -> Result<Self> {
        let nv = x.generators(0).len();
        if from >= nv || to >= nv {
            return Err(Error::OutOfRange(format!("vertices {from}, {to} of a set with {nv} vertices")));
        }
        let necklaces = necklaces(&x, from, to)?;
        Ok(RealizationModel { x, from, to, necklaces })
    }

    /// Largest number of non-join vertices over all necklaces.
    pub fn max_dim(&self) -> usize {
        self.necklaces.iter().map(|t| t.iter().map(|g| g.dim() - 1).sum()).max().unwrap_or(0)
    }

    fn restrict_bead(&self, gen: GenId, flag: &[u32], out: &mut Vec<Bead>) {
        let k = gen.dim();
        let (bottom, top) = (flag[0], flag[flag.len() - 1]);
        let keep: Vec<usize> = (0..=k).filter(|&i| top >> i & 1 == 1).collect();
        let splits: Vec<usize> = (0..=k).filter(|&i| bottom >> i & 1 == 1).collect();
        for w in splits.windows(2) {
            let sub: Vec<usize> = keep.iter().copied().filter(|&i| i >= w[0] && i <= w[1]).collect();
            let face = self.x.act(Simplex::nondegenerate(gen), &sub);
            let eta: Vec<usize> =
                if face.word.is_empty() { (0..sub.len()).collect() } else { face.word.surjection(sub.len() - 1) };
            if face.gen.dim() == 0 {
                continue;
            }
            let masks = flag
                .iter()
                .map(|&m| {
                    sub.iter().enumerate().filter(|&(_, &i)| m >> i & 1 == 1).fold(0u32, |acc, (r, _)| acc | 1 << eta[r])
                })
                .collect();
            out.push(Bead { gen: face.gen, flag: masks });
        }
    }
}

/// Ordered partitions of `p` positions into `n` non-empty blocks, as block
/// numbers `1..=n`.
pub(crate) fn ordered_partitions(p: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if p == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let total = n.pow(p as u32);
    for mut code in 0..total {
        let mut blocks = Vec::with_capacity(p);
        for _ in 0..p {
            blocks.push(code % n + 1);
            code /= n;
        }
        let mut seen = vec![false; n + 1];
        blocks.iter().for_each(|&b| seen[b] = true);
        if seen[1..].iter().all(|&s| s) {
            out.push(blocks);
        }
    }
    out
}

impl CellModel for RealizationModel {
    type Cell = Necklace;

    fn candidates(&self, n: usize) -> Result<Vec<Necklace>> {
        let mut out = Vec::new();
        for t in &self.necklaces {
            let positions: Vec<(usize, usize)> =
                t.iter().enumerate().flat_map(|(b, g)| (1..g.dim()).map(move |i| (b, i))).collect();
            for blocks in ordered_partitions(positions.len(), n) {
                let beads = t
                    .iter()
                    .enumerate()
                    .map(|(b, &g)| {
                        let ends = 1u32 | 1 << g.dim();
                        let flag = (0..=n)
                            .map(|j| {
                                positions
                                    .iter()
                                    .zip(&blocks)
                                    .filter(|&(&(pb, _), &blk)| pb == b && blk <= j)
                                    .fold(ends, |acc, (&(_, i), _)| acc | 1 << i)
                            })
                            .collect();
                        Bead { gen: g, flag }
                    })
                    .collect();
                out.push(Necklace { n, beads });
            }
        }
        Ok(out)
    }

    fn act(&self, cell: &Necklace, theta: &[usize]) -> Necklace {
        let mut beads = Vec::new();
        for bead in &cell.beads {
            let flag: Vec<u32> = theta.iter().map(|&t| bead.flag[t]).collect();
            self.restrict_bead(bead.gen, &flag, &mut beads);
        }
        Necklace { n: theta.len() - 1, beads }
    }

    fn label(&self, cell: &Necklace, n: usize, _k: usize) -> String {
        if cell.beads.is_empty() {
            return "id".into();
        }
        cell.beads
            .iter()
            .map(|b| {
                let id = self.x.id_of(b.gen);
                if n == 0 || b.gen.dim() == 1 {
                    id.to_string()
                } else {
                    let masks: Vec<String> = b.flag.iter().map(|m| format!("{m:b}")).collect();
                    format!("{id}<{}>", masks.join(","))
                }
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// `𝔠[X](a, b)` with the necklace behind every generator.
pub struct RealizationHom {
    pub model: Arc<RealizationModel>,
    pub mat: Materialized<Necklace>,
}

impl RealizationHom {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.mat.sset
    }

    pub fn locate(&self, cell: &Necklace) -> Result<Simplex> {
        self.mat.locate(&*self.model, cell, cell.n)
    }

    pub fn cell_of(&self, s: Simplex) -> Necklace {
        self.mat.cell_of(&*self.model, s)
    }
}

pub fn realization_hom(x: Arc<SimplicialSet>, a: usize, b: usize) -> Result<RealizationHom> {
    let model = Arc::new(RealizationModel::new(x, a, b)?);
    let mat = materialize(&*model, model.max_dim(), false)?;
    Ok(RealizationHom { model, mat })
}
