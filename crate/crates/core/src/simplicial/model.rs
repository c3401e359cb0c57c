//! Materialization of simplicial sets described by concrete cells.
//!
//! Many constructions (nerves, products, pullbacks, mapping spaces, ends,
//! joins, realization homs) know every simplex concretely and how
//! simplicial operators act on it, but not which simplices are
//! non-degenerate. [`materialize`] turns such a description into a
//! generator presentation.

use std::hash::Hash;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::degeneracy::{self, DegeneracyWord};
use crate::error::{Error, Result};
use crate::simplicial::map::SimplicialMap;
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet, SsetBuilder};

pub trait CellModel {
    type Cell: Clone + Eq + Hash;

    /// Cells of dimension `n`; must contain every non-degenerate one and
    /// may contain degenerate ones.
    fn candidates(&self, n: usize) -> Result<Vec<Self::Cell>>;

    /// `θ^*(cell)` for `θ : [m] -> [n]`. Must return canonical cells: two
    /// cells are equal iff they denote the same simplex.
    fn act(&self, cell: &Self::Cell, theta: &[usize]) -> Self::Cell;

    /// Identifier for the `k`-th generator in dimension `n`.
    fn label(&self, _cell: &Self::Cell, n: usize, k: usize) -> String {
        format!("{n}.{k}")
    }
}

/// A simplicial set together with the concrete cell of each generator.
#[derive(Clone, Debug)]
pub struct Materialized<C: Clone + Eq + Hash> {
    pub sset: Arc<SimplicialSet>,
    pub cells: Vec<IndexSet<C>>,
}

pub fn is_degenerate<M: CellModel>(model: &M, cell: &M::Cell, n: usize) -> bool {
    (0..n).any(|j| model.act(cell, &degeneracy::repeat_op(n, j)) == *cell)
}

/// Splits a cell into a non-degenerate cell and the degeneracy word
/// applied to it.
pub fn decompose<M: CellModel>(model: &M, cell: &M::Cell, n: usize) -> (M::Cell, DegeneracyWord) {
    let mut bits = 0u32;
    for j in 0..n {
        if model.act(cell, &degeneracy::repeat_op(n, j)) == *cell {
            bits |= 1 << j;
        }
    }
    let word = DegeneracyWord::from_bits(bits);
    if bits == 0 {
        return (cell.clone(), word);
    }
    (model.act(cell, &degeneracy::section(word, n)), word)
}

/// Materializes dimensions `0..=max_dim`. The result is marked truncated at
/// `max_dim` when `truncated` is set.
pub fn materialize<M: CellModel>(
    model: &M,
    max_dim: usize,
    truncated: bool,
) -> Result<Materialized<M::Cell>> {
    build(model, max_dim, truncated, false)
}

/// Materializes until a level with no non-degenerate cells appears, up to
/// `cap`. Valid for models whose non-degenerate cells have non-degenerate
/// faces of every lower dimension (nerves and their limits); the result is
/// truncated only if level `cap` is non-empty.
pub fn materialize_until_empty<M: CellModel>(model: &M, cap: usize) -> Result<Materialized<M::Cell>> {
    build(model, cap, true, true)
}

fn build<M: CellModel>(
    model: &M,
    max_dim: usize,
    truncated: bool,
    stop_on_empty: bool,
) -> Result<Materialized<M::Cell>> {
    let mut builder = SsetBuilder::new();
    let mut cells: Vec<IndexSet<M::Cell>> = Vec::new();
    let mut full = true;
    for n in 0..=max_dim {
        if stop_on_empty && n > 0 && cells[n - 1].is_empty() {
            full = false;
            break;
        }
        let mut level = IndexSet::new();
        for c in model.candidates(n)? {
            if level.contains(&c) || is_degenerate(model, &c, n) {
                continue;
            }
            level.insert(c);
        }
        let mut faces_per = Vec::with_capacity(level.len());
        for c in &level {
            let faces = if n == 0 {
                vec![]
            } else {
                (0..=n)
                    .map(|i| {
                        let d = model.act(c, &degeneracy::face_op(n, i));
                        locate_in(model, &cells, &d, n - 1)
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            faces_per.push(faces);
        }
        builder.ensure_dim(n);
        for (k, (c, faces)) in level.iter().zip(faces_per).enumerate() {
            builder.push_unchecked(n, model.label(c, n, k), faces);
        }
        cells.push(level);
    }
    if stop_on_empty && cells.last().is_some_and(IndexSet::is_empty) {
        full = false;
    }
    let sset = builder
        .finish_unchecked()
        .with_truncation(if truncated && full { Some(max_dim) } else { None });
    Ok(Materialized { sset: Arc::new(sset), cells })
}

fn locate_in<M: CellModel>(
    model: &M,
    cells: &[IndexSet<M::Cell>],
    cell: &M::Cell,
    n: usize,
) -> Result<Simplex> {
    let (nd, word) = decompose(model, cell, n);
    let p = n - word.len();
    let k = cells
        .get(p)
        .and_then(|l| l.get_index_of(&nd))
        .ok_or(Error::MissingCell { dim: p })?;
    Ok(Simplex { gen: GenId::new(p, k), word })
}

impl<C: Clone + Eq + Hash> Materialized<C> {
    /// The normal-form simplex denoted by an `n`-cell.
    pub fn locate<M: CellModel<Cell = C>>(&self, model: &M, cell: &C, n: usize) -> Result<Simplex> {
        locate_in(model, &self.cells, cell, n)
    }

    pub fn cell(&self, g: GenId) -> &C {
        &self.cells[g.dim()][g.index()]
    }

    /// The concrete cell of an arbitrary simplex.
    pub fn cell_of<M: CellModel<Cell = C>>(&self, model: &M, s: Simplex) -> C {
        let c = self.cell(s.gen);
        if s.word.is_empty() {
            c.clone()
        } else {
            model.act(c, &s.word.surjection(s.dim()))
        }
    }

    /// Builds the map `self -> target` sending the cell of each generator
    /// through `f`.
    pub fn map_cells<D, N>(
        &self,
        target: &Materialized<D>,
        target_model: &N,
        mut f: impl FnMut(GenId, &C) -> D,
    ) -> Result<SimplicialMap>
    where
        D: Clone + Eq + Hash,
        N: CellModel<Cell = D>,
    {
        let mut images = Vec::new();
        for (n, level) in self.cells.iter().enumerate() {
            let mut row = Vec::with_capacity(level.len());
            for (k, c) in level.iter().enumerate() {
                let d = f(GenId::new(n, k), c);
                row.push(target.locate(target_model, &d, n)?);
            }
            images.push(row);
        }
        SimplicialMap::new_unchecked(self.sset.clone(), target.sset.clone(), images)
    }
}
