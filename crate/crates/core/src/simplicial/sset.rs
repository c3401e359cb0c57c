use std::collections::HashMap;
use std::fmt;

use crate::degeneracy::{self, DegeneracyWord};
use crate::error::{Error, Result};

/// Position of a non-degenerate generator: its dimension and its index in
/// the generator list of that dimension.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenId {
    pub dim: u32,
    pub index: u32,
}

impl GenId {
    pub fn new(dim: usize, index: usize) -> Self {
        GenId { dim: dim as u32, index: index as u32 }
    }
    pub fn dim(self) -> usize {
        self.dim as usize
    }
    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// A simplex in Eilenberg–Zilber normal form: a degeneracy word applied to
/// a non-degenerate generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub gen: GenId,
    pub word: DegeneracyWord,
}

impl Simplex {
    pub fn nondegenerate(gen: GenId) -> Self {
        Simplex { gen, word: DegeneracyWord::IDENTITY }
    }
    pub fn dim(self) -> usize {
        self.gen.dim() + self.word.len()
    }
    pub fn is_degenerate(self) -> bool {
        !self.word.is_empty()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "<{}:{}>", self.gen.dim, self.gen.index)
        } else {
            write!(f, "{:?}<{}:{}>", self.word, self.gen.dim, self.gen.index)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    /// `faces[i]` is `d_i` of this generator; empty in dimension 0.
    pub faces: Vec<Simplex>,
}

/// A finite simplicial set presented by its non-degenerate simplices.
///
/// Generator order is part of the value. `truncation` records a dimension
/// bound when the value is a skeleton of a larger (possibly infinite)
/// simplicial set, e.g. the nerve of a category with non-trivial loops.
#[derive(Clone, Default)]
pub struct SimplicialSet {
    levels: Vec<Vec<Generator>>,
    ids: HashMap<String, GenId>,
    offsets: Vec<usize>,
    truncation: Option<usize>,
    nerve: bool,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        let trim = |l: &[Vec<Generator>]| {
            let mut k = l.len();
            while k > 0 && l[k - 1].is_empty() {
                k -= 1;
            }
            k
        };
        let (a, b) = (trim(&self.levels), trim(&other.levels));
        a == b && self.levels[..a] == other.levels[..b] && self.truncation == other.truncation
    }
}

impl Eq for SimplicialSet {}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSet{:?}", self.counts())?;
        if let Some(b) = self.truncation {
            write!(f, "[≤{b}]")?;
        }
        Ok(())
    }
}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet::default()
    }

    /// Dimension of the highest generator, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.levels.iter().rposition(|l| !l.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.dim().is_none()
    }

    /// Number of generators per dimension, `0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        match self.dim() {
            None => vec![],
            Some(d) => self.levels[..=d].iter().map(Vec::len).collect(),
        }
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn with_truncation(mut self, bound: Option<usize>) -> Self {
        self.truncation = bound;
        self
    }

    /// Whether this value was produced as the nerve of a category.
    pub fn is_nerve(&self) -> bool {
        self.nerve
    }

    pub fn mark_nerve(mut self) -> Self {
        self.nerve = true;
        self
    }

    pub fn generators(&self, n: usize) -> &[Generator] {
        self.levels.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.levels[g.dim()][g.index()]
    }

    pub fn gen_ids(&self, n: usize) -> impl Iterator<Item = GenId> + '_ {
        (0..self.generators(n).len()).map(move |k| GenId::new(n, k))
    }

    /// All generators in dimension-major order.
    pub fn all_gen_ids(&self) -> Vec<GenId> {
        (0..self.levels.len()).flat_map(|n| self.gen_ids(n)).collect()
    }

    pub fn num_generators(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Position of a generator in [`all_gen_ids`](Self::all_gen_ids).
    pub fn flat_index(&self, g: GenId) -> usize {
        self.offsets[g.dim()] + g.index()
    }

    pub fn lookup(&self, id: &str) -> Option<GenId> {
        self.ids.get(id).copied()
    }

    pub fn id_of(&self, g: GenId) -> &str {
        &self.generator(g).id
    }

    pub fn vertex(&self, k: usize) -> Simplex {
        Simplex::nondegenerate(GenId::new(0, k))
    }

    /// Acts on `s` by the simplicial operator `theta : [m] -> [n]`,
    /// `n = dim(s)`, returning the normal form of `θ^*(s)`.
    pub fn act(&self, s: Simplex, theta: &[usize]) -> Simplex {
        let rho = s.word.surjection(s.dim());
        let comp: Vec<usize> = theta.iter().map(|&t| rho[t]).collect();
        self.act_on_generator(s.gen, comp)
    }

    fn act_on_generator(&self, mut gen: GenId, mut comp: Vec<usize>) -> Simplex {
        loop {
            let p = gen.dim();
            let mut hit = vec![false; p + 1];
            for &v in &comp {
                hit[v] = true;
            }
            match hit.iter().rposition(|h| !h) {
                None => {
                    return Simplex { gen, word: DegeneracyWord::from_surjection(&comp) };
                }
                Some(j) => {
                    let face = self.generator(gen).faces[j];
                    let rho = face.word.surjection(p - 1);
                    comp = comp.iter().map(|&v| rho[if v > j { v - 1 } else { v }]).collect();
                    gen = face.gen;
                }
            }
        }
    }

    pub fn face(&self, s: Simplex, i: usize) -> Simplex {
        self.act(s, &degeneracy::face_op(s.dim(), i))
    }

    pub fn degeneracy(&self, s: Simplex, i: usize) -> Simplex {
        let base = s.gen.dim();
        let w = DegeneracyWord::from_indices(&[i]).expect("single index");
        Simplex { gen: s.gen, word: s.word.then(w, base) }
    }

    /// The vertices of a simplex, in order.
    pub fn vertices_of(&self, s: Simplex) -> Vec<Simplex> {
        (0..=s.dim()).map(|k| self.act(s, &[k])).collect()
    }

    /// Faces `d_0, ..., d_n` of an `n`-simplex, `n >= 1`.
    pub fn boundary(&self, s: Simplex) -> Vec<Simplex> {
        let n = s.dim();
        if n == 0 {
            return vec![];
        }
        (0..=n).map(|i| self.face(s, i)).collect()
    }

    /// Every `n`-simplex (degenerate ones included), ordered by generator
    /// dimension, generator order and word.
    pub fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for p in 0..=n.min(self.levels.len().saturating_sub(1)) {
            if self.levels[p].is_empty() {
                continue;
            }
            let words = words_of_size(n, n - p);
            for g in self.gen_ids(p) {
                for &w in &words {
                    out.push(Simplex { gen: g, word: w });
                }
            }
        }
        out
    }

    /// Number of `n`-simplices, degenerate ones included.
    pub fn simplex_count(&self, n: usize) -> usize {
        (0..=n)
            .map(|p| self.generators(p).len() * binomial(n, n - p))
            .sum()
    }

    /// Checks face references and the simplicial identities on all generators.
    pub fn validate(&self) -> Result<()> {
        for (n, level) in self.levels.iter().enumerate() {
            for g in level {
                let expected = if n == 0 { 0 } else { n + 1 };
                if g.faces.len() != expected {
                    return Err(Error::MalformedGenerator {
                        id: g.id.clone(),
                        reason: format!("expected {expected} faces, found {}", g.faces.len()),
                    });
                }
                for f in &g.faces {
                    if f.dim() + 1 != n
                        || f.gen.dim() >= self.levels.len()
                        || f.gen.index() >= self.levels[f.gen.dim()].len()
                        || !f.word.fits(f.gen.dim())
                    {
                        return Err(Error::MalformedGenerator {
                            id: g.id.clone(),
                            reason: format!("face {f:?} does not realize dimension {}", n - 1),
                        });
                    }
                }
            }
        }
        for n in 2..self.levels.len() {
            for g in self.gen_ids(n) {
                let s = Simplex::nondegenerate(g);
                for j in 1..=n {
                    for i in 0..j {
                        let a = self.face(self.face(s, j), i);
                        let b = self.face(self.face(s, i), j - 1);
                        if a != b {
                            return Err(Error::SimplicialIdentity {
                                id: self.id_of(g).to_string(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Renames generators; ids must stay unique.
    pub fn relabel(&self, mut rename: impl FnMut(GenId, &str) -> String) -> Result<SimplicialSet> {
        let mut b = SsetBuilder::new();
        for g in self.all_gen_ids() {
            let gen = self.generator(g);
            b.push(g.dim(), rename(g, &gen.id), gen.faces.clone())?;
        }
        Ok(b.finish_unchecked().with_truncation(self.truncation))
    }

    /// The opposite simplicial set: vertex order reversed in every simplex.
    pub fn opposite(&self) -> SimplicialSet {
        let mut b = SsetBuilder::new();
        for g in self.all_gen_ids() {
            let n = g.dim();
            let gen = self.generator(g);
            let faces = if n == 0 {
                vec![]
            } else {
                (0..=n).map(|i| opposite_simplex(gen.faces[n - i])).collect()
            };
            b.push_unchecked(n, gen.id.clone(), faces);
        }
        let mut out = b.finish_unchecked().with_truncation(self.truncation);
        out.nerve = self.nerve;
        out
    }
}

/// Under the opposite involution a word `s_i` on an `n`-simplex becomes
/// `s_{n-1-i}`.
pub(crate) fn opposite_simplex(s: Simplex) -> Simplex {
    let n = s.dim();
    let mut bits = 0u32;
    for i in s.word.indices() {
        bits |= 1 << (n - 1 - i);
    }
    Simplex { gen: s.gen, word: DegeneracyWord::from_bits(bits) }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All degeneracy words with `k` indices drawn from `0..n`, in increasing
/// bitmask order.
pub(crate) fn words_of_size(n: usize, k: usize) -> Vec<DegeneracyWord> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if n == 0 {
        out.push(DegeneracyWord::IDENTITY);
        return out;
    }
    for bits in 0u32..(1u32 << n) {
        if bits.count_ones() as usize == k {
            out.push(DegeneracyWord::from_bits(bits));
        }
    }
    out
}

/// Incremental construction of a [`SimplicialSet`]; generators must be
/// pushed in non-decreasing dimension order relative to their faces.
#[derive(Default)]
pub struct SsetBuilder {
    set: SimplicialSet,
}

impl SsetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, dim: usize, id: String, faces: Vec<Simplex>) -> Result<GenId> {
        if self.set.ids.contains_key(&id) {
            return Err(Error::DuplicateGenerator(id));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::MalformedGenerator {
                id,
                reason: format!("expected {expected} faces, found {}", faces.len()),
            });
        }
        for f in &faces {
            let ok = f.dim() + 1 == dim
                && f.gen.dim() < self.set.levels.len()
                && f.gen.index() < self.set.levels[f.gen.dim()].len()
                && f.word.fits(f.gen.dim());
            if !ok {
                return Err(Error::MalformedGenerator {
                    id,
                    reason: format!("face {f:?} is not a known simplex of dimension {}", dim - 1),
                });
            }
        }
        Ok(self.push_unchecked(dim, id, faces))
    }

    pub fn push_unchecked(&mut self, dim: usize, id: String, faces: Vec<Simplex>) -> GenId {
        while self.set.levels.len() <= dim {
            self.set.levels.push(Vec::new());
        }
        let g = GenId::new(dim, self.set.levels[dim].len());
        self.set.ids.insert(id.clone(), g);
        self.set.levels[dim].push(Generator { id, faces });
        g
    }

    /// Pads empty levels up to `dim` so that lookups in lower dimensions
    /// work before anything is pushed there.
    pub fn ensure_dim(&mut self, dim: usize) {
        while self.set.levels.len() <= dim {
            self.set.levels.push(Vec::new());
        }
    }

    pub fn lookup(&self, id: &str) -> Option<GenId> {
        self.set.ids.get(id).copied()
    }

    pub fn current(&self) -> &SimplicialSet {
        &self.set
    }

    pub fn finish(self) -> Result<SimplicialSet> {
        let s = self.finish_unchecked();
        s.validate()?;
        Ok(s)
    }

    pub fn finish_unchecked(mut self) -> SimplicialSet {
        while self.set.levels.last().is_some_and(Vec::is_empty) {
            self.set.levels.pop();
        }
        let mut off = 0;
        self.set.offsets = self
            .set
            .levels
            .iter()
            .map(|l| {
                let o = off;
                off += l.len();
                o
            })
            .collect();
        self.set.offsets.push(off);
        self.set
    }
}
