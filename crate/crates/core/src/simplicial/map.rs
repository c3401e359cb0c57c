use std::collections::HashSet;
use std::sync::Arc;

use crate::cert::CertSummary;
use crate::error::{Error, Result};
use crate::simplicial::sset::{GenId, Simplex, SimplicialSet};

/// Cached structural facts about a map. `isofibration` and
/// `trivial_fibration` are filled in by the lifting checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapFlags {
    pub mono: bool,
    pub iso: bool,
    pub isofibration: Option<CertSummary>,
    pub trivial_fibration: Option<CertSummary>,
}

/// A simplicial map, given by the image of every source generator.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    images: Vec<Vec<Simplex>>,
    flags: MapFlags,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && *self.source == *other.source
            && *self.target == *other.target
    }
}

impl SimplicialMap {
    /// Builds a map and checks that it commutes with all face operators.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Vec<Simplex>>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(source, target, images)?;
        m.check_faces()?;
        Ok(m)
    }

    /// Checks only shapes and dimensions; used by constructions that are
    /// simplicial by design.
    pub(crate) fn new_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut images: Vec<Vec<Simplex>>,
    ) -> Result<Self> {
        let levels = source.dim().map_or(0, |d| d + 1);
        images.resize(levels.max(images.len()), Vec::new());
        for n in 0..images.len() {
            if images[n].len() != source.generators(n).len() {
                return Err(Error::Mismatch(format!(
                    "{} images given for {} generators in dimension {n}",
                    images[n].len(),
                    source.generators(n).len()
                )));
            }
            for (k, s) in images[n].iter().enumerate() {
                let valid = s.dim() == n
                    && s.gen.dim() < target.dim().map_or(0, |d| d + 1)
                    && s.gen.index() < target.generators(s.gen.dim()).len();
                if !valid {
                    return Err(Error::NotSimplicial {
                        id: source.generators(n)[k].id.clone(),
                        reason: format!("image {s:?} is not a {n}-simplex of the target"),
                    });
                }
            }
        }
        images.truncate(levels);
        let mut m = SimplicialMap { source, target, images, flags: MapFlags::default() };
        m.flags.mono = m.compute_mono();
        m.flags.iso = m.flags.mono && m.hits_every_generator();
        Ok(m)
    }

    fn check_faces(&self) -> Result<()> {
        for g in self.source.all_gen_ids() {
            if g.dim() == 0 {
                continue;
            }
            let img = self.image(g);
            for (i, &f) in self.source.generator(g).faces.iter().enumerate() {
                if self.apply(f) != self.target.face(img, i) {
                    return Err(Error::NotSimplicial {
                        id: self.source.id_of(g).to_string(),
                        reason: format!("does not commute with d_{i}"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let images = (0..x.dim().map_or(0, |d| d + 1))
            .map(|n| x.gen_ids(n).map(Simplex::nondegenerate).collect())
            .collect();
        Self::new_unchecked(x.clone(), x, images).expect("identity is well formed")
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn flags(&self) -> &MapFlags {
        &self.flags
    }

    pub fn images(&self) -> &[Vec<Simplex>] {
        &self.images
    }

    pub fn image(&self, g: GenId) -> Simplex {
        self.images[g.dim()][g.index()]
    }

    pub fn apply(&self, s: Simplex) -> Simplex {
        let img = self.image(s.gen);
        if s.word.is_empty() {
            return img;
        }
        self.target.act(img, &s.word.surjection(s.dim()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *other.source {
            return Err(Error::Mismatch("composable maps must share an object".into()));
        }
        let images = self
            .images
            .iter()
            .map(|l| l.iter().map(|&s| other.apply(s)).collect())
            .collect();
        Self::new_unchecked(self.source.clone(), other.target.clone(), images)
    }

    pub fn is_mono(&self) -> bool {
        self.flags.mono
    }

    pub fn is_iso(&self) -> bool {
        self.flags.iso
    }

    pub fn set_isofibration(&mut self, c: CertSummary) {
        self.flags.isofibration = Some(c);
    }

    pub fn set_trivial_fibration(&mut self, c: CertSummary) {
        self.flags.trivial_fibration = Some(c);
    }

    // Injective on simplices iff generators go to distinct generators.
    fn compute_mono(&self) -> bool {
        let mut seen = HashSet::new();
        self.images
            .iter()
            .flatten()
            .all(|s| !s.is_degenerate() && seen.insert(s.gen))
    }

    fn hits_every_generator(&self) -> bool {
        let hit: usize = self.images.iter().map(Vec::len).sum();
        hit == self.target.num_generators()
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Result<SimplicialMap> {
        if !self.is_iso() {
            return Err(Error::Mismatch("map is not an isomorphism".into()));
        }
        let mut images: Vec<Vec<Simplex>> = (0..self.target.dim().map_or(0, |d| d + 1))
            .map(|n| vec![Simplex::nondegenerate(GenId::new(0, 0)); self.target.generators(n).len()])
            .collect();
        for g in self.source.all_gen_ids() {
            let t = self.image(g).gen;
            images[t.dim()][t.index()] = Simplex::nondegenerate(g);
        }
        Self::new_unchecked(self.target.clone(), self.source.clone(), images)
    }

    /// Whether `self` and `other` agree as functions (same source and target).
    pub fn same_as(&self, other: &SimplicialMap) -> bool {
        self == other
    }
}

impl SimplicialMap {
    /// The same map between opposite simplicial sets.
    pub fn opposite(&self) -> SimplicialMap {
        let images = self
            .images
            .iter()
            .map(|l| l.iter().map(|&s| crate::simplicial::sset::opposite_simplex(s)).collect())
            .collect();
        Self::new_unchecked(Arc::new(self.source.opposite()), Arc::new(self.target.opposite()), images)
            .expect("opposite map")
    }
}
