//! The modified parenthesised braid groupoid.
//!
//! A [`ModifiedBraid`] is a braid between parenthesised words: a signed
//! crossing word read top to bottom, per-position translation expressions
//! recording how letters change along the way, and two kinds of merge
//! events — [`PinchEvent`]s in the interior and [`AttachEvent`]s on the
//! boundary lines. Pure permutation braids embed the classical
//! parenthesised braids; the merge events model letter collisions when
//! words carry repeated letters.
//!
//! Equality is geometric: endpoint words, the freely reduced crossing
//! word, and the event sets. Translation expressions are constructive
//! witnesses of the letter maps and are excluded from equality, as is the
//! Latin-square context each braid carries for evaluating them. Free
//! reduction never cancels a crossing pair across a pinch level.
//!
//! Strand ids are 1-based top positions. Generator ±j crosses the strands
//! at positions j and j+1 at that level.

mod combination;

pub use combination::BraidCombination;

use std::collections::BTreeSet;
use std::fmt;

use crate::quasigroup::LatinSquare;
use crate::words::{
    permutation_via_translations, ParenWord, TransExpr, WordError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    /// Composition endpoints do not match.
    Endpoints(String),
    /// Braids carry different Latin-square contexts.
    SquareMismatch,
    /// Inverse requested of a braid with merge events.
    NonInvertible,
    /// Strand or generator index out of range.
    Index(String),
    /// Strands not adjacent where an event requires it.
    Geometry(String),
    /// Letter data inconsistent (labels, bottom-attach letters).
    Skeleton(String),
    /// Embedding requires distinct letters.
    NotInPaB(String),
    /// Combination terms disagree on the skeleton, or compositions do not
    /// chain.
    Combination(String),
    /// Malformed JSON.
    Format(String),
    /// Underlying word error.
    Word(WordError),
}

impl fmt::Display for BraidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidError::Endpoints(s) => write!(f, "endpoint mismatch: {s}"),
            BraidError::SquareMismatch => write!(f, "braids use different Latin squares"),
            BraidError::NonInvertible => write!(f, "non-invertible: braid has pinch or attach events"),
            BraidError::Index(s) => write!(f, "index out of range: {s}"),
            BraidError::Geometry(s) => write!(f, "geometry error: {s}"),
            BraidError::Skeleton(s) => write!(f, "skeleton error: {s}"),
            BraidError::NotInPaB(s) => write!(f, "not a parenthesised braid: {s}"),
            BraidError::Combination(s) => write!(f, "combination error: {s}"),
            BraidError::Format(s) => write!(f, "malformed braid input: {s}"),
            BraidError::Word(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BraidError {}

impl From<WordError> for BraidError {
    fn from(e: WordError) -> Self {
        BraidError::Word(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Top,
    Bottom,
}

impl Side {
    fn as_str(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Bottom => "bottom",
        }
    }
}

/// An interior merge of two or more strands, after `level` crossings.
/// Created as a pair; cabling a member strand adds its copy to the set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PinchEvent {
    pub level: usize,
    pub strands: BTreeSet<usize>,
}

/// A merge of adjacent strands on the top or bottom boundary line. A
/// bottom attach requires the merged target letters to coincide.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttachEvent {
    pub side: Side,
    pub strands: BTreeSet<usize>,
}

/// The image of a braid in the category of parenthesised translated
/// words: endpoint words plus per-position translation expressions.
///
/// Equality compares the endpoint words only: the positionwise letter map
/// is determined by them, and the expressions are witnesses. Composition
/// concatenates witnesses positionwise, so the skeleton projection is
/// strictly functorial.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub source: ParenWord,
    pub target: ParenWord,
    pub labels: Vec<TransExpr>,
}

impl PartialEq for Skeleton {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target
    }
}

impl Eq for Skeleton {}

impl Skeleton {
    pub fn identity(w: &ParenWord) -> Self {
        Skeleton {
            source: w.clone(),
            target: w.clone(),
            labels: vec![TransExpr::identity(); w.len()],
        }
    }

    pub fn compose(&self, other: &Skeleton) -> Result<Skeleton, BraidError> {
        if self.target != other.source {
            return Err(BraidError::Endpoints(format!(
                "{} vs {}",
                self.target, other.source
            )));
        }
        Ok(Skeleton {
            source: self.source.clone(),
            target: other.target.clone(),
            labels: self
                .labels
                .iter()
                .zip(&other.labels)
                .map(|(a, b)| a.then(b))
                .collect(),
        })
    }

    pub fn inverse(&self) -> Skeleton {
        Skeleton {
            source: self.target.clone(),
            target: self.source.clone(),
            labels: self.labels.iter().map(TransExpr::inverse).collect(),
        }
    }
}

/// A modified parenthesised braid. Immutable; every operation returns a
/// new value. See the module docs for the equality contract.
#[derive(Debug, Clone)]
pub struct ModifiedBraid {
    source: ParenWord,
    target: ParenWord,
    crossings: Vec<i32>,
    pinches: Vec<PinchEvent>,
    attaches: Vec<AttachEvent>,
    labels: Vec<TransExpr>,
    square: LatinSquare,
}

impl PartialEq for ModifiedBraid {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.crossings == other.crossings
            && self.pinches == other.pinches
            && self.attaches == other.attaches
    }
}

impl Eq for ModifiedBraid {}

impl ModifiedBraid {
    /// Full constructor with validation. Labels must evaluate each source
    /// letter to the matching target letter over `square`.
    pub fn from_parts(
        source: ParenWord,
        target: ParenWord,
        crossings: Vec<i32>,
        pinches: Vec<PinchEvent>,
        attaches: Vec<AttachEvent>,
        labels: Vec<TransExpr>,
        square: LatinSquare,
    ) -> Result<Self, BraidError> {
        let n = source.len();
        if target.len() != n {
            return Err(BraidError::Endpoints(format!(
                "source has {n} strands, target {}",
                target.len()
            )));
        }
        if labels.len() != n {
            return Err(BraidError::Skeleton(format!(
                "{} labels for {n} strands",
                labels.len()
            )));
        }
        for c in &crossings {
            let j = c.unsigned_abs() as usize;
            if *c == 0 || j >= n {
                return Err(BraidError::Index(format!("generator {c} on {n} strands")));
            }
        }
        let src_letters = source.letters();
        let tgt_letters = target.letters();
        for (p, expr) in labels.iter().enumerate() {
            let out = expr
                .eval(&src_letters[p], &square)
                .map_err(|e| BraidError::Skeleton(e.to_string()))?;
            if out != tgt_letters[p] {
                return Err(BraidError::Skeleton(format!(
                    "label {expr} sends {} to {out}, target has {}",
                    src_letters[p], tgt_letters[p]
                )));
            }
        }
        let mut braid = ModifiedBraid {
            source,
            target,
            crossings,
            pinches: Vec::new(),
            attaches: Vec::new(),
            labels,
            square,
        };
        for p in pinches {
            braid.check_pinch(&p)?;
            braid.pinches.push(p);
        }
        for a in attaches {
            braid.check_attach(&a)?;
            braid.attaches.push(a);
        }
        braid.normalize();
        Ok(braid)
    }

    /// The identity braid on a word.
    pub fn identity(w: &ParenWord, square: &LatinSquare) -> Self {
        ModifiedBraid {
            source: w.clone(),
            target: w.clone(),
            crossings: Vec::new(),
            pinches: Vec::new(),
            attaches: Vec::new(),
            labels: vec![TransExpr::identity(); w.len()],
            square: square.clone(),
        }
    }

    /// Embeds a classical parenthesised braid: a distinct-letter word and
    /// a crossing word, no events. The skeleton is the permutation
    /// translation built from the crossing permutation.
    pub fn embed_pab(
        source: &ParenWord,
        crossings: &[i32],
        square: &LatinSquare,
    ) -> Result<Self, BraidError> {
        if !source.has_distinct_letters() {
            return Err(BraidError::NotInPaB(format!("{source} has repeated letters")));
        }
        let n = source.len();
        for c in crossings {
            let j = c.unsigned_abs() as usize;
            if *c == 0 || j >= n {
                return Err(BraidError::Index(format!("generator {c} on {n} strands")));
            }
        }
        let perm = permutation_of(crossings, n);
        let t = permutation_via_translations(square, source, &perm)?;
        let mut braid = ModifiedBraid {
            source: source.clone(),
            target: t.target,
            crossings: crossings.to_vec(),
            pinches: Vec::new(),
            attaches: Vec::new(),
            labels: t.per_leaf,
            square: square.clone(),
        };
        braid.normalize();
        Ok(braid)
    }

    /// An empty-crossing braid applying translation expressions
    /// letter-wise: a PaT morphism regarded as a braid.
    pub fn translate(
        w: &ParenWord,
        per_leaf: &[TransExpr],
        square: &LatinSquare,
    ) -> Result<Self, BraidError> {
        let t = crate::words::distort(w, per_leaf, square)?;
        Ok(ModifiedBraid {
            source: w.clone(),
            target: t.target,
            crossings: Vec::new(),
            pinches: Vec::new(),
            attaches: Vec::new(),
            labels: per_leaf.to_vec(),
            square: square.clone(),
        })
    }

    /// A re-association morphism: same letter sequence, different tree
    /// shape, empty crossing word.
    pub fn reassociation(
        source: &ParenWord,
        target: &ParenWord,
        square: &LatinSquare,
    ) -> Result<Self, BraidError> {
        if source.letters() != target.letters() {
            return Err(BraidError::Skeleton(format!(
                "re-association must preserve the letter sequence: {source} vs {target}"
            )));
        }
        Ok(ModifiedBraid {
            source: source.clone(),
            target: target.clone(),
            crossings: Vec::new(),
            pinches: Vec::new(),
            attaches: Vec::new(),
            labels: vec![TransExpr::identity(); source.len()],
            square: square.clone(),
        })
    }

    pub fn source(&self) -> &ParenWord {
        &self.source
    }

    pub fn target(&self) -> &ParenWord {
        &self.target
    }

    pub fn crossings(&self) -> &[i32] {
        &self.crossings
    }

    pub fn pinches(&self) -> &[PinchEvent] {
        &self.pinches
    }

    pub fn attaches(&self) -> &[AttachEvent] {
        &self.attaches
    }

    pub fn labels(&self) -> &[TransExpr] {
        &self.labels
    }

    pub fn square(&self) -> &LatinSquare {
        &self.square
    }

    pub fn strand_count(&self) -> usize {
        self.source.len()
    }

    pub fn has_events(&self) -> bool {
        !self.pinches.is_empty() || !self.attaches.is_empty()
    }

    /// The permutation induced by the crossing word: `strand_map()[s−1]`
    /// is the 1-based bottom position of strand `s`.
    pub fn strand_map(&self) -> Vec<usize> {
        permutation_of(&self.crossings, self.strand_count())
            .iter()
            .map(|p| p + 1)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.crossings.is_empty() && !self.has_events() && self.source == self.target
    }

    /// Forgets crossings and events: the PaT morphism underneath.
    pub fn skeleton(&self) -> Skeleton {
        Skeleton {
            source: self.source.clone(),
            target: self.target.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Group-like coproduct: the formal pair (B, B).
    pub fn coproduct(&self) -> (ModifiedBraid, ModifiedBraid) {
        (self.clone(), self.clone())
    }

    /// Categorical composition: `self` stacked above `other`.
    ///
    /// Attach events on the glued interface (bottom of `self`, top of
    /// `other`) become interior pinches at the gluing level.
    pub fn compose(&self, other: &ModifiedBraid) -> Result<ModifiedBraid, BraidError> {
        if self.target != other.source {
            return Err(BraidError::Endpoints(format!(
                "{} vs {}",
                self.target, other.source
            )));
        }
        if self.square != other.square {
            return Err(BraidError::SquareMismatch);
        }
        let len1 = self.crossings.len();
        let perm1 = permutation_of(&self.crossings, self.strand_count());
        // Strand ids of `other` are its top positions, i.e. bottom
        // positions of `self`; pull them back through perm1.
        let pull = |id: usize| -> usize {
            perm1.iter().position(|&p| p + 1 == id).expect("bijection") + 1
        };

        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);

        let mut pinches = self.pinches.clone();
        for a in &self.attaches {
            match a.side {
                Side::Top => {}
                Side::Bottom => pinches.push(PinchEvent {
                    level: len1,
                    strands: a.strands.clone(),
                }),
            }
        }
        for a in &other.attaches {
            if a.side == Side::Top {
                pinches.push(PinchEvent {
                    level: len1,
                    strands: a.strands.iter().map(|&s| pull(s)).collect(),
                });
            }
        }
        for p in &other.pinches {
            pinches.push(PinchEvent {
                level: p.level + len1,
                strands: p.strands.iter().map(|&s| pull(s)).collect(),
            });
        }

        let mut attaches: Vec<AttachEvent> = self
            .attaches
            .iter()
            .filter(|a| a.side == Side::Top)
            .cloned()
            .collect();
        for a in &other.attaches {
            if a.side == Side::Bottom {
                attaches.push(AttachEvent {
                    side: Side::Bottom,
                    strands: a.strands.iter().map(|&s| pull(s)).collect(),
                });
            }
        }

        let labels = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(a, b)| a.then(b))
            .collect();

        let mut braid = ModifiedBraid {
            source: self.source.clone(),
            target: other.target.clone(),
            crossings,
            pinches,
            attaches,
            labels,
            square: self.square.clone(),
        };
        braid.normalize();
        Ok(braid)
    }

    /// Inverse braid. Only event-free braids are invertible; a pinch or
    /// attach is a merge and cannot be undone.
    pub fn inverse(&self) -> Result<ModifiedBraid, BraidError> {
        if self.has_events() {
            return Err(BraidError::NonInvertible);
        }
        Ok(ModifiedBraid {
            source: self.target.clone(),
            target: self.source.clone(),
            crossings: self.crossings.iter().rev().map(|c| -c).collect(),
            pinches: Vec::new(),
            attaches: Vec::new(),
            labels: self.labels.iter().map(TransExpr::inverse).collect(),
            square: self.square.clone(),
        })
    }

    /// Extension d₀: adds a straight strand on the left; all indices
    /// shift up by one.
    pub fn extend_left(&self, letter: &str) -> ModifiedBraid {
        let leaf = ParenWord::leaf(letter);
        let mut labels = vec![TransExpr::identity()];
        labels.extend(self.labels.iter().cloned());
        ModifiedBraid {
            source: ParenWord::concat(leaf.clone(), self.source.clone()),
            target: ParenWord::concat(leaf, self.target.clone()),
            crossings: self
                .crossings
                .iter()
                .map(|c| if *c > 0 { c + 1 } else { c - 1 })
                .collect(),
            pinches: self
                .pinches
                .iter()
                .map(|p| PinchEvent {
                    level: p.level,
                    strands: p.strands.iter().map(|s| s + 1).collect(),
                })
                .collect(),
            attaches: self
                .attaches
                .iter()
                .map(|a| AttachEvent {
                    side: a.side,
                    strands: a.strands.iter().map(|s| s + 1).collect(),
                })
                .collect(),
            labels,
            square: self.square.clone(),
        }
    }

    /// Adds a straight strand on the right; indices are unchanged.
    pub fn extend_right(&self, letter: &str) -> ModifiedBraid {
        let leaf = ParenWord::leaf(letter);
        let mut labels = self.labels.clone();
        labels.push(TransExpr::identity());
        ModifiedBraid {
            source: ParenWord::concat(self.source.clone(), leaf.clone()),
            target: ParenWord::concat(self.target.clone(), leaf),
            crossings: self.crossings.clone(),
            pinches: self.pinches.clone(),
            attaches: self.attaches.clone(),
            labels,
            square: self.square.clone(),
        }
    }

    /// Cabling dᵢ: doubles strand `i` (1-based source position) into two
    /// parallel copies; the copy gets id `i+1`. Crossings involving the
    /// strand expand to two, events referencing it gain the copy.
    pub fn cable(&self, i: usize) -> Result<ModifiedBraid, BraidError> {
        let n = self.strand_count();
        if i < 1 || i > n {
            return Err(BraidError::Index(format!("strand {i} of {n}")));
        }
        let s = i - 1;
        let final_pos = permutation_of(&self.crossings, n)[s];

        // Simulate top to bottom, expanding crossings that involve s.
        let mut occ: Vec<usize> = (0..n).collect();
        let pos_of = |occ: &[usize], t: usize| occ.iter().position(|&x| x == t).unwrap();
        let mut new_crossings: Vec<i32> = Vec::new();
        let mut level_map = vec![0usize; self.crossings.len() + 1];
        for (k, &c) in self.crossings.iter().enumerate() {
            let j = c.unsigned_abs() as usize; // 1-based position pair (j, j+1)
            let sign = c.signum();
            let a = occ[j - 1];
            let b = occ[j];
            let ps = pos_of(&occ, s) + 1; // 1-based
            if a == s {
                new_crossings.push(sign * (j as i32 + 1));
                new_crossings.push(sign * j as i32);
            } else if b == s {
                new_crossings.push(sign * j as i32);
                new_crossings.push(sign * (j as i32 + 1));
            } else if ps < j {
                new_crossings.push(sign * (j as i32 + 1));
            } else {
                new_crossings.push(sign * j as i32);
            }
            occ.swap(j - 1, j);
            level_map[k + 1] = new_crossings.len();
        }

        let new_id = |t: usize| -> usize {
            // Old 1-based id to new 1-based id; the copy takes i+1.
            if t > i { t + 1 } else { t }
        };
        let pinches = self
            .pinches
            .iter()
            .map(|p| {
                let mut strands: BTreeSet<usize> = p.strands.iter().map(|&t| new_id(t)).collect();
                if p.strands.contains(&i) {
                    strands.insert(i + 1);
                }
                PinchEvent { level: level_map[p.level], strands }
            })
            .collect();
        let attaches = self
            .attaches
            .iter()
            .map(|a| {
                let mut strands: BTreeSet<usize> = a.strands.iter().map(|&t| new_id(t)).collect();
                if a.strands.contains(&i) {
                    strands.insert(i + 1);
                }
                AttachEvent { side: a.side, strands }
            })
            .collect();

        let source = self.source.double_leaf(s)?;
        let target = self.target.double_leaf(final_pos)?;
        let labels = self.transport_labels_insert(i, final_pos + 1)?;

        let mut braid = ModifiedBraid {
            source,
            target,
            crossings: new_crossings,
            pinches,
            attaches,
            labels,
            square: self.square.clone(),
        };
        braid.normalize();
        debug_assert!(braid.validate().is_ok(), "cable output invalid: {:?}", braid.validate());
        Ok(braid)
    }

    /// Strand removal sᵢ: deletes strand `i` (1-based source position).
    /// Crossings involving it vanish, pinches involving it are dropped,
    /// attaches shrink (and disappear below two strands).
    pub fn remove_strand(&self, i: usize) -> Result<ModifiedBraid, BraidError> {
        let n = self.strand_count();
        if n < 2 {
            return Err(BraidError::Index("cannot remove from a 1-strand braid".into()));
        }
        if i < 1 || i > n {
            return Err(BraidError::Index(format!("strand {i} of {n}")));
        }
        let s = i - 1;
        let final_pos = permutation_of(&self.crossings, n)[s];

        let mut occ: Vec<usize> = (0..n).collect();
        let mut new_crossings: Vec<i32> = Vec::new();
        let mut level_map = vec![0usize; self.crossings.len() + 1];
        for (k, &c) in self.crossings.iter().enumerate() {
            let j = c.unsigned_abs() as usize;
            let sign = c.signum();
            let a = occ[j - 1];
            let b = occ[j];
            if a != s && b != s {
                let ps = occ.iter().position(|&x| x == s).unwrap() + 1;
                let shifted = if ps < j { j - 1 } else { j };
                new_crossings.push(sign * shifted as i32);
            }
            occ.swap(j - 1, j);
            level_map[k + 1] = new_crossings.len();
        }

        let remap_id = |t: usize| -> usize { if t > i { t - 1 } else { t } };
        let mut pinches = Vec::new();
        for p in &self.pinches {
            if p.strands.contains(&i) {
                continue;
            }
            pinches.push(PinchEvent {
                level: level_map[p.level],
                strands: p.strands.iter().map(|&t| remap_id(t)).collect(),
            });
        }
        let mut attaches = Vec::new();
        for a in &self.attaches {
            let strands: BTreeSet<usize> = a
                .strands
                .iter()
                .filter(|&&t| t != i)
                .map(|&t| remap_id(t))
                .collect();
            if strands.len() >= 2 {
                attaches.push(AttachEvent { side: a.side, strands });
            }
        }

        let source = self.source.delete_leaf(s)?;
        let target = self.target.delete_leaf(final_pos)?;
        let labels = self.transport_labels_delete(i, final_pos + 1)?;

        let mut braid = ModifiedBraid {
            source,
            target,
            crossings: new_crossings,
            pinches,
            attaches,
            labels,
            square: self.square.clone(),
        };
        braid.normalize();
        debug_assert!(braid.validate().is_ok(), "remove output invalid: {:?}", braid.validate());
        Ok(braid)
    }

    /// Records a pinch of two strands after `level` crossings. The
    /// strands must be adjacent there.
    pub fn pinch(&self, level: usize, pair: (usize, usize)) -> Result<ModifiedBraid, BraidError> {
        if pair.0 == pair.1 {
            return Err(BraidError::Geometry("pinch needs two distinct strands".into()));
        }
        let event = PinchEvent {
            level,
            strands: [pair.0, pair.1].into_iter().collect(),
        };
        self.check_pinch(&event)?;
        let mut braid = self.clone();
        braid.pinches.push(event);
        braid.pinches.sort();
        braid.pinches.dedup();
        Ok(braid)
    }

    /// Records a boundary attach of two or more strands. Top attaches
    /// need consecutive ids; bottom attaches need adjacent landing
    /// positions and equal target letters.
    pub fn attach(&self, side: Side, strands: &[usize]) -> Result<ModifiedBraid, BraidError> {
        let event = AttachEvent {
            side,
            strands: strands.iter().copied().collect(),
        };
        self.check_attach(&event)?;
        let mut braid = self.clone();
        braid.attaches.push(event);
        braid.attaches.sort();
        braid.attaches.dedup();
        Ok(braid)
    }

    fn check_pinch(&self, event: &PinchEvent) -> Result<(), BraidError> {
        let n = self.strand_count();
        if event.strands.len() < 2 {
            return Err(BraidError::Geometry("pinch needs at least two strands".into()));
        }
        if event.level > self.crossings.len() {
            return Err(BraidError::Index(format!(
                "pinch level {} beyond {} crossings",
                event.level,
                self.crossings.len()
            )));
        }
        for &s in &event.strands {
            if s < 1 || s > n {
                return Err(BraidError::Index(format!("strand {s} of {n}")));
            }
        }
        let perm = permutation_of(&self.crossings[..event.level], n);
        let mut positions: Vec<usize> = event.strands.iter().map(|&s| perm[s - 1]).collect();
        positions.sort_unstable();
        if !consecutive(&positions) {
            return Err(BraidError::Geometry(format!(
                "strands {:?} not adjacent at level {}",
                event.strands, event.level
            )));
        }
        Ok(())
    }

    fn check_attach(&self, event: &AttachEvent) -> Result<(), BraidError> {
        let n = self.strand_count();
        if event.strands.len() < 2 {
            return Err(BraidError::Geometry("attach needs at least two strands".into()));
        }
        for &s in &event.strands {
            if s < 1 || s > n {
                return Err(BraidError::Index(format!("strand {s} of {n}")));
            }
        }
        match event.side {
            Side::Top => {
                let positions: Vec<usize> = event.strands.iter().map(|&s| s - 1).collect();
                if !consecutive(&positions) {
                    return Err(BraidError::Geometry(format!(
                        "strands {:?} not adjacent on the top line",
                        event.strands
                    )));
                }
            }
            Side::Bottom => {
                let perm = permutation_of(&self.crossings, n);
                let mut positions: Vec<usize> =
                    event.strands.iter().map(|&s| perm[s - 1]).collect();
                positions.sort_unstable();
                if !consecutive(&positions) {
                    return Err(BraidError::Geometry(format!(
                        "strands {:?} not adjacent on the bottom line",
                        event.strands
                    )));
                }
                let letters = self.target.letters();
                let merged: BTreeSet<&String> = positions.iter().map(|&p| &letters[p]).collect();
                if merged.len() != 1 {
                    return Err(BraidError::Skeleton(format!(
                        "bottom attach letters differ: {merged:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Re-checks every invariant; used by debug assertions and tests.
    pub fn validate(&self) -> Result<(), BraidError> {
        ModifiedBraid::from_parts(
            self.source.clone(),
            self.target.clone(),
            self.crossings.clone(),
            self.pinches.clone(),
            self.attaches.clone(),
            self.labels.clone(),
            self.square.clone(),
        )
        .map(|_| ())
    }

    /// Free reduction of the crossing word, blocked across pinch levels,
    /// plus canonical event ordering.
    fn normalize(&mut self) {
        loop {
            let mut fired = false;
            for k in 0..self.crossings.len().saturating_sub(1) {
                if self.crossings[k] == -self.crossings[k + 1]
                    && !self.pinches.iter().any(|p| p.level == k + 1)
                {
                    self.crossings.drain(k..=k + 1);
                    for p in &mut self.pinches {
                        if p.level > k + 1 {
                            p.level -= 2;
                        }
                    }
                    fired = true;
                    break;
                }
            }
            if !fired {
                break;
            }
        }
        self.pinches.sort();
        self.pinches.dedup();
        self.attaches.sort();
        self.attaches.dedup();
    }

    /// Label transport for cabling: source position `i` duplicates, target
    /// position `tp` duplicates (both 1-based). Positions whose source and
    /// target alignments agree keep their expressions; straddled positions
    /// get a canonical witness.
    fn transport_labels_insert(&self, i: usize, tp: usize) -> Result<Vec<TransExpr>, BraidError> {
        let n = self.strand_count();
        let src_letters = self.source.letters();
        let tgt_letters = self.target.letters();
        let mut out = Vec::with_capacity(n + 1);
        for j in 1..=n + 1 {
            let src_orig = if j <= i { j } else if j == i + 1 { i } else { j - 1 };
            let tgt_orig = if j <= tp { j } else if j == tp + 1 { tp } else { j - 1 };
            if src_orig == tgt_orig {
                out.push(self.labels[src_orig - 1].clone());
            } else {
                let src = &src_letters[src_orig - 1];
                let tgt = &tgt_letters[tgt_orig - 1];
                out.push(self.canonical_witness(src, tgt)?);
            }
        }
        Ok(out)
    }

    /// Label transport for removal: source position `i` and target
    /// position `tp` disappear (both 1-based).
    fn transport_labels_delete(&self, i: usize, tp: usize) -> Result<Vec<TransExpr>, BraidError> {
        let n = self.strand_count();
        let src_letters = self.source.letters();
        let tgt_letters = self.target.letters();
        let mut out = Vec::with_capacity(n - 1);
        for j in 1..n {
            let src_orig = if j < i { j } else { j + 1 };
            let tgt_orig = if j < tp { j } else { j + 1 };
            if src_orig == tgt_orig {
                out.push(self.labels[src_orig - 1].clone());
            } else {
                let src = &src_letters[src_orig - 1];
                let tgt = &tgt_letters[tgt_orig - 1];
                out.push(self.canonical_witness(src, tgt)?);
            }
        }
        Ok(out)
    }

    /// Identity when the letters agree, else the unique left translation
    /// L_r with r ⋄ src = tgt.
    fn canonical_witness(&self, src: &str, tgt: &str) -> Result<TransExpr, BraidError> {
        if src == tgt {
            return Ok(TransExpr::identity());
        }
        let r = self
            .square
            .right_divide(src, tgt)
            .map_err(|e| BraidError::Skeleton(e.to_string()))?;
        Ok(TransExpr::left(r))
    }

    /// Serializes to the canonical JSON wire form (sorted keys, events in
    /// canonical order). Byte-stable for equal braids built the same way.
    pub fn to_json(&self) -> String {
        let pinches: Vec<serde_json::Value> = self
            .pinches
            .iter()
            .map(|p| {
                serde_json::json!({
                    "level": p.level,
                    "strands": p.strands.iter().copied().collect::<Vec<_>>(),
                })
            })
            .collect();
        let attaches: Vec<serde_json::Value> = self
            .attaches
            .iter()
            .map(|a| {
                serde_json::json!({
                    "side": a.side.as_str(),
                    "strands": a.strands.iter().copied().collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "source": self.source.to_string(),
            "target": self.target.to_string(),
            "crossings": self.crossings,
            "pinches": pinches,
            "attaches": attaches,
        })
        .to_string()
    }

    /// Parses the JSON wire form. Labels are reconstructed as canonical
    /// witnesses over `square`, or over the cyclic square on the words'
    /// letters when no context is given.
    pub fn from_json(text: &str, square: Option<&LatinSquare>) -> Result<Self, BraidError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| BraidError::Format(e.to_string()))?;
        let word = |key: &str| -> Result<ParenWord, BraidError> {
            let s = v[key]
                .as_str()
                .ok_or_else(|| BraidError::Format(format!("missing {key}")))?;
            ParenWord::parse(s, false).map_err(BraidError::Word)
        };
        let source = word("source")?;
        let target = word("target")?;
        let crossings: Vec<i32> = v["crossings"]
            .as_array()
            .unwrap_or(&Vec::new())
            .iter()
            .map(|c| {
                c.as_i64()
                    .map(|x| x as i32)
                    .ok_or_else(|| BraidError::Format("crossings must be integers".into()))
            })
            .collect::<Result<_, _>>()?;
        let strand_set = |e: &serde_json::Value| -> Result<BTreeSet<usize>, BraidError> {
            e["strands"]
                .as_array()
                .ok_or_else(|| BraidError::Format("event needs strands".into()))?
                .iter()
                .map(|s| {
                    s.as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| BraidError::Format("strand ids must be integers".into()))
                })
                .collect()
        };
        let mut pinches = Vec::new();
        if let Some(list) = v["pinches"].as_array() {
            for e in list {
                let level = e["level"]
                    .as_u64()
                    .ok_or_else(|| BraidError::Format("pinch needs a level".into()))?
                    as usize;
                pinches.push(PinchEvent { level, strands: strand_set(e)? });
            }
        }
        let mut attaches = Vec::new();
        if let Some(list) = v["attaches"].as_array() {
            for e in list {
                let side = match e["side"].as_str() {
                    Some("top") => Side::Top,
                    Some("bottom") => Side::Bottom,
                    other => {
                        return Err(BraidError::Format(format!(
                            "attach side must be top or bottom, got {other:?}"
                        )))
                    }
                };
                attaches.push(AttachEvent { side, strands: strand_set(e)? });
            }
        }

        let square = match square {
            Some(sq) => sq.clone(),
            None => {
                let mut letters: Vec<String> = source.letters();
                letters.extend(target.letters());
                letters.sort();
                letters.dedup();
                LatinSquare::cyclic(letters)
                    .map_err(|e| BraidError::Format(e.to_string()))?
            }
        };
        let src_letters = source.letters();
        let tgt_letters = target.letters();
        let mut labels = Vec::with_capacity(src_letters.len());
        for (s, t) in src_letters.iter().zip(&tgt_letters) {
            if s == t {
                labels.push(TransExpr::identity());
            } else {
                let r = square
                    .right_divide(s, t)
                    .map_err(|e| BraidError::Skeleton(e.to_string()))?;
                labels.push(TransExpr::left(r));
            }
        }
        ModifiedBraid::from_parts(source, target, crossings, pinches, attaches, labels, square)
    }
}

/// The permutation induced by a crossing word on `n` strands:
/// `result[s]` is the 0-based final position of the strand that started
/// at 0-based position `s`. Signs are irrelevant to the permutation.
pub fn permutation_of(crossings: &[i32], n: usize) -> Vec<usize> {
    let mut occ: Vec<usize> = (0..n).collect();
    for &c in crossings {
        let j = c.unsigned_abs() as usize;
        occ.swap(j - 1, j);
    }
    let mut perm = vec![0usize; n];
    for (pos, &strand) in occ.iter().enumerate() {
        perm[strand] = pos;
    }
    perm
}

fn consecutive(sorted_positions: &[usize]) -> bool {
    sorted_positions
        .windows(2)
        .all(|w| w[1] == w[0] + 1)
}
