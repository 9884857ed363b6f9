//! Letter-wise translation actions on parenthesised words: the morphisms
//! of the category of parenthesised translated words.
//!
//! A [`TransExpr`] is a formal composition of left/right translation maps
//! (and their divisions) over a Latin square; a [`Translation`] applies
//! one expression per leaf, preserving the tree shape.

use std::fmt;

use crate::quasigroup::{LatinSquare, QuasigroupError};

use super::{ParenWord, WordError};

/// One translation-map symbol: L_a, R_a, or their inverses (divisions).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransAtom {
    L(String),
    R(String),
    LInv(String),
    RInv(String),
}

impl TransAtom {
    fn inverse(&self) -> TransAtom {
        match self {
            TransAtom::L(a) => TransAtom::LInv(a.clone()),
            TransAtom::LInv(a) => TransAtom::L(a.clone()),
            TransAtom::R(a) => TransAtom::RInv(a.clone()),
            TransAtom::RInv(a) => TransAtom::R(a.clone()),
        }
    }

    fn apply(&self, x: &str, sq: &LatinSquare) -> Result<String, QuasigroupError> {
        match self {
            TransAtom::L(a) => sq.left_translate(a, x),
            TransAtom::R(a) => sq.right_translate(a, x),
            TransAtom::LInv(a) => sq.left_divide(a, x),
            TransAtom::RInv(a) => sq.right_divide(a, x),
        }
    }
}

impl fmt::Display for TransAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransAtom::L(a) => write!(f, "L_{a}"),
            TransAtom::R(a) => write!(f, "R_{a}"),
            TransAtom::LInv(a) => write!(f, "Linv_{a}"),
            TransAtom::RInv(a) => write!(f, "Rinv_{a}"),
        }
    }
}

/// A composition of translation atoms, applied left to right. The empty
/// expression is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransExpr(pub Vec<TransAtom>);

impl TransExpr {
    pub fn identity() -> Self {
        TransExpr(Vec::new())
    }

    pub fn left(a: impl Into<String>) -> Self {
        TransExpr(vec![TransAtom::L(a.into())])
    }

    pub fn right(a: impl Into<String>) -> Self {
        TransExpr(vec![TransAtom::R(a.into())])
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Sequential composition: `self` first, then `next`.
    pub fn then(&self, next: &TransExpr) -> TransExpr {
        let mut atoms = self.0.clone();
        atoms.extend(next.0.iter().cloned());
        TransExpr(atoms)
    }

    /// The reversed expression with every atom inverted.
    pub fn inverse(&self) -> TransExpr {
        TransExpr(self.0.iter().rev().map(TransAtom::inverse).collect())
    }

    /// Evaluates at a letter. The empty expression never consults the
    /// square, so identity translations work on any letter.
    pub fn eval(&self, letter: &str, sq: &LatinSquare) -> Result<String, QuasigroupError> {
        let mut cur = letter.to_string();
        for atom in &self.0 {
            cur = atom.apply(&cur, sq)?;
        }
        Ok(cur)
    }

    /// Parses plan syntax: `id`, `L_a`, `R_b`, `Linv_a`, `Rinv_b`, or
    /// compositions joined by `.` in application order.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "id" {
            return Ok(TransExpr::identity());
        }
        let atoms = text
            .split('.')
            .map(|part| {
                let part = part.trim();
                if part == "id" {
                    return Err(WordError::Parse("id cannot appear inside a composition".into()));
                }
                let (kind, sym) = part
                    .split_once('_')
                    .ok_or_else(|| WordError::Parse(format!("bad translation atom {part:?}")))?;
                if sym.is_empty() {
                    return Err(WordError::Parse(format!("missing symbol in {part:?}")));
                }
                match kind {
                    "L" => Ok(TransAtom::L(sym.to_string())),
                    "R" => Ok(TransAtom::R(sym.to_string())),
                    "Linv" => Ok(TransAtom::LInv(sym.to_string())),
                    "Rinv" => Ok(TransAtom::RInv(sym.to_string())),
                    other => Err(WordError::Parse(format!("unknown map kind {other:?}"))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TransExpr(atoms))
    }
}

impl fmt::Display for TransExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// A PaT morphism: source and target words of the same shape, with one
/// translation expression per leaf realizing the letter change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub source: ParenWord,
    pub target: ParenWord,
    pub per_leaf: Vec<TransExpr>,
}

impl Translation {
    pub fn identity(w: &ParenWord) -> Self {
        Translation {
            source: w.clone(),
            target: w.clone(),
            per_leaf: vec![TransExpr::identity(); w.len()],
        }
    }

    /// Applies `self`, returning the target word.
    pub fn apply(&self) -> &ParenWord {
        &self.target
    }

    /// Sequential composition; `other` must start where `self` ends.
    pub fn compose(&self, other: &Translation) -> Result<Translation, WordError> {
        if other.source != self.target {
            return Err(WordError::Parse(format!(
                "translations do not chain: {} vs {}",
                self.target, other.source
            )));
        }
        Ok(Translation {
            source: self.source.clone(),
            target: other.target.clone(),
            per_leaf: self
                .per_leaf
                .iter()
                .zip(&other.per_leaf)
                .map(|(a, b)| a.then(b))
                .collect(),
        })
    }
}

/// Distorts a word letter-wise: applies `per_leaf[i]` to the i-th leaf
/// over `sq`, preserving the tree shape.
pub fn distort(
    w: &ParenWord,
    per_leaf: &[TransExpr],
    sq: &LatinSquare,
) -> Result<Translation, WordError> {
    if per_leaf.len() != w.len() {
        return Err(WordError::Arity(per_leaf.len(), w.len()));
    }
    let letters = w.letters();
    let mut new_letters = Vec::with_capacity(letters.len());
    for (expr, letter) in per_leaf.iter().zip(&letters) {
        let out = expr
            .eval(letter, sq)
            .map_err(|e| WordError::UnknownLetter(e.to_string()))?;
        new_letters.push(out);
    }
    let target = w.map_letters(&|i, _| new_letters[i].clone());
    Ok(Translation {
        source: w.clone(),
        target,
        per_leaf: per_leaf.to_vec(),
    })
}

/// Realizes a position permutation of a distinct-letter word by
/// translation maps.
///
/// `sigma[i]` is the position the letter at `i` moves to. The permutation
/// is factored cycle by cycle (cycles ordered by smallest element, each
/// factored into transpositions of cyclically adjacent positions applied
/// innermost first); each transposition contributes the solutions of
/// `x ⋄ a = b`, `b ⋄ y = a` as an `L_x` and an `R_y` atom.
pub fn permutation_via_translations(
    sq: &LatinSquare,
    w: &ParenWord,
    sigma: &[usize],
) -> Result<Translation, WordError> {
    let n = w.len();
    if sigma.len() != n {
        return Err(WordError::Arity(sigma.len(), n));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(WordError::Parse("sigma is not a permutation".into()));
        }
        seen[s] = true;
    }
    if !w.has_distinct_letters() {
        return Err(WordError::RepeatedLetters);
    }

    let mut per_leaf = vec![TransExpr::identity(); n];
    let mut current = w.letters();
    let mut swaps: Vec<(usize, usize)> = Vec::new();
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] || sigma[start] == start {
            visited[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut next = sigma[start];
        while next != start {
            visited[next] = true;
            cycle.push(next);
            next = sigma[next];
        }
        // (c_{k−2}, c_{k−1}), …, (c_0, c_1) realizes c_0→c_1→…→c_{k−1}→c_0.
        for j in (0..cycle.len() - 1).rev() {
            swaps.push((cycle[j], cycle[j + 1]));
        }
    }

    for (p, q) in swaps {
        let (u, v) = (current[p].clone(), current[q].clone());
        let (x, y) = sq
            .solve_transposition(&u, &v)
            .map_err(|e| WordError::UnknownLetter(e.to_string()))?;
        per_leaf[p].0.push(TransAtom::L(x));
        per_leaf[q].0.push(TransAtom::R(y));
        current.swap(p, q);
    }

    // The swaps realize sigma on positions.
    for (i, letter) in w.letters().iter().enumerate() {
        debug_assert_eq!(&current[sigma[i]], letter);
    }
    let target = w.map_letters(&|i, _| current[i].clone());
    Ok(Translation { source: w.clone(), target, per_leaf })
}
