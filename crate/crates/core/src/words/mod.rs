//! Parenthesised words: leaf-labeled strictly binary trees with
//! concatenation as the free-magma product.
//!
//! A word of length n is a binary tree with n leaves; a single leaf is a
//! valid word. Text syntax is fully parenthesised binary terms such as
//! `((c(ab))d)` with single-character letters; non-binary groups like
//! `(c(ab)d)` are rejected unless normalization to left-nested form is
//! requested.

mod dyck;
mod translate;

pub use dyck::{from_dyck, to_dyck, DyckPath, Step};
pub use translate::{
    distort, permutation_via_translations, TransAtom, TransExpr, Translation,
};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    /// Text is not a well-formed parenthesised term.
    Parse(String),
    /// A group with three or more blocks, with normalization off.
    NonBinaryGroup(String),
    /// Single leaves have no block decomposition.
    NoDecomposition,
    /// Enumeration bound exceeded.
    Size(String),
    /// Leaf position out of range.
    Position(usize),
    /// A letter fell outside a map's domain or an alphabet.
    UnknownLetter(String),
    /// Per-leaf data has the wrong arity.
    Arity(usize, usize),
    /// Operation requires distinct letters.
    RepeatedLetters,
    /// Invalid Dyck path text or step sequence.
    Dyck(String),
    /// Grafting labels must be exactly 1..n.
    BadLabels(String),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::Parse(s) => write!(f, "parse error: {s}"),
            WordError::NonBinaryGroup(s) => {
                write!(f, "non-binary group {s} (pass normalize to left-nest it)")
            }
            WordError::NoDecomposition => write!(f, "a single leaf has no blocks"),
            WordError::Size(s) => write!(f, "size bound exceeded: {s}"),
            WordError::Position(i) => write!(f, "leaf position {i} out of range"),
            WordError::UnknownLetter(s) => write!(f, "letter outside domain: {s}"),
            WordError::Arity(got, want) => write!(f, "expected {want} per-leaf entries, got {got}"),
            WordError::RepeatedLetters => write!(f, "operation requires distinct letters"),
            WordError::Dyck(s) => write!(f, "invalid Dyck path: {s}"),
            WordError::BadLabels(s) => write!(f, "bad operadic labels: {s}"),
        }
    }
}

impl std::error::Error for WordError {}

/// A parenthesised word: a strictly binary tree with string-labeled
/// leaves. Repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParenWord {
    Leaf(String),
    Node(Box<ParenWord>, Box<ParenWord>),
}

impl ParenWord {
    pub fn leaf(s: impl Into<String>) -> Self {
        ParenWord::Leaf(s.into())
    }

    /// Free-magma product: a new root with the two words as blocks.
    pub fn concat(w1: ParenWord, w2: ParenWord) -> Self {
        ParenWord::Node(Box::new(w1), Box::new(w2))
    }

    /// The two blocks of the word (children of the root).
    pub fn decompose(&self) -> Result<(&ParenWord, &ParenWord), WordError> {
        match self {
            ParenWord::Leaf(_) => Err(WordError::NoDecomposition),
            ParenWord::Node(l, r) => Ok((l, r)),
        }
    }

    /// Number of leaves.
    pub fn len(&self) -> usize {
        match self {
            ParenWord::Leaf(_) => 1,
            ParenWord::Node(l, r) => l.len() + r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Leaf letters in left-to-right order.
    pub fn letters(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.len());
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<String>) {
        match self {
            ParenWord::Leaf(s) => out.push(s.clone()),
            ParenWord::Node(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
        }
    }

    pub fn has_distinct_letters(&self) -> bool {
        let ls = self.letters();
        ls.iter().enumerate().all(|(i, s)| !ls[..i].contains(s))
    }

    /// The tree with every leaf letter replaced via `f`, shape preserved.
    pub fn map_letters<F: Fn(usize, &str) -> String>(&self, f: &F) -> ParenWord {
        fn go<F: Fn(usize, &str) -> String>(w: &ParenWord, f: &F, i: &mut usize) -> ParenWord {
            match w {
                ParenWord::Leaf(s) => {
                    let out = ParenWord::Leaf(f(*i, s));
                    *i += 1;
                    out
                }
                ParenWord::Node(l, r) => {
                    let left = go(l, f, i);
                    let right = go(r, f, i);
                    ParenWord::concat(left, right)
                }
            }
        }
        go(self, f, &mut 0)
    }

    /// True when both words have the same tree shape, letters aside.
    pub fn same_shape(&self, other: &ParenWord) -> bool {
        match (self, other) {
            (ParenWord::Leaf(_), ParenWord::Leaf(_)) => true,
            (ParenWord::Node(a, b), ParenWord::Node(c, d)) => {
                a.same_shape(c) && b.same_shape(d)
            }
            _ => false,
        }
    }

    /// Replaces the leaf at `pos` (0-based, left to right) by `sub`.
    pub fn replace_leaf(&self, pos: usize, sub: &ParenWord) -> Result<ParenWord, WordError> {
        if pos >= self.len() {
            return Err(WordError::Position(pos));
        }
        fn go(w: &ParenWord, pos: usize, sub: &ParenWord) -> ParenWord {
            match w {
                ParenWord::Leaf(_) => sub.clone(),
                ParenWord::Node(l, r) => {
                    if pos < l.len() {
                        ParenWord::concat(go(l, pos, sub), (**r).clone())
                    } else {
                        ParenWord::concat((**l).clone(), go(r, pos - l.len(), sub))
                    }
                }
            }
        }
        Ok(go(self, pos, sub))
    }

    /// Deletes the leaf at `pos`; its sibling subtree replaces the parent.
    /// Fails on a single leaf.
    pub fn delete_leaf(&self, pos: usize) -> Result<ParenWord, WordError> {
        if pos >= self.len() {
            return Err(WordError::Position(pos));
        }
        fn go(w: &ParenWord, pos: usize) -> Option<ParenWord> {
            match w {
                ParenWord::Leaf(_) => None,
                ParenWord::Node(l, r) => {
                    if pos < l.len() {
                        match go(l, pos) {
                            Some(new_l) => Some(ParenWord::concat(new_l, (**r).clone())),
                            None => Some((**r).clone()),
                        }
                    } else {
                        match go(r, pos - l.len()) {
                            Some(new_r) => Some(ParenWord::concat((**l).clone(), new_r)),
                            None => Some((**l).clone()),
                        }
                    }
                }
            }
        }
        go(self, pos).ok_or(WordError::NoDecomposition)
    }

    /// Doubles the leaf at `pos` into a two-leaf block with the same letter.
    pub fn double_leaf(&self, pos: usize) -> Result<ParenWord, WordError> {
        let letter = self
            .letters()
            .get(pos)
            .cloned()
            .ok_or(WordError::Position(pos))?;
        let pair = ParenWord::concat(ParenWord::leaf(letter.clone()), ParenWord::leaf(letter));
        self.replace_leaf(pos, &pair)
    }

    /// Parses fully parenthesised text. With `normalize`, groups of three
    /// or more blocks (including a bare top-level letter run) are folded
    /// to left-nested binary form; without it they are rejected.
    pub fn parse(text: &str, normalize: bool) -> Result<Self, WordError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(WordError::Parse("empty input".into()));
        }
        let mut pos = 0usize;
        let items = parse_group(&chars, &mut pos, normalize)?;
        if pos != chars.len() {
            return Err(WordError::Parse(format!("trailing input at byte {pos}")));
        }
        fold_group(items, normalize)
    }
}

fn parse_group(chars: &[char], pos: &mut usize, normalize: bool) -> Result<Vec<ParenWord>, WordError> {
    let mut items = Vec::new();
    while *pos < chars.len() {
        match chars[*pos] {
            '(' => {
                *pos += 1;
                let inner = parse_group(chars, pos, normalize)?;
                if *pos >= chars.len() || chars[*pos] != ')' {
                    return Err(WordError::Parse("unbalanced parenthesis".into()));
                }
                *pos += 1;
                items.push(fold_group(inner, normalize)?);
            }
            ')' => break,
            c if c.is_alphanumeric() => {
                items.push(ParenWord::leaf(c.to_string()));
                *pos += 1;
            }
            c => return Err(WordError::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(items)
}

fn fold_group(items: Vec<ParenWord>, normalize: bool) -> Result<ParenWord, WordError> {
    let mut iter = items.into_iter();
    let first = iter.next().ok_or_else(|| WordError::Parse("empty group".into()))?;
    let rest: Vec<ParenWord> = iter.collect();
    match rest.len() {
        0 => Ok(first),
        1 => Ok(ParenWord::concat(first, rest.into_iter().next().unwrap())),
        _ if normalize => Ok(rest.into_iter().fold(first, ParenWord::concat)),
        _ => {
            let shown: Vec<String> = std::iter::once(&first)
                .chain(&rest)
                .map(|w| w.to_string())
                .collect();
            Err(WordError::NonBinaryGroup(format!("({})", shown.join(""))))
        }
    }
}

impl fmt::Display for ParenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParenWord::Leaf(s) => write!(f, "{s}"),
            ParenWord::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

/// All binary trees over the fixed leaf sequence `letters`. Cardinality is
/// the Catalan number of `letters.len() − 1`, bounded at 12.
pub fn enumerate_parenthesizations(letters: &[String]) -> Result<Vec<ParenWord>, WordError> {
    let n = letters.len();
    if n < 2 || n > 13 {
        return Err(WordError::Size(format!("need 2..=13 letters, got {n}")));
    }
    fn go(letters: &[String]) -> Vec<ParenWord> {
        if letters.len() == 1 {
            return vec![ParenWord::leaf(letters[0].clone())];
        }
        let mut out = Vec::new();
        for split in 1..letters.len() {
            for l in go(&letters[..split]) {
                for r in go(&letters[split..]) {
                    out.push(ParenWord::concat(l.clone(), r));
                }
            }
        }
        out
    }
    Ok(go(letters))
}

/// The unique magma-morphism extension of `f`: leaves map through `f`,
/// blocks multiply through `mul`.
pub fn eval_morphism<C, F, M>(w: &ParenWord, f: &F, mul: &M) -> Result<C, WordError>
where
    F: Fn(&str) -> Option<C>,
    M: Fn(&C, &C) -> C,
{
    match w {
        ParenWord::Leaf(s) => f(s).ok_or_else(|| WordError::UnknownLetter(s.clone())),
        ParenWord::Node(l, r) => {
            let a = eval_morphism(l, f, mul)?;
            let b = eval_morphism(r, f, mul)?;
            Ok(mul(&a, &b))
        }
    }
}

/// Operadic composition: replaces leaf `i` (1-based label) of `w` by `v`,
/// renumbering labels the standard way. `w` must be labeled exactly by
/// 1..n and `v` by 1..m; the result is labeled by 1..n+m−1.
pub fn graft(w: &ParenWord, i: usize, v: &ParenWord) -> Result<ParenWord, WordError> {
    let n = w.len();
    let m = v.len();
    check_operadic_labels(w)?;
    check_operadic_labels(v)?;
    if i < 1 || i > n {
        return Err(WordError::Position(i));
    }
    // Shift v's labels by i−1 and w's labels above i by m−1.
    let shifted_v = v.map_letters(&|_, s| {
        let k: usize = s.parse().expect("validated label");
        (k + i - 1).to_string()
    });
    let relabeled_w = w.map_letters(&|_, s| {
        let k: usize = s.parse().expect("validated label");
        if k > i {
            (k + m - 1).to_string()
        } else {
            s.to_string()
        }
    });
    let pos = relabeled_w
        .letters()
        .iter()
        .position(|s| s == &i.to_string())
        .expect("label i present");
    relabeled_w.replace_leaf(pos, &shifted_v)
}

fn check_operadic_labels(w: &ParenWord) -> Result<(), WordError> {
    let n = w.len();
    let mut seen = vec![false; n];
    for s in w.letters() {
        match s.parse::<usize>() {
            Ok(k) if k >= 1 && k <= n && !seen[k - 1] => seen[k - 1] = true,
            _ => {
                return Err(WordError::BadLabels(format!(
                    "expected each of 1..={n} exactly once, found {s}"
                )))
            }
        }
    }
    Ok(())
}

/// Catalan numbers by the standard recurrence; an independent oracle for
/// the enumeration count.
pub fn catalan(n: usize) -> u64 {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        c[k] = (0..k).map(|i| c[i] * c[k - 1 - i]).sum();
    }
    c[n]
}
