//! The bijection between parenthesised words and Dyck paths.
//!
//! A word with n+1 leaves maps to a path of n up-steps and n down-steps
//! that never dips below the axis. The encoding is the preorder one: at
//! each internal node emit U, encode the left block, emit D, encode the
//! right block. Vertices reached by an up-step carry the letter tuple of
//! the block that step opens.

use std::collections::BTreeMap;
use std::fmt;

use super::{ParenWord, WordError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Up,
    Down,
}

/// A Dyck path with optional block labels on its vertices. Vertex `k` is
/// the lattice point after the first `k` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckPath {
    pub steps: Vec<Step>,
    pub labels: BTreeMap<usize, Vec<String>>,
}

impl DyckPath {
    /// Validates the prefix and balance conditions.
    pub fn new(steps: Vec<Step>) -> Result<Self, WordError> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += match s {
                Step::Up => 1,
                Step::Down => -1,
            };
            if height < 0 {
                return Err(WordError::Dyck(format!("prefix below axis at step {}", i + 1)));
            }
        }
        if height != 0 {
            return Err(WordError::Dyck("path does not return to the axis".into()));
        }
        Ok(DyckPath { steps, labels: BTreeMap::new() })
    }

    /// Parses text over the letters U and D.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let steps = text
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                other => Err(WordError::Dyck(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        DyckPath::new(steps)
    }

    /// Number of up-steps.
    pub fn semilength(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Up)).count()
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

/// Encodes a word as its Dyck path; the vertex after each U carries the
/// letters of the block that the corresponding parenthesis opens.
pub fn to_dyck(w: &ParenWord) -> DyckPath {
    fn go(w: &ParenWord, steps: &mut Vec<Step>, labels: &mut BTreeMap<usize, Vec<String>>) {
        if let ParenWord::Node(l, r) = w {
            steps.push(Step::Up);
            labels.insert(steps.len(), w.letters());
            go(l, steps, labels);
            steps.push(Step::Down);
            go(r, steps, labels);
        }
    }
    let mut steps = Vec::new();
    let mut labels = BTreeMap::new();
    go(w, &mut steps, &mut labels);
    DyckPath { steps, labels }
}

/// Decodes a path of semilength n back to the word over the given n+1
/// letters; inverse to [`to_dyck`].
pub fn from_dyck(path: &DyckPath, letters: &[String]) -> Result<ParenWord, WordError> {
    if letters.len() != path.semilength() + 1 {
        return Err(WordError::Arity(letters.len(), path.semilength() + 1));
    }
    // Re-validate in case the path was assembled by hand.
    DyckPath::new(path.steps.clone())?;

    struct Parser<'a> {
        steps: &'a [Step],
        pos: usize,
        letters: &'a [String],
        next_letter: usize,
    }
    impl Parser<'_> {
        fn parse(&mut self) -> Result<ParenWord, WordError> {
            if self.pos < self.steps.len() && self.steps[self.pos] == Step::Up {
                self.pos += 1;
                let left = self.parse()?;
                if self.pos >= self.steps.len() || self.steps[self.pos] != Step::Down {
                    return Err(WordError::Dyck("missing closing step".into()));
                }
                self.pos += 1;
                let right = self.parse()?;
                Ok(ParenWord::concat(left, right))
            } else {
                let letter = self
                    .letters
                    .get(self.next_letter)
                    .cloned()
                    .ok_or_else(|| WordError::Dyck("ran out of letters".into()))?;
                self.next_letter += 1;
                Ok(ParenWord::Leaf(letter))
            }
        }
    }
    let mut p = Parser { steps: &path.steps, pos: 0, letters, next_letter: 0 };
    let word = p.parse()?;
    if p.pos != path.steps.len() {
        return Err(WordError::Dyck("unconsumed steps".into()));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate_parenthesizations;

    fn w(text: &str) -> ParenWord {
        ParenWord::parse(text, false).unwrap()
    }

    #[test]
    fn smallest_encodings() {
        assert_eq!(to_dyck(&w("(ab)")).to_string(), "UD");
        assert_eq!(to_dyck(&w("((ab)c)")).to_string(), "UUDD");
        assert_eq!(to_dyck(&w("(a(bc))")).to_string(), "UDUD");
        assert_eq!(to_dyck(&ParenWord::leaf("a")).to_string(), "");
    }

    #[test]
    fn labels_carry_block_tuples() {
        let path = to_dyck(&w("((ab)c)"));
        assert_eq!(path.labels[&1], vec!["a", "b", "c"]);
        assert_eq!(path.labels[&2], vec!["a", "b"]);
    }

    #[test]
    fn path_validation() {
        assert!(DyckPath::parse("UDD").is_err());
        assert!(DyckPath::parse("UU").is_err());
        assert!(DyckPath::parse("UXD").is_err());
        assert!(DyckPath::parse("UUDD").is_ok());
        assert!(DyckPath::parse("").is_ok());
    }

    #[test]
    fn round_trip_small_words() {
        let letters: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        for word in enumerate_parenthesizations(&letters).unwrap() {
            let path = to_dyck(&word);
            assert_eq!(from_dyck(&path, &letters).unwrap(), word);
        }
        // Arity mismatch.
        let path = DyckPath::parse("UD").unwrap();
        assert!(from_dyck(&path, &letters).is_err());
    }

    #[test]
    fn encoding_separates_trees_and_hits_every_path() {
        // Over n-leaf trees, to_dyck is injective and its image is exactly
        // the set of semilength n−1 Dyck paths.
        for n in 2..=6usize {
            let letters: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let trees = enumerate_parenthesizations(&letters).unwrap();
            let mut images: Vec<String> =
                trees.iter().map(|t| to_dyck(t).to_string()).collect();
            images.sort();
            let before = images.len();
            images.dedup();
            assert_eq!(images.len(), before, "encoding is injective");
            let all_paths = all_dyck_paths(n - 1);
            assert_eq!(images.len(), all_paths.len());
            for p in all_paths {
                assert!(images.binary_search(&p).is_ok());
            }
        }
    }

    fn all_dyck_paths(n: usize) -> Vec<String> {
        fn go(ups: usize, downs: usize, height: usize, acc: &mut String, out: &mut Vec<String>) {
            if ups == 0 && downs == 0 {
                out.push(acc.clone());
                return;
            }
            if ups > 0 {
                acc.push('U');
                go(ups - 1, downs, height + 1, acc, out);
                acc.pop();
            }
            if downs > 0 && height > 0 {
                acc.push('D');
                go(ups, downs - 1, height - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, 0, &mut String::new(), &mut out);
        out.sort();
        out
    }
}
