//! Free groups as freely reduced words.

use std::fmt;

/// One letter of a free-group word: basis index (1-based) and exponent sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeLetter {
    pub generator: u32,
    pub inverse: bool,
}

impl FreeLetter {
    pub fn new(generator: u32, inverse: bool) -> Self {
        FreeLetter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        FreeLetter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(Vec<FreeLetter>);

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    pub fn letter(generator: u32, inverse: bool) -> Self {
        ReducedWord(vec![FreeLetter::new(generator, inverse)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = FreeLetter>) -> Self {
        let mut out: Vec<FreeLetter> = Vec::new();
        for l in letters {
            push_reducing(&mut out, l);
        }
        ReducedWord(out)
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        // cancel the longest suffix of self against the prefix of other
        let cancel = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(a, b)| a.inv() == **b)
            .count();
        let mut out = Vec::with_capacity(self.0.len() + other.0.len() - 2 * cancel);
        out.extend_from_slice(&self.0[..self.0.len() - cancel]);
        out.extend_from_slice(&other.0[cancel..]);
        ReducedWord(out)
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator).max().unwrap_or(0)
    }
}

fn push_reducing(out: &mut Vec<FreeLetter>, l: FreeLetter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Parses `e` or a dot-joined word such as `x1.x2^-1`.
pub fn parse_free(text: &str) -> Option<ReducedWord> {
    let text = text.trim();
    if text == "e" {
        return Some(ReducedWord::identity());
    }
    let letters = text
        .split('.')
        .map(|tok| {
            let (base, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let idx: u32 = base.strip_prefix('x')?.parse().ok()?;
            (idx >= 1).then_some(FreeLetter::new(idx, inverse))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(ReducedWord::reduce(letters))
}
