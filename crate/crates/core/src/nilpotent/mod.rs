//! Free nilpotent groups of finite rank and class, in Hall-basis normal
//! form, and their exponent-`m` truncations as finite groups.

mod collect;
mod hall;
mod magnus;

pub use collect::{free_nilpotent_group, word_element, CollectedWord, Collector};
pub use hall::{witt_number, BasicCommutator, HallBasis};
pub use magnus::{magnus_equal, MagnusSeries};

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A generator `x_k` (1-based) or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        assert!(generator >= 1, "generators are numbered from 1");
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.generator, if self.inverse { "'" } else { "" })
    }
}

/// Inverse of a word.
pub fn invert_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// A word such as `x1 x2' x1` (whitespace optional between letters,
/// `'` marking an inverse). The empty string and `1` denote the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = |at: usize, msg: &str| Error::ParseError { location: format!("word {s:?}, offset {at}"), message: msg.into() };
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::default());
        }
        let bytes = t.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'*' | b'.' => i += 1,
                b'x' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    let n: usize = t[start..j].parse().map_err(|_| err(i, "expected a generator number after 'x'"))?;
                    if n == 0 {
                        return Err(err(i, "generators are numbered from 1"));
                    }
                    let inverse = j < bytes.len() && bytes[j] == b'\'';
                    out.push(Letter::new(n, inverse));
                    i = if inverse { j + 1 } else { j };
                }
                _ => return Err(err(i, "unexpected character")),
            }
        }
        Ok(Word(out))
    }
}
