//! Spectroscopic level notation such as `2p3/2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::Half;

/// Largest principal quantum number accepted anywhere in the crate.
pub const MAX_N: u32 = 100_000;

const LETTERS: [char; 6] = ['s', 'p', 'd', 'f', 'g', 'h'];

/// A fine-structure level `n l_j` of a one-electron atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Level {
    pub n: u32,
    pub l: u32,
    pub j: Half,
}

impl Level {
    pub fn new(n: u32, l: u32, j: Half) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidQuantumNumbers(format!("n must be in 1..={MAX_N}, got {n}")));
        }
        if l >= n {
            return Err(Error::InvalidQuantumNumbers(format!("l = {l} requires n > l, got n = {n}")));
        }
        let l2 = 2 * l as i32;
        if !(j.twice() == l2 + 1 || (l > 0 && j.twice() == l2 - 1)) {
            return Err(Error::InvalidQuantumNumbers(format!("j = {j} is not l ± 1/2 for l = {l}")));
        }
        Ok(Self { n, l, j })
    }

    pub fn letter(&self) -> char {
        LETTERS.get(self.l as usize).copied().unwrap_or('?')
    }

    /// `true` when `j = l + 1/2`.
    pub fn is_upper(&self) -> bool {
        self.j.twice() == 2 * self.l as i32 + 1
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.n, self.letter(), self.j)
    }
}

impl FromStr for Level {
    type Err = Error;

    /// Parses `<n><letter><j>`, e.g. `1s1/2`, `2p3/2`, `3d5/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 1, message: format!("state `{s}`: {msg}") };
        let t = s.trim();
        let digits = t.chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return Err(bad("expected principal quantum number"));
        }
        let n: u32 = t[..digits].parse().map_err(|_| bad("principal quantum number out of range"))?;
        let mut rest = t[digits..].chars();
        let letter = rest.next().ok_or_else(|| bad("missing orbital letter"))?;
        let l = LETTERS
            .iter()
            .position(|c| *c == letter.to_ascii_lowercase())
            .ok_or_else(|| bad("unknown orbital letter"))? as u32;
        let j_text = rest.as_str();
        if j_text.is_empty() {
            return Err(bad("missing j"));
        }
        let j: Half = j_text.parse().map_err(|_| bad("j is not a half-integer"))?;
        Level::new(n, l, j).map_err(|e| bad(&e.to_string()))
    }
}
