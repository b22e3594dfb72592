//! Binary words and block patterns `w₁^(q₁) … w_k^(q_k)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A binary word, most significant bit first. Leading zeros are significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<bool>);

impl Word {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Word(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    /// `0…01`: the word's value is one.
    pub fn is_unit(&self) -> bool {
        matches!(self.0.split_last(), Some((true, rest)) if rest.iter().all(|b| !b))
    }

    pub fn value(&self) -> BigUint {
        let mut v = BigUint::zero();
        for &b in &self.0 {
            v <<= 1;
            if b {
                v += 1u32;
            }
        }
        v
    }

    /// The word written `k` times in a row.
    pub fn repeat(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Binary digits of `n` without leading zeros (`"0"` for zero).
    pub fn of_value(n: &BigUint) -> Word {
        if n.is_zero() {
            return Word(vec![false]);
        }
        Word(n.to_str_radix(2).bytes().map(|b| b == b'1').collect())
    }

    pub fn split_at(&self, mid: usize) -> (Word, Word) {
        let (a, b) = self.0.split_at(mid);
        (Word(a.to_vec()), Word(b.to_vec()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Word(bits)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("`{other}` is not a binary digit"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A natural number given by the concatenation of repeated words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryPattern {
    blocks: Vec<(Word, u64)>,
}

impl BinaryPattern {
    pub fn new(blocks: Vec<(Word, u64)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("pattern has no blocks".into()));
        }
        for (w, q) in &blocks {
            if w.is_empty() {
                return Err(Error::InvalidArgument("pattern word is empty".into()));
            }
            if *q == 0 {
                return Err(Error::InvalidArgument(format!("word {w} repeated zero times")));
            }
        }
        if !blocks[0].0.bits()[0] {
            return Err(Error::InvalidArgument("pattern must start with a 1 bit".into()));
        }
        Ok(BinaryPattern { blocks })
    }

    pub fn blocks(&self) -> &[(Word, u64)] {
        &self.blocks
    }

    /// Number of bits once every block is expanded.
    pub fn bit_len(&self) -> u64 {
        self.blocks.iter().map(|(w, q)| w.len() as u64 * q).sum()
    }

    pub fn expand(&self) -> Word {
        let mut bits = Vec::with_capacity(self.bit_len() as usize);
        for (w, q) in &self.blocks {
            for _ in 0..*q {
                bits.extend_from_slice(w.bits());
            }
        }
        Word(bits)
    }

    pub fn value(&self) -> BigUint {
        self.expand().value()
    }

    /// `Σ p_i` and `Σ √(p_i q_i)`, the additive overhead terms.
    pub fn overhead_terms(&self) -> (f64, f64) {
        self.blocks.iter().fold((0.0, 0.0), |(a, b), (w, q)| {
            let p = w.len() as f64;
            (a + p, b + (p * *q as f64).sqrt())
        })
    }
}

impl FromStr for BinaryPattern {
    type Err = Error;

    /// `word^reps` blocks separated by commas, e.g. `101^3,01^5`; a block
    /// without `^` appears once.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(|block| {
                let block = block.trim();
                let (word, reps) = match block.split_once('^') {
                    Some((w, r)) => (
                        w,
                        r.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad repetition count in `{block}`")))?,
                    ),
                    None => (block, 1),
                };
                if word.is_empty() {
                    return Err(Error::Parse(format!("empty word in `{block}`")));
                }
                Ok((word.trim().parse::<Word>()?, reps))
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryPattern::new(blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for BinaryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, q)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}^{q}")?;
        }
        Ok(())
    }
}
