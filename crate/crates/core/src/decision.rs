//! Layer-ordered decision propagation and the simple-majority outcome.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rule::DecisionRule;
use crate::society::{ActorId, Society};

/// One yes/no bit per actor. Text form is a `{0,1}` string whose leftmost
/// character is actor 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecisionVector {
    n: usize,
    /// Bit `k - 1` holds actor `k`.
    bits: u64,
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl DecisionVector {
    pub fn zeros(n: usize) -> Self {
        DecisionVector { n, bits: 0 }
    }

    pub fn ones(n: usize) -> Self {
        DecisionVector { n, bits: low_mask(n) }
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        if bits.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: bits.len(),
            });
        }
        let mut v = DecisionVector::zeros(n);
        for (k, &b) in bits.iter().enumerate() {
            if b {
                v.bits |= 1 << k;
            }
        }
        Ok(v)
    }

    /// `value` read as an `n`-bit binary numeral, most significant bit = actor 1.
    pub fn from_integer(n: usize, value: u64) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidParams(format!("cannot hold {n} bits")));
        }
        if value & !low_mask(n) != 0 {
            return Err(Error::InvalidParams(format!("{value} does not fit in {n} bits")));
        }
        let bits = value.reverse_bits() >> (64 - n);
        Ok(DecisionVector { n, bits })
    }

    pub fn to_integer(self) -> u64 {
        if self.n == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.n)
        }
    }

    pub(crate) fn from_mask(n: usize, bits: u64) -> Self {
        DecisionVector { n, bits }
    }

    pub(crate) fn mask(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.n
    }

    pub fn is_empty(self) -> bool {
        self.n == 0
    }

    /// Bit of actor `i`; `None` when out of range.
    pub fn get(self, i: ActorId) -> Option<bool> {
        (i.get() >= 1 && i.get() <= self.n).then(|| self.bits >> i.index() & 1 == 1)
    }

    pub fn count_ones(self) -> u32 {
        self.bits.count_ones()
    }

    /// `x + i` for `b = true`, `x - i` for `b = false`.
    pub fn with_bit(self, i: ActorId, b: bool) -> Result<Self> {
        if i.get() == 0 || i.get() > self.n {
            return Err(Error::InvalidActor {
                actor: i.get(),
                n: self.n,
            });
        }
        let bit = 1u64 << i.index();
        let bits = if b { self.bits | bit } else { self.bits & !bit };
        Ok(DecisionVector { n: self.n, bits })
    }
}

impl fmt::Display for DecisionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n {
            f.write_str(if self.bits >> k & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for DecisionVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text.len() > 64 {
            return Err(Error::Parse(format!("bitstring of length {} unsupported", text.len())));
        }
        let mut bits = 0u64;
        for (k, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << k,
                _ => return Err(Error::Parse(format!("invalid character {ch:?} in bitstring"))),
            }
        }
        Ok(DecisionVector { n: text.len(), bits })
    }
}

/// Simple-majority outcome over the collective decision vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Zero,
    Tie,
    One,
}

impl Outcome {
    pub fn resolve(self, ties: TieRule) -> Option<bool> {
        match (self, ties) {
            (Outcome::One, _) | (Outcome::Tie, TieRule::OnesWin) => Some(true),
            (Outcome::Zero, _) | (Outcome::Tie, TieRule::ZerosWin) => Some(false),
            (Outcome::Tie, TieRule::Reject) => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Zero => "0",
            Outcome::One => "1",
            Outcome::Tie => "tie",
        })
    }
}

/// What a majority tie resolves to on even-sized societies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    #[default]
    Reject,
    OnesWin,
    ZerosWin,
}

impl FromStr for TieRule {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "reject" => Ok(TieRule::Reject),
            "ones-win" => Ok(TieRule::OnesWin),
            "zeros-win" => Ok(TieRule::ZerosWin),
            other => Err(Error::InvalidParams(format!("unknown tie rule {other:?}"))),
        }
    }
}

impl Society {
    /// Collective vector for the raw mask `x` (bit `k - 1` = actor `k`).
    #[inline]
    pub(crate) fn propagate_mask(&self, x: u64) -> u64 {
        let mut c = x;
        match self.rule() {
            DecisionRule::Unanimity => {
                for &i in self.eval_order() {
                    let preds = self.pred_mask(i);
                    let agree = c & preds;
                    if agree == preds {
                        c |= 1 << i;
                    } else if agree == 0 {
                        c &= !(1 << i);
                    }
                }
            }
            DecisionRule::Fraction(q) => {
                for &i in self.eval_order() {
                    let preds = self.pred_mask(i);
                    let degree = preds.count_ones();
                    let threshold = q.threshold(degree);
                    let ones = (c & preds).count_ones();
                    if ones > threshold {
                        c |= 1 << i;
                    } else if degree - ones > threshold {
                        c &= !(1 << i);
                    }
                }
            }
        }
        c
    }

    #[inline]
    pub(crate) fn outcome_mask(&self, x: u64) -> Outcome {
        let ones = self.propagate_mask(x).count_ones() as usize;
        let zeros = self.n() - ones;
        match ones.cmp(&zeros) {
            std::cmp::Ordering::Greater => Outcome::One,
            std::cmp::Ordering::Less => Outcome::Zero,
            std::cmp::Ordering::Equal => Outcome::Tie,
        }
    }

    fn check_len(&self, x: DecisionVector) -> Result<()> {
        if x.len() != self.n() {
            Err(Error::LengthMismatch {
                expected: self.n(),
                got: x.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Collective decision vector `c(x)`, computed layer by layer from the
    /// already-final values of each actor's predecessors.
    pub fn propagate(&self, x: DecisionVector) -> Result<DecisionVector> {
        self.check_len(x)?;
        Ok(DecisionVector::from_mask(self.n(), self.propagate_mask(x.mask())))
    }

    /// Collective decision `C(x)`.
    pub fn decide(&self, x: DecisionVector) -> Result<Outcome> {
        self.check_len(x)?;
        Ok(self.outcome_mask(x.mask()))
    }
}
