//! Influence rules deciding when a non-source actor adopts its predecessors'
//! collective opinion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational fraction value `q` with `1/2 <= q < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FractionValue {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FractionValue {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidRule("zero denominator".into()));
        }
        // 1/2 <= num/den < 1
        if num.checked_mul(2).is_none_or(|twice| twice < den) || num >= den {
            return Err(Error::InvalidRule(format!(
                "fraction value {num}/{den} outside [1/2, 1)"
            )));
        }
        let g = gcd(num, den);
        Ok(FractionValue {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    /// `floor(q * indegree)` in exact integer arithmetic.
    pub fn threshold(self, indegree: u32) -> u32 {
        ((self.num as u128 * indegree as u128) / self.den as u128) as u32
    }

    /// Decimal text when the expansion terminates, `None` otherwise.
    fn to_decimal(self) -> Option<String> {
        let mut den = self.den;
        let (mut twos, mut fives) = (0u32, 0u32);
        while den.is_multiple_of(2) {
            den /= 2;
            twos += 1;
        }
        while den.is_multiple_of(5) {
            den /= 5;
            fives += 1;
        }
        if den != 1 {
            return None;
        }
        let digits = twos.max(fives);
        let scaled = self.num as u128 * 10u128.pow(digits) / self.den as u128;
        Some(format!("0.{:0width$}", scaled, width = digits as usize))
    }
}

impl fmt::Display for FractionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parses `NUM/DEN` or a plain decimal such as `0.6` or `6e-1`, exactly.
impl FromStr for FractionValue {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::InvalidRule(format!("cannot parse fraction value {text:?}"));
        if let Some((num, den)) = text.split_once('/') {
            let num = num.trim().parse().map_err(|_| bad())?;
            let den = den.trim().parse().map_err(|_| bad())?;
            return FractionValue::new(num, den);
        }
        let (mantissa, exponent) = match text.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (text, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: u64 = digits.parse().map_err(|_| bad())?;
        let scale = frac_part.len() as i32 - exponent;
        let mut den: u64 = 1;
        if scale >= 0 {
            den = 10u64.checked_pow(scale as u32).ok_or_else(bad)?;
        } else {
            num = num
                .checked_mul(10u64.checked_pow((-scale) as u32).ok_or_else(bad)?)
                .ok_or_else(bad)?;
        }
        let g = gcd(num.max(1), den);
        FractionValue::new(num / g, den / g)
    }
}

/// How a non-source actor reacts to its predecessors' collective values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DecisionRule {
    /// Switch only when every predecessor agrees on the opposite value.
    #[default]
    Unanimity,
    /// Switch to `b` when more than `floor(q * |P(i)|)` predecessors hold `b`.
    Fraction(FractionValue),
}

impl DecisionRule {
    pub fn fraction(num: u64, den: u64) -> Result<Self> {
        FractionValue::new(num, den).map(DecisionRule::Fraction)
    }
}

impl fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionRule::Unanimity => f.write_str("unanimity"),
            DecisionRule::Fraction(q) => write!(f, "fraction({q})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RuleRepr {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<serde_json::Value>,
}

impl Serialize for DecisionRule {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            DecisionRule::Unanimity => RuleRepr {
                kind: "unanimity".into(),
                q: None,
            },
            DecisionRule::Fraction(q) => {
                let value = match q.to_decimal() {
                    Some(d) => {
                        serde_json::Value::Number(d.parse().expect("terminating decimal is a valid JSON number"))
                    }
                    None => serde_json::Value::String(q.to_string()),
                };
                RuleRepr {
                    kind: "fraction".into(),
                    q: Some(value),
                }
            }
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DecisionRule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RuleRepr::deserialize(deserializer)?;
        match repr.kind.as_str() {
            "unanimity" => Ok(DecisionRule::Unanimity),
            "fraction" => {
                let text = match repr.q {
                    Some(serde_json::Value::Number(n)) => n.to_string(),
                    Some(serde_json::Value::String(s)) => s,
                    _ => return Err(D::Error::custom("fraction rule needs a numeric \"q\"")),
                };
                text.parse::<FractionValue>()
                    .map(DecisionRule::Fraction)
                    .map_err(D::Error::custom)
            }
            other => Err(D::Error::custom(format!("unknown rule type {other:?}"))),
        }
    }
}
