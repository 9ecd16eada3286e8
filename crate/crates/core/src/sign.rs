use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::exactla::Rat;

/// Declaration order gives the canonical total order `0 < - < +` used for
/// sorting sign vectors. The partial "sign order" is [`Sign::is_below`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Zero,
    Minus,
    Plus,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Zero, Sign::Minus, Sign::Plus];

    pub fn of(value: &Rat) -> Sign {
        if value.is_positive() {
            Sign::Plus
        } else if value.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn neg(self) -> Sign {
        match self {
            Sign::Zero => Sign::Zero,
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// `0 <= s` for every `s`; `+` and `-` are incomparable.
    pub fn is_below(self, other: Sign) -> bool {
        self == Sign::Zero || self == other
    }

    pub fn compose(self, other: Sign) -> Sign {
        if self == Sign::Zero {
            other
        } else {
            self
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '0' => Some(Sign::Zero),
            '-' | '−' => Some(Sign::Minus),
            '+' => Some(Sign::Plus),
            _ => None,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::neg(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn zeros(m: usize) -> Self {
        SignVector(vec![Sign::Zero; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }

    pub fn neg(&self) -> Self {
        SignVector(self.0.iter().map(|s| s.neg()).collect())
    }

    /// Entrywise sign order.
    pub fn is_below(&self, other: &SignVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.is_below(*b))
    }

    pub fn compose(&self, other: &SignVector) -> Self {
        SignVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.compose(*b))
                .collect(),
        )
    }

    /// Indices where the two vectors are nonzero and opposite.
    pub fn separation(&self, other: &SignVector) -> Vec<usize> {
        (0..self.len())
            .filter(|&e| self.0[e] != Sign::Zero && self.0[e] == other.0[e].neg())
            .collect()
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] == Sign::Zero).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != Sign::Zero).collect()
    }

    pub fn restrict(&self, indices: &[usize]) -> Self {
        SignVector(indices.iter().map(|&i| self.0[i]).collect())
    }

    pub fn pushed(&self, s: Sign) -> Self {
        let mut v = self.0.clone();
        v.push(s);
        SignVector(v)
    }

    /// Negates the entries listed in `set`.
    pub fn reorient(&self, set: &[usize]) -> Self {
        let mut v = self.0.clone();
        for &i in set {
            v[i] = v[i].neg();
        }
        SignVector(v)
    }

    /// New entry `i` is old entry `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        SignVector(perm.iter().map(|&p| self.0[p]).collect())
    }

    pub fn compact(&self) -> String {
        self.0.iter().map(|s| s.symbol()).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.symbol().to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SignVector {
    type Err = Error;

    /// Accepts `"-,-,0,-"`, `"--0-"` and the parenthesised form `"(-,-,0,-)"`.
    fn from_str(text: &str) -> Result<Self, Error> {
        let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::Parse(format!("not a sign vector: {text:?}"));
        let symbols: Vec<char> = if trimmed.contains(',') {
            trimmed
                .split(',')
                .map(|part| {
                    let mut chars = part.trim().chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => Ok(c),
                        _ => Err(bad()),
                    }
                })
                .collect::<Result<_, _>>()?
        } else {
            trimmed.chars().filter(|c| !c.is_whitespace()).collect()
        };
        symbols
            .into_iter()
            .map(|c| Sign::from_symbol(c).ok_or_else(bad))
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

impl From<Vec<Sign>> for SignVector {
    fn from(v: Vec<Sign>) -> Self {
        SignVector(v)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and examples: `sv("+0-")`.
pub fn sv(text: &str) -> SignVector {
    text.parse().expect("invalid sign vector literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_zero_minus_plus() {
        let mut v = vec![sv("+"), sv("-"), sv("0")];
        v.sort();
        assert_eq!(v, vec![sv("0"), sv("-"), sv("+")]);
    }

    #[test]
    fn sign_order() {
        assert!(sv("0-0-").is_below(&sv("--0-")));
        assert!(!sv("+").is_below(&sv("-")));
        assert!(sv("0-").is_below(&sv("+-")));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(sv("-,-,0,-"), sv("--0-"));
        assert_eq!(sv("(−,+)"), sv("-+"));
        assert_eq!(sv("").len(), 0);
        assert!("a,b".parse::<SignVector>().is_err());
        assert!("+-,0".parse::<SignVector>().is_err());
        assert_eq!(sv("+0-").to_string(), "+,0,-");
        assert_eq!(sv("+0-").compact(), "+0-");
    }

    #[test]
    fn composition_and_separation() {
        assert_eq!(sv("0+-").compose(&sv("-0+")), sv("-+-"));
        assert_eq!(sv("+-0").separation(&sv("-+0")), vec![0, 1]);
        assert_eq!(sv("+-0").reorient(&[0, 2]), sv("--0"));
        assert_eq!(sv("+-0").relabel(&[2, 0, 1]), sv("0+-"));
    }
}
