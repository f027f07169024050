//! Leg colors and formal integer combinations of colors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{CloverError, Result};

/// Name of the reserved star color used by the brane brackets.
pub const STAR: &str = "*";

/// A leg color: the name of a spanning-link component, or the reserved `*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(Arc<str>);

impl Color {
    pub fn new(name: &str) -> Result<Self> {
        if name == STAR || is_identifier(name) {
            Ok(Color(Arc::from(name)))
        } else {
            Err(CloverError::InvalidGraph(format!(
                "`{name}` is not a valid color name"
            )))
        }
    }

    pub fn star() -> Self {
        Color(Arc::from(STAR))
    }

    pub fn is_star(&self) -> bool {
        &*self.0 == STAR
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Color({})", self.0)
    }
}

impl FromStr for Color {
    type Err = CloverError;
    fn from_str(s: &str) -> Result<Self> {
        Color::new(s)
    }
}

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '#' | '~' | '\'')
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if is_name_start(c) => chars.all(is_name_char),
        _ => false,
    }
}

/// Convenience: build a list of colors from names, panicking on bad names.
pub fn colors(names: &[&str]) -> Vec<Color> {
    names
        .iter()
        .map(|n| Color::new(n).expect("valid color name"))
        .collect()
}

/// A nonzero formal integer combination of colors attached to one leg.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LegLabel {
    terms: BTreeMap<Color, BigInt>,
}

impl LegLabel {
    pub fn single(color: Color) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(color, BigInt::one());
        LegLabel { terms }
    }

    /// Builds a label from `(color, coefficient)` pairs, summing repeats.
    /// Fails when everything cancels.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Color, BigInt)>,
    {
        let mut map: BTreeMap<Color, BigInt> = BTreeMap::new();
        for (c, k) in terms {
            *map.entry(c).or_insert_with(BigInt::zero) += k;
        }
        map.retain(|_, k| !k.is_zero());
        if map.is_empty() {
            return Err(CloverError::InvalidGraph(
                "leg label must be a nonzero combination".into(),
            ));
        }
        Ok(LegLabel { terms: map })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Color, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The color, when the label is exactly `1·color`.
    pub fn as_single(&self) -> Option<&Color> {
        if self.terms.len() != 1 {
            return None;
        }
        let (c, k) = self.terms.iter().next()?;
        k.is_one().then_some(c)
    }

    pub fn coefficient(&self, color: &Color) -> BigInt {
        self.terms.get(color).cloned().unwrap_or_default()
    }
}

impl From<Color> for LegLabel {
    fn from(c: Color) -> Self {
        LegLabel::single(c)
    }
}

impl fmt::Display for LegLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, k)) in self.terms.iter().enumerate() {
            let mag = k.abs();
            if k.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for LegLabel {
    type Err = CloverError;

    /// Parses `x`, `2y`, `x+2y`, `-x`, `x-y`, `*`.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut terms = Vec::new();
        let err = |pos: usize, msg: &str| CloverError::parse(1, pos + 1, format!("{msg} in `{s}`"));
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == chars.len() {
            return Err(err(pos, "empty leg label"));
        }
        let mut first = true;
        while pos < chars.len() {
            let mut negative = false;
            if chars[pos] == '+' || chars[pos] == '-' {
                negative = chars[pos] == '-';
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos, "expected `+` or `-`"));
            }
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = if pos > start {
                let digits: String = chars[start..pos].iter().collect();
                digits
                    .parse::<BigInt>()
                    .map_err(|_| err(start, "bad integer"))?
            } else {
                BigInt::one()
            };
            if pos < chars.len() && chars[pos] == '*' && pos > start {
                // `2*x` is accepted as a synonym for `2x`
                if pos + 1 < chars.len() && is_name_start(chars[pos + 1]) {
                    pos += 1;
                }
            }
            let name_start = pos;
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            } else if pos < chars.len() && is_name_start(chars[pos]) {
                pos += 1;
                while pos < chars.len() && is_name_char(chars[pos]) {
                    pos += 1;
                }
            } else {
                return Err(err(pos, "expected a color name"));
            }
            let name: String = chars[name_start..pos].iter().collect();
            if negative {
                coeff = -coeff;
            }
            terms.push((Color::new(&name)?, coeff));
            first = false;
            skip_ws(&mut pos);
        }
        LegLabel::from_terms(terms).map_err(|_| err(0, "leg label cancels to zero"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_combinations() {
        let l: LegLabel = "x+2y".parse().unwrap();
        assert_eq!(l.coefficient(&Color::new("x").unwrap()), BigInt::from(1));
        assert_eq!(l.coefficient(&Color::new("y").unwrap()), BigInt::from(2));
        assert_eq!(l.to_string(), "x+2y");
        let l: LegLabel = "-x + y - 3z".parse().unwrap();
        assert_eq!(l.to_string(), "-x+y-3z");
        let l: LegLabel = "*".parse().unwrap();
        assert!(l.as_single().unwrap().is_star());
        let l: LegLabel = "x#~y".parse().unwrap();
        assert_eq!(l.as_single().unwrap().name(), "x#~y");
    }

    #[test]
    fn rejects_zero_and_garbage() {
        assert!("x-x".parse::<LegLabel>().is_err());
        assert!("".parse::<LegLabel>().is_err());
        assert!("2".parse::<LegLabel>().is_err());
        assert!("x y".parse::<LegLabel>().is_err());
        assert!(Color::new("1x").is_err());
    }
}
