//! The fifteen two-letter words that can label a degree-two vertex in a
//! reduced diagram over the standard relator.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::theory::Relation;
use crate::word::{CoeffSymbol, CoeffWord, Sign, Symbol};

/// Which coefficient family a label belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// Labels over `a, d, g`.
    Adg,
    /// Labels over `c, f, i`.
    Cfi,
    /// Labels over `b, e, h`.
    Beh,
}

/// An element of the label set, stored as its index `0..15`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairLabel(u8);

const TABLE: [(char, char, Sign); 15] = [
    ('a', 'd', Sign::Pos),
    ('a', 'd', Sign::Neg),
    ('a', 'g', Sign::Pos),
    ('a', 'g', Sign::Neg),
    ('d', 'g', Sign::Pos),
    ('d', 'g', Sign::Neg),
    ('c', 'f', Sign::Pos),
    ('c', 'f', Sign::Neg),
    ('c', 'i', Sign::Pos),
    ('c', 'i', Sign::Neg),
    ('f', 'i', Sign::Pos),
    ('f', 'i', Sign::Neg),
    ('h', 'e', Sign::Neg),
    ('h', 'b', Sign::Neg),
    ('e', 'b', Sign::Neg),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not one of the fifteen degree-two labels")]
pub struct UnknownLabel(pub String);

impl PairLabel {
    pub const COUNT: usize = 15;

    pub fn all() -> impl Iterator<Item = PairLabel> {
        (0..Self::COUNT as u8).map(PairLabel)
    }

    pub fn from_index(i: usize) -> Option<PairLabel> {
        (i < Self::COUNT).then_some(PairLabel(i as u8))
    }

    pub fn index(self) -> usize {
        usize::from(self.0)
    }

    fn parts(self) -> (char, char, Sign) {
        TABLE[self.index()]
    }

    /// The word `x y^σ`.
    pub fn word(self) -> CoeffWord {
        let (x, y, s) = self.parts();
        CoeffWord(vec![CoeffSymbol::new(x), CoeffSymbol::with_sign(Symbol(y), s)])
    }

    /// The relation equivalent to the label being trivial: `x = y^-σ`.
    pub fn relation(self) -> Relation {
        let (x, y, s) = self.parts();
        Relation::new(x, CoeffSymbol::with_sign(Symbol(y), s.flip()))
    }

    /// `x = y^τ` as a label, if it is one.
    pub fn from_relation(r: &Relation) -> Option<PairLabel> {
        key_match(r.left.0, r.right.name.0, r.right.sign().flip())
    }

    /// The label of a two-letter word `x^α y^β` with `x ≠ y`.
    pub fn from_word(w: &CoeffWord) -> Option<PairLabel> {
        match w.symbols() {
            [x, y] if x.name != y.name => {
                let s = if x.sign() == y.sign() { Sign::Pos } else { Sign::Neg };
                key_match(x.name.0, y.name.0, s)
            }
            _ => None,
        }
    }

    pub fn family(self) -> Family {
        match self.0 {
            0..=5 => Family::Adg,
            6..=11 => Family::Cfi,
            _ => Family::Beh,
        }
    }

    pub fn letters(self) -> (char, char) {
        let (x, y, _) = self.parts();
        (x, y)
    }
}

fn key_match(x: char, y: char, s: Sign) -> Option<PairLabel> {
    PairLabel::all().find(|l| {
        let (a, b, t) = l.parts();
        t == s && ((a, b) == (x, y) || (a, b) == (y, x))
    })
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y, s) = self.parts();
        match s {
            Sign::Pos => write!(f, "{x}{y}"),
            Sign::Neg => write!(f, "{x}{y}^-1"),
        }
    }
}

impl FromStr for PairLabel {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('⁻', "^-").replace('¹', "1");
        PairLabel::all()
            .find(|l| l.to_string() == compact)
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}

impl Serialize for PairLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PairLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_forms() {
        let printed: Vec<String> = PairLabel::all().map(|l| l.to_string()).collect();
        assert_eq!(
            printed,
            [
                "ad", "ad^-1", "ag", "ag^-1", "dg", "dg^-1", "cf", "cf^-1", "ci", "ci^-1", "fi", "fi^-1",
                "he^-1", "hb^-1", "eb^-1"
            ]
        );
        for l in PairLabel::all() {
            assert_eq!(l.to_string().parse::<PairLabel>().unwrap(), l);
        }
        assert_eq!("ad⁻¹".parse::<PairLabel>().unwrap().to_string(), "ad^-1");
    }

    #[test]
    fn relations_round_trip() {
        for l in PairLabel::all() {
            assert_eq!(PairLabel::from_relation(&l.relation()), Some(l));
            assert_eq!(PairLabel::from_word(&l.word()), Some(l));
        }
        assert_eq!(PairLabel::all().next().unwrap().relation().to_string(), "a=d^-1");
        assert_eq!("he^-1".parse::<PairLabel>().unwrap().relation().to_string(), "h=e");
        assert_eq!(
            PairLabel::from_relation(&"d=a^-1".parse().unwrap()),
            Some("ad".parse().unwrap())
        );
        assert_eq!(PairLabel::from_relation(&"a=c".parse().unwrap()), None);
        // Inverse or rotated words give the same label.
        let w = CoeffWord::parse("d^-1 a^-1").unwrap();
        assert_eq!(PairLabel::from_word(&w), Some("ad".parse().unwrap()));
    }
}
