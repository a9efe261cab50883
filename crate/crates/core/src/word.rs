//! Words in the free product of the coefficient group with a free group on
//! stable letters.
//!
//! Coefficients are formal symbols (the group `G` is abstract), so a
//! coefficient segment is a reduced word over those symbols. Relations among
//! coefficients live in [`crate::theory`]; [`MixedWord::free_reduce`] takes a
//! closed theory and rewrites every coefficient into its class representative
//! before cancelling.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::theory::ClosedTheory;

/// The exponent of a letter, always `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn is_neg(self) -> bool {
        self == Sign::Neg
    }
}

/// A generator name. Names are single lowercase letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub char);

impl Symbol {
    pub fn as_char(self) -> char {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_lowercase() => Ok(Symbol(c)),
            _ => Err(D::Error::custom(format!("invalid symbol name `{s}`"))),
        }
    }
}

/// A coefficient symbol or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffSymbol {
    pub name: Symbol,
    pub inverse: bool,
}

impl CoeffSymbol {
    pub fn new(name: char) -> Self {
        CoeffSymbol {
            name: Symbol(name),
            inverse: false,
        }
    }

    pub fn inv(name: char) -> Self {
        CoeffSymbol {
            name: Symbol(name),
            inverse: true,
        }
    }

    pub fn with_sign(name: Symbol, sign: Sign) -> Self {
        CoeffSymbol {
            name,
            inverse: sign.is_neg(),
        }
    }

    pub fn sign(self) -> Sign {
        if self.inverse {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn inverse(self) -> Self {
        CoeffSymbol {
            name: self.name,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for CoeffSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

/// An occurrence of a stable letter (`t`, `x`, `u`, ...) with exponent ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableLetter {
    pub name: Symbol,
    pub exponent: Sign,
}

impl StableLetter {
    pub fn new(name: char, exponent: Sign) -> Self {
        StableLetter {
            name: Symbol(name),
            exponent,
        }
    }

    pub fn inverse(self) -> Self {
        StableLetter {
            name: self.name,
            exponent: self.exponent.flip(),
        }
    }
}

impl fmt::Display for StableLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Sign::Pos => write!(f, "{}", self.name),
            Sign::Neg => write!(f, "{}^-1", self.name),
        }
    }
}

/// One letter of a mixed word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Coeff(CoeffSymbol),
    Stable(StableLetter),
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::Coeff(c) => Letter::Coeff(c.inverse()),
            Letter::Stable(s) => Letter::Stable(s.inverse()),
        }
    }

    pub fn name(self) -> Symbol {
        match self {
            Letter::Coeff(c) => c.name,
            Letter::Stable(s) => s.name,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Letter::Coeff(c) => c.sign(),
            Letter::Stable(s) => s.exponent,
        }
    }

    pub fn is_stable(self) -> bool {
        matches!(self, Letter::Stable(_))
    }

    fn cancels(self, other: Letter) -> bool {
        self.inverse() == other
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Coeff(c) => c.fmt(f),
            Letter::Stable(s) => s.fmt(f),
        }
    }
}

/// Stack-based free reduction; the result does not depend on the order in
/// which cancellations are performed.
fn reduce_letters<T: Copy + PartialEq>(letters: impl IntoIterator<Item = T>, inv: impl Fn(T) -> T) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for l in letters {
        if out.last().is_some_and(|&top| inv(top) == l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclically_reduce<T: Copy + PartialEq>(mut v: Vec<T>, inv: impl Fn(T) -> T) -> Vec<T> {
    let mut lo = 0;
    let mut hi = v.len();
    while hi - lo >= 2 && inv(v[lo]) == v[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    v.truncate(hi);
    v.drain(..lo);
    v
}

/// A word over coefficient symbols. The empty word is the identity of `G`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffWord(pub Vec<CoeffSymbol>);

impl CoeffWord {
    pub fn identity() -> Self {
        CoeffWord(Vec::new())
    }

    pub fn symbols(&self) -> &[CoeffSymbol] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> CoeffWord {
        CoeffWord(self.0.iter().rev().map(|c| c.inverse()).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &CoeffWord) -> CoeffWord {
        CoeffWord(reduce_letters(
            self.0.iter().chain(other.0.iter()).copied(),
            CoeffSymbol::inverse,
        ))
    }

    pub fn reduced(&self) -> CoeffWord {
        CoeffWord(reduce_letters(self.0.iter().copied(), CoeffSymbol::inverse))
    }

    /// Free reduction followed by cancellation around the ends, i.e. the
    /// shortest conjugate.
    pub fn cyclically_reduced(&self) -> CoeffWord {
        CoeffWord(cyclically_reduce(self.reduced().0, CoeffSymbol::inverse))
    }

    pub fn parse(text: &str) -> Result<CoeffWord, ParseError> {
        let alphabet = Alphabet::coefficients_only();
        let w = alphabet.parse(text)?;
        Ok(CoeffWord(
            w.letters
                .into_iter()
                .filter_map(|l| match l {
                    Letter::Coeff(c) => Some(c),
                    Letter::Stable(_) => None,
                })
                .collect(),
        ))
    }
}

impl fmt::Display for CoeffWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CoeffWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "1" {
            return Ok(CoeffWord::identity());
        }
        CoeffWord::parse(s)
    }
}

impl Serialize for CoeffWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoeffWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    Unexpected(char),
    #[error("expected `-1` after `^`")]
    BadExponent,
    #[error("undeclared symbol `{0}`")]
    Undeclared(char),
}

/// A syntax error with the character offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

/// Which letters are coefficients and which are stable letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    coefficients: BTreeSet<char>,
    stable: BTreeSet<char>,
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::with_stable(&['t'])
    }
}

impl Alphabet {
    /// Coefficients `a`–`i` plus the given stable letters.
    pub fn with_stable(stable: &[char]) -> Self {
        let stable: BTreeSet<char> = stable.iter().copied().collect();
        let coefficients = ('a'..='i').filter(|c| !stable.contains(c)).collect();
        Alphabet {
            coefficients,
            stable,
        }
    }

    fn coefficients_only() -> Self {
        Alphabet {
            coefficients: ('a'..='z').collect(),
            stable: BTreeSet::new(),
        }
    }

    /// Declares an extra coefficient symbol.
    pub fn add_coefficient(&mut self, c: char) {
        self.stable.remove(&c);
        self.coefficients.insert(c);
    }

    pub fn stable_letters(&self) -> impl Iterator<Item = char> + '_ {
        self.stable.iter().copied()
    }

    /// Parses juxtaposed tokens `⟨letter⟩` or `⟨letter⟩^-1` (also `⁻¹`).
    /// Whitespace between tokens is optional.
    pub fn parse(&self, text: &str) -> Result<MixedWord, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if !c.is_ascii_lowercase() {
                return Err(ParseError {
                    position: i,
                    kind: ParseErrorKind::Unexpected(c),
                });
            }
            let start = i;
            i += 1;
            let mut sign = Sign::Pos;
            if i < chars.len() && chars[i] == '^' {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'1') {
                    sign = Sign::Neg;
                    i += 3;
                } else {
                    return Err(ParseError {
                        position: i + 1,
                        kind: ParseErrorKind::BadExponent,
                    });
                }
            } else if i < chars.len() && chars[i] == '⁻' {
                if chars.get(i + 1) == Some(&'¹') {
                    sign = Sign::Neg;
                    i += 2;
                } else {
                    return Err(ParseError {
                        position: i + 1,
                        kind: ParseErrorKind::BadExponent,
                    });
                }
            }
            let letter = if self.stable.contains(&c) {
                Letter::Stable(StableLetter::new(c, sign))
            } else if self.coefficients.contains(&c) {
                Letter::Coeff(CoeffSymbol::with_sign(Symbol(c), sign))
            } else {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::Undeclared(c),
                });
            };
            letters.push(letter);
        }
        Ok(MixedWord {
            letters,
            cyclic: false,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("replacement for `{0}` is empty")]
    EmptyReplacement(Symbol),
    #[error("stable letter `{0}` does not occur in the word")]
    LetterAbsent(Symbol),
    #[error("`{letter}` occurs {count} times in the defining relator; expected exactly once")]
    NotUniquelySolvable { letter: Symbol, count: usize },
}

/// A word in `G ∗ F(stable letters)`.
///
/// When `cyclic` is set the word stands for a relator: reduction also cancels
/// around the ends, and rotations are considered equivalent by
/// [`MixedWord::cyclic_forms`]. The letters are kept in written order so that
/// edge numbering of the star graph follows the text.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedWord {
    letters: Vec<Letter>,
    cyclic: bool,
}

impl MixedWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        MixedWord {
            letters,
            cyclic: false,
        }
    }

    pub fn empty() -> Self {
        MixedWord::default()
    }

    pub fn parse(text: &str) -> Result<MixedWord, ParseError> {
        Alphabet::default().parse(text)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn into_cyclic(mut self) -> Self {
        self.cyclic = true;
        self
    }

    pub fn into_linear(mut self) -> Self {
        self.cyclic = false;
        self
    }

    pub fn stable_letters(&self) -> impl Iterator<Item = StableLetter> + '_ {
        self.letters.iter().filter_map(|l| match l {
            Letter::Stable(s) => Some(*s),
            Letter::Coeff(_) => None,
        })
    }

    /// Sum of `|ε_i|` over stable-letter occurrences.
    pub fn equation_length(&self) -> usize {
        self.stable_letters().count()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.stable_letters().map(|s| i64::from(s.exponent.as_i8())).sum()
    }

    pub fn is_singular(&self) -> bool {
        self.exponent_sum() == 0
    }

    pub fn inverse(&self) -> MixedWord {
        MixedWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            cyclic: self.cyclic,
        }
    }

    pub fn rotate_left(&self, k: usize) -> MixedWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(k % n);
        }
        MixedWord {
            letters,
            cyclic: self.cyclic,
        }
    }

    /// Splits the word at its stable letters: each occurrence paired with the
    /// coefficient segment that follows it. For a cyclic word the segment after
    /// the last occurrence wraps around to absorb the leading coefficients.
    /// The leading segment is returned separately for linear words (and is
    /// empty for cyclic ones).
    pub fn segments(&self) -> (CoeffWord, Vec<(StableLetter, CoeffWord)>) {
        let mut leading = Vec::new();
        let mut out: Vec<(StableLetter, CoeffWord)> = Vec::new();
        for l in &self.letters {
            match l {
                Letter::Stable(s) => out.push((*s, CoeffWord::identity())),
                Letter::Coeff(c) => match out.last_mut() {
                    Some((_, seg)) => seg.0.push(*c),
                    None => leading.push(*c),
                },
            }
        }
        if self.cyclic && !out.is_empty() {
            if let Some((_, seg)) = out.last_mut() {
                seg.0.append(&mut leading);
            }
        }
        (CoeffWord(leading), out)
    }

    /// Plain free reduction (no coefficient relations).
    pub fn reduce(&self) -> MixedWord {
        self.reduce_mapped(Some)
    }

    /// Rewrites coefficients by their class representatives under `th`, drops
    /// trivial ones, and cancels adjacent inverse pairs. Cyclic words are also
    /// cyclically reduced.
    pub fn free_reduce(&self, th: &ClosedTheory) -> MixedWord {
        self.reduce_mapped(|c| th.normalize_symbol(c))
    }

    fn reduce_mapped(&self, map: impl Fn(CoeffSymbol) -> Option<CoeffSymbol>) -> MixedWord {
        let mapped = self.letters.iter().filter_map(|l| match l {
            Letter::Coeff(c) => map(*c).map(Letter::Coeff),
            Letter::Stable(_) => Some(*l),
        });
        let mut letters = reduce_letters(mapped, Letter::inverse);
        if self.cyclic {
            letters = cyclically_reduce(letters, Letter::inverse);
        }
        MixedWord {
            letters,
            cyclic: self.cyclic,
        }
    }

    pub fn is_reduced(&self) -> bool {
        let adjacent = self.letters.windows(2).any(|w| w[0].cancels(w[1]));
        let wrap = self.cyclic
            && self.letters.len() >= 2
            && self.letters[0].cancels(self.letters[self.letters.len() - 1]);
        !adjacent && !wrap
    }

    /// All rotations of the word and of its inverse, each reduced.
    pub fn cyclic_forms(&self) -> BTreeSet<MixedWord> {
        let base = self.clone().into_cyclic().reduce();
        let inv = base.inverse();
        let n = base.len();
        let mut out = BTreeSet::new();
        if n == 0 {
            out.insert(base);
            return out;
        }
        for k in 0..n {
            out.insert(base.rotate_left(k));
            out.insert(inv.rotate_left(k));
        }
        out
    }

    /// The rotation with the lexicographically least printed form.
    pub fn canonical_rotation(&self) -> MixedWord {
        let n = self.letters.len();
        (0..n.max(1))
            .map(|k| self.rotate_left(k))
            .min_by_key(|w| w.to_string())
            .unwrap_or_else(|| self.clone())
    }

    /// Equality up to cyclic permutation and inversion (after reduction).
    pub fn cyclically_equal(&self, other: &MixedWord) -> bool {
        let other = other.clone().into_cyclic().reduce();
        self.cyclic_forms().contains(&other)
    }

    fn substitute_unchecked(&self, letter: Symbol, replacement: &MixedWord) -> MixedWord {
        let inv = replacement.inverse();
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match l {
                Letter::Stable(s) if s.name == letter => match s.exponent {
                    Sign::Pos => letters.extend_from_slice(&replacement.letters),
                    Sign::Neg => letters.extend_from_slice(&inv.letters),
                },
                _ => letters.push(*l),
            }
        }
        MixedWord {
            letters,
            cyclic: self.cyclic,
        }
        .reduce()
    }

    /// Replaces every occurrence of `letter^±1` by `replacement^±1` and
    /// reduces.
    pub fn apply_substitution(&self, letter: Symbol, replacement: &MixedWord) -> Result<MixedWord, WordError> {
        if replacement.reduce().is_empty() {
            return Err(WordError::EmptyReplacement(letter));
        }
        if !self.stable_letters().any(|s| s.name == letter) {
            return Err(WordError::LetterAbsent(letter));
        }
        Ok(self.substitute_unchecked(letter, replacement))
    }

    /// Solves `defining = 1` for `letter` and substitutes the solution into
    /// `self`. The defining relator must contain `letter^±1` exactly once.
    pub fn eliminate_variable(&self, defining: &MixedWord, letter: Symbol) -> Result<MixedWord, WordError> {
        let positions: Vec<usize> = defining
            .letters
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, Letter::Stable(s) if s.name == letter))
            .map(|(i, _)| i)
            .collect();
        if positions.len() != 1 {
            return Err(WordError::NotUniquelySolvable {
                letter,
                count: positions.len(),
            });
        }
        let rotated = defining.rotate_left(positions[0]);
        let head = rotated.letters[0];
        let rest = MixedWord::new(rotated.letters[1..].to_vec());
        // x W = 1 gives x = W^-1; x^-1 W = 1 gives x = W.
        let solution = match head.sign() {
            Sign::Pos => rest.inverse(),
            Sign::Neg => rest,
        };
        Ok(self.clone().into_cyclic().substitute_unchecked(letter, &solution))
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The length-nine relator `a t b t c t^-1 d t e t f t^-1 g t h t i t^-1`.
pub fn standard_relator() -> MixedWord {
    MixedWord::parse("a t b t c t^-1 d t e t f t^-1 g t h t i t^-1")
        .expect("standard relator parses")
        .into_cyclic()
}

#[derive(Serialize, Deserialize)]
struct LetterJson {
    kind: LetterKind,
    name: Symbol,
    sign: i8,
}

#[derive(Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum LetterKind {
    Coeff,
    Stable,
}

impl Serialize for MixedWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.letters.iter().map(|l| LetterJson {
            kind: if l.is_stable() {
                LetterKind::Stable
            } else {
                LetterKind::Coeff
            },
            name: l.name(),
            sign: l.sign().as_i8(),
        }))
    }
}

impl<'de> Deserialize<'de> for MixedWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<LetterJson>::deserialize(d)?;
        let letters = raw
            .into_iter()
            .map(|j| {
                let sign = Sign::from_i8(j.sign)
                    .ok_or_else(|| D::Error::custom(format!("sign must be 1 or -1, got {}", j.sign)))?;
                Ok(match j.kind {
                    LetterKind::Coeff => Letter::Coeff(CoeffSymbol::with_sign(j.name, sign)),
                    LetterKind::Stable => Letter::Stable(StableLetter {
                        name: j.name,
                        exponent: sign,
                    }),
                })
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        Ok(MixedWord::new(letters))
    }
}
