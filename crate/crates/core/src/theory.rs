//! Equalities between coefficient symbols and their closure.
//!
//! A theory is a set of relations `x = y^±1` together with symbols declared
//! trivial or nontrivial. Closing it runs a signed union-find: every symbol
//! has a node for itself and one for its inverse, every merge is mirrored on
//! the inverse nodes, and the identity is a node of its own. Because `G` is
//! torsion-free, a symbol equal to its own inverse is collapsed to the
//! identity. A nontrivial symbol landing in the identity class makes the
//! theory contradictory.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::word::{CoeffSymbol, CoeffWord, Sign, Symbol};

/// `left = right`, for instance `a=d^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub left: Symbol,
    pub right: CoeffSymbol,
}

impl Relation {
    pub fn new(left: char, right: CoeffSymbol) -> Self {
        Relation {
            left: Symbol(left),
            right,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("cannot parse relation `{0}`: expected `x=y` or `x=y^-1`")]
    BadRelation(String),
    #[error("theory is contradictory ({0})")]
    Contradictory(Witness),
}

impl FromStr for Relation {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TheoryError::BadRelation(s.to_string());
        let (l, r) = s.split_once('=').ok_or_else(bad)?;
        let l = CoeffWord::parse(l).map_err(|_| bad())?;
        let r = CoeffWord::parse(r).map_err(|_| bad())?;
        match (l.symbols(), r.symbols()) {
            ([l], [r]) if !l.inverse => Ok(Relation {
                left: l.name,
                right: *r,
            }),
            // Normalise `x^-1 = y^σ` to `x = y^-σ`.
            ([l], [r]) => Ok(Relation {
                left: l.name,
                right: r.inverse(),
            }),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Relation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// A theory before closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientTheory {
    pub symbols: BTreeSet<Symbol>,
    #[serde(default)]
    pub relations: Vec<Relation>,
    #[serde(default)]
    pub trivial: BTreeSet<Symbol>,
    #[serde(default)]
    pub nontrivial: BTreeSet<Symbol>,
}

impl CoefficientTheory {
    /// Free symbols, no relations, nothing declared.
    pub fn free(symbols: impl IntoIterator<Item = char>) -> Self {
        CoefficientTheory {
            symbols: symbols.into_iter().map(Symbol).collect(),
            relations: Vec::new(),
            trivial: BTreeSet::new(),
            nontrivial: BTreeSet::new(),
        }
    }

    /// `a`–`i` with `b = 1` and `a, c, d, f, g, i` nontrivial.
    pub fn base() -> Self {
        let mut th = CoefficientTheory::free('a'..='i');
        th.trivial.insert(Symbol('b'));
        th.nontrivial.extend("acdfgi".chars().map(Symbol));
        th
    }

    pub fn with_relation(mut self, r: Relation) -> Self {
        self.add_relation(r);
        self
    }

    pub fn with_relations(mut self, rs: impl IntoIterator<Item = Relation>) -> Self {
        for r in rs {
            self.add_relation(r);
        }
        self
    }

    pub fn add_relation(&mut self, r: Relation) {
        self.symbols.insert(r.left);
        self.symbols.insert(r.right.name);
        self.relations.push(r);
    }

    pub fn declare_trivial(&mut self, s: char) {
        self.symbols.insert(Symbol(s));
        self.trivial.insert(Symbol(s));
    }

    pub fn declare_nontrivial(&mut self, s: char) {
        self.symbols.insert(Symbol(s));
        self.nontrivial.insert(Symbol(s));
    }

    pub fn close(&self) -> ClosedTheory {
        ClosedTheory::build(self.clone())
    }
}

/// The element that was forced to be trivial: `base^power = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub symbol: Symbol,
    pub power: u32,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 1 {
            write!(f, "{} = 1", self.symbol)
        } else {
            write!(f, "{}^{} = 1", self.symbol, self.power)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Consistent,
    Contradictory(Witness),
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Status::Consistent => s.serialize_str("consistent"),
            Status::Contradictory(w) => {
                let mut m = BTreeMap::new();
                m.insert("contradictory", w.to_string());
                m.serialize(s)
            }
        }
    }
}

/// Normal form of a coefficient word modulo a closed theory.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordClass {
    Trivial,
    /// `base^exponent` with `base` a class representative known to be
    /// nontrivial and `exponent ≠ 0`.
    NontrivialPower { base: CoeffSymbol, exponent: i64 },
    /// A reduced word whose triviality is not decided by the theory.
    Unknown(CoeffWord),
}

impl WordClass {
    pub fn is_trivial(&self) -> bool {
        matches!(self, WordClass::Trivial)
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, WordClass::NontrivialPower { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, WordClass::Unknown(_))
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordClass::Trivial => write!(f, "trivial"),
            WordClass::NontrivialPower { base, exponent } => {
                if *exponent == 1 {
                    write!(f, "nontrivial ({base})")
                } else {
                    write!(f, "nontrivial ({}^{exponent})", base.name)
                }
            }
            WordClass::Unknown(w) => write!(f, "unknown ({w})"),
        }
    }
}

impl Serialize for WordClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let tag = match self {
            WordClass::Trivial => "trivial",
            WordClass::NontrivialPower { .. } => "nontrivial",
            WordClass::Unknown(_) => "unknown",
        };
        s.serialize_str(tag)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// The smaller root wins, so every root is the least index of its class.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

const IDENTITY: usize = 0;

fn inv_node(n: usize) -> usize {
    if n == IDENTITY {
        IDENTITY
    } else if n % 2 == 1 {
        n + 1
    } else {
        n - 1
    }
}

/// A theory after closure. Class representatives are fixed here.
#[derive(Clone, Debug)]
pub struct ClosedTheory {
    source: CoefficientTheory,
    index: BTreeMap<Symbol, usize>,
    symbols: Vec<Symbol>,
    root: Vec<usize>,
    status: Status,
}

impl PartialEq for ClosedTheory {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols && self.root == other.root && self.status == other.status
    }
}

impl ClosedTheory {
    fn node(&self, c: CoeffSymbol) -> Option<usize> {
        self.index.get(&c.name).map(|&i| 2 * i + 1 + usize::from(c.inverse))
    }

    fn symbol_of(&self, node: usize) -> Option<CoeffSymbol> {
        if node == IDENTITY {
            return None;
        }
        let i = (node - 1) / 2;
        Some(CoeffSymbol::with_sign(
            self.symbols[i],
            if node % 2 == 1 { Sign::Pos } else { Sign::Neg },
        ))
    }

    fn build(mut source: CoefficientTheory) -> ClosedTheory {
        let mentioned: Vec<Symbol> = source
            .relations
            .iter()
            .flat_map(|r| [r.left, r.right.name])
            .chain(source.trivial.iter().copied())
            .chain(source.nontrivial.iter().copied())
            .collect();
        source.symbols.extend(mentioned);
        let symbols: Vec<Symbol> = source.symbols.iter().copied().collect();
        let index: BTreeMap<Symbol, usize> = symbols.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let n = symbols.len();
        let mut uf = UnionFind::new(2 * n + 1);
        let pos = |i: usize| 2 * i + 1;
        let node = |c: CoeffSymbol| pos(index[&c.name]) + usize::from(c.inverse);
        let mut status = Status::Consistent;
        let nontrivial: Vec<usize> = source.nontrivial.iter().map(|s| index[s]).collect();

        let merge = |uf: &mut UnionFind, a: usize, b: usize| {
            uf.union(a, b);
            uf.union(inv_node(a), inv_node(b));
        };

        for s in &source.trivial {
            merge(&mut uf, pos(index[s]), IDENTITY);
        }
        let check = |uf: &mut UnionFind, status: &mut Status, preferred: Option<usize>, self_inv: &BTreeSet<usize>| {
            if *status != Status::Consistent {
                return;
            }
            let dead: Vec<usize> = nontrivial
                .iter()
                .copied()
                .filter(|&i| uf.find(pos(i)) == uf.find(IDENTITY))
                .collect();
            if dead.is_empty() {
                return;
            }
            let pick = preferred.filter(|p| dead.contains(p)).unwrap_or(dead[0]);
            *status = Status::Contradictory(Witness {
                symbol: symbols[pick],
                power: if self_inv.contains(&pick) { 2 } else { 1 },
            });
        };
        check(&mut uf, &mut status, None, &BTreeSet::new());

        for rel in &source.relations {
            let x = pos(index[&rel.left]);
            let y = node(rel.right);
            merge(&mut uf, x, y);
            // Torsion-freeness: s = s^-1 forces s = 1.
            let mut self_inv = BTreeSet::new();
            loop {
                let id = uf.find(IDENTITY);
                let hits: Vec<usize> = (0..n)
                    .filter(|&i| {
                        let p = uf.find(pos(i));
                        p == uf.find(pos(i) + 1) && p != id
                    })
                    .collect();
                if hits.is_empty() {
                    break;
                }
                for i in hits {
                    self_inv.insert(i);
                    merge(&mut uf, pos(i), IDENTITY);
                }
            }
            check(&mut uf, &mut status, Some(index[&rel.right.name]), &self_inv);
        }

        let root = (0..2 * n + 1).map(|v| uf.find(v)).collect();
        ClosedTheory {
            source,
            index,
            symbols,
            root,
            status,
        }
    }

    pub fn source(&self) -> &CoefficientTheory {
        &self.source
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_consistent(&self) -> bool {
        self.status == Status::Consistent
    }

    /// The class representative of `c`, or `None` when `c` is trivial.
    /// Symbols outside the theory are returned unchanged.
    pub fn normalize_symbol(&self, c: CoeffSymbol) -> Option<CoeffSymbol> {
        match self.node(c) {
            None => Some(c),
            Some(n) => self.symbol_of(self.root[n]),
        }
    }

    pub fn is_trivial(&self, s: Symbol) -> bool {
        self.normalize_symbol(CoeffSymbol::with_sign(s, Sign::Pos)).is_none()
    }

    /// Whether the class of `s` contains a symbol declared nontrivial.
    pub fn is_nontrivial(&self, s: Symbol) -> bool {
        let Some(n) = self.node(CoeffSymbol::with_sign(s, Sign::Pos)) else {
            return false;
        };
        let r = self.root[n];
        r != IDENTITY
            && self.source.nontrivial.iter().any(|t| {
                let m = self.index[t] * 2 + 1;
                self.root[m] == r || self.root[m + 1] == r
            })
    }

    pub fn equal(&self, a: CoeffSymbol, b: CoeffSymbol) -> bool {
        self.normalize_symbol(a) == self.normalize_symbol(b)
    }

    pub fn entails(&self, r: &Relation) -> Result<bool, TheoryError> {
        if let Status::Contradictory(w) = self.status {
            return Err(TheoryError::Contradictory(w));
        }
        Ok(self.equal(CoeffSymbol::with_sign(r.left, Sign::Pos), r.right))
    }

    /// Free reduction after replacing each symbol by its representative.
    pub fn reduce_word(&self, w: &CoeffWord) -> CoeffWord {
        CoeffWord(w.symbols().iter().filter_map(|&c| self.normalize_symbol(c)).collect()).reduced()
    }

    pub fn normalize_word(&self, w: &CoeffWord) -> WordClass {
        self.classify(self.reduce_word(w))
    }

    /// Like [`ClosedTheory::normalize_word`] but up to conjugacy, which is
    /// what matters for labels of closed paths.
    pub fn normalize_cyclic_word(&self, w: &CoeffWord) -> WordClass {
        self.classify(self.reduce_word(w).cyclically_reduced())
    }

    fn classify(&self, w: CoeffWord) -> WordClass {
        let syms = w.symbols();
        let Some(first) = syms.first() else {
            return WordClass::Trivial;
        };
        if syms.iter().all(|s| s.name == first.name) && self.is_nontrivial(first.name) {
            let exponent = syms.iter().map(|s| i64::from(s.sign().as_i8())).sum();
            return WordClass::NontrivialPower {
                base: CoeffSymbol::with_sign(first.name, Sign::Pos),
                exponent,
            };
        }
        WordClass::Unknown(w)
    }

    /// The equivalence classes, each listed as signed symbols; the trivial
    /// class comes first when present.
    pub fn partition(&self) -> Vec<Vec<CoeffSymbol>> {
        let mut classes: BTreeMap<usize, Vec<CoeffSymbol>> = BTreeMap::new();
        for (i, s) in self.symbols.iter().enumerate() {
            let n = 2 * i + 1;
            let r = self.root[n];
            // Each class appears once: skip the mirror class of a root we
            // already listed.
            let mirror = self.root[inv_node(r)];
            let key = r.min(mirror);
            let sym = if r == key {
                CoeffSymbol::with_sign(*s, Sign::Pos)
            } else {
                CoeffSymbol::with_sign(*s, Sign::Neg)
            };
            classes.entry(key).or_default().push(sym);
        }
        classes.into_values().collect()
    }

    /// Symbols whose class is the identity.
    pub fn trivial_symbols(&self) -> Vec<Symbol> {
        self.symbols.iter().copied().filter(|&s| self.is_trivial(s)).collect()
    }
}

impl Serialize for ClosedTheory {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            relations: &'a [Relation],
            trivial: Vec<Symbol>,
            nontrivial: &'a BTreeSet<Symbol>,
            classes: Vec<String>,
            status: Status,
        }
        let classes = self
            .partition()
            .into_iter()
            .filter(|c| c.len() > 1 || c.iter().all(|x| !self.is_trivial(x.name)))
            .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" = "))
            .collect();
        Out {
            relations: &self.source.relations,
            trivial: self.trivial_symbols(),
            nontrivial: &self.source.nontrivial,
            classes,
            status: self.status,
        }
        .serialize(s)
    }
}
