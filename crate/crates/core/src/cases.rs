//! Case analysis over the admissible subsets of the fifteen labels.
//!
//! A case is a set of labels assumed trivial in `G`. It is saturated when it
//! already contains every label its relations entail. The symmetry `σ` that
//! swaps `a ↔ c^-1`, `d ↔ i^-1`, `e ↔ h^-1`, `f ↔ g^-1`, `b ↔ b^-1`, combined
//! with `t ↔ t^-1` and inversion, maps the relator to a cyclic permutation of
//! itself, so a case and its image have the same answer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::curvature::{curvature_upper_bound, Curvature, CurvatureBound, CurvatureError};
use crate::label::PairLabel;
use crate::star_graph::{GraphError, StarGraph};
use crate::theory::{ClosedTheory, CoefficientTheory, Relation, Status, Witness};
use crate::weight::{check_weight_test, WeightError, WeightFunction, WeightReport};
use crate::word::{standard_relator, Alphabet, CoeffSymbol, Letter, MixedWord, Symbol, WordError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("labels are contradictory ({0})")]
    Contradictory(Witness),
    #[error("hypothesis table line {line}: {message}")]
    Table { line: usize, message: String },
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A consistent set of admitted labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseSpec {
    labels: BTreeSet<PairLabel>,
}

impl CaseSpec {
    pub fn new(labels: impl IntoIterator<Item = PairLabel>) -> Result<CaseSpec, CaseError> {
        let case = CaseSpec {
            labels: labels.into_iter().collect(),
        };
        if let Status::Contradictory(w) = case.theory().status() {
            return Err(CaseError::Contradictory(w));
        }
        Ok(case)
    }

    pub fn empty() -> CaseSpec {
        CaseSpec {
            labels: BTreeSet::new(),
        }
    }

    pub fn parse_list(text: &str) -> Result<CaseSpec, String> {
        let mut labels = BTreeSet::new();
        for tok in text.split([',', ';']).map(str::trim).filter(|t| !t.is_empty() && *t != "∅") {
            let l = tok
                .parse::<PairLabel>()
                .or_else(|_| {
                    tok.parse::<Relation>()
                        .ok()
                        .and_then(|r| PairLabel::from_relation(&r))
                        .ok_or(())
                })
                .map_err(|_| format!("`{tok}` is neither a label nor a label relation"))?;
            labels.insert(l);
        }
        CaseSpec::new(labels).map_err(|e| e.to_string())
    }

    pub fn labels(&self) -> &BTreeSet<PairLabel> {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.index()).collect()
    }

    pub fn relations(&self) -> Vec<Relation> {
        self.labels.iter().map(|l| l.relation()).collect()
    }

    pub fn theory(&self) -> ClosedTheory {
        CoefficientTheory::base().with_relations(self.relations()).close()
    }

    /// Every label whose relation the case entails.
    pub fn saturation(&self) -> BTreeSet<PairLabel> {
        let th = self.theory();
        PairLabel::all()
            .filter(|l| th.entails(&l.relation()).unwrap_or(false))
            .collect()
    }

    pub fn saturated(&self) -> CaseSpec {
        CaseSpec {
            labels: self.saturation(),
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == self.labels
    }

    pub fn contains_all(&self, other: &[PairLabel]) -> bool {
        other.iter().all(|l| self.labels.contains(l))
    }

    pub fn sigma(&self) -> CaseSpec {
        CaseSpec {
            labels: self.labels.iter().map(|&l| symmetry_action(l)).collect(),
        }
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for CaseSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.labels.iter())
    }
}

/// `σ` on coefficient symbols.
pub fn sigma_symbol(c: CoeffSymbol) -> CoeffSymbol {
    let image = match c.name.0 {
        'a' => 'c',
        'c' => 'a',
        'd' => 'i',
        'i' => 'd',
        'e' => 'h',
        'h' => 'e',
        'f' => 'g',
        'g' => 'f',
        other => other,
    };
    let flips = "abcdefghi".contains(c.name.0);
    CoeffSymbol {
        name: Symbol(image),
        inverse: c.inverse != flips,
    }
}

/// `σ` on labels, through their relations.
pub fn symmetry_action(l: PairLabel) -> PairLabel {
    let r = l.relation();
    let x = sigma_symbol(CoeffSymbol::with_sign(r.left, crate::word::Sign::Pos));
    let y = sigma_symbol(r.right);
    // x^α = y'^β with α = -1 for every symbol in a..i.
    let rel = Relation {
        left: x.name,
        right: if x.inverse { y.inverse() } else { y },
    };
    PairLabel::from_relation(&rel).expect("σ permutes the labels")
}

/// `σ` on words: coefficients by [`sigma_symbol`], stable letters inverted,
/// then the whole word inverted.
pub fn sigma_relator(w: &MixedWord) -> MixedWord {
    let letters: Vec<Letter> = w
        .letters()
        .iter()
        .map(|l| match l {
            Letter::Coeff(c) => Letter::Coeff(sigma_symbol(*c)),
            Letter::Stable(s) => Letter::Stable(s.inverse()),
        })
        .collect();
    let out = MixedWord::new(letters).inverse();
    if w.is_cyclic() {
        out.into_cyclic()
    } else {
        out
    }
}

/// The representative of `{case, σ(case)}` with the smaller index vector.
pub fn canonicalize(case: &CaseSpec) -> CaseSpec {
    let s = case.sigma();
    if s.indices() < case.indices() {
        s
    } else {
        case.clone()
    }
}

/// All consistent saturated subsets of the fifteen labels.
pub fn all_saturated_cases() -> &'static [CaseSpec] {
    static CELL: OnceLock<Vec<CaseSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        (0u32..1 << PairLabel::COUNT)
            .filter_map(|mask| {
                let labels = PairLabel::all().filter(|l| mask & (1 << l.index()) != 0);
                let case = CaseSpec::new(labels).ok()?;
                case.is_saturated().then_some(case)
            })
            .collect()
    })
}

/// Canonical saturated cases with exactly `n` labels, in index order.
pub fn enumerate_cases(n: usize) -> Vec<CaseSpec> {
    let set: BTreeSet<CaseSpec> = all_saturated_cases()
        .iter()
        .filter(|c| c.n() == n)
        .map(canonicalize)
        .collect();
    let mut v: Vec<CaseSpec> = set.into_iter().collect();
    v.sort_by_key(|c| c.indices());
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Weight,
    Curvature,
    Distribution,
    Exceptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableItem {
    pub table: String,
    pub kind: TableKind,
    pub number: u32,
    pub text: String,
    pub base: Vec<PairLabel>,
    pub options: Vec<PairLabel>,
}

impl TableItem {
    pub fn citation(&self) -> String {
        format!("{}({})", self.table, self.number)
    }

    /// One saturated case per option, or the base alone.
    pub fn cases(&self) -> Result<Vec<CaseSpec>, CaseError> {
        let sets: Vec<Vec<PairLabel>> = if self.options.is_empty() {
            vec![self.base.clone()]
        } else {
            self.options
                .iter()
                .map(|o| self.base.iter().copied().chain([*o]).collect())
                .collect()
        };
        sets.into_iter().map(|s| CaseSpec::new(s).map(|c| c.saturated())).collect()
    }
}

const TABLE_TEXT: &str = include_str!("../data/hypotheses.txt");

fn parse_label_or_relation(tok: &str, line: usize) -> Result<PairLabel, CaseError> {
    let err = |m: String| CaseError::Table { line, message: m };
    if let Ok(l) = tok.parse::<PairLabel>() {
        return Ok(l);
    }
    let r: Relation = tok.parse().map_err(|_| err(format!("cannot read `{tok}`")))?;
    PairLabel::from_relation(&r).ok_or_else(|| err(format!("`{tok}` is not a label relation")))
}

pub fn parse_tables(text: &str) -> Result<Vec<TableItem>, CaseError> {
    let mut out = Vec::new();
    let mut current: Option<(String, TableKind)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |m: &str| CaseError::Table { line, message: m.to_string() };
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(rest) = l.strip_prefix('[') {
            let (name, kind) = rest.split_once(']').ok_or_else(|| err("unclosed section header"))?;
            let kind = match kind.trim() {
                "weight" => TableKind::Weight,
                "curvature" => TableKind::Curvature,
                "distribution" => TableKind::Distribution,
                "exceptions" => TableKind::Exceptions,
                _ => return Err(err("unknown table kind")),
            };
            current = Some((name.trim().to_string(), kind));
            continue;
        }
        let (table, kind) = current.clone().ok_or_else(|| err("item before any section"))?;
        let fields: Vec<&str> = l.split('|').map(str::trim).collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(err("expected `number | relations [| options]`"));
        }
        let number: u32 = fields[0].parse().map_err(|_| err("bad item number"))?;
        let base = fields[1]
            .split(',')
            .map(|t| parse_label_or_relation(t.trim(), line))
            .collect::<Result<Vec<_>, _>>()?;
        let options = match fields.get(2) {
            Some(f) => f
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| parse_label_or_relation(t, line))
                .collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        let text = if options.is_empty() {
            fields[1].to_string()
        } else {
            format!("{} and R ∈ {{{}}}", fields[1], fields[2])
        };
        out.push(TableItem {
            table,
            kind,
            number,
            text,
            base,
            options,
        });
    }
    Ok(out)
}

pub fn tables() -> &'static [TableItem] {
    static CELL: OnceLock<Vec<TableItem>> = OnceLock::new();
    CELL.get_or_init(|| parse_tables(TABLE_TEXT).expect("bundled tables parse"))
}

/// Every case of every table, keyed by canonical form.
fn table_index() -> &'static BTreeMap<CaseSpec, Vec<&'static TableItem>> {
    static CELL: OnceLock<BTreeMap<CaseSpec, Vec<&'static TableItem>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut m: BTreeMap<CaseSpec, Vec<&'static TableItem>> = BTreeMap::new();
        for item in tables() {
            for c in item.cases().expect("bundled table items are consistent") {
                let v = m.entry(canonicalize(&c)).or_default();
                if !v.iter().any(|i| std::ptr::eq(*i, item)) {
                    v.push(item);
                }
            }
        }
        m
    })
}

pub fn table_matches(case: &CaseSpec) -> Vec<&'static TableItem> {
    table_index()
        .get(&canonicalize(&case.saturated()))
        .cloned()
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionItem {
    pub item: u32,
    pub text: String,
    pub cases: Vec<CaseSpec>,
}

/// The open cases with their item numbers, each expanded over its options.
pub fn open_cases() -> Vec<ExceptionItem> {
    tables()
        .iter()
        .filter(|t| t.kind == TableKind::Exceptions)
        .map(|t| ExceptionItem {
            item: t.number,
            text: t.text.clone(),
            cases: t.cases().expect("bundled exceptions are consistent"),
        })
        .collect()
}

/// A two-relator presentation equivalent to the standard relator under some
/// relations, together with a weight function for its star graph.
#[derive(Clone, Debug)]
pub struct WeightPattern {
    pub name: &'static str,
    pub core: [PairLabel; 3],
    pub r1: &'static str,
    pub r2: &'static str,
    pub zero_edges: &'static [&'static str],
}

impl WeightPattern {
    pub fn relators(&self) -> Result<[MixedWord; 2], CaseError> {
        let ab = Alphabet::with_stable(&['t', 'x']);
        let parse = |s: &str| {
            ab.parse(s).map(MixedWord::into_cyclic).map_err(|e| CaseError::Table {
                line: 0,
                message: e.to_string(),
            })
        };
        Ok([parse(self.r1)?, parse(self.r2)?])
    }

    pub fn graph(&self) -> Result<StarGraph, CaseError> {
        Ok(StarGraph::build(&self.relators()?)?)
    }

    pub fn weights(&self, g: &StarGraph) -> Result<WeightFunction, CaseError> {
        let zero = Rational::from_integer(0);
        let named: Vec<(&str, Rational)> = self.zero_edges.iter().map(|e| (*e, zero)).collect();
        Ok(WeightFunction::from_names(g, &named, Rational::from_integer(1))?)
    }

    /// Eliminating `x` gives back the standard relator, modulo the core.
    pub fn is_equivalent(&self, th: &ClosedTheory) -> Result<bool, CaseError> {
        let [r1, r2] = self.relators()?;
        let w = r1.eliminate_variable(&r2, Symbol('x'))?;
        Ok(w.free_reduce(th).cyclically_equal(&standard_relator().free_reduce(th)))
    }

    pub fn core_case(&self) -> CaseSpec {
        CaseSpec::new(self.core).expect("core is consistent")
    }
}

fn labels3(a: &str, b: &str, c: &str) -> [PairLabel; 3] {
    [a, b, c].map(|s| s.parse().expect("known label"))
}

pub fn weight_patterns() -> Vec<WeightPattern> {
    vec![
        WeightPattern {
            name: "a=d^-1, a=g^-1, d=g",
            core: labels3("ad", "ag", "dg^-1"),
            r1: "x c t x^-1 e t f t x^-1 h t i",
            r2: "x^-1 t^-1 a t t",
            zero_edges: &["γ1", "γ7", "η1", "η2"],
        },
        WeightPattern {
            name: "a=d^-1, a=g, d=g^-1",
            core: labels3("ad", "ag^-1", "dg"),
            r1: "x t c x^-1 e t f x h t i",
            r2: "x^-1 t^-1 a t",
            zero_edges: &["γ2", "γ3", "η2", "η3"],
        },
        WeightPattern {
            name: "a=d, a=g^-1, d=g^-1",
            core: labels3("ad^-1", "ag", "dg"),
            r1: "i x t c x e t f x^-1 h t",
            r2: "x^-1 t^-1 a t",
            zero_edges: &["γ4", "γ5", "η2", "η3"],
        },
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseVerdict {
    AsphericalWeightTest,
    AsphericalCurvature,
    Exceptional,
    DistributionNeeded,
}

impl CaseVerdict {
    pub fn is_aspherical(self) -> bool {
        matches!(self, CaseVerdict::AsphericalWeightTest | CaseVerdict::AsphericalCurvature)
    }
}

impl fmt::Display for CaseVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseVerdict::AsphericalWeightTest => "ASPHERICAL_WEIGHT_TEST",
            CaseVerdict::AsphericalCurvature => "ASPHERICAL_CURVATURE",
            CaseVerdict::Exceptional => "EXCEPTIONAL",
            CaseVerdict::DistributionNeeded => "DISTRIBUTION_NEEDED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightEvidence {
    pub pattern: String,
    pub via_symmetry: bool,
    pub weights: serde_json::Value,
    pub report: WeightReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    #[serde(rename = "admitted")]
    pub case: CaseSpec,
    pub canonical: CaseSpec,
    #[serde(rename = "N")]
    pub n: usize,
    pub verdict: CaseVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exception_item: Option<u32>,
    pub bound: Curvature,
    pub curvature: CurvatureBound,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightEvidence>,
    #[serde(rename = "citation")]
    pub citations: Vec<String>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn summary(&self) -> String {
        let mut s = format!("{} {}", self.case, self.verdict);
        if let Some(i) = self.exception_item {
            s.push_str(&format!("({i})"));
        }
        s.push_str(&format!(" bound {}", self.bound));
        if !self.citations.is_empty() {
            s.push_str(&format!(" [{}]", self.citations.join(", ")));
        }
        s
    }
}

fn try_weight(case: &CaseSpec, max_len: usize) -> Result<Option<WeightEvidence>, CaseError> {
    for p in weight_patterns() {
        for (candidate, via_symmetry) in [(case.clone(), false), (case.sigma(), true)] {
            if !candidate.contains_all(&p.core) {
                continue;
            }
            let th = candidate.theory();
            if !p.is_equivalent(&th)? {
                continue;
            }
            let g = p.graph()?;
            let theta = p.weights(&g)?;
            let report = check_weight_test(&g, &theta, &th, max_len)?;
            if report.passes() {
                return Ok(Some(WeightEvidence {
                    pattern: p.name.to_string(),
                    via_symmetry,
                    weights: theta.to_json(&g),
                    report,
                }));
            }
        }
    }
    Ok(None)
}

pub const DEFAULT_MAX_CYCLE_LEN: usize = 4;

pub fn classify(case: &CaseSpec) -> Result<ClassificationReport, CaseError> {
    classify_with(case, DEFAULT_MAX_CYCLE_LEN)
}

pub fn classify_with(case: &CaseSpec, max_len: usize) -> Result<ClassificationReport, CaseError> {
    let case = case.saturated();
    let canonical = canonicalize(&case);
    let th = case.theory();
    let curvature = curvature_upper_bound(&standard_relator(), &th)?;
    let bound = curvature.bound;
    let matches = table_matches(&case);
    let citations: Vec<String> = matches.iter().map(|m| m.citation()).collect();
    let mut notes = Vec::new();
    let report = |verdict, exception_item, weight, notes| ClassificationReport {
        case: case.clone(),
        canonical: canonical.clone(),
        n: case.n(),
        verdict,
        exception_item,
        bound,
        curvature: curvature.clone(),
        weight,
        citations: citations.clone(),
        notes,
    };

    if let Some(ev) = try_weight(&case, max_len)? {
        return Ok(report(CaseVerdict::AsphericalWeightTest, None, Some(ev), notes));
    }
    let third = Rational::new(-1, 3);
    if bound.value() <= third {
        return Ok(report(CaseVerdict::AsphericalCurvature, None, None, notes));
    }
    let curvature_cited = matches.iter().any(|m| m.kind == TableKind::Curvature);
    if curvature_cited && bound.value() <= Rational::from_integer(0) {
        return Ok(report(CaseVerdict::AsphericalCurvature, None, None, notes));
    }
    if curvature_cited {
        notes.push(format!("listed under a curvature table but the bound is {bound}"));
    }
    if matches.iter().any(|m| m.kind == TableKind::Weight) {
        notes.push("listed under a weight table but no recorded weight function passes".into());
    }
    if let Some(item) = matches.iter().find(|m| m.kind == TableKind::Exceptions) {
        return Ok(report(CaseVerdict::Exceptional, Some(item.number), None, notes));
    }
    Ok(report(CaseVerdict::DistributionNeeded, None, None, notes))
}
