//! Curvature of regions in reduced diagrams.
//!
//! A `k`-gon with vertex degrees `d_1, ..., d_k` carries curvature
//! `(2 - k) + Σ 2/d_i`, measured in units of `π`. Every region of a diagram
//! over the standard relator is a 9-gon. A corner can only have degree 2 if
//! the length-two cycle through it has a trivial label, and two adjacent
//! corners can only both have degree 2 if their pairings come from the same
//! neighbouring region along a shared pair of edges.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::label::PairLabel;
use crate::theory::{ClosedTheory, TheoryError};
use crate::word::{CoeffWord, MixedWord, Sign};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("vertex degree {0} is below 2")]
    InvalidDegree(u32),
    #[error("a region needs at least one corner")]
    NoCorners,
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// A curvature value in units of `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Curvature(pub Rational);

impl Curvature {
    pub fn value(self) -> Rational {
        self.0
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == Rational::from_integer(0) {
            write!(f, "0")
        } else {
            write!(f, "{} π", self.0)
        }
    }
}

impl Serialize for Curvature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Curvature", 2)?;
        st.serialize_field("num", self.0.numer())?;
        st.serialize_field("den", self.0.denom())?;
        st.end()
    }
}

pub fn region_curvature(degrees: &[u32]) -> Result<Curvature, CurvatureError> {
    if degrees.is_empty() {
        return Err(CurvatureError::NoCorners);
    }
    if let Some(&d) = degrees.iter().find(|&&d| d < 2) {
        return Err(CurvatureError::InvalidDegree(d));
    }
    let k = degrees.len() as i64;
    let sum: Rational = degrees.iter().map(|&d| Rational::new(2, i64::from(d))).sum();
    Ok(Curvature(Rational::from_integer(2 - k) + sum))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Backward,
}

/// A way for corner `k` to have degree 2: edge `k` followed by edge `partner`
/// in the given direction closes up with a trivial label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerPairing {
    pub partner: usize,
    pub orientation: Orientation,
    pub label: CoeffWord,
    pub pair: Option<PairLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub position: usize,
    pub name: String,
    pub admissible: Vec<CornerPairing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvatureBound {
    pub corners: Vec<Corner>,
    /// Adjacent corners that can each have degree 2 but not both at once.
    pub exclusions: Vec<(String, String)>,
    /// A largest set of corners that can simultaneously have degree 2.
    pub degree_two: Vec<String>,
    pub degrees: Vec<u32>,
    pub bound: Curvature,
}

impl CurvatureBound {
    pub fn max_degree_two(&self) -> usize {
        self.degree_two.len()
    }
}

struct Setup {
    n: usize,
    eps: Vec<Sign>,
    seg: Vec<CoeffWord>,
}

impl Setup {
    fn new(relator: &MixedWord) -> Result<Setup, CurvatureError> {
        let (_, segs) = relator.clone().into_cyclic().segments();
        if segs.is_empty() {
            return Err(CurvatureError::NoCorners);
        }
        Ok(Setup {
            n: segs.len(),
            eps: segs.iter().map(|(s, _)| s.exponent).collect(),
            seg: segs.into_iter().map(|(_, w)| w).collect(),
        })
    }

    fn pairings(&self, k: usize, th: &ClosedTheory) -> Vec<CornerPairing> {
        let n = self.n;
        let next = |i: usize| (i + 1) % n;
        let mut out = Vec::new();
        for j in 0..n {
            // Edge k runs ℓ^-ε_k → ℓ^ε_{k+1}.
            if self.eps[j] == self.eps[next(k)].flip() && self.eps[next(j)] == self.eps[k].flip() {
                let label = self.seg[k].mul(&self.seg[j]);
                if th.normalize_cyclic_word(&label).is_trivial() {
                    out.push(CornerPairing {
                        partner: j,
                        orientation: Orientation::Forward,
                        pair: PairLabel::from_word(&label),
                        label,
                    });
                }
            }
            if j != k && self.eps[next(j)] == self.eps[next(k)] && self.eps[j] == self.eps[k] {
                let label = self.seg[k].mul(&self.seg[j].inverse());
                if th.normalize_cyclic_word(&label).is_trivial() {
                    out.push(CornerPairing {
                        partner: j,
                        orientation: Orientation::Backward,
                        pair: PairLabel::from_word(&label),
                        label,
                    });
                }
            }
        }
        out
    }

    fn compatible(&self, p: &CornerPairing, q: &CornerPairing) -> bool {
        let n = self.n;
        match (p.orientation, q.orientation) {
            (Orientation::Forward, Orientation::Forward) => q.partner == (p.partner + n - 1) % n,
            (Orientation::Backward, Orientation::Backward) => q.partner == (p.partner + 1) % n,
            _ => false,
        }
    }
}

fn corner_name(seg: &CoeffWord, k: usize) -> String {
    if seg.len() == 1 && !seg.symbols()[0].inverse {
        format!("v_{}", seg.symbols()[0].name)
    } else {
        format!("v{}", k + 1)
    }
}

/// Degree-2 options at every corner of `relator` under `th`.
pub fn corner_table(relator: &MixedWord, th: &ClosedTheory) -> Result<Vec<Corner>, CurvatureError> {
    if let crate::theory::Status::Contradictory(w) = th.status() {
        return Err(TheoryError::Contradictory(w).into());
    }
    let setup = Setup::new(relator)?;
    Ok((0..setup.n)
        .map(|k| Corner {
            position: k,
            name: corner_name(&setup.seg[k], k),
            admissible: setup.pairings(k, th),
        })
        .collect())
}

/// Names of the corners that can have degree 2 at all.
pub fn capable_corners(table: &[Corner]) -> Vec<String> {
    table
        .iter()
        .filter(|c| !c.admissible.is_empty())
        .map(|c| c.name.clone())
        .collect()
}

/// The least curvature a region can be forced to have, found by choosing as
/// many degree-2 corners as the theory allows and giving every other corner
/// degree 3.
pub fn curvature_upper_bound(relator: &MixedWord, th: &ClosedTheory) -> Result<CurvatureBound, CurvatureError> {
    if let crate::theory::Status::Contradictory(w) = th.status() {
        return Err(TheoryError::Contradictory(w).into());
    }
    let setup = Setup::new(relator)?;
    let n = setup.n;
    let names: Vec<String> = (0..n).map(|k| corner_name(&setup.seg[k], k)).collect();
    let options: Vec<Vec<CornerPairing>> = (0..n).map(|k| setup.pairings(k, th)).collect();

    let mut exclusions = Vec::new();
    for k in 0..n {
        let l = (k + 1) % n;
        if n > 1 && !options[k].is_empty() && !options[l].is_empty() {
            let any = options[k].iter().any(|p| options[l].iter().any(|q| setup.compatible(p, q)));
            if !any {
                exclusions.push((names[k].clone(), names[l].clone()));
            }
        }
    }

    let mut best: Vec<Option<usize>> = vec![None; n];
    let mut best_count = 0;
    let mut choice: Vec<Option<usize>> = vec![None; n];
    search(&setup, &options, 0, 0, &mut choice, &mut best, &mut best_count);

    let mut degrees = Vec::with_capacity(n);
    let mut degree_two = Vec::new();
    for k in 0..n {
        if best[k].is_some() {
            degrees.push(2);
            degree_two.push(names[k].clone());
        } else {
            degrees.push(3);
        }
    }
    let bound = region_curvature(&degrees)?;
    let corners = (0..n)
        .map(|k| Corner {
            position: k,
            name: names[k].clone(),
            admissible: options[k].clone(),
        })
        .collect();
    Ok(CurvatureBound {
        corners,
        exclusions,
        degree_two,
        degrees,
        bound,
    })
}

fn search(
    setup: &Setup,
    options: &[Vec<CornerPairing>],
    k: usize,
    count: usize,
    choice: &mut Vec<Option<usize>>,
    best: &mut Vec<Option<usize>>,
    best_count: &mut usize,
) {
    let n = setup.n;
    if count + (n - k) <= *best_count && k > 0 {
        return;
    }
    if k == n {
        if count > *best_count || (*best_count == 0 && count == 0) {
            *best_count = count;
            best.clone_from(choice);
        }
        return;
    }
    let fits = |idx: usize, choice: &[Option<usize>]| {
        let p = &options[k][idx];
        let prev_ok = k == 0
            || choice[k - 1].is_none_or(|pi| setup.compatible(&options[k - 1][pi], p));
        let wrap_ok = k + 1 < n
            || n == 1
            || choice[0].is_none_or(|fi| setup.compatible(p, &options[0][fi]));
        prev_ok && wrap_ok
    };
    for idx in 0..options[k].len() {
        if fits(idx, choice) {
            choice[k] = Some(idx);
            search(setup, options, k + 1, count + 1, choice, best, best_count);
            choice[k] = None;
        }
    }
    search(setup, options, k + 1, count, choice, best, best_count);
}
