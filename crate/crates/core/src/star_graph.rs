//! Star graphs of presentations `r_1(t, x, ...), r_2, ...`.
//!
//! Each stable letter `ℓ` contributes two vertices `ℓ` and `ℓ^-1`. Occurrence
//! `i` of a cyclic relator `ℓ_1^ε_1 g_1 ℓ_2^ε_2 g_2 ...` gives one edge from
//! `ℓ_i^-ε_i` to `ℓ_{i+1}^ε_{i+1}` labelled by the coefficient segment `g_i`
//! that follows it. A closed path reads off a coefficient word; in a reduced
//! diagram the label of a vertex of degree `k` is the label of a closed path
//! of length `k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::label::PairLabel;
use crate::theory::{ClosedTheory, WordClass};
use crate::word::{CoeffWord, MixedWord, Sign, StableLetter, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("relator {0} has no stable letters")]
    NoStableLetters(usize),
    #[error("no edge named `{0}`")]
    UnknownEdge(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub letter: Symbol,
    pub sign: Sign,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        StableLetter {
            name: self.letter,
            exponent: self.sign,
        }
        .fmt(f)
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: EdgeId,
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub label: CoeffWord,
    pub relator: usize,
    pub position: usize,
}

/// Walking an edge along (`forward`) or against its orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Traversal {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Traversal {
    pub fn fwd(e: usize) -> Self {
        Traversal {
            edge: EdgeId(e),
            forward: true,
        }
    }

    pub fn bwd(e: usize) -> Self {
        Traversal {
            edge: EdgeId(e),
            forward: false,
        }
    }

    pub fn inverse(self) -> Self {
        Traversal {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// A cyclically reduced closed path with its coefficient label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCycle {
    pub steps: Vec<Traversal>,
    pub label: CoeffWord,
}

impl GraphCycle {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn relator_prefix(r: usize) -> String {
    match r {
        0 => "γ".into(),
        1 => "η".into(),
        2 => "ζ".into(),
        3 => "κ".into(),
        _ => format!("ρ{}.", r + 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    #[serde(skip)]
    relator_edges: Vec<Vec<EdgeId>>,
    #[serde(skip)]
    outgoing: Vec<Vec<Traversal>>,
}

impl StarGraph {
    pub fn build(relators: &[MixedWord]) -> Result<StarGraph, GraphError> {
        let mut letters = BTreeSet::new();
        for r in relators {
            letters.extend(r.stable_letters().map(|s| s.name));
        }
        let vertices: Vec<Vertex> = letters
            .iter()
            .flat_map(|&l| {
                [
                    Vertex { letter: l, sign: Sign::Pos },
                    Vertex { letter: l, sign: Sign::Neg },
                ]
            })
            .collect();
        let vindex: BTreeMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut edges = Vec::new();
        let mut relator_edges = Vec::new();
        for (ri, r) in relators.iter().enumerate() {
            let (_, segs) = r.clone().into_cyclic().segments();
            if segs.is_empty() {
                return Err(GraphError::NoStableLetters(ri));
            }
            let n = segs.len();
            let mut ids = Vec::with_capacity(n);
            for (i, (occ, seg)) in segs.iter().enumerate() {
                let next = segs[(i + 1) % n].0;
                let from = vindex[&Vertex { letter: occ.name, sign: occ.exponent.flip() }];
                let to = vindex[&Vertex { letter: next.name, sign: next.exponent }];
                let id = EdgeId(edges.len());
                edges.push(Edge {
                    id,
                    name: format!("{}{}", relator_prefix(ri), i + 1),
                    from,
                    to,
                    label: seg.clone(),
                    relator: ri,
                    position: i,
                });
                ids.push(id);
            }
            relator_edges.push(ids);
        }
        let mut outgoing = vec![Vec::new(); vertices.len()];
        for e in &edges {
            outgoing[e.from].push(Traversal::fwd(e.id.0));
            outgoing[e.to].push(Traversal::bwd(e.id.0));
        }
        Ok(StarGraph {
            vertices,
            edges,
            relator_edges,
            outgoing,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    /// Edge ids belonging to each relator, in occurrence order.
    pub fn relator_edges(&self) -> &[Vec<EdgeId>] {
        &self.relator_edges
    }

    pub fn vertex_index(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|w| *w == v)
    }

    /// Accepts `γ3`, `gamma3`, `η2`, `eta2` or `r2.1` (relator, then position,
    /// both counted from one).
    pub fn find_edge(&self, name: &str) -> Result<EdgeId, GraphError> {
        let unknown = || GraphError::UnknownEdge(name.to_string());
        let name = name.trim();
        if let Some(e) = self.edges.iter().find(|e| e.name == name) {
            return Ok(e.id);
        }
        for (prefix, r) in [("gamma", 0), ("eta", 1), ("zeta", 2), ("kappa", 3)] {
            if let Some(rest) = name.strip_prefix(prefix) {
                let p: usize = rest.parse().map_err(|_| unknown())?;
                return self.locate(r, p).ok_or_else(unknown);
            }
        }
        if let Some((r, p)) = name.strip_prefix('r').and_then(|s| s.split_once('.')) {
            let r: usize = r.parse().map_err(|_| unknown())?;
            let p: usize = p.parse().map_err(|_| unknown())?;
            return r.checked_sub(1).and_then(|r| self.locate(r, p)).ok_or_else(unknown);
        }
        Err(unknown())
    }

    fn locate(&self, relator: usize, position: usize) -> Option<EdgeId> {
        let ids = self.relator_edges.get(relator)?;
        ids.get(position.checked_sub(1)?).copied()
    }

    pub fn start(&self, t: Traversal) -> usize {
        let e = self.edge(t.edge);
        if t.forward {
            e.from
        } else {
            e.to
        }
    }

    pub fn end(&self, t: Traversal) -> usize {
        self.start(t.inverse())
    }

    pub fn outgoing(&self, v: usize) -> &[Traversal] {
        &self.outgoing[v]
    }

    pub fn step_label(&self, t: Traversal) -> CoeffWord {
        let l = &self.edge(t.edge).label;
        if t.forward {
            l.clone()
        } else {
            l.inverse()
        }
    }

    pub fn path_label(&self, steps: &[Traversal]) -> CoeffWord {
        steps
            .iter()
            .fold(CoeffWord::identity(), |acc, &t| acc.mul(&self.step_label(t)))
    }

    pub fn format_path(&self, steps: &[Traversal]) -> String {
        steps
            .iter()
            .map(|t| {
                let n = &self.edge(t.edge).name;
                if t.forward {
                    n.clone()
                } else {
                    format!("{n}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }

    pub fn is_closed(&self, steps: &[Traversal]) -> bool {
        !steps.is_empty()
            && steps.windows(2).all(|w| self.end(w[0]) == self.start(w[1]))
            && self.end(steps[steps.len() - 1]) == self.start(steps[0])
    }

    /// Closed, no immediate backtracking, including across the seam.
    pub fn is_reduced_cycle(&self, steps: &[Traversal]) -> bool {
        self.is_closed(steps)
            && steps.windows(2).all(|w| w[1] != w[0].inverse())
            && steps[0] != steps[steps.len() - 1].inverse()
    }

    /// Every cyclically reduced closed path with at most `max_len` steps, one
    /// representative per class under rotation and reversal.
    pub fn enumerate_cycles(&self, max_len: usize) -> Vec<GraphCycle> {
        self.closed_walks(max_len, |_| true)
    }

    /// Like [`StarGraph::enumerate_cycles`], but a partial path is abandoned
    /// as soon as `admit` rejects it.
    pub fn closed_walks(&self, max_len: usize, mut admit: impl FnMut(&[Traversal]) -> bool) -> Vec<GraphCycle> {
        let mut found: BTreeMap<(usize, Vec<Traversal>), Vec<Traversal>> = BTreeMap::new();
        let mut path = Vec::new();
        for e in &self.edges {
            for first in [Traversal::fwd(e.id.0), Traversal::bwd(e.id.0)] {
                path.clear();
                path.push(first);
                if admit(&path) {
                    self.walk(&mut path, max_len, &mut admit, &mut found);
                }
            }
        }
        found
            .into_values()
            .map(|steps| GraphCycle {
                label: self.path_label(&steps),
                steps,
            })
            .collect()
    }

    fn walk(
        &self,
        path: &mut Vec<Traversal>,
        max_len: usize,
        admit: &mut impl FnMut(&[Traversal]) -> bool,
        found: &mut BTreeMap<(usize, Vec<Traversal>), Vec<Traversal>>,
    ) {
        let first = path[0];
        let last = path[path.len() - 1];
        if self.end(last) == self.start(first) && (path.len() == 1 || first != last.inverse()) {
            let key = canonical_key(path);
            found.entry((path.len(), key.clone())).or_insert(key);
        }
        if path.len() >= max_len {
            return;
        }
        for &next in self.outgoing(self.end(last)) {
            if next == last.inverse() {
                continue;
            }
            path.push(next);
            if admit(path) {
                self.walk(path, max_len, admit, found);
            }
            path.pop();
        }
    }

    /// Labels of the length-two cycles through edges of `relator` that the
    /// theory does not refute, i.e. whose label is not a nonzero power of a
    /// nontrivial element.
    pub fn degree2_labels(&self, relator: usize, th: &ClosedTheory) -> Vec<Degree2Label> {
        self.length_two_cycles(relator, th)
            .into_iter()
            .filter(|d| !d.class.is_nontrivial())
            .collect()
    }

    /// Every length-two cycle through edges of `relator`, refuted or not.
    pub fn length_two_cycles(&self, relator: usize, th: &ClosedTheory) -> Vec<Degree2Label> {
        self.enumerate_cycles(2)
            .into_iter()
            .filter(|c| c.len() == 2 && c.steps.iter().all(|t| self.edge(t.edge).relator == relator))
            .map(|c| {
                let class = th.normalize_cyclic_word(&c.label);
                let pair = PairLabel::from_word(&c.label);
                Degree2Label {
                    path: self.format_path(&c.steps),
                    cycle: c.steps,
                    label: c.label,
                    class,
                    pair,
                }
            })
            .collect()
    }

    /// The graph with every edge reversed and every label inverted. Its cycles
    /// are the reversals of the cycles of `self`.
    pub fn mirrored(&self) -> StarGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            std::mem::swap(&mut e.from, &mut e.to);
            e.label = e.label.inverse();
        }
        for v in &mut g.outgoing {
            for t in v.iter_mut() {
                *t = t.inverse();
            }
        }
        g
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph star {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{v}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -> v{} [label=\"{}: {}\"];", e.from, e.to, e.name, e.label);
        }
        out.push_str("}\n");
        out
    }
}

/// The smallest of all rotations of the path and of its reversal.
pub fn canonical_key(steps: &[Traversal]) -> Vec<Traversal> {
    let n = steps.len();
    let rev: Vec<Traversal> = steps.iter().rev().map(|t| t.inverse()).collect();
    let mut best: Option<Vec<Traversal>> = None;
    for seq in [steps, &rev[..]] {
        for k in 0..n {
            let cand: Vec<Traversal> = seq[k..].iter().chain(seq[..k].iter()).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degree2Label {
    #[serde(skip)]
    pub cycle: Vec<Traversal>,
    pub path: String,
    pub label: CoeffWord,
    pub class: WordClass,
    pub pair: Option<PairLabel>,
}
