//! Test-side reference implementations. Nothing here calls into the library
//! except for type conversion at the edges, so agreement is evidence.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// The fifteen labels as printed, in the order they are listed.
pub const S: [&str; 15] = [
    "ad", "ad^-1", "ag", "ag^-1", "dg", "dg^-1", "cf", "cf^-1", "ci", "ci^-1", "fi", "fi^-1", "he^-1", "hb^-1", "eb^-1",
];

/// `(x, y, s)` for the label `x y^s`.
pub fn label_parts(l: &str) -> (char, char, i8) {
    let c: Vec<char> = l.chars().collect();
    (c[0], c[1], if l.ends_with("^-1") { -1 } else { 1 })
}

/// Label trivial means `x = y^-s`.
pub fn label_relation(l: &str) -> (char, char, i8) {
    let (x, y, s) = label_parts(l);
    (x, y, -s)
}

/// The label of the cyclic two-letter word `x^p y^q`, if it is one of S.
pub fn label_of_pair(x: char, p: i8, y: char, q: i8) -> Option<&'static str> {
    let s = p * q;
    S.iter().copied().find(|l| {
        let (a, b, t) = label_parts(l);
        t == s && ((a, b) == (x, y) || (a, b) == (y, x))
    })
}

// Equivalence on the 19 signed coefficients: node 0 is the identity and
// symbol k in `a..=i` has nodes 2k+1 (k) and 2k+2 (k^-1).

fn node(c: char, sign: i8) -> usize {
    let k = (c as u8 - b'a') as usize;
    if sign > 0 {
        2 * k + 1
    } else {
        2 * k + 2
    }
}

fn inv(n: usize) -> usize {
    match n {
        0 => 0,
        n if n % 2 == 1 => n + 1,
        n => n - 1,
    }
}

const NODES: usize = 19;

/// A brute-force closure by fixpoint iteration over a bit matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Oracle {
    rows: [u32; NODES],
    pub contradictory: bool,
}

impl Oracle {
    /// `b` trivial, `a c d f g i` nontrivial, torsion-free.
    pub fn close(rels: &[(char, char, i8)]) -> Oracle {
        let mut rows = [0u32; NODES];
        for (i, r) in rows.iter_mut().enumerate() {
            *r = 1 << i;
        }
        let link = |rows: &mut [u32; NODES], p: usize, q: usize| {
            rows[p] |= 1 << q;
            rows[q] |= 1 << p;
        };
        link(&mut rows, node('b', 1), 0);
        for &(x, y, s) in rels {
            link(&mut rows, node(x, 1), node(y, s));
        }
        loop {
            let before = rows;
            for p in 0..NODES {
                for q in 0..NODES {
                    if rows[p] >> q & 1 == 1 {
                        rows[inv(p)] |= 1 << inv(q);
                        rows[q] |= 1 << p;
                        rows[p] |= rows[q];
                    }
                }
                if rows[p] >> inv(p) & 1 == 1 {
                    rows[p] |= 1;
                    rows[0] |= 1 << p;
                }
            }
            if rows == before {
                break;
            }
        }
        let contradictory = "acdfgi".chars().any(|c| rows[node(c, 1)] & 1 == 1);
        Oracle { rows, contradictory }
    }

    pub fn equal(&self, x: char, sx: i8, y: char, sy: i8) -> bool {
        self.rows[node(x, sx)] >> node(y, sy) & 1 == 1
    }

    pub fn trivial(&self, x: char) -> bool {
        self.rows[node(x, 1)] & 1 == 1
    }

    pub fn holds(&self, label: &str) -> bool {
        let (x, y, s) = label_relation(label);
        self.equal(x, 1, y, s)
    }

    /// The classes as sorted node sets.
    pub fn partition(&self) -> BTreeSet<u32> {
        self.rows.iter().copied().collect()
    }
}

pub fn subset_labels(mask: u32) -> Vec<&'static str> {
    (0..15).filter(|i| mask >> i & 1 == 1).map(|i| S[i]).collect()
}

pub fn close_labels(labels: &[&str]) -> Oracle {
    let rels: Vec<_> = labels.iter().map(|l| label_relation(l)).collect();
    Oracle::close(&rels)
}

/// Masks of all consistent subsets of S closed under entailment.
pub fn saturated_masks() -> Vec<u32> {
    (0u32..1 << 15)
        .filter(|&m| {
            let o = close_labels(&subset_labels(m));
            !o.contradictory && (0..15).all(|i| o.holds(S[i]) == (m >> i & 1 == 1))
        })
        .collect()
}

/// `a ↔ c^-1, b ↔ b^-1, d ↔ i^-1, e ↔ h^-1, f ↔ g^-1` applied to a label.
pub fn sigma_label(l: &str) -> &'static str {
    let map = |c: char| match c {
        'a' => 'c',
        'c' => 'a',
        'b' => 'b',
        'd' => 'i',
        'i' => 'd',
        'e' => 'h',
        'h' => 'e',
        'f' => 'g',
        'g' => 'f',
        _ => unreachable!(),
    };
    // x = y^t becomes X^-1 = Y^-t, that is X = Y^t.
    let (x, y, t) = label_relation(l);
    let (x2, y2) = (map(x), map(y));
    S.iter()
        .copied()
        .find(|m| {
            let (a, b, u) = label_relation(m);
            u == t && ((a, b) == (x2, y2) || (a, b) == (y2, x2))
        })
        .expect("σ stays inside S")
}

pub fn sigma_mask(m: u32) -> u32 {
    (0..15)
        .filter(|i| m >> i & 1 == 1)
        .map(|i| 1u32 << S.iter().position(|x| *x == sigma_label(S[i])).unwrap())
        .sum()
}

/// Signed tokens: coefficients are lowercase other than stable letters.
pub type Tok = (char, i8);

pub fn tokens(s: &str) -> Vec<Tok> {
    s.split_whitespace()
        .map(|t| {
            let c = t.chars().next().unwrap();
            (c, if t.ends_with("^-1") { -1 } else { 1 })
        })
        .collect()
}

/// Leftmost-first cancellation until nothing cancels.
pub fn reduce_leftmost(w: &[Tok]) -> Vec<Tok> {
    let mut w = w.to_vec();
    'outer: loop {
        for i in 0..w.len().saturating_sub(1) {
            if w[i].0 == w[i + 1].0 && w[i].1 == -w[i + 1].1 {
                w.drain(i..i + 2);
                continue 'outer;
            }
        }
        return w;
    }
}

/// Cancels at positions chosen by `pick` until nothing cancels.
pub fn reduce_in_order(w: &[Tok], mut pick: impl FnMut(usize) -> usize) -> Vec<Tok> {
    let mut w = w.to_vec();
    loop {
        let spots: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i].0 == w[i + 1].0 && w[i].1 == -w[i + 1].1)
            .collect();
        if spots.is_empty() {
            return w;
        }
        let i = spots[pick(spots.len()) % spots.len()];
        w.drain(i..i + 2);
    }
}

pub fn print_tokens(w: &[Tok]) -> String {
    w.iter()
        .map(|&(c, s)| if s > 0 { c.to_string() } else { format!("{c}^-1") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A star graph edge: `(from, to, segment)` with vertices `(letter, sign)`.
pub type OEdge = ((char, i8), (char, i8), Vec<Tok>);

pub fn star_edges(relator: &str, stable: &[char]) -> Vec<OEdge> {
    let w = tokens(relator);
    let occ: Vec<usize> = (0..w.len()).filter(|&i| stable.contains(&w[i].0)).collect();
    let n = occ.len();
    (0..n)
        .map(|k| {
            let i = occ[k];
            let j = occ[(k + 1) % n];
            let mut seg = Vec::new();
            let mut p = (i + 1) % w.len();
            while p != j {
                seg.push(w[p]);
                p = (p + 1) % w.len();
            }
            ((w[i].0, -w[i].1), (w[j].0, w[j].1), seg)
        })
        .collect()
}

/// Labels of the closed reduced length-two walks, as two-letter words,
/// deduplicated up to rotation and reversal.
pub fn length_two_labels(edges: &[OEdge]) -> Vec<(usize, i8, usize, i8, Vec<Tok>)> {
    let ends = |e: usize, d: i8| if d > 0 { (edges[e].0, edges[e].1) } else { (edges[e].1, edges[e].0) };
    let word = |e: usize, d: i8| -> Vec<Tok> {
        if d > 0 {
            edges[e].2.clone()
        } else {
            edges[e].2.iter().rev().map(|&(c, s)| (c, -s)).collect()
        }
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in 0..edges.len() {
        for d in [1i8, -1] {
            for f in 0..edges.len() {
                for g in [1i8, -1] {
                    if e == f && d == -g {
                        continue;
                    }
                    let (s1, t1) = ends(e, d);
                    let (s2, t2) = ends(f, g);
                    if t1 != s2 || t2 != s1 {
                        continue;
                    }
                    let forms = [(e, d, f, g), (f, g, e, d), (f, -g, e, -d), (e, -d, f, -g)];
                    let key = *forms.iter().min().unwrap();
                    if seen.insert(key) {
                        let mut w = word(e, d);
                        w.extend(word(f, g));
                        out.push((e, d, f, g, w));
                    }
                }
            }
        }
    }
    out
}

/// Curvature in units of π as a reduced fraction `(num, den)`.
pub fn curvature(degrees: &[u32]) -> (i64, i64) {
    let l = degrees.iter().fold(1i64, |acc, &d| lcm(acc, d as i64));
    let num = (2 - degrees.len() as i64) * l + degrees.iter().map(|&d| 2 * l / d as i64).sum::<i64>();
    let g = gcd(num.abs(), l);
    (num / g, l / g)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}
