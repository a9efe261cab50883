//! Classifying every canonical case.

use std::collections::BTreeMap;

use asphere::cases::{classify, enumerate_cases, CaseSpec};

pub fn run() -> String {
    let mut out = String::new();
    for text in ["", "ad", "ad, ag, dg^-1", "ad^-1, cf^-1", "dg, fi, he^-1"] {
        let case = CaseSpec::parse_list(text).unwrap();
        out += &format!("{}\n", classify(&case).unwrap().summary());
    }
    let mut counts: BTreeMap<(usize, String), usize> = BTreeMap::new();
    for n in 0..=15 {
        for c in enumerate_cases(n) {
            let r = classify(&c).unwrap();
            *counts.entry((n, r.verdict.to_string())).or_default() += 1;
        }
    }
    for ((n, v), k) in counts {
        out += &format!("N={n} {v}: {k}\n");
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
