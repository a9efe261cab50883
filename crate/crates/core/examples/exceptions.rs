//! The open cases, checked against the implemented tests.

use asphere::cases::{canonicalize, classify, open_cases};
use asphere::cli::exception_statement;

pub fn run() -> String {
    let mut out = String::new();
    for e in open_cases() {
        out += &format!("{:>2}. {}\n", e.item, exception_statement(&e));
        for c in &e.cases {
            let r = classify(c).unwrap();
            let canon = canonicalize(c);
            let mark = if canon == *c { "" } else { " (σ-image is canonical)" };
            out += &format!("    {c}: {} bound {}{mark}\n", r.verdict, r.bound);
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
