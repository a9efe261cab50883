//! Parsing, reduction and variable elimination on mixed words.

use asphere::theory::CoefficientTheory;
use asphere::word::{standard_relator, Alphabet, MixedWord, Symbol};

pub fn run() -> String {
    let mut out = String::new();
    let s = standard_relator();
    out += &format!("relator: {s}\n");
    out += &format!("length {}, exponent sum {}\n", s.equation_length(), s.exponent_sum());
    out += &format!("cyclic forms: {}\n", s.cyclic_forms().len());

    // With b trivial the second segment disappears.
    let th = CoefficientTheory::base().close();
    out += &format!("reduced under b = 1: {}\n", s.free_reduce(&th));

    let ab = Alphabet::with_stable(&['t', 'x']);
    let r1 = ab.parse("x c t x^-1 e t f t x^-1 h t i").unwrap().into_cyclic();
    let r2 = ab.parse("x^-1 t^-1 a t t").unwrap().into_cyclic();
    let w = r1.eliminate_variable(&r2, Symbol('x')).unwrap();
    let target = MixedWord::parse("a t t c t^-1 a^-1 t e t f t^-1 a^-1 t h t i t^-1").unwrap().into_cyclic();
    out += &format!("eliminating x: {w}\n");
    out += &format!("matches a t b t c t^-1 a^-1 t ... with b = 1: {}\n", w.cyclically_equal(&target));

    match MixedWord::parse("a t^") {
        Ok(_) => out += "unexpected parse\n",
        Err(e) => out += &format!("malformed input: {e}\n"),
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
