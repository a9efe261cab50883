//! Looking for a weight function on a small grid.

use asphere::star_graph::StarGraph;
use asphere::theory::CoefficientTheory;
use asphere::weight::search_weight_function;
use asphere::word::{standard_relator, Alphabet};
use asphere::Rational;

pub fn run() -> String {
    let grid = [Rational::from_integer(0), Rational::new(1, 2), Rational::from_integer(1)];
    let th = CoefficientTheory::base().close();
    let mut out = String::new();

    let ab = Alphabet::with_stable(&['t']);
    for text in ["t a t^-1 c", "t a t c t^-1 d"] {
        let g = StarGraph::build(&[ab.parse(text).unwrap().into_cyclic()]).unwrap();
        match search_weight_function(&g, &th, &grid, 4).unwrap() {
            Some(w) => out += &format!("{text}: {}\n", w.display(&g)),
            None => out += &format!("{text}: none\n"),
        }
    }

    let g = StarGraph::build(&[standard_relator()]).unwrap();
    let found = search_weight_function(&g, &th, &grid, 4).unwrap();
    out += &format!("standard relator, no relations: {}\n", if found.is_some() { "found" } else { "none" });
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
