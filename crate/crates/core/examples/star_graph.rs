//! The star graph of the standard relator and its degree-two labels.

use asphere::star_graph::StarGraph;
use asphere::theory::CoefficientTheory;
use asphere::word::standard_relator;

pub fn run() -> String {
    let g = StarGraph::build(&[standard_relator()]).unwrap();
    let mut out = String::new();
    for e in g.edges() {
        out += &format!("{}: {} -> {} label {}\n", e.name, g.vertices()[e.from], g.vertices()[e.to], e.label);
    }
    let th = CoefficientTheory::base().close();
    let labels: Vec<String> = g
        .degree2_labels(0, &th)
        .iter()
        .filter_map(|d| d.pair.map(|p| format!("{p} ({})", d.path)))
        .collect();
    out += &format!("{} degree-two labels:\n  {}\n", labels.len(), labels.join("\n  "));
    out += &g.to_dot();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
