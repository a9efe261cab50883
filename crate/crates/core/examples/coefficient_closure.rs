//! Closing small theories about the coefficients and spotting contradictions.

use asphere::theory::{CoefficientTheory, Relation, Status};

fn theory(rels: &[&str]) -> asphere::theory::ClosedTheory {
    let rels: Vec<Relation> = rels.iter().map(|r| r.parse().unwrap()).collect();
    CoefficientTheory::base().with_relations(rels).close()
}

pub fn run() -> String {
    let mut out = String::new();
    for rels in [
        &["a=d^-1", "a=g^-1"][..],
        &["a=d", "a=d^-1"],
        &["a=d^-1", "a=g^-1", "d=g^-1"],
        &["h=e", "e=b"],
        &["c=f", "f=i", "c=i^-1"],
    ] {
        let th = theory(rels);
        let status = match th.status() {
            Status::Consistent => "consistent".to_string(),
            Status::Contradictory(w) => format!("contradiction, {w}"),
        };
        out += &format!("{{{}}}: {status}\n", rels.join(", "));
        if th.is_consistent() {
            let classes: Vec<String> = th
                .partition()
                .iter()
                .filter(|c| c.len() > 1)
                .map(|c| c.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" = "))
                .collect();
            out += &format!("  classes: {}\n", classes.join("; "));
        }
    }
    let th = theory(&["a=d^-1", "a=g^-1"]);
    out += &format!("a=d^-1, a=g^-1 entails d=g: {}\n", th.entails(&"d=g".parse().unwrap()).unwrap());
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
