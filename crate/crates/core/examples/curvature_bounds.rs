//! Region curvature and the bound it gives under a few theories.

use asphere::curvature::{capable_corners, corner_table, curvature_upper_bound, region_curvature};
use asphere::theory::{CoefficientTheory, Relation};
use asphere::word::standard_relator;

pub fn run() -> String {
    let mut out = String::new();
    for degrees in [&[3u32; 9][..], &[2, 2, 3, 3, 3, 3, 3, 3, 3], &[2, 2, 2, 3, 3, 3, 3, 3, 3], &[4, 4, 4]] {
        out += &format!("{degrees:?}: {}\n", region_curvature(degrees).unwrap());
    }
    let s = standard_relator();
    for rels in [&[][..], &["a=d^-1"], &["a=d^-1", "c=f^-1"], &["a=d^-1", "a=g^-1", "d=g"], &["d=g", "f=i", "h=e"]] {
        let rels: Vec<Relation> = rels.iter().map(|r| r.parse().unwrap()).collect();
        let th = CoefficientTheory::base().with_relations(rels.clone()).close();
        let b = curvature_upper_bound(&s, &th).unwrap();
        let caps = capable_corners(&corner_table(&s, &th).unwrap());
        let names: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
        out += &format!(
            "{{{}}}: capable {:?}, degree two {:?}, bound {}\n",
            names.join(", "),
            caps,
            b.degree_two,
            b.bound
        );
        for (x, y) in &b.exclusions {
            out += &format!("  {x} and {y} cannot both have degree 2\n");
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
