//! The weight test on the two presentations obtained by substituting for `x`.

use asphere::cases::weight_patterns;
use asphere::cli::weight_report_text;
use asphere::weight::check_weight_test;

pub fn run() -> String {
    let mut out = String::new();
    for p in weight_patterns() {
        let g = p.graph().unwrap();
        let theta = p.weights(&g).unwrap();
        let th = p.core_case().theory();
        let report = check_weight_test(&g, &theta, &th, 4).unwrap();
        out += &format!("{}\n  r1 = {}\n  r2 = {}\n  θ: {}\n", p.name, p.r1, p.r2, theta.display(&g));
        for line in weight_report_text(&report).lines() {
            out += &format!("  {line}\n");
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run());
}
