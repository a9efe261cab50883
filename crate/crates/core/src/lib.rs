//! Asphericity checks for the length-nine equation
//! `a t b t c t^-1 d t e t f t^-1 g t h t i t^-1` over a torsion-free group.

pub mod cases;
pub mod cli;
pub mod curvature;
pub mod label;
pub mod star_graph;
pub mod theory;
pub mod weight;
pub mod word;

/// Exact rationals used for weights and curvature.
pub type Rational = num_rational::Ratio<i64>;

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: Rational) -> String {
    r.to_string()
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}
