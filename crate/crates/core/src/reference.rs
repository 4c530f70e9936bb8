//! Known fundamental invariants of the small semi-direct fixtures.
//!
//! Closed forms for the sl(2) fixtures with module dimension up to five,
//! used as goldens by the tests and as a cross-check by the report command.
//! The weight-three entry is -1/2 times the discriminant of the binary
//! cubic written in these coordinates.

use crate::lie::sl2_semidirect;
use crate::poly::{parse_polynomial, Polynomial};

/// Fundamental invariants of the weight-`m` fixture, for m <= 4.
pub fn known_invariants(m: u32) -> Option<Vec<Polynomial>> {
    let texts: &[&str] = match m {
        0 => &["4*x*y + h^2", "v0"],
        1 => &["v1^2*x + v0*v1*h - v0^2*y"],
        2 => &["h*v1 + 2*v2*x - 2*v0*y", "v1^2 - 4*v0*v2"],
        3 => &["2*v0*v2^3 - 9*v0*v1*v2*v3 + 27/2*v0^2*v3^2 - 1/2*v1^2*v2^2 + 2*v1^3*v3"],
        4 => &[
            "-12*v0*v4 + 3*v1*v3 - v2^2",
            "27*v0*v3^2 - 9*v1*v2*v3 + 27*v1^2*v4 - 72*v0*v2*v4 + 2*v2^3",
        ],
        _ => return None,
    };
    let ctx = sl2_semidirect(m).context();
    Some(
        texts
            .iter()
            .map(|t| parse_polynomial(&ctx, t).expect("reference polynomial parses"))
            .collect(),
    )
}

/// All weights with a known closed form.
pub fn known_weights() -> impl Iterator<Item = u32> {
    0..=4
}
