//! Fixtures shared by the benchmarks.

use lifedens::bounds::WeightCertificate;
use lifedens::io::parse_certificate;
use lifedens::{generate, TorusPattern};

pub fn fibonacci_certificate() -> WeightCertificate {
    parse_certificate(include_str!("../../core/data/certs/fibonacci.cert")).expect("shipped certificate parses")
}

pub fn second_certificate() -> WeightCertificate {
    parse_certificate(include_str!("../../core/data/certs/second.cert")).expect("shipped certificate parses")
}

/// A named construction tiled to `dims`.
pub fn tiled(name: &str, dims: &[usize]) -> TorusPattern {
    generate(name, &[]).and_then(|p| p.tile_to(dims)).expect("construction tiles")
}
