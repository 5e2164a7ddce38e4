#![no_main]
use libfuzzer_sys::fuzz_target;
use vguard::geom::{is_simple, reflex_vertices, Point, Polygon};

// Raw little-endian f64 pairs straight into the validating constructor.
fuzz_target!(|data: &[u8]| {
    let coords: Vec<f64> = data
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let ring: Vec<Point> = coords.chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect();
    if ring.len() > 64 {
        return;
    }
    if let Ok(poly) = Polygon::new(ring) {
        let n = poly.len();
        assert!(is_simple(poly.vertices()));
        assert!(reflex_vertices(&poly).len() <= n - 3);
    }
});
