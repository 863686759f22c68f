//! Spanning paths between odd-distance endpoints.
//!
//! Any two vertices at odd distance are the ends of some Hamiltonian path of
//! the cube. The construction halves the cube at a coordinate where the
//! endpoints differ, routes the first half to a deliberately chosen doorway
//! vertex, and crosses into the second half — the classic reflected-Gray-code
//! argument, made deterministic by always picking the least usable
//! coordinate.

use crate::error::{Error, Result};
use crate::vertex::{distance, iota, rho, Vertex};

/// A path visiting every vertex of the cube exactly once, from `from` to
/// `to`. Requires odd distance; even distance (including equal endpoints) is
/// a parity obstruction, not a search failure.
pub fn hamiltonian_path(from: Vertex, to: Vertex) -> Result<Vec<Vertex>> {
    if from.dim() != to.dim() {
        return Err(Error::DimensionMismatch {
            left: from.dim(),
            right: to.dim(),
        });
    }
    if distance(from, to) % 2 == 0 {
        return Err(Error::EvenDistanceEndpoints);
    }
    Ok(build(from, to))
}

fn build(from: Vertex, to: Vertex) -> Vec<Vertex> {
    let n = from.dim();
    if n == 1 {
        return vec![from, to];
    }
    // halve at the least coordinate where the endpoints differ
    let i = (0..n)
        .find(|&i| from.bit(i) != to.bit(i))
        .expect("odd distance implies a differing coordinate");
    let j = (0..n).find(|&j| j != i).expect("dimension at least two");
    // doorway on `from`'s side: adjacent to the second half's entry point
    // and at odd distance from `from` within the half
    let m = to.flip(i).flip(j);
    let k = from.bit(i);
    let p1 = build(
        rho(from, i, k).expect("side of from"),
        rho(m, i, k).expect("doorway is on from's side"),
    );
    let entry = m.flip(i);
    let p2 = build(
        rho(entry, i, 1 - k).expect("entry is opposite"),
        rho(to, i, 1 - k).expect("side of to"),
    );
    let mut path: Vec<Vertex> = p1
        .into_iter()
        .map(|v| iota(v, i, k).expect("lift back"))
        .collect();
    path.extend(
        p2.into_iter()
            .map(|v| iota(v, i, 1 - k).expect("lift back")),
    );
    path
}
