use std::fmt;

use crate::error::{Error, Result};

/// Largest supported cube dimension. Vertices are bit strings packed into a
/// `u16`, so 16 is a hard ceiling; exhaustive routines cap out much earlier.
pub const MAX_DIM: usize = 16;

/// Sign of a vertex: `Plus` for even Hamming weight, `Minus` for odd.
///
/// Adjacent vertices always have opposite parity, so this is the canonical
/// 2-coloring of the cube.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    /// +1 or -1 as an integer, for summing over sets.
    pub fn sign(self) -> i32 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Plus => Parity::Minus,
            Parity::Minus => Parity::Plus,
        }
    }
}

/// A vertex of the n-cube: a bit string of length `n` (1 ≤ n ≤ 16).
///
/// Coordinate `i` of the textual form is the i-th character left to right,
/// and is stored as bit `i` of the packed word. `parse` and `Display` are the
/// only places that convert between the two; everything else works on
/// coordinates.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    n: u8,
    bits: u16,
}

impl Vertex {
    pub fn new(n: usize, bits: u16) -> Result<Vertex> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionOutOfRange { n });
        }
        if n < 16 && bits >> n != 0 {
            return Err(Error::Internal {
                what: format!("bit pattern {bits:#b} does not fit dimension {n}"),
            });
        }
        Ok(Vertex { n: n as u8, bits })
    }

    pub fn dim(self) -> usize {
        self.n as usize
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    /// The bit at coordinate `i` (0 or 1). Panics if `i` is out of range;
    /// range errors on user input are caught at parse time.
    pub fn bit(self, i: usize) -> u8 {
        assert!(i < self.dim(), "coordinate {i} out of range for Q{}", self.n);
        ((self.bits >> i) & 1) as u8
    }

    /// The neighbor across coordinate `i`.
    pub fn flip(self, i: usize) -> Vertex {
        assert!(i < self.dim(), "coordinate {i} out of range for Q{}", self.n);
        Vertex {
            n: self.n,
            bits: self.bits ^ (1 << i),
        }
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn parity(self) -> Parity {
        if self.weight() % 2 == 0 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    /// All `n` neighbors, in coordinate order.
    pub fn neighbors(self) -> impl Iterator<Item = Vertex> {
        (0..self.dim()).map(move |i| self.flip(i))
    }

    /// Parses a vertex literal such as `"0110"`. The string length fixes the
    /// dimension.
    pub fn parse(text: &str) -> Result<Vertex> {
        let n = text.len();
        if n == 0 {
            return Err(Error::BadVertexLiteral {
                text: text.to_string(),
                reason: "empty string",
            });
        }
        if n > MAX_DIM {
            return Err(Error::BadVertexLiteral {
                text: text.to_string(),
                reason: "longer than 16 characters",
            });
        }
        let mut bits: u16 = 0;
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(Error::BadVertexLiteral {
                        text: text.to_string(),
                        reason: "characters must be 0 or 1",
                    })
                }
            }
        }
        Ok(Vertex { n: n as u8, bits })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Vertices sort like their literals (left-to-right), so `0110 < 1000` even
/// though the packed words compare the other way.
impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.bits.reverse_bits(), self.n).cmp(&(other.bits.reverse_bits(), other.n))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Coordinates where `u` and `v` differ, plus the Hamming distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceDelta {
    pub delta: Vec<usize>,
    pub distance: usize,
}

pub fn distance_delta(u: Vertex, v: Vertex) -> Result<DistanceDelta> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    let x = u.bits ^ v.bits;
    let delta: Vec<usize> = (0..u.dim()).filter(|&i| (x >> i) & 1 == 1).collect();
    let distance = delta.len();
    Ok(DistanceDelta { delta, distance })
}

pub fn distance(u: Vertex, v: Vertex) -> usize {
    debug_assert_eq!(u.dim(), v.dim());
    (u.bits ^ v.bits).count_ones() as usize
}

/// All vertices of the n-cube in lexicographic (literal) order.
pub fn all_vertices(n: usize) -> Result<Vec<Vertex>> {
    Vertex::new(n, 0)?; // validates the dimension
    let mut out: Vec<Vertex> = (0..1u32 << n)
        .map(|bits| Vertex::new(n, bits as u16).expect("dimension validated"))
        .collect();
    out.sort();
    Ok(out)
}

/// Deletes coordinate `i`, defined only when the vertex has bit `k` there.
/// The remaining coordinates close ranks, preserving their relative order.
pub fn rho(v: Vertex, i: usize, k: u8) -> Result<Vertex> {
    let n = v.dim();
    if i >= n {
        return Err(Error::CoordinateOutOfRange { i, n });
    }
    if n == 1 {
        return Err(Error::DimensionOutOfRange { n: 0 });
    }
    if v.bit(i) != k {
        return Err(Error::RhoUndefined {
            vertex: v.to_string(),
            i,
            k,
            found: v.bit(i),
        });
    }
    let low = v.bits & ((1u16 << i) - 1);
    let high = (v.bits >> (i + 1)) << i;
    Ok(Vertex {
        n: (n - 1) as u8,
        bits: low | high,
    })
}

/// Inserts a new coordinate with bit `k` at position `i`, shifting the
/// coordinates from `i` on one place to the right. Inverse of `rho`:
/// `rho(iota(v, i, k), i, k) == v`.
pub fn iota(v: Vertex, i: usize, k: u8) -> Result<Vertex> {
    let n = v.dim();
    if n + 1 > MAX_DIM {
        return Err(Error::DimensionOutOfRange { n: n + 1 });
    }
    if i > n {
        return Err(Error::CoordinateOutOfRange { i, n: n + 1 });
    }
    let low = v.bits & ((1u16 << i) - 1);
    let high = (v.bits >> i) << (i + 1);
    let mid = (k as u16) << i;
    Ok(Vertex {
        n: (n + 1) as u8,
        bits: low | high | mid,
    })
}
