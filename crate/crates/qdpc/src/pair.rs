use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex::{distance, iota, rho, Vertex};

/// An unordered pair of same-dimension vertices, stored smaller-first.
/// Degenerate pairs (`a == b`) are allowed; whether they are legal in context
/// is decided by `PairSet`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    a: Vertex,
    b: Vertex,
}

impl Pair {
    pub fn new(x: Vertex, y: Vertex) -> Result<Pair> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: y.dim(),
            });
        }
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        Ok(Pair { a, b })
    }

    pub fn a(self) -> Vertex {
        self.a
    }

    pub fn b(self) -> Vertex {
        self.b
    }

    pub fn dim(self) -> usize {
        self.a.dim()
    }

    pub fn degenerate(self) -> bool {
        self.a == self.b
    }

    pub fn is_edge(self) -> bool {
        self.distance() == 1
    }

    pub fn distance(self) -> usize {
        distance(self.a, self.b)
    }

    /// A pair is odd when its endpoints have opposite parity; equivalently,
    /// their distance is odd.
    pub fn odd(self) -> bool {
        self.a.parity() != self.b.parity()
    }

    /// Signed parity of the pair: 0 for odd pairs, ±2 for even ones
    /// (a degenerate pair counts its vertex twice).
    pub fn chi(self) -> i32 {
        self.a.parity().sign() + self.b.parity().sign()
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.a == v || self.b == v
    }

    /// The other endpoint, given one of the two.
    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if v == self.a {
            Some(self.b)
        } else if v == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    /// Parses `"010-011"`.
    pub fn parse(text: &str) -> Result<Pair> {
        let mut parts = text.split('-');
        let (Some(x), Some(y), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::BadPairLiteral {
                text: text.to_string(),
                reason: "expected exactly two endpoints separated by '-'",
            });
        };
        let a = Vertex::parse(x.trim()).map_err(|_| Error::BadPairLiteral {
            text: text.to_string(),
            reason: "endpoint is not a 0/1 string",
        })?;
        let b = Vertex::parse(y.trim()).map_err(|_| Error::BadPairLiteral {
            text: text.to_string(),
            reason: "endpoint is not a 0/1 string",
        })?;
        Pair::new(a, b)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A set of pairwise vertex-disjoint pairs in a fixed dimension.
///
/// Validity rules: all endpoints distinct across pairs, and a nonempty set
/// must contain at least one non-degenerate pair. Pairs are kept sorted, so
/// equal sets compare equal structurally.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSet {
    n: usize,
    pairs: Vec<Pair>,
}

impl PairSet {
    pub fn new(n: usize, mut pairs: Vec<Pair>) -> Result<PairSet> {
        if n == 0 || n > crate::vertex::MAX_DIM {
            return Err(Error::DimensionOutOfRange { n });
        }
        pairs.sort();
        pairs.dedup();
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        for p in &pairs {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: p.dim(),
                });
            }
            for v in [p.a(), p.b()] {
                if !seen.insert(v) && !(p.degenerate() && v == p.a()) {
                    return Err(Error::OverlappingPairs {
                        vertex: v.to_string(),
                    });
                }
            }
            // a degenerate pair re-inserts its single vertex; catch clashes
            // between a degenerate pair and an earlier pair explicitly
            if p.degenerate() {
                let clash = pairs
                    .iter()
                    .filter(|q| *q != p)
                    .any(|q| q.contains(p.a()));
                if clash {
                    return Err(Error::OverlappingPairs {
                        vertex: p.a().to_string(),
                    });
                }
            }
        }
        if !pairs.is_empty() && pairs.iter().all(|p| p.degenerate()) {
            return Err(Error::AllDegenerate);
        }
        Ok(PairSet { n, pairs })
    }

    pub fn empty(n: usize) -> Result<PairSet> {
        PairSet::new(n, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pair> {
        self.pairs.iter()
    }

    /// ⋃A: every vertex that appears in some pair.
    pub fn support(&self) -> BTreeSet<Vertex> {
        self.pairs
            .iter()
            .flat_map(|p| [p.a(), p.b()])
            .collect()
    }

    /// Number of odd pairs.
    pub fn odd_pair_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.odd()).count()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.pairs.iter().any(|p| p.contains(v))
    }

    pub fn pair_of(&self, v: Vertex) -> Option<Pair> {
        self.pairs.iter().copied().find(|p| p.contains(v))
    }

    /// Number of pairs with both endpoints on side `k` of coordinate `i`.
    pub fn sigma(&self, i: usize) -> SigmaCount {
        let mut n0 = 0;
        let mut n1 = 0;
        for p in &self.pairs {
            if p.a().bit(i) == p.b().bit(i) {
                if p.a().bit(i) == 0 {
                    n0 += 1;
                } else {
                    n1 += 1;
                }
            }
        }
        SigmaCount { n0, n1 }
    }

    /// True when no pair crosses coordinate `i`.
    pub fn is_complete_at(&self, i: usize) -> bool {
        let s = self.sigma(i);
        s.n0 + s.n1 == self.len()
    }

    /// True when some coordinate is constant across the whole support, i.e.
    /// the set fits inside a facet of the cube.
    pub fn fits_in_facet(&self) -> bool {
        (0..self.n).any(|i| {
            [0u8, 1u8].iter().any(|&k| {
                self.pairs
                    .iter()
                    .all(|p| p.a().bit(i) == k && p.b().bit(i) == k)
            })
        })
    }

    /// True when every pair is a vertex or an edge and together they touch
    /// all 2^n vertices; such a set is its own connector.
    pub fn is_matching_cover(&self) -> bool {
        self.pairs.iter().all(|p| p.distance() <= 1)
            && self.support().len() == 1usize << self.n
    }

    pub fn classify(&self) -> ClassFlags {
        let chi: i32 = self.pairs.iter().map(|p| p.chi()).sum();
        let odd = self.pairs.iter().all(|p| p.odd());
        let pure = self.pairs.iter().all(|p| !p.degenerate());
        let edge_pair_count = self.pairs.iter().filter(|p| p.is_edge()).count();
        let degenerate_count = self.pairs.iter().filter(|p| p.degenerate()).count();
        let n = self.n;
        let small = self.len() <= n.saturating_sub(1)
            && (n != 4 || edge_pair_count > 0 || !self.fits_in_facet());
        let full = self.len() == n
            && n != 4
            && edge_pair_count >= 2
            && encompassment(self).enc.is_empty();
        ClassFlags {
            odd,
            balanced: chi == 0,
            pure,
            edge_pair_count,
            degenerate_count,
            chi,
            diminishable: odd && (small || full),
        }
    }

    /// Parses `"000-011,001-010"`; the dimension is inferred and must be
    /// uniform.
    pub fn parse(text: &str) -> Result<PairSet> {
        let chunks: Vec<&str> = text.split(',').map(str::trim).collect();
        if chunks.iter().any(|c| c.is_empty()) {
            return Err(Error::BadPairSetLiteral {
                reason: "empty pair entry".to_string(),
            });
        }
        let mut pairs = Vec::new();
        for c in &chunks {
            pairs.push(Pair::parse(c).map_err(|e| Error::BadPairSetLiteral {
                reason: e.to_string(),
            })?);
        }
        let n = pairs[0].dim();
        for p in &pairs {
            if p.dim() != n {
                return Err(Error::BadPairSetLiteral {
                    reason: format!(
                        "mixed vertex lengths: {} vs {}",
                        n,
                        p.dim()
                    ),
                });
            }
        }
        PairSet::new(n, pairs)
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "(empty Q{} pair-set)", self.n);
        }
        for (idx, p) in self.pairs.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

// Debug mirrors Display: the literal form is what you want in assertions.
impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Classification of a pair-set; `diminishable` folds in the special clauses
/// for dimension 4 and for full-size sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlags {
    pub odd: bool,
    pub balanced: bool,
    pub pure: bool,
    pub edge_pair_count: usize,
    pub degenerate_count: usize,
    pub chi: i32,
    pub diminishable: bool,
}

/// Per-coordinate census: how many pairs are constant 0 / constant 1 there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaCount {
    pub n0: usize,
    pub n1: usize,
}

impl SigmaCount {
    pub fn total(self) -> usize {
        self.n0 + self.n1
    }
}

/// Result of projecting a pair-set along a coordinate: either a valid
/// lower-dimensional pair-set, or the defined failure when the projection is
/// nonempty but consists only of degenerate pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Set(PairSet),
    NotAPairSet,
}

impl Projection {
    pub fn into_set(self) -> Result<PairSet> {
        match self {
            Projection::Set(s) => Ok(s),
            Projection::NotAPairSet => Err(Error::Internal {
                what: "projection expected to be a pair-set".to_string(),
            }),
        }
    }
}

/// Projects the pairs lying on side `k` of coordinate `i` down one dimension.
pub fn rho_set(a: &PairSet, i: usize, k: u8) -> Result<Projection> {
    let n = a.dim();
    if i >= n {
        return Err(Error::CoordinateOutOfRange { i, n });
    }
    if n < 2 {
        return Err(Error::DimensionOutOfRange { n: n - 1 });
    }
    let mut pairs = Vec::new();
    for p in a.iter() {
        if p.a().bit(i) == k && p.b().bit(i) == k {
            pairs.push(Pair::new(rho(p.a(), i, k)?, rho(p.b(), i, k)?)?);
        }
    }
    match PairSet::new(n - 1, pairs) {
        Ok(s) => Ok(Projection::Set(s)),
        Err(Error::AllDegenerate) => Ok(Projection::NotAPairSet),
        Err(e) => Err(e),
    }
}

/// Embeds `a0` into the halfcube with coordinate `i` equal to `k` and `a1`
/// into the opposite halfcube. Inverse of `rho_set` on both sides.
pub fn iota_set(a0: &PairSet, a1: &PairSet, i: usize, k: u8) -> Result<PairSet> {
    if a0.dim() != a1.dim() {
        return Err(Error::DimensionMismatch {
            left: a0.dim(),
            right: a1.dim(),
        });
    }
    let n = a0.dim() + 1;
    if i >= n {
        return Err(Error::CoordinateOutOfRange { i, n });
    }
    let mut pairs = Vec::new();
    for p in a0.iter() {
        pairs.push(Pair::new(iota(p.a(), i, k)?, iota(p.b(), i, k)?)?);
    }
    for p in a1.iter() {
        pairs.push(Pair::new(iota(p.a(), i, 1 - k)?, iota(p.b(), i, 1 - k)?)?);
    }
    PairSet::new(n, pairs)
}

/// Vertices whose entire neighborhood lies in ⋃A. `enco` includes such
/// vertices inside the support; `enc` is the troublesome remainder — a vertex
/// in `enc` blocks any odd pair-set from being connectable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encompassment {
    pub enco: BTreeSet<Vertex>,
    pub enc: BTreeSet<Vertex>,
}

pub fn encompassment(a: &PairSet) -> Encompassment {
    let support = a.support();
    let mut candidates: BTreeSet<Vertex> = support.clone();
    for v in &support {
        candidates.extend(v.neighbors());
    }
    let enco: BTreeSet<Vertex> = candidates
        .into_iter()
        .filter(|v| v.neighbors().all(|w| support.contains(&w)))
        .collect();
    let enc: BTreeSet<Vertex> = enco.difference(&support).copied().collect();
    Encompassment { enco, enc }
}

/// Vertices outside `support` whose entire neighborhood lies inside it; the
/// raw-set analogue of [`encompassment`], used when a candidate vertex is
/// weighed before any pair exists around it.
pub(crate) fn enc_of_support(support: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let mut candidates: BTreeSet<Vertex> = BTreeSet::new();
    for v in support {
        candidates.extend(v.neighbors());
    }
    candidates
        .into_iter()
        .filter(|v| !support.contains(v) && v.neighbors().all(|w| support.contains(&w)))
        .collect()
}

/// Outcome of the separating-coordinate scan for sets of two or three
/// edge-pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatingOutcome {
    /// A coordinate `i` such that no pair crosses `i` and two pairs sit on
    /// opposite sides of it.
    Coordinate(usize),
    /// The single exceptional shape: three edge-pairs lying on a 6-cycle.
    SixCycleObstruction,
}

/// Finds a coordinate that splits `a` (two or three edge-pairs) into opposite
/// halfcubes with no pair crossing. Exactly the three-edges-on-a-6-cycle
/// shape has no such coordinate.
pub fn separating_coordinate(a: &PairSet) -> Result<SeparatingOutcome> {
    let sizes_ok = a.len() == 2 || a.len() == 3;
    if !sizes_ok || !a.iter().all(|p| p.is_edge()) {
        return Err(Error::NotEdgePairTriple);
    }
    for i in 0..a.dim() {
        let s = a.sigma(i);
        if s.total() == a.len() && s.n0 > 0 && s.n1 > 0 {
            return Ok(SeparatingOutcome::Coordinate(i));
        }
    }
    Ok(SeparatingOutcome::SixCycleObstruction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(text: &str) -> PairSet {
        PairSet::parse(text).unwrap()
    }

    #[test]
    fn validation_rejects_reuse_and_all_degenerate() {
        assert_eq!(ps("00-01,10-11").len(), 2);
        assert!(matches!(
            PairSet::parse("00-01,01-11"),
            Err(Error::OverlappingPairs { .. })
        ));
        assert!(matches!(
            PairSet::parse("00-00"),
            Err(Error::AllDegenerate)
        ));
        // a degenerate pair may share nothing with other pairs
        assert!(matches!(
            PairSet::parse("00-00,00-01"),
            Err(Error::OverlappingPairs { .. })
        ));
        assert!(PairSet::parse("00-00,10-11").is_ok());
        assert!(matches!(
            PairSet::parse("00-01,000-001"),
            Err(Error::BadPairSetLiteral { .. })
        ));
    }

    #[test]
    fn classify_basic_flags() {
        let f = ps("000-001").classify();
        assert!(f.odd && f.balanced && f.pure && f.diminishable);
        assert_eq!(f.edge_pair_count, 1);
        assert_eq!(f.chi, 0);

        let f = ps("00-11,01-01").classify();
        assert_eq!(f.chi, 0); // +2 from the even pair, -2 from the degenerate
        assert!(f.balanced && !f.odd && !f.pure);
        assert_eq!(f.degenerate_count, 1);
    }

    #[test]
    fn diminishable_sees_the_dimension_4_facet_clause() {
        // three diametrical pairs of one facet: odd, no edge-pair, confined
        let inside = ps("0000-0111,0001-0110,0010-0101");
        assert!(inside.fits_in_facet());
        assert!(!inside.classify().diminishable);

        // same shape with one pair pushed out of every facet
        let outside = ps("0000-0111,0001-0110,1010-1101");
        assert!(!outside.fits_in_facet());
        assert!(outside.classify().diminishable);

        // an edge-pair waives the facet clause even when confined
        let with_edge = ps("0000-0001,0011-0111");
        assert!(with_edge.fits_in_facet());
        assert!(with_edge.classify().diminishable);
    }

    #[test]
    fn full_size_clause_requires_edges_and_no_enclosed_vertex() {
        // |A| = n = 3 with three edge-pairs and nothing encompassed
        let a = ps("000-001,010-110,011-111");
        let f = a.classify();
        assert!(f.odd);
        assert_eq!(f.edge_pair_count, 3);
        assert!(encompassment(&a).enc.is_empty());
        assert!(f.diminishable);

        // the 6-cycle triple encloses both leftover vertices, so the
        // enc(A)=∅ clause fails
        let cyc = ps("001-011,010-110,100-101");
        assert_eq!(encompassment(&cyc).enc.len(), 2);
        assert!(!cyc.classify().diminishable);
    }

    #[test]
    fn sigma_counts_constant_sides() {
        let a = ps("00-01");
        assert_eq!(a.sigma(0), SigmaCount { n0: 1, n1: 0 });
        assert_eq!(a.sigma(1), SigmaCount { n0: 0, n1: 0 });
        let b = ps("000-001,110-111");
        assert_eq!(b.sigma(0), SigmaCount { n0: 1, n1: 1 });
        assert!(b.is_complete_at(0));
        assert!(!b.is_complete_at(2));
    }

    #[test]
    fn rho_projects_one_side() {
        let a = ps("000-011,100-111");
        match rho_set(&a, 0, 0).unwrap() {
            Projection::Set(s) => assert_eq!(s, ps("00-11")),
            other => panic!("unexpected {other:?}"),
        }
        // a surviving side consisting only of a degenerate image
        let b = ps("011-011,000-001");
        assert_eq!(rho_set(&b, 1, 1).unwrap(), Projection::NotAPairSet);
        // empty projection is a valid (empty) pair-set
        match rho_set(&ps("01-10"), 0, 0).unwrap() {
            Projection::Set(s) => assert!(s.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn iota_embeds_both_halves() {
        let a0 = ps("00-11");
        let a1 = ps("01-10");
        let up = iota_set(&a0, &a1, 0, 0).unwrap();
        assert_eq!(up, ps("000-011,101-110"));
        // and rho inverts both sides
        assert_eq!(rho_set(&up, 0, 0).unwrap(), Projection::Set(a0));
        assert_eq!(rho_set(&up, 0, 1).unwrap(), Projection::Set(a1));

        let empty = PairSet::empty(1).unwrap();
        let one = ps("0-1");
        let up = iota_set(&empty, &one, 1, 0).unwrap();
        assert_eq!(up, ps("01-11"));
    }

    #[test]
    fn encompassment_finds_surrounded_vertices() {
        // the support holds all three neighbors of 000 and nothing else
        // around it, so exactly 000 is cut off
        let a = ps("001-010,100-101");
        let e = encompassment(&a);
        let zero = Vertex::parse("000").unwrap();
        assert!(e.enc.contains(&zero));
        assert_eq!(e.enc.len(), 1);

        // a support equal to a full parity class strands the other class
        let odd_class = ps("001-010,100-111");
        assert_eq!(encompassment(&odd_class).enc.len(), 4);

        let b = ps("000-111");
        assert!(encompassment(&b).enc.is_empty());
    }

    #[test]
    fn encompassment_matches_naive_scan_in_q3() {
        // independent check against a scan over all vertices
        let sets = [
            ps("001-010,100-111"),
            ps("000-001"),
            ps("000-001,010-110,011-111"),
            ps("000-100,001-101,010-110,011-111"),
        ];
        for a in &sets {
            let sup = a.support();
            let naive: BTreeSet<Vertex> = (0..8u16)
                .map(|b| Vertex::new(3, b).unwrap())
                .filter(|v| v.neighbors().all(|w| sup.contains(&w)))
                .collect();
            assert_eq!(encompassment(a).enco, naive, "set {a}");
        }
    }

    #[test]
    fn separating_coordinate_and_its_exception() {
        let two = ps("000-001,110-111");
        assert_eq!(
            separating_coordinate(&two).unwrap(),
            SeparatingOutcome::Coordinate(0)
        );
        // alternate edges of the 6-cycle through the middle layers of Q3
        let cyc = ps("001-011,010-110,100-101");
        assert_eq!(
            separating_coordinate(&cyc).unwrap(),
            SeparatingOutcome::SixCycleObstruction
        );
        assert!(matches!(
            separating_coordinate(&ps("000-011,100-101")),
            Err(Error::NotEdgePairTriple)
        ));
    }

    #[test]
    fn matching_cover_detection() {
        assert!(ps("00-01,10-11").is_matching_cover());
        assert!(ps("00-00,01-11,10-10").is_matching_cover());
        assert!(!ps("00-01").is_matching_cover());
        assert!(!ps("00-11,01-10").is_matching_cover());
    }

    #[test]
    fn odd_implies_balanced_on_small_sweep() {
        for bits_a in 0..8u16 {
            for bits_b in 0..8u16 {
                let a = Vertex::new(3, bits_a).unwrap();
                let b = Vertex::new(3, bits_b).unwrap();
                let Ok(p) = Pair::new(a, b) else { continue };
                let Ok(s) = PairSet::new(3, vec![p]) else {
                    continue;
                };
                let f = s.classify();
                if f.odd {
                    assert!(f.balanced);
                }
            }
        }
    }
}
