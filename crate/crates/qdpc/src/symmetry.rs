use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::pair::{Pair, PairSet};
use crate::vertex::Vertex;

/// Largest dimension for which the full n!·2ⁿ group sweep is offered.
pub const CANONICAL_DIM_CAP: usize = 6;

/// A cube automorphism: permute coordinates, then xor a translation mask.
/// These n!·2ⁿ maps form the full automorphism group of Qₙ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    /// coordinate `i` of the input lands on coordinate `perm[i]`
    perm: Vec<usize>,
    mask: u16,
}

impl Automorphism {
    pub fn new(perm: Vec<usize>, mask: u16) -> Result<Automorphism> {
        let n = perm.len();
        if n == 0 || n > crate::vertex::MAX_DIM {
            return Err(Error::DimensionOutOfRange { n });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Internal {
                    what: format!("not a permutation of 0..{n}: {perm:?}"),
                });
            }
            seen[p] = true;
        }
        if n < 16 && mask >> n != 0 {
            return Err(Error::Internal {
                what: format!("mask {mask:#b} does not fit dimension {n}"),
            });
        }
        Ok(Automorphism { perm, mask })
    }

    pub fn identity(n: usize) -> Automorphism {
        Automorphism {
            perm: (0..n).collect(),
            mask: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Where each input coordinate lands: coordinate `i` maps to
    /// `permutation()[i]`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// The bit-flip part, as the image of the all-zero vertex.
    pub fn translation(&self) -> Vertex {
        Vertex::new(self.dim(), self.mask).expect("mask fits the dimension")
    }

    fn permute_bits(&self, bits: u16) -> u16 {
        let mut out = 0u16;
        for (i, &p) in self.perm.iter().enumerate() {
            out |= ((bits >> i) & 1) << p;
        }
        out
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        debug_assert_eq!(v.dim(), self.dim());
        Vertex::new(self.dim(), self.permute_bits(v.bits()) ^ self.mask)
            .expect("image stays in range")
    }

    pub fn apply_pair(&self, p: Pair) -> Pair {
        Pair::new(self.apply(p.a()), self.apply(p.b())).expect("dimensions preserved")
    }

    /// Image of a whole pair-set; a bijection keeps the set valid.
    pub fn apply_set(&self, a: &PairSet) -> Result<PairSet> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: a.dim(),
            });
        }
        PairSet::new(a.dim(), a.iter().map(|&p| self.apply_pair(p)).collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        debug_assert_eq!(self.dim(), other.dim());
        let perm = (0..self.dim()).map(|i| self.perm[other.perm[i]]).collect();
        Automorphism {
            perm,
            mask: self.permute_bits(other.mask) ^ self.mask,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let n = self.dim();
        let mut inv = vec![0usize; n];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        let back = Automorphism {
            perm: inv,
            mask: 0,
        };
        let mask = back.permute_bits(self.mask);
        Automorphism {
            perm: back.perm,
            mask,
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coords [")?;
        for (i, p) in self.perm.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}→{p}")?;
        }
        write!(f, "], flip {}", self.translation())
    }
}

/// Order of the automorphism group of Qₙ.
pub fn group_order(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() * (1u64 << n)
}

/// All automorphisms of Qₙ, in a fixed deterministic order
/// (permutations lexicographically, masks ascending within each).
/// Only offered up to the sweep cap; the factorial blow-up makes larger
/// dimensions pointless anyway.
pub fn group(n: usize) -> impl Iterator<Item = Automorphism> {
    assert!(
        n >= 1 && n <= CANONICAL_DIM_CAP,
        "group sweep supports 1..={CANONICAL_DIM_CAP}, got {n}"
    );
    (0..n)
        .permutations(n)
        .flat_map(move |perm| {
            (0u16..(1u16 << n)).map(move |mask| Automorphism {
                perm: perm.clone(),
                mask,
            })
        })
}

/// The lexicographically least image of a pair-set over the whole group,
/// with one automorphism that realizes it.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub set: PairSet,
    pub witness: Automorphism,
}

pub fn canonical_form(a: &PairSet) -> Result<CanonicalForm> {
    let n = a.dim();
    if n > CANONICAL_DIM_CAP {
        return Err(Error::CanonicalDimensionCap {
            n,
            max: CANONICAL_DIM_CAP,
        });
    }
    let mut best: Option<CanonicalForm> = None;
    for f in group(n) {
        let image = f.apply_set(a)?;
        if best.as_ref().map_or(true, |b| image < b.set) {
            best = Some(CanonicalForm {
                set: image,
                witness: f,
            });
        }
    }
    Ok(best.expect("group is never empty"))
}

pub fn are_isomorphic(a: &PairSet, b: &PairSet) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(canonical_form(a)?.set == canonical_form(b)?.set)
}

/// Size of the isomorphism orbit of `a`, via orbit–stabilizer.
pub fn orbit_size(a: &PairSet) -> Result<u64> {
    Ok(group_order(a.dim()) / stabilizer_order(a)?)
}

pub fn stabilizer_order(a: &PairSet) -> Result<u64> {
    let n = a.dim();
    if n > CANONICAL_DIM_CAP {
        return Err(Error::CanonicalDimensionCap {
            n,
            max: CANONICAL_DIM_CAP,
        });
    }
    let mut stab = 0u64;
    for f in group(n) {
        if f.apply_set(a)? == *a {
            stab += 1;
        }
    }
    Ok(stab)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(text: &str) -> PairSet {
        PairSet::parse(text).unwrap()
    }

    #[test]
    fn identity_and_translation() {
        let a = ps("000-001");
        let id = Automorphism::identity(3);
        assert_eq!(id.apply_set(&a).unwrap(), a);
        let t = Automorphism::new(vec![0, 1, 2], 0b111).unwrap();
        assert_eq!(t.apply_set(&a).unwrap(), ps("110-111"));
    }

    #[test]
    fn group_axioms_hold_exhaustively_in_q2() {
        let all: Vec<Automorphism> = group(2).collect();
        assert_eq!(all.len() as u64, group_order(2));
        let verts: Vec<Vertex> = (0..4u16).map(|b| Vertex::new(2, b).unwrap()).collect();
        for f in &all {
            let inv = f.inverse();
            for &v in &verts {
                assert_eq!(inv.apply(f.apply(v)), v);
            }
            for g in &all {
                let h = f.compose(g);
                for &v in &verts {
                    assert_eq!(h.apply(v), f.apply(g.apply(v)));
                }
            }
        }
    }

    #[test]
    fn classification_is_invariant_under_the_group() {
        let a = ps("0000-0111,0001-0110,0010-0101");
        let fa = a.classify();
        for f in group(4).step_by(37) {
            let b = f.apply_set(&a).unwrap();
            let fb = b.classify();
            assert_eq!(fa.odd, fb.odd);
            assert_eq!(fa.balanced, fb.balanced);
            assert_eq!(fa.edge_pair_count, fb.edge_pair_count);
            assert_eq!(fa.diminishable, fb.diminishable);
        }
    }

    #[test]
    fn canonical_form_is_orbit_constant() {
        let a = ps("000-011,101-110");
        let ca = canonical_form(&a).unwrap();
        assert_eq!(ca.witness.apply_set(&a).unwrap(), ca.set);
        for f in group(3).step_by(7) {
            let b = f.apply_set(&a).unwrap();
            assert_eq!(canonical_form(&b).unwrap().set, ca.set);
        }
    }

    #[test]
    fn edges_form_a_single_class() {
        assert!(are_isomorphic(&ps("000-001"), &ps("010-110")).unwrap());
        assert!(!are_isomorphic(&ps("000-001"), &ps("000-111")).unwrap());
    }

    #[test]
    fn orbit_sizes_divide_the_group_order() {
        for text in ["000-001", "000-111", "000-011,101-110"] {
            let a = ps(text);
            let orbit = orbit_size(&a).unwrap();
            assert_eq!(group_order(3) % orbit, 0, "set {a}");
        }
        // a single edge-pair's orbit is exactly the 12 edges of the cube
        let edge_orbit = orbit_size(&ps("000-001")).unwrap();
        assert_eq!(edge_orbit, 12);
    }
}
