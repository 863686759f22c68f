//! Randomized invariants. Two laws carry most of the crate's weight, so they
//! get fuzzed beyond the exhaustive fixed-size sweeps in the other suites:
//! canonicalization must be a true orbit invariant, and the recursive
//! construction must never contradict the exhaustive search.

use proptest::prelude::*;

use qdpc::constructor::{solve, Solution};
use qdpc::oracle::{oracle_solve, verify_connector};
use qdpc::pair::{Pair, PairSet};
use qdpc::symmetry::{are_isomorphic, canonical_form, group};
use qdpc::vertex::all_vertices;

/// Random pair-sets of dimension 2..=4 with up to four support-disjoint
/// pairs. The first pair is forced non-degenerate (all-degenerate sets are
/// rejected at construction); later picks may be degenerate, and overlapping
/// picks are dropped rather than rejected, so every draw yields a set.
fn arb_pair_set() -> impl Strategy<Value = PairSet> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let m = 1usize << n;
            (
                Just(n),
                (0..m, 1..m),
                proptest::collection::vec((0..m, 0..m), 0..=3),
            )
        })
        .prop_map(|(n, (i0, d0), picks)| {
            let verts = all_vertices(n).unwrap();
            let mut used = vec![false; verts.len()];
            let mut pairs = Vec::new();
            let j0 = (i0 + d0) % verts.len();
            used[i0] = true;
            used[j0] = true;
            pairs.push(Pair::new(verts[i0], verts[j0]).unwrap());
            for (i, j) in picks {
                if used[i] || used[j] {
                    continue;
                }
                used[i] = true;
                used[j] = true;
                pairs.push(Pair::new(verts[i], verts[j]).unwrap());
            }
            PairSet::new(n, pairs).unwrap()
        })
}

proptest! {
    /// Every image of a set under the automorphism group canonicalizes to the
    /// same fixed point, and the recorded witness actually realizes it.
    #[test]
    fn canonicalization_is_an_orbit_invariant(
        a in arb_pair_set(),
        pick in any::<prop::sample::Index>(),
    ) {
        let autos: Vec<_> = group(a.dim()).collect();
        let g = &autos[pick.index(autos.len())];
        let image = g.apply_set(&a).unwrap();

        let canon = canonical_form(&a).unwrap();
        prop_assert_eq!(&canonical_form(&image).unwrap().set, &canon.set);
        prop_assert_eq!(&canonical_form(&canon.set).unwrap().set, &canon.set);
        prop_assert!(are_isomorphic(&a, &image).unwrap());
        prop_assert_eq!(&canon.witness.apply_set(&a).unwrap(), &canon.set);
        prop_assert!(canon.set <= a.clone(), "canonical form must be least in its orbit");
    }

    /// Whenever the recursive construction reaches a verdict, the exhaustive
    /// search reaches the same one — and a claimed connector re-verifies.
    #[test]
    fn construction_never_contradicts_search(a in arb_pair_set()) {
        match solve(&a).unwrap() {
            Solution::Connectable { connector, .. } => {
                if let Err(violation) = verify_connector(&a, &connector) {
                    return Err(TestCaseError::fail(format!("bad connector for {a}: {violation}")));
                }
                prop_assert!(oracle_solve(&a).unwrap().is_connectable(), "search refutes {}", a);
            }
            Solution::Unconnectable(_) => {
                prop_assert!(!oracle_solve(&a).unwrap().is_connectable(), "search solves {}", a);
            }
            Solution::Unsupported { .. } => {}
        }
    }
}
