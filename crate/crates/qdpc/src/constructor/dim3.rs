//! Recursive construction for dimension-3 pair-sets.
//!
//! Everything that reaches this module is balanced, has no enclosure
//! refutation pending (odd sets with an enclosed vertex were rejected
//! upstream), is not a matching cover, has at least two pairs, and is not a
//! catalogued impossible class. Two routes remain: small sets resolve
//! against the frozen catalogue, and triples whose edge-pairs separate the
//! cube split into two facet problems.

use crate::constructor::{must_solve, required, table_lookup, Build, Trace};
use crate::error::{Error, Result};
use crate::pair::{rho_set, separating_coordinate, ClassFlags, PairSet, SeparatingOutcome};

pub(super) fn build(a: &PairSet, flags: &ClassFlags) -> Result<Build> {
    match a.len() {
        2 => required(table_lookup(a, "q3-balanced-2")?, a),
        3 => triple(a, flags),
        len => Ok(Build::Unsupported(format!(
            "dimension-3 sets of size {len} are only handled as matching covers"
        ))),
    }
}

fn triple(a: &PairSet, flags: &ClassFlags) -> Result<Build> {
    if !flags.diminishable {
        return Ok(Build::Unsupported(
            "dimension-3 triples outside the diminishable family are not catalogued".into(),
        ));
    }
    if flags.edge_pair_count == 3 {
        match separating_lift(a)? {
            Some(trace) => Ok(Build::Done(trace)),
            None => Err(Error::Internal {
                what: format!(
                    "three disjoint edge-pairs in dimension 3 with no enclosed vertex \
                     must admit a separating coordinate: {a}"
                ),
            }),
        }
    } else {
        required(table_lookup(a, "q3-diminishable-3")?, a)
    }
}

/// Splits a set whose edge-pairs all run along one coordinate into its two
/// facet shadows and solves each side independently. No merge steps are
/// needed: every pair stays inside its own facet.
///
/// Returns `None` when no coordinate separates the set. Reused by the
/// dimension-4 module when it rebuilds an intermediate connector.
pub(super) fn separating_lift(a: &PairSet) -> Result<Option<Trace>> {
    let j = match separating_coordinate(a)? {
        SeparatingOutcome::Coordinate(j) => j,
        SeparatingOutcome::SixCycleObstruction => return Ok(None),
    };
    let left = rho_set(a, j, 0)?.into_set()?;
    let right = rho_set(a, j, 1)?.into_set()?;
    let (_, left_trace) = must_solve(&left, "separated facet half")?;
    let (_, right_trace) = must_solve(&right, "separated facet half")?;
    Ok(Some(Trace::Lift {
        label: "separating",
        coordinate: j,
        left_set: left,
        left: Box::new(left_trace),
        right_set: right,
        right: Box::new(right_trace),
        merges: Vec::new(),
    }))
}
