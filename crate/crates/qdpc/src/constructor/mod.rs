//! The recursive connector constructor.
//!
//! [`solve`] decides a pair-set without search: it either produces a
//! connector together with the [`Trace`] of the recursion that built it, or
//! a [`Refutation`] naming the reason none exists, or honestly reports a gap
//! in its catalogue. Connectors are never assembled ad hoc — every route
//! records a trace, the trace is replayed into a connector, and the result
//! is verified against the input before it is returned.
//!
//! The decision procedure, in order:
//!
//! 1. empty sets, sign imbalance, and (for all-odd sets) an enclosed
//!    uncovered vertex are refuted outright;
//! 2. matching covers and single pairs are solved directly;
//! 3. the finitely many catalogued impossible classes are refuted by
//!    canonical form;
//! 4. everything else dispatches on the dimension: frozen catalogues for
//!    dimensions ≤ 3 and the rearrangement rules of [`dim4`] for dimension 4.

mod dim3;
mod dim4;
mod gray;
mod lift;
pub mod tables;
mod trace;

use std::fmt;

pub use gray::hamiltonian_path;
pub use trace::{replay, Trace};

use crate::error::{Error, Result};
use crate::forbidden;
use crate::oracle::{verify_connector, Connector};
use crate::pair::{encompassment, PairSet};
use crate::symmetry::canonical_form;
use crate::vertex::Vertex;

/// Why no connector exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The signed endpoint census is off balance; `chi` is the nonzero sum.
    Parity { chi: i32 },
    /// All pairs are odd, yet `vertex` is uncovered with every neighbor
    /// inside the support, so no path can pass through it.
    Encompassment { vertex: Vertex },
    /// The set belongs to one of the finitely many catalogued impossible
    /// classes; `canonical` is its canonical form.
    Forbidden {
        name: &'static str,
        canonical: PairSet,
    },
    /// An empty set covers nothing, so it cannot partition the cube.
    EmptyPairSet,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::Parity { chi } => {
                write!(f, "endpoint signs sum to {chi}, not zero")
            }
            Refutation::Encompassment { vertex } => write!(
                f,
                "uncovered vertex {vertex} has every neighbor inside the support"
            ),
            Refutation::Forbidden { name, canonical } => {
                write!(f, "matches impossible class {name} (canonical form {canonical})")
            }
            Refutation::EmptyPairSet => write!(f, "an empty pair-set covers nothing"),
        }
    }
}

/// Outcome of [`solve`].
#[derive(Debug, Clone)]
pub enum Solution {
    /// A verified path system, one path per pair, partitioning the cube.
    Connectable { connector: Connector, trace: Trace },
    /// No connector exists, for the stated reason.
    Unconnectable(Refutation),
    /// The recursion has no rule for this set; a search-based decision is
    /// still possible.
    Unsupported { reason: String },
}

impl Solution {
    pub fn is_connectable(&self) -> bool {
        matches!(self, Solution::Connectable { .. })
    }
}

/// Internal outcome of the rule dispatch, before replay and verification.
pub(crate) enum Build {
    Done(Trace),
    Refuted(Refutation),
    Unsupported(String),
}

/// Decides `a` and, when connectable, constructs a verified connector.
pub fn solve(a: &PairSet) -> Result<Solution> {
    match build(a)? {
        Build::Done(trace) => {
            let (set, connector) = replay(&trace)?;
            if set != *a {
                return Err(Error::Internal {
                    what: format!("construction for {a} replays to {set}"),
                });
            }
            if let Err(violation) = verify_connector(a, &connector) {
                return Err(Error::Internal {
                    what: format!("construction for {a} fails verification: {violation}"),
                });
            }
            Ok(Solution::Connectable { connector, trace })
        }
        Build::Refuted(refutation) => Ok(Solution::Unconnectable(refutation)),
        Build::Unsupported(reason) => Ok(Solution::Unsupported { reason }),
    }
}

fn build(a: &PairSet) -> Result<Build> {
    if a.is_empty() {
        return Ok(Build::Refuted(Refutation::EmptyPairSet));
    }
    let flags = a.classify();
    if !flags.balanced {
        return Ok(Build::Refuted(Refutation::Parity { chi: flags.chi }));
    }
    if flags.odd {
        if let Some(&vertex) = encompassment(a).enc.iter().next() {
            return Ok(Build::Refuted(Refutation::Encompassment { vertex }));
        }
    }
    if a.is_matching_cover() {
        return Ok(Build::Done(Trace::MatchingCover { set: a.clone() }));
    }
    if a.len() == 1 {
        let p = a.iter().next().copied().expect("nonempty");
        return Ok(Build::Done(Trace::GrayPath {
            from: p.a(),
            to: p.b(),
        }));
    }
    if let Some((name, canonical)) = forbidden_match(a)? {
        return Ok(Build::Refuted(Refutation::Forbidden { name, canonical }));
    }
    match a.dim() {
        1 => Err(Error::Internal {
            what: format!("a balanced dimension-1 set must be a cover: {a}"),
        }),
        2 => required(table_lookup(a, "q2")?, a),
        3 => dim3::build(a, &flags),
        4 => dim4::build(a, &flags),
        n => Ok(Build::Unsupported(format!(
            "the recursive catalogue stops at dimension 4; got {n}"
        ))),
    }
}

/// Checks whether `a` is one of the catalogued impossible classes.
fn forbidden_match(a: &PairSet) -> Result<Option<(&'static str, PairSet)>> {
    if forbidden::FORBIDDEN.is_empty() || a.dim() > 4 || a.len() > 3 {
        return Ok(None);
    }
    let canon = canonical_form(a)?;
    let literal = canon.set.to_string();
    Ok(forbidden::name_of(&literal).map(|name| (name, canon.set)))
}

/// Looks `a` up in a frozen catalogue by canonical form. `Ok(None)` means
/// the catalogue has no entry for this class; a stored `None` connector
/// means the class is impossible, which must have been refuted upstream.
pub(crate) fn table_lookup(a: &PairSet, label: &'static str) -> Result<Option<Build>> {
    let table = tables::by_label(label).ok_or_else(|| Error::Internal {
        what: format!("unknown catalogue {label}"),
    })?;
    let canon = canonical_form(a)?;
    let literal = canon.set.to_string();
    match table.iter().find(|(key, _)| *key == literal) {
        None => Ok(None),
        Some((_, Some(_))) => Ok(Some(Build::Done(Trace::Table {
            table: label,
            canonical: canon.set,
            witness: canon.witness,
        }))),
        Some((_, None)) => Err(Error::Internal {
            what: format!("{a} matches a catalogued impossible class that escaped refutation"),
        }),
    }
}

/// Unwraps a catalogue lookup that the construction requires to succeed.
pub(crate) fn required(found: Option<Build>, a: &PairSet) -> Result<Build> {
    found.ok_or_else(|| Error::Internal {
        what: format!("no catalogue entry covers {a}"),
    })
}

/// Solves a subproblem that the surrounding construction has proven
/// connectable; anything else is an internal error.
pub(crate) fn must_solve(a: &PairSet, role: &str) -> Result<(Connector, Trace)> {
    match solve(a)? {
        Solution::Connectable { connector, trace } => Ok((connector, trace)),
        Solution::Unconnectable(refutation) => Err(Error::Internal {
            what: format!("{role} {a} is refuted ({refutation}) but required"),
        }),
        Solution::Unsupported { reason } => Err(Error::Internal {
            what: format!("{role} {a} is out of catalogue: {reason}"),
        }),
    }
}

/// Solves a subproblem speculatively: refuted or unsupported sets yield
/// `None` so the caller can try another shape.
pub(crate) fn try_solve(a: &PairSet) -> Result<Option<(Connector, Trace)>> {
    Ok(match solve(a)? {
        Solution::Connectable { connector, trace } => Some((connector, trace)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::Pair;

    fn ps(text: &str) -> PairSet {
        PairSet::parse(text).unwrap()
    }

    fn solved(text: &str) -> (Connector, Trace) {
        match solve(&ps(text)).unwrap() {
            Solution::Connectable { connector, trace } => (connector, trace),
            other => panic!("{text} should be connectable, got {other:?}"),
        }
    }

    #[test]
    fn refutes_imbalance_and_enclosure() {
        match solve(&ps("00-11")).unwrap() {
            Solution::Unconnectable(Refutation::Parity { chi }) => assert_eq!(chi.abs(), 2),
            other => panic!("expected a parity refutation, got {other:?}"),
        }
        // the three neighbors of 000 are all endpoints: 000 is walled in
        match solve(&ps("001-011,010-110,100-101")).unwrap() {
            Solution::Unconnectable(Refutation::Encompassment { vertex }) => {
                assert_eq!(vertex.to_string(), "000");
            }
            other => panic!("expected an enclosure refutation, got {other:?}"),
        }
        match solve(&PairSet::empty(3).unwrap()).unwrap() {
            Solution::Unconnectable(Refutation::EmptyPairSet) => {}
            other => panic!("expected the empty refutation, got {other:?}"),
        }
    }

    #[test]
    fn solves_covers_and_single_pairs() {
        let (connector, trace) = solved("00-01,10-11");
        assert_eq!(trace.rule(), "matching-cover");
        assert_eq!(connector.len(), 2);

        let (connector, trace) = solved("000-111");
        assert_eq!(trace.rule(), "gray-path");
        let path = connector.path(&Pair::parse("000-111").unwrap()).unwrap();
        assert_eq!(path.len(), 8);
    }

    #[test]
    fn replay_reproduces_the_returned_connector() {
        let (connector, trace) = solved("0000-0001,0010-0011,0100-0101,0110-0111,1000-1001,1010-1011,1100-1101,1110-1111");
        let (set, again) = replay(&trace).unwrap();
        assert_eq!(set, ps("0000-0001,0010-0011,0100-0101,0110-0111,1000-1001,1010-1011,1100-1101,1110-1111"));
        assert_eq!(connector, again);
    }
}
