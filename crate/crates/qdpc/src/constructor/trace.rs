//! Replayable construction recipes.
//!
//! Every successful construction returns a [`Trace`] recording which rule
//! fired and the data it consumed. [`replay`] rebuilds the same path system
//! from the trace alone — no searching, no table scans beyond direct lookup —
//! so a trace doubles as an audit trail and as a compact certificate that can
//! be checked independently of the solver that produced it.

use crate::completion::{apply_script, MergeStep};
use crate::constructor::{gray, lift, tables};
use crate::error::{Error, Result};
use crate::oracle::Connector;
use crate::pair::{iota_set, Pair, PairSet};
use crate::symmetry::Automorphism;
use crate::vertex::Vertex;

/// One node of a construction recipe. Leaf variants rebuild a connector
/// directly; the inner variants combine children.
#[derive(Debug, Clone)]
pub enum Trace {
    /// A single path from `from` to `to` covering the whole cube, built by
    /// the halving recursion for odd-distance endpoints.
    GrayPath { from: Vertex, to: Vertex },
    /// Every pair has distance at most one and the support is the whole
    /// cube: each pair is its own path.
    MatchingCover { set: PairSet },
    /// A frozen connector for `canonical`, pulled back through the witness
    /// automorphism (which maps the solved set onto `canonical`).
    Table {
        table: &'static str,
        canonical: PairSet,
        witness: Automorphism,
    },
    /// The inner solution with one of its paths cut into chunks: walking the
    /// path from `oriented_from`, consecutive runs of the given lengths
    /// become paths of their own.
    Split {
        inner_set: PairSet,
        inner: Box<Trace>,
        source: Pair,
        oriented_from: Vertex,
        cut_lengths: Vec<usize>,
    },
    /// Two facet solutions glued along `coordinate` (`left` is the side-0
    /// half), then fused by the merge script to restore pairs that cross.
    Lift {
        label: &'static str,
        coordinate: usize,
        left_set: PairSet,
        left: Box<Trace>,
        right_set: PairSet,
        right: Box<Trace>,
        merges: Vec<MergeStep>,
    },
}

impl Trace {
    /// Short rule name, for reports.
    pub fn rule(&self) -> &'static str {
        match self {
            Trace::GrayPath { .. } => "gray-path",
            Trace::MatchingCover { .. } => "matching-cover",
            Trace::Table { table, .. } => table,
            Trace::Split { .. } => "split",
            Trace::Lift { label, .. } => label,
        }
    }

    /// Indented multi-line description of the whole recipe.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        self.describe_into(&mut out, 0);
        out
    }

    fn describe_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        match self {
            Trace::GrayPath { from, to } => {
                out.push_str(&format!("{pad}gray-path {from} -> {to}\n"));
            }
            Trace::MatchingCover { set } => {
                out.push_str(&format!("{pad}matching-cover {set}\n"));
            }
            Trace::Table {
                table, canonical, ..
            } => {
                out.push_str(&format!("{pad}table {table}: {canonical}\n"));
            }
            Trace::Split {
                source,
                cut_lengths,
                inner,
                ..
            } => {
                out.push_str(&format!(
                    "{pad}split path {source} into runs {cut_lengths:?}\n"
                ));
                inner.describe_into(out, depth + 1);
            }
            Trace::Lift {
                label,
                coordinate,
                left_set,
                left,
                right_set,
                right,
                merges,
            } => {
                out.push_str(&format!(
                    "{pad}lift[{label}] at coordinate {coordinate}, {} merge(s)\n",
                    merges.len()
                ));
                out.push_str(&format!("{pad}  side 0: {left_set}\n"));
                left.describe_into(out, depth + 2);
                out.push_str(&format!("{pad}  side 1: {right_set}\n"));
                right.describe_into(out, depth + 2);
            }
        }
    }
}

/// Rebuilds the pair-set a trace solves together with its connector.
///
/// Replay is deterministic and self-checking: stored child sets must match
/// what the children rebuild, and every splice must line up, otherwise an
/// internal error is reported rather than a wrong connector.
pub fn replay(trace: &Trace) -> Result<(PairSet, Connector)> {
    match trace {
        Trace::GrayPath { from, to } => {
            let path = gray::hamiltonian_path(*from, *to)?;
            let set = PairSet::new(from.dim(), vec![Pair::new(*from, *to)?])?;
            let connector = Connector::from_paths(set.dim(), vec![path])?;
            Ok((set, connector))
        }
        Trace::MatchingCover { set } => Ok((set.clone(), lift::pairs_as_paths(set)?)),
        Trace::Table {
            table,
            canonical,
            witness,
        } => {
            let entries = tables::by_label(table).ok_or_else(|| Error::Internal {
                what: format!("unknown catalogue {table:?} in trace"),
            })?;
            let key = canonical.to_string();
            let text = entries
                .iter()
                .find(|(canon, _)| *canon == key)
                .and_then(|(_, conn)| *conn)
                .ok_or_else(|| Error::Internal {
                    what: format!("catalogue {table} has no connector for {key}"),
                })?;
            let stored = Connector::parse(text)?;
            let back = witness.inverse();
            let set = back.apply_set(canonical)?;
            let connector = lift::map_connector(&back, &stored)?;
            Ok((set, connector))
        }
        Trace::Split {
            inner_set,
            inner,
            source,
            oriented_from,
            cut_lengths,
        } => {
            let (set, connector) = replay(inner)?;
            if set != *inner_set {
                return Err(Error::Internal {
                    what: format!("split recipe expected {inner_set}, child rebuilt {set}"),
                });
            }
            lift::split_path(&set, &connector, *source, *oriented_from, cut_lengths)
        }
        Trace::Lift {
            coordinate,
            left_set,
            left,
            right_set,
            right,
            merges,
            ..
        } => {
            let (ls, lc) = replay(left)?;
            let (rs, rc) = replay(right)?;
            if ls != *left_set || rs != *right_set {
                return Err(Error::Internal {
                    what: "lift recipe children rebuilt different sets".to_string(),
                });
            }
            let mut set = iota_set(&ls, &rs, *coordinate, 0)?;
            let mut connector = lift::lift_connector(&lc, &rc, *coordinate)?;
            for step in merges {
                set = apply_script(&set, std::slice::from_ref(step))?;
                connector = lift::apply_merge_to_connector(&connector, step)?;
            }
            Ok((set, connector))
        }
    }
}
