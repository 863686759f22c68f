//! Connector assembly primitives shared by the construction rules and by
//! trace replay: embedding facet solutions, fusing paths across a bridge,
//! cutting a path into chunks, and transporting a connector through a cube
//! automorphism.

use std::collections::BTreeMap;

use crate::completion::MergeStep;
use crate::error::{Error, Result};
use crate::oracle::Connector;
use crate::pair::{Pair, PairSet};
use crate::symmetry::Automorphism;
use crate::vertex::{iota, Vertex};

/// The trivial connector for a matching cover: each pair is its own path.
pub(crate) fn pairs_as_paths(a: &PairSet) -> Result<Connector> {
    let mut raw = Vec::with_capacity(a.len());
    for p in a.iter() {
        if p.distance() > 1 {
            return Err(Error::Internal {
                what: format!("pair {p} is no edge: only matching covers route pairs directly"),
            });
        }
        if p.degenerate() {
            raw.push(vec![p.a()]);
        } else {
            raw.push(vec![p.a(), p.b()]);
        }
    }
    Connector::from_paths(a.dim(), raw)
}

/// Transports every path through `g`.
pub(crate) fn map_connector(g: &Automorphism, c: &Connector) -> Result<Connector> {
    let raw = c
        .paths()
        .values()
        .map(|path| path.iter().map(|&v| g.apply(v)).collect())
        .collect();
    Connector::from_paths(c.dim(), raw)
}

/// Embeds `c0` into the side-0 halfcube of a fresh coordinate `i` and `c1`
/// into the side-1 halfcube, yielding a connector one dimension up.
pub(crate) fn lift_connector(c0: &Connector, c1: &Connector, i: usize) -> Result<Connector> {
    if c0.dim() != c1.dim() {
        return Err(Error::DimensionMismatch {
            left: c0.dim(),
            right: c1.dim(),
        });
    }
    let n = c0.dim() + 1;
    let mut raw = Vec::with_capacity(c0.len() + c1.len());
    for (side, c) in [(0u8, c0), (1u8, c1)] {
        for path in c.paths().values() {
            raw.push(
                path.iter()
                    .map(|&v| iota(v, i, side))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
    }
    Connector::from_paths(n, raw)
}

/// Fuses the two paths named by a merge step into one path running across
/// the bridge, turning a connector for the finer set into one for the merged
/// set.
pub(crate) fn apply_merge_to_connector(c: &Connector, step: &MergeStep) -> Result<Connector> {
    let missing = |p: Pair| Error::Internal {
        what: format!("merge step names {p}, which has no path"),
    };
    let left = c.path(&step.left()).ok_or_else(|| missing(step.left()))?;
    let right = c.path(&step.right()).ok_or_else(|| missing(step.right()))?;
    let (b0, b1) = step.bridge();
    let mut fused = left.to_vec();
    if fused.last() != Some(&b0) {
        fused.reverse();
    }
    if fused.last() != Some(&b0) {
        return Err(Error::Internal {
            what: format!("bridge vertex {b0} is not an end of the path for {}", step.left()),
        });
    }
    let mut tail = right.to_vec();
    if tail.first() != Some(&b1) {
        tail.reverse();
    }
    if tail.first() != Some(&b1) {
        return Err(Error::Internal {
            what: format!("bridge vertex {b1} is not an end of the path for {}", step.right()),
        });
    }
    fused.extend(tail);
    let mut paths: BTreeMap<Pair, Vec<Vertex>> = c.paths().clone();
    paths.remove(&step.left());
    paths.remove(&step.right());
    let raw: Vec<Vec<Vertex>> = paths.into_values().chain(std::iter::once(fused)).collect();
    Connector::from_paths(c.dim(), raw)
}

/// Cuts the path of `source` into consecutive runs of the given lengths
/// (walking from `oriented_from`), producing the refined pair-set and its
/// connector.
pub(crate) fn split_path(
    inner_set: &PairSet,
    inner: &Connector,
    source: Pair,
    oriented_from: Vertex,
    cut_lengths: &[usize],
) -> Result<(PairSet, Connector)> {
    let path = inner.path(&source).ok_or_else(|| Error::Internal {
        what: format!("no path for {source} to split"),
    })?;
    let mut walk = path.to_vec();
    if walk.first() != Some(&oriented_from) {
        walk.reverse();
    }
    if walk.first() != Some(&oriented_from) {
        return Err(Error::Internal {
            what: format!("{oriented_from} is not an end of the path for {source}"),
        });
    }
    if cut_lengths.iter().any(|&l| l == 0) || cut_lengths.iter().sum::<usize>() != walk.len() {
        return Err(Error::Internal {
            what: format!(
                "cut lengths {cut_lengths:?} do not partition a path of {} vertices",
                walk.len()
            ),
        });
    }
    let mut chunks = Vec::with_capacity(cut_lengths.len());
    let mut at = 0;
    for &len in cut_lengths {
        chunks.push(walk[at..at + len].to_vec());
        at += len;
    }
    let mut pairs: Vec<Pair> = inner_set
        .pairs()
        .iter()
        .copied()
        .filter(|&q| q != source)
        .collect();
    for chunk in &chunks {
        pairs.push(Pair::new(chunk[0], *chunk.last().expect("nonempty run"))?);
    }
    let refined = PairSet::new(inner_set.dim(), pairs)?;
    let mut raw: Vec<Vec<Vertex>> = inner
        .paths()
        .iter()
        .filter(|(p, _)| **p != source)
        .map(|(_, path)| path.clone())
        .collect();
    raw.extend(chunks);
    let connector = Connector::from_paths(inner_set.dim(), raw)?;
    Ok((refined, connector))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify_connector;

    fn ps(text: &str) -> PairSet {
        PairSet::parse(text).unwrap()
    }

    fn cn(text: &str) -> Connector {
        Connector::parse(text).unwrap()
    }

    fn vx(text: &str) -> Vertex {
        Vertex::parse(text).unwrap()
    }

    #[test]
    fn lifting_two_facet_solutions_covers_the_cube() {
        // paths covering each Q2 side of a fresh leading coordinate
        let c0 = cn("00,10,11,01");
        let c1 = cn("00,01,11,10");
        let up = lift_connector(&c0, &c1, 0).unwrap();
        let set = up.pair_set().unwrap();
        assert_eq!(verify_connector(&set, &up), Ok(()));
        assert_eq!(set, ps("000-001,100-110"));
    }

    #[test]
    fn merging_joins_paths_across_the_bridge() {
        let c = cn("000,010,011,001;100,110,111,101");
        let step = MergeStep::new(
            Pair::parse("000-001").unwrap(),
            Pair::parse("100-101").unwrap(),
            vx("001"),
            vx("101"),
        )
        .unwrap();
        let merged = apply_merge_to_connector(&c, &step).unwrap();
        assert_eq!(merged.len(), 1);
        let path = merged.path(&Pair::parse("000-100").unwrap()).unwrap();
        assert_eq!(path.len(), 8);
        assert_eq!(
            verify_connector(&ps("000-100"), &merged),
            Ok(())
        );
    }

    #[test]
    fn splitting_cuts_one_path_into_runs() {
        let c = cn("000,010,011,001;100,110,111,101");
        let set = c.pair_set().unwrap();
        let source = Pair::parse("000-001").unwrap();
        let (refined, cut) = split_path(&set, &c, source, vx("000"), &[1, 2, 1]).unwrap();
        assert_eq!(refined, ps("000-000,001-001,010-011,100-101"));
        assert_eq!(verify_connector(&refined, &cut), Ok(()));
        // a bad partition is rejected
        assert!(split_path(&set, &c, source, vx("000"), &[2, 3]).is_err());
    }
}
