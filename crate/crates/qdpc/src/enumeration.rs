//! Isomorphism-free enumeration and censuses of pair-set classes.
//!
//! Classes are generated by an orderly search: pair tuples grow strictly
//! increasing in pair order, and a prefix survives only while it is the
//! lexicographically least tuple among its images under the automorphism
//! group. The surviving full sets are exactly the canonical forms, one per
//! isomorphism class, so no post-hoc deduplication is needed.

use std::fmt;

use crate::constructor::{solve, Solution};
use crate::error::{Error, Result};
use crate::oracle::{oracle_solve, verify_connector, Verdict};
use crate::pair::{encompassment, Pair, PairSet};
use crate::symmetry::{group, orbit_size, Automorphism};
use crate::vertex::all_vertices;

/// Enumeration sweeps the full automorphism group per prefix; beyond this
/// dimension the group is too large for that to stay interactive.
pub const ENUMERATION_DIM_CAP: usize = 5;

/// Constraint on the number of edge-pairs (endpoints at distance one).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeCond {
    Exactly(usize),
    AtLeast(usize),
}

impl EdgeCond {
    pub fn admits(self, count: usize) -> bool {
        match self {
            EdgeCond::Exactly(k) => count == k,
            EdgeCond::AtLeast(k) => count >= k,
        }
    }
}

/// Which classes to enumerate. Size bounds are inclusive; every other field
/// is optional. All conditions are isomorphism-invariant, so filtering
/// commutes with canonicalization.
#[derive(Debug, Clone, Default)]
pub struct Filter {
    min_size: usize,
    max_size: usize,
    odd: Option<bool>,
    balanced: Option<bool>,
    pure: Option<bool>,
    diminishable: Option<bool>,
    edge_pairs: Option<EdgeCond>,
    enc_empty: Option<bool>,
}

impl Filter {
    /// Classes with between `min` and `max` pairs (inclusive, `min ≥ 1`).
    pub fn sized(min: usize, max: usize) -> Filter {
        Filter {
            min_size: min.max(1),
            max_size: max,
            ..Filter::default()
        }
    }

    /// The inclusive size window this filter admits.
    pub fn size_range(&self) -> (usize, usize) {
        (self.min_size, self.max_size)
    }

    /// Require every pair odd (`true`) or at least one pair even (`false`).
    pub fn odd(mut self, want: bool) -> Filter {
        self.odd = Some(want);
        self
    }

    /// Require the signed endpoint census to vanish (or not).
    pub fn balanced(mut self, want: bool) -> Filter {
        self.balanced = Some(want);
        self
    }

    /// Require no degenerate pairs (`true`) or at least one (`false`).
    pub fn pure(mut self, want: bool) -> Filter {
        self.pure = Some(want);
        self
    }

    /// Require membership (or not) in the diminishable family.
    pub fn diminishable(mut self, want: bool) -> Filter {
        self.diminishable = Some(want);
        self
    }

    /// Constrain the number of edge-pairs.
    pub fn edge_pairs(mut self, cond: EdgeCond) -> Filter {
        self.edge_pairs = Some(cond);
        self
    }

    /// Require that no uncovered vertex is enclosed by the support (or that
    /// at least one is).
    pub fn enc_empty(mut self, want: bool) -> Filter {
        self.enc_empty = Some(want);
        self
    }

    /// Whether a full (valid) pair-set satisfies every requested condition.
    pub fn matches(&self, a: &PairSet) -> bool {
        if a.len() < self.min_size || a.len() > self.max_size {
            return false;
        }
        let flags = a.classify();
        if self.odd.is_some_and(|want| flags.odd != want) {
            return false;
        }
        if self.balanced.is_some_and(|want| flags.balanced != want) {
            return false;
        }
        if self.pure.is_some_and(|want| flags.pure != want) {
            return false;
        }
        if self
            .diminishable
            .is_some_and(|want| flags.diminishable != want)
        {
            return false;
        }
        if self
            .edge_pairs
            .is_some_and(|cond| !cond.admits(flags.edge_pair_count))
        {
            return false;
        }
        if self
            .enc_empty
            .is_some_and(|want| encompassment(a).enc.is_empty() != want)
        {
            return false;
        }
        true
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sizes {}..={}", self.min_size, self.max_size)?;
        let flag = |name: &str, value: Option<bool>, f: &mut fmt::Formatter<'_>| match value {
            Some(true) => write!(f, ", {name}"),
            Some(false) => write!(f, ", not {name}"),
            None => Ok(()),
        };
        flag("odd", self.odd, f)?;
        flag("balanced", self.balanced, f)?;
        flag("pure", self.pure, f)?;
        flag("diminishable", self.diminishable, f)?;
        match self.edge_pairs {
            Some(EdgeCond::Exactly(k)) => write!(f, ", exactly {k} edge-pair(s)")?,
            Some(EdgeCond::AtLeast(k)) => write!(f, ", at least {k} edge-pair(s)")?,
            None => {}
        }
        match self.enc_empty {
            Some(true) => write!(f, ", no enclosed vertex")?,
            Some(false) => write!(f, ", some enclosed vertex")?,
            None => {}
        }
        Ok(())
    }
}

/// One isomorphism class: its canonical representative and orbit size.
#[derive(Debug, Clone)]
pub struct ClassRep {
    pub set: PairSet,
    pub orbit: u64,
}

/// Enumerates all classes of valid pair-sets in the n-cube matching
/// `filter`, each given by its canonical form, in canonical order.
pub fn enumerate_classes(n: usize, filter: &Filter) -> Result<Vec<ClassRep>> {
    if n > ENUMERATION_DIM_CAP {
        return Err(Error::EnumerationDimensionCap {
            n,
            max: ENUMERATION_DIM_CAP,
        });
    }
    if filter.max_size < filter.min_size {
        return Ok(Vec::new());
    }
    let vertices = all_vertices(n)?;
    let mut candidates = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i..] {
            candidates.push(Pair::new(u, v)?);
        }
    }
    candidates.sort();
    let autos: Vec<Automorphism> = group(n).collect();
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend(n, filter, &candidates, &autos, 0, &mut prefix, &mut out)?;
    Ok(out)
}

fn extend(
    n: usize,
    filter: &Filter,
    candidates: &[Pair],
    autos: &[Automorphism],
    from: usize,
    prefix: &mut Vec<Pair>,
    out: &mut Vec<ClassRep>,
) -> Result<()> {
    if prefix.len() >= filter.min_size {
        // Validity can fail (an all-degenerate tuple) while an extension is
        // still fine, so a failed record does not stop the recursion.
        if let Ok(set) = PairSet::new(n, prefix.clone()) {
            if filter.matches(&set) {
                let orbit = orbit_size(&set)?;
                out.push(ClassRep { set, orbit });
            }
        }
    }
    if prefix.len() == filter.max_size {
        return Ok(());
    }
    for idx in from..candidates.len() {
        let cand = candidates[idx];
        if filter.odd == Some(true) && !cand.odd() {
            continue;
        }
        if filter.pure == Some(true) && cand.degenerate() {
            continue;
        }
        if let Some(EdgeCond::Exactly(k)) = filter.edge_pairs {
            let edges =
                prefix.iter().filter(|p| p.is_edge()).count() + usize::from(cand.is_edge());
            if edges > k {
                continue;
            }
        }
        if prefix
            .iter()
            .any(|p| p.contains(cand.a()) || p.contains(cand.b()))
        {
            continue;
        }
        prefix.push(cand);
        if is_orbit_minimal(prefix, autos) {
            extend(n, filter, candidates, autos, idx + 1, prefix, out)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// Whether the sorted tuple `prefix` is the least among its images. Keeping
/// only such prefixes is sound: the first `j` pairs of a canonical set are
/// dominated by any image of any of its `j`-subsets, so a non-minimal prefix
/// can never grow into a canonical form.
fn is_orbit_minimal(prefix: &[Pair], autos: &[Automorphism]) -> bool {
    for g in autos {
        let mut image: Vec<Pair> = prefix.iter().map(|&p| g.apply_pair(p)).collect();
        image.sort();
        if image.as_slice() < prefix {
            return false;
        }
    }
    true
}

/// Which decision procedure certifies each census entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictSource {
    /// Exhaustive search only.
    Oracle,
    /// Recursive construction only.
    Constructor,
    /// Both, with any disagreement reported as a hard error.
    Both,
}

impl fmt::Display for VerdictSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictSource::Oracle => "oracle",
            VerdictSource::Constructor => "constructor",
            VerdictSource::Both => "both",
        })
    }
}

/// One decided class.
#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub set: PairSet,
    pub orbit: u64,
    pub connectable: bool,
}

/// A complete, decided classification of every class matching a filter.
#[derive(Debug, Clone)]
pub struct Census {
    pub n: usize,
    pub filter: String,
    pub source: VerdictSource,
    pub entries: Vec<CensusEntry>,
}

impl Census {
    pub fn class_count(&self) -> usize {
        self.entries.len()
    }

    /// Number of labelled pair-sets across all classes.
    pub fn raw_count(&self) -> u64 {
        self.entries.iter().map(|e| e.orbit).sum()
    }

    pub fn unconnectable(&self) -> impl Iterator<Item = &CensusEntry> {
        self.entries.iter().filter(|e| !e.connectable)
    }

    pub fn unconnectable_class_count(&self) -> usize {
        self.unconnectable().count()
    }

    pub fn unconnectable_raw_count(&self) -> u64 {
        self.unconnectable().map(|e| e.orbit).sum()
    }
}

/// Enumerates and decides every class matching `filter`, splitting the work
/// across up to `jobs` threads.
pub fn census(n: usize, filter: &Filter, source: VerdictSource, jobs: usize) -> Result<Census> {
    let reps = enumerate_classes(n, filter)?;
    let workers = jobs.max(1).min(reps.len().max(1));
    let entries = if workers <= 1 {
        reps.into_iter()
            .map(|rep| entry_for(rep, source))
            .collect::<Result<Vec<_>>>()?
    } else {
        let per_chunk = reps.len().div_ceil(workers);
        let results: Vec<Result<Vec<CensusEntry>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = reps
                .chunks(per_chunk)
                .map(|chunk| {
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .cloned()
                            .map(|rep| entry_for(rep, source))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("census worker panicked"))
                .collect()
        });
        let mut merged = Vec::new();
        for part in results {
            merged.extend(part?);
        }
        merged
    };
    Ok(Census {
        n,
        filter: filter.to_string(),
        source,
        entries,
    })
}

fn entry_for(rep: ClassRep, source: VerdictSource) -> Result<CensusEntry> {
    let connectable = match source {
        VerdictSource::Oracle => oracle_verdict(&rep.set)?,
        VerdictSource::Constructor => constructor_verdict(&rep.set)?,
        VerdictSource::Both => {
            let by_search = oracle_verdict(&rep.set)?;
            let by_rules = constructor_verdict(&rep.set)?;
            if by_search != by_rules {
                let word = |c: bool| {
                    if c { "connectable" } else { "unconnectable" }.to_string()
                };
                return Err(Error::VerdictDisagreement {
                    pairs: rep.set.to_string(),
                    oracle: word(by_search),
                    constructor: word(by_rules),
                });
            }
            by_search
        }
    };
    Ok(CensusEntry {
        set: rep.set,
        orbit: rep.orbit,
        connectable,
    })
}

/// Exhaustive-search verdict, with any returned path system re-verified.
pub fn oracle_verdict(a: &PairSet) -> Result<bool> {
    match oracle_solve(a)? {
        Verdict::Connectable(connector) => {
            if let Err(violation) = verify_connector(a, &connector) {
                return Err(Error::Internal {
                    what: format!("search produced an invalid path system for {a}: {violation}"),
                });
            }
            Ok(true)
        }
        Verdict::Unconnectable(_) => Ok(false),
    }
}

/// Recursive-construction verdict. A gap in the catalogue is a hard error
/// here so that a census can never silently skip a class.
pub fn constructor_verdict(a: &PairSet) -> Result<bool> {
    match solve(a)? {
        Solution::Connectable { .. } => Ok(true),
        Solution::Unconnectable(_) => Ok(false),
        Solution::Unsupported { reason } => Err(Error::ConstructorUnsupported {
            pairs: a.to_string(),
            reason,
        }),
    }
}
