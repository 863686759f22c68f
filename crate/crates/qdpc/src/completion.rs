use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pair::{Pair, PairSet};
use crate::vertex::{distance, Vertex};

/// One application of the merge relation: two pairs of a set, joined by a
/// bridging edge between them, collapse into the single pair made of their
/// outer endpoints. The bridge endpoints disappear from the support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeStep {
    left: Pair,
    right: Pair,
    bridge: (Vertex, Vertex),
}

impl MergeStep {
    /// `beta` must belong to `left`, `beta_prime` to `right`, and the two
    /// must be adjacent in the cube.
    pub fn new(left: Pair, right: Pair, beta: Vertex, beta_prime: Vertex) -> Result<MergeStep> {
        if left == right {
            return Err(Error::BadMergeStep {
                reason: "the two pairs must be distinct".to_string(),
            });
        }
        if !left.contains(beta) {
            return Err(Error::BadMergeStep {
                reason: format!("bridge end {beta} is not in pair {left}"),
            });
        }
        if !right.contains(beta_prime) {
            return Err(Error::BadMergeStep {
                reason: format!("bridge end {beta_prime} is not in pair {right}"),
            });
        }
        if distance(beta, beta_prime) != 1 {
            return Err(Error::BadMergeStep {
                reason: format!("{beta} and {beta_prime} are not adjacent"),
            });
        }
        Ok(MergeStep {
            left,
            right,
            bridge: (beta, beta_prime),
        })
    }

    pub fn left(&self) -> Pair {
        self.left
    }

    pub fn right(&self) -> Pair {
        self.right
    }

    pub fn bridge(&self) -> (Vertex, Vertex) {
        self.bridge
    }

    /// The direction the bridge crosses.
    pub fn coordinate(&self) -> usize {
        let x = self.bridge.0.bits() ^ self.bridge.1.bits();
        x.trailing_zeros() as usize
    }

    /// The pair produced by this merge.
    pub fn merged(&self) -> Pair {
        let a = self.left.other(self.bridge.0).expect("validated at build");
        let b = self.right.other(self.bridge.1).expect("validated at build");
        Pair::new(a, b).expect("same dimension by construction")
    }
}

/// Applies one merge step to `a`. Both named pairs must be present; the
/// result is re-validated as a pair-set.
pub fn merge_step(a: &PairSet, step: &MergeStep) -> Result<PairSet> {
    let present = |p: Pair| a.pairs().contains(&p);
    if !present(step.left()) || !present(step.right()) {
        return Err(Error::BadMergeStep {
            reason: format!(
                "pairs {} and {} are not both present in {}",
                step.left(),
                step.right(),
                a
            ),
        });
    }
    let mut pairs: Vec<Pair> = a
        .pairs()
        .iter()
        .copied()
        .filter(|&p| p != step.left() && p != step.right())
        .collect();
    pairs.push(step.merged());
    PairSet::new(a.dim(), pairs)
}

/// Replays a whole merge script from `base`.
pub fn apply_script(base: &PairSet, script: &[MergeStep]) -> Result<PairSet> {
    let mut cur = base.clone();
    for step in script {
        cur = merge_step(&cur, step)?;
    }
    Ok(cur)
}

/// An ancestor of a pair-set under the merge relation in which no pair
/// crosses `coordinate`, together with the script that merges it back down
/// to the original set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub base: PairSet,
    pub coordinate: usize,
    pub script: Vec<MergeStep>,
}

impl Completion {
    /// Replays the script; the result must equal the original input this
    /// completion was derived from.
    pub fn replay(&self) -> Result<PairSet> {
        apply_script(&self.base, &self.script)
    }
}

/// Searches for a completion of an odd pair-set, trying coordinates in
/// increasing order. An already complete coordinate wins with an empty
/// script. Guaranteed to succeed for odd sets of size n−1 when n ≥ 4;
/// best-effort elsewhere.
pub fn find_completion(a: &PairSet) -> Result<Completion> {
    if !a.classify().odd {
        return Err(Error::CompletionNeedsOdd);
    }
    for i in 0..a.dim() {
        if a.is_complete_at(i) {
            return Ok(Completion {
                base: a.clone(),
                coordinate: i,
                script: Vec::new(),
            });
        }
    }
    let budget = a.len() + a.dim();
    for i in 0..a.dim() {
        if let Some(c) = complete_at(a, i, false, budget, 1).into_iter().next() {
            return Ok(c);
        }
    }
    Err(Error::CompletionNotFound)
}

/// Up to `limit` distinct completions at coordinate `i` whose base sets are
/// themselves odd (every split consumes two fresh vertices of suitable
/// parity, so no degenerate pairs appear), in the deterministic order the
/// split search visits them. The recursive construction walks this list
/// looking for a completion whose two projections it can solve.
pub(crate) fn odd_completions_at(a: &PairSet, i: usize, limit: usize) -> Vec<Completion> {
    if !a.classify().odd || limit == 0 {
        return Vec::new();
    }
    if a.is_complete_at(i) {
        return vec![Completion {
            base: a.clone(),
            coordinate: i,
            script: Vec::new(),
        }];
    }
    complete_at(a, i, true, a.len() + a.dim(), limit)
}

struct SplitSearch {
    n: usize,
    i: usize,
    odd_only: bool,
    max_splits: usize,
    nodes: u64,
    limit: usize,
    leaves: Vec<(Vec<Pair>, Vec<MergeStep>)>,
}

const NODE_CAP: u64 = 1 << 20;

impl SplitSearch {
    fn run(
        &mut self,
        pairs: &mut Vec<Pair>,
        used: &mut BTreeSet<Vertex>,
        splits: &mut Vec<MergeStep>,
    ) -> bool {
        self.nodes += 1;
        if self.nodes > NODE_CAP {
            return false;
        }
        // the first still-crossing pair, ordered by (larger, smaller) endpoint
        let next = pairs
            .iter()
            .copied()
            .filter(|p| p.a().bit(self.i) != p.b().bit(self.i))
            .min_by_key(|p| (p.b(), p.a()));
        let Some(p) = next else {
            // complete; reject the degenerate-only corner case
            if pairs.is_empty() || pairs.iter().any(|q| !q.degenerate()) {
                self.leaves.push((pairs.clone(), splits.clone()));
            }
            return self.leaves.len() >= self.limit;
        };
        if splits.len() == self.max_splits {
            return false;
        }
        let (g, d) = (p.a(), p.b());
        let mut directions: Vec<usize> = vec![self.i];
        directions.extend((0..self.n).filter(|&j| j != self.i));
        for j in directions {
            if !self.odd_only {
                // splits that reuse an endpoint as a degenerate pair, or
                // split an edge into its two endpoints, consume at most one
                // fresh vertex and are tried first
                if d == g.flip(j)
                    && self.try_split(pairs, used, splits, p, (g, g), (d, d), (g, d), &[])
                {
                    return true;
                }
                let x = d.flip(j);
                if !used.contains(&x)
                    && self.try_split(pairs, used, splits, p, (g, x), (d, d), (x, d), &[x])
                {
                    return true;
                }
                let y = g.flip(j);
                if !used.contains(&y)
                    && self.try_split(pairs, used, splits, p, (g, g), (y, d), (g, y), &[y])
                {
                    return true;
                }
            }
            // splits through a fresh edge x–y
            let mut fresh: Vec<Vertex> = (0..(1u32 << self.n))
                .map(|b| Vertex::new(self.n, b as u16).expect("in range"))
                .filter(|v| !used.contains(v))
                .collect();
            fresh.sort();
            for x in fresh {
                if j == self.i && x.bit(self.i) != g.bit(self.i) {
                    continue;
                }
                if self.odd_only && x.parity() == g.parity() {
                    continue;
                }
                let y = x.flip(j);
                if used.contains(&y) {
                    continue;
                }
                if self.try_split(pairs, used, splits, p, (g, x), (y, d), (x, y), &[x, y]) {
                    return true;
                }
            }
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn try_split(
        &mut self,
        pairs: &mut Vec<Pair>,
        used: &mut BTreeSet<Vertex>,
        splits: &mut Vec<MergeStep>,
        p: Pair,
        piece1: (Vertex, Vertex),
        piece2: (Vertex, Vertex),
        bridge: (Vertex, Vertex),
        consumed: &[Vertex],
    ) -> bool {
        let left = Pair::new(piece1.0, piece1.1).expect("same dimension");
        let right = Pair::new(piece2.0, piece2.1).expect("same dimension");
        let step = MergeStep::new(left, right, bridge.0, bridge.1).expect("split shape");
        debug_assert_eq!(step.merged(), p);
        let idx = pairs.iter().position(|&q| q == p).expect("pair present");
        pairs.swap_remove(idx);
        pairs.push(left);
        pairs.push(right);
        for &v in consumed {
            used.insert(v);
        }
        splits.push(step);
        if self.run(pairs, used, splits) {
            return true;
        }
        splits.pop();
        for &v in consumed {
            used.remove(&v);
        }
        pairs.retain(|&q| q != left && q != right);
        pairs.push(p);
        false
    }
}

fn complete_at(
    a: &PairSet,
    i: usize,
    odd_only: bool,
    max_splits: usize,
    limit: usize,
) -> Vec<Completion> {
    let mut pairs: Vec<Pair> = a.pairs().to_vec();
    let mut used: BTreeSet<Vertex> = a.support();
    let mut splits: Vec<MergeStep> = Vec::new();
    let mut search = SplitSearch {
        n: a.dim(),
        i,
        odd_only,
        max_splits,
        nodes: 0,
        limit,
        leaves: Vec::new(),
    };
    search.run(&mut pairs, &mut used, &mut splits);
    search
        .leaves
        .into_iter()
        .filter_map(|(leaf_pairs, mut leaf_splits)| {
            let base = PairSet::new(a.dim(), leaf_pairs).ok()?;
            leaf_splits.reverse();
            debug_assert_eq!(apply_script(&base, &leaf_splits).as_ref(), Ok(a));
            Some(Completion {
                base,
                coordinate: i,
                script: leaf_splits,
            })
        })
        .collect()
}
