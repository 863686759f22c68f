use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pair::{encompassment, Pair, PairSet};
use crate::vertex::{distance, Parity, Vertex};

/// Largest dimension the exhaustive search will take on.
pub const ORACLE_DIM_CAP: usize = 5;

/// A family of paths keyed by pair. Construction does not validate the
/// connector clauses; `verify_connector` is the single authority on those,
/// so that independently produced families can be checked uniformly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    n: usize,
    paths: BTreeMap<Pair, Vec<Vertex>>,
}

impl Connector {
    pub fn new(n: usize, paths: BTreeMap<Pair, Vec<Vertex>>) -> Connector {
        Connector { n, paths }
    }

    /// Builds the map from bare paths, keying each by its end vertices.
    pub fn from_paths(n: usize, raw: Vec<Vec<Vertex>>) -> Result<Connector> {
        let mut paths = BTreeMap::new();
        for path in raw {
            let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
                return Err(Error::BadConnectorLiteral {
                    reason: "empty path".to_string(),
                });
            };
            let key = Pair::new(first, last)?;
            if paths.insert(key, path).is_some() {
                return Err(Error::BadConnectorLiteral {
                    reason: format!("two paths share the endpoint pair {key}"),
                });
            }
        }
        Ok(Connector { n, paths })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &BTreeMap<Pair, Vec<Vertex>> {
        &self.paths
    }

    pub fn path(&self, p: &Pair) -> Option<&[Vertex]> {
        self.paths.get(p).map(|v| v.as_slice())
    }

    /// The pair-set this connector claims to connect.
    pub fn pair_set(&self) -> Result<PairSet> {
        PairSet::new(self.n, self.paths.keys().copied().collect())
    }

    /// Parses `"00,01;11,10"`: paths split by ';', vertices by ','.
    pub fn parse(text: &str) -> Result<Connector> {
        let mut raw = Vec::new();
        let mut dim = None;
        for chunk in text.split(';') {
            let mut path = Vec::new();
            for lit in chunk.split(',') {
                let v = Vertex::parse(lit.trim()).map_err(|e| Error::BadConnectorLiteral {
                    reason: e.to_string(),
                })?;
                if *dim.get_or_insert(v.dim()) != v.dim() {
                    return Err(Error::BadConnectorLiteral {
                        reason: "mixed vertex lengths".to_string(),
                    });
                }
                path.push(v);
            }
            raw.push(path);
        }
        let Some(n) = dim else {
            return Err(Error::BadConnectorLiteral {
                reason: "no vertices".to_string(),
            });
        };
        Connector::from_paths(n, raw)
    }
}

impl fmt::Display for Connector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first_path = true;
        for path in self.paths.values() {
            if !first_path {
                write!(f, ";")?;
            }
            first_path = false;
            for (i, v) in path.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// First violated connector clause, in checking order: keys, endpoints,
/// adjacency, vertex-disjointness, exact cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongDimension { expected: usize, found: usize },
    MissingPath { pair: Pair },
    UnexpectedPath { pair: Pair },
    EmptyPath { pair: Pair },
    WrongEndpoints { pair: Pair, first: Vertex, last: Vertex },
    BrokenStep { pair: Pair, from: Vertex, to: Vertex },
    RepeatedVertex { vertex: Vertex },
    UncoveredVertex { vertex: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongDimension { expected, found } => {
                write!(f, "connector dimension {found} does not match pair-set dimension {expected}")
            }
            Violation::MissingPath { pair } => write!(f, "no path for pair {pair}"),
            Violation::UnexpectedPath { pair } => {
                write!(f, "path for {pair}, which is not in the pair-set")
            }
            Violation::EmptyPath { pair } => write!(f, "empty path for pair {pair}"),
            Violation::WrongEndpoints { pair, first, last } => {
                write!(f, "path for {pair} runs {first}..{last}")
            }
            Violation::BrokenStep { pair, from, to } => {
                write!(f, "path for {pair} jumps {from}->{to}, not an edge")
            }
            Violation::RepeatedVertex { vertex } => {
                write!(f, "vertex {vertex} lies on more than one path position")
            }
            Violation::UncoveredVertex { vertex } => {
                write!(f, "vertex {vertex} is not covered by any path")
            }
        }
    }
}

/// Checks every connector clause for `c` against `a`; reports the first
/// violation in a fixed clause order, or nothing when `c` is a connector
/// of `a`.
pub fn verify_connector(a: &PairSet, c: &Connector) -> std::result::Result<(), Violation> {
    if a.dim() != c.dim() {
        return Err(Violation::WrongDimension {
            expected: a.dim(),
            found: c.dim(),
        });
    }
    for p in a.iter() {
        if !c.paths.contains_key(p) {
            return Err(Violation::MissingPath { pair: *p });
        }
    }
    for key in c.paths.keys() {
        if !a.pairs().contains(key) {
            return Err(Violation::UnexpectedPath { pair: *key });
        }
    }
    for (pair, path) in &c.paths {
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            return Err(Violation::EmptyPath { pair: *pair });
        };
        let ends_match = (first == pair.a() && last == pair.b())
            || (first == pair.b() && last == pair.a());
        if !ends_match {
            return Err(Violation::WrongEndpoints {
                pair: *pair,
                first,
                last,
            });
        }
        for v in path {
            if v.dim() != c.dim() {
                return Err(Violation::WrongDimension {
                    expected: c.dim(),
                    found: v.dim(),
                });
            }
        }
        for w in path.windows(2) {
            if distance(w[0], w[1]) != 1 {
                return Err(Violation::BrokenStep {
                    pair: *pair,
                    from: w[0],
                    to: w[1],
                });
            }
        }
    }
    let total = 1usize << c.dim();
    let mut seen = vec![false; total];
    for path in c.paths.values() {
        for v in path {
            let idx = v.bits() as usize;
            if seen[idx] {
                return Err(Violation::RepeatedVertex { vertex: *v });
            }
            seen[idx] = true;
        }
    }
    if let Some(idx) = seen.iter().position(|&s| !s) {
        return Err(Violation::UncoveredVertex {
            vertex: Vertex::new(c.dim(), idx as u16).expect("in range"),
        });
    }
    Ok(())
}

/// Why a set was refused without (or after) search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// χ(A) ≠ 0: no connector can exist in an exactly-covered cube.
    Parity { chi: i32 },
    /// An uncovered vertex all of whose neighbors are endpoints forces a
    /// 2-step path between an even pair, impossible in an odd set.
    Encompassment { vertex: Vertex },
    /// The backtracking search ran to completion without finding a cover.
    ExhaustedSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Connectable(Connector),
    Unconnectable(Certificate),
}

impl Verdict {
    pub fn is_connectable(&self) -> bool {
        matches!(self, Verdict::Connectable(_))
    }
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub node_budget: u64,
    pub use_certificates: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            node_budget: 100_000_000,
            use_certificates: true,
        }
    }
}

/// Decides connectability by exhaustive backtracking (n ≤ 5), preceded by
/// the two cheap refutation certificates unless disabled.
pub fn oracle_solve(a: &PairSet) -> Result<Verdict> {
    oracle_solve_with(a, &OracleConfig::default())
}

pub fn oracle_solve_with(a: &PairSet, cfg: &OracleConfig) -> Result<Verdict> {
    let n = a.dim();
    if n > ORACLE_DIM_CAP {
        return Err(Error::OracleDimensionCap {
            n,
            max: ORACLE_DIM_CAP,
        });
    }
    if cfg.use_certificates {
        let flags = a.classify();
        if flags.chi != 0 {
            return Ok(Verdict::Unconnectable(Certificate::Parity { chi: flags.chi }));
        }
        if flags.odd {
            if let Some(&v) = encompassment(a).enc.iter().next() {
                return Ok(Verdict::Unconnectable(Certificate::Encompassment {
                    vertex: v,
                }));
            }
        }
    }
    let mut search = Search::new(a, cfg.node_budget);
    match search.run() {
        Outcome::Found => {
            let connector = search.into_connector();
            debug_assert_eq!(verify_connector(a, &connector), Ok(()));
            Ok(Verdict::Connectable(connector))
        }
        Outcome::Exhausted => Ok(Verdict::Unconnectable(Certificate::ExhaustedSearch)),
        Outcome::OverBudget => Err(Error::BudgetExhausted {
            nodes: search.nodes,
        }),
    }
}

#[derive(PartialEq, Eq, Clone, Copy, Debug)]
enum Outcome {
    Found,
    Exhausted,
    OverBudget,
}

/// Depth-first search routing one pair at a time, in sorted pair order,
/// always extending the current path to its least unused neighbor.
struct Search {
    n: usize,
    full: u64,
    pairs: Vec<Pair>,
    paths: Vec<Vec<Vertex>>,
    used: u64,
    nodes: u64,
    budget: u64,
}

fn bit(v: Vertex) -> u64 {
    1u64 << v.bits()
}

impl Search {
    fn new(a: &PairSet, budget: u64) -> Search {
        let n = a.dim();
        let pairs: Vec<Pair> = a.pairs().to_vec();
        let mut used = 0u64;
        let mut paths = vec![Vec::new(); pairs.len()];
        for (i, p) in pairs.iter().enumerate() {
            if p.degenerate() {
                used |= bit(p.a());
                paths[i] = vec![p.a()];
            }
        }
        Search {
            n,
            full: if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 },
            pairs,
            paths,
            used,
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Outcome {
        match self.next_open(0) {
            Some(k) => self.start_pair(k),
            None => {
                if self.used == self.full {
                    Outcome::Found
                } else {
                    Outcome::Exhausted
                }
            }
        }
    }

    fn next_open(&self, from: usize) -> Option<usize> {
        (from..self.pairs.len()).find(|&k| !self.pairs[k].degenerate())
    }

    fn start_pair(&mut self, k: usize) -> Outcome {
        let start = self.pairs[k].a();
        self.used |= bit(start);
        self.paths[k].push(start);
        let r = self.extend(k, start);
        if r != Outcome::Found {
            self.paths[k].pop();
            self.used &= !bit(start);
        }
        r
    }

    fn extend(&mut self, k: usize, frontier: Vertex) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OverBudget;
        }
        let target = self.pairs[k].b();
        if frontier == target {
            return match self.next_open(k + 1) {
                Some(k2) => self.start_pair(k2),
                None => {
                    if self.used == self.full {
                        Outcome::Found
                    } else {
                        Outcome::Exhausted
                    }
                }
            };
        }
        if self.pruned(k, frontier, target) {
            return Outcome::Exhausted;
        }
        let mut moves: Vec<Vertex> = frontier
            .neighbors()
            .filter(|w| self.used & bit(*w) == 0)
            .collect();
        moves.sort();
        for w in moves {
            self.used |= bit(w);
            self.paths[k].push(w);
            let r = self.extend(k, w);
            if r != Outcome::Exhausted {
                return r;
            }
            self.paths[k].pop();
            self.used &= !bit(w);
        }
        Outcome::Exhausted
    }

    /// Sound feasibility checks on the unused-vertex graph. Every remaining
    /// path is confined to one connected component of it, which forces
    /// component membership, counting, and parity constraints.
    fn pruned(&self, k: usize, frontier: Vertex, target: Vertex) -> bool {
        let verts = 1usize << self.n;
        // component labels over unused vertices, -1 elsewhere
        let mut comp = vec![-1i32; verts];
        let mut comp_count = 0i32;
        for s in 0..verts {
            if self.used & (1u64 << s) != 0 || comp[s] != -1 {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = comp_count;
            while let Some(x) = stack.pop() {
                for i in 0..self.n {
                    let y = x ^ (1 << i);
                    if self.used & (1u64 << y) == 0 && comp[y] == -1 {
                        comp[y] = comp_count;
                        stack.push(y);
                    }
                }
            }
            comp_count += 1;
        }
        let idx = |v: Vertex| v.bits() as usize;
        let tc = comp[idx(target)];
        debug_assert!(tc >= 0);
        // the current path must reach its target through a free neighbor
        if !frontier
            .neighbors()
            .any(|w| self.used & bit(w) == 0 && comp[idx(w)] == tc)
        {
            return true;
        }
        // accumulate per-component demands
        let mut size = vec![0i64; comp_count as usize];
        let mut chi = vec![0i64; comp_count as usize];
        for v in 0..verts {
            if comp[v] >= 0 {
                let c = comp[v] as usize;
                size[c] += 1;
                chi[c] += if (v as u16).count_ones() % 2 == 0 { 1 } else { -1 };
            }
        }
        // demanded[c]: (vertices needed, signed parity needed, has any work)
        let mut need = vec![0i64; comp_count as usize];
        let mut need_chi = vec![0i64; comp_count as usize];
        let mut touched = vec![false; comp_count as usize];
        let d0 = distance(frontier, target);
        need[tc as usize] += d0 as i64;
        if d0 % 2 == 1 {
            need_chi[tc as usize] += -sign(frontier);
        }
        touched[tc as usize] = true;
        for k2 in (k + 1)..self.pairs.len() {
            let p = self.pairs[k2];
            if p.degenerate() {
                continue;
            }
            let (ca, cb) = (comp[idx(p.a())], comp[idx(p.b())]);
            if ca != cb {
                return true;
            }
            let c = ca as usize;
            let d = p.distance();
            need[c] += d as i64 + 1;
            if d % 2 == 0 {
                need_chi[c] += sign(p.a());
            }
            touched[c] = true;
        }
        for c in 0..comp_count as usize {
            if !touched[c] {
                // nothing can ever enter this component
                return true;
            }
            if need[c] > size[c] {
                return true;
            }
            if (size[c] - need[c]) % 2 != 0 {
                return true;
            }
            if need_chi[c] != chi[c] {
                return true;
            }
        }
        false
    }

    fn into_connector(self) -> Connector {
        let map: BTreeMap<Pair, Vec<Vertex>> =
            self.pairs.into_iter().zip(self.paths).collect();
        Connector::new(self.n, map)
    }
}

fn sign(v: Vertex) -> i64 {
    match v.parity() {
        Parity::Plus => 1,
        Parity::Minus => -1,
    }
}
