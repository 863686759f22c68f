//! Recursive construction for dimension-4 pair-sets.
//!
//! The catalogue covers the odd families with a known decision rule: sets of
//! at most three pairs, and sets of four pairs among which at least three
//! are edge-pairs. Everything arriving here is balanced, odd sets have no
//! enclosed outside vertex, the set is not a matching cover, has at least
//! two pairs, and is not a catalogued impossible class.
//!
//! All routes share one skeleton: pick a coordinate `i`, rearrange the set
//! into one that is complete at `i` (recording the merge steps that restore
//! the original), solve the two facet shadows recursively, and lift. The
//! rearrangements are the interesting part; each function below documents
//! the shape it consumes.

use std::collections::BTreeSet;

use crate::completion::{odd_completions_at, MergeStep};
use crate::constructor::{dim3, lift, must_solve, replay, try_solve, Build, Trace};
use crate::error::{Error, Result};
use crate::oracle::Connector;
use crate::pair::{enc_of_support, rho_set, ClassFlags, Pair, PairSet};
use crate::vertex::{all_vertices, distance, iota, rho, Vertex};

/// How many completions to probe per coordinate before falling back to the
/// shape-specific routes.
const COMPLETION_PROBES: usize = 64;

pub(super) fn build(a: &PairSet, flags: &ClassFlags) -> Result<Build> {
    if !flags.odd {
        return Ok(Build::Unsupported(
            "the dimension-4 catalogue covers odd pair-sets only".into(),
        ));
    }
    match a.len() {
        2 | 3 => small(a),
        4 if flags.edge_pair_count >= 3 => four(a),
        4 => Ok(Build::Unsupported(
            "dimension-4 quadruples are catalogued only with three or more edge-pairs".into(),
        )),
        len => Ok(Build::Unsupported(format!(
            "dimension-4 sets of {len} pairs are not catalogued"
        ))),
    }
}

/// Two or three pairs: search for a completion whose facet shadows are both
/// solvable, then fall back to the two irregular three-pair shapes.
fn small(a: &PairSet) -> Result<Build> {
    for i in 0..4 {
        for completion in odd_completions_at(a, i, COMPLETION_PROBES) {
            let sigma = completion.base.sigma(i);
            if sigma.n0 == 0 || sigma.n1 == 0 {
                continue; // a lift must populate both facets
            }
            let left = rho_set(&completion.base, i, 0)?.into_set()?;
            let right = rho_set(&completion.base, i, 1)?.into_set()?;
            let (Some((_, lt)), Some((_, rt))) = (try_solve(&left)?, try_solve(&right)?) else {
                continue;
            };
            return Ok(Build::Done(Trace::Lift {
                label: "completion",
                coordinate: i,
                left_set: left,
                left: Box::new(lt),
                right_set: right,
                right: Box::new(rt),
                merges: completion.script,
            }));
        }
    }
    if a.len() == 3 {
        for i in 0..4 {
            let s = a.sigma(i);
            if s.total() == 2 && (s.n0 == 2 || s.n1 == 2) {
                let k = if s.n0 == 2 { 0 } else { 1 };
                if let Some(trace) = two_constant_one_crossing(a, i, k)? {
                    return Ok(Build::Done(trace));
                }
            }
        }
        for i in 0..4 {
            let s = a.sigma(i);
            if s.total() == 1 {
                let k = if s.n0 == 1 { 0 } else { 1 };
                if let Some(trace) = one_constant_two_crossing(a, i, k)? {
                    return Ok(Build::Done(trace));
                }
            }
        }
    }
    Ok(Build::Unsupported(format!(
        "no completion of {a} yields solvable facet shadows"
    )))
}

/// Three pairs, two constant on side `k` of coordinate `i`, one crossing.
/// The crossing pair is rerouted through a doorway vertex next to its
/// side-`k` endpoint. When one constant pair is an edge the doorway can be
/// chosen directly; otherwise the solved shadow problem is re-split around
/// the crossing endpoint's shadow.
fn two_constant_one_crossing(a: &PairSet, i: usize, k: u8) -> Result<Option<Trace>> {
    let constant: Vec<Pair> = a.iter().copied().filter(|p| constant_on(*p, i, k)).collect();
    let crossing: Vec<Pair> = a.iter().copied().filter(|p| crosses(*p, i)).collect();
    if constant.len() != 2 || crossing.len() != 1 {
        return Err(Error::Internal {
            what: format!("coordinate census mismatch for {a} at coordinate {i}"),
        });
    }
    let q = crossing[0];
    let (alpha2, beta2) = oriented(q, i, k);
    let support = a.support();

    if let Some(edge) = constant.iter().copied().find(|p| p.is_edge()) {
        let other = constant
            .iter()
            .copied()
            .find(|p| *p != edge)
            .expect("two constant pairs");
        for gamma2 in all_vertices(4)? {
            if gamma2.bit(i) != k
                || support.contains(&gamma2)
                || !adjacent(gamma2, alpha2)
                || gamma2 == beta2.flip(i)
            {
                continue;
            }
            let mut side = side_support(&support, i, k);
            side.insert(gamma2);
            if !enc_of_support(&shadow(&side, i, k)?).is_empty() {
                continue;
            }
            let app = PairSet::new(
                3,
                vec![
                    rho_pair(edge, i, k)?,
                    rho_pair(other, i, k)?,
                    Pair::new(rho(alpha2, i, k)?, rho(gamma2, i, k)?)?,
                ],
            )?;
            let attt = PairSet::new(
                3,
                vec![Pair::new(rho(gamma2, i, k)?, rho(beta2, i, 1 - k)?)?],
            )?;
            let (_, at) = must_solve(&app, "doorway shadow triple")?;
            let (_, bt) = must_solve(&attt, "doorway remainder")?;
            let step = bridge_merge(alpha2, rho(gamma2, i, k)?, beta2, i, k)?;
            return Ok(Some(facet_lift(
                "doorway",
                i,
                k,
                (app, at),
                (attt, bt),
                vec![step],
            )));
        }
        return Err(Error::Internal {
            what: format!("no admissible doorway vertex for {a} at coordinate {i}"),
        });
    }

    resplit_around_shadow(i, k, &constant, q)
}

/// The two constant pairs are diametrical. Solve their shadow problem, then
/// cut the path through the crossing endpoint's shadow `α` into three runs
/// `κ‥ζ`, `α ν`, `ζ′‥κ′` and route the crossing pair through `ν` while the
/// opposite facet carries `ζζ′` and `ν β̂`.
fn resplit_around_shadow(i: usize, k: u8, constant: &[Pair], q: Pair) -> Result<Option<Trace>> {
    let (alpha2, beta2) = oriented(q, i, k);
    let ap = PairSet::new(
        3,
        vec![rho_pair(constant[0], i, k)?, rho_pair(constant[1], i, k)?],
    )?;
    let Some((ac, at)) = try_solve(&ap)? else {
        return Ok(None);
    };
    let alpha = rho(alpha2, i, k)?;
    let beta_hat = rho(beta2, i, 1 - k)?;
    let (source, path) = ac
        .paths()
        .iter()
        .find(|(_, path)| path.contains(&alpha))
        .map(|(p, path)| (*p, path.clone()))
        .ok_or_else(|| Error::Internal {
            what: format!("shadow vertex {alpha} is missing from the connector for {ap}"),
        })?;

    // Candidate subwalks (ζ, α, ν, ζ′) in both orientations of the path.
    let mut reversed = path.clone();
    reversed.reverse();
    let mut generic: Vec<(Vertex, Vertex, Vec<Vertex>, usize)> = Vec::new();
    let mut colliding: Option<(Vec<Vertex>, usize)> = None;
    for walk in [path, reversed] {
        let t = walk
            .iter()
            .position(|&v| v == alpha)
            .expect("alpha lies on this path");
        if t == 0 || t + 2 >= walk.len() {
            continue; // ζ must exist before α and ζ′ after ν
        }
        let (zeta, zeta_p) = (walk[t - 1], walk[t + 2]);
        if zeta == beta_hat {
            // ζ is path-adjacent to α while β̂ carries the same sign as α,
            // so this equality cannot happen.
            return Err(Error::Internal {
                what: format!("subwalk start {zeta} collides with the opposite shadow"),
            });
        }
        if zeta_p == beta_hat {
            colliding = colliding.or(Some((walk.clone(), t)));
        } else {
            generic.push((walk[t + 1], zeta, walk, t));
        }
    }
    generic.sort_by_key(|&(nu, zeta, _, _)| (nu, zeta));

    if let Some((nu, zeta, walk, t)) = generic.into_iter().next() {
        let zeta_p = walk[t + 2];
        let cuts = vec![t, 2, walk.len() - t - 2];
        let (app, _) = lift::split_path(&ap, &ac, source, walk[0], &cuts)?;
        let split = Trace::Split {
            inner_set: ap.clone(),
            inner: Box::new(at),
            source,
            oriented_from: walk[0],
            cut_lengths: cuts,
        };
        let attt = PairSet::new(
            3,
            vec![Pair::new(zeta, zeta_p)?, Pair::new(nu, beta_hat)?],
        )?;
        let (_, bt) = must_solve(&attt, "re-split remainder")?;
        let (kappa, kappa_p) = (walk[0], *walk.last().expect("nonempty path"));
        let merges = vec![
            MergeStep::new(
                Pair::new(iota(kappa, i, k)?, iota(zeta, i, k)?)?,
                Pair::new(iota(zeta, i, 1 - k)?, iota(zeta_p, i, 1 - k)?)?,
                iota(zeta, i, k)?,
                iota(zeta, i, 1 - k)?,
            )?,
            MergeStep::new(
                Pair::new(iota(kappa, i, k)?, iota(zeta_p, i, 1 - k)?)?,
                Pair::new(iota(zeta_p, i, k)?, iota(kappa_p, i, k)?)?,
                iota(zeta_p, i, 1 - k)?,
                iota(zeta_p, i, k)?,
            )?,
            MergeStep::new(
                Pair::new(alpha2, iota(nu, i, k)?)?,
                Pair::new(iota(nu, i, 1 - k)?, beta2)?,
                iota(nu, i, k)?,
                iota(nu, i, 1 - k)?,
            )?,
        ];
        return Ok(Some(facet_lift(
            "re-split",
            i,
            k,
            (app, split),
            (attt, bt),
            merges,
        )));
    }

    // Both orientations collide: the path has four vertices ζ α ν ζ′ with
    // ζ′ = β̂. Cut it into ζ | α | ν ζ′ and hand ζν and αβ̂ to the other side.
    let Some((walk, t)) = colliding else {
        return Err(Error::Internal {
            what: format!("no admissible subwalk around {alpha} in the connector for {ap}"),
        });
    };
    if walk.len() != 4 || t != 1 {
        return Err(Error::Internal {
            what: "a colliding shadow path must have exactly four vertices".to_string(),
        });
    }
    let (zeta, nu, zeta_p) = (walk[0], walk[2], walk[3]);
    let cuts = vec![1, 1, 2];
    let (app, _) = lift::split_path(&ap, &ac, source, walk[0], &cuts)?;
    let split = Trace::Split {
        inner_set: ap.clone(),
        inner: Box::new(at),
        source,
        oriented_from: walk[0],
        cut_lengths: cuts,
    };
    let attt = PairSet::new(3, vec![Pair::new(zeta, nu)?, Pair::new(alpha, beta_hat)?])?;
    let (_, bt) = must_solve(&attt, "colliding re-split remainder")?;
    let merges = vec![
        MergeStep::new(
            Pair::new(iota(zeta, i, k)?, iota(zeta, i, k)?)?,
            Pair::new(iota(zeta, i, 1 - k)?, iota(nu, i, 1 - k)?)?,
            iota(zeta, i, k)?,
            iota(zeta, i, 1 - k)?,
        )?,
        MergeStep::new(
            Pair::new(iota(zeta, i, k)?, iota(nu, i, 1 - k)?)?,
            Pair::new(iota(nu, i, k)?, iota(zeta_p, i, k)?)?,
            iota(nu, i, 1 - k)?,
            iota(nu, i, k)?,
        )?,
        MergeStep::new(
            Pair::new(alpha2, alpha2)?,
            Pair::new(iota(alpha, i, 1 - k)?, beta2)?,
            alpha2,
            iota(alpha, i, 1 - k)?,
        )?,
    ];
    Ok(Some(facet_lift(
        "re-split",
        i,
        k,
        (app, split),
        (attt, bt),
        merges,
    )))
}

/// Three pairs, one constant on side `k`, two crossing. The six free
/// vertices of the side-`k` shadow form a unique spanning cycle; an
/// alternating matching of that cycle supplies one doorway per crossing
/// pair.
fn one_constant_two_crossing(a: &PairSet, i: usize, k: u8) -> Result<Option<Trace>> {
    let constant: Vec<Pair> = a.iter().copied().filter(|p| constant_on(*p, i, k)).collect();
    let crossing: Vec<Pair> = a.iter().copied().filter(|p| crosses(*p, i)).collect();
    if constant.len() != 1 || crossing.len() != 2 {
        return Err(Error::Internal {
            what: format!("coordinate census mismatch for {a} at coordinate {i}"),
        });
    }
    let cs_hat = rho_pair(constant[0], i, k)?;
    let (alpha1, beta1) = oriented(crossing[0], i, k);
    let (alpha2, beta2) = oriented(crossing[1], i, k);
    let a1h = rho(alpha1, i, k)?;
    let a2h = rho(alpha2, i, k)?;
    let b1h = rho(beta1, i, 1 - k)?;
    let b2h = rho(beta2, i, 1 - k)?;

    let cycle = six_cycle(cs_hat)?;
    let matchings = [
        [
            (cycle[0], cycle[1]),
            (cycle[2], cycle[3]),
            (cycle[4], cycle[5]),
        ],
        [
            (cycle[1], cycle[2]),
            (cycle[3], cycle[4]),
            (cycle[5], cycle[0]),
        ],
    ];
    let mut generic: Option<(Vertex, Vertex)> = None;
    let mut any: Option<(Vertex, Vertex)> = None;
    for matching in &matchings {
        let (Some(g1), Some(g2)) = (partner(matching, a1h), partner(matching, a2h)) else {
            return Err(Error::Internal {
                what: format!("crossing shadows of {a} must lie on the free cycle"),
            });
        };
        if g1 == a2h {
            continue; // this matching joins the two shadows to each other
        }
        if [g1, g2].iter().all(|g| *g != b1h && *g != b2h) {
            generic = generic.or(Some((g1, g2)));
        } else {
            any = any.or(Some((g1, g2)));
        }
    }
    let _ = any;

    if let Some((g1, g2)) = generic {
        let app = PairSet::new(
            3,
            vec![cs_hat, Pair::new(a1h, g1)?, Pair::new(a2h, g2)?],
        )?;
        let attt = PairSet::new(3, vec![Pair::new(g1, b1h)?, Pair::new(g2, b2h)?])?;
        let (_, at) = must_solve(&app, "cycle-matching shadow")?;
        let (_, bt) = must_solve(&attt, "cycle-matching remainder")?;
        let merges = vec![
            bridge_merge(alpha1, g1, beta1, i, k)?,
            bridge_merge(alpha2, g2, beta2, i, k)?,
        ];
        return Ok(Some(facet_lift(
            "cycle-matching",
            i,
            k,
            (app, at),
            (attt, bt),
            merges,
        )));
    }

    restart_two_crossing(
        a,
        i,
        k,
        cs_hat,
        (alpha1, beta1, a1h, b1h),
        (alpha2, beta2, a2h, b2h),
    )
}

/// Both alternating matchings collide with the β shadows. Join the two α
/// shadows into one auxiliary pair, solve, and scan the resulting path for
/// an edge (ζ, ν) whose endpoints can carry the two crossing pairs; the path
/// is then split at that edge.
fn restart_two_crossing(
    a: &PairSet,
    i: usize,
    k: u8,
    cs_hat: Pair,
    first: (Vertex, Vertex, Vertex, Vertex),
    second: (Vertex, Vertex, Vertex, Vertex),
) -> Result<Option<Trace>> {
    let (alpha1, beta1, a1h, b1h) = first;
    let (alpha2, beta2, a2h, b2h) = second;
    if a1h.parity() == a2h.parity() {
        return Err(Error::Internal {
            what: format!("colliding doorways for {a} require opposite shadow signs"),
        });
    }
    let joined = Pair::new(a1h, a2h)?;
    let ap = PairSet::new(3, vec![cs_hat, joined])?;

    // Two independent connectors for the auxiliary problem: the catalogued
    // one and, when both pairs are edges, the facet-separated one.
    let mut sources: Vec<(Connector, Trace)> = Vec::new();
    if let Some(found) = try_solve(&ap)? {
        sources.push(found);
    }
    if cs_hat.is_edge() && joined.is_edge() {
        if let Some(trace) = dim3::separating_lift(&ap)? {
            let (set, connector) = replay(&trace)?;
            if set != ap {
                return Err(Error::Internal {
                    what: "separated connector rebuilt a different set".to_string(),
                });
            }
            sources.push((connector, trace));
        }
    }

    for (ac, at) in sources {
        let raw = ac.path(&joined).ok_or_else(|| Error::Internal {
            what: format!("no path for {joined} in the auxiliary connector"),
        })?;
        let mut walk = raw.to_vec();
        if walk[0] != a1h {
            walk.reverse();
        }
        for t in 0..walk.len() - 1 {
            let (zeta, nu) = (walk[t], walk[t + 1]);
            let Ok(attt) = PairSet::new(3, vec![Pair::new(zeta, b1h)?, Pair::new(nu, b2h)?])
            else {
                continue; // overlapping or all-degenerate choice
            };
            let Some((_, bt)) = try_solve(&attt)? else {
                continue;
            };
            let cuts = vec![t + 1, walk.len() - t - 1];
            let (app, _) = lift::split_path(&ap, &ac, joined, walk[0], &cuts)?;
            let split = Trace::Split {
                inner_set: ap.clone(),
                inner: Box::new(at.clone()),
                source: joined,
                oriented_from: walk[0],
                cut_lengths: cuts,
            };
            let merges = vec![
                bridge_merge(alpha1, zeta, beta1, i, k)?,
                bridge_merge(alpha2, nu, beta2, i, k)?,
            ];
            return Ok(Some(facet_lift(
                "edge-re-split",
                i,
                k,
                (app, split),
                (attt, bt),
                merges,
            )));
        }
    }

    // Final fallback: dispatch through a two-constant coordinate if any
    // exists for this set.
    for j in 0..4 {
        if j == i {
            continue;
        }
        let s = a.sigma(j);
        if s.total() == 2 && (s.n0 == 2 || s.n1 == 2) {
            let kk = if s.n0 == 2 { 0 } else { 1 };
            if let Some(trace) = two_constant_one_crossing(a, j, kk)? {
                return Ok(Some(trace));
            }
        }
    }
    Err(Error::Internal {
        what: format!("doorway collision for {a} could not be rerouted"),
    })
}

/// Four pairs with at least three edge-pairs. A designated trio of
/// edge-pairs either splits two-against-one across some coordinate, or lies
/// on a 6-cycle inside one facet.
fn four(a: &PairSet) -> Result<Build> {
    let edges: Vec<Pair> = a.iter().copied().filter(|p| p.is_edge()).collect();
    for i in 0..4 {
        for k in [0u8, 1] {
            let with: Vec<Pair> = edges
                .iter()
                .copied()
                .filter(|p| constant_on(*p, i, k))
                .collect();
            let against: Vec<Pair> = edges
                .iter()
                .copied()
                .filter(|p| constant_on(*p, i, 1 - k))
                .collect();
            if with.len() >= 2 && !against.is_empty() {
                return split_trio(a, i, k, [with[0], with[1]], against[0]).map(Build::Done);
            }
        }
    }
    cycle_trio(a).map(Build::Done)
}

/// Two designated edge-pairs on side `k` of `i` and one on the other side.
/// The fourth pair either crosses `i` (route it through a doorway) or the
/// set is already complete at `i` (lift directly, or reroute through the two
/// enclosed leftover vertices when the crowded side is unsolvable).
fn split_trio(a: &PairSet, i: usize, k: u8, duo: [Pair; 2], solo: Pair) -> Result<Trace> {
    let rest = a
        .iter()
        .copied()
        .find(|p| *p != duo[0] && *p != duo[1] && *p != solo)
        .ok_or_else(|| Error::Internal {
            what: "the trio designation must leave a fourth pair".to_string(),
        })?;
    if crosses(rest, i) {
        return doorway_bridge(a, i, k, duo, solo, rest);
    }
    let left = rho_set(a, i, 0)?.into_set()?;
    let right = rho_set(a, i, 1)?.into_set()?;
    if let (Some((_, lt)), Some((_, rt))) = (try_solve(&left)?, try_solve(&right)?) {
        return Ok(Trace::Lift {
            label: "facet-split",
            coordinate: i,
            left_set: left,
            left: Box::new(lt),
            right_set: right,
            right: Box::new(rt),
            merges: Vec::new(),
        });
    }
    if !constant_on(rest, i, k) {
        return Err(Error::Internal {
            what: format!("a direct lift of {a} at {i} may only fail on the three-pair side"),
        });
    }
    let ap = rho_set(a, i, k)?.into_set()?;
    reroute_through_enclosed(
        "enclosed-reroute",
        i,
        k,
        &ap,
        rho_pair(rest, i, k)?,
        rho_pair(solo, i, 1 - k)?,
    )
}

/// The fourth pair crosses `i`: pick a doorway vertex γ next to nothing,
/// with sign opposite the crossing pair's side-`k` endpoint, such that the
/// enlarged side-`k` shadow has no enclosed vertex, and bridge γ—γ⊕eᵢ.
fn doorway_bridge(
    a: &PairSet,
    i: usize,
    k: u8,
    duo: [Pair; 2],
    solo: Pair,
    rest: Pair,
) -> Result<Trace> {
    let (a3, b3) = oriented(rest, i, k);
    let support = a.support();
    for gamma in all_vertices(4)? {
        if gamma.bit(i) != k
            || support.contains(&gamma)
            || gamma.parity() == a3.parity()
            || support.contains(&gamma.flip(i))
        {
            continue;
        }
        let mut side = side_support(&support, i, k);
        side.insert(gamma);
        if !enc_of_support(&shadow(&side, i, k)?).is_empty() {
            continue;
        }
        let side_k = PairSet::new(
            3,
            vec![
                rho_pair(duo[0], i, k)?,
                rho_pair(duo[1], i, k)?,
                Pair::new(rho(a3, i, k)?, rho(gamma, i, k)?)?,
            ],
        )?;
        let side_o = PairSet::new(
            3,
            vec![
                rho_pair(solo, i, 1 - k)?,
                Pair::new(rho(gamma.flip(i), i, 1 - k)?, rho(b3, i, 1 - k)?)?,
            ],
        )?;
        let (_, lt) = must_solve(&side_k, "doorway trio")?;
        let (_, rt) = must_solve(&side_o, "doorway duo")?;
        let step = MergeStep::new(
            Pair::new(a3, gamma)?,
            Pair::new(gamma.flip(i), b3)?,
            gamma,
            gamma.flip(i),
        )?;
        return Ok(facet_lift(
            "doorway-bridge",
            i,
            k,
            (side_k, lt),
            (side_o, rt),
            vec![step],
        ));
    }
    Err(Error::Internal {
        what: format!("no doorway for {rest} in {a} across coordinate {i}"),
    })
}

/// No coordinate splits the edge-pairs two against one: three designated
/// edge-pairs lie on a 6-cycle inside the facet `bit i = k`, and the fourth
/// pair sits inside the same facet, inside the opposite one, or across.
fn cycle_trio(a: &PairSet) -> Result<Trace> {
    let non_edges: Vec<Pair> = a.iter().copied().filter(|p| !p.is_edge()).collect();
    let rest = match non_edges.len() {
        0 => a.iter().copied().last().expect("four pairs"),
        1 => non_edges[0],
        _ => {
            return Err(Error::Internal {
                what: "at least three edge-pairs were guaranteed upstream".to_string(),
            })
        }
    };
    let trio: Vec<Pair> = a.iter().copied().filter(|p| *p != rest).collect();
    let mut found = None;
    'scan: for i in 0..4 {
        for k in [0u8, 1] {
            if trio.iter().all(|p| constant_on(*p, i, k)) {
                found = Some((i, k));
                break 'scan;
            }
        }
    }
    let Some((i, k)) = found else {
        return Err(Error::Internal {
            what: format!("the designated edge-pairs of {a} must share a facet"),
        });
    };
    if constant_on(rest, i, k) {
        evacuate_facet(a, i, k, rest)
    } else if constant_on(rest, i, 1 - k) {
        let ap = rho_set(a, i, k)?.into_set()?;
        let target = ap.iter().copied().last().expect("three shadows");
        reroute_through_enclosed("cycle-bypass", i, k, &ap, target, rho_pair(rest, i, 1 - k)?)
    } else {
        shadow_collision(a, i, k, rest)
    }
}

/// All four pairs sit inside the facet `bit i = k`. Replace the designated
/// fourth shadow by two degenerate pairs (a matching cover remains) and walk
/// the whole opposite facet between its lifted endpoints.
fn evacuate_facet(a: &PairSet, i: usize, k: u8, rest: Pair) -> Result<Trace> {
    let ap = rho_set(a, i, k)?.into_set()?;
    let rest_hat = rho_pair(rest, i, k)?;
    let mut pieces: Vec<Pair> = ap.iter().copied().filter(|p| *p != rest_hat).collect();
    pieces.push(Pair::new(rest_hat.a(), rest_hat.a())?);
    pieces.push(Pair::new(rest_hat.b(), rest_hat.b())?);
    let side_k = PairSet::new(3, pieces)?;
    let side_o = PairSet::new(3, vec![rest_hat])?;
    let (_, lt) = must_solve(&side_k, "evacuated cover")?;
    let (_, rt) = must_solve(&side_o, "opposite-facet walk")?;
    let (u, v) = (rest_hat.a(), rest_hat.b());
    let merges = vec![
        MergeStep::new(
            Pair::new(iota(u, i, k)?, iota(u, i, k)?)?,
            Pair::new(iota(u, i, 1 - k)?, iota(v, i, 1 - k)?)?,
            iota(u, i, k)?,
            iota(u, i, 1 - k)?,
        )?,
        MergeStep::new(
            Pair::new(iota(u, i, k)?, iota(v, i, 1 - k)?)?,
            Pair::new(iota(v, i, k)?, iota(v, i, k)?)?,
            iota(v, i, 1 - k)?,
            iota(v, i, k)?,
        )?,
    ];
    Ok(facet_lift("facet-detour", i, k, (side_k, lt), (side_o, rt), merges))
}

/// `ap` is a side-`k` shadow whose two uncovered vertices are both enclosed.
/// Cut `target` open across the doorways γ and γ′: the enlarged shadow
/// becomes a matching cover, and the opposite facet carries `remainder`
/// together with the diametrical pair γγ′.
fn reroute_through_enclosed(
    label: &'static str,
    i: usize,
    k: u8,
    ap: &PairSet,
    target: Pair,
    remainder: Pair,
) -> Result<Trace> {
    let free = free_set(ap)?;
    let enc = enc_of_support(&ap.support());
    if free.len() != 2 || enc != free {
        return Err(Error::Internal {
            what: format!("{label}: the shadow {ap} must enclose both leftover vertices"),
        });
    }
    let mut free_iter = free.iter().copied();
    let gamma = free_iter.next().expect("two free vertices");
    let gamma_p = free_iter.next().expect("two free vertices");
    let (t_a, t_b) = if adjacent(target.a(), gamma) {
        (target.a(), target.b())
    } else {
        (target.b(), target.a())
    };
    if !adjacent(t_a, gamma) || !adjacent(t_b, gamma_p) {
        return Err(Error::Internal {
            what: format!("{label}: the enclosed vertices must flank {target}"),
        });
    }
    let mut pieces: Vec<Pair> = ap.iter().copied().filter(|p| *p != target).collect();
    pieces.push(Pair::new(t_a, gamma)?);
    pieces.push(Pair::new(t_b, gamma_p)?);
    let side_k = PairSet::new(3, pieces)?;
    let side_o = PairSet::new(3, vec![remainder, Pair::new(gamma, gamma_p)?])?;
    let (_, lt) = must_solve(&side_k, "reroute cover")?;
    let (_, rt) = must_solve(&side_o, "reroute remainder")?;
    let merges = vec![
        MergeStep::new(
            Pair::new(iota(t_a, i, k)?, iota(gamma, i, k)?)?,
            Pair::new(iota(gamma, i, 1 - k)?, iota(gamma_p, i, 1 - k)?)?,
            iota(gamma, i, k)?,
            iota(gamma, i, 1 - k)?,
        )?,
        MergeStep::new(
            Pair::new(iota(t_a, i, k)?, iota(gamma_p, i, 1 - k)?)?,
            Pair::new(iota(t_b, i, k)?, iota(gamma_p, i, k)?)?,
            iota(gamma_p, i, 1 - k)?,
            iota(gamma_p, i, k)?,
        )?,
    ];
    Ok(facet_lift(label, i, k, (side_k, lt), (side_o, rt), merges))
}

/// The fourth pair crosses `i` and its far shadow lands on the cycle: both
/// leftover facet vertices are the near shadow and one doorway γ. Cut the
/// colliding edge open, park its near endpoint and the crossing shadow as
/// degenerate pairs, and resolve both through the opposite facet.
fn shadow_collision(a: &PairSet, i: usize, k: u8, rest: Pair) -> Result<Trace> {
    let (a3, b3) = oriented(rest, i, k);
    let ap = rho_set(a, i, k)?.into_set()?;
    let a3h = rho(a3, i, k)?;
    let b3o = rho(b3, i, 1 - k)?;
    let free = free_set(&ap)?;
    if free.len() != 2 || !free.contains(&a3h) {
        return Err(Error::Internal {
            what: format!("the near shadow of {rest} must be free in {ap}"),
        });
    }
    let gamma = free
        .iter()
        .copied()
        .find(|v| *v != a3h)
        .expect("two free vertices");
    let split_edge = ap
        .iter()
        .copied()
        .find(|p| p.contains(b3o))
        .ok_or_else(|| Error::Internal {
            what: format!("the far shadow of {rest} must land on the cycle"),
        })?;
    let beta2 = b3o;
    let alpha2 = split_edge.other(beta2).expect("b3o is an endpoint");
    if !adjacent(beta2, gamma) || !adjacent(alpha2, a3h) {
        return Err(Error::Internal {
            what: format!("the cut edge {split_edge} must join the two free vertices' sides"),
        });
    }
    let mut pieces: Vec<Pair> = ap.iter().copied().filter(|p| *p != split_edge).collect();
    pieces.push(Pair::new(alpha2, alpha2)?);
    pieces.push(Pair::new(beta2, gamma)?);
    pieces.push(Pair::new(a3h, a3h)?);
    let side_k = PairSet::new(3, pieces)?;
    let side_o = PairSet::new(3, vec![Pair::new(a3h, beta2)?, Pair::new(gamma, alpha2)?])?;
    let (_, lt) = must_solve(&side_k, "collision cover")?;
    let (_, rt) = must_solve(&side_o, "collision remainder")?;
    let merges = vec![
        MergeStep::new(
            Pair::new(a3, a3)?,
            Pair::new(iota(a3h, i, 1 - k)?, iota(beta2, i, 1 - k)?)?,
            a3,
            iota(a3h, i, 1 - k)?,
        )?,
        MergeStep::new(
            Pair::new(iota(alpha2, i, k)?, iota(alpha2, i, k)?)?,
            Pair::new(iota(gamma, i, 1 - k)?, iota(alpha2, i, 1 - k)?)?,
            iota(alpha2, i, k)?,
            iota(alpha2, i, 1 - k)?,
        )?,
        MergeStep::new(
            Pair::new(iota(alpha2, i, k)?, iota(gamma, i, 1 - k)?)?,
            Pair::new(iota(beta2, i, k)?, iota(gamma, i, k)?)?,
            iota(gamma, i, 1 - k)?,
            iota(gamma, i, k)?,
        )?,
    ];
    Ok(facet_lift(
        "shadow-collision",
        i,
        k,
        (side_k, lt),
        (side_o, rt),
        merges,
    ))
}

// ---------------------------------------------------------------------------
// shared helpers

/// Assembles a lift trace with the facet-`k` material on the correct side
/// (the left child is always the `bit i = 0` facet).
fn facet_lift(
    label: &'static str,
    i: usize,
    k: u8,
    side_k: (PairSet, Trace),
    side_other: (PairSet, Trace),
    merges: Vec<MergeStep>,
) -> Trace {
    let ((ls, lt), (rs, rt)) = if k == 0 {
        (side_k, side_other)
    } else {
        (side_other, side_k)
    };
    Trace::Lift {
        label,
        coordinate: i,
        left_set: ls,
        left: Box::new(lt),
        right_set: rs,
        right: Box::new(rt),
        merges,
    }
}

/// The standard doorway merge: reunite `{alpha, ι_k(gate)}` with
/// `{ι_{1−k}(gate), beta}` across the bridge at the doorway `gate` (a
/// dimension-3 vertex).
fn bridge_merge(alpha: Vertex, gate: Vertex, beta: Vertex, i: usize, k: u8) -> Result<MergeStep> {
    let g_in = iota(gate, i, k)?;
    let g_out = iota(gate, i, 1 - k)?;
    MergeStep::new(
        Pair::new(alpha, g_in)?,
        Pair::new(g_out, beta)?,
        g_in,
        g_out,
    )
}

fn constant_on(p: Pair, i: usize, k: u8) -> bool {
    p.a().bit(i) == k && p.b().bit(i) == k
}

fn crosses(p: Pair, i: usize) -> bool {
    p.a().bit(i) != p.b().bit(i)
}

/// Endpoints of a crossing pair, side-`k` endpoint first.
fn oriented(p: Pair, i: usize, k: u8) -> (Vertex, Vertex) {
    if p.a().bit(i) == k {
        (p.a(), p.b())
    } else {
        (p.b(), p.a())
    }
}

fn rho_pair(p: Pair, i: usize, k: u8) -> Result<Pair> {
    Pair::new(rho(p.a(), i, k)?, rho(p.b(), i, k)?)
}

fn adjacent(u: Vertex, v: Vertex) -> bool {
    distance(u, v) == 1
}

fn side_support(support: &BTreeSet<Vertex>, i: usize, k: u8) -> BTreeSet<Vertex> {
    support.iter().copied().filter(|v| v.bit(i) == k).collect()
}

fn shadow(side: &BTreeSet<Vertex>, i: usize, k: u8) -> Result<BTreeSet<Vertex>> {
    side.iter().map(|&v| rho(v, i, k)).collect()
}

fn free_set(ap: &PairSet) -> Result<BTreeSet<Vertex>> {
    let support = ap.support();
    Ok(all_vertices(ap.dim())?
        .into_iter()
        .filter(|v| !support.contains(v))
        .collect())
}

/// The unique spanning cycle of the six vertices left after removing an odd
/// pair from the 3-cube, starting at the least free vertex and turning
/// toward its least usable neighbor.
fn six_cycle(avoid: Pair) -> Result<Vec<Vertex>> {
    let interior: BTreeSet<Vertex> = all_vertices(3)?
        .into_iter()
        .filter(|v| !avoid.contains(*v))
        .collect();
    if interior.len() != 6 {
        return Err(Error::Internal {
            what: format!("removing {avoid} must leave six vertices"),
        });
    }
    let start = *interior.iter().next().expect("six vertices");
    let mut cycle = vec![start];
    let mut seen: BTreeSet<Vertex> = BTreeSet::from([start]);
    if extend_cycle(&mut cycle, &mut seen, &interior) {
        Ok(cycle)
    } else {
        Err(Error::Internal {
            what: format!("no spanning cycle avoids {avoid}"),
        })
    }
}

fn extend_cycle(
    cycle: &mut Vec<Vertex>,
    seen: &mut BTreeSet<Vertex>,
    interior: &BTreeSet<Vertex>,
) -> bool {
    if cycle.len() == interior.len() {
        return distance(cycle[0], *cycle.last().expect("nonempty")) == 1;
    }
    let last = *cycle.last().expect("nonempty");
    let mut nexts: Vec<Vertex> = last
        .neighbors()
        .filter(|v| interior.contains(v) && !seen.contains(v))
        .collect();
    nexts.sort();
    for v in nexts {
        cycle.push(v);
        seen.insert(v);
        if extend_cycle(cycle, seen, interior) {
            return true;
        }
        cycle.pop();
        seen.remove(&v);
    }
    false
}

fn partner(matching: &[(Vertex, Vertex)], v: Vertex) -> Option<Vertex> {
    matching.iter().find_map(|&(x, y)| {
        if x == v {
            Some(y)
        } else if y == v {
            Some(x)
        } else {
            None
        }
    })
}
