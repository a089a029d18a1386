//! Deciding `rt(G, π) ≤ 2` in polynomial time.
//!
//! A two-step routing `S2 ∘ S1` of `π` uses involutions that invert `π`, so
//! each nontrivial cycle is either routed on its own support by a reflection
//! pair, or exchanged with another cycle of the same length through cross
//! edges. Cycles become vertices of a meta-graph; the instance is two-step
//! routable iff that graph has a perfect matching where loops may cover a
//! vertex alone.

use std::collections::HashMap;

use crate::blossom::maximum_matching;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::Matching;
use crate::perm::{check_sizes, Permutation};
use crate::route::{verify_plan, RoutingOutcome, RoutingPlan};

/// Two reflections of a cycle whose composition advances every position by one.
///
/// Positions are cycle indices `0..len`; `S1` pairs `x` with `a - x` and `S2`
/// pairs `x` with `a + 1 - x`, where `a = i + j` for the anchor `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueScheme {
    pub len: usize,
    pub anchor: (usize, usize),
    /// Position sum shared by every `S1` pair.
    pub sum: usize,
    pub s1: Vec<(usize, usize)>,
    pub s2: Vec<(usize, usize)>,
    pub r: usize,
}

fn reflection_pairs(len: usize, sum: usize) -> Vec<(usize, usize)> {
    (0..len)
        .filter_map(|x| {
            let y = (sum + len - x) % len;
            (x < y).then_some((x, y))
        })
        .collect()
}

/// Anchor sums available for a cycle of length `len`.
fn anchor_sums(len: usize) -> Vec<usize> {
    if len == 2 {
        vec![1]
    } else {
        (0..len).collect()
    }
}

fn anchor_for_sum(len: usize, sum: usize) -> (usize, usize) {
    if sum == 0 {
        (1, len - 1)
    } else {
        (0, sum)
    }
}

pub fn clique_two_step_scheme(len: usize, anchor: (usize, usize)) -> Result<CliqueScheme> {
    let (i, j) = anchor;
    if len < 2 || i >= j || j >= len {
        return Err(Error::InvalidArgument(format!(
            "anchor ({i}, {j}) invalid for a cycle of length {len}"
        )));
    }
    let sum = (i + j) % len;
    Ok(CliqueScheme {
        len,
        anchor,
        sum,
        s1: reflection_pairs(len, sum),
        s2: reflection_pairs(len, (sum + 1) % len),
        r: (len - j + i - 1) / 2,
    })
}

impl CliqueScheme {
    /// Position reached after `S1` then `S2`.
    pub fn advance(&self, x: usize) -> usize {
        let apply = |pairs: &[(usize, usize)], x: usize| {
            pairs
                .iter()
                .find_map(|&(a, b)| {
                    if a == x {
                        Some(b)
                    } else if b == x {
                        Some(a)
                    } else {
                        None
                    }
                })
                .unwrap_or(x)
        };
        apply(&self.s2, apply(&self.s1, x))
    }

    /// Every anchored scheme of a cycle, one per distinct anchor sum.
    pub fn all(len: usize) -> Vec<CliqueScheme> {
        anchor_sums(len)
            .into_iter()
            .map(|a| clique_two_step_scheme(len, anchor_for_sum(len, a)).unwrap())
            .collect()
    }

    fn stages_on(&self, cycle: &[usize]) -> [Matching; 2] {
        let lift = |pairs: &[(usize, usize)]| {
            Matching::new(pairs.iter().map(|&(x, y)| (cycle[x], cycle[y])))
        };
        [lift(&self.s1), lift(&self.s2)]
    }
}

/// Positions of every vertex lying on one of `cycles`: `(cycle index, position)`.
fn position_table(n: usize, cycles: &[Vec<usize>]) -> Vec<Option<(usize, usize)>> {
    let mut pos = vec![None; n];
    for (c, cycle) in cycles.iter().enumerate() {
        for (x, &v) in cycle.iter().enumerate() {
            pos[v] = Some((c, x));
        }
    }
    pos
}

/// Scheme routing `cycle` in two steps with edges inside its support, if any.
///
/// One pass over the induced edges: an edge joining positions with sum `s`
/// belongs to `S1` of scheme `s` and to `S2` of scheme `s - 1`; a scheme is
/// usable when all of its `len - 1` pairs are present.
pub fn individually_routable(g: &Graph, cycle: &[usize]) -> Option<CliqueScheme> {
    let pos = position_table(g.n(), &[cycle.to_vec()]);
    let len = cycle.len();
    if len < 2 {
        return None;
    }
    let mut counter = vec![0; len];
    for (x, &u) in cycle.iter().enumerate() {
        for &w in g.neighbors(u) {
            if let Some((_, y)) = pos[w] {
                if x < y {
                    let s = (x + y) % len;
                    counter[s] += 1;
                    counter[(s + len - 1) % len] += 1;
                }
            }
        }
    }
    anchor_sums(len)
        .into_iter()
        .find(|&a| counter[a] == len - 1)
        .map(|a| clique_two_step_scheme(len, anchor_for_sum(len, a)).unwrap())
}

/// Two stages routing two equal-length cycles through their cross edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedScheme {
    /// Stage one pairs `c1[x]` with `c2[offset - x]`.
    pub offset: usize,
    pub stages: [Matching; 2],
}

fn paired_stages(c1: &[usize], c2: &[usize], offset: usize) -> [Matching; 2] {
    let len = c1.len();
    let first = Matching::new((0..len).map(|x| (c1[x], c2[(offset + len - x) % len])));
    let second = Matching::new((0..len).map(|z| (c2[z], c1[(offset + 1 + len - z) % len])));
    [first, second]
}

pub fn mutually_routable(g: &Graph, c1: &[usize], c2: &[usize]) -> Option<PairedScheme> {
    if c1.len() != c2.len() || c1.len() < 2 {
        return None;
    }
    let len = c1.len();
    (0..len).find_map(|offset| {
        let stages = paired_stages(c1, c2, offset);
        stages
            .iter()
            .all(|m| m.pairs().iter().all(|&(u, v)| g.has_edge(u, v)))
            .then_some(PairedScheme { offset, stages })
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleGraph {
    pub cycles: Vec<Vec<usize>>,
    /// Witness scheme for every individually routable cycle.
    pub loops: Vec<Option<CliqueScheme>>,
    pub edges: Vec<(usize, usize, PairedScheme)>,
    /// Counter increments performed while scanning, for cost measurements.
    pub work: usize,
}

/// Builds the meta-graph over the nontrivial cycles of `p` in one pass over the edges.
pub fn build_cycle_graph(g: &Graph, p: &Permutation) -> Result<CycleGraph> {
    check_sizes(g, p)?;
    let cycles = p.cycle_decomposition().cycles;
    let pos = position_table(g.n(), &cycles);
    let mut own: Vec<Vec<usize>> = cycles.iter().map(|c| vec![0; c.len()]).collect();
    let mut cross: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut work = 0;
    for &(u, v) in g.edges() {
        let (Some((a, x)), Some((b, y))) = (pos[u], pos[v]) else {
            continue;
        };
        let len = cycles[a].len();
        work += 2;
        if a == b {
            let s = (x + y) % len;
            own[a][s] += 1;
            own[a][(s + len - 1) % len] += 1;
        } else if len == cycles[b].len() {
            let ((a, x), (b, y)) = if a < b {
                ((a, x), (b, y))
            } else {
                ((b, y), (a, x))
            };
            let counts = cross.entry((a, b)).or_insert_with(|| vec![0; len]);
            let s = (x + y) % len;
            counts[s] += 1;
            counts[(s + len - 1) % len] += 1;
        }
    }
    let loops = cycles
        .iter()
        .zip(&own)
        .map(|(c, counts)| {
            let len = c.len();
            anchor_sums(len)
                .into_iter()
                .find(|&a| counts[a] == len - 1)
                .map(|a| clique_two_step_scheme(len, anchor_for_sum(len, a)).unwrap())
        })
        .collect();
    let mut pairs: Vec<_> = cross.into_iter().collect();
    pairs.sort_unstable_by_key(|(k, _)| *k);
    let mut edges = Vec::new();
    for ((a, b), counts) in pairs {
        work += counts.len();
        let len = cycles[a].len();
        if let Some(offset) = counts.iter().position(|&c| c == 2 * len) {
            let stages = paired_stages(&cycles[a], &cycles[b], offset);
            edges.push((a, b, PairedScheme { offset, stages }));
        }
    }
    Ok(CycleGraph {
        cycles,
        loops,
        edges,
        work,
    })
}

/// A cover of the cycle graph: looped cycles routed alone plus matched pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoopCover {
    pub singles: Vec<usize>,
    /// Indices into [`CycleGraph::edges`].
    pub pairs: Vec<usize>,
}

/// Perfect matching where a looped vertex may cover itself.
///
/// Each looped vertex gets a companion joined to it; companions form a
/// clique, plus one extra vertex adjacent to all of them when the total is
/// odd, so unused companions can always pair off among themselves.
pub fn loop_perfect_matching(cg: &CycleGraph) -> Option<LoopCover> {
    let k = cg.cycles.len();
    let looped: Vec<usize> = (0..k).filter(|&v| cg.loops[v].is_some()).collect();
    let mut total = k + looped.len();
    let padded = total % 2 == 1;
    if padded {
        total += 1;
    }
    let mut edges: Vec<(usize, usize)> = cg.edges.iter().map(|&(a, b, _)| (a, b)).collect();
    for (i, &v) in looped.iter().enumerate() {
        edges.push((v, k + i));
        for j in i + 1..looped.len() {
            edges.push((k + i, k + j));
        }
        if padded {
            edges.push((k + i, total - 1));
        }
    }
    let mate = maximum_matching(total, &edges);
    if mate.iter().any(Option::is_none) {
        return None;
    }
    let mut cover = LoopCover::default();
    for v in 0..k {
        let w = mate[v].unwrap();
        if w >= k {
            cover.singles.push(v);
        } else if v < w {
            let idx = cg
                .edges
                .iter()
                .position(|&(a, b, _)| (a, b) == (v, w))
                .unwrap();
            cover.pairs.push(idx);
        }
    }
    Some(cover)
}

/// Routes `p` in at most two steps when possible.
///
/// Solved outcomes carry a verified plan of 0, 1 or 2 steps; otherwise the
/// status is exceeded-cap with cap 2.
pub fn decide_two_step(g: &Graph, p: &Permutation) -> Result<RoutingOutcome> {
    check_sizes(g, p)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if p.is_identity() {
        return Ok(RoutingOutcome::solved(RoutingPlan::default()));
    }
    let cycles = p.cycle_decomposition().cycles;
    if cycles
        .iter()
        .all(|c| c.len() == 2 && g.has_edge(c[0], c[1]))
    {
        let step = Matching::new(cycles.iter().map(|c| (c[0], c[1])));
        return Ok(RoutingOutcome::solved(RoutingPlan::new(vec![step])));
    }
    let cg = build_cycle_graph(g, p)?;
    let Some(cover) = loop_perfect_matching(&cg) else {
        return Ok(RoutingOutcome::exceeded());
    };
    let mut first = Matching::empty();
    let mut second = Matching::empty();
    for &c in &cover.singles {
        let [a, b] = cg.loops[c].as_ref().unwrap().stages_on(&cg.cycles[c]);
        first = first.union(&a);
        second = second.union(&b);
    }
    for &e in &cover.pairs {
        let [a, b] = &cg.edges[e].2.stages;
        first = first.union(a);
        second = second.union(b);
    }
    let plan = RoutingPlan::new(vec![first, second]);
    if !verify_plan(g, p, &plan)? {
        return Err(Error::PlanDoesNotVerify);
    }
    Ok(RoutingOutcome::solved(plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::route::{rt_exact, RoutingStatus};
    use std::collections::HashSet;

    #[test]
    fn scheme_examples() {
        let two = clique_two_step_scheme(2, (0, 1)).unwrap();
        assert_eq!(two.s1, vec![(0, 1)]);
        assert!(two.s2.is_empty());
        assert!(clique_two_step_scheme(4, (2, 1)).is_err());
        for len in 2..=10 {
            for s in CliqueScheme::all(len) {
                for x in 0..len {
                    assert_eq!(s.advance(x), (x + 1) % len);
                }
                assert_eq!(s.s1.len() + s.s2.len(), len - 1);
            }
        }
    }

    #[test]
    fn schemes_never_share_an_edge_in_the_same_stage() {
        for len in 3..=10 {
            let schemes = CliqueScheme::all(len);
            assert_eq!(schemes.len(), len);
            let mut seen = HashSet::new();
            for s in &schemes {
                for e in &s.s1 {
                    assert!(seen.insert((*e, 1)));
                }
                for e in &s.s2 {
                    assert!(seen.insert((*e, 2)));
                }
            }
        }
        // Whole schemes do overlap: neighbours share their middle sums.
        let five = CliqueScheme::all(5);
        let edges = |s: &CliqueScheme| s.s1.iter().chain(&s.s2).copied().collect::<HashSet<_>>();
        assert!(!edges(&five[0]).is_disjoint(&edges(&five[1])));
    }

    #[test]
    fn routability_examples() {
        let k4 = Graph::complete(4);
        assert!(individually_routable(&k4, &[0, 1]).is_some());
        assert!(individually_routable(&Graph::complete(3), &[0, 1, 2]).is_some());
        // Reflections with sums 0 and 1 only need the two path edges.
        let p3 = Graph::path(3);
        let scheme = individually_routable(&p3, &[0, 1, 2]).unwrap();
        assert_eq!(
            (scheme.s1.clone(), scheme.s2.clone()),
            (vec![(1, 2)], vec![(0, 1)])
        );
        let rot = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(rt_exact(&p3, &rot, 5).unwrap().steps, Some(2));
        assert!(individually_routable(&Graph::path(4), &[0, 1, 2, 3]).is_none());

        assert!(mutually_routable(&k4, &[0, 1], &[2, 3, 0]).is_none());
        let c4 = Graph::cycle(4);
        let scheme = mutually_routable(&c4, &[0, 2], &[1, 3]).unwrap();
        assert_eq!(scheme.stages[0], Matching::new([(0, 1), (2, 3)]));
        assert_eq!(scheme.stages[1], Matching::new([(1, 2), (0, 3)]));
        let split = Graph::from_edges(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        assert!(mutually_routable(&split, &[0, 1], &[2, 3]).is_none());
    }

    #[test]
    fn cycle_graph_examples() {
        let empty = build_cycle_graph(&Graph::complete(3), &Permutation::identity(3)).unwrap();
        assert!(empty.cycles.is_empty());
        assert_eq!(loop_perfect_matching(&empty), Some(LoopCover::default()));

        let p = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        let k4 = build_cycle_graph(&Graph::complete(4), &p).unwrap();
        assert_eq!(k4.cycles.len(), 2);
        assert!(k4.loops.iter().all(Option::is_some));
        assert_eq!(k4.edges.len(), 1);

        let q = Permutation::new(vec![2, 3, 0, 1]).unwrap();
        let c4 = build_cycle_graph(&Graph::cycle(4), &q).unwrap();
        assert!(c4.loops.iter().all(Option::is_none));
        assert_eq!(c4.edges.len(), 1);
    }

    #[test]
    fn loop_cover_cases() {
        let scheme = clique_two_step_scheme(2, (0, 1)).ok();
        let cg = CycleGraph {
            cycles: vec![vec![0, 1], vec![2, 3], vec![4, 5]],
            loops: vec![scheme, None, None],
            edges: vec![],
            work: 0,
        };
        assert_eq!(loop_perfect_matching(&cg), None);
        let single = CycleGraph {
            cycles: vec![vec![0, 1]],
            loops: vec![clique_two_step_scheme(2, (0, 1)).ok()],
            ..CycleGraph::default()
        };
        assert_eq!(loop_perfect_matching(&single).unwrap().singles, vec![0]);
        let c4 = Graph::cycle(4);
        let pair = build_cycle_graph(&c4, &Permutation::new(vec![2, 3, 0, 1]).unwrap()).unwrap();
        assert_eq!(loop_perfect_matching(&pair).unwrap().pairs, vec![0]);
    }

    #[test]
    fn decide_examples() {
        let k3 = Graph::complete(3);
        let rot = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(decide_two_step(&k3, &rot).unwrap().steps, Some(2));
        assert_eq!(
            decide_two_step(&k3, &Permutation::identity(3))
                .unwrap()
                .steps,
            Some(0)
        );
        let p3 = Graph::path(3);
        let ends = Permutation::transposition(3, 0, 2);
        assert_eq!(
            decide_two_step(&p3, &ends).unwrap().status,
            RoutingStatus::ExceededCap
        );
        let c4 = Graph::cycle(4);
        let q = Permutation::new(vec![2, 3, 0, 1]).unwrap();
        assert_eq!(decide_two_step(&c4, &q).unwrap().steps, Some(2));
        assert_eq!(
            decide_two_step(&c4, &Permutation::transposition(4, 0, 1))
                .unwrap()
                .steps,
            Some(1)
        );
    }

    #[test]
    fn fixed_points_never_help() {
        // Every permutation on small graphs: agreement with the exact solver.
        for g in [
            Graph::path(4),
            Graph::star(5),
            Graph::cycle(5),
            Graph::complete_bipartite(2, 3),
        ] {
            for p in Permutation::all(g.n()) {
                let exact = rt_exact(&g, &p, 2).unwrap();
                let two = decide_two_step(&g, &p).unwrap();
                assert_eq!(exact.status, two.status, "{p:?}");
                assert_eq!(exact.steps, two.steps, "{p:?}");
            }
        }
    }

    #[test]
    fn cliques_route_everything_in_two() {
        for n in 2..=6 {
            let k = Graph::complete(n);
            for p in Permutation::all(n) {
                let out = decide_two_step(&k, &p).unwrap();
                assert!(out.steps.unwrap() <= 2);
            }
        }
    }
}
