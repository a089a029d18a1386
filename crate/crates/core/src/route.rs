//! Executing, verifying and exactly solving routing instances.
//!
//! A routing instance is a graph plus a [`Permutation`]; pebble `i` starts on
//! vertex `i` and must end on `dest(i)`. Each step applies one matching.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::graph::{parse_numbers, Graph};
use crate::matching::{enumerate_matchings, Matching};
use crate::perm::{check_sizes, PebbleConfiguration, Permutation};

/// Largest vertex count the configuration-space solvers accept.
pub const MAX_STATE_VERTICES: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RoutingPlan {
    pub steps: Vec<Matching>,
}

impl RoutingPlan {
    pub fn new(steps: Vec<Matching>) -> Self {
        RoutingPlan { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Runs every step from the initial configuration.
    pub fn execute(&self, g: &Graph) -> Result<PebbleConfiguration> {
        let mut config = PebbleConfiguration::initial(g.n());
        for step in &self.steps {
            config = config.apply_matching(g, step)?;
        }
        Ok(config)
    }

    /// Overlays plans on disjoint vertex sets step by step.
    pub fn overlay(plans: &[RoutingPlan]) -> RoutingPlan {
        let len = plans.iter().map(RoutingPlan::len).max().unwrap_or(0);
        let steps = (0..len)
            .map(|t| {
                plans
                    .iter()
                    .filter_map(|p| p.steps.get(t))
                    .fold(Matching::empty(), |acc, m| acc.union(m))
            })
            .collect();
        RoutingPlan { steps }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("steps {}\n", self.len());
        for step in &self.steps {
            writeln!(out, "{}", step.to_tokens()).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<RoutingPlan, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (hline, header) =
            lines
                .by_ref()
                .find(|(_, l)| !l.is_empty())
                .ok_or(ParseError::Malformed {
                    line: 1,
                    reason: "missing header".into(),
                })?;
        let count = header
            .strip_prefix("steps")
            .map(str::trim)
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or(ParseError::Malformed {
                line: hline,
                reason: "header must be `steps t`".into(),
            })?;
        let mut steps = Vec::with_capacity(count);
        for _ in 0..count {
            let (line, body) = lines.next().ok_or(ParseError::CountMismatch {
                expected: count,
                found: steps.len(),
            })?;
            let mut pairs = Vec::new();
            for tok in body.split_whitespace() {
                let (u, v) = tok.split_once('-').ok_or(ParseError::Malformed {
                    line,
                    reason: format!("expected `u-v`, found `{tok}`"),
                })?;
                let nums = parse_numbers(line, &format!("{u} {v}"))?;
                if nums.iter().any(|&x| x == 0) {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "vertex 0".into(),
                    });
                }
                pairs.push((nums[0] - 1, nums[1] - 1));
            }
            steps.push(Matching::new(pairs));
        }
        if let Some((line, _)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(ParseError::Malformed {
                line,
                reason: "unexpected trailing line".into(),
            });
        }
        Ok(RoutingPlan { steps })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoutingStatus {
    Solved,
    /// No plan within the step budget.
    ExceededCap,
    /// No plan of any length exists.
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutingOutcome {
    pub status: RoutingStatus,
    pub steps: Option<usize>,
    pub plan: Option<RoutingPlan>,
}

impl RoutingOutcome {
    pub fn solved(plan: RoutingPlan) -> Self {
        RoutingOutcome {
            status: RoutingStatus::Solved,
            steps: Some(plan.len()),
            plan: Some(plan),
        }
    }

    pub fn exceeded() -> Self {
        RoutingOutcome {
            status: RoutingStatus::ExceededCap,
            steps: None,
            plan: None,
        }
    }

    pub fn infeasible() -> Self {
        RoutingOutcome {
            status: RoutingStatus::Infeasible,
            steps: None,
            plan: None,
        }
    }
}

/// True iff applying the plan to the initial configuration routes `p`.
pub fn verify_plan(g: &Graph, p: &Permutation, plan: &RoutingPlan) -> Result<bool> {
    check_sizes(g, p)?;
    Ok(plan.execute(g)?.routes(p))
}

/// True when some pebble must leave its connected component.
pub fn crosses_components(g: &Graph, p: &Permutation) -> bool {
    let comp = g.components();
    (0..g.n()).any(|i| comp[i] != comp[p.dest(i)])
}

// Configurations are packed four bits per vertex: nibble `v` holds the pebble on `v`.

fn pack(at: &[usize]) -> u64 {
    at.iter()
        .enumerate()
        .fold(0, |acc, (v, &peb)| acc | (peb as u64) << (4 * v))
}

fn unpack(state: u64, n: usize) -> Vec<usize> {
    (0..n).map(|v| (state >> (4 * v) & 0xf) as usize).collect()
}

#[inline]
fn swap_nibbles(state: u64, u: usize, v: usize) -> u64 {
    let (su, sv) = (4 * u, 4 * v);
    let a = state >> su & 0xf;
    let b = state >> sv & 0xf;
    let x = a ^ b;
    state ^ (x << su) ^ (x << sv)
}

fn apply_packed(state: u64, m: &Matching) -> u64 {
    m.pairs()
        .iter()
        .fold(state, |s, &(u, v)| swap_nibbles(s, u, v))
}

fn goal_state(p: &Permutation) -> u64 {
    let mut at = vec![0; p.n()];
    for i in 0..p.n() {
        at[p.dest(i)] = i;
    }
    pack(&at)
}

fn state_space_guard(g: &Graph) -> Result<()> {
    if g.n() > MAX_STATE_VERTICES {
        return Err(Error::TooLarge(format!(
            "{} vertices; configuration search supports at most {MAX_STATE_VERTICES}",
            g.n()
        )));
    }
    Ok(())
}

fn nonempty_matchings(g: &Graph) -> Vec<Matching> {
    enumerate_matchings(g).filter(|m| !m.is_empty()).collect()
}

/// Minimum number of steps routing `p` on `g`, searching at most `cap` steps.
///
/// Bidirectional breadth-first search over pebble configurations; every
/// nonempty matching is a transition, and matchings are involutions, so the
/// backward search uses the same moves.
pub fn rt_exact(g: &Graph, p: &Permutation, cap: usize) -> Result<RoutingOutcome> {
    check_sizes(g, p)?;
    state_space_guard(g)?;
    if crosses_components(g, p) {
        return Ok(RoutingOutcome::infeasible());
    }
    let start = pack(&PebbleConfiguration::initial(g.n()).as_slice().to_vec());
    let goal = goal_state(p);
    if start == goal {
        return Ok(RoutingOutcome::solved(RoutingPlan::default()));
    }
    let moves = nonempty_matchings(g);
    // state -> (predecessor, move index)
    let mut fwd: HashMap<u64, (u64, u32)> = HashMap::from([(start, (start, u32::MAX))]);
    let mut bwd: HashMap<u64, (u64, u32)> = HashMap::from([(goal, (goal, u32::MAX))]);
    let mut fwd_frontier = vec![start];
    let mut bwd_frontier = vec![goal];
    let mut depth = 0;
    while depth < cap {
        if fwd_frontier.is_empty() || bwd_frontier.is_empty() {
            return Ok(RoutingOutcome::infeasible());
        }
        let forward = fwd_frontier.len() <= bwd_frontier.len();
        let (frontier, seen, other) = if forward {
            (&mut fwd_frontier, &mut fwd, &bwd)
        } else {
            (&mut bwd_frontier, &mut bwd, &fwd)
        };
        let mut next = Vec::new();
        let mut meet = None;
        'expand: for &s in frontier.iter() {
            for (k, m) in moves.iter().enumerate() {
                let t = apply_packed(s, m);
                if seen.contains_key(&t) {
                    continue;
                }
                seen.insert(t, (s, k as u32));
                if other.contains_key(&t) {
                    meet = Some(t);
                    break 'expand;
                }
                next.push(t);
            }
        }
        depth += 1;
        if let Some(t) = meet {
            let plan = stitch(t, &fwd, &bwd, &moves);
            debug_assert_eq!(plan.len(), depth);
            return Ok(RoutingOutcome::solved(plan));
        }
        *frontier = next;
    }
    Ok(RoutingOutcome::exceeded())
}

fn stitch(
    meet: u64,
    fwd: &HashMap<u64, (u64, u32)>,
    bwd: &HashMap<u64, (u64, u32)>,
    moves: &[Matching],
) -> RoutingPlan {
    let mut head = Vec::new();
    let mut s = meet;
    while let Some(&(prev, k)) = fwd.get(&s) {
        if k == u32::MAX {
            break;
        }
        head.push(moves[k as usize].clone());
        s = prev;
    }
    head.reverse();
    let mut s = meet;
    while let Some(&(prev, k)) = bwd.get(&s) {
        if k == u32::MAX {
            break;
        }
        head.push(moves[k as usize].clone());
        s = prev;
    }
    RoutingPlan::new(head)
}

/// Routing number of `g` with a permutation attaining it.
///
/// One breadth-first sweep from the initial configuration labels every
/// reachable configuration with its distance; a configuration at distance `d`
/// is the goal of the permutation it encodes, so the largest label is `rt(g)`.
pub fn rt_worst_case(g: &Graph, cap: usize) -> Result<(usize, Permutation)> {
    state_space_guard(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let moves = nonempty_matchings(g);
    let start = pack(&(0..g.n()).collect::<Vec<_>>());
    let mut seen: HashSet<u64> = HashSet::from([start]);
    let mut frontier = vec![start];
    let mut depth = 0;
    loop {
        let mut next = Vec::new();
        for &s in &frontier {
            for m in &moves {
                let t = apply_packed(s, m);
                if seen.insert(t) {
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        depth += 1;
        if depth > cap {
            return Err(Error::BudgetExceeded);
        }
        frontier = next;
    }
    let worst = *frontier.iter().min().unwrap();
    let at = unpack(worst, g.n());
    let witness = Permutation::new(at)
        .expect("packed states are permutations")
        .inverse();
    Ok((depth, witness))
}

/// Depth-first search over matching sequences with distance pruning.
struct BoundedDfs<'a> {
    g: &'a Graph,
    dist: Vec<Vec<usize>>,
    dest: Vec<usize>,
    at: Vec<usize>,
    used: Vec<bool>,
    step: Vec<(usize, usize)>,
    plan: Vec<Matching>,
    failed: HashSet<(Vec<usize>, usize)>,
    nodes: u64,
    budget: Option<u64>,
}

/// Cap on remembered dead ends; beyond it the search simply stops caching.
const FAILED_CACHE_LIMIT: usize = 4_000_000;

type Visit<'v> = dyn FnMut(&[Matching]) -> bool + 'v;

impl<'a> BoundedDfs<'a> {
    fn new(g: &'a Graph, p: &Permutation, budget: Option<u64>) -> Self {
        BoundedDfs {
            g,
            dist: g.all_pairs_distances(),
            dest: p.as_slice().to_vec(),
            at: (0..g.n()).collect(),
            used: vec![false; g.n()],
            step: Vec::new(),
            plan: Vec::new(),
            failed: HashSet::new(),
            nodes: 0,
            budget,
        }
    }

    fn at_goal(&self) -> bool {
        self.at
            .iter()
            .enumerate()
            .all(|(v, &peb)| self.dest[peb] == v)
    }

    fn feasible_now(&self, remaining: usize) -> bool {
        self.at
            .iter()
            .enumerate()
            .all(|(v, &peb)| self.dist[v][self.dest[peb]] <= remaining)
    }

    /// Explores every continuation of exactly `remaining` steps.
    /// `Ok(true)` means some goal was reached below this node.
    fn search(&mut self, remaining: usize, visit: &mut Visit<'_>) -> Result<bool, Stop> {
        if remaining == 0 {
            if self.at_goal() {
                if visit(&self.plan) {
                    return Err(Stop::Done);
                }
                return Ok(true);
            }
            return Ok(false);
        }
        let key = (self.at.clone(), remaining);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(Stop::Budget);
        }
        let found = self.build_step(0, remaining, visit)?;
        if !found && self.failed.len() < FAILED_CACHE_LIMIT {
            self.failed.insert(key);
        }
        Ok(found)
    }

    /// Chooses the partner of each vertex from `v` on, in increasing label order,
    /// "unmatched" before any neighbor.
    fn build_step(
        &mut self,
        v: usize,
        remaining: usize,
        visit: &mut Visit<'_>,
    ) -> Result<bool, Stop> {
        let n = self.g.n();
        let mut v = v;
        while v < n && self.used[v] {
            v += 1;
        }
        if v == n {
            let m = Matching::new(self.step.iter().copied());
            for &(a, b) in m.pairs() {
                self.at.swap(a, b);
            }
            self.plan.push(m);
            let outer = std::mem::replace(&mut self.used, vec![false; n]);
            let outer_step = std::mem::take(&mut self.step);
            let result = self.search(remaining - 1, visit);
            self.used = outer;
            self.step = outer_step;
            let m = self.plan.pop().unwrap();
            for &(a, b) in m.pairs() {
                self.at.swap(a, b);
            }
            return result;
        }
        let after = remaining - 1;
        let mut found = false;
        let here = self.at[v];
        self.used[v] = true;
        if self.dist[v][self.dest[here]] <= after {
            found |= self.build_step(v + 1, remaining, visit)?;
        }
        let g = self.g;
        for &w in g.neighbors(v) {
            if self.used[w] {
                continue;
            }
            let there = self.at[w];
            if self.dist[w][self.dest[here]] <= after && self.dist[v][self.dest[there]] <= after {
                self.used[w] = true;
                self.step.push((v, w));
                let r = self.build_step(v + 1, remaining, visit);
                self.step.pop();
                self.used[w] = false;
                found |= r?;
            }
        }
        self.used[v] = false;
        Ok(found)
    }
}

enum Stop {
    Done,
    Budget,
}

/// Shortest plan of at most `k` steps, if one exists. Exponential in the worst case.
pub fn rt_at_most_k(g: &Graph, p: &Permutation, k: usize) -> Result<Option<RoutingPlan>> {
    rt_at_most_k_budgeted(g, p, k, None)
}

/// [`rt_at_most_k`] that gives up with [`Error::BudgetExceeded`] after `budget` search nodes.
pub fn rt_at_most_k_budgeted(
    g: &Graph,
    p: &Permutation,
    k: usize,
    budget: Option<u64>,
) -> Result<Option<RoutingPlan>> {
    check_sizes(g, p)?;
    let mut dfs = BoundedDfs::new(g, p, budget);
    for depth in 0..=k {
        if !dfs.feasible_now(depth) {
            continue;
        }
        let mut found = None;
        let mut visit = |plan: &[Matching]| {
            found = Some(RoutingPlan::new(plan.to_vec()));
            true
        };
        match dfs.search(depth, &mut visit) {
            Err(Stop::Done) => return Ok(found),
            Err(Stop::Budget) => return Err(Error::BudgetExceeded),
            Ok(_) => {}
        }
    }
    Ok(None)
}

/// Calls `visit` on every sequence of exactly `k` matchings (empty ones
/// included) that routes `p`. Returning `true` from `visit` stops early.
pub fn for_each_plan(
    g: &Graph,
    p: &Permutation,
    k: usize,
    budget: Option<u64>,
    mut visit: impl FnMut(&[Matching]) -> bool,
) -> Result<()> {
    check_sizes(g, p)?;
    let mut dfs = BoundedDfs::new(g, p, budget);
    if !dfs.feasible_now(k) {
        return Ok(());
    }
    match dfs.search(k, &mut visit) {
        Err(Stop::Budget) => Err(Error::BudgetExceeded),
        _ => Ok(()),
    }
}

/// A vertex whose removal leaves components of at most `⌊n/2⌋` vertices,
/// smallest label first. `members` lists the vertices of a subtree of `t`.
pub(crate) fn subtree_centroid(t: &Graph, members: &[usize], inside: &[bool]) -> usize {
    let total = members.len();
    let root = members[0];
    let mut parent = HashMap::from([(root, usize::MAX)]);
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in t.neighbors(u) {
            if inside[w] && !parent.contains_key(&w) {
                parent.insert(w, u);
                order.push(w);
            }
        }
    }
    let mut size: HashMap<usize, usize> = HashMap::new();
    for &u in order.iter().rev() {
        let s = 1 + t
            .neighbors(u)
            .iter()
            .filter(|&&w| inside[w] && parent.get(&w) == Some(&u))
            .map(|w| size[w])
            .sum::<usize>();
        size.insert(u, s);
    }
    let mut candidates: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&u| {
            let mut largest = total - size[&u];
            for &w in t.neighbors(u) {
                if inside[w] && parent.get(&w) == Some(&u) {
                    largest = largest.max(size[&w]);
                }
            }
            largest <= total / 2
        })
        .collect();
    candidates.sort_unstable();
    candidates[0]
}

/// Routes `p` on the tree `t` with at most `3n` steps.
///
/// Repeatedly splits every open region at its centroid and first moves each
/// pebble into the component holding its destination: pebbles bound for
/// another component rise toward the centroid, which exchanges them with the
/// root of their target component one per step. Regions are then handled
/// independently and in parallel.
pub fn route_tree(t: &Graph, p: &Permutation) -> Result<RoutingPlan> {
    check_sizes(t, p)?;
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.n();
    let mut at: Vec<usize> = (0..n).collect();
    let mut regions: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut steps: Vec<Matching> = Vec::new();
    let mut inside = vec![false; n];
    while !regions.is_empty() {
        let mut round_plans = Vec::new();
        let mut next_regions = Vec::new();
        for region in &regions {
            if region.len() <= 1 {
                continue;
            }
            for &v in region {
                inside[v] = true;
            }
            let (plan, parts) = settle_region(t, p, &mut at, region, &inside);
            for &v in region {
                inside[v] = false;
            }
            round_plans.push(RoutingPlan::new(plan));
            next_regions.extend(parts);
        }
        steps.extend(RoutingPlan::overlay(&round_plans).steps);
        regions = next_regions;
    }
    let plan = RoutingPlan::new(steps.into_iter().filter(|m| !m.is_empty()).collect());
    debug_assert!(verify_plan(t, p, &plan).unwrap_or(false));
    Ok(plan)
}

const CENTER: usize = usize::MAX;

/// Moves every pebble of `region` into the component of `region - centroid`
/// holding its destination. Returns the steps and the components.
fn settle_region(
    t: &Graph,
    p: &Permutation,
    at: &mut [usize],
    region: &[usize],
    inside: &[bool],
) -> (Vec<Matching>, Vec<Vec<usize>>) {
    let c = subtree_centroid(t, region, inside);
    let n = t.n();
    let mut comp = vec![CENTER; n];
    let mut parent = vec![usize::MAX; n];
    let mut roots = Vec::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    // Top-down order of every component, used by the conveyor below.
    let mut order = Vec::new();
    for &a in t.neighbors(c) {
        if !inside[a] {
            continue;
        }
        let id = roots.len();
        roots.push(a);
        let mut members = vec![a];
        comp[a] = id;
        parent[a] = c;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &w in t.neighbors(u) {
                if inside[w] && w != c && comp[w] == CENTER && w != parent[u] {
                    comp[w] = id;
                    parent[w] = u;
                    members.push(w);
                }
            }
        }
        order.extend(members.iter().copied());
        parts.push(members);
    }
    let color = |peb: usize| comp[p.dest(peb)];
    let settled = |at: &[usize], v: usize| color(at[v]) == comp[v];
    let mut steps = Vec::new();
    let limit = 4 * region.len() + 8;
    loop {
        if region.iter().all(|&v| settled(at, v)) {
            break;
        }
        assert!(steps.len() < limit, "tree routing failed to make progress");
        let mut used = vec![false; n];
        let mut pairs = Vec::new();
        let here = color(at[c]);
        let partner = if here != CENTER {
            let a = roots[here];
            (!settled(at, a)).then_some(a)
        } else {
            roots.iter().copied().find(|&a| !settled(at, a))
        };
        if let Some(a) = partner {
            pairs.push((c, a));
            used[c] = true;
            used[a] = true;
        }
        for &u in &order {
            if used[u] || !settled(at, u) {
                continue;
            }
            let child = t.neighbors(u).iter().copied().find(|&w| {
                inside[w] && parent[w] == u && comp[w] == comp[u] && !used[w] && !settled(at, w)
            });
            if let Some(w) = child {
                pairs.push((u, w));
                used[u] = true;
                used[w] = true;
            }
        }
        for &(u, w) in &pairs {
            at.swap(u, w);
        }
        steps.push(Matching::new(pairs));
    }
    (steps, parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn p3_swap() -> (Graph, Permutation) {
        (Graph::path(3), Permutation::transposition(3, 0, 2))
    }

    #[test]
    fn verify_examples() {
        let (g, p) = p3_swap();
        assert!(verify_plan(
            &Graph::path(3),
            &Permutation::identity(3),
            &RoutingPlan::default()
        )
        .unwrap());
        let plan = RoutingPlan::new(vec![
            Matching::new([(0, 1)]),
            Matching::new([(1, 2)]),
            Matching::new([(0, 1)]),
        ]);
        assert!(verify_plan(&g, &p, &plan).unwrap());
        for a in enumerate_matchings(&g) {
            for b in enumerate_matchings(&g) {
                let two = RoutingPlan::new(vec![a.clone(), b]);
                assert!(!verify_plan(&g, &p, &two).unwrap());
            }
        }
        let bad = RoutingPlan::new(vec![Matching::new([(0, 2)])]);
        assert_eq!(verify_plan(&g, &p, &bad), Err(Error::NotAnEdge(1, 3)));
    }

    #[test]
    fn exact_examples() {
        let g = Graph::cycle(5);
        assert_eq!(
            rt_exact(&g, &Permutation::identity(5), 4).unwrap().steps,
            Some(0)
        );
        let one = rt_exact(&g, &Permutation::transposition(5, 1, 2), 4).unwrap();
        assert_eq!(one.steps, Some(1));
        let (g, p) = p3_swap();
        let out = rt_exact(&g, &p, 5).unwrap();
        assert_eq!(out.steps, Some(3));
        assert!(verify_plan(&g, &p, out.plan.as_ref().unwrap()).unwrap());
        assert_eq!(
            rt_exact(&g, &p, 2).unwrap().status,
            RoutingStatus::ExceededCap
        );

        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let across = Permutation::transposition(4, 1, 2);
        assert_eq!(
            rt_exact(&split, &across, 9).unwrap().status,
            RoutingStatus::Infeasible
        );
        let within = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(rt_exact(&split, &within, 9).unwrap().steps, Some(1));
    }

    #[test]
    fn star_k13_worst_permutation_needs_four() {
        let star = Graph::star(4);
        let worst = Permutation::all(4)
            .map(|p| rt_exact(&star, &p, 10).unwrap().steps.unwrap())
            .max();
        assert_eq!(worst, Some(4));
    }

    #[test]
    fn worst_case_examples() {
        assert_eq!(rt_worst_case(&Graph::complete(3), 10).unwrap().0, 2);
        assert_eq!(rt_worst_case(&Graph::path(2), 10).unwrap().0, 1);
        let (value, witness) = rt_worst_case(&Graph::path(4), 10).unwrap();
        assert_eq!(
            rt_exact(&Graph::path(4), &witness, 10).unwrap().steps,
            Some(value)
        );
        assert_eq!(
            rt_worst_case(&Graph::path(5), 2),
            Err(Error::BudgetExceeded)
        );
    }

    #[test]
    fn bounded_examples() {
        let (g, p) = p3_swap();
        assert_eq!(rt_at_most_k(&g, &p, 2).unwrap(), None);
        let plan = rt_at_most_k(&g, &p, 3).unwrap().unwrap();
        assert_eq!(plan.len(), 3);
        assert!(verify_plan(&g, &p, &plan).unwrap());

        let hexagon = Graph::cycle(6);
        let antipodal = Permutation::transposition(6, 0, 3);
        let plan = rt_at_most_k(&hexagon, &antipodal, 3).unwrap().unwrap();
        assert!(verify_plan(&hexagon, &antipodal, &plan).unwrap());
        assert_eq!(
            rt_at_most_k_budgeted(&hexagon, &antipodal, 3, Some(0)),
            Err(Error::BudgetExceeded)
        );
    }

    #[test]
    fn exhaustive_plan_listing_on_p3() {
        let (g, p) = p3_swap();
        let mut plans = Vec::new();
        for_each_plan(&g, &p, 3, None, |plan| {
            plans.push(plan.to_vec());
            false
        })
        .unwrap();
        // Either end may move first.
        assert_eq!(plans.len(), 2);
    }

    #[test]
    fn tree_routing_examples() {
        let (g, p) = p3_swap();
        let plan = route_tree(&g, &p).unwrap();
        assert!(plan.len() <= 9);
        assert!(verify_plan(&g, &p, &plan).unwrap());
        assert!(route_tree(&g, &Permutation::identity(3))
            .unwrap()
            .is_empty());
        assert_eq!(
            route_tree(&Graph::cycle(3), &Permutation::identity(3)),
            Err(Error::NotATree)
        );

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let t = Graph::random_tree(50, &mut rng);
            let p = Permutation::random(50, &mut rng);
            let plan = route_tree(&t, &p).unwrap();
            assert!(verify_plan(&t, &p, &plan).unwrap());
            assert!(plan.len() <= 150);
        }
    }

    #[test]
    fn plan_text_round_trip() {
        let plan = RoutingPlan::new(vec![
            Matching::new([(0, 1), (2, 3)]),
            Matching::empty(),
            Matching::new([(1, 2)]),
        ]);
        let text = plan.to_text();
        assert_eq!(text, "steps 3\n1-2 3-4\n\n2-3\n");
        assert_eq!(RoutingPlan::parse(&text).unwrap(), plan);
        assert!(RoutingPlan::parse("steps 2\n1-2\n").is_err());
        assert!(RoutingPlan::parse("steps 1\n1:2\n").is_err());
    }
}
