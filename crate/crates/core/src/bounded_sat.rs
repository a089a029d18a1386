//! Exact `rt(G, π) ≤ k` decision through a CNF encoding.
//!
//! Variables: one per (edge, step) saying the edge swaps at that step, and one
//! per (pebble, time, vertex) for positions, restricted to vertices within
//! distance `t` of the start and `k - t` of the destination. Used where the
//! depth-first search cannot refute an instance in reasonable time.

use varisat::{ExtendFormula, Lit, Solver};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::Matching;
use crate::perm::{check_sizes, Permutation};
use crate::route::{verify_plan, RoutingPlan};

/// A verified plan of at most `k` steps, or `None` when none exists.
pub fn rt_at_most_k_sat(g: &Graph, p: &Permutation, k: usize) -> Result<Option<RoutingPlan>> {
    check_sizes(g, p)?;
    let n = g.n();
    let dist = g.all_pairs_distances();
    if (0..n).any(|i| dist[i][p.dest(i)] > k) {
        return Ok(None);
    }
    if k == 0 {
        return Ok(p.is_identity().then(RoutingPlan::default));
    }
    let mut solver = Solver::new();
    let edges = g.edges();
    let swap: Vec<Vec<Lit>> = (0..k)
        .map(|_| edges.iter().map(|_| solver.new_lit()).collect())
        .collect();
    let mut incident = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    for step in &swap {
        for list in &incident {
            for (i, &e) in list.iter().enumerate() {
                for &f in &list[i + 1..] {
                    solver.add_clause(&[!step[e], !step[f]]);
                }
            }
        }
    }
    // at[peb][t][v]: pebble on v after t steps, when v is within reach.
    let mut at: Vec<Vec<Vec<Option<Lit>>>> = Vec::with_capacity(n);
    for peb in 0..n {
        let target = p.dest(peb);
        let mut per_time = Vec::with_capacity(k + 1);
        for t in 0..=k {
            let row: Vec<Option<Lit>> = (0..n)
                .map(|v| (dist[peb][v] <= t && dist[v][target] <= k - t).then(|| solver.new_lit()))
                .collect();
            let domain: Vec<Lit> = row.iter().flatten().copied().collect();
            solver.add_clause(&domain);
            for (i, &a) in domain.iter().enumerate() {
                for &b in &domain[i + 1..] {
                    solver.add_clause(&[!a, !b]);
                }
            }
            per_time.push(row);
        }
        solver.add_clause(&[per_time[0][peb].unwrap()]);
        solver.add_clause(&[per_time[k][target].unwrap()]);
        at.push(per_time);
    }
    for row in &at {
        for t in 0..k {
            for v in 0..n {
                let Some(here) = row[t][v] else { continue };
                // Swapped along e: moves to the other endpoint.
                let mut stay = vec![!here];
                if let Some(next) = row[t + 1][v] {
                    stay.push(next);
                }
                for &e in &incident[v] {
                    let (a, b) = edges[e];
                    let w = if a == v { b } else { a };
                    let mut moved = vec![!here, !swap[t][e]];
                    if let Some(next) = row[t + 1][w] {
                        moved.push(next);
                    }
                    solver.add_clause(&moved);
                    stay.push(swap[t][e]);
                }
                solver.add_clause(&stay);
            }
        }
    }
    let satisfiable = solver
        .solve()
        .map_err(|e| Error::InvalidArgument(format!("solver failure: {e}")))?;
    if !satisfiable {
        return Ok(None);
    }
    let model = solver.model().expect("model after a satisfiable call");
    let mut truth = vec![false; solver_vars(&model)];
    for lit in &model {
        truth[lit.var().index()] = lit.is_positive();
    }
    let steps = swap
        .iter()
        .map(|row| {
            Matching::new(
                row.iter()
                    .zip(edges)
                    .filter(|(lit, _)| truth[lit.var().index()])
                    .map(|(_, &e)| e),
            )
        })
        .filter(|m| !m.is_empty())
        .collect();
    let plan = RoutingPlan::new(steps);
    if !verify_plan(g, p, &plan)? {
        return Err(Error::PlanDoesNotVerify);
    }
    Ok(Some(plan))
}

fn solver_vars(model: &[Lit]) -> usize {
    model.iter().map(|l| l.var().index() + 1).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::route::rt_exact;
    use rand::SeedableRng;

    #[test]
    fn gadget_calibration() {
        let p3 = Graph::path(3);
        let ends = Permutation::transposition(3, 0, 2);
        assert!(rt_at_most_k_sat(&p3, &ends, 2).unwrap().is_none());
        assert_eq!(rt_at_most_k_sat(&p3, &ends, 3).unwrap().unwrap().len(), 3);
        let hexagon = Graph::cycle(6);
        let antipodal = Permutation::transposition(6, 0, 3);
        assert!(rt_at_most_k_sat(&hexagon, &antipodal, 2).unwrap().is_none());
        assert!(rt_at_most_k_sat(&hexagon, &antipodal, 3).unwrap().is_some());
    }

    #[test]
    fn agrees_with_breadth_first_search() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let g = Graph::random_connected(6, 0.4, &mut rng);
            let p = Permutation::random(6, &mut rng);
            let exact = rt_exact(&g, &p, 12).unwrap().steps.unwrap();
            for k in exact.saturating_sub(1)..=exact {
                let plan = rt_at_most_k_sat(&g, &p, k).unwrap();
                assert_eq!(plan.is_some(), k >= exact);
            }
        }
    }
}
