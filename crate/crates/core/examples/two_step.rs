//! Two-step routing: decide, inspect the cycle graph, check the plan.

use matchroute::two_step::build_cycle_graph;
use matchroute::{decide_two_step, verify_plan, Graph, Permutation};

fn main() -> matchroute::Result<()> {
    let g = Graph::complete(6);
    let p = Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4, 5]])?;
    let cg = build_cycle_graph(&g, &p)?;
    println!(
        "{} cycles, {} cycle-graph edges",
        cg.cycles.len(),
        cg.edges.len()
    );

    let outcome = decide_two_step(&g, &p)?;
    let plan = outcome.plan.expect("cliques route everything in two steps");
    print!("{}", plan.to_text());
    assert!(verify_plan(&g, &p, &plan)?);

    // a swap of the two path ends needs three steps
    let swap = Permutation::transposition(3, 0, 2);
    println!(
        "P3 end swap: {:?}",
        decide_two_step(&Graph::path(3), &swap)?.status
    );
    Ok(())
}
