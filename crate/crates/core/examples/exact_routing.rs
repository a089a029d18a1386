//! Exact routing numbers by configuration search.

use matchroute::{rt_at_most_k, rt_exact, rt_worst_case, Graph, Permutation};

fn main() -> matchroute::Result<()> {
    let (rt, witness) = rt_worst_case(&Graph::hypercube(3), 16)?;
    println!(
        "rt(Q3) = {rt}, hardest permutation {:?}",
        witness.as_slice()
    );

    for n in 3..=6 {
        let (rt, _) = rt_worst_case(&Graph::star(n), 16)?;
        println!("star with {n} vertices: {rt}");
    }

    let hexagon = Graph::cycle(6);
    let antipodal = Permutation::transposition(6, 0, 3);
    let outcome = rt_exact(&hexagon, &antipodal, 10)?;
    println!("hexagon antipodal swap: {:?} steps", outcome.steps);
    print!("{}", outcome.plan.unwrap().to_text());

    println!(
        "within 2? {}",
        rt_at_most_k(&hexagon, &antipodal, 2)?.is_some()
    );
    Ok(())
}
