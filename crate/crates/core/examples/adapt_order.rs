//! Re-targeting a sorting network to a different output order.

use matchroute::sortnet::adapt_on_graph;
use matchroute::tree_sort::odd_even_tree_sort;
use matchroute::{Graph, Permutation};

fn main() -> matchroute::Result<()> {
    let t = Graph::from_edges(8, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6), (6, 7)])?;
    let net = odd_even_tree_sort(&t)?;
    println!("native order {:?}", net.order().as_slice());

    // rank r should end on vertex r
    let target = Permutation::identity(8);
    let adapted = adapt_on_graph(&net, &t, &target)?;
    println!(
        "depth {} -> {} (limit +{})",
        net.depth(),
        adapted.depth(),
        3 * 8
    );
    assert!(adapted.verify_zero_one()?);
    println!("{:?}", adapted.run(&[4, 8, 1, 6, 3, 7, 2, 5]));
    Ok(())
}
