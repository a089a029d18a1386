//! Sorting on a grid from two path networks.

use matchroute::sortnet::{odd_even_path_network, product_network};

fn main() -> matchroute::Result<()> {
    let (a, b) = (odd_even_path_network(3), odd_even_path_network(4));
    let grid = product_network(&a, &b)?;
    let (s1, s2) = (a.depth(), b.depth());
    println!("3x4 grid: depth {} = {s1}*{s2} + {s1} + {s2}", grid.depth());
    assert!(grid.verify_zero_one()?);

    let input: Vec<u32> = (0..12).map(|i| (i * 7) % 12).collect();
    let output = grid.run(&input);
    let by_rank: Vec<u32> = grid.vertices_by_rank().iter().map(|&v| output[v]).collect();
    println!("read in rank order: {by_rank:?}");
    Ok(())
}
