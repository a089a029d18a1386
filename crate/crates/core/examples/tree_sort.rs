//! Sorting networks on trees, with the per-pass depth accounting.

use matchroute::tree_sort::{build_tree_sort, depth_accounting};
use matchroute::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> matchroute::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = Graph::random_tree(12, &mut rng);
    let build = build_tree_sort(&t)?;
    assert!(build.network.verify_zero_one()?);
    print!("{}", depth_accounting(&t, &build).to_text());
    println!("MP labeling: {:?}", build.network.order().as_slice());

    for n in [6, 9, 12] {
        let star = build_tree_sort(&Graph::star(n))?.network;
        println!(
            "star n = {n:>2}: depth {:>4}, n^2/8 = {}",
            star.depth(),
            n * n / 8
        );
    }
    Ok(())
}
