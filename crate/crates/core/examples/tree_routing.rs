//! Routing arbitrary permutations on trees within 3n steps.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use matchroute::{route_tree, verify_plan, Graph, Permutation};

fn main() -> matchroute::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [10, 50, 200, 1000] {
        let t = Graph::random_tree(n, &mut rng);
        let p = Permutation::random(n, &mut rng);
        let plan = route_tree(&t, &p)?;
        assert!(verify_plan(&t, &p, &plan)?);
        println!("n = {n:>4}: {:>4} steps (3n = {})", plan.len(), 3 * n);
    }
    Ok(())
}
