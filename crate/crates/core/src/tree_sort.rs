//! Odd-even sorting networks on trees built by centroid recursion.
//!
//! At a centroid `r` with subtrees `T_1..T_d` (largest first), phase one
//! bubbles value blocks between consecutive subtrees: pass `q` runs
//! `Swap(T_i, T_{i+1})` for `i = 1..=d-q`, leaving `T_d` with the largest
//! block, then `T_{d-1}`, and so on, with `T_1 ∪ {r}` holding the smallest.
//! Phase two moves the maximum of `T_1 ∪ {r}` onto `r` and sorts every
//! subtree recursively, all in parallel.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::{Comparator, DirectedMatching};
use crate::perm::Permutation;
use crate::route::subtree_centroid;
use crate::sortnet::SortingNetwork;

/// Extra cycles appended to every swap schedule.
pub const DEFAULT_SLACK: usize = 4;

/// Centroid with the smallest label; errors unless `t` is a tree.
pub fn centroid(t: &Graph) -> Result<usize> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let all: Vec<usize> = (0..t.n()).collect();
    Ok(subtree_centroid(t, &all, &vec![true; t.n()]))
}

/// One subtree hanging off a centroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subtree {
    /// Neighbor of the centroid inside the subtree.
    pub root: usize,
    /// Vertices in breadth-first order from `root`.
    pub vertices: Vec<usize>,
    /// Children of each vertex away from the centroid, largest subtree first.
    pub children: Vec<(usize, Vec<usize>)>,
    /// Largest child count.
    pub alpha: usize,
    pub decomposition: Box<CentroidDecomposition>,
}

impl Subtree {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    fn children_of(&self, v: usize) -> &[usize] {
        self.children
            .iter()
            .find(|(u, _)| *u == v)
            .map(|(_, c)| c.as_slice())
            .unwrap_or(&[])
    }

    /// Depth below `root` of every vertex, in `vertices` order.
    fn depths(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(self.root, 0)];
        let mut i = 0;
        while i < out.len() {
            let (v, d) = out[i];
            i += 1;
            for &c in self.children_of(v) {
                out.push((c, d + 1));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidDecomposition {
    pub root: usize,
    /// Sorted by size descending, ties by smallest vertex label.
    pub subtrees: Vec<Subtree>,
}

impl CentroidDecomposition {
    pub fn size(&self) -> usize {
        1 + self.subtrees.iter().map(Subtree::size).sum::<usize>()
    }

    pub fn max_degree_at_root(&self) -> usize {
        self.subtrees.len()
    }
}

pub fn decompose(t: &Graph) -> Result<CentroidDecomposition> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let all: Vec<usize> = (0..t.n()).collect();
    let mut inside = vec![false; t.n()];
    Ok(decompose_region(t, &all, &mut inside))
}

fn decompose_region(t: &Graph, region: &[usize], inside: &mut [bool]) -> CentroidDecomposition {
    for &v in region {
        inside[v] = true;
    }
    let r = subtree_centroid(t, region, inside);
    let mut parts = Vec::new();
    for &a in t.neighbors(r) {
        if !inside[a] {
            continue;
        }
        let mut vertices = vec![a];
        let mut parent = std::collections::HashMap::from([(a, r)]);
        let mut i = 0;
        while i < vertices.len() {
            let u = vertices[i];
            i += 1;
            for &w in t.neighbors(u) {
                if inside[w] && w != r && !parent.contains_key(&w) {
                    parent.insert(w, u);
                    vertices.push(w);
                }
            }
        }
        parts.push((a, vertices, parent));
    }
    for &v in region {
        inside[v] = false;
    }
    let mut subtrees: Vec<Subtree> = parts
        .into_iter()
        .map(|(a, vertices, parent)| {
            // Subtree sizes below each vertex, for ordering children.
            let mut below: std::collections::HashMap<usize, usize> =
                vertices.iter().map(|&v| (v, 1)).collect();
            for &v in vertices.iter().rev() {
                if v != a {
                    let s = below[&v];
                    *below.get_mut(&parent[&v]).unwrap() += s;
                }
            }
            let children: Vec<(usize, Vec<usize>)> = vertices
                .iter()
                .map(|&v| {
                    let mut kids: Vec<usize> = vertices
                        .iter()
                        .copied()
                        .filter(|&w| w != a && parent[&w] == v)
                        .collect();
                    kids.sort_by_key(|&w| (std::cmp::Reverse(below[&w]), w));
                    (v, kids)
                })
                .collect();
            let alpha = children.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
            let decomposition = Box::new(decompose_region(t, &vertices, inside));
            Subtree {
                root: a,
                vertices,
                children,
                alpha,
                decomposition,
            }
        })
        .collect();
    subtrees.sort_by_key(|s| {
        (
            std::cmp::Reverse(s.size()),
            *s.vertices.iter().min().unwrap(),
        )
    });
    CentroidDecomposition { root: r, subtrees }
}

/// Vertices in increasing rank order: `T_1`'s own labeling, then `r`, then
/// each later subtree's labeling.
pub fn mp_order(cd: &CentroidDecomposition) -> Vec<usize> {
    let mut out = Vec::with_capacity(cd.size());
    let mut subs = cd.subtrees.iter();
    if let Some(first) = subs.next() {
        out.extend(mp_order(&first.decomposition));
    }
    out.push(cd.root);
    for s in subs {
        out.extend(mp_order(&s.decomposition));
    }
    out
}

/// Rank (0-based) of every vertex.
pub fn mp_labeling(cd: &CentroidDecomposition, n: usize) -> Permutation {
    let mut rank = vec![0; n];
    for (i, v) in mp_order(cd).into_iter().enumerate() {
        rank[v] = i;
    }
    Permutation::new(rank).expect("labeling covers every vertex once")
}

/// Oblivious odd-even schedule on `T_i ∪ {r} ∪ T_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapSchedule {
    pub stages: Vec<DirectedMatching>,
    pub cycles: usize,
}

/// Vertices are grouped by level along the joined tree: the deepest level of
/// `T_i` is group 1, `a_i` is group `h_i`, `r` is `h_i + 1`, and `T_j` continues
/// downward. A cycle is a stage on edges whose lower group is odd followed by
/// one on even lower groups. Parents with several children take them in turn.
/// Smaller values move toward the `T_i` end.
pub fn swap_schedule(ti: &Subtree, tj: &Subtree, r: usize, cycles: usize) -> SwapSchedule {
    let left = ti.depths();
    let right = tj.depths();
    let hi = left.iter().map(|&(_, d)| d).max().unwrap_or(0) + 1;
    // (parent, children, lower group of the parent-child edges, parent is lower end)
    let mut fans: Vec<(usize, Vec<usize>, usize, bool)> = Vec::new();
    for &(v, d) in &left {
        let kids = ti.children_of(v);
        if !kids.is_empty() {
            fans.push((v, kids.to_vec(), hi - d - 1, false));
        }
    }
    fans.push((r, vec![ti.root], hi, false));
    fans.push((r, vec![tj.root], hi + 1, true));
    for &(v, d) in &right {
        let kids = tj.children_of(v);
        if !kids.is_empty() {
            fans.push((v, kids.to_vec(), hi + 2 + d, true));
        }
    }
    let mut turn = vec![0usize; fans.len()];
    let mut stages = Vec::new();
    for _ in 0..cycles {
        for parity in [1, 0] {
            let mut entries = Vec::new();
            for (k, (parent, kids, group, parent_low)) in fans.iter().enumerate() {
                if group % 2 != parity {
                    continue;
                }
                let child = kids[turn[k] % kids.len()];
                turn[k] += 1;
                entries.push(if *parent_low {
                    Comparator::directed(*parent, child)
                } else {
                    Comparator::directed(child, *parent)
                });
            }
            if !entries.is_empty() {
                stages.push(DirectedMatching::new(entries));
            }
        }
    }
    SwapSchedule { stages, cycles }
}

/// Cycle budget for one swap: `2(n_i + max(α_i, α_j) · cap) + slack`.
pub fn swap_cycles(ti: &Subtree, tj: &Subtree, cap: usize, slack: usize) -> usize {
    2 * (ti.size() + ti.alpha.max(tj.alpha) * cap) + slack
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapRecord {
    /// 1-based subtree indices.
    pub left: usize,
    pub right: usize,
    pub cap: usize,
    pub cycles: usize,
    pub stages: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSortBuild {
    pub network: SortingNetwork,
    pub decomposition: CentroidDecomposition,
    /// Stages of the top-level phase one.
    pub phase1_depth: usize,
    /// Top-level passes in execution order.
    pub passes: Vec<Vec<SwapRecord>>,
    pub slack: usize,
}

/// Sorting network on the tree `t` whose order is the MP labeling.
pub fn odd_even_tree_sort(t: &Graph) -> Result<SortingNetwork> {
    Ok(build_tree_sort(t)?.network)
}

/// Builds with [`DEFAULT_SLACK`]; for trees of at most 16 vertices the result
/// is verified and the slack doubled until it sorts.
pub fn build_tree_sort(t: &Graph) -> Result<TreeSortBuild> {
    let mut slack = DEFAULT_SLACK;
    loop {
        let build = build_tree_sort_with_slack(t, slack)?;
        if t.n() > 16 || build.network.verify_zero_one()? {
            return Ok(build);
        }
        eprintln!(
            "warning: tree sort with slack {slack} failed to verify, retrying with {}",
            2 * slack
        );
        slack *= 2;
    }
}

pub fn build_tree_sort_with_slack(t: &Graph, slack: usize) -> Result<TreeSortBuild> {
    let cd = decompose(t)?;
    let (stages, phase1_depth, passes) = sort_region(&cd, slack);
    let network = SortingNetwork::new(t.n(), stages, mp_labeling(&cd, t.n()))?;
    Ok(TreeSortBuild {
        network,
        decomposition: cd,
        phase1_depth,
        passes,
        slack,
    })
}

type StageList = Vec<Vec<Comparator>>;

fn sort_region(
    cd: &CentroidDecomposition,
    slack: usize,
) -> (Vec<DirectedMatching>, usize, Vec<Vec<SwapRecord>>) {
    let (stages, phase1, passes) = sort_region_raw(cd, slack);
    let stages = stages
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(DirectedMatching::new)
        .collect();
    (stages, phase1, passes)
}

fn sort_region_raw(
    cd: &CentroidDecomposition,
    slack: usize,
) -> (StageList, usize, Vec<Vec<SwapRecord>>) {
    let d = cd.subtrees.len();
    let mut stages: StageList = Vec::new();
    let mut passes = Vec::new();
    if d == 0 {
        return (stages, 0, passes);
    }
    let subs = &cd.subtrees;
    for q in 1..d {
        let mut pass = Vec::new();
        for i in 1..=d - q {
            let cap = subs[i + q - 1].size();
            let cycles = swap_cycles(&subs[i - 1], &subs[i], cap, slack);
            let sched = swap_schedule(&subs[i - 1], &subs[i], cd.root, cycles);
            pass.push(SwapRecord {
                left: i,
                right: i + 1,
                cap,
                cycles,
                stages: sched.stages.len(),
            });
            stages.extend(sched.stages.into_iter().map(|s| s.entries().to_vec()));
        }
        passes.push(pass);
    }
    let phase1 = stages.len();
    let mut first: StageList = heapify_to_root(&subs[0], cd.root);
    first.extend(sort_region_raw(&subs[0].decomposition, slack).0);
    let mut parallel = vec![first];
    for s in &subs[1..] {
        parallel.push(sort_region_raw(&s.decomposition, slack).0);
    }
    let len = parallel.iter().map(Vec::len).max().unwrap_or(0);
    for k in 0..len {
        stages.push(
            parallel
                .iter()
                .filter_map(|p| p.get(k))
                .flatten()
                .copied()
                .collect(),
        );
    }
    (stages, phase1, passes)
}

/// Moves the largest value of `T_1 ∪ {r}` onto `r` with odd-even stages on
/// the tree rooted at `r`; parents take their children in turn.
fn heapify_to_root(t1: &Subtree, r: usize) -> StageList {
    let mut fans: Vec<(usize, Vec<usize>, usize)> = vec![(r, vec![t1.root], 0)];
    for (v, d) in t1.depths() {
        let kids = t1.children_of(v);
        if !kids.is_empty() {
            fans.push((v, kids.to_vec(), d + 1));
        }
    }
    let mut turn = vec![0usize; fans.len()];
    let mut stages = Vec::new();
    for _ in 0..2 * (t1.size() + 1) {
        for parity in [0, 1] {
            let mut entries = Vec::new();
            for (k, (parent, kids, depth)) in fans.iter().enumerate() {
                if depth % 2 == parity {
                    let child = kids[turn[k] % kids.len()];
                    turn[k] += 1;
                    entries.push(Comparator::directed(child, *parent));
                }
            }
            if !entries.is_empty() {
                stages.push(entries);
            }
        }
    }
    stages
}

/// Per-pass cycle totals against the analytic bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct DepthReport {
    pub n: usize,
    pub d: usize,
    pub max_degree: usize,
    /// `c_j`: cycles spent in pass `j`.
    pub pass_cycles: Vec<usize>,
    /// Total phase-one cycles.
    pub total_cycles: usize,
    /// `max(α_i, α_{i+1})` for consecutive subtrees.
    pub beta: Vec<usize>,
    /// `2dn + Σβ_i · Σ caps`.
    pub phase1_bound: usize,
    /// `n · min(Δ², n)`, to be scaled by the global constant.
    pub depth_scale: usize,
    pub depth: usize,
}

impl DepthReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "n {} d {} max_degree {} depth {}\n",
            self.n, self.d, self.max_degree, self.depth
        );
        for (j, c) in self.pass_cycles.iter().enumerate() {
            out.push_str(&format!("pass {} cycles {}\n", j + 1, c));
        }
        out.push_str(&format!(
            "phase1_cycles {} phase1_bound {} within {}\n",
            self.total_cycles,
            self.phase1_bound,
            self.total_cycles <= self.phase1_bound
        ));
        out.push_str(&format!(
            "depth_over_n_min_delta2_n {:.3}\n",
            self.depth as f64 / self.depth_scale.max(1) as f64
        ));
        out
    }
}

pub fn depth_accounting(t: &Graph, build: &TreeSortBuild) -> DepthReport {
    let cd = &build.decomposition;
    let n = t.n();
    let d = cd.subtrees.len();
    let pass_cycles: Vec<usize> = build
        .passes
        .iter()
        .map(|p| p.iter().map(|s| s.cycles).sum())
        .collect();
    let beta: Vec<usize> = cd
        .subtrees
        .windows(2)
        .map(|w| w[0].alpha.max(w[1].alpha))
        .collect();
    let caps: usize = build.passes.iter().flatten().map(|s| s.cap).sum();
    let delta = t.max_degree();
    DepthReport {
        n,
        d,
        max_degree: delta,
        total_cycles: pass_cycles.iter().sum(),
        pass_cycles,
        phase1_bound: 2 * d * n + beta.iter().sum::<usize>() * caps + build.slack * d * d,
        beta,
        depth_scale: n * (delta * delta).min(n),
        depth: build.network.depth(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn binary_tree(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| ((v - 1) / 2, v))).unwrap()
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(centroid(&Graph::path(3)).unwrap(), 1);
        assert_eq!(centroid(&Graph::star(5)).unwrap(), 0);
        assert_eq!(centroid(&Graph::path(4)).unwrap(), 1);
        assert_eq!(centroid(&Graph::cycle(4)), Err(Error::NotATree));
    }

    #[test]
    fn decomposition_examples() {
        let p3 = decompose(&Graph::path(3)).unwrap();
        assert_eq!(p3.root, 1);
        assert_eq!(
            p3.subtrees
                .iter()
                .map(|s| s.vertices.clone())
                .collect::<Vec<_>>(),
            vec![vec![0], vec![2]]
        );
        let star = decompose(&Graph::star(6)).unwrap();
        assert_eq!((star.root, star.subtrees.len()), (0, 5));
        let bin = decompose(&binary_tree(7)).unwrap();
        assert_eq!(bin.root, 0);
        assert_eq!(
            bin.subtrees.iter().map(Subtree::size).collect::<Vec<_>>(),
            vec![3, 3]
        );
        assert_eq!(bin.subtrees[0].alpha, 2);
    }

    #[test]
    fn labeling_examples() {
        let one = decompose(&Graph::path(1)).unwrap();
        assert_eq!(mp_labeling(&one, 1).as_slice(), &[0]);
        let p3 = decompose(&Graph::path(3)).unwrap();
        assert_eq!(mp_labeling(&p3, 3).as_slice(), &[0, 1, 2]);
        let k13 = decompose(&Graph::star(4)).unwrap();
        let ranks = mp_labeling(&k13, 4);
        assert_eq!(ranks.dest(0), 1);
        assert_eq!((ranks.dest(1), ranks.dest(2), ranks.dest(3)), (0, 2, 3));
    }

    #[test]
    fn swap_of_two_singletons_is_path_transposition_sort() {
        let cd = decompose(&Graph::path(3)).unwrap();
        let sched = swap_schedule(&cd.subtrees[0], &cd.subtrees[1], cd.root, 2);
        assert_eq!(sched.stages[0].entries(), &[Comparator::directed(0, 1)]);
        assert_eq!(sched.stages[1].entries(), &[Comparator::directed(1, 2)]);
    }

    #[test]
    fn small_trees_sort() {
        assert_eq!(odd_even_tree_sort(&Graph::path(1)).unwrap().depth(), 0);
        for n in 2..=7 {
            let net = odd_even_tree_sort(&Graph::path(n)).unwrap();
            assert!(net.verify_all_permutations().unwrap(), "P{n}");
            let star = odd_even_tree_sort(&Graph::star(n)).unwrap();
            assert!(star.verify_all_permutations().unwrap(), "star {n}");
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let t = Graph::random_tree(10, &mut rng);
            let build = build_tree_sort(&t).unwrap();
            assert_eq!(build.slack, DEFAULT_SLACK);
            assert!(build.network.verify_zero_one().unwrap());
        }
    }

    #[test]
    fn construction_is_oblivious() {
        let t = binary_tree(11);
        assert_eq!(
            odd_even_tree_sort(&t).unwrap().to_text(),
            odd_even_tree_sort(&t).unwrap().to_text()
        );
    }

    #[test]
    fn accounting_on_a_star() {
        let t = Graph::star(9);
        let build = build_tree_sort(&t).unwrap();
        let report = depth_accounting(&t, &build);
        assert_eq!(report.pass_cycles.len(), 7);
        assert!(report.total_cycles <= report.phase1_bound);
        assert!(report.depth * 8 >= 81);
    }
}
