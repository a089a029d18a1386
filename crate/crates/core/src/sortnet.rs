//! Sorting networks whose comparators are edges of a host graph.

use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::graph::{parse_numbers, Graph};
use crate::matching::{Comparator, DirectedMatching, EdgeMode};
use crate::perm::Permutation;
use crate::route::{route_tree, verify_plan, RoutingPlan};

/// Largest vertex count accepted by [`SortingNetwork::verify_zero_one`].
pub const MAX_ZERO_ONE_VERTICES: usize = 26;
/// Largest vertex count accepted by [`SortingNetwork::verify_all_permutations`].
pub const MAX_PERMUTATION_VERTICES: usize = 9;

/// `order.dest(v)` is the rank (0-based) of the value vertex `v` holds once sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortingNetwork {
    host: Graph,
    stages: Vec<DirectedMatching>,
    order: Permutation,
}

impl SortingNetwork {
    /// The host is the set of edges the stages use. Empty stages are rejected.
    pub fn new(n: usize, stages: Vec<DirectedMatching>, order: Permutation) -> Result<Self> {
        if order.n() != n {
            return Err(Error::SizeMismatch {
                graph: n,
                other: order.n(),
            });
        }
        let mut edges = Vec::new();
        for (i, stage) in stages.iter().enumerate() {
            if stage.is_empty() {
                return Err(Error::InvalidArgument(format!("stage {} is empty", i + 1)));
            }
            for c in stage.entries() {
                edges.push((c.low.min(c.high), c.low.max(c.high)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let host = Graph::from_edges(n, edges)?;
        for stage in &stages {
            stage.validate(&host)?;
        }
        Ok(SortingNetwork {
            host,
            stages,
            order,
        })
    }

    /// Like [`SortingNetwork::new`] but also checks every stage against `g`.
    pub fn on_graph(g: &Graph, stages: Vec<DirectedMatching>, order: Permutation) -> Result<Self> {
        for stage in &stages {
            stage.validate(g)?;
        }
        SortingNetwork::new(g.n(), stages, order)
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn stages(&self) -> &[DirectedMatching] {
        &self.stages
    }

    pub fn depth(&self) -> usize {
        self.stages.len()
    }

    pub fn order(&self) -> &Permutation {
        &self.order
    }

    /// Vertices listed by increasing rank.
    pub fn vertices_by_rank(&self) -> Vec<usize> {
        self.order.inverse().as_slice().to_vec()
    }

    /// The first `depth` stages as a network with the same order.
    pub fn prefix(&self, depth: usize) -> Vec<DirectedMatching> {
        self.stages[..depth].to_vec()
    }

    pub fn run<T: Ord + Clone>(&self, input: &[T]) -> Vec<T> {
        run_stages(&self.stages, input)
    }

    pub fn is_sorted_output<T: Ord>(&self, values: &[T]) -> bool {
        let by_rank = self.vertices_by_rank();
        by_rank.windows(2).all(|w| values[w[0]] <= values[w[1]])
    }

    /// Checks all `2^n` binary inputs, 64 at a time.
    pub fn verify_zero_one(&self) -> Result<bool> {
        let n = self.n();
        if n > MAX_ZERO_ONE_VERTICES {
            return Err(Error::TooLarge(format!(
                "{n} vertices for 0-1 verification"
            )));
        }
        Ok(zero_one_counterexample(&self.stages, &self.vertices_by_rank()).is_none())
    }

    /// Checks every permutation of `0..n` as input.
    pub fn verify_all_permutations(&self) -> Result<bool> {
        let n = self.n();
        if n > MAX_PERMUTATION_VERTICES {
            return Err(Error::TooLarge(format!(
                "{n} vertices for permutation verification"
            )));
        }
        Ok(Permutation::all(n).all(|p| self.is_sorted_output(&self.run(p.as_slice()))))
    }

    /// `n depth`, the 1-indexed rank line, then one token line per stage.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.depth());
        let ranks: Vec<String> = self
            .order
            .as_slice()
            .iter()
            .map(|r| (r + 1).to_string())
            .collect();
        writeln!(out, "{}", ranks.join(" ")).unwrap();
        for stage in &self.stages {
            writeln!(out, "{}", stage.to_tokens()).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<SortingNetwork> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(ParseError::Malformed {
            line: 1,
            reason: "missing header".into(),
        })?;
        let [n, depth] = parse_numbers(hline, header)?[..] else {
            return Err(ParseError::Malformed {
                line: hline,
                reason: "header must be `n depth`".into(),
            }
            .into());
        };
        let ranks = match lines.next() {
            Some((line, body)) => parse_numbers(line, body)?,
            None => Vec::new(),
        };
        if ranks.len() != n {
            return Err(ParseError::CountMismatch {
                expected: n,
                found: ranks.len(),
            }
            .into());
        }
        if ranks.contains(&0) {
            return Err(ParseError::NotAPermutation("rank 0".into()).into());
        }
        let order = Permutation::new(ranks.iter().map(|r| r - 1).collect())?;
        let mut stages = Vec::with_capacity(depth);
        for (line, body) in lines {
            let mut entries = Vec::new();
            for tok in body.split_whitespace() {
                let (sep, mode) = if tok.contains('>') {
                    ('>', EdgeMode::Directed)
                } else {
                    ('-', EdgeMode::Undirected)
                };
                let (u, v) = tok.split_once(sep).ok_or(ParseError::Malformed {
                    line,
                    reason: format!("expected `u>v` or `u-v`, found `{tok}`"),
                })?;
                let nums = parse_numbers(line, &format!("{u} {v}"))?;
                for &x in &nums {
                    if x == 0 || x > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex: x, n }.into());
                    }
                }
                entries.push(Comparator {
                    low: nums[0] - 1,
                    high: nums[1] - 1,
                    mode,
                });
            }
            stages.push(DirectedMatching::new(entries));
        }
        if stages.len() != depth {
            return Err(ParseError::CountMismatch {
                expected: depth,
                found: stages.len(),
            }
            .into());
        }
        SortingNetwork::new(n, stages, order)
    }
}

pub fn run_stages<T: Ord + Clone>(stages: &[DirectedMatching], input: &[T]) -> Vec<T> {
    let mut values = input.to_vec();
    for stage in stages {
        apply_stage(stage, &mut values);
    }
    values
}

pub fn apply_stage<T: Ord>(stage: &DirectedMatching, values: &mut [T]) {
    for c in stage.entries() {
        match c.mode {
            EdgeMode::Directed => {
                if values[c.low] > values[c.high] {
                    values.swap(c.low, c.high);
                }
            }
            EdgeMode::Undirected => values.swap(c.low, c.high),
        }
    }
}

/// Runs 64 binary inputs at once: bit `j` of `words[v]` is input `j`'s value on `v`.
pub fn apply_stage_sliced(stage: &DirectedMatching, words: &mut [u64]) {
    for c in stage.entries() {
        let (a, b) = (words[c.low], words[c.high]);
        match c.mode {
            EdgeMode::Directed => {
                words[c.low] = a & b;
                words[c.high] = a | b;
            }
            EdgeMode::Undirected => {
                words[c.low] = b;
                words[c.high] = a;
            }
        }
    }
}

/// Bit-sliced encoding of inputs `base .. base + 64` over `n` vertices.
pub fn sliced_inputs(n: usize, base: u64) -> Vec<u64> {
    (0..n)
        .map(|v| (0..64u64).fold(0, |w, j| w | ((base + j) >> v & 1) << j))
        .collect()
}

/// Some binary input (bit `v` = value on `v`) that `stages` leave unsorted.
pub fn zero_one_counterexample(stages: &[DirectedMatching], by_rank: &[usize]) -> Option<u64> {
    let n = by_rank.len();
    let total: u64 = 1 << n;
    let mut base = 0;
    while base < total {
        let mut words = sliced_inputs(n, base);
        for stage in stages {
            apply_stage_sliced(stage, &mut words);
        }
        let mut bad = 0u64;
        for w in by_rank.windows(2) {
            bad |= words[w[0]] & !words[w[1]];
        }
        if total - base < 64 {
            bad &= (1u64 << (total - base)) - 1;
        }
        if bad != 0 {
            return Some(base + bad.trailing_zeros() as u64);
        }
        base += 64;
    }
    None
}

/// Odd-even transposition sort on the path `0 - 1 - ... - n-1`, rank `i` on vertex `i`.
pub fn odd_even_path_network(n: usize) -> SortingNetwork {
    let stages = (0..n)
        .map(|t| {
            DirectedMatching::new(
                (t % 2..n.saturating_sub(1))
                    .step_by(2)
                    .map(|i| Comparator::directed(i, i + 1))
                    .collect(),
            )
        })
        .filter(|s| !s.is_empty())
        .collect();
    SortingNetwork::new(n, stages, Permutation::identity(n)).expect("path stages are matchings")
}

fn ensure_sorts(net: &SortingNetwork) -> Result<()> {
    let ok = if net.n() <= MAX_ZERO_ONE_VERTICES {
        net.verify_zero_one()?
    } else {
        true
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnverifiedNetwork)
    }
}

/// Grid layout of a product host: vertex `(a, b)` is `a * n2 + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductLayout {
    pub n1: usize,
    pub n2: usize,
}

impl ProductLayout {
    pub fn vertex(&self, a: usize, b: usize) -> usize {
        a * self.n2 + b
    }

    pub fn row(&self, v: usize) -> usize {
        v / self.n2
    }

    pub fn column(&self, v: usize) -> usize {
        v % self.n2
    }
}

/// Sorting network on the Cartesian product of the two hosts.
///
/// Rows are copies of the second factor. For each stage `m` of the first
/// network: rows matched as the low end of a comparator sort ascending, rows
/// at the high end sort with every comparator reversed, and then `m` is
/// applied down every column. A final pass sorts all rows ascending. The
/// order is row-major in the factors' orders.
pub fn product_network(net1: &SortingNetwork, net2: &SortingNetwork) -> Result<SortingNetwork> {
    ensure_sorts(net1)?;
    ensure_sorts(net2)?;
    let layout = ProductLayout {
        n1: net1.n(),
        n2: net2.n(),
    };
    let lift_row = |row: usize, c: &Comparator, reversed: bool| {
        let c = if reversed { c.reversed() } else { *c };
        Comparator {
            low: layout.vertex(row, c.low),
            high: layout.vertex(row, c.high),
            mode: c.mode,
        }
    };
    let mut stages = Vec::new();
    for m in net1.stages() {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for c in m.entries() {
            if c.mode == EdgeMode::Directed {
                lower.push(c.low);
                upper.push(c.high);
            }
        }
        for s in net2.stages() {
            let mut entries = Vec::new();
            for &row in &lower {
                entries.extend(s.entries().iter().map(|c| lift_row(row, c, false)));
            }
            for &row in &upper {
                entries.extend(s.entries().iter().map(|c| lift_row(row, c, true)));
            }
            if !entries.is_empty() {
                stages.push(DirectedMatching::new(entries));
            }
        }
        let column = m
            .entries()
            .iter()
            .flat_map(|c| {
                (0..layout.n2).map(move |b| Comparator {
                    low: layout.vertex(c.low, b),
                    high: layout.vertex(c.high, b),
                    mode: c.mode,
                })
            })
            .collect();
        stages.push(DirectedMatching::new(column));
    }
    for s in net2.stages() {
        let entries = (0..layout.n1)
            .flat_map(|row| s.entries().iter().map(move |c| lift_row(row, c, false)))
            .collect();
        stages.push(DirectedMatching::new(entries));
    }
    let order = Permutation::new(
        (0..layout.n1 * layout.n2)
            .map(|v| {
                net1.order().dest(layout.row(v)) * layout.n2 + net2.order().dest(layout.column(v))
            })
            .collect(),
    )?;
    SortingNetwork::new(layout.n1 * layout.n2, stages, order)
}

/// The permutation carrying `net`'s sorted positions onto `target`'s.
pub fn fixup_permutation(net: &SortingNetwork, target: &Permutation) -> Result<Permutation> {
    if target.n() != net.n() {
        return Err(Error::SizeMismatch {
            graph: net.n(),
            other: target.n(),
        });
    }
    let inv = target.inverse();
    Ok(Permutation::new(
        (0..net.n())
            .map(|v| inv.dest(net.order().dest(v)))
            .collect(),
    )?)
}

/// Appends `fixup` as unconditional-swap stages so the network sorts into `target`.
pub fn adapt_sorted_order(
    net: &SortingNetwork,
    target: &Permutation,
    fixup: &RoutingPlan,
) -> Result<SortingNetwork> {
    let needed = fixup_permutation(net, target)?;
    let mut edges: Vec<(usize, usize)> = net.host().edges().to_vec();
    edges.extend(fixup.steps.iter().flat_map(|m| m.pairs().iter().copied()));
    edges.sort_unstable();
    edges.dedup();
    let both = Graph::from_edges(net.n(), edges)?;
    if !verify_plan(&both, &needed, fixup)? {
        return Err(Error::PlanDoesNotVerify);
    }
    let mut stages = net.stages().to_vec();
    stages.extend(
        fixup
            .steps
            .iter()
            .filter(|m| !m.is_empty())
            .map(DirectedMatching::from_swaps),
    );
    SortingNetwork::new(net.n(), stages, target.clone())
}

/// [`adapt_sorted_order`] with the fixup routed on a spanning tree of `g`.
pub fn adapt_on_graph(
    net: &SortingNetwork,
    g: &Graph,
    target: &Permutation,
) -> Result<SortingNetwork> {
    let needed = fixup_permutation(net, target)?;
    let tree = g.spanning_tree()?;
    let plan = route_tree(&tree, &needed)?;
    adapt_sorted_order(net, target, &plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn run_examples() {
        let one = SortingNetwork::new(
            2,
            vec![DirectedMatching::new(vec![Comparator::directed(0, 1)])],
            Permutation::identity(2),
        )
        .unwrap();
        assert_eq!(one.run(&[5, 3]), vec![3, 5]);
        let swap = SortingNetwork::new(
            2,
            vec![DirectedMatching::new(vec![Comparator::swap(0, 1)])],
            Permutation::identity(2),
        )
        .unwrap();
        assert_eq!(swap.run(&[3, 5]), vec![5, 3]);
        let p4 = odd_even_path_network(4);
        let out = p4.run(&[4, 3, 2, 1]);
        assert!(p4.is_sorted_output(&out));
    }

    #[test]
    fn verifier_examples() {
        let empty1 = SortingNetwork::new(1, vec![], Permutation::identity(1)).unwrap();
        assert!(empty1.verify_zero_one().unwrap());
        assert!(empty1.verify_all_permutations().unwrap());
        let empty2 = SortingNetwork::new(2, vec![], Permutation::identity(2)).unwrap();
        assert!(!empty2.verify_zero_one().unwrap());
        assert!(odd_even_path_network(8).verify_zero_one().unwrap());
        assert!(odd_even_path_network(4).verify_all_permutations().unwrap());
        let full = odd_even_path_network(5);
        let cut = SortingNetwork::new(5, full.prefix(full.depth() - 1), Permutation::identity(5))
            .unwrap();
        assert!(!cut.verify_all_permutations().unwrap());
        assert!(!cut.verify_zero_one().unwrap());
    }

    #[test]
    fn path_network_shapes() {
        assert_eq!(odd_even_path_network(2).depth(), 1);
        assert_eq!(odd_even_path_network(1).depth(), 0);
        for n in 1..=12 {
            let net = odd_even_path_network(n);
            assert!(net.depth() <= 2 * n);
            assert!(net.verify_zero_one().unwrap(), "P{n}");
            assert_eq!(net.host(), &Graph::path(n));
        }
    }

    #[test]
    fn product_examples() {
        let p2 = odd_even_path_network(2);
        let grid = product_network(&p2, &p2).unwrap();
        assert_eq!(grid.depth(), 3);
        assert!(grid.verify_zero_one().unwrap());
        assert!(grid.verify_all_permutations().unwrap());

        let p3 = odd_even_path_network(3);
        let nine = product_network(&p3, &p3).unwrap();
        assert_eq!(nine.depth(), 3 * 3 + 3 + 3);
        assert!(nine.verify_zero_one().unwrap());
        assert_eq!(
            nine.host(),
            &Graph::path(3).cartesian_product(&Graph::path(3))
        );

        let broken = SortingNetwork::new(2, vec![], Permutation::identity(2)).unwrap();
        assert_eq!(product_network(&broken, &p2), Err(Error::UnverifiedNetwork));
    }

    #[test]
    fn rows_are_merged_after_each_full_stage() {
        // P2 x P3: one full stage, then rows 0 <= row 1 elementwise on every 0-1 input.
        let p2 = odd_even_path_network(2);
        let p3 = odd_even_path_network(3);
        let net = product_network(&p2, &p3).unwrap();
        let full = p3.depth() + 1;
        for mask in 0u32..1 << 6 {
            let input: Vec<u32> = (0..6).map(|v| mask >> v & 1).collect();
            let out = run_stages(&net.prefix(full), &input);
            let lower_max = out[..3].iter().max().unwrap();
            let upper_min = out[3..].iter().min().unwrap();
            assert!(lower_max <= upper_min);
        }
    }

    #[test]
    fn adaptation() {
        let p4 = odd_even_path_network(4);
        let same = adapt_on_graph(&p4, &Graph::path(4), p4.order()).unwrap();
        assert_eq!(same.depth(), p4.depth());
        let reversed = Permutation::new(vec![3, 2, 1, 0]).unwrap();
        let flipped = adapt_on_graph(&p4, &Graph::path(4), &reversed).unwrap();
        assert!(flipped.verify_zero_one().unwrap());
        assert!(flipped.depth() <= p4.depth() + 12);

        let bogus = RoutingPlan::default();
        assert_eq!(
            adapt_sorted_order(&p4, &reversed, &bogus),
            Err(Error::PlanDoesNotVerify)
        );

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let target = Permutation::random(7, &mut rng);
        let p7 = odd_even_path_network(7);
        let adapted = adapt_on_graph(&p7, &Graph::path(7), &target).unwrap();
        assert!(adapted.verify_all_permutations().unwrap());
    }

    #[test]
    fn text_round_trip() {
        let net = adapt_on_graph(
            &odd_even_path_network(4),
            &Graph::path(4),
            &Permutation::new(vec![1, 0, 3, 2]).unwrap(),
        )
        .unwrap();
        let text = net.to_text();
        assert_eq!(SortingNetwork::parse(&text).unwrap(), net);
        assert!(text.contains('>') && text.contains('-'));
        assert!(SortingNetwork::parse("2 1\n1 2\n1>3\n").is_err());
    }
}
