//! Undirected simple graphs on vertices `0..n`.
//!
//! Vertices are 0-indexed in memory. Every text format reads and writes them
//! 1-indexed.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, ParseError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
        }
    }

    /// Builds a graph from 0-indexed edges, rejecting loops and duplicates.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {u}-{v} outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop on {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!("duplicate edge {u}-{v}")));
            }
            g.insert(u, v);
        }
        g.finish();
        Ok(g)
    }

    fn insert(&mut self, u: usize, v: usize) {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.push((a, b));
        self.adj[a].push(b);
        self.adj[b].push(a);
        self.matrix[a * self.n + b] = true;
        self.matrix[b * self.n + a] = true;
    }

    fn finish(&mut self) {
        self.edges.sort_unstable();
        for list in &mut self.adj {
            list.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.m() == self.n - 1 && self.is_connected()
    }

    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances; `usize::MAX` marks unreachable pairs.
    pub fn all_pairs_distances(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|s| {
                self.bfs_distances(s)
                    .into_iter()
                    .map(|d| d.unwrap_or(usize::MAX))
                    .collect()
            })
            .collect()
    }

    /// Connected component id of every vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = next;
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// The subgraph induced by `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::from_edges(vertices.len(), edges).expect("induced subgraph of a simple graph")
    }

    /// A BFS spanning tree rooted at vertex 0 (the graph must be connected).
    pub fn spanning_tree(&self) -> Result<Graph> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut seen = vec![false; self.n];
        let mut edges = Vec::new();
        let mut queue = VecDeque::new();
        if self.n > 0 {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    edges.push((u, w));
                    queue.push_back(w);
                }
            }
        }
        Graph::from_edges(self.n, edges)
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    /// `K_{1,n-1}` with vertex 0 as the center.
    pub fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    pub fn hypercube(dim: u32) -> Graph {
        let n = 1usize << dim;
        let edges = (0..n).flat_map(|u| {
            (0..dim)
                .map(move |b| (u, u ^ (1 << b)))
                .filter(|&(u, v)| u < v)
        });
        Graph::from_edges(n, edges).unwrap()
    }

    /// Cartesian product; vertex `(a, b)` is `a * other.n() + b`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let n2 = other.n;
        let mut edges = Vec::new();
        for a in 0..self.n {
            for &(u, v) in &other.edges {
                edges.push((a * n2 + u, a * n2 + v));
            }
        }
        for &(u, v) in &self.edges {
            for b in 0..n2 {
                edges.push((u * n2 + b, v * n2 + b));
            }
        }
        Graph::from_edges(self.n * n2, edges).unwrap()
    }

    /// Uniform random labeled tree via a random Prüfer sequence.
    pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
        if n <= 1 {
            return Graph::empty(n);
        }
        if n == 2 {
            return Graph::path(2);
        }
        let prufer: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &x in &prufer {
            degree[x] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &x in &prufer {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, x));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        Graph::from_edges(n, edges).unwrap()
    }

    /// A random connected graph: a random tree plus each other pair with probability `p`.
    pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        let tree = Graph::random_tree(n, rng);
        let mut edges = tree.edges.clone();
        for u in 0..n {
            for v in u + 1..n {
                if !tree.has_edge(u, v) && rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        edges.shuffle(rng);
        Graph::from_edges(n, edges).unwrap()
    }

    /// Parses the `n m` header followed by `m` lines of 1-indexed `u v` pairs.
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(ParseError::Malformed {
            line: 1,
            reason: "missing header".into(),
        })?;
        let nums = parse_numbers(hline, header)?;
        let [n, m] = nums[..] else {
            return Err(ParseError::Malformed {
                line: hline,
                reason: "header must be `n m`".into(),
            });
        };
        let mut g = Graph::empty(n);
        let mut count = 0;
        for (line, body) in lines {
            let nums = parse_numbers(line, body)?;
            let [u, v] = nums[..] else {
                return Err(ParseError::Malformed {
                    line,
                    reason: "edge line must be `u v`".into(),
                });
            };
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(ParseError::VertexOutOfRange { line, vertex: x, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            if g.has_edge(u - 1, v - 1) {
                return Err(ParseError::DuplicateEdge { line, u, v });
            }
            g.insert(u - 1, v - 1);
            count += 1;
        }
        if count != m {
            return Err(ParseError::CountMismatch {
                expected: m,
                found: count,
            });
        }
        g.finish();
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

pub(crate) fn parse_numbers(line: usize, body: &str) -> Result<Vec<usize>, ParseError> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| ParseError::Malformed {
                line,
                reason: format!("expected a non-negative integer, found `{tok}`"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_and_clique() {
        let p3 = Graph::parse("3 2\n1 2\n2 3").unwrap();
        assert_eq!(p3, Graph::path(3));
        let k4 = Graph::parse("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap();
        assert_eq!(k4, Graph::complete(4));
        assert!(k4.is_complete());
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(
            Graph::parse("2 1\n1 1"),
            Err(ParseError::SelfLoop { line: 2, vertex: 1 })
        );
        assert_eq!(
            Graph::parse("2 2\n1 2\n2 1"),
            Err(ParseError::DuplicateEdge {
                line: 3,
                u: 2,
                v: 1
            })
        );
        assert_eq!(
            Graph::parse("2 1\n1 3"),
            Err(ParseError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 2
            })
        );
        assert!(matches!(
            Graph::parse("2 1\n1 x"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("2 1\n1 2 3"),
            Err(ParseError::Malformed { .. })
        ));
        assert_eq!(
            Graph::parse("3 2\n1 2"),
            Err(ParseError::CountMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn text_round_trip() {
        let q3 = Graph::hypercube(3);
        assert_eq!(Graph::parse(&q3.to_text()).unwrap(), q3);
    }

    #[test]
    fn product_of_paths_is_grid() {
        let grid = Graph::path(2).cartesian_product(&Graph::path(3));
        assert_eq!(grid.n(), 6);
        assert_eq!(grid.m(), 7);
        assert!(grid.has_edge(0, 3) && grid.has_edge(1, 2) && !grid.has_edge(2, 3));
    }

    #[test]
    fn random_trees_are_trees() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..40 {
            assert!(Graph::random_tree(n, &mut rng).is_tree());
            assert!(Graph::random_connected(n, 0.3, &mut rng).is_connected());
        }
    }
}
