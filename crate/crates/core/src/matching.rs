//! Matchings (one synchronous routing step) and directed matchings (one sorting stage).

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A set of vertex-disjoint pairs, stored as `(u, v)` with `u < v`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Normalizes and sorts the pairs. Disjointness is checked by [`Matching::validate`].
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.pairs.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Every pair must be an edge of `g` and no vertex may repeat.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut used = vec![false; g.n()];
        for &(u, v) in &self.pairs {
            if !g.has_edge(u, v) {
                return Err(Error::NotAnEdge(u + 1, v + 1));
            }
            for x in [u, v] {
                if used[x] {
                    return Err(Error::NotAMatching(x + 1));
                }
                used[x] = true;
            }
        }
        Ok(())
    }

    /// Union of two matchings on disjoint vertex sets.
    pub fn union(&self, other: &Matching) -> Matching {
        Matching::new(self.pairs.iter().chain(&other.pairs).copied())
    }

    /// `u-v` tokens, 1-indexed, space separated.
    pub fn to_tokens(&self) -> String {
        self.pairs
            .iter()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Streams every matching of a graph exactly once, the empty matching first.
///
/// A matching is identified with the increasing list of indices of its edges in
/// [`Graph::edges`]; matchings come out in lexicographic order of those lists.
pub struct MatchingIter<'g> {
    edges: &'g [(usize, usize)],
    used: Vec<bool>,
    chosen: Vec<usize>,
    started: bool,
}

pub fn enumerate_matchings(g: &Graph) -> MatchingIter<'_> {
    MatchingIter {
        edges: g.edges(),
        used: vec![false; g.n()],
        chosen: Vec::new(),
        started: false,
    }
}

impl MatchingIter<'_> {
    fn first_free_from(&self, start: usize) -> Option<usize> {
        (start..self.edges.len()).find(|&j| {
            let (u, v) = self.edges[j];
            !self.used[u] && !self.used[v]
        })
    }

    fn push(&mut self, j: usize) {
        let (u, v) = self.edges[j];
        self.used[u] = true;
        self.used[v] = true;
        self.chosen.push(j);
    }

    fn current(&self) -> Matching {
        Matching {
            pairs: self.chosen.iter().map(|&j| self.edges[j]).collect(),
        }
    }
}

impl Iterator for MatchingIter<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if !self.started {
            self.started = true;
            return Some(Matching::empty());
        }
        let start = self.chosen.last().map_or(0, |&j| j + 1);
        if let Some(j) = self.first_free_from(start) {
            self.push(j);
            return Some(self.current());
        }
        while let Some(k) = self.chosen.pop() {
            let (u, v) = self.edges[k];
            self.used[u] = false;
            self.used[v] = false;
            if let Some(j) = self.first_free_from(k + 1) {
                self.push(j);
                return Some(self.current());
            }
        }
        None
    }
}

/// How a matched pair acts on the two pebbles it joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeMode {
    /// Compare-exchange: the smaller pebble ends on the first endpoint.
    Directed,
    /// Unconditional swap.
    Undirected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comparator {
    /// Receives the smaller pebble when the mode is directed.
    pub low: usize,
    pub high: usize,
    pub mode: EdgeMode,
}

impl Comparator {
    pub fn directed(low: usize, high: usize) -> Self {
        Comparator {
            low,
            high,
            mode: EdgeMode::Directed,
        }
    }

    pub fn swap(u: usize, v: usize) -> Self {
        Comparator {
            low: u,
            high: v,
            mode: EdgeMode::Undirected,
        }
    }

    pub fn reversed(self) -> Self {
        match self.mode {
            EdgeMode::Directed => Comparator {
                low: self.high,
                high: self.low,
                mode: self.mode,
            },
            EdgeMode::Undirected => self,
        }
    }
}

/// One stage of a sorting network.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DirectedMatching {
    entries: Vec<Comparator>,
}

impl DirectedMatching {
    pub fn new(mut entries: Vec<Comparator>) -> Self {
        entries.sort_unstable_by_key(|c| (c.low.min(c.high), c.low.max(c.high)));
        DirectedMatching { entries }
    }

    pub fn entries(&self) -> &[Comparator] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The underlying undirected matching.
    pub fn underlying(&self) -> Matching {
        Matching::new(self.entries.iter().map(|c| (c.low, c.high)))
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.underlying().validate(g)
    }

    pub fn from_swaps(m: &Matching) -> Self {
        DirectedMatching::new(
            m.pairs()
                .iter()
                .map(|&(u, v)| Comparator::swap(u, v))
                .collect(),
        )
    }

    /// Network-file tokens: `u>v` for directed (smaller to `u`), `u-v` for swaps.
    pub fn to_tokens(&self) -> String {
        self.entries
            .iter()
            .map(|c| match c.mode {
                EdgeMode::Directed => format!("{}>{}", c.low + 1, c.high + 1),
                EdgeMode::Undirected => format!("{}-{}", c.low + 1, c.high + 1),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib(k: usize) -> usize {
        let (mut a, mut b) = (0usize, 1usize);
        for _ in 0..k {
            (a, b) = (b, a + b);
        }
        a
    }

    #[test]
    fn small_counts() {
        let p3: Vec<Matching> = enumerate_matchings(&Graph::path(3)).collect();
        assert_eq!(
            p3,
            vec![
                Matching::empty(),
                Matching::new([(0, 1)]),
                Matching::new([(1, 2)])
            ]
        );
        assert_eq!(enumerate_matchings(&Graph::complete(3)).count(), 4);
        assert_eq!(enumerate_matchings(&Graph::path(2)).count(), 2);
        assert_eq!(enumerate_matchings(&Graph::empty(3)).count(), 1);
    }

    #[test]
    fn path_counts_are_fibonacci() {
        for n in 1..=10 {
            assert_eq!(
                enumerate_matchings(&Graph::path(n)).count(),
                fib(n + 1),
                "P{n}"
            );
        }
    }

    #[test]
    fn enumeration_is_exhaustive_and_distinct() {
        // Brute force over edge subsets of K5.
        let g = Graph::complete(5);
        let m = g.m();
        let mut brute = Vec::new();
        for mask in 0u32..(1 << m) {
            let pairs: Vec<(usize, usize)> = (0..m)
                .filter(|&j| mask >> j & 1 == 1)
                .map(|j| g.edges()[j])
                .collect();
            let candidate = Matching::new(pairs);
            if candidate.validate(&g).is_ok() {
                brute.push(candidate);
            }
        }
        let mut streamed: Vec<Matching> = enumerate_matchings(&g).collect();
        assert_eq!(streamed.len(), 26);
        for m in &streamed {
            m.validate(&g).unwrap();
        }
        streamed.sort();
        brute.sort();
        assert_eq!(streamed, brute);
    }

    #[test]
    fn validate_rejects_shared_vertices() {
        let g = Graph::complete(4);
        assert_eq!(
            Matching::new([(0, 1), (1, 2)]).validate(&g),
            Err(Error::NotAMatching(2))
        );
        assert_eq!(
            Matching::new([(0, 1)]).validate(&Graph::empty(2)),
            Err(Error::NotAnEdge(1, 2))
        );
    }
}
