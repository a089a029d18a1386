//! Permutations, their cycle form, and pebble configurations.

use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::graph::{parse_numbers, Graph};
use crate::matching::Matching;

/// `dest[i]` is the vertex the pebble starting on vertex `i` must reach.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    dest: Vec<usize>,
}

impl Permutation {
    pub fn new(dest: Vec<usize>) -> Result<Self, ParseError> {
        let n = dest.len();
        let mut seen = vec![false; n];
        for &d in &dest {
            if d >= n || seen[d] {
                return Err(ParseError::NotAPermutation(format!(
                    "value {} repeated or out of range",
                    d + 1
                )));
            }
            seen[d] = true;
        }
        Ok(Permutation { dest })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            dest: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles `(c0 c1 ...)`, meaning `c0 -> c1 -> ...`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, ParseError> {
        let mut dest: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if v >= n || touched[v] {
                    return Err(ParseError::NotAPermutation(format!(
                        "cycle vertex {} repeated or out of range",
                        v + 1
                    )));
                }
                touched[v] = true;
                dest[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::new(dest)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut dest: Vec<usize> = (0..n).collect();
        dest.swap(a, b);
        Permutation { dest }
    }

    pub fn n(&self) -> usize {
        self.dest.len()
    }

    pub fn dest(&self, i: usize) -> usize {
        self.dest[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dest
    }

    pub fn is_identity(&self) -> bool {
        self.dest.iter().enumerate().all(|(i, &d)| i == d)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &d) in self.dest.iter().enumerate() {
            inv[d] = i;
        }
        Permutation { dest: inv }
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n());
        Permutation {
            dest: self.dest.iter().map(|&d| other.dest[d]).collect(),
        }
    }

    /// Relabels vertices through `sigma`: the result maps `sigma(i)` to `sigma(dest[i])`.
    pub fn conjugate(&self, sigma: &Permutation) -> Self {
        let mut dest = vec![0; self.n()];
        for (i, &d) in self.dest.iter().enumerate() {
            dest[sigma.dest[i]] = sigma.dest[d];
        }
        Permutation { dest }
    }

    /// Disjoint-cycle form: each cycle starts at its minimum, cycles ordered by minimum.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        let mut fixed = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.dest[cur];
            }
            if cycle.len() == 1 {
                fixed.push(start);
            } else {
                cycles.push(cycle);
            }
        }
        CycleDecomposition { n, cycles, fixed }
    }

    /// Reads `n` on the first line and the 1-indexed destinations on the second.
    pub fn parse(text: &str) -> Result<Permutation, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(ParseError::Malformed {
            line: 1,
            reason: "missing size line".into(),
        })?;
        let [n] = parse_numbers(hline, header)?[..] else {
            return Err(ParseError::Malformed {
                line: hline,
                reason: "first line must hold `n`".into(),
            });
        };
        let values = match lines.next() {
            Some((line, body)) => parse_numbers(line, body)?,
            None => Vec::new(),
        };
        if let Some((line, _)) = lines.next() {
            return Err(ParseError::Malformed {
                line,
                reason: "unexpected trailing line".into(),
            });
        }
        if values.len() != n {
            return Err(ParseError::CountMismatch {
                expected: n,
                found: values.len(),
            });
        }
        if values.iter().any(|&v| v == 0) {
            return Err(ParseError::NotAPermutation("destination 0".into()));
        }
        Permutation::new(values.into_iter().map(|v| v - 1).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        let body: Vec<String> = self.dest.iter().map(|d| (d + 1).to_string()).collect();
        writeln!(out, "{}", body.join(" ")).unwrap();
        out
    }

    /// Every permutation of `0..n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (0..n).permutations(n).map(|dest| Permutation { dest })
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
        use rand::seq::SliceRandom;
        let mut dest: Vec<usize> = (0..n).collect();
        dest.shuffle(rng);
        Permutation { dest }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub n: usize,
    /// Nontrivial cycles, each listed from its minimum vertex in routing direction.
    pub cycles: Vec<Vec<usize>>,
    pub fixed: Vec<usize>,
}

impl CycleDecomposition {
    pub fn recompose(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.cycles).expect("disjoint cycles")
    }
}

/// `at[v]` is the pebble currently sitting on vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PebbleConfiguration {
    at: Vec<usize>,
}

impl PebbleConfiguration {
    /// Pebble `i` on vertex `i`.
    pub fn initial(n: usize) -> Self {
        PebbleConfiguration {
            at: (0..n).collect(),
        }
    }

    pub fn from_vec(at: Vec<usize>) -> Result<Self, ParseError> {
        Permutation::new(at.clone())?;
        Ok(PebbleConfiguration { at })
    }

    pub fn pebble_at(&self, v: usize) -> usize {
        self.at[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.at
    }

    /// Swaps the pebbles on every matched pair after checking it against `g`.
    pub fn apply_matching(&self, g: &Graph, m: &Matching) -> Result<Self> {
        m.validate(g)?;
        let mut next = self.clone();
        next.apply_unchecked(m);
        Ok(next)
    }

    pub(crate) fn apply_unchecked(&mut self, m: &Matching) {
        for &(u, v) in m.pairs() {
            self.at.swap(u, v);
        }
    }

    /// True when every pebble `i` sits on `p.dest(i)`.
    pub fn routes(&self, p: &Permutation) -> bool {
        self.at.iter().enumerate().all(|(v, &peb)| p.dest(peb) == v)
    }
}

pub(crate) fn check_sizes(g: &Graph, p: &Permutation) -> Result<()> {
    if g.n() != p.n() {
        return Err(Error::SizeMismatch {
            graph: g.n(),
            other: p.n(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decomposition_examples() {
        let id = Permutation::identity(4).cycle_decomposition();
        assert!(id.cycles.is_empty());
        assert_eq!(id.fixed, vec![0, 1, 2, 3]);

        let two = Permutation::new(vec![1, 0, 3, 2])
            .unwrap()
            .cycle_decomposition();
        assert_eq!(two.cycles, vec![vec![0, 1], vec![2, 3]]);

        let three = Permutation::new(vec![1, 2, 0])
            .unwrap()
            .cycle_decomposition();
        assert_eq!(three.cycles, vec![vec![0, 1, 2]]);
        assert!(three.fixed.is_empty());
    }

    #[test]
    fn apply_matching_examples() {
        let p2 = Graph::path(2);
        let c = PebbleConfiguration::initial(2);
        let swapped = c.apply_matching(&p2, &Matching::new(vec![(0, 1)])).unwrap();
        assert_eq!(swapped.as_slice(), &[1, 0]);
        assert_eq!(c.apply_matching(&p2, &Matching::empty()).unwrap(), c);

        let c4 = Graph::cycle(4);
        let c = PebbleConfiguration::initial(4);
        let next = c
            .apply_matching(&c4, &Matching::new(vec![(0, 1), (2, 3)]))
            .unwrap();
        assert_eq!(next.as_slice(), &[1, 0, 3, 2]);
        assert!(c.apply_matching(&c4, &Matching::new(vec![(0, 2)])).is_err());
    }

    #[test]
    fn permutation_text_format() {
        let p = Permutation::parse("3\n2 3 1\n").unwrap();
        assert_eq!(p.as_slice(), &[1, 2, 0]);
        assert_eq!(Permutation::parse(&p.to_text()).unwrap(), p);
        assert!(Permutation::parse("3\n1 1 2").is_err());
        assert!(Permutation::parse("3\n1 2").is_err());
    }

    proptest! {
        #[test]
        fn decomposition_round_trips(dest in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
            let p = Permutation::new(dest).unwrap();
            let cd = p.cycle_decomposition();
            prop_assert_eq!(cd.recompose(), p.clone());
            for c in &cd.cycles {
                prop_assert!(c.len() >= 2);
                prop_assert_eq!(c[0], *c.iter().min().unwrap());
            }
            let mins: Vec<usize> = cd.cycles.iter().map(|c| c[0]).collect();
            prop_assert!(mins.windows(2).all(|w| w[0] < w[1]));
            let covered: usize = cd.cycles.iter().map(Vec::len).sum::<usize>() + cd.fixed.len();
            prop_assert_eq!(covered, 9);
        }

        #[test]
        fn inverse_composes_to_identity(dest in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
            let p = Permutation::new(dest).unwrap();
            prop_assert!(p.then(&p.inverse()).is_identity());
        }
    }
}
