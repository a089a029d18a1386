//! Compiling 3-CNF formulas into routing instances that route in three steps
//! exactly when the formula is satisfiable.
//!
//! Building blocks, all routed by a transposition whose endpoints are three
//! apart:
//! - hexagon: a 6-cycle swapping two antipodal vertices through one side;
//! - clause: terminals `a_C`, `b_C` joined by one path `a_C - port - w - b_C`
//!   per literal; the path used is the satisfied literal;
//! - variable: a ring of hexagons where consecutive hexagons share a vertex,
//!   so all of them route through the same side. Free side vertices are
//!   the literal ports;
//! - f-chain: squares `p_k - m_k - q_k - m_{k+1}` swapping `p_k, q_k`. If one end
//!   is taken from outside, the chain must route through the other end.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{ParseError, Result};
use crate::graph::Graph;
use crate::matching::Matching;
use crate::perm::Permutation;
use crate::route::for_each_plan;

/// A CNF formula; literal `+v` / `-v` refers to variable `v` in `1..=vars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Formula {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Formula, ParseError> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(ParseError::EmptyClause { line: i + 1 });
            }
            if clause.len() > 3 {
                return Err(ParseError::OversizeClause {
                    line: i + 1,
                    len: clause.len(),
                });
            }
            if clause
                .iter()
                .any(|&l| l == 0 || l.unsigned_abs() as usize > vars)
            {
                return Err(ParseError::BadLiteral { line: i + 1 });
            }
        }
        Ok(Formula { vars, clauses })
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }

    /// Satisfying assignment by exhaustive search.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        assert!(self.vars < 30, "brute force is for tiny formulas");
        (0u64..1 << self.vars)
            .map(|mask| {
                (0..self.vars)
                    .map(|v| mask >> v & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .find(|a| self.evaluate(a))
    }

    pub fn occurrences(&self, var: usize) -> usize {
        self.clauses
            .iter()
            .flatten()
            .filter(|l| l.unsigned_abs() as usize == var)
            .count()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                write!(out, "{l} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Reads DIMACS CNF: `c` comment lines, a `p cnf vars clauses` header, then
/// zero-terminated clauses of at most three literals.
pub fn parse_cnf(text: &str) -> Result<Formula, ParseError> {
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut current_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') || body.starts_with('%') {
            continue;
        }
        if body.starts_with('p') {
            let parts: Vec<&str> = body.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let Some(h) = parsed.filter(|_| header.is_none()) else {
                return Err(ParseError::Malformed {
                    line,
                    reason: "bad `p cnf` header".into(),
                });
            };
            header = Some(h);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(ParseError::Malformed {
                line,
                reason: "clause before header".into(),
            });
        };
        for tok in body.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| ParseError::Malformed {
                line,
                reason: format!("`{tok}` is not an integer"),
            })?;
            if current.is_empty() {
                current_line = line;
            }
            if lit == 0 {
                if current.is_empty() {
                    return Err(ParseError::EmptyClause { line });
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > vars {
                return Err(ParseError::BadLiteral { line });
            }
            current.push(lit);
            if current.len() > 3 {
                return Err(ParseError::OversizeClause {
                    line: current_line,
                    len: current.len(),
                });
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(ParseError::Malformed {
            line: 1,
            reason: "missing `p cnf` header".into(),
        });
    };
    if !current.is_empty() {
        return Err(ParseError::Malformed {
            line: current_line,
            reason: "clause not terminated by 0".into(),
        });
    }
    if clauses.len() != count {
        return Err(ParseError::CountMismatch {
            expected: count,
            found: clauses.len(),
        });
    }
    Ok(Formula { vars, clauses })
}

/// Named vertex in a gadget.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Port {
    ClauseA,
    ClauseB,
    /// Port on the path of the `k`-th literal of a clause.
    Literal(usize),
    /// `k`-th port of the variable's positive (`true`) or negative side.
    Variable {
        positive: bool,
        k: usize,
    },
    ChainU,
    ChainV,
}

/// A routing fragment: local vertices `0..n`, a product of disjoint transpositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub transpositions: Vec<(usize, usize)>,
    pub ports: Vec<(Port, usize)>,
}

impl GadgetInstance {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().copied()).expect("gadget edges are simple")
    }

    pub fn perm(&self) -> Permutation {
        let mut dest: Vec<usize> = (0..self.n).collect();
        for &(a, b) in &self.transpositions {
            dest.swap(a, b);
        }
        Permutation::new(dest).expect("disjoint transpositions")
    }

    pub fn port(&self, port: &Port) -> Option<usize> {
        self.ports.iter().find(|(p, _)| p == port).map(|&(_, v)| v)
    }

    pub fn ports_where(&self, pred: impl Fn(&Port) -> bool) -> Vec<usize> {
        self.ports
            .iter()
            .filter(|(p, _)| pred(p))
            .map(|&(_, v)| v)
            .collect()
    }
}

pub fn build_hexagon() -> GadgetInstance {
    GadgetInstance {
        n: 6,
        edges: (0..6).map(|i| (i, (i + 1) % 6)).collect(),
        transpositions: vec![(0, 3)],
        ports: vec![],
    }
}

/// `a_C = 0`, `b_C = 1`; literal `t` owns the path `0 - port - w - 1`.
pub fn build_clause_gadget(literals: usize) -> Result<GadgetInstance> {
    if !(1..=3).contains(&literals) {
        return Err(crate::Error::InvalidArgument(format!(
            "a clause has 1 to 3 literals, not {literals}"
        )));
    }
    let mut g = GadgetInstance {
        n: 2 + 2 * literals,
        edges: Vec::new(),
        transpositions: vec![(0, 1)],
        ports: vec![(Port::ClauseA, 0), (Port::ClauseB, 1)],
    };
    for t in 0..literals {
        let (port, w) = (2 + 2 * t, 3 + 2 * t);
        g.edges.extend([(0, port), (port, w), (w, 1)]);
        g.ports.push((Port::Literal(t), port));
    }
    Ok(g)
}

/// Smallest level count whose ring exposes at least `occurrences` ports per side.
pub fn variable_levels(occurrences: usize) -> usize {
    (1..).find(|&l| occurrences + 2 <= 1 << (l + 1)).unwrap()
}

/// Hexagon `i` is `a_i - l1_i - l2_i - b_i - r2_i - r1_i`, swapping `a_i, b_i`,
/// with `r2_i` identified with `l1_{i+1}` around the ring. The positive ports
/// are the `l2_i`, free when every hexagon routes through its right side.
pub fn build_variable_gadget(occurrences: usize) -> Result<GadgetInstance> {
    if occurrences == 0 {
        return Err(crate::Error::InvalidArgument(
            "variable without occurrences".into(),
        ));
    }
    let hexagons = (1 << (variable_levels(occurrences) + 1)) - 1;
    let l1 = |i: usize| i % hexagons;
    let base = |i: usize| hexagons + 4 * i;
    let mut g = GadgetInstance {
        n: 5 * hexagons,
        edges: Vec::new(),
        transpositions: Vec::new(),
        ports: Vec::new(),
    };
    for i in 0..hexagons {
        let (a, l2, b, r1) = (base(i), base(i) + 1, base(i) + 2, base(i) + 3);
        let r2 = l1(i + 1);
        g.edges
            .extend([(a, l1(i)), (l1(i), l2), (l2, b), (b, r2), (r2, r1), (r1, a)]);
        g.transpositions.push((a, b));
        if i > 0 {
            g.ports.push((
                Port::Variable {
                    positive: true,
                    k: i - 1,
                },
                l2,
            ));
            g.ports.push((
                Port::Variable {
                    positive: false,
                    k: i - 1,
                },
                r1,
            ));
        }
    }
    Ok(g)
}

/// Squares `p_k - m_k - q_k - m_{k+1}` with `u = m_0` and `v = m_length`.
pub fn build_f_chain(length: usize) -> Result<GadgetInstance> {
    if length == 0 {
        return Err(crate::Error::InvalidArgument(
            "f-chain length must be positive".into(),
        ));
    }
    let m = |k: usize| k;
    let mut g = GadgetInstance {
        n: length + 1 + 2 * length,
        edges: Vec::new(),
        transpositions: Vec::new(),
        ports: vec![(Port::ChainU, m(0)), (Port::ChainV, m(length))],
    };
    for k in 0..length {
        let (p, q) = (length + 1 + 2 * k, length + 2 + 2 * k);
        g.edges
            .extend([(p, m(k)), (m(k), q), (q, m(k + 1)), (m(k + 1), p)]);
        g.transpositions.push((p, q));
    }
    Ok(g)
}

pub const DEFAULT_CHAIN_LENGTH: usize = 1;

/// Where one literal occurrence landed in the reduced graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortRecord {
    pub literal: i32,
    /// 0-based clause index.
    pub clause: usize,
    /// Clause-side port vertex.
    pub vertex: usize,
    /// Variable-side port vertex the chain starts from.
    pub variable_vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub perm: Permutation,
    pub ports: Vec<PortRecord>,
    /// Per variable, its gadget's vertices in local order.
    pub variable_vertices: Vec<Vec<usize>>,
    /// Per clause, its gadget's vertices in local order.
    pub clause_vertices: Vec<Vec<usize>>,
}

impl ReductionOutput {
    /// Lines `literal clause vertex`, 1-indexed clause and vertex.
    pub fn port_map_text(&self) -> String {
        let mut out = String::new();
        for r in &self.ports {
            writeln!(out, "{} {} {}", r.literal, r.clause + 1, r.vertex + 1).unwrap();
        }
        out
    }
}

impl fmt::Display for ReductionOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} edges, {} literal ports",
            self.graph.n(),
            self.graph.m(),
            self.ports.len()
        )
    }
}

#[derive(Default)]
struct Assembly {
    n: usize,
    edges: Vec<(usize, usize)>,
    transpositions: Vec<(usize, usize)>,
}

impl Assembly {
    /// Places a gadget, gluing local vertices onto existing ones as listed.
    fn place(&mut self, gadget: &GadgetInstance, glue: &[(usize, usize)]) -> Vec<usize> {
        let mut map = vec![usize::MAX; gadget.n];
        for &(local, global) in glue {
            map[local] = global;
        }
        for slot in map.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = self.n;
            self.n += 1;
        }
        self.edges
            .extend(gadget.edges.iter().map(|&(u, v)| (map[u], map[v])));
        self.transpositions
            .extend(gadget.transpositions.iter().map(|&(a, b)| (map[a], map[b])));
        map
    }
}

/// Builds the routing instance of a formula: one variable gadget per
/// variable, one clause gadget per clause, and an f-chain from each literal
/// occurrence's variable port to its clause port. Ports are consumed in
/// clause order. If the result is disconnected, one extra vertex is joined to
/// a fixed non-port vertex of every component.
pub fn reduce(f: &Formula) -> Result<ReductionOutput> {
    reduce_with_chain(f, DEFAULT_CHAIN_LENGTH)
}

pub fn reduce_with_chain(f: &Formula, chain_length: usize) -> Result<ReductionOutput> {
    let mut asm = Assembly::default();
    let mut variable_vertices = Vec::new();
    let mut var_gadgets = Vec::new();
    for v in 1..=f.vars {
        let gadget = build_variable_gadget(f.occurrences(v).max(1))?;
        variable_vertices.push(asm.place(&gadget, &[]));
        var_gadgets.push(gadget);
    }
    let mut next_port: BTreeMap<(usize, bool), usize> = BTreeMap::new();
    let chain = build_f_chain(chain_length)?;
    let (cu, cv) = (
        chain.port(&Port::ChainU).unwrap(),
        chain.port(&Port::ChainV).unwrap(),
    );
    let mut clause_vertices = Vec::new();
    let mut ports = Vec::new();
    for (ci, clause) in f.clauses.iter().enumerate() {
        let gadget = build_clause_gadget(clause.len())?;
        let map = asm.place(&gadget, &[]);
        for (t, &lit) in clause.iter().enumerate() {
            let var = lit.unsigned_abs() as usize - 1;
            let positive = lit > 0;
            let k = next_port.entry((var, positive)).or_insert(0);
            let local = var_gadgets[var]
                .port(&Port::Variable { positive, k: *k })
                .expect("capacity covers every occurrence");
            *k += 1;
            let variable_vertex = variable_vertices[var][local];
            let vertex = map[gadget.port(&Port::Literal(t)).unwrap()];
            asm.place(&chain, &[(cu, variable_vertex), (cv, vertex)]);
            ports.push(PortRecord {
                literal: lit,
                clause: ci,
                vertex,
                variable_vertex,
            });
        }
        clause_vertices.push(map);
    }
    let mut graph = Graph::from_edges(asm.n, asm.edges.iter().copied())?;
    if !graph.is_connected() && asm.n > 0 {
        let comp = graph.components();
        let is_port: Vec<bool> = {
            let mut mark = vec![false; asm.n];
            for r in &ports {
                mark[r.vertex] = true;
                mark[r.variable_vertex] = true;
            }
            for (vg, verts) in var_gadgets.iter().zip(&variable_vertices) {
                for &(_, local) in &vg.ports {
                    mark[verts[local]] = true;
                }
            }
            mark
        };
        let moved: Vec<bool> = {
            let mut mark = vec![false; asm.n];
            for &(a, b) in &asm.transpositions {
                mark[a] = true;
                mark[b] = true;
            }
            mark
        };
        let hub = asm.n;
        asm.n += 1;
        let mut attached = std::collections::BTreeSet::new();
        for v in 0..hub {
            if !is_port[v] && !moved[v] && attached.insert(comp[v]) {
                asm.edges.push((v, hub));
            }
        }
        graph = Graph::from_edges(asm.n, asm.edges.iter().copied())?;
        if !graph.is_connected() {
            return Err(crate::Error::Disconnected);
        }
    }
    let mut dest: Vec<usize> = (0..asm.n).collect();
    for &(a, b) in &asm.transpositions {
        dest.swap(a, b);
    }
    Ok(ReductionOutput {
        graph,
        perm: Permutation::new(dest)?,
        ports,
        variable_vertices,
        clause_vertices,
    })
}

/// Outcome of exhaustively listing the three-step plans of a gadget.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub plans: usize,
    pub violations: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.plans > 0 && self.violations == 0
    }
}

/// The gadget's graph with every edge at `pinned` removed, so those vertices
/// keep their pebbles and never take part in a step.
pub fn pin(g: &Graph, pinned: &[usize]) -> Graph {
    Graph::from_edges(
        g.n(),
        g.edges()
            .iter()
            .copied()
            .filter(|(u, v)| !pinned.contains(u) && !pinned.contains(v)),
    )
    .expect("subgraph of a simple graph")
}

fn busy_every_step(plan: &[Matching], v: usize) -> bool {
    plan.iter().all(|m| m.contains_vertex(v))
}

fn audit(
    g: &Graph,
    p: &Permutation,
    mut ok: impl FnMut(&[Matching]) -> bool,
) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    for_each_plan(g, p, 3, None, |plan| {
        report.plans += 1;
        if !ok(plan) {
            report.violations += 1;
        }
        false
    })?;
    Ok(report)
}

/// In every three-step plan of the hexagon, the two swapped pebbles travel
/// along the same side.
pub fn audit_hexagon() -> Result<AuditReport> {
    let hex = build_hexagon();
    let sides = [[1, 2], [4, 5]];
    audit(&hex.graph(), &hex.perm(), |plan| {
        let mut at: Vec<usize> = (0..6).collect();
        let mut visited = Vec::new();
        for m in plan {
            for &(u, v) in m.pairs() {
                at.swap(u, v);
            }
            visited.extend((0..6).filter(|&v| at[v] == 0 || at[v] == 3));
        }
        let used = sides.map(|side| side.iter().any(|v| visited.contains(v)));
        used[0] != used[1]
    })
}

/// Every three-step plan of a clause gadget keeps exactly one literal port
/// busy in all three steps.
pub fn audit_clause_gadget(literals: usize) -> Result<AuditReport> {
    let gadget = build_clause_gadget(literals)?;
    let ports = gadget.ports_where(|p| matches!(p, Port::Literal(_)));
    audit(&gadget.graph(), &gadget.perm(), |plan| {
        ports.iter().filter(|&&v| busy_every_step(plan, v)).count() == 1
    })
}

/// Every three-step plan of a variable gadget sends all hexagons through the
/// same side and never touches the ports of the other polarity.
pub fn audit_variable_gadget(occurrences: usize) -> Result<(AuditReport, [usize; 2])> {
    let gadget = build_variable_gadget(occurrences)?;
    let g = gadget.graph();
    let positive = gadget.ports_where(|p| matches!(p, Port::Variable { positive: true, .. }));
    let negative = gadget.ports_where(|p| {
        matches!(
            p,
            Port::Variable {
                positive: false,
                ..
            }
        )
    });
    let untouched = |plan: &[Matching], ports: &[usize]| {
        ports
            .iter()
            .all(|&v| plan.iter().all(|m| !m.contains_vertex(v)))
    };
    let mut modes = [0, 0];
    let report = audit(&g, &gadget.perm(), |plan| {
        let free_pos = untouched(plan, &positive);
        let free_neg = untouched(plan, &negative);
        if free_pos {
            modes[0] += 1;
        }
        if free_neg {
            modes[1] += 1;
        }
        free_pos != free_neg
    })?;
    Ok((report, modes))
}

/// With the `u` end pinned, every three-step plan of an f-chain keeps `v`
/// busy in all three steps.
pub fn audit_f_chain(length: usize) -> Result<AuditReport> {
    let chain = build_f_chain(length)?;
    let (u, v) = (
        chain.port(&Port::ChainU).unwrap(),
        chain.port(&Port::ChainV).unwrap(),
    );
    audit(&pin(&chain.graph(), &[u]), &chain.perm(), |plan| {
        busy_every_step(plan, v)
    })
}

/// Every formula over at most `max_vars` variables with at most `max_clauses`
/// distinct clauses, each clause a set of distinct literals.
pub fn micro_formulas(max_vars: usize, max_clauses: usize) -> Vec<Formula> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for vars in 1..=max_vars {
        let literals: Vec<i32> = (1..=vars as i32).flat_map(|v| [v, -v]).collect();
        let clauses: Vec<Vec<i32>> = (1..=3.min(literals.len()))
            .flat_map(|size| literals.iter().copied().combinations(size))
            .collect();
        for count in 1..=max_clauses {
            for chosen in clauses.iter().cloned().combinations(count) {
                out.push(Formula {
                    vars,
                    clauses: chosen,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnf_examples() {
        assert_eq!(parse_cnf("p cnf 1 1\n1 0").unwrap().clauses, vec![vec![1]]);
        assert_eq!(
            parse_cnf("c hi\np cnf 3 1\n1 2 -3 0\n").unwrap().clauses,
            vec![vec![1, 2, -3]]
        );
        assert!(matches!(
            parse_cnf("p cnf 2 1\n1 2 1 2 0"),
            Err(ParseError::OversizeClause { .. })
        ));
        assert!(matches!(
            parse_cnf("p cnf 2 1\n0\n"),
            Err(ParseError::EmptyClause { .. })
        ));
        assert!(matches!(
            parse_cnf("p cnf 2 1\n3 0\n"),
            Err(ParseError::BadLiteral { .. })
        ));
        assert!(matches!(
            parse_cnf("p dnf 2 1\n1 0\n"),
            Err(ParseError::Malformed { .. })
        ));
        let f = parse_cnf("p cnf 2 2\n1 -2 0\n2 0\n").unwrap();
        assert_eq!(parse_cnf(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn brute_force_sat() {
        let contradiction = Formula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert!(contradiction.brute_force().is_none());
        let taut = Formula::new(1, vec![vec![1, -1]]).unwrap();
        assert!(taut.brute_force().is_some());
    }

    #[test]
    fn gadget_shapes() {
        let c3 = build_clause_gadget(3).unwrap();
        assert_eq!((c3.n, c3.edges.len()), (8, 9));
        let c1 = build_clause_gadget(1).unwrap();
        assert_eq!(c1.graph().is_tree(), true);
        assert!(build_clause_gadget(0).is_err());

        assert_eq!(variable_levels(1), 1);
        assert_eq!(variable_levels(2), 1);
        assert_eq!(variable_levels(3), 2);
        let x = build_variable_gadget(1).unwrap();
        assert_eq!(x.transpositions.len(), 3);
        assert_eq!(x.n, 15);
        assert_eq!(
            x.ports_where(|p| matches!(p, Port::Variable { positive: true, .. }))
                .len(),
            2
        );
        assert!(x.graph().is_connected());
        assert!(build_variable_gadget(0).is_err());

        let chain = build_f_chain(1).unwrap();
        assert_eq!((chain.n, chain.transpositions.len()), (4, 1));
        assert!(build_f_chain(0).is_err());
    }

    #[test]
    fn reduction_structure() {
        let single = Formula::new(1, vec![vec![1]]).unwrap();
        let out = reduce(&single).unwrap();
        let expected = build_variable_gadget(1).unwrap().n
            + build_clause_gadget(1).unwrap().n
            + build_f_chain(1).unwrap().n
            - 2;
        assert_eq!(out.graph.n(), expected);
        assert!(out.graph.is_connected());
        assert_eq!(out.port_map_text().lines().count(), 1);

        let loose = Formula::new(2, vec![vec![1]]).unwrap();
        let out = reduce(&loose).unwrap();
        assert!(out.graph.is_connected());
        // The hub holds a fixed pebble.
        assert_eq!(out.perm.dest(out.graph.n() - 1), out.graph.n() - 1);
    }

    #[test]
    fn gadget_audits() {
        for k in 1..=3 {
            assert!(audit_clause_gadget(k).unwrap().passed(), "clause {k}");
        }
        let (report, modes) = audit_variable_gadget(1).unwrap();
        assert!(report.passed());
        assert!(modes[0] > 0 && modes[1] > 0);
        for len in 1..=2 {
            assert!(audit_f_chain(len).unwrap().passed());
        }
        assert!(audit_hexagon().unwrap().passed());
    }

    #[test]
    fn micro_formula_count() {
        // 3 clauses over one variable, 14 over two.
        assert_eq!(micro_formulas(2, 2).len(), 3 + 3 + 14 + 91);
    }
}
