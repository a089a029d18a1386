use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use matchroute::bench::{run_suite, DEFAULT_SEED, SUITES};
use matchroute::bounded_sat::rt_at_most_k_sat;
use matchroute::sat::{parse_cnf, reduce_with_chain, DEFAULT_CHAIN_LENGTH};
use matchroute::sortnet::{adapt_on_graph, odd_even_path_network, product_network, SortingNetwork};
use matchroute::tree_sort::{build_tree_sort, build_tree_sort_with_slack, depth_accounting};
use matchroute::{
    decide_two_step, route_tree, rt_at_most_k_budgeted, rt_exact, rt_worst_case, verify_plan,
    Error, Graph, Permutation, RoutingOutcome, RoutingPlan, RoutingStatus,
};

#[derive(Parser)]
#[command(
    name = "matchroute",
    version,
    about = "Routing via matchings and sorting networks on graphs"
)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Abort with exit code 3 after this many seconds.
    #[arg(long, global = true)]
    budget_secs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a permutation routes in at most two steps.
    Decide2 {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        emit_plan: Option<PathBuf>,
    },
    /// Exact routing number of one permutation by bidirectional search.
    RtExact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        perm: PathBuf,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long)]
        emit_plan: Option<PathBuf>,
    },
    /// Is there a plan with at most k steps?
    RtBounded {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Engine::Sat)]
        engine: Engine,
        /// Node budget for the depth-first engine.
        #[arg(long)]
        nodes: Option<u64>,
        #[arg(long)]
        emit_plan: Option<PathBuf>,
    },
    /// Routing number of the graph (worst permutation).
    RtWorst {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Route a permutation on a tree.
    RouteTree {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        emit_plan: Option<PathBuf>,
    },
    VerifyPlan {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        plan: PathBuf,
    },
    /// Build the routing instance of a 3-CNF formula.
    ReduceSat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_perm: PathBuf,
        #[arg(long)]
        out_ports: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CHAIN_LENGTH)]
        chain_length: usize,
    },
    /// Sorting network on a tree.
    SortTree {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out_network: PathBuf,
        #[arg(long)]
        slack: Option<usize>,
        /// Print per-pass depth accounting.
        #[arg(long)]
        report: bool,
    },
    /// Sorting network on the product of two connected graphs.
    SortProduct {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(long)]
        out_network: PathBuf,
    },
    /// Append stages so the network sorts into a given order.
    AdaptOrder {
        #[arg(long)]
        net: PathBuf,
        /// Target order: rank r goes to vertex target[r].
        #[arg(long)]
        target: PathBuf,
        /// Host graph for the fix-up routing; defaults to the network's own edges.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        out_network: PathBuf,
    },
    VerifyNetwork {
        #[arg(long)]
        net: PathBuf,
        /// Also check all n! permutations.
        #[arg(long)]
        all_perms: bool,
    },
    /// Run an acceptance suite, or `all`.
    Bench { suite: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Sat,
    Dfs,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded | Error::UnverifiedNetwork | Error::PlanDoesNotVerify => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<matchroute::ParseError> for Failure {
    fn from(e: matchroute::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Command outcome: `true` for a positive answer.
type Outcome = Result<bool, Failure>;

struct Report {
    command: &'static str,
    digests: Vec<(String, String)>,
    lines: Vec<String>,
}

impl Report {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let digest = Sha256::digest(text.as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        self.digests.push((path.display().to_string(), hex));
        Ok(text)
    }

    fn graph(&mut self, path: &Path) -> Result<Graph, Failure> {
        Ok(Graph::parse(&self.read(path)?)?)
    }

    fn perm(&mut self, path: &Path) -> Result<Permutation, Failure> {
        Ok(Permutation::parse(&self.read(path)?)?)
    }

    fn network(&mut self, path: &Path) -> Result<SortingNetwork, Failure> {
        Ok(SortingNetwork::parse(&self.read(path)?)?)
    }

    fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::Usage(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit_plan(r: &mut Report, plan: &RoutingPlan, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, &plan.to_text()),
        None => {
            r.say(plan.to_text().trim_end().to_string());
            Ok(())
        }
    }
}

fn report_outcome(r: &mut Report, o: &RoutingOutcome, out: &Option<PathBuf>) -> Outcome {
    match (o.status, &o.plan) {
        (RoutingStatus::Solved, Some(plan)) => {
            r.say(format!("routable in {} steps", plan.len()));
            emit_plan(r, plan, out)?;
            Ok(true)
        }
        (RoutingStatus::Infeasible, _) => {
            r.say("infeasible: a pebble must leave its component");
            Ok(false)
        }
        _ => {
            r.say("not routable within the cap");
            Ok(false)
        }
    }
}

/// Factor network for a product: odd-even transposition on a path labeled in
/// order, the tree sort on a spanning tree otherwise.
fn factor_network(g: &Graph) -> Result<SortingNetwork, Failure> {
    let n = g.n();
    if g.m() + 1 == n && (1..n).all(|i| g.has_edge(i - 1, i)) {
        return Ok(odd_even_path_network(n));
    }
    Ok(build_tree_sort(&g.spanning_tree()?)?.network)
}

fn run(cli: Cli, r: &mut Report) -> Outcome {
    match cli.command {
        Command::Decide2 {
            graph,
            perm,
            emit_plan: out,
        } => {
            r.command = "decide2";
            let (g, p) = (r.graph(&graph)?, r.perm(&perm)?);
            let o = decide_two_step(&g, &p)?;
            report_outcome(r, &o, &out)
        }
        Command::RtExact {
            graph,
            perm,
            cap,
            emit_plan: out,
        } => {
            r.command = "rt-exact";
            let (g, p) = (r.graph(&graph)?, r.perm(&perm)?);
            let o = rt_exact(&g, &p, cap)?;
            report_outcome(r, &o, &out)
        }
        Command::RtBounded {
            graph,
            perm,
            k,
            engine,
            nodes,
            emit_plan: out,
        } => {
            r.command = "rt-bounded";
            let (g, p) = (r.graph(&graph)?, r.perm(&perm)?);
            let plan = match engine {
                Engine::Sat => rt_at_most_k_sat(&g, &p, k)?,
                Engine::Dfs => rt_at_most_k_budgeted(&g, &p, k, nodes)?,
            };
            match plan {
                Some(plan) => {
                    r.say(format!("routable in {} <= {k} steps", plan.len()));
                    emit_plan(r, &plan, &out)?;
                    Ok(true)
                }
                None => {
                    r.say(format!("no plan with at most {k} steps"));
                    Ok(false)
                }
            }
        }
        Command::RtWorst {
            graph,
            cap,
            emit_witness,
        } => {
            r.command = "rt-worst";
            let g = r.graph(&graph)?;
            let (value, witness) = rt_worst_case(&g, cap)?;
            r.say(value.to_string());
            if let Some(path) = emit_witness {
                write_atomic(&path, &witness.to_text())?;
            }
            Ok(true)
        }
        Command::RouteTree {
            graph,
            perm,
            emit_plan: out,
        } => {
            r.command = "route-tree";
            let (g, p) = (r.graph(&graph)?, r.perm(&perm)?);
            let plan = route_tree(&g, &p)?;
            r.say(format!("{} steps", plan.len()));
            emit_plan(r, &plan, &out)?;
            Ok(true)
        }
        Command::VerifyPlan { graph, perm, plan } => {
            r.command = "verify-plan";
            let (g, p) = (r.graph(&graph)?, r.perm(&perm)?);
            let plan = RoutingPlan::parse(&r.read(&plan)?)?;
            let ok = verify_plan(&g, &p, &plan)?;
            r.say(if ok {
                "plan routes the permutation"
            } else {
                "plan does not route the permutation"
            });
            Ok(ok)
        }
        Command::ReduceSat {
            cnf,
            out_graph,
            out_perm,
            out_ports,
            chain_length,
        } => {
            r.command = "reduce-sat";
            let f = parse_cnf(&r.read(&cnf)?)?;
            let out = reduce_with_chain(&f, chain_length)?;
            write_atomic(&out_graph, &out.graph.to_text())?;
            write_atomic(&out_perm, &out.perm.to_text())?;
            write_atomic(&out_ports, &out.port_map_text())?;
            r.say(out.to_string());
            Ok(true)
        }
        Command::SortTree {
            graph,
            out_network,
            slack,
            report,
        } => {
            r.command = "sort-tree";
            let t = r.graph(&graph)?;
            let build = match slack {
                Some(s) => build_tree_sort_with_slack(&t, s)?,
                None => build_tree_sort(&t)?,
            };
            write_atomic(&out_network, &build.network.to_text())?;
            r.say(format!(
                "depth {} (slack {})",
                build.network.depth(),
                build.slack
            ));
            if report {
                r.say(
                    depth_accounting(&t, &build)
                        .to_text()
                        .trim_end()
                        .to_string(),
                );
            }
            Ok(true)
        }
        Command::SortProduct {
            g1,
            g2,
            out_network,
        } => {
            r.command = "sort-product";
            let (a, b) = (r.graph(&g1)?, r.graph(&g2)?);
            let net = product_network(&factor_network(&a)?, &factor_network(&b)?)?;
            write_atomic(&out_network, &net.to_text())?;
            r.say(format!("depth {} on {} vertices", net.depth(), net.n()));
            Ok(true)
        }
        Command::AdaptOrder {
            net,
            target,
            graph,
            out_network,
        } => {
            r.command = "adapt-order";
            let base = r.network(&net)?;
            let target = r.perm(&target)?;
            let host = match graph {
                Some(path) => r.graph(&path)?,
                None => base.host().clone(),
            };
            let adapted = adapt_on_graph(&base, &host, &target)?;
            write_atomic(&out_network, &adapted.to_text())?;
            r.say(format!("depth {} -> {}", base.depth(), adapted.depth()));
            Ok(true)
        }
        Command::VerifyNetwork { net, all_perms } => {
            r.command = "verify-network";
            let net = r.network(&net)?;
            let mut ok = net.verify_zero_one()?;
            r.say(format!("zero-one: {}", if ok { "sorts" } else { "fails" }));
            if all_perms {
                let all = net.verify_all_permutations()?;
                r.say(format!(
                    "permutations: {}",
                    if all { "sorts" } else { "fails" }
                ));
                ok &= all;
            }
            Ok(ok)
        }
        Command::Bench { suite } => {
            r.command = "bench";
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut ok = true;
            for name in names {
                let report = run_suite(name, cli.seed).ok_or_else(|| {
                    Failure::Usage(format!(
                        "unknown suite {name}; known: {}",
                        SUITES.join(", ")
                    ))
                })??;
                ok &= report.passed;
                r.say(report.line());
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget_secs.map(Duration::from_secs);
    let start = Instant::now();
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let mut report = Report {
            command: "",
            digests: Vec::new(),
            lines: Vec::new(),
        };
        let outcome = run(cli, &mut report);
        let _ = tx.send((report, outcome));
    });
    let received = match budget {
        Some(b) => rx.recv_timeout(b).map_err(|_| ()),
        None => rx.recv().map_err(|_| ()),
    };
    let Ok((report, outcome)) = received else {
        eprintln!("error: time budget exhausted or worker failed");
        return ExitCode::from(3);
    };
    for line in &report.lines {
        println!("{line}");
    }
    for (path, digest) in &report.digests {
        eprintln!("input {path} sha256:{digest}");
    }
    eprintln!(
        "{} finished in {:.3}s",
        report.command,
        start.elapsed().as_secs_f64()
    );
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
