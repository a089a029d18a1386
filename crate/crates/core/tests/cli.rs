use std::fs;
use std::path::Path;
use std::process::Command;

use matchroute::sortnet::SortingNetwork;
use matchroute::{Graph, Permutation, RoutingPlan};

fn bin(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_matchroute"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let put = |name: &str, text: &str| fs::write(dir.path().join(name), text).unwrap();
    put("k3.g", "3 3\n1 2\n2 3\n1 3\n");
    put("rot.p", "3\n2 3 1\n");
    put("p3.g", "3 2\n1 2\n2 3\n");
    put("swap.p", "3\n3 2 1\n");
    put("q3.g", &Graph::hypercube(3).to_text());
    put("t.g", "7 6\n1 2\n1 3\n1 4\n4 5\n4 6\n6 7\n");
    put("rev.p", "7\n7 6 5 4 3 2 1\n");
    put("f.cnf", "p cnf 2 2\n1 2 0\n-1 -2 0\n");
    put("contra.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    put("bad.net", "3 1\n1 2 3\n1>2\n");
    dir
}

#[test]
fn decide2_exit_codes() {
    let dir = workdir();
    let d = dir.path();
    let (code, out) = bin(
        d,
        &[
            "decide2",
            "--graph",
            "k3.g",
            "--perm",
            "rot.p",
            "--emit-plan",
            "plan.txt",
        ],
    );
    assert_eq!(code, 0, "{out}");
    let plan = RoutingPlan::parse(&fs::read_to_string(d.join("plan.txt")).unwrap()).unwrap();
    assert!(plan.len() <= 2);
    assert_eq!(
        bin(
            d,
            &[
                "verify-plan",
                "--graph",
                "k3.g",
                "--perm",
                "rot.p",
                "--plan",
                "plan.txt"
            ]
        )
        .0,
        0
    );
    assert_eq!(
        bin(d, &["decide2", "--graph", "p3.g", "--perm", "swap.p"]).0,
        1
    );
    assert_eq!(
        bin(d, &["decide2", "--graph", "missing.g", "--perm", "swap.p"]).0,
        2
    );
    assert_eq!(bin(d, &["no-such-command"]).0, 2);
}

#[test]
fn rt_commands() {
    let dir = workdir();
    let d = dir.path();
    let (code, out) = bin(d, &["rt-worst", "--graph", "q3.g"]);
    assert_eq!((code, out.trim()), (0, "4"));
    let (code, out) = bin(d, &["rt-exact", "--graph", "p3.g", "--perm", "swap.p"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("routable in 3 steps"));
    assert_eq!(
        bin(
            d,
            &[
                "rt-bounded",
                "--graph",
                "p3.g",
                "--perm",
                "swap.p",
                "--k",
                "2"
            ]
        )
        .0,
        1
    );
    assert_eq!(
        bin(
            d,
            &[
                "rt-bounded",
                "--graph",
                "p3.g",
                "--perm",
                "swap.p",
                "--k",
                "3",
                "--engine",
                "dfs"
            ]
        )
        .0,
        0
    );
    let (code, _) = bin(
        d,
        &[
            "route-tree",
            "--graph",
            "t.g",
            "--perm",
            "rev.p",
            "--emit-plan",
            "tp.txt",
        ],
    );
    assert_eq!(code, 0);
    assert_eq!(
        bin(
            d,
            &[
                "verify-plan",
                "--graph",
                "t.g",
                "--perm",
                "rev.p",
                "--plan",
                "tp.txt"
            ]
        )
        .0,
        0
    );
}

#[test]
fn reduce_sat_outputs_round_trip() {
    let dir = workdir();
    let d = dir.path();
    for (cnf, expected) in [("f.cnf", 0), ("contra.cnf", 1)] {
        let args = [
            "reduce-sat",
            "--cnf",
            cnf,
            "--out-graph",
            "r.g",
            "--out-perm",
            "r.p",
            "--out-ports",
            "r.ports",
        ];
        assert_eq!(bin(d, &args).0, 0);
        let g = Graph::parse(&fs::read_to_string(d.join("r.g")).unwrap()).unwrap();
        let p = Permutation::parse(&fs::read_to_string(d.join("r.p")).unwrap()).unwrap();
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(p.n(), g.n());
        assert!(!fs::read_to_string(d.join("r.ports")).unwrap().is_empty());
        assert_eq!(
            bin(
                d,
                &["rt-bounded", "--graph", "r.g", "--perm", "r.p", "--k", "3"]
            )
            .0,
            expected
        );
    }
}

#[test]
fn network_commands() {
    let dir = workdir();
    let d = dir.path();
    assert_eq!(
        bin(
            d,
            &[
                "sort-tree",
                "--graph",
                "t.g",
                "--out-network",
                "t.net",
                "--report"
            ]
        )
        .0,
        0
    );
    let text = fs::read_to_string(d.join("t.net")).unwrap();
    assert_eq!(SortingNetwork::parse(&text).unwrap().to_text(), text);
    assert_eq!(
        bin(d, &["verify-network", "--net", "t.net", "--all-perms"]).0,
        0
    );
    assert_eq!(
        bin(
            d,
            &[
                "adapt-order",
                "--net",
                "t.net",
                "--target",
                "rev.p",
                "--out-network",
                "a.net"
            ]
        )
        .0,
        0
    );
    let adapted = SortingNetwork::parse(&fs::read_to_string(d.join("a.net")).unwrap()).unwrap();
    assert_eq!(adapted.order().as_slice(), &[6, 5, 4, 3, 2, 1, 0]);
    assert_eq!(bin(d, &["verify-network", "--net", "a.net"]).0, 0);
    assert_eq!(
        bin(
            d,
            &[
                "sort-product",
                "--g1",
                "p3.g",
                "--g2",
                "k3.g",
                "--out-network",
                "pr.net"
            ]
        )
        .0,
        0
    );
    assert_eq!(bin(d, &["verify-network", "--net", "pr.net"]).0, 0);
    assert_eq!(bin(d, &["verify-network", "--net", "bad.net"]).0, 1);
}

#[test]
fn outputs_are_deterministic() {
    let dir = workdir();
    let d = dir.path();
    bin(
        d,
        &["sort-tree", "--graph", "t.g", "--out-network", "one.net"],
    );
    bin(
        d,
        &["sort-tree", "--graph", "t.g", "--out-network", "two.net"],
    );
    assert_eq!(
        fs::read(d.join("one.net")).unwrap(),
        fs::read(d.join("two.net")).unwrap()
    );
}

#[test]
fn bench_suites() {
    let dir = workdir();
    let (code, out) = bin(dir.path(), &["bench", "q3"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS") && out.contains("= 4"));
    assert_eq!(bin(dir.path(), &["bench", "nonsense"]).0, 2);
}
