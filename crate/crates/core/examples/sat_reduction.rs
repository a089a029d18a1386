//! From a 3-CNF formula to a 3-step routing question.

use matchroute::bounded_sat::rt_at_most_k_sat;
use matchroute::sat::{audit_clause_gadget, parse_cnf, reduce};

fn main() -> matchroute::Result<()> {
    let formulas = [
        ("xor", "p cnf 2 2\n1 2 0\n-1 -2 0\n"),
        ("contradiction", "p cnf 1 2\n1 0\n-1 0\n"),
        ("two clauses", "p cnf 2 2\n1 -2 0\n-1 2 0\n"),
    ];
    for (name, text) in formulas {
        let f = parse_cnf(text)?;
        let out = reduce(&f)?;
        let routable = rt_at_most_k_sat(&out.graph, &out.perm, 3)?.is_some();
        println!(
            "{name:<14} {out}; satisfiable {}, routable in 3 steps {routable}",
            f.brute_force().is_some()
        );
    }
    print!(
        "port map of the first formula:\n{}",
        reduce(&parse_cnf(formulas[0].1)?)?.port_map_text()
    );

    let audit = audit_clause_gadget(3)?;
    println!(
        "3-literal clause gadget: {} plans, {} violations",
        audit.plans, audit.violations
    );
    Ok(())
}
