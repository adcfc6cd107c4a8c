use anyhow::{anyhow, bail, Result};
use homlab::io::structure_to_json;
use homlab::rigid::{
    c_relation_of_tree, pattern_contains, ramsey_failure_colouring, ramsey_sweep, superpose, superposition_aut_order,
    superposition_sample, tournament_census, tree_census, RootedBinaryTree, Tournament,
};
use homlab::Execution;
use serde_json::json;

use super::{parse_list, read_structure, read_text};
use crate::args::{RigidArgs, RigidCheck};
use crate::report::{Outcome, Table};

pub const DEFAULT_SAMPLE_SEED: u64 = 0x0051_6E1D;

fn read_tournament(path: &std::path::Path) -> Result<Tournament> {
    let text = read_text(path)?;
    let t = if text.trim_start().starts_with('{') {
        Tournament::from_structure(&read_structure(path)?)
    } else {
        Tournament::parse(&text)
    };
    t.map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn run(a: &mut RigidArgs, exec: Execution) -> Result<Outcome> {
    if let Some(files) = &a.superpose {
        let [tf, cf] = files.as_slice() else {
            bail!("--superpose takes a tournament file and a tree file");
        };
        a.check.get_or_insert(RigidCheck::Rigid);
        let t = read_tournament(tf)?;
        let tree = RootedBinaryTree::parse(read_text(cf)?.trim()).map_err(|e| anyhow!("{}: {e}", cf.display()))?;
        let s = superpose(&t, &c_relation_of_tree(&tree))?;
        let order = superposition_aut_order(&s)?;
        let mut table = Table::new(["points", "aut_order", "rigid"]);
        table.push([s.domain_size().to_string(), order.to_string(), (order == 1).to_string()]);
        let result = json!({
            "points": s.domain_size(),
            "aut_order": order.to_string(),
            "rigid": order == 1,
            "structure": serde_json::from_str::<serde_json::Value>(&structure_to_json(&s))?,
        });
        return Outcome::new(result, table);
    }
    if let Some(path) = &a.ramsey_failure {
        let c = read_structure(path)?;
        let n = c.domain_size();
        let order: Vec<usize> = match &a.order {
            Some(text) => parse_list(text, "order")?,
            None => (0..n).collect(),
        };
        let col = ramsey_failure_colouring(&c, &order)?;
        let mut table = Table::new(["a", "b", "c", "red", "blue"]);
        for t in &col.cyclic_triples {
            table.push([t.triple[0], t.triple[1], t.triple[2], t.red, t.blue]);
        }
        return Outcome::new(json!({ "order": order, "colouring": col }), table);
    }
    if let Some(n) = a.tournaments {
        let census = tournament_census(n, exec)?;
        let mut table = Table::new(["class", "aut_order", "arcs"]);
        for (i, c) in census.classes.iter().enumerate() {
            let arcs = c.arcs.iter().map(|(u, v)| format!("{u}>{v}")).collect::<Vec<_>>().join(";");
            table.push([i.to_string(), c.aut_order.to_string(), arcs]);
        }
        let result = json!({ "n": n, "classes": census.classes.len(), "all_odd": census.all_odd, "census": census });
        return Outcome::new(result, table);
    }
    if let Some(leaves) = a.trees {
        let census = tree_census(leaves, exec)?;
        let mut table = Table::new(["leaves", "trees", "two_power_orders", "round_trips"]);
        table.push([census.leaves, census.trees, census.two_power_orders, census.round_trips]);
        return Outcome::new(json!({ "passed": census.passed(), "census": census }), table);
    }
    if let Some(trials) = a.sample {
        let max_points = *a.max_points.get_or_insert(8);
        let seed = *a.seed.get_or_insert(DEFAULT_SAMPLE_SEED);
        let s = superposition_sample(trials, max_points, seed, exec)?;
        let mut table = Table::new(["trial", "points", "aut_order", "tree"]);
        for x in &s.non_rigid {
            table.push([x.trial.to_string(), x.points.to_string(), x.aut_order.to_string(), x.tree.clone()]);
        }
        return Outcome::new(json!({ "all_rigid": s.non_rigid.is_empty(), "sample": s }), table);
    }
    if let Some(points) = a.ramsey_sweep {
        let s = ramsey_sweep(points, exec)?;
        let mut table = Table::new(["points", "superpositions", "with_cyclic_triple", "certified"]);
        for l in &s.levels {
            table.push([l.points, l.superpositions, l.with_cyclic_triple, l.certified]);
        }
        return Outcome::new(json!({ "passed": s.passed(), "sweep": s }), table);
    }
    if let Some(p) = &a.pattern {
        let q = a.text.as_deref().ok_or_else(|| anyhow!("--pattern needs --text"))?;
        let (p, q): (Vec<usize>, Vec<usize>) = (parse_list(p, "pattern")?, parse_list(q, "text")?);
        let m = pattern_contains(&p, &q)?;
        let mut table = Table::new(["contained", "positions"]);
        let pos = m.positions.as_ref().map_or(String::new(), |v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"));
        table.push([m.contained.to_string(), pos]);
        return Outcome::new(json!({ "pattern": p, "text": q, "match": m }), table);
    }
    bail!("rigid needs one of --superpose, --ramsey-failure, --tournaments, --trees, --sample, --ramsey-sweep or --pattern")
}
