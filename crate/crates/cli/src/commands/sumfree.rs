use anyhow::{anyhow, Result};
use homlab::io::to_graph6;
use homlab::sumfree::{
    census_sweep, census_with, circulant_window, density_experiment, greedy_gap_set, henson_window_check, is_sum_free,
    parse_integer_set, SumFreeCensus, DEFAULT_SEED,
};
use homlab::Execution;
use serde_json::json;

use crate::args::{SumfreeAction, SumfreeArgs};
use crate::report::{Outcome, Table};

fn census_table(rows: &[SumFreeCensus]) -> Table {
    let mut t = Table::new(["n", "total", "ratio", "odd_type", "top_type", "both_types", "other", "per_type_ratio"]);
    for c in rows {
        t.push([
            c.n.to_string(),
            c.total.to_string(),
            c.ratio.value.to_string(),
            c.odd_type.to_string(),
            c.top_type.to_string(),
            c.both_types.to_string(),
            c.other.to_string(),
            c.per_type_ratio.to_string(),
        ]);
    }
    t
}

pub fn run(a: &mut SumfreeArgs, exec: Execution) -> Result<Outcome> {
    let action = a.action.ok_or_else(|| {
        anyhow!("sumfree needs an action: census, sweep, random, gamma, henson or greedy")
    })?;
    match action {
        SumfreeAction::Census => {
            let n = *a.n.get_or_insert(36);
            let c = census_with(n, exec)?;
            let table = census_table(std::slice::from_ref(&c));
            Outcome::new(json!({ "census": c, "ratio_exact": c.ratio.to_string() }), table)
        }
        SumfreeAction::Sweep => {
            let from = *a.from.get_or_insert(10);
            let to = *a.to.get_or_insert(36);
            let rows = census_sweep(from..=to, exec)?;
            Outcome::new(json!({ "censuses": rows }), census_table(&rows))
        }
        SumfreeAction::Random => {
            let trials = *a.trials.get_or_insert(100_000);
            let horizon = *a.horizon.get_or_insert(2000);
            let seed = *a.seed.get_or_insert(DEFAULT_SEED);
            let width = *a.bin_width.get_or_insert(0.01);
            let r = density_experiment(trials, horizon, seed, width, exec)?;
            let mut table = Table::new(["bin_low", "bin_high", "count"]);
            for b in &r.histogram {
                table.push([b.bin_low.to_string(), b.bin_high.to_string(), b.count.to_string()]);
            }
            Outcome::new(r, table)
        }
        SumfreeAction::Gamma => {
            let set = parse_integer_set(a.set.as_deref().ok_or_else(|| anyhow!("missing required option --set"))?)?;
            let window = *a.window.get_or_insert(64);
            let g = circulant_window(&set, window)?;
            let mut table = Table::new(["x", "y"]);
            for (x, y) in g.edges() {
                table.push([x, y]);
            }
            let check = is_sum_free(&set);
            let result = json!({
                "set": set,
                "window": window,
                "sum_free": check.sum_free,
                "sum_witness": check.witness,
                "edges": g.edge_count(),
                "graph6": to_graph6(&g),
            });
            Ok(Outcome::new(result, table)?.with_graphs(vec![g]))
        }
        SumfreeAction::Henson => {
            let k = *a.k.get_or_insert(2);
            let window = *a.window.get_or_insert(32);
            let bound = *a.bound.get_or_insert(1_000_000);
            let set = match &a.set {
                Some(text) => parse_integer_set(text)?,
                None => greedy_gap_set(k, window)?.elements().to_vec(),
            };
            let r = henson_window_check(&set, k, window, bound, exec)?;
            let mut table = Table::new(["u", "v"]);
            let join = |s: &[u64]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
            for o in &r.obstructions {
                table.push([join(&o.u), join(&o.v)]);
            }
            let result = json!({ "set_size": set.len(), "set_max": set.iter().max(), "passed": r.passed(), "report": r });
            Outcome::new(result, table)
        }
        SumfreeAction::Greedy => {
            let k = *a.k.get_or_insert(2);
            let window = *a.window.get_or_insert(32);
            let s = greedy_gap_set(k, window)?;
            let mut table = Table::new(["element"]);
            for x in s.elements() {
                table.push([x]);
            }
            Outcome::new(json!({ "k": k, "window": window, "set": s }), table)
        }
    }
}
