use anyhow::{bail, Result};
use homlab::rado::{
    back_and_forth_run, common_neighbour_check, extension_pattern_check, oracle_by_name, reciprocity_check,
};
use homlab::Execution;
use serde_json::json;

use crate::args::{RadoArgs, RadoCheck};
use crate::report::{Outcome, Table};

pub fn run(a: &mut RadoArgs, exec: Execution) -> Result<Outcome> {
    if let Some(pair) = &a.back_and_forth {
        let [source, target] = pair.as_slice() else {
            bail!("--back-and-forth takes two oracle names");
        };
        let steps = *a.steps.get_or_insert(100);
        let bound = *a.bound.get_or_insert(1_000_000);
        let (sa, sb) = (oracle_by_name(source)?, oracle_by_name(target)?);
        let run = back_and_forth_run(sa.as_ref(), sb.as_ref(), steps, bound)?;
        let verified = run.map.verify(sa.as_ref(), sb.as_ref()).is_ok();
        let mut table = Table::new(["step", "source", "target"]);
        for (i, (x, y)) in run.map.pairs.iter().enumerate() {
            table.push([i + 1, *x as usize, *y as usize]);
        }
        let result = json!({
            "domain_size": run.map.len(),
            "verified": verified,
            "succeeded": run.succeeded(),
            "run": run,
        });
        return Outcome::new(result, table);
    }
    let check = *a.check.get_or_insert(RadoCheck::Extension);
    match check {
        RadoCheck::Reciprocity => {
            let below = *a.below.get_or_insert(10_000);
            let r = reciprocity_check(below, exec)?;
            let mut table = Table::new(["p", "q"]);
            for (p, q) in &r.asymmetric {
                table.push([p, q]);
            }
            let result = json!({ "symmetric": r.asymmetric.is_empty(), "report": r });
            Outcome::new(result, table)
        }
        RadoCheck::Extension => {
            let oracle = oracle_by_name(a.oracle.get_or_insert_with(|| "bit".into()))?;
            let m = *a.max_uv.get_or_insert(10);
            let bound = *a.bound.get_or_insert(1 << 20);
            let r = extension_pattern_check(oracle.as_ref(), m, bound, exec)?;
            let mut table = Table::new(["u", "v"]);
            let join = |s: &[u64]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
            for (u, v) in &r.failures {
                table.push([join(u), join(v)]);
            }
            Outcome::new(json!({ "all_witnessed": r.all_witnessed(), "report": r }), table)
        }
        RadoCheck::CommonNeighbours => {
            let oracle = oracle_by_name(a.oracle.get_or_insert_with(|| "bit".into()))?;
            let s = *a.sets_up_to.get_or_insert(3);
            let window = *a.window.get_or_insert(10);
            let bound = *a.bound.get_or_insert(1 << 20);
            let r = common_neighbour_check(oracle.as_ref(), s, window, bound, exec)?;
            let mut table = Table::new(["set"]);
            for f in &r.failures {
                table.push([f.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")]);
            }
            Outcome::new(json!({ "all_succeeded": r.all_succeeded(), "report": r }), table)
        }
    }
}
