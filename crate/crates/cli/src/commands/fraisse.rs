use anyhow::Result;
use homlab::fraisse::amalgam::{check_hereditary, AmalgamVerdict};
use homlab::fraisse::{check_ap, check_jep, limit_approximation, ClassSpec};
use homlab::graph::FiniteGraph;
use homlab::io::structure_to_json;
use homlab::Execution;
use serde_json::json;

use crate::args::{FraisseArgs, FraisseCheck};
use crate::report::{Outcome, Table};

pub const DEFAULT_LIMIT_SEED: u64 = 0x00F1_A155;

fn verdict_name(v: &AmalgamVerdict) -> String {
    match v {
        AmalgamVerdict::Solved { .. } => "solved".into(),
        AmalgamVerdict::UnsolvableUpTo { bound } => format!("unsolvable-up-to({bound})"),
    }
}

pub fn run(a: &mut FraisseArgs, exec: Execution) -> Result<Outcome> {
    let class = a.class.get_or_insert_with(|| "graphs".into()).clone();
    let spec = ClassSpec::parse(&class)?;
    let check = *a.check.get_or_insert(FraisseCheck::Ap);
    let mut table = Table::new(["class", "check", "n", "strong", "holds", "instances", "witness_verdict"]);
    match check {
        FraisseCheck::Limit => {
            let stages = *a.stages.get_or_insert(20);
            let seed = *a.seed.get_or_insert(DEFAULT_LIMIT_SEED);
            let approx = limit_approximation(&spec, stages, seed)?;
            table = Table::new(["class", "stages", "seed", "window_level", "guaranteed_level"]);
            table.push([
                class.clone(),
                stages.to_string(),
                seed.to_string(),
                approx.window_level.to_string(),
                approx.guaranteed_level.to_string(),
            ]);
            let graphs: Vec<FiniteGraph> = FiniteGraph::from_structure(&approx.structure).into_iter().collect();
            let result = json!({
                "class": spec.kind().to_string(),
                "stages": stages,
                "window_level": approx.window_level,
                "guaranteed_level": approx.guaranteed_level,
                "structure": serde_json::from_str::<serde_json::Value>(&structure_to_json(&approx.structure))?,
            });
            Ok(Outcome::new(result, table)?.with_graphs(graphs))
        }
        FraisseCheck::Hereditary => {
            let n = *a.n.get_or_insert(4);
            let r = check_hereditary(&spec, n, exec)?;
            table.push([class, "hereditary".into(), n.to_string(), String::new(), r.holds.to_string(), r.members_checked.to_string(), String::new()]);
            Outcome::new(json!({ "class": spec.kind().to_string(), "report": r }), table)
        }
        FraisseCheck::Jep => {
            let n = *a.n.get_or_insert(3);
            let r = check_jep(&spec, n, exec)?;
            let v = r.witness.as_ref().map_or(String::new(), |w| verdict_name(&w.verdict));
            table.push([class, "jep".into(), n.to_string(), String::new(), r.holds.to_string(), r.pairs.to_string(), v]);
            Outcome::new(json!({ "class": spec.kind().to_string(), "report": r }), table)
        }
        FraisseCheck::Ap => {
            let n = *a.n.get_or_insert(3);
            let strong = *a.strong.get_or_insert(false);
            let r = check_ap(&spec, n, strong, exec)?;
            let v = r.witness.as_ref().map_or(String::new(), |w| verdict_name(&w.verdict));
            table.push([class, "ap".into(), n.to_string(), strong.to_string(), r.holds.to_string(), r.instances.to_string(), v]);
            Outcome::new(json!({ "class": spec.kind().to_string(), "report": r }), table)
        }
    }
}
