use anyhow::{bail, Result};
use homlab::homogeneity::gardiner::gardiner_classify;
use homlab::homogeneity::schlafli::{missing_induced_subgraphs, realised_labelled_types};
use homlab::homogeneity::{
    cospectral_regularity_sweep, is_homogeneous, is_t_homogeneous, is_t_tuple_regular, regularity_sweep,
    schlafli_graph,
};
use homlab::io::to_graph6;
use homlab::reducts::{reduct_chain, reduct_relation, switch as switch_graph, switching_automorphism_witness, switching_witness, ReductKind};
use homlab::{automorphisms, orbits_on_ktuples, Execution};
use serde_json::json;

use super::{parse_list, read_graph, require};
use crate::args::{GardinerArgs, HomogArgs, ReductsArgs, SchlafliArgs, SpectrumArgs, SwitchArgs};
use crate::report::{Outcome, Table};

pub fn homog(a: &mut HomogArgs, exec: Execution) -> Result<Outcome> {
    if let Some(max_order) = a.sweep {
        let sweep = regularity_sweep(max_order, 5, exec)?;
        let mut table = Table::new(["order", "graphs", "tuple_regular", "homogeneous", "mismatches"]);
        for l in &sweep.levels {
            table.push([l.order, l.graphs, l.tuple_regular, l.homogeneous, l.mismatches.len()]);
        }
        let result = json!({ "agrees": sweep.agrees(), "sweep": sweep });
        return Outcome::new(result, table);
    }
    let g = read_graph(require(&a.input, "input")?)?;
    let mut table = Table::new(["order", "edges", "level", "holds", "failing_level"]);
    let result = match a.t {
        None => {
            let r = is_homogeneous(&g)?;
            table.push([
                g.order().to_string(),
                g.edge_count().to_string(),
                "all".into(),
                r.holds.to_string(),
                r.failing_level.map_or(String::new(), |l| l.to_string()),
            ]);
            json!({
                "graph6": to_graph6(&g),
                "order": g.order(),
                "homogeneous": r.holds,
                "failing_level": r.failing_level,
                "method": r.method,
                "witness": r.witness,
            })
        }
        Some(t) => {
            let h = is_t_homogeneous(&g, t)?;
            let reg = is_t_tuple_regular(&g, t)?;
            table.push([
                g.order().to_string(),
                g.edge_count().to_string(),
                t.to_string(),
                h.holds.to_string(),
                h.failing_level.map_or(String::new(), |l| l.to_string()),
            ]);
            json!({
                "graph6": to_graph6(&g),
                "order": g.order(),
                "t": t,
                "t_homogeneous": h.holds,
                "failing_level": h.failing_level,
                "witness": h.witness,
                "tuple_regular": reg.holds,
                "regularity_witness": reg.witness,
            })
        }
    };
    Ok(Outcome::new(result, table)?.with_graphs(vec![g]))
}

pub fn gardiner(a: &mut GardinerArgs) -> Result<Outcome> {
    let g = read_graph(require(&a.input, "input")?)?;
    let class = gardiner_classify(&g)?;
    let value = serde_json::to_value(&class)?;
    let family = value["family"].as_str().unwrap_or_default().to_string();
    let mut table = Table::new(["graph6", "order", "family"]);
    table.push([to_graph6(&g), g.order().to_string(), family]);
    let result = json!({ "graph6": to_graph6(&g), "order": g.order(), "class": value });
    Ok(Outcome::new(result, table)?.with_graphs(vec![g]))
}

pub fn schlafli(a: &mut SchlafliArgs) -> Result<Outcome> {
    let complement = *a.complement.get_or_insert(false);
    let mut g = schlafli_graph();
    if complement {
        g = g.complement();
    }
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    degrees.dedup();
    let missing: Vec<String> = missing_induced_subgraphs(&g, 4).iter().map(to_graph6).collect();
    let realised = realised_labelled_types(&g, 4).len();
    let orbits = orbits_on_ktuples(&g.to_structure(), 4)?.count();
    let t4 = is_t_homogeneous(&g, 4)?;
    let group = automorphisms(&g.to_structure())?;
    let mut table = Table::new(["order", "degree", "group_order", "missing_4", "realised_labelled_4", "orbits_4", "t4_homogeneous"]);
    table.push([
        g.order().to_string(),
        degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(";"),
        group.order.to_string(),
        missing.join(";"),
        realised.to_string(),
        orbits.to_string(),
        t4.holds.to_string(),
    ]);
    let result = json!({
        "order": g.order(),
        "degrees": degrees,
        "group_order": group.order.to_string(),
        "missing_induced_4": missing,
        "realised_labelled_4": realised,
        "orbits_on_4_tuples": orbits,
        "one_orbit_per_type": realised == orbits,
        "t4_homogeneous": t4.holds,
        "witness": t4.witness,
    });
    Ok(Outcome::new(result, table)?.with_graphs(vec![g]))
}

pub fn spectrum(a: &mut SpectrumArgs, exec: Execution) -> Result<Outcome> {
    let max_order = *a.max_order.get_or_insert(8);
    let levels: Vec<usize> = parse_list(a.levels.get_or_insert_with(|| "1,2".into()), "levels")?;
    let sweep = cospectral_regularity_sweep(max_order, &levels, exec)?;
    let mut table = Table::new(["order", "polynomial", "t", "passing", "failing"]);
    for d in &sweep.disagreements {
        table.push([
            d.order.to_string(),
            d.polynomial.clone(),
            d.t.to_string(),
            d.passing.join(";"),
            d.failing.join(";"),
        ]);
    }
    Outcome::new(sweep, table)
}

pub fn reducts(a: &mut ReductsArgs) -> Result<Outcome> {
    let n = *a.n.get_or_insert(5);
    let mut table = Table::new(["kind", "arity", "aut_order"]);
    match a.kind {
        Some(kind) => {
            let s = reduct_relation(n, kind)?;
            let group = automorphisms(&s)?;
            table.push([kind.to_string(), kind.arity().to_string(), group.order.to_string()]);
            let result = json!({
                "n": n,
                "kind": kind,
                "arity": kind.arity(),
                "tuples": s.tuple_count(),
                "aut_order": group.order.to_string(),
                "generators": group.generators,
            });
            Outcome::new(result, table)
        }
        None => {
            let chain = reduct_chain(n)?;
            for (kind, g) in ReductKind::ALL.iter().zip(&chain.groups) {
                table.push([kind.to_string(), kind.arity().to_string(), g.order.to_string()]);
            }
            let orders: Vec<String> = chain.orders().iter().map(|o| o.to_string()).collect();
            let result = json!({
                "n": n,
                "kinds": chain.kinds,
                "aut_orders": orders,
                "containments": chain.containments,
                "lattice_verified": chain.is_chain(),
            });
            Outcome::new(result, table)
        }
    }
}

pub fn switch(a: &mut SwitchArgs) -> Result<Outcome> {
    let g = read_graph(require(&a.input, "input")?)?;
    let mut table = Table::new(["mode", "found", "set", "graph6"]);
    let join = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";");
    if let Some(set) = &a.set {
        let set: Vec<usize> = parse_list(set, "set")?;
        let h = switch_graph(&g, &set)?;
        table.push(["switch".to_string(), "true".into(), join(&set), to_graph6(&h)]);
        let result = json!({ "input": to_graph6(&g), "set": set, "switched": to_graph6(&h), "edges": h.edge_count() });
        return Ok(Outcome::new(result, table)?.with_graphs(vec![h]));
    }
    let (mode, witness, h) = if let Some(target) = &a.target {
        let h = read_graph(target)?;
        ("target", switching_witness(&g, &h)?, h)
    } else if let Some(perm) = &a.perm {
        let perm: Vec<usize> = parse_list(perm, "perm")?;
        let w = switching_automorphism_witness(&g, &perm)?;
        ("perm", w, g.relabel(&perm))
    } else {
        bail!("switch needs one of --set, --target or --perm");
    };
    table.push([
        mode.to_string(),
        witness.is_some().to_string(),
        witness.as_deref().map_or(String::new(), join),
        to_graph6(&h),
    ]);
    let result = json!({ "input": to_graph6(&g), "mode": mode, "target": to_graph6(&h), "witness": witness });
    Outcome::new(result, table)
}
