//! Result document assembly: JSON for machines, text for people.

use serde_json::{json, Value};

use poeq_core::io::instance_to_json;
use poeq_core::rational::{format_decimal, format_rational};
use poeq_core::{Player, SolveReport};

use crate::RunResult;

fn report_json(result: &RunResult, report: &SolveReport) -> Value {
    let inst = &result.instance;
    let allocation: Vec<Vec<String>> = Player::ALL
        .iter()
        .map(|p| {
            (0..inst.item_count())
                .map(|j| format_rational(report.allocation.share(*p, j)))
                .collect()
        })
        .collect();
    let splits: Vec<Value> = report
        .splits
        .iter()
        .map(|split| {
            let shares: serde_json::Map<String, Value> = split
                .shares
                .iter()
                .map(|(p, x)| {
                    (inst.player_label(*p).to_string(), Value::String(format_rational(x)))
                })
                .collect();
            json!({ "item": inst.item_label(split.item), "shares": shares })
        })
        .collect();
    json!({
        "algorithm": report.algorithm.label(),
        "path": report.path,
        "iterations": report.iterations,
        "optimal_vertex": report.optimal_vertex,
        "gamma_star": report.gamma_star.coords().iter().map(format_rational).collect::<Vec<_>>(),
        "value": format_rational(&report.value),
        "value_decimal": format_decimal(&report.value, 6),
        "allocation": allocation,
        "splits": splits,
        "split_pattern": report.split_pattern.label(),
    })
}

/// Full machine-readable result: instance echo, graph summary, per-algorithm
/// runs and oracle verdicts.
pub fn result_document(result: &RunResult) -> Value {
    let classes: serde_json::Map<String, Value> = result
        .graph
        .class_histogram()
        .into_iter()
        .map(|(class, count)| (class.label().to_string(), json!(count)))
        .collect();
    let oracles: Vec<Value> = result
        .verdicts
        .iter()
        .map(|v| {
            let mut obj = json!({ "oracle": v.name, "agrees": v.agrees });
            obj.as_object_mut()
                .expect("object")
                .extend(v.detail.as_object().cloned().unwrap_or_default());
            obj
        })
        .collect();
    json!({
        "instance": instance_to_json(&result.instance),
        "graph": {
            "vertices": result.graph.vertex_count(),
            "arcs": result.graph.arcs.len(),
            "classes": classes,
        },
        "runs": result.reports.iter().map(|r| report_json(result, r)).collect::<Vec<_>>(),
        "oracles": oracles,
        "status": if result.ok { "ok" } else { "oracle_mismatch" },
    })
}

pub fn render_text(result: &RunResult) -> String {
    let inst = &result.instance;
    let mut out = String::new();
    out.push_str(&format!(
        "instance: {} items, players {}\n",
        inst.item_count(),
        inst.player_labels().join(", ")
    ));
    for p in Player::ALL {
        let row: Vec<String> = inst.row(p).iter().map(format_rational).collect();
        out.push_str(&format!("  {:>4}: {}\n", inst.player_label(p), row.join("  ")));
    }
    let classes: Vec<String> = result
        .graph
        .class_histogram()
        .into_iter()
        .map(|(class, count)| format!("{class}: {count}"))
        .collect();
    out.push_str(&format!(
        "graph: {} vertices ({}), {} arcs\n",
        result.graph.vertex_count(),
        classes.join(", "),
        result.graph.arcs.len()
    ));
    for report in &result.reports {
        let path: Vec<String> = report.path.iter().map(|v| format!("v{v}")).collect();
        let noun = if report.iterations == 1 { "vertex" } else { "vertices" };
        out.push_str(&format!(
            "{} descent: path {} ({} {noun} visited)\n",
            report.algorithm,
            path.join(" -> "),
            report.iterations
        ));
        let gamma: Vec<String> =
            report.gamma_star.coords().iter().map(format_rational).collect();
        out.push_str(&format!("  gamma* = ({})\n", gamma.join(", ")));
        out.push_str(&format!(
            "  equitable value = {} (~{})\n",
            format_rational(&report.value),
            format_decimal(&report.value, 6)
        ));
        for j in 0..inst.item_count() {
            let shares: Vec<String> = Player::ALL
                .iter()
                .filter_map(|p| {
                    let x = report.allocation.share(*p, j);
                    if format_rational(x) == "0" {
                        None
                    } else {
                        Some(format!("{} {}", inst.player_label(*p), format_rational(x)))
                    }
                })
                .collect();
            out.push_str(&format!("  item {}: {}\n", inst.item_label(j), shares.join(", ")));
        }
        out.push_str(&format!("  split pattern: {}\n", report.split_pattern.label()));
    }
    for v in &result.verdicts {
        let state = if v.agrees { "agrees" } else { "MISMATCH" };
        let detail = v
            .detail
            .as_object()
            .map(|m| {
                m.iter()
                    .map(|(k, val)| format!("{k}={val}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default();
        out.push_str(&format!("oracle {}: {} ({})\n", v.name, state, detail));
    }
    out.push_str(&format!(
        "status: {}\n",
        if result.ok { "ok" } else { "oracle_mismatch" }
    ));
    out
}
