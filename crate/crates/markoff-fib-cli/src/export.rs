//! Serialization of triples, trees, and reports.
//!
//! Every big integer is rendered as a decimal string so that consumers
//! never face precision loss, and JSON objects serialize with sorted
//! keys (the default map is ordered), so exports are byte-stable and
//! safe to diff. Every export ends in a newline.

use std::collections::BTreeSet;

use markoff_fib::oracle_search::ClassifiedTriple;
use markoff_fib::principal_branches::{BranchRoot, Classification};
use markoff_fib::{SearchReport, TreeNode, Triple};
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

/// A triple as `["a","b","c"]`.
pub fn triple_value(t: &Triple) -> Value {
    let [a, b, c] = t.components();
    json!([a.to_string(), b.to_string(), c.to_string()])
}

/// A reduced rational as `"p"` when integral, `"p/q"` otherwise.
pub fn ratio_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A tree as a node list; parents are indices into the same list.
pub fn tree_value(nodes: &[TreeNode]) -> Value {
    let list: Vec<Value> = nodes
        .iter()
        .map(|n| {
            json!({
                "depth": n.depth,
                "move": n.produced_by.label(),
                "parent": n.parent,
                "triple": triple_value(n.triple.as_triple()),
            })
        })
        .collect();
    json!({ "nodes": list })
}

pub fn classified_value(ct: &ClassifiedTriple) -> Value {
    json!({
        "fib_indices": ct.fib_indices,
        "m": ct.m.to_string(),
        "minimal": ct.minimal,
        "phi_gap": ct.phi_gap.to_string(),
        "triple": triple_value(ct.triple.as_triple()),
    })
}

pub fn report_value(r: &SearchReport) -> Value {
    let mismatches: Vec<Value> = r
        .mismatches
        .iter()
        .map(|mm| {
            json!({
                "actual": mm.actual,
                "expected": mm.expected,
                "triple": triple_value(&mm.triple),
            })
        })
        .collect();
    let triples: Vec<Value> = r.triples.iter().map(classified_value).collect();
    json!({
        "bound": r.bound.to_string(),
        "m": r.m.as_ref().map(|m| m.to_string()),
        "mismatches": mismatches,
        "triples": triples,
    })
}

pub fn roots_value(roots: &[BranchRoot]) -> Value {
    let list: Vec<Value> = roots
        .iter()
        .map(|b| {
            json!({
                "branch_start": triple_value(&b.branch_start),
                "label": b.ell0,
                "minimal_root": triple_value(b.minimal_root.as_triple()),
            })
        })
        .collect();
    Value::Array(list)
}

pub fn classification_value(c: &Classification) -> Value {
    json!({
        "alpha": c.alpha.to_string(),
        "b": c.b.to_string(),
        "c": c.c.to_string(),
        "integer_entries": c.integer_entries,
        "k": c.k,
        "m": ratio_string(&c.m),
        "m_positive": c.m_positive,
        "minimal": c.minimal,
        "n": c.n,
        "ordered": c.ordered,
        "r": c.r,
    })
}

/// Renders any value as pretty JSON with a trailing newline.
pub fn export_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("in-memory JSON serialization cannot fail");
    s.push('\n');
    s
}

/// Renders a tree as a DOT digraph. Nodes carry the triple as their
/// label; edges carry the move that produced the child. Nodes in `bold`
/// (and edges between two such nodes) get `style=bold`, which is how
/// a principal branch is highlighted inside its tree.
pub fn export_dot(nodes: &[TreeNode], bold: &BTreeSet<Triple>) -> String {
    let mut out = String::from("digraph markoff_tree {\n  node [shape=box];\n");
    for (i, n) in nodes.iter().enumerate() {
        let t = n.triple.as_triple();
        if bold.contains(t) {
            out.push_str(&format!("  n{i} [label=\"{t}\" style=bold];\n"));
        } else {
            out.push_str(&format!("  n{i} [label=\"{t}\"];\n"));
        }
    }
    for (i, n) in nodes.iter().enumerate() {
        if let Some(p) = n.parent {
            let both =
                bold.contains(n.triple.as_triple()) && bold.contains(nodes[p].triple.as_triple());
            let style = if both { " style=bold" } else { "" };
            out.push_str(&format!(
                "  n{p} -> n{i} [label=\"{}\"{style}];\n",
                n.produced_by.label()
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ratio_strings_cover_both_shapes() {
        let int = BigRational::from_integer(BigInt::from(6));
        assert_eq!(ratio_string(&int), "6");
        let frac = BigRational::new(BigInt::from(38), BigInt::from(3));
        assert_eq!(ratio_string(&frac), "38/3");
    }

    #[test]
    fn json_keys_come_out_sorted() {
        let v = json!({"zeta": 1, "alpha": 2, "mid": 3});
        let s = export_json(&v);
        let za = s.find("zeta").unwrap();
        let aa = s.find("alpha").unwrap();
        let ma = s.find("mid").unwrap();
        assert!(aa < ma && ma < za);
        assert!(s.ends_with('\n'));
    }

    #[test]
    fn dot_marks_only_requested_nodes_bold() {
        use markoff_fib::markoff_core::{order_triple, tree_enumerate};
        use num_bigint::BigUint;

        let root = order_triple(&Triple::from((4u64, 6, 72)));
        let nodes = tree_enumerate(&root, &BigUint::from(2_000u32), 1).unwrap();
        let mut bold = BTreeSet::new();
        bold.insert(Triple::from((6u64, 72, 1292)));
        let dot = export_dot(&nodes, &bold);
        assert!(dot.contains("[label=\"(6,72,1292)\" style=bold]"));
        assert!(dot.contains("[label=\"(4,6,72)\"]"));
        assert!(dot.contains("label=\"v1\""));
        assert!(dot.ends_with("}\n"));
    }
}
