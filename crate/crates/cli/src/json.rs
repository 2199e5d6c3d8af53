//! JSON documents: trees, reports, decompositions and leaf weights.
//!
//! Tree schema: `{"root": Node}` with `Node = {"edges": [{"label": string, "child": Node}]}`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use staged_core::analyze::{Component, RootSplit, SaturationReport, ScreenReport};
use staged_core::ideal::PrimeComponent;
use staged_core::poly::Indeterminate;
use staged_core::tree::NodeId;
use staged_core::EventTree;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub root: NodeDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub label: String,
    pub child: NodeDoc,
}

impl TreeDoc {
    pub fn from_tree(t: &EventTree) -> Self {
        TreeDoc {
            root: node_doc(t, t.root()),
        }
    }

    pub fn to_tree(&self) -> Result<EventTree, CliError> {
        build(&self.root)
    }
}

fn node_doc(t: &EventTree, v: NodeId) -> NodeDoc {
    NodeDoc {
        edges: t
            .node(v)
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                label: e.label.name().to_string(),
                child: node_doc(t, e.child),
            })
            .collect(),
    }
}

fn build(n: &NodeDoc) -> Result<EventTree, CliError> {
    if n.edges.is_empty() {
        return Ok(EventTree::leaf());
    }
    let children = n
        .edges
        .iter()
        .map(|e| {
            let label = Indeterminate::new(&e.label)?;
            Ok((label, build(&e.child)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(EventTree::from_floret(children)?)
}

pub fn parse_tree(text: &str) -> Result<EventTree, CliError> {
    let doc: TreeDoc =
        serde_json::from_str(text).map_err(|e| CliError::Syntax(format!("tree JSON: {e}")))?;
    doc.to_tree()
}

pub fn tree_value(t: &EventTree) -> Value {
    serde_json::to_value(TreeDoc::from_tree(t)).expect("tree documents serialize")
}

/// Leaf weights: a JSON array of numbers in depth-first leaf order.
pub fn parse_weights(text: &str) -> Result<Vec<f64>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Syntax(format!("weights JSON: {e}")))
}

pub fn primes_value(primes: &[PrimeComponent]) -> Value {
    Value::Array(
        primes
            .iter()
            .map(|p| json!(p.vars().iter().map(|x| x.name()).collect::<Vec<_>>()))
            .collect(),
    )
}

pub fn screen_value(r: &ScreenReport) -> Value {
    json!({
        "n": r.n,
        "d": r.d,
        "degree": r.degree,
        "passes": r.passes(),
        "conditions": r.conditions.iter().map(|c| json!({
            "name": c.name,
            "holds": c.holds,
            "diagnostics": c.diagnostics,
        })).collect::<Vec<_>>(),
    })
}

fn component_value(c: &Component) -> Value {
    json!({
        "vertices": c.vertices.iter().map(|x| x.name()).collect::<Vec<_>>(),
        "max_degree_vertex": c.max_degree_vertex.as_ref().map(|x| x.name()),
        "covers_all_facets": c.covers_all_facets,
        "facets": c.facets,
    })
}

pub fn complex_value(r: &SaturationReport, splits: &[RootSplit]) -> Value {
    json!({
        "saturated": r.saturated,
        "components": r.components.iter().map(component_value).collect::<Vec<_>>(),
        "root_splits": splits.iter().map(|s| json!({
            "root": s.root.vars().iter().map(|x| x.name()).collect::<Vec<_>>(),
            "parts": s.parts.iter().map(component_value).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_round_trip() {
        let t: EventTree = "t1*(f1 + f2 + f3) + t2*(f1 + f2*(s1 + s2 + s3) + f3)"
            .parse()
            .unwrap();
        let text = serde_json::to_string(&tree_value(&t)).unwrap();
        assert_eq!(parse_tree(&text).unwrap(), t);
        assert_eq!(
            serde_json::to_string(&tree_value(&EventTree::leaf())).unwrap(),
            r#"{"root":{"edges":[]}}"#
        );
    }

    #[test]
    fn rejects_bad_documents() {
        let single = r#"{"root":{"edges":[{"label":"x","child":{"edges":[]}}]}}"#;
        assert_eq!(parse_tree(single).unwrap_err().exit_code(), 3);
        assert_eq!(parse_tree("{").unwrap_err().exit_code(), 2);
        let bad_label = r#"{"root":{"edges":[{"label":"1x","child":{"edges":[]}},{"label":"y","child":{"edges":[]}}]}}"#;
        assert_eq!(parse_tree(bad_label).unwrap_err().exit_code(), 2);
    }
}
