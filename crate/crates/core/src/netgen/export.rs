//! Text serializations: edge lists, degree-histogram CSV and GEXF 1.3.

use std::io::{BufRead, Write};

use super::{DegreeHistogram, Graph};
use crate::error::{Error, Result};

/// Writes `# nodes N` followed by one `i j` line per edge (0-based, `i < j`).
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# nodes {}", g.node_count())?;
    for (i, j) in g.edges() {
        writeln!(w, "{i} {j}")?;
    }
    Ok(())
}

/// Reads the format produced by [`write_edge_list`]. Without a `# nodes`
/// header the node count is one past the largest index seen.
pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph> {
    const WHAT: &str = "edge list";
    let mut declared = None;
    let mut edges = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<edge list>", e))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(n) = rest.trim().strip_prefix("nodes") {
                declared = Some(n.trim().parse::<usize>().map_err(|e| Error::Parse {
                    what: WHAT,
                    line: idx + 1,
                    message: e.to_string(),
                })?);
            }
            continue;
        }
        let mut parts = line.split_whitespace().map(str::parse::<usize>);
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => edges.push((a, b)),
            _ => {
                return Err(Error::Parse {
                    what: WHAT,
                    line: idx + 1,
                    message: format!("expected two node indices, got `{line}`"),
                })
            }
        }
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

pub fn write_degree_histogram_csv<W: Write>(h: &DegreeHistogram, mut w: W) -> std::io::Result<()> {
    writeln!(w, "k,count")?;
    for (k, c) in &h.entries {
        writeln!(w, "{k},{c}")?;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub enum GexfValues {
    Text(Vec<String>),
    Double(Vec<f64>),
    Integer(Vec<i64>),
}

impl GexfValues {
    fn type_name(&self) -> &'static str {
        match self {
            GexfValues::Text(_) => "string",
            GexfValues::Double(_) => "double",
            GexfValues::Integer(_) => "integer",
        }
    }

    fn len(&self) -> usize {
        match self {
            GexfValues::Text(v) => v.len(),
            GexfValues::Double(v) => v.len(),
            GexfValues::Integer(v) => v.len(),
        }
    }

    fn render(&self, i: usize) -> String {
        match self {
            GexfValues::Text(v) => escape_xml(&v[i]),
            GexfValues::Double(v) => v[i].to_string(),
            GexfValues::Integer(v) => v[i].to_string(),
        }
    }
}

/// A per-node attribute column.
#[derive(Debug, Clone)]
pub struct GexfAttribute {
    pub title: String,
    pub values: GexfValues,
}

/// Writes an undirected static GEXF 1.3 document. `labels`, when given,
/// supplies one label per node (e.g. the node's id in a parent graph).
pub fn write_gexf<W: Write>(
    g: &Graph,
    mut w: W,
    labels: Option<&[usize]>,
    attributes: &[GexfAttribute],
) -> std::io::Result<()> {
    let n = g.node_count();
    for attr in attributes {
        assert_eq!(attr.values.len(), n, "attribute `{}` length mismatch", attr.title);
    }
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(w, r#"<gexf xmlns="http://gexf.net/1.3" version="1.3">"#)?;
    writeln!(w, r#"  <graph mode="static" defaultedgetype="undirected">"#)?;
    if !attributes.is_empty() {
        writeln!(w, r#"    <attributes class="node">"#)?;
        for (id, attr) in attributes.iter().enumerate() {
            writeln!(
                w,
                r#"      <attribute id="{id}" title="{}" type="{}"/>"#,
                escape_xml(&attr.title),
                attr.values.type_name()
            )?;
        }
        writeln!(w, "    </attributes>")?;
    }
    writeln!(w, "    <nodes>")?;
    for i in 0..n {
        let label = labels.map_or(i, |l| l[i]);
        if attributes.is_empty() {
            writeln!(w, r#"      <node id="{i}" label="{label}"/>"#)?;
            continue;
        }
        writeln!(w, r#"      <node id="{i}" label="{label}">"#)?;
        writeln!(w, "        <attvalues>")?;
        for (id, attr) in attributes.iter().enumerate() {
            writeln!(
                w,
                r#"          <attvalue for="{id}" value="{}"/>"#,
                attr.values.render(i)
            )?;
        }
        writeln!(w, "        </attvalues>")?;
        writeln!(w, "      </node>")?;
    }
    writeln!(w, "    </nodes>")?;
    writeln!(w, "    <edges>")?;
    for (id, (i, j)) in g.edges().enumerate() {
        writeln!(w, r#"      <edge id="{id}" source="{i}" target="{j}"/>"#)?;
    }
    writeln!(w, "    </edges>")?;
    writeln!(w, "  </graph>")?;
    writeln!(w, "</gexf>")
}

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::generate_ba;

    #[test]
    fn triangle_edge_list_text() {
        let g = generate_ba(3, 2, 1).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "# nodes 3\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn edge_list_round_trip_keeps_isolated_nodes() {
        let g = Graph::from_edges(5, [(0, 3), (1, 3)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(read_edge_list(buf.as_slice()).unwrap(), g);

        let headerless = read_edge_list("0 1\n\n1 2\n".as_bytes()).unwrap();
        assert_eq!(headerless.node_count(), 3);
    }

    #[test]
    fn malformed_edge_list_reports_line() {
        let err = read_edge_list("0 1\n2 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn gexf_contains_nodes_edges_and_attributes() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mut buf = Vec::new();
        let attrs = [
            GexfAttribute {
                title: "color".into(),
                values: GexfValues::Text(vec!["blue".into(), "orange".into(), "a&b".into()]),
            },
            GexfAttribute {
                title: "threshold".into(),
                values: GexfValues::Double(vec![0.25, 0.5, 0.75]),
            },
        ];
        write_gexf(&g, &mut buf, Some(&[10, 11, 12]), &attrs).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains(r#"<node id="2" label="12">"#));
        assert!(text.contains(r#"<attribute id="1" title="threshold" type="double"/>"#));
        assert!(text.contains(r#"<attvalue for="0" value="a&amp;b"/>"#));
        assert!(text.contains(r#"<edge id="1" source="1" target="2"/>"#));
        assert_eq!(text.matches("<edge ").count(), 2);
    }
}
