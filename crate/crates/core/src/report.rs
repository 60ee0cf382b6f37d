//! TSV and JSON artifacts under the `meshknit/1` schema.
//!
//! JSON artifacts are `{schema, config, kind, result}`. TSV artifacts start
//! with `# schema: ...` and `# config: <json>` comment lines followed by a
//! header row. Vertices are written in the CLI vertex syntax and rows are
//! sorted by vertex.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::center::{ObstructionReport, PropagationReport, SupportReport};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use crate::mesh::{HomSpace, LayerTable, SignReport};
use crate::oracle::{HomGrid, Verdict};

pub const SCHEMA: &str = "meshknit/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            other => Err(Error::Unsupported(format!("unknown format {other:?} (expected tsv or json)"))),
        }
    }
}

/// Everything that determines an artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub field: String,
    pub window: u32,
    pub k_max: u32,
    pub format: Format,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(command: &str, field: FieldSpec, window: u32, k_max: u32, format: Format, seed: u64) -> Result<Self> {
        if window == 0 {
            return Err(Error::Precondition("window must be at least 1".into()));
        }
        Ok(RunConfig {
            command: command.to_string(),
            field: field.to_string(),
            window,
            k_max,
            format,
            seed,
            params: BTreeMap::new(),
        })
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// An artifact body in both encodings.
#[derive(Clone, Debug, PartialEq)]
pub struct Body {
    pub kind: &'static str,
    pub json: Value,
    pub tsv: String,
}

pub fn render(config: &RunConfig, body: &Body) -> String {
    match config.format {
        Format::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "config": config,
                "kind": body.kind,
                "result": body.json,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("artifact serializes");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let cfg = serde_json::to_string(config).expect("config serializes");
            format!("# schema: {SCHEMA}\n# kind: {}\n# config: {cfg}\n{}", body.kind, body.tsv)
        }
    }
}

/// Rows = vertices, columns = layers `0..=valid_through`.
pub fn layer_table(t: &LayerTable) -> Body {
    let cols = t.valid_through;
    let mut rows: BTreeMap<_, Vec<i64>> = BTreeMap::new();
    for ((k, v), m) in &t.layers {
        if *k <= cols {
            rows.entry(*v).or_insert_with(|| vec![0; cols as usize + 1])[*k as usize] = *m;
        }
    }
    let mut tsv = String::from("vertex");
    for k in 0..=cols {
        tsv.push_str(&format!("\tL{k}"));
    }
    tsv.push_str("\ttotal\n");
    let mut json_rows = Vec::new();
    for (v, ms) in &rows {
        tsv.push_str(&v.to_string());
        for m in ms {
            tsv.push_str(&format!("\t{m}"));
        }
        let total: i64 = ms.iter().sum();
        tsv.push_str(&format!("\t{total}\n"));
        json_rows.push(json!({"vertex": v.to_string(), "layers": ms, "total": total}));
    }
    tsv.push_str(&format!(
        "# target: {}\tmax_layer: {}\tvalid_through: {}\ttruncated: {}\n",
        t.target,
        t.max_layer,
        t.valid_through,
        t.truncated()
    ));
    Body {
        kind: "layer_table",
        json: json!({
            "target": t.target.to_string(),
            "max_layer": t.max_layer,
            "valid_through": t.valid_through,
            "truncated": t.truncated(),
            "factor_count": t.factor_count(),
            "rows": json_rows,
        }),
        tsv,
    }
}

/// One row per Hom space.
pub fn hom_spaces(spaces: &[HomSpace]) -> Body {
    let mut tsv = String::from("source\ttarget\tgrade\tpaths\trelation_rank\tdim\n");
    let mut rows = Vec::new();
    for h in spaces {
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            h.source, h.target, h.grade, h.basis_dim, h.relation_rank, h.dim
        ));
        rows.push(json!({
            "source": h.source.to_string(),
            "target": h.target.to_string(),
            "grade": h.grade,
            "paths": h.basis_dim,
            "relation_rank": h.relation_rank,
            "dim": h.dim,
        }));
    }
    Body { kind: "hom_spaces", json: json!({ "rows": rows }), tsv }
}

/// Stable Hom dimensions between `J_1..J_{n-1}`.
pub fn hom_grid(g: &HomGrid) -> Body {
    let labels: Vec<String> = (1..=g.dims.len()).map(|i| format!("J{i}")).collect();
    let mut tsv = format!("source\t{}\n", labels.join("\t"));
    for (label, row) in labels.iter().zip(&g.dims) {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        tsv.push_str(&format!("{label}\t{}\n", cells.join("\t")));
    }
    Body { kind: "hom_grid", json: json!({"n": g.n, "objects": labels, "dims": g.dims}), tsv }
}

pub fn support(s: &SupportReport, propagation: Option<&PropagationReport>) -> Body {
    let support: Vec<String> = s.element_support.iter().map(ToString::to_string).collect();
    let per_vertex: BTreeMap<String, Vec<String>> = s
        .per_vertex_hom_support
        .iter()
        .map(|(v, ws)| (v.to_string(), ws.iter().map(ToString::to_string).collect()))
        .collect();
    let mut tsv = String::from("vertex\tsupported\thom_support_size\thom_support\n");
    for (v, finite) in &s.finite_flags {
        let ws = s.per_vertex_hom_support.get(v);
        let list: Vec<String> = ws.map(|w| w.iter().map(ToString::to_string).collect()).unwrap_or_default();
        tsv.push_str(&format!(
            "{v}\t{}\t{}\t{}\n",
            u8::from(s.element_support.contains(v)),
            if *finite { list.len().to_string() } else { "inf".into() },
            list.join(" ")
        ));
    }
    let mut doc = json!({
        "degree": s.degree,
        "kind": s.kind,
        "window": s.window,
        "support": support,
        "per_vertex": per_vertex,
    });
    if let Some(p) = propagation {
        doc["components"] = json!(p.components);
        doc["hypotheses"] = json!(p.hypotheses);
        doc["applicable"] = json!(p.applicable);
        doc["conclusion"] = json!(p.conclusion);
        doc["note"] = json!(p.note);
        for (h, ok) in &p.hypotheses {
            tsv.push_str(&format!("# hypothesis {h}: {ok}\n"));
        }
        tsv.push_str(&format!("# applicable: {}\tconclusion: {}\n", p.applicable, p.conclusion));
    }
    Body { kind: "support_report", json: doc, tsv }
}

pub fn obstruction(r: &ObstructionReport) -> Body {
    let tsv = format!(
        "degree\twindow\trim_vertices\tcomposites\tcertified\tsmall_window\twitness\n{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        r.degree,
        r.window,
        r.rim_vertices,
        r.composites,
        r.certified,
        r.small_window,
        r.witness.as_deref().unwrap_or("-")
    );
    Body { kind: "obstruction", json: serde_json::to_value(r).expect("report serializes"), tsv }
}

pub fn verdicts(vs: &[Verdict]) -> Body {
    let mut tsv = String::from("check\tn\tpassed\twitness\n");
    for v in vs {
        tsv.push_str(&format!("{}\t{}\t{}\t{}\n", v.check, v.n, v.passed, v.witness.as_deref().unwrap_or("-")));
    }
    let all = vs.iter().all(|v| v.passed);
    Body { kind: "verdicts", json: json!({"all_passed": all, "verdicts": vs}), tsv }
}

pub fn sign_report(r: &SignReport) -> Body {
    let mut tsv = String::from("path\tsign\tflips\tclass\n");
    let mut paths = Vec::new();
    for p in &r.paths {
        let path = crate::mesh::fmt_path(&p.path);
        tsv.push_str(&format!("{path}\t{}\t{}\t{}\n", p.sign, p.flips, p.class));
        paths.push(json!({"path": path, "sign": p.sign, "flips": p.flips, "class": p.class}));
    }
    let verified = r.adjacent_pairs.iter().filter(|a| a.verified).count();
    tsv.push_str(&format!(
        "# source: {}\ttarget: {}\tgrade: {}\tclasses: {}\tadjacent_pairs: {}\tverified: {}\tcounterexamples: {}\n",
        r.source,
        r.target,
        r.grade,
        r.classes,
        r.adjacent_pairs.len(),
        verified,
        r.counterexamples.len()
    ));
    for c in &r.counterexamples {
        tsv.push_str(&format!("# counterexample: {c}\n"));
    }
    Body {
        kind: "sign_report",
        json: json!({
            "source": r.source.to_string(),
            "target": r.target.to_string(),
            "grade": r.grade,
            "classes": r.classes,
            "dense": r.dense,
            "ok": r.ok(),
            "paths": paths,
            "adjacent_pairs": r.adjacent_pairs,
            "counterexamples": r.counterexamples,
        }),
        tsv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Vertex;

    fn config(format: Format) -> RunConfig {
        RunConfig::new("knit", FieldSpec::Rationals, 2, 3, format, 0).unwrap().param("vertex", "J2")
    }

    fn table() -> LayerTable {
        let mut t = LayerTable::new(Vertex::tube(2), 3);
        t.add(0, Vertex::tube(2), 1);
        t.add(1, Vertex::tube(1), 1);
        t.add(1, Vertex::tube(3), 1);
        t.add(2, Vertex::tube(2), 1);
        t.valid_through = 2;
        t
    }

    #[test]
    fn layer_table_tsv_rows() {
        let body = layer_table(&table());
        let lines: Vec<&str> = body.tsv.lines().collect();
        assert_eq!(lines[0], "vertex\tL0\tL1\tL2\ttotal");
        assert_eq!(lines[1], "J1\t0\t1\t0\t1");
        assert_eq!(lines[2], "J2\t1\t0\t1\t2");
        assert!(lines[4].contains("truncated: true"));
    }

    #[test]
    fn json_envelope() {
        let s = render(&config(Format::Json), &layer_table(&table()));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["config"]["params"]["vertex"], "J2");
        assert_eq!(v["result"]["valid_through"], 2);
        assert_eq!(v["result"]["rows"][1]["layers"], json!([1, 0, 1]));
        let t = render(&config(Format::Tsv), &layer_table(&table()));
        assert!(t.starts_with("# schema: meshknit/1\n"));
    }

    #[test]
    fn formats_and_window() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
        assert!(RunConfig::new("knit", FieldSpec::Rationals, 0, 1, Format::Tsv, 0).is_err());
    }

    #[test]
    fn grid_rows() {
        let g = HomGrid { n: 3, dims: vec![vec![1, 1], vec![1, 1]] };
        assert_eq!(hom_grid(&g).tsv, "source\tJ1\tJ2\nJ1\t1\t1\nJ2\t1\t1\n");
    }
}
