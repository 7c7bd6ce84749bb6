//! The JSON report emitted for every computed invariant, with a reader for
//! round trips.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tool {
    Cotor,
    Hh,
    Ext,
    Simplicial,
}

impl Tool {
    pub fn name(self) -> &'static str {
        match self {
            Tool::Cotor => "cotor",
            Tool::Hh => "hh",
            Tool::Ext => "ext",
            Tool::Simplicial => "simplicial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub object: String,
    pub tool: Tool,
    pub dims: Vec<usize>,
    pub degree_cap: Option<u32>,
    pub n_max: usize,
    pub timings_ms: Vec<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    /// Header plus one row per degree.
    pub fn to_tsv(&self) -> String {
        let cap = self.degree_cap.map_or("-".to_string(), |c| c.to_string());
        let mut out = String::from("object\ttool\tdegree_cap\tn\tdim\n");
        for (n, d) in self.dims.iter().enumerate() {
            out.push_str(&format!("{}\t{}\t{cap}\t{n}\t{d}\n", self.object, self.tool.name()));
        }
        out
    }
}

/// Reads one report per non-empty line.
pub fn read_reports(input: impl BufRead) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(Report::from_json(&line).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse { line: i + 1, message },
            other => other,
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = Report {
            object: "div(8)".into(),
            tool: Tool::Cotor,
            dims: vec![1, 1, 0, 0, 0],
            degree_cap: Some(8),
            n_max: 4,
            timings_ms: vec![3],
        };
        let text = r.to_json();
        assert!(text.contains("\"tool\":\"cotor\""));
        assert_eq!(Report::from_json(&text).unwrap(), r);
        let two = format!("{text}\n\n{text}\n");
        assert_eq!(read_reports(two.as_bytes()).unwrap(), vec![r.clone(), r]);
        assert!(matches!(read_reports("{\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
    }
}
