use serde::Serialize;
use serde_json::Value;

/// A named residual or flag backing a result.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub name: String,
    pub value: String,
    pub ok: bool,
}

impl Certificate {
    pub fn new(name: &str, value: impl ToString, ok: bool) -> Self {
        Certificate { name: name.to_string(), value: value.to_string(), ok }
    }
}

/// The single JSON document written to stdout.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub certificates: Vec<Certificate>,
    pub precision_bits: u32,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

pub struct Output {
    pub envelope: Envelope,
    pub table: Option<Table>,
}
