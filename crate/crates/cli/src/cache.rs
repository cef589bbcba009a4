//! On-disk store of Hilbert class polynomials: a JSON array of
//! `{"disc", "coeffs", "residual"}` records, all values decimal strings.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub disc: String,
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

/// Reads the cache. A missing file is empty; an unreadable or malformed
/// one is reported on stderr and treated as empty.
pub fn load(path: &Path) -> Vec<Record> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Vec::new(),
        Err(e) => {
            eprintln!("warning: ignoring cache {}: {e}", path.display());
            return Vec::new();
        }
    };
    match serde_json::from_str::<Vec<Record>>(&text) {
        Ok(records) if records.iter().all(valid) => records,
        Ok(_) => {
            eprintln!("warning: ignoring cache {}: malformed record", path.display());
            Vec::new()
        }
        Err(e) => {
            eprintln!("warning: ignoring corrupt cache {}: {e}", path.display());
            Vec::new()
        }
    }
}

fn valid(r: &Record) -> bool {
    let int = |s: &String| s.parse::<rug::Integer>().is_ok();
    int(&r.disc) && !r.coeffs.is_empty() && r.coeffs.iter().all(int)
}

pub fn lookup(records: &[Record], disc: i64) -> Option<&Record> {
    let key = disc.to_string();
    records.iter().find(|r| r.disc == key)
}

/// Replaces any record for the same discriminant and rewrites the file atomically.
pub fn store(path: &Path, mut records: Vec<Record>, record: Record) -> io::Result<()> {
    records.retain(|r| r.disc != record.disc);
    records.push(record);
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, &records)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(disc: i64, c0: &str) -> Record {
        Record { disc: disc.to_string(), coeffs: vec![c0.into(), "1".into()], residual: Some("0e0".into()) }
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        assert!(load(&path).is_empty());
        store(&path, Vec::new(), rec(-3, "0")).unwrap();
        store(&path, load(&path), rec(-4, "-1728")).unwrap();
        store(&path, load(&path), rec(-3, "0")).unwrap();
        let records = load(&path);
        assert_eq!(records.len(), 2);
        assert_eq!(lookup(&records, -4), Some(&rec(-4, "-1728")));
        assert!(lookup(&records, -7).is_none());
    }

    #[test]
    fn record_without_residual_parses() {
        let r: Vec<Record> = serde_json::from_str(r#"[{"disc": "-3", "coeffs": ["0", "1"]}]"#).unwrap();
        assert!(r[0].residual.is_none());
    }
}
