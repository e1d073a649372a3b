//! Semicolon-separated cache files with a provenance header and an end marker.
//!
//! Layout:
//! ```text
//! #ringel-hall-cache;kind=hall;digest=<sha256>;q=3;bound=1,1
//! X;Y;L;F
//! ...rows...
//! #end;rows=<n>
//! ```
//! A file whose header differs from the expected one, or whose end marker is
//! missing or disagrees with the row count, is rejected as a whole.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheHeader {
    pub kind: String,
    pub digest: String,
    pub q: usize,
    pub bound: String,
}

impl CacheHeader {
    fn line(&self) -> String {
        format!("#ringel-hall-cache;kind={};digest={};q={};bound={}", self.kind, self.digest, self.q, self.bound)
    }
}

pub fn store(path: &Path, header: &CacheHeader, columns: &str, rows: &[String]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut w = std::io::BufWriter::new(fs::File::create(&tmp)?);
        writeln!(w, "{}", header.line())?;
        writeln!(w, "{columns}")?;
        for r in rows {
            writeln!(w, "{r}")?;
        }
        writeln!(w, "#end;rows={}", rows.len())?;
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// `Ok(None)` when the file does not exist; `Err(Error::Cache)` on header
/// mismatch or corruption; otherwise the rows split on `;`.
pub fn load(path: &Path, header: &CacheHeader, columns: &str) -> Result<Option<Vec<Vec<String>>>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.lines();
    let first = lines.next().ok_or_else(|| Error::Cache(format!("{}: empty file", path.display())))?;
    if first != header.line() {
        return Err(Error::Cache(format!("{}: header mismatch (found `{first}`)", path.display())));
    }
    if lines.next() != Some(columns) {
        return Err(Error::Cache(format!("{}: missing column line", path.display())));
    }
    let width = columns.split(';').count();
    let mut rows = Vec::new();
    let mut ended = false;
    for line in lines {
        if ended {
            return Err(Error::Cache(format!("{}: data after end marker", path.display())));
        }
        if let Some(rest) = line.strip_prefix("#end;rows=") {
            let n: usize = rest.parse().map_err(|_| Error::Cache(format!("{}: bad end marker", path.display())))?;
            if n != rows.len() {
                return Err(Error::Cache(format!("{}: expected {n} rows, found {}", path.display(), rows.len())));
            }
            ended = true;
            continue;
        }
        let cells: Vec<String> = line.split(';').map(str::to_string).collect();
        if cells.len() != width {
            return Err(Error::Cache(format!("{}: malformed row `{line}`", path.display())));
        }
        rows.push(cells);
    }
    if !ended {
        return Err(Error::Cache(format!("{}: truncated (no end marker)", path.display())));
    }
    Ok(Some(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> CacheHeader {
        CacheHeader { kind: "hall".into(), digest: "abc".into(), q: 3, bound: "1,1".into() }
    }

    #[test]
    fn round_trip_and_rejections() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        assert!(load(&p, &header(), "X;Y;L;F").unwrap().is_none());
        let rows = vec!["0;0;0;1".to_string(), "1*1;0;1*1;1".to_string()];
        store(&p, &header(), "X;Y;L;F", &rows).unwrap();
        let got = load(&p, &header(), "X;Y;L;F").unwrap().unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[1], vec!["1*1", "0", "1*1", "1"]);

        let mut other = header();
        other.digest = "def".into();
        assert!(matches!(load(&p, &other, "X;Y;L;F"), Err(Error::Cache(_))));

        let text = fs::read_to_string(&p).unwrap();
        let cut = &text[..text.len() - 12];
        fs::write(&p, cut).unwrap();
        assert!(matches!(load(&p, &header(), "X;Y;L;F"), Err(Error::Cache(_))));
    }
}
