use std::cell::RefCell;
use std::collections::HashMap;
use std::io::{BufRead, Write};

use dashmap::DashMap;

use crate::diagrams::Share;
use crate::error::{Error, Result};
use crate::exactalg::PolyC1C2X;

/// Tag written as the first line of an on-disk normal-form cache.
pub const CACHE_FORMAT: &str = "sl2share-nf-v1";

/// Map from canonical shares to normal forms.
///
/// Implementations may drop concurrent updates but must never hand out a
/// partially written value.
pub trait MemoStore: Default {
    fn get(&self, key: &Share) -> Option<PolyC1C2X>;
    fn insert(&self, key: Share, value: PolyC1C2X);
    fn len(&self) -> usize;
    fn entries(&self) -> Vec<(Share, PolyC1C2X)>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Single-threaded store, no synchronization.
#[derive(Default)]
pub struct LocalMemo(RefCell<HashMap<Share, PolyC1C2X>>);

impl MemoStore for LocalMemo {
    fn get(&self, key: &Share) -> Option<PolyC1C2X> {
        self.0.borrow().get(key).cloned()
    }

    fn insert(&self, key: Share, value: PolyC1C2X) {
        self.0.borrow_mut().insert(key, value);
    }

    fn len(&self) -> usize {
        self.0.borrow().len()
    }

    fn entries(&self) -> Vec<(Share, PolyC1C2X)> {
        self.0.borrow().iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

/// Sharded concurrent store; an engine over it is `Sync`.
#[derive(Default)]
pub struct SharedMemo(DashMap<Share, PolyC1C2X>);

impl MemoStore for SharedMemo {
    fn get(&self, key: &Share) -> Option<PolyC1C2X> {
        self.0.get(key).map(|v| v.clone())
    }

    fn insert(&self, key: Share, value: PolyC1C2X) {
        self.0.insert(key, value);
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn entries(&self) -> Vec<(Share, PolyC1C2X)> {
        self.0.iter().map(|e| (e.key().clone(), e.value().clone())).collect()
    }
}

/// Writes entries as line-delimited JSON, sorted so the file is deterministic.
pub fn write_cache(entries: &[(Share, PolyC1C2X)], mut out: impl Write) -> std::io::Result<()> {
    let mut lines: Vec<String> = entries
        .iter()
        .map(|(s, v)| serde_json::json!({"share": s.to_string(), "nf": v.to_json()}).to_string())
        .collect();
    lines.sort();
    writeln!(out, "{}", serde_json::json!({ "format": CACHE_FORMAT }))?;
    for l in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

/// Reads a cache written by [`write_cache`]. A missing or foreign format tag is
/// an error so stale files are never trusted.
pub fn read_cache(input: impl BufRead) -> Result<Vec<(Share, PolyC1C2X)>> {
    let mut lines = input.lines();
    let head = lines
        .next()
        .transpose()
        .map_err(|e| Error::Parse(e.to_string()))?
        .ok_or_else(|| Error::Parse("empty cache file".into()))?;
    let head: serde_json::Value = serde_json::from_str(&head).map_err(|e| Error::Parse(e.to_string()))?;
    if head.get("format").and_then(|f| f.as_str()) != Some(CACHE_FORMAT) {
        return Err(Error::Parse(format!("cache format is not {CACHE_FORMAT}")));
    }
    let mut out = Vec::new();
    for line in lines {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()))?;
        let share: Share = v
            .get("share")
            .and_then(|s| s.as_str())
            .ok_or_else(|| Error::Parse("cache line without share".into()))?
            .parse()?;
        let nf = PolyC1C2X::from_json(v.get("nf").unwrap_or(&serde_json::Value::Null))?;
        out.push((share, nf));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_roundtrip() {
        let entries = vec![
            ("1 | 1".parse().unwrap(), PolyC1C2X::x()),
            ("1 1 |".parse().unwrap(), PolyC1C2X::c1()),
        ];
        let mut buf = Vec::new();
        write_cache(&entries, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(r#"{"format":"sl2share-nf-v1"}"#));
        let mut back = read_cache(&buf[..]).unwrap();
        back.sort_by_key(|(s, _)| s.to_string());
        let mut want = entries;
        want.sort_by_key(|(s, _)| s.to_string());
        assert_eq!(back, want);
    }

    #[test]
    fn rejects_foreign_format() {
        assert!(read_cache(&b"{\"format\":\"other\"}\n"[..]).is_err());
        assert!(read_cache(&b""[..]).is_err());
    }
}
