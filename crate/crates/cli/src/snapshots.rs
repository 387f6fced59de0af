//! Ramsey table snapshots as data files.
//!
//! Format: `{"snapshot": "...", "entries": [{"key": "s,t", "lower": ..,
//! "upper": .. | null, "source": ".."}], "multicolor": [...]}`. The two
//! built-in snapshots ship with the binary; arbitrary files load through
//! [`load_snapshot`].

use kneser_core::bounds::{RamseyTable, TableEntry};
use serde::{Deserialize, Serialize};

/// The snapshot reproducing the published grids.
pub const PAPER_2024_JSON: &str = include_str!("../data/snapshots/paper-2024.json");
/// The updatable snapshot.
pub const CURRENT_JSON: &str = include_str!("../data/snapshots/current.json");

#[derive(Serialize, Deserialize)]
struct SnapshotFile {
    snapshot: String,
    entries: Vec<EntryRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    multicolor: Vec<EntryRow>,
}

#[derive(Serialize, Deserialize)]
struct EntryRow {
    key: String,
    lower: u64,
    upper: Option<u64>,
    source: String,
}

fn parse_key(key: &str) -> anyhow::Result<Vec<u8>> {
    key.split(',')
        .map(|p| {
            p.trim()
                .parse::<u8>()
                .map_err(|_| anyhow::anyhow!("bad snapshot key {key:?}"))
        })
        .collect()
}

/// Parses a snapshot data file into a [`RamseyTable`].
pub fn load_snapshot(json: &str) -> anyhow::Result<RamseyTable> {
    let file: SnapshotFile = serde_json::from_str(json)?;
    let mut entries = Vec::with_capacity(file.entries.len());
    for row in &file.entries {
        let key = parse_key(&row.key)?;
        if key.len() != 2 {
            anyhow::bail!("pair entry key {:?} must have two components", row.key);
        }
        entries.push((
            (key[0], key[1]),
            TableEntry {
                lower: row.lower,
                upper: row.upper,
                source: row.source.clone(),
            },
        ));
    }
    let mut table = RamseyTable::from_entries(&file.snapshot, entries)?;
    for row in &file.multicolor {
        let key = parse_key(&row.key)?;
        table.insert_multicolor(
            &key,
            TableEntry {
                lower: row.lower,
                upper: row.upper,
                source: row.source.clone(),
            },
        )?;
    }
    Ok(table)
}

/// Resolves `--snapshot`: a built-in name or a path to a snapshot file.
pub fn resolve_snapshot(name: &str) -> anyhow::Result<RamseyTable> {
    match name {
        "paper-2024" => load_snapshot(PAPER_2024_JSON),
        "current" => load_snapshot(CURRENT_JSON),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow::anyhow!("snapshot {path:?}: not a built-in name and {e}"))?;
            load_snapshot(&text)
        }
    }
}

/// Serializes a table back into the data-file format.
pub fn export_snapshot(table: &RamseyTable) -> String {
    let file = SnapshotFile {
        snapshot: table.snapshot().to_string(),
        entries: table
            .entries()
            .map(|(&(s, t), e)| EntryRow {
                key: format!("{s},{t}"),
                lower: e.lower,
                upper: e.upper,
                source: e.source.clone(),
            })
            .collect(),
        multicolor: table
            .multicolor_entries()
            .map(|(sizes, e)| EntryRow {
                key: sizes
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                lower: e.lower,
                upper: e.upper,
                source: e.source.clone(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("snapshot serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_match_builtin_tables() {
        for (json, builtin) in [
            (PAPER_2024_JSON, RamseyTable::paper_2024()),
            (CURRENT_JSON, RamseyTable::current()),
        ] {
            let loaded = load_snapshot(json).unwrap();
            assert_eq!(loaded.snapshot(), builtin.snapshot());
            let a: Vec<_> = loaded.entries().collect();
            let b: Vec<_> = builtin.entries().collect();
            assert_eq!(a, b, "{} pair entries diverge", builtin.snapshot());
            let am: Vec<_> = loaded.multicolor_entries().collect();
            let bm: Vec<_> = builtin.multicolor_entries().collect();
            assert_eq!(am, bm, "{} multicolor entries diverge", builtin.snapshot());
        }
    }

    #[test]
    fn export_import_roundtrip() {
        let table = load_snapshot(CURRENT_JSON).unwrap();
        let exported = export_snapshot(&table);
        let reloaded = load_snapshot(&exported).unwrap();
        assert_eq!(
            reloaded.entries().collect::<Vec<_>>(),
            table.entries().collect::<Vec<_>>()
        );
        assert_eq!(exported, export_snapshot(&reloaded));
    }

    #[test]
    fn rejects_malformed_keys() {
        let bad = r#"{"snapshot":"x","entries":[{"key":"3","lower":1,"upper":null,"source":""}]}"#;
        assert!(load_snapshot(bad).is_err());
    }
}
