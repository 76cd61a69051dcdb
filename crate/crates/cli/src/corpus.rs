//! Corpus runner.
//!
//! A corpus file has one pair per line:
//!
//! ```text
//! # name    parent   subgroup  goldens            | provenance
//! S3<S4     S4       S3        d_min=5 d_h=7      | worked example
//! C6<C6     C6       C6
//! ```
//!
//! Goldens are optional; when present the line must end with a provenance
//! note after `|`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use depthlab_core::depthcore::{DepthReport, VERSION};
use depthlab_core::Error;

use crate::{
    depth_report, exit_code, to_json, CorpusArgs, CorpusFormat, Outcome, PairArgs, EXIT_OK,
    EXIT_VERIFY,
};

const GOLDEN_KEYS: &[&str] = &["d_min", "d_odd", "d_even", "d_h", "ell_QR", "ell_QH"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub parent: String,
    pub subgroup: String,
    pub goldens: Vec<(String, u32)>,
    pub provenance: Option<String>,
}

impl CorpusEntry {
    fn new(name: &str, parent: &str, subgroup: &str) -> Self {
        CorpusEntry {
            name: name.into(),
            parent: parent.into(),
            subgroup: subgroup.into(),
            goldens: Vec::new(),
            provenance: None,
        }
    }

    fn golden(mut self, key: &str, value: u32, provenance: &str) -> Self {
        self.goldens.push((key.into(), value));
        self.provenance = Some(provenance.into());
        self
    }
}

/// Symmetric, alternating, small-subgroup, affine and degenerate pairs.
pub fn builtin_corpus(full: bool) -> Vec<CorpusEntry> {
    let top = if full { 5 } else { 4 };
    let mut out = Vec::new();
    for n in 2..=top {
        let e = CorpusEntry::new(
            &format!("S{n}<S{}", n + 1),
            &format!("S{}", n + 1),
            &format!("S{n}"),
        );
        let e = e.golden("d_h", 2 * n + 1, "worked example");
        out.push(if n == 3 {
            e.golden("d_min", 5, "worked example")
        } else {
            e
        });
    }
    for n in 3..=5 {
        out.push(
            CorpusEntry::new(&format!("A{n}<S{n}"), &format!("S{n}"), &format!("A{n}")).golden(
                "d_min",
                2,
                "normal proper subgroup",
            ),
        );
    }
    out.push(CorpusEntry::new("C2<S3", "S3", "C2"));
    out.push(CorpusEntry::new("D8<S4", "S4", "D8"));
    out.push(CorpusEntry::new("C11<F55", "C11:C5@3", "C11").golden(
        "d_min",
        2,
        "normal proper subgroup",
    ));
    out.push(CorpusEntry::new("C5<F55", "C11:C5@3", "C5"));
    out.push(CorpusEntry::new("C1<S3", "S3", "C1"));
    out.push(CorpusEntry::new("S3<S3", "S3", "S3").golden("d_min", 1, "U = G"));
    out.push(CorpusEntry::new("C6<C6", "C6", "C6").golden("d_min", 1, "U = G"));
    out
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, Error> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (number, raw) in text.split_inclusive('\n').enumerate() {
        let start = offset;
        offset += raw.len();
        let at = |msg: String| Error::parse(start, format!("line {}: {msg}", number + 1));
        let line = raw.split('#').next().unwrap_or("");
        let (fields, provenance) = match line.split_once('|') {
            Some((f, p)) => (f, Some(p.trim().to_string()).filter(|p| !p.is_empty())),
            None => (line, None),
        };
        let toks: Vec<&str> = fields.split_whitespace().collect();
        if toks.is_empty() {
            if provenance.is_some() {
                return Err(at("provenance without an entry".into()));
            }
            continue;
        }
        let [name, parent, subgroup, rest @ ..] = toks.as_slice() else {
            return Err(at("expected name, parent and subgroup".into()));
        };
        let mut entry = CorpusEntry::new(name, parent, subgroup);
        for g in rest {
            let (key, value) = g
                .split_once('=')
                .ok_or_else(|| at(format!("expected key=value, found '{g}'")))?;
            if !GOLDEN_KEYS.contains(&key) {
                return Err(at(format!("unknown golden '{key}'")));
            }
            let value = value
                .parse()
                .map_err(|_| at(format!("'{value}' is not a depth")))?;
            entry.goldens.push((key.into(), value));
        }
        if !entry.goldens.is_empty() && provenance.is_none() {
            return Err(at("goldens need a provenance note after '|'".into()));
        }
        entry.provenance = provenance;
        out.push(entry);
    }
    if out.is_empty() {
        return Err(Error::input("corpus has no entries"));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
    pub golden_mismatches: Vec<String>,
    pub error: Option<String>,
    pub report: Option<DepthReport>,
    #[serde(skip)]
    pub code: u8,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub passed: bool,
    pub entries: Vec<EntryResult>,
    pub seed: u64,
    pub version: String,
}

fn actual(report: &DepthReport, key: &str) -> Option<u32> {
    match key {
        "d_min" => report.d_min,
        "d_odd" => report.d_odd,
        "d_even" => report.d_even,
        "d_h" => report.d_h,
        "ell_QR" => report.ell_qr,
        "ell_QH" => report.ell_qh,
        _ => None,
    }
}

pub fn run_entry(entry: &CorpusEntry, args: &CorpusArgs) -> EntryResult {
    let pair = PairArgs {
        cap_order: args.cap_order,
        cap_points: args.cap_points,
        seed: args.seed,
        ..PairArgs::new(&entry.parent, &entry.subgroup)
    };
    match depth_report(&pair, None) {
        Ok(report) => {
            let failures: Vec<String> = report.failures().iter().map(|s| s.to_string()).collect();
            let golden_mismatches: Vec<String> = entry
                .goldens
                .iter()
                .filter_map(|(k, v)| {
                    let got = actual(&report, k);
                    (got != Some(*v)).then(|| format!("{k}: expected {v}, got {got:?}"))
                })
                .collect();
            let passed = failures.is_empty() && golden_mismatches.is_empty();
            EntryResult {
                name: entry.name.clone(),
                passed,
                failures,
                golden_mismatches,
                error: None,
                report: Some(report),
                code: if passed { EXIT_OK } else { EXIT_VERIFY },
            }
        }
        Err(e) => EntryResult {
            name: entry.name.clone(),
            passed: false,
            failures: Vec::new(),
            golden_mismatches: Vec::new(),
            error: Some(e.to_string()),
            report: None,
            code: exit_code(&e),
        },
    }
}

/// Entries run in parallel; results keep the corpus order.
pub fn run_entries(entries: &[CorpusEntry], args: &CorpusArgs) -> CorpusReport {
    let results: Vec<EntryResult> = entries.par_iter().map(|e| run_entry(e, args)).collect();
    CorpusReport {
        passed: results.iter().all(|r| r.passed),
        entries: results,
        seed: args.seed,
        version: VERSION.to_string(),
    }
}

fn show(v: Option<u32>) -> String {
    v.map_or("inf".into(), |x| x.to_string())
}

pub fn render_table(report: &CorpusReport) -> String {
    let mut out = format!(
        "{:<10} {:>5} {:>5} {:>6} {:>4} {:>5} {:>5} {:>5}  status\n",
        "pair", "d_min", "d_odd", "d_even", "d_h", "l_QR", "l_QH", "core"
    );
    for e in &report.entries {
        let status = if e.passed {
            "ok".to_string()
        } else if let Some(err) = &e.error {
            format!("error: {err}")
        } else {
            let mut all = e.failures.clone();
            all.extend(e.golden_mismatches.iter().cloned());
            format!("FAIL {}", all.join(", "))
        };
        match &e.report {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "{:<10} {:>5} {:>5} {:>6} {:>4} {:>5} {:>5} {:>5}  {status}",
                    e.name,
                    show(r.d_min),
                    show(r.d_odd),
                    show(r.d_even),
                    show(r.d_h),
                    show(r.ell_qr),
                    show(r.ell_qh),
                    r.core_order
                );
            }
            None => {
                let _ = writeln!(out, "{:<10} {status}", e.name);
            }
        }
    }
    out
}

pub fn run_corpus(args: &CorpusArgs) -> Result<Outcome, Error> {
    let entries = match &args.corpus {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
            parse_corpus(&text)?
        }
        None => builtin_corpus(args.full),
    };
    let report = run_entries(&entries, args);
    let code = report
        .entries
        .iter()
        .map(|e| e.code)
        .max()
        .unwrap_or(EXIT_OK);
    let output = match args.format.unwrap_or(CorpusFormat::Table) {
        CorpusFormat::Table => render_table(&report),
        CorpusFormat::Json => to_json(&report),
    };
    Ok(Outcome {
        output,
        code,
        out: args.out.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_goldens_and_provenance() {
        let text = "# header\nS3<S4 S4 S3 d_min=5 d_h=7 | worked example\n\nC6<C6 C6 C6\n";
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(
            entries[0].goldens,
            vec![("d_min".into(), 5), ("d_h".into(), 7)]
        );
        assert_eq!(entries[0].provenance.as_deref(), Some("worked example"));
    }

    #[test]
    fn rejects_malformed_corpora() {
        assert!(matches!(parse_corpus(""), Err(Error::Input(_))));
        assert!(matches!(parse_corpus("# nothing\n"), Err(Error::Input(_))));
        assert!(matches!(parse_corpus("a S3\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_corpus("a S4 S3 d_min=5\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_corpus("a S4 S3 depth=5 | x\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_corpus("x\nb S4 S3 d_min=five | x\n"),
            Err(Error::Parse { position: 0, .. })
        ));
    }

    #[test]
    fn builtin_corpus_shape() {
        assert_eq!(builtin_corpus(false).len(), 13);
        assert_eq!(builtin_corpus(true).len(), 14);
        assert!(builtin_corpus(false)
            .iter()
            .all(|e| e.goldens.is_empty() || e.provenance.is_some()));
    }
}
