//! Metrics CSV and strategy JSON, the two artefacts of a run.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::analysis::MetricsRecord;
use crate::error::{Error, Result};
use crate::game::{BehaviorProfile, GameTree, PROFILE_TOLERANCE};
use crate::poker::GameSpec;
use crate::solvers::RunConfig;

pub const METRICS_HEADER: [&str; 3] = ["iteration", "value", "exploitability"];

/// 17 significant digits: every f64 survives the round trip.
fn decimal(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_metrics<W: Write>(out: W, records: &[MetricsRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(METRICS_HEADER)?;
    for r in records {
        w.write_record([r.iteration.to_string(), decimal(r.value), decimal(r.exploitability)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_metrics<R: Read>(input: R) -> Result<Vec<MetricsRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(METRICS_HEADER) {
        return Err(Error::Config(format!(
            "unexpected metrics header '{}'",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    r.deserialize().map(|row| Ok(row?)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyMetadata {
    pub game: GameSpec,
    /// The full run configuration, absent for hand-written files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_exploitability: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyFile {
    pub metadata: StrategyMetadata,
    /// Information set key to action probabilities.
    pub strategy: BTreeMap<String, Vec<f64>>,
}

impl StrategyFile {
    pub fn new(tree: &GameTree, profile: &BehaviorProfile, metadata: StrategyMetadata) -> Self {
        let strategy = tree
            .infoset_ids()
            .map(|id| (tree.infoset(id).key.clone(), profile.get(id).to_vec()))
            .collect();
        StrategyFile { metadata, strategy }
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut out = out;
        serde_json::to_writer_pretty(&mut out, self)
            .map_err(|e| Error::StrategyFile(e.to_string()))?;
        out.write_all(b"\n")?;
        Ok(())
    }

    /// Parses a strategy file; `source` names it in error messages.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::StrategyFile(format!("{source}: {e}")))
    }

    /// The stored profile, provided the keys cover `tree`'s information
    /// sets exactly and every row is a distribution of the right length.
    pub fn profile(&self, tree: &GameTree) -> Result<BehaviorProfile> {
        let mut profile = BehaviorProfile::uniform(tree);
        let missing: Vec<&str> = tree
            .infosets()
            .iter()
            .filter(|s| !self.strategy.contains_key(&s.key))
            .map(|s| s.key.as_str())
            .collect();
        if !missing.is_empty() {
            return Err(Error::StrategyFile(format!(
                "{} information set(s) missing, first '{}'",
                missing.len(),
                missing[0]
            )));
        }
        for (key, row) in &self.strategy {
            let id = tree
                .find_infoset(key)
                .ok_or_else(|| Error::StrategyFile(format!("unknown information set '{key}'")))?;
            let want = tree.infoset(id).action_count();
            if row.len() != want {
                return Err(Error::StrategyFile(format!(
                    "'{key}': expected {want} probabilities, got {}",
                    row.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
                return Err(Error::StrategyFile(format!("'{key}': invalid probability {p}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > PROFILE_TOLERANCE {
                return Err(Error::StrategyFile(format!(
                    "'{key}': probabilities sum to {sum}, not 1"
                )));
            }
            profile.get_mut(id).copy_from_slice(row);
        }
        Ok(profile)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poker::{GameKind, GameParams};

    fn asym2() -> (GameSpec, GameTree) {
        let spec = GameSpec {
            kind: GameKind::Asym,
            params: GameParams::asymmetric(2, 1.0, 1.0),
        };
        (spec, spec.build().unwrap())
    }

    #[test]
    fn metrics_round_trip() {
        let records = vec![
            MetricsRecord { iteration: 10, value: -0.040594736842, exploitability: 1.0 / 3.0 },
            MetricsRecord { iteration: 20, value: 0.0, exploitability: 1e-300 },
        ];
        let mut buf = Vec::new();
        write_metrics(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("iteration,value,exploitability\n10,"));
        assert_eq!(read_metrics(&buf[..]).unwrap(), records);
    }

    #[test]
    fn strategy_round_trip() {
        let (spec, tree) = asym2();
        let mut b = BehaviorProfile::uniform(&tree);
        b.get_mut(tree.find_infoset("P1|h=1|").unwrap()).copy_from_slice(&[0.1, 0.9]);
        let meta = StrategyMetadata { game: spec, config: None, final_value: None, final_exploitability: None };
        let mut buf = Vec::new();
        StrategyFile::new(&tree, &b, meta).write(&mut buf).unwrap();
        let parsed = StrategyFile::parse(std::str::from_utf8(&buf).unwrap(), "mem").unwrap();
        assert_eq!(parsed.profile(&tree).unwrap(), b);
    }

    #[test]
    fn mismatches_are_reported() {
        let (spec, tree) = asym2();
        let meta = StrategyMetadata { game: spec, config: None, final_value: None, final_exploitability: None };
        let mut file = StrategyFile::new(&tree, &BehaviorProfile::uniform(&tree), meta);
        file.strategy.remove("P2|h=1|b");
        let err = file.profile(&tree).unwrap_err().to_string();
        assert!(err.contains("P2|h=1|b"), "{err}");

        file.strategy.insert("P2|h=1|b".into(), vec![0.5, 0.6]);
        let err = file.profile(&tree).unwrap_err().to_string();
        assert!(err.contains("sum to"), "{err}");

        file.strategy.insert("P2|h=1|b".into(), vec![0.5, 0.5]);
        file.strategy.insert("P2|h=9|b".into(), vec![0.5, 0.5]);
        let err = file.profile(&tree).unwrap_err().to_string();
        assert!(err.contains("unknown"), "{err}");
    }

    #[test]
    fn truncated_json_names_the_position() {
        let err = StrategyFile::parse("{\"metadata\": {\"game\"", "s.json").unwrap_err().to_string();
        assert!(err.contains("s.json") && err.contains("line 1"), "{err}");
    }
}
