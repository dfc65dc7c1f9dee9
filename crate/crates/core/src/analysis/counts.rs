use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AnalysisError;

/// Counts document:
/// `{"set_id": str, "shots": int, "results": {"<spectator>_<driver>": {"<bits>": int}}}`.
///
/// Character `i` of a bitstring (leftmost is 0) reports the metadata's
/// `spectator_qubits[i]`; `'1'` means an error was detected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsDocument {
    pub set_id: String,
    pub shots: u64,
    pub results: BTreeMap<String, BTreeMap<String, u64>>,
}

impl CountsDocument {
    pub fn from_json(src: &str) -> Result<Self, AnalysisError> {
        serde_json::from_str(src).map_err(|e| AnalysisError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("counts serialize");
        s.push('\n');
        s
    }
}

/// Set bits over all observed bitstrings divided by `shots * spectator_count`.
pub fn error_rate(counts: &BTreeMap<String, u64>, shots: u64, spectator_count: usize) -> Result<f64, AnalysisError> {
    let ones = count_set_bits(counts, shots, spectator_count)?;
    Ok(ones as f64 / (shots as f64 * spectator_count as f64))
}

/// Total `'1'` bits, after checking widths and the shot total.
pub fn count_set_bits(counts: &BTreeMap<String, u64>, shots: u64, spectator_count: usize) -> Result<u64, AnalysisError> {
    if spectator_count == 0 {
        return Err(AnalysisError::NoSpectators);
    }
    if shots == 0 {
        return Err(AnalysisError::ZeroShots);
    }
    let mut total = 0u64;
    let mut ones = 0u64;
    for (bits, &n) in counts {
        if bits.len() != spectator_count {
            return Err(AnalysisError::BitLength {
                key: bits.clone(),
                expected: spectator_count,
            });
        }
        let mut set = 0u64;
        for b in bits.bytes() {
            match b {
                b'1' => set += 1,
                b'0' => {}
                _ => return Err(AnalysisError::BadBitstring(bits.clone())),
            }
        }
        ones += set * n;
        total += n;
    }
    if total != shots {
        return Err(AnalysisError::ShotMismatch { expected: shots, got: total });
    }
    Ok(ones)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn worked_example() {
        let c = counts(&[("00", 9000), ("01", 500), ("10", 400), ("11", 100)]);
        assert_eq!(error_rate(&c, 10_000, 2).unwrap(), 1100.0 / 20_000.0);
        assert!((error_rate(&c, 10_000, 2).unwrap() - 0.055).abs() < 1e-15);
    }

    #[test]
    fn extremes() {
        assert_eq!(error_rate(&counts(&[("000", 50)]), 50, 3).unwrap(), 0.0);
        assert_eq!(error_rate(&counts(&[("111", 50)]), 50, 3).unwrap(), 1.0);
    }

    #[test]
    fn malformed_input() {
        assert_eq!(
            error_rate(&counts(&[("0", 5)]), 5, 2),
            Err(AnalysisError::BitLength { key: "0".into(), expected: 2 })
        );
        assert_eq!(
            error_rate(&counts(&[("00", 4)]), 5, 2),
            Err(AnalysisError::ShotMismatch { expected: 5, got: 4 })
        );
        assert_eq!(
            error_rate(&counts(&[("0x", 5)]), 5, 2),
            Err(AnalysisError::BadBitstring("0x".into()))
        );
        assert_eq!(error_rate(&counts(&[]), 5, 0), Err(AnalysisError::NoSpectators));
    }

    #[test]
    fn document_round_trip() {
        let src = r#"{"set_id": "s", "shots": 3, "results": {"X_X": {"01": 2, "00": 1}}}"#;
        let doc = CountsDocument::from_json(src).unwrap();
        assert_eq!(CountsDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}
