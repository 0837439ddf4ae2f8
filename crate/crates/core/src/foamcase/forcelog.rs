use serde::{Deserialize, Serialize};

/// Parsed force history from a solver's force function-object output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForceHistory {
    /// `(time, Fx)` samples in file order.
    pub samples: Vec<(f64, f64)>,
    /// Mean Fx over the trailing 20% of samples.
    pub final_drag: f64,
    /// Skipped lines as `(1-based line number, text)`.
    pub malformed: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("force log holds no data rows ({malformed} malformed lines)")]
pub struct ForceLogError {
    pub malformed: usize,
}

/// Parses `time Fx Fy Fz ...` rows; `#` lines are comments. Parentheses,
/// as written by older solver versions, are treated as whitespace.
pub fn parse_force_log(text: &str) -> Result<ForceHistory, ForceLogError> {
    let mut samples = Vec::new();
    let mut malformed = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let cleaned = trimmed.replace(['(', ')'], " ");
        let mut fields = cleaned.split_whitespace().map(str::parse::<f64>);
        match (fields.next(), fields.next()) {
            (Some(Ok(t)), Some(Ok(fx))) if t.is_finite() && fx.is_finite() => samples.push((t, fx)),
            _ => malformed.push((i + 1, line.to_string())),
        }
    }
    if samples.is_empty() {
        return Err(ForceLogError {
            malformed: malformed.len(),
        });
    }
    let tail = samples.len().div_ceil(5);
    let final_drag = samples[samples.len() - tail..]
        .iter()
        .map(|s| s.1)
        .sum::<f64>()
        / tail as f64;
    Ok(ForceHistory {
        samples,
        final_drag,
        malformed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log(fx: &[f64]) -> String {
        let mut s = String::from("# Force\n# Time total_x total_y total_z\n");
        for (i, f) in fx.iter().enumerate() {
            s.push_str(&format!("{}\t{f}\t0\t0\n", i + 1));
        }
        s
    }

    #[test]
    fn constant_series() {
        let h = parse_force_log(&log(&[3.5; 10])).unwrap();
        assert_eq!(h.final_drag, 3.5);
        assert_eq!(h.samples.len(), 10);
        assert!(h.malformed.is_empty());
    }

    #[test]
    fn trailing_fifth_mean() {
        let h = parse_force_log(&log(&[
            10.0, 10.0, 10.0, 10.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0,
        ]))
        .unwrap();
        assert_eq!(h.final_drag, 2.0);
        let h = parse_force_log(&log(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(h.final_drag, 3.0);
    }

    #[test]
    fn comments_only_is_error() {
        assert!(parse_force_log("# a\n# b\n").is_err());
        assert!(parse_force_log("").is_err());
        assert_eq!(parse_force_log("# a\nbad line\n").unwrap_err().malformed, 1);
    }

    #[test]
    fn malformed_lines_listed_and_parens_accepted() {
        let text = "# Time forces\n0.1 ((1.5 0 0) (0.5 0 0) (0 0 0))\noops\n0.2 ((2.5 0 0) (0.5 0 0) (0 0 0))\n";
        let h = parse_force_log(text).unwrap();
        assert_eq!(h.samples, vec![(0.1, 1.5), (0.2, 2.5)]);
        assert_eq!(h.malformed, vec![(3, "oops".to_string())]);
        assert_eq!(h.final_drag, 2.5);
    }
}
