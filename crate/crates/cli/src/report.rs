//! `key=value` reports for machine mode.

use std::fmt::Display;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.push("command", command);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        let key = key.into();
        debug_assert!(valid_key(&key), "bad report key {key}");
        let value = value.to_string();
        debug_assert!(!value.contains('\n'), "multi-line value for {key}");
        self.entries.push((key, value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Report, String> {
        let mut report = Report::default();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: missing `=`", i + 1))?;
            if !valid_key(key) {
                return Err(format!("line {}: invalid key `{key}`", i + 1));
            }
            if report.get(key).is_some() {
                return Err(format!("line {}: duplicate key `{key}`", i + 1));
            }
            report.entries.push((key.to_string(), value.to_string()));
        }
        Ok(report)
    }
}

fn valid_key(key: &str) -> bool {
    !key.is_empty()
        && key
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '.')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("count");
        r.push("count", 10);
        r.push("class.0", "1/2*t0 + 1");
        r.push("t", "(0, 0, 3)");
        let parsed = Report::parse(&r.render()).unwrap();
        assert_eq!(parsed, r);
        assert_eq!(parsed.get("count"), Some("10"));
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Report::parse("count 10\n").is_err());
        assert!(Report::parse("Count=10\n").is_err());
        assert!(Report::parse("a=1\na=2\n").is_err());
    }
}
