//! Plain-text diagram files:
//!
//! ```text
//! colors: 2
//! F-: (1 (2 _ _) (2 _ _))
//! b: B4: 2
//! F+: (2 (1 _ _) (1 _ _))
//! ```

use std::str::FromStr;

use super::{Spraige, SpraigeError};

impl Spraige {
    pub fn to_file_string(&self) -> String {
        format!(
            "colors: {}\nF-: {}\nb: {}\nF+: {}\n",
            self.colors, self.f_minus, self.braid, self.f_plus
        )
    }

    /// Parses a diagram file. Blank lines and `#` comments are skipped.
    pub fn parse_file(text: &str) -> Result<Spraige, SpraigeError> {
        let mut colors = None;
        let mut f_minus = None;
        let mut braid = None;
        let mut f_plus = None;
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| SpraigeError::Parse(format!("line {}: expected `key: value`", no + 1)))?;
            let value = value.trim();
            let slot = match key.trim() {
                "colors" => &mut colors,
                "F-" => &mut f_minus,
                "b" => &mut braid,
                "F+" => &mut f_plus,
                other => return Err(SpraigeError::Parse(format!("line {}: unknown key {other:?}", no + 1))),
            };
            if slot.replace(value.to_string()).is_some() {
                return Err(SpraigeError::Parse(format!("line {}: duplicate key {:?}", no + 1, key.trim())));
            }
        }
        let need = |v: Option<String>, k: &str| v.ok_or_else(|| SpraigeError::Parse(format!("missing `{k}:` line")));
        let colors: usize = need(colors, "colors")?
            .parse()
            .map_err(|_| SpraigeError::Parse("colors must be a positive integer".into()))?;
        Spraige::from_parts(colors, &need(f_minus, "F-")?, &need(braid, "b")?, &need(f_plus, "F+")?)
    }
}

impl FromStr for Spraige {
    type Err = SpraigeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Spraige::parse_file(s)
    }
}
