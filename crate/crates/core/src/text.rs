//! Line-oriented `[section]` / `key = value` reader shared by the descriptor,
//! bundle and four-manifold formats.

use crate::abelian::IntMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
    /// 1-based column where the value starts.
    pub value_col: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Section {
    pub name: String,
    pub arg: Option<String>,
    pub line: usize,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn require(&self, key: &str) -> Result<&Entry> {
        self.get(key).ok_or_else(|| {
            Error::parse(
                self.line,
                1,
                format!("missing field `{key}` in [{}]", self.header()),
            )
        })
    }

    pub fn header(&self) -> String {
        match &self.arg {
            Some(a) => format!("{} {a}", self.name),
            None => self.name.clone(),
        }
    }
}

impl Entry {
    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.value_col, msg)
    }

    /// Re-anchors an error from a single-line sub-parser to this entry.
    pub fn relocate(&self, e: Error) -> Error {
        match e {
            Error::Parse {
                column, message, ..
            } => Error::parse(self.line, self.value_col + column - 1, message),
            other => self.error(other.to_string()),
        }
    }

    pub fn parse_int<T: std::str::FromStr>(&self) -> Result<T> {
        self.value
            .parse()
            .map_err(|_| self.error(format!("`{}` expects an integer, got `{}`", self.key, self.value)))
    }

    pub fn parse_bool(&self) -> Result<bool> {
        match self.value.as_str() {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            v => Err(self.error(format!("`{}` expects true or false, got `{v}`", self.key))),
        }
    }
}

pub(crate) fn parse_sections(src: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        if let Some(inner) = trimmed.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::parse(line, indent + 1, "unterminated section header"))?
                .trim();
            let mut parts = inner.splitn(2, char::is_whitespace);
            let name = parts.next().unwrap_or_default().to_string();
            if name.is_empty() {
                return Err(Error::parse(line, indent + 1, "empty section header"));
            }
            let arg = parts.next().map(|a| a.trim().to_string());
            sections.push(Section {
                name,
                arg,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(Error::parse(line, indent + 1, "expected `key = value`"));
        };
        let key = raw[..eq].trim().to_string();
        if key.is_empty() {
            return Err(Error::parse(line, indent + 1, "missing key before `=`"));
        }
        let after = &raw[eq + 1..];
        let value = after.trim().to_string();
        let lead = after.len() - after.trim_start().len();
        let value_col = raw[..eq + 1 + lead].chars().count() + 1;
        let Some(section) = sections.last_mut() else {
            return Err(Error::parse(line, indent + 1, "entry outside of any section"));
        };
        if section.entries.iter().any(|e| e.key == key) {
            return Err(Error::parse(line, indent + 1, format!("duplicate key `{key}`")));
        }
        section.entries.push(Entry {
            key,
            value,
            line,
            value_col,
        });
    }
    Ok(sections)
}

/// Parses `[[1,0],[0,1]]` into a matrix of the expected shape. An empty
/// `[]` stands for any matrix with zero rows.
pub(crate) fn parse_matrix(text: &str, rows: usize, cols: usize) -> Result<IntMatrix> {
    let err = |col: usize, msg: &str| Error::parse(1, col, msg);
    let compact: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i + 1, c))
        .collect();
    let mut pos = 0;
    let expect = |pos: &mut usize, want: char| -> Result<()> {
        match compact.get(*pos) {
            Some(&(_, c)) if c == want => {
                *pos += 1;
                Ok(())
            }
            Some(&(col, c)) => Err(err(col, &format!("expected `{want}`, found `{c}`"))),
            None => Err(err(text.chars().count() + 1, &format!("expected `{want}`"))),
        }
    };
    expect(&mut pos, '[')?;
    let mut out: Vec<Vec<i64>> = Vec::new();
    if compact.get(pos).map(|p| p.1) == Some(']') {
        pos += 1;
    } else {
        loop {
            expect(&mut pos, '[')?;
            let mut row = Vec::new();
            if compact.get(pos).map(|p| p.1) != Some(']') {
                loop {
                    let start = pos;
                    while compact
                        .get(pos)
                        .is_some_and(|&(_, c)| c.is_ascii_digit() || (c == '-' && pos == start))
                    {
                        pos += 1;
                    }
                    let digits: String = compact[start..pos].iter().map(|p| p.1).collect();
                    let col = compact.get(start).map_or(text.len() + 1, |p| p.0);
                    let v: i64 = digits.parse().map_err(|_| err(col, "expected an integer"))?;
                    row.push(v);
                    if compact.get(pos).map(|p| p.1) == Some(',') {
                        pos += 1;
                    } else {
                        break;
                    }
                }
            }
            expect(&mut pos, ']')?;
            out.push(row);
            if compact.get(pos).map(|p| p.1) == Some(',') {
                pos += 1;
            } else {
                break;
            }
        }
        expect(&mut pos, ']')?;
    }
    if let Some(&(col, _)) = compact.get(pos) {
        return Err(err(col, "trailing characters after matrix"));
    }
    if out.len() != rows {
        return Err(err(1, &format!("matrix has {} rows, expected {rows}", out.len())));
    }
    IntMatrix::from_rows(&out, cols).map_err(|e| err(1, &e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_positions() {
        let src = "# header\n[map]\nm = 5\n  n=3\n\n[region 0]\nfiber = sphere(2)\n";
        let s = parse_sections(src).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].name, "map");
        assert_eq!(s[0].get("n").unwrap().value, "3");
        assert_eq!(s[0].get("n").unwrap().value_col, 5);
        assert_eq!(s[1].arg.as_deref(), Some("0"));
        assert_eq!(s[1].get("fiber").unwrap().line, 7);
        match s[0].require("l") {
            Err(Error::Parse { message, line, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("`l`"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_sections("m = 1\n").is_err());
        assert!(parse_sections("[map\n").is_err());
        assert!(parse_sections("[map]\njunk\n").is_err());
        assert!(parse_sections("[map]\nm=1\nm=2\n").is_err());
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("[[1, 0], [-2,3]]", 2, 2).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1, 0], vec![-2, 3]]);
        assert_eq!(parse_matrix("[]", 0, 3).unwrap().cols(), 3);
        assert_eq!(parse_matrix("[[],[]]", 2, 0).unwrap().rows(), 2);
        assert!(parse_matrix("[[1,2]]", 1, 3).is_err());
        assert!(parse_matrix("[[1,2]", 1, 2).is_err());
        assert!(parse_matrix("[[1,x]]", 1, 2).is_err());
        assert!(parse_matrix("[[1]] 2", 1, 1).is_err());
    }
}
