//! Plain-text relation matrices.
//!
//! ```text
//! # id: AS06[3]
//! # any other comment
//! 6
//! 0 1 2 1 2 1
//! ...
//! ```
//!
//! The first non-comment line is the order `n`, followed by `n` rows of `n` relation
//! indices separated by whitespace. Lines starting with `#` are comments; a comment of the
//! form `# id: <name>` names the scheme.

use std::fmt;

use crate::scheme::Scheme;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeFile {
    pub id: Option<String>,
    pub comments: Vec<String>,
    pub relations: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_scheme_file(text: &str) -> Result<SchemeFile, ParseError> {
    let mut id = None;
    let mut comments = Vec::new();
    let mut n: Option<usize> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    // (line, column) of every entry, for positioned errors after reading
    let mut pos: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if let Some(c) = trimmed.strip_prefix('#') {
            let c = c.trim();
            match c.strip_prefix("id:") {
                Some(v) => id = Some(v.trim().to_string()),
                None => comments.push(c.to_string()),
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let toks = tokens(line);
        let Some(order) = n else {
            if toks.len() != 1 {
                return Err(err(lineno, toks[1].0, "header must be the single integer n"));
            }
            let v = toks[0].1.parse::<usize>().map_err(|_| err(lineno, toks[0].0, "invalid order"))?;
            if v == 0 {
                return Err(err(lineno, toks[0].0, "order must be positive"));
            }
            n = Some(v);
            continue;
        };
        if rows.len() == order {
            return Err(err(lineno, toks[0].0, format!("more than {order} rows")));
        }
        if toks.len() != order {
            let col = toks.get(order).map_or(line.len() + 1, |t| t.0);
            return Err(err(lineno, col, format!("row has {} entries, expected {order}", toks.len())));
        }
        let mut row = Vec::with_capacity(order);
        let mut prow = Vec::with_capacity(order);
        for (col, tok) in toks {
            let v = tok.parse::<usize>().map_err(|_| err(lineno, col, format!("invalid entry `{tok}`")))?;
            if v >= order {
                return Err(err(lineno, col, format!("relation index {v} out of range 0..{order}")));
            }
            row.push(v);
            prow.push((lineno, col));
        }
        rows.push(row);
        pos.push(prow);
    }
    let Some(order) = n else { return Err(err(last_line.max(1), 1, "empty file")) };
    if rows.len() < order {
        return Err(err(last_line + 1, 1, format!("expected {order} rows, found {}", rows.len())));
    }
    for x in 0..order {
        let (l, c) = pos[x][x];
        if rows[x][x] != 0 {
            return Err(err(l, c, "nonzero diagonal entry"));
        }
        for y in 0..order {
            let (l, c) = pos[x][y];
            if x != y && rows[x][y] == 0 {
                return Err(err(l, c, "off-diagonal zero relation"));
            }
            if rows[x][y] != rows[y][x] {
                return Err(err(l, c, format!("asymmetric: ({x},{y}) is {} but ({y},{x}) is {}", rows[x][y], rows[y][x])));
            }
        }
    }
    Ok(SchemeFile { id, comments, relations: rows })
}

impl SchemeFile {
    pub fn from_scheme(id: Option<&str>, s: &Scheme) -> Self {
        SchemeFile { id: id.map(str::to_string), comments: Vec::new(), relations: s.relations().to_vec() }
    }

    pub fn order(&self) -> usize {
        self.relations.len()
    }
}

impl fmt::Display for SchemeFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(id) = &self.id {
            writeln!(f, "# id: {id}")?;
        }
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        writeln!(f, "{}", self.order())?;
        for row in &self.relations {
            let cells: Vec<String> = row.iter().map(|r| r.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# id: tiny\n# note\n3\n0 1 1\n1 0 1\n1 1 0\n";
        let f = parse_scheme_file(text).unwrap();
        assert_eq!(f.id.as_deref(), Some("tiny"));
        assert_eq!(f.to_string(), text);
    }

    #[test]
    fn positioned_errors() {
        let e = parse_scheme_file("2\n0 0\n0 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("off-diagonal zero relation"));
        let e = parse_scheme_file("3\n0 1 1\n1 0\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_scheme_file("").is_err());
        assert!(parse_scheme_file("# only comments\n").is_err());
        let e = parse_scheme_file("2\n0 1\n2 0\n").unwrap_err();
        assert!(e.message.contains("out of range"));
        let e = parse_scheme_file("3\n0 1 2\n1 0 1\n1 2 0\n").unwrap_err();
        assert!(e.message.contains("asymmetric"));
    }
}
