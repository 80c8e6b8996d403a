//! Line-oriented problem files.
//!
//! ```text
//! # standard triangle
//! simplex n=2
//! -1 0
//! 0 -1
//! 1 1
//! t: 0 0 3
//! b: 0 0 1
//! ```
//!
//! ```text
//! polygon
//! 0 0
//! 5/2 0
//! 0, 5/2
//! ```

use latticecount::rational::parse_rational;
use latticecount::{DilationVector, Point, PolygonSpec, SimplexSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone)]
pub struct SimplexProblem {
    pub system: SimplexSystem,
    pub t: DilationVector,
    /// Ray direction for `s -> s·b`; defaults to `t`.
    pub b: Vec<i64>,
}

/// Non-blank lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn integers(line: usize, text: &str) -> Result<Vec<i64>, ParseError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| w.parse().map_err(|_| err(line, format!("expected an integer, found `{w}`"))))
        .collect()
}

pub fn parse_simplex(text: &str) -> Result<SimplexProblem, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    let n: usize = header
        .strip_prefix("simplex")
        .map(str::trim)
        .and_then(|rest| rest.strip_prefix("n="))
        .and_then(|n| n.trim().parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| err(hline, "expected header `simplex n=<n>` with n >= 1"))?;
    let mut rows = Vec::with_capacity(n + 1);
    let mut t = None;
    let mut b = None;
    let mut last = hline;
    for (number, line) in lines {
        last = number;
        if let Some(rest) = line.strip_prefix("t:") {
            if t.is_some() {
                return Err(err(number, "duplicate `t:` line"));
            }
            t = Some((number, integers(number, rest)?));
        } else if let Some(rest) = line.strip_prefix("b:") {
            if b.is_some() {
                return Err(err(number, "duplicate `b:` line"));
            }
            b = Some((number, integers(number, rest)?));
        } else {
            if t.is_some() || b.is_some() {
                return Err(err(number, "matrix rows must precede `t:` and `b:`"));
            }
            let row = integers(number, line)?;
            if row.len() != n {
                return Err(err(number, format!("expected {n} entries, found {}", row.len())));
            }
            rows.push(row);
        }
    }
    if rows.len() != n + 1 {
        return Err(err(last, format!("expected {} matrix rows, found {}", n + 1, rows.len())));
    }
    let (tline, t) = t.ok_or_else(|| err(last, "missing `t:` line"))?;
    if t.len() != n + 1 {
        return Err(err(tline, format!("`t:` needs {} entries, found {}", n + 1, t.len())));
    }
    let b = match b {
        Some((bline, b)) if b.len() != n + 1 => {
            return Err(err(bline, format!("`b:` needs {} entries, found {}", n + 1, b.len())))
        }
        Some((_, b)) => b,
        None => t.clone(),
    };
    let system = SimplexSystem::new(rows).map_err(|e| err(0, e.to_string()))?;
    Ok(SimplexProblem {
        system,
        t: DilationVector::new(t),
        b,
    })
}

pub fn parse_polygon(text: &str) -> Result<PolygonSpec, ParseError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "polygon")) => {}
        Some((number, _)) => return Err(err(number, "expected header `polygon`")),
        None => return Err(err(0, "empty file")),
    }
    let mut vertices = Vec::new();
    for (number, line) in lines {
        let words: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .collect();
        let [x, y] = words[..] else {
            return Err(err(number, format!("expected two coordinates, found {}", words.len())));
        };
        let coord = |w: &str| {
            parse_rational(w).ok_or_else(|| err(number, format!("expected a rational, found `{w}`")))
        };
        vertices.push(Point::new(coord(x)?, coord(y)?));
    }
    PolygonSpec::new(vertices).map_err(|e| err(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simplex_with_comments_and_ray() {
        let p = parse_simplex("# triangle\nsimplex n=2\n-1 0\n0 -1  # y >= 0\n1 1\nt: 0 0 3\nb: 0,0,1\n")
            .unwrap();
        assert_eq!(p.system.dim(), 2);
        assert_eq!(p.t.as_slice(), &[0, 0, 3]);
        assert_eq!(p.b, vec![0, 0, 1]);
    }

    #[test]
    fn ray_defaults_to_t() {
        let p = parse_simplex("simplex n=1\n-2\n3\nt: -1 7\n").unwrap();
        assert_eq!(p.b, vec![-1, 7]);
    }

    #[test]
    fn simplex_errors_carry_line_numbers() {
        let e = parse_simplex("simplex n=2\n-1 0\n0 x\n1 1\nt: 0 0 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_simplex("simplex n=2\n-1 0\n0 -1\nt: 0 0 3\n").unwrap_err();
        assert!(e.message.contains("matrix rows"));
        assert!(parse_simplex("simplex\n").is_err());
        assert!(parse_simplex("").is_err());
        assert!(parse_simplex("simplex n=2\n-1 0\n0 -1\n1 1\nt: 0 3\n").is_err());
        assert!(parse_simplex("simplex n=2\n1 0\n0 1\n1 1\nt: 0 0 3\n").is_err());
    }

    #[test]
    fn parses_polygon() {
        let p = parse_polygon("polygon\n0 0\n5/2 0\n0, 5/2\n").unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert!(parse_polygon("polygon\n0 0\n1\n").is_err());
        assert!(parse_polygon("simplex n=2\n").is_err());
        assert!(parse_polygon("polygon\n0 0\n1 1\n2 2\n").is_err());
        assert!(parse_polygon("polygon\n0 0\n1/0 1\n2 0\n").is_err());
    }
}
