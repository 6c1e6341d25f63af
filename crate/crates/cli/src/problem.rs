//! Problem files: one `key: value` entry per line, `#` starts a comment.
//!
//! ```text
//! ring: x, y, z
//! f: x^2 - y^2*z
//! gamma: x^2 + y^2 + z^2
//! gamma_space: x^2; y^2; z^2
//! theta: (x, 0, 2*z); (0, y, -2*z)
//! locus: x, y
//! ```

use std::fmt;
use std::sync::Arc;

use freediv::{Error, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: Arc<Ring>,
    pub f: Option<Polynomial>,
    pub gamma: Option<Polynomial>,
    pub gamma_space: Option<Vec<Polynomial>>,
    pub theta: Option<Vec<Vec<Polynomial>>>,
    pub locus: Option<Vec<Polynomial>>,
}

/// A piece of a line with the 1-based column where it starts.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    column: usize,
}

impl<'a> Span<'a> {
    fn trim(self) -> Span<'a> {
        let lead = self.text.chars().take_while(|c| c.is_whitespace()).count();
        let rest: &str = &self.text[self.text.char_indices().nth(lead).map_or(self.text.len(), |(i, _)| i)..];
        Span { text: rest.trim_end(), column: self.column + lead }
    }

    /// Splits at `sep` outside parentheses.
    fn split_top(self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start_byte = 0;
        let mut start_col = self.column;
        for (k, (i, c)) in self.text.char_indices().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ if c == sep && depth == 0 => {
                    out.push(Span { text: &self.text[start_byte..i], column: start_col });
                    start_byte = i + c.len_utf8();
                    start_col = self.column + k + 1;
                }
                _ => {}
            }
        }
        out.push(Span { text: &self.text[start_byte..], column: start_col });
        out
    }
}

fn parse_poly(ring: &Arc<Ring>, line: usize, s: Span<'_>) -> Result<Polynomial, InputError> {
    let s = s.trim();
    if s.text.is_empty() {
        return Err(InputError { line, column: s.column, message: "empty expression".into() });
    }
    Polynomial::parse(ring, s.text).map_err(|e| match e {
        Error::Parse { column, message } => InputError { line, column: s.column + column - 1, message },
        other => InputError { line, column: s.column, message: other.to_string() },
    })
}

fn parse_list(ring: &Arc<Ring>, line: usize, s: Span<'_>, sep: char) -> Result<Vec<Polynomial>, InputError> {
    s.split_top(sep).into_iter().map(|part| parse_poly(ring, line, part)).collect()
}

fn parse_theta(ring: &Arc<Ring>, line: usize, s: Span<'_>) -> Result<Vec<Vec<Polynomial>>, InputError> {
    let mut out = Vec::new();
    for item in s.split_top(';') {
        let item = item.trim();
        let inner = item.text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| InputError {
            line,
            column: item.column,
            message: "expected a parenthesized coefficient vector".into(),
        })?;
        let coeffs = parse_list(ring, line, Span { text: inner, column: item.column + 1 }, ',')?;
        if coeffs.len() != ring.nvars() {
            return Err(InputError {
                line,
                column: item.column,
                message: format!("derivation has {} coefficients, ring has {} variables", coeffs.len(), ring.nvars()),
            });
        }
        out.push(coeffs);
    }
    Ok(out)
}

fn parse_ring(line: usize, s: Span<'_>) -> Result<Arc<Ring>, InputError> {
    let mut names: Vec<String> = Vec::new();
    for part in s.split_top(',') {
        let part = part.trim();
        let ok = part.text.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && part.text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(InputError { line, column: part.column, message: format!("invalid variable name `{}`", part.text) });
        }
        if names.iter().any(|n| n == part.text) {
            return Err(InputError { line, column: part.column, message: format!("duplicate variable `{}`", part.text) });
        }
        names.push(part.text.to_string());
    }
    Ok(Ring::new(names))
}

pub fn parse_input(text: &str) -> Result<ProblemFile, InputError> {
    let mut ring: Option<Arc<Ring>> = None;
    let mut f = None;
    let mut gamma = None;
    let mut gamma_space = None;
    let mut theta = None;
    let mut locus = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(InputError { line, column: 1, message: "expected `key: value`".into() });
        };
        let key = content[..colon].trim();
        let value = Span { text: &content[colon + 1..], column: content[..colon + 1].chars().count() + 1 };
        let key_col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let dup = || InputError { line, column: key_col, message: format!("duplicate key `{key}`") };
        if key == "ring" {
            if ring.is_some() {
                return Err(dup());
            }
            ring = Some(parse_ring(line, value)?);
            continue;
        }
        let Some(r) = &ring else {
            return Err(InputError { line, column: key_col, message: "`ring:` must come first".into() });
        };
        match key {
            "f" if f.is_none() => f = Some(parse_poly(r, line, value)?),
            "gamma" if gamma.is_none() => gamma = Some(parse_poly(r, line, value)?),
            "gamma_space" if gamma_space.is_none() => gamma_space = Some(parse_list(r, line, value, ';')?),
            "theta" if theta.is_none() => theta = Some(parse_theta(r, line, value)?),
            "locus" if locus.is_none() => locus = Some(parse_list(r, line, value, ',')?),
            "f" | "gamma" | "gamma_space" | "theta" | "locus" => return Err(dup()),
            _ => return Err(InputError { line, column: key_col, message: format!("unknown key `{key}`") }),
        }
    }
    let ring = ring.ok_or_else(|| InputError { line: 1, column: 1, message: "missing `ring:` declaration".into() })?;
    Ok(ProblemFile { ring, f, gamma, gamma_space, theta, locus })
}
