//! Text formats for groups.
//!
//! Cayley format:
//!
//! ```text
//! name C2        (optional)
//! order 2
//! 0 1
//! 1 0
//! ```
//!
//! Permutation format, one generator per line in cycle notation:
//!
//! ```text
//! degree 3
//! (1 2)
//! (1 2 3)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use super::perm::{closure, parse_cycles};
use super::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFileKind {
    Cayley,
    Permutation,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Reads either format, picking it from the `order` / `degree` header.
pub fn parse_group_text(text: &str, default_name: &str) -> Result<(FiniteGroup, GroupFileKind)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let mut name = default_name.to_string();
    let mut header = lines.next();
    if let Some((_, l)) = header {
        if let Some(rest) = l.strip_prefix("name") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                name = rest.trim().to_string();
                header = lines.next();
            }
        }
    }
    let (line_no, header) = header.ok_or_else(|| err(1, 1, "empty group file"))?;
    let mut words = header.split_whitespace();
    let keyword = words.next().unwrap_or_default();
    let value: usize = match words.next().map(str::parse) {
        Some(Ok(v)) => v,
        _ => {
            return Err(err(
                line_no,
                keyword.len() + 2,
                format!("expected a positive integer after '{keyword}'"),
            ))
        }
    };
    if words.next().is_some() {
        return Err(err(line_no, 1, "trailing tokens in header"));
    }

    match keyword {
        "order" => {
            if value == 0 {
                return Err(err(line_no, 7, "order must be positive"));
            }
            if value > DEFAULT_ORDER_CAP {
                return Err(Error::OrderLimitExceeded {
                    order: value,
                    cap: DEFAULT_ORDER_CAP,
                });
            }
            let mut rows = Vec::with_capacity(value);
            for (line_no, l) in lines {
                if rows.len() == value {
                    return Err(err(line_no, 1, format!("more than {value} rows")));
                }
                let mut row = Vec::with_capacity(value);
                let mut column = 1;
                for token in l.split_whitespace() {
                    column = l[column - 1..].find(token).unwrap() + column;
                    let v: usize = token
                        .parse()
                        .map_err(|_| err(line_no, column, format!("bad entry '{token}'")))?;
                    if v >= value {
                        return Err(err(line_no, column, format!("entry {v} out of range")));
                    }
                    row.push(v);
                    column += token.len();
                }
                if row.len() != value {
                    return Err(err(
                        line_no,
                        1,
                        format!("row has {} entries, expected {value}", row.len()),
                    ));
                }
                rows.push(row);
            }
            if rows.len() != value {
                return Err(err(
                    text.lines().count().max(1),
                    1,
                    format!("expected {value} rows, found {}", rows.len()),
                ));
            }
            Ok((
                FiniteGroup::from_cayley_table(&rows, name)?,
                GroupFileKind::Cayley,
            ))
        }
        "degree" => {
            let mut gens = Vec::new();
            for (line_no, l) in lines {
                gens.push(parse_cycles(l, value).map_err(|e| match e {
                    Error::Parse { column, message, .. } => err(line_no, column, message),
                    other => other,
                })?);
            }
            let (g, _) = closure(&gens, value, name, DEFAULT_ORDER_CAP)?;
            Ok((g, GroupFileKind::Permutation))
        }
        other => Err(err(
            line_no,
            1,
            format!("expected 'order' or 'degree', found '{other}'"),
        )),
    }
}
