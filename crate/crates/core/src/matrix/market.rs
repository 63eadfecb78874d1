//! Matrix Market reader and writer for symmetric real matrices.
//!
//! Both `coordinate` and `array` layouts are read, with `real` or `integer`
//! fields and `general` or `symmetric` symmetry. Symmetric files store the
//! lower triangle only; it is expanded on load. A `general` file is accepted
//! only when its entries are exactly symmetric. Files are always written as
//! `coordinate real symmetric`.

use super::{CscMatrix, SpdOperator};
use crate::error::MarketError;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<CscMatrix, MarketError> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix_market(&text)
}

pub fn write_matrix_market(op: &dyn SpdOperator, path: impl AsRef<Path>) -> Result<(), MarketError> {
    std::fs::write(path, to_matrix_market_string(op))?;
    Ok(())
}

/// Serialize the lower triangle of `op`. Values use shortest round-trip
/// formatting, so a read of the output reproduces every entry exactly.
pub fn to_matrix_market_string(op: &dyn SpdOperator) -> String {
    let lower = op.lower_nonzeros();
    let n = op.dim();
    let mut out = String::with_capacity(32 * (lower.len() + 2));
    out.push_str("%%MatrixMarket matrix coordinate real symmetric\n");
    let _ = writeln!(out, "{n} {n} {}", lower.len());
    for (i, j, v) in lower {
        let _ = writeln!(out, "{} {} {:e}", i + 1, j + 1, v);
    }
    out
}

/// Parse Matrix Market text into a compressed-column matrix.
pub fn parse_matrix_market(text: &str) -> Result<CscMatrix, MarketError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| MarketError::at(1, "empty input"))?;
    let (layout, symmetry) = parse_header(header_line, header)?;

    let mut content = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_line, size) = content
        .next()
        .ok_or_else(|| MarketError::at(header_line + 1, "missing size line"))?;
    let dims = parse_usizes(size_line, size)?;
    let (rows, cols, declared) = match (layout, dims.as_slice()) {
        (Layout::Coordinate, [r, c, nnz]) => (*r, *c, Some(*nnz)),
        (Layout::Array, [r, c]) => (*r, *c, None),
        (Layout::Coordinate, _) => {
            return Err(MarketError::at(size_line, "expected `rows cols nonzeros`"))
        }
        (Layout::Array, _) => return Err(MarketError::at(size_line, "expected `rows cols`")),
    };
    if rows != cols {
        return Err(MarketError::at(
            size_line,
            format!("matrix is not square ({rows} x {cols})"),
        ));
    }
    let n = rows;
    if n == 0 {
        return Err(MarketError::at(size_line, "dimension must be positive"));
    }

    let entries = match layout {
        Layout::Coordinate => {
            let nnz = declared.expect("coordinate size line has a count");
            read_coordinate(&mut content, n, nnz, symmetry, size_line)?
        }
        Layout::Array => read_array(&mut content, n, symmetry, size_line)?,
    };
    if let Some((line, _)) = content.next() {
        return Err(MarketError::at(line, "more entries than declared"));
    }

    assemble(n, entries, symmetry, size_line)
}

struct Entry {
    line: usize,
    row: usize,
    col: usize,
    value: f64,
}

fn parse_header(line: usize, header: &str) -> Result<(Layout, Symmetry), MarketError> {
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    match words.first().map(String::as_str) {
        Some("%%matrixmarket") => {}
        _ => return Err(MarketError::at(line, "header must start with %%MatrixMarket")),
    }
    if words.len() != 5 {
        return Err(MarketError::at(
            line,
            "header must read `%%MatrixMarket matrix <layout> <field> <symmetry>`",
        ));
    }
    if words[1] != "matrix" {
        return Err(MarketError::at(line, format!("unsupported object `{}`", words[1])));
    }
    let layout = match words[2].as_str() {
        "coordinate" => Layout::Coordinate,
        "array" => Layout::Array,
        other => return Err(MarketError::at(line, format!("unsupported layout `{other}`"))),
    };
    match words[3].as_str() {
        "real" | "integer" | "double" => {}
        other => return Err(MarketError::at(line, format!("unsupported field `{other}`"))),
    }
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        other => {
            return Err(MarketError::at(
                line,
                format!("unsupported symmetry `{other}` (need general or symmetric)"),
            ))
        }
    };
    Ok((layout, symmetry))
}

fn parse_usizes(line: usize, text: &str) -> Result<Vec<usize>, MarketError> {
    text.split_whitespace()
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| MarketError::at(line, format!("invalid integer `{w}`")))
        })
        .collect()
}

fn parse_value(line: usize, word: &str) -> Result<f64, MarketError> {
    let v: f64 = word
        .parse()
        .map_err(|_| MarketError::at(line, format!("invalid number `{word}`")))?;
    if !v.is_finite() {
        return Err(MarketError::at(line, format!("non-finite value `{word}`")));
    }
    Ok(v)
}

fn read_coordinate<'a>(
    content: &mut impl Iterator<Item = (usize, &'a str)>,
    n: usize,
    nnz: usize,
    symmetry: Symmetry,
    size_line: usize,
) -> Result<Vec<Entry>, MarketError> {
    let mut entries = Vec::new();
    let mut last_line = size_line;
    for _ in 0..nnz {
        let (line, text) = content.next().ok_or_else(|| {
            MarketError::at(
                last_line + 1,
                format!("expected {nnz} entries, found {}", entries.len()),
            )
        })?;
        last_line = line;
        let words: Vec<&str> = text.split_whitespace().collect();
        let [i, j, v] = words.as_slice() else {
            return Err(MarketError::at(line, "expected `row col value`"));
        };
        let parse_index = |w: &str| -> Result<usize, MarketError> {
            match w.parse::<usize>() {
                Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                Ok(k) => Err(MarketError::at(line, format!("index {k} outside 1..={n}"))),
                Err(_) => Err(MarketError::at(line, format!("invalid index `{w}`"))),
            }
        };
        let row = parse_index(i)?;
        let col = parse_index(j)?;
        if symmetry == Symmetry::Symmetric && row < col {
            return Err(MarketError::at(
                line,
                format!("entry ({}, {}) above the diagonal in a symmetric file", row + 1, col + 1),
            ));
        }
        entries.push(Entry {
            line,
            row,
            col,
            value: parse_value(line, v)?,
        });
    }
    Ok(entries)
}

fn read_array<'a>(
    content: &mut impl Iterator<Item = (usize, &'a str)>,
    n: usize,
    symmetry: Symmetry,
    size_line: usize,
) -> Result<Vec<Entry>, MarketError> {
    // Column-major; symmetric files list only i >= j of each column.
    let mut entries = Vec::new();
    let mut last_line = size_line;
    for col in 0..n {
        let start = if symmetry == Symmetry::Symmetric { col } else { 0 };
        for row in start..n {
            let (line, text) = content
                .next()
                .ok_or_else(|| MarketError::at(last_line + 1, "too few array values"))?;
            last_line = line;
            let mut words = text.split_whitespace();
            let word = words.next().expect("content lines are non-blank");
            if words.next().is_some() {
                return Err(MarketError::at(line, "expected one value per line"));
            }
            let value = parse_value(line, word)?;
            if value != 0.0 {
                entries.push(Entry {
                    line,
                    row,
                    col,
                    value,
                });
            }
        }
    }
    Ok(entries)
}

fn assemble(
    n: usize,
    entries: Vec<Entry>,
    symmetry: Symmetry,
    size_line: usize,
) -> Result<CscMatrix, MarketError> {
    let mut seen = std::collections::HashMap::with_capacity(entries.len());
    for e in &entries {
        if seen.insert((e.row, e.col), e.value).is_some() {
            return Err(MarketError::at(
                e.line,
                format!("duplicate entry ({}, {})", e.row + 1, e.col + 1),
            ));
        }
    }
    if symmetry == Symmetry::General {
        for e in &entries {
            let mirror = seen.get(&(e.col, e.row)).copied().unwrap_or(0.0);
            if mirror != e.value {
                return Err(MarketError::at(
                    e.line,
                    format!(
                        "matrix is not symmetric: ({}, {}) = {} but ({}, {}) = {}",
                        e.row + 1,
                        e.col + 1,
                        e.value,
                        e.col + 1,
                        e.row + 1,
                        mirror
                    ),
                ));
            }
        }
    }
    // A positive definite matrix has a positive diagonal; this also bounds
    // `n` by the amount of input before anything of size `n` is allocated.
    for k in 0..n {
        match seen.get(&(k, k)) {
            Some(&d) if d > 0.0 => {}
            Some(&d) => {
                let line = entries
                    .iter()
                    .find(|e| e.row == k && e.col == k)
                    .map_or(size_line, |e| e.line);
                return Err(MarketError::at(
                    line,
                    format!("diagonal entry ({0}, {0}) = {d} is not positive", k + 1),
                ));
            }
            None => {
                return Err(MarketError::at(
                    size_line,
                    format!("diagonal entry ({0}, {0}) is missing", k + 1),
                ))
            }
        }
    }

    let triplets = entries.into_iter().map(|e| (e.row, e.col, e.value));
    let built = match symmetry {
        Symmetry::Symmetric => CscMatrix::from_lower_triplets(n, triplets),
        Symmetry::General => CscMatrix::from_triplets(n, triplets),
    };
    built.map_err(|e| MarketError::at(size_line, e.to_string()))
}
