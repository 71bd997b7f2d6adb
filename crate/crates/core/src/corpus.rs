//! Plain-text corpus format for matrix sets.
//!
//! A corpus is a sequence of blocks separated by blank lines. Each block is
//! the order `n` on its own line followed by `n` rows of `n` space-separated
//! symbols. Lines starting with `#` are comments; a comment before the first
//! block is kept as the corpus source note. A single order-2 square renders
//! as `"2\n1 2\n2 1\n"`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::square::SquareMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCorpus {
    pub source: Option<String>,
    pub matrices: Vec<SquareMatrix>,
}

impl MatrixCorpus {
    pub fn new(matrices: Vec<SquareMatrix>) -> MatrixCorpus {
        MatrixCorpus {
            source: None,
            matrices,
        }
    }

    pub fn with_source(source: impl Into<String>, matrices: Vec<SquareMatrix>) -> MatrixCorpus {
        MatrixCorpus {
            source: Some(source.into()),
            matrices,
        }
    }
}

pub fn render(corpus: &MatrixCorpus) -> String {
    let mut out = String::new();
    if let Some(source) = &corpus.source {
        writeln!(out, "# {source}").unwrap();
    }
    for (i, m) in corpus.matrices.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "{}", m.n()).unwrap();
        for row in m.rows() {
            let text = row
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(out, "{text}").unwrap();
        }
    }
    out
}

/// Parses a corpus, reporting the 1-based input line of any defect. Extra
/// blank lines are tolerated anywhere between blocks.
pub fn parse(text: &str) -> Result<MatrixCorpus> {
    let mut source: Option<String> = None;
    let mut matrices = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    loop {
        // Skip blanks and comments; the first comment seen before any block
        // becomes the source note.
        let (lineno, header) = loop {
            match lines.next() {
                None => {
                    return Ok(MatrixCorpus { source, matrices });
                }
                Some((idx, raw)) => {
                    let trimmed = raw.trim();
                    if trimmed.is_empty() {
                        continue;
                    }
                    if let Some(comment) = trimmed.strip_prefix('#') {
                        if source.is_none() && matrices.is_empty() {
                            source = Some(comment.trim().to_string());
                        }
                        continue;
                    }
                    break (idx + 1, trimmed);
                }
            }
        };
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("expected a matrix order, found {header:?}"),
        })?;
        if n == 0 || n > 255 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("order {n} is outside 1..=255"),
            });
        }
        let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
        for _ in 0..n {
            let (idx, raw) = lines.next().ok_or(Error::Parse {
                line: lineno,
                message: format!("matrix of order {n} is missing rows"),
            })?;
            let row_line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                return Err(Error::Parse {
                    line: row_line,
                    message: format!("expected a matrix row, found {:?}", raw.trim()),
                });
            }
            let mut row = Vec::with_capacity(n);
            for token in trimmed.split_whitespace() {
                let v: usize = token.parse().map_err(|_| Error::Parse {
                    line: row_line,
                    message: format!("{token:?} is not a symbol"),
                })?;
                if v == 0 || v > n {
                    return Err(Error::Parse {
                        line: row_line,
                        message: format!("symbol {v} is outside 1..={n}"),
                    });
                }
                row.push(v as u8);
            }
            if row.len() != n {
                return Err(Error::Parse {
                    line: row_line,
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        let matrix = SquareMatrix::from_rows(rows).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        matrices.push(matrix);
    }
}
