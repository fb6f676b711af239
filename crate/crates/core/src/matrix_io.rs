//! Plain-text generator matrices.
//!
//! The first line holds `p e rows cols`; then come `rows * cols` integers in
//! row-major order, each the encoding of a field element, one matrix row per
//! line.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{make_field, FieldElement};
use crate::linear::LinearCode;

pub fn write_matrix<W: Write>(code: &LinearCode, mut out: W) -> Result<()> {
    let f = code.field();
    writeln!(
        out,
        "{} {} {} {}",
        f.characteristic(),
        f.degree(),
        code.k(),
        code.n()
    )?;
    for row in code.generator() {
        let line: Vec<String> = row.iter().map(|x| x.encoding().to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

pub fn export_matrix(code: &LinearCode, path: &Path) -> Result<()> {
    let file = fs::File::create(path)?;
    write_matrix(code, BufWriter::new(file))
}

fn number<T: std::str::FromStr>(token: Option<&str>, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| Error::Parse(format!("matrix file ends before {what}")))?;
    token
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}: {token:?}")))
}

/// Parses a matrix and returns the code it spans.
pub fn read_matrix<R: Read>(mut input: R) -> Result<LinearCode> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let mut tokens = text.split_whitespace();
    let p: u32 = number(tokens.next(), "characteristic")?;
    let e: u32 = number(tokens.next(), "extension degree")?;
    let rows: usize = number(tokens.next(), "row count")?;
    let cols: usize = number(tokens.next(), "column count")?;
    let field = make_field(p, e).map_err(|err| Error::Parse(format!("matrix header: {err}")))?;
    let mut matrix = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for c in 0..cols {
            let v: u32 = number(tokens.next(), &format!("entry ({r}, {c})"))?;
            row.push(field.element(v).map_err(|_| {
                Error::Parse(format!(
                    "entry ({r}, {c}) = {v} is not below {}",
                    field.order()
                ))
            })?);
        }
        matrix.push(row);
    }
    if let Some(extra) = tokens.next() {
        return Err(Error::Parse(format!(
            "trailing data after the matrix: {extra:?}"
        )));
    }
    let code = LinearCode::row_space_basis(field, cols, matrix.clone())?;
    if code.k() != rows {
        return Err(Error::Parse(format!(
            "matrix rows are dependent: rank {} of {rows}",
            code.k()
        )));
    }
    Ok(code)
}

pub fn import_matrix(path: &Path) -> Result<LinearCode> {
    read_matrix(fs::File::open(path)?)
}

/// Entries of a code's generator as encodings, for callers that want raw numbers.
pub fn encodings(code: &LinearCode) -> Vec<Vec<u32>> {
    code.generator()
        .iter()
        .map(|row| row.iter().map(|x: &FieldElement| x.encoding()).collect())
        .collect()
}
