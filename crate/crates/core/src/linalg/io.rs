//! Generator-matrix file format shared by all the CLI tools: a header line
//! `q k n` followed by k lines of n canonical integer encodings, whitespace
//! separated.

use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Arc;

use crate::gf::{Elt, Field};
use crate::linalg::{CodeBasis, Word};
use crate::{Error, Result};

/// Reads rows without the full-rank check (raw matrices are legal input for
/// selective backward reduction).
pub fn read_rows<R: BufRead>(reader: R) -> Result<(Arc<Field>, Vec<Word>)> {
    let mut tokens = Vec::new();
    for line in reader.lines() {
        let line = line?;
        for tok in line.split_whitespace() {
            tokens.push(
                tok.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad integer {tok:?}: {e}")))?,
            );
        }
    }
    if tokens.len() < 3 {
        return Err(Error::Parse("missing q k n header".into()));
    }
    let (q, k, n) = (tokens[0], tokens[1] as usize, tokens[2] as usize);
    if q > u32::MAX as u64 {
        return Err(Error::FieldTooLarge(q));
    }
    let field = Field::new(q as u32)?;
    let expected = 3 + k * n;
    if tokens.len() != expected {
        return Err(Error::Parse(format!(
            "expected {} entries for a {k} x {n} matrix, found {}",
            expected - 3,
            tokens.len() - 3
        )));
    }
    let mut rows = Vec::with_capacity(k);
    for r in 0..k {
        let elems: Vec<Elt> = tokens[3 + r * n..3 + (r + 1) * n]
            .iter()
            .map(|&v| {
                if v >= q {
                    Err(Error::InvalidElement(v as u32, q as u32))
                } else {
                    Ok(v as Elt)
                }
            })
            .collect::<Result<_>>()?;
        rows.push(Word::from_elems(field.clone(), &elems)?);
    }
    Ok((field, rows))
}

/// Reads and validates a full-rank generator matrix.
pub fn read_matrix<R: BufRead>(reader: R) -> Result<CodeBasis> {
    let (_, rows) = read_rows(reader)?;
    CodeBasis::from_rows(rows)
}

pub fn read_matrix_path<P: AsRef<Path>>(path: P) -> Result<CodeBasis> {
    let file = std::fs::File::open(path)?;
    read_matrix(std::io::BufReader::new(file))
}

pub fn read_rows_path<P: AsRef<Path>>(path: P) -> Result<(Arc<Field>, Vec<Word>)> {
    let file = std::fs::File::open(path)?;
    read_rows(std::io::BufReader::new(file))
}

pub fn write_rows<W: Write>(mut writer: W, field: &Field, rows: &[Word]) -> Result<()> {
    let n = rows.first().map_or(0, Word::len);
    writeln!(writer, "{} {} {}", field.q(), rows.len(), n)?;
    for row in rows {
        let line: Vec<String> = (0..row.len()).map(|i| row.get(i).to_string()).collect();
        writeln!(writer, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn write_matrix<W: Write>(writer: W, basis: &CodeBasis) -> Result<()> {
    write_rows(writer, basis.field(), basis.rows())
}

pub fn write_matrix_path<P: AsRef<Path>>(path: P, basis: &CodeBasis) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_matrix(std::io::BufWriter::new(file), basis)
}
