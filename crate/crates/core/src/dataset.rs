//! Plain-text dataset files.
//!
//! A dataset is a header line followed by one vector per line:
//!
//! ```text
//! # domain=sign dim=4 count=2
//! ++-+
//! -+--
//! ```
//!
//! Binary vectors are unseparated `0`/`1` characters, sign vectors
//! unseparated `+`/`-`, and real vectors comma-separated decimal literals.
//! Real entries are written with the shortest representation that parses
//! back to the identical `f64`, so a write/read roundtrip is lossless for
//! every domain.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{BinaryVector, RealVector, SignVector};

/// Entry domain of a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// Entries in `{0,1}`.
    Binary,
    /// Entries in `{-1,+1}`.
    Sign,
    /// Finite `f64` entries.
    Real,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Binary => "binary",
            Domain::Sign => "sign",
            Domain::Real => "real",
        })
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(Domain::Binary),
            "sign" => Ok(Domain::Sign),
            "real" => Ok(Domain::Real),
            other => Err(Error::Format(format!(
                "unknown domain {other:?}, expected binary, sign or real"
            ))),
        }
    }
}

/// A non-empty collection of equal-dimension vectors from one domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Dataset {
    /// Vectors over `{0,1}`.
    Binary(Vec<BinaryVector>),
    /// Vectors over `{-1,+1}`.
    Sign(Vec<SignVector>),
    /// Vectors over the reals.
    Real(Vec<RealVector>),
}

fn check_uniform(dims: impl Iterator<Item = usize>) -> Result<usize> {
    let mut dims = dims.peekable();
    let first = *dims
        .peek()
        .ok_or_else(|| Error::InvalidParameter("dataset must contain at least one vector".into()))?;
    for (i, dim) in dims.enumerate() {
        if dim != first {
            return Err(Error::InvalidParameter(format!(
                "vector {i} has dimension {dim}, expected {first}"
            )));
        }
    }
    Ok(first)
}

impl Dataset {
    /// Wraps binary vectors, validating non-emptiness and uniform dimension.
    pub fn binary(vectors: Vec<BinaryVector>) -> Result<Self> {
        check_uniform(vectors.iter().map(|v| v.dim()))?;
        Ok(Dataset::Binary(vectors))
    }

    /// Wraps sign vectors, validating non-emptiness and uniform dimension.
    pub fn sign(vectors: Vec<SignVector>) -> Result<Self> {
        check_uniform(vectors.iter().map(|v| v.dim()))?;
        Ok(Dataset::Sign(vectors))
    }

    /// Wraps real vectors, validating non-emptiness and uniform dimension.
    pub fn real(vectors: Vec<RealVector>) -> Result<Self> {
        check_uniform(vectors.iter().map(|v| v.dim()))?;
        Ok(Dataset::Real(vectors))
    }

    /// Entry domain.
    pub fn domain(&self) -> Domain {
        match self {
            Dataset::Binary(_) => Domain::Binary,
            Dataset::Sign(_) => Domain::Sign,
            Dataset::Real(_) => Domain::Real,
        }
    }

    /// Number of vectors (always positive).
    pub fn len(&self) -> usize {
        match self {
            Dataset::Binary(v) => v.len(),
            Dataset::Sign(v) => v.len(),
            Dataset::Real(v) => v.len(),
        }
    }

    /// Always false; kept for iterator-style ergonomics.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Common dimension of the vectors.
    pub fn dim(&self) -> usize {
        match self {
            Dataset::Binary(v) => v[0].dim(),
            Dataset::Sign(v) => v[0].dim(),
            Dataset::Real(v) => v[0].dim(),
        }
    }

    /// Borrows the binary payload, if that is the domain.
    pub fn as_binary(&self) -> Option<&[BinaryVector]> {
        match self {
            Dataset::Binary(v) => Some(v),
            _ => None,
        }
    }

    /// Borrows the sign payload, if that is the domain.
    pub fn as_sign(&self) -> Option<&[SignVector]> {
        match self {
            Dataset::Sign(v) => Some(v),
            _ => None,
        }
    }

    /// Borrows the real payload, if that is the domain.
    pub fn as_real(&self) -> Option<&[RealVector]> {
        match self {
            Dataset::Real(v) => Some(v),
            _ => None,
        }
    }

    /// Copies every vector into real coordinates (binary as `{0, 1}`,
    /// signs as `{-1, 1}`).
    pub fn to_real_rows(&self) -> Vec<RealVector> {
        match self {
            Dataset::Binary(v) => v
                .iter()
                .map(|b| {
                    RealVector::from_unchecked(b.entries().iter().map(|&e| e as f64).collect())
                })
                .collect(),
            Dataset::Sign(v) => v
                .iter()
                .map(|s| {
                    RealVector::from_unchecked(s.entries().iter().map(|&e| e as f64).collect())
                })
                .collect(),
            Dataset::Real(v) => v.clone(),
        }
    }

    /// Writes the header and one line per vector.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "# domain={} dim={} count={}",
            self.domain(),
            self.dim(),
            self.len()
        )?;
        match self {
            Dataset::Binary(vectors) => {
                for v in vectors {
                    let line: String =
                        v.entries().iter().map(|&e| if e == 1 { '1' } else { '0' }).collect();
                    writeln!(out, "{line}")?;
                }
            }
            Dataset::Sign(vectors) => {
                for v in vectors {
                    let line: String =
                        v.entries().iter().map(|&e| if e == 1 { '+' } else { '-' }).collect();
                    writeln!(out, "{line}")?;
                }
            }
            Dataset::Real(vectors) => {
                for v in vectors {
                    let line = v
                        .entries()
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    writeln!(out, "{line}")?;
                }
            }
        }
        Ok(())
    }

    /// Parses a dataset, validating the header against the payload.
    pub fn read_from<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("missing dataset header".into()))??;
        let (domain, dim, count) = parse_header(header.trim_end())?;

        let mut binary = Vec::new();
        let mut sign = Vec::new();
        let mut real = Vec::new();
        for (row, line) in lines.enumerate() {
            let line = line?;
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            match domain {
                Domain::Binary => binary.push(parse_binary_line(row, line, dim)?),
                Domain::Sign => sign.push(parse_sign_line(row, line, dim)?),
                Domain::Real => real.push(parse_real_line(row, line, dim)?),
            }
        }
        let found = binary.len() + sign.len() + real.len();
        if found != count {
            return Err(Error::Format(format!(
                "header promises {count} vectors, found {found}"
            )));
        }
        match domain {
            Domain::Binary => Dataset::binary(binary),
            Domain::Sign => Dataset::sign(sign),
            Domain::Real => Dataset::real(real),
        }
    }

    /// Writes to a file path.
    pub fn write_path<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        self.write_to(BufWriter::new(File::create(path)?))
    }

    /// Reads from a file path.
    pub fn read_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

fn parse_header(line: &str) -> Result<(Domain, usize, usize)> {
    let bad = || Error::Format(format!("malformed header {line:?}"));
    let rest = line.strip_prefix('#').ok_or_else(bad)?.trim();
    let mut domain = None;
    let mut dim = None;
    let mut count = None;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(bad)?;
        match key {
            "domain" => domain = Some(value.parse::<Domain>()?),
            "dim" => dim = Some(value.parse::<usize>().map_err(|_| bad())?),
            "count" => count = Some(value.parse::<usize>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    match (domain, dim, count) {
        (Some(domain), Some(dim), Some(count)) => Ok((domain, dim, count)),
        _ => Err(bad()),
    }
}

fn check_line_dim(row: usize, got: usize, want: usize) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::Format(format!(
            "vector {row} has {got} entries, header says {want}"
        )))
    }
}

fn parse_binary_line(row: usize, line: &str, dim: usize) -> Result<BinaryVector> {
    check_line_dim(row, line.chars().count(), dim)?;
    let entries = line
        .chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            other => Err(Error::Format(format!(
                "vector {row} contains {other:?}, expected 0 or 1"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BinaryVector::from_unchecked(entries))
}

fn parse_sign_line(row: usize, line: &str, dim: usize) -> Result<SignVector> {
    check_line_dim(row, line.chars().count(), dim)?;
    let entries = line
        .chars()
        .map(|c| match c {
            '+' => Ok(1i8),
            '-' => Ok(-1i8),
            other => Err(Error::Format(format!(
                "vector {row} contains {other:?}, expected + or -"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignVector::from_unchecked(entries))
}

fn parse_real_line(row: usize, line: &str, dim: usize) -> Result<RealVector> {
    let entries = line
        .split(',')
        .map(|field| {
            field.trim().parse::<f64>().map_err(|_| {
                Error::Format(format!("vector {row} has unparseable entry {field:?}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_line_dim(row, entries.len(), dim)?;
    RealVector::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(ds: &Dataset) -> Dataset {
        let mut buf = Vec::new();
        ds.write_to(&mut buf).unwrap();
        Dataset::read_from(buf.as_slice()).unwrap()
    }

    #[test]
    fn binary_roundtrip() {
        let ds = Dataset::binary(vec![
            BinaryVector::new(vec![1, 0, 1]).unwrap(),
            BinaryVector::new(vec![0, 0, 1]).unwrap(),
        ])
        .unwrap();
        assert_eq!(roundtrip(&ds), ds);
    }

    #[test]
    fn sign_roundtrip() {
        let ds = Dataset::sign(vec![
            SignVector::new(vec![1, -1, 1, 1]).unwrap(),
            SignVector::new(vec![-1, -1, 1, -1]).unwrap(),
        ])
        .unwrap();
        assert_eq!(roundtrip(&ds), ds);
    }

    #[test]
    fn real_roundtrip_is_bit_exact() {
        let ds = Dataset::real(vec![
            RealVector::new(vec![0.1, -2.5e-17, 3.0]).unwrap(),
            RealVector::new(vec![1.0 / 3.0, f64::MIN_POSITIVE, -0.0]).unwrap(),
        ])
        .unwrap();
        assert_eq!(roundtrip(&ds), ds);
    }

    #[test]
    fn header_is_validated() {
        assert!(Dataset::read_from("no header\n".as_bytes()).is_err());
        assert!(Dataset::read_from("# domain=hex dim=2 count=1\n01\n".as_bytes()).is_err());
        assert!(Dataset::read_from("# domain=binary dim=2\n01\n".as_bytes()).is_err());
    }

    #[test]
    fn count_and_dim_mismatches_are_rejected() {
        assert!(Dataset::read_from("# domain=binary dim=2 count=2\n01\n".as_bytes()).is_err());
        assert!(Dataset::read_from("# domain=binary dim=3 count=1\n01\n".as_bytes()).is_err());
        assert!(Dataset::read_from("# domain=sign dim=2 count=1\n+x\n".as_bytes()).is_err());
        assert!(Dataset::read_from("# domain=real dim=2 count=1\n1.0,oops\n".as_bytes()).is_err());
    }

    #[test]
    fn empty_dataset_is_rejected() {
        assert!(Dataset::binary(vec![]).is_err());
        assert!(Dataset::read_from("# domain=real dim=2 count=0\n".as_bytes()).is_err());
    }

    #[test]
    fn domain_parses_and_displays() {
        for domain in [Domain::Binary, Domain::Sign, Domain::Real] {
            assert_eq!(domain.to_string().parse::<Domain>().unwrap(), domain);
        }
        assert!("Sign".parse::<Domain>().is_err());
    }
}
