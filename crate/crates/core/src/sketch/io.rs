//! Versioned binary container for built indexes.
//!
//! Layout (all integers and floats little-endian):
//!
//! ```text
//! magic "IPSK1"
//! n u64, d u64, kappa f64, seed u64, copies u64, gamma f64, node_count u64
//! per node, in (depth, bits) order:
//!   depth u8, bits u64, count u64, rows u64,
//!   copies × rows × d entries f64
//! ```
//!
//! The sketching coefficients themselves are not stored; queries only
//! need the per-node `Π·A` blocks.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::rng::Seed;
use crate::vector::RealVector;

use super::index::{MipsIndex, NodeId, NodeSketch};

const MAGIC: &[u8; 5] = b"IPSK1";

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn write_u64(w: &mut impl Write, v: u64) -> Result<()> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn write_f64(w: &mut impl Write, v: f64) -> Result<()> {
    Ok(w.write_all(&v.to_le_bytes())?)
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

fn read_len(r: &mut impl Read, what: &str, cap: u64) -> Result<usize> {
    let v = read_u64(r)?;
    if v == 0 || v > cap {
        return Err(format_err(format!("{what} {v} outside 1..={cap}")));
    }
    Ok(v as usize)
}

impl MipsIndex {
    /// Serializes the index in `IPSK1` layout. Output bytes are a pure
    /// function of the index contents.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(MAGIC)?;
        write_u64(w, self.len as u64)?;
        write_u64(w, self.dim as u64)?;
        write_f64(w, self.kappa)?;
        write_u64(w, self.seed.0)?;
        write_u64(w, self.copies as u64)?;
        write_f64(w, self.gamma)?;
        write_u64(w, self.nodes.len() as u64)?;
        for (id, sketch) in &self.nodes {
            w.write_all(&[id.depth as u8])?;
            write_u64(w, id.bits)?;
            write_u64(w, sketch.count as u64)?;
            write_u64(w, sketch.blocks[0].len() as u64)?;
            for block in &sketch.blocks {
                for row in block {
                    for &v in row.entries() {
                        write_f64(w, v)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Reads an `IPSK1` index back.
    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut magic = [0u8; 5];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(format_err("bad magic; not an IPSK1 index"));
        }
        let len = read_len(r, "data count", 1 << 48)?;
        let dim = read_len(r, "dimension", 1 << 32)?;
        let kappa = read_f64(r)?;
        if !(kappa >= 2.0 && kappa.is_finite()) {
            return Err(format_err(format!("stored kappa {kappa} invalid")));
        }
        let seed = Seed(read_u64(r)?);
        let copies = read_len(r, "copies", 1 << 16)?;
        let gamma = read_f64(r)?;
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(format_err(format!("stored gamma {gamma} invalid")));
        }
        let node_count = read_len(r, "node count", 1 << 32)?;
        let mut nodes = BTreeMap::new();
        for _ in 0..node_count {
            let mut depth = [0u8];
            r.read_exact(&mut depth)?;
            let depth = depth[0] as u32;
            let bits = read_u64(r)?;
            if depth > 63 || bits >> depth != 0 {
                return Err(format_err(format!("node ({depth}, {bits}) out of range")));
            }
            let count = read_len(r, "node data count", 1 << 48)?;
            let rows = read_len(r, "node rows", 1 << 32)?;
            let blocks = (0..copies)
                .map(|_| {
                    (0..rows)
                        .map(|_| {
                            let entries =
                                (0..dim).map(|_| read_f64(r)).collect::<Result<Vec<_>>>()?;
                            Ok(RealVector::from_unchecked(entries))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let id = NodeId { depth, bits };
            if nodes.insert(id, NodeSketch { count, blocks }).is_some() {
                return Err(format_err(format!("duplicate node ({depth}, {bits})")));
            }
        }
        if !nodes.contains_key(&NodeId::root()) {
            return Err(format_err("index has no root node"));
        }
        Ok(Self { len, dim, kappa, seed, copies, gamma, nodes })
    }

    /// [`write_to`](Self::write_to) into a fresh file.
    pub fn write_path(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        Ok(w.flush()?)
    }

    /// [`read_from`](Self::read_from) a file.
    pub fn read_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(&mut BufReader::new(File::open(path)?))
    }
}
