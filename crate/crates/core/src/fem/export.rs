//! Field export: CSV and a little-endian binary dump.
//!
//! Binary layout:
//!
//! | bytes | content |
//! |-------|---------|
//! | 8     | magic `NAVFIELD` |
//! | 4     | format version, `u32` |
//! | 8     | node count, `u64` |
//! | 8     | unknowns per node, `u64` (always 2) |
//! | 16 n  | node coordinates `x, y` as `f64` |
//! | 16 n  | displacements `u_x, u_y` as `f64`, interleaved per node |

use super::mesh::StructuredMesh;
use crate::error::{Error, Result};
use std::io::{Read, Write};
use std::path::Path;

pub const MAGIC: &[u8; 8] = b"NAVFIELD";
pub const VERSION: u32 = 1;

fn check_len(mesh: &StructuredMesh, u: &[f64]) -> Result<()> {
    if u.len() != mesh.unknown_count() {
        return Err(Error::DimensionMismatch {
            expected: mesh.unknown_count(),
            got: u.len(),
        });
    }
    Ok(())
}

/// Writes `node,x,y,u_x,u_y` rows with round-trip precision.
pub fn write_csv<W: Write>(out: &mut W, mesh: &StructuredMesh, u: &[f64]) -> Result<()> {
    check_len(mesh, u)?;
    writeln!(out, "node,x,y,u_x,u_y")?;
    for (n, p) in mesh.nodes.iter().enumerate() {
        writeln!(
            out,
            "{n},{:.16e},{:.16e},{:.16e},{:.16e}",
            p[0],
            p[1],
            u[2 * n],
            u[2 * n + 1]
        )?;
    }
    Ok(())
}

pub fn write_binary<W: Write>(out: &mut W, mesh: &StructuredMesh, u: &[f64]) -> Result<()> {
    check_len(mesh, u)?;
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&(mesh.node_count() as u64).to_le_bytes())?;
    out.write_all(&2u64.to_le_bytes())?;
    for p in &mesh.nodes {
        out.write_all(&p[0].to_le_bytes())?;
        out.write_all(&p[1].to_le_bytes())?;
    }
    for v in u {
        out.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Contents of a binary dump.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldDump {
    pub nodes: Vec<[f64; 2]>,
    pub displacement: Vec<f64>,
}

pub fn read_binary<R: Read>(input: &mut R) -> Result<FieldDump> {
    let mut magic = [0u8; 8];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Config("not a field dump (bad magic)".into()));
    }
    let mut b4 = [0u8; 4];
    input.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != VERSION {
        return Err(Error::Config(format!("unsupported field dump version {version}")));
    }
    let mut b8 = [0u8; 8];
    let mut read_u64 = |input: &mut R| -> Result<u64> {
        input.read_exact(&mut b8)?;
        Ok(u64::from_le_bytes(b8))
    };
    let count = read_u64(input)? as usize;
    let per_node = read_u64(input)? as usize;
    if per_node != 2 {
        return Err(Error::Config(format!("expected 2 unknowns per node, found {per_node}")));
    }
    let read_f64 = |input: &mut R| -> Result<f64> {
        let mut b = [0u8; 8];
        input.read_exact(&mut b)?;
        Ok(f64::from_le_bytes(b))
    };
    let mut nodes = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        nodes.push([read_f64(input)?, read_f64(input)?]);
    }
    let mut displacement = Vec::with_capacity(2 * count.min(1 << 20));
    for _ in 0..2 * count {
        displacement.push(read_f64(input)?);
    }
    Ok(FieldDump { nodes, displacement })
}

/// Writes `bytes` to `path` through a temporary sibling file and a rename,
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Config(format!("output path {} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}
