//! Netpbm PGM reader/writer: binary P5 and ASCII P2, maxval up to 255.

use std::fs;
use std::io::Write;
use std::path::Path;

use robust_subspace::Matrix;

use crate::error::CliError;

fn malformed(path: &Path, why: &str) -> CliError {
    CliError::Dataset(format!("malformed PGM header in {}: {why}", path.display()))
}

/// Pulls the next whitespace-delimited token, skipping `#` comments per
/// the Netpbm spec.
fn next_token(bytes: &[u8], pos: &mut usize) -> Option<Vec<u8>> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    if *pos >= bytes.len() {
        return None;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    Some(bytes[start..*pos].to_vec())
}

fn parse_number(token: &[u8]) -> Option<usize> {
    std::str::from_utf8(token).ok()?.parse().ok()
}

/// Parses PGM bytes into a matrix of pixel values (row-major, as stored).
pub fn parse_pgm(bytes: &[u8], path: &Path) -> Result<Matrix, CliError> {
    let mut pos = 0usize;
    let magic = next_token(bytes, &mut pos).ok_or_else(|| malformed(path, "empty file"))?;
    let binary = match magic.as_slice() {
        b"P5" => true,
        b"P2" => false,
        _ => return Err(malformed(path, "magic number is not P5 or P2")),
    };
    let width = next_token(bytes, &mut pos)
        .and_then(|t| parse_number(&t))
        .ok_or_else(|| malformed(path, "missing or invalid width"))?;
    let height = next_token(bytes, &mut pos)
        .and_then(|t| parse_number(&t))
        .ok_or_else(|| malformed(path, "missing or invalid height"))?;
    let maxval = next_token(bytes, &mut pos)
        .and_then(|t| parse_number(&t))
        .ok_or_else(|| malformed(path, "missing or invalid maxval"))?;
    if width == 0 || height == 0 {
        return Err(malformed(path, "zero width or height"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(malformed(path, "maxval must be in 1..=255"));
    }

    let n = width * height;
    let mut data = Vec::with_capacity(n);
    if binary {
        // exactly one whitespace byte separates the header from raster data
        if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
            return Err(malformed(path, "missing whitespace before raster data"));
        }
        pos += 1;
        if bytes.len() - pos < n {
            return Err(malformed(path, "truncated raster data"));
        }
        data.extend(bytes[pos..pos + n].iter().map(|&b| b as f64));
    } else {
        for _ in 0..n {
            let v = next_token(bytes, &mut pos)
                .and_then(|t| parse_number(&t))
                .ok_or_else(|| malformed(path, "truncated ASCII raster data"))?;
            if v > maxval {
                return Err(malformed(path, "pixel exceeds maxval"));
            }
            data.push(v as f64);
        }
    }
    Matrix::new(height, width, data)
        .map_err(|e| CliError::Dataset(format!("{}: {e}", path.display())))
}

pub fn read_pgm(path: &Path) -> Result<Matrix, CliError> {
    let bytes = fs::read(path)?;
    parse_pgm(&bytes, path)
}

/// Writes a matrix as binary P5, clamping and rounding entries to 0..=255.
pub fn write_pgm(path: &Path, image: &Matrix) -> Result<(), CliError> {
    let mut out = Vec::with_capacity(image.rows() * image.cols() + 32);
    write!(out, "P5\n{} {}\n255\n", image.cols(), image.rows())?;
    for i in 0..image.rows() {
        for j in 0..image.cols() {
            out.push(image.get(i, j).round().clamp(0.0, 255.0) as u8);
        }
    }
    fs::write(path, out)?;
    Ok(())
}
