//! File formats: BRF band/label rasters and binary PPM/PGM.
//!
//! BRF layout (all integers little-endian):
//!
//! | bytes | content                                      |
//! |-------|----------------------------------------------|
//! | 0..4  | magic `BRF1`                                 |
//! | 4..8  | width, u32                                   |
//! | 8..12 | height, u32                                  |
//! | 12    | dtype: `0x01` float32, `0x02` u16            |
//! | 13..  | row-major payload                            |

use std::fs;
use std::path::Path;

use super::{BandRaster, BinaryMask, GrayImage, Grid, LabelRaster, RgbImage};
use crate::error::{Error, Result};

pub const BRF_MAGIC: &[u8; 4] = b"BRF1";
pub const DTYPE_F32: u8 = 0x01;
pub const DTYPE_U16: u8 = 0x02;

const BRF_HEADER_LEN: usize = 13;

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn brf_header(width: usize, height: usize, dtype: u8) -> Result<Vec<u8>> {
    let w =
        u32::try_from(width).map_err(|_| Error::Format(format!("width {width} exceeds u32")))?;
    let h =
        u32::try_from(height).map_err(|_| Error::Format(format!("height {height} exceeds u32")))?;
    let mut out = Vec::with_capacity(BRF_HEADER_LEN);
    out.extend_from_slice(BRF_MAGIC);
    out.extend_from_slice(&w.to_le_bytes());
    out.extend_from_slice(&h.to_le_bytes());
    out.push(dtype);
    Ok(out)
}

/// Parses a BRF header and returns `(width, height, payload)`.
fn parse_brf(bytes: &[u8], want_dtype: u8) -> Result<(usize, usize, &[u8])> {
    if bytes.len() < BRF_HEADER_LEN {
        return Err(Error::Format(format!(
            "BRF header needs {BRF_HEADER_LEN} bytes, file has {}",
            bytes.len()
        )));
    }
    if &bytes[0..4] != BRF_MAGIC {
        return Err(Error::Format(format!("bad BRF magic {:?}", &bytes[0..4])));
    }
    let width = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let height = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let dtype = bytes[12];
    if dtype != DTYPE_F32 && dtype != DTYPE_U16 {
        return Err(Error::Format(format!("unknown BRF dtype 0x{dtype:02x}")));
    }
    if dtype != want_dtype {
        return Err(Error::Format(format!(
            "BRF dtype 0x{dtype:02x}, expected 0x{want_dtype:02x}"
        )));
    }
    Ok((width, height, &bytes[BRF_HEADER_LEN..]))
}

fn check_payload(width: usize, height: usize, payload: &[u8], elem: usize) -> Result<()> {
    let expected = width.saturating_mul(height);
    if payload.len() != expected.saturating_mul(elem) {
        return Err(Error::Truncated {
            expected,
            found: payload.len() / elem,
        });
    }
    Ok(())
}

pub fn read_band(path: impl AsRef<Path>) -> Result<BandRaster> {
    let bytes = read_file(path.as_ref())?;
    let (width, height, payload) = parse_brf(&bytes, DTYPE_F32)?;
    check_payload(width, height, payload, 4)?;
    let values = payload
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    BandRaster::new(width, height, values)
}

pub fn write_band(band: &BandRaster, path: impl AsRef<Path>) -> Result<()> {
    let mut out = brf_header(band.width(), band.height(), DTYPE_F32)?;
    out.reserve(band.as_slice().len() * 4);
    for v in band.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    write_file(path.as_ref(), &out)
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<LabelRaster> {
    let bytes = read_file(path.as_ref())?;
    let (width, height, payload) = parse_brf(&bytes, DTYPE_U16)?;
    check_payload(width, height, payload, 2)?;
    let classes = payload
        .chunks_exact(2)
        .map(|c| u16::from_le_bytes([c[0], c[1]]))
        .collect();
    Grid::from_vec(width, height, classes)
}

pub fn write_labels(labels: &LabelRaster, path: impl AsRef<Path>) -> Result<()> {
    let mut out = brf_header(labels.width(), labels.height(), DTYPE_U16)?;
    out.reserve(labels.len() * 2);
    for v in labels.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    write_file(path.as_ref(), &out)
}

fn pnm_bytes(
    magic: &str,
    width: usize,
    height: usize,
    payload: impl IntoIterator<Item = u8>,
) -> Vec<u8> {
    let mut out = format!("{magic}\n{width} {height}\n255\n").into_bytes();
    out.extend(payload);
    out
}

pub fn write_ppm(image: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    let bytes = pnm_bytes(
        "P6",
        image.width(),
        image.height(),
        image.as_slice().iter().flatten().copied(),
    );
    write_file(path.as_ref(), &bytes)
}

pub fn write_pgm(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let bytes = pnm_bytes(
        "P5",
        image.width(),
        image.height(),
        image.as_slice().iter().copied(),
    );
    write_file(path.as_ref(), &bytes)
}

/// Writes a mask as PGM with `true -> 255`, `false -> 0`.
pub fn write_pgm_mask(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let bytes = pnm_bytes(
        "P5",
        mask.width(),
        mask.height(),
        mask.as_slice().iter().map(|&b| if b { 255 } else { 0 }),
    );
    write_file(path.as_ref(), &bytes)
}

struct PnmHeader {
    width: usize,
    height: usize,
    data_start: usize,
}

/// Parses a binary netpbm header. Comments (`#` to end of line) are allowed
/// between tokens; exactly one whitespace byte separates maxval from data.
fn parse_pnm_header(bytes: &[u8], magic: &[u8; 2]) -> Result<PnmHeader> {
    if bytes.len() < 2 || &bytes[0..2] != magic {
        return Err(Error::Format(format!(
            "expected {} magic",
            String::from_utf8_lossy(magic)
        )));
    }
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in fields.iter_mut() {
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Format("malformed netpbm header".into()));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Format("netpbm header value out of range".into()))?;
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::Format(
            "missing whitespace after netpbm maxval".into(),
        ));
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(Error::Format(format!(
            "unsupported maxval {maxval}, only 255"
        )));
    }
    Ok(PnmHeader {
        width,
        height,
        data_start: pos + 1,
    })
}

fn pnm_payload<'a>(bytes: &'a [u8], header: &PnmHeader, channels: usize) -> Result<&'a [u8]> {
    let payload = &bytes[header.data_start..];
    check_payload(header.width, header.height, payload, channels)?;
    Ok(payload)
}

pub fn read_ppm(path: impl AsRef<Path>) -> Result<RgbImage> {
    let bytes = read_file(path.as_ref())?;
    let header = parse_pnm_header(&bytes, b"P6")?;
    let payload = pnm_payload(&bytes, &header, 3)?;
    let pixels = payload
        .chunks_exact(3)
        .map(|c| [c[0], c[1], c[2]])
        .collect();
    Grid::from_vec(header.width, header.height, pixels)
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let bytes = read_file(path.as_ref())?;
    let header = parse_pnm_header(&bytes, b"P5")?;
    let payload = pnm_payload(&bytes, &header, 1)?;
    Grid::from_vec(header.width, header.height, payload.to_vec())
}

/// Reads a PGM as a mask; any nonzero pixel is set.
pub fn read_pgm_mask(path: impl AsRef<Path>) -> Result<BinaryMask> {
    Ok(read_pgm(path)?.map(|&v| v != 0))
}
