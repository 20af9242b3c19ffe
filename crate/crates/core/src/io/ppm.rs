//! Binary PPM (P6) with maxval 255.
//!
//! The header bytes of a parsed file are kept, so writing an unmodified image
//! reproduces the input exactly.

use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::color::{PixelBuffer, Rgb8};

#[derive(Debug, Error)]
pub enum PpmError {
    #[error("not a binary PPM: expected magic P6")]
    BadMagic,
    #[error("malformed PPM header: {0}")]
    Header(&'static str),
    #[error("unsupported maxval {0}; only 255 is accepted")]
    MaxVal(u64),
    #[error("truncated pixel payload: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("{0} unexpected bytes after the pixel payload")]
    Trailing(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PpmImage {
    header: Vec<u8>,
    buffer: PixelBuffer<Rgb8>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<u64, PpmError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PpmError::Header("expected a decimal number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(PpmError::Header("number out of range"))
    }
}

impl PpmImage {
    pub fn new(buffer: PixelBuffer<Rgb8>) -> Self {
        let header = format!("P6\n{} {}\n255\n", buffer.width(), buffer.height()).into_bytes();
        Self { header, buffer }
    }

    pub fn parse(bytes: &[u8]) -> Result<Self, PpmError> {
        if !bytes.starts_with(b"P6") {
            return Err(PpmError::BadMagic);
        }
        let mut cur = Cursor { bytes, pos: 2 };
        let width = cur.number()?;
        let height = cur.number()?;
        let maxval = cur.number()?;
        if maxval != 255 {
            return Err(PpmError::MaxVal(maxval));
        }
        match bytes.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(PpmError::Header("missing whitespace after maxval")),
        }
        let (width, height) = (
            usize::try_from(width).map_err(|_| PpmError::Header("width too large"))?,
            usize::try_from(height).map_err(|_| PpmError::Header("height too large"))?,
        );
        if width == 0 || height == 0 {
            return Err(PpmError::Header("zero width or height"));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(3))
            .ok_or(PpmError::Header("image too large"))?;
        let payload = &bytes[cur.pos..];
        if payload.len() < expected {
            return Err(PpmError::Truncated {
                expected,
                got: payload.len(),
            });
        }
        if payload.len() > expected {
            return Err(PpmError::Trailing(payload.len() - expected));
        }
        let pixels = payload
            .chunks_exact(3)
            .map(|p| Rgb8::new(p[0], p[1], p[2]))
            .collect();
        let buffer = PixelBuffer::new(width, height, pixels).expect("shape checked above");
        Ok(Self {
            header: bytes[..cur.pos].to_vec(),
            buffer,
        })
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self, PpmError> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        Self::parse(&bytes)
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self, PpmError> {
        Self::parse(&std::fs::read(path)?)
    }

    pub fn buffer(&self) -> &PixelBuffer<Rgb8> {
        &self.buffer
    }

    pub fn into_buffer(self) -> PixelBuffer<Rgb8> {
        self.buffer
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.header.len() + 3 * self.buffer.pixels().len());
        out.extend_from_slice(&self.header);
        for p in self.buffer.pixels() {
            out.extend_from_slice(&p.channels());
        }
        out
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(&self.to_bytes())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> io::Result<()> {
        std::fs::write(path, self.to_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_header() {
        let img = PpmImage::new(PixelBuffer::filled(2, 1, Rgb8::new(1, 2, 3)).unwrap());
        assert_eq!(img.to_bytes(), b"P6\n2 1\n255\n\x01\x02\x03\x01\x02\x03");
    }

    #[test]
    fn comments_and_odd_spacing_are_preserved() {
        let bytes = b"P6 # made by hand\n1\t1 # size\n255 \xff\x00\x80".to_vec();
        let img = PpmImage::parse(&bytes).unwrap();
        assert_eq!(img.buffer().pixels(), &[Rgb8::new(255, 0, 128)]);
        assert_eq!(img.to_bytes(), bytes);
    }

    #[test]
    fn errors() {
        assert!(matches!(PpmImage::parse(b"P3\n1 1\n255\n"), Err(PpmError::BadMagic)));
        assert!(matches!(PpmImage::parse(b"P6\n1 1\n65535\n"), Err(PpmError::MaxVal(65535))));
        assert!(matches!(
            PpmImage::parse(b"P6\n2 1\n255\n\x00\x00\x00"),
            Err(PpmError::Truncated { expected: 6, got: 3 })
        ));
        assert!(matches!(PpmImage::parse(b"P6\n1 1\n255\n\x00\x00\x00\x00"), Err(PpmError::Trailing(1))));
        assert!(matches!(PpmImage::parse(b"P6\nx 1\n255\n"), Err(PpmError::Header(_))));
        assert!(matches!(PpmImage::parse(b"P6\n0 1\n255\n"), Err(PpmError::Header(_))));
    }
}
