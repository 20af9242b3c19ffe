//! File formats: binary PPM images and numeric CSV tables.

pub mod ppm;

use std::io::Write;

use crate::color::{ColorCoord, ColorModelId, PixelBuffer};

/// Fixed-point text for `v`, never printing a negative zero.
pub fn fmt_fixed(v: f64, precision: usize) -> String {
    let s = format!("{v:.precision$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_owned()
    } else {
        s
    }
}

/// One CSV row per pixel in row-major order, headed by the component names.
pub fn write_coords_csv<W: Write>(
    out: W,
    model: ColorModelId,
    coords: &PixelBuffer<ColorCoord>,
    precision: usize,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(model.components().iter().map(|c| c.name))?;
    for c in coords.pixels() {
        w.write_record(c.components().iter().map(|v| fmt_fixed(*v, precision)))?;
    }
    w.flush()?;
    Ok(())
}
