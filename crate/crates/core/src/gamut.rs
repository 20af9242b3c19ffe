//! Samples of the RGB cube expressed in another model, for 3-D scatter plots.

use std::io::Write;

use thiserror::Error;

use crate::color::{ColorCoord, ColorModelId, Rgb8};
use crate::io::fmt_fixed;
use crate::transforms::ConversionContext;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("stride must be in [1, 128], got {0}")]
pub struct StrideError(pub u32);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GamutRow {
    pub rgb: Rgb8,
    pub coord: ColorCoord,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GamutCloud {
    pub model: ColorModelId,
    pub stride: u32,
    pub rows: Vec<GamutRow>,
}

/// Channel levels 0, stride, 2·stride, … below 256: ⌈256/stride⌉ per axis.
pub fn levels(stride: u32) -> impl Iterator<Item = u8> {
    (0..256u32).step_by(stride.max(1) as usize).map(|v| v as u8)
}

pub fn sample_gamut(
    ctx: &ConversionContext,
    model: ColorModelId,
    stride: u32,
) -> Result<GamutCloud, StrideError> {
    if !(1..=128).contains(&stride) {
        return Err(StrideError(stride));
    }
    let mut rows = Vec::new();
    for r in levels(stride) {
        for g in levels(stride) {
            for b in levels(stride) {
                let rgb = Rgb8::new(r, g, b);
                rows.push(GamutRow {
                    rgb,
                    coord: ctx.forward_rgb8(model, rgb),
                });
            }
        }
    }
    Ok(GamutCloud {
        model,
        stride,
        rows,
    })
}

impl GamutCloud {
    /// Header `r,g,b,<components>`, coordinates at `precision` decimals.
    pub fn write_csv<W: Write>(&self, out: W, precision: usize) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["r", "g", "b"];
        header.extend(self.model.components().iter().map(|c| c.name));
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.rgb.channels().iter().map(u8::to_string).collect();
            rec.extend(row.coord.components().iter().map(|v| fmt_fixed(*v, precision)));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}
