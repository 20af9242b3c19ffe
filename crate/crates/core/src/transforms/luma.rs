//! Luma-chroma models: YIQ, YUV and YCbCr.

use serde::{Deserialize, Serialize};

use super::cie::{mat_vec, Matrix3};
use crate::color::{quantize_255, ColorCoord, ColorModelId, Rgb8, UnitRgb};

pub const RGB_TO_YIQ: Matrix3 = [
    [0.299, 0.587, 0.114],
    [0.596, -0.274, -0.322],
    [0.211, -0.523, 0.312],
];

pub const YIQ_TO_RGB: Matrix3 = [
    [1.000, 0.956, 0.621],
    [1.000, -0.272, -0.647],
    [1.000, -1.106, 1.703],
];

pub const RGB_TO_YUV: Matrix3 = [
    [0.299, 0.587, 0.114],
    [-0.147, -0.289, 0.436],
    [0.615, -0.515, -0.100],
];

pub const YUV_TO_RGB: Matrix3 = [
    [1.000, 0.000, 1.140],
    [1.000, -0.396, -0.581],
    [1.000, 2.029, 0.000],
];

pub const RGB_TO_YCBCR: Matrix3 = [
    [0.299, 0.587, 0.114],
    [-0.1687, -0.3313, 0.5000],
    [0.5000, -0.4187, -0.0813],
];

pub const YCBCR_TO_RGB: Matrix3 = [
    [1.000, 0.000, 1.402],
    [1.000, -0.344, -0.714],
    [1.000, 1.772, 0.000],
];

const CHROMA_OFFSET: f64 = 128.0;
const STUDIO_LUMA_SCALE: f64 = 219.0 / 255.0;
const STUDIO_CHROMA_SCALE: f64 = 224.0 / 255.0;

/// Luma offset and range handling for YCbCr.
///
/// The forward transform always adds (0, 128, 128) to the matrix product;
/// `luma_offset` is what the inverse subtracts from Y before the inverse
/// matrix. With `studio_range`, Y is squeezed into [16, 235] and chroma into
/// [16, 240] on the way in, and expanded again on the way out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YcbcrParams {
    pub luma_offset: f64,
    pub studio_range: bool,
}

impl YcbcrParams {
    /// Self-consistent full-range pair (offset 0).
    pub const FULL_RANGE: YcbcrParams = YcbcrParams {
        luma_offset: 0.0,
        studio_range: false,
    };

    /// The printed inverse, which subtracts 16 from a full-range Y.
    pub const AS_PRINTED: YcbcrParams = YcbcrParams {
        luma_offset: 16.0,
        studio_range: false,
    };

    /// BT.601 studio swing: Y in [16, 235], Cb/Cr in [16, 240].
    pub const BT601_STUDIO: YcbcrParams = YcbcrParams {
        luma_offset: 16.0,
        studio_range: true,
    };
}

impl Default for YcbcrParams {
    fn default() -> Self {
        Self::FULL_RANGE
    }
}

pub fn rgb_to_yiq(c: UnitRgb) -> ColorCoord {
    let [y, i, q] = mat_vec(&RGB_TO_YIQ, c.as_array());
    ColorCoord::triple(ColorModelId::Yiq, y, i, q)
}

pub fn yiq_to_rgb(y: f64, i: f64, q: f64) -> UnitRgb {
    let [r, g, b] = mat_vec(&YIQ_TO_RGB, [y, i, q]);
    UnitRgb::new(r, g, b)
}

pub fn rgb_to_yuv(c: UnitRgb) -> ColorCoord {
    let [y, u, v] = mat_vec(&RGB_TO_YUV, c.as_array());
    ColorCoord::triple(ColorModelId::Yuv, y, u, v)
}

pub fn yuv_to_rgb(y: f64, u: f64, v: f64) -> UnitRgb {
    let [r, g, b] = mat_vec(&YUV_TO_RGB, [y, u, v]);
    UnitRgb::new(r, g, b)
}

/// YCbCr on the 0–255 scale.
pub fn rgb_to_ycbcr(c: Rgb8, params: &YcbcrParams) -> ColorCoord {
    ycbcr_from_rgb255(
        [f64::from(c.r), f64::from(c.g), f64::from(c.b)],
        params,
    )
}

pub fn ycbcr_to_rgb(y: f64, cb: f64, cr: f64, params: &YcbcrParams) -> Rgb8 {
    let [r, g, b] = ycbcr_to_rgb255(y, cb, cr, params);
    Rgb8::new(quantize_255(r), quantize_255(g), quantize_255(b))
}

pub(crate) fn ycbcr_from_unit(c: UnitRgb, params: &YcbcrParams) -> ColorCoord {
    ycbcr_from_rgb255(c.as_array().map(|v| v * 255.0), params)
}

pub(crate) fn ycbcr_to_unit(y: f64, cb: f64, cr: f64, params: &YcbcrParams) -> UnitRgb {
    let [r, g, b] = ycbcr_to_rgb255(y, cb, cr, params);
    UnitRgb::new(r / 255.0, g / 255.0, b / 255.0)
}

#[inline]
fn ycbcr_from_rgb255(rgb: [f64; 3], params: &YcbcrParams) -> ColorCoord {
    let [y, cb, cr] = mat_vec(&RGB_TO_YCBCR, rgb);
    let (y, cb, cr) = if params.studio_range {
        (
            params.luma_offset + STUDIO_LUMA_SCALE * y,
            STUDIO_CHROMA_SCALE * cb,
            STUDIO_CHROMA_SCALE * cr,
        )
    } else {
        (y, cb, cr)
    };
    ColorCoord::triple(
        ColorModelId::Ycbcr,
        y,
        cb + CHROMA_OFFSET,
        cr + CHROMA_OFFSET,
    )
}

#[inline]
fn ycbcr_to_rgb255(y: f64, cb: f64, cr: f64, params: &YcbcrParams) -> [f64; 3] {
    let (y, cb, cr) = (y - params.luma_offset, cb - CHROMA_OFFSET, cr - CHROMA_OFFSET);
    let v = if params.studio_range {
        [y / STUDIO_LUMA_SCALE, cb / STUDIO_CHROMA_SCALE, cr / STUDIO_CHROMA_SCALE]
    } else {
        [y, cb, cr]
    };
    mat_vec(&YCBCR_TO_RGB, v)
}
