//! Transfer curves between linear light and non-linear R'G'B'.

use crate::color::UnitRgb;

/// Exponent of the Rec.709 camera curve (1 / 0.45).
pub const REC709_GAMMA: f64 = 1.0 / 0.45;

/// Default camera gamma for the as-printed camera curve.
pub const DEFAULT_CAMERA_GAMMA: f64 = 2.2;

const CAMERA_LINEAR_LIMIT: f64 = 0.018;
const CAMERA_ENCODED_LIMIT: f64 = 4.5 * CAMERA_LINEAR_LIMIT;

const SRGB_DECODE_LIMIT: f64 = 0.04045;
const SRGB_ENCODE_LIMIT: f64 = 0.0031308;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// Camera OETF: `4.5x` below 0.018, power segment above.
    ///
    /// `strict = false` keeps the outer division by 1.099 of the as-printed
    /// form; `strict = true` is the ITU-R BT.709 OETF.
    CameraRec709 { gamma_c: f64, strict: bool },
    Srgb,
}

/// A monotone transfer curve. `encode` maps linear to non-linear values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaCurve {
    pub kind: CurveKind,
}

impl GammaCurve {
    /// The camera curve exactly as printed, including the outer `/1.099`.
    pub fn camera(gamma_c: f64) -> Self {
        assert!(gamma_c > 0.0 && gamma_c.is_finite(), "gamma must be positive");
        Self {
            kind: CurveKind::CameraRec709 {
                gamma_c,
                strict: false,
            },
        }
    }

    /// The standard BT.709 OETF (`1.099 x^0.45 - 0.099`).
    pub fn rec709_strict() -> Self {
        Self::camera_strict(REC709_GAMMA)
    }

    pub fn camera_strict(gamma_c: f64) -> Self {
        assert!(gamma_c > 0.0 && gamma_c.is_finite(), "gamma must be positive");
        Self {
            kind: CurveKind::CameraRec709 {
                gamma_c,
                strict: true,
            },
        }
    }

    pub fn srgb() -> Self {
        Self {
            kind: CurveKind::Srgb,
        }
    }

    pub fn encode(&self, linear: f64) -> f64 {
        match self.kind {
            CurveKind::CameraRec709 { gamma_c, strict } => {
                camera_encode(linear, gamma_c, strict)
            }
            CurveKind::Srgb => srgb_encode_channel(linear),
        }
    }

    pub fn decode(&self, encoded: f64) -> f64 {
        match self.kind {
            CurveKind::CameraRec709 { gamma_c, strict } => {
                camera_decode(encoded, gamma_c, strict)
            }
            CurveKind::Srgb => srgb_decode_channel(encoded),
        }
    }

    pub fn encode_rgb(&self, c: UnitRgb) -> UnitRgb {
        c.map(|v| self.encode(v))
    }

    pub fn decode_rgb(&self, c: UnitRgb) -> UnitRgb {
        c.map(|v| self.decode(v))
    }
}

fn camera_encode(v: f64, gamma_c: f64, strict: bool) -> f64 {
    if v <= CAMERA_LINEAR_LIMIT {
        4.5 * v
    } else {
        let powered = 1.099 * v.powf(1.0 / gamma_c) - 0.099;
        if strict {
            powered
        } else {
            powered / 1.099
        }
    }
}

fn camera_decode(v: f64, gamma_c: f64, strict: bool) -> f64 {
    if v <= CAMERA_ENCODED_LIMIT {
        v / 4.5
    } else {
        let unscaled = if strict { v } else { v * 1.099 };
        ((unscaled + 0.099) / 1.099).powf(gamma_c)
    }
}

/// Camera-curve encoding of each channel.
pub fn gamma_encode_rec709(c: UnitRgb, gamma_c: f64) -> UnitRgb {
    GammaCurve::camera(gamma_c).encode_rgb(c)
}

/// Analytic inverse of [`gamma_encode_rec709`], breakpoint at 0.081.
pub fn gamma_decode_rec709(c: UnitRgb, gamma_c: f64) -> UnitRgb {
    GammaCurve::camera(gamma_c).decode_rgb(c)
}

#[inline]
pub fn srgb_decode_channel(v: f64) -> f64 {
    if v <= SRGB_DECODE_LIMIT {
        v / 12.92
    } else {
        ((v + 0.055) / 1.055).powf(2.4)
    }
}

#[inline]
pub fn srgb_encode_channel(v: f64) -> f64 {
    if v > SRGB_ENCODE_LIMIT {
        1.055 * v.powf(1.0 / 2.4) - 0.055
    } else {
        12.92 * v
    }
}

/// sRGB companded values to linear light.
pub fn srgb_decode(c: UnitRgb) -> UnitRgb {
    c.map(srgb_decode_channel)
}

/// Linear light to sRGB companded values.
pub fn srgb_encode(c: UnitRgb) -> UnitRgb {
    c.map(srgb_encode_channel)
}
