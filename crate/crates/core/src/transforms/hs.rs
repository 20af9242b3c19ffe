//! The hue-saturation family: HSI, HSL and HSV.
//!
//! Hue is in degrees on [0, 360). Achromatic inputs get H = 0 and S = 0.

use crate::color::{normalize_hue, ColorCoord, ColorError, ColorModelId, UnitRgb};

/// Shared hexcone hue used by HSL and HSV.
#[inline]
fn hexcone_hue(c: UnitRgb, max: f64, min: f64) -> f64 {
    let delta = max - min;
    if delta == 0.0 {
        return 0.0;
    }
    let h = if max == c.r {
        ((c.g - c.b) / delta).rem_euclid(6.0)
    } else if max == c.g {
        (c.b - c.r) / delta + 2.0
    } else {
        (c.r - c.g) / delta + 4.0
    };
    normalize_hue(60.0 * h)
}

/// Places chroma `c` and the secondary component `x` by 60° sector, then
/// shifts by `m`.
#[inline]
fn from_sectors(h: f64, c: f64, m: f64) -> UnitRgb {
    let h = normalize_hue(h);
    let x = c * (1.0 - ((h / 60.0).rem_euclid(2.0) - 1.0).abs());
    let (r, g, b) = match (h / 60.0) as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    UnitRgb::new(r + m, g + m, b + m)
}

pub fn rgb_to_hsl(c: UnitRgb) -> ColorCoord {
    let max = c.max();
    let min = c.min();
    let l = (max + min) / 2.0;
    let s = if max == min {
        0.0
    } else {
        ((max - min) / (1.0 - (2.0 * l - 1.0).abs())).min(1.0)
    };
    ColorCoord::triple(ColorModelId::Hsl, hexcone_hue(c, max, min), s, l)
}

pub fn hsl_to_rgb(h: f64, s: f64, l: f64) -> UnitRgb {
    let chroma = (1.0 - (2.0 * l - 1.0).abs()) * s;
    from_sectors(h, chroma, l - chroma / 2.0)
}

pub fn rgb_to_hsv(c: UnitRgb) -> ColorCoord {
    let v = c.max();
    let min = c.min();
    let s = if v == 0.0 { 0.0 } else { (v - min) / v };
    ColorCoord::triple(ColorModelId::Hsv, hexcone_hue(c, v, min), s, v)
}

pub fn hsv_to_rgb(h: f64, s: f64, v: f64) -> UnitRgb {
    let chroma = v * s;
    from_sectors(h, chroma, v - chroma)
}

/// RGB to HSI via the arccos hue, reflected to 360° − θ when B > G.
pub fn rgb_to_hsi(c: UnitRgb) -> ColorCoord {
    let i = (c.r + c.g + c.b) / 3.0;
    let max = c.max();
    let min = c.min();
    if i <= 0.0 || max == min {
        return ColorCoord::triple(ColorModelId::Hsi, 0.0, 0.0, i.max(0.0));
    }
    let s = 1.0 - min / i;
    let num = (c.r - c.g) + (c.r - c.b);
    let den = 2.0 * ((c.r - c.g).powi(2) + (c.r - c.b) * (c.g - c.b)).sqrt();
    let theta = if den == 0.0 {
        0.0
    } else {
        (num / den).clamp(-1.0, 1.0).acos().to_degrees()
    };
    let h = if c.b > c.g { 360.0 - theta } else { theta };
    ColorCoord::triple(ColorModelId::Hsi, normalize_hue(h), s, i)
}

/// HSI to RGB; rejects S or I outside [0, 1].
pub fn hsi_to_rgb(h: f64, s: f64, i: f64) -> Result<UnitRgb, ColorError> {
    let coord = ColorCoord::new(ColorModelId::Hsi, &[h, s, i])?.validated()?;
    Ok(hsi_to_rgb_unchecked(coord.c1(), coord.c2(), coord.c3()))
}

/// Three 120° sectors; within each, the lagging channel is I(1 − S), the
/// leading one follows the cosine ratio and the third closes the sum 3I.
pub(crate) fn hsi_to_rgb_unchecked(h: f64, s: f64, i: f64) -> UnitRgb {
    let h = normalize_hue(h);
    let sector = (h / 120.0) as u32;
    let local = (h - 120.0 * f64::from(sector.min(2))).to_radians();
    let low = i * (1.0 - s);
    let lead = i * (1.0 + s * local.cos() / (std::f64::consts::FRAC_PI_3 - local).cos());
    let rest = 3.0 * i - (low + lead);
    match sector {
        0 => UnitRgb::new(lead, rest, low),
        1 => UnitRgb::new(low, lead, rest),
        _ => UnitRgb::new(rest, low, lead),
    }
}
