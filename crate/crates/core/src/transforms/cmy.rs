//! Subtractive models: CMY and CMYK.

use crate::color::{rgb8_from_unit, unit_from_rgb8, ColorCoord, ColorModelId, Rgb8, UnitRgb};

pub fn rgb_to_cmy(c: UnitRgb) -> ColorCoord {
    ColorCoord::triple(ColorModelId::Cmy, 1.0 - c.r, 1.0 - c.g, 1.0 - c.b)
}

pub fn cmy_to_rgb(c: f64, m: f64, y: f64) -> UnitRgb {
    UnitRgb::new(1.0 - c, 1.0 - m, 1.0 - y)
}

/// RGB to CMYK with continuous K = 1 - max(R, G, B).
pub fn rgb_to_cmyk(c: Rgb8) -> ColorCoord {
    cmyk_from_unit(unit_from_rgb8(c))
}

pub fn cmyk_to_rgb(c: f64, m: f64, y: f64, k: f64) -> Rgb8 {
    rgb8_from_unit(cmyk_to_unit(c, m, y, k))
}

pub(crate) fn cmyk_from_unit(rgb: UnitRgb) -> ColorCoord {
    let k = 1.0 - rgb.max();
    let ink = 1.0 - k;
    if ink == 0.0 {
        return ColorCoord::cmyk(0.0, 0.0, 0.0, 1.0);
    }
    let part = |v: f64| (1.0 - v - k) / ink;
    ColorCoord::cmyk(part(rgb.r), part(rgb.g), part(rgb.b), k)
}

pub(crate) fn cmyk_to_unit(c: f64, m: f64, y: f64, k: f64) -> UnitRgb {
    let ink = 1.0 - k;
    UnitRgb::new((1.0 - c) * ink, (1.0 - m) * ink, (1.0 - y) * ink)
}
