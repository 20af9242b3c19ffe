//! Foundational color value types shared by every other module.
//!
//! RGB is the hub: every model converts to and from [`UnitRgb`]. Eight-bit
//! pixels ([`Rgb8`]) are the storage format, quantized with
//! half-away-from-zero rounding and clamping.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ColorError {
    #[error("unknown color model '{given}' (valid models: {valid})")]
    UnknownModel { given: String, valid: String },
    #[error("model {model} takes {expected} components, got {got}")]
    Arity {
        model: ColorModelId,
        expected: usize,
        got: usize,
    },
    #[error("{model} component {name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        model: String,
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("component {name} is not finite")]
    NonFinite { name: &'static str },
    #[error("invalid hex color '{0}' (expected #RRGGBB)")]
    Hex(String),
    #[error("pixel buffer of {width}x{height} needs {expected} pixels, got {got}")]
    BufferShape {
        width: usize,
        height: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid white point: {0}")]
    WhitePoint(String),
}

/// An 8-bit RGB pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Rgb8 {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb8 {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }

    pub fn to_unit(self) -> UnitRgb {
        unit_from_rgb8(self)
    }

    pub fn to_hex(self) -> String {
        format!("#{:02X}{:02X}{:02X}", self.r, self.g, self.b)
    }

    pub fn from_hex(s: &str) -> Result<Self, ColorError> {
        let digits = s.trim().strip_prefix('#').unwrap_or(s.trim());
        if digits.len() != 6 || !digits.is_ascii() {
            return Err(ColorError::Hex(s.to_string()));
        }
        let channel = |i: usize| {
            u8::from_str_radix(&digits[i..i + 2], 16).map_err(|_| ColorError::Hex(s.to_string()))
        };
        Ok(Self::new(channel(0)?, channel(2)?, channel(4)?))
    }

    pub fn channels(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }
}

impl fmt::Display for Rgb8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Normalized RGB with nominal channel range [0, 1].
///
/// Values produced by inverse conversions may fall slightly outside the unit
/// cube; [`rgb8_from_unit`] clamps them when quantizing.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct UnitRgb {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl UnitRgb {
    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        Self { r, g, b }
    }

    pub fn gray(v: f64) -> Self {
        Self::new(v, v, v)
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(f(self.r), f(self.g), f(self.b))
    }

    pub fn clamped(self) -> Self {
        self.map(|v| if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) })
    }

    pub fn to_rgb8(self) -> Rgb8 {
        rgb8_from_unit(self)
    }

    pub fn max(self) -> f64 {
        self.r.max(self.g).max(self.b)
    }

    pub fn min(self) -> f64 {
        self.r.min(self.g).min(self.b)
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.r, self.g, self.b]
    }
}

/// Divides every channel by 255.
pub fn unit_from_rgb8(c: Rgb8) -> UnitRgb {
    UnitRgb::new(
        f64::from(c.r) / 255.0,
        f64::from(c.g) / 255.0,
        f64::from(c.b) / 255.0,
    )
}

/// Scales by 255, clamps to [0, 255] and rounds half away from zero.
pub fn rgb8_from_unit(c: UnitRgb) -> Rgb8 {
    Rgb8::new(quantize(c.r), quantize(c.g), quantize(c.b))
}

/// Quantizes a value on the 0–255 scale directly.
pub fn quantize_255(v: f64) -> u8 {
    if v.is_nan() {
        return 0;
    }
    // f64::round is half-away-from-zero.
    v.clamp(0.0, 255.0).round() as u8
}

fn quantize(unit: f64) -> u8 {
    quantize_255(unit * 255.0)
}

/// The eleven non-RGB color models. RGB itself is the implicit hub.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(try_from = "String", into = "String")]
pub enum ColorModelId {
    Cmy,
    Cmyk,
    Hsi,
    Hsl,
    Hsv,
    Xyz,
    Lab,
    Luv,
    Yiq,
    Yuv,
    Ycbcr,
}

impl ColorModelId {
    pub const ALL: [ColorModelId; 11] = [
        ColorModelId::Cmy,
        ColorModelId::Cmyk,
        ColorModelId::Hsi,
        ColorModelId::Hsl,
        ColorModelId::Hsv,
        ColorModelId::Xyz,
        ColorModelId::Lab,
        ColorModelId::Luv,
        ColorModelId::Yiq,
        ColorModelId::Yuv,
        ColorModelId::Ycbcr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ColorModelId::Cmy => "cmy",
            ColorModelId::Cmyk => "cmyk",
            ColorModelId::Hsi => "hsi",
            ColorModelId::Hsl => "hsl",
            ColorModelId::Hsv => "hsv",
            ColorModelId::Xyz => "xyz",
            ColorModelId::Lab => "lab",
            ColorModelId::Luv => "luv",
            ColorModelId::Yiq => "yiq",
            ColorModelId::Yuv => "yuv",
            ColorModelId::Ycbcr => "ycbcr",
        }
    }

    pub fn arity(self) -> usize {
        self.components().len()
    }

    pub fn is_hue_model(self) -> bool {
        matches!(self, ColorModelId::Hsi | ColorModelId::Hsl | ColorModelId::Hsv)
    }

    /// Component names, ranges and slider step hints.
    pub fn components(self) -> &'static [ComponentSpec] {
        match self {
            ColorModelId::Cmy => &CMY_COMPONENTS,
            ColorModelId::Cmyk => &CMYK_COMPONENTS,
            ColorModelId::Hsi => &HSI_COMPONENTS,
            ColorModelId::Hsl => &HSL_COMPONENTS,
            ColorModelId::Hsv => &HSV_COMPONENTS,
            ColorModelId::Xyz => &XYZ_COMPONENTS,
            ColorModelId::Lab => &LAB_COMPONENTS,
            ColorModelId::Luv => &LUV_COMPONENTS,
            ColorModelId::Yiq => &YIQ_COMPONENTS,
            ColorModelId::Yuv => &YUV_COMPONENTS,
            ColorModelId::Ycbcr => &YCBCR_COMPONENTS,
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.map(|m| m.name()).join(", ")
    }
}

impl fmt::Display for ColorModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ColorModelId {
    type Err = ColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        let key = key
            .strip_prefix("cie")
            .map(|rest| rest.trim_start_matches([' ', '-', '_']))
            .unwrap_or(&key);
        Self::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| ColorError::UnknownModel {
                given: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

impl TryFrom<String> for ColorModelId {
    type Error = ColorError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ColorModelId> for String {
    fn from(m: ColorModelId) -> String {
        m.name().to_string()
    }
}

/// Declared range of one model component.
///
/// `bounded` components must lie in `[min, max]`; for open components the
/// range is a slider hint only (e.g. CIELAB a*, b*).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentSpec {
    pub name: &'static str,
    pub min: f64,
    pub max: f64,
    pub step: f64,
    pub bounded: bool,
    /// Hue components wrap modulo 360 degrees.
    pub circular: bool,
}

impl ComponentSpec {
    const fn bounded(name: &'static str, min: f64, max: f64, step: f64) -> Self {
        Self {
            name,
            min,
            max,
            step,
            bounded: true,
            circular: false,
        }
    }

    const fn open(name: &'static str, min: f64, max: f64, step: f64) -> Self {
        Self {
            bounded: false,
            ..Self::bounded(name, min, max, step)
        }
    }

    const fn hue(self) -> Self {
        Self {
            circular: true,
            ..self
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        !self.bounded || (self.min..=self.max).contains(&v)
    }
}

const UNIT_STEP: f64 = 0.01;
const HUE: ComponentSpec = ComponentSpec::bounded("H", 0.0, 360.0, 1.0).hue();
const fn unit(name: &'static str) -> ComponentSpec {
    ComponentSpec::bounded(name, 0.0, 1.0, UNIT_STEP)
}

static CMY_COMPONENTS: [ComponentSpec; 3] = [unit("C"), unit("M"), unit("Y")];
static CMYK_COMPONENTS: [ComponentSpec; 4] = [unit("C"), unit("M"), unit("Y"), unit("K")];
static HSI_COMPONENTS: [ComponentSpec; 3] = [HUE, unit("S"), unit("I")];
static HSL_COMPONENTS: [ComponentSpec; 3] = [HUE, unit("S"), unit("L")];
static HSV_COMPONENTS: [ComponentSpec; 3] = [HUE, unit("S"), unit("V")];
// Ranges of the RGB cube's image; the inverse accepts any finite value.
static XYZ_COMPONENTS: [ComponentSpec; 3] = [
    ComponentSpec::open("X", 0.0, 0.9505, 0.001),
    ComponentSpec::open("Y", 0.0, 1.0, 0.001),
    ComponentSpec::open("Z", 0.0, 1.0889, 0.001),
];
static LAB_COMPONENTS: [ComponentSpec; 3] = [
    ComponentSpec::bounded("L*", 0.0, 100.0, 0.1),
    ComponentSpec::open("a*", -128.0, 128.0, 0.1),
    ComponentSpec::open("b*", -128.0, 128.0, 0.1),
];
static LUV_COMPONENTS: [ComponentSpec; 3] = [
    ComponentSpec::bounded("L*", 0.0, 100.0, 0.1),
    ComponentSpec::open("u*", -134.0, 220.0, 0.1),
    ComponentSpec::open("v*", -140.0, 122.0, 0.1),
];
static YIQ_COMPONENTS: [ComponentSpec; 3] = [
    ComponentSpec::bounded("Y", 0.0, 1.0, 0.001),
    ComponentSpec::bounded("I", -0.596, 0.596, 0.001),
    ComponentSpec::bounded("Q", -0.523, 0.523, 0.001),
];
static YUV_COMPONENTS: [ComponentSpec; 3] = [
    ComponentSpec::bounded("Y", 0.0, 1.0, 0.001),
    ComponentSpec::bounded("U", -0.436, 0.436, 0.001),
    ComponentSpec::bounded("V", -0.615, 0.615, 0.001),
];
static YCBCR_COMPONENTS: [ComponentSpec; 3] = [
    ComponentSpec::bounded("Y", 0.0, 255.0, 1.0),
    ComponentSpec::bounded("Cb", 0.0, 255.0, 1.0),
    ComponentSpec::bounded("Cr", 0.0, 255.0, 1.0),
];

/// Normalizes an angle in degrees into [0, 360).
pub fn normalize_hue(h: f64) -> f64 {
    let r = h.rem_euclid(360.0);
    // rem_euclid can return exactly 360.0 for tiny negative inputs.
    if r >= 360.0 {
        0.0
    } else {
        r
    }
}

/// A coordinate in one of the eleven models.
///
/// Holds three components, or four for CMYK.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorCoord {
    model: ColorModelId,
    values: [f64; 4],
}

impl ColorCoord {
    pub fn new(model: ColorModelId, components: &[f64]) -> Result<Self, ColorError> {
        let expected = model.arity();
        if components.len() != expected {
            return Err(ColorError::Arity {
                model,
                expected,
                got: components.len(),
            });
        }
        let mut values = [0.0; 4];
        values[..expected].copy_from_slice(components);
        Ok(Self { model, values })
    }

    pub(crate) const fn triple(model: ColorModelId, c1: f64, c2: f64, c3: f64) -> Self {
        Self {
            model,
            values: [c1, c2, c3, 0.0],
        }
    }

    pub(crate) const fn cmyk(c: f64, m: f64, y: f64, k: f64) -> Self {
        Self {
            model: ColorModelId::Cmyk,
            values: [c, m, y, k],
        }
    }

    pub fn model(&self) -> ColorModelId {
        self.model
    }

    pub fn components(&self) -> &[f64] {
        &self.values[..self.model.arity()]
    }

    pub fn c1(&self) -> f64 {
        self.values[0]
    }

    pub fn c2(&self) -> f64 {
        self.values[1]
    }

    pub fn c3(&self) -> f64 {
        self.values[2]
    }

    /// The fourth component; present only for CMYK.
    pub fn c4(&self) -> Option<f64> {
        (self.model == ColorModelId::Cmyk).then_some(self.values[3])
    }

    /// Checks every component against the model's declared range.
    ///
    /// Hue is accepted on [0, 360] and wrapped into [0, 360).
    pub fn validated(mut self) -> Result<Self, ColorError> {
        for (value, spec) in self.values.iter_mut().zip(self.model.components()) {
            if !value.is_finite() {
                return Err(ColorError::NonFinite { name: spec.name });
            }
            if spec.circular && (0.0..=360.0).contains(value) {
                *value = normalize_hue(*value);
                continue;
            }
            if !spec.contains(*value) {
                return Err(ColorError::OutOfRange {
                    model: self.model.to_string(),
                    name: spec.name,
                    value: *value,
                    min: spec.min,
                    max: spec.max,
                });
            }
        }
        Ok(self)
    }

    /// Wraps hue and pulls bounded components into range.
    pub(crate) fn normalized(mut self) -> Self {
        for (value, spec) in self.values.iter_mut().zip(self.model.components()) {
            if spec.circular {
                *value = normalize_hue(*value);
            } else if spec.bounded {
                *value = value.clamp(spec.min, spec.max);
            }
        }
        self
    }
}

/// Reference white on the 0–100 tristimulus scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WhitePointSpec", into = "WhitePointSpec")]
pub struct WhitePoint {
    xn: f64,
    yn: f64,
    zn: f64,
    un_prime: f64,
    vn_prime: f64,
}

#[derive(Serialize, Deserialize)]
struct WhitePointSpec {
    xn: f64,
    yn: f64,
    zn: f64,
}

impl WhitePoint {
    /// CIE standard illuminant D65.
    pub const D65: WhitePoint = WhitePoint::from_tristimulus_unchecked(95.047, 100.000, 108.883);

    pub fn new(xn: f64, yn: f64, zn: f64) -> Result<Self, ColorError> {
        if ![xn, yn, zn].iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(ColorError::WhitePoint(format!(
                "tristimulus values must be positive and finite, got ({xn}, {yn}, {zn})"
            )));
        }
        Ok(Self::from_tristimulus_unchecked(xn, yn, zn))
    }

    const fn from_tristimulus_unchecked(xn: f64, yn: f64, zn: f64) -> Self {
        let denom = xn + 15.0 * yn + 3.0 * zn;
        Self {
            xn,
            yn,
            zn,
            un_prime: 4.0 * xn / denom,
            vn_prime: 9.0 * yn / denom,
        }
    }

    pub fn xn(&self) -> f64 {
        self.xn
    }
    pub fn yn(&self) -> f64 {
        self.yn
    }
    pub fn zn(&self) -> f64 {
        self.zn
    }
    pub fn un_prime(&self) -> f64 {
        self.un_prime
    }
    pub fn vn_prime(&self) -> f64 {
        self.vn_prime
    }
}

impl Default for WhitePoint {
    fn default() -> Self {
        Self::D65
    }
}

impl TryFrom<WhitePointSpec> for WhitePoint {
    type Error = ColorError;
    fn try_from(s: WhitePointSpec) -> Result<Self, Self::Error> {
        WhitePoint::new(s.xn, s.yn, s.zn)
    }
}

impl From<WhitePoint> for WhitePointSpec {
    fn from(w: WhitePoint) -> Self {
        WhitePointSpec {
            xn: w.xn,
            yn: w.yn,
            zn: w.zn,
        }
    }
}

/// Row-major pixel grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelBuffer<P = Rgb8> {
    width: usize,
    height: usize,
    pixels: Vec<P>,
}

impl<P> PixelBuffer<P> {
    pub fn new(width: usize, height: usize, pixels: Vec<P>) -> Result<Self, ColorError> {
        let expected = width * height;
        if width == 0 || height == 0 || pixels.len() != expected {
            return Err(ColorError::BufferShape {
                width,
                height,
                expected,
                got: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, pixel: P) -> Result<Self, ColorError>
    where
        P: Clone,
    {
        Self::new(width, height, vec![pixel; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[P] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<P> {
        self.pixels
    }

    pub fn rows(&self) -> std::slice::Chunks<'_, P> {
        self.pixels.chunks(self.width)
    }

    pub(crate) fn with_pixels<Q>(&self, pixels: Vec<Q>) -> PixelBuffer<Q> {
        debug_assert_eq!(pixels.len(), self.pixels.len());
        PixelBuffer {
            width: self.width,
            height: self.height,
            pixels,
        }
    }
}
