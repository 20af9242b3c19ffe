//! CIE color-difference formulas over L*a*b* coordinates.
//!
//! ΔE94 uses the first color's chroma as the reference, so it is not
//! symmetric in its arguments.

use thiserror::Error;

use crate::color::{ColorCoord, ColorModelId};

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("expected Lab coordinates, got {0}")]
    NotLab(ColorModelId),
    #[error("weighting factor {name} must be positive, got {value}")]
    Weight { name: &'static str, value: f64 },
}

/// A CIELAB coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Lab {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

impl Lab {
    pub const fn new(l: f64, a: f64, b: f64) -> Self {
        Self { l, a, b }
    }

    pub fn chroma(&self) -> f64 {
        self.a.hypot(self.b)
    }
}

impl TryFrom<ColorCoord> for Lab {
    type Error = MetricError;

    fn try_from(c: ColorCoord) -> Result<Self, Self::Error> {
        match c.model() {
            ColorModelId::Lab => Ok(Lab::new(c.c1(), c.c2(), c.c3())),
            other => Err(MetricError::NotLab(other)),
        }
    }
}

/// Two Lab colors to compare.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabPair {
    pub first: Lab,
    pub second: Lab,
}

impl LabPair {
    pub const fn new(first: Lab, second: Lab) -> Self {
        Self { first, second }
    }

    pub fn from_coords(first: ColorCoord, second: ColorCoord) -> Result<Self, MetricError> {
        Ok(Self::new(first.try_into()?, second.try_into()?))
    }
}

/// Parametric weights k_L, k_C, k_H.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaEParams {
    k_l: f64,
    k_c: f64,
    k_h: f64,
}

impl DeltaEParams {
    pub fn new(k_l: f64, k_c: f64, k_h: f64) -> Result<Self, MetricError> {
        for (name, value) in [("k_L", k_l), ("k_C", k_c), ("k_H", k_h)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(MetricError::Weight { name, value });
            }
        }
        Ok(Self { k_l, k_c, k_h })
    }

    pub fn k_l(&self) -> f64 {
        self.k_l
    }
    pub fn k_c(&self) -> f64 {
        self.k_c
    }
    pub fn k_h(&self) -> f64 {
        self.k_h
    }
}

impl Default for DeltaEParams {
    fn default() -> Self {
        Self {
            k_l: 1.0,
            k_c: 1.0,
            k_h: 1.0,
        }
    }
}

/// Application constants of the CIE94 chroma and hue weighting functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cie94Constants {
    pub k1: f64,
    pub k2: f64,
}

impl Cie94Constants {
    pub const GRAPHIC_ARTS: Cie94Constants = Cie94Constants { k1: 0.045, k2: 0.015 };
    pub const TEXTILES: Cie94Constants = Cie94Constants { k1: 0.048, k2: 0.014 };
}

impl Default for Cie94Constants {
    fn default() -> Self {
        Self::GRAPHIC_ARTS
    }
}

/// Euclidean distance in CIELAB.
pub fn delta_e_76(p: &LabPair) -> f64 {
    let dl = p.second.l - p.first.l;
    let da = p.second.a - p.first.a;
    let db = p.second.b - p.first.b;
    (dl * dl + da * da + db * db).sqrt()
}

/// CIE94 with graphic-arts constants.
pub fn delta_e_94(p: &LabPair, params: &DeltaEParams) -> f64 {
    delta_e_94_with(p, params, &Cie94Constants::GRAPHIC_ARTS)
}

pub fn delta_e_94_with(p: &LabPair, params: &DeltaEParams, k: &Cie94Constants) -> f64 {
    let c1 = p.first.chroma();
    let c2 = p.second.chroma();
    let dl = p.second.l - p.first.l;
    let dc = c2 - c1;
    let da = p.second.a - p.first.a;
    let db = p.second.b - p.first.b;
    // Rounding can push ΔH² slightly below zero for near-identical hues.
    let dh_sq = (da * da + db * db - dc * dc).max(0.0);
    let s_c = 1.0 + k.k1 * c1;
    let s_h = 1.0 + k.k2 * c1;
    let l_term = dl / params.k_l;
    let c_term = dc / (params.k_c * s_c);
    let h_term_sq = dh_sq / (params.k_h * s_h).powi(2);
    (l_term * l_term + c_term * c_term + h_term_sq).sqrt()
}

const POW25_7: f64 = 6_103_515_625.0; // 25^7

/// CIEDE2000.
pub fn delta_e_2000(p: &LabPair, params: &DeltaEParams) -> f64 {
    let Lab { l: l1, a: a1, b: b1 } = p.first;
    let Lab { l: l2, a: a2, b: b2 } = p.second;

    let c_mean = (a1.hypot(b1) + a2.hypot(b2)) / 2.0;
    let c_mean7 = c_mean.powi(7);
    let g = 0.5 * (1.0 - (c_mean7 / (c_mean7 + POW25_7)).sqrt());
    let a1p = a1 * (1.0 + g);
    let a2p = a2 * (1.0 + g);
    let c1p = a1p.hypot(b1);
    let c2p = a2p.hypot(b2);
    let h1p = hue_angle(b1, a1p);
    let h2p = hue_angle(b2, a2p);

    let dl = l2 - l1;
    let dc = c2p - c1p;
    let chroma_product = c1p * c2p;
    let dh_angle = if chroma_product == 0.0 {
        0.0
    } else {
        let d = h2p - h1p;
        if d > 180.0 {
            d - 360.0
        } else if d < -180.0 {
            d + 360.0
        } else {
            d
        }
    };
    let dh = 2.0 * chroma_product.sqrt() * (dh_angle.to_radians() / 2.0).sin();

    let l_mean = (l1 + l2) / 2.0;
    let cp_mean = (c1p + c2p) / 2.0;
    let hp_mean = if chroma_product == 0.0 {
        h1p + h2p
    } else if (h1p - h2p).abs() <= 180.0 {
        (h1p + h2p) / 2.0
    } else if h1p + h2p < 360.0 {
        (h1p + h2p + 360.0) / 2.0
    } else {
        (h1p + h2p - 360.0) / 2.0
    };

    let t = 1.0 - 0.17 * (hp_mean - 30.0).to_radians().cos()
        + 0.24 * (2.0 * hp_mean).to_radians().cos()
        + 0.32 * (3.0 * hp_mean + 6.0).to_radians().cos()
        - 0.20 * (4.0 * hp_mean - 63.0).to_radians().cos();
    let l_offset_sq = (l_mean - 50.0).powi(2);
    let s_l = 1.0 + 0.015 * l_offset_sq / (20.0 + l_offset_sq).sqrt();
    let s_c = 1.0 + 0.045 * cp_mean;
    let s_h = 1.0 + 0.015 * cp_mean * t;

    let rotation = 30.0 * (-((hp_mean - 275.0) / 25.0).powi(2)).exp();
    let cp_mean7 = cp_mean.powi(7);
    let r_c = 2.0 * (cp_mean7 / (cp_mean7 + POW25_7)).sqrt();
    let r_t = -(2.0 * rotation).to_radians().sin() * r_c;

    let l_term = dl / (params.k_l * s_l);
    let c_term = dc / (params.k_c * s_c);
    let h_term = dh / (params.k_h * s_h);
    (l_term * l_term + c_term * c_term + h_term * h_term + r_t * c_term * h_term)
        .max(0.0)
        .sqrt()
}

fn hue_angle(b: f64, a_prime: f64) -> f64 {
    if b == 0.0 && a_prime == 0.0 {
        0.0
    } else {
        b.atan2(a_prime).to_degrees().rem_euclid(360.0)
    }
}
