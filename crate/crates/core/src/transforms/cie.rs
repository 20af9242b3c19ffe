//! CIE XYZ, L*a*b* and L*u*v*.
//!
//! XYZ is computed straight from normalized RGB. Lab and Luv linearize with
//! the sRGB curve first and scale XYZ to the white point's 0–100 convention.

use crate::color::{rgb8_from_unit, unit_from_rgb8, ColorCoord, ColorModelId, Rgb8, UnitRgb, WhitePoint};
use crate::gamma::{srgb_decode, srgb_encode};

pub type Matrix3 = [[f64; 3]; 3];

pub const RGB_TO_XYZ: Matrix3 = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

pub const XYZ_TO_RGB: Matrix3 = [
    [3.2404542, -1.5371385, -0.4985314],
    [-0.9692660, 1.8760108, 0.0415560],
    [0.0556434, -0.2040259, 1.0572252],
];

const LAB_EPSILON: f64 = 0.008856;
const LAB_SLOPE: f64 = 7.787;
const LAB_OFFSET: f64 = 16.0 / 116.0;
const LAB_INVERSE_LIMIT: f64 = 0.206893;
const LUV_KAPPA: f64 = 903.3;

#[inline]
pub(crate) fn mat_vec(m: &Matrix3, v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

pub fn rgb_to_xyz(c: UnitRgb) -> ColorCoord {
    let [x, y, z] = mat_vec(&RGB_TO_XYZ, c.as_array());
    ColorCoord::triple(ColorModelId::Xyz, x, y, z)
}

pub fn xyz_to_rgb(x: f64, y: f64, z: f64) -> UnitRgb {
    let [r, g, b] = mat_vec(&XYZ_TO_RGB, [x, y, z]);
    UnitRgb::new(r, g, b)
}

/// sRGB-encoded RGB to XYZ on the 0–100 scale.
#[inline]
fn xyz100_from_srgb(c: UnitRgb) -> [f64; 3] {
    mat_vec(&RGB_TO_XYZ, srgb_decode(c).as_array()).map(|v| v * 100.0)
}

#[inline]
fn srgb_from_xyz100(xyz: [f64; 3]) -> UnitRgb {
    let [r, g, b] = mat_vec(&XYZ_TO_RGB, xyz.map(|v| v / 100.0));
    srgb_encode(UnitRgb::new(r, g, b))
}

#[inline]
fn lab_f(t: f64) -> f64 {
    if t > LAB_EPSILON {
        t.cbrt()
    } else {
        LAB_SLOPE * t + LAB_OFFSET
    }
}

#[inline]
fn lab_f_inv(t: f64) -> f64 {
    if t > LAB_INVERSE_LIMIT {
        t * t * t
    } else {
        (t - LAB_OFFSET) / LAB_SLOPE
    }
}

pub fn rgb_to_lab(c: Rgb8, wp: &WhitePoint) -> ColorCoord {
    lab_from_unit(unit_from_rgb8(c), wp)
}

pub fn lab_to_rgb(l: f64, a: f64, b: f64, wp: &WhitePoint) -> Rgb8 {
    rgb8_from_unit(lab_to_unit(l, a, b, wp))
}

pub(crate) fn lab_from_unit(c: UnitRgb, wp: &WhitePoint) -> ColorCoord {
    let [x, y, z] = xyz100_from_srgb(c);
    let fx = lab_f(x / wp.xn());
    let fy = lab_f(y / wp.yn());
    let fz = lab_f(z / wp.zn());
    ColorCoord::triple(
        ColorModelId::Lab,
        116.0 * fy - 16.0,
        500.0 * (fx - fy),
        200.0 * (fy - fz),
    )
}

pub(crate) fn lab_to_unit(l: f64, a: f64, b: f64, wp: &WhitePoint) -> UnitRgb {
    let fy = (l + 16.0) / 116.0;
    let fx = a / 500.0 + fy;
    let fz = fy - b / 200.0;
    srgb_from_xyz100([
        wp.xn() * lab_f_inv(fx),
        wp.yn() * lab_f_inv(fy),
        wp.zn() * lab_f_inv(fz),
    ])
}

pub fn rgb_to_luv(c: Rgb8, wp: &WhitePoint) -> ColorCoord {
    luv_from_unit(unit_from_rgb8(c), wp)
}

pub fn luv_to_rgb(l: f64, u: f64, v: f64, wp: &WhitePoint) -> Rgb8 {
    rgb8_from_unit(luv_to_unit(l, u, v, wp))
}

pub(crate) fn luv_from_unit(c: UnitRgb, wp: &WhitePoint) -> ColorCoord {
    let [x, y, z] = xyz100_from_srgb(c);
    let denom = x + 15.0 * y + 3.0 * z;
    // Black has no chromaticity; borrow the white point's so u = v = 0.
    let (u_prime, v_prime) = if denom == 0.0 {
        (wp.un_prime(), wp.vn_prime())
    } else {
        (4.0 * x / denom, 9.0 * y / denom)
    };
    let yr = y / wp.yn();
    let l = if yr > LAB_EPSILON {
        116.0 * yr.cbrt() - 16.0
    } else {
        LUV_KAPPA * yr
    };
    ColorCoord::triple(
        ColorModelId::Luv,
        l,
        13.0 * l * (u_prime - wp.un_prime()),
        13.0 * l * (v_prime - wp.vn_prime()),
    )
}

pub(crate) fn luv_to_unit(l: f64, u: f64, v: f64, wp: &WhitePoint) -> UnitRgb {
    if l <= 0.0 {
        return UnitRgb::gray(0.0);
    }
    let u_prime = u / (13.0 * l) + wp.un_prime();
    let v_prime = v / (13.0 * l) + wp.vn_prime();
    let y = if l > 8.0 {
        ((l + 16.0) / 116.0).powi(3) * wp.yn()
    } else {
        l / LUV_KAPPA * wp.yn()
    };
    if v_prime == 0.0 {
        return srgb_from_xyz100([0.0, y, 0.0]);
    }
    let x = 9.0 * y * u_prime / (4.0 * v_prime);
    let z = y * (12.0 - 3.0 * u_prime - 20.0 * v_prime) / (4.0 * v_prime);
    srgb_from_xyz100([x, y, z])
}

#[cfg(test)]
mod tests {
    use super::*;

    const D65: WhitePoint = WhitePoint::D65;

    #[test]
    fn xyz_white_is_the_matrix_row_sums() {
        let w = rgb_to_xyz(UnitRgb::gray(1.0));
        for (got, want) in w.components().iter().zip([0.95047, 1.0, 1.08883]) {
            assert!((got - want).abs() < 5e-4, "{got} vs {want}");
        }
        assert_eq!(rgb_to_xyz(UnitRgb::gray(0.0)).components(), &[0.0; 3]);
    }

    #[test]
    fn xyz_round_trip() {
        let src = UnitRgb::new(0.2, 0.7, 0.1);
        let x = rgb_to_xyz(src);
        let back = xyz_to_rgb(x.c1(), x.c2(), x.c3());
        for (a, b) in back.as_array().iter().zip(src.as_array()) {
            assert!((a - b).abs() < 5e-4);
        }
    }

    #[test]
    fn lab_white_and_black() {
        let w = rgb_to_lab(Rgb8::new(255, 255, 255), &D65);
        assert!((w.c1() - 100.0).abs() < 1e-3 && w.c2().abs() < 1e-3 && w.c3().abs() < 1e-3);
        let k = rgb_to_lab(Rgb8::new(0, 0, 0), &D65);
        assert!(k.components().iter().all(|v| v.abs() < 0.02), "{k:?}");
        assert_eq!(lab_to_rgb(100.0, 0.0, 0.0, &D65), Rgb8::new(255, 255, 255));
        assert_eq!(lab_to_rgb(0.0, 0.0, 0.0, &D65), Rgb8::new(0, 0, 0));
    }

    #[test]
    fn lab_nonlinearity_branches_meet() {
        let at_limit = LAB_SLOPE * LAB_EPSILON + LAB_OFFSET;
        assert!((at_limit - LAB_EPSILON.cbrt()).abs() < 1e-5);
        assert!((at_limit - LAB_INVERSE_LIMIT).abs() < 1e-6);
    }

    #[test]
    fn luv_white_and_black() {
        let w = rgb_to_luv(Rgb8::new(255, 255, 255), &D65);
        assert!((w.c1() - 100.0).abs() < 1e-3 && w.c2().abs() < 1e-3 && w.c3().abs() < 1e-3);
        assert_eq!(rgb_to_luv(Rgb8::new(0, 0, 0), &D65).components(), &[0.0; 3]);
        assert_eq!(luv_to_rgb(0.0, 12.0, -7.0, &D65), Rgb8::new(0, 0, 0));
    }

    #[test]
    fn lab_and_luv_round_trip_a_few_colors() {
        for c in [
            Rgb8::new(12, 200, 77),
            Rgb8::new(1, 0, 0),
            Rgb8::new(0, 0, 1),
            Rgb8::new(250, 3, 128),
        ] {
            let lab = rgb_to_lab(c, &D65);
            assert_eq!(lab_to_rgb(lab.c1(), lab.c2(), lab.c3(), &D65), c);
            let luv = rgb_to_luv(c, &D65);
            assert_eq!(luv_to_rgb(luv.c1(), luv.c2(), luv.c3(), &D65), c);
        }
    }
}
