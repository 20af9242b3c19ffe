//! Bidirectional conversions between RGB and the eleven color models.
//!
//! Each model has a [`ConversionKernel`]: a forward function from
//! normalized RGB to a [`ColorCoord`] and an inverse back to normalized RGB.
//! Kernels read the white point and YCbCr parameters from a
//! [`ConversionContext`].

pub mod cie;
pub mod cmy;
pub mod hs;
pub mod luma;

use std::thread;

use crate::color::{ColorCoord, ColorError, ColorModelId, PixelBuffer, Rgb8, UnitRgb, WhitePoint};

pub use cie::{lab_to_rgb, luv_to_rgb, rgb_to_lab, rgb_to_luv, rgb_to_xyz, xyz_to_rgb};
pub use cmy::{cmy_to_rgb, cmyk_to_rgb, rgb_to_cmy, rgb_to_cmyk};
pub use hs::{hsi_to_rgb, hsl_to_rgb, hsv_to_rgb, rgb_to_hsi, rgb_to_hsl, rgb_to_hsv};
pub use luma::{rgb_to_ycbcr, rgb_to_yiq, rgb_to_yuv, ycbcr_to_rgb, yiq_to_rgb, yuv_to_rgb, YcbcrParams};

pub type ForwardFn = fn(UnitRgb, &ConversionContext) -> ColorCoord;
pub type InverseFn = fn(&ColorCoord, &ConversionContext) -> UnitRgb;

/// Forward and inverse functions for one model.
#[derive(Clone, Copy)]
pub struct ConversionKernel {
    pub model: ColorModelId,
    pub forward: ForwardFn,
    pub inverse: InverseFn,
}

impl std::fmt::Debug for ConversionKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConversionKernel").field("model", &self.model).finish()
    }
}

macro_rules! kernel {
    ($model:ident, |$c:ident, $ctx:ident| $fwd:expr, |$k:ident, $ictx:ident| $inv:expr) => {
        ConversionKernel {
            model: ColorModelId::$model,
            forward: |$c, $ctx| {
                let _ = $ctx;
                $fwd
            },
            inverse: |$k, $ictx| {
                let _ = $ictx;
                $inv
            },
        }
    };
}

/// One kernel per model, in [`ColorModelId::ALL`] order.
pub static KERNELS: [ConversionKernel; 11] = [
    kernel!(Cmy, |c, ctx| rgb_to_cmy(c), |k, ctx| cmy_to_rgb(k.c1(), k.c2(), k.c3())),
    kernel!(
        Cmyk,
        |c, ctx| cmy::cmyk_from_unit(c),
        |k, ctx| cmy::cmyk_to_unit(k.c1(), k.c2(), k.c3(), k.c4().unwrap_or(0.0))
    ),
    kernel!(Hsi, |c, ctx| rgb_to_hsi(c), |k, ctx| hs::hsi_to_rgb_unchecked(k.c1(), k.c2(), k.c3())),
    kernel!(Hsl, |c, ctx| rgb_to_hsl(c), |k, ctx| hsl_to_rgb(k.c1(), k.c2(), k.c3())),
    kernel!(Hsv, |c, ctx| rgb_to_hsv(c), |k, ctx| hsv_to_rgb(k.c1(), k.c2(), k.c3())),
    kernel!(Xyz, |c, ctx| rgb_to_xyz(c), |k, ctx| xyz_to_rgb(k.c1(), k.c2(), k.c3())),
    kernel!(
        Lab,
        |c, ctx| cie::lab_from_unit(c, &ctx.white_point),
        |k, ctx| cie::lab_to_unit(k.c1(), k.c2(), k.c3(), &ctx.white_point)
    ),
    kernel!(
        Luv,
        |c, ctx| cie::luv_from_unit(c, &ctx.white_point),
        |k, ctx| cie::luv_to_unit(k.c1(), k.c2(), k.c3(), &ctx.white_point)
    ),
    kernel!(Yiq, |c, ctx| rgb_to_yiq(c), |k, ctx| yiq_to_rgb(k.c1(), k.c2(), k.c3())),
    kernel!(Yuv, |c, ctx| rgb_to_yuv(c), |k, ctx| yuv_to_rgb(k.c1(), k.c2(), k.c3())),
    kernel!(
        Ycbcr,
        |c, ctx| luma::ycbcr_from_unit(c, &ctx.ycbcr),
        |k, ctx| luma::ycbcr_to_unit(k.c1(), k.c2(), k.c3(), &ctx.ycbcr)
    ),
];

pub fn kernel(model: ColorModelId) -> &'static ConversionKernel {
    let kernel = &KERNELS[model as usize];
    debug_assert_eq!(kernel.model, model);
    kernel
}

/// Parameters shared by the kernels.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConversionContext {
    pub white_point: WhitePoint,
    pub ycbcr: YcbcrParams,
}

impl ConversionContext {
    pub fn new(white_point: WhitePoint, ycbcr: YcbcrParams) -> Self {
        Self { white_point, ycbcr }
    }

    /// Forward conversion; hue is wrapped and bounded components clamped.
    #[inline]
    pub fn forward(&self, model: ColorModelId, c: UnitRgb) -> ColorCoord {
        (kernel(model).forward)(c, self).normalized()
    }

    #[inline]
    pub fn forward_rgb8(&self, model: ColorModelId, c: Rgb8) -> ColorCoord {
        self.forward(model, c.to_unit())
    }

    /// Inverse conversion without range checks. The result is not clamped.
    #[inline]
    pub fn inverse(&self, coord: &ColorCoord) -> UnitRgb {
        (kernel(coord.model()).inverse)(coord, self)
    }

    /// Validates the coordinate against its declared ranges, then inverts.
    pub fn try_inverse(&self, coord: &ColorCoord) -> Result<UnitRgb, ColorError> {
        let coord = coord.validated()?;
        Ok(self.inverse(&coord))
    }

    /// Forward, inverse and quantize back to 8 bits.
    #[inline]
    pub fn round_trip(&self, model: ColorModelId, c: Rgb8) -> Rgb8 {
        self.inverse(&self.forward_rgb8(model, c)).to_rgb8()
    }

    pub fn convert_image(&self, buf: &PixelBuffer, model: ColorModelId) -> PixelBuffer<ColorCoord> {
        let pixels = buf
            .pixels()
            .iter()
            .map(|&p| self.forward_rgb8(model, p))
            .collect();
        buf.with_pixels(pixels)
    }

    /// Row-parallel variant of [`Self::convert_image`]; output is identical.
    pub fn convert_image_parallel(
        &self,
        buf: &PixelBuffer,
        model: ColorModelId,
        threads: usize,
    ) -> PixelBuffer<ColorCoord> {
        let threads = threads.max(1);
        let rows_per_chunk = buf.height().div_ceil(threads);
        let chunk_len = rows_per_chunk * buf.width();
        let mut out = vec![ColorCoord::triple(model, 0.0, 0.0, 0.0); buf.pixels().len()];
        thread::scope(|s| {
            for (src, dst) in buf.pixels().chunks(chunk_len).zip(out.chunks_mut(chunk_len)) {
                s.spawn(move || {
                    for (p, o) in src.iter().zip(dst) {
                        *o = self.forward_rgb8(model, *p);
                    }
                });
            }
        });
        buf.with_pixels(out)
    }
}

/// Converts every pixel with the default context (D65, full-range YCbCr).
pub fn convert_image(buf: &PixelBuffer, model: ColorModelId) -> PixelBuffer<ColorCoord> {
    ConversionContext::default().convert_image(buf, model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_one_kernel_per_model_in_order() {
        for (i, m) in ColorModelId::ALL.iter().enumerate() {
            assert_eq!(KERNELS[i].model, *m);
            assert_eq!(kernel(*m).model, *m);
        }
    }

    #[test]
    fn single_white_pixel_to_lab() {
        let buf = PixelBuffer::filled(1, 1, Rgb8::new(255, 255, 255)).unwrap();
        let out = convert_image(&buf, ColorModelId::Lab);
        let c = out.pixels()[0];
        assert!((c.c1() - 100.0).abs() < 1e-3 && c.c2().abs() < 1e-3 && c.c3().abs() < 1e-3);
    }

    #[test]
    fn black_image_to_cmyk() {
        let buf = PixelBuffer::filled(2, 2, Rgb8::new(0, 0, 0)).unwrap();
        let out = convert_image(&buf, ColorModelId::Cmyk);
        assert_eq!(out.pixels().len(), 4);
        for c in out.pixels() {
            assert_eq!(c.components(), &[0.0, 0.0, 0.0, 1.0]);
        }
    }

    #[test]
    fn large_image_preserves_order() {
        let pixels: Vec<Rgb8> = (0..40_000u32)
            .map(|i| Rgb8::new((i % 256) as u8, (i / 256 % 256) as u8, (i * 7 % 256) as u8))
            .collect();
        let buf = PixelBuffer::new(200, 200, pixels.clone()).unwrap();
        let ctx = ConversionContext::default();
        for model in ColorModelId::ALL {
            let out = ctx.convert_image(&buf, model);
            assert_eq!((out.width(), out.height(), out.pixels().len()), (200, 200, 40_000));
            for (p, c) in pixels.iter().zip(out.pixels()).step_by(997) {
                assert_eq!(*c, ctx.forward_rgb8(model, *p));
            }
            let par = ctx.convert_image_parallel(&buf, model, 7);
            assert!(out
                .pixels()
                .iter()
                .zip(par.pixels())
                .all(|(a, b)| a.components().iter().zip(b.components()).all(|(x, y)| x.to_bits() == y.to_bits())));
        }
    }

    #[test]
    fn try_inverse_rejects_out_of_range_components() {
        let ctx = ConversionContext::default();
        let bad = ColorCoord::new(ColorModelId::Hsv, &[10.0, 2.0, 0.5]).unwrap();
        assert!(ctx.try_inverse(&bad).is_err());
        let ok = ColorCoord::new(ColorModelId::Hsv, &[0.0, 1.0, 1.0]).unwrap();
        assert_eq!(ctx.try_inverse(&ok).unwrap().to_rgb8(), Rgb8::new(255, 0, 0));
    }
}
