use colorlab::color::{ColorModelId, Rgb8, UnitRgb};
use colorlab::transforms::cie::{RGB_TO_XYZ, XYZ_TO_RGB};
use colorlab::transforms::luma::{RGB_TO_YIQ, RGB_TO_YUV, YIQ_TO_RGB, YUV_TO_RGB};
use colorlab::transforms::ConversionContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pixels(seed: u64, n: usize) -> Vec<Rgb8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Rgb8::new(rng.gen(), rng.gen(), rng.gen())).collect()
}

fn tolerance(model: ColorModelId) -> u8 {
    match model {
        ColorModelId::Cmy | ColorModelId::Cmyk | ColorModelId::Hsl | ColorModelId::Hsv => 1,
        _ => 2,
    }
}

#[test]
fn round_trip_census() {
    let ctx = ConversionContext::default();
    let pixels = random_pixels(0x5eed, 100_000);
    for model in ColorModelId::ALL {
        let mut exact = 0usize;
        let mut worst = 0u8;
        for &p in &pixels {
            let back = ctx.round_trip(model, p);
            let err = p
                .channels()
                .iter()
                .zip(back.channels())
                .map(|(a, b)| a.abs_diff(b))
                .max()
                .unwrap();
            worst = worst.max(err);
            exact += usize::from(err == 0);
        }
        assert!(worst <= tolerance(model), "{model}: worst channel error {worst}");
        if matches!(model, ColorModelId::Lab | ColorModelId::Luv) {
            assert!(exact * 100 >= 99 * pixels.len(), "{model}: only {exact} exact");
        }
    }
}

fn max_identity_deviation(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let v: f64 = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

#[test]
fn printed_matrix_pairs_are_near_inverse() {
    for (name, fwd, inv) in [
        ("xyz", &RGB_TO_XYZ, &XYZ_TO_RGB),
        ("yiq", &RGB_TO_YIQ, &YIQ_TO_RGB),
        ("yuv", &RGB_TO_YUV, &YUV_TO_RGB),
    ] {
        let d = max_identity_deviation(inv, fwd).max(max_identity_deviation(fwd, inv));
        assert!(d < 5e-3, "{name}: {d}");
    }
}

#[test]
fn grays_have_no_chroma() {
    let ctx = ConversionContext::default();
    for v in (0..=255u8).step_by(5) {
        let gray = Rgb8::new(v, v, v);
        for model in [ColorModelId::Hsi, ColorModelId::Hsl, ColorModelId::Hsv] {
            assert_eq!(ctx.forward_rgb8(model, gray).c2(), 0.0, "{model} {v}");
        }
        let lab = ctx.forward_rgb8(ColorModelId::Lab, gray);
        assert!(lab.c2().abs() <= 0.02 && lab.c3().abs() <= 0.02, "{lab:?}");
        for model in [ColorModelId::Yiq, ColorModelId::Yuv] {
            let c = ctx.forward_rgb8(model, gray);
            assert!(c.c2().abs() <= 1e-3 && c.c3().abs() <= 1e-3, "{c:?}");
        }
        let ycc = ctx.forward_rgb8(ColorModelId::Ycbcr, gray);
        assert!((ycc.c2() - 128.0).abs() <= 1.0 && (ycc.c3() - 128.0).abs() <= 1.0);
    }
}

#[test]
fn lightness_role_increases_along_the_gray_axis() {
    let ctx = ConversionContext::default();
    let lightness = |model: ColorModelId, v: u8| {
        let c = ctx.forward_rgb8(model, Rgb8::new(v, v, v));
        match model {
            ColorModelId::Hsi | ColorModelId::Hsl | ColorModelId::Hsv => c.c3(),
            _ => c.c1(),
        }
    };
    for model in [
        ColorModelId::Hsi,
        ColorModelId::Hsl,
        ColorModelId::Hsv,
        ColorModelId::Lab,
        ColorModelId::Luv,
        ColorModelId::Xyz,
        ColorModelId::Yiq,
        ColorModelId::Yuv,
        ColorModelId::Ycbcr,
    ] {
        for v in 0..255u8 {
            assert!(lightness(model, v) < lightness(model, v + 1), "{model} at {v}");
        }
    }
}

#[test]
fn hexcone_inverses_cover_the_whole_hue_circle() {
    let ctx = ConversionContext::default();
    for model in [ColorModelId::Hsl, ColorModelId::Hsv] {
        for tenth in 0..3600 {
            let h = f64::from(tenth) / 10.0;
            let coord = colorlab::color::ColorCoord::new(model, &[h, 1.0, 0.5]).unwrap();
            let rgb = ctx.inverse(&coord);
            assert!(rgb.as_array().iter().all(|v| (0.0..=1.0).contains(v)), "{model} {h}: {rgb:?}");
            assert!(rgb != UnitRgb::gray(0.5), "{model} {h}");
        }
    }
}
