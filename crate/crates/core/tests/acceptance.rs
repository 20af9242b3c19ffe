//! End-to-end acceptance checks, one test per criterion.
//!
//! Timed checks take `TIMING` so nothing else in this binary competes for the CPU.

mod common;

use std::sync::Mutex;
use std::time::{Duration, Instant};

use colorlab::analysis::{Intuitiveness, StudyModel};
use colorlab::bench::{bench_image, bench_scalar, classify_speed, BenchConfig, BenchTarget, SpeedClass};
use colorlab::cli::run;
use colorlab::color::{ColorCoord, ColorModelId, Rgb8, UnitRgb};
use colorlab::fuzzy::{defuzzify_centroid, validate_partition, Domain, FuzzyColorSpace, MembershipFunction};
use colorlab::metrics::{delta_e_2000, delta_e_76, delta_e_94, DeltaEParams, Lab, LabPair};
use colorlab::transforms::cie::{RGB_TO_XYZ, XYZ_TO_RGB};
use colorlab::transforms::luma::{RGB_TO_YIQ, RGB_TO_YUV, YIQ_TO_RGB, YUV_TO_RGB};
use colorlab::transforms::ConversionContext;
use common::delta_e_oracle as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static TIMING: Mutex<()> = Mutex::new(());

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let _guard = TIMING.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

#[test]
fn round_trip_fidelity() {
    let (worst, took) = timed(|| {
        let ctx = ConversionContext::default();
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0001);
        let samples: Vec<Rgb8> = (0..100_000).map(|_| Rgb8::new(rng.gen(), rng.gen(), rng.gen())).collect();
        ColorModelId::ALL
            .iter()
            .map(|&model| {
                let err = samples
                    .iter()
                    .map(|&c| {
                        let back = ctx.round_trip(model, c);
                        c.channels().iter().zip(back.channels()).map(|(a, b)| a.abs_diff(b)).max().unwrap()
                    })
                    .max()
                    .unwrap();
                (model, err)
            })
            .collect::<Vec<_>>()
    });
    for (model, err) in worst {
        let limit = match model {
            ColorModelId::Cmy | ColorModelId::Cmyk | ColorModelId::Hsl | ColorModelId::Hsv => 1,
            _ => 2,
        };
        assert!(err <= limit, "{}: max channel error {err} > {limit}", model.name());
    }
    assert!(took < Duration::from_secs(30), "took {took:?}");
}

fn fwd(model: ColorModelId, c: Rgb8) -> Vec<f64> {
    ConversionContext::default().forward_rgb8(model, c).components().to_vec()
}

fn close(got: &[f64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= tol)
}

#[test]
fn analytic_anchors() {
    let white = Rgb8::new(255, 255, 255);
    let black = Rgb8::new(0, 0, 0);
    let red = Rgb8::new(255, 0, 0);

    assert!(close(&fwd(ColorModelId::Lab, white), &[100.0, 0.0, 0.0], 1e-3));
    assert!(close(&fwd(ColorModelId::Lab, black), &[0.0, 0.0, 0.0], 0.02));
    assert!(close(&fwd(ColorModelId::Luv, white), &[100.0, 0.0, 0.0], 1e-3));
    assert_eq!(fwd(ColorModelId::Luv, black), [0.0, 0.0, 0.0]);

    let row_sums: Vec<f64> = RGB_TO_XYZ.iter().map(|r| r.iter().sum()).collect();
    assert!(close(&fwd(ColorModelId::Xyz, white), &row_sums, 5e-4));
    assert!(close(&row_sums, &[0.95047, 1.0, 1.08883], 5e-4));

    assert_eq!(fwd(ColorModelId::Hsv, red), [0.0, 1.0, 1.0]);
    assert_eq!(fwd(ColorModelId::Hsv, black), [0.0, 0.0, 0.0]);
    assert_eq!(fwd(ColorModelId::Hsl, red), [0.0, 1.0, 0.5]);
    assert!(close(&fwd(ColorModelId::Hsi, red), &[0.0, 1.0, 1.0 / 3.0], 1e-12));

    assert_eq!(fwd(ColorModelId::Cmyk, black), [0.0, 0.0, 0.0, 1.0]);
    assert_eq!(fwd(ColorModelId::Cmyk, white), [0.0, 0.0, 0.0, 0.0]);
    assert_eq!(fwd(ColorModelId::Cmyk, red), [0.0, 1.0, 1.0, 0.0]);
    assert_eq!(fwd(ColorModelId::Cmy, white), [0.0, 0.0, 0.0]);
    assert_eq!(fwd(ColorModelId::Cmy, black), [1.0, 1.0, 1.0]);

    assert!(close(&fwd(ColorModelId::Yiq, white), &[1.0, 0.0, 0.0], 1e-3));
    assert_eq!(fwd(ColorModelId::Ycbcr, black), [0.0, 128.0, 128.0]);
    assert!(close(&fwd(ColorModelId::Ycbcr, Rgb8::new(128, 128, 128)), &[128.0, 128.0, 128.0], 1.0));

    let ctx = ConversionContext::default();
    let inv = |m, v: &[f64]| ctx.inverse(&ColorCoord::new(m, v).unwrap()).as_array();
    assert!(close(&inv(ColorModelId::Hsl, &[120.0, 1.0, 0.5]), &[0.0, 1.0, 0.0], 1e-12));
    assert!(close(&inv(ColorModelId::Hsv, &[240.0, 1.0, 1.0]), &[0.0, 0.0, 1.0], 1e-12));
    let cmyk_red = ctx.forward_rgb8(ColorModelId::Cmyk, red);
    assert_eq!(ctx.inverse(&cmyk_red).to_rgb8(), red);
    let complement = ctx.forward(ColorModelId::Cmy, UnitRgb::new(0.2, 0.4, 0.8));
    assert!(close(complement.components(), &[0.8, 0.6, 0.2], 1e-12));
}

fn max_identity_deviation(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let v: f64 = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            let id = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - id).abs());
        }
    }
    worst
}

#[test]
fn matrix_pair_sanity() {
    for (name, fwd, inv) in [
        ("xyz", &RGB_TO_XYZ, &XYZ_TO_RGB),
        ("yiq", &RGB_TO_YIQ, &YIQ_TO_RGB),
        ("yuv", &RGB_TO_YUV, &YUV_TO_RGB),
    ] {
        let d = max_identity_deviation(inv, fwd).max(max_identity_deviation(fwd, inv));
        assert!(d <= 5e-3, "{name}: {d}");
    }
}

#[test]
fn delta_e_oracle_equivalence() {
    let params = DeltaEParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0004);
    let mut pairs: Vec<(oracle::Lab, oracle::Lab)> = oracle::SHARMA_PAIRS.iter().map(|&(p, q, _)| (p, q)).collect();
    for _ in 0..30 {
        let mut lab = || (rng.gen_range(0.0..100.0), rng.gen_range(-128.0..128.0), rng.gen_range(-128.0..128.0));
        pairs.push((lab(), lab()));
    }
    assert!(pairs.len() >= 30);
    for (p, q) in pairs {
        let lp = LabPair::new(Lab::new(p.0, p.1, p.2), Lab::new(q.0, q.1, q.2));
        assert!((delta_e_76(&lp) - oracle::cie76(p, q)).abs() <= 1e-4);
        assert!((delta_e_94(&lp, &params) - oracle::cie94(p, q, 1.0, 1.0, 1.0, 0.045, 0.015)).abs() <= 1e-4);
        assert!((delta_e_2000(&lp, &params) - oracle::ciede2000(p, q, 1.0, 1.0, 1.0)).abs() <= 1e-4);
    }
    for &(p, q, expected) in &oracle::SHARMA_PAIRS {
        let lp = LabPair::new(Lab::new(p.0, p.1, p.2), Lab::new(q.0, q.1, q.2));
        assert!((delta_e_2000(&lp, &params) - expected).abs() <= 1e-4);
    }
    let three_four_five = LabPair::new(Lab::new(50.0, 0.0, 0.0), Lab::new(50.0, 3.0, 4.0));
    assert_eq!(delta_e_76(&three_four_five), 5.0);
}

#[test]
fn speed_class_reproduction() {
    let printed = [
        ("cmy", 10.06, SpeedClass::Moderate),
        ("cmyk", 51.54, SpeedClass::VerySlow),
        ("lab", 100.0, SpeedClass::VerySlow),
        ("xyz", 43.35, SpeedClass::Slow),
        ("luv", 64.25, SpeedClass::VerySlow),
        ("hsl", 3.26, SpeedClass::VeryFast),
        ("hsv", 7.10, SpeedClass::Moderate),
        ("hsi", 3.83, SpeedClass::VeryFast),
        ("yiq", 1.15, SpeedClass::VeryFast),
        ("yuv", 17.15, SpeedClass::Slow),
        ("ycbcr", 6.32, SpeedClass::Fast),
    ];
    for (name, pct, class) in printed {
        assert_eq!(classify_speed(pct).unwrap(), class, "{name} at {pct}%");
    }

    let (report, took) = timed(|| {
        let targets: Vec<BenchTarget> =
            [ColorModelId::Yiq, ColorModelId::Lab, ColorModelId::Luv, ColorModelId::Cmyk]
                .map(BenchTarget::Model)
                .to_vec();
        bench_image(&BenchConfig::image(), &targets).unwrap()
    });
    let mean = |m| report.entry(BenchTarget::Model(m)).unwrap().mean_s;
    let yiq = mean(ColorModelId::Yiq);
    for other in [ColorModelId::Lab, ColorModelId::Luv, ColorModelId::Cmyk] {
        assert!(yiq < mean(other), "yiq {yiq} vs {} {}", other.name(), mean(other));
    }
    assert!(took < Duration::from_secs(180), "took {took:?}");
}

#[test]
fn intuitiveness_replay() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let ((), took) = timed(|| {
        let mut stdout = Vec::new();
        run(["colorlab", "analyze", "--replay-paper", "--out", out.to_str().unwrap()], &mut stdout).unwrap();
    });
    assert!(took < Duration::from_secs(1), "took {took:?}");

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("table.json")).unwrap()).unwrap();
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 13, "{json}");
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let model: StudyModel = fields[0].parse().unwrap();
        let want = match model {
            StudyModel::Model(ColorModelId::Hsv | ColorModelId::Luv | ColorModelId::Yuv) => Intuitiveness::High,
            StudyModel::Model(ColorModelId::Xyz) => Intuitiveness::Low,
            _ => Intuitiveness::Medium,
        };
        assert_eq!(fields[3], want.label(), "{line}");
    }
}

#[test]
fn fuzzy_partition_of_unity() {
    let report = validate_partition(&FuzzyColorSpace::bundled(), 10_000);
    assert!(report.max_deviation <= 1e-6, "{report:?}");

    for (m, w, p) in [(0.0, 1.0, 0.0), (0.5, 0.5, 0.1), (-37.25, 12.5, 3.0), (180.0, 60.0, 20.0)] {
        let tri = MembershipFunction::triangular(m - w, m, m + w, Domain::Linear).unwrap();
        assert!((defuzzify_centroid(&tri).unwrap() - m).abs() <= 1e-9);
        let trap = MembershipFunction::trapezoidal(m - w - p, m - p, m + p, m + w + p, Domain::Linear).unwrap();
        assert!((defuzzify_centroid(&trap).unwrap() - m).abs() <= 1e-9);
    }
    for (m, s) in [(0.0, 1.0), (0.5, 0.1), (-3.0, 2.5)] {
        let g = MembershipFunction::gaussian(m, s, Domain::Linear).unwrap();
        assert!((defuzzify_centroid(&g).unwrap() - m).abs() <= 1e-9);
    }
    for apex in [30.0, 120.0, 200.0, 300.0] {
        let t = MembershipFunction::triangular(apex - 30.0, apex, apex + 30.0, Domain::Circular).unwrap();
        assert!((defuzzify_centroid(&t).unwrap() - apex).abs() <= 1e-9);
    }
}

#[test]
fn null_benchmark_hygiene() {
    let (report, _) = timed(|| {
        let mut targets = BenchTarget::all_models();
        targets.push(BenchTarget::Identity);
        bench_scalar(&BenchConfig::default(), &targets).unwrap()
    });
    let identity = report.entry(BenchTarget::Identity).unwrap().mean_s;
    let fastest = report
        .entries
        .iter()
        .filter(|e| e.model != BenchTarget::Identity)
        .map(|e| e.mean_s)
        .fold(f64::INFINITY, f64::min);
    assert!(identity < 0.05 * fastest, "identity {identity} vs fastest {fastest}");
}
