//! Timing harness for scalar and whole-image conversions.
//!
//! Every target sees the same seeded inputs, generated before any timing
//! starts. Each run is timed as a whole with a monotonic clock; the report
//! gives the mean and sample standard deviation of run times, the overhead
//! relative to the slowest target, and a speed class.

use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::color::{ColorCoord, ColorModelId, PixelBuffer, Rgb8};
use crate::transforms::ConversionContext;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("runs must be at least 2 so a standard deviation exists, got {0}")]
    Runs(usize),
    #[error("{0} must be positive")]
    Zero(&'static str),
    #[error("no benchmark targets given")]
    NoTargets,
    #[error("overhead must lie in (0, 100], got {0}")]
    Overhead(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    /// Forward then inverse, back to Rgb8.
    #[default]
    Joint,
    Forward,
    Inverse,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Joint => "joint",
            ScalarMode::Forward => "forward",
            ScalarMode::Inverse => "inverse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchKind {
    Scalar,
    Image,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub runs: usize,
    /// Conversions per run (scalar) or images per run (image).
    pub iterations: usize,
    pub image_width: usize,
    pub image_height: usize,
    /// Untimed iterations before the first run.
    pub warmup: usize,
    pub seed: u64,
    pub scalar_mode: ScalarMode,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            runs: 7,
            iterations: 100_000,
            image_width: 200,
            image_height: 200,
            warmup: 10_000,
            seed: 0x00C0_10A5,
            scalar_mode: ScalarMode::Joint,
        }
    }
}

impl BenchConfig {
    /// Image-mode defaults: 7 runs of 10 images, one warmup image.
    pub fn image() -> Self {
        Self {
            iterations: 10,
            warmup: 1,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.runs < 2 {
            return Err(BenchError::Runs(self.runs));
        }
        for (name, v) in [
            ("iterations", self.iterations),
            ("image_width", self.image_width),
            ("image_height", self.image_height),
        ] {
            if v == 0 {
                return Err(BenchError::Zero(name));
            }
        }
        Ok(())
    }
}

/// A conversion model, or the identity used to measure harness overhead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchTarget {
    Model(ColorModelId),
    Identity,
}

impl BenchTarget {
    pub fn all_models() -> Vec<BenchTarget> {
        ColorModelId::ALL.iter().map(|&m| BenchTarget::Model(m)).collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            BenchTarget::Model(m) => m.name(),
            BenchTarget::Identity => "identity",
        }
    }
}

impl fmt::Display for BenchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BenchTarget {
    type Err = crate::color::ColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("identity") {
            Ok(BenchTarget::Identity)
        } else {
            s.parse().map(BenchTarget::Model)
        }
    }
}

impl Serialize for BenchTarget {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpeedClass {
    #[serde(rename = "Very Fast")]
    VeryFast,
    Fast,
    Moderate,
    Slow,
    #[serde(rename = "Very Slow")]
    VerySlow,
}

impl SpeedClass {
    pub fn label(self) -> &'static str {
        match self {
            SpeedClass::VeryFast => "Very Fast",
            SpeedClass::Fast => "Fast",
            SpeedClass::Moderate => "Moderate",
            SpeedClass::Slow => "Slow",
            SpeedClass::VerySlow => "Very Slow",
        }
    }
}

impl fmt::Display for SpeedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Cutoffs (percent of the slowest model) between consecutive classes.
pub const SPEED_THRESHOLDS: [f64; 4] = [5.0, 7.0, 15.0, 50.0];

pub fn classify_speed(overhead_pct: f64) -> Result<SpeedClass, BenchError> {
    if !(overhead_pct > 0.0 && overhead_pct <= 100.0) {
        return Err(BenchError::Overhead(overhead_pct));
    }
    let [very_fast, fast, moderate, slow] = SPEED_THRESHOLDS;
    Ok(if overhead_pct < very_fast {
        SpeedClass::VeryFast
    } else if overhead_pct < fast {
        SpeedClass::Fast
    } else if overhead_pct < moderate {
        SpeedClass::Moderate
    } else if overhead_pct < slow {
        SpeedClass::Slow
    } else {
        SpeedClass::VerySlow
    })
}

/// Mean and sample standard deviation (Welford's update).
pub fn mean_std(samples: &[f64]) -> (f64, f64) {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (k, &x) in samples.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (x - mean);
    }
    let n = samples.len();
    let std = if n > 1 { (m2 / (n - 1) as f64).sqrt() } else { 0.0 };
    (mean, std)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchEntry {
    pub model: BenchTarget,
    /// Seconds per run.
    pub mean_s: f64,
    pub std_s: f64,
    pub overhead_pct: f64,
    pub class: SpeedClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub kind: BenchKind,
    pub config: BenchConfig,
    pub entries: Vec<BenchEntry>,
}

impl BenchReport {
    /// Builds entries from per-target run times in seconds.
    pub fn from_timings(
        kind: BenchKind,
        config: BenchConfig,
        timings: Vec<(BenchTarget, Vec<f64>)>,
    ) -> Self {
        let stats: Vec<(BenchTarget, f64, f64)> = timings
            .into_iter()
            .map(|(t, runs)| {
                let (m, s) = mean_std(&runs);
                (t, m, s)
            })
            .collect();
        let max = stats.iter().map(|s| s.1).fold(0.0, f64::max);
        let entries = stats
            .into_iter()
            .map(|(model, mean_s, std_s)| {
                let overhead_pct = if max > 0.0 { 100.0 * mean_s / max } else { 100.0 };
                BenchEntry {
                    model,
                    mean_s,
                    std_s,
                    overhead_pct,
                    // Only a zero-duration target can fall outside (0, 100].
                    class: classify_speed(overhead_pct).unwrap_or(SpeedClass::VeryFast),
                }
            })
            .collect();
        Self {
            kind,
            config,
            entries,
        }
    }

    pub fn entry(&self, target: BenchTarget) -> Option<&BenchEntry> {
        self.entries.iter().find(|e| e.model == target)
    }

    pub fn header(&self) -> String {
        let c = &self.config;
        match self.kind {
            BenchKind::Scalar => format!(
                "scalar benchmark ({}): {} runs, {} iterations per run, {} warmup, seed {}",
                c.scalar_mode.name(),
                c.runs,
                c.iterations,
                c.warmup,
                c.seed
            ),
            BenchKind::Image => format!(
                "image benchmark ({}x{}): {} runs, {} iterations per run, {} warmup, seed {}",
                c.image_width, c.image_height, c.runs, c.iterations, c.warmup, c.seed
            ),
        }
    }

    /// Fixed-width text table with unit-prefixed times.
    pub fn to_table(&self) -> String {
        let mut out = format!("{}\n", self.header());
        out.push_str(&format!(
            "{:<10} {:>12} {:>12} {:>10}  {}\n",
            "model", "mean", "std", "overhead", "class"
        ));
        for e in &self.entries {
            out.push_str(&format!(
                "{:<10} {:>12} {:>12} {:>9.2}%  {}\n",
                e.model.name(),
                fmt_seconds(e.mean_s),
                fmt_seconds(e.std_s),
                e.overhead_pct,
                e.class
            ));
        }
        out
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["model", "mean_s", "std_s", "overhead_pct", "class"])?;
        for e in &self.entries {
            w.write_record([
                e.model.name().to_owned(),
                format!("{:.6e}", e.mean_s),
                format!("{:.6e}", e.std_s),
                format!("{:.2}", e.overhead_pct),
                e.class.label().to_owned(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Seconds with an SI prefix, e.g. `20.600 ms`.
pub fn fmt_seconds(s: f64) -> String {
    let (scale, unit) = if s >= 1.0 {
        (1.0, "s")
    } else if s >= 1e-3 {
        (1e3, "ms")
    } else if s >= 1e-6 {
        (1e6, "us")
    } else {
        (1e9, "ns")
    };
    format!("{:.3} {unit}", s * scale)
}

pub fn random_pixels(seed: u64, n: usize) -> Vec<Rgb8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Rgb8::new(rng.gen(), rng.gen(), rng.gen()))
        .collect()
}

pub fn random_image(seed: u64, width: usize, height: usize) -> PixelBuffer<Rgb8> {
    PixelBuffer::new(width, height, random_pixels(seed, width * height)).expect("positive size")
}

fn time_runs(runs: usize, mut body: impl FnMut()) -> Vec<f64> {
    (0..runs)
        .map(|_| {
            let start = Instant::now();
            body();
            start.elapsed().as_secs_f64()
        })
        .collect()
}

fn scalar_pass(ctx: &ConversionContext, target: BenchTarget, mode: ScalarMode, inputs: &[Rgb8], coords: &[ColorCoord]) {
    match (target, mode) {
        (BenchTarget::Identity, _) => {
            for p in inputs {
                black_box(black_box(p));
            }
        }
        (BenchTarget::Model(m), ScalarMode::Joint) => {
            for &p in inputs {
                black_box(ctx.round_trip(m, black_box(p)));
            }
        }
        (BenchTarget::Model(m), ScalarMode::Forward) => {
            for &p in inputs {
                black_box(ctx.forward_rgb8(m, black_box(p)));
            }
        }
        (BenchTarget::Model(_), ScalarMode::Inverse) => {
            for c in coords {
                black_box(ctx.inverse(black_box(c)));
            }
        }
    }
}

/// Times `iterations` conversions per run for each target.
pub fn bench_scalar(cfg: &BenchConfig, targets: &[BenchTarget]) -> Result<BenchReport, BenchError> {
    cfg.validate()?;
    if targets.is_empty() {
        return Err(BenchError::NoTargets);
    }
    let ctx = ConversionContext::default();
    let inputs = random_pixels(cfg.seed, cfg.iterations);
    let warm: Vec<Rgb8> = inputs.iter().copied().cycle().take(cfg.warmup).collect();
    let mut timings = Vec::with_capacity(targets.len());
    for &target in targets {
        let coords: Vec<ColorCoord> = match (target, cfg.scalar_mode) {
            (BenchTarget::Model(m), ScalarMode::Inverse) => {
                inputs.iter().map(|&p| ctx.forward_rgb8(m, p)).collect()
            }
            _ => Vec::new(),
        };
        let warm_coords = &coords[..coords.len().min(cfg.warmup)];
        scalar_pass(&ctx, target, cfg.scalar_mode, &warm, warm_coords);
        let runs = time_runs(cfg.runs, || {
            scalar_pass(&ctx, target, cfg.scalar_mode, &inputs, &coords)
        });
        timings.push((target, runs));
    }
    Ok(BenchReport::from_timings(BenchKind::Scalar, cfg.clone(), timings))
}

fn image_pass(ctx: &ConversionContext, target: BenchTarget, image: &PixelBuffer<Rgb8>, count: usize) {
    for _ in 0..count {
        match target {
            BenchTarget::Identity => {
                black_box(black_box(image));
            }
            BenchTarget::Model(m) => {
                black_box(ctx.convert_image(black_box(image), m));
            }
        }
    }
}

/// Times `iterations` whole-image forward conversions per run.
pub fn bench_image(cfg: &BenchConfig, targets: &[BenchTarget]) -> Result<BenchReport, BenchError> {
    cfg.validate()?;
    if targets.is_empty() {
        return Err(BenchError::NoTargets);
    }
    let ctx = ConversionContext::default();
    let image = random_image(cfg.seed, cfg.image_width, cfg.image_height);
    let mut timings = Vec::with_capacity(targets.len());
    for &target in targets {
        image_pass(&ctx, target, &image, cfg.warmup);
        let runs = time_runs(cfg.runs, || image_pass(&ctx, target, &image, cfg.iterations));
        timings.push((target, runs));
    }
    Ok(BenchReport::from_timings(BenchKind::Image, cfg.clone(), timings))
}
