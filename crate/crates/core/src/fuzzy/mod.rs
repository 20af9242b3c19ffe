//! Fuzzy colors over the HS* models.
//!
//! A [`FuzzyColor`] holds one membership function per component: hue on the
//! circle, saturation and the third component (I, L or V) on the real line.
//! A [`FuzzyColorSpace`] groups labeled fuzzy colors and can check whether
//! they form a Ruspini partition.

mod config;

use std::collections::HashSet;
use std::f64::consts::PI;
use std::sync::OnceLock;

use thiserror::Error;

use crate::color::{normalize_hue, ColorCoord, ColorError, ColorModelId};

pub use config::{FuzzyConfigError, BUNDLED_HUE_PARTITION};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("invalid {kind} parameters {params:?}: {reason}")]
    Parameters {
        kind: &'static str,
        params: Vec<f64>,
        reason: &'static str,
    },
    #[error("fuzzy color '{0}' has no crisp color with membership 1")]
    NotNormalized(String),
    #[error("hue membership of '{0}' must use the circular domain")]
    HueDomain(String),
    #[error("membership function has zero area")]
    ZeroArea,
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
    #[error("fuzzy spaces are defined over hsi, hsl or hsv, not {0}")]
    UnsupportedModel(ColorModelId),
    #[error("space is defined over {expected}, got a {got} coordinate")]
    ModelMismatch {
        expected: ColorModelId,
        got: ColorModelId,
    },
    #[error("not a Ruspini partition: |sum - 1| reaches {deviation:e} at h={h}, s={s}, x={x}")]
    NotRuspini { deviation: f64, h: f64, s: f64, x: f64 },
    #[error("a fuzzy space needs at least one color")]
    Empty,
    #[error(transparent)]
    Color(#[from] ColorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Degrees, evaluated modulo 360.
    Circular,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
    Gaussian { mean: f64, sigma: f64 },
}

impl Shape {
    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Triangular { .. } => "triangular",
            Shape::Trapezoidal { .. } => "trapezoidal",
            Shape::Gaussian { .. } => "gaussian",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Shape::Triangular { a, b, c } => vec![a, b, c],
            Shape::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
            Shape::Gaussian { mean, sigma } => vec![mean, sigma],
        }
    }

    /// Corner points a ≤ b ≤ c ≤ d of the piecewise-linear shapes.
    fn corners(&self) -> Option<[f64; 4]> {
        match *self {
            Shape::Triangular { a, b, c } => Some([a, b, b, c]),
            Shape::Trapezoidal { a, b, c, d } => Some([a, b, c, d]),
            Shape::Gaussian { .. } => None,
        }
    }
}

/// A normalized membership function on a circular or linear domain.
///
/// Circular parameters are given in [0, 360] and may wrap past 0°, as in
/// `triangular(350, 0, 10)`; they are stored unwrapped so that the corners
/// increase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFunction {
    shape: Shape,
    domain: Domain,
    /// Unwrapped corners for piecewise-linear shapes.
    corners: [f64; 4],
}

fn bad(kind: &'static str, params: &[f64], reason: &'static str) -> FuzzyError {
    FuzzyError::Parameters {
        kind,
        params: params.to_vec(),
        reason,
    }
}

impl MembershipFunction {
    pub fn new(shape: Shape, domain: Domain) -> Result<Self, FuzzyError> {
        let kind = shape.kind();
        let params = shape.params();
        if params.iter().any(|p| !p.is_finite()) {
            return Err(bad(kind, &params, "parameters must be finite"));
        }
        let mut corners = [0.0; 4];
        match (shape, domain) {
            (Shape::Gaussian { sigma, mean }, _) => {
                if sigma <= 0.0 {
                    return Err(bad(kind, &params, "sigma must be positive"));
                }
                if domain == Domain::Circular && !(0.0..=360.0).contains(&mean) {
                    return Err(bad(kind, &params, "hue parameters must lie in [0, 360]"));
                }
            }
            (_, Domain::Linear) => {
                corners = shape.corners().expect("piecewise-linear shape");
                if corners.windows(2).any(|w| w[0] > w[1]) {
                    return Err(bad(kind, &params, "parameters must be non-decreasing"));
                }
            }
            (_, Domain::Circular) => {
                let raw = shape.corners().expect("piecewise-linear shape");
                if raw.iter().any(|p| !(0.0..=360.0).contains(p)) {
                    return Err(bad(kind, &params, "hue parameters must lie in [0, 360]"));
                }
                let mut offset = 0.0;
                for k in 0..4 {
                    corners[k] = raw[k] + offset;
                    if k > 0 && corners[k] < corners[k - 1] {
                        offset += 360.0;
                        corners[k] += 360.0;
                    }
                }
                if corners[3] - corners[0] > 360.0 {
                    return Err(bad(kind, &params, "support wider than the hue circle"));
                }
            }
        }
        Ok(Self {
            shape,
            domain,
            corners,
        })
    }

    pub fn triangular(a: f64, b: f64, c: f64, domain: Domain) -> Result<Self, FuzzyError> {
        Self::new(Shape::Triangular { a, b, c }, domain)
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64, domain: Domain) -> Result<Self, FuzzyError> {
        Self::new(Shape::Trapezoidal { a, b, c, d }, domain)
    }

    pub fn gaussian(mean: f64, sigma: f64, domain: Domain) -> Result<Self, FuzzyError> {
        Self::new(Shape::Gaussian { mean, sigma }, domain)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Membership degree in [0, 1]. Hue arguments are reduced modulo 360.
    pub fn membership(&self, x: f64) -> f64 {
        match (self.shape, self.domain) {
            (Shape::Gaussian { mean, sigma }, Domain::Linear) => gaussian(x - mean, sigma),
            (Shape::Gaussian { mean, sigma }, Domain::Circular) => {
                let d = (x - mean).rem_euclid(360.0);
                gaussian(d.min(360.0 - d), sigma)
            }
            (_, Domain::Linear) => ramp(&self.corners, x),
            (_, Domain::Circular) => {
                let a = self.corners[0];
                ramp(&self.corners, a + (x - a).rem_euclid(360.0))
            }
        }
    }

    /// Whether some x in `[lo, hi]` reaches membership 1.
    fn peaks_within(&self, lo: f64, hi: f64) -> bool {
        match self.shape {
            Shape::Gaussian { mean, .. } => (lo..=hi).contains(&mean),
            _ => self.corners[1] <= hi && self.corners[2] >= lo,
        }
    }
}

fn gaussian(dx: f64, sigma: f64) -> f64 {
    (-(dx * dx) / (2.0 * sigma * sigma)).exp()
}

fn ramp(&[a, b, c, d]: &[f64; 4], x: f64) -> f64 {
    if x < a || x > d {
        0.0
    } else if x < b {
        (x - a) / (b - a)
    } else if x <= c {
        1.0
    } else {
        (d - x) / (d - c)
    }
}

const QUADRATURE_POINTS: usize = 10_001;

/// Trapezoidal-rule integrals of (x·μ, μ, sin·μ, cos·μ) over `[lo, hi]`.
fn quadrature(f: &MembershipFunction, lo: f64, hi: f64) -> [f64; 4] {
    let step = (hi - lo) / (QUADRATURE_POINTS - 1) as f64;
    let mut acc = [0.0; 4];
    for k in 0..QUADRATURE_POINTS {
        let x = lo + step * k as f64;
        let w = if k == 0 || k == QUADRATURE_POINTS - 1 { 0.5 } else { 1.0 };
        let mu = w * f.membership(x);
        let rad = x * PI / 180.0;
        acc[0] += x * mu;
        acc[1] += mu;
        acc[2] += rad.sin() * mu;
        acc[3] += rad.cos() * mu;
    }
    acc.map(|v| v * step)
}

/// Center of gravity of μ.
///
/// Linear triangles and trapezoids use the closed form; Gaussians are
/// integrated over mean ± 8σ. On the hue circle the result is the circular
/// mean of the membership-weighted angle, in [0, 360).
pub fn defuzzify_centroid(f: &MembershipFunction) -> Result<f64, FuzzyError> {
    let [a, b, c, d] = f.corners;
    match (f.shape, f.domain) {
        (Shape::Gaussian { mean, sigma }, Domain::Linear) => {
            let [xm, m, _, _] = quadrature(f, mean - 8.0 * sigma, mean + 8.0 * sigma);
            Ok(xm / m)
        }
        (Shape::Gaussian { mean, sigma }, Domain::Circular) => {
            let half = (8.0 * sigma).min(180.0);
            circular_mean(quadrature(f, mean - half, mean + half))
        }
        (_, Domain::Linear) => {
            let denom = 3.0 * ((c + d) - (a + b));
            if denom <= 0.0 {
                return Err(FuzzyError::ZeroArea);
            }
            Ok(((c * c + d * d + c * d) - (a * a + b * b + a * b)) / denom)
        }
        (_, Domain::Circular) => {
            if d <= a {
                return Err(FuzzyError::ZeroArea);
            }
            circular_mean(quadrature(f, a, d))
        }
    }
}

fn circular_mean([_, mass, s, c]: [f64; 4]) -> Result<f64, FuzzyError> {
    if mass <= 0.0 || (s == 0.0 && c == 0.0) {
        return Err(FuzzyError::ZeroArea);
    }
    Ok(normalize_hue(s.atan2(c).to_degrees()))
}

/// How per-component memberships combine into one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Combiner {
    #[default]
    Min,
    Product,
}

impl Combiner {
    pub fn combine(self, h: f64, s: f64, x: f64) -> f64 {
        match self {
            Combiner::Min => h.min(s).min(x),
            Combiner::Product => h * s * x,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Combiner::Min => "min",
            Combiner::Product => "product",
        }
    }
}

/// A labeled fuzzy color. `mu_x` applies to the model's third component.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyColor {
    label: String,
    mu_h: MembershipFunction,
    mu_s: MembershipFunction,
    mu_x: MembershipFunction,
    combiner: Combiner,
}

impl FuzzyColor {
    /// Requires a circular hue function and saturation/third functions that
    /// reach 1 somewhere in [0, 1], so that some crisp color is fully a member.
    pub fn new(
        label: impl Into<String>,
        mu_h: MembershipFunction,
        mu_s: MembershipFunction,
        mu_x: MembershipFunction,
        combiner: Combiner,
    ) -> Result<Self, FuzzyError> {
        let label = label.into();
        if mu_h.domain != Domain::Circular {
            return Err(FuzzyError::HueDomain(label));
        }
        if !mu_s.peaks_within(0.0, 1.0) || !mu_x.peaks_within(0.0, 1.0) {
            return Err(FuzzyError::NotNormalized(label));
        }
        Ok(Self {
            label,
            mu_h,
            mu_s,
            mu_x,
            combiner,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mu_h(&self) -> &MembershipFunction {
        &self.mu_h
    }

    pub fn mu_s(&self) -> &MembershipFunction {
        &self.mu_s
    }

    pub fn mu_x(&self) -> &MembershipFunction {
        &self.mu_x
    }

    pub fn combiner(&self) -> Combiner {
        self.combiner
    }

    pub fn membership(&self, h: f64, s: f64, x: f64) -> f64 {
        self.combiner.combine(
            self.mu_h.membership(h),
            self.mu_s.membership(s),
            self.mu_x.membership(x),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartitionMode {
    Ruspini,
    #[default]
    None,
}

/// Worst point found by [`validate_partition`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionReport {
    pub max_deviation: f64,
    pub worst: (f64, f64, f64),
    pub points: usize,
}

/// Saturation and third-component grid size used when checking partitions.
pub const PARTITION_GRID: usize = 11;

/// Hue samples used when a Ruspini space is constructed.
const CONSTRUCTION_SAMPLES: usize = 720;

/// Tolerance on |Σμ − 1| for Ruspini spaces.
pub const RUSPINI_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyColorSpace {
    name: String,
    description: Option<String>,
    model: ColorModelId,
    colors: Vec<FuzzyColor>,
    partition_mode: PartitionMode,
}

impl FuzzyColorSpace {
    pub fn new(
        name: impl Into<String>,
        model: ColorModelId,
        colors: Vec<FuzzyColor>,
        partition_mode: PartitionMode,
    ) -> Result<Self, FuzzyError> {
        if !model.is_hue_model() {
            return Err(FuzzyError::UnsupportedModel(model));
        }
        if colors.is_empty() {
            return Err(FuzzyError::Empty);
        }
        let mut seen = HashSet::new();
        for c in &colors {
            if !seen.insert(c.label.as_str()) {
                return Err(FuzzyError::DuplicateLabel(c.label.clone()));
            }
        }
        let space = Self {
            name: name.into(),
            description: None,
            model,
            colors,
            partition_mode,
        };
        if partition_mode == PartitionMode::Ruspini {
            let report = validate_partition(&space, CONSTRUCTION_SAMPLES);
            if report.max_deviation > RUSPINI_TOLERANCE {
                let (h, s, x) = report.worst;
                return Err(FuzzyError::NotRuspini {
                    deviation: report.max_deviation,
                    h,
                    s,
                    x,
                });
            }
        }
        Ok(space)
    }

    pub fn with_description(mut self, text: impl Into<String>) -> Self {
        self.description = Some(text.into());
        self
    }

    /// The illustrative ten-label hue partition shipped with the crate.
    pub fn bundled() -> Self {
        static BUNDLED: OnceLock<FuzzyColorSpace> = OnceLock::new();
        BUNDLED
            .get_or_init(|| {
                Self::from_config_str(BUNDLED_HUE_PARTITION).expect("bundled partition is valid")
            })
            .clone()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_deref()
    }

    pub fn model(&self) -> ColorModelId {
        self.model
    }

    pub fn colors(&self) -> &[FuzzyColor] {
        &self.colors
    }

    pub fn partition_mode(&self) -> PartitionMode {
        self.partition_mode
    }

    fn total(&self, h: f64, s: f64, x: f64) -> f64 {
        self.colors.iter().map(|c| c.membership(h, s, x)).sum()
    }
}

/// Labels with nonzero membership, strongest first; ties sort by label.
pub fn classify(space: &FuzzyColorSpace, coord: &ColorCoord) -> Result<Vec<(String, f64)>, FuzzyError> {
    if coord.model() != space.model {
        return Err(FuzzyError::ModelMismatch {
            expected: space.model,
            got: coord.model(),
        });
    }
    let c = coord.validated()?;
    let mut out: Vec<(String, f64)> = space
        .colors
        .iter()
        .map(|f| (f.label.clone(), f.membership(c.c1(), c.c2(), c.c3())))
        .filter(|(_, mu)| *mu > 0.0)
        .collect();
    out.sort_by(|p, q| q.1.total_cmp(&p.1).then_with(|| p.0.cmp(&q.0)));
    Ok(out)
}

/// Largest |Σμ − 1| over `hue_samples` evenly spaced hues crossed with an
/// 11 × 11 grid of the other two components on [0, 1].
pub fn validate_partition(space: &FuzzyColorSpace, hue_samples: usize) -> PartitionReport {
    let hue_samples = hue_samples.max(1);
    let grid = PARTITION_GRID - 1;
    let mut report = PartitionReport {
        max_deviation: 0.0,
        worst: (0.0, 0.0, 0.0),
        points: 0,
    };
    for k in 0..hue_samples {
        let h = 360.0 * k as f64 / hue_samples as f64;
        for si in 0..=grid {
            let s = si as f64 / grid as f64;
            for xi in 0..=grid {
                let x = xi as f64 / grid as f64;
                let dev = (space.total(h, s, x) - 1.0).abs();
                report.points += 1;
                if dev > report.max_deviation {
                    report.max_deviation = dev;
                    report.worst = (h, s, x);
                }
            }
        }
    }
    report
}
