//! Color-matching study analytics: session logs, per-model mean completion
//! times, and a deterministic 1-D k-means that groups models into high,
//! medium and low intuitiveness.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use chrono::DateTime;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::{ColorCoord, ColorError, ColorModelId, Rgb8};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("cannot read sessions: {0}")]
    Csv(#[from] csv::Error),
    #[error("sessions header must be `{expected}`, got `{got}`")]
    Header { expected: &'static str, got: String },
    #[error("no valid session rows ({rejected} rejected)")]
    NoValidRows { rejected: usize },
    #[error("k-means needs at least {k} distinct values, got {distinct}")]
    TooFewDistinct { k: usize, distinct: usize },
    #[error("k must be positive")]
    ZeroK,
    #[error("value for {0} is not finite")]
    NonFinite(String),
}

/// A model that can appear in the study: RGB or one of the eleven others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StudyModel {
    Rgb,
    Model(ColorModelId),
}

impl StudyModel {
    pub fn name(self) -> &'static str {
        match self {
            StudyModel::Rgb => "rgb",
            StudyModel::Model(m) => m.name(),
        }
    }

    /// All twelve, RGB first.
    pub fn all() -> Vec<StudyModel> {
        std::iter::once(StudyModel::Rgb)
            .chain(ColorModelId::ALL.iter().map(|&m| StudyModel::Model(m)))
            .collect()
    }

    pub fn arity(self) -> usize {
        match self {
            StudyModel::Rgb => 3,
            StudyModel::Model(m) => m.arity(),
        }
    }
}

impl fmt::Display for StudyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StudyModel {
    type Err = ColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("rgb") {
            return Ok(StudyModel::Rgb);
        }
        s.parse::<ColorModelId>().map(StudyModel::Model).map_err(|e| match e {
            ColorError::UnknownModel { given, valid } => ColorError::UnknownModel {
                given,
                valid: format!("rgb, {valid}"),
            },
            other => other,
        })
    }
}

impl TryFrom<String> for StudyModel {
    type Error = ColorError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<StudyModel> for String {
    fn from(m: StudyModel) -> Self {
        m.name().to_owned()
    }
}

/// What the participant settled on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FinalColor {
    Rgb(Rgb8),
    Coord(ColorCoord),
}

impl FinalColor {
    pub fn parse(model: StudyModel, values: &[f64]) -> Result<Self, String> {
        if values.len() != model.arity() {
            return Err(format!(
                "{model} expects {} components, got {}",
                model.arity(),
                values.len()
            ));
        }
        match model {
            StudyModel::Rgb => {
                let mut ch = [0u8; 3];
                for (dst, &v) in ch.iter_mut().zip(values) {
                    if v.fract() != 0.0 || !(0.0..=255.0).contains(&v) {
                        return Err(format!("RGB component {v} is not an integer in [0, 255]"));
                    }
                    *dst = v as u8;
                }
                Ok(FinalColor::Rgb(Rgb8::new(ch[0], ch[1], ch[2])))
            }
            StudyModel::Model(m) => ColorCoord::new(m, values)
                .and_then(ColorCoord::validated)
                .map(FinalColor::Coord)
                .map_err(|e| e.to_string()),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            FinalColor::Rgb(c) => c.channels().iter().map(|&v| f64::from(v)).collect(),
            FinalColor::Coord(c) => c.components().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionRecord {
    pub participant_id: String,
    pub model: StudyModel,
    pub target: Rgb8,
    pub final_color: FinalColor,
    pub elapsed_s: f64,
    /// RFC 3339 timestamp, kept as written.
    pub timestamp: String,
}

pub const SESSION_HEADER: [&str; 6] = [
    "participant_id",
    "model",
    "target_hex",
    "components",
    "elapsed_s",
    "timestamp",
];

/// Components are joined with `;` inside one CSV cell.
pub fn format_components(values: &[f64]) -> String {
    values.iter().map(f64::to_string).collect::<Vec<_>>().join(";")
}

impl SessionRecord {
    pub fn to_csv_row(&self) -> [String; 6] {
        [
            self.participant_id.clone(),
            self.model.name().to_owned(),
            self.target.to_hex(),
            format_components(&self.final_color.values()),
            self.elapsed_s.to_string(),
            self.timestamp.clone(),
        ]
    }

    fn from_row(row: &csv::StringRecord) -> Result<Self, String> {
        if row.len() != SESSION_HEADER.len() {
            return Err(format!("expected 6 fields, got {}", row.len()));
        }
        let participant_id = row[0].trim().to_owned();
        if participant_id.is_empty() {
            return Err("empty participant_id".into());
        }
        let model: StudyModel = row[1].parse().map_err(|e: ColorError| e.to_string())?;
        let target = Rgb8::from_hex(row[2].trim()).map_err(|e| e.to_string())?;
        let values = row[3]
            .split(';')
            .map(|v| v.trim().parse::<f64>().map_err(|_| format!("bad component '{v}'")))
            .collect::<Result<Vec<_>, _>>()?;
        let final_color = FinalColor::parse(model, &values)?;
        let elapsed_s: f64 = row[4]
            .trim()
            .parse()
            .map_err(|_| format!("bad elapsed_s '{}'", &row[4]))?;
        if !(elapsed_s.is_finite() && elapsed_s > 0.0) {
            return Err(format!("elapsed_s must be positive, got {elapsed_s}"));
        }
        let timestamp = row[5].trim().to_owned();
        DateTime::parse_from_rfc3339(&timestamp)
            .map_err(|e| format!("bad timestamp '{timestamp}': {e}"))?;
        Ok(Self {
            participant_id,
            model,
            target,
            final_color,
            elapsed_s,
            timestamp,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedRow {
    /// 1-based line in the source, the header being line 1.
    pub line: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ingest {
    pub records: Vec<SessionRecord>,
    pub rejected: Vec<RejectedRow>,
}

/// Parses a session log, keeping valid rows and reporting the rest.
pub fn ingest_sessions<R: Read>(source: R) -> Result<Ingest, AnalysisError> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .has_headers(true)
        .from_reader(source);
    let header = reader.headers()?.clone();
    if header.iter().map(str::trim).ne(SESSION_HEADER) {
        return Err(AnalysisError::Header {
            expected: "participant_id,model,target_hex,components,elapsed_s,timestamp",
            got: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut out = Ingest {
        records: Vec::new(),
        rejected: Vec::new(),
    };
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        match SessionRecord::from_row(&row) {
            Ok(rec) => out.records.push(rec),
            Err(reason) => out.rejected.push(RejectedRow { line, reason }),
        }
    }
    if out.records.is_empty() {
        return Err(AnalysisError::NoValidRows {
            rejected: out.rejected.len(),
        });
    }
    Ok(out)
}

pub fn write_sessions<W: Write>(out: W, records: &[SessionRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SESSION_HEADER)?;
    for r in records {
        w.write_record(r.to_csv_row())?;
    }
    w.flush()?;
    Ok(())
}

/// Mean elapsed seconds per model.
pub fn mean_times(records: &[SessionRecord]) -> BTreeMap<StudyModel, f64> {
    let mut acc: BTreeMap<StudyModel, (f64, usize)> = BTreeMap::new();
    for r in records {
        let e = acc.entry(r.model).or_default();
        e.0 += r.elapsed_s;
        e.1 += 1;
    }
    acc.into_iter()
        .map(|(m, (sum, n))| (m, sum / n as f64))
        .collect()
}

/// Mean completion times from the published study, in seconds.
pub const PUBLISHED_MEAN_TIMES: [(StudyModel, f64); 12] = [
    (StudyModel::Model(ColorModelId::Cmy), 50.58),
    (StudyModel::Model(ColorModelId::Cmyk), 46.69),
    (StudyModel::Model(ColorModelId::Hsi), 48.80),
    (StudyModel::Model(ColorModelId::Hsl), 63.88),
    (StudyModel::Model(ColorModelId::Hsv), 34.25),
    (StudyModel::Model(ColorModelId::Lab), 58.74),
    (StudyModel::Model(ColorModelId::Luv), 34.37),
    (StudyModel::Rgb, 54.69),
    (StudyModel::Model(ColorModelId::Xyz), 122.71),
    (StudyModel::Model(ColorModelId::Ycbcr), 57.29),
    (StudyModel::Model(ColorModelId::Yiq), 58.54),
    (StudyModel::Model(ColorModelId::Yuv), 38.63),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Cluster per input value; cluster 0 has the smallest centroid.
    pub assignments: Vec<usize>,
    /// Ascending.
    pub centroids: Vec<f64>,
    pub iterations: usize,
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

const MAX_ITERATIONS: usize = 1_000;

/// Lloyd's algorithm in one dimension.
///
/// Centroids start at evenly spaced quantiles of the sorted values, which for
/// k = 3 are the minimum, median and maximum. A value equidistant from two
/// centroids joins the lower one; an empty cluster keeps its centroid.
pub fn kmeans_1d(values: &[f64], k: usize) -> Result<Clustering, AnalysisError> {
    if k == 0 {
        return Err(AnalysisError::ZeroK);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut distinct = sorted.clone();
    distinct.dedup();
    if distinct.len() < k {
        return Err(AnalysisError::TooFewDistinct {
            k,
            distinct: distinct.len(),
        });
    }
    let mut centroids: Vec<f64> = if k == 1 {
        vec![quantile(&sorted, 0.5)]
    } else {
        (0..k)
            .map(|j| quantile(&sorted, j as f64 / (k - 1) as f64))
            .collect()
    };
    let mut assignments = vec![usize::MAX; values.len()];
    let mut iterations = 0;
    loop {
        let mut changed = false;
        for (a, &v) in assignments.iter_mut().zip(values) {
            let mut best = 0;
            for j in 1..k {
                if (v - centroids[j]).abs() < (v - centroids[best]).abs() {
                    best = j;
                }
            }
            changed |= *a != best;
            *a = best;
        }
        iterations += 1;
        if !changed || iterations >= MAX_ITERATIONS {
            break;
        }
        let mut sums = vec![(0.0, 0usize); k];
        for (&a, &v) in assignments.iter().zip(values) {
            sums[a].0 += v;
            sums[a].1 += 1;
        }
        for (c, (sum, n)) in centroids.iter_mut().zip(sums) {
            if n > 0 {
                *c = sum / n as f64;
            }
        }
    }
    // Relabel so cluster indices follow ascending centroids.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| centroids[a].total_cmp(&centroids[b]).then(a.cmp(&b)));
    let mut rank = vec![0; k];
    for (r, &j) in order.iter().enumerate() {
        rank[j] = r;
    }
    Ok(Clustering {
        assignments: assignments.iter().map(|&a| rank[a]).collect(),
        centroids: order.iter().map(|&j| centroids[j]).collect(),
        iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Intuitiveness {
    High,
    Medium,
    Low,
}

impl Intuitiveness {
    pub fn label(self) -> &'static str {
        match self {
            Intuitiveness::High => "High",
            Intuitiveness::Medium => "Medium",
            Intuitiveness::Low => "Low",
        }
    }

    fn from_cluster(c: usize) -> Self {
        [Intuitiveness::High, Intuitiveness::Medium, Intuitiveness::Low][c]
    }
}

impl fmt::Display for Intuitiveness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntuitivenessRow {
    pub model: StudyModel,
    pub mean_s: f64,
    pub cluster: usize,
    pub category: Intuitiveness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntuitivenessTable {
    pub rows: Vec<IntuitivenessRow>,
    pub centroids: Vec<f64>,
}

/// Three-way k-means over per-model means; the fastest cluster is `High`.
pub fn categorize(means: &[(StudyModel, f64)]) -> Result<IntuitivenessTable, AnalysisError> {
    if let Some((m, _)) = means.iter().find(|(_, v)| !v.is_finite()) {
        return Err(AnalysisError::NonFinite(m.to_string()));
    }
    let values: Vec<f64> = means.iter().map(|p| p.1).collect();
    let clustering = kmeans_1d(&values, 3)?;
    let rows = means
        .iter()
        .zip(&clustering.assignments)
        .map(|(&(model, mean_s), &cluster)| IntuitivenessRow {
            model,
            mean_s,
            cluster,
            category: Intuitiveness::from_cluster(cluster),
        })
        .collect();
    Ok(IntuitivenessTable {
        rows,
        centroids: clustering.centroids,
    })
}

/// Categorizes the published means.
pub fn replay_published() -> IntuitivenessTable {
    categorize(&PUBLISHED_MEAN_TIMES).expect("published means have twelve distinct values")
}

impl IntuitivenessTable {
    pub fn category_of(&self, model: StudyModel) -> Option<Intuitiveness> {
        self.rows.iter().find(|r| r.model == model).map(|r| r.category)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["model", "mean_s", "cluster", "category"])?;
        for r in &self.rows {
            w.write_record([
                r.model.name().to_owned(),
                format!("{:.3}", r.mean_s),
                r.cluster.to_string(),
                r.category.label().to_owned(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}
