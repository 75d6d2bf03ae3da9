use serde::Serialize;

/// A published estimate of the entropy rate of English.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublishedEstimate {
    pub key: &'static str,
    pub method: &'static str,
    pub low: f64,
    /// Equal to `low` for point estimates.
    pub high: f64,
    pub unit: &'static str,
    pub note: &'static str,
    pub is_default: bool,
}

impl PublishedEstimate {
    pub fn is_range(&self) -> bool {
        self.high > self.low
    }

    /// Point value, or the midpoint of a range.
    pub fn value(&self) -> f64 {
        (self.low + self.high) / 2.0
    }

    pub fn display_value(&self) -> String {
        if self.is_range() {
            format!("{}-{}", self.low, self.high)
        } else {
            format!("{}", self.low)
        }
    }
}

const fn row(
    key: &'static str,
    method: &'static str,
    low: f64,
    high: f64,
    unit: &'static str,
    note: &'static str,
    is_default: bool,
) -> PublishedEstimate {
    PublishedEstimate {
        key,
        method,
        low,
        high,
        unit,
        note,
        is_default,
    }
}

static PRESETS: [PublishedEstimate; 7] = [
    row("shannon-1951", "n-gram frequencies and human prediction (Shannon 1951)", 0.6, 1.3, "bpc", "", false),
    row("cover-king", "human gambling on the next character (Cover and King 1978)", 1.29, 1.9, "bpc", "", false),
    row("guessing-2019", "large-scale replication of the guessing experiment (2019)", 1.22, 1.22, "bpc", "", false),
    row("compression", "match-length estimators from data compression", 0.92, 2.15, "bpc", "varies by text", false),
    row("ppm", "prediction by partial matching with extrapolation", 1.13, 1.13, "bpc", "", false),
    row("hutter", "Hutter prize compression of enwik9", 0.887, 0.887, "bits/byte", "file-specific; raw Wikipedia XML", false),
    row("default", "large language model compression (Mistral 7B)", 0.863, 0.863, "bpc", "used by the rounded rule", true),
];

pub fn preset_estimates() -> &'static [PublishedEstimate] {
    &PRESETS
}

pub fn find_preset(key: &str) -> Option<&'static PublishedEstimate> {
    let key = match key {
        "llm" | "mistral" => "default",
        "shannon" => "shannon-1951",
        "guessing" => "guessing-2019",
        other => other,
    };
    PRESETS.iter().find(|p| p.key == key)
}
