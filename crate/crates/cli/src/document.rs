//! On-disk curve files: a `CurveSpec`, optionally wrapped with the guarantee
//! its builder established.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use sfcurve::constructions::Breakpoints;
use sfcurve::spec::CurveSpec;
use sfcurve::{Curve, Rect};

use crate::failure::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BreakpointKind {
    Dyadic,
    Harmonic,
}

/// `a_n = 1 - 2^-n` or `a_n = n/(n+1)` for `n = 1..=count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreakpointSpec {
    pub kind: BreakpointKind,
    pub count: usize,
}

impl BreakpointSpec {
    pub fn build(&self) -> Result<Breakpoints, Failure> {
        let bp = match self.kind {
            BreakpointKind::Dyadic => Breakpoints::dyadic(self.count),
            BreakpointKind::Harmonic => Breakpoints::harmonic(self.count),
        };
        bp.map_err(Failure::from)
    }
}

/// What a builder certifies about its output, recorded alongside the curve.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Guarantee {
    pub builder: String,
    /// Every point of `target` lies within `delta` of the image.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Rect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakpoints: Option<BreakpointSpec>,
    /// Certified upper bound on the uniform distance to the source curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified_distance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub curve: CurveSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guarantee: Option<Guarantee>,
}

impl CurveDocument {
    pub fn new(curve: &Curve, guarantee: Option<Guarantee>) -> Self {
        CurveDocument {
            curve: curve.to_spec(),
            guarantee,
        }
    }

    /// Accepts either a wrapped document or a bare `CurveSpec`.
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let value: Value = serde_json::from_str(text).map_err(|e| Failure::malformed(e.to_string()))?;
        let wrapped = value.as_object().is_some_and(|o| o.contains_key("curve"));
        if wrapped {
            serde_json::from_value(value).map_err(|e| Failure::malformed(e.to_string()))
        } else {
            let curve = serde_json::from_value(value).map_err(|e| Failure::malformed(e.to_string()))?;
            Ok(CurveDocument { curve, guarantee: None })
        }
    }

    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::malformed(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|f| f.context(&path.display().to_string()))
    }

    pub fn build(&self) -> Result<Curve, Failure> {
        self.curve.build().map_err(Failure::from)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}
