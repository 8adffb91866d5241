use std::fs;

use serde::Serialize;

use sfcurve::sampling::sampled_sup_norm;
use sfcurve::verification::{
    certify_delta_dense_with, classify, content_bounds, image_frame, nikolskii_ratio,
    non_degenerate_frame, rasterize, ClassifyConfig, ContentReport, Verdict,
};
use sfcurve::{Curve, Rect};

use crate::args::{ClassifyArgs, ContentArgs, NikolskiiArgs, VerifyArgs};
use crate::document::CurveDocument;
use crate::failure::Failure;
use crate::parse::parse_rect;

/// A JSON report plus whether it certifies the property it checks.
pub struct Outcome {
    pub json: String,
    pub certified: bool,
}

fn outcome(value: &impl Serialize, certified: bool) -> Outcome {
    Outcome {
        json: serde_json::to_string_pretty(value).expect("reports serialize"),
        certified,
    }
}

fn frame_of(curve: &Curve) -> Result<Rect, Failure> {
    Ok(non_degenerate_frame(image_frame(curve, (0.0, 1.0))?))
}

#[derive(Serialize)]
struct VerifyReport {
    certified: bool,
    delta: f64,
    target: Rect,
    grid: usize,
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let doc = CurveDocument::read(&args.input)?;
    let curve = doc.build()?;
    let target = match &args.target {
        Some(s) => parse_rect(s).map_err(|e| e.context("--target"))?,
        None => match doc.guarantee.as_ref().and_then(|g| g.target) {
            Some(t) => t,
            None => frame_of(&curve)?,
        },
    };
    let certified = certify_delta_dense_with(&curve, target, args.delta, args.samples)?;
    let grid = (target.max_side() / args.delta * (1.0 - 1e-12)).ceil() as usize;
    let report = VerifyReport {
        certified,
        delta: args.delta,
        target,
        grid,
    };
    Ok(outcome(&report, certified))
}

#[derive(Serialize)]
struct ContentOutput {
    #[serde(flatten)]
    report: ContentReport,
    /// Sampled `sup ‖f(t)‖₁`.
    max_abs: f64,
}

pub fn content(args: &ContentArgs) -> Result<Outcome, Failure> {
    let curve = CurveDocument::read(&args.input)?.build()?;
    let frame = match &args.frame {
        Some(s) => parse_rect(s).map_err(|e| e.context("--frame"))?,
        None => frame_of(&curve)?,
    };
    let grid = rasterize(&curve, frame, args.grid, args.samples)?;
    if let Some(path) = &args.pgm {
        fs::write(path, grid.to_pgm()).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    }
    let report = content_bounds(&grid);
    let tol = 1e-6 * (1.0 + frame.max_side());
    let max_abs = sampled_sup_norm(&curve, (0.0, 1.0), tol)?;
    Ok(outcome(&ContentOutput { report, max_abs }, true))
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<Outcome, Failure> {
    let curve = CurveDocument::read(&args.input)?.build()?;
    let cfg = ClassifyConfig {
        grid_sizes: args.grids.clone(),
        tau_sf: args.tau,
        n_samples: args.samples,
    };
    let c = classify(&curve, &cfg)?;
    let certified = c.verdict == Verdict::SfCertifiedAtResolution;
    Ok(outcome(&c, certified))
}

#[derive(Serialize)]
struct NikolskiiOutput {
    ratio: f64,
    tau: f64,
    basic: bool,
    trials: usize,
    max_len: usize,
    seed: u64,
}

pub fn nikolskii(args: &NikolskiiArgs) -> Result<Outcome, Failure> {
    let basis = args
        .inputs
        .iter()
        .map(|p| CurveDocument::read(p)?.build())
        .collect::<Result<Vec<_>, _>>()?;
    let max_len = args.max_len.unwrap_or(basis.len());
    let ratio = nikolskii_ratio(&basis, args.trials, max_len, args.seed)?;
    let basic = ratio <= 1.0 + args.tau;
    let out = NikolskiiOutput {
        ratio,
        tau: args.tau,
        basic,
        trials: args.trials,
        max_len,
        seed: args.seed,
    };
    Ok(outcome(&out, basic))
}
