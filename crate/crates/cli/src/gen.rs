use serde::Deserialize;

use sfcurve::constructions::{
    algebrable_generator, cumulative_generator, nonequicontinuity_witness, semigroup_generator,
    semigroup_product, spaceable_basis, spaceable_combination, tsf1_generator, Breakpoints,
};
use sfcurve::generators::{filler_with_endpoints, hilbert, FillerGuarantee, DEFAULT_ORDER};
use sfcurve::{Curve, Point, Rect};

use crate::args::{Builder, GenArgs};
use crate::document::{BreakpointKind, BreakpointSpec, CurveDocument, Guarantee};
use crate::failure::Failure;
use crate::parse::{parse_point, parse_rect};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenParams {
    k: Option<u32>,
    n: Option<usize>,
    value: Option<Point>,
    rect: Option<Rect>,
    from: Option<Point>,
    to: Option<Point>,
    vertices: Option<Vec<(f64, Point)>>,
    word: Option<Vec<(usize, u32)>>,
    coefs: Option<Vec<f64>>,
    truncation: Option<usize>,
    family: Option<usize>,
    breakpoints: Option<BreakpointSpec>,
    delta: Option<f64>,
}

fn require<T>(v: Option<T>, name: &str, builder: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("builder `{builder}` needs `{name}`")))
}

const DEFAULT_BREAKPOINTS: BreakpointSpec = BreakpointSpec {
    kind: BreakpointKind::Dyadic,
    count: 52,
};

/// Harmonic spacing keeps the deeply nested free-algebra windows well above
/// rounding scale.
const ALGEBRABLE_BREAKPOINTS: BreakpointSpec = BreakpointSpec {
    kind: BreakpointKind::Harmonic,
    count: 64,
};

pub fn run(args: &GenArgs) -> Result<CurveDocument, Failure> {
    let mut p: GenParams = match &args.params {
        Some(text) => serde_json::from_str(text).map_err(|e| Failure::usage(format!("--params: {e}")))?,
        None => GenParams::default(),
    };
    if args.k.is_some() {
        p.k = args.k;
    }
    if args.n.is_some() {
        p.n = args.n;
    }
    if let Some(v) = &args.value {
        p.value = Some(parse_point(v).map_err(|e| e.context("--value"))?);
    }
    if let Some(r) = &args.rect {
        p.rect = Some(parse_rect(r).map_err(|e| e.context("--rect"))?);
    }
    let name = args.builder.name();
    let order = p.k.unwrap_or(DEFAULT_ORDER);
    let bp_spec = p.breakpoints.unwrap_or(if args.builder == Builder::Algebrable {
        ALGEBRABLE_BREAKPOINTS
    } else {
        DEFAULT_BREAKPOINTS
    });
    let bp = || -> Result<Breakpoints, Failure> { bp_spec.build() };
    let mut guarantee = Guarantee {
        builder: name.to_string(),
        ..Guarantee::default()
    };
    let filler_guarantee = |g: &mut Guarantee, target: Rect| {
        let fg = FillerGuarantee::for_order(target, order);
        g.delta = Some(fg.delta);
        g.target = Some(fg.target);
    };
    let curve: Curve = match args.builder {
        Builder::Constant => Curve::constant(require(p.value, "value", name)?),
        Builder::Polygonal => Curve::polygonal(require(p.vertices, "vertices", name)?)?,
        Builder::Hilbert => {
            let target = p.rect.unwrap_or(Rect::UNIT);
            filler_guarantee(&mut guarantee, target);
            hilbert(order, target)?
        }
        Builder::Filler => {
            let target = p.rect.unwrap_or(Rect::UNIT);
            let from = p.from.unwrap_or(Point::new(target.x_lo, target.y_lo));
            let to = p.to.unwrap_or(from);
            filler_guarantee(&mut guarantee, target);
            filler_with_endpoints(target, from, to, order)?
        }
        Builder::Semigroup => {
            guarantee.breakpoints = Some(bp_spec);
            semigroup_generator(require(p.n, "n", name)?, &bp()?, order)?
        }
        Builder::SemigroupProduct => {
            guarantee.breakpoints = Some(bp_spec);
            filler_guarantee(&mut guarantee, Rect::UNIT);
            semigroup_product(&require(p.word, "word", name)?, &bp()?, order)?
        }
        Builder::SpaceableBasis => {
            guarantee.breakpoints = Some(bp_spec);
            spaceable_basis(require(p.n, "n", name)?, &bp()?, order)?
        }
        Builder::Spaceable => {
            guarantee.breakpoints = Some(bp_spec);
            let comb = spaceable_combination(&require(p.coefs, "coefs", name)?, &bp()?, order)?;
            guarantee.target = Some(comb.predicted_image);
            guarantee.delta = Some(comb.predicted_image.max_side() / (1u64 << (order.max(1) - 1)) as f64);
            comb.curve
        }
        Builder::Tsf1 => {
            let truncation = require(p.truncation, "truncation", name)?;
            guarantee.breakpoints = Some(bp_spec);
            guarantee.truncation = Some(truncation);
            tsf1_generator(require(p.n, "n", name)?, truncation, &bp()?, order)?
        }
        Builder::Algebrable => {
            let truncation = require(p.truncation, "truncation", name)?;
            let n = require(p.n, "n", name)?;
            let family = p.family.unwrap_or(n);
            guarantee.breakpoints = Some(bp_spec);
            guarantee.truncation = Some(truncation);
            algebrable_generator(n, family, truncation, &bp()?, order)?
        }
        Builder::Cumulative => {
            guarantee.breakpoints = Some(bp_spec);
            cumulative_generator(require(p.n, "n", name)?, &bp()?, order)?
        }
        Builder::Equicontinuity => {
            let target = p.rect.unwrap_or(Rect::UNIT);
            let w = nonequicontinuity_witness(require(p.delta, "delta", name)?, target, order)?;
            guarantee.target = Some(target);
            w.curve
        }
    };
    Ok(CurveDocument::new(&curve, Some(guarantee)))
}

impl Builder {
    pub fn name(self) -> &'static str {
        match self {
            Builder::Constant => "constant",
            Builder::Polygonal => "polygonal",
            Builder::Hilbert => "hilbert",
            Builder::Filler => "filler",
            Builder::Semigroup => "semigroup",
            Builder::SemigroupProduct => "semigroup-product",
            Builder::SpaceableBasis => "spaceable-basis",
            Builder::Spaceable => "spaceable",
            Builder::Tsf1 => "tsf1",
            Builder::Algebrable => "algebrable",
            Builder::Cumulative => "cumulative",
            Builder::Equicontinuity => "equicontinuity",
        }
    }
}
