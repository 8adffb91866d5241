use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sfcurve::constructions::{
    semigroup_generator, semigroup_product, spaceable_basis, spaceable_combination,
    tsf1_generator, Breakpoints,
};
use sfcurve::curve::{sup_norm, uniform_distance, Orientation};
use sfcurve::generators::{filler_with_endpoints, hilbert, polygonal_approximation};
use sfcurve::polynomial::Term;
use sfcurve::sampling::SamplePlan;
use sfcurve::spec::CurveSpec;
use sfcurve::verification::{
    certify_delta_dense, certify_delta_dense_with, classify, content_bounds, nikolskii_ratio,
    rasterize, ClassifyConfig, Verdict,
};
use sfcurve::{Curve, Point, Polynomial, Rect};

fn point_in(rng: &mut StdRng, r: Rect) -> Point {
    r.from_unit(rng.gen(), rng.gen())
}

fn random_rect(rng: &mut StdRng) -> Rect {
    let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let (w, h) = (rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0));
    Rect::new(x, x + w, y, y + h).unwrap()
}

fn random_polygonal(rng: &mut StdRng, vertices: usize) -> Curve {
    let mut ts: Vec<f64> = (0..vertices.saturating_sub(2)).map(|_| rng.gen_range(0.01..0.99)).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let mut params = vec![0.0];
    params.extend(ts);
    params.push(1.0);
    let pts = params
        .into_iter()
        .map(|t| (t, Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    Curve::polygonal(pts).unwrap()
}

fn random_polynomial(rng: &mut StdRng, arity: usize, max_degree: u32) -> Polynomial {
    let terms = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut exps = vec![0u32; arity];
            for _ in 0..rng.gen_range(0..=max_degree) {
                exps[rng.gen_range(0..arity)] += 1;
            }
            Term { coef: rng.gen_range(-2.0..2.0), exps }
        })
        .collect();
    Polynomial::new(arity, terms, true).unwrap()
}

/// A random combinator tree exercising every node kind.
fn random_curve(rng: &mut StdRng, depth: u32) -> Curve {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..3) {
            0 => Curve::constant(Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
            1 => {
                let vertices = rng.gen_range(2..8);
                random_polygonal(rng, vertices)
            }
            _ => {
                let orientation = if rng.gen() { Orientation::Standard } else { Orientation::Transposed };
                Curve::hilbert_approx(rng.gen_range(1..6), random_rect(rng), orientation).unwrap()
            }
        };
    }
    let child = |rng: &mut StdRng| random_curve(rng, depth - 1);
    match rng.gen_range(0..7) {
        0 => {
            let a = child(rng);
            let b = child(rng);
            let cut: f64 = rng.gen_range(0.1..0.9);
            let bridge = Curve::segment(a.eval(1.0).unwrap(), b.eval(0.0).unwrap());
            let mid = cut + 0.05;
            Curve::concat(vec![(0.0, cut, a), (cut, mid, bridge), (mid, 1.0, b)]).unwrap()
        }
        1 => child(rng)
            .affine([rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)], [rng.gen_range(-1.0..1.0), 0.5])
            .unwrap(),
        2 => {
            let a: f64 = rng.gen_range(0.0..0.9);
            let b = rng.gen_range(a + 0.01..=1.0);
            child(rng).restrict(a, b).unwrap()
        }
        3 => child(rng).sum(&child(rng)),
        4 => child(rng).product(&child(rng)),
        5 => child(rng).scale(rng.gen_range(-3.0..3.0)),
        _ => {
            let arity = rng.gen_range(1..=3);
            let p = random_polynomial(rng, arity, 3);
            let curves = (0..arity).map(|_| child(rng)).collect();
            Curve::poly_apply(p, curves).unwrap()
        }
    }
}

/// `d_∞` of two bit patterns compared up to a relative rounding allowance.
fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + 1e-9) + 1e-12
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn metric_axioms(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_curve(&mut rng, 2);
        let g = random_curve(&mut rng, 2);
        let h = random_curve(&mut rng, 2);
        let n = 513;
        let d = |a: &Curve, b: &Curve| uniform_distance(a, b, n).unwrap().estimate;
        prop_assert_eq!(d(&f, &f), 0.0);
        prop_assert_eq!(d(&f, &g), d(&g, &f));
        prop_assert!(within(d(&f, &h), d(&f, &g) + d(&g, &h)));
        let e = uniform_distance(&f, &g, n).unwrap();
        prop_assert!(e.estimate <= e.certified_upper);
    }

    #[test]
    fn lipschitz_bounds_are_sound(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_curve(&mut rng, 3);
        let l = f.lipschitz();
        let bbox = f.bbox();
        for _ in 0..1000 {
            let (t, u): (f64, f64) = (rng.gen(), rng.gen());
            let (p, q) = (f.eval(t).unwrap(), f.eval(u).unwrap());
            prop_assert!(within(p.dist_inf(q), l * (t - u).abs()), "t {} u {}", t, u);
            prop_assert!(loose_contains(&bbox, p));
        }
        let (a, b) = {
            let a: f64 = rng.gen_range(0.0..0.99);
            (a, rng.gen_range(a..=1.0))
        };
        let local = f.bounds_on(a, b).unwrap();
        prop_assert!(local.lipschitz <= l * (1.0 + 1e-12));
        for i in 0..=200 {
            let t = a + (b - a) * i as f64 / 200.0;
            prop_assert!(loose_contains(&local.bbox, f.eval(t).unwrap()), "t {} outside local box", t);
        }
    }

    #[test]
    fn polynomial_law_on_constants(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let arity = rng.gen_range(1..=3);
        let p = random_polynomial(&mut rng, arity, 3);
        let points: Vec<Point> = (0..arity)
            .map(|_| Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let f = Curve::poly_apply(p.clone(), points.iter().map(|&q| Curve::constant(q)).collect()).unwrap();
        let xs: Vec<f64> = points.iter().map(|q| q.x).collect();
        let ys: Vec<f64> = points.iter().map(|q| q.y).collect();
        let expect = Point::new(p.eval(&xs), p.eval(&ys));
        let t: f64 = rng.gen();
        prop_assert_eq!(f.eval(t).unwrap(), expect);
    }

    #[test]
    fn curve_spec_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_curve(&mut rng, 3);
        let spec = f.to_spec();
        let back = CurveSpec::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(&back, &spec);
        let rebuilt = back.build().unwrap();
        prop_assert_eq!(rebuilt.to_spec(), spec);
        for i in 0..=50 {
            let t = i as f64 / 50.0;
            prop_assert_eq!(rebuilt.eval(t).unwrap(), f.eval(t).unwrap());
        }
    }
}

/// Containment allowing for rounding in the affine and polynomial nodes.
fn loose_contains(r: &Rect, p: Point) -> bool {
    let slack = 1e-9 * (1.0 + r.max_abs());
    p.x >= r.x_lo - slack && p.x <= r.x_hi + slack && p.y >= r.y_lo - slack && p.y <= r.y_hi + slack
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn filler_endpoints_are_exact(seed in any::<u64>(), order in 1u32..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let target = random_rect(&mut rng);
        let (u, v) = (point_in(&mut rng, target), point_in(&mut rng, target));
        let f = filler_with_endpoints(target, u, v, order).unwrap();
        prop_assert_eq!(f.eval(0.0).unwrap().x.to_bits(), u.x.to_bits());
        prop_assert_eq!(f.eval(0.0).unwrap().y.to_bits(), u.y.to_bits());
        prop_assert_eq!(f.eval(1.0).unwrap().x.to_bits(), v.x.to_bits());
        prop_assert_eq!(f.eval(1.0).unwrap().y.to_bits(), v.y.to_bits());
    }

    #[test]
    fn generators_are_dense_and_contained(seed in any::<u64>(), order in 1u32..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let target = random_rect(&mut rng);
        let delta = target.max_side() / (1u64 << order) as f64;
        let h = hilbert(order, target).unwrap();
        let (u, v) = (point_in(&mut rng, target), point_in(&mut rng, target));
        let f = filler_with_endpoints(target, u, v, order).unwrap();
        for c in [&h, &f] {
            prop_assert!(certify_delta_dense(c, target, delta).unwrap());
            for i in 0..=100_000u32 {
                let p = c.eval(i as f64 / 100_000.0).unwrap();
                prop_assert!(target.contains(p), "{:?} escapes {:?}", p, target);
            }
        }
    }

    #[test]
    fn refinement_is_monotone(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        // Inner content is only claimed for traces resolved at the finest grid:
        // a filler of order >= 7 has more lattice columns than 64.
        let resolved = rng.gen_bool(0.5);
        let f = if resolved {
            let target = random_rect(&mut rng);
            let (u, v) = (point_in(&mut rng, target), point_in(&mut rng, target));
            let g = filler_with_endpoints(target, u, v, rng.gen_range(7..9)).unwrap();
            if rng.gen() {
                g.sum(&Curve::constant(Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            } else {
                g
            }
        } else {
            random_curve(&mut rng, 2)
        };
        let frame = sfcurve::verification::non_degenerate_frame(f.bbox());
        let side = frame.max_side();
        let mut prev: Option<(usize, f64, f64)> = None;
        for n in [8usize, 16, 32, 64] {
            let r = content_bounds(&rasterize(&f, frame, n, 256).unwrap());
            if let Some((m, inner, outer)) = prev {
                let layer = 8.0 * side / m as f64 * side;
                if resolved {
                    prop_assert!(r.inner >= inner - layer, "inner {} -> {}", inner, r.inner);
                }
                prop_assert!(r.outer <= outer + layer, "outer {} -> {}", outer, r.outer);
            }
            prev = Some((n, r.inner, r.outer));
        }
    }

    #[test]
    fn density_verdict_is_stable_under_resampling(seed in any::<u64>(), order in 2u32..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let target = random_rect(&mut rng);
        let f = if rng.gen() {
            hilbert(order, target).unwrap()
        } else {
            random_curve(&mut rng, 2)
        };
        let delta = target.max_side() / rng.gen_range(2..40) as f64;
        let coarse = certify_delta_dense_with(&f, target, delta, 64).unwrap();
        let fine = certify_delta_dense_with(&f, target, delta, 50_000).unwrap();
        prop_assert_eq!(coarse, fine);
    }

    #[test]
    fn spaceable_image_law(coefs in prop::collection::vec(-1.0f64..=1.0, 1..6)) {
        prop_assume!(coefs.iter().any(|&c| c != 0.0));
        let bp = Breakpoints::default();
        let order = 4;
        let comb = spaceable_combination(&coefs, &bp, order).unwrap();
        let square = comb.predicted_image;
        let plan = SamplePlan::new(&comb.curve, (0.0, 1.0), 1e-3, 10_000).unwrap();
        let mut escaped = false;
        plan.for_each(&comb.curve, |_, p| escaped |= !square.contains(p)).unwrap();
        prop_assert!(!escaped);
        let delta = square.max_side() / (1u64 << (order - 1)) as f64;
        prop_assert!(certify_delta_dense(&comb.curve, square, delta).unwrap());
    }

    #[test]
    fn semigroup_closure(word in prop::collection::btree_map(1usize..=8, 1u32..=3, 1..4)) {
        let bp = Breakpoints::dyadic(8).unwrap();
        let word: Vec<(usize, u32)> = word.into_iter().collect();
        let f = semigroup_product(&word, &bp, 6).unwrap();
        prop_assert!(certify_delta_dense(&f, Rect::UNIT, 1.0 / 16.0).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn nikolskii_ratio_is_one_on_disjoint_supports(seed in any::<u64>()) {
        let bp = Breakpoints::default();
        let basis: Vec<Curve> = (1..=6).map(|n| spaceable_basis(n, &bp, 4).unwrap()).collect();
        let ratio = nikolskii_ratio(&basis, 1000, 6, seed).unwrap();
        prop_assert!(ratio <= 1.0 + 1e-9, "ratio {}", ratio);
    }

    #[test]
    fn prefix_norms_are_monotone(coefs in prop::collection::vec(-1.0f64..=1.0, 2..7)) {
        let bp = Breakpoints::default();
        let basis: Vec<Curve> = (1..=coefs.len()).map(|n| spaceable_basis(n, &bp, 4).unwrap()).collect();
        let n = 20_001;
        let mut partial = Curve::constant(Point::ORIGIN);
        let mut last = 0.0;
        for (c, f) in coefs.iter().zip(&basis) {
            partial = partial.sum(&f.scale(*c));
            let norm = sup_norm(&partial, n).unwrap().estimate;
            prop_assert!(norm >= last, "prefix norm fell from {} to {}", last, norm);
            last = norm;
        }
    }
}

#[test]
fn basis_families_have_disjoint_supports() {
    let bp = Breakpoints::default();
    let families: Vec<Vec<Curve>> = vec![
        (1..=6).map(|n| spaceable_basis(n, &bp, 4).unwrap()).collect(),
        (1..=3).map(|n| tsf1_generator(n, 4, &bp, 4).unwrap()).collect(),
    ];
    let samples = 100_000;
    for family in &families {
        let supports: Vec<Vec<bool>> = family
            .iter()
            .map(|f| {
                (0..=samples)
                    .map(|i| f.eval(i as f64 / samples as f64).unwrap() != Point::ORIGIN)
                    .collect()
            })
            .collect();
        for a in 0..supports.len() {
            for b in a + 1..supports.len() {
                let shared = (0..=samples).filter(|&i| supports[a][i] && supports[b][i]).count();
                assert_eq!(shared, 0, "members {} and {} overlap", a + 1, b + 1);
            }
        }
    }
}

#[test]
fn partial_sums_of_semigroup_generators_never_settle() {
    let bp = Breakpoints::dyadic(12).unwrap();
    let generators: Vec<Curve> = (1..=12).map(|n| semigroup_generator(n, &bp, 5).unwrap()).collect();
    let mut partial = Curve::constant(Point::ORIGIN);
    for f in &generators {
        assert!(sup_norm(f, 4097).unwrap().estimate >= 1.0);
        let next = partial.sum(f);
        let step = uniform_distance(&next, &partial, 4097).unwrap().estimate;
        assert!(step >= 1.0, "partial sums moved only {step}");
        partial = next;
    }
}

#[test]
fn exemplars_classify_as_expected() {
    let cfg = ClassifyConfig::default();
    let bp = Breakpoints::dyadic(8).unwrap();
    let comb = spaceable_combination(&[0.7, -0.4, 0.2], &bp, 10).unwrap();
    assert_eq!(classify(&comb.curve, &cfg).unwrap().verdict, Verdict::SfCertifiedAtResolution);

    let mut rng = StdRng::seed_from_u64(11);
    let poly = polygonal_approximation(&hilbert(3, Rect::UNIT).unwrap(), 1024).unwrap();
    assert_eq!(classify(&poly.curve, &cfg).unwrap().verdict, Verdict::Thin);

    let square = hilbert(10, Rect::new(0.0, 0.3, 0.0, 0.3).unwrap()).unwrap();
    let start = square.eval(1.0).unwrap();
    let mut tail = vec![(0.0, start)];
    for i in 1..=200 {
        tail.push((i as f64 / 200.0, Point::new(rng.gen_range(0.3..1.0), rng.gen())));
    }
    let tail = Curve::polygonal(tail).unwrap();
    let composite = Curve::concat(vec![(0.0, 1.0 / 3.0, square), (1.0 / 3.0, 1.0, tail)]).unwrap();
    let c = classify(&composite, &cfg).unwrap();
    assert_eq!(c.verdict, Verdict::TsfEvidence, "{:?}", c.reports);
}

#[test]
fn coarse_lattice_loses_inner_content_under_refinement() {
    // An order-5 Hilbert polygon has 32 lattice columns; at grid 32 the 3x3 rule
    // sees a solid block, at grid 64 the gaps between lattice lines open up.
    let f = hilbert(5, Rect::UNIT).unwrap();
    let frame = Rect::UNIT;
    let coarse = content_bounds(&rasterize(&f, frame, 32, 256).unwrap());
    let fine = content_bounds(&rasterize(&f, frame, 64, 256).unwrap());
    let layer = 8.0 / 32.0;
    assert!(coarse.inner > 0.5, "{coarse:?}");
    assert!(fine.inner < coarse.inner - layer, "{fine:?}");
}
