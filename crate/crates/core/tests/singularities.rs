use horocurve::expr::parse;
use horocurve::legendre::{builtin, synthesize_from_curvature, CurvaturePair, Frame, LegendreCurve};
use horocurve::offsets::{evolute, evolute_ratio, involute, involute_integrate, known, parallel_integrate, SolveOptions};
use horocurve::singularities::{classify_from_curvature, classify_geometric, singular_points, CuspClass};
use horocurve::{Interval, Sign, Tolerances, Vec3L};
use proptest::prelude::*;

fn apex() -> Frame {
    Frame::new(Vec3L::new(1.0, 0.0, 0.0), Vec3L::new(0.0, -1.0, 0.0))
}

fn synth(m: &str, n: &str) -> LegendreCurve {
    let d = Interval::closed(-1.0, 1.0);
    let mn = CurvaturePair::from_exprs(parse(m).unwrap(), parse(n).unwrap(), d);
    synthesize_from_curvature(&mn, &apex(), d, 1e-3).unwrap()
}

fn by_curvature(mn: &CurvaturePair, t: f64) -> CuspClass {
    let tol = Tolerances::default();
    classify_from_curvature(mn, t, tol.zero, tol.nonzero).unwrap()
}

/// A polynomial whose lowest-order term at 0 is t^order, with coefficients bounded away from 0.
fn planted(order: usize, coeffs: &[f64]) -> String {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}*t^{}", c.signum() * (0.3 + c.abs()), order + i))
        .collect::<Vec<_>>()
        .join(" + ")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn geometric_and_curvature_routes_agree(
        km in 0usize..4,
        kn in 0usize..3,
        cm in prop::collection::vec(-1.0..1.0f64, 3),
        cn in prop::collection::vec(-1.0..1.0f64, 3),
    ) {
        let c = synth(&planted(km, &cm), &planted(kn, &cn));
        let tol = Tolerances::default();
        let a = classify_from_curvature(&c.curvature(), 0.0, tol.zero, tol.nonzero);
        let b = classify_geometric(&c.evaluate_frame(0.0).unwrap().gamma, &tol);
        if let (Ok(a), Ok(b)) = (&a, &b) {
            prop_assert_eq!(a, b, "m order {}, n order {}", km, kn);
        }
        if km <= 1 || (km == 2 && kn <= 1) {
            prop_assert!(a.is_ok() && b.is_ok(), "{a:?} {b:?}");
        }
    }
}

#[test]
fn offset_curves_agree_across_routes() {
    let tol = Tolerances::default();
    let opts = SolveOptions::default();
    let g = known::example2_s_plus(&opts).unwrap();
    let inv = involute(&builtin::example2(), &g, Sign::Plus).unwrap();
    let s = known::example1_s_plus(-1.0, &opts).unwrap();
    let inv1 = involute(&builtin::example1(), &s, Sign::Plus).unwrap();
    for (c, t) in [(&inv, -std::f64::consts::FRAC_PI_2), (&inv, 0.0), (&inv, 1.0), (&inv1, 0.0), (&inv1, 2.0)] {
        let a = by_curvature(&c.closed_form_curvature(), t);
        let b = classify_geometric(&c.curve.evaluate_frame(t).unwrap().gamma, &tol).unwrap();
        assert_eq!(a, b, "at {t}");
    }
}

#[test]
fn cusps_of_order_three_four_become_evolute_cusps() {
    let c = synth("t^2", "1");
    assert_eq!(by_curvature(&c.curvature(), 0.0), CuspClass::Cusp34);
    let f = evolute_ratio(&c.curvature(), c.domain(), &SolveOptions::default()).unwrap();
    for sign in [Sign::Plus, Sign::Minus] {
        let ev = evolute(&c, &f, sign).unwrap();
        assert_eq!(by_curvature(&ev.closed_form_curvature(), 0.0), CuspClass::Cusp23, "{sign}");
    }
}

#[test]
fn involute_cusps_sit_over_base_cusps_or_regular_points() {
    let opts = SolveOptions::default().anchored(0.0);
    let c = synth("t", "1");
    assert_eq!(by_curvature(&c.curvature(), 0.0), CuspClass::Cusp23);
    let s = involute_integrate(&c.curvature(), Sign::Plus, 0.0, 0.0, c.domain(), &opts).unwrap();
    let inv = involute(&c, &s, Sign::Plus).unwrap();
    assert_eq!(by_curvature(&inv.closed_form_curvature(), 0.0), CuspClass::Cusp34);

    let c = synth("1", "t");
    assert_eq!(by_curvature(&c.curvature(), 0.0), CuspClass::Regular);
    let s = involute_integrate(&c.curvature(), Sign::Plus, 0.0, 0.0, c.domain(), &opts).unwrap();
    let inv = involute(&c, &s, Sign::Plus).unwrap();
    assert_eq!(by_curvature(&inv.closed_form_curvature(), 0.0), CuspClass::Cusp23);
}

#[test]
fn matched_parallel_cusps_follow_the_evolute() {
    let opts = SolveOptions::default();
    // regular evolute points: the matched parallel has a (2,3)-cusp
    let base = builtin::example2();
    let mn = base.curvature();
    let f = evolute_ratio(&mn, base.domain(), &opts).unwrap();
    for t0 in [-0.5, 0.2, 0.6] {
        let lam = parallel_integrate(&mn, Sign::Plus, f.value(t0).unwrap(), t0, base.domain(), &opts.anchored(t0)).unwrap();
        let p = horocurve::offsets::parallel(&base, &lam, Sign::Plus).unwrap();
        assert_eq!(by_curvature(&p.closed_form_curvature(), t0), CuspClass::Cusp23, "{t0}");
    }
    // n ≡ 1, m = 1 − t/2 puts a (2,3)-cusp on Ev⁺ at 0, and the matched parallel gets a (3,4)-cusp
    let c = synth("1 - t/2", "1");
    let f = evolute_ratio(&c.curvature(), c.domain(), &opts).unwrap();
    let ev = evolute(&c, &f, Sign::Plus).unwrap();
    assert_eq!(by_curvature(&ev.closed_form_curvature(), 0.0), CuspClass::Cusp23);
    let lam = parallel_integrate(&c.curvature(), Sign::Plus, f.value(0.0).unwrap(), 0.0, c.domain(), &opts.anchored(0.0)).unwrap();
    let p = horocurve::offsets::parallel(&c, &lam, Sign::Plus).unwrap();
    assert_eq!(by_curvature(&p.closed_form_curvature(), 0.0), CuspClass::Cusp34);
}

#[test]
fn fronts_without_inflections_give_front_cusps_only() {
    let opts = SolveOptions::default();
    let tol = Tolerances::default();
    let base = builtin::example2();
    let mn = base.curvature();
    let gap = base.domain().grid(4001).into_iter().map(|t| {
        let (m, n) = mn.values(t).unwrap();
        (n + m).abs()
    });
    assert!(gap.fold(f64::INFINITY, f64::min) > tol.nonzero);
    let g = known::example2_s_plus(&opts).unwrap();
    let inv = involute(&base, &g, Sign::Plus).unwrap();
    let mn_i = inv.closed_form_curvature();
    for p in singular_points(&mn_i, inv.domain(), 2001, &tol).unwrap() {
        assert!(matches!(p.class, Ok(CuspClass::Regular | CuspClass::Cusp23 | CuspClass::Cusp34)), "{p:?}");
        assert!(mn_i.values(p.t).unwrap().1.abs() > tol.zero);
    }
}
