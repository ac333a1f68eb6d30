use horocurve::legendre::builtin;
use horocurve::offsets::{
    evolute, evolute_involute_scale, evolute_ratio, involute, involute_integrate, known, ode_residual, parallel,
    ParallelFamily, SolveOptions,
};
use horocurve::{Interval, Sign};
use proptest::prelude::*;

#[test]
fn matched_parallels_pass_through_the_evolute() {
    let opts = SolveOptions::default();
    for base in [builtin::example1(), builtin::example2()] {
        let mn = base.curvature();
        let f = evolute_ratio(&mn, base.domain(), &opts).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let ev = evolute(&base, &f, sign).unwrap();
            let fam = ParallelFamily::build(&mn, sign, base.domain(), opts.step).unwrap();
            for t0 in [-0.6, -0.2, 0.3, 0.55] {
                let c = fam.constant_for(t0, f.value(t0).unwrap()).unwrap();
                let lam = fam.solution(c, &opts.anchored(t0)).unwrap();
                let p = parallel(&base, &lam, sign).unwrap();
                let (m_p, _) = p.closed_form_curvature().values(t0).unwrap();
                assert!(m_p.abs() < 1e-8, "{} {sign} m_P({t0}) = {m_p}", base.name());
                assert!((p.point(t0).unwrap() - ev.point(t0).unwrap()).max_abs() < 1e-8, "{} {sign} at {t0}", base.name());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn involutes_are_parallels_of_each_other(a in -0.6..0.6f64, b in -0.6..0.6f64, minus in any::<bool>()) {
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let base = builtin::example1();
        let mn = base.curvature();
        let opts = SolveOptions::default().anchored(0.0);
        let s = involute_integrate(&mn, sign, a, 0.0, base.domain(), &opts).unwrap();
        let s_hat = involute_integrate(&mn, sign, b, 0.0, base.domain(), &opts).unwrap();
        let inv = involute(&base, &s, sign).unwrap();
        let mn_i = inv.closed_form_curvature();
        let iv = Interval::closed(-1.0, 1.0).intersect(&s.validity()).unwrap().intersect(&s_hat.validity()).unwrap();
        let e = sign.f();
        for t in iv.grid(41) {
            let d = s.values(t).unwrap() - s_hat.values(t).unwrap();
            let (m, n) = mn_i.values(t).unwrap();
            let dv = d.value();
            let r = d.d(1) + e * (0.5 * n * dv * dv + m * dv);
            prop_assert!(r.abs() < 1e-6, "{sign} at {t}: {r}");
        }
    }
}

#[test]
fn touching_the_base_means_m_vanishes() {
    let opts = SolveOptions::default().anchored(0.0);
    let base = builtin::example1();
    let mn = base.curvature();
    let sols = [
        (Sign::Plus, involute_integrate(&mn, Sign::Plus, 0.0, 0.0, base.domain(), &opts).unwrap()),
        (Sign::Minus, known::example1_s_minus(0.3, &opts).unwrap()),
        (Sign::Plus, known::example2_s_plus(&opts).unwrap()),
    ];
    for (i, (sign, s)) in sols.iter().enumerate() {
        let b = if i == 2 { builtin::example2() } else { base.clone() };
        let inv = involute(&b, s, *sign).unwrap();
        let mn_i = inv.closed_form_curvature();
        let mut grid = inv.domain().grid(2001);
        grid.extend([0.0, 0.3f64.asin()]);
        let mut touched = 0;
        for t in grid {
            if (inv.point(t).unwrap() - b.point(t).unwrap()).norm_e() < 1e-9 {
                touched += 1;
                assert!(mn_i.values(t).unwrap().0.abs() < 1e-6, "{sign} at {t}");
            }
        }
        assert!(touched > 0, "case {i} never touches the base");
    }
}

#[test]
fn evolute_scale_solves_the_evolute_riccati_equation() {
    let base = builtin::example1();
    let mn = base.curvature();
    let opts = SolveOptions::default().anchored(0.0);
    let f = evolute_ratio(&mn, base.domain(), &opts).unwrap();
    for sign in [Sign::Plus, Sign::Minus] {
        let ev = evolute(&base, &f, sign).unwrap();
        let fam = ParallelFamily::build(&mn, sign, base.domain(), opts.step).unwrap();
        let c = fam.constant_for(0.0, 0.5).unwrap();
        let se = evolute_involute_scale(&mn, &f, sign, c, base.domain(), &opts).unwrap();
        let lam = fam.solution(c, &opts).unwrap();
        let mn_e = ev.closed_form_curvature();
        for t in Interval::closed(-1.0, 1.0).intersect(&se.validity()).unwrap().grid(101) {
            assert!(ode_residual(&mn_e, &se, t).unwrap() < 1e-6, "{sign} at {t}");
            assert!((f.value(t).unwrap() - se.value(t).unwrap() - lam.value(t).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn paper_constant_matches_the_anchored_family() {
    let base = builtin::example1();
    let opts = SolveOptions::default().anchored(0.0);
    let fam = ParallelFamily::build(&base.curvature(), Sign::Plus, base.domain(), opts.step).unwrap();
    let paper = known::example1_lambda(Sign::Plus, 0.5, &opts).unwrap();
    let ours = fam.solution(fam.constant_for(0.0, 2.0).unwrap(), &opts).unwrap();
    assert!((paper.validity().lo - ours.validity().lo).abs() < 1e-5);
    for t in Interval::closed(-0.7, 3.0).grid(61) {
        let (p, o) = (paper.value(t).unwrap(), ours.value(t).unwrap());
        assert!((p - o).abs() < 1e-9 * p.abs().max(1.0), "{t}: {p} vs {o}");
    }
}
