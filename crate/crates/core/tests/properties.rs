mod common;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{eval, interval_contains, random_box, random_cubic, random_expr, rat};
use ivroot::contract::{contract, normalize_sign};
use ivroot::float::{next_down, next_up};
use ivroot::solver::{solve, SolverConfig};
use ivroot::{parse, Interval, Sign};

fn finite() -> impl Strategy<Value = f64> {
    any::<f64>().prop_filter("finite", |t| t.is_finite())
}

fn small() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e3..1e3f64,
        -1.0..1.0f64,
        Just(0.0),
        Just(-0.0),
        -1e-300..1e-300f64
    ]
}

fn interval_with_point() -> impl Strategy<Value = (Interval, f64)> {
    (small(), small(), 0.0..=1.0f64).prop_map(|(a, b, s)| {
        let x = Interval::new(a.min(b), a.max(b));
        let t = (x.lo() + s * (x.hi() - x.lo())).clamp(x.lo(), x.hi());
        (x, t)
    })
}

proptest! {
    #[test]
    fn neighbours_round_trip(t in finite()) {
        prop_assert_eq!(next_up(next_down(t)), if t == 0.0 { 0.0 } else { t });
        prop_assert_eq!(next_down(next_up(t)), if t == 0.0 { 0.0 } else { t });
        prop_assert!(next_up(t) > t);
        prop_assert!(next_down(t) < t);
    }

    #[test]
    fn arithmetic_encloses_exact_results((a, s) in interval_with_point(), (b, u) in interval_with_point()) {
        let (rs, ru) = (rat(s), rat(u));
        prop_assert!(interval_contains(a + b, &(&rs + &ru)));
        prop_assert!(interval_contains(a - b, &(&rs - &ru)));
        prop_assert!(interval_contains(a * b, &(&rs * &ru)));
        if !ru.is_zero() {
            prop_assert!(interval_contains(a / b, &(&rs / &ru)));
        }
        prop_assert!(interval_contains(a.sqr(), &(&rs * &rs)));
    }

    #[test]
    fn normalize_makes_the_value_negative(a in 1e-300..1e300f64, b in 1e-300..1e300f64, neg in any::<bool>()) {
        let w = Interval::new(a.min(b), a.max(b));
        let w = if neg { -w } else { w };
        let (flipped, v) = normalize_sign(w);
        prop_assert!(v.hi() < 0.0);
        prop_assert_eq!(flipped, w.lo() > 0.0);
        prop_assert_eq!(v, if flipped { -w } else { w });
    }

    #[test]
    fn extensions_contain_exact_values(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let src = random_expr(&mut rng, 4);
        let f = parse(&src).unwrap();
        for _ in 0..8 {
            let (x, t) = random_box(&mut rng, 4.0);
            let Some(exact) = eval(&src, &rat(t)) else { continue };
            prop_assert!(interval_contains(f.eval_interval(x), &exact), "{} on {}", src, x);
            prop_assert!(interval_contains(f.eval_point(t), &exact), "{} at {}", src, t);
            let c = x.midpoint().unwrap();
            let Some(at_c) = eval(&src, &rat(c)) else { continue };
            let sp = f.eval_slope(c, x);
            prop_assert!(interval_contains(sp.value_at_center, &at_c));
            prop_assert!(interval_contains(f.centered_form(c, x), &exact), "{} on {}", src, x);
            if t != c {
                let slope = (&exact - &at_c) / (rat(t) - rat(c));
                prop_assert!(interval_contains(sp.slope, &slope), "{} about {} on {}", src, c, x);
            }
        }
    }

    #[test]
    fn contraction_keeps_every_root(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (src, roots) = random_cubic(&mut rng);
        let f = parse(&src).unwrap();
        let (x, t) = random_box(&mut rng, 12.0);
        let w = f.eval_point(t);
        prop_assume!(!w.contains_zero());
        let out = contract(x, t, w, f.eval_slope(t, x).slope);
        for r in roots.iter().filter(|r| interval_contains(x, r)) {
            prop_assert!(out.parts.iter().any(|p| interval_contains(p.x, r)), "{} lost {} from {}", src, r, x);
        }
    }

    #[test]
    fn solver_covers_cubic_roots(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (src, roots) = random_cubic(&mut rng);
        let f = parse(&src).unwrap();
        let x = Interval::new(-45.0, 45.0);
        let sol = solve(&f, x, &SolverConfig::new(1e-8, 1e-10)).unwrap();
        for r in &roots {
            prop_assert!(sol.roots.iter().any(|c| interval_contains(c.interval, r)), "{} lost {}", src, r);
        }
        for pair in sol.roots.windows(2) {
            prop_assert!(pair[0].interval.hi() <= pair[1].interval.lo());
        }
        for c in sol.roots.iter().filter(|c| c.is_certified()) {
            let sign = |t: f64| -> Sign {
                let v: BigRational = eval(&src, &rat(t)).unwrap();
                if v > BigRational::zero() { Sign::Pos } else if v < BigRational::zero() { Sign::Neg } else { Sign::Zero }
            };
            prop_assert_eq!(sign(c.interval.lo()), c.lo_sign);
            prop_assert_eq!(sign(c.interval.hi()), c.hi_sign);
        }
    }
}
