//! Randomized laws: every generated input must satisfy the stated
//! identity or bound. Tolerances are normalized by the magnitude of the
//! quantities involved so the laws hold at any sampled scale.

use proptest::prelude::*;

use nward::classify::{classify, difference_profile_to, pair_partners};
use nward::compactness::{
    ball_value, coverage_radius, greedy_alpha_net, AnchorPolicy, Ball, NetStatus,
};
use nward::continuity::{estimate_uniform_modulus, image_sequence, FunctionSpec};
use nward::nnorm::{gram_nnorm_oracle, nnorm, nnorm_p, nnorm_p_reference};
use nward::sequence::{forward_difference, linear_combination, SequenceSpec, telescoping_check};
use nward::space::{Exponent, NVector, SpaceConfig, VectorTuple};
use nward::witness::WitnessSet;

fn space_dims() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=3).prop_flat_map(|n| (n..=4usize).prop_map(move |d| (d, n)))
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        Just(Exponent::Finite(1.0)),
        Just(Exponent::Finite(2.0)),
        Just(Exponent::Finite(3.5)),
        Just(Exponent::Infinity),
    ]
}

fn tuple_entries(scale: f64) -> impl Strategy<Value = (usize, usize, Vec<Vec<f64>>)> {
    space_dims().prop_flat_map(move |(d, n)| {
        prop::collection::vec(prop::collection::vec(-scale..scale, d), n)
            .prop_map(move |vs| (d, n, vs))
    })
}

fn explicit_points(d: usize, len: impl Strategy<Value = usize>) -> impl Strategy<Value = Vec<Vec<f64>>> {
    len.prop_flat_map(move |l| {
        prop::collection::vec(prop::collection::vec(-5.0..5.0f64, d), l)
    })
}

fn build_tuple(vs: &[Vec<f64>]) -> VectorTuple {
    let vectors: Vec<NVector> = vs
        .iter()
        .map(|c| NVector::new(c.clone()).unwrap())
        .collect();
    VectorTuple::new(vectors).unwrap()
}

fn build_seq(pts: &[Vec<f64>]) -> SequenceSpec {
    let vectors: Vec<NVector> = pts
        .iter()
        .map(|c| NVector::new(c.clone()).unwrap())
        .collect();
    SequenceSpec::explicit(vectors).unwrap()
}

fn profile_values(
    seq: &SequenceSpec,
    s: usize,
    witnesses: &WitnessSet,
    cfg: &SpaceConfig,
    horizon: usize,
) -> Vec<f64> {
    difference_profile_to(seq, s, witnesses, cfg, horizon)
        .unwrap()
        .iter()
        .map(|p| p.value)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gram_oracle_agrees((d, n, vs) in tuple_entries(50.0)) {
        let cfg = SpaceConfig::new(d, n, Exponent::Finite(2.0)).unwrap();
        let tuple = build_tuple(&vs);
        let direct = nnorm_p(&tuple, &cfg).unwrap();
        let oracle = gram_nnorm_oracle(&tuple).unwrap();
        let gap = (direct - oracle).abs();
        prop_assert!(gap <= 1e-9 * direct.max(oracle).max(1e-30),
            "direct {direct} vs oracle {oracle}");
    }

    #[test]
    fn increasing_enumeration_matches_full_enumeration(
        (d, n, vs) in tuple_entries(50.0),
        p in prop_oneof![Just(1.0f64), Just(2.0), Just(3.5)],
    ) {
        let cfg = SpaceConfig::new(d, n, Exponent::Finite(p)).unwrap();
        let tuple = build_tuple(&vs);
        let fast = nnorm_p(&tuple, &cfg).unwrap();
        let reference = nnorm_p_reference(&tuple, &cfg).unwrap();
        let gap = (fast - reference).abs();
        prop_assert!(gap <= 1e-12 * (1.0 + fast.max(reference)),
            "fast {fast} vs reference {reference}");
    }

    #[test]
    fn norm_is_permutation_invariant(
        (d, n, vs) in tuple_entries(50.0),
        p in exponent(),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        let cfg = SpaceConfig::new(d, n, p).unwrap();
        let tuple = build_tuple(&vs);
        let base = nnorm(&tuple, &cfg).unwrap();
        let mut swapped = vs.clone();
        swapped.swap(i % n, j % n);
        let permuted = nnorm(&build_tuple(&swapped), &cfg).unwrap();
        prop_assert!((permuted - base).abs() <= 1e-12 * (1.0 + base),
            "base {base} vs permuted {permuted}");
    }

    #[test]
    fn norm_is_homogeneous_in_each_slot(
        (d, n, vs) in tuple_entries(50.0),
        p in exponent(),
        c in -8.0f64..8.0,
        slot in 0usize..3,
    ) {
        let cfg = SpaceConfig::new(d, n, p).unwrap();
        let tuple = build_tuple(&vs);
        let base = nnorm(&tuple, &cfg).unwrap();
        let mut scaled = vs.clone();
        let slot = slot % n;
        for entry in &mut scaled[slot] {
            *entry *= c;
        }
        let value = nnorm(&build_tuple(&scaled), &cfg).unwrap();
        prop_assert!((value - c.abs() * base).abs() <= 1e-12 * (1.0 + c.abs() * base),
            "expected {} got {value}", c.abs() * base);
    }

    #[test]
    fn norm_is_subadditive_in_first_slot(
        (d, n, vs) in tuple_entries(50.0),
        extra in prop::collection::vec(-50.0f64..50.0, 4),
    ) {
        let cfg = SpaceConfig::new(d, n, Exponent::Finite(2.0)).unwrap();
        let a: Vec<f64> = extra[..d].to_vec();
        let b: Vec<f64> = vs[0].iter().zip(&a).map(|(t, x)| t - x).collect();
        let joint = nnorm(&build_tuple(&vs), &cfg).unwrap();
        let mut va = vs.clone();
        va[0] = a;
        let mut vb = vs.clone();
        vb[0] = b;
        let na = nnorm(&build_tuple(&va), &cfg).unwrap();
        let nb = nnorm(&build_tuple(&vb), &cfg).unwrap();
        prop_assert!(joint <= na + nb + 1e-12 * (1.0 + na + nb),
            "joint {joint} exceeds {na} + {nb}");
    }

    #[test]
    fn dependent_tuples_have_vanishing_norm(
        (d, n, vs) in tuple_entries(50.0),
        p in exponent(),
        c in prop_oneof![Just(-4.0f64), Just(-2.0), Just(-1.0), Just(0.5), Just(2.0)],
    ) {
        let cfg = SpaceConfig::new(d, n, p).unwrap();
        let mut dep = vs.clone();
        dep[n - 1] = vs[0].iter().map(|x| c * x).collect();
        let value = nnorm(&build_tuple(&dep), &cfg).unwrap();
        let base = nnorm(&build_tuple(&vs), &cfg).unwrap();
        prop_assert!(value <= 1e-12 * (1.0 + c.abs() * base),
            "dependent tuple norm {value}");
    }

    #[test]
    fn pair_partners_stay_in_range(k in 1usize..5000, span in 1usize..5000) {
        let horizon = k + span;
        let partners = pair_partners(k, horizon);
        prop_assert!(!partners.is_empty());
        for m in partners {
            prop_assert!(m > k && m <= horizon, "partner {m} outside ({k}, {horizon}]");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn telescoping_residual_is_rounding_level(
        (d, pts) in (2usize..=3).prop_flat_map(|d| {
            explicit_points(d, 20usize..40).prop_map(move |p| (d, p))
        }),
        s in 1usize..=5,
        pick in 0usize..1000,
    ) {
        let seq = build_seq(&pts);
        prop_assume!(pts.len() > s + 1);
        let k = 1 + pick % (pts.len() - s - 1);
        let residual = telescoping_check(&seq, s, k).unwrap();
        let scale = seq.eval(k + s).unwrap().max_abs().max(1.0);
        prop_assert!(residual <= 1e-12 * scale, "residual {residual} at k {k}, s {s}, d {d}");
    }

    #[test]
    fn repeat_interleave_realizes_unit_differences(
        pts in explicit_points(2, 10usize..25),
        s in 1usize..=4,
    ) {
        let base = build_seq(&pts);
        // t_m = x_ceil(m/s): each base step stretches into s flat copies.
        let stretched: Vec<Vec<f64>> = (1..=s * pts.len())
            .map(|m| pts[(m - 1) / s].clone())
            .collect();
        let t = build_seq(&stretched);
        for m in 1..=(s * pts.len() - s) {
            let dt = forward_difference(&t, s, m).unwrap();
            let q = (m - 1) / s + 1;
            let dx = forward_difference(&base, 1, q).unwrap();
            prop_assert_eq!(dt.coords(), dx.coords(), "m {}, q {}", m, q);
        }
    }

    #[test]
    fn shift_profile_is_dominated_by_unit_profiles(
        pts in explicit_points(2, 20usize..40),
        s in 2usize..=4,
    ) {
        let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0)).unwrap();
        let witnesses = WitnessSet::standard_basis(&cfg).unwrap();
        let seq = build_seq(&pts);
        let horizon = pts.len();
        let shifted = profile_values(&seq, s, &witnesses, &cfg, horizon);
        let unit = profile_values(&seq, 1, &witnesses, &cfg, horizon);
        for (idx, value) in shifted.iter().enumerate() {
            let k = idx + 1;
            let bound: f64 = unit[idx..idx + s].iter().sum();
            prop_assert!(*value <= bound + 1e-9 * (1.0 + bound),
                "profile at k {k} is {value}, unit sum {bound}");
        }
    }

    #[test]
    fn verdict_chain_is_monotone_on_random_sequences(
        pts in explicit_points(2, 40usize..80),
        tau in 0.05f64..1.0,
    ) {
        let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0)).unwrap();
        let witnesses = WitnessSet::standard_basis(&cfg).unwrap();
        let seq = build_seq(&pts);
        let horizon = pts.len();
        let report = classify(&seq, &cfg, &witnesses, &[2, 3], horizon, tau, None).unwrap();
        let cauchy = report.property("cauchy", None).unwrap();
        let quasi = report.property("quasi-cauchy", None).unwrap();
        if cauchy.verdict.is_satisfied() {
            prop_assert!(quasi.verdict.is_satisfied(), "pair spread small but unit shift not");
        }
        if quasi.verdict.is_satisfied() {
            for s in [2usize, 3] {
                let v = report.property("s-quasi-cauchy", Some(s)).unwrap();
                prop_assert!(v.verdict.is_satisfied(), "unit shift small but shift {s} not");
            }
        }
    }

    #[test]
    fn scaling_a_sequence_scales_its_profile(
        pts in explicit_points(2, 15usize..30),
        c in -4.0f64..4.0,
        s in 1usize..=3,
    ) {
        let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0)).unwrap();
        let witnesses = WitnessSet::standard_basis(&cfg).unwrap();
        let seq = build_seq(&pts);
        let image = image_sequence(&FunctionSpec::Scale { factor: c }, &seq).unwrap();
        let horizon = pts.len();
        let source = profile_values(&seq, s, &witnesses, &cfg, horizon);
        let scaled = profile_values(&image, s, &witnesses, &cfg, horizon);
        for (a, b) in source.iter().zip(&scaled) {
            let expected = c.abs() * a;
            prop_assert!((b - expected).abs() <= 1e-9 * (1.0 + expected),
                "expected {expected} got {b}");
        }
    }

    #[test]
    fn combinations_have_subadditive_profiles(
        lhs in explicit_points(2, 15usize..30),
        rhs in explicit_points(2, 15usize..30),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        s in 1usize..=3,
    ) {
        let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0)).unwrap();
        let witnesses = WitnessSet::standard_basis(&cfg).unwrap();
        let x = build_seq(&lhs);
        let y = build_seq(&rhs);
        let combo = linear_combination(&x, &y, a, b).unwrap();
        let horizon = lhs.len().min(rhs.len());
        let px = profile_values(&x, s, &witnesses, &cfg, horizon);
        let py = profile_values(&y, s, &witnesses, &cfg, horizon);
        let pc = profile_values(&combo, s, &witnesses, &cfg, horizon);
        for ((vx, vy), vc) in px.iter().zip(&py).zip(&pc) {
            let bound = a.abs() * vx + b.abs() * vy;
            prop_assert!(*vc <= bound + 1e-9 * (1.0 + bound),
                "combination profile {vc} above {bound}");
        }
    }

    #[test]
    fn displaced_anchor_ball_reduces_to_basis_tuple(
        (d, n) in space_dims(),
        coords in prop::collection::vec(-8.0f64..8.0, 8),
        radius in 0.1f64..2.0,
    ) {
        let cfg = SpaceConfig::new(d, n, Exponent::Finite(2.0)).unwrap();
        let center = NVector::new(coords[..d].to_vec()).unwrap();
        let x = NVector::new(coords[4..4 + d].to_vec()).unwrap();
        let ball = Ball::with_policy(center.clone(), radius, AnchorPolicy::CenterPlusBasis, &cfg)
            .unwrap();
        let value = ball_value(&ball, &x, &cfg).unwrap();
        let mut rows = vec![&center - &x];
        for axis in 0..n - 1 {
            rows.push(NVector::basis(d, axis).unwrap());
        }
        let reduced = nnorm(&VectorTuple::new(rows).unwrap(), &cfg).unwrap();
        prop_assert!((value - reduced).abs() <= 1e-11 * (1.0 + reduced),
            "ball value {value} vs reduced {reduced}");
    }

    #[test]
    fn modulus_tables_are_monotone(
        f in prop_oneof![
            Just(FunctionSpec::identity()),
            (-4.0f64..4.0).prop_map(|factor| FunctionSpec::Scale { factor }),
            (0.5f64..3.0).prop_map(|bound| FunctionSpec::LipschitzClip { bound }),
            Just(FunctionSpec::CoordinateSquare),
        ],
        halfwidth in 0.5f64..3.0,
    ) {
        let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0)).unwrap();
        let witnesses = WitnessSet::standard_basis(&cfg).unwrap();
        let lo = NVector::new(vec![-halfwidth; 2]).unwrap();
        let hi = NVector::new(vec![halfwidth; 2]).unwrap();
        let table = estimate_uniform_modulus(&f, &lo, &hi, 5, &cfg, &witnesses).unwrap();
        prop_assert!(!table.rows.is_empty());
        prop_assert!(table.is_monotone(1e-12), "table rows out of order for {}", f.name());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn greedy_nets_cover_or_give_packing_witnesses(
        pts in explicit_points(2, 5usize..60),
        alpha in 0.2f64..1.5,
        cap in 2usize..32,
    ) {
        let cfg = SpaceConfig::new(2, 2, Exponent::Finite(2.0)).unwrap();
        let points: Vec<NVector> = pts
            .iter()
            .map(|c| NVector::new(c.iter().map(|x| x * 0.6).collect()).unwrap())
            .collect();
        let net = greedy_alpha_net(&points, alpha, cap, AnchorPolicy::CenterPlusBasis, &cfg)
            .unwrap();
        match net.status {
            NetStatus::NetFound => {
                prop_assert!(net.balls.len() <= cap);
                prop_assert_eq!(net.covered, points.len());
                let covered_sum: usize = net.balls.iter().map(|b| b.covered).sum();
                prop_assert_eq!(covered_sum, points.len());
                let radius = coverage_radius(&points, &net, &cfg).unwrap();
                prop_assert!(radius < alpha, "coverage radius {radius} at alpha {alpha}");
            }
            NetStatus::PackingExceeded => {
                prop_assert_eq!(net.packing_witness.len(), cap + 1);
                for (i, &a) in net.packing_witness.iter().enumerate() {
                    let ball = Ball::with_policy(
                        points[a].clone(),
                        alpha,
                        AnchorPolicy::CenterPlusBasis,
                        &cfg,
                    )
                    .unwrap();
                    for &b in net.packing_witness.iter().skip(i + 1) {
                        let v = ball_value(&ball, &points[b], &cfg).unwrap();
                        prop_assert!(v >= alpha, "witnesses {a}, {b} at value {v}");
                    }
                }
            }
        }
    }
}
