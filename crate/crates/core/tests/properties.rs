use hermeq_core::algebra::zeta_lattice;
use hermeq_core::bounds::{ln_enclosure, max_degree};
use hermeq_core::equivalence::{gl2_act, hermite_witness_check, z_equiv_test};
use hermeq_core::exact::{discriminant, IntMat, IntPoly};
use hermeq_core::form::{form_content, hermite_form, transfer_matrix};
use hermeq_core::quartic::{act, cubic_substitute, iota, iota_inverse, resolvent_cubic};
use hermeq_core::Error;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn poly(max_deg: usize, height: i64) -> impl Strategy<Value = IntPoly> {
    (2..=max_deg)
        .prop_flat_map(move |n| (prop::collection::vec(-height..=height, n), -height..=height))
        .prop_filter_map("zero leading coefficient", |(mut c, lead)| {
            (lead != 0).then(|| {
                c.push(lead);
                IntPoly::from_i64(&c)
            })
        })
}

fn monic(max_deg: usize, height: i64) -> impl Strategy<Value = IntPoly> {
    (2..=max_deg).prop_flat_map(move |n| prop::collection::vec(-height..=height, n)).prop_map(|mut c| {
        c.push(1);
        IntPoly::from_i64(&c)
    })
}

fn gl2() -> impl Strategy<Value = IntMat> {
    prop::collection::vec((0..4u8, -3..=3i64), 1..5).prop_map(|ops| {
        ops.into_iter().fold(IntMat::identity(2), |g, (kind, k)| {
            let e = match kind {
                0 => IntMat::from_i64(&[&[1, k], &[0, 1]]),
                1 => IntMat::from_i64(&[&[1, 0], &[k, 1]]),
                2 => IntMat::from_i64(&[&[0, 1], &[1, 0]]),
                _ => IntMat::from_i64(&[&[-1, 0], &[0, 1]]),
            };
            &g * &e
        })
    })
}

fn gl3() -> impl Strategy<Value = IntMat> {
    prop::collection::vec((0..3usize, 0..3usize, -2..=2i64), 1..6).prop_map(|ops| {
        ops.into_iter().fold(IntMat::identity(3), |g, (i, j, k)| {
            let mut e = IntMat::identity(3);
            if i == j {
                e.set(i, i, BigInt::from(-1));
            } else {
                e.set(i, j, BigInt::from(k));
            }
            &g * &e
        })
    })
}

fn squarefree(f: &IntPoly) -> bool {
    !discriminant(f).unwrap().is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn form_content_is_power_of_content(f in poly(5, 20)) {
        let n = f.deg().unwrap();
        let c = form_content(&hermite_form(&f).unwrap()).unwrap();
        prop_assert_eq!(c, num_traits::pow(f.content(), n - 1));
    }

    #[test]
    fn gl2_action_composes(f in poly(5, 10), g1 in gl2(), g2 in gl2()) {
        let step = gl2_act(&f, &g1, 1).and_then(|h| gl2_act(&h, &g2, 1));
        match (step, gl2_act(&f, &(&g1 * &g2), 1)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(Error::DegreeDrop), _) | (_, Err(Error::DegreeDrop)) => {}
            (a, b) => prop_assert!(false, "{:?} {:?}", a, b),
        }
    }

    #[test]
    fn gl2_action_preserves_discriminant(f in poly(5, 10), g in gl2()) {
        if let Ok(h) = gl2_act(&f, &g, -1) {
            prop_assert_eq!(discriminant(&h).unwrap(), discriminant(&f).unwrap());
        }
    }

    #[test]
    fn transfer_matches_form_action(f in poly(4, 10), g in gl2()) {
        if let Ok(h) = gl2_act(&f, &g, 1) {
            let n = f.deg().unwrap();
            let t = transfer_matrix(&g, n).unwrap().transpose();
            prop_assert!(t.is_unimodular());
            let moved = hermite_form(&f).unwrap().act_gln(&t).unwrap();
            prop_assert!(hermite_form(&h).unwrap().sign_relative_to(&moved).is_some());
        }
    }

    #[test]
    fn transfer_reverses_products(g1 in gl2(), g2 in gl2(), n in 2usize..7) {
        let lhs = transfer_matrix(&(&g1 * &g2), n).unwrap();
        let rhs = &transfer_matrix(&g2, n).unwrap() * &transfer_matrix(&g1, n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn z_translates_are_found(f in monic(5, 10), a in -6i64..=6, neg in any::<bool>()) {
        prop_assume!(squarefree(&f));
        let n = f.deg().unwrap();
        let eps = if neg { -1 } else { 1 };
        let mut g = f.compose(&IntPoly::from_i64(&[a, eps]));
        if neg && n % 2 == 1 {
            g = -g;
        }
        let w = z_equiv_test(&f, &g).unwrap().expect("translate not detected");
        let (gamma, sign) = w.as_gl2(n);
        prop_assert_eq!(gl2_act(&f, &gamma, sign).unwrap(), g.clone());
        prop_assert!(hermite_witness_check(&f, &g, &w.root_map()).unwrap().is_some());
    }

    #[test]
    fn hermite_self_witness_is_identity(f in poly(5, 10)) {
        prop_assume!(squarefree(&f));
        let n = f.deg().unwrap();
        let u = hermite_witness_check(&f, &f, &IntPoly::x()).unwrap();
        prop_assert_eq!(u, Some(IntMat::identity(n)));
    }

    #[test]
    fn ideal_powers(f in poly(4, 10)) {
        prop_assume!(squarefree(&f) && f.content().is_one());
        let n = f.deg().unwrap();
        let i1 = zeta_lattice(&f, 1).unwrap();
        for k in 2..n {
            prop_assert_eq!(i1.pow(k as u32).unwrap(), zeta_lattice(&f, k).unwrap());
        }
    }

    #[test]
    fn iota_round_trip(c in prop::collection::vec(-30i64..=30, 5)) {
        prop_assume!(c[4] != 0);
        let f = IntPoly::from_i64(&c);
        prop_assert_eq!(iota_inverse(&iota(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn resolvent_is_covariant(c in prop::collection::vec(-20i64..=20, 5), g in gl3(), m in gl2()) {
        prop_assume!(c[4] != 0);
        let pair = iota(&IntPoly::from_i64(&c)).unwrap();
        let moved = act(&pair, &g, &m).unwrap();
        prop_assert_eq!(
            resolvent_cubic(&moved).unwrap(),
            cubic_substitute(&resolvent_cubic(&pair).unwrap(), &m)
        );
    }

    #[test]
    fn ln_enclosure_contains_float(x in 1u64..u64::MAX) {
        let (lo, hi) = ln_enclosure(&BigInt::from(x));
        let f = (x as f64).ln();
        prop_assert!(lo.to_f64().unwrap() <= f * (1.0 + 1e-12));
        prop_assert!(hi.to_f64().unwrap() >= f * (1.0 - 1e-12));
        prop_assert!(lo <= hi);
    }

    #[test]
    fn degree_cap_is_monotone(d in 1i64..1_000_000, e in 0i64..1_000_000) {
        let (a, b) = (BigInt::from(d), BigInt::from(d + e));
        for m in [false, true] {
            prop_assert!(max_degree(&a, m).unwrap() <= max_degree(&b, m).unwrap());
        }
        prop_assert_eq!(max_degree(&a, false).unwrap(), max_degree(&a, true).unwrap() + 1);
    }

    #[test]
    fn division_reconstructs(a in poly(6, 20), d in monic(3, 20)) {
        let (q, r) = a.div_rem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, a);
        prop_assert!(r.degree().is_none_or(|k| k < d.deg().unwrap()));
    }
}
