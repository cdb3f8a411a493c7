//! Randomized cross-module properties of the family engine, exercised
//! through the public API: identities between relative and absolute
//! canonical numbers, fiber restriction consistency, pushforward
//! positivity and linearity, verdict coherence against the reported
//! numbers, and dual-route integration agreement.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use slopekit_core::bundle::pushforward_to_base;
use slopekit_core::bundle::H0Table;
use slopekit_core::lab::{build_family, invariants, table1_bounds, FamilyParams, VerdictStatus};
use slopekit_core::ring::{GradedClass, Monomial};

fn arb_params() -> impl Strategy<Value = FamilyParams> {
    prop_oneof![
        (3u32..=6, 0u64..=3, 1u64..=3, 1u64..=3).prop_map(|(n, g, chi_a, deg_db)| {
            FamilyParams::AbelianBase {
                n,
                g,
                chi_a,
                deg_db,
            }
        }),
        (0u64..=3, 2u64..=6, 1u64..=3).prop_map(|(g, deg_da, deg_db)| FamilyParams::P1Base {
            g,
            deg_da,
            deg_db
        }),
        (0u64..=3, 3u64..=8).prop_map(|(g, e)| FamilyParams::Kobayashi12 { g, e }),
        (0u64..=3, 1u64..=4).prop_map(|(g, deg_d2)| FamilyParams::Surf23 { g, deg_d2 }),
    ]
}

fn with_genus(p: FamilyParams, g: u64) -> FamilyParams {
    match p {
        FamilyParams::AbelianBase {
            n, chi_a, deg_db, ..
        } => FamilyParams::AbelianBase {
            n,
            g,
            chi_a,
            deg_db,
        },
        FamilyParams::P1Base { deg_da, deg_db, .. } => FamilyParams::P1Base { g, deg_da, deg_db },
        FamilyParams::Kobayashi12 { e, .. } => FamilyParams::Kobayashi12 { g, e },
        FamilyParams::Surf23 { deg_d2, .. } => FamilyParams::Surf23 { g, deg_d2 },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `K^n_X = K^n_{X/B} + n(2g−2)·K_F^{n−1}`, recomputed from raw ring
    /// operations rather than trusted from the report.
    #[test]
    fn relative_absolute_identity(params in arb_params()) {
        let fam = build_family(&params).unwrap();
        let ring = fam.total.ring();
        let n = ring.dim();
        let abs = ring.integrate(&ring.power(&fam.abs_class, n).unwrap()).unwrap();
        let rel = ring.integrate(&ring.power(&fam.rel_class, n).unwrap()).unwrap();
        let fring = fam.fiber.ring();
        let kf_class = fam.total.restrict_to_fiber(&fam.abs_class).unwrap();
        let kf = fring.integrate(&fring.power(&kf_class, n - 1).unwrap()).unwrap();
        let shift = BigInt::from(n) * (BigInt::from(params.genus()) * 2 - 2);
        prop_assert_eq!(abs, rel + BigRational::from_integer(shift) * kf);
    }

    /// The fiber tower's own canonical class is the restriction of the
    /// total space's canonical class.
    #[test]
    fn fiber_canonical_is_the_restricted_canonical(params in arb_params()) {
        let fam = build_family(&params).unwrap();
        let restricted = fam.total.restrict_to_fiber(fam.total.canonical()).unwrap();
        prop_assert_eq!(&restricted, fam.fiber.canonical());
    }

    /// Every verdict in a report is reproducible from the report's own
    /// numbers, and the structural fields are coherent.
    #[test]
    fn verdicts_recompute_from_reported_numbers(params in arb_params()) {
        let r = invariants(&params).unwrap();
        prop_assert_eq!(&r.rank_push, &r.pg_f);
        prop_assert_eq!(r.chi.is_some(), !matches!(params, FamilyParams::AbelianBase { .. }));
        prop_assert_eq!(r.kf2_pg_pair.is_some(), r.n == 3);

        let v = r.verdicts.iter().find(|v| v.name == "slope_inequality").unwrap();
        let lhs = &r.k_rel_n * &r.pg_f;
        let rhs = BigInt::from(r.n) * &r.kf_top * &r.deg_push;
        let expected = match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => VerdictStatus::Holds,
            std::cmp::Ordering::Equal => VerdictStatus::Equality,
            std::cmp::Ordering::Less => VerdictStatus::Violated,
        };
        prop_assert_eq!(v.status, expected);

        let slope = r.slope.clone().unwrap();
        prop_assert_eq!(
            slope * BigRational::from_integer(r.deg_push.clone()),
            BigRational::from_integer(r.k_rel_n.clone())
        );

        if r.n == 3 {
            let (kf2, pg) = r.kf2_pg_pair.clone().unwrap();
            prop_assert_eq!(&kf2, &r.kf_top);
            prop_assert_eq!(&pg, &r.pg_f);
            let b2 = r.verdicts.iter().find(|v| v.name == "slope_bound_2").unwrap();
            let is_12 = kf2 == BigInt::from(1) && pg == BigInt::from(2);
            prop_assert_eq!(b2.status == VerdictStatus::Inapplicable, is_12);
        }
    }

    /// The pushforward decomposes into line bundles of nonnegative degree
    /// on the base, with total rank p_g(F).
    #[test]
    fn pushforward_is_semipositive_of_rank_pg(params in arb_params()) {
        let fam = build_family(&params).unwrap();
        let push = pushforward_to_base(&fam.total, &H0Table::new()).unwrap();
        let point = Monomial::generator(0);
        let mut rank = BigInt::from(0);
        for s in push.summands() {
            let deg = s.class.coefficient(&point);
            prop_assert!(deg >= BigRational::from_integer(BigInt::from(0)),
                "summand degree {} is negative", deg);
            rank += &s.multiplicity;
        }
        let r = invariants(&params).unwrap();
        prop_assert_eq!(rank, r.pg_f);
    }

    /// For the abelian-base family the pushforward rank scales linearly
    /// in `chi_A`, its degree and `K^n_{X/B}` bilinearly in
    /// `(chi_A, deg D_B)`, and the slope stays fixed.
    #[test]
    fn abelian_base_scales_bilinearly(
        n in 3u32..=5,
        g in 0u64..=2,
        chi in 1u64..=3,
        db in 1u64..=3,
    ) {
        let unit = invariants(&FamilyParams::AbelianBase { n, g, chi_a: 1, deg_db: 1 }).unwrap();
        let r = invariants(&FamilyParams::AbelianBase { n, g, chi_a: chi, deg_db: db }).unwrap();
        prop_assert_eq!(&r.rank_push, &(&unit.rank_push * BigInt::from(chi)));
        prop_assert_eq!(&r.deg_push, &(&unit.deg_push * BigInt::from(chi * db)));
        prop_assert_eq!(&r.k_rel_n, &(&unit.k_rel_n * BigInt::from(chi * db)));
        prop_assert_eq!(&r.kf_top, &(&unit.kf_top * BigInt::from(chi)));
        prop_assert_eq!(r.slope, unit.slope);
    }

    /// All invariants of the relative geometry are independent of the
    /// base genus; only absolute quantities move with it.
    #[test]
    fn relative_invariants_ignore_base_genus(params in arb_params(), g2 in 0u64..=3) {
        let a = invariants(&params).unwrap();
        let b = invariants(&with_genus(params, g2)).unwrap();
        prop_assert_eq!(&a.k_rel_n, &b.k_rel_n);
        prop_assert_eq!(&a.deg_push, &b.deg_push);
        prop_assert_eq!(&a.rank_push, &b.rank_push);
        prop_assert_eq!(&a.kf_top, &b.kf_top);
        prop_assert_eq!(&a.pg_f, &b.pg_f);
        prop_assert_eq!(&a.slope, &b.slope);
        let shift = BigInt::from(a.n)
            * (BigInt::from(b.g) - BigInt::from(a.g))
            * 2
            * &a.kf_top;
        prop_assert_eq!(&b.k_abs_n, &(&a.k_abs_n + shift));
    }

    /// Integration agrees with the independent elimination-based route
    /// on random classes in every family's ring.
    #[test]
    fn dual_route_integration_agrees(params in arb_params(), seed in any::<u64>()) {
        let fam = build_family(&params).unwrap();
        let ring = fam.total.ring();
        let k = ring.num_generators();
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..8 {
            let mut class = GradedClass::zero();
            for _ in 0..rng.gen_range(1..=4) {
                let expts: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=2)).collect();
                let coeff = BigRational::new(
                    BigInt::from(rng.gen_range(-9i64..=9)),
                    BigInt::from(rng.gen_range(1i64..=3)),
                );
                class.add_term(Monomial::from_exponents(expts), coeff);
            }
            let direct = ring.integrate(&class).unwrap();
            let oracle = ring.oracle_integrate(&class).unwrap();
            prop_assert_eq!(direct, oracle);
        }
    }

    /// Products of divisor classes are independent of multiplication
    /// order, and the resulting integral agrees with the oracle.
    #[test]
    fn multiplication_order_is_immaterial(params in arb_params(), seed in any::<u64>()) {
        let fam = build_family(&params).unwrap();
        let ring = fam.total.ring();
        let k = ring.num_generators();
        let n = ring.dim();
        let factors: Vec<GradedClass> = (0..n as usize)
            .map(|i| {
                let primary = i % k;
                let secondary = (i + 1) % k;
                &GradedClass::generator(primary) + &GradedClass::generator(secondary).scale_int(i as i64 + 1)
            })
            .collect();
        let baseline = factors
            .iter()
            .try_fold(GradedClass::one(), |acc, f| ring.mul(&acc, f))
            .unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..4 {
            let mut order: Vec<usize> = (0..factors.len()).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let shuffled = order
                .iter()
                .try_fold(GradedClass::one(), |acc, &i| ring.mul(&acc, &factors[i]))
                .unwrap();
            prop_assert_eq!(&shuffled, &baseline);
        }
        prop_assert_eq!(
            ring.integrate(&baseline).unwrap(),
            ring.oracle_integrate(&baseline).unwrap()
        );
    }
}

/// Over every feasible fiber type, the new bound is at least the old
/// one, with equality exactly on the boundary of the Noether region
/// (within the regime where both bounds are fiber-dependent).
#[test]
fn table_bounds_never_regress() {
    for kf2 in 1u64..=30 {
        let pg_max = kf2 / 2 + 2;
        for pg in 0..=pg_max {
            if kf2 >= 4 && pg == 0 {
                assert!(table1_bounds(kf2, pg).is_err());
                continue;
            }
            let row = table1_bounds(kf2, pg)
                .unwrap_or_else(|e| panic!("({kf2}, {pg}) should be feasible: {e}"));
            assert!(
                row.ours >= row.previous,
                "bound regressed at ({kf2}, {pg}): {} < {}",
                row.ours,
                row.previous
            );
            if kf2 >= 4 {
                assert_eq!(
                    row.coincide,
                    i128::from(kf2) == 2 * i128::from(pg) - 4,
                    "coincidence at ({kf2}, {pg}) must mark the Noether boundary"
                );
            } else {
                assert!(!row.coincide);
            }
        }
        assert!(
            table1_bounds(kf2, pg_max + 1).is_err(),
            "({kf2}, {}) is infeasible",
            pg_max + 1
        );
    }
}
