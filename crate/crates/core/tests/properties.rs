//! Randomized structural properties tying the closed-form invariants, the
//! gap polynomial, and the normal-crossing model to one another.

use std::collections::BTreeMap;

use hkcover_core::{
    blowup_homogeneous, cover_c1sq_nc, cover_chern, cover_euler_nc, enumerate_combinatorics,
    hirzebruch_polynomial, validate_combinatorics, ArrangementCombinatorics, EnumerationCaps,
    SurfaceModel,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn surfaces() -> impl Strategy<Value = SurfaceModel> {
    prop_oneof![
        (0i64..=6).prop_map(|e| SurfaceModel::Hirzebruch { e }),
        (2i64..=5).prop_map(|d| SurfaceModel::Plane { d }),
        (1i64..=6, 0i64..=5, 2i64..=6, 0i64..=10).prop_map(|(a, b, euler, slack)| {
            SurfaceModel::NefCanonical { euler, ksq: 3 * euler - slack, a, b }
        }),
    ]
}

/// Builds a combinatorics satisfying the count identity by seeding the
/// essential multiplicities and closing the remainder with double points;
/// every weight r(r-1) is even, so the remainder always splits into doubles.
fn seeded_combo(surface: &SurfaceModel, k: i64, seeds: &[i64]) -> ArrangementCombinatorics {
    let p = surface.params().unwrap();
    let star = matches!(surface, SurfaceModel::Hirzebruch { .. });
    let r_max = match surface {
        SurfaceModel::Hirzebruch { .. } => (k - 3).min(6),
        _ => (k - 1).min(6),
    };
    let mut remaining = p.a * (k * k - k);
    let mut t: BTreeMap<i64, i64> = BTreeMap::new();
    for (i, r) in (3..=r_max).enumerate() {
        let w = r * (r - 1);
        let cap = remaining / w;
        let count = seeds.get(i).copied().unwrap_or(0).rem_euclid(cap + 1);
        if count > 0 {
            t.insert(r, count);
            remaining -= w * count;
        }
    }
    assert!(remaining % 2 == 0);
    if remaining > 0 {
        t.insert(2, remaining / 2);
    }
    ArrangementCombinatorics::new(k, t, star).unwrap()
}

fn arrangements() -> impl Strategy<Value = (SurfaceModel, ArrangementCombinatorics)> {
    (surfaces(), 5i64..=9, proptest::collection::vec(0i64..1000, 4))
        .prop_map(|(s, k, seeds)| {
            let combo = seeded_combo(&s, k, &seeds);
            (s, combo)
        })
}

proptest! {
    #[test]
    fn seeded_combos_pass_r1((surface, combo) in arrangements()) {
        let report = validate_combinatorics(&surface, &combo);
        prop_assert!(report.finding("R1").unwrap().passed);
        let f = combo.f_moments();
        let a = surface.params().unwrap().a;
        prop_assert_eq!(a * (combo.k() * combo.k() - combo.k()), f.f2 - f.f1);
    }

    #[test]
    fn gap_polynomial_matches_chern_numbers(
        (surface, combo) in arrangements(),
        n in 2i64..=7,
    ) {
        let inv = cover_chern(&surface, &combo, n).unwrap();
        let h = hirzebruch_polynomial(&surface, &combo).unwrap();
        prop_assert_eq!(
            h.eval(n),
            BigInt::from(3) * &inv.scaled_c2 - &inv.scaled_c1sq
        );
        prop_assert_eq!(&h.eval(n), &inv.bmy_gap_scaled);
    }

    #[test]
    fn totals_scale_by_cover_order((surface, combo) in arrangements(), n in 2i64..=5) {
        let inv = cover_chern(&surface, &combo, n).unwrap();
        let pow = BigInt::from(n).pow((combo.k() - 3) as u32);
        prop_assert_eq!(&inv.total_c2, &(&inv.scaled_c2 * &pow));
        prop_assert_eq!(&inv.total_c1sq, &(&inv.scaled_c1sq * &pow));
    }

    #[test]
    fn normal_crossing_model_agrees_with_closed_forms(
        (surface, combo) in arrangements(),
        n in 2i64..=5,
    ) {
        let model = blowup_homogeneous(&surface, &combo, None).unwrap();
        let inv = cover_chern(&surface, &combo, n).unwrap();
        prop_assert_eq!(cover_euler_nc(&model, n).unwrap(), inv.total_c2);
        prop_assert_eq!(cover_c1sq_nc(&model, n).unwrap(), inv.total_c1sq);
    }

    #[test]
    fn hirzebruch_gap_expansion_at_two(e in 0i64..=6, k in 5i64..=9, seeds in proptest::collection::vec(0i64..1000, 4)) {
        // H(2) = 16 + (3e+2)k + 9 f0 - 2 f1 - 4 t2 on Hirzebruch surfaces.
        let surface = SurfaceModel::Hirzebruch { e };
        let combo = seeded_combo(&surface, k, &seeds);
        let f = combo.f_moments();
        let h = hirzebruch_polynomial(&surface, &combo).unwrap();
        let expanded = 16 + (3 * e + 2) * k + 9 * f.f0 - 2 * f.f1 - 4 * combo.t(2);
        prop_assert_eq!(h.eval(2), BigInt::from(expanded));
    }

    #[test]
    fn enumeration_contains_every_seeded_solution(
        e in 2i64..=3,
        k in 5i64..=6,
        seeds in proptest::collection::vec(0i64..1000, 4),
    ) {
        // Any R1-consistent combinatorics within the allowed multiplicities
        // must appear in the exhaustive enumeration.
        let surface = SurfaceModel::Hirzebruch { e };
        let combo = seeded_combo(&surface, k, &seeds);
        let enumeration =
            enumerate_combinatorics(&surface, k, &EnumerationCaps::default()).unwrap();
        prop_assert!(enumeration.complete);
        prop_assert!(enumeration.combos.contains(&combo));
    }
}
