use std::sync::Arc;

use mrd_core::cmp::{self, CmpFamily};
use mrd_core::codes::{
    self, build_family, build_gabidulin, distance_distribution, distance_distribution_with,
    linearity_witness, min_distance, min_distance_with, span_dimension, verify_mrd, Component,
    DistanceMode, RankCode,
};
use mrd_core::geometry::{cyclic_model_basis, is_scattered, pseudoregulus_basis};
use mrd_core::linforms::{self, AutElt};
use mrd_core::{Elt, FieldCtx};

fn field(p: u32, h: usize, m: usize) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, h, m, None).unwrap())
}

/// All subsets of F_q \ {0, 1}.
fn parameter_sets(ctx: &FieldCtx) -> Vec<Vec<Elt>> {
    let pool: Vec<Elt> = ctx.fq_units().into_iter().filter(|&a| a != Elt::ONE).collect();
    (0u32..1 << pool.len())
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect()
        })
        .collect()
}

#[test]
fn components_partition_the_family() {
    for ctx in [field(2, 2, 3), field(5, 1, 3), field(3, 1, 4)] {
        let (q, m) = (ctx.q(), ctx.m() as u32);
        let qm = q.pow(m) as usize;
        for set in parameter_sets(&ctx) {
            if m == 4 && set.is_empty() {
                continue;
            }
            let code = build_family(ctx.clone(), &set).unwrap();
            assert_eq!(code.len() as u64, q.pow(2 * m), "q={q} m={m} I={set:?}");
            let sizes = code.component_sizes();
            assert_eq!(sizes.values().sum::<usize>(), code.len());
            assert_eq!(sizes[&Component::Zero], 1);
            assert_eq!(sizes[&Component::A1], qm - 1);
            assert_eq!(sizes[&Component::A2], qm - 1);
            let orbit = (qm - 1) * (qm - 1) / (q as usize - 1);
            for (c, &n) in &sizes {
                if matches!(c, Component::Pi(_) | Component::J(_)) {
                    assert_eq!(n, orbit, "{c:?}");
                }
            }
            assert_eq!(sizes.len(), 3 + (q as usize - 1));
        }
    }
}

#[test]
fn orbit_and_brute_force_agree() {
    let ctx = field(3, 1, 3);
    let code = build_family(ctx.clone(), &[ctx.from_int(2)]).unwrap();
    assert_eq!(min_distance(&code, DistanceMode::Orbit).unwrap(), 2);
    assert_eq!(min_distance(&code, DistanceMode::BruteForce).unwrap(), 2);
    assert_eq!(
        distance_distribution(&code, DistanceMode::Orbit),
        distance_distribution(&code, DistanceMode::BruteForce)
    );

    let family = CmpFamily::build(&ctx, &[ctx.from_int(2)]).unwrap();
    let cmp_code = family.to_code(ctx.clone()).unwrap();
    let group = cmp::conjugated_singer();
    assert_eq!(
        min_distance_with(&cmp_code, DistanceMode::Orbit, &group).unwrap(),
        min_distance(&cmp_code, DistanceMode::BruteForce).unwrap()
    );
    assert_eq!(
        distance_distribution_with(&cmp_code, DistanceMode::Orbit, &group),
        distance_distribution(&cmp_code, DistanceMode::BruteForce)
    );
}

#[test]
fn orbit_mode_falls_back_when_symmetry_fails() {
    let ctx = field(3, 1, 3);
    let code = build_family(ctx.clone(), &[ctx.from_int(2)]).unwrap().without(5);
    assert!(codes::SymmetryGroup::singer().orbits(&code).is_err());
    assert_eq!(
        min_distance(&code, DistanceMode::Orbit).unwrap(),
        min_distance(&code, DistanceMode::BruteForce).unwrap()
    );
}

#[test]
fn histogram_is_invariant_under_isometries() {
    let ctx = field(3, 1, 3);
    let code = build_family(ctx.clone(), &[ctx.from_int(2)]).unwrap();
    let mut invertible = linforms::all_words(&ctx).filter(|w| linforms::rank(&ctx, w) == 3);
    let d1 = invertible.nth(100).unwrap();
    let d2 = invertible.nth(1000).unwrap();
    let e = AutElt::new(&ctx, d1, d2, true, 1).unwrap();
    let image = RankCode::new(
        ctx.clone(),
        code.claimed_distance(),
        code.set().to_vec(),
        code.words().map(|w| (linforms::apply_aut(&ctx, &e, w), Component::Other)),
    )
    .unwrap();
    assert_eq!(image.len(), code.len());
    assert_eq!(
        distance_distribution(&image, DistanceMode::BruteForce),
        distance_distribution(&code, DistanceMode::Orbit)
    );
}

#[test]
fn nonempty_sets_give_nonlinear_codes() {
    for ctx in [field(3, 1, 3), field(2, 2, 3)] {
        for set in parameter_sets(&ctx) {
            let code = build_family(ctx.clone(), &set).unwrap();
            let witness = linearity_witness(&code);
            if set.is_empty() {
                assert!(witness.is_none());
                assert_eq!(span_dimension(&code), 2 * ctx.m());
                continue;
            }
            let (w1, w2, c) = witness.expect("nonlinear family");
            assert!(code.contains(&w1) && code.contains(&w2));
            assert!(ctx.in_fq(c));
            assert!(!code.contains(&w1.add(&ctx, &w2.scale(&ctx, c))));
            assert!(span_dimension(&code) > 2 * ctx.m());
        }
    }
}

#[test]
fn families_are_mrd_for_every_parameter_set() {
    let ctx = field(2, 2, 3);
    for set in parameter_sets(&ctx) {
        let report = verify_mrd(&build_family(ctx.clone(), &set).unwrap(), DistanceMode::Orbit);
        assert!(report.mrd, "I={set:?}: {report:?}");
        assert_eq!(report.min_distance, Some(2));
    }
}

#[test]
fn gabidulin_is_linear_mrd() {
    let ctx = field(3, 1, 3);
    for s in 1..3 {
        let code = build_gabidulin(ctx.clone(), s).unwrap();
        assert_eq!(code.len() as u128, code.singleton_bound());
        assert!(linearity_witness(&code).is_none());
        assert!(verify_mrd(&code, DistanceMode::BruteForce).mrd);
    }
}

#[test]
fn theta_is_a_bijection_onto_the_family() {
    let ctx = field(3, 1, 3);
    for w in linforms::all_words(&ctx) {
        assert_eq!(cmp::theta_inv(&ctx, &cmp::theta(&ctx, &w).unwrap()).unwrap(), w);
        assert_eq!(
            linforms::rank(&ctx, &cmp::theta(&ctx, &w).unwrap()),
            linforms::rank(&ctx, &w)
        );
    }
    let ctx = field(2, 2, 3);
    for set in parameter_sets(&ctx).into_iter().filter(|s| !s.is_empty()) {
        let report = cmp::verify_cmp_equivalence(ctx.clone(), &set).unwrap();
        assert!(report.pass, "I={set:?}");
    }
}

#[test]
fn subgeometry_bases_are_scattered() {
    for ctx in [field(3, 1, 3), field(2, 2, 3), field(5, 1, 3), field(3, 1, 4)] {
        assert!(is_scattered(&ctx, &cyclic_model_basis(&ctx)).unwrap(), "q={}", ctx.q());
        for a in ctx.fq_units() {
            let basis = pseudoregulus_basis(&ctx, a).unwrap();
            assert!(is_scattered(&ctx, &basis).unwrap(), "q={} a={a:?}", ctx.q());
        }
    }
}
