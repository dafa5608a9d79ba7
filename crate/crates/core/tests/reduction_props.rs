mod common;

use common::classes_up_to;
use finito::complex::{euler_char, homology};
use finito::reduction::{
    beat_points, core, core_by, is_contractible, is_minimal_finite_space, mccord_check,
    osaki_closed_reduction, osaki_open_reduction, quotient,
};
use finito::{is_homeomorphic, FinitePoset};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Some `x != y` such that everything comparable with `x` is comparable with `y`.
fn dominated_pair(p: &FinitePoset) -> Option<(usize, usize)> {
    let n = p.len();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| x != y && (0..n).all(|z| !p.comparable(z, x) || p.comparable(z, y)))
}

#[test]
fn core_is_idempotent() {
    for p in classes_up_to(7) {
        let c = core(&p).final_space;
        let cc = core(&c);
        assert!(cc.removed.is_empty());
        assert!(is_homeomorphic(&cc.final_space, &c));
        assert!(is_minimal_finite_space(&c));
    }
}

#[test]
fn core_does_not_depend_on_removal_order() {
    let mut rng = StdRng::seed_from_u64(7);
    for p in classes_up_to(7) {
        let reference = core(&p).final_space;
        for _ in 0..20 {
            let trace = core_by(&p, |beats| rng.gen_range(0..beats.len()));
            assert!(is_homeomorphic(&trace.final_space, &reference));
            assert_eq!(trace.replay(&p).unwrap(), trace.final_space);
        }
    }
}

#[test]
fn euler_characteristic_survives_beat_point_removal() {
    for p in classes_up_to(7) {
        assert_eq!(euler_char(&p), euler_char(&core(&p).final_space));
        for b in beat_points(&p) {
            assert_eq!(
                euler_char(&p),
                euler_char(&p.remove_point(b.element).unwrap())
            );
        }
    }
}

#[test]
fn minimal_spaces_are_those_without_dominated_pairs() {
    for p in classes_up_to(7) {
        assert_eq!(
            beat_points(&p).is_empty(),
            dominated_pair(&p).is_none(),
            "characterization fails on {p:?}"
        );
    }
}

#[test]
fn beat_points_dominate_their_witness() {
    for p in classes_up_to(6) {
        for b in beat_points(&p) {
            let n = p.len();
            assert!((0..n).all(|z| !p.comparable(z, b.element) || p.comparable(z, b.witness)));
        }
    }
}

#[test]
fn quotient_reductions_preserve_b1_and_euler_characteristic() {
    for p in classes_up_to(6) {
        let (chi, b1) = (euler_char(&p), homology(&p).betti(1));
        for x in 0..p.len() {
            for q in [
                osaki_open_reduction(&p, x).unwrap(),
                osaki_closed_reduction(&p, x).unwrap(),
            ]
            .into_iter()
            .flatten()
            {
                assert_eq!(euler_char(&q), chi);
                assert_eq!(homology(&q).betti(1), b1);
            }
        }
    }
}

#[test]
fn open_quotient_projection_is_continuous() {
    for p in classes_up_to(6) {
        for x in 0..p.len() {
            if let Ok((q, proj)) = quotient(&p, &p.min_open(x).unwrap()) {
                // mccord_check rejects discontinuous maps with an error.
                assert!(mccord_check(&p, &q, &proj).is_ok());
            }
        }
    }
}

#[test]
fn removing_a_non_extremal_point_keeps_connectivity_and_b1() {
    for p in classes_up_to(7).into_iter().filter(|p| p.is_connected()) {
        let b1 = homology(&p).betti(1);
        for x in (0..p.len()).filter(|&x| !p.is_maximal(x) && !p.is_minimal(x)) {
            let q = p.remove_point(x).unwrap();
            assert!(q.is_connected());
            assert!(homology(&q).betti(1) >= b1);
        }
    }
}

#[test]
fn contractible_spaces_have_trivial_homology() {
    for p in classes_up_to(7).into_iter().filter(is_contractible) {
        let h = homology(&p);
        assert_eq!(h.betti, {
            let mut v = vec![0; h.betti.len()];
            v[0] = 1;
            v
        });
        assert!(h.is_torsion_free());
    }
}
