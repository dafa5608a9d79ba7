//! Small named spaces that serve as standard examples.

use crate::models::{bipartite_model, nh_suspension};
use crate::poset::FinitePoset;

fn labelled(p: FinitePoset, labels: &[&str]) -> FinitePoset {
    p.with_labels(labels.iter().map(|s| s.to_string()).collect())
}

/// Four points `a, b, c, d` with `d < b < a` and `c < a`. Contractible.
pub fn four_point() -> FinitePoset {
    let p = FinitePoset::from_cover_pairs(4, &[(3, 1), (1, 0), (2, 0)]).expect("valid covers");
    labelled(p, &["a", "b", "c", "d"])
}

/// The six-point space `a1, b, a2, c, d, e` with `c, d < a1`, `c, d, e < b`
/// and `d, e < a2`.
///
/// It has no beat points and neither quotient reduction shrinks it, yet it
/// is weakly equivalent to the five-point [`suspended_d3`].
pub fn reduction_counterexample() -> FinitePoset {
    let p =
        FinitePoset::from_cover_pairs(6, &[(3, 0), (4, 0), (3, 1), (4, 1), (5, 1), (4, 2), (5, 2)])
            .expect("valid covers");
    labelled(p, &["a1", "b", "a2", "c", "d", "e"])
}

/// The suspension of the three-point discrete space: `a, b` above `c, d, e`.
pub fn suspended_d3() -> FinitePoset {
    let q = nh_suspension(&FinitePoset::antichain(3).expect("three points"));
    // Suspension appends the new points; list them first.
    labelled(q.permuted(&[3, 4, 0, 1, 2]), &["a", "b", "c", "d", "e"])
}

/// The weak equivalence from [`reduction_counterexample`] onto [`suspended_d3`]
/// sending `a1, a2` to `a` and every other point to its namesake.
pub fn counterexample_map() -> Vec<usize> {
    vec![0, 1, 0, 2, 3, 4]
}

/// Two maximal points over three minimal ones: a minimal finite model of
/// the wedge of two circles.
pub fn wedge_of_two() -> FinitePoset {
    bipartite_model(2, 3).expect("positive sizes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suspended_d3_shape() {
        let y = suspended_d3();
        assert_eq!(y.cover_count(), 6);
        assert_eq!(y.maximal_elements(), vec![0, 1]);
        let idx = |s| y.index_of(s).unwrap();
        assert!(y.lt(idx("e"), idx("a")) && y.lt(idx("c"), idx("b")));
    }

    #[test]
    fn counterexample_map_is_order_preserving() {
        let (x, y, f) = (
            reduction_counterexample(),
            suspended_d3(),
            counterexample_map(),
        );
        for a in 0..x.len() {
            for b in 0..x.len() {
                assert!(!x.le(a, b) || y.le(f[a], f[b]));
            }
            assert_eq!(x.label(a).trim_end_matches(char::is_numeric), y.label(f[a]));
        }
    }

    #[test]
    fn four_point_covers() {
        let p = four_point();
        let h = p.hasse();
        assert_eq!(h.covers.len(), 3);
        assert_eq!(p.maximal_elements(), vec![0]);
    }
}
